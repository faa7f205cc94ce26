use proptest::prelude::*;

use super::*;
use crate::indexing::shift_class;
use crate::modules::{grassmannian_module, nflag_module};

const BOTH: [EpsSign; 2] = [EpsSign::Plus, EpsSign::Minus];

fn t(s: &str) -> ThetaMatrix {
    ThetaMatrix::parse(s, None).unwrap()
}

#[test]
fn transfer_examples() {
    assert_eq!(transfer_2n(&t("2,1;1,2")), Transfer::Label(t("0,1;1,0")));
    assert_eq!(transfer_2n(&t("0,1;1,0")), Transfer::Zero);
    assert_eq!(transfer_2n(&t("2,0;0,2")), Transfer::Label(t("0,0;0,0")));
    let odd = StabilizationVariant::OddOrthogonal;
    assert_eq!(transfer_n(&t("1,0,0;0,1,0;0,0,1"), odd).unwrap(), Transfer::Label(t("0,0,0;0,0,0;0,0,0")));
    assert_eq!(transfer_n(&t("0,1,0;1,1,1;0,1,0"), odd).unwrap(), Transfer::Zero);
    assert!(transfer_n(&t("1,0;0,1"), odd).is_err());
    assert!(transfer_n(&t("1,0,0;0,1,0;0,0,1"), StabilizationVariant::SymplecticEven).is_err());
    assert!(transfer_n(&t("1,0;0,1"), StabilizationVariant::Block2n(EpsSign::Plus)).is_err());
}

fn theta_matrix(n: usize, max: i64) -> impl Strategy<Value = ThetaMatrix> {
    proptest::collection::vec(0..=max, n * n).prop_map(move |flat| {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let (p, q) = if (i, j) <= (n - 1 - i, n - 1 - j) { (i, j) } else { (n - 1 - i, n - 1 - j) };
                a[i][j] = flat[p * n + q];
            }
        }
        ThetaMatrix::from_rows(a).unwrap()
    })
}

proptest! {
    #[test]
    fn round_trip(a in (2usize..=5).prop_flat_map(|n| theta_matrix(n, 6))) {
        prop_assert_eq!(transfer_2n(&shift_class(&a, 1).unwrap()), Transfer::Label(a.clone()));
    }

    #[test]
    fn functoriality(a in (2usize..=5).prop_flat_map(|n| theta_matrix(n, 6)), k in 1i64..=4) {
        let mut cur = Transfer::Label(a.clone());
        for _ in 0..k {
            cur = match cur {
                Transfer::Label(b) => transfer_2n(&b),
                Transfer::Zero => Transfer::Zero,
            };
        }
        let direct = a.add_identity(-2 * k, a.ambient_v().saturating_sub(2 * k as usize * a.n()));
        match direct {
            Ok(b) => prop_assert_eq!(cur, Transfer::Label(b)),
            Err(_) => prop_assert_eq!(cur, Transfer::Zero),
        }
    }

    #[test]
    fn transfers_keep_symmetry_and_residue(a in (2usize..=5).prop_flat_map(|n| theta_matrix(n, 6))) {
        if let Transfer::Label(b) = transfer_2n(&a) {
            prop_assert!(ThetaMatrix::new(b.rows().to_vec(), b.ambient_v()).is_ok());
            prop_assert_eq!((a.sum() - b.sum()) % (2 * a.n() as i64), 0);
        }
        let variant = if a.n() % 2 == 1 { StabilizationVariant::OddOrthogonal } else { StabilizationVariant::SymplecticEven };
        let once = transfer_n(&a, variant).unwrap();
        let twice = match &once {
            Transfer::Label(b) => transfer_n(b, variant).unwrap(),
            Transfer::Zero => Transfer::Zero,
        };
        prop_assert_eq!(twice, transfer_2n(&a));
        if let Transfer::Label(b) = once {
            prop_assert!(ThetaMatrix::new(b.rows().to_vec(), b.ambient_v()).is_ok());
        }
    }
}

fn kinds(n: usize) -> Vec<LimitKind> {
    (1..n).flat_map(|i| [LimitKind::E(i), LimitKind::F(i), LimitKind::H(i)]).collect()
}

#[test]
fn generator_examples() {
    let h = limit_generator(LimitKind::H(1), 3, 4, EpsSign::Minus).unwrap();
    for (a, c) in truncate(&h, 4).unwrap() {
        assert!(a.is_diagonal());
        assert_eq!(c, q(a.at(1, 1) - a.at(2, 2)));
    }
    let e = limit_generator(LimitKind::E(1), 3, 4, EpsSign::Minus).unwrap();
    let c = truncate(&e, 4).unwrap();
    assert!(!c.is_empty());
    for (a, x) in &c {
        assert_eq!(*x, if a.at(1, 1) % 2 == 0 { q(1) } else { q(-1) });
    }
    assert_eq!(c[&t("0,1,0;0,2,0;0,1,0")], q(1));
    assert!(truncate(&e, 5).is_err());
    assert!(limit_generator(LimitKind::E(3), 3, 4, EpsSign::Minus).is_err());
    assert!(limit_generator(LimitKind::E(1), 3, 3, EpsSign::Minus).is_err());
    assert!(limit_generator(LimitKind::E(1), 4, 3, EpsSign::Plus).is_err());
}

#[test]
fn e_equals_f_of_the_partner() {
    for n in 2..=5 {
        for eps in BOTH {
            for res in (1..=2 * n).filter(|&v| admissible_residue(n, v, eps)) {
                for i in 1..n {
                    let e = limit_generator(LimitKind::E(i), n, res, eps).unwrap();
                    let f = limit_generator(LimitKind::F(n - i), n, res, eps).unwrap();
                    for v in e.levels(3) {
                        assert_eq!(truncate(&e, v).unwrap(), truncate(&f, v).unwrap(), "n={n} i={i} v={v}");
                    }
                }
            }
        }
    }
}

#[test]
fn generators_are_coherent() {
    for n in 2..=4 {
        for eps in BOTH {
            for res in (1..=2 * n).filter(|&v| admissible_residue(n, v, eps)) {
                let mut ks = kinds(n);
                for w in lambda_v(n, res).into_iter().take(3) {
                    ks.push(LimitKind::Idem(w));
                }
                for k in ks {
                    let x = limit_generator(k.clone(), n, res, eps).unwrap();
                    let lv = x.levels(3);
                    for &v in &lv[..2] {
                        let rep = coherence_report(&x, v).unwrap();
                        assert!(rep.passed(), "{k} n={n} res={res} eps={eps} v={v}: {:?}", rep.mismatches);
                    }
                }
            }
        }
    }
}

#[test]
fn idempotent_truncations_are_single_diagonals() {
    let w: WeightComposition = "[1,0,1]".parse().unwrap();
    let x = limit_generator(LimitKind::Idem(w), 3, 2, EpsSign::Minus).unwrap();
    for v in x.levels(3) {
        let c = truncate(&x, v).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.keys().all(|a| a.is_diagonal()));
    }
}

#[test]
fn corrupted_signs_are_incoherent() {
    let e = limit_generator(LimitKind::E(1), 3, 4, EpsSign::Minus).unwrap();
    let bad = LimitElement::custom("bad", 3, EpsSign::Minus, 4, move |v| {
        Ok(truncate(&e, v)?
            .into_iter()
            .map(|(a, x)| {
                let flip = if (a.at(2, 2) / 2) % 2 == 1 { q(-1) } else { q(1) };
                (a, x * flip)
            })
            .collect())
    })
    .unwrap();
    assert!(!coherence_check(&bad, 4).unwrap());
}

fn residue_of(n: usize, v: usize) -> usize {
    (v + 2 * n - 1) % (2 * n) + 1
}

#[test]
fn truncated_generators_act_as_the_flag_generators() {
    for v in 0..=10 {
        for eps in BOTH {
            let Ok(g) = grassmannian_module(v, eps) else { continue };
            let res = residue_of(3, v);
            let e = limit_generator(LimitKind::E(1), 3, res, eps).unwrap();
            let op = evaluate_truncation(&truncate(&e, v).unwrap(), &nflag_module(3, v, eps).unwrap(), eps).unwrap();
            assert_eq!(&op, g.e(1), "v={v} eps={eps}");
        }
    }
    for n in 3..=5 {
        for v in 0..=8 {
            for eps in BOTH {
                let Ok(m) = nflag_module(n, v, eps) else { continue };
                let res = residue_of(n, v);
                for i in 1..n {
                    if n % 2 == 0 && i == n / 2 {
                        continue;
                    }
                    for (k, want) in [(LimitKind::E(i), m.e(i)), (LimitKind::F(i), m.f(i)), (LimitKind::H(i), m.h(i))] {
                        let x = limit_generator(k.clone(), n, res, eps).unwrap();
                        let op = evaluate_truncation(&truncate(&x, v).unwrap(), &m, eps).unwrap();
                        assert_eq!(&op, want, "{k} n={n} v={v} eps={eps}");
                    }
                }
            }
        }
    }
}
