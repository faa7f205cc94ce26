//! Cross-module properties of the generators and their operators.

use proptest::prelude::*;
use thetalg::algebra::{evaluate, theta_involution, AlgebraElement, GenToken};
use thetalg::indexing::WeightComposition;
use thetalg::modules::{grassmannian_module, nflag_module, rectified_module, tensor_module, twist_by_theta, RepModule};
use thetalg::partitions::EpsSign;
use thetalg::{q, QMatrix};

fn pool() -> Vec<RepModule> {
    vec![
        grassmannian_module(4, EpsSign::Minus).unwrap(),
        grassmannian_module(5, EpsSign::Plus).unwrap(),
        nflag_module(4, 4, EpsSign::Plus).unwrap(),
        nflag_module(5, 3, EpsSign::Plus).unwrap(),
        tensor_module(3, 2).unwrap(),
        tensor_module(4, 2).unwrap(),
        rectified_module(2, 3).unwrap(),
        twist_by_theta(&nflag_module(3, 4, EpsSign::Minus).unwrap()).unwrap(),
    ]
}

/// The change of weight caused by `e_i`, counted from 1.
fn root(n: usize, i: usize) -> Vec<i64> {
    let mut a = vec![0; n];
    a[i - 1] += 1;
    a[n - i] += 1;
    a[i] -= 1;
    a[n - 1 - i] -= 1;
    a
}

fn token(n: usize) -> impl Strategy<Value = GenToken> {
    let half = n.div_ceil(2);
    prop_oneof![
        (1..n).prop_map(GenToken::E),
        (1..n).prop_map(GenToken::F),
        (1..n).prop_map(GenToken::H),
        prop::collection::vec(0i64..5, half).prop_map(move |h| {
            let full: Vec<i64> = (0..n).map(|j| h[j.min(n - 1 - j)]).collect();
            GenToken::idem(&WeightComposition::new(full).unwrap())
        }),
    ]
}

fn element(n: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((prop::collection::vec(token(n), 0..4), -3i64..4), 1..4).prop_map(move |terms| {
        let mut x = AlgebraElement::zero(n);
        for (w, c) in terms {
            x.add_term(w, q(c));
        }
        x
    })
}

fn module_and_pair() -> impl Strategy<Value = (usize, AlgebraElement, AlgebraElement, i64)> {
    (0..pool().len()).prop_flat_map(|k| {
        let n = pool()[k].n();
        (Just(k), element(n), element(n), -3i64..4)
    })
}

#[test]
fn cartan_elements_commute() {
    for m in pool() {
        let r = m.n() / 2;
        let mut cartan: Vec<&QMatrix> = (1..=r).map(|i| m.h(i)).collect();
        cartan.extend((1..=r).map(|i| m.hprime(i)));
        for a in &cartan {
            for b in &cartan {
                assert!(a.commutator(b).unwrap().is_zero(), "{}", m.name());
            }
        }
    }
}

#[test]
fn h_is_antisymmetric_under_the_involution_of_indices() {
    for m in pool() {
        for i in 1..m.n() {
            assert!(m.h(i).checked_add(m.h(m.n() - i)).unwrap().is_zero(), "{} h{i}", m.name());
        }
    }
}

#[test]
fn weight_projectors_are_orthogonal_idempotents() {
    for m in pool() {
        let mut weights = m.weights().to_vec();
        weights.sort();
        weights.dedup();
        let mut total = QMatrix::zeros(m.dim(), m.dim());
        for a in &weights {
            let pa = m.weight_projector(a);
            total = total.checked_add(&pa).unwrap();
            for b in &weights {
                let prod = pa.matmul(&m.weight_projector(b)).unwrap();
                if a == b {
                    assert_eq!(prod, pa);
                } else {
                    assert!(prod.is_zero());
                }
            }
        }
        assert_eq!(total, QMatrix::identity(m.dim()), "{}", m.name());
    }
}

#[test]
fn e_shifts_weights_by_its_root() {
    for m in pool() {
        let n = m.n();
        let mut weights = m.weights().to_vec();
        weights.dedup();
        for i in 1..n {
            let alpha = root(n, i);
            for w in &weights {
                let lhs = m.e(i).matmul(&m.weight_projector(w)).unwrap();
                let shifted: Vec<i64> = w.entries().iter().zip(&alpha).map(|(x, a)| x + a).collect();
                match WeightComposition::new(shifted) {
                    Ok(w2) => assert_eq!(lhs, m.weight_projector(&w2).matmul(m.e(i)).unwrap()),
                    Err(_) => assert!(lhs.is_zero()),
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_is_an_involution(x in (2usize..6).prop_flat_map(element)) {
        prop_assert_eq!(theta_involution(&theta_involution(&x)), x);
    }

    #[test]
    fn evaluation_is_an_algebra_map((k, x, y, c) in module_and_pair()) {
        let m = &pool()[k];
        let ex = evaluate(&x, m).unwrap();
        let ey = evaluate(&y, m).unwrap();
        let lin = evaluate(&x.scale(&q(c)).add(&y), m).unwrap();
        prop_assert_eq!(lin, ex.scale(&q(c)).checked_add(&ey).unwrap());
        prop_assert_eq!(evaluate(&x.mul(&y), m).unwrap(), ex.matmul(&ey).unwrap());
    }

    #[test]
    fn twisting_matches_the_involution((k, x, _y, _c) in module_and_pair()) {
        let m = &pool()[k];
        let t = twist_by_theta(m).unwrap();
        prop_assert_eq!(evaluate(&theta_involution(&x), &t).unwrap(), evaluate(&x, m).unwrap());
    }
}
