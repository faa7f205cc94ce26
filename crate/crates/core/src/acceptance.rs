//! The end-to-end checks run by the `acceptance` test target and the CLI.
//! Each check returns a pass flag and a short human-readable detail.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{chain_element, check_relators, evaluate, relations_check, relators_with_constants, RelatorCase};
use crate::error::Result;
use crate::exactnum::EchelonBasis;
use crate::indexing::{
    a_eps, co, flag_dimension, lambda_v, monomial_chain, ro, StabilizationVariant, ThetaClass, ThetaMatrix,
};
use crate::limits::{
    admissible_residue, coherence_report, limit_generator, transfer_2n, transfer_n, truncate, LimitElement, LimitKind,
    Transfer,
};
use crate::modules::{
    double_centralizer_check, faithfulness_check, grassmannian_module, nflag_module, rectified_module,
    singular_vectors, spectral_transfer_check, t_min_poly_check, tensor_module, twist_by_theta, FaithfulnessPolynomial,
    RepModule,
};
use crate::partitions::{
    ambient_dim, centralizer_dimension_oracle, enumerate_eps_partitions, eps_collapse, nilcone_description,
    orbit_dimension, EpsSign, Partition,
};
use crate::q;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

type Check = fn() -> Result<(bool, String)>;

/// `(id, title, check)` for every criterion, in order.
pub fn criteria() -> Vec<(usize, &'static str, Check)> {
    vec![
        (1, "orbit dimension formula equals the centralizer oracle", c1_orbit_dims),
        (2, "n-nilcone table equals the collapse of (n^k, l)", c2_nilcone),
        (3, "defining relations vanish on every module", c3_relations),
        (4, "nonhomogeneous Serre constants are sharp", c4_serre_constants),
        (5, "t-element eigenvalue, minimal polynomial and transfers", c5_t_element),
        (6, "faithfulness polynomials and independence certificates", c6_faithfulness),
        (7, "double centralizer dimensions agree", c7_double_centralizer),
        (8, "highest weights of the flag module and its twist", c8_highest_weights),
        (9, "transfer rules and limit coherence", c9_transfer),
        (10, "chain elements are linearly independent", c10_basis_proxy),
        (11, "flag and orbit dimension differences", c11_dimension_differences),
    ]
}

pub fn run_criterion(id: usize, title: &'static str, check: Check) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = match check() {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, title, passed, detail, elapsed: start.elapsed() }
}

pub fn run_all() -> Vec<CriterionResult> {
    criteria().into_iter().map(|(id, title, f)| run_criterion(id, title, f)).collect()
}

fn levels(max_v: usize) -> impl Iterator<Item = (usize, EpsSign)> {
    (0..=max_v).flat_map(|v| EpsSign::BOTH.into_iter().map(move |e| (v, e))).filter(|&(v, e)| v % 2 == 0 || e.is_plus())
}

fn c1_orbit_dims() -> Result<(bool, String)> {
    let mut count = 0;
    for (v, eps) in levels(8) {
        for mu in enumerate_eps_partitions(v, eps, None)? {
            let formula = orbit_dimension(&mu, eps)?;
            let oracle = ambient_dim(v, eps)? - centralizer_dimension_oracle(&mu, eps, None)?;
            if formula != oracle {
                return Ok((false, format!("mu={mu} eps={eps}: formula {formula}, oracle {oracle}")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} partitions")))
}

fn c2_nilcone() -> Result<(bool, String)> {
    let mut count = 0;
    for n in 2..=6 {
        for (v, eps) in levels(12).filter(|&(v, _)| v >= 1) {
            let desc = nilcone_description(n, v, eps)?;
            let (k, l) = (v / n, v % n);
            let very_even = eps.is_plus() && l == 0 && n % 2 == 0 && k % 2 == 0;
            let mut parts = vec![n; k];
            if l > 0 {
                parts.push(l);
            }
            let nk = Partition::new(parts)?;
            let ok = if very_even {
                desc.components.len() == 2 && desc.components.iter().all(|c| *c == nk)
            } else {
                desc.components == vec![eps_collapse(&nk, eps)?]
            };
            if !ok {
                return Ok((false, format!("n={n} v={v} eps={eps}: got {:?}", desc.components)));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} cases")))
}

fn check_module(n: usize, m: &RepModule, failures: &mut Vec<String>) -> Result<()> {
    let rep = relations_check(n, m)?;
    for f in rep.failures() {
        failures.push(format!("{}: {}", m.name(), f.label));
    }
    Ok(())
}

fn c3_relations() -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut modules = 0;
    for (v, eps) in levels(10) {
        check_module(3, &grassmannian_module(v, eps)?, &mut failures)?;
        modules += 1;
    }
    for n in 3..=5 {
        for (v, eps) in levels(8) {
            if n % 2 == 0 && v % 2 == 1 {
                continue;
            }
            check_module(n, &nflag_module(n, v, eps)?, &mut failures)?;
            modules += 1;
        }
    }
    for n in [2, 4] {
        for v in [3, 5] {
            check_module(n, &rectified_module(n, v)?, &mut failures)?;
            modules += 1;
        }
    }
    for n in 2..=5 {
        for d in 1..=3 {
            check_module(n, &tensor_module(n, d)?, &mut failures)?;
            modules += 1;
        }
    }
    if failures.is_empty() {
        Ok((true, format!("{modules} modules")))
    } else {
        Ok((false, format!("{} failing relators, first: {}", failures.len(), failures[0])))
    }
}

/// Whether the nonhomogeneous relators with `constant` vanish on all of `mods`.
fn constant_holds(n: usize, constant: i64, mods: &[RepModule]) -> Result<bool> {
    let rels: Vec<_> = relators_with_constants(n, &q(constant))?
        .into_iter()
        .filter(|r| r.case == RelatorCase::SerreNonhomogeneous)
        .collect();
    for m in mods {
        if !check_relators(n, &rels, m)?.all_passed() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn c4_serre_constants() -> Result<(bool, String)> {
    let odd: Vec<RepModule> = levels(10).map(|(v, e)| grassmannian_module(v, e)).collect::<Result<_>>()?;
    let mut even: Vec<RepModule> =
        levels(8).filter(|&(v, _)| v % 2 == 0).map(|(v, e)| nflag_module(4, v, e)).collect::<Result<_>>()?;
    even.push(tensor_module(4, 2)?);
    let mut detail = Vec::new();
    let mut ok = true;
    for (n, c, mods) in [(3usize, -4i64, &odd), (4, 1, &even)] {
        let exact = constant_holds(n, c, mods)?;
        let below = constant_holds(n, c - 1, mods)?;
        let above = constant_holds(n, c + 1, mods)?;
        ok &= exact && !below && !above;
        detail.push(format!("n={n}: {c} holds={exact}, {} holds={below}, {} holds={above}", c - 1, c + 1));
    }
    Ok((ok, detail.join("; ")))
}

fn c5_t_element() -> Result<(bool, String)> {
    let mut count = 0;
    for (v, eps) in levels(11) {
        if !t_min_poly_check(v, eps)? {
            return Ok((false, format!("minimal polynomial or top eigenvalue fails at v={v} eps={eps}")));
        }
        if v <= 10 && !spectral_transfer_check(v, eps)? {
            return Ok((false, format!("spectral transfer fails at v={v} eps={eps}")));
        }
        count += 1;
    }
    Ok((true, format!("{count} levels")))
}

/// The monomials `(a, b, c)` with `a <= b`, entries at most 4 and `a - b + c = m`.
pub fn faithfulness_pool(m: i64) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=4usize {
        for b in a..=4usize {
            for c in 0..=4usize {
                if a as i64 - b as i64 + c as i64 == m {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

fn c6_faithfulness() -> Result<(bool, String)> {
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                let p = FaithfulnessPolynomial::new(a, b, c);
                for v in 0..=12 {
                    if !p.matches_operator(v)? {
                        return Ok((false, format!("P({a},{b},{c}) differs from the operator at v={v}")));
                    }
                }
            }
        }
    }
    let mut families = 0;
    for m in -3..=3 {
        for window in faithfulness_pool(m).chunks(8) {
            let cert = faithfulness_check(window)?;
            if !cert.independent {
                return Ok((false, format!("family {window:?} not certified")));
            }
            families += 1;
        }
    }
    Ok((true, format!("closed form matches for a,b,c <= 3, v <= 12; {families} families certified")))
}

fn c7_double_centralizer() -> Result<(bool, String)> {
    let mut detail = Vec::new();
    let mut ok = true;
    for (n, d) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let r = double_centralizer_check(n, d)?;
        ok &= r.equal;
        detail.push(format!("({n},{d}): {} vs {}", r.image_dim, r.commutant_dim));
    }
    Ok((ok, detail.join(", ")))
}

/// Checks both highest-weight statements on one module; returns a failure description.
pub fn highest_weight_mismatch(n: usize, v: usize, eps: EpsSign) -> Result<Option<String>> {
    let m = nflag_module(n, v, eps)?;
    let r = n / 2;
    let d = (v / 2) as i64;
    let mut top = vec![0; r];
    top[r - 1] = 2 * d;
    let mut om = vec![0; r];
    om[0] = d;
    let mut omp = vec![0; r];
    omp[0] = 2 * d;
    let tw = singular_vectors(&twist_by_theta(&m)?)?;
    let un = singular_vectors(&m)?;
    let mut bad = Vec::new();
    if !tw.has_weight(&top, &top) {
        bad.push(format!("twisted has {:?}", tw.weights()));
    }
    if !un.has_weight(&om, &omp) {
        bad.push(format!("untwisted has {:?}", un.weights()));
    }
    Ok(if bad.is_empty() { None } else { Some(format!("n={n} v={v} eps={eps}: {}", bad.join(", "))) })
}

fn c8_highest_weights() -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 3..=5 {
        for (v, eps) in levels(8) {
            if n % 2 == 0 && v % 2 == 1 {
                continue;
            }
            count += 1;
            if let Some(f) = highest_weight_mismatch(n, v, eps)? {
                failures.push(f);
            }
        }
    }
    if failures.is_empty() {
        Ok((true, format!("{count} modules")))
    } else {
        Ok((false, format!("{} of {count} modules differ; first: {}", failures.len(), failures[0])))
    }
}

/// θ-symmetric matrices with off-diagonal entries at most `off` and
/// diagonal entries at most `diag`.
fn theta_matrices(n: usize, off: i64, diag: i64) -> Vec<ThetaMatrix> {
    let cells: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| (i, j) <= (n - 1 - i, n - 1 - j)).collect();
    let base = (off.max(diag) + 1) as usize;
    let total = base.pow(cells.len() as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut a = vec![vec![0; n]; n];
            for &(i, j) in &cells {
                let x = (code % base) as i64;
                code /= base;
                if x > if i == j { diag } else { off } {
                    return None;
                }
                a[i][j] = x;
                a[n - 1 - i][n - 1 - j] = x;
            }
            Some(ThetaMatrix::from_rows(a).expect("symmetric by construction"))
        })
        .collect()
}

fn corrupted(n: usize, residue: usize, eps: EpsSign) -> Result<LimitElement> {
    let e = limit_generator(LimitKind::E(1), n, residue, eps)?;
    LimitElement::custom("corrupted e1", n, eps, residue, move |v| {
        Ok(truncate(&e, v)?
            .into_iter()
            .map(|(a, x)| {
                let flip = if (a.at(n, n) / 2) % 2 == 1 { q(-1) } else { q(1) };
                (a, x * flip)
            })
            .collect())
    })
}

fn c9_transfer() -> Result<(bool, String)> {
    let t = |s: &str| ThetaMatrix::parse(s, None);
    let examples = transfer_2n(&t("2,1;1,2")?) == Transfer::Label(t("0,1;1,0")?)
        && transfer_2n(&t("0,1;1,0")?) == Transfer::Zero
        && transfer_2n(&t("2,0;0,2")?) == Transfer::Label(t("0,0;0,0")?)
        && transfer_n(&t("1,0,0;0,1,0;0,0,1")?, StabilizationVariant::OddOrthogonal)?
            == Transfer::Label(t("0,0,0;0,0,0;0,0,0")?);
    if !examples {
        return Ok((false, "a transfer example fails".into()));
    }
    let mut labels = 0;
    for n in 2..=4 {
        let max = if n == 4 { 2 } else { 3 };
        let variant =
            if n % 2 == 1 { StabilizationVariant::OddOrthogonal } else { StabilizationVariant::SymplecticEven };
        for a in theta_matrices(n, max, max) {
            let up = crate::indexing::shift_class(&a, 1)?;
            if transfer_2n(&up) != Transfer::Label(a.clone()) {
                return Ok((false, format!("round trip fails for {a}")));
            }
            let twice = match transfer_n(&a, variant)? {
                Transfer::Label(b) => transfer_n(&b, variant)?,
                Transfer::Zero => Transfer::Zero,
            };
            if twice != transfer_2n(&a) {
                return Ok((false, format!("two one-step transfers differ from one 2n-step transfer at {a}")));
            }
            labels += 1;
        }
    }
    let mut families = 0;
    for n in 2..=4 {
        for eps in EpsSign::BOTH {
            for res in (1..=2 * n).filter(|&v| admissible_residue(n, v, eps)) {
                let mut kinds: Vec<LimitKind> =
                    (1..n).flat_map(|i| [LimitKind::E(i), LimitKind::F(i), LimitKind::H(i)]).collect();
                kinds.extend(lambda_v(n, res).into_iter().map(LimitKind::Idem));
                for k in kinds {
                    let x = limit_generator(k.clone(), n, res, eps)?;
                    let lv = x.levels(3);
                    for &v in &lv[..2] {
                        let rep = coherence_report(&x, v)?;
                        if !rep.passed() {
                            return Ok((false, format!("{k} n={n} eps={eps} v={v}: {:?}", rep.mismatches)));
                        }
                    }
                    families += 1;
                }
            }
        }
    }
    let bad = corrupted(3, 4, EpsSign::Minus)?;
    if coherence_report(&bad, 4)?.passed() {
        return Ok((false, "corrupted sign family passed coherence".into()));
    }
    Ok((true, format!("{labels} labels, {families} generator families over 3 levels")))
}

/// Class representatives with off-diagonal entries at most 2 and even entry
/// sum at most 8, the largest total seen by the tensor modules with `d <= 4`.
pub fn basis_proxy_classes(n: usize) -> Vec<ThetaMatrix> {
    let mut out: Vec<ThetaMatrix> = Vec::new();
    for a in theta_matrices(n, 2, 8) {
        if a.sum() % 2 != 0 || a.sum() > 8 {
            continue;
        }
        let rep = ThetaClass::of(&a).representative().clone();
        let rep = ThetaMatrix::from_rows(rep.rows().to_vec()).expect("valid");
        if !out.contains(&rep) {
            out.push(rep);
        }
    }
    out
}

fn c10_basis_proxy() -> Result<(bool, String)> {
    let mut detail = Vec::new();
    for n in 2..=3 {
        let mods: Vec<RepModule> = (1..=4).map(|d| tensor_module(n, d)).collect::<Result<_>>()?;
        let classes = basis_proxy_classes(n);
        let mut ech = EchelonBasis::new();
        for a in &classes {
            monomial_chain(a)?;
            let x = chain_element(a)?;
            let mut flat = crate::exactnum::SparseVec::new();
            let mut offset = 0;
            for m in &mods {
                let op = evaluate(&x, m)?;
                for (k, val) in op.flatten() {
                    flat.insert(offset + k, val);
                }
                offset += m.dim() * m.dim();
            }
            if !ech.insert(flat) {
                return Ok((false, format!("n={n}: chain element of {a} (ro {}, co {}) is dependent", ro(a), co(a))));
            }
        }
        detail.push(format!("n={n}: {} classes", classes.len()));
    }
    Ok((true, detail.join(", ")))
}

fn c11_dimension_differences() -> Result<(bool, String)> {
    let mut flags = 0;
    for n in 2..=5 {
        for (v, eps) in levels(10) {
            if v % 2 == 1 && n % 2 == 0 {
                continue;
            }
            for lab in lambda_v(n, v) {
                let d = lab.actual_dims(v, eps);
                let up: Vec<i64> = d.iter().map(|x| x + 2).collect();
                let diff = (flag_dimension(&up, eps)? - flag_dimension(&d, eps)?) * q(2);
                if diff != q(a_eps(n, v, eps)) {
                    return Ok((false, format!("cotangent jump at n={n} v={v} eps={eps} d={d:?} is {diff}")));
                }
                flags += 1;
            }
        }
    }
    let mut orbits = 0;
    for n in 2..=5 {
        for (v, eps) in levels(6) {
            for mu in enumerate_eps_partitions(v, eps, None)? {
                if mu.part(0) > n {
                    continue;
                }
                let big = mu.union(&Partition::new(vec![n, n])?);
                let jump = orbit_dimension(&big, eps)? as i64 - orbit_dimension(&mu, eps)? as i64;
                if jump != a_eps(n, v, eps) {
                    return Ok((false, format!("orbit jump at n={n} mu={mu} eps={eps} is {jump}")));
                }
                orbits += 1;
            }
        }
    }
    Ok((true, format!("{flags} flag labels, {orbits} orbit pairs")))
}
