//! Transfer maps between levels, the limit generators as lazily truncated
//! families of Θ-matrices, and their action on flag modules through
//! fundamental classes.

mod action;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::indexing::{lambda_v, level_sum, rank_r, StabilizationVariant, ThetaClass, ThetaMatrix, WeightComposition};
use crate::partitions::EpsSign;
use crate::{q, Rational};

pub use action::{evaluate_truncation, fundamental_class_action};

/// Image of a label under a transfer map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transfer {
    Label(ThetaMatrix),
    Zero,
}

impl Transfer {
    pub fn label(&self) -> Option<&ThetaMatrix> {
        match self {
            Transfer::Label(a) => Some(a),
            Transfer::Zero => None,
        }
    }
}

impl fmt::Display for Transfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transfer::Label(a) => write!(f, "{a}"),
            Transfer::Zero => f.write_str("0"),
        }
    }
}

fn subtract_identity(a: &ThetaMatrix, k: i64, step: usize) -> Transfer {
    match a.add_identity(-k, a.ambient_v().saturating_sub(step)) {
        Ok(b) => Transfer::Label(b),
        Err(_) => Transfer::Zero,
    }
}

/// `A - 2I` at level `v - 2n`, or zero when an entry would be negative.
pub fn transfer_2n(a: &ThetaMatrix) -> Transfer {
    subtract_identity(a, 2, 2 * a.n())
}

/// `A - I` at level `v - n` for the one-step variants: the odd orthogonal
/// one for odd `n` and the symplectic one for even `n`.
pub fn transfer_n(a: &ThetaMatrix, variant: StabilizationVariant) -> Result<Transfer> {
    let n = a.n();
    let ok = match variant {
        StabilizationVariant::OddOrthogonal => n % 2 == 1,
        StabilizationVariant::SymplecticEven => n.is_multiple_of(2),
        StabilizationVariant::Block2n(_) => false,
    };
    if !ok {
        return Err(Error::InvalidInput(format!("no one-step transfer {variant} for n={n}")));
    }
    Ok(subtract_identity(a, 1, n))
}

/// A finite signed combination of labels at one level.
pub type Combination = BTreeMap<ThetaMatrix, Rational>;

/// Applies `transfer_2n` termwise; returns the surviving combination and the
/// number of terms sent to zero.
pub fn transfer_combination(c: &Combination) -> (Combination, usize) {
    let mut out = Combination::new();
    let mut absorbed = 0;
    for (a, x) in c {
        match transfer_2n(a) {
            Transfer::Label(b) => {
                let s = out.remove(&b).unwrap_or_else(|| q(0)) + x.clone();
                if s != q(0) {
                    out.insert(b, s);
                }
            }
            Transfer::Zero => absorbed += 1,
        }
    }
    (out, absorbed)
}

/// Whether `v` is one of the residues `1..=2n` the limit is built over.
pub fn admissible_residue(n: usize, v: usize, eps: EpsSign) -> bool {
    (1..=2 * n).contains(&v) && (v.is_multiple_of(2) || (eps.is_plus() && n % 2 == 1))
}

/// A class of Θ-matrices modulo `2I` in the limit over a residue.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LimitLabel {
    pub class: ThetaClass,
    pub residue_v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitKind {
    E(usize),
    F(usize),
    H(usize),
    Idem(WeightComposition),
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitKind::E(i) => write!(f, "e{i}"),
            LimitKind::F(i) => write!(f, "f{i}"),
            LimitKind::H(i) => write!(f, "h{i}"),
            LimitKind::Idem(l) => write!(f, "1{l}"),
        }
    }
}

type Rule = Arc<dyn Fn(usize) -> Result<Combination> + Send + Sync>;

/// An element of the projective limit, given by its truncation at each level.
#[derive(Clone)]
pub struct LimitElement {
    n: usize,
    eps: EpsSign,
    residue_v: usize,
    name: String,
    rule: Rule,
}

impl fmt::Debug for LimitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LimitElement")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("eps", &self.eps)
            .field("residue_v", &self.residue_v)
            .finish()
    }
}

impl LimitElement {
    /// A family given by an arbitrary truncation rule.
    pub fn custom(
        name: impl Into<String>,
        n: usize,
        eps: EpsSign,
        residue_v: usize,
        rule: impl Fn(usize) -> Result<Combination> + Send + Sync + 'static,
    ) -> Result<Self> {
        if !admissible_residue(n, residue_v, eps) {
            return Err(Error::ResidueMismatch(format!("residue {residue_v} for n={n}, eps={eps}")));
        }
        Ok(LimitElement { n, eps, residue_v, name: name.into(), rule: Arc::new(rule) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> EpsSign {
        self.eps
    }

    pub fn residue_v(&self) -> usize {
        self.residue_v
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The first `horizon` levels of the residue class, smallest first.
    pub fn levels(&self, horizon: usize) -> Vec<usize> {
        let m = 2 * self.n;
        (0..horizon).map(|k| self.residue_v % m + k * m).collect()
    }

    /// Truncations over the first `horizon` levels, serializable.
    pub fn to_json(&self, horizon: usize) -> Result<LimitJson> {
        let mut levels = BTreeMap::new();
        for v in self.levels(horizon) {
            let c = truncate(self, v)?;
            levels.insert(v, c.iter().map(|(a, x)| (a.to_string(), x.to_string())).collect());
        }
        Ok(LimitJson {
            name: self.name.clone(),
            n: self.n,
            eps: self.eps.to_string(),
            residue_v: self.residue_v,
            levels,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitJson {
    pub name: String,
    pub n: usize,
    pub eps: String,
    pub residue_v: usize,
    pub levels: BTreeMap<usize, Vec<(String, String)>>,
}

fn band_matrices(n: usize, total: usize, v: usize, band: (usize, usize)) -> Result<Vec<ThetaMatrix>> {
    if total < 2 {
        return Ok(Vec::new());
    }
    lambda_v(n, total - 2).iter().map(|d| ThetaMatrix::diagonal(d, v).add_theta_unit(band.0, band.1, 1)).collect()
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

fn add(c: &mut Combination, a: ThetaMatrix, x: Rational) {
    let s = c.remove(&a).unwrap_or_else(|| q(0)) + x;
    if s != q(0) {
        c.insert(a, s);
    }
}

fn generator_truncation(kind: &LimitKind, n: usize, eps: EpsSign, v: usize) -> Result<Combination> {
    let r = rank_r(n);
    let total = level_sum(v);
    let odd_v = (v % 2) as i64;
    let plus = eps.is_plus() as i64;
    let twist = odd_v + 1 - plus;
    let mut out = Combination::new();
    match kind {
        LimitKind::E(i) if n % 2 == 1 => {
            for a in band_matrices(n, total, v, (*i, i + 1))? {
                let k = a.at(*i, *i) + if *i == r + 1 { twist } else { 0 };
                add(&mut out, a, sign(k));
            }
        }
        LimitKind::F(i) if n % 2 == 1 => {
            for a in band_matrices(n, total, v, (i + 1, *i))? {
                let k = a.at(i + 1, i + 1) + if *i == r { twist } else { 0 };
                add(&mut out, a, sign(k));
            }
        }
        LimitKind::E(i) | LimitKind::F(i) if *i == r => {
            for a in band_matrices(n, total, v, (r, r + 1))? {
                let k = a.at(r, r) - plus;
                add(&mut out, a, sign(k));
            }
            // The correction `(-1)^{a_rr} [Z_{A_r}]` for odd `a_rr`, indexed by the
            // diagonal `A_r`. Its entry `a_rr + 1` may be 0: such labels are the
            // images of `a_rr = 1` terms from the level above, so they belong to
            // the truncation even though `A` itself would have `a_rr = -1`.
            for d in lambda_v(n, total) {
                if d.at(r) % 2 == 0 {
                    add(&mut out, ThetaMatrix::diagonal(&d, v), q(-1));
                }
            }
        }
        LimitKind::E(i) => {
            for a in band_matrices(n, total, v, (*i, i + 1))? {
                let k = a.at(*i, *i);
                add(&mut out, a, sign(k));
            }
        }
        LimitKind::F(i) => {
            for a in band_matrices(n, total, v, (i + 1, *i))? {
                let k = a.at(i + 1, i + 1);
                add(&mut out, a, sign(k));
            }
        }
        LimitKind::H(i) => {
            for d in lambda_v(n, total) {
                let a = ThetaMatrix::diagonal(&d, v);
                add(&mut out, a, q(d.at(*i) - d.at(i + 1)));
            }
        }
        LimitKind::Idem(l) => {
            let rep = l.class_rep();
            let gap = total as i64 - rep.sum();
            let step = 2 * n as i64;
            if gap >= 0 && gap % step == 0 {
                let k = gap / step;
                let w = WeightComposition::new(rep.entries().iter().map(|x| x + 2 * k).collect())?;
                out.insert(ThetaMatrix::diagonal(&w, v), q(1));
            }
        }
    }
    Ok(out)
}

/// The generator families `e_i`, `f_i`, `h_i` and `1_λ̄` over a residue.
pub fn limit_generator(kind: LimitKind, n: usize, residue_v: usize, eps: EpsSign) -> Result<LimitElement> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n={n}")));
    }
    match &kind {
        LimitKind::E(i) | LimitKind::F(i) | LimitKind::H(i) if !(1..n).contains(i) => {
            return Err(Error::InvalidInput(format!("index {i} out of range for n={n}")));
        }
        LimitKind::Idem(l) => {
            let m = 2 * n as i64;
            if l.n() != n || (l.sum() - level_sum(residue_v) as i64).rem_euclid(m) != 0 {
                return Err(Error::ResidueMismatch(format!("weight {l} is not in the residue {residue_v}")));
            }
        }
        _ => {}
    }
    let name = format!("{kind}");
    let k = kind.clone();
    LimitElement::custom(name, n, eps, residue_v, move |v| generator_truncation(&k, n, eps, v))
}

/// The finite combination at level `v`.
pub fn truncate(x: &LimitElement, v: usize) -> Result<Combination> {
    let m = 2 * x.n;
    if v % m != x.residue_v % m {
        return Err(Error::ResidueMismatch(format!("level {v} is not congruent to {} mod {m}", x.residue_v)));
    }
    (x.rule)(v)
}

/// The truncation at `v` as limit labels.
pub fn limit_labels(x: &LimitElement, v: usize) -> Result<Vec<(LimitLabel, Rational)>> {
    Ok(truncate(x, v)?
        .into_iter()
        .map(|(a, c)| (LimitLabel { class: ThetaClass::of(&a), residue_v: x.residue_v }, c))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub v: usize,
    pub upper_terms: usize,
    pub lower_terms: usize,
    /// Terms of the upper truncation sent to zero.
    pub absorbed: usize,
    /// Labels whose coefficients disagree: `(label, transferred, truncated)`.
    pub mismatches: Vec<(String, String, String)>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `transfer_2n(truncate(x, v + 2n))` with `truncate(x, v)` termwise.
pub fn coherence_report(x: &LimitElement, v: usize) -> Result<CoherenceReport> {
    let upper = truncate(x, v + 2 * x.n)?;
    let lower = truncate(x, v)?;
    let (moved, absorbed) = transfer_combination(&upper);
    let mut mismatches = Vec::new();
    let keys: std::collections::BTreeSet<&ThetaMatrix> = moved.keys().chain(lower.keys()).collect();
    for a in keys {
        let s = moved.get(a).cloned().unwrap_or_else(|| q(0));
        let t = lower.get(a).cloned().unwrap_or_else(|| q(0));
        if s != t {
            mismatches.push((a.to_string(), s.to_string(), t.to_string()));
        }
    }
    Ok(CoherenceReport { v, upper_terms: upper.len(), lower_terms: lower.len(), absorbed, mismatches })
}

pub fn coherence_check(x: &LimitElement, v: usize) -> Result<bool> {
    Ok(coherence_report(x, v)?.passed())
}

#[cfg(test)]
mod tests;
