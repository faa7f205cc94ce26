use serde::Serialize;

use super::builders::grassmannian_module;
use super::RepModule;
use crate::algebra::{evaluate, monomial_m};
use crate::error::{Error, Result};
use crate::exactnum::EchelonBasis;
use crate::indexing::WeightComposition;
use crate::partitions::EpsSign;
use crate::{q, Rational};

/// Largest `d` tried before a stage is declared not certified.
const MAX_D: usize = 64;

/// The coefficient `P_{a,b,c}(y, d)` of `f^a e^b f^c` from `[Gr_y]` to `[Gr_{y-c+b-a}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulnessPolynomial {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl FaithfulnessPolynomial {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        FaithfulnessPolynomial { a, b, c }
    }

    pub fn eval(&self, y: i64, d: i64) -> Rational {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        let mut p = q(1 << (a + c));
        for l in 1..=a {
            p *= q(d - (y - c + b - l));
        }
        for k in 1..=b {
            p *= q(y - c + k);
        }
        for j in 1..=c {
            p *= q(d - (y - j));
        }
        p
    }

    /// Whether every intermediate class of the path from `[Gr_y]` stays in `0..=d`.
    pub fn in_range(&self, y: i64, d: i64) -> bool {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        y - c >= 0 && y - c + b <= d && y - c + b - a >= 0 && y <= d
    }

    /// Entry of the operator `f^a e^b f^c 1_λ̄` from `[Gr_y]` to `[Gr_{y-c+b-a}]`,
    /// with `λ` the weight of `[Gr_y]`.
    pub fn operator_entry(&self, g: &RepModule, y: usize) -> Result<Rational> {
        let d = g.dim() as i64 - 1;
        let lam = WeightComposition::new(vec![y as i64, 2 * d - 2 * y as i64, y as i64])?;
        let op = evaluate(&monomial_m(self.a, self.b, self.c, &lam), g)?;
        let target = y as i64 - self.c as i64 + self.b as i64 - self.a as i64;
        Ok(if (0..=d).contains(&target) { op.get(target as usize, y) } else { q(0) })
    }

    /// Compares the closed form with the composed operator at level `v` for
    /// every `y`; outside the admissible range the operator must vanish.
    pub fn matches_operator(&self, v: usize) -> Result<bool> {
        let eps = if v.is_multiple_of(2) { EpsSign::Minus } else { EpsSign::Plus };
        let g = grassmannian_module(v, eps)?;
        let d = (v / 2) as i64;
        for y in 0..=d {
            let entry = self.operator_entry(&g, y as usize)?;
            let want = if self.in_range(y, d) { self.eval(y, d) } else { q(0) };
            if entry != want {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulnessStage {
    pub c0: usize,
    pub members: Vec<(usize, usize, usize)>,
    /// Values of `d` whose evaluations were used.
    pub levels: Vec<usize>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulnessCertificate {
    pub independent: bool,
    pub stages: Vec<FaithfulnessStage>,
}

/// Certifies linear independence of the operators `f^a e^b f^c 1_λ̄` for a
/// weight-homogeneous family.
///
/// Members are processed by increasing `c`. For the smallest `c = c0` every
/// member is applied to `[Gr_{c0}]` at growing `d`; members with larger `c`
/// kill that class, so full rank of the stage's evaluation matrix forces
/// their coefficients to vanish. The stage is then removed and the argument
/// repeats.
pub fn faithfulness_check(family: &[(usize, usize, usize)]) -> Result<FaithfulnessCertificate> {
    let mut rest: Vec<(usize, usize, usize)> = family.to_vec();
    rest.sort();
    if rest.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("family has repeated members".into()));
    }
    let shift = |&(a, b, c): &(usize, usize, usize)| a as i64 - b as i64 + c as i64;
    if let Some(first) = rest.first() {
        let m = shift(first);
        if rest.iter().any(|x| shift(x) != m) {
            return Err(Error::InvalidInput("family is not weight-homogeneous".into()));
        }
    }
    let mut stages = Vec::new();
    while !rest.is_empty() {
        let c0 = rest.iter().map(|x| x.2).min().expect("nonempty");
        let (stage, others): (Vec<_>, Vec<_>) = rest.iter().partition(|x| x.2 == c0);
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        let mut levels = Vec::new();
        let mut rank = 0;
        for d in c0..=MAX_D {
            let g = grassmannian_module(2 * d, EpsSign::Minus)?;
            for &(a, b, c) in &others {
                if !FaithfulnessPolynomial::new(a, b, c).operator_entry(&g, c0)?.eq(&q(0)) {
                    return Err(Error::Construction(format!("f^{a} e^{b} f^{c} does not vanish on Gr_{c0} at d={d}")));
                }
            }
            let col = stage
                .iter()
                .map(|&(a, b, c)| FaithfulnessPolynomial::new(a, b, c).operator_entry(&g, c0))
                .collect::<Result<Vec<_>>>()?;
            columns.push(col);
            levels.push(d);
            // rank of the stage-by-level matrix, computed on its rows
            let mut ech = EchelonBasis::new();
            for i in 0..stage.len() {
                let row =
                    columns.iter().enumerate().filter(|(_, c)| c[i] != q(0)).map(|(j, c)| (j, c[i].clone())).collect();
                ech.insert(row);
            }
            rank = ech.rank();
            if rank == stage.len() {
                break;
            }
        }
        let done = rank == stage.len();
        stages.push(FaithfulnessStage { c0, members: stage.clone(), levels, rank });
        if !done {
            return Ok(FaithfulnessCertificate { independent: false, stages });
        }
        rest = others;
    }
    Ok(FaithfulnessCertificate { independent: true, stages })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        let p000 = FaithfulnessPolynomial::new(0, 0, 0);
        let p110 = FaithfulnessPolynomial::new(1, 1, 0);
        let p010 = FaithfulnessPolynomial::new(0, 1, 0);
        for y in -3..6 {
            for d in 0..6 {
                assert_eq!(p000.eval(y, d), q(1));
                assert_eq!(p110.eval(y, d), q(2 * (d - y) * (y + 1)));
                assert_eq!(p010.eval(y, d), q(y + 1));
            }
        }
        for v in 0..=10 {
            assert!(p010.matches_operator(v).unwrap());
        }
    }

    #[test]
    fn closed_form_matches_operators() {
        for a in 0..=3 {
            for b in 0..=3 {
                for c in 0..=3 {
                    for v in 0..=12 {
                        assert!(
                            FaithfulnessPolynomial::new(a, b, c).matches_operator(v).unwrap(),
                            "({a},{b},{c}) v={v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let fam = [(0, 1, 0), (1, 2, 0), (0, 2, 1), (2, 3, 0)];
        let c = faithfulness_check(&fam).unwrap();
        assert!(c.independent);
        assert_eq!(c.stages.len(), 2);
        assert!(faithfulness_check(&[(0, 1, 0), (0, 2, 0)]).is_err());
        assert!(faithfulness_check(&[(0, 1, 0), (0, 1, 0)]).is_err());
        assert!(faithfulness_check(&[]).unwrap().independent);
    }
}
