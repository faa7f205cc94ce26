use serde::Serialize;

use super::{evaluate, AlgebraElement, OperatorSource};
use crate::error::{Error, Result};
use crate::{q, QMatrix, Rational};

/// Which family of defining relations a relator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelatorCase {
    /// `h_i + h_{θ(i)}`
    HSum,
    /// `[h_i, h_j]`
    HCommute,
    /// `[h_i, e_j] - (c_ij - c_{θ(i)j}) e_j`
    HWeight,
    /// `[e_i, e_j] - δ_{i,θ(j)} h_i` for `c_ij = 0`
    ECommute,
    /// `e_i² e_j - 2 e_i e_j e_i + e_j e_i²` for `c_ij = -1`
    Serre,
    /// The Serre combination with its constant right-hand side.
    SerreNonhomogeneous,
}

/// `lhs - rhs` of one defining relation.
#[derive(Clone, Debug, Serialize)]
pub struct Relator {
    pub element: AlgebraElement,
    pub case: RelatorCase,
    pub label: String,
}

fn cartan(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

fn serre_word(n: usize, i: usize, j: usize) -> AlgebraElement {
    let ei = AlgebraElement::e(n, i);
    let ej = AlgebraElement::e(n, j);
    ei.mul(&ei).mul(&ej).sub(&ei.mul(&ej).mul(&ei).scale(&q(2))).add(&ej.mul(&ei).mul(&ei))
}

/// The defining relators for rank `n`.
pub fn serre_relators(n: usize) -> Result<Vec<Relator>> {
    let c = if n % 2 == 1 { q(-4) } else { q(1) };
    relators_with_constants(n, &c)
}

/// Like [`serre_relators`], with the constant of the nonhomogeneous Serre
/// relation replaced by `constant`: the right side becomes `constant · e_i`
/// for odd `n` and `constant · e_j` for even `n`.
pub fn relators_with_constants(n: usize, constant: &Rational) -> Result<Vec<Relator>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("relators need n >= 2, got {n}")));
    }
    let theta = |i: usize| n - i;
    let mut out = Vec::new();
    let mut push = |element: AlgebraElement, case, label: String| out.push(Relator { element, case, label });
    for i in 1..n {
        if i <= theta(i) {
            let x = if i == theta(i) {
                AlgebraElement::h(n, i)
            } else {
                AlgebraElement::h(n, i).add(&AlgebraElement::h(n, theta(i)))
            };
            push(x, RelatorCase::HSum, format!("h{i} + h{}", theta(i)));
        }
    }
    for i in 1..n {
        for j in i + 1..n {
            let x = AlgebraElement::h(n, i).bracket(&AlgebraElement::h(n, j));
            push(x, RelatorCase::HCommute, format!("[h{i}, h{j}]"));
        }
    }
    for i in 1..n {
        for j in 1..n {
            let k = cartan(i, j) - cartan(theta(i), j);
            let ej = AlgebraElement::e(n, j);
            let x = AlgebraElement::h(n, i).bracket(&ej).sub(&ej.scale(&q(k)));
            push(x, RelatorCase::HWeight, format!("[h{i}, e{j}] - ({k})e{j}"));
        }
    }
    for i in 1..n {
        for j in 1..n {
            if i == j || cartan(i, j) != 0 {
                continue;
            }
            let mut x = AlgebraElement::e(n, i).bracket(&AlgebraElement::e(n, j));
            if i == theta(j) {
                x = x.sub(&AlgebraElement::h(n, i));
            }
            push(x, RelatorCase::ECommute, format!("[e{i}, e{j}]"));
        }
    }
    for i in 1..n {
        for j in 1..n {
            if cartan(i, j) != -1 {
                continue;
            }
            let base = serre_word(n, i, j);
            let special = if n % 2 == 1 { i == theta(j) } else { i == theta(i) };
            if special {
                let target = if n % 2 == 1 { i } else { j };
                let x = base.sub(&AlgebraElement::e(n, target).scale(constant));
                push(x, RelatorCase::SerreNonhomogeneous, format!("serre({i},{j}) = {constant}·e{target}"));
            } else {
                push(base, RelatorCase::Serre, format!("serre({i},{j})"));
            }
        }
    }
    Ok(out)
}

/// Outcome of evaluating one relator.
#[derive(Clone, Debug)]
pub struct RelationEntry {
    pub case: RelatorCase,
    pub label: String,
    /// `None` when the relator evaluates to exactly zero.
    pub witness: Option<QMatrix>,
}

impl RelationEntry {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct RelationsReport {
    pub n: usize,
    pub entries: Vec<RelationEntry>,
}

impl RelationsReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(RelationEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }
}

/// Evaluates a list of relators on `m`.
pub fn check_relators<M: OperatorSource + ?Sized>(n: usize, relators: &[Relator], m: &M) -> Result<RelationsReport> {
    let mut entries = Vec::with_capacity(relators.len());
    for r in relators {
        let x = evaluate(&r.element, m)?;
        entries.push(RelationEntry {
            case: r.case,
            label: r.label.clone(),
            witness: if x.is_zero() { None } else { Some(x) },
        });
    }
    Ok(RelationsReport { n, entries })
}

/// Evaluates every defining relator of rank `n` on `m`.
pub fn relations_check<M: OperatorSource + ?Sized>(n: usize, m: &M) -> Result<RelationsReport> {
    check_relators(n, &serre_relators(n)?, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(rs: &[Relator], label: &str) -> Option<AlgebraElement> {
        rs.iter().find(|r| r.label == label).map(|r| r.element.clone())
    }

    #[test]
    fn rank_two_has_no_serre_pairs() {
        let rs = serre_relators(2).unwrap();
        assert_eq!(find(&rs, "h1 + h1"), Some(AlgebraElement::h(2, 1)));
        assert!(rs.iter().all(|r| !matches!(r.case, RelatorCase::Serre | RelatorCase::SerreNonhomogeneous)));
        assert!(serre_relators(1).is_err());
    }

    #[test]
    fn odd_nonhomogeneous_serre() {
        let rs = serre_relators(3).unwrap();
        let x = rs
            .iter()
            .find(|r| r.case == RelatorCase::SerreNonhomogeneous && r.label.starts_with("serre(1,2)"))
            .unwrap();
        let expected = serre_word(3, 1, 2).add(&AlgebraElement::e(3, 1).scale(&q(4)));
        assert_eq!(x.element, expected);
    }

    #[test]
    fn even_nonhomogeneous_serre() {
        let rs = serre_relators(4).unwrap();
        let x = rs
            .iter()
            .find(|r| r.case == RelatorCase::SerreNonhomogeneous && r.label.starts_with("serre(2,1)"))
            .unwrap();
        let expected = serre_word(4, 2, 1).sub(&AlgebraElement::e(4, 1));
        assert_eq!(x.element, expected);
        assert!(rs.iter().any(|r| r.case == RelatorCase::Serre && r.label == "serre(1,2)"));
    }

    #[test]
    fn hsum_self_paired_index_appears_alone() {
        let rs = serre_relators(4).unwrap();
        assert_eq!(find(&rs, "h2 + h2"), Some(AlgebraElement::h(4, 2)));
        assert_eq!(rs.iter().filter(|r| r.case == RelatorCase::HSum).count(), 2);
    }
}
