//! The nilpotent matrices `e_ε` and forms used to stabilize flags, nilcones
//! and Steinberg varieties.

use std::fmt;
use std::str::FromStr;

use super::{jordan_type, rank_r};
use crate::error::{Error, Result};
use crate::partitions::{EpsSign, Partition};
use crate::{q, QMatrix};

/// Which stabilization `e_ε` realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilizationVariant {
    /// `diag(e, -e)` on `Q^{2n}`, adding `(n, n)` to partitions.
    Block2n(EpsSign),
    /// The almost-Jordan block in `so_n`, `n` odd, adding `(n)`.
    OddOrthogonal,
    /// The almost-Jordan block in `sp_n`, `n` even, adding `(n)`.
    SymplecticEven,
}

impl StabilizationVariant {
    pub fn eps(self) -> EpsSign {
        match self {
            StabilizationVariant::Block2n(e) => e,
            StabilizationVariant::OddOrthogonal => EpsSign::Plus,
            StabilizationVariant::SymplecticEven => EpsSign::Minus,
        }
    }

    /// The variant for which a one-step transfer `v + n -> v` exists, if any.
    pub fn one_step(n: usize, eps: EpsSign) -> Option<Self> {
        match (n % 2, eps) {
            (1, EpsSign::Plus) => Some(StabilizationVariant::OddOrthogonal),
            (0, EpsSign::Minus) => Some(StabilizationVariant::SymplecticEven),
            _ => None,
        }
    }
}

impl fmt::Display for StabilizationVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilizationVariant::Block2n(e) => write!(f, "block-2n:{e}"),
            StabilizationVariant::OddOrthogonal => f.write_str("odd-orthogonal"),
            StabilizationVariant::SymplecticEven => f.write_str("symplectic-even"),
        }
    }
}

impl FromStr for StabilizationVariant {
    type Err = Error;

    /// `block-2n:+1`, `block-2n:-1`, `odd-orthogonal` or `symplectic-even`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "odd-orthogonal" => Ok(StabilizationVariant::OddOrthogonal),
            "symplectic-even" => Ok(StabilizationVariant::SymplecticEven),
            other => match other.strip_prefix("block-2n:") {
                Some(e) => Ok(StabilizationVariant::Block2n(e.parse()?)),
                None => Err(Error::InvalidInput(format!("unknown stabilization variant {other:?}"))),
            },
        }
    }
}

/// A nilpotent `e_ε`, its ε-form, and the step dimensions of the isotropic
/// flag it fixes.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizationData {
    pub variant: StabilizationVariant,
    pub n: usize,
    pub e_eps: QMatrix,
    pub form: QMatrix,
    pub fixed_flag_dims: Vec<usize>,
}

impl StabilizationData {
    /// `e^T M + M e`, which vanishes exactly when `e` is in the isometry algebra.
    pub fn isometry_residual(&self) -> Result<QMatrix> {
        self.e_eps.transpose().matmul(&self.form)?.checked_add(&self.form.matmul(&self.e_eps)?)
    }

    /// The Jordan type the construction is meant to have.
    pub fn expected_jordan_type(&self) -> Partition {
        match self.variant {
            StabilizationVariant::Block2n(_) => Partition::from_unsorted(vec![self.n, self.n]),
            _ => Partition::from_unsorted(vec![self.n]),
        }
    }

    /// Isometry residual vanishes and the Jordan type is as expected.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.isometry_residual()?.is_zero() && jordan_type(&self.e_eps)? == self.expected_jordan_type())
    }
}

fn anti_identity(n: usize, at_row: usize, at_col: usize, c: i64, m: &mut QMatrix) {
    for i in 0..n {
        m.set(at_row + i, at_col + n - 1 - i, q(c));
    }
}

fn superdiagonal(signs: &[i64]) -> QMatrix {
    let m = signs.len() + 1;
    let mut x = QMatrix::zeros(m, m);
    for (i, &s) in signs.iter().enumerate() {
        x.set(i, i + 1, q(s));
    }
    x
}

/// Builds `e_ε` and its form for a variant at rank `n`.
pub fn build_stabilization(variant: StabilizationVariant, n: usize) -> Result<StabilizationData> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    let r = rank_r(n);
    let (e_eps, form, fixed_flag_dims) = match variant {
        StabilizationVariant::Block2n(eps) => {
            let e = superdiagonal(&vec![1; n - 1]);
            let x = QMatrix::direct_sum(&[e.clone(), e.scale(&q(-1))]);
            let mut form = QMatrix::zeros(2 * n, 2 * n);
            anti_identity(n, 0, n, 1, &mut form);
            anti_identity(n, n, 0, eps.value(), &mut form);
            (x, form, vec![2; n])
        }
        StabilizationVariant::OddOrthogonal => {
            if n.is_multiple_of(2) {
                return Err(Error::InvalidInput("odd-orthogonal stabilization needs n odd".into()));
            }
            let signs: Vec<i64> = (0..n - 1).map(|i| if i < r { 1 } else { -1 }).collect();
            let mut form = QMatrix::zeros(n, n);
            anti_identity(n, 0, 0, 1, &mut form);
            (superdiagonal(&signs), form, vec![1; n])
        }
        StabilizationVariant::SymplecticEven => {
            if n % 2 == 1 {
                return Err(Error::InvalidInput("symplectic-even stabilization needs n even".into()));
            }
            let signs: Vec<i64> = (0..n - 1).map(|i| if i < r { 1 } else { -1 }).collect();
            let mut form = QMatrix::zeros(n, n);
            anti_identity(r, 0, r, 1, &mut form);
            anti_identity(r, r, 0, -1, &mut form);
            (superdiagonal(&signs), form, vec![1; n])
        }
    };
    Ok(StabilizationData { variant, n, e_eps, form, fixed_flag_dims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = build_stabilization(StabilizationVariant::Block2n(EpsSign::Minus), 2).unwrap();
        assert_eq!(b.e_eps.n_rows(), 4);
        assert_eq!(jordan_type(&b.e_eps).unwrap().parts(), &[2, 2]);
        assert!(b.isometry_residual().unwrap().is_zero());

        let o = build_stabilization(StabilizationVariant::OddOrthogonal, 3).unwrap();
        assert_eq!(jordan_type(&o.e_eps).unwrap().parts(), &[3]);
        assert_eq!(o.form, {
            let mut j = QMatrix::zeros(3, 3);
            anti_identity(3, 0, 0, 1, &mut j);
            j
        });

        let s = build_stabilization(StabilizationVariant::SymplecticEven, 2).unwrap();
        assert_eq!(jordan_type(&s.e_eps).unwrap().parts(), &[2]);
        assert!(s.verify().unwrap());

        assert!(build_stabilization(StabilizationVariant::OddOrthogonal, 4).is_err());
        assert!(build_stabilization(StabilizationVariant::SymplecticEven, 3).is_err());
    }

    #[test]
    fn every_variant_is_isometric_with_the_right_type() {
        for n in 2..=7 {
            let mut vs =
                vec![StabilizationVariant::Block2n(EpsSign::Plus), StabilizationVariant::Block2n(EpsSign::Minus)];
            vs.push(if n % 2 == 1 {
                StabilizationVariant::OddOrthogonal
            } else {
                StabilizationVariant::SymplecticEven
            });
            for v in vs {
                let d = build_stabilization(v, n).unwrap();
                assert!(d.verify().unwrap(), "{v} n={n}");
                assert_eq!(d.fixed_flag_dims.iter().sum::<usize>(), d.e_eps.n_rows());
            }
        }
    }

    #[test]
    fn variant_parsing() {
        for s in ["block-2n:+1", "block-2n:-1", "odd-orthogonal", "symplectic-even"] {
            assert_eq!(s.parse::<StabilizationVariant>().unwrap().to_string(), s);
        }
    }
}
