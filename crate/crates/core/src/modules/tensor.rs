use serde::Serialize;

use super::builders::{tensor_module, TENSOR_CAP};
use crate::error::{Error, Result};
use crate::exactnum::{commutant_dimension, spanned_algebra_dimension};
use crate::{q, QMatrix};

fn permutation_matrix(dim: usize, image: impl Fn(usize) -> usize) -> QMatrix {
    let mut m = QMatrix::zeros(dim, dim);
    for col in 0..dim {
        m.set(image(col), col, q(1));
    }
    m
}

/// Generators of the type B Weyl group acting on `(Q^n)^{⊗d}`.
///
/// The list holds the `d - 1` adjacent factor swaps, then `J` on the first
/// factor (`u_i -> u_{n+1-i}`), then its conjugates moving `J` to factors
/// `2..d`. The group is generated by the first `d` entries; the conjugates
/// are included so each sign change is visible.
pub fn hyperoctahedral_generators(n: usize, d: usize) -> Result<Vec<QMatrix>> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidInput(format!("need n >= 2 and d >= 1, got ({n},{d})")));
    }
    let dim = n
        .checked_pow(d as u32)
        .filter(|&x| x <= TENSOR_CAP)
        .ok_or_else(|| Error::CapExceeded { what: format!("tensor space ({n},{d})"), cap: TENSOR_CAP })?;
    let stride = |k: usize| n.pow((d - 1 - k) as u32);
    let digit = |x: usize, k: usize| (x / stride(k)) % n;
    let mut out = Vec::with_capacity(2 * d - 1);
    let mut swaps = Vec::new();
    for k in 0..d - 1 {
        let s = permutation_matrix(dim, |x| {
            let (a, b) = (digit(x, k), digit(x, k + 1));
            x - a * stride(k) - b * stride(k + 1) + b * stride(k) + a * stride(k + 1)
        });
        swaps.push(s);
    }
    out.extend(swaps.iter().cloned());
    let mut j = permutation_matrix(dim, |x| {
        let a = digit(x, 0);
        x - a * stride(0) + (n - 1 - a) * stride(0)
    });
    out.push(j.clone());
    for s in &swaps {
        j = s.matmul(&j)?.matmul(s)?;
        out.push(j.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCentralizer {
    pub n: usize,
    pub d: usize,
    pub image_dim: usize,
    pub commutant_dim: usize,
    pub equal: bool,
}

/// Compares the image of `U(sl_n^θ)` in `End((Q^n)^{⊗d})` with the commutant
/// of the hyperoctahedral action.
pub fn double_centralizer_check(n: usize, d: usize) -> Result<DoubleCentralizer> {
    let m = tensor_module(n, d)?;
    let image_dim = spanned_algebra_dimension(&m.all_generators(), None)?;
    let commutant_dim = commutant_dimension(&hyperoctahedral_generators(n, d)?)?;
    Ok(DoubleCentralizer { n, d, image_dim, commutant_dim, equal: image_dim == commutant_dim })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_for_two_two() {
        let g = hyperoctahedral_generators(2, 2).unwrap();
        assert_eq!(g.len(), 3);
        let id = QMatrix::identity(4);
        for x in &g {
            assert_eq!(x.matmul(x).unwrap(), id);
        }
        let j = QMatrix::from_ints(&[vec![0, 1], vec![1, 0]]).unwrap();
        let i2 = QMatrix::identity(2);
        assert_eq!(g[1], j.kron(&i2));
        assert_eq!(g[2], i2.kron(&j));
    }

    #[test]
    fn generators_commute_with_the_algebra() {
        for (n, d) in [(2, 3), (3, 2), (4, 2)] {
            let m = tensor_module(n, d).unwrap();
            for w in hyperoctahedral_generators(n, d).unwrap() {
                for g in m.all_generators() {
                    assert!(w.commutator(&g).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn small_double_centralizers() {
        assert_eq!(
            double_centralizer_check(2, 2).unwrap(),
            DoubleCentralizer { n: 2, d: 2, image_dim: 3, commutant_dim: 3, equal: true }
        );
        let one = double_centralizer_check(2, 1).unwrap();
        assert_eq!((one.image_dim, one.commutant_dim), (2, 2));
        assert!(double_centralizer_check(3, 2).unwrap().equal);
    }
}
