use serde::Serialize;

use super::builders::{grassmannian_module, tensor_module};
use super::BasisLabel;
use crate::error::{Error, Result};
use crate::exactnum::{integer_eigenvalues, minimal_polynomial, poly};
use crate::partitions::EpsSign;
use crate::{q, QMatrix};

/// `e f - h` on the part of rank-three tensor space avoiding the middle
/// basis vector, the space on which the top rank-one weight is realized.
///
/// For `d = floor(v/2) = 0` this is the `1 x 1` zero matrix.
pub fn t_element_matrix(v: usize, eps: EpsSign) -> Result<QMatrix> {
    if v % 2 == 1 && !eps.is_plus() {
        return Err(Error::InvalidInput(format!("no symplectic form on an odd space (v={v})")));
    }
    let d = v / 2;
    if d == 0 {
        return Ok(QMatrix::zeros(1, 1));
    }
    let m = tensor_module(3, d)?;
    let t = m.e(1).matmul(m.f(1))?.checked_sub(m.h(1))?;
    let keep: Vec<usize> =
        (0..m.dim()).filter(|&k| matches!(&m.labels()[k], BasisLabel::Tensor(c) if !c.contains(&2))).collect();
    let kept: std::collections::HashSet<usize> = keep.iter().copied().collect();
    if t.triplets().any(|(i, j, _)| kept.contains(&j) && !kept.contains(&i)) {
        return Err(Error::Construction("t does not preserve the top weight space".into()));
    }
    Ok(t.submatrix(&keep, &keep))
}

/// Eigenvalues of the t-element, ascending.
pub fn t_spectrum(v: usize, eps: EpsSign) -> Result<Vec<i64>> {
    integer_eigenvalues(&t_element_matrix(v, eps)?)
}

fn defining_polynomial(d: i64) -> Vec<crate::Rational> {
    poly::from_roots(&(0..=d).map(|k| q(d - 2 * k)).collect::<Vec<_>>())
}

/// The minimal polynomial of `t` divides `∏_{k=0}^{d} (X - d + 2k)`, and
/// `e f - h` acts on the top Grassmannian class by `d`.
pub fn t_min_poly_check(v: usize, eps: EpsSign) -> Result<bool> {
    let d = (v / 2) as i64;
    let t = t_element_matrix(v, eps)?;
    let divides = poly::divides(&minimal_polynomial(&t)?, &defining_polynomial(d));
    let g = grassmannian_module(v, eps)?;
    let tg = g.e(1).matmul(g.f(1))?.checked_sub(g.h(1))?;
    let top = d as usize;
    let col: Vec<_> = (0..g.dim()).map(|i| tg.get(i, top)).collect();
    let top_ok = col.iter().enumerate().all(|(i, x)| if i == top { *x == q(d) } else { *x == q(0) });
    Ok(divides && top_ok)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralTransferReport {
    pub v: usize,
    pub d: usize,
    pub spectrum: Vec<i64>,
    pub expected: Vec<i64>,
    /// Spectrum two levels down, `v - 4`, and whether it lies in the image of `X -> X`.
    pub two_step: Option<(Vec<i64>, bool)>,
    /// Symplectic only: spectrum at `v - 2` and whether it lies in the image of `X -> -(X+1)`.
    pub one_step: Option<(Vec<i64>, bool)>,
    pub passed: bool,
}

/// Spectrum of `t` at level `v` and its behaviour under the transfer maps.
pub fn spectral_transfer_report(v: usize, eps: EpsSign) -> Result<SpectralTransferReport> {
    let d = v / 2;
    let spectrum = t_spectrum(v, eps)?;
    let expected: Vec<i64> = (0..=d as i64).map(|k| 2 * k - d as i64).collect();
    let mut passed = spectrum == expected;
    let two_step = if v >= 4 {
        let lower = t_spectrum(v - 4, eps)?;
        let ok = lower.iter().all(|x| spectrum.contains(x));
        passed &= ok;
        Some((lower, ok))
    } else {
        None
    };
    let one_step = if !eps.is_plus() && v >= 2 {
        let lower = t_spectrum(v - 2, eps)?;
        let image: Vec<i64> = spectrum.iter().map(|x| -(x + 1)).collect();
        let ok = lower.iter().all(|x| image.contains(x));
        passed &= ok;
        Some((lower, ok))
    } else {
        None
    };
    Ok(SpectralTransferReport { v, d, spectrum, expected, two_step, one_step, passed })
}

pub fn spectral_transfer_check(v: usize, eps: EpsSign) -> Result<bool> {
    Ok(spectral_transfer_report(v, eps)?.passed)
}
