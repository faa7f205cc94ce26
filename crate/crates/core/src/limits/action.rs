use super::Combination;
use crate::error::{Error, Result};
use crate::indexing::{co, rank_r, ro, ThetaMatrix, WeightComposition};
use crate::modules::{BasisLabel, RepModule};
use crate::partitions::EpsSign;
use crate::{q, QMatrix, Rational};

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The band index `i` with `A - E^θ_{i,i+1}` diagonal, if any.
fn single_band(a: &ThetaMatrix) -> Option<usize> {
    let n = a.n();
    (1..n).find(|&i| {
        a.add_theta_unit(i, i + 1, -1)
            .ok()
            .is_some_and(|b| b.is_diagonal() && b.rows().iter().flatten().all(|&x| x >= 0))
    })
}

/// How the fundamental class of `A` acts on flag classes: it sends
/// `[F_{co(A)}]` to `coefficient · [F_{ro(A)}]`.
///
/// Diagonal classes act as the identity. A class with one band at `i` acts
/// through the Euler characteristic of its fibre, signed by the fibre's
/// dimension: a projective space of dimension `ro_i - 1` in general, and in
/// the middle of an odd flag a space of isotropic lines in a space of
/// dimension `m`, which is all of `P^{m-1}` for a symplectic form and a
/// quadric for an orthogonal one. Other classes are rejected, as is the
/// self-paired band of an even flag.
pub fn fundamental_class_action(
    a: &ThetaMatrix,
    eps: EpsSign,
) -> Result<(WeightComposition, WeightComposition, Rational)> {
    let n = a.n();
    let (src, dst) = (co(a), ro(a));
    if a.is_diagonal() {
        return Ok((src, dst, q(1)));
    }
    let i = single_band(a).ok_or_else(|| Error::InvalidInput(format!("{a} is not diagonal plus one band")))?;
    let r = rank_r(n);
    if n.is_multiple_of(2) && i == r {
        return Err(Error::InvalidInput(format!("band at the self-paired index {r} of an even flag")));
    }
    let coefficient = if n % 2 == 1 && i == r + 1 {
        let plus = eps.is_plus() as i64;
        let m = dst.at(r + 1) + plus * (a.ambient_v() % 2) as i64;
        let dim = m - 1 - plus;
        let chi = m - plus * (m % 2);
        sign(dim) * chi
    } else {
        let ri = dst.at(i);
        sign(ri - 1) * ri
    };
    Ok((src, dst, q(coefficient)))
}

/// The operator of a level-`v` combination on the flag module at that level.
pub fn evaluate_truncation(c: &Combination, m: &RepModule, eps: EpsSign) -> Result<QMatrix> {
    let mut out = QMatrix::zeros(m.dim(), m.dim());
    for (a, x) in c {
        let (src, dst, k) = fundamental_class_action(a, eps)?;
        let find = |w: &WeightComposition| {
            m.index_of(&BasisLabel::Flag(w.entries().to_vec()))
                .ok_or_else(|| Error::InvalidInput(format!("label {w} is not a basis label of {}", m.name())))
        };
        let (col, row) = (find(&src)?, find(&dst)?);
        out.add_at(row, col, x.clone() * k);
    }
    Ok(out)
}
