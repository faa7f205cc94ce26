//! Brute-force centralizer dimensions from explicit nilpotent matrices.

use super::{is_eps_partition, EpsSign, Partition};
use crate::error::{Error, Result};
use crate::exactnum::{EchelonBasis, SparseMatrix, SparseVec};
use crate::{q, QMatrix, Rational};

/// Default size bound for [`centralizer_dimension_oracle`].
pub const ORACLE_BOUND: usize = 8;

/// Writes a lowering Jordan block `e_k` (ones on the superdiagonal) scaled by `s`.
fn put_jordan(x: &mut QMatrix, at: usize, k: usize, s: i64) {
    for i in 0..k.saturating_sub(1) {
        x.set(at + i, at + i + 1, q(s));
    }
}

/// A nilpotent `x` of Jordan type `mu` together with an ε-form `M` such
/// that `x^T M + M x = 0`.
///
/// Parts whose parity forces even multiplicity are paired into blocks
/// `diag(e_k, -e_k)` with form `[[0, J], [eps J, 0]]`; the remaining parts
/// get a single block with the alternating anti-diagonal form
/// `M_{i, k+1-i} = (-1)^i`.
pub fn nilpotent_representative(mu: &Partition, eps: EpsSign) -> Result<(QMatrix, QMatrix)> {
    if !is_eps_partition(mu, eps) {
        return Err(Error::InvalidPartition(format!("{mu} is not an eps-partition for eps={eps}")));
    }
    let m = mu.size();
    let mut x = SparseMatrix::zeros(m, m);
    let mut form = SparseMatrix::zeros(m, m);
    let mut at = 0;
    for (&k, &mult) in mu.multiplicities().iter().rev() {
        if k % 2 == eps.paired_parity() {
            for _ in 0..mult / 2 {
                put_jordan(&mut x, at, k, 1);
                put_jordan(&mut x, at + k, k, -1);
                for i in 0..k {
                    form.set(at + i, at + k + (k - 1 - i), q(1));
                    form.set(at + k + i, at + (k - 1 - i), q(eps.value()));
                }
                at += 2 * k;
            }
        } else {
            for _ in 0..mult {
                put_jordan(&mut x, at, k, 1);
                for i in 0..k {
                    let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                    form.set(at + i, at + (k - 1 - i), q(sign));
                }
                at += k;
            }
        }
    }
    let residual = x.transpose().matmul(&form)?.checked_add(&form.matmul(&x)?)?;
    if !residual.is_zero() {
        return Err(Error::Construction(format!("representative for {mu} leaves the isometry algebra")));
    }
    Ok((x, form))
}

/// Dimension of the centralizer of a nilpotent of type `mu` inside the
/// isometry Lie algebra, computed as the kernel of
/// `y -> (y^T M + M y, xy - yx)` on all `m x m` matrices.
pub fn centralizer_dimension_oracle(mu: &Partition, eps: EpsSign, bound: Option<usize>) -> Result<usize> {
    let cap = bound.unwrap_or(ORACLE_BOUND);
    if mu.size() > cap {
        return Err(Error::CapExceeded { what: format!("oracle size {}", mu.size()), cap });
    }
    let (x, form) = nilpotent_representative(mu, eps)?;
    let m = mu.size();
    let var = |a: usize, b: usize| a * m + b;
    let xt = x.transpose();
    let ft = form.transpose();
    let mut rows: Vec<SparseVec<Rational>> = Vec::new();
    let push = |rows: &mut Vec<SparseVec<Rational>>, terms: Vec<(usize, Rational)>| {
        let mut v: SparseVec<Rational> = SparseVec::new();
        for (k, c) in terms {
            let s = v.remove(&k).unwrap_or_else(|| q(0)) + c;
            if s != q(0) {
                v.insert(k, s);
            }
        }
        if !v.is_empty() {
            rows.push(v);
        }
    };
    for i in 0..m {
        for j in 0..m {
            // (y^T M)_{ij} = sum_k y_{ki} M_{kj};  (M y)_{ij} = sum_k M_{ik} y_{kj}
            let mut t: Vec<(usize, Rational)> = ft.row(j).iter().map(|(&k, c)| (var(k, i), c.clone())).collect();
            t.extend(form.row(i).iter().map(|(&k, c)| (var(k, j), c.clone())));
            push(&mut rows, t);
            // (x y)_{ij} - (y x)_{ij}
            let mut t: Vec<(usize, Rational)> = x.row(i).iter().map(|(&k, c)| (var(k, j), c.clone())).collect();
            t.extend(xt.row(j).iter().map(|(&k, c)| (var(i, k), -c.clone())));
            push(&mut rows, t);
        }
    }
    let mut ech = EchelonBasis::new();
    for r in rows {
        ech.insert(r);
    }
    Ok(m * m - ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{ambient_dim, enumerate_eps_partitions, orbit_dimension};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(centralizer_dimension_oracle(&p("1,1"), EpsSign::Minus, None).unwrap(), 3);
        assert_eq!(centralizer_dimension_oracle(&p("2"), EpsSign::Minus, None).unwrap(), 1);
        assert_eq!(centralizer_dimension_oracle(&p("3"), EpsSign::Plus, None).unwrap(), 1);
        assert!(centralizer_dimension_oracle(&p("9"), EpsSign::Plus, None).is_err());
    }

    #[test]
    fn formula_matches_oracle_up_to_six() {
        for v in 0..=6 {
            for eps in EpsSign::BOTH {
                for mu in enumerate_eps_partitions(v, eps, None).unwrap() {
                    let c = centralizer_dimension_oracle(&mu, eps, None).unwrap();
                    assert_eq!(orbit_dimension(&mu, eps).unwrap() + c, ambient_dim(v, eps).unwrap(), "{mu} {eps}");
                }
            }
        }
    }
}
