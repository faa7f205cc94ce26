//! Exact scalars, sparse matrices and the linear algebra built on them.

mod echelon;
mod matrix;
pub mod poly;
mod scalar;

use std::collections::VecDeque;

use num_traits::{Signed, ToPrimitive, Zero};

pub use echelon::{axpy, scale_vec, EchelonBasis, SparseVec};
pub use matrix::SparseMatrix;
pub use scalar::Scalar;

use crate::error::{Error, Result};
use crate::Rational;

/// Exact product `a * b`.
pub fn matmul<T: Scalar>(a: &SparseMatrix<T>, b: &SparseMatrix<T>) -> Result<SparseMatrix<T>> {
    a.matmul(b)
}

/// A basis of the right null space, one sparse column vector per free column.
pub fn kernel_basis<T: Scalar>(a: &SparseMatrix<T>) -> Vec<SparseVec<T>> {
    let mut ech = EchelonBasis::new();
    for i in 0..a.n_rows() {
        ech.insert(a.row(i).clone());
    }
    let rref = ech.into_rref();
    let pivots: std::collections::BTreeSet<usize> = rref.iter().map(|(p, _)| *p).collect();
    (0..a.n_cols())
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = SparseVec::new();
            x.insert(free, T::one());
            for (p, row) in &rref {
                if let Some(v) = row.get(&free) {
                    x.insert(*p, -v.clone());
                }
            }
            x
        })
        .collect()
}

/// Monic minimal polynomial as ascending coefficients, leading 1 last.
///
/// Successive powers are flattened and reduced against the earlier ones; a
/// tag coordinate per power records the combination, so the first
/// dependency found reads off the polynomial directly.
pub fn minimal_polynomial<T: Scalar>(a: &SparseMatrix<T>) -> Result<Vec<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("minimal polynomial of a non-square matrix".into()));
    }
    let m = a.n_rows();
    let tag0 = m * m;
    let mut ech = EchelonBasis::new();
    let mut power = SparseMatrix::identity(m);
    for k in 0..=m {
        let mut v = power.flatten();
        v.insert(tag0 + k, T::one());
        let r = ech.reduce(v);
        if r.keys().next().is_some_and(|&c| c >= tag0) {
            let lead = r[&(tag0 + k)].clone();
            let mut coeffs = vec![T::zero(); k + 1];
            for (c, x) in r {
                coeffs[c - tag0] = x / lead.clone();
            }
            return Ok(coeffs);
        }
        ech.insert(r);
        power = a.matmul(&power)?;
    }
    unreachable!("Cayley-Hamilton bounds the degree by the size")
}

/// Dimension of `{X : XG = GX for every generator G}`.
pub fn commutant_dimension<T: Scalar>(generators: &[SparseMatrix<T>]) -> Result<usize> {
    let Some(first) = generators.first() else {
        return Ok(0);
    };
    let m = first.n_rows();
    for g in generators {
        if g.n_rows() != m || g.n_cols() != m {
            return Err(Error::DimensionMismatch("commutant generators differ in size".into()));
        }
    }
    let mut ech = EchelonBasis::new();
    for g in generators {
        let gt = g.transpose();
        for i in 0..m {
            for j in 0..m {
                // (XG - GX)_{ij} = sum_k X_{ik} G_{kj} - sum_k G_{ik} X_{kj}
                let mut eq = SparseVec::new();
                for (&k, x) in gt.row(j) {
                    axpy(&mut eq, &T::one(), &[(i * m + k, x.clone())].into_iter().collect());
                }
                for (&k, x) in g.row(i) {
                    axpy(&mut eq, &-T::one(), &[(k * m + j, x.clone())].into_iter().collect());
                }
                if !eq.is_empty() {
                    ech.insert(eq);
                }
            }
        }
    }
    Ok(m * m - ech.rank())
}

/// Dimension of the unital algebra generated by square matrices.
///
/// Products are explored breadth-first from the identity; a product is
/// kept only when it enlarges the span. `cap` defaults to `m^2`.
pub fn spanned_algebra_dimension<T: Scalar>(generators: &[SparseMatrix<T>], cap: Option<usize>) -> Result<usize> {
    let m = generators.first().map_or(0, |g| g.n_rows());
    for g in generators {
        if g.n_rows() != m || g.n_cols() != m {
            return Err(Error::DimensionMismatch("algebra generators differ in size".into()));
        }
    }
    let cap = cap.unwrap_or(m * m).max(1);
    let mut ech = EchelonBasis::new();
    if m == 0 {
        return Ok(0);
    }
    let id = SparseMatrix::identity(m);
    ech.insert(id.flatten());
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in generators {
            let p = g.matmul(&w)?;
            if ech.insert(p.flatten()) {
                if ech.rank() > cap {
                    return Err(Error::CapExceeded { what: "spanned algebra dimension".into(), cap });
                }
                queue.push_back(p);
            }
        }
    }
    Ok(ech.rank())
}

/// Integer roots of the minimal polynomial, ascending.
///
/// Every eigenvalue is bounded by the largest absolute row sum, which limits
/// the candidates to a finite range.
pub fn integer_eigenvalues(a: &SparseMatrix<Rational>) -> Result<Vec<i64>> {
    let p = minimal_polynomial(a)?;
    let bound = (0..a.n_rows())
        .map(|i| a.row(i).values().fold(Rational::from_integer(0.into()), |s, x| s + x.abs()))
        .max()
        .unwrap_or_else(|| Rational::from_integer(0.into()));
    let b = bound
        .ceil()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput("eigenvalue bound does not fit in i64".into()))?;
    Ok((-b..=b).filter(|&k| poly::eval(&p, &Rational::from_integer(k.into())).is_zero()).collect())
}
