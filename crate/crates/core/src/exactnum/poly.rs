//! Dense univariate polynomials as ascending coefficient vectors.

use super::{Scalar, SparseMatrix};
use crate::error::Result;

/// Drops trailing zero coefficients.
pub fn trim<T: Scalar>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn poly_mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(out)
}

/// The monic polynomial with the given roots, repeated roots allowed.
pub fn from_roots<T: Scalar>(roots: &[T]) -> Vec<T> {
    roots.iter().fold(vec![T::one()], |acc, r| poly_mul(&acc, &[-r.clone(), T::one()]))
}

/// Remainder of `a` modulo the nonzero polynomial `b`.
pub fn poly_rem<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let lead = b.last().unwrap().clone();
    let mut r = trim(a.to_vec());
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap().clone() / lead.clone();
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = r[shift + k].clone() - q.clone() * c.clone();
        }
        r = trim(r);
    }
    r
}

/// Whether `a` divides `b`.
pub fn divides<T: Scalar>(a: &[T], b: &[T]) -> bool {
    poly_rem(b, a).is_empty()
}

pub fn eval<T: Scalar>(p: &[T], x: &T) -> T {
    p.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Evaluates `p` at a square matrix by Horner's rule.
pub fn eval_matrix<T: Scalar>(p: &[T], a: &SparseMatrix<T>) -> Result<SparseMatrix<T>> {
    let n = a.n_rows();
    let mut acc = SparseMatrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = a.matmul(&acc)?.checked_add(&SparseMatrix::scalar(n, c.clone()))?;
    }
    Ok(acc)
}

/// Human-readable form in the variable `X`, highest degree first.
pub fn format_poly<T: Scalar>(p: &[T]) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag.is_one();
        match (k, unit) {
            (0, _) => out.push_str(&mag.to_string()),
            (_, true) => {}
            (_, false) => out.push_str(&mag.to_string()),
        }
        match k {
            0 => {}
            1 => out.push('X'),
            _ => out.push_str(&format!("X^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
