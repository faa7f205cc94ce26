use serde::Serialize;

use super::RepModule;
use crate::error::Result;
use crate::exactnum::{kernel_basis, SparseVec};
use crate::indexing::{rank_r, WeightComposition};
use crate::{q, QMatrix, Rational};

use num_traits::{Signed, ToPrimitive};

/// The module twisted by `e_i <-> f_i`, `h_i -> -h_i`.
///
/// Weights become `2k(1, ..., 1) - w` with `k` chosen once for the whole
/// module so that all entries stay nonnegative; their classes are those of `-w`.
pub fn twist_by_theta(m: &RepModule) -> Result<RepModule> {
    let n = m.n();
    let top = m.weights().iter().flat_map(|w| w.entries().iter().copied()).max().unwrap_or(0);
    let k2 = top + top % 2;
    let weights = m
        .weights()
        .iter()
        .map(|w| WeightComposition::new(w.entries().iter().map(|x| k2 - x).collect()))
        .collect::<Result<Vec<_>>>()?;
    let e = (1..n).map(|i| m.f(i).clone()).collect();
    let h = (1..n).map(|i| m.h(i).scale(&q(-1))).collect();
    RepModule::new(format!("theta:{}", m.name()), n, m.labels().to_vec(), weights, e, h)
}

/// A joint eigenvector of the Cartan elements killed by the raising generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularVector {
    /// `(basis index, coefficient)` pairs.
    pub vector: Vec<(usize, String)>,
    pub support: Vec<String>,
    pub omega: Vec<i64>,
    pub omega_prime: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularVectorReport {
    pub module: String,
    pub vectors: Vec<SingularVector>,
    /// Dimension of the annihilated space not split into integer joint eigenspaces.
    pub unresolved: usize,
}

impl SingularVectorReport {
    pub fn has_weight(&self, omega: &[i64], omega_prime: &[i64]) -> bool {
        self.vectors.iter().any(|s| s.omega == omega && s.omega_prime == omega_prime)
    }

    /// Distinct `(ω, ω')` pairs in order of appearance.
    pub fn weights(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let mut out: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for s in &self.vectors {
            let p = (s.omega.clone(), s.omega_prime.clone());
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

fn combine(basis: &[SparseVec<Rational>], c: &SparseVec<Rational>) -> SparseVec<Rational> {
    let mut out = SparseVec::new();
    for (&j, x) in c {
        crate::exactnum::axpy(&mut out, x, &basis[j]);
    }
    out
}

fn row_sum_bound(x: &QMatrix) -> i64 {
    (0..x.n_rows())
        .map(|i| x.row(i).values().fold(q(0), |s, v| s + v.abs()))
        .max()
        .unwrap_or_else(|| q(0))
        .ceil()
        .to_integer()
        .to_i64()
        .unwrap_or(i64::MAX)
}

/// Splits `basis` into integer eigenspaces of `x`, returning the pieces and
/// the dimension left over.
fn split(
    x: &QMatrix,
    basis: &[SparseVec<Rational>],
    dim: usize,
) -> Result<(Vec<(i64, Vec<SparseVec<Rational>>)>, usize)> {
    let b = QMatrix::from_columns(dim, basis)?;
    let xb = x.matmul(&b)?;
    let bound = row_sum_bound(x);
    let mut pieces = Vec::new();
    let mut found = 0;
    for lam in -bound..=bound {
        let m = xb.add_scaled(&q(-lam), &b)?;
        let ker = kernel_basis(&m);
        if !ker.is_empty() {
            found += ker.len();
            pieces.push((lam, ker.iter().map(|c| combine(basis, c)).collect()));
        }
        if found == basis.len() {
            break;
        }
    }
    Ok((pieces, basis.len() - found))
}

/// Vectors killed by `e_1, ..., e_r` and jointly diagonal for `h_i`, `h'_i`
/// (`i <= r`).
///
/// For even `n` the generator `e_r` equals `h'_r` and is treated as a Cartan
/// element rather than an annihilator.
pub fn singular_vectors(m: &RepModule) -> Result<SingularVectorReport> {
    let n = m.n();
    let r = rank_r(n);
    let dim = m.dim();
    let raising: Vec<QMatrix> = (1..=r).filter(|&i| n % 2 == 1 || i < r).map(|i| m.e(i).clone()).collect();
    let start: Vec<SparseVec<Rational>> = if raising.is_empty() {
        (0..dim).map(|i| [(i, q(1))].into_iter().collect()).collect()
    } else {
        kernel_basis(&QMatrix::vstack(&raising)?)
    };
    let ops: Vec<&QMatrix> = (1..=r).map(|i| m.h(i)).chain((1..=r).map(|i| m.hprime(i))).collect();
    let mut pieces: Vec<(Vec<i64>, Vec<SparseVec<Rational>>)> = vec![(Vec::new(), start)];
    let mut unresolved = 0;
    for x in ops {
        let mut next = Vec::new();
        for (eig, basis) in pieces {
            if basis.is_empty() {
                continue;
            }
            let (parts, lost) = split(x, &basis, dim)?;
            unresolved += lost;
            for (lam, b) in parts {
                let mut e = eig.clone();
                e.push(lam);
                next.push((e, b));
            }
        }
        pieces = next;
    }
    let mut vectors = Vec::new();
    for (eig, basis) in pieces {
        for v in basis {
            vectors.push(SingularVector {
                vector: v.iter().map(|(&i, x)| (i, x.to_string())).collect(),
                support: v.keys().map(|&i| m.labels()[i].to_string()).collect(),
                omega: eig[..r].to_vec(),
                omega_prime: eig[r..].to_vec(),
            });
        }
    }
    Ok(SingularVectorReport { module: m.name().to_string(), vectors, unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{evaluate, theta_involution, AlgebraElement, GenToken};
    use crate::modules::{nflag_module, tensor_module, BasisLabel};
    use crate::partitions::EpsSign;

    #[test]
    fn tensor_rank_two_singular_vectors() {
        let rep = singular_vectors(&tensor_module(2, 1).unwrap()).unwrap();
        let mut w = rep.weights();
        w.sort();
        assert_eq!(w, vec![(vec![0], vec![-1]), (vec![0], vec![1])]);
        assert_eq!(rep.vectors.len(), 2);
    }

    #[test]
    fn odd_highest_weights() {
        for n in [3usize, 5] {
            let r = n / 2;
            for v in 0..=8usize {
                for eps in [EpsSign::Plus, EpsSign::Minus] {
                    let Ok(m) = nflag_module(n, v, eps) else { continue };
                    let d = (v / 2) as i64;
                    let mut top = vec![0; r];
                    top[r - 1] = 2 * d;
                    let tw = singular_vectors(&twist_by_theta(&m).unwrap()).unwrap();
                    assert!(tw.has_weight(&top, &top), "twisted n={n} v={v}: {:?}", tw.weights());
                    let mut om = vec![0; r];
                    om[0] = d;
                    let mut omp = vec![0; r];
                    omp[0] = 2 * d;
                    let un = singular_vectors(&m).unwrap();
                    assert!(un.has_weight(&om, &omp), "untwisted n={n} v={v}: {:?}", un.weights());
                }
            }
        }
    }

    #[test]
    fn twisted_singular_vector_sits_at_the_middle_label() {
        let m = nflag_module(3, 4, EpsSign::Minus).unwrap();
        let rep = singular_vectors(&twist_by_theta(&m).unwrap()).unwrap();
        let v = rep.vectors.iter().find(|s| s.omega == vec![4]).unwrap();
        assert_eq!(v.support, vec![BasisLabel::Flag(vec![0, 4, 0]).to_string()]);
    }

    #[test]
    fn twist_matches_theta_on_tokens() {
        let m = tensor_module(3, 2).unwrap();
        let t = twist_by_theta(&m).unwrap();
        let mut toks: Vec<GenToken> = (1..3).flat_map(|i| [GenToken::E(i), GenToken::F(i), GenToken::H(i)]).collect();
        toks.push(GenToken::HPrime(1));
        toks.push(GenToken::idem(&"[1,0,1]".parse().unwrap()));
        toks.push(GenToken::idem(&"[0,2,0]".parse().unwrap()));
        for tok in toks {
            let x = AlgebraElement::token(3, tok.clone());
            assert_eq!(evaluate(&theta_involution(&x), &m).unwrap(), evaluate(&x, &t).unwrap(), "{tok}");
        }
    }
}
