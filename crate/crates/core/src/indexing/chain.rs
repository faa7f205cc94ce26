//! The ordered family of "diagonal plus one band" matrices whose product
//! has leading term a given Θ-matrix.

use serde::{Deserialize, Serialize};

use super::{co, ro, shift_class, triangle_order_lt, ThetaMatrix};
use crate::error::{Error, Result};

/// One factor `G_{ij}` of a monomial chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    /// The strictly lower-triangular position `(i, j)` this factor accounts for.
    pub pair: (usize, usize),
    /// `h` such that the band is `E_{h+1,h} + E_{n-h,n+1-h}`.
    pub band: usize,
    /// Coefficient of the band.
    pub multiplicity: i64,
    pub matrix: ThetaMatrix,
}

/// All strictly lower-triangular positions sorted by `◁`.
pub fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..i).map(move |j| (i, j))).collect();
    pairs.sort_by(|&p, &q| {
        if p == q {
            std::cmp::Ordering::Equal
        } else if triangle_order_lt(p, q).expect("lower-triangular") {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    pairs
}

/// The chain `G_{n,1}, ..., G_{n,n-1}` in `◁` order.
///
/// The factor for `(i, j)` carries `s = Σ_{k>=i} a_{kj}` copies of the
/// sub-diagonal band at `h = i - 1`. Its diagonal is forced by the margin
/// conditions: the first row margin is `ro(A)`, each row margin equals the
/// previous column margin, and the last column margin must come out as
/// `co(A)`. A negative forced diagonal entry is an error; pad with
/// [`pad_diagonal`] first.
pub fn monomial_chain(a: &ThetaMatrix) -> Result<Vec<ChainStep>> {
    let n = a.n();
    let mut margin: Vec<i64> = ro(a).entries().to_vec();
    let mut out = Vec::new();
    for (i, j) in ordered_pairs(n) {
        let h = i - 1;
        let s: i64 = (i..=n).map(|k| a.at(k, j)).sum();
        let mut diag = margin.clone();
        diag[h] -= s;
        diag[n - h - 1] -= s;
        if let Some(k) = diag.iter().position(|&x| x < 0) {
            return Err(Error::Negative(format!(
                "chain factor for ({i},{j}) needs diagonal entry {} = {}; pad the diagonal",
                k + 1,
                diag[k]
            )));
        }
        let mut rows = vec![vec![0i64; n]; n];
        for k in 0..n {
            rows[k][k] = diag[k];
        }
        let g = ThetaMatrix::new(rows, a.ambient_v())?.add_theta_unit(h + 1, h, s)?;
        margin = co(&g).entries().to_vec();
        out.push(ChainStep { pair: (i, j), band: h, multiplicity: s, matrix: g });
    }
    if margin != co(a).entries() {
        return Err(Error::Construction(format!("chain for {a} does not end at co(A)")));
    }
    Ok(out)
}

/// `A + 2kI`, used to make room on the diagonal before building a chain.
pub fn pad_diagonal(a: &ThetaMatrix, k: i64) -> Result<ThetaMatrix> {
    shift_class(a, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> ThetaMatrix {
        ThetaMatrix::parse(s, None).unwrap()
    }

    #[test]
    fn rank_one_chain_is_the_matrix() {
        let a = t("0,1;1,0");
        let c = monomial_chain(&a).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].matrix.rows(), a.rows());
        let d = monomial_chain(&t("2,0;0,2")).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[0].matrix.is_diagonal());
    }

    #[test]
    fn three_by_three_chain() {
        let a = t("1,1,0;1,0,1;0,1,1");
        let c = monomial_chain(&a).unwrap();
        let pairs: Vec<_> = c.iter().map(|s| s.pair).collect();
        assert_eq!(pairs, vec![(3, 1), (2, 1), (3, 2)]);
        assert_eq!(c[1].multiplicity, 1);
        assert_eq!(c[2].multiplicity, 1);
    }

    #[test]
    fn chains_satisfy_the_margin_conditions() {
        for n in 2..=4 {
            let cells: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && (i, j) < (n - 1 - i, n - 1 - j))
                .collect();
            let count = 3usize.pow(cells.len() as u32).min(729);
            for code in 0..count {
                let mut rows = vec![vec![0i64; n]; n];
                let mut c = code;
                for &(i, j) in &cells {
                    rows[i][j] = (c % 3) as i64;
                    rows[n - 1 - i][n - 1 - j] = rows[i][j];
                    c /= 3;
                }
                let a = pad_diagonal(&ThetaMatrix::from_rows(rows).unwrap(), 3 * n as i64).unwrap();
                let chain = monomial_chain(&a).unwrap();
                assert_eq!(chain.len(), n * (n - 1) / 2);
                assert_eq!(ro(&chain[0].matrix), ro(&a));
                assert_eq!(co(&chain.last().unwrap().matrix), co(&a));
                for w in chain.windows(2) {
                    assert_eq!(co(&w[0].matrix), ro(&w[1].matrix));
                }
                for step in &chain {
                    let g = &step.matrix;
                    assert!(ThetaMatrix::new(g.rows().to_vec(), g.ambient_v()).is_ok());
                    let off: Vec<_> = (1..=n)
                        .flat_map(|i| (1..=n).map(move |j| (i, j)))
                        .filter(|&(i, j)| i != j && g.at(i, j) != 0)
                        .collect();
                    let h = step.band;
                    assert!(off.iter().all(|&p| p == (h + 1, h) || p == (n - h, n + 1 - h)));
                }
            }
        }
    }
}
