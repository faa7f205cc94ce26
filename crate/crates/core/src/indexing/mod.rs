//! Weight compositions, Θ-matrices and their orders, monomial chains, the
//! explicit stabilization matrices and the flag/orbit dimension identities.

mod chain;
mod dims;
mod stabilization;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::EpsSign;

pub use chain::{monomial_chain, pad_diagonal, ChainStep};
pub use dims::{a_eps, a_eps_variant, flag_dimension, jordan_type};
pub use stabilization::{build_stabilization, StabilizationData, StabilizationVariant};

/// `floor(n / 2)`, the number of independent indices.
pub fn rank_r(n: usize) -> usize {
    n / 2
}

/// `v - [v odd]`, the exact label sum at level `v`.
pub fn level_sum(v: usize) -> usize {
    v - v % 2
}

/// A θ-symmetric weight `(λ_1, ..., λ_n)` with `λ_i = λ_{n+1-i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightComposition(Vec<i64>);

impl WeightComposition {
    pub fn new(lambda: Vec<i64>) -> Result<Self> {
        let n = lambda.len();
        if n < 2 {
            return Err(Error::InvalidInput(format!("weight of length {n}")));
        }
        if lambda.iter().any(|&x| x < 0) {
            return Err(Error::Negative(format!("weight {lambda:?}")));
        }
        if (0..n).any(|i| lambda[i] != lambda[n - 1 - i]) {
            return Err(Error::InvalidInput(format!("weight {lambda:?} is not θ-symmetric")));
        }
        Ok(WeightComposition(lambda))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Entry `i` counted from 1.
    pub fn at(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    /// The representative of `λ + Z(2,...,2)` with smallest entries.
    pub fn class_rep(&self) -> WeightComposition {
        let m = self.0.iter().copied().min().unwrap_or(0);
        let k = 2 * (m / 2);
        WeightComposition(self.0.iter().map(|x| x - k).collect())
    }

    /// Whether `self - other` is an integer multiple of `(2, ..., 2)`.
    pub fn same_class(&self, other: &WeightComposition) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let d = self.0[0] - other.0[0];
        d % 2 == 0 && self.0.iter().zip(&other.0).all(|(a, b)| a - b == d)
    }

    /// The actual step dimensions of the flags labelled by `self` at level `v`.
    ///
    /// Labels at odd orthogonal levels with `n` odd carry one less in the
    /// middle step than the flag itself.
    pub fn actual_dims(&self, v: usize, eps: EpsSign) -> Vec<i64> {
        let mut d = self.0.clone();
        let n = d.len();
        if n % 2 == 1 && eps.is_plus() && v % 2 == 1 {
            d[n / 2] += 1;
        }
        d
    }
}

impl TryFrom<Vec<i64>> for WeightComposition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        WeightComposition::new(v)
    }
}

impl From<WeightComposition> for Vec<i64> {
    fn from(w: WeightComposition) -> Self {
        w.0
    }
}

impl fmt::Display for WeightComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl FromStr for WeightComposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        WeightComposition::new(v)
    }
}

/// All labels in `Λ_v`: θ-symmetric compositions of `v - [v odd]` into `n` parts.
pub fn lambda_v(n: usize, v: usize) -> Vec<WeightComposition> {
    let total = level_sum(v) as i64;
    let half = rank_r(n);
    let mut out = Vec::new();
    let mut cur = vec![0i64; half];
    fn go(k: usize, rest: i64, cur: &mut Vec<i64>, n: usize, out: &mut Vec<WeightComposition>) {
        if k == cur.len() {
            let mut lam = cur.clone();
            if n % 2 == 1 {
                lam.push(rest);
            } else if rest != 0 {
                return;
            }
            lam.extend(cur.iter().rev());
            out.push(WeightComposition(lam));
            return;
        }
        for x in 0..=rest / 2 {
            cur[k] = x;
            go(k + 1, rest - 2 * x, cur, n, out);
        }
    }
    go(0, total, &mut cur, n, &mut out);
    out
}

/// An `n x n` matrix of naturals with `a_{ij} = a_{n+1-i, n+1-j}`, tagged
/// with the dimension `ambient_v` of the space it describes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThetaMatrix {
    a: Vec<Vec<i64>>,
    ambient_v: usize,
}

impl ThetaMatrix {
    /// Validates shape, nonnegativity and θ-symmetry.
    pub fn new(a: Vec<Vec<i64>>, ambient_v: usize) -> Result<Self> {
        let n = a.len();
        if n < 2 || a.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("Θ-matrix must be square of size >= 2, got {n} rows")));
        }
        for i in 0..n {
            for j in 0..n {
                if a[i][j] < 0 {
                    return Err(Error::Negative(format!("entry ({},{}) = {}", i + 1, j + 1, a[i][j])));
                }
                if a[i][j] != a[n - 1 - i][n - 1 - j] {
                    return Err(Error::InvalidInput(format!("entry ({},{}) breaks θ-symmetry", i + 1, j + 1)));
                }
            }
        }
        Ok(ThetaMatrix { a, ambient_v })
    }

    /// Tags the matrix with `v` equal to its entry sum.
    pub fn from_rows(a: Vec<Vec<i64>>) -> Result<Self> {
        let s: i64 = a.iter().flatten().sum();
        Self::new(a, s.max(0) as usize)
    }

    pub fn diagonal(d: &WeightComposition, ambient_v: usize) -> Self {
        let n = d.n();
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = d.0[i];
        }
        ThetaMatrix { a, ambient_v }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn ambient_v(&self) -> usize {
        self.ambient_v
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// Entry `(i, j)` counted from 1.
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.a[i - 1][j - 1]
    }

    pub fn sum(&self) -> i64 {
        self.a.iter().flatten().sum()
    }

    /// Whether the entry sum is exactly `v - [v odd]` for the tagged `v`.
    pub fn in_level(&self) -> bool {
        self.sum() == level_sum(self.ambient_v) as i64
    }

    /// Whether the entry sum is congruent to `v - [v odd]` modulo `2n`.
    pub fn in_residue(&self) -> bool {
        let m = 2 * self.n() as i64;
        (self.sum() - level_sum(self.ambient_v) as i64).rem_euclid(m) == 0
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.a[i][j] == 0))
    }

    /// `A + k I`, or an error if an entry would turn negative.
    pub fn add_identity(&self, k: i64, ambient_v: usize) -> Result<Self> {
        let mut a = self.a.clone();
        for (i, row) in a.iter_mut().enumerate() {
            row[i] += k;
            if row[i] < 0 {
                return Err(Error::Negative(format!("diagonal entry {} becomes {}", i + 1, row[i])));
            }
        }
        Ok(ThetaMatrix { a, ambient_v })
    }

    /// Adds `c` to entry `(i, j)` and its θ-partner, counted from 1.
    pub fn add_theta_unit(&self, i: usize, j: usize, c: i64) -> Result<Self> {
        let n = self.n();
        let mut a = self.a.clone();
        a[i - 1][j - 1] += c;
        if (n - i, n - j) != (i - 1, j - 1) {
            a[n - i][n - j] += c;
        }
        if a[i - 1][j - 1] < 0 {
            return Err(Error::Negative(format!("entry ({i},{j})")));
        }
        Ok(ThetaMatrix { a, ambient_v: self.ambient_v })
    }

    /// Parses `"0,1;1,0"` (rows separated by `;`).
    pub fn parse(s: &str, ambient_v: Option<usize>) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad entry {t:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        match ambient_v {
            Some(v) => Self::new(rows, v),
            None => Self::from_rows(rows),
        }
    }
}

impl fmt::Display for ThetaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.a.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Row sums.
pub fn ro(a: &ThetaMatrix) -> WeightComposition {
    WeightComposition(a.a.iter().map(|r| r.iter().sum()).collect())
}

/// Column sums.
pub fn co(a: &ThetaMatrix) -> WeightComposition {
    let n = a.n();
    WeightComposition((0..n).map(|j| a.a.iter().map(|r| r[j]).sum()).collect())
}

/// A Θ-matrix modulo `2I`, stored through its representative with the
/// smallest diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThetaClass {
    representative: ThetaMatrix,
}

impl ThetaClass {
    pub fn of(a: &ThetaMatrix) -> Self {
        let n = a.n();
        let m = (0..n).map(|i| a.a[i][i]).min().unwrap_or(0);
        let k = m / 2;
        let v = a.ambient_v.saturating_sub(2 * k as usize * n);
        let rep = a.add_identity(-2 * k, v).expect("shift keeps the diagonal nonnegative");
        ThetaClass { representative: rep }
    }

    pub fn representative(&self) -> &ThetaMatrix {
        &self.representative
    }

    pub fn contains(&self, a: &ThetaMatrix) -> bool {
        ThetaClass::of(a).representative.a == self.representative.a
    }
}

fn corner(a: &ThetaMatrix, i: usize, j: usize) -> i64 {
    (0..i).map(|r| a.a[r][j - 1..].iter().sum::<i64>()).sum()
}

/// `A ⪯ B`: every upper-right corner sum `Σ_{r<=i, s>=j} a_rs` with `i < j`
/// is at most the corresponding one of `B`.
pub fn order_preceq(a: &ThetaMatrix, b: &ThetaMatrix) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", a.n(), a.n(), b.n(), b.n())));
    }
    let n = a.n();
    Ok((1..=n).all(|i| (i + 1..=n).all(|j| corner(a, i, j) <= corner(b, i, j))))
}

/// `A ⊑ B`: `A ⪯ B` with equal row and column sums. Shapes that differ are unrelated.
pub fn order_sqsubseteq(a: &ThetaMatrix, b: &ThetaMatrix) -> bool {
    a.n() == b.n() && ro(a) == ro(b) && co(a) == co(b) && order_preceq(a, b).unwrap_or(false)
}

/// The order `◁` on strictly lower-triangular positions: larger `i - j`
/// first, then smaller row.
pub fn triangle_order_lt(p: (usize, usize), q: (usize, usize)) -> Result<bool> {
    for &(i, j) in &[p, q] {
        if i <= j || j == 0 {
            return Err(Error::InvalidInput(format!("({i},{j}) is not strictly lower-triangular")));
        }
    }
    let (dp, dq) = (p.0 - p.1, q.0 - q.1);
    Ok(dp > dq || (dp == dq && p.0 < q.0))
}

/// `A + 2kI` with the tagged dimension moved by `2kn`.
pub fn shift_class(a: &ThetaMatrix, k: i64) -> Result<ThetaMatrix> {
    let v = a.ambient_v as i64 + 2 * k * a.n() as i64;
    if v < 0 {
        return Err(Error::Negative(format!("ambient dimension {v}")));
    }
    a.add_identity(2 * k, v as usize)
}

/// Every Θ-matrix of size `n` in `Θ_v`, in lexicographic order of its
/// free entries. Fails once more than `cap` matrices are produced.
pub fn enumerate_theta_matrices(n: usize, v: usize, cap: usize) -> Result<Vec<ThetaMatrix>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n = {n}")));
    }
    // One cell per θ-orbit; the centre of an odd matrix is its own orbit.
    let cells: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| (i, j) <= (n - 1 - i, n - 1 - j)).collect();
    let mut out = Vec::new();
    let mut a = vec![vec![0; n]; n];
    fill(&cells, 0, level_sum(v) as i64, &mut a, v, cap, &mut out)?;
    Ok(out)
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    left: i64,
    a: &mut Vec<Vec<i64>>,
    v: usize,
    cap: usize,
    out: &mut Vec<ThetaMatrix>,
) -> Result<()> {
    let n = a.len();
    let Some(&(i, j)) = cells.get(k) else {
        if left == 0 {
            if out.len() == cap {
                return Err(Error::CapExceeded { what: format!("Θ-matrices of size {n} at v = {v}"), cap });
            }
            out.push(ThetaMatrix { a: a.clone(), ambient_v: v });
        }
        return Ok(());
    };
    let weight = if (i, j) == (n - 1 - i, n - 1 - j) { 1 } else { 2 };
    for x in 0..=left / weight {
        a[i][j] = x;
        a[n - 1 - i][n - 1 - j] = x;
        fill(cells, k + 1, left - weight * x, a, v, cap, out)?;
    }
    a[i][j] = 0;
    a[n - 1 - i][n - 1 - j] = 0;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> ThetaMatrix {
        ThetaMatrix::parse(s, None).unwrap()
    }

    #[test]
    fn theta_enumeration_matches_brute_force() {
        for n in 2..=3 {
            for v in 0..=(if n == 2 { 8 } else { 5 }) {
                let s = level_sum(v) as i64;
                let base = (s + 1) as usize;
                let mut brute = Vec::new();
                for code in 0..base.pow((n * n) as u32) {
                    let mut c = code;
                    let rows: Vec<Vec<i64>> = (0..n)
                        .map(|_| {
                            (0..n)
                                .map(|_| {
                                    let x = (c % base) as i64;
                                    c /= base;
                                    x
                                })
                                .collect()
                        })
                        .collect();
                    if rows.iter().flatten().sum::<i64>() == s {
                        if let Ok(m) = ThetaMatrix::new(rows, v) {
                            brute.push(m);
                        }
                    }
                }
                let mut got = enumerate_theta_matrices(n, v, usize::MAX).unwrap();
                brute.sort();
                got.sort();
                assert_eq!(got, brute, "n={n} v={v}");
            }
        }
        assert_eq!(enumerate_theta_matrices(2, 4, 100).unwrap().len(), 3);
        assert!(matches!(enumerate_theta_matrices(3, 6, 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn margins() {
        assert_eq!(ro(&t("0,1;1,0")).entries(), &[1, 1]);
        assert_eq!(co(&t("2,0;0,2")).entries(), &[2, 2]);
        assert_eq!(ro(&t("1,1,0;1,0,1;0,1,1")).entries(), &[2, 2, 2]);
    }

    #[test]
    fn symmetry_is_enforced() {
        assert!(ThetaMatrix::from_rows(vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(ThetaMatrix::from_rows(vec![vec![-1, 0], vec![0, -1]]).is_err());
    }

    #[test]
    fn preceq_examples() {
        let a = t("0,1;1,0");
        assert!(order_preceq(&a, &a).unwrap());
        assert!(order_preceq(&t("3,0;0,3"), &a).unwrap());
        assert!(order_preceq(&a, &t("0,2;2,0")).unwrap());
        assert!(!order_preceq(&t("0,2;2,0"), &a).unwrap());
        assert!(order_preceq(&a, &t("1,0,0;0,1,0;0,0,1")).is_err());
    }

    #[test]
    fn sqsubseteq_examples() {
        let a = t("1,1,0;1,0,1;0,1,1");
        assert!(order_sqsubseteq(&a, &a));
        assert!(!order_sqsubseteq(&t("0,1;1,0"), &t("0,2;2,0")));
        // Moving one unit towards the corner keeps both margins.
        let lower = t("1,1,0;1,0,1;0,1,1");
        let upper = t("1,0,1;0,2,0;1,0,1");
        assert!(order_sqsubseteq(&lower, &upper));
        assert!(!order_sqsubseteq(&upper, &lower));
    }

    #[test]
    fn triangle_order_examples() {
        assert!(triangle_order_lt((3, 1), (2, 1)).unwrap());
        assert!(triangle_order_lt((2, 1), (3, 2)).unwrap());
        assert!(!triangle_order_lt((3, 2), (2, 1)).unwrap());
        assert!(triangle_order_lt((1, 2), (2, 1)).is_err());
    }

    #[test]
    fn shift_examples() {
        let a = t("0,1;1,0");
        assert_eq!(shift_class(&a, 1).unwrap().rows(), t("2,1;1,2").rows());
        assert_eq!(shift_class(&t("2,1;1,2"), -1).unwrap().rows(), a.rows());
        assert!(shift_class(&a, -1).is_err());
    }

    #[test]
    fn labels_have_the_level_sum() {
        for n in 2..=5 {
            for v in 0..=8 {
                let ls = lambda_v(n, v);
                assert!(!ls.is_empty());
                for l in &ls {
                    assert_eq!(l.sum(), level_sum(v) as i64);
                }
            }
        }
        assert_eq!(lambda_v(3, 4).len(), 3);
        assert_eq!(lambda_v(4, 4).len(), 3);
    }

    #[test]
    fn class_representatives() {
        let w: WeightComposition = "[3,5,3]".parse().unwrap();
        assert_eq!(w.class_rep().entries(), &[1, 3, 1]);
        assert!(w.same_class(&w.class_rep()));
        assert!(!w.same_class(&"[2,4,2]".parse().unwrap()));
        let c = ThetaClass::of(&t("5,1;1,5"));
        assert_eq!(c.representative().rows(), t("1,1;1,1").rows());
        assert!(c.contains(&t("3,1;1,3")));
        assert!(!c.contains(&t("2,1;1,2")));
    }

    fn arb_theta(n: usize, max: i64) -> impl Strategy<Value = ThetaMatrix> {
        proptest::collection::vec(0..=max, n * n).prop_map(move |v| {
            let mut a = vec![vec![0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    let (p, q) = if (i, j) <= (n - 1 - i, n - 1 - j) { (i, j) } else { (n - 1 - i, n - 1 - j) };
                    a[i][j] = v[p * n + q];
                }
            }
            ThetaMatrix::from_rows(a).unwrap()
        })
    }

    proptest! {
        #[test]
        fn shift_preserves_symmetry_and_residue(a in (2usize..=5).prop_flat_map(|n| arb_theta(n, 4)), k in 0i64..3) {
            let b = shift_class(&a, k).unwrap();
            prop_assert!(ThetaMatrix::new(b.rows().to_vec(), b.ambient_v()).is_ok());
            prop_assert_eq!(b.in_residue(), a.in_residue());
            prop_assert_eq!(shift_class(&b, -k).unwrap(), a);
        }

        #[test]
        fn preceq_is_a_class_function(
            (a, b) in (2usize..=4).prop_flat_map(|n| (arb_theta(n, 3), arb_theta(n, 3))),
            k in 0i64..3,
            l in 0i64..3,
        ) {
            let sa = shift_class(&a, k).unwrap();
            let sb = shift_class(&b, l).unwrap();
            prop_assert_eq!(order_preceq(&a, &b).unwrap(), order_preceq(&sa, &sb).unwrap());
        }
    }
}
