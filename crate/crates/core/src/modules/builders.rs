use std::collections::HashMap;

use super::{BasisLabel, RepModule};
use crate::error::{Error, Result};
use crate::indexing::{lambda_v, rank_r, WeightComposition};
use crate::partitions::EpsSign;
use crate::{q, QMatrix};

/// Largest tensor space dimension `n^d` built without complaint.
pub const TENSOR_CAP: usize = 4096;

fn check_level(v: usize, eps: EpsSign) -> Result<()> {
    if v % 2 == 1 && !eps.is_plus() {
        return Err(Error::InvalidInput(format!("no symplectic form on an odd space (v={v})")));
    }
    Ok(())
}

/// The rank-one module on `[Gr_0], ..., [Gr_d]`, `d = floor(v/2)`, with rank-three tokens.
pub fn grassmannian_module(v: usize, eps: EpsSign) -> Result<RepModule> {
    check_level(v, eps)?;
    let d = v / 2;
    let size = d + 1;
    let mut e = QMatrix::zeros(size, size);
    let mut f = QMatrix::zeros(size, size);
    for i in 0..size {
        if i < d {
            e.set(i + 1, i, q(i as i64 + 1));
        }
        if i > 0 {
            f.set(i - 1, i, q(2 * (d as i64 - i as i64 + 1)));
        }
    }
    let hd: Vec<_> = (0..size).map(|i| q(3 * i as i64 - 2 * d as i64)).collect();
    let h = QMatrix::diagonal(&hd);
    let labels = (0..size).map(BasisLabel::Grassmannian).collect();
    let weights = (0..size as i64)
        .map(|i| WeightComposition::new(vec![i, 2 * d as i64 - 2 * i, i]))
        .collect::<Result<Vec<_>>>()?;
    let minus_h = h.scale(&q(-1));
    RepModule::new(format!("grassmannian:{v}:{eps}"), 3, labels, weights, vec![e, f], vec![h, minus_h])
}

fn index_map(labels: &[WeightComposition]) -> HashMap<Vec<i64>, usize> {
    labels.iter().enumerate().map(|(k, d)| (d.entries().to_vec(), k)).collect()
}

/// The module spanned by the flag classes `[F_d]`, `d ∈ Λ_v`.
///
/// `e_i` sends `[F_d]` to `(d⁺)_i [F_{d⁺}]` with
/// `d⁺ = d + δ_i + δ_{n+1-i} - δ_{i+1} - δ_{n-i}` whenever `d⁺` is a label.
pub fn nflag_module(n: usize, v: usize, eps: EpsSign) -> Result<RepModule> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n={n}")));
    }
    check_level(v, eps)?;
    if n.is_multiple_of(2) && v % 2 == 1 {
        return Err(Error::InvalidInput(format!("n={n} even with v={v} odd needs the rectified module")));
    }
    let labels = lambda_v(n, v);
    if labels.is_empty() {
        return Err(Error::InvalidInput(format!("no labels for n={n}, v={v}")));
    }
    let idx = index_map(&labels);
    let dim = labels.len();
    let mut e = Vec::with_capacity(n - 1);
    let mut h = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut m = QMatrix::zeros(dim, dim);
        let mut hd = Vec::with_capacity(dim);
        for (col, d) in labels.iter().enumerate() {
            let d = d.entries();
            hd.push(q(d[i - 1] - d[i]));
            if d[i] < 1 {
                continue;
            }
            let mut plus = d.to_vec();
            plus[i - 1] += 1;
            plus[n - i] += 1;
            plus[i] -= 1;
            plus[n - i - 1] -= 1;
            if let Some(&row) = idx.get(&plus) {
                m.add_at(row, col, q(plus[i - 1]));
            }
        }
        e.push(m);
        h.push(QMatrix::diagonal(&hd));
    }
    let bl = labels.iter().map(|d| BasisLabel::Flag(d.entries().to_vec())).collect();
    RepModule::new(format!("nflag:{n}:{v}:{eps}"), n, bl, labels, e, h)
}

fn single_factor(n: usize, i: usize) -> (Vec<(usize, usize, i64)>, Vec<(usize, i64)>) {
    // 0-based: E_{a,b} sends u_b to u_a.
    let (a, b) = (i - 1, i);
    let mut e = vec![(a, b, 1)];
    let (a2, b2) = (n - i, n - i - 1);
    e.push((a2, b2, 1));
    let mut h = vec![(i - 1, 1), (i, -1), (n - i - 1, -1), (n - i, 1)];
    h.sort();
    (e, h)
}

/// `(Q^n)^{⊗d}` with the generators acting factor by factor.
pub fn tensor_module(n: usize, d: usize) -> Result<RepModule> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidInput(format!("tensor space needs n >= 2 and d >= 1, got ({n},{d})")));
    }
    let dim = n
        .checked_pow(d as u32)
        .filter(|&x| x <= TENSOR_CAP)
        .ok_or_else(|| Error::CapExceeded { what: format!("tensor space ({n},{d})"), cap: TENSOR_CAP })?;
    let digits = |mut k: usize| -> Vec<usize> {
        let mut c = vec![0; d];
        for slot in c.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        c
    };
    let stride: Vec<usize> = (0..d).map(|k| n.pow((d - 1 - k) as u32)).collect();
    let mut e = Vec::with_capacity(n - 1);
    let mut h = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (es, hs) = single_factor(n, i);
        let mut em = QMatrix::zeros(dim, dim);
        let mut hd = vec![q(0); dim];
        for col in 0..dim {
            let c = digits(col);
            for (k, &ck) in c.iter().enumerate() {
                for &(a, b, x) in &es {
                    if b == ck {
                        let row = col - ck * stride[k] + a * stride[k];
                        em.add_at(row, col, q(x));
                    }
                }
                for &(a, x) in &hs {
                    if a == ck {
                        hd[col] += q(x);
                    }
                }
            }
        }
        e.push(em);
        h.push(QMatrix::diagonal(&hd));
    }
    let mut labels = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for k in 0..dim {
        let c = digits(k);
        let mut cnt = vec![0i64; n];
        for &x in &c {
            cnt[x] += 1;
        }
        let w: Vec<i64> = (0..n).map(|j| cnt[j] + cnt[n - 1 - j]).collect();
        weights.push(WeightComposition::new(w)?);
        labels.push(BasisLabel::Tensor(c.iter().map(|x| x + 1).collect()));
    }
    RepModule::new(format!("tensor:{n}:{d}"), n, labels, weights, e, h)
}

fn restrict(m: &QMatrix, keep: &[usize], what: &str) -> Result<QMatrix> {
    let kept: std::collections::HashSet<usize> = keep.iter().copied().collect();
    for (i, j, _) in m.triplets() {
        if kept.contains(&j) && !kept.contains(&i) {
            return Err(Error::Construction(format!("{what} leaves the rectified subspace")));
        }
    }
    Ok(m.submatrix(keep, keep))
}

/// The even-rank module at an odd orthogonal level, carried by the flags of
/// rank `n + 1` whose middle step is maximal isotropic.
pub fn rectified_module(n: usize, v: usize) -> Result<RepModule> {
    if n < 2 || n % 2 == 1 || v.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("rectified module needs n even and v odd, got ({n},{v})")));
    }
    let big = nflag_module(n + 1, v, EpsSign::Plus)?;
    let r = rank_r(n);
    let keep: Vec<usize> =
        (0..big.dim()).filter(|&k| matches!(&big.labels()[k], BasisLabel::Flag(d) if d[r] == 0)).collect();
    let dim = keep.len();
    let mut e = Vec::with_capacity(n - 1);
    let mut h = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (ei, hi) = if i < r {
            (big.e(i).clone(), big.h(i).clone())
        } else if i == r {
            let t = big.e(r).matmul(big.e(r + 1))?.checked_sub(big.h(r))?;
            (t, QMatrix::zeros(big.dim(), big.dim()))
        } else {
            (big.f(n - i).clone(), big.h(n - i).scale(&q(-1)))
        };
        e.push(restrict(&ei, &keep, &format!("e{i}"))?);
        h.push(restrict(&hi, &keep, &format!("h{i}"))?);
    }
    let mut labels = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for &k in &keep {
        let w = big.weights()[k].entries();
        let mut short = w[..r].to_vec();
        short.extend_from_slice(&w[r + 1..]);
        weights.push(WeightComposition::new(short)?);
        labels.push(big.labels()[k].clone());
    }
    RepModule::new(format!("rectified:{n}:{v}"), n, labels, weights, e, h)
}
