//! Jordan types and the closed forms for flag and orbit dimension jumps.

use super::rank_r;
use crate::error::{Error, Result};
use crate::partitions::{dual_partition, EpsSign, Partition};
use crate::{QMatrix, Rational};

/// Jordan type of a nilpotent matrix from the ranks of its powers:
/// the dual partition has parts `rank(x^{i-1}) - rank(x^i)`.
pub fn jordan_type(x: &QMatrix) -> Result<Partition> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("Jordan type of a non-square matrix".into()));
    }
    let m = x.n_rows();
    let mut ranks = vec![m];
    let mut p = QMatrix::identity(m);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > m {
            return Err(Error::NotNilpotent);
        }
        p = x.matmul(&p)?;
        let r = p.rank();
        if r == *ranks.last().unwrap() {
            return Err(Error::NotNilpotent);
        }
        ranks.push(r);
    }
    let dual: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(dual_partition(&Partition::new(dual)?))
}

fn check_symmetric(d: &[i64]) -> Result<()> {
    let n = d.len();
    for i in 0..n {
        let j = n - 1 - i;
        if i != j && d[i] != d[j] {
            return Err(Error::InvalidInput(format!("step dimensions {d:?} are not symmetric")));
        }
    }
    if d.iter().any(|&x| x < 0) {
        return Err(Error::Negative(format!("step dimensions {d:?}")));
    }
    Ok(())
}

/// Dimension of the isotropic flag variety with step dimensions `d`:
/// `(Σ_{i<k} d_i d_k - eps Σ_{i<=r} d_i) / 2`.
///
/// Errors when the value is not an integer, which signals a wrong
/// step-dimension convention rather than a real variety.
pub fn flag_dimension(d: &[i64], eps: EpsSign) -> Result<Rational> {
    check_symmetric(d)?;
    let n = d.len();
    let mut pairs = 0i64;
    for i in 0..n {
        for k in i + 1..n {
            pairs += d[i] * d[k];
        }
    }
    let head: i64 = d[..rank_r(n)].iter().sum();
    let val = Rational::new((pairs - eps.value() * head).into(), 2.into());
    if !val.is_integer() {
        return Err(Error::InvalidInput(format!("flag dimension of {d:?} is {val}, not an integer")));
    }
    Ok(val)
}

/// `2(n+v)(n-1) - eps (n - [n odd])`: the jump in cotangent dimension from
/// `d` to `d + (2,...,2)`.
pub fn a_eps(n: usize, v: usize, eps: EpsSign) -> i64 {
    let (n, v) = (n as i64, v as i64);
    2 * (n + v) * (n - 1) - eps.value() * (n - n % 2)
}

/// `((2v+n)(n-1) - eps (n - [n odd])) / 2`: the jump from `d` to `d + (1,...,1)`.
pub fn a_eps_variant(n: usize, v: usize, eps: EpsSign) -> Rational {
    let (n, v) = (n as i64, v as i64);
    let num = (2 * v + n) * (n - 1) - eps.value() * (n - n % 2);
    Rational::new(num.into(), 2.into())
}
