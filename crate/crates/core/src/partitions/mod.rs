//! Partitions, ε-partitions, the dominance order, nilpotent orbit
//! dimensions, ε-collapse and the n-nilcone classification.

mod nilcone;
mod oracle;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use nilcone::{nilcone_description, NilconeDescription};
pub use oracle::{centralizer_dimension_oracle, nilpotent_representative, ORACLE_BOUND};

/// Default size bound for [`enumerate_eps_partitions`].
pub const ENUMERATION_BOUND: usize = 14;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates a weakly decreasing sequence; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and discards zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// The `i`-th part counted from zero, or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Concatenation followed by sorting.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts; an empty string or `()` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidPartition(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// The sign of the bilinear form: `Plus` is orthogonal, `Minus` symplectic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum EpsSign {
    Plus,
    Minus,
}

impl EpsSign {
    pub const BOTH: [EpsSign; 2] = [EpsSign::Plus, EpsSign::Minus];

    pub fn value(self) -> i64 {
        match self {
            EpsSign::Plus => 1,
            EpsSign::Minus => -1,
        }
    }

    pub fn from_value(x: i64) -> Result<Self> {
        match x {
            1 => Ok(EpsSign::Plus),
            -1 => Ok(EpsSign::Minus),
            _ => Err(Error::InvalidInput(format!("eps must be +1 or -1, got {x}"))),
        }
    }

    pub fn is_plus(self) -> bool {
        self == EpsSign::Plus
    }

    /// Parity of the parts that must come in pairs: even for `Plus`, odd for `Minus`.
    fn paired_parity(self) -> usize {
        match self {
            EpsSign::Plus => 0,
            EpsSign::Minus => 1,
        }
    }
}

impl TryFrom<i64> for EpsSign {
    type Error = Error;
    fn try_from(x: i64) -> Result<Self> {
        EpsSign::from_value(x)
    }
}

impl From<EpsSign> for i64 {
    fn from(e: EpsSign) -> i64 {
        e.value()
    }
}

impl fmt::Display for EpsSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsSign::Plus => "+1",
            EpsSign::Minus => "-1",
        })
    }
}

impl FromStr for EpsSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(EpsSign::Plus),
            "-1" | "-" => Ok(EpsSign::Minus),
            other => Err(Error::InvalidInput(format!("eps must be +1 or -1, got {other:?}"))),
        }
    }
}

/// The conjugate partition.
pub fn dual_partition(mu: &Partition) -> Partition {
    let first = mu.part(0);
    Partition((1..=first).map(|k| mu.0.iter().filter(|&&p| p >= k).count()).collect())
}

/// Dominance order: every prefix sum of `lambda` is at most that of `mu`.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if lambda.size() != mu.size() {
        return Err(Error::DimensionMismatch(format!(
            "dominance between partitions of {} and {}",
            lambda.size(),
            mu.size()
        )));
    }
    let (mut a, mut b) = (0, 0);
    for i in 0..lambda.len().max(mu.len()) {
        a += lambda.part(i);
        b += mu.part(i);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in `P_eps(|mu|)`.
pub fn is_eps_partition(mu: &Partition, eps: EpsSign) -> bool {
    mu.multiplicities().iter().all(|(&p, &m)| p % 2 != eps.paired_parity() || m % 2 == 0)
}

/// Dimension of the isometry Lie algebra in dimension `v`.
pub fn ambient_dim(v: usize, eps: EpsSign) -> Result<usize> {
    match eps {
        EpsSign::Plus => Ok(v * v.saturating_sub(1) / 2),
        EpsSign::Minus if v % 2 == 1 => Err(Error::InvalidInput(format!("no symplectic form in odd dimension {v}"))),
        EpsSign::Minus => Ok(v * (v + 1) / 2),
    }
}

/// Dimension of the nilpotent orbit of Jordan type `mu` in the isometry Lie algebra.
pub fn orbit_dimension(mu: &Partition, eps: EpsSign) -> Result<usize> {
    if !is_eps_partition(mu, eps) {
        return Err(Error::InvalidPartition(format!("{mu} is not an eps-partition for eps={eps}")));
    }
    let size = mu.size() as i64;
    let dual_sq: i64 = dual_partition(mu).0.iter().map(|&p| (p * p) as i64).sum();
    let odd = mu.0.iter().filter(|&&p| p % 2 == 1).count() as i64;
    let twice = size * size - dual_sq - eps.value() * (size - odd);
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Construction(format!("orbit dimension of {mu} is {twice}/2")));
    }
    Ok((twice / 2) as usize)
}

/// All partitions of `v`, in decreasing lexicographic order.
pub fn enumerate_partitions(v: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(v, v, &mut Vec::new(), &mut out);
    out
}

/// All of `P_eps(v)`; `bound` defaults to [`ENUMERATION_BOUND`].
pub fn enumerate_eps_partitions(v: usize, eps: EpsSign, bound: Option<usize>) -> Result<Vec<Partition>> {
    let cap = bound.unwrap_or(ENUMERATION_BOUND);
    if v > cap {
        return Err(Error::CapExceeded { what: format!("partition size {v}"), cap });
    }
    Ok(enumerate_partitions(v).into_iter().filter(|p| is_eps_partition(p, eps)).collect())
}

/// The dominance-largest ε-partition below `mu`.
///
/// Repeatedly lowers the largest part of the wrong parity with odd
/// multiplicity by one, moving the unit to the first later part that is at
/// least two smaller (or to a new part 1).
pub fn eps_collapse(mu: &Partition, eps: EpsSign) -> Result<Partition> {
    if eps == EpsSign::Minus && mu.size() % 2 == 1 {
        return Err(Error::InvalidInput(format!("no symplectic partition of the odd number {}", mu.size())));
    }
    let mut parts = mu.0.clone();
    loop {
        let current = Partition(parts.clone());
        let bad = current
            .multiplicities()
            .into_iter()
            .rev()
            .find(|&(p, m)| p % 2 == eps.paired_parity() && m % 2 == 1)
            .map(|(p, _)| p);
        let Some(q) = bad else { return Ok(current) };
        let last = parts.iter().rposition(|&p| p == q).expect("part present");
        parts[last] -= 1;
        match parts[last + 1..].iter().position(|&p| p + 1 < q) {
            Some(k) => parts[last + 1 + k] += 1,
            None => parts.push(1),
        }
        parts.retain(|&p| p > 0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_partition(&p("3,1")), p("2,1,1"));
        assert_eq!(dual_partition(&p("2,2")), p("2,2"));
        assert_eq!(dual_partition(&p("4")), p("1,1,1,1"));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p("2,2"), &p("3,1")).unwrap());
        assert!(!dominance_leq(&p("3,1"), &p("2,2")).unwrap());
        assert!(dominance_leq(&p("3,1"), &p("3,1")).unwrap());
        assert!(dominance_leq(&p("3"), &p("3,1")).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(!is_eps_partition(&p("2,1"), EpsSign::Plus));
        assert!(is_eps_partition(&p("2,2"), EpsSign::Plus));
        assert!(!is_eps_partition(&p("3,1"), EpsSign::Minus));
    }

    #[test]
    fn orbit_dimension_examples() {
        assert_eq!(orbit_dimension(&p("2"), EpsSign::Minus).unwrap(), 2);
        assert_eq!(orbit_dimension(&p("1,1,1,1"), EpsSign::Plus).unwrap(), 0);
        assert_eq!(orbit_dimension(&p("1,1"), EpsSign::Minus).unwrap(), 0);
        assert_eq!(orbit_dimension(&p("2,2"), EpsSign::Minus).unwrap(), 6);
        assert_eq!(orbit_dimension(&p("3"), EpsSign::Plus).unwrap(), 2);
        assert!(orbit_dimension(&p("2,1"), EpsSign::Plus).is_err());
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(eps_collapse(&p("4"), EpsSign::Plus).unwrap(), p("3,1"));
        assert_eq!(eps_collapse(&p("2"), EpsSign::Minus).unwrap(), p("2"));
        assert_eq!(eps_collapse(&p("3,1"), EpsSign::Minus).unwrap(), p("2,2"));
        assert!(eps_collapse(&p("3"), EpsSign::Minus).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_eps_partitions(2, EpsSign::Minus, None).unwrap();
        assert_eq!(e, vec![p("2"), p("1,1")]);
        assert!(enumerate_eps_partitions(3, EpsSign::Minus, None).unwrap().is_empty());
        assert_eq!(enumerate_eps_partitions(0, EpsSign::Plus, None).unwrap(), vec![Partition::empty()]);
        assert!(enumerate_eps_partitions(15, EpsSign::Plus, None).is_err());
    }

    #[test]
    fn ambient_examples() {
        assert_eq!(ambient_dim(2, EpsSign::Minus).unwrap(), 3);
        assert_eq!(ambient_dim(3, EpsSign::Plus).unwrap(), 3);
        assert_eq!(ambient_dim(4, EpsSign::Plus).unwrap(), 6);
        assert!(ambient_dim(3, EpsSign::Minus).is_err());
    }

    fn brute_collapse(mu: &Partition, eps: EpsSign) -> Vec<Partition> {
        let below: Vec<Partition> = enumerate_partitions(mu.size())
            .into_iter()
            .filter(|l| is_eps_partition(l, eps) && dominance_leq(l, mu).unwrap())
            .collect();
        below.iter().filter(|l| !below.iter().any(|m| m != *l && dominance_leq(l, m).unwrap())).cloned().collect()
    }

    #[test]
    fn collapse_matches_brute_force() {
        for v in 0..=10 {
            for mu in enumerate_partitions(v) {
                for eps in EpsSign::BOTH {
                    if eps == EpsSign::Minus && v % 2 == 1 {
                        continue;
                    }
                    let maxima = brute_collapse(&mu, eps);
                    assert_eq!(maxima.len(), 1, "{mu} {eps}");
                    assert_eq!(eps_collapse(&mu, eps).unwrap(), maxima[0], "{mu} {eps}");
                }
            }
        }
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for v in 0..=10 {
            let all = enumerate_partitions(v);
            for a in &all {
                assert!(dominance_leq(a, a).unwrap());
                for b in &all {
                    let ab = dominance_leq(a, b).unwrap();
                    if ab && dominance_leq(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    if !ab {
                        continue;
                    }
                    for c in &all {
                        if dominance_leq(b, c).unwrap() {
                            assert!(dominance_leq(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closure_order_is_downward_closed() {
        for v in 0..=8 {
            for eps in EpsSign::BOTH {
                let all = enumerate_eps_partitions(v, eps, None).unwrap();
                for mu in &all {
                    let below: Vec<_> = all.iter().filter(|l| dominance_leq(l, mu).unwrap()).collect();
                    for l in &below {
                        for k in &all {
                            if dominance_leq(k, l).unwrap() {
                                assert!(below.contains(&k));
                            }
                        }
                    }
                }
            }
        }
    }

    fn arb_partition(max: usize) -> impl Strategy<Value = Partition> {
        (0..=max).prop_flat_map(|v| {
            let all = enumerate_partitions(v);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn dual_is_an_involution(mu in arb_partition(14)) {
            prop_assert_eq!(dual_partition(&dual_partition(&mu)), mu.clone());
            prop_assert_eq!(dual_partition(&mu).size(), mu.size());
        }

        #[test]
        fn orbit_dimension_is_integral(mu in arb_partition(14), plus in any::<bool>()) {
            let eps = if plus { EpsSign::Plus } else { EpsSign::Minus };
            if is_eps_partition(&mu, eps) {
                let d = orbit_dimension(&mu, eps).unwrap();
                prop_assert!(d <= ambient_dim(mu.size(), eps).unwrap());
            }
        }

        #[test]
        fn collapse_is_valid_and_below(mu in arb_partition(12), plus in any::<bool>()) {
            let eps = if plus { EpsSign::Plus } else { EpsSign::Minus };
            prop_assume!(eps == EpsSign::Plus || mu.size() % 2 == 0);
            let c = eps_collapse(&mu, eps).unwrap();
            prop_assert!(is_eps_partition(&c, eps));
            prop_assert!(dominance_leq(&c, &mu).unwrap());
        }

        #[test]
        fn parse_round_trip(mu in arb_partition(14)) {
            let s = mu.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
            prop_assert_eq!(s.parse::<Partition>().unwrap(), mu);
        }
    }
}
