//! The n-nilcone `{x nilpotent in the isometry algebra : x^n = 0}` as an
//! orbit closure, by parity case.

use serde::{Deserialize, Serialize};

use super::{EpsSign, Partition};
use crate::error::{Error, Result};

/// The orbit closure(s) making up an n-nilcone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilconeDescription {
    /// One partition, or two equal very even partitions labelled (1) and (2).
    pub components: Vec<Partition>,
    pub irreducible: bool,
    pub normal: bool,
    pub very_even: bool,
    /// Which row of the parity table produced the answer.
    pub case: String,
    /// Set when a table row had to be read at a degenerate edge.
    pub note: Option<String>,
}

fn build(n: usize, k_n: usize, rest: &[i64]) -> (Partition, Option<String>) {
    let mut parts = vec![n; k_n];
    let mut note = None;
    for &p in rest {
        if p < 0 {
            note = Some(format!("row gives a part {p} at l=0; read as the partition without the (l-1, 1) tail"));
        }
    }
    if note.is_some() {
        return (Partition::from_unsorted(parts), note);
    }
    parts.extend(rest.iter().map(|&p| p as usize));
    (Partition::from_unsorted(parts), None)
}

/// Classifies the n-nilcone of the isometry algebra of an ε-form on `Q^v`.
pub fn nilcone_description(n: usize, v: usize, eps: EpsSign) -> Result<NilconeDescription> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    if eps == EpsSign::Minus && v % 2 == 1 {
        return Err(Error::InvalidInput(format!("no symplectic form in odd dimension {v}")));
    }
    let (k, l) = (v / n, v % n);
    let (ni, li) = (n as i64, l as i64);
    let odd = |x: usize| x % 2 == 1;
    let (no, ko, lo) = (odd(n), odd(k), odd(l));
    let mut very_even = false;
    let (case, (part, note)) = match eps {
        EpsSign::Minus if no && ko && lo => ("n,k,l odd", build(n, k - 1, &[ni - 1, li + 1])),
        EpsSign::Minus => ("otherwise", build(n, k, &[li])),
        EpsSign::Plus if odd(v) => {
            if !no && !ko && lo {
                ("n,k even, l odd", build(n, k, &[li]))
            } else if no && lo && !ko {
                ("n,l odd, k even", build(n, k, &[li]))
            } else if !no && ko && lo {
                ("n even, k,l odd", build(n, k - 1, &[ni - 1, li, 1]))
            } else {
                ("n,k odd, l even", build(n, k, &[li - 1, 1]))
            }
        }
        EpsSign::Plus => {
            if no && ko && lo {
                ("n,k,l odd", build(n, k, &[li]))
            } else if no && !ko && !lo {
                ("n odd, k,l even", build(n, k, &[li - 1, 1]))
            } else if !no && !lo && ko {
                ("n,l even, k odd", build(n, k - 1, &[ni - 1, li + 1]))
            } else if l >= 2 {
                ("n,k,l even, l>=2", build(n, k, &[li - 1, 1]))
            } else {
                very_even = true;
                ("n,k even, l=0", build(n, k, &[]))
            }
        }
    };
    let components = if very_even { vec![part.clone(), part] } else { vec![part] };
    Ok(NilconeDescription {
        components,
        irreducible: !very_even,
        normal: true,
        very_even,
        case: case.to_string(),
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::eps_collapse;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn table_examples() {
        let d = nilcone_description(3, 4, EpsSign::Minus).unwrap();
        assert_eq!(d.components, vec![p("2,2")]);
        assert!(d.irreducible && d.normal && !d.very_even);
        let d = nilcone_description(2, 4, EpsSign::Plus).unwrap();
        assert_eq!(d.components, vec![p("2,2"), p("2,2")]);
        assert!(d.very_even && !d.irreducible && d.normal);
        let d = nilcone_description(3, 5, EpsSign::Plus).unwrap();
        assert_eq!(d.components, vec![p("3,1,1")]);
    }

    #[test]
    fn table_agrees_with_collapse() {
        for n in 2..=6 {
            for v in 1..=12 {
                for eps in EpsSign::BOTH {
                    if eps == EpsSign::Minus && v % 2 == 1 {
                        continue;
                    }
                    let d = nilcone_description(n, v, eps).unwrap();
                    let base = Partition::from_unsorted(std::iter::repeat_n(n, v / n).chain([v % n]).collect());
                    assert_eq!(d.components[0], eps_collapse(&base, eps).unwrap(), "n={n} v={v} {eps}");
                    assert_eq!(d.very_even, eps.is_plus() && v % n == 0 && n % 2 == 0 && (v / n) % 2 == 0);
                }
            }
        }
    }

    #[test]
    fn degenerate_edge_is_flagged() {
        let d = nilcone_description(3, 3, EpsSign::Plus).unwrap();
        assert_eq!(d.components, vec![p("3")]);
        assert!(d.note.is_some());
        assert!(nilcone_description(3, 4, EpsSign::Plus).unwrap().note.is_none());
    }
}
