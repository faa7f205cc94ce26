//! Words in the generators of `U(sl_n^θ)` and its idempotent form, the
//! defining relators, the Cartan elements `h'`, and evaluation of words
//! on modules that supply generator matrices.

mod elements;
mod relators;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::indexing::{rank_r, WeightComposition};
use crate::{q, QMatrix, Rational};

pub use elements::{cartan_hprime, chain_element, monomial_m};
pub use relators::{
    check_relators, relations_check, relators_with_constants, serre_relators, RelationEntry, RelationsReport, Relator,
    RelatorCase,
};

/// A single generator symbol.
///
/// `E(i)` and `F(i)` stand for `e_{i,θ}` and `f_{i,θ}`; since
/// `f_{i,θ} = e_{n-i,θ}` the two are interchangeable, but words keep
/// whichever was written until [`AlgebraElement::rewrite_f_as_e`] is called.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenToken {
    E(usize),
    F(usize),
    H(usize),
    HPrime(usize),
    /// The idempotent of the class `λ + Z(2, ..., 2)`, stored by its smallest representative.
    Idem(WeightComposition),
}

impl GenToken {
    pub fn idem(lambda: &WeightComposition) -> Self {
        GenToken::Idem(lambda.class_rep())
    }

    /// Checks the index range for rank `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let ok = match self {
            GenToken::E(i) | GenToken::F(i) | GenToken::H(i) => (1..n).contains(i),
            GenToken::HPrime(i) => (1..=rank_r(n)).contains(i),
            GenToken::Idem(w) => w.n() == n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("token {self} out of range for n={n}")))
        }
    }
}

impl fmt::Display for GenToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenToken::E(i) => write!(f, "e{i}"),
            GenToken::F(i) => write!(f, "f{i}"),
            GenToken::H(i) => write!(f, "h{i}"),
            GenToken::HPrime(i) => write!(f, "hp{i}"),
            GenToken::Idem(w) => write!(f, "1{w}"),
        }
    }
}

impl FromStr for GenToken {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("unknown token {s:?}"));
        if let Some(rest) = s.strip_prefix("hp") {
            return rest.parse().map(GenToken::HPrime).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix('1') {
            return Ok(GenToken::idem(&rest.parse()?));
        }
        let (head, rest) = s.split_at(1.min(s.len()));
        let i: usize = rest.parse().map_err(|_| bad())?;
        match head {
            "e" => Ok(GenToken::E(i)),
            "f" => Ok(GenToken::F(i)),
            "h" => Ok(GenToken::H(i)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for GenToken {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub type Word = Vec<GenToken>;

/// A formal rational combination of words. Words are never rewritten into
/// a normal form; equality of elements is tested through evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Word, Rational>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    /// The empty word.
    pub fn one(n: usize) -> Self {
        Self::word(n, Vec::new(), q(1))
    }

    pub fn word(n: usize, w: Word, c: Rational) -> Self {
        let mut x = Self::zero(n);
        x.add_term(w, c);
        x
    }

    pub fn token(n: usize, t: GenToken) -> Self {
        Self::word(n, vec![t], q(1))
    }

    pub fn e(n: usize, i: usize) -> Self {
        Self::token(n, GenToken::E(i))
    }

    pub fn f(n: usize, i: usize) -> Self {
        Self::token(n, GenToken::F(i))
    }

    pub fn h(n: usize, i: usize) -> Self {
        Self::token(n, GenToken::H(i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        let s = self.terms.remove(&w).unwrap_or_else(Rational::zero) + c;
        if !s.is_zero() {
            self.terms.insert(w, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.clone() * c.clone());
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend(b.iter().cloned());
                out.add_term(w, x.clone() * y.clone());
            }
        }
        out
    }

    /// `self^k`.
    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// `[x, y] = xy - yx`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Every token that occurs in some word.
    pub fn tokens(&self) -> std::collections::BTreeSet<GenToken> {
        self.terms.keys().flatten().cloned().collect()
    }

    /// Replaces each `f_i` by the equal generator `e_{n-i}`.
    pub fn rewrite_f_as_e(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let w = w
                .iter()
                .map(|t| match t {
                    GenToken::F(i) => GenToken::E(self.n - i),
                    other => other.clone(),
                })
                .collect();
            out.add_term(w, c.clone());
        }
        out
    }

    /// Replaces each `h'_i` token by its defining bracket expression.
    pub fn expand_hprime(&self) -> Self {
        let hp = cartan_hprime(self.n).unwrap_or_default();
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            let mut acc = Self::word(self.n, Vec::new(), c.clone());
            for t in w {
                let piece = match t {
                    GenToken::HPrime(i) => hp[i - 1].clone(),
                    other => Self::token(self.n, other.clone()),
                };
                acc = acc.mul(&piece);
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let word = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("·")
            };
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                f.write_str(&word)?;
            } else {
                write!(f, "{mag}·{word}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            word: Vec<String>,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(w, c)| Term { word: w.iter().map(|t| t.to_string()).collect(), coeff: c.to_string() })
            .collect();
        let mut st = s.serialize_struct("AlgebraElement", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// The class of `-λ`, represented with nonnegative entries.
pub fn negate_class(lambda: &WeightComposition) -> WeightComposition {
    let m = lambda.entries().iter().copied().max().unwrap_or(0);
    let k = m + m % 2;
    WeightComposition::new(lambda.entries().iter().map(|x| k - x).collect())
        .expect("reflection of a symmetric weight is symmetric")
        .class_rep()
}

/// The involution `e_i <-> f_i`, `h_i -> -h_i`, applied letter by letter.
///
/// `h'` tokens have no single-letter image and are expanded first;
/// idempotents go to the class of the negated weight, matching the weights
/// of a θ-twisted module.
pub fn theta_involution(x: &AlgebraElement) -> AlgebraElement {
    let x = x.expand_hprime();
    let mut out = AlgebraElement::zero(x.n);
    for (w, c) in &x.terms {
        let mut c = c.clone();
        let w = w
            .iter()
            .map(|t| match t {
                GenToken::E(i) => GenToken::F(*i),
                GenToken::F(i) => GenToken::E(*i),
                GenToken::H(i) => {
                    c = -c.clone();
                    GenToken::H(*i)
                }
                GenToken::Idem(l) => GenToken::Idem(negate_class(l)),
                GenToken::HPrime(_) => unreachable!("expanded above"),
            })
            .collect();
        out.add_term(w, c);
    }
    out
}

/// Anything that can supply a matrix for each generator token.
pub trait OperatorSource {
    fn dim(&self) -> usize;
    fn token_matrix(&self, t: &GenToken) -> Result<QMatrix>;
}

/// The operator of `x`; in a word the rightmost token acts first.
pub fn evaluate<M: OperatorSource + ?Sized>(x: &AlgebraElement, m: &M) -> Result<QMatrix> {
    let dim = m.dim();
    let mut cache: BTreeMap<GenToken, QMatrix> = BTreeMap::new();
    for t in x.tokens() {
        let mat = m.token_matrix(&t)?;
        cache.insert(t, mat);
    }
    let mut total = QMatrix::zeros(dim, dim);
    for (w, c) in &x.terms {
        let mut p: Option<QMatrix> = None;
        for t in w.iter().rev() {
            let g = &cache[t];
            p = Some(match p {
                None => g.clone(),
                Some(acc) => g.matmul(&acc)?,
            });
            if p.as_ref().is_some_and(|m| m.is_zero()) {
                break;
            }
        }
        let p = p.unwrap_or_else(|| QMatrix::identity(dim));
        total = total.add_scaled(c, &p)?;
    }
    Ok(total)
}
