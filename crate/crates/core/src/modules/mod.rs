//! Finite-dimensional modules with exact generator matrices: the rank-one
//! Grassmannian module, the n-flag module and its rectified even variant,
//! tensor space with the hyperoctahedral commutant, the t-element, singular
//! vectors and the rank-three faithfulness machinery.

mod builders;
mod faithful;
mod singular;
mod telement;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{cartan_hprime, evaluate, GenToken, OperatorSource};
use crate::error::{Error, Result};
use crate::indexing::{rank_r, WeightComposition};
use crate::partitions::EpsSign;
use crate::{QMatrix, Rational};

pub use builders::{grassmannian_module, nflag_module, rectified_module, tensor_module, TENSOR_CAP};
pub use faithful::{faithfulness_check, FaithfulnessCertificate, FaithfulnessPolynomial, FaithfulnessStage};
pub use singular::{singular_vectors, twist_by_theta, SingularVector, SingularVectorReport};
pub use telement::{
    spectral_transfer_check, spectral_transfer_report, t_element_matrix, t_min_poly_check, t_spectrum,
    SpectralTransferReport,
};
pub use tensor::{double_centralizer_check, hyperoctahedral_generators, DoubleCentralizer};

/// What a basis vector stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisLabel {
    /// `[Gr_i]`
    Grassmannian(usize),
    /// `[F_d]` for a flag label `d`.
    Flag(Vec<i64>),
    /// `u_{c_1} ⊗ ... ⊗ u_{c_d}`, indices from 1.
    Tensor(Vec<usize>),
    Other(String),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            BasisLabel::Grassmannian(i) => write!(f, "Gr{i}"),
            BasisLabel::Flag(d) => write!(f, "F[{}]", join(d)),
            BasisLabel::Tensor(c) => {
                let s: Vec<String> = c.iter().map(|x| format!("u{x}")).collect();
                f.write_str(&s.join("⊗"))
            }
            BasisLabel::Other(s) => f.write_str(s),
        }
    }
}

/// A representation of `U(sl_n^θ)` on a labelled basis.
///
/// Only the `e_i` and `h_i` matrices are stored: `f_i = e_{n-i}` and the
/// Cartan elements `h'_i` are derived from them.
#[derive(Clone, Debug)]
pub struct RepModule {
    name: String,
    n: usize,
    labels: Vec<BasisLabel>,
    weights: Vec<WeightComposition>,
    e: Vec<QMatrix>,
    h: Vec<QMatrix>,
    hprime: Vec<QMatrix>,
}

impl RepModule {
    /// Assembles a module from `e_1..e_{n-1}` and `h_1..h_{n-1}`.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        labels: Vec<BasisLabel>,
        weights: Vec<WeightComposition>,
        e: Vec<QMatrix>,
        h: Vec<QMatrix>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("module rank n={n}")));
        }
        let dim = labels.len();
        if weights.len() != dim {
            return Err(Error::DimensionMismatch(format!("{} weights for {dim} labels", weights.len())));
        }
        if weights.iter().any(|w| w.n() != n) {
            return Err(Error::DimensionMismatch("weight length differs from n".into()));
        }
        if e.len() != n - 1 || h.len() != n - 1 {
            return Err(Error::MissingGenerator(format!("need {} e and h matrices", n - 1)));
        }
        if e.iter().chain(&h).any(|m| m.n_rows() != dim || m.n_cols() != dim) {
            return Err(Error::DimensionMismatch(format!("generator matrices must be {dim}x{dim}")));
        }
        let mut m = RepModule { name: name.into(), n, labels, weights, e, h, hprime: Vec::new() };
        m.hprime = cartan_hprime(n)?.iter().map(|x| evaluate(x, &m)).collect::<Result<_>>()?;
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn weights(&self) -> &[WeightComposition] {
        &self.weights
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn e(&self, i: usize) -> &QMatrix {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &QMatrix {
        &self.e[self.n - i - 1]
    }

    pub fn h(&self, i: usize) -> &QMatrix {
        &self.h[i - 1]
    }

    pub fn hprime(&self, i: usize) -> &QMatrix {
        &self.hprime[i - 1]
    }

    /// Projector onto the basis vectors whose weight lies in the class of `lambda`.
    pub fn weight_projector(&self, lambda: &WeightComposition) -> QMatrix {
        let diag: Vec<Rational> =
            self.weights.iter().map(|w| if w.same_class(lambda) { crate::q(1) } else { crate::q(0) }).collect();
        QMatrix::diagonal(&diag)
    }

    /// Matrices of `e_i, f_i, h_i` for all `i`.
    pub fn all_generators(&self) -> Vec<QMatrix> {
        let mut out = self.e.clone();
        out.extend(self.h.iter().cloned());
        out
    }

    /// Basis labels, weights and generator triplets in a serializable form.
    pub fn to_json(&self) -> ModuleJson {
        let trip = |m: &QMatrix| -> Vec<(usize, usize, String)> {
            m.triplets().map(|(i, j, x)| (i, j, x.to_string())).collect()
        };
        let mut generators = BTreeMap::new();
        for i in 1..self.n {
            generators.insert(GenToken::E(i).to_string(), trip(self.e(i)));
            generators.insert(GenToken::F(i).to_string(), trip(self.f(i)));
            generators.insert(GenToken::H(i).to_string(), trip(self.h(i)));
        }
        for i in 1..=rank_r(self.n) {
            generators.insert(GenToken::HPrime(i).to_string(), trip(self.hprime(i)));
        }
        ModuleJson {
            name: self.name.clone(),
            n: self.n,
            labels: self.labels.clone(),
            weights: self.weights.iter().map(|w| w.entries().to_vec()).collect(),
            generators,
        }
    }

    /// Rebuilds a module from [`ModuleJson`]; the `e` and `h` entries are
    /// required, everything else is recomputed.
    pub fn from_json(j: &ModuleJson) -> Result<Self> {
        let dim = j.labels.len();
        let read = |key: String| -> Result<QMatrix> {
            let t = j.generators.get(&key).ok_or_else(|| Error::MissingGenerator(key.clone()))?;
            let parsed = t
                .iter()
                .map(|(a, b, s)| {
                    s.parse::<Rational>()
                        .map(|x| (*a, *b, x))
                        .map_err(|_| Error::InvalidInput(format!("bad coefficient {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            QMatrix::from_triplets(dim, dim, parsed)
        };
        let e = (1..j.n).map(|i| read(format!("e{i}"))).collect::<Result<Vec<_>>>()?;
        let h = (1..j.n).map(|i| read(format!("h{i}"))).collect::<Result<Vec<_>>>()?;
        let weights = j.weights.iter().cloned().map(WeightComposition::new).collect::<Result<Vec<_>>>()?;
        RepModule::new(j.name.clone(), j.n, j.labels.clone(), weights, e, h)
    }
}

impl OperatorSource for RepModule {
    fn dim(&self) -> usize {
        self.labels.len()
    }

    fn token_matrix(&self, t: &GenToken) -> Result<QMatrix> {
        t.validate(self.n).map_err(|_| Error::MissingGenerator(format!("{t} on {}", self.name)))?;
        Ok(match t {
            GenToken::E(i) => self.e(*i).clone(),
            GenToken::F(i) => self.f(*i).clone(),
            GenToken::H(i) => self.h(*i).clone(),
            GenToken::HPrime(i) => self.hprime(*i).clone(),
            GenToken::Idem(l) => self.weight_projector(l),
        })
    }
}

/// The on-disk form of a [`RepModule`]; matrices are `(row, col, "p/q")` triplets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub name: String,
    pub n: usize,
    pub labels: Vec<BasisLabel>,
    pub weights: Vec<Vec<i64>>,
    pub generators: BTreeMap<String, Vec<(usize, usize, String)>>,
}

/// Parameters accepted by [`build_module`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Grassmannian { v: usize, eps: EpsSign },
    NFlag { n: usize, v: usize, eps: EpsSign },
    Tensor { n: usize, d: usize },
    Rectified { n: usize, v: usize },
}

impl std::str::FromStr for ModuleSpec {
    type Err = Error;

    /// `grassmannian:v:eps`, `nflag:n:v:eps`, `tensor:n:d` or `rectified:n:v`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidInput(format!("bad module spec {s:?}"));
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["grassmannian", v, e] => Ok(ModuleSpec::Grassmannian { v: num(v)?, eps: e.parse()? }),
            ["nflag", n, v, e] => Ok(ModuleSpec::NFlag { n: num(n)?, v: num(v)?, eps: e.parse()? }),
            ["tensor", n, d] => Ok(ModuleSpec::Tensor { n: num(n)?, d: num(d)? }),
            ["rectified", n, v] => Ok(ModuleSpec::Rectified { n: num(n)?, v: num(v)? }),
            _ => Err(bad()),
        }
    }
}

pub fn build_module(spec: &ModuleSpec) -> Result<RepModule> {
    match *spec {
        ModuleSpec::Grassmannian { v, eps } => grassmannian_module(v, eps),
        ModuleSpec::NFlag { n, v, eps } => nflag_module(n, v, eps),
        ModuleSpec::Tensor { n, d } => tensor_module(n, d),
        ModuleSpec::Rectified { n, v } => rectified_module(n, v),
    }
}
