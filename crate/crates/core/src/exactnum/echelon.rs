use std::collections::BTreeMap;

use super::Scalar;

/// Sparse vector: index to nonzero value.
pub type SparseVec<T> = BTreeMap<usize, T>;

/// `v += a * w`, dropping entries that cancel.
pub fn axpy<T: Scalar>(v: &mut SparseVec<T>, a: &T, w: &SparseVec<T>) {
    if a.is_zero() {
        return;
    }
    for (&j, x) in w {
        let term = a.clone() * x.clone();
        match v.get_mut(&j) {
            Some(slot) => {
                *slot = slot.clone() + term;
                if slot.is_zero() {
                    v.remove(&j);
                }
            }
            None => {
                v.insert(j, term);
            }
        }
    }
}

/// Scale every entry of `v` by `a`.
pub fn scale_vec<T: Scalar>(v: &SparseVec<T>, a: &T) -> SparseVec<T> {
    if a.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&j, x)| (j, x.clone() * a.clone())).collect()
}

/// An incrementally grown row-echelon basis.
///
/// Each stored row has leading coefficient 1 at its pivot column, and its
/// pivot is its smallest index, so reduction only ever creates entries to
/// the right of the column being cleared.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    rows: BTreeMap<usize, SparseVec<T>>,
}

impl<T: Scalar> Default for EchelonBasis<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> EchelonBasis<T> {
    pub fn new() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, mut v: SparseVec<T>) -> SparseVec<T> {
        let mut cursor = 0;
        loop {
            let hit = v.range(cursor..).find(|(c, _)| self.rows.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = hit else { return v };
            axpy(&mut v, &-x, &self.rows[&c]);
            cursor = c + 1;
        }
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<T>) -> bool {
        let r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = T::one() / lead.clone();
        self.rows.insert(p, scale_vec(&r, &inv));
        true
    }

    /// Reduced row-echelon form: pivot column and row, pivots ascending.
    pub fn into_rref(self) -> Vec<(usize, SparseVec<T>)> {
        let mut done: BTreeMap<usize, SparseVec<T>> = BTreeMap::new();
        for (p, mut row) in self.rows.into_iter().rev() {
            let mut cursor = p + 1;
            loop {
                let hit = row.range(cursor..).find(|(c, _)| done.contains_key(c)).map(|(c, x)| (*c, x.clone()));
                let Some((c, x)) = hit else { break };
                axpy(&mut row, &-x, &done[&c]);
                cursor = c + 1;
            }
            done.insert(p, row);
        }
        done.into_iter().collect()
    }
}
