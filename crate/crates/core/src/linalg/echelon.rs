use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::vector::SparseVec;

/// Incremental row echelon form over the rationals.
///
/// Rows are monic at their pivot (the smallest index carrying a nonzero
/// entry) and forward-reduced: no row has an entry at a smaller pivot.
#[derive(Clone, Debug, Default)]
pub(crate) struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, Scalar> = v.iter().map(|(i, x)| (i, x.clone())).collect();
        let mut cursor = 0usize;
        while let Some((&k, _)) = acc.range(cursor..).next() {
            cursor = k + 1;
            let Some(row) = self.rows.get(&k) else { continue };
            let c = acc.remove(&k).expect("present");
            for (j, x) in row.iter().skip(1) {
                let slot = acc.entry(j).or_insert_with(Scalar::zero);
                *slot -= &c * x;
                if slot.is_zero() {
                    acc.remove(&j);
                }
            }
        }
        SparseVec::from_sorted(acc.into_iter().collect())
    }

    /// Adds `v` to the row space; returns the new pivot if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (p, lead) = r.leading()?;
        let inv = Scalar::one() / lead;
        let row = r.scale(&inv);
        self.rows.insert(p, row);
        Some(p)
    }

    /// Fully reduced rows sorted by pivot.
    pub fn into_rref(self) -> Vec<(usize, SparseVec)> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (p, row) in self.rows.into_iter().rev() {
            let mut r = row;
            let hits: Vec<usize> = r
                .iter()
                .skip(1)
                .map(|(j, _)| j)
                .filter(|j| done.contains_key(j))
                .collect();
            for j in hits {
                let c = r.get(j);
                r = r.axpy(&-c, &done[&j]);
            }
            done.insert(p, r);
        }
        done.into_iter().collect()
    }

    /// Back-substitution for an augmented system whose right-hand side sits in
    /// column `rhs_col` (the largest column index). Free variables are set to
    /// zero. `None` when a row reduces to `0 = 1`.
    pub fn back_substitute(&self, rhs_col: usize) -> Option<SparseVec> {
        if self.rows.contains_key(&rhs_col) {
            return None;
        }
        let mut x: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut val = Scalar::zero();
            for (j, c) in row.iter().skip(1) {
                if j == rhs_col {
                    val += c;
                } else if let Some(xj) = x.get(&j) {
                    val -= c * xj;
                }
            }
            if !val.is_zero() {
                x.insert(p, val);
            }
        }
        Some(SparseVec::from_sorted(x.into_iter().collect()))
    }
}
