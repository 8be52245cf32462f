use std::fmt;

use num_traits::{One, Signed, Zero};

use super::scalar::{format_scalar, Scalar};
use super::space::Space;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one())],
        }
    }

    pub fn single(i: usize, x: Scalar) -> Self {
        if x.is_zero() {
            Self::zero()
        } else {
            SparseVec { entries: vec![(i, x)] }
        }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, x) in pairs {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y += x,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SparseVec { entries }
    }

    /// Trusted constructor: caller guarantees sorted, unique, nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, x)| !x.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    /// One past the largest stored index.
    pub fn support_bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let v = x + c * y;
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Scalar::one(), other)
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&-Scalar::one())
    }

    /// `self ⊗ other` where `other` lives in a space of dimension `other_dim`.
    pub fn tensor(&self, other: &SparseVec, other_dim: usize) -> SparseVec {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * other_dim + j, x * y));
            }
        }
        SparseVec { entries }
    }

    /// Relabels indices through `f`; duplicates are summed.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, x)| (f(*i), x.clone())).collect())
    }

    /// Human-readable linear combination of basis labels.
    pub fn display<'a>(&'a self, space: &'a Space) -> DisplayVec<'a> {
        DisplayVec { v: self, space }
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (i, x)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}:{}", format_scalar(x))?;
        }
        f.write_str("]")
    }
}

pub struct DisplayVec<'a> {
    v: &'a SparseVec,
    space: &'a Space,
}

impl fmt::Display for DisplayVec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, x)) in self.v.iter().enumerate() {
            let neg = x.is_negative();
            let mag = x.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if !mag.is_one() {
                write!(f, "{}·", format_scalar(&mag))?;
            }
            f.write_str(&self.space.label(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{int, ratio};

    #[test]
    fn from_pairs_merges_and_drops_zeros() {
        let v = SparseVec::from_pairs(vec![(3, int(1)), (1, int(2)), (3, int(-1)), (0, int(0))]);
        assert_eq!(v.entries(), &[(1, int(2))]);
    }

    #[test]
    fn axpy_cancels() {
        let a = SparseVec::from_pairs(vec![(0, int(1)), (2, int(3))]);
        let b = SparseVec::from_pairs(vec![(2, int(1)), (5, int(1))]);
        let c = a.axpy(&int(-3), &b);
        assert_eq!(c.entries(), &[(0, int(1)), (5, int(-3))]);
    }

    #[test]
    fn tensor_indices() {
        let a = SparseVec::from_pairs(vec![(1, int(2))]);
        let b = SparseVec::from_pairs(vec![(0, ratio(1, 2)), (2, int(1))]);
        let t = a.tensor(&b, 3);
        assert_eq!(t.entries(), &[(3, int(1)), (5, int(2))]);
    }

    #[test]
    fn display() {
        let s = Space::new(vec!["a".into(), "b".into()]).unwrap();
        let v = SparseVec::from_pairs(vec![(0, int(1)), (1, int(-2))]);
        assert_eq!(v.display(&s).to_string(), "a - 2·b");
    }
}
