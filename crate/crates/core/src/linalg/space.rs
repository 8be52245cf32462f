use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone)]
enum Basis {
    Named(Arc<[String]>),
    Indexed(Arc<str>),
    Tensor(Arc<Space>, Arc<Space>),
    Sum(Arc<Space>, Arc<Space>),
}

/// A finite-dimensional vector space with a labeled basis.
///
/// Tensor and direct-sum spaces compute their labels on demand, so building
/// large intermediate spaces costs nothing beyond the dimension.
#[derive(Clone)]
pub struct Space {
    dim: usize,
    basis: Basis,
}

impl Space {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Invalid(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(Space {
            dim: labels.len(),
            basis: Basis::Named(labels.into()),
        })
    }

    /// Basis `prefix0, prefix1, ...`.
    pub fn indexed(prefix: &str, dim: usize) -> Self {
        Space {
            dim,
            basis: Basis::Indexed(prefix.into()),
        }
    }

    /// The ground field as a one-dimensional space with basis `1`.
    pub fn scalars() -> Self {
        Space::new(vec!["1".into()]).expect("single label")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self, i: usize) -> String {
        assert!(i < self.dim, "basis index {i} out of range for dim {}", self.dim);
        match &self.basis {
            Basis::Named(l) => l[i].clone(),
            Basis::Indexed(p) => format!("{p}{i}"),
            Basis::Tensor(a, b) => {
                let (x, y) = (i / b.dim, i % b.dim);
                format!("{}⊗{}", a.label(x), b.label(y))
            }
            Basis::Sum(a, b) => {
                if i < a.dim {
                    format!("{}⊕0", a.label(i))
                } else {
                    format!("0⊕{}", b.label(i - a.dim))
                }
            }
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim).map(|i| self.label(i)).collect()
    }

    /// Tensor product; basis index of `a⊗b` is `a * other.dim + b`.
    pub fn tensor(&self, other: &Space) -> Space {
        Space {
            dim: self.dim * other.dim,
            basis: Basis::Tensor(Arc::new(self.clone()), Arc::new(other.clone())),
        }
    }

    /// Iterated tensor product of a list of spaces, left-nested.
    pub fn tensor_all(spaces: &[&Space]) -> Space {
        let mut it = spaces.iter();
        let first = (*it.next().expect("at least one factor")).clone();
        it.fold(first, |acc, s| acc.tensor(s))
    }

    pub fn direct_sum(&self, other: &Space) -> Space {
        Space {
            dim: self.dim + other.dim,
            basis: Basis::Sum(Arc::new(self.clone()), Arc::new(other.clone())),
        }
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && (0..self.dim).all(|i| self.label(i) == other.label(i))
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim <= 8 {
            write!(f, "Space{:?}", self.labels())
        } else {
            write!(f, "Space(dim {})", self.dim)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_labels_are_left_major() {
        let a = Space::new(vec!["a".into(), "b".into()]).unwrap();
        let x = Space::new(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let t = a.tensor(&x);
        assert_eq!(t.dim(), 6);
        assert_eq!(t.label(0), "a⊗x");
        assert_eq!(t.label(2), "a⊗z");
        assert_eq!(t.label(3), "b⊗x");
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Space::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn sum_labels() {
        let a = Space::indexed("e", 2);
        let s = a.direct_sum(&Space::scalars());
        assert_eq!(s.labels(), vec!["e0⊕0", "e1⊕0", "0⊕1"]);
    }
}
