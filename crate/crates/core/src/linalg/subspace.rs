use num_traits::Zero;

use super::echelon::Echelon;
use super::map::LinearMap;
use super::scalar::Scalar;
use super::space::Space;
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// A subspace held as the rows of its reduced row echelon form, so two
/// subspaces are equal exactly when their bases are.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: Space,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.dim() == other.ambient.dim() && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn span(ambient: &Space, vectors: &[SparseVec]) -> Self {
        let mut e = Echelon::new();
        for v in vectors {
            debug_assert!(v.support_bound() <= ambient.dim());
            e.insert(v);
        }
        Self::from_echelon(ambient, e)
    }

    pub(crate) fn from_echelon(ambient: &Space, e: Echelon) -> Self {
        let (pivots, basis) = e.into_rref().into_iter().unzip();
        Subspace {
            ambient: ambient.clone(),
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: &Space) -> Self {
        Subspace {
            ambient: ambient.clone(),
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: &Space) -> Self {
        Subspace {
            ambient: ambient.clone(),
            basis: (0..ambient.dim()).map(SparseVec::unit).collect(),
            pivots: (0..ambient.dim()).collect(),
        }
    }

    pub fn ambient(&self) -> &Space {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Removes the pivot components of `v`; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (p, row) in self.pivots.iter().zip(&self.basis) {
            let c = v.get(*p);
            if !c.is_zero() {
                r = r.axpy(&-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    /// Because the basis is reduced, the coordinates are `v`'s pivot entries.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        let pairs = self.pivots.iter().enumerate().map(|(k, p)| (k, v.get(*p))).collect();
        Some(SparseVec::from_pairs(pairs))
    }

    /// Inclusion map from `coords` (a space of dimension `dim()`) into the ambient.
    pub fn inclusion(&self, coords: &Space) -> LinearMap {
        assert_eq!(coords.dim(), self.dim());
        LinearMap::from_cols_unchecked(coords.clone(), self.ambient.clone(), self.basis.clone())
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient.dim() != other.ambient.dim() {
            return Err(Error::AmbientMismatch(format!(
                "intersection of subspaces of dim-{} and dim-{} spaces",
                self.ambient.dim(),
                other.ambient.dim()
            )));
        }
        let coords = Space::indexed("u", self.dim());
        let incl = self.inclusion(&coords);
        let pre = incl.preimage(other)?;
        let vectors: Vec<SparseVec> = pre.basis().iter().map(|c| incl.apply(c)).collect();
        Ok(Subspace::span(&self.ambient, &vectors))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient.dim() != other.ambient.dim() {
            return Err(Error::AmbientMismatch("sum of subspaces".into()));
        }
        let all: Vec<SparseVec> = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::span(&self.ambient, &all))
    }

    /// `U⊗V` inside `ambient(U)⊗ambient(V)`.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        let n = other.ambient.dim();
        let vectors: Vec<SparseVec> = self
            .basis
            .iter()
            .flat_map(|u| other.basis.iter().map(move |v| u.tensor(v, n)))
            .collect();
        Subspace::span(&self.ambient.tensor(&other.ambient), &vectors)
    }

    /// Coordinates of `v ∈ ambient⊗R` (with `dim R = right_dim`) in `self⊗R`.
    pub fn left_tensor_coordinates(&self, v: &SparseVec, right_dim: usize) -> Option<SparseVec> {
        let slices = split_slices(v, right_dim, true);
        let mut pairs = Vec::new();
        for (r, slice) in slices {
            let c = self.coordinates(&slice)?;
            for (a, x) in c.into_entries() {
                pairs.push((a * right_dim + r, x));
            }
        }
        Some(SparseVec::from_pairs(pairs))
    }

    /// Coordinates of `v ∈ L⊗ambient` (with `dim L = left_dim`) in `L⊗self`.
    pub fn right_tensor_coordinates(&self, v: &SparseVec, left_dim: usize) -> Option<SparseVec> {
        let n = self.ambient.dim();
        let slices = split_slices(v, n, false);
        let d = self.dim();
        let mut pairs = Vec::new();
        for (l, slice) in slices {
            let c = self.coordinates(&slice)?;
            debug_assert!(l < left_dim);
            for (a, x) in c.into_entries() {
                pairs.push((l * d + a, x));
            }
        }
        Some(SparseVec::from_pairs(pairs))
    }

    pub fn quotient(&self) -> QuotientSpace {
        QuotientSpace::new(self.clone())
    }
}

/// Splits `v ∈ X⊗Y` (`dim Y = inner`) into slices. With `by_right`, returns
/// for each right index `y` the vector in `X`; otherwise for each left index
/// `x` the vector in `Y`.
fn split_slices(v: &SparseVec, inner: usize, by_right: bool) -> Vec<(usize, SparseVec)> {
    let mut groups: std::collections::BTreeMap<usize, Vec<(usize, Scalar)>> = Default::default();
    for (i, x) in v.iter() {
        let (l, r) = (i / inner, i % inner);
        if by_right {
            groups.entry(r).or_default().push((l, x.clone()));
        } else {
            groups.entry(l).or_default().push((r, x.clone()));
        }
    }
    groups.into_iter().map(|(k, p)| (k, SparseVec::from_pairs(p))).collect()
}

/// `ambient / killed`, with the complement spanned by the non-pivot basis
/// vectors of `killed`'s echelon form.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    killed: Subspace,
    space: Space,
    complement: Vec<usize>,
    projection: LinearMap,
    section: LinearMap,
}

impl QuotientSpace {
    fn new(killed: Subspace) -> Self {
        let ambient = killed.ambient.clone();
        let n = ambient.dim();
        let mut slot = vec![None; n];
        let mut is_pivot = vec![false; n];
        for p in &killed.pivots {
            is_pivot[*p] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        for (k, j) in complement.iter().enumerate() {
            slot[*j] = Some(k);
        }
        let labels: Vec<String> = complement.iter().map(|&j| format!("[{}]", ambient.label(j))).collect();
        let space = Space::new(labels).unwrap_or_else(|_| Space::indexed("q", complement.len()));
        let proj_cols = (0..n)
            .map(|j| {
                let r = killed.reduce(&SparseVec::unit(j));
                r.reindex(|i| slot[i].expect("reduced vectors avoid pivots"))
            })
            .collect();
        let projection = LinearMap::from_cols_unchecked(ambient.clone(), space.clone(), proj_cols);
        let section = LinearMap::from_basis_map(&space, &ambient, |k| complement[k]);
        QuotientSpace {
            killed,
            space,
            complement,
            projection,
            section,
        }
    }

    pub fn ambient(&self) -> &Space {
        self.killed.ambient()
    }

    pub fn killed(&self) -> &Subspace {
        &self.killed
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn projection(&self) -> &LinearMap {
        &self.projection
    }

    pub fn section(&self) -> &LinearMap {
        &self.section
    }
}
