use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::echelon::Echelon;
use super::scalar::Scalar;
use super::space::Space;
use super::subspace::Subspace;
use super::vector::SparseVec;
use crate::error::{Error, Result};
use crate::par;

/// A linear map between labeled spaces, stored as sparse columns:
/// column `j` is the image of source basis vector `j`.
#[derive(Clone)]
pub struct LinearMap {
    source: Space,
    target: Space,
    cols: Vec<SparseVec>,
}

/// Result of [`LinearMap::solve`]: one solution plus the kernel.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: SparseVec,
    pub kernel: Subspace,
}

impl LinearMap {
    pub fn new(source: Space, target: Space, cols: Vec<SparseVec>) -> Result<Self> {
        if cols.len() != source.dim() {
            return Err(Error::DimensionMismatch {
                context: "linear map columns".into(),
                expected: source.dim(),
                found: cols.len(),
            });
        }
        if let Some(bad) = cols.iter().map(SparseVec::support_bound).find(|&b| b > target.dim()) {
            return Err(Error::DimensionMismatch {
                context: "linear map rows".into(),
                expected: target.dim(),
                found: bad,
            });
        }
        Ok(LinearMap { source, target, cols })
    }

    pub(crate) fn from_cols_unchecked(source: Space, target: Space, cols: Vec<SparseVec>) -> Self {
        debug_assert_eq!(cols.len(), source.dim());
        LinearMap { source, target, cols }
    }

    /// Dense row-major matrix (`target.dim()` rows).
    pub fn from_dense(source: Space, target: Space, rows: &[Vec<Scalar>]) -> Result<Self> {
        if rows.len() != target.dim() {
            return Err(Error::DimensionMismatch {
                context: "matrix rows".into(),
                expected: target.dim(),
                found: rows.len(),
            });
        }
        let mut pairs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); source.dim()];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != source.dim() {
                return Err(Error::DimensionMismatch {
                    context: format!("matrix row {i}"),
                    expected: source.dim(),
                    found: row.len(),
                });
            }
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    pairs[j].push((i, x.clone()));
                }
            }
        }
        let cols = pairs.into_iter().map(SparseVec::from_sorted).collect();
        Ok(LinearMap { source, target, cols })
    }

    /// From `(row, col, value)` triples; duplicates are summed.
    pub fn from_triples(source: Space, target: Space, triples: &[(usize, usize, Scalar)]) -> Result<Self> {
        let mut pairs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); source.dim()];
        for (i, j, x) in triples {
            if *j >= source.dim() || *i >= target.dim() {
                return Err(Error::Invalid(format!(
                    "matrix entry ({i}, {j}) outside {}×{}",
                    target.dim(),
                    source.dim()
                )));
            }
            pairs[*j].push((*i, x.clone()));
        }
        let cols = pairs.into_iter().map(SparseVec::from_pairs).collect();
        Ok(LinearMap { source, target, cols })
    }

    pub fn identity(space: &Space) -> Self {
        let cols = (0..space.dim()).map(SparseVec::unit).collect();
        LinearMap {
            source: space.clone(),
            target: space.clone(),
            cols,
        }
    }

    pub fn zero(source: &Space, target: &Space) -> Self {
        LinearMap {
            source: source.clone(),
            target: target.clone(),
            cols: vec![SparseVec::zero(); source.dim()],
        }
    }

    /// The map `k → V` sending `1` to `v`.
    pub fn from_vector(target: &Space, v: SparseVec) -> Self {
        LinearMap {
            source: Space::scalars(),
            target: target.clone(),
            cols: vec![v],
        }
    }

    /// Permutation-like map sending basis `j` to basis `f(j)`.
    pub fn from_basis_map(source: &Space, target: &Space, f: impl Fn(usize) -> usize) -> Self {
        let cols = (0..source.dim()).map(|j| SparseVec::unit(f(j))).collect();
        LinearMap {
            source: source.clone(),
            target: target.clone(),
            cols,
        }
    }

    /// The flip `U⊗V → V⊗U`.
    pub fn flip(left: &Space, right: &Space) -> Self {
        let (m, n) = (left.dim(), right.dim());
        Self::from_basis_map(&left.tensor(right), &right.tensor(left), |k| (k % n) * m + k / n)
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.target.dim()
    }

    pub fn cols(&self) -> usize {
        self.source.dim()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(i)
    }

    pub fn with_spaces(self, source: Space, target: Space) -> Result<Self> {
        LinearMap::new(source, target, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (j, x) in v.iter() {
            for (i, y) in self.cols[j].iter() {
                pairs.push((i, x * y));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                context: "composition".into(),
                expected: self.source.dim(),
                found: inner.target.dim(),
            });
        }
        let cols = par::map_slice(par::Exec::default(), &inner.cols, |c| self.apply(c));
        Ok(LinearMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            cols,
        })
    }

    /// Kronecker product; `(f⊗g)(v⊗w) = f(v)⊗g(w)`, left factor major.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        let n = other.rows();
        let mut cols = Vec::with_capacity(self.cols() * other.cols());
        for a in &self.cols {
            for b in &other.cols {
                cols.push(a.tensor(b, n));
            }
        }
        LinearMap {
            source: self.source.tensor(&other.source),
            target: self.target.tensor(&other.target),
            cols,
        }
    }

    fn check_same_shape(&self, other: &LinearMap, what: &str) -> Result<()> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::Invalid(format!(
                "{what}: shapes {}×{} and {}×{} differ",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same_shape(other, "sum")?;
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect();
        Ok(LinearMap::from_cols_unchecked(
            self.source.clone(),
            self.target.clone(),
            cols,
        ))
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.check_same_shape(other, "difference")?;
        let cols = self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect();
        Ok(LinearMap::from_cols_unchecked(
            self.source.clone(),
            self.target.clone(),
            cols,
        ))
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        let cols = self.cols.iter().map(|v| v.scale(c)).collect();
        LinearMap::from_cols_unchecked(self.source.clone(), self.target.clone(), cols)
    }

    pub fn transpose(&self) -> LinearMap {
        let rows = self.row_vectors();
        LinearMap::from_cols_unchecked(self.target.clone(), self.source.clone(), rows)
    }

    /// The rows of the matrix as sparse vectors over the source basis.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                rows[i].push((j, x.clone()));
            }
        }
        rows.into_iter().map(SparseVec::from_sorted).collect()
    }

    /// Same matrix (spaces compared by dimension only).
    pub fn same_matrix(&self, other: &LinearMap) -> bool {
        self.rows() == other.rows() && self.cols == other.cols
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols() && self.cols.iter().enumerate().all(|(j, c)| c == &SparseVec::unit(j))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// First column on which two same-shape maps differ.
    pub fn first_difference(&self, other: &LinearMap) -> Option<usize> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Some(0);
        }
        self.cols.iter().zip(&other.cols).position(|(a, b)| a != b)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.cols {
            e.insert(c);
        }
        e.rank()
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(&self.target, &self.cols)
    }

    pub fn kernel(&self) -> Subspace {
        let mut e = Echelon::new();
        for r in self.row_vectors() {
            e.insert(&r);
        }
        let rref = e.into_rref();
        let n = self.cols();
        let mut is_pivot = vec![false; n];
        for (p, _) in &rref {
            is_pivot[*p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&j| !is_pivot[j]) {
            let mut pairs = vec![(free, Scalar::one())];
            for (p, row) in &rref {
                let c = row.get(free);
                if !c.is_zero() {
                    pairs.push((*p, -c));
                }
            }
            basis.push(SparseVec::from_pairs(pairs));
        }
        Subspace::span(&self.source, &basis)
    }

    /// `{x | f(x) ∈ w}`.
    pub fn preimage(&self, w: &Subspace) -> Result<Subspace> {
        if w.ambient().dim() != self.rows() {
            return Err(Error::AmbientMismatch(format!(
                "preimage: subspace of dim-{} space, map into dim {}",
                w.ambient().dim(),
                self.rows()
            )));
        }
        let q = w.quotient();
        Ok(q.projection().compose(self)?.kernel())
    }

    fn augmented_echelon(&self, y: &SparseVec) -> Result<Echelon> {
        if y.support_bound() > self.rows() {
            return Err(Error::DimensionMismatch {
                context: "right-hand side".into(),
                expected: self.rows(),
                found: y.support_bound(),
            });
        }
        let n = self.cols();
        let mut e = Echelon::new();
        for (i, r) in self.row_vectors().into_iter().enumerate() {
            let yi = y.get(i);
            let row = if yi.is_zero() {
                r
            } else {
                r.add(&SparseVec::single(n, yi))
            };
            e.insert(&row);
        }
        Ok(e)
    }

    /// All solutions of `f(x) = y`, or `None` when there are none.
    pub fn solve(&self, y: &SparseVec) -> Result<Option<AffineSolution>> {
        let e = self.augmented_echelon(y)?;
        match e.back_substitute(self.cols()) {
            None => Ok(None),
            Some(particular) => Ok(Some(AffineSolution {
                particular,
                kernel: self.kernel(),
            })),
        }
    }

    /// One solution of `f(x) = y` (free variables zero), without the kernel.
    pub fn solve_particular(&self, y: &SparseVec) -> Result<Option<SparseVec>> {
        self.solve_particular_with(par::Exec::default(), y)
    }

    /// As [`solve_particular`](Self::solve_particular), eliminating each
    /// connected block of the row/column incidence graph separately. Blocks
    /// share no columns, so the result equals the single global elimination.
    pub fn solve_particular_with(&self, exec: par::Exec, y: &SparseVec) -> Result<Option<SparseVec>> {
        if y.support_bound() > self.rows() {
            return Err(Error::DimensionMismatch {
                context: "right-hand side".into(),
                expected: self.rows(),
                found: y.support_bound(),
            });
        }
        let rows = self.row_vectors();
        let mut uf = UnionFind::new(self.cols());
        for r in &rows {
            if let Some((first, _)) = r.leading() {
                for (j, _) in r.iter().skip(1) {
                    uf.union(first, j);
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, r) in rows.iter().enumerate() {
            match r.leading() {
                Some((first, _)) => blocks.entry(uf.find(first)).or_default().push(i),
                None if !y.get(i).is_zero() => return Ok(None),
                None => {}
            }
        }
        let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
        let parts = par::map_slice(exec, &blocks, |block| {
            let mut cols: Vec<usize> = block.iter().flat_map(|&i| rows[i].iter().map(|(j, _)| j)).collect();
            cols.sort_unstable();
            cols.dedup();
            let m = cols.len();
            let mut e = Echelon::new();
            for &i in block {
                let r = rows[i].reindex(|j| cols.binary_search(&j).expect("column in block"));
                let yi = y.get(i);
                e.insert(&if yi.is_zero() {
                    r
                } else {
                    r.add(&SparseVec::single(m, yi))
                });
            }
            e.back_substitute(m).map(|x| x.reindex(|k| cols[k]))
        });
        let mut entries = Vec::new();
        for part in parts {
            match part {
                Some(x) => entries.extend(x.into_entries()),
                None => return Ok(None),
            }
        }
        Ok(Some(SparseVec::from_pairs(entries)))
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        let n = self.rows();
        if n != self.cols() {
            return None;
        }
        let mut e = Echelon::new();
        for (i, r) in self.row_vectors().into_iter().enumerate() {
            e.insert(&r.add(&SparseVec::unit(n + i)));
        }
        let rref = e.into_rref();
        if rref.len() != n || rref.iter().enumerate().any(|(k, (p, _))| *p != k) {
            return None;
        }
        // Row k of the reduced augmented block is row k of the inverse.
        let rows: Vec<Vec<(usize, Scalar)>> = rref
            .into_iter()
            .map(|(_, r)| {
                r.iter()
                    .filter(|(j, _)| *j >= n)
                    .map(|(j, x)| (j - n, x.clone()))
                    .collect()
            })
            .collect();
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for (i, r) in rows.into_iter().enumerate() {
            for (j, x) in r {
                cols[j].push((i, x));
            }
        }
        let cols = cols.into_iter().map(SparseVec::from_sorted).collect();
        Some(LinearMap::from_cols_unchecked(
            self.target.clone(),
            self.source.clone(),
            cols,
        ))
    }

    /// Sorted `(row, col, value)` triples.
    pub fn triples(&self) -> Vec<(usize, usize, Scalar)> {
        let mut t: Vec<_> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, x)| (i, j, x.clone())))
            .collect();
        t.sort_by_key(|(i, j, _)| (*i, *j));
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![Scalar::zero(); self.cols()]; self.rows()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                rows[i][j] = x.clone();
            }
        }
        rows
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.same_matrix(other) && self.cols() == other.cols()
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap({}×{}, nnz {})", self.rows(), self.cols(), self.nnz())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn m(rows: &[&[i64]]) -> LinearMap {
        let r = rows.len();
        let c = rows[0].len();
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
        LinearMap::from_dense(Space::indexed("x", c), Space::indexed("y", r), &dense).unwrap()
    }

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_examples() {
        let zero = LinearMap::zero(&Space::indexed("x", 3), &Space::indexed("y", 2));
        assert_eq!(zero.kernel().dim(), 3);
        assert_eq!(LinearMap::identity(&Space::indexed("x", 3)).kernel().dim(), 0);
        // hand elimination: [[1,1],[2,2]] → row [1,1], kernel x = -y
        let k = m(&[&[1, 1], &[2, 2]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], v(&[1, -1]));
    }

    #[test]
    fn solve_examples() {
        let id = LinearMap::identity(&Space::indexed("x", 3));
        let y = v(&[1, 0, 5]);
        let s = id.solve(&y).unwrap().unwrap();
        assert_eq!(s.particular, y);
        assert_eq!(s.kernel.dim(), 0);

        let zero = LinearMap::zero(&Space::indexed("x", 2), &Space::indexed("y", 2));
        assert!(zero.solve(&v(&[0, 1])).unwrap().is_none());

        let f = m(&[&[1, 1], &[2, 2]]);
        let s = f.solve(&v(&[1, 2])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[1, 0]));
        assert_eq!(s.kernel.basis(), &[v(&[1, -1])]);
        assert!(f.solve(&v(&[1, 3])).unwrap().is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let f = m(&[&[1, 1], &[2, 2]]);
        assert!(f.solve(&v(&[0, 0, 1])).is_err());
    }

    #[test]
    fn kron_identity_and_entries() {
        let i2 = LinearMap::identity(&Space::indexed("a", 2));
        let i3 = LinearMap::identity(&Space::indexed("b", 3));
        assert!(i2.kron(&i3).is_identity());

        let f = m(&[&[1, 2], &[3, 4]]);
        let g = m(&[&[0, 5], &[6, 7]]);
        let k = f.kron(&g);
        // entrywise oracle: (f⊗g)[2i+k][2j+l] = f[i][j]·g[k][l]
        for i in 0..2 {
            for j in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        assert_eq!(k.entry(2 * i + a, 2 * j + b), f.entry(i, j) * g.entry(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn kron_rank_multiplies() {
        let f = m(&[&[1, 1], &[1, 1]]);
        let g = m(&[&[1, 0, 2], &[0, 1, 1], &[1, 1, 3]]);
        assert_eq!(f.kron(&g).rank(), f.rank() * g.rank());
    }

    #[test]
    fn inverse_and_flip() {
        let f = m(&[&[2, 1], &[1, 1]]);
        let inv = f.inverse().unwrap();
        assert!(f.compose(&inv).unwrap().is_identity());
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());

        let a = Space::indexed("a", 2);
        let b = Space::indexed("b", 3);
        let fl = LinearMap::flip(&a, &b);
        let back = LinearMap::flip(&b, &a);
        assert!(back.compose(&fl).unwrap().is_identity());
        assert_eq!(fl.apply(&SparseVec::unit(1)), SparseVec::unit(2));
    }

    #[test]
    fn preimage_examples() {
        let f = m(&[&[1, 1], &[2, 2]]);
        let full = Subspace::full(f.target());
        assert_eq!(f.preimage(&full).unwrap().dim(), 2);
        let zero = Subspace::zero(f.target());
        assert_eq!(f.preimage(&zero).unwrap(), f.kernel());
        // functions on 3 points, evaluation at point 1 into k; W = k → everything
        // instead constrain the pair (ev0, ev1) to the diagonal line
        let ev = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let diag = Subspace::span(ev.target(), &[v(&[1, 1])]);
        let pre = ev.preimage(&diag).unwrap();
        assert_eq!(pre.dim(), 2);
        assert!(pre.contains(&v(&[1, 1, 0])));
        assert!(pre.contains(&v(&[0, 0, 1])));
        assert!(!pre.contains(&v(&[1, 0, 0])));
    }
}
