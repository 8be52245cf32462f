//! Finite-dimensional unital associative algebras given by structure constants.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Scalar, Space, SparseVec, Subspace};
use crate::par::{self, Exec};
use crate::report::CheckReport;

/// `e_i · e_j = products[i * dim + j]`.
#[derive(Clone)]
pub struct FDAlgebra {
    name: String,
    space: Space,
    products: Vec<SparseVec>,
    unit: SparseVec,
}

impl fmt::Debug for FDAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FDAlgebra({}, dim {})", self.name, self.dim())
    }
}

impl FDAlgebra {
    pub fn new(name: impl Into<String>, space: Space, products: Vec<SparseVec>, unit: SparseVec) -> Result<Self> {
        let n = space.dim();
        if products.len() != n * n {
            return Err(Error::DimensionMismatch {
                context: "structure constants".into(),
                expected: n * n,
                found: products.len(),
            });
        }
        if products.iter().chain([&unit]).any(|v| v.support_bound() > n) {
            return Err(Error::Invalid("structure constant index out of range".into()));
        }
        Ok(FDAlgebra {
            name: name.into(),
            space,
            products,
            unit,
        })
    }

    /// From sparse `(i, j, k, μ)` entries meaning `e_i e_j ∋ μ e_k`.
    pub fn from_triples(
        name: impl Into<String>,
        space: Space,
        triples: &[(usize, usize, usize, Scalar)],
        unit: SparseVec,
    ) -> Result<Self> {
        let n = space.dim();
        let mut pairs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
        for (i, j, k, x) in triples {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Invalid(format!(
                    "structure constant ({i}, {j}, {k}) out of range for dim {n}"
                )));
            }
            pairs[i * n + j].push((*k, x.clone()));
        }
        let products = pairs.into_iter().map(SparseVec::from_pairs).collect();
        Self::new(name, space, products, unit)
    }

    /// Pointwise functions on a finite set, basis of indicator functions.
    pub fn functions(name: impl Into<String>, points: Space) -> Self {
        let n = points.dim();
        let products = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    SparseVec::unit(k / n)
                } else {
                    SparseVec::zero()
                }
            })
            .collect();
        let unit = SparseVec::from_pairs((0..n).map(|i| (i, Scalar::one())).collect());
        FDAlgebra {
            name: name.into(),
            space: points,
            products,
            unit,
        }
    }

    /// The ground field.
    pub fn ground() -> Self {
        FDAlgebra {
            name: "k".into(),
            space: Space::scalars(),
            products: vec![SparseVec::unit(0)],
            unit: SparseVec::unit(0),
        }
    }

    /// `n×n` matrices with matrix-unit basis `E_ij`.
    pub fn matrices(n: usize) -> Self {
        let labels = (0..n * n).map(|k| format!("E{}{}", k / n, k % n)).collect();
        let space = Space::new(labels).expect("distinct matrix units");
        let mut products = Vec::with_capacity(n.pow(4));
        for a in 0..n * n {
            for b in 0..n * n {
                let (i, j) = (a / n, a % n);
                let (k, l) = (b / n, b % n);
                products.push(if j == k {
                    SparseVec::unit(i * n + l)
                } else {
                    SparseVec::zero()
                });
            }
        }
        let unit = SparseVec::from_pairs((0..n).map(|i| (i * n + i, Scalar::one())).collect());
        FDAlgebra {
            name: format!("M{n}"),
            space,
            products,
            unit,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.basis_product(i, j).iter() {
                    pairs.push((k, &ab * c));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `m: A⊗A → A`.
    pub fn multiplication_map(&self) -> LinearMap {
        LinearMap::from_cols_unchecked(
            self.space.tensor(&self.space),
            self.space.clone(),
            self.products.clone(),
        )
    }

    /// `η: k → A`.
    pub fn unit_map(&self) -> LinearMap {
        LinearMap::from_vector(&self.space, self.unit.clone())
    }

    /// Sparse `(i, j, k, μ)` structure constants in index order.
    pub fn structure_triples(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for (ij, v) in self.products.iter().enumerate() {
            for (k, x) in v.iter() {
                out.push((ij / n, ij % n, k, x.clone()));
            }
        }
        out
    }

    /// `(a⊗b)(a′⊗b′) = aa′⊗bb′` on the lexicographic basis.
    pub fn tensor(&self, other: &FDAlgebra) -> FDAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let mut products = Vec::with_capacity(n * n * m * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let (i, j) = (x / m, x % m);
                let (k, l) = (y / m, y % m);
                products.push(self.basis_product(i, k).tensor(other.basis_product(j, l), m));
            }
        }
        FDAlgebra {
            name: format!("{}⊗{}", self.name, other.name),
            space: self.space.tensor(&other.space),
            products,
            unit: self.unit.tensor(&other.unit, m),
        }
    }

    /// Componentwise product algebra `A ⊕ B`.
    pub fn direct_sum(&self, other: &FDAlgebra) -> FDAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let d = n + m;
        let mut products = vec![SparseVec::zero(); d * d];
        for i in 0..n {
            for j in 0..n {
                products[i * d + j] = self.basis_product(i, j).clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                products[(n + i) * d + n + j] = other.basis_product(i, j).reindex(|k| k + n);
            }
        }
        FDAlgebra {
            name: format!("{}⊕{}", self.name, other.name),
            space: self.space.direct_sum(&other.space),
            products,
            unit: self.unit.add(&other.unit.reindex(|k| k + n)),
        }
    }

    /// `a ↦ a⊗1` into `self⊗other`.
    pub fn left_corner(&self, other: &FDAlgebra) -> LinearMap {
        LinearMap::identity(&self.space)
            .kron(&other.unit_map())
            .with_spaces(self.space.clone(), self.space.tensor(&other.space))
            .expect("dims")
    }

    /// `b ↦ 1⊗b` into `left⊗self`.
    pub fn right_corner(&self, left: &FDAlgebra) -> LinearMap {
        left.unit_map()
            .kron(&LinearMap::identity(&self.space))
            .with_spaces(self.space.clone(), left.space.tensor(&self.space))
            .expect("dims")
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Relabels the basis through a permutation: new basis `f_k = e_{perm[k]}`.
    pub fn permuted(&self, perm: &[usize]) -> FDAlgebra {
        let n = self.dim();
        let mut inv = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let labels = perm.iter().map(|&p| self.space.label(p)).collect();
        let mut products = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                products.push(self.basis_product(perm[a], perm[b]).reindex(|k| inv[k]));
            }
        }
        FDAlgebra {
            name: self.name.clone(),
            space: Space::new(labels).expect("permutation keeps labels distinct"),
            products,
            unit: self.unit.reindex(|k| inv[k]),
        }
    }
}

pub fn check_algebra(a: &FDAlgebra) -> CheckReport {
    check_algebra_with(a, Exec::default())
}

/// Associativity on every basis triple and the two unit laws.
pub fn check_algebra_with(a: &FDAlgebra, exec: Exec) -> CheckReport {
    let n = a.dim();
    let mut report = CheckReport::new(format!("algebra {}", a.name));
    let failures = par::map_range(exec, n, |i| {
        for j in 0..n {
            let ij = a.basis_product(i, j);
            for k in 0..n {
                let left = a.mul(ij, &SparseVec::unit(k));
                let right = a.mul(&SparseVec::unit(i), a.basis_product(j, k));
                if left != right {
                    return Some((i, j, k));
                }
            }
        }
        None
    });
    let assoc = failures.into_iter().flatten().next().map(|(i, j, k)| {
        let s = &a.space;
        format!("triple ({}, {}, {})", s.label(i), s.label(j), s.label(k))
    });
    report.record("associativity", assoc.map_or(Ok(()), Err));
    let unit = (0..n)
        .find(|&i| {
            let e = SparseVec::unit(i);
            a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e
        })
        .map(|i| format!("basis element {}", a.space.label(i)));
    report.record("unit", unit.map_or(Ok(()), Err));
    report
}

/// A linear map between algebras, claimed to be a unital algebra map.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    source: Arc<FDAlgebra>,
    target: Arc<FDAlgebra>,
    map: LinearMap,
}

impl AlgebraHom {
    pub fn new(source: Arc<FDAlgebra>, target: Arc<FDAlgebra>, map: LinearMap) -> Result<Self> {
        if map.cols() != source.dim() || map.rows() != target.dim() {
            return Err(Error::DimensionMismatch {
                context: "algebra homomorphism".into(),
                expected: source.dim() * target.dim(),
                found: map.cols() * map.rows(),
            });
        }
        let map = map.with_spaces(source.space().clone(), target.space().clone())?;
        Ok(AlgebraHom { source, target, map })
    }

    pub fn identity(a: Arc<FDAlgebra>) -> Self {
        let map = LinearMap::identity(a.space());
        AlgebraHom {
            source: a.clone(),
            target: a,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FDAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FDAlgebra> {
        &self.target
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AlgebraHom) -> Result<AlgebraHom> {
        AlgebraHom::new(inner.source.clone(), self.target.clone(), self.map.compose(&inner.map)?)
    }
}

#[derive(Clone, Debug)]
pub struct HomReport {
    pub report: CheckReport,
    pub surjective: bool,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

pub fn check_hom(f: &AlgebraHom) -> HomReport {
    check_linear_hom(&f.source, &f.target, &f.map)
}

/// Multiplicativity on all basis pairs, unitality, and surjectivity.
pub fn check_linear_hom(source: &FDAlgebra, target: &FDAlgebra, map: &LinearMap) -> HomReport {
    let n = source.dim();
    let mut report = CheckReport::new(format!("hom {} → {}", source.name, target.name));
    let bad = par::map_range(Exec::default(), n, |i| {
        (0..n).find(|&j| map.apply(source.basis_product(i, j)) != target.mul(map.column(i), map.column(j)))
    });
    let mult = bad
        .into_iter()
        .enumerate()
        .find_map(|(i, j)| j.map(|j| (i, j)))
        .map(|(i, j)| format!("pair ({}, {})", source.space.label(i), source.space.label(j)));
    report.record("multiplicative", mult.map_or(Ok(()), Err));
    let unit_ok = &map.apply(&source.unit) == target.unit();
    report.record(
        "unital",
        if unit_ok {
            Ok(())
        } else {
            Err(format!("unit ↦ {}", map.apply(&source.unit).display(target.space())))
        },
    );
    HomReport {
        report,
        surjective: map.rank() == target.dim(),
    }
}

/// A multiplicatively closed subspace with its induced structure constants.
#[derive(Clone, Debug)]
pub struct SubalgebraWitness {
    subspace: Subspace,
    space: Space,
    products: Vec<SparseVec>,
    unit: Option<SparseVec>,
}

impl SubalgebraWitness {
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// Coordinates of the unit, when it lies in the subspace.
    pub fn unit(&self) -> Option<&SparseVec> {
        self.unit.as_ref()
    }

    /// Coordinate space; basis labels are the echelon basis vectors.
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn inclusion(&self) -> LinearMap {
        self.subspace.inclusion(&self.space)
    }

    /// The induced algebra; fails when the unit is not in the subspace.
    pub fn algebra(&self, name: impl Into<String>) -> Result<FDAlgebra> {
        let unit = self
            .unit
            .clone()
            .ok_or_else(|| Error::Invalid("subalgebra does not contain the unit".into()))?;
        FDAlgebra::new(name, self.space.clone(), self.products.clone(), unit)
    }
}

pub fn subalgebra_from_subspace(a: &FDAlgebra, u: &Subspace) -> Result<SubalgebraWitness> {
    if u.ambient().dim() != a.dim() {
        return Err(Error::AmbientMismatch(format!(
            "subspace of a dim-{} space inside algebra of dim {}",
            u.ambient().dim(),
            a.dim()
        )));
    }
    let basis = u.basis();
    let d = basis.len();
    let rows = par::map_range(Exec::default(), d, |i| {
        (0..d)
            .map(|j| {
                let p = a.mul(&basis[i], &basis[j]);
                u.coordinates(&p).ok_or(j)
            })
            .collect::<std::result::Result<Vec<_>, usize>>()
            .map_err(|j| (i, j))
    });
    let mut products = Vec::with_capacity(d * d);
    for r in rows {
        match r {
            Ok(row) => products.extend(row),
            Err((i, j)) => {
                return Err(Error::NotClosed {
                    left: basis[i].display(a.space()).to_string(),
                    right: basis[j].display(a.space()).to_string(),
                })
            }
        }
    }
    let labels: Vec<String> = basis.iter().map(|b| b.display(a.space()).to_string()).collect();
    let space = Space::new(labels).unwrap_or_else(|_| Space::indexed("b", d));
    let unit = u.coordinates(a.unit());
    Ok(SubalgebraWitness {
        subspace: u.clone(),
        space,
        products,
        unit,
    })
}

/// The scalar `c` with `x = c·1`, if any.
pub fn scalar_multiple_of_unit(a: &FDAlgebra, x: &SparseVec) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    let (i, xi) = x.leading()?;
    let ui = a.unit().get(i);
    if ui.is_zero() {
        return None;
    }
    let c = xi / ui;
    (a.unit().scale(&c) == *x).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ratio};

    fn points(n: usize) -> Space {
        Space::new((0..n).map(|i| format!("δ{i}")).collect()).unwrap()
    }

    #[test]
    fn matrix_algebra_passes() {
        // triple-enumeration oracle: E_ij E_kl = [j=k] E_il is associative by
        // direct index calculation; the checker must agree
        let m2 = FDAlgebra::matrices(2);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let idx = |x: usize| (x / 2, x % 2);
                    let ((i, j), (k, l), (p, q)) = (idx(a), idx(b), idx(c));
                    let lhs = (j == k && l == p).then_some(i * 2 + q);
                    let rhs = (l == p && j == k).then_some(i * 2 + q);
                    assert_eq!(lhs, rhs);
                }
            }
        }
        assert!(check_algebra(&m2).passed());
        assert!(!m2.is_commutative());
    }

    #[test]
    fn function_algebra_passes() {
        let f = FDAlgebra::functions("Fun(3)", points(3));
        assert!(check_algebra(&f).passed());
        assert!(f.is_commutative());
    }

    #[test]
    fn mutation_is_caught_with_triple() {
        let m2 = FDAlgebra::matrices(2);
        let mut triples = m2.structure_triples();
        // E01·E10 = E00 becomes 2·E00
        let pos = triples.iter().position(|t| t.0 == 1 && t.1 == 2).unwrap();
        triples[pos].3 = int(2);
        let bad = FDAlgebra::from_triples("bad", m2.space().clone(), &triples, m2.unit().clone()).unwrap();
        let r = check_algebra(&bad);
        assert!(!r.passed());
        let f = r.first_failure().unwrap();
        assert_eq!(f.name, "associativity");
        assert!(f.witness.as_ref().unwrap().starts_with("triple"));
    }

    #[test]
    fn tensor_with_ground_and_products_of_points() {
        let a = FDAlgebra::matrices(2);
        let t = a.tensor(&FDAlgebra::ground());
        assert_eq!(t.structure_triples(), a.structure_triples());

        // Fun(2)⊗Fun(3) vs pointwise product on the 6-point product set
        let f = FDAlgebra::functions("F2", points(2)).tensor(&FDAlgebra::functions("F3", points(3)));
        let g = FDAlgebra::functions("F6", points(6));
        assert_eq!(f.dim(), 6);
        assert_eq!(f.structure_triples(), g.structure_triples());
        assert_eq!(f.unit(), g.unit());
        assert!(check_algebra(&f).passed());
    }

    #[test]
    fn corners_are_injective_homs() {
        let a = Arc::new(FDAlgebra::matrices(2));
        let b = Arc::new(FDAlgebra::functions("F2", points(2)));
        let ab = Arc::new(a.tensor(&b));
        let l = AlgebraHom::new(a.clone(), ab.clone(), a.left_corner(&b)).unwrap();
        let r = AlgebraHom::new(b.clone(), ab.clone(), b.right_corner(&a)).unwrap();
        for h in [&l, &r] {
            assert!(check_hom(h).passed());
            assert_eq!(h.map().rank(), h.source().dim());
        }
    }

    #[test]
    fn subalgebra_cases() {
        let f = FDAlgebra::functions("F2", points(2));
        let units = Subspace::span(f.space(), &[f.unit().clone()]);
        let w = subalgebra_from_subspace(&f, &units).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.is_unital());

        let full = subalgebra_from_subspace(&f, &Subspace::full(f.space())).unwrap();
        assert_eq!(full.algebra("F2").unwrap().structure_triples(), f.structure_triples());

        // (δ0 - 2δ1)² = δ0 + 4δ1 is not a multiple of δ0 - 2δ1
        let line = Subspace::span(f.space(), &[SparseVec::from_pairs(vec![(0, int(1)), (1, int(-2))])]);
        match subalgebra_from_subspace(&f, &line) {
            Err(Error::NotClosed { left, right }) => {
                assert_eq!(left, "δ0 - 2·δ1");
                assert_eq!(right, left);
            }
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }

    #[test]
    fn hom_checks() {
        let f3 = Arc::new(FDAlgebra::functions("F3", points(3)));
        assert!(check_hom(&AlgebraHom::identity(f3.clone())).surjective);
        let k = Arc::new(FDAlgebra::ground());
        let ev = LinearMap::from_triples(f3.space().clone(), k.space().clone(), &[(0, 2, int(1))]).unwrap();
        let ev = AlgebraHom::new(f3.clone(), k.clone(), ev).unwrap();
        let r = check_hom(&ev);
        assert!(r.passed() && r.surjective);

        // send δ0 ↦ 1, δ1 ↦ 1: fails on the pair (δ0, δ1)
        let bad =
            LinearMap::from_triples(f3.space().clone(), k.space().clone(), &[(0, 0, int(1)), (0, 1, int(1))]).unwrap();
        let r = check_hom(&AlgebraHom::new(f3, k, bad).unwrap());
        assert_eq!(
            r.report.first_failure().unwrap().witness.as_deref(),
            Some("pair (δ0, δ1)")
        );
    }

    #[test]
    fn scalar_multiples() {
        let f = FDAlgebra::functions("F2", points(2));
        assert_eq!(
            scalar_multiple_of_unit(&f, &f.unit().scale(&ratio(3, 2))),
            Some(ratio(3, 2))
        );
        assert_eq!(scalar_multiple_of_unit(&f, &SparseVec::unit(0)), None);
    }
}
