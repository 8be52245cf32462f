//! Right comodule algebras, the Hopf–Galois canonical map, and strong
//! connections found by exact linear elimination.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{subalgebra_from_subspace, FDAlgebra, SubalgebraWitness};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{LinearMap, QuotientSpace, Scalar, Space, SparseVec, Subspace};
use crate::par::{self, Exec};
use crate::report::CheckReport;

/// An algebra `P` with a right coaction `δ: P → P⊗H`.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    algebra: Arc<FDAlgebra>,
    hopf: Arc<HopfAlgebra>,
    coaction: LinearMap,
}

impl ComoduleAlgebra {
    pub fn new(algebra: Arc<FDAlgebra>, hopf: Arc<HopfAlgebra>, coaction: LinearMap) -> Result<Self> {
        let target = algebra.space().tensor(hopf.space());
        if coaction.cols() != algebra.dim() || coaction.rows() != target.dim() {
            return Err(Error::DimensionMismatch {
                context: "coaction P → P⊗H".into(),
                expected: algebra.dim() * target.dim(),
                found: coaction.cols() * coaction.rows(),
            });
        }
        let coaction = coaction.with_spaces(algebra.space().clone(), target)?;
        Ok(ComoduleAlgebra {
            algebra,
            hopf,
            coaction,
        })
    }

    /// `p ↦ p⊗1`.
    pub fn trivial(algebra: Arc<FDAlgebra>, hopf: Arc<HopfAlgebra>) -> Self {
        let coaction = LinearMap::identity(algebra.space()).kron(&hopf.algebra().unit_map());
        Self::new(algebra, hopf, coaction).expect("dims")
    }

    /// `H` coacting on itself through `Δ`.
    pub fn regular(hopf: Arc<HopfAlgebra>) -> Self {
        let coaction = hopf.coproduct().clone();
        Self::new(hopf.algebra().clone(), hopf, coaction).expect("dims")
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn coaction(&self) -> &LinearMap {
        &self.coaction
    }

    pub fn name(&self) -> String {
        format!("{} over {}", self.algebra.name(), self.hopf.name())
    }

    /// The same comodule algebra on the permuted basis `f_k = e_{perm[k]}`.
    pub fn permuted(&self, perm: &[usize]) -> ComoduleAlgebra {
        let n = self.algebra.dim();
        let nh = self.hopf.dim();
        let mut inv = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let algebra = Arc::new(self.algebra.permuted(perm));
        let cols = perm
            .iter()
            .map(|&p| self.coaction.column(p).reindex(|i| inv[i / nh] * nh + i % nh))
            .collect();
        let target = algebra.space().tensor(self.hopf.space());
        let coaction = LinearMap::new(algebra.space().clone(), target, cols).expect("dims");
        ComoduleAlgebra {
            algebra,
            hopf: self.hopf.clone(),
            coaction,
        }
    }
}

fn record_maps(report: &mut CheckReport, name: &str, lhs: &LinearMap, rhs: &LinearMap, basis: &Space) {
    let outcome = match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(j) if j < basis.dim() => Err(format!("basis element {}", basis.label(j))),
        Some(_) => Err("shape mismatch".into()),
    };
    report.record(name, outcome);
}

/// Multiplicativity, unitality, coassociativity and counitality of `δ`.
pub fn check_comodule(pa: &ComoduleAlgebra) -> CheckReport {
    let mut report = CheckReport::new(format!("comodule algebra {}", pa.name()));
    let p = &pa.algebra;
    let h = &pa.hopf;
    let delta = &pa.coaction;
    let n = p.dim();
    let ph = p.tensor(h.algebra());
    let bad = par::map_range(Exec::default(), n, |i| {
        (0..n).find(|&j| delta.apply(p.basis_product(i, j)) != ph.mul(delta.column(i), delta.column(j)))
    });
    let witness = bad.iter().enumerate().find_map(|(i, j)| j.map(|j| (i, j)));
    report.record(
        "coaction multiplicative",
        witness.map_or(Ok(()), |(i, j)| {
            Err(format!("pair ({}, {})", p.space().label(i), p.space().label(j)))
        }),
    );
    report.record(
        "coaction unital",
        if delta.apply(p.unit()) == *ph.unit() {
            Ok(())
        } else {
            Err("δ(1) ≠ 1⊗1".into())
        },
    );
    let id_p = LinearMap::identity(p.space());
    let id_h = LinearMap::identity(h.space());
    let lhs = delta.kron(&id_h).compose(delta).expect("dims");
    let rhs = id_p.kron(h.coproduct()).compose(delta).expect("dims");
    record_maps(&mut report, "coassociativity", &lhs, &rhs, p.space());
    let counit = id_p.kron(h.counit()).compose(delta).expect("dims");
    record_maps(&mut report, "counit", &counit, &id_p, p.space());
    report
}

/// `B = P^{co H}` as a subalgebra of `P`.
#[derive(Clone, Debug)]
pub struct CoinvariantSubalgebra {
    pub witness: SubalgebraWitness,
}

impl CoinvariantSubalgebra {
    pub fn subspace(&self) -> &Subspace {
        self.witness.subspace()
    }

    pub fn dim(&self) -> usize {
        self.witness.dim()
    }
}

/// Kernel of `p ↦ δ(p) − p⊗1`, checked to be a unital subalgebra.
pub fn coinvariants(pa: &ComoduleAlgebra) -> Result<CoinvariantSubalgebra> {
    let triv = LinearMap::identity(pa.algebra.space()).kron(&pa.hopf.algebra().unit_map());
    let diff = pa.coaction.sub(&triv)?;
    let witness = subalgebra_from_subspace(&pa.algebra, &diff.kernel())?;
    if !witness.is_unital() {
        return Err(Error::CheckFailed("coinvariants do not contain the unit".into()));
    }
    Ok(CoinvariantSubalgebra { witness })
}

/// `P⊗_B P` as the quotient of `P⊗P` by the balancing relations.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    pub quotient: QuotientSpace,
}

impl BalancedTensor {
    pub fn pi_b(&self) -> &LinearMap {
        self.quotient.projection()
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

pub fn balanced_tensor(pa: &ComoduleAlgebra, b: &CoinvariantSubalgebra) -> BalancedTensor {
    let p = &pa.algebra;
    let n = p.dim();
    let pp = p.space().tensor(p.space());
    let relations: Vec<Vec<SparseVec>> = par::map_range(Exec::default(), n, |i| {
        let ei = SparseVec::unit(i);
        let mut out = Vec::new();
        for bv in b.subspace().basis() {
            let pb = p.mul(&ei, bv);
            for j in 0..n {
                let ej = SparseVec::unit(j);
                let left = pb.tensor(&ej, n);
                let right = ei.tensor(&p.mul(bv, &ej), n);
                let rel = left.sub(&right);
                if !rel.is_zero() {
                    out.push(rel);
                }
            }
        }
        out
    });
    let all: Vec<SparseVec> = relations.into_iter().flatten().collect();
    BalancedTensor {
        quotient: Subspace::span(&pp, &all).quotient(),
    }
}

/// `P⊗P → P⊗H`, `p⊗q ↦ (p⊗1)δ(q)`.
pub fn lifted_canonical(pa: &ComoduleAlgebra) -> LinearMap {
    let p = &pa.algebra;
    let (n, nh) = (p.dim(), pa.hopf.dim());
    let cols = par::map_range(Exec::default(), n * n, |k| {
        let (a, q) = (k / n, k % n);
        let mut pairs = Vec::new();
        for (ch, x) in pa.coaction.column(q).iter() {
            let (c, h) = (ch / nh, ch % nh);
            for (r, y) in p.basis_product(a, c).iter() {
                pairs.push((r * nh + h, x * y));
            }
        }
        SparseVec::from_pairs(pairs)
    });
    LinearMap::new(p.space().tensor(p.space()), p.space().tensor(pa.hopf.space()), cols).expect("dims")
}

#[derive(Clone, Debug)]
pub struct CanonicalMap {
    pub map: LinearMap,
    pub bijective: bool,
}

/// `can_P` on `P⊗_B P`; checks that the lift kills every balancing relation
/// and factors through `π_B`.
pub fn canonical_map(pa: &ComoduleAlgebra, bt: &BalancedTensor) -> Result<CanonicalMap> {
    let lifted = lifted_canonical(pa);
    if let Some(rel) = bt.quotient.killed().basis().iter().find(|r| !lifted.apply(r).is_zero()) {
        let pp = lifted.source().clone();
        return Err(Error::NotWellDefined(format!(
            "relation {} not killed",
            rel.display(&pp)
        )));
    }
    let map = lifted.compose(bt.quotient.section())?;
    if !map.compose(bt.pi_b())?.same_matrix(&lifted) {
        return Err(Error::NotWellDefined(
            "lifted canonical map does not factor through π_B".into(),
        ));
    }
    let rank = map.rank();
    let bijective = rank == map.cols() && rank == map.rows();
    Ok(CanonicalMap { map, bijective })
}

/// `δ^L = (S⁻¹⊗id)∘flip∘δ: P → H⊗P`.
pub fn delta_left(pa: &ComoduleAlgebra) -> LinearMap {
    let flip = LinearMap::flip(pa.algebra.space(), pa.hopf.space());
    let s_inv = pa.hopf.antipode_inv().kron(&LinearMap::identity(pa.algebra.space()));
    s_inv
        .compose(&flip)
        .and_then(|f| f.compose(&pa.coaction))
        .expect("dims")
}

/// A linear map `ℓ: H → P⊗P`; `unital` records whether `ℓ(1) = 1⊗1`.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongConnection {
    pub map: LinearMap,
    pub unital: bool,
}

impl StrongConnection {
    pub fn new(pa: &ComoduleAlgebra, map: LinearMap) -> Result<Self> {
        let p = pa.algebra.space();
        let target = p.tensor(p);
        if map.cols() != pa.hopf.dim() || map.rows() != target.dim() {
            return Err(Error::DimensionMismatch {
                context: "connection H → P⊗P".into(),
                expected: pa.hopf.dim() * target.dim(),
                found: map.cols() * map.rows(),
            });
        }
        let map = map.with_spaces(pa.hopf.space().clone(), target)?;
        let one = pa.algebra.unit().tensor(pa.algebra.unit(), pa.algebra.dim());
        let unital = map.apply(pa.hopf.unit()) == one;
        Ok(StrongConnection { map, unital })
    }
}

/// The linear system `A x = b` whose solutions are exactly the bicolinear,
/// splitting maps `ℓ` (plus `ℓ(1) = 1⊗1` when requested). Unknown
/// `(h, a, b)` is the coefficient of `e_a⊗e_b` in `ℓ(h)`.
#[derive(Clone, Debug)]
pub struct ConnectionSystem {
    pub matrix: LinearMap,
    pub rhs: SparseVec,
    pub require_unital: bool,
}

pub fn connection_system(pa: &ComoduleAlgebra, require_unital: bool) -> ConnectionSystem {
    let p = &pa.algebra;
    let h = &pa.hopf;
    let (np, nh) = (p.dim(), h.dim());
    let npp = np * np;
    let delta = &pa.coaction;
    let dl = delta_left(pa);
    let can = lifted_canonical(pa);

    // Δ(h) = Σ d · h_i⊗h_j, indexed by either leg
    let mut by_first: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); nh];
    let mut by_second: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); nh];
    for hh in 0..nh {
        for (ij, d) in h.coproduct().column(hh).iter() {
            let (i, j) = (ij / nh, ij % nh);
            by_first[i].push((hh, j, d.clone()));
            by_second[j].push((hh, i, d.clone()));
        }
    }

    let right_rows = nh * npp * nh;
    let left_off = right_rows;
    let left_rows = nh * nh * npp;
    let split_off = left_off + left_rows;
    let split_rows = nh * np * nh;
    let unit_off = split_off + split_rows;
    let total = unit_off + if require_unital { npp } else { 0 };

    let cols = par::map_range(Exec::default(), nh * npp, |u| {
        let (h0, ab) = (u / npp, u % npp);
        let (a, b) = (ab / np, ab % np);
        let mut pairs = Vec::new();
        // (id⊗δ)ℓ − (ℓ⊗id)Δ  in  H → P⊗P⊗H
        for (cj, x) in delta.column(b).iter() {
            pairs.push((h0 * npp * nh + a * np * nh + cj, x.clone()));
        }
        for (hh, j, d) in &by_first[h0] {
            pairs.push((hh * npp * nh + ab * nh + j, -d));
        }
        // (δ^L⊗id)ℓ − (id⊗ℓ)Δ  in  H → H⊗P⊗P
        for (qa, x) in dl.column(a).iter() {
            pairs.push((left_off + h0 * nh * npp + qa * np + b, x.clone()));
        }
        for (hh, i, d) in &by_second[h0] {
            pairs.push((left_off + hh * nh * npp + i * npp + ab, -d));
        }
        // ~can ∘ ℓ  in  H → P⊗H
        for (cj, x) in can.column(ab).iter() {
            pairs.push((split_off + h0 * np * nh + cj, x.clone()));
        }
        if require_unital {
            let uh = h.unit().get(h0);
            if !uh.is_zero() {
                pairs.push((unit_off + ab, uh));
            }
        }
        SparseVec::from_pairs(pairs)
    });

    let mut rhs = Vec::new();
    for hh in 0..nh {
        for (c, x) in p.unit().iter() {
            rhs.push((split_off + hh * np * nh + c * nh + hh, x.clone()));
        }
    }
    if require_unital {
        for (ab, x) in p.unit().tensor(p.unit(), np).iter() {
            rhs.push((unit_off + ab, x.clone()));
        }
    }
    let unknowns = Space::indexed("ℓ", nh * npp);
    let equations = Space::indexed("eq", total);
    ConnectionSystem {
        matrix: LinearMap::new(unknowns, equations, cols).expect("dims"),
        rhs: SparseVec::from_pairs(rhs),
        require_unital,
    }
}

/// Multipliers `y` with `yᵀA = 0` and `yᵀb = 1`: no `x` can solve `Ax = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct InfeasibilityCertificate {
    pub multipliers: SparseVec,
    /// Number of equations in the system the multipliers refer to.
    pub equations: usize,
}

impl InfeasibilityCertificate {
    pub fn find(system: &ConnectionSystem) -> Option<Self> {
        let a = &system.matrix;
        let n = a.cols();
        let cols = a
            .row_vectors()
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let bi = system.rhs.get(i);
                if bi.is_zero() {
                    row
                } else {
                    row.add(&SparseVec::single(n, bi))
                }
            })
            .collect();
        let t = LinearMap::new(a.target().clone(), Space::indexed("c", n + 1), cols).ok()?;
        let y = t.solve_particular(&SparseVec::unit(n)).ok()??;
        Some(InfeasibilityCertificate {
            multipliers: y,
            equations: a.rows(),
        })
    }

    pub fn verify(&self, system: &ConnectionSystem) -> bool {
        let a = &system.matrix;
        if self.equations != a.rows() || self.multipliers.support_bound() > a.rows() {
            return false;
        }
        let at = a.transpose();
        at.apply(&self.multipliers).is_zero() && dot(&self.multipliers, &system.rhs).is_one()
    }
}

fn dot(x: &SparseVec, y: &SparseVec) -> Scalar {
    x.iter().fold(Scalar::zero(), |acc, (i, a)| acc + a * y.get(i))
}

#[derive(Clone, Debug)]
pub enum ConnectionSearch {
    Feasible(StrongConnection),
    Infeasible(InfeasibilityCertificate),
}

impl ConnectionSearch {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ConnectionSearch::Feasible(_))
    }

    pub fn connection(&self) -> Option<&StrongConnection> {
        match self {
            ConnectionSearch::Feasible(c) => Some(c),
            ConnectionSearch::Infeasible(_) => None,
        }
    }
}

/// Solves the connection system exactly. Among many solutions, the one with
/// all free variables zero after echelon elimination is returned.
pub fn solve_strong_connection(pa: &ComoduleAlgebra, require_unital: bool) -> Result<ConnectionSearch> {
    let system = connection_system(pa, require_unital);
    match system.matrix.solve_particular(&system.rhs)? {
        Some(x) => {
            let p = pa.algebra.space();
            let npp = p.dim() * p.dim();
            let nh = pa.hopf.dim();
            let cols = (0..nh)
                .map(|h| {
                    SparseVec::from_sorted(
                        x.iter()
                            .filter(|(u, _)| u / npp == h)
                            .map(|(u, v)| (u % npp, v.clone()))
                            .collect(),
                    )
                })
                .collect();
            let map = LinearMap::new(pa.hopf.space().clone(), p.tensor(p), cols)?;
            Ok(ConnectionSearch::Feasible(StrongConnection::new(pa, map)?))
        }
        None => {
            let cert = InfeasibilityCertificate::find(&system)
                .ok_or_else(|| Error::CheckFailed("inconsistent system without a certificate".into()))?;
            Ok(ConnectionSearch::Infeasible(cert))
        }
    }
}

/// Bicolinearity, splitting, and the consequence `m∘ℓ = ε`.
pub fn check_strong_connection(pa: &ComoduleAlgebra, ell: &StrongConnection) -> CheckReport {
    let mut report = CheckReport::new(format!("strong connection on {}", pa.name()));
    let p = pa.algebra.space();
    let h = pa.hopf.space();
    let l = &ell.map;
    if l.cols() != h.dim() || l.rows() != p.dim() * p.dim() {
        report.record("shape", Err(format!("{}×{}", l.rows(), l.cols())));
        return report;
    }
    let id_p = LinearMap::identity(p);
    let id_h = LinearMap::identity(h);
    let cop = pa.hopf.coproduct();

    let lhs = id_p.kron(&pa.coaction).compose(l).expect("dims");
    let rhs = l.kron(&id_h).compose(cop).expect("dims");
    record_maps(&mut report, "right colinear", &lhs, &rhs, h);

    let lhs = delta_left(pa).kron(&id_p).compose(l).expect("dims");
    let rhs = id_h.kron(l).compose(cop).expect("dims");
    record_maps(&mut report, "left colinear", &lhs, &rhs, h);

    let split = lifted_canonical(pa).compose(l).expect("dims");
    let target = pa.algebra.unit_map().kron(&id_h);
    record_maps(&mut report, "splitting", &split, &target, h);

    let m_ell = pa.algebra.multiplication_map().compose(l).expect("dims");
    let eps = pa.algebra.unit_map().compose(pa.hopf.counit()).expect("dims");
    record_maps(&mut report, "m∘ℓ = ε", &m_ell, &eps, h);
    report
}

#[derive(Clone, Debug)]
pub struct TranslationInverse {
    /// `L: P⊗H → P⊗_B P`.
    pub map: LinearMap,
    pub can_after_l_is_id: bool,
    pub l_after_can_is_id: bool,
}

impl TranslationInverse {
    pub fn verdict(&self) -> bool {
        self.can_after_l_is_id && self.l_after_can_is_id
    }
}

/// `L(p⊗h) = π_B(p ℓ(h)⁽¹⁾ ⊗ ℓ(h)⁽²⁾)`, checked to invert `can_P` on both sides.
pub fn translation_inverse(pa: &ComoduleAlgebra, ell: &StrongConnection) -> Result<TranslationInverse> {
    let b = coinvariants(pa)?;
    let bt = balanced_tensor(pa, &b);
    let can = canonical_map(pa, &bt)?;
    let p = &pa.algebra;
    let (np, nh) = (p.dim(), pa.hopf.dim());
    let cols = (0..np * nh)
        .map(|k| {
            let (q, h) = (k / nh, k % nh);
            let mut pairs = Vec::new();
            for (ab, x) in ell.map.column(h).iter() {
                let (a, bb) = (ab / np, ab % np);
                for (r, y) in p.basis_product(q, a).iter() {
                    pairs.push((r * np + bb, x * y));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    let lift = LinearMap::new(p.space().tensor(pa.hopf.space()), p.space().tensor(p.space()), cols)?;
    let map = bt.pi_b().compose(&lift)?;
    let can_after_l_is_id = can.map.compose(&map)?.is_identity();
    let l_after_can_is_id = map.compose(&can.map)?.is_identity();
    Ok(TranslationInverse {
        map,
        can_after_l_is_id,
        l_after_can_is_id,
    })
}

#[derive(Clone, Debug)]
pub struct Principality {
    pub principal: bool,
    pub certificate: ConnectionSearch,
}

/// Principal iff a (not necessarily unital) strong connection exists.
pub fn is_principal(pa: &ComoduleAlgebra) -> Result<Principality> {
    let certificate = solve_strong_connection(pa, false)?;
    Ok(Principality {
        principal: certificate.is_feasible(),
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::FiniteGroup;
    use crate::hopf::function_hopf;
    use crate::linalg::int;

    fn regular(n: usize) -> ComoduleAlgebra {
        ComoduleAlgebra::regular(Arc::new(function_hopf(&FiniteGroup::cyclic(n))))
    }

    fn point_over_z2() -> ComoduleAlgebra {
        let h = Arc::new(function_hopf(&FiniteGroup::cyclic(2)));
        ComoduleAlgebra::trivial(Arc::new(FDAlgebra::ground()), h)
    }

    fn closed_form(pa: &ComoduleAlgebra, g: &FiniteGroup) -> StrongConnection {
        let n = g.order();
        let cols = (0..n)
            .map(|x| SparseVec::from_pairs((0..n).map(|h| (h * n + g.mul(h, x), int(1))).collect()))
            .collect();
        let p = pa.algebra().space();
        let map = LinearMap::new(pa.hopf().space().clone(), p.tensor(p), cols).unwrap();
        StrongConnection::new(pa, map).unwrap()
    }

    #[test]
    fn comodule_axioms() {
        assert!(check_comodule(&regular(2)).passed());
        assert!(check_comodule(&point_over_z2()).passed());
        let pa = regular(2);
        let mut cols = pa.coaction().columns().to_vec();
        cols[1] = cols[1].neg();
        let bad = LinearMap::new(pa.coaction().source().clone(), pa.coaction().target().clone(), cols).unwrap();
        let bad = ComoduleAlgebra::new(pa.algebra().clone(), pa.hopf().clone(), bad).unwrap();
        let report = check_comodule(&bad);
        assert!(!report.passed());
        let first = report.first_failure().unwrap().name.clone();
        assert!(
            first == "coaction multiplicative" || first == "coassociativity",
            "{first}"
        );
    }

    #[test]
    fn coinvariants_and_balanced_tensor() {
        let pa = regular(3);
        let b = coinvariants(&pa).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(balanced_tensor(&pa, &b).dim(), 9);

        let m2 = Arc::new(FDAlgebra::matrices(2));
        let triv = ComoduleAlgebra::trivial(m2, Arc::new(function_hopf(&FiniteGroup::cyclic(2))));
        let b = coinvariants(&triv).unwrap();
        assert_eq!(b.dim(), 4);
        assert_eq!(balanced_tensor(&triv, &b).dim(), 4);
    }

    #[test]
    fn canonical_map_verdicts() {
        let pa = regular(2);
        let b = coinvariants(&pa).unwrap();
        let bt = balanced_tensor(&pa, &b);
        let can = canonical_map(&pa, &bt).unwrap();
        assert!(can.bijective);
        assert_eq!(lifted_canonical(&pa).rank(), 4);

        let pt = point_over_z2();
        let b = coinvariants(&pt).unwrap();
        let can = canonical_map(&pt, &balanced_tensor(&pt, &b)).unwrap();
        assert!(!can.bijective);
    }

    #[test]
    fn left_coaction() {
        let pa = regular(3);
        let dl = delta_left(&pa);
        let eps = pa.hopf().counit().kron(&LinearMap::identity(pa.algebra().space()));
        assert!(eps.compose(&dl).unwrap().is_identity());

        let m2 = Arc::new(FDAlgebra::matrices(2));
        let triv = ComoduleAlgebra::trivial(m2.clone(), Arc::new(function_hopf(&FiniteGroup::cyclic(2))));
        let expected = triv.hopf().algebra().unit_map().kron(&LinearMap::identity(m2.space()));
        assert!(delta_left(&triv).same_matrix(&expected));
    }

    #[test]
    fn closed_form_connection_passes() {
        for n in 2..=4 {
            let g = FiniteGroup::cyclic(n);
            let pa = regular(n);
            let ell = closed_form(&pa, &g);
            assert!(ell.unital);
            let report = check_strong_connection(&pa, &ell);
            assert!(report.passed(), "{report}");
            let system = connection_system(&pa, true);
            let x = SparseVec::from_pairs(
                (0..n)
                    .flat_map(|h| ell.map.column(h).iter().map(move |(ab, v)| (h * n * n + ab, v.clone())))
                    .collect(),
            );
            assert_eq!(system.matrix.apply(&x), system.rhs);
        }
    }

    #[test]
    fn solver_feasible_on_regular() {
        for n in 2..=4 {
            let pa = regular(n);
            let found = solve_strong_connection(&pa, false).unwrap();
            let ell = found.connection().expect("feasible");
            assert!(check_strong_connection(&pa, ell).passed());
            let t = translation_inverse(&pa, ell).unwrap();
            assert!(t.verdict());
        }
    }

    #[test]
    fn solver_infeasible_on_point() {
        let pt = point_over_z2();
        let system = connection_system(&pt, false);
        assert_eq!(system.matrix.cols(), 2);
        match solve_strong_connection(&pt, false).unwrap() {
            ConnectionSearch::Infeasible(cert) => assert!(cert.verify(&system)),
            ConnectionSearch::Feasible(_) => panic!("point is not principal"),
        }
        assert!(!is_principal(&pt).unwrap().principal);
    }

    #[test]
    fn ground_hopf_always_principal() {
        let m2 = Arc::new(FDAlgebra::matrices(2));
        let pa = ComoduleAlgebra::trivial(m2, Arc::new(HopfAlgebra::ground()));
        let found = solve_strong_connection(&pa, true).unwrap();
        let ell = found.connection().unwrap();
        assert!(ell.unital);
        let t = translation_inverse(&pa, ell).unwrap();
        assert!(t.verdict());
    }

    #[test]
    fn zero_connection_fails_splitting() {
        let pa = regular(2);
        let p = pa.algebra().space();
        let zero = StrongConnection::new(&pa, LinearMap::zero(pa.hopf().space(), &p.tensor(p))).unwrap();
        let report = check_strong_connection(&pa, &zero);
        assert!(!report.get("splitting").unwrap().passed);
    }

    #[test]
    fn certificate_rejects_wrong_multipliers() {
        let pt = point_over_z2();
        let system = connection_system(&pt, false);
        let cert = InfeasibilityCertificate {
            multipliers: SparseVec::unit(0),
            equations: system.matrix.rows(),
        };
        assert!(!cert.verify(&system));
    }
}
