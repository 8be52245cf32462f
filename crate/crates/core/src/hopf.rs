//! Finite-dimensional Hopf algebras with bijective antipode.

use std::sync::Arc;

use num_traits::One;

use crate::algebra::{check_algebra, FDAlgebra};
use crate::classical::FiniteGroup;
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Scalar, Space, SparseVec};
use crate::par::{self, Exec};
use crate::report::CheckReport;

#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    algebra: Arc<FDAlgebra>,
    coproduct: LinearMap,
    counit: LinearMap,
    antipode: LinearMap,
    antipode_inv: LinearMap,
}

impl HopfAlgebra {
    /// When `antipode_inv` is absent it is computed by inverting the antipode.
    pub fn new(
        algebra: Arc<FDAlgebra>,
        coproduct: LinearMap,
        counit: LinearMap,
        antipode: LinearMap,
        antipode_inv: Option<LinearMap>,
    ) -> Result<Self> {
        let h = algebra.space().clone();
        let hh = h.tensor(&h);
        let coproduct = reshape(coproduct, &h, &hh, "coproduct")?;
        let counit = reshape(counit, &h, &Space::scalars(), "counit")?;
        let antipode = reshape(antipode, &h, &h, "antipode")?;
        let antipode_inv = match antipode_inv {
            Some(m) => reshape(m, &h, &h, "inverse antipode")?,
            None => antipode
                .inverse()
                .ok_or_else(|| Error::NotInvertible(format!("antipode of {}", algebra.name())))?,
        };
        Ok(HopfAlgebra {
            algebra,
            coproduct,
            counit,
            antipode,
            antipode_inv,
        })
    }

    /// `H = k` with every structure map the identity.
    pub fn ground() -> Self {
        let k = Arc::new(FDAlgebra::ground());
        let s = k.space().clone();
        let id = LinearMap::identity(&s);
        let cop = LinearMap::from_vector(&s.tensor(&s), SparseVec::unit(0)).with_spaces(s.clone(), s.tensor(&s));
        HopfAlgebra {
            algebra: k,
            coproduct: cop.expect("dims"),
            counit: id.clone(),
            antipode: id.clone(),
            antipode_inv: id,
        }
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    pub fn space(&self) -> &Space {
        self.algebra.space()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn unit(&self) -> &SparseVec {
        self.algebra.unit()
    }

    pub fn coproduct(&self) -> &LinearMap {
        &self.coproduct
    }

    pub fn counit(&self) -> &LinearMap {
        &self.counit
    }

    pub fn antipode(&self) -> &LinearMap {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &LinearMap {
        &self.antipode_inv
    }

    /// `ε(h)` as a scalar.
    pub fn counit_of(&self, h: &SparseVec) -> Scalar {
        self.counit.apply(h).get(0)
    }

    /// `h ↦ h_(1)⊗…⊗h_(n)`, built as `(legs(n-1)⊗id)∘Δ`.
    pub fn sweedler_legs(&self, n: usize) -> Result<LinearMap> {
        if n < 2 {
            return Err(Error::Invalid(format!("iterated coproduct needs n ≥ 2, got {n}")));
        }
        let id = LinearMap::identity(self.space());
        let mut legs = self.coproduct.clone();
        for _ in 2..n {
            legs = legs.kron(&id).compose(&self.coproduct)?;
        }
        Ok(legs)
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra.is_commutative()
    }

    pub fn is_cocommutative(&self) -> bool {
        let h = self.space();
        LinearMap::flip(h, h).compose(&self.coproduct).expect("dims") == self.coproduct
    }
}

fn reshape(m: LinearMap, source: &Space, target: &Space, what: &str) -> Result<LinearMap> {
    if m.cols() != source.dim() || m.rows() != target.dim() {
        return Err(Error::DimensionMismatch {
            context: what.into(),
            expected: source.dim() * target.dim(),
            found: m.cols() * m.rows(),
        });
    }
    m.with_spaces(source.clone(), target.clone())
}

/// `Fun(G)`: basis `δ_g`, pointwise product, `Δ(δ_g) = Σ_{ab=g} δ_a⊗δ_b`,
/// `ε(δ_g) = [g=e]`, `S(δ_g) = δ_{g⁻¹}`.
pub fn function_hopf(g: &FiniteGroup) -> HopfAlgebra {
    let n = g.order();
    let labels = (0..n).map(|a| format!("δ{}", g.element_name(a))).collect();
    let space = Space::new(labels).expect("element names are distinct");
    let algebra = Arc::new(FDAlgebra::functions(format!("Fun({})", g.name()), space.clone()));
    let hh = space.tensor(&space);
    let cop = (0..n)
        .map(|c| SparseVec::from_pairs((0..n).map(|a| (a * n + g.mul(g.inv(a), c), Scalar::one())).collect()))
        .collect();
    let coproduct = LinearMap::new(space.clone(), hh, cop).expect("dims");
    let counit =
        LinearMap::from_triples(space.clone(), Space::scalars(), &[(0, g.identity(), Scalar::one())]).expect("dims");
    let antipode = LinearMap::from_basis_map(&space, &space, |a| g.inv(a));
    HopfAlgebra::new(algebra, coproduct, counit, antipode, None).expect("Fun(G) antipode is a permutation")
}

/// `k[G]`: basis `u_g`, `u_g u_h = u_{gh}`, `Δ(u_g) = u_g⊗u_g`, `ε = 1`,
/// `S(u_g) = u_{g⁻¹}`.
pub fn group_hopf(g: &FiniteGroup) -> HopfAlgebra {
    let n = g.order();
    let labels = (0..n).map(|a| format!("u{}", g.element_name(a))).collect();
    let space = Space::new(labels).expect("element names are distinct");
    let triples: Vec<_> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, g.mul(a, b), Scalar::one()))
        .collect();
    let algebra = FDAlgebra::from_triples(
        format!("k[{}]", g.name()),
        space.clone(),
        &triples,
        SparseVec::unit(g.identity()),
    )
    .expect("group algebra");
    let hh = space.tensor(&space);
    let coproduct = LinearMap::from_basis_map(&space, &hh, |a| a * n + a);
    let counit = LinearMap::new(space.clone(), Space::scalars(), vec![SparseVec::unit(0); n]).expect("dims");
    let antipode = LinearMap::from_basis_map(&space, &space, |a| g.inv(a));
    HopfAlgebra::new(Arc::new(algebra), coproduct, counit, antipode, None).expect("k[G] antipode is a permutation")
}

fn compare(report: &mut CheckReport, name: &str, lhs: &LinearMap, rhs: &LinearMap, basis: &Space) {
    let outcome = match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(j) if j < basis.dim() => Err(format!("basis element {}", basis.label(j))),
        Some(_) => Err("shape mismatch".into()),
    };
    report.record(name, outcome);
}

/// All Hopf axioms, in a fixed order.
pub fn check_hopf(h: &HopfAlgebra) -> CheckReport {
    let mut report = CheckReport::new(format!("Hopf algebra {}", h.name()));
    report.absorb("algebra ", check_algebra(&h.algebra));
    let s = h.space();
    let id = LinearMap::identity(s);
    let cop = &h.coproduct;

    let left = cop.kron(&id).compose(cop).expect("dims");
    let right = id.kron(cop).compose(cop).expect("dims");
    compare(&mut report, "coassociativity", &left, &right, s);

    // (ε⊗id)∘Δ lands in k⊗H, which has the same basis order as H
    let eps_l = h.counit.kron(&id).compose(cop).expect("dims");
    let eps_r = id.kron(&h.counit).compose(cop).expect("dims");
    compare(&mut report, "left counit", &eps_l, &id, s);
    compare(&mut report, "right counit", &eps_r, &id, s);

    let hh = h.algebra.tensor(&h.algebra);
    let n = h.dim();
    let bad = par::map_range(Exec::default(), n, |i| {
        (0..n).find(|&j| cop.apply(h.algebra.basis_product(i, j)) != hh.mul(cop.column(i), cop.column(j)))
    });
    let witness = bad.iter().enumerate().find_map(|(i, j)| j.map(|j| (i, j)));
    report.record(
        "coproduct multiplicative",
        witness.map_or(Ok(()), |(i, j)| Err(format!("pair ({}, {})", s.label(i), s.label(j)))),
    );
    let unit2 = h.unit().tensor(h.unit(), n);
    report.record(
        "coproduct unital",
        if cop.apply(h.unit()) == unit2 {
            Ok(())
        } else {
            Err("Δ(1) ≠ 1⊗1".into())
        },
    );

    let kk = FDAlgebra::ground();
    let bad = (0..n).find_map(|i| {
        (0..n)
            .find(|&j| h.counit.apply(h.algebra.basis_product(i, j)) != kk.mul(h.counit.column(i), h.counit.column(j)))
            .map(|j| (i, j))
    });
    report.record(
        "counit multiplicative",
        bad.map_or(Ok(()), |(i, j)| Err(format!("pair ({}, {})", s.label(i), s.label(j)))),
    );
    report.record(
        "counit unital",
        if h.counit.apply(h.unit()) == SparseVec::unit(0) {
            Ok(())
        } else {
            Err("ε(1) ≠ 1".into())
        },
    );

    let m = h.algebra.multiplication_map();
    let eta_eps = h.algebra.unit_map().compose(&h.counit).expect("dims");
    let anti_l = m
        .compose(&h.antipode.kron(&id))
        .and_then(|x| x.compose(cop))
        .expect("dims");
    let anti_r = m
        .compose(&id.kron(&h.antipode))
        .and_then(|x| x.compose(cop))
        .expect("dims");
    compare(&mut report, "left antipode", &anti_l, &eta_eps, s);
    compare(&mut report, "right antipode", &anti_r, &eta_eps, s);

    let a = h.antipode_inv.compose(&h.antipode).expect("dims");
    let b = h.antipode.compose(&h.antipode_inv).expect("dims");
    compare(&mut report, "inverse antipode left", &a, &id, s);
    compare(&mut report, "inverse antipode right", &b, &id, s);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn groups() -> Vec<FiniteGroup> {
        vec![
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2)),
            FiniteGroup::symmetric(3),
        ]
    }

    #[test]
    fn builders_pass_all_axioms() {
        for g in groups() {
            for h in [function_hopf(&g), group_hopf(&g)] {
                let r = check_hopf(&h);
                assert!(r.passed(), "{r}");
                // S² = id for commutative or cocommutative examples
                assert!(h.antipode().compose(h.antipode()).unwrap().is_identity());
            }
            assert!(function_hopf(&g).is_commutative());
            assert!(group_hopf(&g).is_cocommutative());
            assert_eq!(function_hopf(&g).is_cocommutative(), g.is_abelian());
        }
        assert!(check_hopf(&HopfAlgebra::ground()).passed());
    }

    #[test]
    fn fun_z2_coproduct() {
        // group-table oracle: Δ(δ0) = δ0⊗δ0 + δ1⊗δ1 (0+0 = 1+1 = 0 in Z/2)
        let h = function_hopf(&FiniteGroup::cyclic(2));
        assert_eq!(h.dim(), 2);
        assert_eq!(
            h.coproduct().column(0),
            &SparseVec::from_pairs(vec![(0, int(1)), (3, int(1))])
        );
        assert_eq!(
            h.coproduct().column(1),
            &SparseVec::from_pairs(vec![(1, int(1)), (2, int(1))])
        );
    }

    #[test]
    fn trivial_group_is_ground_field() {
        for h in [
            function_hopf(&FiniteGroup::trivial()),
            group_hopf(&FiniteGroup::trivial()),
        ] {
            assert_eq!(h.dim(), 1);
            assert!(h.antipode().is_identity());
            assert!(h.counit().is_identity());
            assert_eq!(h.coproduct().column(0), &SparseVec::unit(0));
        }
    }

    #[test]
    fn s3_antipode_is_nontrivial_involution() {
        let h = function_hopf(&FiniteGroup::symmetric(3));
        assert_eq!(h.dim(), 6);
        assert!(!h.antipode().is_identity());
        assert!(h.antipode().compose(h.antipode()).unwrap().is_identity());
    }

    #[test]
    fn group_algebra_antipodes() {
        assert!(group_hopf(&FiniteGroup::cyclic(2)).antipode().is_identity());
        let s = group_hopf(&FiniteGroup::cyclic(3)).antipode().clone();
        assert_eq!(s.column(1), &SparseVec::unit(2));
        assert_eq!(s.column(2), &SparseVec::unit(1));
        assert_eq!(s.column(0), &SparseVec::unit(0));
    }

    #[test]
    fn zero_antipode_fails_at_antipode_axiom() {
        let h = function_hopf(&FiniteGroup::cyclic(2));
        let zero = LinearMap::zero(h.space(), h.space());
        let bad = HopfAlgebra::new(
            h.algebra().clone(),
            h.coproduct().clone(),
            h.counit().clone(),
            zero,
            Some(h.antipode_inv().clone()),
        )
        .unwrap();
        let r = check_hopf(&bad);
        assert_eq!(r.first_failure().unwrap().name, "left antipode");
    }

    #[test]
    fn singular_antipode_without_inverse_is_rejected() {
        let h = function_hopf(&FiniteGroup::cyclic(2));
        let zero = LinearMap::zero(h.space(), h.space());
        let r = HopfAlgebra::new(
            h.algebra().clone(),
            h.coproduct().clone(),
            h.counit().clone(),
            zero,
            None,
        );
        assert!(matches!(r, Err(Error::NotInvertible(_))));
    }

    #[test]
    fn sweedler_legs() {
        let h = function_hopf(&FiniteGroup::cyclic(2));
        assert!(h.sweedler_legs(1).is_err());
        assert_eq!(&h.sweedler_legs(2).unwrap(), h.coproduct());
        // triple-convolution oracle: δ_g ↦ Σ_{a+b+c=g} δ_a⊗δ_b⊗δ_c
        let l3 = h.sweedler_legs(3).unwrap();
        for g in 0..2 {
            let mut pairs = Vec::new();
            for a in 0..2 {
                for b in 0..2 {
                    for c in 0..2 {
                        if (a + b + c) % 2 == g {
                            pairs.push((a * 4 + b * 2 + c, int(1)));
                        }
                    }
                }
            }
            assert_eq!(l3.column(g), &SparseVec::from_pairs(pairs));
        }
        let h = function_hopf(&FiniteGroup::symmetric(3));
        let id = LinearMap::identity(h.space());
        let l3 = h.sweedler_legs(3).unwrap();
        let l4 = h.sweedler_legs(4).unwrap();
        assert_eq!(l4, l3.kron(&id).compose(h.coproduct()).unwrap());
        let other = id.kron(h.coproduct()).compose(h.coproduct()).unwrap();
        assert_eq!(l3, other);
    }
}
