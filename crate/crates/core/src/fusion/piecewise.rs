use std::sync::Arc;

use crate::algebra::{check_linear_hom, subalgebra_from_subspace, FDAlgebra, SubalgebraWitness};
use crate::comodule::{check_comodule, coinvariants, ComoduleAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Space, SparseVec, Subspace};
use crate::report::CheckReport;

use super::base::ChainInterval;
use super::carrier::{build_equivariant_fusion, delta_image, end_condition, unit_fiber, RestrictedComodule};

/// The two halves of the equivariant join over one chain:
/// `P1 = {x | (ev₀⊗id)(x) ∈ 1⊗H}`, `P2 = {x | (ev_m⊗id)(x) ∈ δ(P)}`, and
/// their base algebras `B1 = {y ∈ C⊗P | ev₀(y) ∈ k·1}`,
/// `B2 = {y | ev_m(y) ∈ P^{co H}}`.
#[derive(Clone, Debug)]
pub struct PiecewiseParts {
    pub chain: ChainInterval,
    pub p1: RestrictedComodule,
    pub p2: RestrictedComodule,
    pub b_ambient: Arc<FDAlgebra>,
    pub b1: SubalgebraWitness,
    pub b2: SubalgebraWitness,
    pub report: CheckReport,
}

pub fn piecewise_parts(chain: &ChainInterval, pa: &ComoduleAlgebra) -> Result<PiecewiseParts> {
    let base = chain.base();
    let ev0 = chain.ev(0);
    let evm = chain.ev(chain.m());
    let p1 = RestrictedComodule::build(base, pa, &end_condition(&ev0, &unit_fiber(pa))?, "P1")?;
    let p2 = RestrictedComodule::build(base, pa, &end_condition(&evm, &delta_image(pa))?, "P2")?;

    let b_ambient = Arc::new(chain.algebra().tensor(pa.algebra()));
    let scalars = Subspace::span(pa.algebra().space(), std::slice::from_ref(pa.algebra().unit()));
    let co = coinvariants(pa)?;
    let b1 = subalgebra_from_subspace(&b_ambient, &end_condition(&ev0, &scalars)?)?;
    let b2 = subalgebra_from_subspace(&b_ambient, &end_condition(&evm, co.subspace())?)?;

    let mut report = CheckReport::new("piecewise parts");
    report.absorb("P1 ", check_comodule(&p1.comodule));
    report.absorb("P2 ", check_comodule(&p2.comodule));
    let times_one = LinearMap::identity(b_ambient.space()).kron(&pa.hopf().algebra().unit_map());
    for (name, p, b) in [("P1", &p1, &b1), ("P2", &p2, &b2)] {
        let (_, pushed) = p.coinvariants_in_ambient()?;
        let expected: Vec<SparseVec> = b.subspace().basis().iter().map(|v| times_one.apply(v)).collect();
        let expected = Subspace::span(p.ambient.space(), &expected);
        report.record(
            &format!("coinvariants of {name} = B{}⊗1", &name[1..]),
            if pushed == expected {
                Ok(())
            } else {
                Err(format!("dims {} vs {}", pushed.dim(), expected.dim()))
            },
        );
    }
    Ok(PiecewiseParts {
        chain: chain.clone(),
        p1,
        p2,
        b_ambient,
        b1,
        b2,
        report,
    })
}

#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub fiber_dim: usize,
    pub fusion_dim: usize,
    /// Gluing map from the fiber product to the equivariant fusion over the
    /// concatenated chain, in carrier coordinates.
    pub iso: LinearMap,
    pub report: CheckReport,
}

impl PullbackReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Glues `P1` over a chain of length `m_a` to `P2` over a chain of length
/// `m_b` along `ev_{m_a}` and `ev₀`, and compares the result with the
/// equivariant fusion over the concatenated chain of length `m_a + m_b`.
pub fn pullback_identification(m_a: usize, m_b: usize, pa: &ComoduleAlgebra) -> Result<PullbackReport> {
    let chain_a = ChainInterval::new(m_a)?;
    let chain_b = ChainInterval::new(m_b)?;
    let whole = ChainInterval::new(m_a + m_b)?;
    let first = piecewise_parts(&chain_a, pa)?;
    let second = piecewise_parts(&chain_b, pa)?;
    let (p1, p2) = (&first.p1, &second.p2);
    let (d1, d2) = (p1.dim(), p2.dim());
    let nph = pa.algebra().dim() * pa.hopf().dim();

    // (p, q) ↦ (ev_{m_a}⊗id)(p) − (ev₀⊗id)(q)
    let id_ph = LinearMap::identity(&Space::indexed("v", nph));
    let end_p = chain_a.ev(m_a).kron(&id_ph).compose(&p1.carrier.inclusion())?;
    let end_q = chain_b.ev(0).kron(&id_ph).compose(&p2.carrier.inclusion())?;
    let diff_cols: Vec<SparseVec> = end_p
        .columns()
        .iter()
        .cloned()
        .chain(end_q.columns().iter().map(|c| c.neg()))
        .collect();
    let sum_alg = p1.comodule.algebra().direct_sum(p2.comodule.algebra());
    let diff = LinearMap::new(sum_alg.space().clone(), end_p.target().clone(), diff_cols)?;
    let fiber = subalgebra_from_subspace(&sum_alg, &diff.kernel())?;
    if !fiber.is_unital() {
        return Err(Error::CheckFailed("fiber product does not contain the unit".into()));
    }
    let fiber_alg = fiber.algebra("fiber product")?;

    // Coaction of P1 ⊕ P2, restricted to the fiber product.
    let nh = pa.hopf().dim();
    let sum_coaction: Vec<SparseVec> = (0..d1 + d2)
        .map(|k| {
            if k < d1 {
                p1.comodule.coaction().column(k).clone()
            } else {
                p2.comodule.coaction().column(k - d1).reindex(|i| i + d1 * nh)
            }
        })
        .collect();
    let fiber_coaction: Option<Vec<SparseVec>> = fiber
        .subspace()
        .basis()
        .iter()
        .map(|v| {
            let mut acc = SparseVec::zero();
            for (k, x) in v.iter() {
                acc = acc.axpy(x, &sum_coaction[k]);
            }
            fiber.subspace().left_tensor_coordinates(&acc, nh)
        })
        .collect();
    let fiber_coaction =
        fiber_coaction.ok_or_else(|| Error::CheckFailed("fiber product is not a subcomodule".into()))?;
    let fiber_coaction = LinearMap::new(
        fiber_alg.space().clone(),
        fiber_alg.space().tensor(pa.hopf().space()),
        fiber_coaction,
    )?;

    // Gluing into C[0..m_a+m_b]⊗P⊗H.
    let ef = build_equivariant_fusion(whole.base(), pa)?;
    let p1_incl = p1.carrier.inclusion();
    let p2_incl = p2.carrier.inclusion();
    let glue = |v: &SparseVec| -> SparseVec {
        let mut pairs = Vec::new();
        for (k, x) in v.iter() {
            if k < d1 {
                for (i, y) in p1_incl.column(k).iter() {
                    pairs.push((i, x * y));
                }
            } else {
                for (i, y) in p2_incl.column(k - d1).iter() {
                    let t = i / nph;
                    if t > 0 {
                        pairs.push(((t + m_a) * nph + i % nph, x * y));
                    }
                }
            }
        }
        SparseVec::from_pairs(pairs)
    };
    let mut report = CheckReport::new(format!("pullback over chains {m_a} + {m_b}"));
    report.absorb("", first.report.clone());
    report.absorb("", second.report.clone());
    let iso_cols: Option<Vec<SparseVec>> = fiber
        .subspace()
        .basis()
        .iter()
        .map(|v| ef.carrier().subspace().coordinates(&glue(v)))
        .collect();
    let Some(iso_cols) = iso_cols else {
        report.record(
            "glued elements lie in the fusion",
            Err("some glued element leaves the carrier".into()),
        );
        return Ok(PullbackReport {
            fiber_dim: fiber.dim(),
            fusion_dim: ef.dim(),
            iso: LinearMap::zero(fiber_alg.space(), ef.comodule().algebra().space()),
            report,
        });
    };
    report.record("glued elements lie in the fusion", Ok(()));
    let target = ef.comodule().algebra();
    let iso = LinearMap::new(fiber_alg.space().clone(), target.space().clone(), iso_cols)?;
    let bijective = iso.rows() == iso.cols() && iso.rank() == iso.cols();
    report.record(
        "bijective",
        if bijective {
            Ok(())
        } else {
            Err(format!("{} → {}, rank {}", iso.cols(), iso.rows(), iso.rank()))
        },
    );
    report.absorb("", check_linear_hom(&fiber_alg, target, &iso).report);
    let lhs = ef.comodule().coaction().compose(&iso)?;
    let rhs = iso
        .kron(&LinearMap::identity(pa.hopf().space()))
        .compose(&fiber_coaction)?;
    report.record(
        "colinear",
        lhs.first_difference(&rhs)
            .map_or(Ok(()), |k| Err(format!("fiber basis vector {k}"))),
    );
    Ok(PullbackReport {
        fiber_dim: fiber.dim(),
        fusion_dim: ef.dim(),
        iso,
        report,
    })
}
