use std::sync::Arc;

use crate::algebra::{subalgebra_from_subspace, FDAlgebra, SubalgebraWitness};
use crate::comodule::{coinvariants, CoinvariantSubalgebra, ComoduleAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Subspace};
use crate::report::CheckReport;

use super::base::BaseWithEnds;

/// `{x ∈ C⊗A1⊗A2 | (π1⊗id)(x) ∈ C1⊗A1⊗1, (π2⊗id)(x) ∈ C2⊗1⊗A2}`.
#[derive(Clone, Debug)]
pub struct FusionAlgebra {
    pub base: BaseWithEnds,
    pub a1: Arc<FDAlgebra>,
    pub a2: Arc<FDAlgebra>,
    pub ambient: Arc<FDAlgebra>,
    pub carrier: SubalgebraWitness,
}

impl FusionAlgebra {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn algebra(&self) -> FDAlgebra {
        self.carrier.algebra("fusion").expect("carrier is unital")
    }
}

/// `{x ∈ C⊗V | (π⊗id)(x) ∈ Cπ⊗W}`.
pub(crate) fn end_condition(pi: &LinearMap, w: &Subspace) -> Result<Subspace> {
    let ends = Subspace::full(pi.target());
    let along = pi.kron(&LinearMap::identity(w.ambient()));
    along.preimage(&ends.tensor(w))
}

fn unital_subalgebra(ambient: &FDAlgebra, u: &Subspace) -> Result<SubalgebraWitness> {
    let w = subalgebra_from_subspace(ambient, u)?;
    if !w.is_unital() {
        return Err(Error::CheckFailed("carrier does not contain the unit".into()));
    }
    Ok(w)
}

pub fn build_fusion(base: &BaseWithEnds, a1: Arc<FDAlgebra>, a2: Arc<FDAlgebra>) -> Result<FusionAlgebra> {
    let c = base.algebra();
    let ambient = Arc::new(c.tensor(&a1).tensor(&a2));
    let first = a1.left_corner(&a2).image();
    let second = a2.right_corner(&a1).image();
    let at1 = end_condition(base.pi1().map(), &first)?;
    let at2 = end_condition(base.pi2().map(), &second)?;
    let carrier = unital_subalgebra(&ambient, &at1.intersection(&at2)?)?;
    Ok(FusionAlgebra {
        base: base.clone(),
        a1,
        a2,
        ambient,
        carrier,
    })
}

/// A unital subalgebra of `C⊗P⊗H` that is stable under `id⊗id⊗Δ`, with the
/// restricted coaction written in carrier coordinates.
#[derive(Clone, Debug)]
pub struct RestrictedComodule {
    pub ambient: Arc<FDAlgebra>,
    pub carrier: SubalgebraWitness,
    pub comodule: ComoduleAlgebra,
}

impl RestrictedComodule {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// Basis-vector images of `id⊗id⊗Δ` on the carrier, in the ambient.
    fn ambient_coaction(c_dim: usize, pa: &ComoduleAlgebra) -> LinearMap {
        let id = LinearMap::identity(&crate::linalg::Space::indexed("c", c_dim * pa.algebra().dim()));
        id.kron(pa.hopf().coproduct())
    }

    pub(crate) fn build(base: &BaseWithEnds, pa: &ComoduleAlgebra, u: &Subspace, name: &str) -> Result<Self> {
        let c = base.algebra();
        let ambient = Arc::new(c.tensor(pa.algebra()).tensor(pa.hopf().algebra()));
        let carrier = unital_subalgebra(&ambient, u)?;
        let nh = pa.hopf().dim();
        let full = Self::ambient_coaction(c.dim(), pa);
        let mut cols = Vec::with_capacity(carrier.dim());
        for (k, v) in carrier.subspace().basis().iter().enumerate() {
            let image = full.apply(v);
            let coords = carrier.subspace().left_tensor_coordinates(&image, nh).ok_or_else(|| {
                Error::CheckFailed(format!("id⊗id⊗Δ does not corestrict on carrier basis vector {k}"))
            })?;
            cols.push(coords);
        }
        let alg = Arc::new(carrier.algebra(name)?);
        let target = alg.space().tensor(pa.hopf().space());
        let coaction = LinearMap::new(alg.space().clone(), target, cols)?;
        let comodule = ComoduleAlgebra::new(alg, pa.hopf().clone(), coaction)?;
        Ok(RestrictedComodule {
            ambient,
            carrier,
            comodule,
        })
    }

    /// Carrier subspace of the coinvariants, pushed into the ambient.
    pub fn coinvariants_in_ambient(&self) -> Result<(CoinvariantSubalgebra, Subspace)> {
        let b = coinvariants(&self.comodule)?;
        let incl = self.carrier.inclusion();
        let vs: Vec<_> = b.subspace().basis().iter().map(|v| incl.apply(v)).collect();
        let pushed = Subspace::span(self.ambient.space(), &vs);
        Ok((b, pushed))
    }
}

/// `{x ∈ C⊗P⊗H | (π1⊗id)(x) ∈ C1⊗δ(P), (π2⊗id)(x) ∈ C2⊗1⊗H}` with the
/// coaction restricted from `id⊗id⊗Δ`.
#[derive(Clone, Debug)]
pub struct EquivariantFusion {
    pub base: BaseWithEnds,
    pub pa: ComoduleAlgebra,
    pub inner: RestrictedComodule,
    /// `δ(P) ⊆ P⊗H`.
    pub delta_image: Subspace,
    /// `1⊗H ⊆ P⊗H`.
    pub fiber: Subspace,
    pub corestriction: CheckReport,
}

impl EquivariantFusion {
    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn carrier(&self) -> &SubalgebraWitness {
        &self.inner.carrier
    }

    pub fn ambient(&self) -> &Arc<FDAlgebra> {
        &self.inner.ambient
    }

    pub fn comodule(&self) -> &ComoduleAlgebra {
        &self.inner.comodule
    }
}

pub(crate) fn delta_image(pa: &ComoduleAlgebra) -> Subspace {
    pa.coaction().image()
}

pub(crate) fn unit_fiber(pa: &ComoduleAlgebra) -> Subspace {
    pa.algebra()
        .unit_map()
        .kron(&LinearMap::identity(pa.hopf().space()))
        .image()
}

pub fn build_equivariant_fusion(base: &BaseWithEnds, pa: &ComoduleAlgebra) -> Result<EquivariantFusion> {
    let delta_image = delta_image(pa);
    let fiber = unit_fiber(pa);
    let at1 = end_condition(base.pi1().map(), &delta_image)?;
    let at2 = end_condition(base.pi2().map(), &fiber)?;
    let u = at1.intersection(&at2)?;
    let inner = RestrictedComodule::build(base, pa, &u, "equivariant fusion")?;

    // The ends of (id⊗id⊗Δ)(x) lie in C1⊗δ(P)⊗H and C2⊗1⊗H⊗H.
    let mut corestriction = CheckReport::new("restricted coaction");
    let full = RestrictedComodule::ambient_coaction(base.algebra().dim(), pa);
    let h_full = Subspace::full(pa.hopf().space());
    let w1 = delta_image.tensor(&h_full);
    let w2 = fiber.tensor(&h_full);
    let id_pha = LinearMap::identity(w1.ambient());
    let end1 = base.pi1().map().kron(&id_pha);
    let end2 = base.pi2().map().kron(&id_pha);
    let e1 = Subspace::full(base.pi1().target().space()).tensor(&w1);
    let e2 = Subspace::full(base.pi2().target().space()).tensor(&w2);
    let basis = inner.carrier.subspace().basis();
    let first_bad = |end: &LinearMap, target: &Subspace| {
        basis
            .iter()
            .position(|v| !target.contains(&end.apply(&full.apply(v))))
            .map_or(Ok(()), |k| Err(format!("carrier basis vector {k}")))
    };
    corestriction.record("π1 end lands in C1⊗δ(P)⊗H", first_bad(&end1, &e1));
    corestriction.record("π2 end lands in C2⊗1⊗H⊗H", first_bad(&end2, &e2));
    corestriction.record("lands in carrier⊗H", Ok(()));

    Ok(EquivariantFusion {
        base: base.clone(),
        pa: pa.clone(),
        inner,
        delta_image,
        fiber,
        corestriction,
    })
}

pub fn coinvariants_of_fusion(ef: &EquivariantFusion) -> Result<CoinvariantSubalgebra> {
    coinvariants(ef.comodule())
}
