use crate::comodule::{
    check_comodule, check_strong_connection, coinvariants, solve_strong_connection, ComoduleAlgebra, ConnectionSearch,
    Principality, StrongConnection,
};
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Scalar, SparseVec, Subspace};
use crate::par::{self, Exec};
use crate::report::CheckReport;

use super::base::{BaseWithEnds, SqrtPair};
use super::carrier::{build_equivariant_fusion, EquivariantFusion};

/// The lifted connection on the equivariant fusion, both as a map into the
/// ambient `A⊗A` (`A = C⊗P⊗H`) and in carrier coordinates.
#[derive(Clone, Debug)]
pub struct LiftedConnection {
    pub ambient_map: LinearMap,
    pub connection: Option<StrongConnection>,
    pub report: CheckReport,
}

impl LiftedConnection {
    pub fn passed(&self) -> bool {
        self.connection.is_some() && self.report.passed()
    }
}

/// Builds
/// `ℓ̃(h) = s⊗ℓ(h₂)¹⊗S(h₁) ⊗ s⊗ℓ(h₂)²⊗h₃ + s′⊗1⊗S(h₁) ⊗ s′⊗1⊗h₂`
/// and checks corestriction of both legs, bicolinearity, and splitting.
pub fn lift_connection(ef: &EquivariantFusion, ell: &StrongConnection, sq: &SqrtPair) -> Result<LiftedConnection> {
    let pa = &ef.pa;
    let h = pa.hopf();
    let (nc, np, nh) = (ef.base.algebra().dim(), pa.algebra().dim(), h.dim());
    let na = nc * np * nh;
    if ell.map.cols() != nh || ell.map.rows() != np * np {
        return Err(Error::DimensionMismatch {
            context: "connection H → P⊗P".into(),
            expected: nh * np * np,
            found: ell.map.cols() * ell.map.rows(),
        });
    }
    let legs3 = h.sweedler_legs(3)?;
    let legs2 = h.coproduct();
    let antipode = h.antipode();
    let leg = |c: usize, p: usize, k: usize| (c * np + p) * nh + k;

    let cols: Vec<SparseVec> = (0..nh)
        .map(|hh| {
            let mut pairs: Vec<(usize, Scalar)> = Vec::new();
            for (ijk, coef) in legs3.column(hh).iter() {
                let (i, j, k) = (ijk / (nh * nh), (ijk / nh) % nh, ijk % nh);
                for (ab, x) in ell.map.column(j).iter() {
                    let (a, b) = (ab / np, ab % np);
                    for (si, y) in antipode.column(i).iter() {
                        let w = coef * x * y;
                        for (c1, s1) in sq.s().iter() {
                            for (c2, s2) in sq.s().iter() {
                                pairs.push((leg(c1, a, si) * na + leg(c2, b, k), &w * s1 * s2));
                            }
                        }
                    }
                }
            }
            let unit = pa.algebra().unit();
            for (ij, coef) in legs2.column(hh).iter() {
                let (i, j) = (ij / nh, ij % nh);
                for (si, y) in antipode.column(i).iter() {
                    for (u1, x1) in unit.iter() {
                        for (u2, x2) in unit.iter() {
                            let w = coef * y * x1 * x2;
                            for (c1, s1) in sq.s_prime().iter() {
                                for (c2, s2) in sq.s_prime().iter() {
                                    pairs.push((leg(c1, u1, si) * na + leg(c2, u2, j), &w * s1 * s2));
                                }
                            }
                        }
                    }
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    let amb = ef.ambient().space();
    let ambient_map = LinearMap::new(h.space().clone(), amb.tensor(amb), cols)?;

    let mut report = CheckReport::new("lifted connection");
    let id_ph = LinearMap::identity(ef.delta_image.ambient());
    let id_a = LinearMap::identity(amb);
    let ends = [
        (1, ef.base.pi1().map(), &ef.delta_image),
        (2, ef.base.pi2().map(), &ef.fiber),
    ];
    for (side, is_left) in [("left", true), ("right", false)] {
        for (i, pi, w) in ends {
            let cond = Subspace::full(pi.target()).tensor(w);
            let end = pi.kron(&id_ph);
            let along = if is_left { end.kron(&id_a) } else { id_a.kron(&end) };
            let bad = (0..nh).find(|&k| {
                let v = along.apply(ambient_map.column(k));
                if is_left {
                    cond.left_tensor_coordinates(&v, na).is_none()
                } else {
                    cond.right_tensor_coordinates(&v, na).is_none()
                }
            });
            report.record(
                &format!("{side} leg at π{i}"),
                bad.map_or(Ok(()), |k| Err(format!("basis element {}", h.space().label(k)))),
            );
        }
    }

    let carrier = ef.carrier().subspace();
    let d = carrier.dim();
    let coords: Option<Vec<SparseVec>> = (0..nh)
        .map(|k| {
            let left = carrier.left_tensor_coordinates(ambient_map.column(k), na)?;
            carrier.right_tensor_coordinates(&left, d)
        })
        .collect();
    let connection = match coords {
        Some(cols) => {
            report.record("legs in carrier", Ok(()));
            let es = ef.comodule().algebra().space();
            let map = LinearMap::new(h.space().clone(), es.tensor(es), cols)?;
            let conn = StrongConnection::new(ef.comodule(), map)?;
            report.absorb("", check_strong_connection(ef.comodule(), &conn));
            Some(conn)
        }
        None => {
            report.record("legs in carrier", Err("some ℓ̃(h) leaves carrier⊗carrier".into()));
            None
        }
    };
    Ok(LiftedConnection {
        ambient_map,
        connection,
        report,
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TheoremOptions {
    /// Ask the solver for a unital input connection.
    pub unital_input: bool,
    pub exec: Exec,
}

#[derive(Clone, Debug)]
pub struct TheoremCertificate {
    pub fusion: EquivariantFusion,
    pub input_connection: StrongConnection,
    pub input_report: CheckReport,
    pub fusion_dim: usize,
    pub coinvariants_dim: usize,
    pub comodule_report: CheckReport,
    pub lifted: LiftedConnection,
    pub solver: Principality,
    pub solver_report: Option<CheckReport>,
}

impl TheoremCertificate {
    /// The constructive verdict: `ℓ̃` passed every check.
    pub fn constructive(&self) -> bool {
        self.comodule_report.passed() && self.lifted.passed()
    }

    pub fn solver_verdict(&self) -> bool {
        self.solver.principal && self.solver_report.as_ref().is_some_and(|r| r.passed())
    }

    pub fn passed(&self) -> bool {
        self.input_report.passed() && self.constructive() && self.solver_verdict()
    }
}

/// Lifts a connection of `P` to its equivariant fusion, and independently
/// solves for a connection on the fusion.
pub fn verify_theorem_main(
    base: &BaseWithEnds,
    pa: &ComoduleAlgebra,
    sq: &SqrtPair,
    options: TheoremOptions,
) -> Result<TheoremCertificate> {
    let input_connection = match solve_strong_connection(pa, options.unital_input)? {
        ConnectionSearch::Feasible(c) => c,
        ConnectionSearch::Infeasible(_) => {
            return Err(Error::Precondition(format!(
                "{} admits no strong connection",
                pa.name()
            )))
        }
    };
    verify_theorem_with(
        base,
        pa,
        sq,
        input_connection,
        |ef| solve_strong_connection(ef, false),
        options.exec,
    )
}

/// As [`verify_theorem_main`], with the input connection given and the
/// fusion-side search supplied by the caller.
pub fn verify_theorem_with<F>(
    base: &BaseWithEnds,
    pa: &ComoduleAlgebra,
    sq: &SqrtPair,
    input_connection: StrongConnection,
    search: F,
    exec: Exec,
) -> Result<TheoremCertificate>
where
    F: FnOnce(&ComoduleAlgebra) -> Result<ConnectionSearch> + Send,
{
    let input_report = check_strong_connection(pa, &input_connection);
    let ef = build_equivariant_fusion(base, pa)?;
    let mut comodule_report = ef.corestriction.clone();
    comodule_report.absorb("", check_comodule(ef.comodule()));
    let coinvariants_dim = coinvariants(ef.comodule())?.dim();

    let (lifted, searched) = par::join(
        exec,
        || lift_connection(&ef, &input_connection, sq),
        || search(ef.comodule()),
    );
    let lifted = lifted?;
    let certificate = searched?;
    let solver_report = certificate
        .connection()
        .map(|c| check_strong_connection(ef.comodule(), c));
    Ok(TheoremCertificate {
        fusion_dim: ef.dim(),
        fusion: ef,
        input_connection,
        input_report,
        coinvariants_dim,
        comodule_report,
        lifted,
        solver: Principality {
            principal: certificate.is_feasible(),
            certificate,
        },
        solver_report,
    })
}
