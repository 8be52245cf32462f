use std::sync::Arc;

use crate::algebra::{check_linear_hom, FDAlgebra};
use crate::comodule::{check_strong_connection, solve_strong_connection, ComoduleAlgebra, ConnectionSearch};
use crate::error::{Error, Result};
use crate::fusion::{build_equivariant_fusion, build_fusion, ChainInterval};
use crate::linalg::{LinearMap, Space, SparseVec};
use crate::report::CheckReport;

use super::gset::{fun_comodule, is_free, FiniteGSet};

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

    /// Class ids `0..count` numbered by first appearance.
    fn classes(mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            out.push(id[r]);
        }
        (out, count)
    }
}

/// A quotient of `{0..m}×X×Y`, triples indexed `(t·|X| + x)·|Y| + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteJoin {
    pub m: usize,
    pub x: usize,
    pub y: usize,
    /// Class of each triple.
    pub class_of: Vec<usize>,
    pub points: usize,
}

impl DiscreteJoin {
    pub fn index(&self, t: usize, x: usize, y: usize) -> usize {
        (t * self.x + x) * self.y + y
    }

    pub fn class(&self, t: usize, x: usize, y: usize) -> usize {
        self.class_of[self.index(t, x, y)]
    }

    fn build(m: usize, nx: usize, ny: usize, related: impl Fn(usize, (usize, usize), (usize, usize)) -> bool) -> Self {
        let idx = |t: usize, x: usize, y: usize| (t * nx + x) * ny + y;
        let mut uf = UnionFind::new((m + 1) * nx * ny);
        for t in [0, m] {
            for a in 0..nx * ny {
                for b in a + 1..nx * ny {
                    let (p, q) = ((a / ny, a % ny), (b / ny, b % ny));
                    if related(t, p, q) {
                        uf.union(idx(t, p.0, p.1), idx(t, q.0, q.1));
                    }
                }
            }
        }
        let (class_of, points) = uf.classes();
        DiscreteJoin {
            m,
            x: nx,
            y: ny,
            class_of,
            points,
        }
    }
}

/// `X` collapsed at level 0, `Y` collapsed at level `m`, interior untouched.
pub fn discrete_join(x: usize, y: usize, m: usize) -> Result<DiscreteJoin> {
    if m == 0 {
        return Err(Error::Invalid("chain resolution must be at least 1".into()));
    }
    Ok(DiscreteJoin::build(m, x, y, |t, p, q| {
        if t == 0 {
            p.1 == q.1
        } else {
            p.0 == q.0
        }
    }))
}

/// `X` collapsed at level 0; at level `m`, `(x, h) ~ (x′, h′)` iff `xh = x′h′`.
pub fn gauged_join(a: &FiniteGSet, m: usize) -> Result<DiscreteJoin> {
    if m == 0 {
        return Err(Error::Invalid("chain resolution must be at least 1".into()));
    }
    let ng = a.group().order();
    Ok(DiscreteJoin::build(m, a.len(), ng, |t, p, q| {
        if t == 0 {
            p.1 == q.1
        } else {
            a.act(p.0, p.1) == a.act(q.0, q.1)
        }
    }))
}

#[derive(Clone, Debug)]
pub struct GaugedJoinReport {
    pub join_points: usize,
    pub gauged_points: usize,
    pub report: CheckReport,
}

impl GaugedJoinReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// `[(t, x, h)] ↦ [(t, xh⁻¹, h)]` from `X∗G` (diagonal action) to the gauged
/// join (action on the group coordinate only).
pub fn gauged_join_iso(a: &FiniteGSet, m: usize) -> Result<GaugedJoinReport> {
    let g = a.group().clone();
    check_triple_map(a, m, move |_, x, h| (a.act(x, g.inv(h)), h))
}

/// Checks that a map on triples descends to a well-defined, bijective,
/// equivariant map between the two quotients.
pub fn check_triple_map(
    a: &FiniteGSet,
    m: usize,
    f: impl Fn(usize, usize, usize) -> (usize, usize),
) -> Result<GaugedJoinReport> {
    let g = a.group();
    let ng = g.order();
    let join = discrete_join(a.len(), ng, m)?;
    let gauged = gauged_join(a, m)?;
    let mut report = CheckReport::new(format!("gauged join of {} points over {}, m = {m}", a.len(), g.name()));

    let mut image: Vec<Option<usize>> = vec![None; join.points];
    let mut clash = None;
    for t in 0..=m {
        for x in 0..a.len() {
            for h in 0..ng {
                let (x2, h2) = f(t, x, h);
                let target = gauged.class(t, x2, h2);
                let slot = &mut image[join.class(t, x, h)];
                match slot {
                    Some(prev) if *prev != target => clash = clash.or(Some((t, x, h))),
                    Some(_) => {}
                    None => *slot = Some(target),
                }
            }
        }
    }
    report.record(
        "well defined",
        clash.map_or(Ok(()), |(t, x, h)| {
            Err(format!("class of ({t}, {x}, {})", g.element_name(h)))
        }),
    );
    let image: Vec<usize> = image
        .into_iter()
        .map(|c| c.expect("every class has a representative"))
        .collect();
    let mut hit = vec![false; gauged.points];
    for &c in &image {
        hit[c] = true;
    }
    let bijective = join.points == gauged.points && hit.iter().all(|&b| b);
    report.record(
        "bijective",
        if bijective {
            Ok(())
        } else {
            Err(format!("{} → {} points", join.points, gauged.points))
        },
    );
    let mut bad = None;
    'outer: for t in 0..=m {
        for x in 0..a.len() {
            for h in 0..ng {
                for k in 0..ng {
                    let lhs = {
                        let (x2, h2) = f(t, a.act(x, k), g.mul(h, k));
                        gauged.class(t, x2, h2)
                    };
                    let rhs = {
                        let (x2, h2) = f(t, x, h);
                        gauged.class(t, x2, g.mul(h2, k))
                    };
                    if lhs != rhs {
                        bad = Some((t, x, h, k));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.record(
        "equivariant",
        bad.map_or(Ok(()), |(t, x, h, k)| {
            Err(format!(
                "({t}, {x}, {}) acted on by {}",
                g.element_name(h),
                g.element_name(k)
            ))
        }),
    );
    Ok(GaugedJoinReport {
        join_points: join.points,
        gauged_points: gauged.points,
        report,
    })
}

#[derive(Clone, Debug)]
pub struct JoinFusionReport {
    pub join_points: usize,
    pub fusion_dim: usize,
    /// `Fun(X∗Y) → fusion carrier`, `f ↦ f∘[·]` in carrier coordinates.
    pub iso: LinearMap,
    pub report: CheckReport,
}

impl JoinFusionReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Functions on the discrete join against the fusion of `Fun(X)` and `Fun(Y)`
/// over the chain of length `m`.
pub fn fun_of_join_vs_fusion(x: usize, y: usize, m: usize) -> Result<JoinFusionReport> {
    let join = discrete_join(x, y, m)?;
    let chain = ChainInterval::new(m)?;
    let fx = Arc::new(FDAlgebra::functions(format!("Fun({x})"), Space::indexed("x", x)));
    let fy = Arc::new(FDAlgebra::functions(format!("Fun({y})"), Space::indexed("y", y)));
    let fusion = build_fusion(chain.base(), fx, fy)?;
    let fun_join = FDAlgebra::functions("Fun(X∗Y)", Space::indexed("p", join.points));
    let mut report = CheckReport::new(format!("Fun(X∗Y) vs fusion, |X| = {x}, |Y| = {y}, m = {m}"));
    report.record(
        "point count",
        if join.points == y + (m - 1) * x * y + x {
            Ok(())
        } else {
            Err(format!("{} points", join.points))
        },
    );
    let mut pulled = vec![Vec::new(); join.points];
    for (triple, &c) in join.class_of.iter().enumerate() {
        pulled[c].push((triple, crate::linalg::one()));
    }
    let cols: Option<Vec<SparseVec>> = pulled
        .into_iter()
        .map(|p| fusion.carrier.subspace().coordinates(&SparseVec::from_pairs(p)))
        .collect();
    let carrier = fusion.algebra();
    let iso = match cols {
        Some(cols) => {
            report.record("pullbacks lie in the fusion", Ok(()));
            LinearMap::new(fun_join.space().clone(), carrier.space().clone(), cols)?
        }
        None => {
            report.record(
                "pullbacks lie in the fusion",
                Err("some pulled-back function leaves the carrier".into()),
            );
            LinearMap::zero(fun_join.space(), carrier.space())
        }
    };
    let bijective = iso.rows() == iso.cols() && iso.rank() == iso.cols();
    report.record(
        "bijective",
        if bijective {
            Ok(())
        } else {
            Err(format!("{} points, fusion dim {}", join.points, fusion.dim()))
        },
    );
    report.absorb("", check_linear_hom(&fun_join, &carrier, &iso).report);
    Ok(JoinFusionReport {
        join_points: join.points,
        fusion_dim: fusion.dim(),
        iso,
        report,
    })
}

#[derive(Clone, Debug)]
pub struct DiagonalFreeness {
    /// `G` acts freely on the gauged join.
    pub action_free: bool,
    /// The equivariant fusion of `Fun(X)` over the chain is principal.
    pub principal: bool,
    pub search: ConnectionSearch,
    /// Recheck of the found connection, when there is one.
    pub connection_report: Option<CheckReport>,
    pub gauged_points: usize,
    pub fusion_dim: usize,
}

impl DiagonalFreeness {
    pub fn passed(&self) -> bool {
        self.action_free && self.principal
    }
}

/// Requires a free action on `X`.
pub fn diagonal_join_freeness(a: &FiniteGSet, m: usize) -> Result<DiagonalFreeness> {
    diagonal_join_freeness_with(a, m, |ef| solve_strong_connection(ef, false))
}

/// As [`diagonal_join_freeness`], with the connection search on the
/// equivariant fusion supplied by the caller.
pub fn diagonal_join_freeness_with(
    a: &FiniteGSet,
    m: usize,
    search: impl FnOnce(&ComoduleAlgebra) -> Result<ConnectionSearch>,
) -> Result<DiagonalFreeness> {
    if !is_free(a) {
        return Err(Error::Precondition("the action on X is not free".into()));
    }
    let gauged = gauged_join(a, m)?;
    let g = a.group();
    let ng = g.order();
    // [(t, x, h)]k = [(t, x, hk)]
    let mut act = vec![vec![usize::MAX; ng]; gauged.points];
    let mut well_defined = true;
    for t in 0..=m {
        for x in 0..a.len() {
            for h in 0..ng {
                let c = gauged.class(t, x, h);
                for (k, slot) in act[c].iter_mut().enumerate() {
                    let d = gauged.class(t, x, g.mul(h, k));
                    if *slot == usize::MAX {
                        *slot = d;
                    } else if *slot != d {
                        well_defined = false;
                    }
                }
            }
        }
    }
    let action_free = well_defined
        && match FiniteGSet::new(g.clone(), act) {
            Ok(quotient) => is_free(&quotient),
            Err(_) => false,
        };
    let chain = ChainInterval::new(m)?;
    let ef = build_equivariant_fusion(chain.base(), &fun_comodule(a))?;
    let search = search(ef.comodule())?;
    let connection_report = search.connection().map(|c| check_strong_connection(ef.comodule(), c));
    let principal = search.is_feasible() && connection_report.as_ref().is_some_and(|r| r.passed());
    Ok(DiagonalFreeness {
        action_free,
        principal,
        search,
        connection_report,
        gauged_points: gauged.points,
        fusion_dim: ef.dim(),
    })
}
