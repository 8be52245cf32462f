//! Requests (check a document, solve for a connection, run a scenario) and
//! the certificates they produce. A certificate carries every connection it
//! relied on, so [`replay`] can re-derive all verdicts without solving.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::check_algebra_with;
use crate::classical::{diagonal_join_freeness_with, discrete_join, fun_of_join_vs_fusion, gauged_join_iso, is_free};
use crate::comodule::{
    balanced_tensor, canonical_map, check_comodule, check_strong_connection, coinvariants, connection_system,
    solve_strong_connection, translation_inverse, ComoduleAlgebra, ConnectionSearch, InfeasibilityCertificate,
    StrongConnection,
};
use crate::error::{Error, Result};
use crate::fusion::{
    build_equivariant_fusion, build_fusion, make_sqrt_pair, pullback_identification, verify_theorem_with, ChainInterval,
};
use crate::hopf::check_hopf;
use crate::io::{
    AlgebraFile, ComoduleFile, Document, GSetFile, Loaded, Loader, MatrixData, Operation, Ref, ScenarioFile,
};
use crate::linalg::{parse_scalar, LinearMap, Space};
use crate::par::Exec;
use crate::report::CheckReport;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// What a certificate was produced from. Inputs are stored inline (builtin
/// names excepted) so the certificate is self-contained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Request {
    Check {
        document: Document,
    },
    SolveConnection {
        comodule: Document,
        #[serde(default)]
        unital: bool,
    },
    Scenario {
        scenario: ScenarioFile,
    },
}

impl Request {
    pub fn operation(&self) -> String {
        match self {
            Request::Check { .. } => "check".into(),
            Request::SolveConnection { .. } => "solve-connection".into(),
            Request::Scenario { scenario } => scenario.operation.name(),
        }
    }

    /// Replaces every file reference by the document it points to.
    pub fn inlined(&self, loader: &Loader) -> Result<Request> {
        Ok(match self {
            Request::Check { document } => Request::Check {
                document: inline_document(document, loader)?,
            },
            Request::SolveConnection { comodule, unital } => Request::SolveConnection {
                comodule: inline_document(comodule, loader)?,
                unital: *unital,
            },
            Request::Scenario { scenario } => Request::Scenario {
                scenario: inline_scenario(scenario, loader)?,
            },
        })
    }
}

fn inline_document(doc: &Document, loader: &Loader) -> Result<Document> {
    Ok(match loader.load(doc)? {
        Loaded::GSet(a) => Document::GSet(GSetFile::from_gset(&a)),
        Loaded::Algebra(a) => Document::Algebra(AlgebraFile::from_algebra(&a)),
        Loaded::Hopf(h) => Document::Hopf(crate::io::HopfFile::from_hopf(&h)),
        Loaded::Comodule(c) => Document::Comodule(ComoduleFile::from_comodule(&c)),
        Loaded::Group(_) | Loaded::Scenario(_) => doc.clone(),
    })
}

fn inline_scenario(s: &ScenarioFile, loader: &Loader) -> Result<ScenarioFile> {
    fn keep(r: &Ref) -> bool {
        matches!(r, Ref::Name(n) if n.starts_with("builtin:"))
    }
    let mut out = s.clone();
    if let Some(r) = &s.comodule {
        if !keep(r) {
            let c = loader.comodule(r)?;
            out.comodule = Some(Ref::Inline(Box::new(Document::Comodule(ComoduleFile::from_comodule(
                &c,
            )))));
        }
    }
    if let Some(r) = &s.gset {
        if !keep(r) {
            let a = loader.gset(r)?;
            out.gset = Some(Ref::Inline(Box::new(Document::GSet(GSetFile::from_gset(&a)))));
        }
    }
    for (src, dst) in [(&s.a1, &mut out.a1), (&s.a2, &mut out.a2)] {
        if let Some(r) = src {
            if !keep(r) {
                let a = loader.algebra(r)?;
                *dst = Some(Ref::Inline(Box::new(Document::Algebra(AlgebraFile::from_algebra(&a)))));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    AxiomFailure,
    Infeasible,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::AxiomFailure => 1,
            Outcome::Infeasible => 3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub tool: String,
    pub version: String,
    pub id: String,
    pub operation: String,
    pub request: Request,
    pub outcome: Outcome,
    pub dimensions: BTreeMap<String, usize>,
    /// Answers to yes/no questions; a `false` here is not a failure.
    pub answers: BTreeMap<String, bool>,
    /// Everything that must hold for the run to pass.
    pub verdicts: BTreeMap<String, bool>,
    pub reports: Vec<CheckReport>,
    pub matrices: BTreeMap<String, MatrixData>,
    pub timing: Timing,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    /// JSON with the timing zeroed: equal for equal inputs.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.timing = Timing::default();
        c.to_json()
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        let mut de = serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            Error::Parse(format!("certificate: at `{path}`: {}", e.into_inner()))
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} ({})", self.operation, self.id, self.tool);
        let outcome = match self.outcome {
            Outcome::Pass => "pass",
            Outcome::AxiomFailure => "FAIL",
            Outcome::Infeasible => "infeasible",
        };
        let _ = writeln!(out, "outcome: {outcome}");
        for (k, v) in &self.dimensions {
            let _ = writeln!(out, "dim {k} = {v}");
        }
        for (k, v) in &self.answers {
            let _ = writeln!(out, "{k}: {v}");
        }
        for (k, v) in &self.verdicts {
            let _ = writeln!(out, "[{}] {k}", if *v { "ok  " } else { "FAIL" });
        }
        for r in &self.reports {
            out.push_str(&r.to_string());
        }
        for (k, m) in &self.matrices {
            if let MatrixData::Sparse { rows, cols, entries } = m {
                let _ = writeln!(out, "matrix {k}: {rows}×{cols}, {} nonzero", entries.len());
            }
        }
        let _ = writeln!(out, "elapsed: {} µs", self.timing.elapsed_us);
        out
    }
}

/// Where connections come from: a fresh solve, or a stored certificate.
#[derive(Clone, Copy)]
enum Source<'a> {
    Solve(Exec),
    Stored(&'a Certificate),
}

fn multipliers_key(key: &str) -> String {
    format!("{key} infeasibility")
}

impl Source<'_> {
    fn connection(self, key: &str, pa: &ComoduleAlgebra, unital: bool) -> Result<ConnectionSearch> {
        match self {
            Source::Solve(_) => solve_strong_connection(pa, unital),
            Source::Stored(cert) => {
                let p = pa.algebra().space();
                if let Some(m) = cert.matrices.get(key) {
                    let map = m.to_map(pa.hopf().space(), &p.tensor(p), key)?;
                    return Ok(ConnectionSearch::Feasible(StrongConnection::new(pa, map)?));
                }
                let mkey = multipliers_key(key);
                let Some(m) = cert.matrices.get(&mkey) else {
                    return Err(Error::Parse(format!("certificate has neither `{key}` nor `{mkey}`")));
                };
                let system = connection_system(pa, unital);
                let y = m.to_map(&Space::scalars(), system.matrix.target(), &mkey)?;
                let found = InfeasibilityCertificate {
                    multipliers: y.column(0).clone(),
                    equations: y.rows(),
                };
                if !found.verify(&system) {
                    return Err(Error::CheckFailed(format!(
                        "stored `{mkey}` does not certify infeasibility"
                    )));
                }
                Ok(ConnectionSearch::Infeasible(found))
            }
        }
    }

    fn exec(self) -> Exec {
        match self {
            Source::Solve(exec) => exec,
            Source::Stored(_) => Exec::default(),
        }
    }
}

struct Builder {
    dimensions: BTreeMap<String, usize>,
    answers: BTreeMap<String, bool>,
    verdicts: BTreeMap<String, bool>,
    reports: Vec<CheckReport>,
    matrices: BTreeMap<String, MatrixData>,
    infeasible: bool,
}

impl Builder {
    fn new() -> Self {
        Builder {
            dimensions: BTreeMap::new(),
            answers: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            reports: Vec::new(),
            matrices: BTreeMap::new(),
            infeasible: false,
        }
    }

    fn dim(&mut self, k: &str, v: usize) {
        self.dimensions.insert(k.into(), v);
    }

    fn verdict(&mut self, k: &str, v: bool) {
        self.verdicts.insert(k.into(), v);
    }

    fn report(&mut self, k: &str, r: CheckReport) {
        self.verdict(k, r.passed());
        self.reports.push(r);
    }

    fn matrix(&mut self, k: &str, m: &LinearMap) {
        self.matrices.insert(k.into(), MatrixData::sparse(m));
    }

    fn search(&mut self, key: &str, s: &ConnectionSearch) {
        match s {
            ConnectionSearch::Feasible(c) => self.matrix(key, &c.map),
            ConnectionSearch::Infeasible(cert) => {
                let col = LinearMap::from_vector(&Space::indexed("r", cert.equations), cert.multipliers.clone());
                self.matrix(&multipliers_key(key), &col);
            }
        }
    }

    fn finish(self, id: String, request: Request, started: Instant) -> Certificate {
        let outcome = if !self.verdicts.values().all(|v| *v) {
            Outcome::AxiomFailure
        } else if self.infeasible {
            Outcome::Infeasible
        } else {
            Outcome::Pass
        };
        Certificate {
            tool: TOOL.into(),
            version: VERSION.into(),
            id,
            operation: request.operation(),
            request,
            outcome,
            dimensions: self.dimensions,
            answers: self.answers,
            verdicts: self.verdicts,
            reports: self.reports,
            matrices: self.matrices,
            timing: Timing {
                elapsed_us: started.elapsed().as_micros().try_into().unwrap_or(u64::MAX),
            },
        }
    }
}

/// Runs a request, solving for connections where needed. File references
/// are resolved through `loader` and inlined into the certificate.
pub fn run(request: &Request, loader: &Loader, exec: Exec) -> Result<Certificate> {
    let started = Instant::now();
    let request = request.inlined(loader)?;
    execute(request, Source::Solve(exec), started)
}

pub fn run_scenario(scenario: &ScenarioFile, loader: &Loader, exec: Exec) -> Result<Certificate> {
    run(
        &Request::Scenario {
            scenario: scenario.clone(),
        },
        loader,
        exec,
    )
}

/// Result of re-deriving a certificate from its own contents.
#[derive(Clone, Debug)]
pub struct Replay {
    pub replayed: Certificate,
    /// Human-readable list of everything that did not reproduce.
    pub differences: Vec<String>,
}

impl Replay {
    pub fn reproduced(&self) -> bool {
        self.differences.is_empty()
    }
}

/// Re-verifies a certificate without solving: stored connections and
/// infeasibility multipliers are checked, every other construction is
/// recomputed, and the result is compared field by field.
pub fn replay(stored: &Certificate) -> Result<Replay> {
    let started = Instant::now();
    let replayed = execute(stored.request.clone(), Source::Stored(stored), started)?;
    let mut differences = Vec::new();
    if replayed.id != stored.id {
        differences.push(format!("id: {} vs {}", stored.id, replayed.id));
    }
    if replayed.outcome != stored.outcome {
        differences.push(format!("outcome: {:?} vs {:?}", stored.outcome, replayed.outcome));
    }
    diff_maps("dimension", &stored.dimensions, &replayed.dimensions, &mut differences);
    diff_maps("answer", &stored.answers, &replayed.answers, &mut differences);
    diff_maps("verdict", &stored.verdicts, &replayed.verdicts, &mut differences);
    diff_maps("matrix", &stored.matrices, &replayed.matrices, &mut differences);
    if stored.reports != replayed.reports {
        differences.push("check reports differ".into());
    }
    Ok(Replay { replayed, differences })
}

fn diff_maps<V: PartialEq>(what: &str, a: &BTreeMap<String, V>, b: &BTreeMap<String, V>, out: &mut Vec<String>) {
    for k in a.keys().chain(b.keys().filter(|k| !a.contains_key(*k))) {
        match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) if x == y => {}
            (Some(_), Some(_)) => out.push(format!("{what} `{k}` differs")),
            (Some(_), None) => out.push(format!("{what} `{k}` missing on replay")),
            (None, _) => out.push(format!("{what} `{k}` appeared on replay")),
        }
    }
}

fn execute(request: Request, source: Source<'_>, started: Instant) -> Result<Certificate> {
    // everything is inline or builtin by now
    let loader = Loader::new(".");
    let mut b = Builder::new();
    let id = match &request {
        Request::Check { document } => {
            check_document(&mut b, &loader.load(document)?, source.exec())?;
            format!("check-{}", document.kind())
        }
        Request::SolveConnection { comodule, unital } => {
            let pa = match loader.load(comodule)? {
                Loaded::Comodule(c) => c,
                Loaded::GSet(a) => crate::classical::fun_comodule(&a),
                other => {
                    return Err(Error::Parse(format!(
                        "solve-connection needs a comodule document, found {}",
                        doc_kind(&other)
                    )))
                }
            };
            solve_connection(&mut b, &pa, *unital, source)?;
            format!("solve-connection-{}", pa.name())
        }
        Request::Scenario { scenario } => {
            run_operation(&mut b, scenario, &loader, source)?;
            scenario.id.clone()
        }
    };
    Ok(b.finish(id, request, started))
}

fn doc_kind(l: &Loaded) -> &'static str {
    match l {
        Loaded::Group(_) => "group",
        Loaded::GSet(_) => "gset",
        Loaded::Algebra(_) => "algebra",
        Loaded::Hopf(_) => "hopf",
        Loaded::Comodule(_) => "comodule",
        Loaded::Scenario(_) => "scenario",
    }
}

fn check_document(b: &mut Builder, loaded: &Loaded, exec: Exec) -> Result<()> {
    match loaded {
        Loaded::Group(g) => {
            b.dim("order", g.order());
            b.verdict("group axioms", true);
        }
        Loaded::GSet(a) => {
            b.dim("points", a.len());
            b.dim("orbits", a.orbits().len());
            b.verdict("action axioms", true);
            b.answers.insert("free".into(), is_free(a));
        }
        Loaded::Algebra(a) => {
            b.dim("algebra", a.dim());
            b.report("algebra axioms", check_algebra_with(a, exec));
        }
        Loaded::Hopf(h) => {
            b.dim("hopf", h.dim());
            b.report("hopf axioms", check_hopf(h));
        }
        Loaded::Comodule(pa) => {
            b.dim("algebra", pa.algebra().dim());
            b.dim("hopf", pa.hopf().dim());
            b.report("hopf axioms", check_hopf(pa.hopf()));
            b.report("algebra axioms", check_algebra_with(pa.algebra(), exec));
            b.report("comodule axioms", check_comodule(pa));
        }
        Loaded::Scenario(_) => {
            return Err(Error::Invalid(
                "scenario files are run with the fusion or classical commands".into(),
            ))
        }
    }
    Ok(())
}

fn solve_connection(b: &mut Builder, pa: &ComoduleAlgebra, unital: bool, source: Source<'_>) -> Result<()> {
    b.dim("algebra", pa.algebra().dim());
    b.dim("hopf", pa.hopf().dim());
    let comodule_report = check_comodule(pa);
    let ok = comodule_report.passed();
    b.report("comodule axioms", comodule_report);
    if !ok {
        return Ok(());
    }
    let coinv = coinvariants(pa)?;
    b.dim("coinvariants", coinv.dim());
    let bt = balanced_tensor(pa, &coinv);
    b.dim("balanced tensor", bt.dim());
    let can = canonical_map(pa, &bt)?;
    b.answers.insert("canonical map bijective".into(), can.bijective);
    b.matrix("can", &can.map);

    let search = source.connection("ell", pa, unital)?;
    b.search("ell", &search);
    b.answers.insert("principal".into(), search.is_feasible());
    match &search {
        ConnectionSearch::Feasible(ell) => {
            b.report("strong connection", check_strong_connection(pa, ell));
            if unital {
                b.verdict("ℓ(1) = 1⊗1", ell.unital);
            }
            let inv = translation_inverse(pa, ell)?;
            b.verdict("can∘L = id", inv.can_after_l_is_id);
            b.verdict("L∘can = id", inv.l_after_can_is_id);
            b.matrix("L", &inv.map);
        }
        ConnectionSearch::Infeasible(_) => b.infeasible = true,
    }
    Ok(())
}

fn need<T: Copy>(v: Option<T>, field: &str, s: &ScenarioFile) -> Result<T> {
    v.ok_or_else(|| {
        Error::Invalid(format!(
            "scenario {}: operation {} needs `{field}`",
            s.id,
            s.operation.name()
        ))
    })
}

fn need_ref<'a>(v: &'a Option<Ref>, field: &str, s: &ScenarioFile) -> Result<&'a Ref> {
    v.as_ref().ok_or_else(|| {
        Error::Invalid(format!(
            "scenario {}: operation {} needs `{field}`",
            s.id,
            s.operation.name()
        ))
    })
}

fn positive(m: usize, field: &str) -> Result<usize> {
    if m == 0 {
        return Err(Error::Invalid(format!("`{field}` must be at least 1")));
    }
    Ok(m)
}

fn run_operation(b: &mut Builder, s: &ScenarioFile, loader: &Loader, source: Source<'_>) -> Result<()> {
    match s.operation {
        Operation::Fusion => {
            let m = positive(need(s.m, "m", s)?, "m")?;
            let a1 = loader.algebra(need_ref(&s.a1, "a1", s)?)?;
            let a2 = loader.algebra(need_ref(&s.a2, "a2", s)?)?;
            let chain = ChainInterval::new(m)?;
            let f = build_fusion(chain.base(), a1, a2)?;
            b.dim("ambient", f.ambient.dim());
            b.dim("fusion", f.dim());
            b.matrix("carrier", &f.carrier.inclusion());
            b.report("fusion algebra axioms", check_algebra_with(&f.algebra(), source.exec()));
        }
        Operation::EquivariantFusion => {
            let m = positive(need(s.m, "m", s)?, "m")?;
            let pa = loader.comodule(need_ref(&s.comodule, "comodule", s)?)?;
            let chain = ChainInterval::new(m)?;
            let ef = build_equivariant_fusion(chain.base(), &pa)?;
            b.dim("fusion", ef.dim());
            b.dim("coinvariants", coinvariants(ef.comodule())?.dim());
            b.matrix("carrier", &ef.carrier().inclusion());
            b.matrix("coaction", ef.comodule().coaction());
            b.report("restricted coaction", ef.corestriction.clone());
            b.report("fusion comodule axioms", check_comodule(ef.comodule()));
        }
        Operation::TheoremMain => theorem_main(b, s, loader, source)?,
        Operation::Pullback => {
            let m_a = positive(need(s.m_a, "m_a", s)?, "m_a")?;
            let m_b = positive(need(s.m_b, "m_b", s)?, "m_b")?;
            let pa = loader.comodule(need_ref(&s.comodule, "comodule", s)?)?;
            let r = pullback_identification(m_a, m_b, &pa)?;
            b.dim("fiber product", r.fiber_dim);
            b.dim("fusion", r.fusion_dim);
            b.verdict("dimensions agree", r.fiber_dim == r.fusion_dim);
            b.matrix("iso", &r.iso);
            b.report("pullback isomorphism", r.report);
        }
        Operation::IsFree => {
            let a = loader.gset(need_ref(&s.gset, "gset", s)?)?;
            b.dim("points", a.len());
            b.dim("orbits", a.orbits().len());
            b.answers.insert("free".into(), is_free(&a));
        }
        Operation::DiscreteJoin => {
            let (x, y) = (need(s.x, "x", s)?, need(s.y, "y", s)?);
            let m = positive(need(s.m, "m", s)?, "m")?;
            let j = discrete_join(x, y, m)?;
            b.dim("points", j.points);
            b.verdict(
                "point count |Y| + (m-1)|X||Y| + |X|",
                j.points == y + (m - 1) * x * y + x,
            );
        }
        Operation::GaugedJoinIso => {
            let a = loader.gset(need_ref(&s.gset, "gset", s)?)?;
            let m = positive(need(s.m, "m", s)?, "m")?;
            let r = gauged_join_iso(&a, m)?;
            b.dim("diagonal join points", r.join_points);
            b.dim("gauged join points", r.gauged_points);
            b.report("equivariant bijection", r.report);
        }
        Operation::FunOfJoinVsFusion => {
            let (x, y) = (need(s.x, "x", s)?, need(s.y, "y", s)?);
            let m = positive(need(s.m, "m", s)?, "m")?;
            let r = fun_of_join_vs_fusion(x, y, m)?;
            b.dim("join points", r.join_points);
            b.dim("fusion", r.fusion_dim);
            b.verdict("dimensions agree", r.join_points == r.fusion_dim);
            b.matrix("iso", &r.iso);
            b.report("algebra isomorphism", r.report);
        }
        Operation::DiagonalJoinFreeness => {
            let a = loader.gset(need_ref(&s.gset, "gset", s)?)?;
            let m = positive(need(s.m, "m", s)?, "m")?;
            let r = diagonal_join_freeness_with(&a, m, |ef| source.connection("fusion ell", ef, false))?;
            b.dim("gauged join points", r.gauged_points);
            b.dim("fusion", r.fusion_dim);
            b.search("fusion ell", &r.search);
            b.verdict("action on gauged join free", r.action_free);
            b.verdict("fusion principal", r.principal);
            if let Some(rep) = r.connection_report {
                b.report("fusion strong connection", rep);
            }
        }
    }
    Ok(())
}

fn theorem_main(b: &mut Builder, s: &ScenarioFile, loader: &Loader, source: Source<'_>) -> Result<()> {
    let m = positive(need(s.m, "m", s)?, "m")?;
    let profile = s
        .profile
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!("scenario {}: theorem-main needs `profile`", s.id)))?
        .iter()
        .enumerate()
        .map(|(k, x)| parse_scalar(x).map_err(|e| Error::Parse(format!("profile[{k}]: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let chain = ChainInterval::new(m)?;
    let sq = make_sqrt_pair(&chain, &profile)?;
    let pa = loader.comodule(need_ref(&s.comodule, "comodule", s)?)?;

    let input = match source.connection("ell", &pa, s.unital)? {
        ConnectionSearch::Feasible(c) => c,
        ConnectionSearch::Infeasible(_) => {
            return Err(Error::Precondition(format!(
                "{} admits no strong connection",
                pa.name()
            )))
        }
    };
    b.matrix("ell", &input.map);
    let t = verify_theorem_with(
        chain.base(),
        &pa,
        &sq,
        input,
        |ef| source.connection("fusion ell", ef, false),
        source.exec(),
    )?;
    b.dim("fusion", t.fusion_dim);
    b.dim("coinvariants", t.coinvariants_dim);
    b.report("input connection", t.input_report.clone());
    if s.unital {
        b.verdict("input ℓ(1) = 1⊗1", t.input_connection.unital);
    }
    b.report("fusion comodule", t.comodule_report.clone());
    b.report("lifted connection", t.lifted.report.clone());
    b.matrix("lifted ambient", &t.lifted.ambient_map);
    b.search("fusion ell", &t.solver.certificate);
    if let Some(r) = &t.solver_report {
        b.report("fusion connection from solver", r.clone());
    }
    b.verdict("solver finds fusion principal", t.solver_verdict());
    b.verdict(
        "constructive and solver verdicts agree",
        t.constructive() == t.solver_verdict(),
    );
    if let Some(lifted) = &t.lifted.connection {
        b.matrix("lifted", &lifted.map);
        let ef = t.fusion.comodule();
        let coinv = coinvariants(ef)?;
        let bt = balanced_tensor(ef, &coinv);
        let can = canonical_map(ef, &bt)?;
        b.matrix("can", &can.map);
        let inv = translation_inverse(ef, lifted)?;
        b.matrix("L", &inv.map);
        b.verdict("can∘L = id", inv.can_after_l_is_id);
        b.verdict("L∘can = id", inv.l_after_can_is_id);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(json: &str) -> ScenarioFile {
        match crate::io::parse_document(json, "test").unwrap() {
            Document::Scenario(s) => s,
            _ => unreachable!(),
        }
    }

    #[test]
    fn theorem_certificate_replays() {
        let s = scenario(
            r#"{"kind": "scenario", "id": "z2", "operation": "theorem-main",
                "comodule": "builtin:regular(Z/2)", "m": 2, "profile": ["0", "3/5", "1"]}"#,
        );
        let cert = run_scenario(&s, &Loader::new("."), Exec::Sequential).unwrap();
        assert_eq!(cert.outcome, Outcome::Pass, "{}", cert.to_text());
        assert_eq!(cert.dimensions["fusion"], 8);
        for k in ["ell", "lifted", "fusion ell", "L", "can"] {
            assert!(cert.matrices.contains_key(k), "{k}");
        }
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        let r = replay(&back).unwrap();
        assert!(r.reproduced(), "{:?}", r.differences);
        assert_eq!(r.replayed.canonical_json(), cert.canonical_json());
    }

    #[test]
    fn infeasible_connection_replays_from_multipliers() {
        let req = Request::SolveConnection {
            comodule: Document::Scenario(scenario(r#"{"kind": "scenario", "id": "x", "operation": "is-free"}"#)),
            unital: false,
        };
        assert!(run(&req, &Loader::new("."), Exec::Sequential).is_err());

        let point = crate::io::parse_document(
            r#"{"kind": "gset", "group": "builtin:Z/2", "action": [[0, 0]]}"#,
            "test",
        )
        .unwrap();
        let req = Request::SolveConnection {
            comodule: point,
            unital: false,
        };
        let cert = run(&req, &Loader::new("."), Exec::Parallel).unwrap();
        assert_eq!(cert.outcome, Outcome::Infeasible);
        assert!(cert.matrices.contains_key("ell infeasibility"));
        assert!(replay(&cert).unwrap().reproduced());
    }

    #[test]
    fn tampered_connection_fails_replay() {
        let s = scenario(
            r#"{"kind": "scenario", "id": "z3", "operation": "diagonal-join-freeness",
                "gset": "builtin:regular(Z/3)", "m": 1}"#,
        );
        let cert = run_scenario(&s, &Loader::new("."), Exec::Parallel).unwrap();
        assert!(cert.passed(), "{}", cert.to_text());
        let mut bad = cert.clone();
        if let Some(MatrixData::Sparse { entries, .. }) = bad.matrices.get_mut("fusion ell") {
            entries[0].2 = format!("{}1", entries[0].2);
        }
        let r = replay(&bad).unwrap();
        assert!(!r.reproduced());
        assert_eq!(r.replayed.outcome, Outcome::AxiomFailure);
    }

    #[test]
    fn missing_parameter_is_rejected_before_work() {
        let s =
            scenario(r#"{"kind": "scenario", "id": "p", "operation": "pullback", "comodule": "builtin:regular(Z/2)"}"#);
        let err = run_scenario(&s, &Loader::new("."), Exec::Sequential).unwrap_err();
        assert!(err.to_string().contains("m_a"), "{err}");
    }
}
