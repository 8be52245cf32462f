//! JSON documents for groups, G-sets, algebras, Hopf algebras, comodule
//! algebras and scenarios. Rationals are strings `"p/q"`; structure
//! constants are sparse `[i, j, k, "p/q"]` entries.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::FDAlgebra;
use crate::classical::{fun_comodule, FiniteGSet, FiniteGroup};
use crate::comodule::ComoduleAlgebra;
use crate::error::{Error, Result};
use crate::hopf::{function_hopf, group_hopf, HopfAlgebra};
use crate::linalg::{format_scalar, parse_scalar, LinearMap, Space, SparseVec};

/// A matrix, either as dense rows or sparse `[row, col, "p/q"]` entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixData {
    Sparse {
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, String)>,
    },
    Dense(Vec<Vec<String>>),
}

impl MatrixData {
    pub fn sparse(map: &LinearMap) -> Self {
        MatrixData::Sparse {
            rows: map.rows(),
            cols: map.cols(),
            entries: map
                .triples()
                .into_iter()
                .map(|(i, j, x)| (i, j, format_scalar(&x)))
                .collect(),
        }
    }

    pub fn to_map(&self, source: &Space, target: &Space, field: &str) -> Result<LinearMap> {
        let mismatch = |what: String| Error::Parse(format!("{field}: {what}"));
        match self {
            MatrixData::Sparse { rows, cols, entries } => {
                if *rows != target.dim() || *cols != source.dim() {
                    return Err(mismatch(format!(
                        "shape {rows}×{cols}, expected {}×{}",
                        target.dim(),
                        source.dim()
                    )));
                }
                let mut triples = Vec::with_capacity(entries.len());
                for (k, (i, j, x)) in entries.iter().enumerate() {
                    if i >= rows || j >= cols {
                        return Err(mismatch(format!("entry {k} at ({i}, {j}) out of range")));
                    }
                    triples.push((*i, *j, scalar(x, &format!("{field}.entries[{k}]"))?));
                }
                LinearMap::from_triples(source.clone(), target.clone(), &triples)
            }
            MatrixData::Dense(rows) => {
                if rows.len() != target.dim() {
                    return Err(mismatch(format!("{} rows, expected {}", rows.len(), target.dim())));
                }
                let mut parsed = Vec::with_capacity(rows.len());
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != source.dim() {
                        return Err(mismatch(format!(
                            "row {i} has {} entries, expected {}",
                            row.len(),
                            source.dim()
                        )));
                    }
                    parsed.push(
                        row.iter()
                            .enumerate()
                            .map(|(j, x)| scalar(x, &format!("{field}[{i}][{j}]")))
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                LinearMap::from_dense(source.clone(), target.clone(), &parsed)
            }
        }
    }
}

fn scalar(text: &str, field: &str) -> Result<crate::linalg::Scalar> {
    parse_scalar(text).map_err(|e| Error::Parse(format!("{field}: {e}")))
}

fn dense_vector(values: &[String], dim: usize, field: &str) -> Result<SparseVec> {
    if values.len() != dim {
        return Err(Error::Parse(format!(
            "{field}: {} entries, expected {dim}",
            values.len()
        )));
    }
    let parsed = values
        .iter()
        .enumerate()
        .map(|(i, x)| scalar(x, &format!("{field}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseVec::from_dense(&parsed))
}

/// Either a file path (relative to the referencing file), a builtin name
/// such as `"builtin:Fun(Z/3)"`, or an inline document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref {
    Name(String),
    Inline(Box<Document>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub elements: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetFile {
    pub group: Ref,
    /// `action[x][g] = x·g`.
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub dim: Option<usize>,
    pub products: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfFile {
    pub algebra: Ref,
    pub coproduct: MatrixData,
    pub counit: MatrixData,
    pub antipode: MatrixData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_inv: Option<MatrixData>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleFile {
    pub algebra: Ref,
    pub hopf: Ref,
    pub coaction: MatrixData,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    Fusion,
    EquivariantFusion,
    TheoremMain,
    Pullback,
    IsFree,
    DiscreteJoin,
    GaugedJoinIso,
    FunOfJoinVsFusion,
    DiagonalJoinFreeness,
}

impl Operation {
    pub fn is_classical(self) -> bool {
        matches!(
            self,
            Operation::IsFree
                | Operation::DiscreteJoin
                | Operation::GaugedJoinIso
                | Operation::FunOfJoinVsFusion
                | Operation::DiagonalJoinFreeness
        )
    }

    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub id: String,
    pub operation: Operation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comodule: Option<Ref>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gset: Option<Ref>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<Ref>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<Ref>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unital: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Group(GroupFile),
    #[serde(rename = "gset")]
    GSet(GSetFile),
    Algebra(AlgebraFile),
    Hopf(HopfFile),
    Comodule(ComoduleFile),
    Scenario(ScenarioFile),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::GSet(_) => "gset",
            Document::Algebra(_) => "algebra",
            Document::Hopf(_) => "hopf",
            Document::Comodule(_) => "comodule",
            Document::Scenario(_) => "scenario",
        }
    }
}

/// Parses a document. Syntax errors carry line and column; shape errors
/// carry the path of the offending field.
pub fn parse_document(text: &str, origin: &str) -> Result<Document> {
    let mut value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("{origin}: {e}")))?;
    let kind = value
        .as_object_mut()
        .and_then(|o| o.remove("kind"))
        .ok_or_else(|| Error::Parse(format!("{origin}: missing `kind`")))?;
    let kind = kind
        .as_str()
        .ok_or_else(|| Error::Parse(format!("{origin}: `kind` must be a string")))?;
    fn typed<T: serde::de::DeserializeOwned>(value: serde_json::Value, origin: &str) -> Result<T> {
        serde_path_to_error::deserialize(value).map_err(|e| {
            let path = e.path().to_string();
            Error::Parse(format!("{origin}: at `{path}`: {}", e.into_inner()))
        })
    }
    Ok(match kind {
        "group" => Document::Group(typed(value, origin)?),
        "gset" => Document::GSet(typed(value, origin)?),
        "algebra" => Document::Algebra(typed(value, origin)?),
        "hopf" => Document::Hopf(typed(value, origin)?),
        "comodule" => Document::Comodule(typed(value, origin)?),
        "scenario" => Document::Scenario(typed(value, origin)?),
        other => return Err(Error::Parse(format!("{origin}: unknown kind `{other}`"))),
    })
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_document(&text, &path.display().to_string())
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            name: Some(g.name().to_string()),
            elements: Some((0..g.order()).map(|a| g.element_name(a).to_string()).collect()),
            table: g.table().to_vec(),
        }
    }
}

impl GSetFile {
    pub fn from_gset(a: &FiniteGSet) -> Self {
        GSetFile {
            group: Ref::Inline(Box::new(Document::Group(GroupFile::from_group(a.group())))),
            action: a.table().to_vec(),
        }
    }
}

impl AlgebraFile {
    pub fn from_algebra(a: &FDAlgebra) -> Self {
        AlgebraFile {
            name: Some(a.name().to_string()),
            basis: Some(a.space().labels()),
            dim: None,
            products: a
                .structure_triples()
                .into_iter()
                .map(|(i, j, k, x)| (i, j, k, format_scalar(&x)))
                .collect(),
            unit: a.unit().to_dense(a.dim()).iter().map(format_scalar).collect(),
        }
    }
}

impl HopfFile {
    pub fn from_hopf(h: &HopfAlgebra) -> Self {
        HopfFile {
            algebra: Ref::Inline(Box::new(Document::Algebra(AlgebraFile::from_algebra(h.algebra())))),
            coproduct: MatrixData::sparse(h.coproduct()),
            counit: MatrixData::sparse(h.counit()),
            antipode: MatrixData::sparse(h.antipode()),
            antipode_inv: Some(MatrixData::sparse(h.antipode_inv())),
        }
    }
}

impl ComoduleFile {
    pub fn from_comodule(pa: &ComoduleAlgebra) -> Self {
        ComoduleFile {
            algebra: Ref::Inline(Box::new(Document::Algebra(AlgebraFile::from_algebra(pa.algebra())))),
            hopf: Ref::Inline(Box::new(Document::Hopf(HopfFile::from_hopf(pa.hopf())))),
            coaction: MatrixData::sparse(pa.coaction()),
        }
    }
}

/// Anything a document can describe.
#[derive(Clone, Debug)]
pub enum Loaded {
    Group(Arc<FiniteGroup>),
    GSet(FiniteGSet),
    Algebra(Arc<FDAlgebra>),
    Hopf(Arc<HopfAlgebra>),
    Comodule(ComoduleAlgebra),
    Scenario(ScenarioFile),
}

impl Loaded {
    fn kind(&self) -> &'static str {
        match self {
            Loaded::Group(_) => "group",
            Loaded::GSet(_) => "gset",
            Loaded::Algebra(_) => "algebra",
            Loaded::Hopf(_) => "hopf",
            Loaded::Comodule(_) => "comodule",
            Loaded::Scenario(_) => "scenario",
        }
    }
}

/// Resolves references relative to a base directory.
#[derive(Clone, Debug)]
pub struct Loader {
    base: PathBuf,
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Loader { base: base.into() }
    }

    /// Loader for references inside the file at `path`.
    pub fn for_file(path: &Path) -> Self {
        Loader::new(path.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    pub fn load_file(path: &Path) -> Result<Loaded> {
        Loader::for_file(path).load(&read_document(path)?)
    }

    pub fn load(&self, doc: &Document) -> Result<Loaded> {
        Ok(match doc {
            Document::Group(g) => Loaded::Group(Arc::new(self.group_file(g)?)),
            Document::GSet(a) => Loaded::GSet(self.gset_file(a)?),
            Document::Algebra(a) => Loaded::Algebra(Arc::new(algebra_file(a)?)),
            Document::Hopf(h) => Loaded::Hopf(Arc::new(self.hopf_file(h)?)),
            Document::Comodule(c) => Loaded::Comodule(self.comodule_file(c)?),
            Document::Scenario(s) => Loaded::Scenario(s.clone()),
        })
    }

    fn resolve(&self, r: &Ref, expected: &str) -> Result<Loaded> {
        match r {
            Ref::Inline(doc) => self.load(doc),
            Ref::Name(name) => match name.strip_prefix("builtin:") {
                Some(b) => builtin(b, expected),
                None => {
                    let path = self.base.join(name);
                    Loader::load_file(&path)
                }
            },
        }
    }

    fn wrong_kind(expected: &str, got: &Loaded) -> Error {
        Error::Parse(format!("expected a {expected} document, found {}", got.kind()))
    }

    pub fn group(&self, r: &Ref) -> Result<Arc<FiniteGroup>> {
        match self.resolve(r, "group")? {
            Loaded::Group(g) => Ok(g),
            other => Err(Self::wrong_kind("group", &other)),
        }
    }

    pub fn gset(&self, r: &Ref) -> Result<FiniteGSet> {
        match self.resolve(r, "gset")? {
            Loaded::GSet(a) => Ok(a),
            other => Err(Self::wrong_kind("gset", &other)),
        }
    }

    pub fn algebra(&self, r: &Ref) -> Result<Arc<FDAlgebra>> {
        match self.resolve(r, "algebra")? {
            Loaded::Algebra(a) => Ok(a),
            Loaded::Hopf(h) => Ok(h.algebra().clone()),
            Loaded::Comodule(c) => Ok(c.algebra().clone()),
            other => Err(Self::wrong_kind("algebra", &other)),
        }
    }

    pub fn hopf(&self, r: &Ref) -> Result<Arc<HopfAlgebra>> {
        match self.resolve(r, "hopf")? {
            Loaded::Hopf(h) => Ok(h),
            other => Err(Self::wrong_kind("hopf", &other)),
        }
    }

    pub fn comodule(&self, r: &Ref) -> Result<ComoduleAlgebra> {
        match self.resolve(r, "comodule")? {
            Loaded::Comodule(c) => Ok(c),
            Loaded::GSet(a) => Ok(fun_comodule(&a)),
            other => Err(Self::wrong_kind("comodule", &other)),
        }
    }

    fn group_file(&self, g: &GroupFile) -> Result<FiniteGroup> {
        let group = FiniteGroup::from_table(g.name.clone().unwrap_or_else(|| "G".into()), g.table.clone())?;
        match &g.elements {
            Some(names) => group.with_element_names(names.clone()),
            None => Ok(group),
        }
    }

    fn gset_file(&self, a: &GSetFile) -> Result<FiniteGSet> {
        FiniteGSet::new(self.group(&a.group)?, a.action.clone())
    }

    fn hopf_file(&self, h: &HopfFile) -> Result<HopfAlgebra> {
        let alg = self.algebra(&h.algebra)?;
        let s = alg.space();
        let ss = s.tensor(s);
        let k = Space::scalars();
        let coproduct = h.coproduct.to_map(s, &ss, "coproduct")?;
        let counit = h.counit.to_map(s, &k, "counit")?;
        let antipode = h.antipode.to_map(s, s, "antipode")?;
        let antipode_inv = h
            .antipode_inv
            .as_ref()
            .map(|m| m.to_map(s, s, "antipode_inv"))
            .transpose()?;
        HopfAlgebra::new(alg, coproduct, counit, antipode, antipode_inv)
    }

    fn comodule_file(&self, c: &ComoduleFile) -> Result<ComoduleAlgebra> {
        let p = self.algebra(&c.algebra)?;
        let h = self.hopf(&c.hopf)?;
        let target = p.space().tensor(h.space());
        let coaction = c.coaction.to_map(p.space(), &target, "coaction")?;
        ComoduleAlgebra::new(p, h, coaction)
    }
}

fn algebra_file(a: &AlgebraFile) -> Result<FDAlgebra> {
    let space = match (&a.basis, a.dim) {
        (Some(labels), dim) => {
            if dim.is_some_and(|d| d != labels.len()) {
                return Err(Error::Parse(format!(
                    "basis has {} labels but dim is {}",
                    labels.len(),
                    dim.unwrap_or(0)
                )));
            }
            Space::new(labels.clone()).map_err(|e| Error::Parse(format!("basis: {e}")))?
        }
        (None, Some(d)) => Space::indexed("e", d),
        (None, None) => return Err(Error::Parse("algebra needs `basis` or `dim`".into())),
    };
    let n = space.dim();
    let mut triples = Vec::with_capacity(a.products.len());
    for (k, (i, j, l, x)) in a.products.iter().enumerate() {
        if *i >= n || *j >= n || *l >= n {
            return Err(Error::Parse(format!("products[{k}]: index out of range for dim {n}")));
        }
        triples.push((*i, *j, *l, scalar(x, &format!("products[{k}]"))?));
    }
    let unit = dense_vector(&a.unit, n, "unit")?;
    FDAlgebra::from_triples(a.name.clone().unwrap_or_else(|| "A".into()), space, &triples, unit)
}

/// `trivial`, `Z/n`, `S3`, and products `A×B` (also written `AxB`).
pub fn builtin_group(name: &str) -> Result<FiniteGroup> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once('×').or_else(|| name.split_once('x')) {
        return Ok(builtin_group(a)?.product(&builtin_group(b)?));
    }
    match name {
        "trivial" | "1" => Ok(FiniteGroup::trivial()),
        "S3" => Ok(FiniteGroup::symmetric(3)),
        _ => {
            let n = name
                .strip_prefix("Z/")
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Parse(format!("unknown builtin group `{name}`")))?;
            Ok(FiniteGroup::cyclic(n))
        }
    }
}

fn call<'a>(text: &'a str, head: &str) -> Option<Vec<&'a str>> {
    let inner = text.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).collect())
}

fn count(text: &str) -> Result<usize> {
    text.parse()
        .map_err(|_| Error::Parse(format!("expected a count, found `{text}`")))
}

type GSetMaker<'a> = &'a dyn Fn(Arc<FiniteGroup>, &[&str]) -> Result<FiniteGSet>;

fn builtin_gset(text: &str) -> Option<Result<FiniteGSet>> {
    let build = |args: Vec<&str>, f: GSetMaker| {
        let g = Arc::new(builtin_group(args[0])?);
        f(g, &args[1..])
    };
    if let Some(args) = call(text, "regular") {
        return Some(build(args, &|g, _| Ok(FiniteGSet::regular(g))));
    }
    if let Some(args) = call(text, "trivial") {
        return Some(build(args, &|g, rest| {
            let n = rest.first().map_or(Ok(1), |r| count(r))?;
            Ok(FiniteGSet::trivial(g, n))
        }));
    }
    if let Some(args) = call(text, "free") {
        return Some(build(args, &|g, rest| {
            let copies = rest.first().map_or(Ok(1), |r| count(r))?;
            let one = FiniteGSet::regular(g.clone());
            let mut acc = FiniteGSet::trivial(g, 0);
            for _ in 0..copies {
                acc = acc.disjoint_union(&one)?;
            }
            Ok(acc)
        }));
    }
    None
}

/// Builtin names: groups (`Z/3`), G-sets and their function comodules
/// (`regular(Z/3)`, `trivial(Z/2,1)`, `free(Z/2,2)`), Hopf algebras (`k`,
/// `Fun(G)`, `k[G]`), algebras (`k`, `Fun(n)`, `M(n)`).
pub fn builtin(text: &str, expected: &str) -> Result<Loaded> {
    let text = text.trim();
    match expected {
        "group" => return Ok(Loaded::Group(Arc::new(builtin_group(text)?))),
        "gset" | "comodule" => {
            if let Some(a) = builtin_gset(text) {
                let a = a?;
                return Ok(if expected == "gset" {
                    Loaded::GSet(a)
                } else {
                    Loaded::Comodule(fun_comodule(&a))
                });
            }
        }
        _ => {}
    }
    if text == "k" {
        return Ok(if expected == "hopf" {
            Loaded::Hopf(Arc::new(HopfAlgebra::ground()))
        } else {
            Loaded::Algebra(Arc::new(FDAlgebra::ground()))
        });
    }
    if let Some(inner) = text.strip_prefix("k[").and_then(|t| t.strip_suffix(']')) {
        return Ok(Loaded::Hopf(Arc::new(group_hopf(&builtin_group(inner)?))));
    }
    if let Some(args) = call(text, "Fun") {
        if expected == "algebra" {
            if let Ok(n) = args[0].parse::<usize>() {
                return Ok(Loaded::Algebra(Arc::new(FDAlgebra::functions(
                    format!("Fun({n})"),
                    Space::indexed("x", n),
                ))));
            }
        }
        return Ok(Loaded::Hopf(Arc::new(function_hopf(&builtin_group(args[0])?))));
    }
    if let Some(args) = call(text, "M") {
        return Ok(Loaded::Algebra(Arc::new(FDAlgebra::matrices(count(args[0])?))));
    }
    Err(Error::Parse(format!("unknown builtin {expected} `{text}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::check_comodule;
    use crate::hopf::check_hopf;

    #[test]
    fn hopf_roundtrip_through_json() {
        let h = function_hopf(&FiniteGroup::cyclic(3));
        let doc = Document::Hopf(HopfFile::from_hopf(&h));
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back = parse_document(&text, "inline").unwrap();
        let Loaded::Hopf(h2) = Loader::new(".").load(&back).unwrap() else {
            panic!("kind")
        };
        assert!(h2.coproduct().same_matrix(h.coproduct()));
        assert!(check_hopf(&h2).passed());
    }

    #[test]
    fn dense_matrices_and_missing_inverse() {
        let text = r#"{
            "kind": "hopf",
            "algebra": {"kind": "algebra", "basis": ["d0", "d1"],
                        "products": [[0, 0, 0, "1"], [1, 1, 1, "1"]], "unit": ["1", "1"]},
            "coproduct": [["1","0"],["0","1"],["0","1"],["1","0"]],
            "counit": [["1", "0"]],
            "antipode": [["1","0"],["0","1"]]
        }"#;
        let doc = parse_document(text, "inline").unwrap();
        let Loaded::Hopf(h) = Loader::new(".").load(&doc).unwrap() else {
            panic!("kind")
        };
        assert!(check_hopf(&h).passed());
        assert!(h.antipode_inv().is_identity());
    }

    #[test]
    fn errors_name_the_field() {
        let err = parse_document(r#"{"kind": "algebra", "products": [[0, 0, 0, 1]], "unit": ["1"]}"#, "f").unwrap_err();
        assert!(err.to_string().contains("products"), "{err}");
        let doc = parse_document(
            r#"{"kind": "algebra", "dim": 1, "products": [[0, 0, 0, "1/0"]], "unit": ["1"]}"#,
            "f",
        )
        .unwrap();
        let err = Loader::new(".").load(&doc).unwrap_err();
        assert!(err.to_string().contains("products[0]"), "{err}");
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_group("Z/2×Z/2").unwrap().order(), 4);
        assert_eq!(builtin_group("Z/2xZ/2").unwrap().order(), 4);
        let Loaded::Comodule(pa) = builtin("free(Z/2,2)", "comodule").unwrap() else {
            panic!()
        };
        assert_eq!(pa.algebra().dim(), 4);
        assert!(check_comodule(&pa).passed());
        let Loaded::Hopf(h) = builtin("k[S3]", "hopf").unwrap() else {
            panic!()
        };
        assert_eq!(h.dim(), 6);
        assert!(builtin("Z/0", "group").is_err());
    }
}
