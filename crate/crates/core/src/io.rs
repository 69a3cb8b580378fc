//! JSON workspace documents.
//!
//! A document is either a single entity (an object with a `kind` field) or
//! a manifest `{"include": [...], "entities": [...]}`. Included paths are
//! relative to the including file. Entities refer to each other by `id`,
//! which must be unique within a workspace.
//!
//! ```json
//! {"kind": "ring", "id": "fib", "rank": 2, "labels": ["1", "t"], "unit": 0, "dual": [0, 1],
//!  "N": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]]}
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cohomology::Cocycle3;
use crate::equivariant::GroupAction;
use crate::functors::FunctorMatrix;
use crate::fusion_ring::FusionRing;
use crate::groups::{FiniteGroup, GroupExtension, GroupHom};
use crate::pointed::PointedCategory;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Entity {
    Group(GroupDoc),
    Ring(RingDoc),
    Hom(HomDoc),
    Sequence(SequenceDoc),
    Functor(FunctorDoc),
    Cocycle(CocycleDoc),
    Action(ActionDoc),
    Pointed(PointedDoc),
}

/// A group given by a multiplication table (identity at 0) or by
/// permutation generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

/// Fusion rules `N` as `[i, j, k, N_ij^k]` quadruples; absent means 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub id: String,
    pub rank: usize,
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<[u64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub id: String,
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

/// `1 -> N -> G -> Q -> 1`, either from two homs or from a normal subgroup
/// of a group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inclusion: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<usize>>,
}

/// `matrix[y][x]`: multiplicity of target simple `y` in the image of source
/// simple `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub id: String,
    pub source: String,
    pub target: String,
    pub matrix: Vec<Vec<u64>>,
}

/// Values in lexicographic order of `(g1, g2, g3)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    pub id: String,
    pub group: String,
    pub modulus: u64,
    pub values: Vec<u64>,
}

/// One basis permutation per group element, in element order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub id: String,
    pub group: String,
    pub ring: String,
    pub perms: Vec<Vec<usize>>,
}

/// `C(G, alpha)`; a missing cocycle means the zero cocycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointedDoc {
    pub id: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub include: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entities: Vec<Entity>,
}

impl Entity {
    pub fn id(&self) -> &str {
        match self {
            Entity::Group(d) => &d.id,
            Entity::Ring(d) => &d.id,
            Entity::Hom(d) => &d.id,
            Entity::Sequence(d) => &d.id,
            Entity::Functor(d) => &d.id,
            Entity::Cocycle(d) => &d.id,
            Entity::Action(d) => &d.id,
            Entity::Pointed(d) => &d.id,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Group(_) => "group",
            Entity::Ring(_) => "ring",
            Entity::Hom(_) => "hom",
            Entity::Sequence(_) => "sequence",
            Entity::Functor(_) => "functor",
            Entity::Cocycle(_) => "cocycle",
            Entity::Action(_) => "action",
            Entity::Pointed(_) => "pointed",
        }
    }

    fn rank(&self) -> usize {
        match self {
            Entity::Group(_) => 0,
            Entity::Ring(_) => 1,
            Entity::Hom(_) => 2,
            Entity::Sequence(_) => 3,
            Entity::Functor(_) => 4,
            Entity::Cocycle(_) => 5,
            Entity::Action(_) => 6,
            Entity::Pointed(_) => 7,
        }
    }

    pub fn group(id: &str, g: &FiniteGroup) -> Entity {
        Entity::Group(GroupDoc {
            id: id.into(),
            names: Some(g.names().to_vec()),
            table: Some(g.table().to_vec()),
            degree: None,
            generators: None,
        })
    }

    pub fn permutation_group(id: &str, degree: usize, generators: &[Vec<usize>]) -> Entity {
        Entity::Group(GroupDoc {
            id: id.into(),
            names: None,
            table: None,
            degree: Some(degree),
            generators: Some(generators.to_vec()),
        })
    }

    pub fn ring(id: &str, r: &FusionRing) -> Entity {
        Entity::Ring(RingDoc {
            id: id.into(),
            rank: r.rank(),
            labels: r.labels().to_vec(),
            unit: r.unit(),
            dual: r.duals().to_vec(),
            n: r.constants()
                .map(|((i, j, k), n)| [i as u64, j as u64, k as u64, n])
                .collect(),
        })
    }

    pub fn hom(id: &str, source: &str, target: &str, h: &GroupHom) -> Entity {
        Entity::Hom(HomDoc {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            map: h.map().to_vec(),
        })
    }

    pub fn functor(id: &str, source: &str, target: &str, f: &FunctorMatrix) -> Entity {
        Entity::Functor(FunctorDoc {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            matrix: f.matrix().to_vec(),
        })
    }

    pub fn cocycle(id: &str, group: &str, a: &Cocycle3) -> Entity {
        Entity::Cocycle(CocycleDoc {
            id: id.into(),
            group: group.into(),
            modulus: a.modulus(),
            values: a.values().to_vec(),
        })
    }

    pub fn action(id: &str, group: &str, ring: &str, a: &GroupAction) -> Entity {
        Entity::Action(ActionDoc {
            id: id.into(),
            group: group.into(),
            ring: ring.into(),
            perms: a.perms().to_vec(),
        })
    }
}

/// Where an entity or error comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub file: String,
    pub line: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "{}:{}", self.file, self.line)
        } else {
            write!(f, "{}", self.file)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("{file}: cannot read: {message}")]
    Io { file: String, message: String },
    #[error("{file}:{line}:{column}: parse error: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{at}: {kind} '{id}' refers to unknown {expected} '{reference}'")]
    Dangling {
        at: Location,
        kind: &'static str,
        id: String,
        expected: &'static str,
        reference: String,
    },
    #[error("{at}: duplicate id '{id}'")]
    Duplicate { at: Location, id: String },
    #[error("{at}: {kind} '{id}' is invalid: {message}")]
    Validation {
        at: Location,
        kind: &'static str,
        id: String,
        message: String,
    },
}

/// All errors found while loading; never empty.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct LoadErrors(pub Vec<LoadError>);

impl fmt::Display for LoadErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    /// Run the axiom checks (ring axioms, functor multiplicativity, action
    /// axioms, cocycle identity). Structural checks always run.
    pub check_axioms: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { check_axioms: true }
    }
}

/// Resolved entities by id, plus their source documents.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub rings: BTreeMap<String, Arc<FusionRing>>,
    pub homs: BTreeMap<String, GroupHom>,
    pub sequences: BTreeMap<String, GroupExtension>,
    pub functors: BTreeMap<String, FunctorMatrix>,
    pub cocycles: BTreeMap<String, Cocycle3>,
    pub actions: BTreeMap<String, GroupAction>,
    pub pointed: BTreeMap<String, PointedCategory>,
    documents: Vec<(Location, Entity)>,
}

pub fn load(path: impl AsRef<Path>) -> Result<Workspace, LoadErrors> {
    load_many(&[path.as_ref().to_path_buf()], LoadOptions::default())
}

pub fn load_with(path: impl AsRef<Path>, opts: LoadOptions) -> Result<Workspace, LoadErrors> {
    load_many(&[path.as_ref().to_path_buf()], opts)
}

/// Loads several documents into one workspace.
pub fn load_many(paths: &[PathBuf], opts: LoadOptions) -> Result<Workspace, LoadErrors> {
    let mut entities = Vec::new();
    let mut errors = Vec::new();
    let mut visited = BTreeSet::new();
    for p in paths {
        collect_file(p, &mut visited, &mut entities, &mut errors);
    }
    if !errors.is_empty() {
        return Err(LoadErrors(errors));
    }
    Workspace::resolve(entities, opts)
}

/// Parses a document held in memory; `include` is resolved relative to the
/// current directory.
pub fn load_str(name: &str, text: &str, opts: LoadOptions) -> Result<Workspace, LoadErrors> {
    let mut entities = Vec::new();
    let mut errors = Vec::new();
    match parse_document(name, text) {
        Ok((manifest, found)) => {
            entities.extend(found);
            let mut visited = BTreeSet::new();
            for inc in manifest.include {
                collect_file(Path::new(&inc), &mut visited, &mut entities, &mut errors);
            }
        }
        Err(e) => errors.push(e),
    }
    if !errors.is_empty() {
        return Err(LoadErrors(errors));
    }
    Workspace::resolve(entities, opts)
}

fn collect_file(
    path: &Path,
    visited: &mut BTreeSet<PathBuf>,
    out: &mut Vec<(Location, Entity)>,
    errors: &mut Vec<LoadError>,
) {
    let name = path.display().to_string();
    let key = path.canonicalize().unwrap_or_else(|_| path.to_path_buf());
    if !visited.insert(key) {
        return;
    }
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            errors.push(LoadError::Io {
                file: name,
                message: e.to_string(),
            });
            return;
        }
    };
    match parse_document(&name, &text) {
        Ok((manifest, found)) => {
            out.extend(found);
            let base = path.parent().unwrap_or(Path::new(""));
            for inc in manifest.include {
                collect_file(&base.join(inc), visited, out, errors);
            }
        }
        Err(e) => errors.push(e),
    }
}

fn parse_error(file: &str, e: serde_json::Error) -> LoadError {
    LoadError::Parse {
        file: file.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn parse_document(
    file: &str,
    text: &str,
) -> Result<(Manifest, Vec<(Location, Entity)>), LoadError> {
    if text.trim().is_empty() {
        return Ok((Manifest::default(), Vec::new()));
    }
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(file, e))?;
    let manifest = if value.get("kind").is_some() {
        Manifest {
            include: Vec::new(),
            entities: vec![serde_json::from_str(text).map_err(|e| parse_error(file, e))?],
        }
    } else {
        serde_json::from_str::<Manifest>(text).map_err(|e| parse_error(file, e))?
    };
    let located = manifest
        .entities
        .iter()
        .map(|e| {
            (
                Location {
                    file: file.into(),
                    line: line_of_id(text, e.id()),
                },
                e.clone(),
            )
        })
        .collect();
    Ok((
        Manifest {
            include: manifest.include,
            entities: Vec::new(),
        },
        located,
    ))
}

fn line_of_id(text: &str, id: &str) -> usize {
    let quoted = serde_json::to_string(id).unwrap_or_default();
    text.lines()
        .position(|l| {
            l.find("\"id\"").is_some_and(|p| {
                l[p + 4..]
                    .trim_start()
                    .trim_start_matches(':')
                    .trim_start()
                    .starts_with(&quoted)
            })
        })
        .map_or(0, |i| i + 1)
}

struct Resolver<'a> {
    ws: &'a mut Workspace,
    at: Location,
    kind: &'static str,
    id: String,
}

impl Resolver<'_> {
    fn dangling(&self, expected: &'static str, reference: &str) -> LoadError {
        LoadError::Dangling {
            at: self.at.clone(),
            kind: self.kind,
            id: self.id.clone(),
            expected,
            reference: reference.into(),
        }
    }

    fn invalid(&self, message: impl fmt::Display) -> LoadError {
        LoadError::Validation {
            at: self.at.clone(),
            kind: self.kind,
            id: self.id.clone(),
            message: message.to_string(),
        }
    }

    fn group(&self, r: &str) -> Result<Arc<FiniteGroup>, LoadError> {
        self.ws
            .groups
            .get(r)
            .cloned()
            .ok_or_else(|| self.dangling("group", r))
    }

    fn ring(&self, r: &str) -> Result<Arc<FusionRing>, LoadError> {
        self.ws
            .rings
            .get(r)
            .cloned()
            .ok_or_else(|| self.dangling("ring", r))
    }

    fn hom(&self, r: &str) -> Result<GroupHom, LoadError> {
        self.ws
            .homs
            .get(r)
            .cloned()
            .ok_or_else(|| self.dangling("hom", r))
    }
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a workspace from in-memory entities, with full validation.
    pub fn from_entities(entities: Vec<Entity>) -> Result<Workspace, LoadErrors> {
        let located = entities
            .into_iter()
            .map(|e| {
                (
                    Location {
                        file: "<memory>".into(),
                        line: 0,
                    },
                    e,
                )
            })
            .collect();
        Workspace::resolve(located, LoadOptions::default())
    }

    fn resolve(
        mut entities: Vec<(Location, Entity)>,
        opts: LoadOptions,
    ) -> Result<Workspace, LoadErrors> {
        let mut errors = Vec::new();
        let mut seen = BTreeSet::new();
        for (at, e) in &entities {
            if !seen.insert(e.id().to_string()) {
                errors.push(LoadError::Duplicate {
                    at: at.clone(),
                    id: e.id().into(),
                });
            }
        }
        if !errors.is_empty() {
            return Err(LoadErrors(errors));
        }
        let documents = entities.clone();
        entities.sort_by_key(|(_, e)| e.rank());
        let mut ws = Workspace::default();
        for (at, e) in entities {
            let mut r = Resolver {
                ws: &mut ws,
                at,
                kind: e.kind(),
                id: e.id().into(),
            };
            if let Err(err) = r.add(&e, opts) {
                errors.push(err);
            }
        }
        if errors.is_empty() {
            ws.documents = documents;
            Ok(ws)
        } else {
            Err(LoadErrors(errors))
        }
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn entities(&self) -> impl Iterator<Item = &Entity> {
        self.documents.iter().map(|(_, e)| e)
    }

    pub fn location(&self, id: &str) -> Option<&Location> {
        self.documents
            .iter()
            .find(|(_, e)| e.id() == id)
            .map(|(l, _)| l)
    }

    /// The whole workspace as one canonical manifest document.
    pub fn to_document(&self) -> String {
        let manifest = Manifest {
            include: Vec::new(),
            entities: self.entities().cloned().collect(),
        };
        to_canonical(&manifest)
    }

    /// Writes one file per entity plus `manifest.json` including them all.
    pub fn save_dir(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut include = Vec::new();
        for e in self.entities() {
            let name = format!("{}.json", e.id());
            std::fs::write(dir.join(&name), to_canonical(e))?;
            include.push(name);
        }
        let manifest = Manifest {
            include,
            entities: Vec::new(),
        };
        std::fs::write(dir.join("manifest.json"), to_canonical(&manifest))
    }
}

impl Resolver<'_> {
    fn add(&mut self, e: &Entity, opts: LoadOptions) -> Result<(), LoadError> {
        let id = self.id.clone();
        match e {
            Entity::Group(d) => {
                let g = match (&d.table, &d.generators) {
                    (Some(t), None) if d.degree.is_none() => {
                        FiniteGroup::from_table(t.clone(), d.names.clone())
                    }
                    (None, Some(gens)) if d.names.is_none() => {
                        let degree = d
                            .degree
                            .ok_or_else(|| self.invalid("generators need a degree"))?;
                        FiniteGroup::from_permutations(degree, gens)
                    }
                    _ => {
                        return Err(self.invalid(
                            "give either table (with optional names) or degree with generators",
                        ))
                    }
                }
                .map_err(|e| self.invalid(e))?;
                self.ws.groups.insert(id, Arc::new(g));
            }
            Entity::Ring(d) => {
                if d.rank != d.labels.len() {
                    return Err(self.invalid(format!(
                        "rank {} but {} labels",
                        d.rank,
                        d.labels.len()
                    )));
                }
                let constants =
                    d.n.iter()
                        .map(|&[i, j, k, n]| ((i as usize, j as usize, k as usize), n));
                let ring = FusionRing::new(d.labels.clone(), d.unit, d.dual.clone(), constants)
                    .map_err(|e| self.invalid(e))?;
                if opts.check_axioms {
                    if let Some(v) = ring.validate().violations.first() {
                        return Err(self.invalid(v));
                    }
                }
                self.ws.rings.insert(id, Arc::new(ring));
            }
            Entity::Hom(d) => {
                let h = GroupHom::new(
                    self.group(&d.source)?,
                    self.group(&d.target)?,
                    d.map.clone(),
                )
                .map_err(|e| self.invalid(e))?;
                self.ws.homs.insert(id, h);
            }
            Entity::Sequence(d) => {
                let ext = match (&d.inclusion, &d.projection, &d.group, &d.normal) {
                    (Some(i), Some(p), None, None) => {
                        GroupExtension::new(self.hom(i)?, self.hom(p)?)
                    }
                    (None, None, Some(g), Some(n)) => {
                        let set: BTreeSet<usize> = n.iter().copied().collect();
                        GroupExtension::from_normal_subgroup(&self.group(g)?, &set)
                    }
                    _ => {
                        return Err(self
                            .invalid("give either inclusion and projection or group and normal"))
                    }
                }
                .map_err(|e| self.invalid(e))?;
                self.ws.sequences.insert(id, ext);
            }
            Entity::Functor(d) => {
                let f = FunctorMatrix::new(
                    self.ring(&d.source)?,
                    self.ring(&d.target)?,
                    d.matrix.clone(),
                )
                .map_err(|e| self.invalid(e))?;
                if opts.check_axioms {
                    if let Some(v) = f.validate().violations.first() {
                        return Err(self.invalid(v));
                    }
                }
                self.ws.functors.insert(id, f);
            }
            Entity::Cocycle(d) => {
                let a = Cocycle3::new(self.group(&d.group)?, d.modulus, d.values.clone())
                    .map_err(|e| self.invalid(e))?;
                if opts.check_axioms && !a.is_cocycle() {
                    return Err(self.invalid("values fail the 3-cocycle identity"));
                }
                self.ws.cocycles.insert(id, a);
            }
            Entity::Action(d) => {
                let a =
                    GroupAction::new(self.group(&d.group)?, self.ring(&d.ring)?, d.perms.clone())
                        .map_err(|e| self.invalid(e))?;
                if opts.check_axioms {
                    if let Some(v) = a.validate().violations.first() {
                        return Err(self.invalid(v));
                    }
                }
                self.ws.actions.insert(id, a);
            }
            Entity::Pointed(d) => {
                let g = self.group(&d.group)?;
                let p = match &d.cocycle {
                    None => PointedCategory::untwisted(g),
                    Some(c) => {
                        let a = self
                            .ws
                            .cocycles
                            .get(c)
                            .cloned()
                            .ok_or_else(|| self.dangling("cocycle", c))?;
                        PointedCategory::new(g, a).map_err(|e| self.invalid(e))?
                    }
                };
                self.ws.pointed.insert(id, p);
            }
        }
        Ok(())
    }
}

/// Canonical text: sorted keys, two-space indentation, arrays of scalars on
/// one line.
pub fn to_canonical<S: Serialize>(value: &S) -> String {
    let v = serde_json::to_value(value).expect("documents serialize");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| " ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 2), Value::String(k.clone()));
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_ring::fibonacci;
    use crate::groups::named::*;

    #[test]
    fn empty_document() {
        let ws = load_str("empty", "", LoadOptions::default()).unwrap();
        assert!(ws.is_empty());
        let ws = load_str("empty", "{}", LoadOptions::default()).unwrap();
        assert!(ws.is_empty());
    }

    #[test]
    fn single_entity_document() {
        let text = to_canonical(&Entity::ring("fib", &fibonacci()));
        let ws = load_str("fib.json", &text, LoadOptions::default()).unwrap();
        assert_eq!(ws.rings["fib"].as_ref(), &fibonacci());
        let line = ws.location("fib").unwrap().line;
        assert!(text
            .lines()
            .nth(line - 1)
            .unwrap()
            .contains("\"id\": \"fib\""));
    }

    #[test]
    fn dangling_reference() {
        let text = r#"{"entities": [
            {"kind": "functor", "id": "F", "source": "nowhere", "target": "nowhere", "matrix": [[1]]}
        ]}"#;
        let err = load_str("w.json", text, LoadOptions::default()).unwrap_err();
        assert!(
            matches!(&err.0[0], LoadError::Dangling { reference, at, .. } if reference == "nowhere" && at.line == 2)
        );
    }

    #[test]
    fn parse_error_has_position() {
        let err = load_str(
            "w.json",
            "{\n  \"entities\": [,]\n}",
            LoadOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(&err.0[0], LoadError::Parse { line: 2, .. }));
        let err = load_str(
            "w.json",
            r#"{"kind": "ring", "id": "r", "bogus": 1}"#,
            LoadOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(&err.0[0], LoadError::Parse { .. }));
    }

    #[test]
    fn validation_failure_blocks_the_workspace() {
        let text = r#"{"kind": "ring", "id": "bad", "rank": 2, "labels": ["1", "x"], "unit": 0, "dual": [0, 1],
            "N": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]}"#;
        let err = load_str("bad.json", text, LoadOptions::default()).unwrap_err();
        assert!(matches!(&err.0[0], LoadError::Validation { id, .. } if id == "bad"));
        let ws = load_str(
            "bad.json",
            text,
            LoadOptions {
                check_axioms: false,
            },
        )
        .unwrap();
        assert!(!ws.rings["bad"].validate().is_valid());
    }

    #[test]
    fn duplicate_ids() {
        let g = Entity::group("G", &cyclic(2));
        let err = Workspace::from_entities(vec![g.clone(), g]).unwrap_err();
        assert!(matches!(&err.0[0], LoadError::Duplicate { .. }));
    }

    #[test]
    fn round_trip_is_bit_identical() {
        let s3 = symmetric(3);
        let entities = vec![
            Entity::group("S3", &s3),
            Entity::permutation_group("S3p", 3, &[vec![1, 0, 2], vec![1, 2, 0]]),
            Entity::group("Z2", &cyclic(2)),
            Entity::ring("fib", &fibonacci()),
            Entity::Sequence(SequenceDoc {
                id: "ext".into(),
                inclusion: None,
                projection: None,
                group: Some("S3".into()),
                normal: Some(s3.normal_subgroups().unwrap()[1].iter().copied().collect()),
            }),
            Entity::Pointed(PointedDoc {
                id: "C".into(),
                group: "Z2".into(),
                cocycle: None,
            }),
        ];
        let ws = Workspace::from_entities(entities).unwrap();
        assert_eq!(ws.groups["S3p"].order(), 6);
        let text = ws.to_document();
        let again = load_str("ws.json", &text, LoadOptions::default()).unwrap();
        assert_eq!(again.to_document(), text);
    }
}
