//! JSON documents declaring lattices, sub-universes, models, frames and
//! queries, and the registry they resolve into.
//!
//! ```json
//! {
//!   "imports": ["base.json"],
//!   "lattices": [{"name": "L", "elements": ["0", "a", "1"],
//!                 "covers": [["0", "a"], ["a", "1"]],
//!                 "neg": [["0", "1"], ["1", "0"]],
//!                 "filter": ["1"], "filters": {"F": ["a", "1"]}}],
//!   "twists": [{"name": "T", "base": "B", "filter": ["(1,0)"]}],
//!   "subuniverses": [{"name": "A", "lattice": "L", "members": ["0", "1"],
//!                     "negation_mode": "rigid"},
//!                    {"name": "T_B", "twist": "T", "kind": "boolean"}],
//!   "families": [{"name": "Tz", "twist": "T", "members": ["T_B"]}],
//!   "models": [{"name": "M", "lattice": "L",
//!               "worlds": [{"id": "w", "universe": "A"}],
//!               "edges": [["w", "w"]],
//!               "valuation": {"w": {"p": "1"}}, "filter": "F"}],
//!   "frames": [{"name": "F", "lattice": "L", "worlds": [], "edges": []}],
//!   "queries": [{"command": "eval", "model": "M", "world": "w",
//!                "formula": "[]p", "expect": "1"}]
//! }
//! ```
//!
//! A twist declaration also registers its carrier as a lattice under the
//! twist's name. Filters are given inline as element lists or by the name of
//! one of the lattice's `filters`; when omitted, the lattice's `filter` is
//! used, and failing that the set containing only the top.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use manymodal::frames::Family;
use manymodal::lattice::validate_filter;
use manymodal::semantics::{Frame, Structure, Valuation, World};
use manymodal::twist::{build_twist, twist_subuniverse, NoncVariant, TwistStructure, TwistSubset};
use manymodal::{Filter, FiniteLattice, LatticeBuilder, NegationMode, SubUniverse};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {kind} `{name}`: {message}", locus(.path, *.line))]
    Validation {
        path: String,
        line: Option<usize>,
        kind: &'static str,
        name: String,
        message: String,
    },
    #[error("{}: unresolved {kind} `{name}`", locus(.path, *.line))]
    UnresolvedReference {
        path: String,
        line: Option<usize>,
        kind: &'static str,
        name: String,
    },
    #[error("{}: duplicate {kind} `{name}`", locus(.path, *.line))]
    Duplicate {
        path: String,
        line: Option<usize>,
        kind: &'static str,
        name: String,
    },
    #[error("{0}: import cycle")]
    ImportCycle(String),
}

fn locus(path: &str, line: Option<usize>) -> String {
    match line {
        Some(l) => format!("{path}:{l}"),
        None => path.to_string(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub imports: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lattices: Vec<LatticeDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twists: Vec<TwistDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subuniverses: Vec<SubUniverseDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub models: Vec<ModelDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub frames: Vec<FrameDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<Query>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDecl {
    pub name: String,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub neg: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub filters: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistDecl {
    pub name: String,
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub filters: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubUniverseDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negation_mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    /// `boolean`, `para` or `atleast:Z`; only with `twist`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDecl {
    pub name: String,
    /// Twist whose classicality relation orders the members.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    pub members: Vec<String>,
    /// Explicit `[more, less]` classical pairs when there is no twist;
    /// reflexive pairs are implied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geq: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<FilterRef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FilterRef {
    Named(String),
    Inline(Vec<String>),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldDecl {
    pub id: String,
    pub universe: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDecl {
    pub name: String,
    pub lattice: String,
    pub worlds: Vec<WorldDecl>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub valuation: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<FilterRef>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDecl {
    pub name: String,
    pub lattice: String,
    pub worlds: Vec<WorldDecl>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<FilterRef>,
}

/// A stored command invocation. Every key other than `command` and
/// `expect` becomes a `--key value` option (`true` becomes a bare flag).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Query {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<String>,
    #[serde(flatten)]
    pub args: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug)]
struct LatticeEntry {
    lattice: Arc<FiniteLattice>,
    default_filter: Option<Vec<String>>,
    filters: BTreeMap<String, Vec<String>>,
    twist: Option<String>,
}

#[derive(Clone, Debug)]
enum UniverseOrigin {
    Explicit,
    Twist { twist: String, kind: String },
}

/// Every validated object from a document and its imports.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    lattices: BTreeMap<String, LatticeEntry>,
    lattice_order: Vec<String>,
    twists: BTreeMap<String, TwistStructure>,
    subuniverses: BTreeMap<String, (Arc<SubUniverse>, UniverseOrigin)>,
    subuniverse_order: Vec<String>,
    families: Vec<FamilyDecl>,
    models: BTreeMap<String, Structure>,
    model_order: Vec<String>,
    frames: BTreeMap<String, Frame>,
    frame_order: Vec<String>,
    pub queries: Vec<Query>,
    pub warnings: Vec<String>,
}

/// 1-based line of the first `"key": "value"` occurrence in `text`.
fn line_of(text: &str, key: &str, value: &str) -> Option<usize> {
    let needle = format!("\"{}\"", value.replace('\\', "\\\\").replace('"', "\\\""));
    let mut from = 0;
    while let Some(pos) = text[from..].find(&needle) {
        let at = from + pos;
        let before = text[..at].trim_end();
        if let Some(b) = before.strip_suffix(':') {
            if b.trim_end().ends_with(&format!("\"{key}\"")) {
                return Some(text[..at].matches('\n').count() + 1);
            }
        }
        from = at + needle.len();
    }
    None
}

struct Ctx<'a> {
    path: &'a str,
    text: &'a str,
}

impl Ctx<'_> {
    fn invalid(&self, kind: &'static str, name: &str, message: impl ToString) -> DocumentError {
        DocumentError::Validation {
            path: self.path.to_string(),
            line: line_of(self.text, "name", name),
            kind,
            name: name.to_string(),
            message: message.to_string(),
        }
    }

    fn unresolved(&self, kind: &'static str, owner: &str, name: &str) -> DocumentError {
        DocumentError::UnresolvedReference {
            path: self.path.to_string(),
            line: line_of(self.text, "name", owner),
            kind,
            name: name.to_string(),
        }
    }

    fn duplicate(&self, kind: &'static str, name: &str) -> DocumentError {
        DocumentError::Duplicate {
            path: self.path.to_string(),
            line: line_of(self.text, "name", name),
            kind,
            name: name.to_string(),
        }
    }
}

/// Loads a document and its imports (resolved relative to the file).
pub fn load_document(path: impl AsRef<Path>) -> Result<Registry, DocumentError> {
    let mut registry = Registry::default();
    let mut stack = Vec::new();
    let mut done = BTreeSet::new();
    load_into(path.as_ref(), &mut registry, &mut stack, &mut done)?;
    Ok(registry)
}

/// Parses and validates document text that has no imports.
pub fn load_str(text: &str, label: &str) -> Result<Registry, DocumentError> {
    let doc = parse_text(text, label)?;
    if !doc.imports.is_empty() {
        return Err(DocumentError::Validation {
            path: label.to_string(),
            line: None,
            kind: "document",
            name: label.to_string(),
            message: "imports need a file path".into(),
        });
    }
    let mut registry = Registry::default();
    registry.add(&doc, &Ctx { path: label, text })?;
    Ok(registry)
}

fn parse_text(text: &str, label: &str) -> Result<Document, DocumentError> {
    serde_json::from_str(text).map_err(|e| DocumentError::Parse {
        path: label.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn load_into(
    path: &Path,
    registry: &mut Registry,
    stack: &mut Vec<PathBuf>,
    done: &mut BTreeSet<PathBuf>,
) -> Result<(), DocumentError> {
    let label = path.display().to_string();
    let canonical = fs::canonicalize(path).map_err(|source| DocumentError::Io {
        path: label.clone(),
        source,
    })?;
    if stack.contains(&canonical) {
        return Err(DocumentError::ImportCycle(label));
    }
    if done.contains(&canonical) {
        return Ok(());
    }
    let text = fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: label.clone(),
        source,
    })?;
    let doc = parse_text(&text, &label)?;
    stack.push(canonical.clone());
    let dir = path.parent().unwrap_or(Path::new("."));
    for import in &doc.imports {
        load_into(&dir.join(import), registry, stack, done)?;
    }
    stack.pop();
    registry.add(&doc, &Ctx { path: &label, text: &text })?;
    done.insert(canonical);
    Ok(())
}

fn mode_of(s: Option<&str>) -> Result<NegationMode, String> {
    s.map_or(Ok(NegationMode::Rigid), str::parse)
}

impl Registry {
    fn add(&mut self, doc: &Document, ctx: &Ctx) -> Result<(), DocumentError> {
        for decl in &doc.lattices {
            self.add_lattice(decl, ctx)?;
        }
        for decl in &doc.twists {
            self.add_twist(decl, ctx)?;
        }
        for decl in &doc.subuniverses {
            self.add_subuniverse(decl, ctx)?;
        }
        for decl in &doc.families {
            self.add_family(decl, ctx)?;
        }
        for decl in &doc.models {
            self.add_model(decl, ctx)?;
        }
        for decl in &doc.frames {
            self.add_frame(decl, ctx)?;
        }
        self.queries.extend(doc.queries.iter().cloned());
        Ok(())
    }

    fn insert_lattice(&mut self, name: &str, entry: LatticeEntry, ctx: &Ctx) -> Result<(), DocumentError> {
        if self.lattices.contains_key(name) {
            return Err(ctx.duplicate("lattice", name));
        }
        for (fname, members) in entry
            .default_filter
            .iter()
            .map(|m| ("filter", m))
            .chain(entry.filters.iter().map(|(k, v)| (k.as_str(), v)))
        {
            let (_, report) = validate_filter(&entry.lattice, members.iter().map(String::as_str))
                .map_err(|e| ctx.invalid("lattice", name, format!("{fname}: {e}")))?;
            for (x, y) in report.upward_violations {
                self.warnings.push(format!(
                    "filter `{fname}` of `{name}` is not upward closed: `{}` <= `{}`",
                    entry.lattice.name_of(x),
                    entry.lattice.name_of(y)
                ));
            }
        }
        self.lattices.insert(name.to_string(), entry);
        self.lattice_order.push(name.to_string());
        Ok(())
    }

    fn add_lattice(&mut self, decl: &LatticeDecl, ctx: &Ctx) -> Result<(), DocumentError> {
        let order = match (&decl.covers, &decl.leq) {
            (Some(_), Some(_)) => {
                return Err(ctx.invalid("lattice", &decl.name, "give either `covers` or `leq`, not both"))
            }
            (Some(p), None) | (None, Some(p)) => p.clone(),
            (None, None) => Vec::new(),
        };
        let lattice = LatticeBuilder::new(&decl.name)
            .elements(decl.elements.iter().cloned())
            .order(order)
            .complements(decl.neg.iter().cloned())
            .build()
            .map_err(|e| ctx.invalid("lattice", &decl.name, e))?;
        let entry = LatticeEntry {
            lattice: Arc::new(lattice),
            default_filter: decl.filter.clone(),
            filters: decl.filters.clone(),
            twist: None,
        };
        self.insert_lattice(&decl.name, entry, ctx)
    }

    fn add_twist(&mut self, decl: &TwistDecl, ctx: &Ctx) -> Result<(), DocumentError> {
        let base = self
            .lattices
            .get(&decl.base)
            .ok_or_else(|| ctx.unresolved("lattice", &decl.name, &decl.base))?;
        let twist = build_twist(&decl.name, Arc::clone(&base.lattice))
            .map_err(|e| ctx.invalid("twist", &decl.name, e))?;
        let entry = LatticeEntry {
            lattice: Arc::clone(twist.carrier()),
            default_filter: decl.filter.clone(),
            filters: decl.filters.clone(),
            twist: Some(decl.base.clone()),
        };
        self.insert_lattice(&decl.name, entry, ctx)?;
        self.twists.insert(decl.name.clone(), twist);
        Ok(())
    }

    fn add_subuniverse(&mut self, decl: &SubUniverseDecl, ctx: &Ctx) -> Result<(), DocumentError> {
        let name = &decl.name;
        if self.subuniverses.contains_key(name) {
            return Err(ctx.duplicate("sub-universe", name));
        }
        let (universe, origin) = match (&decl.twist, &decl.lattice) {
            (Some(t), None) => {
                let twist = self
                    .twists
                    .get(t)
                    .ok_or_else(|| ctx.unresolved("twist", name, t))?;
                let kind_text = decl
                    .kind
                    .as_deref()
                    .ok_or_else(|| ctx.invalid("sub-universe", name, "twist subsets need a `kind`"))?;
                if decl.members.is_some() {
                    return Err(ctx.invalid("sub-universe", name, "twist subsets take `kind`, not `members`"));
                }
                let kind: TwistSubset = kind_text
                    .parse()
                    .map_err(|e: String| ctx.invalid("sub-universe", name, e))?;
                let mut u = twist_subuniverse(twist, &kind, Some(name))
                    .map_err(|e| ctx.invalid("sub-universe", name, e))?;
                if decl.negation_mode.is_some() {
                    let mode = mode_of(decl.negation_mode.as_deref())
                        .map_err(|e| ctx.invalid("sub-universe", name, e))?;
                    u = u
                        .with_mode(mode)
                        .map_err(|e| ctx.invalid("sub-universe", name, e))?;
                }
                (
                    u,
                    UniverseOrigin::Twist {
                        twist: t.clone(),
                        kind: kind.to_string(),
                    },
                )
            }
            (None, Some(l)) => {
                let base = self
                    .lattices
                    .get(l)
                    .ok_or_else(|| ctx.unresolved("lattice", name, l))?;
                let mode = mode_of(decl.negation_mode.as_deref())
                    .map_err(|e| ctx.invalid("sub-universe", name, e))?;
                let u = match &decl.members {
                    Some(m) => SubUniverse::from_names(
                        name.clone(),
                        Arc::clone(&base.lattice),
                        m.iter().map(String::as_str),
                        mode,
                    ),
                    None => SubUniverse::full(name.clone(), Arc::clone(&base.lattice), mode),
                }
                .map_err(|e| ctx.invalid("sub-universe", name, e))?;
                (u, UniverseOrigin::Explicit)
            }
            _ => {
                return Err(ctx.invalid(
                    "sub-universe",
                    name,
                    "give exactly one of `lattice` or `twist`",
                ))
            }
        };
        self.subuniverses
            .insert(name.clone(), (Arc::new(universe), origin));
        self.subuniverse_order.push(name.clone());
        Ok(())
    }

    fn add_family(&mut self, decl: &FamilyDecl, ctx: &Ctx) -> Result<(), DocumentError> {
        if self.families.iter().any(|f| f.name == decl.name) {
            return Err(ctx.duplicate("family", &decl.name));
        }
        self.families.push(decl.clone());
        // Validate eagerly under the default comparator.
        self.family(&decl.name, NoncVariant::default())
            .map_err(|e| match e {
                DocumentError::UnresolvedReference { kind, name, .. } => {
                    ctx.unresolved(kind, &decl.name, &name)
                }
                DocumentError::Validation { message, .. } => ctx.invalid("family", &decl.name, message),
                other => other,
            })
            .inspect_err(|_| {
                self.families.pop();
            })?;
        Ok(())
    }

    fn resolve_filter(
        &self,
        lattice: &str,
        filter: Option<&FilterRef>,
    ) -> Result<Filter, String> {
        let entry = &self.lattices[lattice];
        let names: Vec<String> = match filter {
            Some(FilterRef::Inline(v)) => v.clone(),
            Some(FilterRef::Named(n)) => entry
                .filters
                .get(n)
                .cloned()
                .ok_or_else(|| format!("lattice `{lattice}` has no filter `{n}`"))?,
            None => match &entry.default_filter {
                Some(v) => v.clone(),
                None => return Ok(Filter::new(&entry.lattice, [entry.lattice.top()]).expect("top")),
            },
        };
        validate_filter(&entry.lattice, names.iter().map(String::as_str))
            .map(|(f, _)| f)
            .map_err(|e| e.to_string())
    }

    #[allow(clippy::too_many_arguments)]
    fn build_frame(
        &self,
        kind: &'static str,
        name: &str,
        lattice: &str,
        worlds: &[WorldDecl],
        edges: &[(String, String)],
        filter: Option<&FilterRef>,
        ctx: &Ctx,
    ) -> Result<Frame, DocumentError> {
        let base = self
            .lattices
            .get(lattice)
            .ok_or_else(|| ctx.unresolved("lattice", name, lattice))?;
        let mut ws = Vec::new();
        for w in worlds {
            let (u, _) = self
                .subuniverses
                .get(&w.universe)
                .ok_or_else(|| ctx.unresolved("sub-universe", name, &w.universe))?;
            ws.push(World::new(w.id.clone(), Arc::clone(u)));
        }
        let filter = self
            .resolve_filter(lattice, filter)
            .map_err(|e| ctx.invalid(kind, name, e))?;
        Frame::from_ids(
            name,
            Arc::clone(&base.lattice),
            ws,
            edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            filter,
        )
        .map_err(|e| ctx.invalid(kind, name, e))
    }

    fn add_model(&mut self, decl: &ModelDecl, ctx: &Ctx) -> Result<(), DocumentError> {
        if self.models.contains_key(&decl.name) {
            return Err(ctx.duplicate("model", &decl.name));
        }
        let frame = self.build_frame(
            "model",
            &decl.name,
            &decl.lattice,
            &decl.worlds,
            &decl.edges,
            decl.filter.as_ref(),
            ctx,
        )?;
        let atoms: BTreeSet<&str> = decl
            .valuation
            .values()
            .flat_map(|m| m.keys().map(String::as_str))
            .collect();
        let mut val = Valuation::new(frame.len(), atoms);
        for (world, row) in &decl.valuation {
            let w = frame
                .world_index(world)
                .map_err(|_| ctx.unresolved("world", &decl.name, world))?;
            for (atom, value) in row {
                let e = frame
                    .base()
                    .elem(value)
                    .map_err(|e| ctx.invalid("model", &decl.name, e))?;
                val.set(w, atom, e);
            }
        }
        let m = Structure::new(decl.name.clone(), Arc::new(frame), val)
            .map_err(|e| ctx.invalid("model", &decl.name, e))?;
        let report = manymodal::semantics::validate_structure(&m)
            .map_err(|e| ctx.invalid("model", &decl.name, e))?;
        for (w, p) in report.unassigned {
            self.warnings
                .push(format!("model `{}`: atom `{p}` has no value at world `{w}`", decl.name));
        }
        self.models.insert(decl.name.clone(), m);
        self.model_order.push(decl.name.clone());
        Ok(())
    }

    fn add_frame(&mut self, decl: &FrameDecl, ctx: &Ctx) -> Result<(), DocumentError> {
        if self.frames.contains_key(&decl.name) {
            return Err(ctx.duplicate("frame", &decl.name));
        }
        let frame = self.build_frame(
            "frame",
            &decl.name,
            &decl.lattice,
            &decl.worlds,
            &decl.edges,
            decl.filter.as_ref(),
            ctx,
        )?;
        self.frames.insert(decl.name.clone(), frame);
        self.frame_order.push(decl.name.clone());
        Ok(())
    }

    fn missing(kind: &'static str, name: &str) -> DocumentError {
        DocumentError::UnresolvedReference {
            path: "<query>".into(),
            line: None,
            kind,
            name: name.to_string(),
        }
    }

    pub fn lattice(&self, name: &str) -> Result<&Arc<FiniteLattice>, DocumentError> {
        self.lattices
            .get(name)
            .map(|e| &e.lattice)
            .ok_or_else(|| Self::missing("lattice", name))
    }

    pub fn lattice_names(&self) -> &[String] {
        &self.lattice_order
    }

    /// A lattice's filter: named, inline, or its default.
    pub fn filter(&self, lattice: &str, filter: Option<&FilterRef>) -> Result<Filter, DocumentError> {
        self.lattice(lattice)?;
        self.resolve_filter(lattice, filter)
            .map_err(|message| DocumentError::Validation {
                path: "<query>".into(),
                line: None,
                kind: "filter",
                name: lattice.to_string(),
                message,
            })
    }

    pub fn twist(&self, name: &str) -> Result<&TwistStructure, DocumentError> {
        self.twists.get(name).ok_or_else(|| Self::missing("twist", name))
    }

    pub fn subuniverse(&self, name: &str) -> Result<&Arc<SubUniverse>, DocumentError> {
        self.subuniverses
            .get(name)
            .map(|(u, _)| u)
            .ok_or_else(|| Self::missing("sub-universe", name))
    }

    pub fn subuniverse_names(&self) -> &[String] {
        &self.subuniverse_order
    }

    pub fn model(&self, name: &str) -> Result<&Structure, DocumentError> {
        self.models.get(name).ok_or_else(|| Self::missing("model", name))
    }

    pub fn model_names(&self) -> &[String] {
        &self.model_order
    }

    pub fn frame(&self, name: &str) -> Result<&Frame, DocumentError> {
        self.frames.get(name).ok_or_else(|| Self::missing("frame", name))
    }

    pub fn frame_names(&self) -> &[String] {
        &self.frame_order
    }

    pub fn family_names(&self) -> Vec<&str> {
        self.families.iter().map(|f| f.name.as_str()).collect()
    }

    /// Builds a family; twist families are ordered by the classicality
    /// relation with the given non-contradiction variant.
    pub fn family(&self, name: &str, variant: NoncVariant) -> Result<(Family, Filter), DocumentError> {
        let decl = self
            .families
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Self::missing("family", name))?;
        let invalid = |message: String| DocumentError::Validation {
            path: "<query>".into(),
            line: None,
            kind: "family",
            name: name.to_string(),
            message,
        };
        let universes = decl
            .members
            .iter()
            .map(|m| self.subuniverse(m).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        let lattice_name = match (&decl.twist, universes.first()) {
            (Some(t), _) => {
                self.twist(t)?;
                t.clone()
            }
            (None, Some(u)) => self
                .lattice_order
                .iter()
                .find(|l| self.lattices[*l].lattice.same_as(u.base()))
                .cloned()
                .ok_or_else(|| invalid("members are not over a declared lattice".into()))?,
            (None, None) => return Err(invalid("family has no members".into())),
        };
        let family = match (&decl.twist, &decl.geq) {
            (Some(t), None) => {
                let twist = self.twist(t)?;
                if let Some(u) = universes.iter().find(|u| !u.base().same_as(twist.carrier())) {
                    return Err(invalid(format!("`{}` is not a subset of twist `{t}`", u.name())));
                }
                Family::from_twist(name, twist, universes, variant)
            }
            (None, Some(pairs)) => {
                let pos = |n: &str| {
                    decl.members
                        .iter()
                        .position(|m| m == n)
                        .ok_or_else(|| invalid(format!("`{n}` is not a member")))
                };
                let k = universes.len();
                let mut geq = vec![vec![false; k]; k];
                for (i, row) in geq.iter_mut().enumerate() {
                    row[i] = true;
                }
                for (a, b) in pairs {
                    geq[pos(a)?][pos(b)?] = true;
                }
                Family::new(name, universes, geq)
            }
            (None, None) => Family::discrete(name, universes),
            (Some(_), Some(_)) => return Err(invalid("give either `twist` or `geq`, not both".into())),
        }
        .map_err(|e| invalid(e.to_string()))?;
        let filter = self.filter(&lattice_name, decl.filter.as_ref())?;
        Ok((family, filter))
    }

    /// A document that reloads to an equivalent registry. Imports are
    /// inlined; lattice orders are written as covers.
    pub fn to_document(&self) -> Document {
        let mut doc = Document::default();
        for name in &self.lattice_order {
            let e = &self.lattices[name];
            let l = &e.lattice;
            if let Some(base) = &e.twist {
                doc.twists.push(TwistDecl {
                    name: name.clone(),
                    base: base.clone(),
                    filter: e.default_filter.clone(),
                    filters: e.filters.clone(),
                });
                continue;
            }
            let n = |x| l.name_of(x).to_string();
            doc.lattices.push(LatticeDecl {
                name: name.clone(),
                elements: l.elements().map(n).collect(),
                covers: Some(l.covers().into_iter().map(|(a, b)| (n(a), n(b))).collect()),
                leq: None,
                neg: l.complement_pairs().map(|(a, b)| (n(a), n(b))).collect(),
                filter: e.default_filter.clone(),
                filters: e.filters.clone(),
            });
        }
        for name in &self.subuniverse_order {
            let (u, origin) = &self.subuniverses[name];
            let mode = Some(u.mode().to_string());
            doc.subuniverses.push(match origin {
                UniverseOrigin::Twist { twist, kind } => SubUniverseDecl {
                    name: name.clone(),
                    twist: Some(twist.clone()),
                    kind: Some(kind.clone()),
                    negation_mode: mode,
                    ..Default::default()
                },
                UniverseOrigin::Explicit => SubUniverseDecl {
                    name: name.clone(),
                    lattice: Some(self.lattice_name_of(u.base())),
                    members: Some(u.members().iter().map(|&m| u.base().name_of(m).to_string()).collect()),
                    negation_mode: mode,
                    ..Default::default()
                },
            });
        }
        doc.families = self.families.clone();
        for name in &self.model_order {
            let m = &self.models[name];
            let f = m.frame();
            let (lattice, worlds, edges, filter) = self.frame_parts(f);
            let mut valuation = BTreeMap::new();
            for (w, world) in f.worlds().iter().enumerate() {
                let mut row = BTreeMap::new();
                for atom in m.valuation().atoms() {
                    if let Some(v) = m.valuation().get(w, atom) {
                        row.insert(atom.to_string(), f.base().name_of(v).to_string());
                    }
                }
                if !row.is_empty() {
                    valuation.insert(world.id.clone(), row);
                }
            }
            doc.models.push(ModelDecl {
                name: name.clone(),
                lattice,
                worlds,
                edges,
                valuation,
                filter,
            });
        }
        for name in &self.frame_order {
            let (lattice, worlds, edges, filter) = self.frame_parts(&self.frames[name]);
            doc.frames.push(FrameDecl {
                name: name.clone(),
                lattice,
                worlds,
                edges,
                filter,
            });
        }
        doc.queries = self.queries.clone();
        doc
    }

    /// Declared name of a lattice (first match), or its own name.
    pub fn lattice_name_of(&self, l: &FiniteLattice) -> String {
        self.lattice_order
            .iter()
            .find(|n| self.lattices[*n].lattice.same_as(l))
            .cloned()
            .unwrap_or_else(|| l.name().to_string())
    }

    #[allow(clippy::type_complexity)]
    fn frame_parts(
        &self,
        f: &Frame,
    ) -> (String, Vec<WorldDecl>, Vec<(String, String)>, Option<FilterRef>) {
        let worlds = f
            .worlds()
            .iter()
            .map(|w| WorldDecl {
                id: w.id.clone(),
                universe: w.universe.name().to_string(),
            })
            .collect();
        let ids = |i: usize| f.worlds()[i].id.clone();
        let edges = f.edges().map(|(a, b)| (ids(a), ids(b))).collect();
        let filter = FilterRef::Inline(
            f.filter()
                .members()
                .iter()
                .map(|&x| f.base().name_of(x).to_string())
                .collect(),
        );
        (self.lattice_name_of(f.base()), worlds, edges, Some(filter))
    }

    /// Same objects with the same meaning, ignoring declaration details
    /// such as cover versus full order input.
    pub fn semantically_equal(&self, other: &Registry) -> bool {
        let lattices = self.lattices.len() == other.lattices.len()
            && self.lattices.iter().all(|(n, e)| {
                other.lattices.get(n).is_some_and(|o| {
                    e.lattice.same_as(&o.lattice)
                        && e.default_filter == o.default_filter
                        && e.filters == o.filters
                })
            });
        let universes = self.subuniverses.len() == other.subuniverses.len()
            && self.subuniverses.iter().all(|(n, (u, _))| {
                other
                    .subuniverses
                    .get(n)
                    .is_some_and(|(o, _)| u.same_members(o) && u.mode() == o.mode())
            });
        let same_frame = |a: &Frame, b: &Frame| {
            a.base().same_as(b.base())
                && a.worlds().len() == b.worlds().len()
                && a.worlds().iter().zip(b.worlds()).all(|(x, y)| {
                    x.id == y.id && x.universe.same_members(&y.universe)
                })
                && a.edges().eq(b.edges())
                && a.filter() == b.filter()
        };
        let models = self.models.len() == other.models.len()
            && self.models.iter().all(|(n, m)| {
                other.models.get(n).is_some_and(|o| {
                    same_frame(m.frame(), o.frame()) && m.valuation() == o.valuation()
                })
            });
        let frames = self.frames.len() == other.frames.len()
            && self
                .frames
                .iter()
                .all(|(n, f)| other.frames.get(n).is_some_and(|o| same_frame(f, o)));
        lattices
            && universes
            && models
            && frames
            && self.families == other.families
            && self.queries == other.queries
    }
}

/// Serializes a registry as a pretty-printed document.
pub fn save_document(registry: &Registry) -> String {
    serde_json::to_string_pretty(&registry.to_document()).expect("documents serialize")
}
