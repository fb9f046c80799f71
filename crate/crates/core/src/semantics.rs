//! Many-logic modal structures: worlds carrying their own sub-universe, an
//! accessibility relation, an atomic valuation and a designated filter.
//!
//! Valuation clauses at a world `w` with universe `L_w`:
//!
//! * atoms read the valuation table;
//! * `~` uses the negation of `L_w` (rigid, down or up);
//! * `&` / `|` take the meet / join in the base lattice and interpret the
//!   result into `L_w`;
//! * `[]φ` is the local meet in `L_w` of the successors' values of `φ`, each
//!   interpreted into `L_w`. With no successors this is the top of `L_w`;
//! * `<>φ` is the negation in `L_w` of the value `[]~φ` would take.
//!
//! Evaluation is lazy and memoized per (world, subformula), so atoms only
//! need values at worlds the formula actually reaches.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::{enumerate_formulas, Formula};
use crate::interpretation::{Direction, SubUniverse};
use crate::lattice::{Elem, Filter, FiniteLattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("frame `{0}` has no worlds")]
    NoWorlds(String),
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("relation mentions unknown world `{0}`")]
    UnknownWorldInRelation(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("universe `{universe}` of world `{world}` is not over the frame's base lattice")]
    UniverseBaseMismatch { world: String, universe: String },
    #[error("value `{value}` of `{atom}` at world `{world}` is outside its universe `{universe}`")]
    ValueOutsideWorldLattice {
        world: String,
        atom: String,
        value: String,
        universe: String,
    },
    #[error("valuation covers {found} worlds but the frame has {expected}")]
    ValuationShape { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atom `{atom}` has no value at world `{world}`")]
    UnassignedAtom { world: String, atom: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisimError {
    #[error("structures `{0}` and `{1}` are over different base lattices")]
    BaseLatticeMismatch(String, String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct World {
    pub id: String,
    pub universe: Arc<SubUniverse>,
}

impl World {
    pub fn new(id: impl Into<String>, universe: Arc<SubUniverse>) -> World {
        World {
            id: id.into(),
            universe,
        }
    }
}

/// Worlds, accessibility and filter. A structure without its valuation.
#[derive(Clone)]
pub struct Frame {
    name: String,
    base: Arc<FiniteLattice>,
    worlds: Vec<World>,
    succ: Vec<Vec<usize>>,
    filter: Filter,
}

impl Frame {
    /// Builds a frame from world indices. Edges are deduplicated and each
    /// successor list is kept sorted.
    pub fn new(
        name: impl Into<String>,
        base: Arc<FiniteLattice>,
        worlds: Vec<World>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        filter: Filter,
    ) -> Result<Frame, StructureError> {
        let name = name.into();
        if worlds.is_empty() {
            return Err(StructureError::NoWorlds(name));
        }
        let mut seen = BTreeSet::new();
        for w in &worlds {
            if !seen.insert(w.id.as_str()) {
                return Err(StructureError::DuplicateWorld(w.id.clone()));
            }
            if !w.universe.base().same_as(&base) {
                return Err(StructureError::UniverseBaseMismatch {
                    world: w.id.clone(),
                    universe: w.universe.name().to_string(),
                });
            }
        }
        let mut succ = vec![Vec::new(); worlds.len()];
        for (a, b) in edges {
            if a >= worlds.len() || b >= worlds.len() {
                return Err(StructureError::UnknownWorldInRelation(format!(
                    "#{}",
                    a.max(b)
                )));
            }
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Ok(Frame {
            name,
            base,
            worlds,
            succ,
            filter,
        })
    }

    /// Builds a frame with edges given by world ids.
    pub fn from_ids<'a>(
        name: impl Into<String>,
        base: Arc<FiniteLattice>,
        worlds: Vec<World>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
        filter: Filter,
    ) -> Result<Frame, StructureError> {
        let index: HashMap<&str, usize> = worlds
            .iter()
            .enumerate()
            .map(|(i, w)| (w.id.as_str(), i))
            .collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let lookup = |id: &str| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| StructureError::UnknownWorldInRelation(id.to_string()))
            };
            pairs.push((lookup(a)?, lookup(b)?));
        }
        Frame::new(name, base, worlds, pairs, filter)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Arc<FiniteLattice> {
        &self.base
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn filter(&self) -> &Filter {
        &self.filter
    }

    pub fn universe(&self, w: usize) -> &SubUniverse {
        &self.worlds[w].universe
    }

    pub fn world_index(&self, id: &str) -> Result<usize, StructureError> {
        self.worlds
            .iter()
            .position(|w| w.id == id)
            .ok_or_else(|| StructureError::UnknownWorld(id.to_string()))
    }

    pub fn successors(&self, w: usize) -> &[usize] {
        &self.succ[w]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    /// All edges, source-major.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }

    pub fn is_transitive(&self) -> bool {
        self.edges()
            .all(|(a, b)| self.succ[b].iter().all(|&c| self.has_edge(a, c)))
    }

    pub fn is_serial(&self) -> bool {
        self.succ.iter().all(|s| !s.is_empty())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Frame {
        self.name = name.into();
        self
    }

    pub fn with_filter(mut self, filter: Filter) -> Frame {
        self.filter = filter;
        self
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let worlds: Vec<String> = self
            .worlds
            .iter()
            .map(|w| format!("{}:{}", w.id, w.universe.name()))
            .collect();
        let edges: Vec<String> = self
            .edges()
            .map(|(a, b)| format!("{}->{}", self.worlds[a].id, self.worlds[b].id))
            .collect();
        f.debug_struct("Frame")
            .field("name", &self.name)
            .field("worlds", &worlds)
            .field("edges", &edges)
            .finish()
    }
}

/// Atomic valuation: a dense (world, atom) table over a sorted atom list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    atoms: Vec<Arc<str>>,
    worlds: usize,
    table: Vec<Option<Elem>>,
}

impl Valuation {
    pub fn new<S: AsRef<str>>(worlds: usize, atoms: impl IntoIterator<Item = S>) -> Valuation {
        let set: BTreeSet<Arc<str>> = atoms.into_iter().map(|a| Arc::from(a.as_ref())).collect();
        let atoms: Vec<Arc<str>> = set.into_iter().collect();
        let table = vec![None; worlds * atoms.len()];
        Valuation {
            atoms,
            worlds,
            table,
        }
    }

    pub fn atoms(&self) -> &[Arc<str>] {
        &self.atoms
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn atom_index(&self, atom: &str) -> Option<usize> {
        self.atoms.binary_search_by(|a| (**a).cmp(atom)).ok()
    }

    /// Sets a value; returns false if the atom is not in the table.
    pub fn set(&mut self, world: usize, atom: &str, value: Elem) -> bool {
        match self.atom_index(atom) {
            Some(i) => {
                self.set_index(world, i, value);
                true
            }
            None => false,
        }
    }

    pub fn set_index(&mut self, world: usize, atom: usize, value: Elem) {
        let n = self.atoms.len();
        self.table[world * n + atom] = Some(value);
    }

    pub fn get(&self, world: usize, atom: &str) -> Option<Elem> {
        self.atom_index(atom).and_then(|i| self.get_index(world, i))
    }

    pub fn get_index(&self, world: usize, atom: usize) -> Option<Elem> {
        self.table[world * self.atoms.len() + atom]
    }
}

/// A frame together with an atomic valuation.
#[derive(Clone, Debug)]
pub struct Structure {
    name: String,
    frame: Arc<Frame>,
    valuation: Valuation,
}

/// Unassigned (world, atom) pairs found by [`validate_structure`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub unassigned: Vec<(String, String)>,
}

impl Structure {
    pub fn new(
        name: impl Into<String>,
        frame: Arc<Frame>,
        valuation: Valuation,
    ) -> Result<Structure, StructureError> {
        if valuation.worlds() != frame.len() {
            return Err(StructureError::ValuationShape {
                expected: frame.len(),
                found: valuation.worlds(),
            });
        }
        for (w, world) in frame.worlds().iter().enumerate() {
            for (i, atom) in valuation.atoms().iter().enumerate() {
                if let Some(v) = valuation.get_index(w, i) {
                    if !world.universe.contains(v) {
                        return Err(StructureError::ValueOutsideWorldLattice {
                            world: world.id.clone(),
                            atom: atom.to_string(),
                            value: frame.base().name_of(v).to_string(),
                            universe: world.universe.name().to_string(),
                        });
                    }
                }
            }
        }
        Ok(Structure {
            name: name.into(),
            frame,
            valuation,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn base(&self) -> &Arc<FiniteLattice> {
        self.frame.base()
    }

    pub fn world_index(&self, id: &str) -> Result<usize, StructureError> {
        self.frame.world_index(id)
    }

    pub fn evaluate(&self, w: usize, f: &Formula) -> Result<Elem, EvalError> {
        self.evaluate_with(w, f, EvalOptions::default())
    }

    pub fn evaluate_with(
        &self,
        w: usize,
        f: &Formula,
        opts: EvalOptions,
    ) -> Result<Elem, EvalError> {
        let compiled = Compiled::new([f]);
        Evaluator::new(&self.frame, &self.valuation, &compiled, opts).eval(w, compiled.root(0))
    }

    pub fn satisfies(&self, w: usize, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.frame.filter().contains(self.evaluate(w, f)?))
    }

    /// True when every world satisfies `f`.
    pub fn model_satisfies(&self, f: &Formula) -> Result<bool, EvalError> {
        Ok(self
            .first_failing_world(f, EvalOptions::default())?
            .is_none())
    }

    /// The first world (declaration order) whose value is outside the filter.
    pub fn first_failing_world(
        &self,
        f: &Formula,
        opts: EvalOptions,
    ) -> Result<Option<usize>, EvalError> {
        let compiled = Compiled::new([f]);
        let mut ev = Evaluator::new(&self.frame, &self.valuation, &compiled, opts);
        for w in 0..self.frame.len() {
            if !self.frame.filter().contains(ev.eval(w, compiled.root(0))?) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

pub fn validate_structure(m: &Structure) -> Result<StructureReport, StructureError> {
    // Re-running construction re-checks every invariant.
    let m = Structure::new(m.name.clone(), Arc::clone(&m.frame), m.valuation.clone())?;
    let mut report = StructureReport::default();
    for (w, world) in m.frame.worlds().iter().enumerate() {
        for (i, atom) in m.valuation.atoms().iter().enumerate() {
            if m.valuation.get_index(w, i).is_none() {
                report.unassigned.push((world.id.clone(), atom.to_string()));
            }
        }
    }
    Ok(report)
}

pub fn evaluate(m: &Structure, w: usize, f: &Formula) -> Result<Elem, EvalError> {
    m.evaluate(w, f)
}

pub fn satisfies(m: &Structure, w: usize, f: &Formula) -> Result<bool, EvalError> {
    m.satisfies(w, f)
}

pub fn model_satisfies(m: &Structure, f: &Formula) -> Result<bool, EvalError> {
    m.model_satisfies(f)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalOptions {
    /// How base values (connective results, successor values) are brought
    /// into a world's universe.
    pub interp: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Atom(Arc<str>),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Box(usize),
    // Child is the node for `~φ`.
    Diamond(usize),
}

/// One or more formulas compiled into a shared DAG. Implications are
/// compiled as `~φ | ψ`; identical subformulas share one node.
#[derive(Clone, Debug)]
pub struct Compiled {
    nodes: Vec<Node>,
    roots: Vec<usize>,
    atoms: Vec<Arc<str>>,
}

impl Compiled {
    pub fn new<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Compiled {
        let mut c = Compiled {
            nodes: Vec::new(),
            roots: Vec::new(),
            atoms: Vec::new(),
        };
        let mut index = HashMap::new();
        for f in formulas {
            let r = c.add(f, &mut index);
            c.roots.push(r);
        }
        let set: BTreeSet<Arc<str>> = c
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Atom(p) => Some(p.clone()),
                _ => None,
            })
            .collect();
        c.atoms = set.into_iter().collect();
        c
    }

    fn intern(&mut self, node: Node, index: &mut HashMap<Node, usize>) -> usize {
        if let Some(&i) = index.get(&node) {
            return i;
        }
        self.nodes.push(node.clone());
        index.insert(node, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn add(&mut self, f: &Formula, index: &mut HashMap<Node, usize>) -> usize {
        let node = match f {
            Formula::Atom(p) => Node::Atom(p.clone()),
            Formula::Not(g) => Node::Not(self.add(g, index)),
            Formula::And(g, h) => Node::And(self.add(g, index), self.add(h, index)),
            Formula::Or(g, h) => Node::Or(self.add(g, index), self.add(h, index)),
            Formula::Implies(g, h) => {
                let g = self.add(g, index);
                let ng = self.intern(Node::Not(g), index);
                Node::Or(ng, self.add(h, index))
            }
            Formula::Box(g) => Node::Box(self.add(g, index)),
            Formula::Diamond(g) => {
                let g = self.add(g, index);
                Node::Diamond(self.intern(Node::Not(g), index))
            }
        };
        self.intern(node, index)
    }

    pub fn root(&self, i: usize) -> usize {
        self.roots[i]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Atoms occurring anywhere in the compiled formulas, sorted.
    pub fn atoms(&self) -> &[Arc<str>] {
        &self.atoms
    }
}

/// Memoizing evaluator for one frame, one valuation and one compiled DAG.
pub struct Evaluator<'a> {
    frame: &'a Frame,
    valuation: &'a Valuation,
    compiled: &'a Compiled,
    opts: EvalOptions,
    // Valuation column of each node's atom (atom nodes only).
    columns: Vec<Option<usize>>,
    memo: Vec<Option<Elem>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        frame: &'a Frame,
        valuation: &'a Valuation,
        compiled: &'a Compiled,
        opts: EvalOptions,
    ) -> Evaluator<'a> {
        let columns = compiled
            .nodes
            .iter()
            .map(|n| match n {
                Node::Atom(p) => valuation.atom_index(p),
                _ => None,
            })
            .collect();
        Evaluator {
            frame,
            valuation,
            compiled,
            opts,
            columns,
            memo: vec![None; frame.len() * compiled.len()],
        }
    }

    /// Value of compiled node `node` at world `w`.
    pub fn eval(&mut self, w: usize, node: usize) -> Result<Elem, EvalError> {
        let slot = w * self.compiled.len() + node;
        if let Some(v) = self.memo[slot] {
            return Ok(v);
        }
        let frame = self.frame;
        let lw = frame.universe(w);
        let base = frame.base();
        let dir = self.opts.interp;
        let v = match self.compiled.nodes[node] {
            Node::Atom(ref p) => self.columns[node]
                .and_then(|c| self.valuation.get_index(w, c))
                .ok_or_else(|| EvalError::UnassignedAtom {
                    world: frame.worlds()[w].id.clone(),
                    atom: p.to_string(),
                })?,
            Node::Not(g) => lw.negate(self.eval(w, g)?)?,
            Node::And(g, h) => lw.interpret(base.meet(self.eval(w, g)?, self.eval(w, h)?), dir),
            Node::Or(g, h) => lw.interpret(base.join(self.eval(w, g)?, self.eval(w, h)?), dir),
            Node::Box(g) => self.boxed(w, g)?,
            Node::Diamond(ng) => lw.negate(self.boxed(w, ng)?)?,
        };
        self.memo[slot] = Some(v);
        Ok(v)
    }

    fn boxed(&mut self, w: usize, g: usize) -> Result<Elem, EvalError> {
        let frame = self.frame;
        let lw = frame.universe(w);
        let mut acc = lw.top();
        for &u in frame.successors(w) {
            let v = lw.interpret(self.eval(u, g)?, self.opts.interp);
            acc = lw.local_meet(acc, v);
        }
        Ok(acc)
    }
}

/// Direct recursive evaluation without sharing or memoization. Used as a
/// cross-check for [`Evaluator`].
pub fn evaluate_reference(
    frame: &Frame,
    valuation: &Valuation,
    w: usize,
    f: &Formula,
    opts: EvalOptions,
) -> Result<Elem, EvalError> {
    let lw = frame.universe(w);
    let base = frame.base();
    let rec = |u: usize, g: &Formula| evaluate_reference(frame, valuation, u, g, opts);
    let box_of = |g: &Formula| -> Result<Elem, EvalError> {
        let mut vals = Vec::new();
        for &u in frame.successors(w) {
            vals.push(lw.interpret(rec(u, g)?, opts.interp));
        }
        Ok(lw.local_meet_all(vals))
    };
    Ok(match f {
        Formula::Atom(p) => valuation
            .get(w, p)
            .ok_or_else(|| EvalError::UnassignedAtom {
                world: frame.worlds()[w].id.clone(),
                atom: p.to_string(),
            })?,
        Formula::Not(g) => lw.negate(rec(w, g)?)?,
        Formula::And(g, h) => lw.interpret(base.meet(rec(w, g)?, rec(w, h)?), opts.interp),
        Formula::Or(g, h) => lw.interpret(base.join(rec(w, g)?, rec(w, h)?), opts.interp),
        Formula::Implies(g, h) => {
            let ng = lw.negate(rec(w, g)?)?;
            lw.interpret(base.join(ng, rec(w, h)?), opts.interp)
        }
        Formula::Box(g) => box_of(g)?,
        Formula::Diamond(g) => lw.negate(box_of(&Formula::Not(g.clone()))?)?,
    })
}

/// A relation between the worlds of two structures, as index pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bisim {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl Bisim {
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs as world ids.
    pub fn named(&self, left: &Structure, right: &Structure) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(a, b)| {
                (
                    left.frame.worlds()[a].id.clone(),
                    right.frame.worlds()[b].id.clone(),
                )
            })
            .collect()
    }

    /// Every condition the relation breaks, in pair order.
    pub fn violations(&self, left: &Structure, right: &Structure) -> Vec<BisimViolation> {
        let mut out = Vec::new();
        for &(a, b) in &self.pairs {
            if !same_universe(left, a, right, b) {
                out.push(BisimViolation::DifferentUniverse(a, b));
            } else if !atoms_agree(left, a, right, b) {
                out.push(BisimViolation::Atomic(a, b));
            }
            for &a2 in left.frame.successors(a) {
                if !right
                    .frame
                    .successors(b)
                    .iter()
                    .any(|&b2| self.contains(a2, b2))
                {
                    out.push(BisimViolation::Zig {
                        pair: (a, b),
                        successor: a2,
                    });
                }
            }
            for &b2 in right.frame.successors(b) {
                if !left
                    .frame
                    .successors(a)
                    .iter()
                    .any(|&a2| self.contains(a2, b2))
                {
                    out.push(BisimViolation::Zag {
                        pair: (a, b),
                        successor: b2,
                    });
                }
            }
        }
        out
    }

    pub fn is_bisimulation(&self, left: &Structure, right: &Structure) -> bool {
        self.violations(left, right).is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BisimViolation {
    DifferentUniverse(usize, usize),
    Atomic(usize, usize),
    /// A left successor with no related right successor.
    Zig {
        pair: (usize, usize),
        successor: usize,
    },
    /// A right successor with no related left successor.
    Zag {
        pair: (usize, usize),
        successor: usize,
    },
}

fn same_universe(left: &Structure, a: usize, right: &Structure, b: usize) -> bool {
    left.frame.universe(a).same_members(right.frame.universe(b))
}

fn atoms_agree(left: &Structure, a: usize, right: &Structure, b: usize) -> bool {
    let names: BTreeSet<&Arc<str>> = left
        .valuation
        .atoms()
        .iter()
        .chain(right.valuation.atoms())
        .collect();
    names
        .into_iter()
        .all(|p| left.valuation.get(a, p) == right.valuation.get(b, p))
}

/// The largest bisimulation between two structures over the same base,
/// restricted to pairs of worlds with identical universes.
pub fn greatest_bisimulation(left: &Structure, right: &Structure) -> Result<Bisim, BisimError> {
    if !left.base().same_as(right.base()) {
        return Err(BisimError::BaseLatticeMismatch(
            left.name.clone(),
            right.name.clone(),
        ));
    }
    let mut rel = Bisim::default();
    for a in 0..left.frame.len() {
        for b in 0..right.frame.len() {
            if same_universe(left, a, right, b) && atoms_agree(left, a, right, b) {
                rel.pairs.insert((a, b));
            }
        }
    }
    loop {
        let keep: BTreeSet<(usize, usize)> = rel
            .pairs
            .iter()
            .copied()
            .filter(|&(a, b)| {
                let zig = left.frame.successors(a).iter().all(|&a2| {
                    right
                        .frame
                        .successors(b)
                        .iter()
                        .any(|&b2| rel.contains(a2, b2))
                });
                let zag = right.frame.successors(b).iter().all(|&b2| {
                    left.frame
                        .successors(a)
                        .iter()
                        .any(|&a2| rel.contains(a2, b2))
                });
                zig && zag
            })
            .collect();
        if keep.len() == rel.pairs.len() {
            return Ok(rel);
        }
        rel.pairs = keep;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub left: String,
    pub right: String,
    pub formula: Formula,
    pub left_value: String,
    pub right_value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub pairs: usize,
    pub formulas: usize,
    pub violations: Vec<Disagreement>,
}

/// Evaluates every formula up to `max_size` (over the atoms of both
/// valuations) at both ends of every pair and lists value disagreements.
pub fn bisim_equivalence_check(
    left: &Structure,
    right: &Structure,
    rel: &Bisim,
    max_size: usize,
    opts: EvalOptions,
) -> Result<EquivalenceReport, BisimError> {
    if !left.base().same_as(right.base()) {
        return Err(BisimError::BaseLatticeMismatch(
            left.name.clone(),
            right.name.clone(),
        ));
    }
    let atoms: BTreeSet<&str> = left
        .valuation
        .atoms()
        .iter()
        .chain(right.valuation.atoms())
        .map(|a| &**a)
        .collect();
    let atoms: Vec<&str> = atoms.into_iter().collect();
    let formulas = enumerate_formulas(&atoms, max_size);
    let compiled = Compiled::new(&formulas);
    let mut lev = Evaluator::new(&left.frame, &left.valuation, &compiled, opts);
    let mut rev = Evaluator::new(&right.frame, &right.valuation, &compiled, opts);
    let base = left.base();
    let mut report = EquivalenceReport {
        pairs: rel.len(),
        formulas: formulas.len(),
        violations: Vec::new(),
    };
    for &(a, b) in &rel.pairs {
        for (f, &root) in formulas.iter().zip(compiled.roots()) {
            let x = lev.eval(a, root)?;
            let y = rev.eval(b, root)?;
            if x != y {
                report.violations.push(Disagreement {
                    left: left.frame.worlds()[a].id.clone(),
                    right: right.frame.worlds()[b].id.clone(),
                    formula: f.clone(),
                    left_value: base.name_of(x).to_string(),
                    right_value: base.name_of(y).to_string(),
                });
            }
        }
    }
    Ok(report)
}
