//! Frame classes, frame validity and bounded countermodel search.
//!
//! A frame is valid for a formula when every model over it (every atomic
//! valuation with values in each world's universe) satisfies the formula at
//! every world. Validity is decided by exhaustive enumeration, so everything
//! here is bounded: by a world count for classes and by a valuation budget
//! per frame.
//!
//! Enumeration order is fixed and documented on each function; searches
//! report the least hit in that order whatever [`Exec`] strategy is used.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::Formula;
use crate::interpretation::SubUniverse;
use crate::lattice::{Elem, Filter, FiniteLattice};
use crate::par::Exec;
use crate::semantics::{
    Compiled, EvalError, EvalOptions, Evaluator, Frame, StructureError, Valuation, World,
};
use crate::twist::{NoncVariant, TwistStructure};

/// Default per-frame valuation budget.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("search needs {required} valuations but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("world `{world}` uses universe `{universe}`, which is not in the family")]
    UniverseOutsideFamily { world: String, universe: String },
    #[error("family `{family}`: comparator is not a preorder ({reason})")]
    NotAPreorder { family: String, reason: String },
    #[error("family `{0}` is empty")]
    EmptyFamily(String),
    #[error("family universes are not over one base lattice")]
    MixedBases,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Universes allowed in a frame class, with a classicality preorder
/// `geq[i][j]` meaning "universe i is at least as classical as j".
#[derive(Clone, Debug)]
pub struct Family {
    name: String,
    universes: Vec<Arc<SubUniverse>>,
    geq: Vec<Vec<bool>>,
}

impl Family {
    pub fn new(
        name: impl Into<String>,
        universes: Vec<Arc<SubUniverse>>,
        geq: Vec<Vec<bool>>,
    ) -> Result<Family, FrameError> {
        let name = name.into();
        let n = universes.len();
        if n == 0 {
            return Err(FrameError::EmptyFamily(name));
        }
        if universes
            .iter()
            .any(|u| !u.base().same_as(universes[0].base()))
        {
            return Err(FrameError::MixedBases);
        }
        let bad = |reason: String| FrameError::NotAPreorder {
            family: name.clone(),
            reason,
        };
        if geq.len() != n || geq.iter().any(|row| row.len() != n) {
            return Err(bad(format!("expected a {n}x{n} matrix")));
        }
        for i in 0..n {
            if !geq[i][i] {
                return Err(bad(format!(
                    "`{}` is not related to itself",
                    universes[i].name()
                )));
            }
            for j in 0..n {
                for k in 0..n {
                    if geq[i][j] && geq[j][k] && !geq[i][k] {
                        return Err(bad(format!(
                            "`{}` >= `{}` >= `{}` but not `{}` >= `{}`",
                            universes[i].name(),
                            universes[j].name(),
                            universes[k].name(),
                            universes[i].name(),
                            universes[k].name()
                        )));
                    }
                }
            }
        }
        Ok(Family {
            name,
            universes,
            geq,
        })
    }

    /// Family ordered by the twist classicality relation.
    pub fn from_twist(
        name: impl Into<String>,
        twist: &TwistStructure,
        universes: Vec<Arc<SubUniverse>>,
        variant: NoncVariant,
    ) -> Result<Family, FrameError> {
        let geq = universes
            .iter()
            .map(|a| {
                universes
                    .iter()
                    .map(|b| twist.geq_cl(a.members(), b.members(), variant))
                    .collect()
            })
            .collect();
        Family::new(name, universes, geq)
    }

    /// Family where a universe only compares to universes with the same
    /// members.
    pub fn discrete(
        name: impl Into<String>,
        universes: Vec<Arc<SubUniverse>>,
    ) -> Result<Family, FrameError> {
        let geq = universes
            .iter()
            .map(|a| universes.iter().map(|b| a.same_members(b)).collect())
            .collect();
        Family::new(name, universes, geq)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universes(&self) -> &[Arc<SubUniverse>] {
        &self.universes
    }

    pub fn len(&self) -> usize {
        self.universes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universes.is_empty()
    }

    pub fn base(&self) -> &Arc<FiniteLattice> {
        self.universes[0].base()
    }

    pub fn geq(&self, i: usize, j: usize) -> bool {
        self.geq[i][j]
    }

    pub fn index_of(&self, u: &SubUniverse) -> Option<usize> {
        self.universes.iter().position(|v| v.same_members(u))
    }

    pub fn index_by_name(&self, name: &str) -> Option<usize> {
        self.universes.iter().position(|v| v.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    /// No condition on universes or accessibility.
    Any,
    /// Every world carries family member `i`.
    Uniform(usize),
    /// `wRw'` implies `L_w' >=Cl L_w`.
    Increasing,
    /// `wRw'` implies `L_w >=Cl L_w'`.
    Decreasing,
    /// If `w` sees distinct `w'`, `w''` and `L_w >=Cl` both, some `w*` seen
    /// by both has `L_w* >=Cl` both.
    Dialectic,
}

/// Class name as used on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassName {
    Uniform,
    Inc,
    Dec,
    Dial,
}

impl FromStr for ClassName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(ClassName::Uniform),
            "inc" => Ok(ClassName::Inc),
            "dec" => Ok(ClassName::Dec),
            "dial" => Ok(ClassName::Dial),
            other => Err(format!("unknown frame class `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FrameClassSpec {
    pub family: Arc<Family>,
    pub kind: ClassKind,
    pub require_transitive: bool,
    pub require_serial: bool,
    pub filter: Filter,
}

impl FrameClassSpec {
    /// Increasing and decreasing classes require transitivity by default.
    pub fn new(family: Arc<Family>, kind: ClassKind, filter: Filter) -> FrameClassSpec {
        FrameClassSpec {
            family,
            kind,
            require_transitive: matches!(kind, ClassKind::Increasing | ClassKind::Decreasing),
            require_serial: false,
            filter,
        }
    }

    pub fn transitive(mut self, yes: bool) -> FrameClassSpec {
        self.require_transitive = yes;
        self
    }

    pub fn serial(mut self, yes: bool) -> FrameClassSpec {
        self.require_serial = yes;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassFailure {
    NotTransitive {
        from: String,
        via: String,
        to: String,
    },
    NotSerial {
        world: String,
    },
    NotUniform {
        world: String,
    },
    NotIncreasing {
        from: String,
        to: String,
    },
    NotDecreasing {
        from: String,
        to: String,
    },
    NotDialectic {
        world: String,
        left: String,
        right: String,
    },
}

impl fmt::Display for ClassFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassFailure::NotTransitive { from, via, to } => {
                write!(f, "not transitive: {from} -> {via} -> {to} but not {from} -> {to}")
            }
            ClassFailure::NotSerial { world } => write!(f, "not serial: {world} has no successor"),
            ClassFailure::NotUniform { world } => write!(f, "not uniform: universe of {world} differs"),
            ClassFailure::NotIncreasing { from, to } => {
                write!(f, "not increasing: {from} -> {to} moves to a less classical universe")
            }
            ClassFailure::NotDecreasing { from, to } => {
                write!(f, "not decreasing: {from} -> {to} moves to a more classical universe")
            }
            ClassFailure::NotDialectic { world, left, right } => write!(
                f,
                "not dialectic: {world} sees {left} and {right}, which share no more classical successor"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassReport {
    pub failures: Vec<ClassFailure>,
}

impl ClassReport {
    pub fn is_member(&self) -> bool {
        self.failures.is_empty()
    }
}

fn family_indices(frame: &Frame, family: &Family) -> Result<Vec<usize>, FrameError> {
    frame
        .worlds()
        .iter()
        .map(|w| {
            family
                .index_of(&w.universe)
                .ok_or_else(|| FrameError::UniverseOutsideFamily {
                    world: w.id.clone(),
                    universe: w.universe.name().to_string(),
                })
        })
        .collect()
}

/// Checks every class condition and lists each failure with a witness.
pub fn classify_frame(frame: &Frame, spec: &FrameClassSpec) -> Result<ClassReport, FrameError> {
    let idx = family_indices(frame, &spec.family)?;
    let fam = &spec.family;
    let id = |w: usize| frame.worlds()[w].id.clone();
    let mut failures = Vec::new();
    let n = frame.len();

    if spec.require_transitive {
        for (a, b) in frame.edges() {
            for &c in frame.successors(b) {
                if !frame.has_edge(a, c) {
                    failures.push(ClassFailure::NotTransitive {
                        from: id(a),
                        via: id(b),
                        to: id(c),
                    });
                }
            }
        }
    }
    if spec.require_serial {
        for w in 0..n {
            if frame.successors(w).is_empty() {
                failures.push(ClassFailure::NotSerial { world: id(w) });
            }
        }
    }
    match spec.kind {
        ClassKind::Any => {}
        ClassKind::Uniform(s) => {
            for w in 0..n {
                if !fam.universes()[s].same_members(frame.universe(w)) {
                    failures.push(ClassFailure::NotUniform { world: id(w) });
                }
            }
        }
        ClassKind::Increasing => {
            for (a, b) in frame.edges() {
                if !fam.geq(idx[b], idx[a]) {
                    failures.push(ClassFailure::NotIncreasing {
                        from: id(a),
                        to: id(b),
                    });
                }
            }
        }
        ClassKind::Decreasing => {
            for (a, b) in frame.edges() {
                if !fam.geq(idx[a], idx[b]) {
                    failures.push(ClassFailure::NotDecreasing {
                        from: id(a),
                        to: id(b),
                    });
                }
            }
        }
        ClassKind::Dialectic => {
            for w in 0..n {
                let succ = frame.successors(w);
                for (i, &l) in succ.iter().enumerate() {
                    for &r in &succ[i + 1..] {
                        if !(fam.geq(idx[w], idx[l]) && fam.geq(idx[w], idx[r])) {
                            continue;
                        }
                        let joined = (0..n).any(|s| {
                            frame.has_edge(l, s)
                                && frame.has_edge(r, s)
                                && fam.geq(idx[s], idx[l])
                                && fam.geq(idx[s], idx[r])
                        });
                        if !joined {
                            failures.push(ClassFailure::NotDialectic {
                                world: id(w),
                                left: id(l),
                                right: id(r),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(ClassReport { failures })
}

/// World names used by enumerated frames: `w`, `w'`, `w''`, ...
pub fn world_name(i: usize) -> String {
    format!("w{}", "'".repeat(i))
}

/// All frames with 1..=`max_worlds` worlds that belong to the class.
///
/// Order: world count ascending; then universe assignments as an odometer
/// over the family order with the first world most significant; then
/// relations as bitmasks ascending, where edge `i -> j` is bit `i*n + j`.
pub fn enumerate_frames(
    spec: &FrameClassSpec,
    max_worlds: usize,
) -> Result<Vec<Frame>, FrameError> {
    let fam = &spec.family;
    let base = fam.base();
    let mut out = Vec::new();
    for n in 1..=max_worlds {
        let k = fam.len();
        let assignments = k.pow(n as u32);
        for code in 0..assignments {
            let mut digits = vec![0; n];
            let mut c = code;
            for d in digits.iter_mut().rev() {
                *d = c % k;
                c /= k;
            }
            if let ClassKind::Uniform(s) = spec.kind {
                if digits
                    .iter()
                    .any(|&d| !fam.universes()[d].same_members(&fam.universes()[s]))
                {
                    continue;
                }
            }
            let worlds: Vec<World> = digits
                .iter()
                .enumerate()
                .map(|(i, &d)| World::new(world_name(i), Arc::clone(&fam.universes()[d])))
                .collect();
            for mask in 0u64..(1u64 << (n * n)) {
                let edges = (0..n * n)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| (b / n, b % n));
                let frame = Frame::new(
                    format!("F{}", out.len()),
                    Arc::clone(base),
                    worlds.clone(),
                    edges,
                    spec.filter.clone(),
                )?;
                if classify_frame(&frame, spec)?.is_member() {
                    out.push(frame);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidityMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// A valuation under which some world falls outside the filter.
#[derive(Clone, Debug)]
pub struct Countermodel {
    pub frame: Frame,
    pub valuation: Valuation,
    pub world: usize,
    pub value: Elem,
    /// Position of the valuation in the enumeration (or sample) order.
    pub index: u128,
}

impl Countermodel {
    pub fn world_id(&self) -> &str {
        &self.frame.worlds()[self.world].id
    }

    pub fn value_name(&self) -> &str {
        self.frame.base().name_of(self.value)
    }
}

#[derive(Clone, Debug)]
pub enum FrameVerdict {
    Valid { valuations: u128 },
    Counter(Box<Countermodel>),
}

impl FrameVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, FrameVerdict::Valid { .. })
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            FrameVerdict::Counter(c) => Some(c),
            FrameVerdict::Valid { .. } => None,
        }
    }
}

/// Bounds and execution settings shared by class checks and searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_worlds: usize,
    /// Valuations allowed per frame.
    pub budget: u128,
    pub eval: EvalOptions,
    pub exec: Exec,
}

impl SearchConfig {
    pub fn new(max_worlds: usize) -> SearchConfig {
        SearchConfig {
            max_worlds,
            budget: DEFAULT_BUDGET,
            eval: EvalOptions::default(),
            exec: Exec::default(),
        }
    }
}

/// Digit radices for valuations over `frame` and `atoms`: world-major,
/// atoms in the given (sorted) order.
fn radices(frame: &Frame, atoms: usize) -> Vec<usize> {
    (0..frame.len())
        .flat_map(|w| std::iter::repeat_n(frame.universe(w).len(), atoms))
        .collect()
}

/// Number of valuations of `atoms` atoms over `frame`, saturating.
pub fn valuation_count(frame: &Frame, atoms: usize) -> u128 {
    radices(frame, atoms)
        .iter()
        .fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
}

fn decode(frame: &Frame, atoms: &[Arc<str>], radix: &[usize], mut index: u128) -> Valuation {
    let mut val = Valuation::new(frame.len(), atoms.iter().map(|a| &**a));
    let mut digits = vec![0usize; radix.len()];
    for (d, &r) in digits.iter_mut().zip(radix).rev() {
        *d = (index % r as u128) as usize;
        index /= r as u128;
    }
    apply_digits(frame, atoms.len(), &digits, &mut val);
    val
}

fn apply_digits(frame: &Frame, atoms: usize, digits: &[usize], val: &mut Valuation) {
    for (pos, &d) in digits.iter().enumerate() {
        let (w, a) = (pos / atoms, pos % atoms);
        val.set_index(w, a, frame.universe(w).members()[d]);
    }
}

/// First world outside the filter under `val`, with its value.
fn failing_world(
    frame: &Frame,
    val: &Valuation,
    compiled: &Compiled,
    opts: EvalOptions,
) -> Result<Option<(usize, Elem)>, EvalError> {
    let mut ev = Evaluator::new(frame, val, compiled, opts);
    for w in 0..frame.len() {
        let v = ev.eval(w, compiled.root(0))?;
        if !frame.filter().contains(v) {
            return Ok(Some((w, v)));
        }
    }
    Ok(None)
}

/// Validity of `f` on `frame`, quantifying over the atoms of `f`.
///
/// Exhaustive mode walks valuations as an odometer: worlds in declaration
/// order (first most significant), atoms sorted, values in the order of the
/// world's universe. The least failing valuation is reported. Sample mode
/// draws `count` valuations from a seeded generator and reports the first
/// failing draw.
pub fn frame_satisfies(
    frame: &Frame,
    f: &Formula,
    mode: ValidityMode,
    budget: u128,
    opts: EvalOptions,
    exec: Exec,
) -> Result<FrameVerdict, FrameError> {
    let atoms: Vec<Arc<str>> = f.atoms().into_iter().collect();
    let compiled = Compiled::new([f]);
    let radix = radices(frame, atoms.len());
    match mode {
        ValidityMode::Exhaustive => {
            let total = valuation_count(frame, atoms.len());
            if total > budget {
                return Err(FrameError::BudgetExceeded {
                    required: total,
                    budget,
                });
            }
            let hit = exec.try_find_first(total as usize, |i| {
                let val = decode(frame, &atoms, &radix, i as u128);
                Ok::<_, EvalError>(failing_world(frame, &val, &compiled, opts)?.map(|wv| (val, wv)))
            })?;
            Ok(match hit {
                None => FrameVerdict::Valid { valuations: total },
                Some((i, (valuation, (world, value)))) => {
                    FrameVerdict::Counter(Box::new(Countermodel {
                        frame: frame.clone(),
                        valuation,
                        world,
                        value,
                        index: i as u128,
                    }))
                }
            })
        }
        ValidityMode::Sample { count, seed } => {
            if count as u128 > budget {
                return Err(FrameError::BudgetExceeded {
                    required: count as u128,
                    budget,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<Vec<usize>> = (0..count)
                .map(|_| radix.iter().map(|&r| rng.random_range(0..r)).collect())
                .collect();
            let hit = exec.try_find_first(draws.len(), |i| {
                let mut val = Valuation::new(frame.len(), atoms.iter().map(|a| &**a));
                apply_digits(frame, atoms.len(), &draws[i], &mut val);
                Ok::<_, EvalError>(failing_world(frame, &val, &compiled, opts)?.map(|wv| (val, wv)))
            })?;
            Ok(match hit {
                None => FrameVerdict::Valid {
                    valuations: count as u128,
                },
                Some((i, (valuation, (world, value)))) => {
                    FrameVerdict::Counter(Box::new(Countermodel {
                        frame: frame.clone(),
                        valuation,
                        world,
                        value,
                        index: i as u128,
                    }))
                }
            })
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassCheckReport {
    pub max_worlds: usize,
    /// Frames in the class at this bound.
    pub frames: usize,
    pub countermodel: Option<Box<Countermodel>>,
}

/// Exhaustive validity over every frame of the class up to `max_worlds`.
/// Reports the first countermodel in frame order, then valuation order.
/// The budget applies to each frame; any frame over budget aborts the check.
pub fn class_check(
    spec: &FrameClassSpec,
    f: &Formula,
    cfg: &SearchConfig,
) -> Result<ClassCheckReport, FrameError> {
    let SearchConfig {
        max_worlds,
        budget,
        eval: opts,
        exec,
    } = *cfg;
    let frames = enumerate_frames(spec, max_worlds)?;
    let atoms = f.atoms().len();
    for frame in &frames {
        let required = valuation_count(frame, atoms);
        if required > budget {
            return Err(FrameError::BudgetExceeded { required, budget });
        }
    }
    let hit = exec.try_find_first(frames.len(), |i| {
        let verdict = frame_satisfies(
            &frames[i],
            f,
            ValidityMode::Exhaustive,
            budget,
            opts,
            Exec::Sequential,
        )?;
        Ok::<_, FrameError>(match verdict {
            FrameVerdict::Counter(c) => Some(c),
            FrameVerdict::Valid { .. } => None,
        })
    })?;
    Ok(ClassCheckReport {
        max_worlds,
        frames: frames.len(),
        countermodel: hit.map(|(_, c)| c),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    /// Some world's value is outside the filter.
    FailAtSomeWorld,
    /// Some world's value is inside the filter.
    HoldAtSomeWorld,
    /// Some world with at least one successor fails the formula although
    /// every successor satisfies the support formula.
    FailWithSupport(Formula),
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub frame: Frame,
    pub valuation: Valuation,
    pub world: usize,
    pub value: Elem,
}

fn target_world(
    frame: &Frame,
    val: &Valuation,
    compiled: &Compiled,
    target: &SearchTarget,
    opts: EvalOptions,
) -> Result<Option<(usize, Elem)>, EvalError> {
    let mut ev = Evaluator::new(frame, val, compiled, opts);
    let filter = frame.filter();
    for w in 0..frame.len() {
        let v = ev.eval(w, compiled.root(0))?;
        let hit = match target {
            SearchTarget::FailAtSomeWorld => !filter.contains(v),
            SearchTarget::HoldAtSomeWorld => filter.contains(v),
            SearchTarget::FailWithSupport(_) => {
                let succ = frame.successors(w);
                if filter.contains(v) || succ.is_empty() {
                    false
                } else {
                    let mut supported = true;
                    for &u in succ {
                        if !filter.contains(ev.eval(u, compiled.root(1))?) {
                            supported = false;
                            break;
                        }
                    }
                    supported
                }
            }
        };
        if hit {
            return Ok(Some((w, v)));
        }
    }
    Ok(None)
}

/// Searches all models over `universes` with up to `max_worlds` worlds
/// (any relation) for a world meeting `target`. Order: frames as in
/// [`enumerate_frames`], then valuations as in [`frame_satisfies`], then
/// worlds. Atoms are those of the formula and of the support formula.
pub fn countermodel_search(
    universes: Vec<Arc<SubUniverse>>,
    filter: Filter,
    f: &Formula,
    target: &SearchTarget,
    cfg: &SearchConfig,
) -> Result<Option<SearchHit>, FrameError> {
    let SearchConfig {
        max_worlds,
        budget,
        eval: opts,
        exec,
    } = *cfg;
    let family = Arc::new(Family::discrete("search", universes)?);
    let spec = FrameClassSpec::new(family, ClassKind::Any, filter);
    let frames = enumerate_frames(&spec, max_worlds)?;
    let mut formulas = vec![f];
    if let SearchTarget::FailWithSupport(g) = target {
        formulas.push(g);
    }
    let compiled = Compiled::new(formulas);
    let atoms: Vec<Arc<str>> = compiled.atoms().to_vec();
    for frame in &frames {
        let required = valuation_count(frame, atoms.len());
        if required > budget {
            return Err(FrameError::BudgetExceeded { required, budget });
        }
    }
    let hit = exec.try_find_first(frames.len(), |i| {
        let frame = &frames[i];
        let radix = radices(frame, atoms.len());
        for idx in 0..valuation_count(frame, atoms.len()) {
            let val = decode(frame, &atoms, &radix, idx);
            if let Some((w, v)) = target_world(frame, &val, &compiled, target, opts)? {
                return Ok::<_, FrameError>(Some(SearchHit {
                    frame: frame.clone(),
                    valuation: val,
                    world: w,
                    value: v,
                }));
            }
        }
        Ok(None)
    })?;
    Ok(hit.map(|(_, h)| h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::interpretation::NegationMode;
    use crate::lattice::LatticeBuilder;
    use crate::twist::{build_twist, twist_subuniverse, TwistSubset};

    fn diamond_twist() -> TwistStructure {
        let b = Arc::new(
            LatticeBuilder::new("B")
                .elements(["0", "a", "b", "1"])
                .order([("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
                .complements([("a", "b"), ("b", "a"), ("0", "1"), ("1", "0")])
                .build()
                .unwrap(),
        );
        build_twist("T", b).unwrap()
    }

    fn twist_family(t: &TwistStructure, kinds: &[TwistSubset]) -> Arc<Family> {
        let us = kinds
            .iter()
            .map(|k| Arc::new(twist_subuniverse(t, k, None).unwrap()))
            .collect();
        Arc::new(Family::from_twist("fam", t, us, NoncVariant::Sum).unwrap())
    }

    fn boolean2() -> Arc<SubUniverse> {
        let l = Arc::new(
            LatticeBuilder::new("2")
                .elements(["0", "1"])
                .le("0", "1")
                .complements([("0", "1"), ("1", "0")])
                .build()
                .unwrap(),
        );
        Arc::new(SubUniverse::full("2", l, NegationMode::Rigid).unwrap())
    }

    fn top_filter(l: &FiniteLattice) -> Filter {
        Filter::new(l, [l.top()]).unwrap()
    }

    #[test]
    fn uniform_single_world_count() {
        let t = diamond_twist();
        let fam = twist_family(&t, &[TwistSubset::AtLeast("1".into())]);
        let spec = FrameClassSpec::new(fam, ClassKind::Uniform(0), Filter::full(t.carrier()));
        assert_eq!(enumerate_frames(&spec, 1).unwrap().len(), 2);
    }

    #[test]
    fn increasing_single_world_count() {
        let t = diamond_twist();
        let kinds = [
            TwistSubset::Boolean,
            TwistSubset::AtLeast("1".into()),
            TwistSubset::AtLeast("a".into()),
        ];
        let fam = twist_family(&t, &kinds);
        let spec = FrameClassSpec::new(fam, ClassKind::Increasing, Filter::full(t.carrier()));
        assert_eq!(enumerate_frames(&spec, 1).unwrap().len(), 6);
    }

    #[test]
    fn enumerated_frames_classify_as_members() {
        let t = diamond_twist();
        let fam = twist_family(
            &t,
            &[TwistSubset::Boolean, TwistSubset::AtLeast("1".into())],
        );
        let spec = FrameClassSpec::new(fam, ClassKind::Decreasing, Filter::full(t.carrier()));
        let frames = enumerate_frames(&spec, 2).unwrap();
        assert!(!frames.is_empty());
        for fr in &frames {
            assert!(classify_frame(fr, &spec).unwrap().is_member());
            assert!(fr.is_transitive());
        }
    }

    #[test]
    fn dialectic_fork_without_join() {
        let t = diamond_twist();
        let kinds = [
            TwistSubset::Boolean,
            TwistSubset::AtLeast("a".into()),
            TwistSubset::AtLeast("b".into()),
        ];
        let fam = twist_family(&t, &kinds);
        let us = fam.universes().to_vec();
        let worlds = vec![
            World::new("w", us[0].clone()),
            World::new("w'", us[1].clone()),
            World::new("w''", us[2].clone()),
        ];
        let frame = Frame::new(
            "fork",
            t.carrier().clone(),
            worlds,
            [(0, 1), (0, 2)],
            Filter::full(t.carrier()),
        )
        .unwrap();
        let spec = FrameClassSpec::new(fam, ClassKind::Dialectic, Filter::full(t.carrier()));
        let report = classify_frame(&frame, &spec).unwrap();
        assert_eq!(
            report.failures,
            vec![ClassFailure::NotDialectic {
                world: "w".into(),
                left: "w'".into(),
                right: "w''".into()
            }]
        );
    }

    #[test]
    fn vacuous_box_is_valid() {
        let u = boolean2();
        let l = u.base().clone();
        let frame =
            Frame::new("F", l.clone(), vec![World::new("w", u)], [], top_filter(&l)).unwrap();
        let v = frame_satisfies(
            &frame,
            &parse("[]p").unwrap(),
            ValidityMode::Exhaustive,
            DEFAULT_BUDGET,
            EvalOptions::default(),
            Exec::Sequential,
        )
        .unwrap();
        assert!(v.is_valid());
    }

    #[test]
    fn classical_frame_validates_k() {
        let u = boolean2();
        let l = u.base().clone();
        let worlds = vec![World::new("w", u.clone()), World::new("v", u)];
        let frame = Frame::new(
            "F",
            l.clone(),
            worlds,
            [(0, 1), (1, 0), (1, 1)],
            top_filter(&l),
        )
        .unwrap();
        let k = parse("[](p -> q) -> ([]p -> []q)").unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let v = frame_satisfies(
                &frame,
                &k,
                ValidityMode::Exhaustive,
                DEFAULT_BUDGET,
                EvalOptions::default(),
                exec,
            )
            .unwrap();
            assert!(v.is_valid());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let u = boolean2();
        let l = u.base().clone();
        let worlds = vec![World::new("w", u.clone()), World::new("v", u)];
        let frame = Frame::new("F", l.clone(), worlds, [], top_filter(&l)).unwrap();
        let err = frame_satisfies(
            &frame,
            &parse("p & q").unwrap(),
            ValidityMode::Exhaustive,
            15,
            EvalOptions::default(),
            Exec::Sequential,
        )
        .unwrap_err();
        assert_eq!(
            err,
            FrameError::BudgetExceeded {
                required: 16,
                budget: 15
            }
        );
    }

    #[test]
    fn sampling_is_reproducible() {
        let u = boolean2();
        let l = u.base().clone();
        let worlds = vec![World::new("w", u.clone()), World::new("v", u)];
        let frame = Frame::new("F", l.clone(), worlds, [(0, 1)], top_filter(&l)).unwrap();
        let f = parse("[]p").unwrap();
        let mode = ValidityMode::Sample { count: 20, seed: 7 };
        let a = frame_satisfies(
            &frame,
            &f,
            mode,
            DEFAULT_BUDGET,
            EvalOptions::default(),
            Exec::Parallel,
        )
        .unwrap();
        let b = frame_satisfies(
            &frame,
            &f,
            mode,
            DEFAULT_BUDGET,
            EvalOptions::default(),
            Exec::Sequential,
        )
        .unwrap();
        let (a, b) = (a.countermodel().unwrap(), b.countermodel().unwrap());
        assert_eq!((a.index, &a.valuation), (b.index, &b.valuation));
    }

    #[test]
    fn excluded_middle_has_no_classical_countermodel() {
        let u = boolean2();
        let l = u.base().clone();
        let hit = countermodel_search(
            vec![u],
            top_filter(&l),
            &parse("p | ~p").unwrap(),
            &SearchTarget::FailAtSomeWorld,
            &SearchConfig::new(2),
        )
        .unwrap();
        assert!(hit.is_none());
    }
}
