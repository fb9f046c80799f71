//! Finite lattices given by an explicit order relation, with an optional
//! complement map and designated filters.
//!
//! A [`FiniteLattice`] is validated once at construction: the declared order
//! pairs (Hasse covers or arbitrary `<=` pairs) are closed reflexively and
//! transitively, checked for antisymmetry, and every pair of elements must
//! have a least upper bound and a greatest lower bound. Join and meet tables
//! are then cached, so every lattice operation afterwards is a table lookup.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of an element inside its [`FiniteLattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub(crate) fn new(index: usize) -> Self {
        Elem(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Join,
    Meet,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Join => f.write_str("least upper bound"),
            Bound::Meet => f.write_str("greatest lower bound"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice `{0}` has no elements")]
    Empty(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("reference to undeclared element `{0}`")]
    DanglingReference(String),
    #[error("not a partial order: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAPoset(String, String),
    #[error("not a lattice: `{left}` and `{right}` have no {bound}")]
    NotALattice {
        left: String,
        right: String,
        bound: Bound,
    },
    #[error("complement of `{0}` declared twice with different values")]
    ConflictingComplement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("complement of `{0}` is undefined")]
    ComplementUndefined(String),
    #[error("filter is empty")]
    EmptyFilter,
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;

/// Declarative description of a lattice, validated by [`LatticeBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct LatticeBuilder {
    name: String,
    elements: Vec<String>,
    order: Vec<(String, String)>,
    complement: Vec<(String, String)>,
}

impl LatticeBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        LatticeBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn element(mut self, name: impl Into<String>) -> Self {
        self.elements.push(name.into());
        self
    }

    pub fn elements<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.elements.extend(names.into_iter().map(Into::into));
        self
    }

    /// Declares `lower <= upper`. Cover pairs and arbitrary order pairs are
    /// treated alike; the closure is computed at build time.
    pub fn le(mut self, lower: impl Into<String>, upper: impl Into<String>) -> Self {
        self.order.push((lower.into(), upper.into()));
        self
    }

    pub fn order<I, A, B>(mut self, pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        self.order
            .extend(pairs.into_iter().map(|(a, b)| (a.into(), b.into())));
        self
    }

    /// Declares `-x = y` (one direction only).
    pub fn complement(mut self, x: impl Into<String>, y: impl Into<String>) -> Self {
        self.complement.push((x.into(), y.into()));
        self
    }

    pub fn complements<I, A, B>(mut self, pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        self.complement
            .extend(pairs.into_iter().map(|(a, b)| (a.into(), b.into())));
        self
    }

    pub fn build(self) -> Result<FiniteLattice> {
        let n = self.elements.len();
        if n == 0 {
            return Err(LatticeError::Empty(self.name));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in self.elements.iter().enumerate() {
            if index.insert(name.clone(), Elem::new(i)).is_some() {
                return Err(LatticeError::DuplicateElement(name.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| LatticeError::DanglingReference(name.to_string()))
        };

        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in &self.order {
            let (lo, hi) = (lookup(lo)?, lookup(hi)?);
            leq[lo.index() * n + hi.index()] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::NotAPoset(
                        self.elements[i].clone(),
                        self.elements[j].clone(),
                    ));
                }
            }
        }

        let mut join = vec![Elem::new(0); n * n];
        let mut meet = vec![Elem::new(0); n * n];
        for i in 0..n {
            for j in i..n {
                let not_lattice = |bound| LatticeError::NotALattice {
                    left: self.elements[i].clone(),
                    right: self.elements[j].clone(),
                    bound,
                };
                let ub: Vec<usize> = (0..n)
                    .filter(|&k| leq[i * n + k] && leq[j * n + k])
                    .collect();
                let lub = ub
                    .iter()
                    .copied()
                    .find(|&u| ub.iter().all(|&v| leq[u * n + v]))
                    .ok_or_else(|| not_lattice(Bound::Join))?;
                let lb: Vec<usize> = (0..n)
                    .filter(|&k| leq[k * n + i] && leq[k * n + j])
                    .collect();
                let glb = lb
                    .iter()
                    .copied()
                    .find(|&g| lb.iter().all(|&v| leq[v * n + g]))
                    .ok_or_else(|| not_lattice(Bound::Meet))?;
                join[i * n + j] = Elem::new(lub);
                join[j * n + i] = Elem::new(lub);
                meet[i * n + j] = Elem::new(glb);
                meet[j * n + i] = Elem::new(glb);
            }
        }

        let mut complement = vec![None; n];
        for (x, y) in &self.complement {
            let (x, y) = (lookup(x)?, lookup(y)?);
            match complement[x.index()] {
                Some(prev) if prev != y => {
                    return Err(LatticeError::ConflictingComplement(
                        self.elements[x.index()].clone(),
                    ))
                }
                _ => complement[x.index()] = Some(y),
            }
        }

        let mut lattice = FiniteLattice {
            name: self.name,
            names: self.elements,
            index,
            leq,
            join,
            meet,
            complement,
            top: Elem::new(0),
            bottom: Elem::new(0),
        };
        lattice.top = lattice.join_all(lattice.elements());
        lattice.bottom = lattice.meet_all(lattice.elements());
        Ok(lattice)
    }
}

/// A validated finite lattice. Immutable once built.
#[derive(Clone)]
pub struct FiniteLattice {
    name: String,
    names: Vec<String>,
    index: HashMap<String, Elem>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    complement: Vec<Option<Elem>>,
    top: Elem,
    bottom: Elem,
}

impl FiniteLattice {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Elements in declaration order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Elem> + Clone + '_ {
        (0..self.names.len()).map(Elem::new)
    }

    pub fn elem(&self, name: &str) -> Result<Elem> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn elems<'a, I>(&self, names: I) -> Result<Vec<Elem>>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().map(|n| self.elem(n)).collect()
    }

    pub fn name_of(&self, x: Elem) -> &str {
        &self.names[x.index()]
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x.index() * self.len() + y.index()]
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x.index() * self.len() + y.index()]
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x.index() * self.len() + y.index()]
    }

    /// Least upper bound of a set; the empty join is the bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Greatest lower bound of a set; the empty meet is the top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn complement(&self, x: Elem) -> Result<Elem> {
        self.complement[x.index()]
            .ok_or_else(|| LatticeError::ComplementUndefined(self.name_of(x).to_string()))
    }

    pub fn complement_opt(&self, x: Elem) -> Option<Elem> {
        self.complement[x.index()]
    }

    pub fn has_total_complement(&self) -> bool {
        self.complement.iter().all(Option::is_some)
    }

    /// Declared `(x, -x)` pairs in element order.
    pub fn complement_pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.elements()
            .filter_map(|x| self.complement_opt(x).map(|y| (x, y)))
    }

    /// Hasse diagram edges `(lower, upper)`, in element order.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_distributive(&self) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                self.elements().all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// First element without a lattice complement (some `y` with
    /// `x . y = 0` and `x + y = 1`), if any.
    pub fn uncomplemented_element(&self) -> Option<Elem> {
        self.elements().find(|&x| {
            !self
                .elements()
                .any(|y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
        })
    }

    /// Structural equality: same names in the same order, same order
    /// relation and same complement map.
    pub fn same_as(&self, other: &FiniteLattice) -> bool {
        std::ptr::eq(self, other)
            || (self.names == other.names
                && self.leq == other.leq
                && self.complement == other.complement)
    }
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("name", &self.name)
            .field("elements", &self.names)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.same_as(other)
    }
}

/// Designated values of a lattice. Arbitrary nonempty subsets are accepted;
/// upward closure is reported by [`validate_filter`] but not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filter {
    contains: Vec<bool>,
    members: Vec<Elem>,
}

impl Filter {
    pub fn new(lattice: &FiniteLattice, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut contains = vec![false; lattice.len()];
        let mut list = Vec::new();
        for x in members {
            if x.index() >= lattice.len() {
                return Err(LatticeError::UnknownElement(format!("#{}", x.index())));
            }
            if !contains[x.index()] {
                contains[x.index()] = true;
                list.push(x);
            }
        }
        if list.is_empty() {
            return Err(LatticeError::EmptyFilter);
        }
        Ok(Filter {
            contains,
            members: list,
        })
    }

    /// The filter containing every element.
    pub fn full(lattice: &FiniteLattice) -> Self {
        Filter {
            contains: vec![true; lattice.len()],
            members: lattice.elements().collect(),
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.contains.get(x.index()).copied().unwrap_or(false)
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Pairs `(x, y)` with `x` in the filter, `x <= y` and `y` outside it.
    pub fn upward_violations(&self, lattice: &FiniteLattice) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for &x in &self.members {
            for y in lattice.elements() {
                if lattice.leq(x, y) && !self.contains(y) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilterReport {
    /// Warnings: `x` in the filter, `x <= y`, `y` not in the filter.
    pub upward_violations: Vec<(Elem, Elem)>,
}

impl FilterReport {
    pub fn is_upward_closed(&self) -> bool {
        self.upward_violations.is_empty()
    }
}

/// Builds a filter from element names and reports upward-closure violations.
pub fn validate_filter<'a, I>(lattice: &FiniteLattice, names: I) -> Result<(Filter, FilterReport)>
where
    I: IntoIterator<Item = &'a str>,
{
    let members = lattice.elems(names)?;
    let filter = Filter::new(lattice, members)?;
    let report = FilterReport {
        upward_violations: filter.upward_violations(lattice),
    };
    Ok((filter, report))
}
