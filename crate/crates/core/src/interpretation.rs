//! Sub-universes of a base lattice and the interpretation of base values
//! into them.
//!
//! A sub-universe is a subset of the base lattice that is order-complete on
//! its own: every pair of members has a least upper bound and a greatest
//! lower bound *among the members*. It need not be closed under the base
//! join and meet. A base value `a` is brought into a sub-universe `S` by
//!
//! * down-interpretation: the local join of `{x in S | x <= a}` (the least
//!   member of `S` when that set is empty), or
//! * up-interpretation: the local meet of `{x in S | x >= a}` (the greatest
//!   member of `S` when that set is empty).
//!
//! Both are the identity on members of `S`. Negation inside `S` is either
//! rigid (the base complement, which must stay inside `S`) or the base
//! complement followed by down- or up-interpretation.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Bound, Elem, FiniteLattice, LatticeError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Direction {
    #[default]
    Down,
    Up,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum NegationMode {
    #[default]
    Rigid,
    Down,
    Up,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Down => "down",
            Direction::Up => "up",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "down" => Ok(Direction::Down),
            "up" => Ok(Direction::Up),
            other => Err(format!("unknown interpretation direction `{other}`")),
        }
    }
}

impl fmt::Display for NegationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NegationMode::Rigid => "rigid",
            NegationMode::Down => "down",
            NegationMode::Up => "up",
        })
    }
}

impl FromStr for NegationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rigid" => Ok(NegationMode::Rigid),
            "down" => Ok(NegationMode::Down),
            "up" => Ok(NegationMode::Up),
            other => Err(format!("unknown negation mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubUniverseError {
    #[error("sub-universe `{0}` has no members")]
    Empty(String),
    #[error("sub-universe `{name}`: `{left}` and `{right}` have no local {bound}")]
    NotLocallyComplete {
        name: String,
        left: String,
        right: String,
        bound: Bound,
    },
    #[error("sub-universe `{name}` is not closed under complement: -`{element}` = `{complement}` is outside it")]
    NotComplementClosed {
        name: String,
        element: String,
        complement: String,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An order-complete subset of a base lattice with a negation mode.
#[derive(Clone)]
pub struct SubUniverse {
    name: String,
    base: Arc<FiniteLattice>,
    members: Vec<Elem>,
    contains: Vec<bool>,
    mode: NegationMode,
    top: Elem,
    bottom: Elem,
    // Indexed by base element pairs; only member entries are meaningful.
    local_join: Vec<Elem>,
    local_meet: Vec<Elem>,
    down: Vec<Elem>,
    up: Vec<Elem>,
}

impl SubUniverse {
    /// Validates `members` as a sub-universe of `base`. Members keep their
    /// given order (duplicates are dropped).
    pub fn new(
        name: impl Into<String>,
        base: Arc<FiniteLattice>,
        members: impl IntoIterator<Item = Elem>,
        mode: NegationMode,
    ) -> Result<Self, SubUniverseError> {
        let name = name.into();
        let n = base.len();
        let mut contains = vec![false; n];
        let mut list = Vec::new();
        for x in members {
            if x.index() >= n {
                return Err(LatticeError::UnknownElement(format!("#{}", x.index())).into());
            }
            if !contains[x.index()] {
                contains[x.index()] = true;
                list.push(x);
            }
        }
        if list.is_empty() {
            return Err(SubUniverseError::Empty(name));
        }

        let mut local_join = vec![list[0]; n * n];
        let mut local_meet = vec![list[0]; n * n];
        for (i, &x) in list.iter().enumerate() {
            for &y in &list[i..] {
                let incomplete = |bound| SubUniverseError::NotLocallyComplete {
                    name: name.clone(),
                    left: base.name_of(x).to_string(),
                    right: base.name_of(y).to_string(),
                    bound,
                };
                let ub: Vec<Elem> = list
                    .iter()
                    .copied()
                    .filter(|&m| base.leq(x, m) && base.leq(y, m))
                    .collect();
                let lub = ub
                    .iter()
                    .copied()
                    .find(|&u| ub.iter().all(|&v| base.leq(u, v)))
                    .ok_or_else(|| incomplete(Bound::Join))?;
                let lb: Vec<Elem> = list
                    .iter()
                    .copied()
                    .filter(|&m| base.leq(m, x) && base.leq(m, y))
                    .collect();
                let glb = lb
                    .iter()
                    .copied()
                    .find(|&g| lb.iter().all(|&v| base.leq(v, g)))
                    .ok_or_else(|| incomplete(Bound::Meet))?;
                for (p, q) in [(x, y), (y, x)] {
                    local_join[p.index() * n + q.index()] = lub;
                    local_meet[p.index() * n + q.index()] = glb;
                }
            }
        }

        let mut s = SubUniverse {
            name,
            base,
            members: list,
            contains,
            mode,
            top: Elem::new(0),
            bottom: Elem::new(0),
            local_join,
            local_meet,
            down: Vec::new(),
            up: Vec::new(),
        };
        let first = s.members[0];
        s.top = s.members.iter().fold(first, |acc, &m| s.local_join(acc, m));
        s.bottom = s.members.iter().fold(first, |acc, &m| s.local_meet(acc, m));

        let base = Arc::clone(&s.base);
        s.down = base
            .elements()
            .map(|a| s.local_join_all(s.members.iter().copied().filter(|&m| base.leq(m, a))))
            .collect();
        s.up = base
            .elements()
            .map(|a| s.local_meet_all(s.members.iter().copied().filter(|&m| base.leq(a, m))))
            .collect();

        if mode == NegationMode::Rigid {
            for &x in &s.members {
                if let Some(c) = base.complement_opt(x) {
                    if !s.contains(c) {
                        return Err(SubUniverseError::NotComplementClosed {
                            name: s.name.clone(),
                            element: base.name_of(x).to_string(),
                            complement: base.name_of(c).to_string(),
                        });
                    }
                }
            }
        }
        Ok(s)
    }

    /// Validates a sub-universe given by element names.
    pub fn from_names<'a, I>(
        name: impl Into<String>,
        base: Arc<FiniteLattice>,
        members: I,
        mode: NegationMode,
    ) -> Result<Self, SubUniverseError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let elems = base.elems(members)?;
        SubUniverse::new(name, base, elems, mode)
    }

    /// The whole base lattice as a sub-universe.
    pub fn full(
        name: impl Into<String>,
        base: Arc<FiniteLattice>,
        mode: NegationMode,
    ) -> Result<Self, SubUniverseError> {
        let elems: Vec<Elem> = base.elements().collect();
        SubUniverse::new(name, base, elems, mode)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Arc<FiniteLattice> {
        &self.base
    }

    /// Members in declaration order.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.contains.get(x.index()).copied().unwrap_or(false)
    }

    pub fn mode(&self) -> NegationMode {
        self.mode
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    /// Least upper bound of two members, taken among the members.
    pub fn local_join(&self, x: Elem, y: Elem) -> Elem {
        debug_assert!(self.contains(x) && self.contains(y));
        self.local_join[x.index() * self.base.len() + y.index()]
    }

    /// Greatest lower bound of two members, taken among the members.
    pub fn local_meet(&self, x: Elem, y: Elem) -> Elem {
        debug_assert!(self.contains(x) && self.contains(y));
        self.local_meet[x.index() * self.base.len() + y.index()]
    }

    pub fn local_join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter()
            .fold(self.bottom, |acc, x| self.local_join(acc, x))
    }

    pub fn local_meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter()
            .fold(self.top, |acc, x| self.local_meet(acc, x))
    }

    /// Interprets an arbitrary base value as a member.
    pub fn interpret(&self, a: Elem, direction: Direction) -> Elem {
        match direction {
            Direction::Down => self.down[a.index()],
            Direction::Up => self.up[a.index()],
        }
    }

    /// Negation of a member according to the negation mode.
    pub fn negate(&self, x: Elem) -> Result<Elem, LatticeError> {
        let c = self.base.complement(x)?;
        Ok(match self.mode {
            NegationMode::Rigid => c,
            NegationMode::Down => self.down[c.index()],
            NegationMode::Up => self.up[c.index()],
        })
    }

    /// Same member set (order-insensitive) over the same base.
    pub fn same_members(&self, other: &SubUniverse) -> bool {
        self.base.same_as(&other.base) && self.contains == other.contains
    }

    /// A copy with a different negation mode, revalidated.
    pub fn with_mode(&self, mode: NegationMode) -> Result<Self, SubUniverseError> {
        SubUniverse::new(
            self.name.clone(),
            Arc::clone(&self.base),
            self.members.iter().copied(),
            mode,
        )
    }
}

impl fmt::Debug for SubUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.members.iter().map(|&m| self.base.name_of(m)).collect();
        f.debug_struct("SubUniverse")
            .field("name", &self.name)
            .field("base", &self.base.name())
            .field("members", &names)
            .field("mode", &self.mode)
            .finish()
    }
}

impl PartialEq for SubUniverse {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.mode == other.mode && self.same_members(other)
    }
}

/// Name-based entry point: validates `members` inside `base`.
pub fn validate_subuniverse<'a, I>(
    name: &str,
    base: &Arc<FiniteLattice>,
    members: I,
    mode: NegationMode,
) -> Result<SubUniverse, SubUniverseError>
where
    I: IntoIterator<Item = &'a str>,
{
    SubUniverse::from_names(name, Arc::clone(base), members, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeBuilder;

    /// 0 < e, f < c < a, b < 1
    fn fig6() -> Arc<FiniteLattice> {
        Arc::new(
            LatticeBuilder::new("L6")
                .elements(["0", "e", "f", "c", "a", "b", "1"])
                .order([
                    ("0", "e"),
                    ("0", "f"),
                    ("e", "c"),
                    ("f", "c"),
                    ("c", "a"),
                    ("c", "b"),
                    ("a", "1"),
                    ("b", "1"),
                ])
                .build()
                .unwrap(),
        )
    }

    /// 0 < x < a, b < 1
    fn fig2() -> Arc<FiniteLattice> {
        Arc::new(
            LatticeBuilder::new("L")
                .elements(["0", "x", "a", "b", "1"])
                .order([("0", "x"), ("x", "a"), ("x", "b"), ("a", "1"), ("b", "1")])
                .build()
                .unwrap(),
        )
    }

    fn exlp() -> Arc<FiniteLattice> {
        let vals = ["0", "0.5", "1"];
        let mut b = LatticeBuilder::new("ExLP");
        let name = |x: &str, y: &str| format!("({x},{y})");
        for x in vals {
            for y in vals {
                b = b.element(name(x, y)).complement(name(x, y), name(y, x));
            }
        }
        // (a,b) <= (c,d) iff a <= c and d <= b, on the chain 0 < 0.5 < 1.
        for (i, x) in vals.iter().enumerate() {
            for (j, y) in vals.iter().enumerate() {
                for (k, z) in vals.iter().enumerate() {
                    for (l, w) in vals.iter().enumerate() {
                        if i <= k && l <= j {
                            b = b.le(name(x, y), name(z, w));
                        }
                    }
                }
            }
        }
        Arc::new(b.build().unwrap())
    }

    /// Brute-force local lub: scan all members for the least upper bound.
    fn brute_lub(s: &SubUniverse, xs: &[Elem]) -> Elem {
        let l = s.base();
        let ub: Vec<Elem> = s
            .members()
            .iter()
            .copied()
            .filter(|&m| xs.iter().all(|&x| l.leq(x, m)))
            .collect();
        *ub.iter()
            .find(|&&u| ub.iter().all(|&v| l.leq(u, v)))
            .unwrap()
    }

    #[test]
    fn order_complete_but_not_join_closed() {
        let l = fig6();
        let a1 = SubUniverse::from_names(
            "A1",
            l.clone(),
            ["0", "e", "f", "a", "1"],
            NegationMode::Down,
        )
        .unwrap();
        let (e, f, a) = (
            l.elem("e").unwrap(),
            l.elem("f").unwrap(),
            l.elem("a").unwrap(),
        );
        assert_eq!(a1.local_join(e, f), a);
        assert_eq!(l.name_of(l.join(e, f)), "c");
        let b = l.elem("b").unwrap();
        assert_eq!(a1.interpret(b, Direction::Down), a);
        let below_b: Vec<Elem> = a1
            .members()
            .iter()
            .copied()
            .filter(|&m| l.leq(m, b))
            .collect();
        assert_eq!(brute_lub(&a1, &below_b), a);
    }

    #[test]
    fn full_subuniverse_matches_base() {
        let l = fig6();
        let s = SubUniverse::full("L", l.clone(), NegationMode::Down).unwrap();
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(s.local_join(x, y), l.join(x, y));
                assert_eq!(s.local_meet(x, y), l.meet(x, y));
            }
            assert_eq!(s.interpret(x, Direction::Down), x);
            assert_eq!(s.interpret(x, Direction::Up), x);
        }
    }

    #[test]
    fn rigid_requires_complement_closure() {
        let l = exlp();
        let members = ["(0,1)", "(0.5,0)", "(1,0)"];
        let err =
            SubUniverse::from_names("Lin", l.clone(), members, NegationMode::Rigid).unwrap_err();
        assert_eq!(
            err,
            SubUniverseError::NotComplementClosed {
                name: "Lin".into(),
                element: "(0.5,0)".into(),
                complement: "(0,0.5)".into()
            }
        );
        let lin = SubUniverse::from_names("Lin", l.clone(), members, NegationMode::Down).unwrap();
        let x = l.elem("(0.5,0)").unwrap();
        assert_eq!(l.name_of(lin.negate(x).unwrap()), "(0,1)");
    }

    #[test]
    fn fig2_interpretation() {
        let l = fig2();
        let s =
            SubUniverse::from_names("L1", l.clone(), ["0", "x", "1"], NegationMode::Rigid).unwrap();
        let a = l.elem("a").unwrap();
        assert_eq!(l.name_of(s.interpret(a, Direction::Down)), "x");
        assert_eq!(l.name_of(s.interpret(a, Direction::Up)), "1");
    }

    #[test]
    fn chain_interpretation() {
        let l = Arc::new(
            LatticeBuilder::new("chain3")
                .elements(["0", "1'", "1"])
                .order([("0", "1'"), ("1'", "1")])
                .complements([("1", "0"), ("1'", "0"), ("0", "1")])
                .build()
                .unwrap(),
        );
        let a = SubUniverse::from_names("A", l.clone(), ["0", "1"], NegationMode::Rigid).unwrap();
        let mid = l.elem("1'").unwrap();
        assert_eq!(l.name_of(a.interpret(mid, Direction::Down)), "0");
        assert_eq!(l.name_of(a.interpret(mid, Direction::Up)), "1");
    }

    #[test]
    fn lp_down_negation() {
        let l = Arc::new(
            LatticeBuilder::new("LP")
                .elements(["{F}", "{V,F}", "{}", "{V}"])
                .order([
                    ("{F}", "{V,F}"),
                    ("{F}", "{}"),
                    ("{V,F}", "{V}"),
                    ("{}", "{V}"),
                ])
                .complements([
                    ("{V}", "{F}"),
                    ("{F}", "{V}"),
                    ("{}", "{}"),
                    ("{V,F}", "{V,F}"),
                ])
                .build()
                .unwrap(),
        );
        let cl2 = SubUniverse::from_names("CL'", l.clone(), ["{F}", "{V,F}"], NegationMode::Down)
            .unwrap();
        // -{F} = {V} is the top, and both members lie below it.
        let f = l.elem("{F}").unwrap();
        assert_eq!(l.name_of(cl2.negate(f).unwrap()), "{V,F}");
        assert!(SubUniverse::from_names("CL'", l, ["{F}", "{V,F}"], NegationMode::Rigid).is_err());
    }

    #[test]
    fn locally_incomplete_and_empty() {
        let l = fig6();
        let err = SubUniverse::from_names("S", l.clone(), ["e", "f", "1"], NegationMode::Down)
            .unwrap_err();
        assert!(matches!(
            err,
            SubUniverseError::NotLocallyComplete {
                bound: Bound::Meet,
                ..
            }
        ));
        let err = SubUniverse::from_names("S", l.clone(), [], NegationMode::Down).unwrap_err();
        assert_eq!(err, SubUniverseError::Empty("S".into()));
        let err = SubUniverse::from_names("S", l, ["zz"], NegationMode::Down).unwrap_err();
        assert!(matches!(
            err,
            SubUniverseError::Lattice(LatticeError::UnknownElement(_))
        ));
    }

    #[test]
    fn diamond_rigid_negation() {
        let l = Arc::new(
            LatticeBuilder::new("D")
                .elements(["0", "a", "b", "1"])
                .order([("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
                .complements([("a", "b"), ("b", "a"), ("0", "1"), ("1", "0")])
                .build()
                .unwrap(),
        );
        let s = SubUniverse::full("D", l.clone(), NegationMode::Rigid).unwrap();
        assert_eq!(l.name_of(s.negate(l.elem("a").unwrap()).unwrap()), "b");
    }
}
