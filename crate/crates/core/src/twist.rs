//! Twist structures over finite Boolean algebras.
//!
//! The carrier holds every pair `(a,b)` of base elements, read as "asserted
//! with force `a`, denied with force `b`". Pairs are ordered by
//! `(a,b) <= (c,d)` iff `a <= c` and `d <= b`, so the carrier meet is
//! `(a.c, b+d)` and the join is `(a+c, b.d)`. Negation swaps the
//! components.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::interpretation::{NegationMode, SubUniverse, SubUniverseError};
use crate::lattice::{Elem, FiniteLattice, LatticeBuilder, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("lattice `{lattice}` is not Boolean: {reason}")]
    NotBoolean { lattice: String, reason: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    SubUniverse(#[from] SubUniverseError),
}

/// Which twist subset to extract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistSubset {
    /// `a+b = 1` and `a.b = 0`: a copy of the base algebra.
    Boolean,
    /// `a+b = 1`.
    Paraconsistent,
    /// `a+b >= z`, by element name.
    AtLeast(String),
}

impl FromStr for TwistSubset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "boolean" => Ok(TwistSubset::Boolean),
            "para" | "paraconsistent" => Ok(TwistSubset::Paraconsistent),
            _ => match s.strip_prefix("atleast:") {
                Some(z) if !z.is_empty() => Ok(TwistSubset::AtLeast(z.to_string())),
                _ => Err(format!(
                    "unknown twist subset `{s}` (expected boolean, para or atleast:Z)"
                )),
            },
        }
    }
}

impl fmt::Display for TwistSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistSubset::Boolean => f.write_str("boolean"),
            TwistSubset::Paraconsistent => f.write_str("para"),
            TwistSubset::AtLeast(z) => write!(f, "atleast:{z}"),
        }
    }
}

/// How "more non-contradiction" is compared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NoncVariant {
    /// `(a,b) >= (c,d)` when `a.b <= c+d`.
    #[default]
    Sum,
    /// `(a,b) >= (c,d)` when `a.b <= c.d`.
    Product,
}

impl FromStr for NoncVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum" => Ok(NoncVariant::Sum),
            "product" => Ok(NoncVariant::Product),
            other => Err(format!("unknown non-contradiction variant `{other}`")),
        }
    }
}

impl fmt::Display for NoncVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoncVariant::Sum => "sum",
            NoncVariant::Product => "product",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classicality {
    pub exm: bool,
    pub nonc: bool,
}

impl Classicality {
    pub fn both(self) -> bool {
        self.exm && self.nonc
    }
}

#[derive(Clone)]
pub struct TwistStructure {
    base: Arc<FiniteLattice>,
    carrier: Arc<FiniteLattice>,
    pairs: Vec<(Elem, Elem)>,
}

/// Pair element name, e.g. `(a,1)`.
pub fn pair_name(base: &FiniteLattice, a: Elem, b: Elem) -> String {
    format!("({},{})", base.name_of(a), base.name_of(b))
}

/// Builds the twist structure over a Boolean algebra. Carrier elements are
/// listed first-component-major, each component in the base's order.
pub fn build_twist(
    name: impl Into<String>,
    base: Arc<FiniteLattice>,
) -> Result<TwistStructure, TwistError> {
    if !base.is_distributive() {
        return Err(TwistError::NotBoolean {
            lattice: base.name().to_string(),
            reason: "not distributive".into(),
        });
    }
    if let Some(x) = base.uncomplemented_element() {
        return Err(TwistError::NotBoolean {
            lattice: base.name().to_string(),
            reason: format!("`{}` has no complement", base.name_of(x)),
        });
    }
    let pairs: Vec<(Elem, Elem)> = base
        .elements()
        .flat_map(|a| base.elements().map(move |b| (a, b)))
        .collect();
    let mut builder = LatticeBuilder::new(name);
    for &(a, b) in &pairs {
        builder = builder
            .element(pair_name(&base, a, b))
            .complement(pair_name(&base, a, b), pair_name(&base, b, a));
    }
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            if base.leq(a, c) && base.leq(d, b) {
                builder = builder.le(pair_name(&base, a, b), pair_name(&base, c, d));
            }
        }
    }
    let carrier = Arc::new(builder.build()?);
    Ok(TwistStructure {
        base,
        carrier,
        pairs,
    })
}

impl TwistStructure {
    pub fn base(&self) -> &Arc<FiniteLattice> {
        &self.base
    }

    pub fn carrier(&self) -> &Arc<FiniteLattice> {
        &self.carrier
    }

    /// Components of a carrier element.
    pub fn pair(&self, x: Elem) -> (Elem, Elem) {
        self.pairs[x.index()]
    }

    /// Carrier element for a pair of base elements.
    pub fn elem_of(&self, a: Elem, b: Elem) -> Elem {
        let i = self
            .pairs
            .iter()
            .position(|&p| p == (a, b))
            .expect("pair of base elements");
        Elem::new(i)
    }

    /// Carrier element from base element names.
    pub fn elem_named(&self, a: &str, b: &str) -> Result<Elem, LatticeError> {
        Ok(self.elem_of(self.base.elem(a)?, self.base.elem(b)?))
    }

    /// Members of a twist subset, in carrier order.
    pub fn subset_members(&self, kind: &TwistSubset) -> Result<Vec<Elem>, LatticeError> {
        let b = &self.base;
        let z = match kind {
            TwistSubset::AtLeast(z) => Some(b.elem(z)?),
            _ => None,
        };
        Ok(self
            .carrier
            .elements()
            .filter(|&x| {
                let (p, q) = self.pair(x);
                let sum = b.join(p, q);
                match kind {
                    TwistSubset::Boolean => sum == b.top() && b.meet(p, q) == b.bottom(),
                    TwistSubset::Paraconsistent => sum == b.top(),
                    TwistSubset::AtLeast(_) => b.leq(z.expect("resolved"), sum),
                }
            })
            .collect())
    }

    pub fn classicality_pair(&self, p: Elem, q: Elem, variant: NoncVariant) -> Classicality {
        let b = &self.base;
        let (x, y) = self.pair(p);
        let (z, w) = self.pair(q);
        let exm = b.leq(b.join(z, w), b.join(x, y));
        let rhs = match variant {
            NoncVariant::Sum => b.join(z, w),
            NoncVariant::Product => b.meet(z, w),
        };
        Classicality {
            exm,
            nonc: b.leq(b.meet(x, y), rhs),
        }
    }

    /// `S1 >=Cl S2`: every member of `s1` dominates some member of `s2`
    /// in both excluded middle and non-contradiction.
    pub fn geq_cl(&self, s1: &[Elem], s2: &[Elem], variant: NoncVariant) -> bool {
        s1.iter().all(|&p| {
            s2.iter()
                .any(|&q| self.classicality_pair(p, q, variant).both())
        })
    }
}

impl fmt::Debug for TwistStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwistStructure")
            .field("base", &self.base.name())
            .field("carrier", &self.carrier.name())
            .field("size", &self.pairs.len())
            .finish()
    }
}

/// Default sub-universe name for a twist subset: `T_B`, `P` or `T(z)`.
pub fn subset_name(kind: &TwistSubset) -> String {
    match kind {
        TwistSubset::Boolean => "T_B".into(),
        TwistSubset::Paraconsistent => "P".into(),
        TwistSubset::AtLeast(z) => format!("T({z})"),
    }
}

/// A twist subset as a sub-universe of the carrier with rigid negation.
pub fn twist_subuniverse(
    twist: &TwistStructure,
    kind: &TwistSubset,
    name: Option<&str>,
) -> Result<SubUniverse, TwistError> {
    let members = twist.subset_members(kind)?;
    let name = name
        .map(str::to_string)
        .unwrap_or_else(|| subset_name(kind));
    Ok(SubUniverse::new(
        name,
        Arc::clone(twist.carrier()),
        members,
        NegationMode::Rigid,
    )?)
}

/// `S1 >=Cl S2` on sub-universes of a twist carrier.
pub fn geq_cl(
    twist: &TwistStructure,
    s1: &SubUniverse,
    s2: &SubUniverse,
    variant: NoncVariant,
) -> bool {
    twist.geq_cl(s1.members(), s2.members(), variant)
}
