//! Modal logic over finite lattices where each world carries its own
//! sub-universe of a common base lattice.
//!
//! * [`lattice`]: finite lattices, complements, filters.
//! * [`interpretation`]: sub-universes and down/up interpretation.
//! * [`formula`]: modal formula syntax.
//! * [`semantics`]: frames, structures, evaluation, bisimulation.
//! * [`twist`]: twist structures over Boolean algebras.
//! * [`frames`]: frame classes, frame validity, countermodel search.
//!
//! The `parallel` feature (on by default) runs frame searches on rayon;
//! results are identical with it off.

pub mod formula;
pub mod frames;
pub mod interpretation;
pub mod lattice;
pub mod par;
pub mod semantics;
pub mod twist;

pub use formula::{desugar, enumerate_formulas, parse, render, Formula, SyntaxError};
pub use frames::{
    class_check, classify_frame, countermodel_search, enumerate_frames, frame_satisfies, ClassKind,
    ClassReport, Family, FrameClassSpec, FrameError, FrameVerdict, SearchConfig, SearchTarget,
    ValidityMode,
};
pub use interpretation::{
    validate_subuniverse, Direction, NegationMode, SubUniverse, SubUniverseError,
};
pub use lattice::{validate_filter, Elem, Filter, FiniteLattice, LatticeBuilder, LatticeError};
pub use par::Exec;
pub use semantics::{
    bisim_equivalence_check, greatest_bisimulation, Bisim, EvalError, EvalOptions, Frame,
    Structure, StructureError, Valuation, World,
};
pub use twist::{build_twist, geq_cl, twist_subuniverse, NoncVariant, TwistStructure, TwistSubset};
