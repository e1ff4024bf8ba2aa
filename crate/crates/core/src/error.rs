use thiserror::Error;

/// Pipeline stage at which [`represent`](crate::super_rough::represent) gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Axioms,
    Singletons,
    Blocks,
    Operations,
    PreRough,
    Space,
    RoundTrip,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stage::Axioms => "axioms",
            Stage::Singletons => "singletons",
            Stage::Blocks => "blocks",
            Stage::Operations => "operations",
            Stage::PreRough => "prerough",
            Stage::Space => "space",
            Stage::RoundTrip => "round-trip",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a lattice: `{left}` and `{right}` have no {missing}")]
    NotALattice {
        left: String,
        right: String,
        missing: &'static str,
    },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("invalid approximation space: {0}")]
    InvalidSpace(String),
    #[error("size cap exceeded: {what} has {size} elements, cap is {cap}")]
    SizeCapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("operation `{op}` expects {expected} arguments, got {found}")]
    ArityMismatch { op: String, expected: usize, found: usize },
    #[error("not a rough algebra: {0}")]
    NotARoughAlgebra(String),
    #[error("block is not an interval: {0}")]
    NotAnInterval(String),
    #[error("invalid block system: {0}")]
    InvalidBlockSystem(String),
    #[error("join formula gives {formula} but the closure is {closure}")]
    FormulaClosureMismatch { formula: String, closure: String },
    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("convex sublattices fail {0}")]
    ConvexConditionViolation(String),
    #[error("representation failed at stage {stage}: {detail}")]
    RepresentationFailure { stage: Stage, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
