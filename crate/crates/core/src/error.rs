use thiserror::Error;

/// Every failure the engine can report. Cap and normality failures are
/// always surfaced; nothing degrades silently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("enumeration exceeded the order cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("map is not an action by automorphisms: {0}")]
    NotAnAction(String),
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("not found: {0}")]
    NotFound(String),
    #[error("search space exceeded: {0}")]
    SearchSpaceExceeded(String),
    #[error("crossed-structure axiom `{axiom}` fails at {witness}")]
    AxiomViolation { axiom: String, witness: String },
    #[error("image is not normal in the kernel: {0}")]
    NormalityViolation(String),
    #[error("mapping-cone precondition fails: {0}")]
    StarConditionViolation(String),
    #[error("denominator is not contained in numerator: {0}")]
    InclusionViolation(String),
    #[error("identity `{identity}` fails at {witness}")]
    IdentityViolation { identity: String, witness: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
