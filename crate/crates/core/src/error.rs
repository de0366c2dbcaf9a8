use thiserror::Error;

/// Errors raised while building or checking finite categorical data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input parse error: {0}")]
    InputParse(String),

    #[error("missing composite for composable pair ({g}, {f})")]
    MissingComposite { g: String, f: String },

    #[error("composition is not associative on ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },

    #[error("bad identity: {0}")]
    BadIdentity(String),

    #[error("ill-typed composition entry ({g}, {f}) -> {gf}")]
    BadComposite { g: String, f: String, gf: String },

    #[error("duplicate identifier `{0}`")]
    Duplicate(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("size budget exceeded: {what} would exceed {limit}")]
    SizeBudgetExceeded { what: String, limit: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("bad zigzag type: {0}")]
    BadZigzagType(String),

    #[error("functor is not a Grothendieck {0}")]
    NotAFibration(String),

    #[error("squares do not share the pasting edge: {0}")]
    EdgeMismatch(String),

    #[error("cube does not commute: {0}")]
    CubeNotCommutative(String),

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
