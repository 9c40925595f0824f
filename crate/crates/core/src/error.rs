use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GlsmError {
    #[error("character {0} lies on a wall (zero exponent)")]
    WallCharacter(String),
    #[error("chamber {0} is not supported (a must be a superscript variable)")]
    UnsupportedChamber(String),
    #[error("malformed chamber spec `{0}`")]
    BadChamberSpec(String),
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("element has zero scalar part and is not invertible")]
    ZeroScalarPart,
    #[error("dual number with zero value part is not invertible")]
    ZeroDualValue,
    #[error("sector {0} is not a sector of the chamber's state space")]
    UnknownSector(String),
    #[error("chambers {0} and {1} are not adjacent")]
    NotAdjacent(String, String),
    #[error("hbar must be nonzero")]
    ZeroHbar,
    #[error("Gamma pole at argument {0}")]
    PoleArgument(String),
    #[error("term vanishes: <b_x - b_a> = 0 or <b_x> = 0")]
    VanishingTerm,
    #[error("q coordinate {0} is zero")]
    ZeroQ(&'static str),
    #[error("q coordinate {0} lies on the branch cut R<0")]
    BranchAmbiguity(&'static str),
    #[error("q = {0} lies outside the convergence region |q| < 1/27")]
    OutOfRegion(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("malformed series JSON: {0}")]
    BadJson(String),
    #[error("operation requires {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, GlsmError>;
