use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends (the CLI maps it to exit codes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input parses but violates a hypothesis (not primitive, misaligned, ...).
    Precondition,
    /// A dimension that was supposed to be finite is infinite.
    NonFinite,
    /// Malformed text or schema.
    Parse,
    /// Stabilization schedule exhausted or reduction budget exceeded.
    Exhausted,
    /// Kernel inconsistency; should never happen.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
    #[error("weights must be positive integers, got {0:?}")]
    InvalidWeights(Vec<u32>),
    #[error("no positive weight vector makes the equations weighted homogeneous")]
    NoWeights,
    #[error("weights are not determined by the equations; supply them explicitly")]
    AmbiguousWeights,
    #[error("polynomials live in rings of different sizes ({0} vs {1} variables)")]
    RingMismatch(usize, usize),
    #[error("reduction budget of {budget} steps exceeded")]
    IterationBudgetExceeded { budget: u64 },
    #[error("coefficient of {bits} bits exceeds the size limit")]
    CoefficientGrowth { bits: u64 },
    #[error("exact division failed in colon computation: {0}")]
    ExactDivisionFailure(String),
    #[error("dimension not finite or N_max too small (no stabilization up to N = {n_max})")]
    NoStabilization { n_max: u32 },
    #[error("the quotient is infinite dimensional")]
    InfiniteDimension,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("invalid space pair: {0}")]
    InvalidSpacePair(String),
    #[error("equation {0} is not weighted homogeneous for the given weights")]
    NotWeightedHomogeneous(usize),
    #[error("the hypersurface does not have an isolated singularity")]
    NotIsolated,
    #[error("derivation {derivation} is not tangent to equation {equation}")]
    TangencyFailure { derivation: usize, equation: usize },
    #[error("first derlog generator must be the Euler derivation")]
    MissingEuler,
    #[error("x-component of derivation {0} does not vanish at the origin on the axis")]
    AxisRestrictionNonvanishing(usize),
    #[error("f is not in the primitive ideal")]
    NotPrimitive,
    #[error("f does not vanish at the origin")]
    NotInMaximalIdeal,
    #[error("the Jacobian number is infinite: f is not a transversal A1 singularity along the axis")]
    NotTransversalA1,
    #[error("nu is infinite: the transversal type is not constant along the axis")]
    InfiniteNu,
    #[error("f_k is not isolated at k = {k}; retry with larger k")]
    NotIsolatedSeries { k: u32 },
    #[error("equations are not aligned with the y-coordinates; change coordinates")]
    NotAligned,
    #[error("torsion determinant vanishes on the axis")]
    DegenerateTorsion,
    #[error("f is not in the square of the axis ideal")]
    NotInGSquared,
    #[error("quadric determinant vanishes on the axis")]
    DegenerateQuadric,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            Syntax { .. } | UnknownVariable { .. } | InvalidWeights(_) | RingMismatch(..) => {
                ErrorKind::Parse
            }
            NoWeights
            | AmbiguousWeights
            | PreconditionViolation(_)
            | InvalidSpacePair(_)
            | NotWeightedHomogeneous(_)
            | NotIsolated
            | TangencyFailure { .. }
            | MissingEuler
            | AxisRestrictionNonvanishing(_)
            | NotPrimitive
            | NotInMaximalIdeal
            | NotAligned
            | DegenerateTorsion
            | NotInGSquared
            | DegenerateQuadric
            | ZeroPolynomial => ErrorKind::Precondition,
            InfiniteDimension | NotTransversalA1 | InfiniteNu | NotIsolatedSeries { .. } => {
                ErrorKind::NonFinite
            }
            IterationBudgetExceeded { .. } | CoefficientGrowth { .. } | NoStabilization { .. } => {
                ErrorKind::Exhausted
            }
            ExactDivisionFailure(_) => ErrorKind::Internal,
        }
    }
}
