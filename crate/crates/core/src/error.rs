use thiserror::Error;

/// Errors raised by the computational modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("zero coefficient u[{0}]")]
    ZeroCoefficient(usize),

    #[error("coefficient v must be nonzero")]
    ZeroV,

    #[error("linear form needs at least one coefficient")]
    EmptyForm,

    #[error("empty set A[{0}]")]
    EmptySet(usize),

    #[error("duplicate element in A[{0}]")]
    DuplicateElement(usize),

    #[error("modulus must be positive, got {0}")]
    InvalidModulus(i64),

    #[error("residue {residue} out of range [0, {modulus})")]
    ResidueOutOfRange { residue: i64, modulus: i64 },

    #[error("duplicate residue {0}")]
    DuplicateResidue(i64),

    #[error("no t-complementing set extends this window: inconsistent at index {index}")]
    Inconsistent { index: i64 },

    #[error("step gap d is 0: the recursion has no offsets")]
    DegenerateGap,

    #[error("step gap d = {d} exceeds the limit {max}")]
    GapTooLarge { d: u64, max: u32 },

    #[error("window of length {len} is shorter than the step gap {d}")]
    WindowTooShort { len: usize, d: u64 },

    #[error("requested range [{lo}, {hi}] does not contain the seed window")]
    RangeExcludesSeed { lo: i64, hi: i64 },

    #[error("the zero polynomial has no shift")]
    ZeroPolynomial,

    #[error("product of no factors")]
    EmptyProduct,

    #[error("recentering requires v = 1, got v = {0}")]
    RecenterNeedsUnitV(i64),

    #[error("search budget exhausted after {nodes} nodes")]
    ResourceLimit { nodes: u64 },

    #[error("invalid target: {0}")]
    InvalidTarget(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
