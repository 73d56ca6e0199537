use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants are grouped by the module that raises them; [`Error::exit_code`]
/// maps them onto the CLI contract (2 = bad input, 3 = regime or cap limits).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // lattice construction and basic invariants
    #[error("rank-1 lattice parameter {0} is odd; only even lattices are supported")]
    OddRank1Parameter(i64),
    #[error("rescaling factor must be nonzero")]
    ZeroScale,
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Gram matrix has odd diagonal entry at index {0}; lattice is not even")]
    NotEven(usize),
    #[error("lattice is degenerate (determinant zero)")]
    DegenerateLattice,
    #[error("vectors live in different ambient lattices")]
    AmbientMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation is undefined on the zero vector")]
    ZeroVector,
    #[error("integer overflow: {0}")]
    Overflow(&'static str),

    // isometries and groups
    #[error("matrix is not an isometry: form differs at entry ({row}, {col})")]
    NotAnIsometry { row: usize, col: usize },
    #[error("group generation exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("element of order {0} lies outside the exact decomposition regime {{1,2,3,4,6}}")]
    UnsupportedGroupExponent(usize),
    #[error("isotypic splitting failed to account for the full space (found {found} of {expected} dimensions)")]
    DecompositionIncomplete { expected: usize, found: usize },

    // enumeration
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("target square {0} is zero or has the wrong sign for this lattice")]
    BadTarget(i64),
    #[error("enumeration exceeded the node cap of {0}")]
    NodeCapExceeded(u64),

    // Enriques families
    #[error("K3^[n] Enriques family requires odd n, got {0}")]
    EvenN(i64),
    #[error("parameter n = {n} is below the minimum {min}")]
    NTooSmall { n: i64, min: i64 },
    #[error("index d = {d} is not admissible for n = {n} (need d in {{2,3,4}} dividing n+1)")]
    BadIndex { n: i64, d: i64 },
    #[error("isometry is not congruent to the identity modulo 2")]
    NotTwoCongruence,
    #[error("extension is not integral; this indicates a bug for genuine inputs")]
    IntegralityFailure,
    #[error("sphere classes are invalid: {0}")]
    BadSpheres(&'static str),
    #[error("Mukai vector has negative square {0}")]
    NegativeMukaiSquare(i64),
    #[error("Euler characteristic {0} must be odd")]
    EvenChi(i64),
    #[error("Mukai square {0} is odd; it must be even on the K3 lattice")]
    OddMukaiSquare(i64),

    // criterion
    #[error("element {0} of the lifted group does not commute with the deck action")]
    NotCentralizing(usize),
    #[error("element {0} is not orientation preserving")]
    NotOrientationPreserving(usize),
    #[error("operation is not supported for the {0} family")]
    UnsupportedFamily(&'static str),
    #[error("{k} does not divide {d}")]
    NotDividing { k: i64, d: i64 },

    // I/O
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// CLI exit code: 3 for cap and unsupported-regime errors, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_)
            | Error::NodeCapExceeded(_)
            | Error::UnsupportedGroupExponent(_)
            | Error::UnsupportedFamily(_) => 3,
            _ => 2,
        }
    }

    /// Stable machine-readable name used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OddRank1Parameter(_) => "OddRank1Parameter",
            Error::ZeroScale => "ZeroScale",
            Error::NotSymmetric(..) => "NotSymmetric",
            Error::NotEven(_) => "NotEven",
            Error::DegenerateLattice => "DegenerateLattice",
            Error::AmbientMismatch => "AmbientMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroVector => "ZeroVector",
            Error::Overflow(_) => "Overflow",
            Error::NotAnIsometry { .. } => "NotAnIsometry",
            Error::CapExceeded(_) => "CapExceeded",
            Error::UnsupportedGroupExponent(_) => "UnsupportedGroupExponent",
            Error::DecompositionIncomplete { .. } => "DecompositionIncomplete",
            Error::NotDefinite => "NotDefinite",
            Error::BadTarget(_) => "BadTarget",
            Error::NodeCapExceeded(_) => "NodeCapExceeded",
            Error::EvenN(_) => "EvenN",
            Error::NTooSmall { .. } => "NTooSmall",
            Error::BadIndex { .. } => "BadIndex",
            Error::NotTwoCongruence => "NotTwoCongruence",
            Error::IntegralityFailure => "IntegralityFailure",
            Error::BadSpheres(_) => "BadSpheres",
            Error::NegativeMukaiSquare(_) => "NegativeMukaiSquare",
            Error::EvenChi(_) => "EvenChi",
            Error::OddMukaiSquare(_) => "OddMukaiSquare",
            Error::NotCentralizing(_) => "NotCentralizing",
            Error::NotOrientationPreserving(_) => "NotOrientationPreserving",
            Error::UnsupportedFamily(_) => "UnsupportedFamily",
            Error::NotDividing { .. } => "NotDividing",
            Error::Input(_) => "Input",
        }
    }
}
