use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants are grouped by the subsystem that raises them; the CLI maps
/// each variant to an exit code through [`Error::is_input_error`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // exact arithmetic
    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u32, to: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor overflow: {0}")]
    ConductorOverflow(String),
    #[error("malformed cyclotomic number: {0}")]
    MalformedNumber(String),

    // matrix groups
    #[error("group closure exceeded the order cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("generator {index} is not invertible")]
    NonInvertibleGenerator { index: usize },
    #[error("element set is not closed under the group law: {0}")]
    NotClosed(String),
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("preset self-test failed: {0}")]
    PresetSelfTestFailed(String),

    // projective classification
    #[error("characteristic root outside every cyclotomic field up to the conductor bound: {0}")]
    EigenvalueOutsideField(String),
    #[error("group of order {order} is not cyclic, dihedral, A4, S4 or A5")]
    UnrecognizedGroup { order: usize },
    #[error("group of order {order} matches no finite subgroup type of PGL3")]
    UnclassifiableGroup { order: usize },

    // dual complexes
    #[error("invalid curve configuration: {0}")]
    InvalidConfiguration(String),
    #[error("dual complex cannot bound a log Calabi-Yau surface pair: {0}")]
    NotLogCYShape(String),
    #[error("crossing {0} is not a corner of two coefficient-1 components")]
    NotACorner(u32),
    #[error("permutations do not define an action: {0}")]
    NotAnAction(String),
    #[error("dual complex has dimension {0}, expected 1")]
    WrongDimension(i32),

    // surfaces
    #[error("invalid quadric group data: {0}")]
    InvalidQuadricData(String),
    #[error("group has no fixed point on P2")]
    NoFixedPoint,
    #[error("invalid degree 7 del Pezzo data: {0}")]
    InvalidDp7Data(String),
    #[error("invalid degree 6 del Pezzo data: {0}")]
    InvalidDp6Data(String),

    // io
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// True for errors caused by malformed or inconsistent input rather
    /// than a failed classification.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::MalformedNumber(_)
                | Error::ConductorMismatch { .. }
                | Error::NonInvertibleGenerator { .. }
                | Error::DimensionMismatch(_)
                | Error::UnknownPreset(_)
                | Error::InvalidConfiguration(_)
                | Error::NotAnAction(_)
                | Error::InvalidQuadricData(_)
                | Error::InvalidDp7Data(_)
                | Error::InvalidDp6Data(_)
                | Error::NotClosed(_)
                | Error::Input(_)
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ConductorMismatch { .. } => "ConductorMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::ConductorOverflow(_) => "ConductorOverflow",
            Error::MalformedNumber(_) => "MalformedNumber",
            Error::OrderCapExceeded { .. } => "OrderCapExceeded",
            Error::NonInvertibleGenerator { .. } => "NonInvertibleGenerator",
            Error::NotClosed(_) => "NotClosed",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::UnknownPreset(_) => "UnknownPreset",
            Error::PresetSelfTestFailed(_) => "PresetSelfTestFailed",
            Error::EigenvalueOutsideField(_) => "EigenvalueOutsideField",
            Error::UnrecognizedGroup { .. } => "UnrecognizedGroup",
            Error::UnclassifiableGroup { .. } => "UnclassifiableGroup",
            Error::InvalidConfiguration(_) => "InvalidConfiguration",
            Error::NotLogCYShape(_) => "NotLogCYShape",
            Error::NotACorner(_) => "NotACorner",
            Error::NotAnAction(_) => "NotAnAction",
            Error::WrongDimension(_) => "WrongDimension",
            Error::InvalidQuadricData(_) => "InvalidQuadricData",
            Error::NoFixedPoint => "NoFixedPoint",
            Error::InvalidDp7Data(_) => "InvalidDp7Data",
            Error::InvalidDp6Data(_) => "InvalidDp6Data",
            Error::Input(_) => "Input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
