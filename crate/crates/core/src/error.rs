use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the columns of A do not lie on a hyperplane off the origin")]
    NotHomogeneous,
    #[error("A does not have full row rank")]
    NotFullDim,
    #[error("lattice is not a sublattice of the ambient lattice")]
    NotSublattice,
    #[error("sublattice has lower rank, the quotient is infinite")]
    InfiniteIndex,
    #[error("{0} does not lie in ZA")]
    ChiNotInLattice(String),
    #[error("the face is the whole cone")]
    WholeCone,
    #[error("A is not normal")]
    NotNormal,
    #[error("A is not a monomial curve: {0}")]
    NotCurve(String),
    #[error("exponent does not have minimal negative support")]
    NotMinimal,
    #[error("the polynomial is not in the b-ideal")]
    NotInBIdeal,
    #[error("reduced operator lacks the right factor in variable {0}")]
    RightFactorMissing(usize),
    #[error("the parameters are not isomorphic")]
    NotIsomorphic,
    #[error("witness construction failed: {0}")]
    WitnessFailure(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value exceeds the enumeration range")]
    OutOfRange,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotHomogeneous => "NOT_HOMOGENEOUS",
            Error::NotFullDim => "NOT_FULL_DIM",
            Error::NotSublattice => "NOT_SUBLATTICE",
            Error::InfiniteIndex => "INFINITE_INDEX",
            Error::ChiNotInLattice(_) => "CHI_NOT_IN_LATTICE",
            Error::WholeCone => "WHOLE_CONE",
            Error::NotNormal => "NOT_NORMAL",
            Error::NotCurve(_) => "NOT_CURVE",
            Error::NotMinimal => "NOT_MINIMAL",
            Error::NotInBIdeal => "NOT_IN_B_IDEAL",
            Error::RightFactorMissing(_) => "RIGHT_FACTOR_MISSING",
            Error::NotIsomorphic => "NOT_ISOMORPHIC",
            Error::WitnessFailure(_) => "WITNESS_FAILURE",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::OutOfRange => "OUT_OF_RANGE",
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::Internal(_) => "INTERNAL",
        }
    }

    /// Faults that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::RightFactorMissing(_) | Error::WitnessFailure(_) | Error::Internal(_)
        )
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
