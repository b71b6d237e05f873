use thiserror::Error;

/// Errors raised by field construction, set algebra, searches and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {p} exceeds the configured field capacity {capacity}")]
    CapacityExceeded { p: u64, capacity: u64 },
    #[error("p = {0} is not congruent to 1 mod 3; the cubic character is trivial")]
    WrongResidueClass(u32),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("operands live in different fields (p = {0} vs p = {1})")]
    FieldMismatch(u32, u32),
    #[error("empty set")]
    EmptySet,
    #[error("function takes non-rational-integer values")]
    NonIntegerValues,
    #[error("A + B is not the cube set")]
    NotADecomposition,
    #[error("A - A is not the cube set together with 0")]
    NotADiffCover,
    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("p = {0} is excluded: no non-trivial 3-decomposition exists for p > 184291")]
    ExcludedByTheorem(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal re-validation failed: {0}")]
    Revalidation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for the capacity-style failures the CLI maps to exit code 3.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::CapacityExceeded { .. } | Error::CapExceeded { .. }
        )
    }
}
