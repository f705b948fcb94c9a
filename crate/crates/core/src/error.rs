use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Matrix or group shapes do not fit together.
    Dimension(String),
    /// A homomorphism does not respect the orders of source generators.
    NotWellDefined(String),
    /// Data claimed canonical is not in invariant-factor form.
    NotCanonical(String),
    /// `d_out ∘ d_in ≠ 0`.
    CompositionNonzero,
    /// An element passed as a cycle is not in the kernel.
    NotACycle,
    /// A group table, homomorphism or tower violates an axiom.
    InvalidGroup(String),
    /// A module action is not a homomorphism into the automorphism group.
    InvalidAction(String),
    /// Levels of a tower, module or request do not match.
    Level(String),
    /// The lim/lim¹ assembly would require certificates that are missing.
    DecompositionNotValid(String),
    /// Any other violated precondition.
    Invalid(String),
    /// Two independent computations of the same quantity disagree.
    Internal(String),
}

impl Error {
    /// Whether the error signals a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::CompositionNonzero | Error::NotACycle | Error::Internal(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension(m) => write!(f, "dimension mismatch: {}", m),
            Error::NotWellDefined(m) => write!(f, "homomorphism not well defined: {}", m),
            Error::NotCanonical(m) => write!(f, "group not in canonical form: {}", m),
            Error::CompositionNonzero => write!(f, "composition of consecutive differentials is nonzero"),
            Error::NotACycle => write!(f, "element is not a cycle"),
            Error::InvalidGroup(m) => write!(f, "invalid group data: {}", m),
            Error::InvalidAction(m) => write!(f, "invalid action: {}", m),
            Error::Level(m) => write!(f, "level mismatch: {}", m),
            Error::DecompositionNotValid(m) => write!(f, "decomposition not valid: {}", m),
            Error::Invalid(m) => write!(f, "invalid input: {}", m),
            Error::Internal(m) => write!(f, "internal invariant violated: {}", m),
        }
    }
}
