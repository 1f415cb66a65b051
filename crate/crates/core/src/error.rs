use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("{p}^{n} does not fit the supported integer width")]
    ModulusOverflow { p: i64, n: u32 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: i64, right: i64 },
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("group exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("matrix of {rows}x{cols} entries exceeds the cap of {cap}")]
    MatrixTooLarge {
        rows: usize,
        cols: usize,
        cap: usize,
    },
    #[error("p-elements generate a subgroup of order {found}, expected {expected}")]
    SylowNotClosed { found: usize, expected: usize },
    #[error("values do not define a cocycle: Z(g h) != Z(g) + g Z(h) at g = {g}, h = {h}")]
    InconsistentCocycle { g: usize, h: usize },
    #[error("expected {expected} generator values, got {got}")]
    AssignmentCount { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    /// Resource errors are caps and width limits, as opposed to bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. }
                | Error::MatrixTooLarge { .. }
                | Error::Overflow(_)
                | Error::ModulusOverflow { .. }
        )
    }
}
