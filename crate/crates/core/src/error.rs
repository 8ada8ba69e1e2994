use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("column index {index} out of range for a design with {n} columns")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "enumeration guard exceeded: {subsets} subsets to visit, guard is {guard} \
         (raise the guard or force it off to proceed)"
    )]
    GuardExceeded { subsets: u128, guard: u64 },

    #[error("support length {got} does not match design test count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
