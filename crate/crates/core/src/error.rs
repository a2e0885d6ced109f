use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// The operation needs exactly `expected` particles (q = r·d).
    ParticleCount { expected: usize, found: usize },
    /// Two objects that must share arity or dimension do not.
    ArityMismatch(String),
    /// Matrix shapes are incompatible.
    Shape(String),
    /// No object with the requested property exists for this input.
    NotFound(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::ParticleCount { expected, found } => {
                write!(f, "expected q = r*d = {expected} particles, found {found}")
            }
            Error::ArityMismatch(msg) => write!(f, "arity mismatch: {msg}"),
            Error::Shape(msg) => write!(f, "shape mismatch: {msg}"),
            Error::NotFound(msg) => write!(f, "not found: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::Error::Domain(alloc::format!($($arg)*))
    };
}
pub(crate) use domain;
