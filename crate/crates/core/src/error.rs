use core::fmt;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A size exceeds the guard for an exponential-cost algorithm.
    SizeLimit { what: &'static str, size: usize, max: usize },
    /// Two inputs that must share a length do not.
    Shape { expected: usize, found: usize },
    /// A weight that must be strictly dominant has repeated entries.
    DegenerateWeight,
    /// A weight is not sorted into the required dominant form.
    Dominance,
    /// An index such as `k` in `sigma_k` is outside its admissible range.
    Index { index: usize, min: usize, max: usize },
    /// A function fails the declared (anti)symmetry at a probe point.
    Symmetry { deviation: f64 },
    /// An ordered grid would be empty.
    EmptyGrid { n: usize, points: usize },
    /// A polynomial degree exceeds the stable recurrence range.
    Range { degree: usize, max: usize },
    /// The integrand is not negligible on the boundary of the truncation box.
    Truncation { boundary_value: f64, threshold: f64 },
    /// A value was not a valid member of its domain.
    Invalid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SizeLimit { what, size, max } => {
                write!(f, "{what}: size {size} exceeds limit {max}")
            }
            Error::Shape { expected, found } => {
                write!(f, "shape mismatch: expected length {expected}, found {found}")
            }
            Error::DegenerateWeight => write!(f, "weight has repeated entries"),
            Error::Dominance => write!(f, "weight is not dominant"),
            Error::Index { index, min, max } => {
                write!(f, "index {index} outside {min}..={max}")
            }
            Error::Symmetry { deviation } => {
                write!(f, "symmetry violated (deviation {deviation:e})")
            }
            Error::EmptyGrid { n, points } => {
                write!(f, "no strictly ordered {n}-tuples from {points} grid points")
            }
            Error::Range { degree, max } => {
                write!(f, "degree {degree} exceeds maximum {max}")
            }
            Error::Truncation {
                boundary_value,
                threshold,
            } => write!(
                f,
                "integrand {boundary_value:e} on truncation boundary exceeds {threshold:e}"
            ),
            Error::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
