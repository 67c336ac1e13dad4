use std::fmt;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An evaluation entry is zero or negative (mutual absolute continuity requires a > 0).
    NonPositiveEntry { player: usize, item: usize },
    /// A row does not sum to 1 and normalization was not requested.
    RowSumMismatch { player: usize, sum: String },
    /// The instance has no items.
    EmptyInstance,
    /// A matrix or vector has the wrong number of rows or columns.
    DimensionMismatch { expected: usize, got: usize },
    /// An enumeration over 3^m allocations would exceed the configured cap.
    CapExceeded { m: usize, cap: usize },
    /// A triple sums to zero and cannot be normalized onto the simplex.
    ZeroSum,
    /// A simplex point lies on the boundary where the operation is undefined.
    BoundaryPoint,
    /// Census requested on a vertex outside the six face classes.
    DegenerateFace,
    /// Descent invoked on a graph with no vertices.
    EmptyGraph,
    /// No positive column masses realize the requested item points.
    Infeasible(String),
    /// Random generation could not reach general position within the retry limit.
    RetriesExhausted { attempts: usize },
    /// The equal-value system has no solution on the face; the vertex is not
    /// optimal or there is an internal inconsistency.
    NoEquitablePointOnFace,
    /// A value failed to parse as an exact rational.
    ParseRational(String),
    /// Malformed instance document.
    ParseInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveEntry { player, item } => write!(
                f,
                "entry for player {} and item {} is not strictly positive",
                player + 1,
                item + 1
            ),
            Error::RowSumMismatch { player, sum } => write!(
                f,
                "row {} sums to {} instead of 1 (pass normalize to rescale)",
                player + 1,
                sum
            ),
            Error::EmptyInstance => write!(f, "instance has no items"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::CapExceeded { m, cap } => {
                write!(f, "3^{m} integer allocations exceed the cap of 3^{cap}")
            }
            Error::ZeroSum => write!(f, "cannot normalize a zero triple"),
            Error::BoundaryPoint => write!(f, "point lies on the simplex boundary"),
            Error::DegenerateFace => write!(f, "vertex is outside the six face classes"),
            Error::EmptyGraph => write!(f, "graph has no vertices"),
            Error::Infeasible(what) => write!(f, "infeasible: {what}"),
            Error::RetriesExhausted { attempts } => {
                write!(f, "no general-position instance found in {attempts} attempts")
            }
            Error::NoEquitablePointOnFace => {
                write!(f, "no equitable allocation on the face of the given vertex")
            }
            Error::ParseRational(s) => write!(f, "cannot parse {s:?} as a rational"),
            Error::ParseInstance(why) => write!(f, "bad instance document: {why}"),
        }
    }
}

impl std::error::Error for Error {}
