use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the algebraic core.
///
/// Indices stored here are zero-based; Poisson entry indices are displayed
/// one-based to match the `π^{ij}` notation of input files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live on phase spaces of different dimension.
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    /// A variable index outside `x¹..x^d, p₁..p_d`.
    UnknownVariable {
        name: String,
        dimension: usize,
    },
    ZeroDimension,
    /// Tree enumeration was asked for degree zero.
    ZeroDegree,
    /// Series computations need an order of at least one.
    ZeroOrder,
    ComponentOutOfRange {
        component: usize,
        dimension: usize,
    },
    /// Exponent vector of the wrong length for the phase space.
    ExponentLength {
        expected: usize,
        found: usize,
    },
    /// The order-0 coefficient of a series is not the identity map.
    NotIdentityAtOrderZero {
        component: usize,
    },
    /// A series was asked for more orders than it holds.
    OrderExceedsSeries {
        requested: usize,
        available: usize,
    },
    PoissonIndexOutOfRange {
        i: usize,
        j: usize,
        dimension: usize,
    },
    /// Only the strict upper triangle `i < j` may be given.
    NotUpperTriangular {
        i: usize,
        j: usize,
    },
    DuplicatePoissonEntry {
        i: usize,
        j: usize,
    },
    /// A Poisson entry depends on a momentum variable.
    MomentumInPoissonEntry {
        i: usize,
        j: usize,
    },
    /// The structure is not linear homogeneous in `x`.
    NotLinear {
        i: usize,
        j: usize,
    },
    ParseRational(String),
    ParseTree(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::UnknownVariable { name, dimension } => {
                write!(f, "unknown variable {name} in dimension {dimension}")
            }
            Error::ZeroDimension => f.write_str("dimension must be positive"),
            Error::ZeroDegree => f.write_str("maximum tree degree must be at least 1"),
            Error::ZeroOrder => f.write_str("series order must be at least 1"),
            Error::ComponentOutOfRange {
                component,
                dimension,
            } => write!(
                f,
                "component {component} out of range for dimension {dimension}"
            ),
            Error::ExponentLength { expected, found } => {
                write!(f, "exponent vector has length {found}, expected {expected}")
            }
            Error::NotIdentityAtOrderZero { component } => write!(
                f,
                "order-0 coefficient of component {component} is not the coordinate function"
            ),
            Error::OrderExceedsSeries {
                requested,
                available,
            } => write!(
                f,
                "order {requested} requested but the series is truncated at order {available}"
            ),
            Error::PoissonIndexOutOfRange { i, j, dimension } => write!(
                f,
                "Poisson entry ({},{}) out of range for dimension {dimension}",
                i + 1,
                j + 1
            ),
            Error::NotUpperTriangular { i, j } => {
                write!(f, "Poisson entry ({},{}) must satisfy i < j", i + 1, j + 1)
            }
            Error::DuplicatePoissonEntry { i, j } => {
                write!(f, "Poisson entry ({},{}) given twice", i + 1, j + 1)
            }
            Error::MomentumInPoissonEntry { i, j } => write!(
                f,
                "Poisson entry ({},{}) depends on momentum variables",
                i + 1,
                j + 1
            ),
            Error::NotLinear { i, j } => write!(
                f,
                "Poisson entry ({},{}) is not linear homogeneous in x",
                i + 1,
                j + 1
            ),
            Error::ParseRational(s) => write!(f, "cannot parse rational {s:?}"),
            Error::ParseTree(s) => write!(f, "cannot parse rooted tree {s:?}"),
        }
    }
}

impl core::error::Error for Error {}
