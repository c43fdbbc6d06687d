//! Symbolic and numeric kernel for differential geometry on κ-Minkowski space.
//!
//! The crate is `no_std` (with `alloc`) so the algebra can be embedded
//! anywhere; the `std` feature only switches the float backend.
//!
//! Module map:
//!
//! * [`scalars`]: exact Gaussian-rational Laurent polynomials in `1/κ` and
//!   complex doubles.
//! * [`kpoincare`]: the κ-Poincaré Hopf algebra as a rewriting system,
//!   together with the operator families `λ`, `ξ`, `χ`, `σ`, `T`, `□_κ`.
//! * [`kminkowski`]: elements of the noncommutative coordinate algebra,
//!   either as normal-ordered polynomials or as plane-wave sums.
//! * [`forms`]: the five-dimensional differential complex (wedge, `d`,
//!   Hodge star, Lie and inner derivatives).
//! * [`integral`]: the invariant integral on top forms and the inner product.
//! * [`fieldtheory`]: complex scalar field, dispersion relation and currents.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod check;
pub mod fieldtheory;
pub mod forms;
pub mod integral;
pub mod kminkowski;
pub mod kpoincare;
pub mod scalars;

mod combinatorics;

pub use check::{Check, Report};
pub use forms::{Calculus, Coefficient, Form, Word};
pub use kminkowski::{Mode, PolyElement, WaveElement};
pub use kpoincare::{Generator, OperatorElement, TensorOperator};
pub use scalars::{ExactScalar, Gaussian, NumericScalar, Rational, Scalar};

use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    DivisionByZero,
    NotAUnit,
    NonFinite,
    /// Operator letters other than momenta were applied to plane waves.
    NotDiagonal,
    DegreeMismatch {
        expected: usize,
        found: usize,
    },
    DispersionBracket,
    InvalidIndex(usize),
    BackendMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::NotAUnit => f.write_str("not a unit"),
            Error::NonFinite => f.write_str("non-finite numeric value"),
            Error::NotDiagonal => f.write_str("not diagonal on plane waves"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::DispersionBracket => f.write_str("dispersion bracket failed"),
            Error::InvalidIndex(i) => write!(f, "index {i} out of range"),
            Error::BackendMismatch => f.write_str("backend mismatch"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
