//! Exact conversions among the signature, tail signature, domination vector,
//! reliability polynomial and path-set counts of a semicoherent system, plus
//! the probability signature of a system with dependent component lifetimes.

pub mod convert;
pub mod dependent;
pub mod document;
pub mod dual;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod poly_route;
pub mod report;
pub mod signature;
pub mod structure;
pub mod verify;

pub use error::{Error, ErrorKind, Result};
pub use exact::{BiPolynomial, Polynomial, Rational};
