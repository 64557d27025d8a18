//! Relative generalized Hamming weights, Feng-Rao style bounds, one-point
//! algebraic geometry codes and the ramp secret sharing schemes built on them.

pub mod ag_bounds;
pub mod codes;
pub mod error;
pub mod fengrao;
pub mod field;
pub mod hermitian;
pub mod linalg;
pub mod ramp;
pub mod reproduce;
pub mod search;
pub mod semigroup;

pub use error::{Error, Result};
pub use field::{Elem, FieldElement, FiniteField, QuadraticExtension};
pub use search::{SearchConfig, Strategy};
