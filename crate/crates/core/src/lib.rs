//! Endotypes of irreducible finite-dimensional modules over real forms of
//! type A, q(n) and reductive Lie (super)algebras, in exact arithmetic.

pub mod algebra_model;
pub mod bw_monoid;
pub mod cascade;
pub mod engine;
pub mod enveloping;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod real_forms;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::GR;
