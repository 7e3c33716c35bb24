//! b-symbol read vectors, b-weights and b-distances, and the b-distances of
//! the repeated-root cyclic codes `<(x - 1)^i>` of length `p^e` over `F_{p^m}`.
//!
//! Every closed-form value in [`codes`] can be checked against exhaustive
//! enumeration; [`verify`] bundles those checks into reproducible suites.

pub mod bsymbol;
pub mod cli;
pub mod codes;
mod error;
pub mod gf;
pub mod polyring;
pub mod verify;

pub use error::{Error, Result};
