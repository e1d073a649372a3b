//! Ringel-Hall algebras of quiver representations over finite fields, a
//! brute-force model of the 2-periodic root category, and the Lie algebra
//! `g = h + n` over `Z/(q-1)` built from its Hall numbers.

pub mod cache;
pub mod error;
pub mod ffield;
pub mod hall_exact;
pub mod hall_tri;
pub mod lie;
pub mod modular;
pub mod quiver;
pub mod registry;
pub mod report;
pub mod repr;
pub mod root;

pub use error::{Error, Result};
