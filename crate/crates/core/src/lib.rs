//! Khovanov-type homology of oriented link diagrams over prime fields, with Lee and
//! Bar-Natan deformations, cobordism maps, and the cabling experiments built on them.

pub mod chain;
pub mod cobordism;
pub mod error;
pub mod field;
pub mod induction;
pub mod io;
pub mod kh;
pub mod link;

pub use error::{Error, Result};
pub use field::PrimeField;
