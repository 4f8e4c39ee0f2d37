//! Finite, enumerable models of Galois-theoretic constructions over
//! pseudo-finite fields.

pub mod cli;
pub mod cyclotomic;
pub mod field;
pub mod haar;
pub mod interpretation;
pub mod kummer;
pub mod linalg;
pub mod numth;
pub mod puiseux;
pub mod report;
pub mod suite;
pub mod tournament;
