//! Finite automata, regular expressions, context-free and noncontracting
//! grammars, pushdown and counter automata, and Turing machines, all as
//! plain values with executable constructions between them.

pub mod cli;
pub mod corpus;
pub mod counters;
pub mod document;
pub mod error;
pub mod fa;
pub mod grammar;
pub mod minimize;
pub mod pda;
pub mod random;
pub mod regex;
pub mod rewriting;

pub use error::{Error, Result};
