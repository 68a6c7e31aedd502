//! Register automata over data words: synchronizing words for deterministic
//! automata, exact bounded search for nondeterministic ones, hard instance
//! families, reductions, and a brute-force oracle.

pub mod automaton;
pub mod cli;
pub mod dra;
pub mod dsl;
pub mod error;
pub mod gadgets;
pub mod generate;
pub mod oracle;
pub mod search;
pub mod semantics;

pub use automaton::{Constraint, RegSet, RegisterAutomaton};
pub use error::{Error, Result};
