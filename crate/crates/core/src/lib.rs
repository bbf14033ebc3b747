//! Finite automata with a group or monoid register.

pub mod algebra;
pub mod automaton;
pub mod simulator;
pub mod constructions;
pub mod growth;
pub mod gallery;
pub mod report;
