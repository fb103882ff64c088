//! The Erdős–Szekeres on-line game: rules, an exact solver, strategies for
//! both players and a match harness.

pub mod game;
pub mod harness;
pub mod solver;
pub mod strategy;
pub mod strategy_a;
pub mod strategy_b;
