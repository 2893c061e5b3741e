//! Threshold modal logic over effectivity functions and classical game logic
//! over neighborhood models.

mod semantics;
mod syntax;

pub use semantics::{eval_formula, eval_game, NeighborhoodModel, StochModel};
pub use syntax::{parse_formula, parse_game, Formula, GameTerm};
