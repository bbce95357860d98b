//! Evolomino puzzles: board model, rule checking, exact solving and counting,
//! and a compiler from 3-CNF formulas to boards whose solutions correspond
//! one-to-one with satisfying assignments.

pub mod board;
pub mod format;
pub mod reduce;
pub mod render;
pub mod shape;
pub mod solver;
pub mod verify;

pub use board::{Arrow, ArrowSlot, Board, BoardError, Cell, CellKind, Solution, SolutionError};
pub use format::{parse_board, parse_solution, serialize_board, serialize_solution, ParseError};
pub use reduce::{
    check_parsimony, decode, parse_cnf, plan_layout, reduce, Cnf, DecodeMap, Inventory,
    ReductionArtifact,
};
pub use render::{render, Format, RenderError, RenderOptions};
pub use shape::{blocks_of, extends_by_one, shape_of, Block, Shape};
pub use solver::{
    count_solutions, enumerate_solutions, oracle_count, solve, CellOrder, Pruning, SolveConfig,
    SolveOutcome, Status,
};
pub use verify::{arrow_block_sequence, verify, VerificationReport, Violation};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/boards.md")]
    mod boards {}
    #[doc = include_str!("../../../book/src/verify.md")]
    mod verify {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
