use std::fmt;

use thiserror::Error;

use crate::solver::{count_solutions, SolveConfig, Status};

use super::cnf::Cnf;
use super::reduce;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParsimonyReport {
    pub sat_count: u64,
    pub puzzle_count: u64,
    pub equal: bool,
}

impl fmt::Display for ParsimonyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sat={} puzzle={} {}",
            self.sat_count,
            self.puzzle_count,
            if self.equal { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParsimonyError {
    #[error("solver budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
}

/// Compares the truth-table model count of `f` with the solution count of
/// its reduction. The two counts run on separate threads.
pub fn check_parsimony(f: &Cnf, cfg: &SolveConfig) -> Result<ParsimonyReport, ParsimonyError> {
    let cfg = SolveConfig {
        count_limit: None,
        ..*cfg
    };
    let (sat_count, outcome) = std::thread::scope(|s| {
        let sat = s.spawn(|| f.count_models());
        let board = reduce(f).board;
        let outcome = count_solutions(&board, &cfg);
        (sat.join().expect("model count thread"), outcome)
    });
    if outcome.status == Status::BudgetExhausted {
        return Err(ParsimonyError::Budget {
            nodes: outcome.nodes,
        });
    }
    let puzzle_count = outcome.count.expect("completed count");
    Ok(ParsimonyReport {
        sat_count,
        puzzle_count,
        equal: sat_count == puzzle_count,
    })
}
