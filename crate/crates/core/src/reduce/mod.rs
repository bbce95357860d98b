//! Compiles 3-CNF formulas into boards whose solutions match the formula's
//! satisfying assignments one for one.

mod canvas;
pub mod cnf;
mod decode;
pub mod harness;
mod layout;
mod parsimony;
pub mod tiles;

use std::fmt;

use crate::board::{Board, Cell};

pub use canvas::Owner;
pub use cnf::{parse_cnf, Clause, Cnf, CnfError, Literal};
pub use decode::{decode, parse_decode_map, DecodeError, DecodeMap, Probe};
pub use layout::{count_route_crossings, Crossing, LayoutPlan, Placement, Route};
pub use parsimony::{check_parsimony, ParsimonyError, ParsimonyReport};
pub use tiles::{template, Template, TemplateKind};

/// Bound on the board side: `max(rows, cols) <= SIZE_FACTOR * (m^2 + n) +
/// SIZE_SLACK`.
pub const SIZE_FACTOR: usize = 40;
pub const SIZE_SLACK: usize = 40;

/// Gadget counts of one reduction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Inventory {
    pub variable: usize,
    pub clause: usize,
    pub split: usize,
    pub negation: usize,
    pub crossover: usize,
    /// Sinks for variables that occur in no clause.
    pub idle: usize,
}

impl Inventory {
    fn of(placements: &[Placement]) -> Inventory {
        let mut inv = Inventory::default();
        for p in placements {
            let slot = match p.kind {
                TemplateKind::Variable => &mut inv.variable,
                TemplateKind::Clause => &mut inv.clause,
                TemplateKind::Split => &mut inv.split,
                TemplateKind::Negation => &mut inv.negation,
                TemplateKind::Crossover => &mut inv.crossover,
                TemplateKind::IdleSink => &mut inv.idle,
                _ => continue,
            };
            *slot += 1;
        }
        inv
    }

    /// The counts the construction promises for `f`.
    pub fn expected(f: &Cnf) -> ExpectedInventory {
        let occ = f.occurrences();
        let m = f.clauses().len();
        let used = occ.iter().filter(|&&k| k > 0).count();
        ExpectedInventory {
            variable: f.num_vars(),
            clause: m,
            split: 3 * m - used,
            negation: f.clauses().iter().flatten().filter(|l| !l.positive).count(),
            max_crossover: 3 * m * (3 * m).saturating_sub(1) / 2,
            idle: f.num_vars() - used,
        }
    }
}

impl fmt::Display for Inventory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variable={} clause={} split={} negation={} crossover={} idle={}",
            self.variable, self.clause, self.split, self.negation, self.crossover, self.idle
        )
    }
}

/// Closed-form inventory; crossovers only have an upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedInventory {
    pub variable: usize,
    pub clause: usize,
    pub split: usize,
    pub negation: usize,
    pub max_crossover: usize,
    pub idle: usize,
}

impl ExpectedInventory {
    pub fn matches(&self, inv: &Inventory) -> bool {
        inv.variable == self.variable
            && inv.clause == self.clause
            && inv.split == self.split
            && inv.negation == self.negation
            && inv.crossover <= self.max_crossover
            && inv.idle == self.idle
    }
}

#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub board: Board,
    pub decode_map: DecodeMap,
    pub inventory: Inventory,
    pub formula: Cnf,
    pub plan: LayoutPlan,
    owners: Vec<Option<Owner>>,
}

impl ReductionArtifact {
    /// Gadget or wire that owns a white cell.
    pub fn owner(&self, c: Cell) -> Option<Owner> {
        self.owners[(c.row - 1) * self.board.cols() + c.col - 1]
    }
}

/// Places and wires the gadgets for `f`.
pub fn plan_layout(f: &Cnf) -> LayoutPlan {
    layout::build(f).plan
}

/// Builds the board for `f`. Deterministic: equal formulas give identical
/// boards.
pub fn reduce(f: &Cnf) -> ReductionArtifact {
    let built = layout::build(f);
    let inventory = Inventory::of(&built.plan.placements);
    let decode_map = DecodeMap::new(&built.board, f.clone(), &built.probes);
    ReductionArtifact {
        board: built.board,
        decode_map,
        inventory,
        formula: f.clone(),
        plan: built.plan,
        owners: built.owners,
    }
}

/// Size bound promised for formulas with `n` variables and `m` clauses.
pub fn size_bound(n: usize, m: usize) -> usize {
    SIZE_FACTOR * (m * m + n) + SIZE_SLACK
}
