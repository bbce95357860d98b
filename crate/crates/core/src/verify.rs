use std::fmt;

use thiserror::Error;

use crate::board::{Board, Cell, Solution};
use crate::shape::{extends_by_one, label_components, Block, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Every block holds exactly one arrow cell.
    R1,
    /// Every arrow passes through at least two blocks.
    R2,
    /// Consecutive blocks along an arrow grow by one square.
    R3,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    /// 1-based arrow index in board order.
    Arrow(usize),
    /// Block identified by its smallest cell.
    Block(Cell),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Arrow(i) => write!(f, "arrow {i}"),
            Subject::Block(c) => write!(f, "block {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub rule: Rule,
    pub subject: Subject,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}: {}", self.rule, self.subject, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Blocks met along one arrow, in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowBlockSequence {
    /// 0-based arrow index.
    pub arrow: usize,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("block {anchor} occurs twice along arrow {}", arrow + 1)]
pub struct BlockRevisit {
    pub arrow: usize,
    pub anchor: Cell,
}

struct Labels {
    cols: usize,
    label: Vec<u32>,
    comps: Vec<Vec<usize>>,
}

impl Labels {
    fn new(solution: &Solution) -> Labels {
        let (label, comps) = label_components(solution.rows(), solution.cols(), solution.filled());
        Labels {
            cols: solution.cols(),
            label,
            comps,
        }
    }

    fn anchor(&self, b: u32) -> Cell {
        let i = self.comps[b as usize][0];
        Cell::new(i / self.cols + 1, i % self.cols + 1)
    }

    fn shape(&self, b: u32) -> Shape {
        Shape::from_cells(
            self.comps[b as usize]
                .iter()
                .map(|&i| (i / self.cols, i % self.cols)),
        )
    }

    fn block(&self, b: u32) -> Block {
        Block::new(
            self.comps[b as usize]
                .iter()
                .map(|&i| Cell::new(i / self.cols + 1, i % self.cols + 1))
                .collect(),
        )
    }

    /// Block labels along arrow `a`, or the first revisited label.
    fn sequence(&self, board: &Board, a: usize) -> Result<Vec<u32>, u32> {
        let mut seq: Vec<u32> = Vec::new();
        let mut current = None;
        for &c in board.arrows()[a].path() {
            let l = self.label[board.index(c)];
            if l == u32::MAX {
                current = None;
                continue;
            }
            if current == Some(l) {
                continue;
            }
            if seq.contains(&l) {
                return Err(l);
            }
            seq.push(l);
            current = Some(l);
        }
        Ok(seq)
    }
}

pub fn arrow_block_sequence(
    board: &Board,
    solution: &Solution,
    arrow: usize,
) -> Result<ArrowBlockSequence, BlockRevisit> {
    let labels = Labels::new(solution);
    match labels.sequence(board, arrow) {
        Ok(seq) => Ok(ArrowBlockSequence {
            arrow,
            blocks: seq.into_iter().map(|b| labels.block(b)).collect(),
        }),
        Err(b) => Err(BlockRevisit {
            arrow,
            anchor: labels.anchor(b),
        }),
    }
}

fn check(board: &Board, solution: &Solution, all: bool) -> Vec<Violation> {
    let labels = Labels::new(solution);
    let slots = board.slots();
    let mut out = Vec::new();
    macro_rules! report {
        ($rule:expr, $subject:expr, $($msg:tt)*) => {{
            out.push(Violation { rule: $rule, subject: $subject, message: format!($($msg)*) });
            if !all {
                return out;
            }
        }};
    }
    for (b, cells) in labels.comps.iter().enumerate() {
        let on = cells.iter().filter(|&&i| slots[i].is_some()).count();
        if on != 1 {
            let subject = Subject::Block(labels.anchor(b as u32));
            if on == 0 {
                report!(Rule::R1, subject, "block has no arrow cell");
            } else {
                report!(Rule::R1, subject, "block has {on} arrow cells");
            }
        }
    }
    let mut shapes: Vec<Option<Shape>> = vec![None; labels.comps.len()];
    for a in 0..board.arrows().len() {
        let subject = Subject::Arrow(a + 1);
        let seq = match labels.sequence(board, a) {
            Ok(seq) => seq,
            Err(b) => {
                report!(Rule::R3, subject, "block {} is revisited", labels.anchor(b));
                continue;
            }
        };
        if seq.len() < 2 {
            let n = seq.len();
            report!(
                Rule::R2,
                subject,
                "passes through {n} block{}",
                if n == 1 { "" } else { "s" }
            );
        }
        for w in seq.windows(2) {
            for &b in w {
                if shapes[b as usize].is_none() {
                    shapes[b as usize] = Some(labels.shape(b));
                }
            }
            let prev = shapes[w[0] as usize].as_ref().unwrap();
            let next = shapes[w[1] as usize].as_ref().unwrap();
            if !extends_by_one(prev, next) {
                report!(
                    Rule::R3,
                    subject,
                    "block {} ({} squares) does not extend block {} ({} squares) by one",
                    labels.anchor(w[1]),
                    next.len(),
                    labels.anchor(w[0]),
                    prev.len()
                );
            }
        }
    }
    out
}

/// Checks all three rules and collects every violation.
pub fn verify(board: &Board, solution: &Solution) -> VerificationReport {
    VerificationReport {
        violations: check(board, solution, true),
    }
}

/// The first violation found, if any.
pub fn first_violation(board: &Board, solution: &Solution) -> Option<Violation> {
    check(board, solution, false).into_iter().next()
}

pub fn is_valid(board: &Board, solution: &Solution) -> bool {
    check(board, solution, false).is_empty()
}
