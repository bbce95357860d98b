//! Backtracking search over square placements.
//!
//! Cells are decided one at a time, empty before square. After every decision
//! the partial assignment is checked against three toggleable cuts:
//!
//! * (a) a block touching two arrow cells, or a closed block touching none;
//! * (b) consecutive settled blocks along an arrow that cannot grow into a
//!   valid progression;
//! * (c) an arrow whose undecided and square cells form fewer than two runs.
//!
//! A block is closed when none of its neighbours is undecided. Complete
//! assignments are always confirmed with [`crate::verify::is_valid`].

mod oracle;

pub use oracle::{oracle_count, OracleError, DEFAULT_ORACLE_MAX_FREE};

use std::collections::VecDeque;

use crate::board::{Board, CellKind, Solution};
use crate::shape::{extends_by_one, Shape};
use crate::verify::is_valid;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CellOrder {
    /// Arrow cells in board order, each followed by the cells nearest to it.
    #[default]
    ArrowProximity,
    RowMajor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pruning {
    pub blocks: bool,
    pub progression: bool,
    pub capacity: bool,
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning::ALL
    }
}

impl Pruning {
    pub const ALL: Pruning = Pruning {
        blocks: true,
        progression: true,
        capacity: true,
    };
    pub const NONE: Pruning = Pruning {
        blocks: false,
        progression: false,
        capacity: false,
    };
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SolveConfig {
    /// Stop counting after this many solutions.
    pub count_limit: Option<u64>,
    /// Give up after this many cell decisions.
    pub node_budget: Option<u64>,
    pub cell_order: CellOrder,
    pub pruning: Pruning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Sat,
    Unsat,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: Status,
    /// First solution in search order.
    pub witness: Option<Solution>,
    /// Number of solutions, present only for completed counts.
    pub count: Option<u64>,
    /// Cell decisions made.
    pub nodes: u64,
    /// Counting stopped at `count_limit`.
    pub truncated: bool,
}

pub fn solve(board: &Board, cfg: &SolveConfig) -> SolveOutcome {
    run(board, cfg, Some(1), false)
}

pub fn count_solutions(board: &Board, cfg: &SolveConfig) -> SolveOutcome {
    run(board, cfg, cfg.count_limit, true)
}

/// Every solution in search order, up to `limit`.
pub fn enumerate_solutions(board: &Board, cfg: &SolveConfig, limit: Option<u64>) -> Vec<Solution> {
    let mut out = Vec::new();
    deep(board, || {
        let mut search = Search::new(board, cfg, limit);
        search.sink = Some(&mut out);
        search.start();
    });
    out
}

/// Runs `f` on a thread whose stack fits one search frame per cell.
fn deep<R: Send>(board: &Board, f: impl FnOnce() -> R + Send) -> R {
    let stack = (board.rows() * board.cols())
        .saturating_mul(4096)
        .max(8 << 20);
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(stack)
            .spawn_scoped(s, f)
            .expect("spawn search thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

fn run(board: &Board, cfg: &SolveConfig, limit: Option<u64>, counting: bool) -> SolveOutcome {
    let (flow, search) = deep(board, || {
        let mut search = Search::new(board, cfg, limit);
        let flow = search.start();
        (flow, search)
    });
    let status = if flow == Flow::Budget {
        Status::BudgetExhausted
    } else if search.count > 0 {
        Status::Sat
    } else {
        Status::Unsat
    };
    let truncated = counting && flow == Flow::Limit && limit.is_some();
    SolveOutcome {
        status,
        witness: search.witness,
        count: (counting && status != Status::BudgetExhausted).then_some(search.count),
        nodes: search.nodes,
        truncated,
    }
}

const UNKNOWN: u8 = 0;
const EMPTY: u8 = 1;
const SQUARE: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flow {
    Continue,
    Limit,
    Budget,
}

struct Part {
    size: usize,
    arrow_cells: usize,
    closed: bool,
    rep: usize,
}

struct Search<'a> {
    board: &'a Board,
    cfg: SolveConfig,
    limit: Option<u64>,
    val: Vec<u8>,
    order: Vec<usize>,
    paths: Vec<Vec<usize>>,
    slot_arrow: Vec<u32>,
    mark: Vec<u32>,
    stamp: u32,
    stack: Vec<usize>,
    cells: Vec<usize>,
    arrows_buf: Vec<usize>,
    count: u64,
    nodes: u64,
    witness: Option<Solution>,
    sink: Option<&'a mut Vec<Solution>>,
}

const NO_ARROW: u32 = u32::MAX;

impl<'a> Search<'a> {
    fn new(board: &'a Board, cfg: &SolveConfig, limit: Option<u64>) -> Self {
        let n = board.rows() * board.cols();
        let mut val = vec![UNKNOWN; n];
        for (i, k) in board.kinds().iter().enumerate() {
            val[i] = match k {
                CellKind::Shaded => EMPTY,
                CellKind::Predrawn => SQUARE,
                CellKind::White => UNKNOWN,
            };
        }
        let paths: Vec<Vec<usize>> = board
            .arrows()
            .iter()
            .map(|a| a.path().iter().map(|&c| board.index(c)).collect())
            .collect();
        let slot_arrow = board
            .slots()
            .iter()
            .map(|s| s.map_or(NO_ARROW, |s| s.arrow as u32))
            .collect();
        let mut search = Search {
            board,
            cfg: *cfg,
            limit,
            val,
            order: Vec::new(),
            paths,
            slot_arrow,
            mark: vec![0; n],
            stamp: 0,
            stack: Vec::new(),
            cells: Vec::new(),
            arrows_buf: Vec::new(),
            count: 0,
            nodes: 0,
            witness: None,
            sink: None,
        };
        search.clear_dead_regions();
        search.order = match cfg.cell_order {
            CellOrder::RowMajor => (0..n).filter(|&i| search.val[i] == UNKNOWN).collect(),
            CellOrder::ArrowProximity => search.proximity_order(),
        };
        search
    }

    /// White regions without arrow cells can never hold a square.
    fn clear_dead_regions(&mut self) {
        let n = self.val.len();
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] || !self.board.kinds()[s].is_white() {
                continue;
            }
            let mut region = vec![s];
            seen[s] = true;
            let mut k = 0;
            let mut has_arrow = false;
            while k < region.len() {
                let i = region[k];
                k += 1;
                has_arrow |= self.slot_arrow[i] != NO_ARROW;
                for j in self.board.neighbors(i) {
                    if !seen[j] && self.board.kinds()[j].is_white() {
                        seen[j] = true;
                        region.push(j);
                    }
                }
            }
            if !has_arrow {
                for i in region {
                    if self.val[i] == UNKNOWN {
                        self.val[i] = EMPTY;
                    }
                }
            }
        }
    }

    /// Multi-source BFS from arrow cells; each free cell is ranked by the
    /// arrow cell that reaches it first, then by distance.
    /// Cells keyed by the arrow cell that reaches them first in a
    /// breadth-first sweep from all arrow paths at once.
    fn proximity_order(&self) -> Vec<usize> {
        let n = self.val.len();
        let mut key: Vec<Option<(usize, usize, usize, usize)>> = vec![None; n];
        let mut queue = VecDeque::new();
        let mut discovered = 0;
        for (a, path) in self.paths.iter().enumerate() {
            for (k, &i) in path.iter().enumerate() {
                key[i] = Some((a, k, 0, discovered));
                discovered += 1;
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            let (a, k, d, _) = key[i].unwrap();
            for j in self.board.neighbors(i) {
                if key[j].is_none() && self.board.kinds()[j].is_white() {
                    key[j] = Some((a, k, d + 1, discovered));
                    discovered += 1;
                    queue.push_back(j);
                }
            }
        }
        let mut ranked: Vec<usize> = (0..n).filter(|&i| self.val[i] == UNKNOWN).collect();
        ranked.sort_by_key(|&i| (key[i].is_none(), key[i], i));
        ranked
    }

    fn start(&mut self) -> Flow {
        if !self.root_consistent() {
            return Flow::Continue;
        }
        self.dfs(0)
    }

    fn root_consistent(&mut self) -> bool {
        let n = self.val.len();
        if self.cfg.pruning.blocks {
            for i in 0..n {
                if self.val[i] == SQUARE && !self.block_ok(i) {
                    return false;
                }
            }
        }
        for a in 0..self.paths.len() {
            if !self.arrow_ok(a) {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize) -> Flow {
        if depth == self.order.len() {
            return self.leaf();
        }
        let i = self.order[depth];
        for v in [EMPTY, SQUARE] {
            if let Some(b) = self.cfg.node_budget {
                if self.nodes >= b {
                    self.val[i] = UNKNOWN;
                    return Flow::Budget;
                }
            }
            self.nodes += 1;
            self.val[i] = v;
            if self.consistent(i) {
                let f = self.dfs(depth + 1);
                if f != Flow::Continue {
                    self.val[i] = UNKNOWN;
                    return f;
                }
            }
        }
        self.val[i] = UNKNOWN;
        Flow::Continue
    }

    fn leaf(&mut self) -> Flow {
        let filled: Vec<bool> = self.val.iter().map(|&v| v == SQUARE).collect();
        let sol = Solution::from_filled(self.board, filled);
        if !is_valid(self.board, &sol) {
            return Flow::Continue;
        }
        self.count += 1;
        if let Some(sink) = self.sink.as_mut() {
            sink.push(sol.clone());
        }
        if self.witness.is_none() {
            self.witness = Some(sol);
        }
        match self.limit {
            Some(l) if self.count >= l => Flow::Limit,
            _ => Flow::Continue,
        }
    }

    fn consistent(&mut self, i: usize) -> bool {
        let p = self.cfg.pruning;
        self.arrows_buf.clear();
        let mut touched = std::mem::take(&mut self.arrows_buf);
        if self.slot_arrow[i] != NO_ARROW {
            touched.push(self.slot_arrow[i] as usize);
        }
        let mut ok = true;
        if self.val[i] == SQUARE {
            let part = self.flood(i, &mut touched);
            if p.blocks && (part.arrow_cells >= 2 || (part.closed && part.arrow_cells == 0)) {
                ok = false;
            }
        } else {
            let nbrs: Vec<usize> = self.board.neighbors(i).collect();
            for j in nbrs {
                if self.val[j] != SQUARE {
                    continue;
                }
                let part = self.flood(j, &mut touched);
                if p.blocks && part.closed && part.arrow_cells != 1 {
                    ok = false;
                    break;
                }
            }
        }
        if ok && (p.progression || p.capacity) {
            touched.sort_unstable();
            touched.dedup();
            for &a in &touched {
                if !self.arrow_ok(a) {
                    ok = false;
                    break;
                }
            }
        }
        self.arrows_buf = touched;
        ok
    }

    fn block_ok(&mut self, i: usize) -> bool {
        let mut scratch = Vec::new();
        let part = self.flood(i, &mut scratch);
        !(part.arrow_cells >= 2 || (part.closed && part.arrow_cells == 0))
    }

    /// Flood the partial block through `i`, collecting arrows it touches.
    /// Leaves the block's cells in `self.cells`.
    fn flood(&mut self, i: usize, arrows: &mut Vec<usize>) -> Part {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        self.cells.clear();
        self.stack.clear();
        self.stack.push(i);
        self.mark[i] = stamp;
        let mut part = Part {
            size: 0,
            arrow_cells: 0,
            closed: true,
            rep: i,
        };
        while let Some(c) = self.stack.pop() {
            part.size += 1;
            part.rep = part.rep.min(c);
            self.cells.push(c);
            if self.slot_arrow[c] != NO_ARROW {
                part.arrow_cells += 1;
                arrows.push(self.slot_arrow[c] as usize);
            }
            for j in self.board.neighbors(c) {
                match self.val[j] {
                    SQUARE if self.mark[j] != stamp => {
                        self.mark[j] = stamp;
                        self.stack.push(j);
                    }
                    UNKNOWN => part.closed = false,
                    _ => {}
                }
            }
        }
        part
    }

    fn shape_of_cells(&self) -> Shape {
        let cols = self.board.cols();
        Shape::from_cells(self.cells.iter().map(|&i| (i / cols, i % cols)))
    }

    /// Most square runs the path of arrow `a` can still be split into:
    /// greedily close every run as early as an undecided cell allows.
    fn max_runs(&self, a: usize) -> usize {
        let path = &self.paths[a];
        let mut runs = 0;
        let mut k = 0;
        while k < path.len() {
            if self.val[path[k]] == EMPTY {
                k += 1;
                continue;
            }
            runs += 1;
            k += 1;
            while k < path.len() && self.val[path[k]] == SQUARE {
                k += 1;
            }
            // path[k] is now empty or undecided; either way it separates.
            k += 1;
        }
        runs
    }

    fn arrow_ok(&mut self, a: usize) -> bool {
        let p = self.cfg.pruning;
        if p.capacity && self.max_runs(a) < 2 {
            return false;
        }
        if !p.progression {
            return true;
        }
        // Settled prefix: blocks met before the first undecided path cell.
        let mut seq: Vec<(Part, Option<Shape>)> = Vec::new();
        let mut in_block = false;
        let mut scratch = Vec::new();
        for k in 0..self.paths[a].len() {
            let i = self.paths[a][k];
            match self.val[i] {
                UNKNOWN => break,
                EMPTY => in_block = false,
                _ => {
                    if in_block {
                        continue;
                    }
                    in_block = true;
                    scratch.clear();
                    let part = self.flood(i, &mut scratch);
                    if seq.iter().any(|(q, _)| q.rep == part.rep) {
                        return false;
                    }
                    let shape = part.closed.then(|| self.shape_of_cells());
                    seq.push((part, shape));
                }
            }
        }
        for w in seq.windows(2) {
            let (prev, next) = (&w[0], &w[1]);
            match (prev.0.closed, next.0.closed) {
                (true, true) => {
                    if !extends_by_one(prev.1.as_ref().unwrap(), next.1.as_ref().unwrap()) {
                        return false;
                    }
                }
                (true, false) => {
                    if next.0.size > prev.0.size + 1 {
                        return false;
                    }
                }
                (false, true) => {
                    if prev.0.size >= next.0.size {
                        return false;
                    }
                }
                (false, false) => {}
            }
        }
        true
    }
}
