//! Row-major enumeration of square placements, independent of the search in
//! the parent module. Only three cuts are applied: no block may hold two arrow
//! cells, a fully decided block must hold exactly one, and a fully decided
//! arrow must satisfy the block-count and progression rules.

use thiserror::Error;

use crate::board::{Board, CellKind, Solution};
use crate::shape::{extends_by_one, label_components, Shape};
use crate::verify::is_valid;

pub const DEFAULT_ORACLE_MAX_FREE: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{free} free cells exceed the oracle limit of {max}")]
    TooLarge { free: usize, max: usize },
}

/// Counts valid solutions by enumerating the free cells of every white
/// region that contains an arrow cell. Other regions must stay empty.
pub fn oracle_count(board: &Board, max_free: usize) -> Result<u64, OracleError> {
    let n = board.rows() * board.cols();
    let kinds = board.kinds();
    let mut live = vec![false; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] || !kinds[s].is_white() {
            continue;
        }
        let mut region = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < region.len() {
            let i = region[k];
            k += 1;
            for j in board.neighbors(i) {
                if !seen[j] && kinds[j].is_white() {
                    seen[j] = true;
                    region.push(j);
                }
            }
        }
        let has_arrow = region.iter().any(|&i| board.slots()[i].is_some());
        if !has_arrow {
            if region.iter().any(|&i| kinds[i] == CellKind::Predrawn) {
                return Ok(0);
            }
            continue;
        }
        for i in region {
            live[i] = kinds[i] == CellKind::White;
        }
    }
    let free: Vec<usize> = (0..n).filter(|&i| live[i]).collect();
    if free.len() > max_free {
        return Err(OracleError::TooLarge {
            free: free.len(),
            max: max_free,
        });
    }
    let mut decided_at = vec![0usize; n];
    for (k, &i) in free.iter().enumerate() {
        decided_at[i] = k + 1;
    }
    let mut e = Enum {
        board,
        free,
        decided_at,
        filled: kinds.iter().map(|&k| k == CellKind::Predrawn).collect(),
        count: 0,
    };
    e.go(0);
    Ok(e.count)
}

struct Enum<'a> {
    board: &'a Board,
    free: Vec<usize>,
    /// 0 for fixed cells, k + 1 for the k-th free cell.
    decided_at: Vec<usize>,
    filled: Vec<bool>,
    count: u64,
}

impl Enum<'_> {
    fn go(&mut self, k: usize) {
        if k == self.free.len() {
            let sol = Solution::from_filled(self.board, self.filled.clone());
            if is_valid(self.board, &sol) {
                self.count += 1;
            }
            return;
        }
        let i = self.free[k];
        for v in [false, true] {
            self.filled[i] = v;
            if self.cut_free(k + 1) {
                self.go(k + 1);
            }
        }
        self.filled[i] = false;
    }

    /// With the first `decided` free cells fixed, no fully decided block or
    /// arrow is already wrong.
    fn cut_free(&self, decided: usize) -> bool {
        let b = self.board;
        let (label, comps) = label_components(b.rows(), b.cols(), &self.filled);
        let is_decided = |i: usize| self.decided_at[i] <= decided;
        let settled: Vec<bool> = comps
            .iter()
            .map(|cells| {
                cells
                    .iter()
                    .all(|&i| is_decided(i) && b.neighbors(i).all(is_decided))
            })
            .collect();
        for (c, cells) in comps.iter().enumerate() {
            let on = cells.iter().filter(|&&i| b.slots()[i].is_some()).count();
            if on > 1 || settled[c] && on != 1 {
                return false;
            }
        }
        let cols = b.cols();
        for arrow in b.arrows() {
            let path: Vec<usize> = arrow.path().iter().map(|&c| b.index(c)).collect();
            if !path.iter().all(|&i| is_decided(i)) {
                continue;
            }
            let mut seq: Vec<u32> = Vec::new();
            let mut cur = None;
            for &i in &path {
                if !self.filled[i] {
                    cur = None;
                    continue;
                }
                if cur != Some(label[i]) {
                    seq.push(label[i]);
                    cur = Some(label[i]);
                }
            }
            if !seq.iter().all(|&l| settled[l as usize]) {
                continue;
            }
            if seq.len() < 2 {
                return false;
            }
            let shape =
                |l: u32| Shape::from_cells(comps[l as usize].iter().map(|&i| (i / cols, i % cols)));
            for w in seq.windows(2) {
                if w[0] == w[1] || !extends_by_one(&shape(w[0]), &shape(w[1])) {
                    return false;
                }
            }
        }
        true
    }
}
