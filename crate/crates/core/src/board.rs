use std::fmt;

use thiserror::Error;

/// A grid position. Row 1 is the top row, column 1 the leftmost column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col) == 1
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.row, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    White,
    Shaded,
    Predrawn,
}

impl CellKind {
    pub fn is_white(self) -> bool {
        self != CellKind::Shaded
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("board must have at least one row and one column")]
    Empty,
    #[error("cell {0} is outside the board")]
    OutOfBounds(Cell),
    #[error("pre-drawn square on shaded cell {0}")]
    PredrawnOnShaded(Cell),
    #[error("arrow has {0} cells, at least 2 required")]
    ArrowTooShort(usize),
    #[error("arrow cells {0} and {1} are not adjacent")]
    NotAdjacent(Cell, Cell),
    #[error("arrow visits cell {0} twice")]
    SelfIntersecting(Cell),
    #[error("arrow {arrow} passes through shaded cell {cell}")]
    ArrowOnShaded { arrow: usize, cell: Cell },
    #[error("arrow cell conflict at {cell} (arrows {first} and {second})")]
    ArrowConflict {
        cell: Cell,
        first: usize,
        second: usize,
    },
}

/// A simple orthogonal path from its start cell to its tip.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    path: Vec<Cell>,
}

impl Arrow {
    pub fn new(path: Vec<Cell>) -> Result<Arrow, BoardError> {
        if path.len() < 2 {
            return Err(BoardError::ArrowTooShort(path.len()));
        }
        for w in path.windows(2) {
            if !w[0].is_adjacent(w[1]) {
                return Err(BoardError::NotAdjacent(w[0], w[1]));
            }
        }
        let mut sorted = path.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(BoardError::SelfIntersecting(w[0]));
        }
        Ok(Arrow { path })
    }

    pub fn path(&self) -> &[Cell] {
        &self.path
    }

    pub fn start(&self) -> Cell {
        self.path[0]
    }

    pub fn tip(&self) -> Cell {
        self.path[self.path.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Where an arrow passes: arrow index and position along its path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArrowSlot {
    pub arrow: usize,
    pub index: usize,
}

/// A puzzle instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board {
    rows: usize,
    cols: usize,
    kinds: Vec<CellKind>,
    arrows: Vec<Arrow>,
    slots: Vec<Option<ArrowSlot>>,
}

impl Board {
    pub fn new(
        rows: usize,
        cols: usize,
        shaded: impl IntoIterator<Item = Cell>,
        predrawn: impl IntoIterator<Item = Cell>,
        arrows: Vec<Arrow>,
    ) -> Result<Board, BoardError> {
        if rows == 0 || cols == 0 {
            return Err(BoardError::Empty);
        }
        let mut kinds = vec![CellKind::White; rows * cols];
        let index = |c: Cell| -> Result<usize, BoardError> {
            if c.row == 0 || c.col == 0 || c.row > rows || c.col > cols {
                Err(BoardError::OutOfBounds(c))
            } else {
                Ok((c.row - 1) * cols + c.col - 1)
            }
        };
        for c in shaded {
            kinds[index(c)?] = CellKind::Shaded;
        }
        for c in predrawn {
            let i = index(c)?;
            if kinds[i] == CellKind::Shaded {
                return Err(BoardError::PredrawnOnShaded(c));
            }
            kinds[i] = CellKind::Predrawn;
        }
        let mut slots: Vec<Option<ArrowSlot>> = vec![None; rows * cols];
        for (a, arrow) in arrows.iter().enumerate() {
            for (k, &c) in arrow.path.iter().enumerate() {
                let i = index(c)?;
                if kinds[i] == CellKind::Shaded {
                    return Err(BoardError::ArrowOnShaded {
                        arrow: a + 1,
                        cell: c,
                    });
                }
                if let Some(prev) = slots[i] {
                    return Err(BoardError::ArrowConflict {
                        cell: c,
                        first: prev.arrow + 1,
                        second: a + 1,
                    });
                }
                slots[i] = Some(ArrowSlot { arrow: a, index: k });
            }
        }
        Ok(Board {
            rows,
            cols,
            kinds,
            arrows,
            slots,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.row <= self.rows && c.col <= self.cols
    }

    pub fn kind(&self, c: Cell) -> CellKind {
        self.kinds[self.index(c)]
    }

    pub fn is_shaded(&self, c: Cell) -> bool {
        self.kind(c) == CellKind::Shaded
    }

    pub fn is_predrawn(&self, c: Cell) -> bool {
        self.kind(c) == CellKind::Predrawn
    }

    /// The arrow passing through `c`, if any.
    pub fn arrow_at(&self, c: Cell) -> Option<ArrowSlot> {
        self.slots[self.index(c)]
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let cols = self.cols;
        (0..self.rows * cols).map(move |i| Cell::new(i / cols + 1, i % cols + 1))
    }

    pub fn shaded(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells().filter(|&c| self.is_shaded(c))
    }

    pub fn predrawn(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells().filter(|&c| self.is_predrawn(c))
    }

    pub fn white_count(&self) -> usize {
        self.kinds.iter().filter(|k| k.is_white()).count()
    }

    /// White cells without a pre-drawn square.
    pub fn free_count(&self) -> usize {
        self.kinds.iter().filter(|&&k| k == CellKind::White).count()
    }

    pub(crate) fn index(&self, c: Cell) -> usize {
        debug_assert!(self.contains(c), "{c} outside board");
        (c.row - 1) * self.cols + c.col - 1
    }

    pub(crate) fn cell_at(&self, i: usize) -> Cell {
        Cell::new(i / self.cols + 1, i % self.cols + 1)
    }

    pub(crate) fn kinds(&self) -> &[CellKind] {
        &self.kinds
    }

    pub(crate) fn slots(&self) -> &[Option<ArrowSlot>] {
        &self.slots
    }

    /// Orthogonal neighbours of dense index `i`.
    pub(crate) fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> {
        let (r, c, rows, cols) = (i / self.cols, i % self.cols, self.rows, self.cols);
        let up = (r > 0).then(|| i - cols);
        let down = (r + 1 < rows).then(|| i + cols);
        let left = (c > 0).then(|| i - 1);
        let right = (c + 1 < cols).then(|| i + 1);
        [up, left, right, down].into_iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("solution is {found_rows}x{found_cols}, board is {rows}x{cols}")]
    SizeMismatch {
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("square on shaded cell {0}")]
    SquareOnShaded(Cell),
    #[error("pre-drawn square missing at {0}")]
    MissingPredrawn(Cell),
    #[error("cell {0} is outside the board")]
    OutOfBounds(Cell),
}

/// The set of cells holding a square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution {
    rows: usize,
    cols: usize,
    filled: Vec<bool>,
}

impl Solution {
    /// Only the pre-drawn squares.
    pub fn predrawn_only(board: &Board) -> Solution {
        Solution {
            rows: board.rows,
            cols: board.cols,
            filled: board
                .kinds
                .iter()
                .map(|&k| k == CellKind::Predrawn)
                .collect(),
        }
    }

    pub fn from_squares(
        board: &Board,
        squares: impl IntoIterator<Item = Cell>,
    ) -> Result<Solution, SolutionError> {
        let mut s = Solution {
            rows: board.rows,
            cols: board.cols,
            filled: vec![false; board.rows * board.cols],
        };
        for c in squares {
            if !board.contains(c) {
                return Err(SolutionError::OutOfBounds(c));
            }
            s.filled[board.index(c)] = true;
        }
        s.check(board)?;
        Ok(s)
    }

    pub(crate) fn from_filled(board: &Board, filled: Vec<bool>) -> Solution {
        debug_assert_eq!(filled.len(), board.rows * board.cols);
        Solution {
            rows: board.rows,
            cols: board.cols,
            filled,
        }
    }

    /// Structural checks against a board: size, shading, pre-drawn squares.
    pub fn check(&self, board: &Board) -> Result<(), SolutionError> {
        if self.rows != board.rows || self.cols != board.cols {
            return Err(SolutionError::SizeMismatch {
                rows: board.rows,
                cols: board.cols,
                found_rows: self.rows,
                found_cols: self.cols,
            });
        }
        for (i, (&f, &k)) in self.filled.iter().zip(&board.kinds).enumerate() {
            match (f, k) {
                (true, CellKind::Shaded) => {
                    return Err(SolutionError::SquareOnShaded(board.cell_at(i)))
                }
                (false, CellKind::Predrawn) => {
                    return Err(SolutionError::MissingPredrawn(board.cell_at(i)))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.row >= 1
            && c.col >= 1
            && c.row <= self.rows
            && c.col <= self.cols
            && self.filled[(c.row - 1) * self.cols + c.col - 1]
    }

    pub fn squares(&self) -> impl Iterator<Item = Cell> + '_ {
        let cols = self.cols;
        self.filled
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(move |(i, _)| Cell::new(i / cols + 1, i % cols + 1))
    }

    pub fn len(&self) -> usize {
        self.filled.iter().filter(|&&f| f).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub(crate) fn filled(&self) -> &[bool] {
        &self.filled
    }
}
