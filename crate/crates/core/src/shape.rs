use crate::board::{Board, Cell, Solution};

/// A maximal 4-connected group of squares, cells in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    cells: Vec<Cell>,
}

impl Block {
    /// Wraps a nonempty cell list; connectivity is the caller's business.
    pub fn new(mut cells: Vec<Cell>) -> Block {
        assert!(!cells.is_empty(), "block must be nonempty");
        cells.sort();
        cells.dedup();
        Block { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Smallest cell in row-major order.
    pub fn anchor(&self) -> Cell {
        self.cells[0]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Translation-normalized cell offsets. Rotations and reflections are
/// distinct shapes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    cells: Vec<(usize, usize)>,
}

impl Shape {
    pub fn from_cells(cells: impl IntoIterator<Item = (usize, usize)>) -> Shape {
        let mut cells: Vec<(usize, usize)> = cells.into_iter().collect();
        let dr = cells.iter().map(|c| c.0).min().unwrap_or(0);
        let dc = cells.iter().map(|c| c.1).min().unwrap_or(0);
        for c in cells.iter_mut() {
            c.0 -= dr;
            c.1 -= dc;
        }
        cells.sort_unstable();
        cells.dedup();
        Shape { cells }
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `(height, width)` of the bounding box.
    pub fn extent(&self) -> (usize, usize) {
        let h = self.cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        let w = self.cells.iter().map(|c| c.1 + 1).max().unwrap_or(0);
        (h, w)
    }

    /// The shape with one cell removed, renormalized.
    pub fn without(&self, index: usize) -> Shape {
        Shape::from_cells(
            self.cells
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, &c)| c),
        )
    }
}

pub fn shape_of(block: &Block) -> Shape {
    Shape::from_cells(block.cells.iter().map(|c| (c.row, c.col)))
}

/// True when `next` is `prev` plus exactly one square, without rotation or
/// reflection.
pub fn extends_by_one(prev: &Shape, next: &Shape) -> bool {
    if next.len() != prev.len() + 1 {
        return false;
    }
    (0..next.len()).any(|i| next.without(i) == *prev)
}

/// Row-major labelling of the 4-connected components of `filled`.
/// Components are numbered in order of their smallest cell.
pub(crate) fn label_components(
    rows: usize,
    cols: usize,
    filled: &[bool],
) -> (Vec<u32>, Vec<Vec<usize>>) {
    const NONE: u32 = u32::MAX;
    let mut label = vec![NONE; rows * cols];
    let mut comps = Vec::new();
    let mut stack = Vec::new();
    for start in 0..rows * cols {
        if !filled[start] || label[start] != NONE {
            continue;
        }
        let id = comps.len() as u32;
        let mut cells = vec![start];
        label[start] = id;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (r, c) = (i / cols, i % cols);
            let mut visit = |j: usize| {
                if filled[j] && label[j] == NONE {
                    label[j] = id;
                    cells.push(j);
                    stack.push(j);
                }
            };
            if r > 0 {
                visit(i - cols);
            }
            if r + 1 < rows {
                visit(i + cols);
            }
            if c > 0 {
                visit(i - 1);
            }
            if c + 1 < cols {
                visit(i + 1);
            }
        }
        cells.sort_unstable();
        comps.push(cells);
    }
    (label, comps)
}

/// All blocks of a solution, sorted by their smallest cell.
pub fn blocks_of(board: &Board, solution: &Solution) -> Vec<Block> {
    debug_assert_eq!(
        (board.rows(), board.cols()),
        (solution.rows(), solution.cols())
    );
    let cols = solution.cols();
    let (_, comps) = label_components(solution.rows(), cols, solution.filled());
    comps
        .into_iter()
        .map(|cells| Block {
            cells: cells
                .into_iter()
                .map(|i| Cell::new(i / cols + 1, i % cols + 1))
                .collect(),
        })
        .collect()
}
