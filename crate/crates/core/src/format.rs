//! Text formats for boards and solutions.
//!
//! ```text
//! evolomino 1
//! size <rows> <cols>
//! grid
//! <rows lines over . # o>
//! arrows <k>
//! arrow r1,c1 r2,c2 ...
//! ```
//!
//! A solution is `solution <rows> <cols>` followed by grid lines over `. # x`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::board::{Arrow, Board, BoardError, Cell, CellKind, Solution, SolutionError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: expected `{0}`")]
    Header(&'static str),
    #[error("unexpected end of input, expected {0}")]
    Eof(&'static str),
    #[error("row has {found} cells, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("unknown glyph {glyph:?} at column {col}")]
    Glyph { glyph: char, col: usize },
    #[error("bad cell `{0}`")]
    BadCell(String),
    #[error("trailing content after last section")]
    Trailing,
    #[error("shading differs from the board at {0}")]
    ShadingMismatch(Cell),
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Solution(#[from] SolutionError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        match self.inner.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok((i + 1, l.trim_end_matches('\r')))
            }
            None => Err(err(self.last + 1, ParseErrorKind::Eof(what))),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        for (i, l) in self.inner.by_ref() {
            if !l.trim().is_empty() {
                return Err(err(i + 1, ParseErrorKind::Trailing));
            }
        }
        Ok(())
    }
}

fn keyword_numbers<const N: usize>(
    line: &str,
    keyword: &str,
    shape: &'static str,
) -> Result<[usize; N], ParseErrorKind> {
    let mut toks = line.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(ParseErrorKind::Header(shape));
    }
    let mut out = [0; N];
    for slot in out.iter_mut() {
        *slot = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(ParseErrorKind::Header(shape))?;
    }
    if toks.next().is_some() {
        return Err(ParseErrorKind::Header(shape));
    }
    Ok(out)
}

fn parse_cell(tok: &str) -> Result<Cell, ParseErrorKind> {
    let bad = || ParseErrorKind::BadCell(tok.to_string());
    let (r, c) = tok.split_once(',').ok_or_else(bad)?;
    Ok(Cell::new(
        r.parse().map_err(|_| bad())?,
        c.parse().map_err(|_| bad())?,
    ))
}

pub fn parse_board(text: &str) -> Result<Board, ParseError> {
    let mut lines = Lines::new(text);
    let (n, l) = lines.next("header")?;
    if l.trim() != "evolomino 1" {
        return Err(err(n, ParseErrorKind::Header("evolomino 1")));
    }
    let (n, l) = lines.next("size line")?;
    let [rows, cols] =
        keyword_numbers::<2>(l, "size", "size <rows> <cols>").map_err(|k| err(n, k))?;
    if rows == 0 || cols == 0 {
        return Err(err(n, BoardError::Empty.into()));
    }
    let (n, l) = lines.next("grid keyword")?;
    if l.trim() != "grid" {
        return Err(err(n, ParseErrorKind::Header("grid")));
    }
    let mut shaded = Vec::new();
    let mut predrawn = Vec::new();
    for r in 1..=rows {
        let (n, l) = lines.next("grid row")?;
        let found = l.chars().count();
        if found != cols {
            return Err(err(
                n,
                ParseErrorKind::RowLength {
                    expected: cols,
                    found,
                },
            ));
        }
        for (c, ch) in l.chars().enumerate() {
            match ch {
                '.' => {}
                '#' => shaded.push(Cell::new(r, c + 1)),
                'o' => predrawn.push(Cell::new(r, c + 1)),
                glyph => return Err(err(n, ParseErrorKind::Glyph { glyph, col: c + 1 })),
            }
        }
    }
    let (n, l) = lines.next("arrows line")?;
    let [k] = keyword_numbers::<1>(l, "arrows", "arrows <k>").map_err(|e| err(n, e))?;
    let mut arrows = Vec::with_capacity(k);
    let mut arrow_lines = Vec::with_capacity(k);
    for _ in 0..k {
        let (n, l) = lines.next("arrow line")?;
        let mut toks = l.split_whitespace();
        if toks.next() != Some("arrow") {
            return Err(err(n, ParseErrorKind::Header("arrow r,c r,c ...")));
        }
        let path = toks
            .map(parse_cell)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(n, e))?;
        for &c in &path {
            if c.row == 0 || c.col == 0 || c.row > rows || c.col > cols {
                return Err(err(n, BoardError::OutOfBounds(c).into()));
            }
        }
        arrows.push(Arrow::new(path).map_err(|e| err(n, e.into()))?);
        arrow_lines.push(n);
    }
    lines.finish()?;
    Board::new(rows, cols, shaded, predrawn, arrows).map_err(|e| {
        let line = match &e {
            BoardError::ArrowOnShaded { arrow, .. } => arrow_lines[arrow - 1],
            BoardError::ArrowConflict { second, .. } => arrow_lines[second - 1],
            _ => 1,
        };
        err(line, e.into())
    })
}

pub fn serialize_board(board: &Board) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "evolomino 1");
    let _ = writeln!(out, "size {} {}", board.rows(), board.cols());
    out.push_str("grid\n");
    for r in 1..=board.rows() {
        for c in 1..=board.cols() {
            out.push(match board.kind(Cell::new(r, c)) {
                CellKind::White => '.',
                CellKind::Shaded => '#',
                CellKind::Predrawn => 'o',
            });
        }
        out.push('\n');
    }
    let _ = writeln!(out, "arrows {}", board.arrows().len());
    for a in board.arrows() {
        out.push_str("arrow");
        for c in a.path() {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_solution(text: &str, board: &Board) -> Result<Solution, ParseError> {
    let mut lines = Lines::new(text);
    let (n, l) = lines.next("solution header")?;
    let [rows, cols] =
        keyword_numbers::<2>(l, "solution", "solution <rows> <cols>").map_err(|k| err(n, k))?;
    if rows != board.rows() || cols != board.cols() {
        let e = SolutionError::SizeMismatch {
            rows: board.rows(),
            cols: board.cols(),
            found_rows: rows,
            found_cols: cols,
        };
        return Err(err(n, e.into()));
    }
    let mut squares = Vec::new();
    for r in 1..=rows {
        let (n, l) = lines.next("solution row")?;
        let found = l.chars().count();
        if found != cols {
            return Err(err(
                n,
                ParseErrorKind::RowLength {
                    expected: cols,
                    found,
                },
            ));
        }
        for (c, ch) in l.chars().enumerate() {
            let cell = Cell::new(r, c + 1);
            let shaded = match ch {
                '.' => false,
                '#' => true,
                'x' => {
                    squares.push(cell);
                    false
                }
                glyph => return Err(err(n, ParseErrorKind::Glyph { glyph, col: c + 1 })),
            };
            if shaded != board.is_shaded(cell) {
                return Err(err(n, ParseErrorKind::ShadingMismatch(cell)));
            }
            if ch == '.' && board.is_predrawn(cell) {
                return Err(err(n, SolutionError::MissingPredrawn(cell).into()));
            }
        }
    }
    lines.finish()?;
    Solution::from_squares(board, squares).map_err(|e| err(1, e.into()))
}

pub fn serialize_solution(board: &Board, solution: &Solution) -> String {
    let mut out = format!("solution {} {}\n", board.rows(), board.cols());
    for r in 1..=board.rows() {
        for c in 1..=board.cols() {
            let cell = Cell::new(r, c);
            out.push(if board.is_shaded(cell) {
                '#'
            } else if solution.contains(cell) {
                'x'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}
