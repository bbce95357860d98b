//! Text and SVG pictures of boards and solutions.

use std::fmt::Write as _;

use thiserror::Error;

use crate::board::{Board, Cell, CellKind, Solution};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Format {
    #[default]
    Ascii,
    Svg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    pub format: Format,
    /// Side of one cell in SVG pixels.
    pub cell_px: u32,
    pub show_arrows: bool,
    pub overlay: Option<Solution>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            format: Format::Ascii,
            cell_px: 24,
            show_arrows: true,
            overlay: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("overlay is {found_rows}x{found_cols}, board is {rows}x{cols}")]
    SizeMismatch {
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("cell size must be positive")]
    ZeroCell,
}

pub const SHADED_FILL: &str = "#b3d9de";
const GRID_STROKE: &str = "#7a7a7a";
const SQUARE_FILL: &str = "#3b3b3b";
const OVERLAY_FILL: &str = "#8a8a8a";
const ARROW_STROKE: &str = "#c23b22";

pub fn render(board: &Board, opts: &RenderOptions) -> Result<String, RenderError> {
    if let Some(s) = &opts.overlay {
        if (s.rows(), s.cols()) != (board.rows(), board.cols()) {
            return Err(RenderError::SizeMismatch {
                rows: board.rows(),
                cols: board.cols(),
                found_rows: s.rows(),
                found_cols: s.cols(),
            });
        }
    }
    match opts.format {
        Format::Ascii => Ok(ascii(board, opts)),
        Format::Svg if opts.cell_px == 0 => Err(RenderError::ZeroCell),
        Format::Svg => Ok(svg(board, opts)),
    }
}

fn tip_glyph(from: Cell, to: Cell) -> char {
    match (
        to.row as i64 - from.row as i64,
        to.col as i64 - from.col as i64,
    ) {
        (0, 1) => '>',
        (0, -1) => '<',
        (1, 0) => 'v',
        _ => '^',
    }
}

fn ascii(board: &Board, opts: &RenderOptions) -> String {
    let cols = board.cols();
    let mut grid: Vec<char> = board
        .cells()
        .map(|c| match board.kind(c) {
            CellKind::Shaded => '#',
            CellKind::Predrawn => 'o',
            CellKind::White => '.',
        })
        .collect();
    let at = |c: Cell| (c.row - 1) * cols + c.col - 1;
    if opts.show_arrows {
        for a in board.arrows() {
            let p = a.path();
            let tip = a.tip();
            if grid[at(tip)] == '.' {
                grid[at(tip)] = tip_glyph(p[p.len() - 2], tip);
            }
        }
    }
    if let Some(s) = &opts.overlay {
        for c in s.squares() {
            if !board.is_shaded(c) {
                grid[at(c)] = 'x';
            }
        }
    }
    let mut out = String::with_capacity(grid.len() + board.rows());
    for row in grid.chunks(cols) {
        out.extend(row);
        out.push('\n');
    }
    out
}

fn svg(board: &Board, opts: &RenderOptions) -> String {
    let px = opts.cell_px as f64;
    let (w, h) = (board.cols() as f64 * px, board.rows() as f64 * px);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let x = |c: Cell| (c.col - 1) as f64 * px;
    let y = |c: Cell| (c.row - 1) as f64 * px;
    for c in board.cells() {
        let fill = if board.is_shaded(c) {
            SHADED_FILL
        } else {
            "#ffffff"
        };
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{px}" height="{px}" fill="{fill}" stroke="{GRID_STROKE}" stroke-width="1"/>"#,
            x(c),
            y(c)
        );
    }
    let inset = px / 6.0;
    let side = px - 2.0 * inset;
    for c in board.cells() {
        let on_overlay = opts.overlay.as_ref().is_some_and(|s| s.contains(c));
        let fill = if board.is_predrawn(c) {
            SQUARE_FILL
        } else if on_overlay {
            OVERLAY_FILL
        } else {
            continue;
        };
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{side:.2}" height="{side:.2}" fill="{fill}"/>"#,
            x(c) + inset,
            y(c) + inset
        );
    }
    if opts.show_arrows {
        let centre = |c: Cell| (x(c) + px / 2.0, y(c) + px / 2.0);
        for a in board.arrows() {
            let points: Vec<String> = a
                .path()
                .iter()
                .map(|&c| {
                    let (cx, cy) = centre(c);
                    format!("{cx:.2},{cy:.2}")
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{ARROW_STROKE}" stroke-width="{:.2}"/>"#,
                points.join(" "),
                px / 12.0
            );
            let p = a.path();
            let (tx, ty) = centre(a.tip());
            let (fx, fy) = centre(p[p.len() - 2]);
            let (dx, dy) = ((tx - fx) / px, (ty - fy) / px);
            let (len, half) = (px * 0.35, px * 0.2);
            let (bx, by) = (tx - dx * len, ty - dy * len);
            let _ = writeln!(
                out,
                r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{ARROW_STROKE}"/>"#,
                tx,
                ty,
                bx - dy * half,
                by + dx * half,
                bx + dy * half,
                by - dx * half
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
