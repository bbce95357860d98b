//! Gadget tiles. Coordinates are local, 0-based, with `y` growing upward.

use std::fmt;

use crate::board::{Board, CellKind};
use crate::format::parse_board;

pub type Point = (i32, i32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TemplateKind {
    /// Assignment source: a two-cell free base under a predrawn start.
    Variable,
    /// The full variable tile, source plus one junction.
    VariableTile,
    Negation,
    Split,
    Clause,
    Crossover,
    /// Sink for a signal whose start block is 1 or 3 squares.
    Terminal,
    /// Sink for an unread variable: one junction, then a terminal.
    IdleSink,
    ConstTrue,
    ConstFalse,
}

impl TemplateKind {
    pub const ALL: [TemplateKind; 10] = [
        TemplateKind::Variable,
        TemplateKind::VariableTile,
        TemplateKind::Negation,
        TemplateKind::Split,
        TemplateKind::Clause,
        TemplateKind::Crossover,
        TemplateKind::Terminal,
        TemplateKind::IdleSink,
        TemplateKind::ConstTrue,
        TemplateKind::ConstFalse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TemplateKind::Variable => "variable",
            TemplateKind::VariableTile => "variable-tile",
            TemplateKind::Negation => "negation",
            TemplateKind::Split => "split",
            TemplateKind::Clause => "clause",
            TemplateKind::Crossover => "crossover",
            TemplateKind::Terminal => "terminal",
            TemplateKind::IdleSink => "idle-sink",
            TemplateKind::ConstTrue => "true",
            TemplateKind::ConstFalse => "false",
        }
    }

    fn source(self) -> &'static str {
        match self {
            TemplateKind::Variable => VARIABLE_SOURCE,
            TemplateKind::VariableTile => include_str!("../../fixtures/variable.board"),
            TemplateKind::Negation => include_str!("../../fixtures/negation.board"),
            TemplateKind::Split => include_str!("../../fixtures/split.board"),
            TemplateKind::Clause => include_str!("../../fixtures/clause.board"),
            TemplateKind::Crossover => include_str!("../../fixtures/crossover.board"),
            TemplateKind::Terminal => TERMINAL,
            TemplateKind::IdleSink => IDLE_SINK,
            TemplateKind::ConstTrue => CONST_TRUE,
            TemplateKind::ConstFalse => CONST_FALSE,
        }
    }
}

impl fmt::Display for TemplateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const VARIABLE_SOURCE: &str = "evolomino 1
size 5 3
grid
#.#
#o#
#.#
#.#
###
arrows 1
arrow 2,2 1,2
";

const TERMINAL: &str = "evolomino 1
size 6 3
grid
###
#.#
#.#
#o#
#o#
#.#
arrows 1
arrow 6,2 5,2
";

const IDLE_SINK: &str = "evolomino 1
size 13 3
grid
###
#.#
#.#
#o#
#o#
#.#
#o#
#.#
#o#
#.#
#o#
#o#
#.#
arrows 2
arrow 13,2 12,2
arrow 7,2 6,2 5,2
";

const CONST_TRUE: &str = "evolomino 1
size 3 3
grid
#.#
#o#
###
arrows 1
arrow 2,2 1,2
";

const CONST_FALSE: &str = "evolomino 1
size 5 3
grid
#.#
#o#
#o#
#o#
###
arrows 1
arrow 2,2 1,2
";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Glyph {
    Shaded,
    White,
    Predrawn,
}

/// A tile ready to be stamped. Ports are arrow fragments that touch the
/// bottom row (inputs) or the top row (outputs), ordered by column.
#[derive(Clone, Debug)]
pub struct Template {
    pub kind: TemplateKind,
    pub width: i32,
    pub height: i32,
    glyphs: Vec<Glyph>,
    pub arrows: Vec<Vec<Point>>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl Template {
    pub fn load(kind: TemplateKind) -> Template {
        let board = parse_board(kind.source()).expect("embedded tile parses");
        Template::from_board(kind, &board)
    }

    fn from_board(kind: TemplateKind, board: &Board) -> Template {
        let (h, w) = (board.rows() as i32, board.cols() as i32);
        let mut glyphs = vec![Glyph::Shaded; (w * h) as usize];
        for c in board.cells() {
            let p = (c.col as i32 - 1, h - c.row as i32);
            glyphs[(p.1 * w + p.0) as usize] = match board.kind(c) {
                CellKind::Shaded => Glyph::Shaded,
                CellKind::White => Glyph::White,
                CellKind::Predrawn => Glyph::Predrawn,
            };
        }
        let arrows: Vec<Vec<Point>> = board
            .arrows()
            .iter()
            .map(|a| {
                a.path()
                    .iter()
                    .map(|c| (c.col as i32 - 1, h - c.row as i32))
                    .collect()
            })
            .collect();
        let mut t = Template {
            kind,
            width: w,
            height: h,
            glyphs,
            arrows,
            inputs: Vec::new(),
            outputs: Vec::new(),
        };
        t.trim_dead();
        let mut inputs: Vec<usize> = (0..t.arrows.len())
            .filter(|&a| t.arrows[a][0].1 == 0)
            .collect();
        let mut outputs: Vec<usize> = (0..t.arrows.len())
            .filter(|&a| t.arrows[a].last().unwrap().1 == h - 1)
            .collect();
        inputs.sort_by_key(|&a| t.arrows[a][0].0);
        outputs.sort_by_key(|&a| t.arrows[a].last().unwrap().0);
        t.inputs = inputs;
        t.outputs = outputs;
        t
    }

    /// Shades white regions that no arrow touches; they can never hold a
    /// square and would otherwise leak into neighbouring corridors.
    fn trim_dead(&mut self) {
        let (w, h) = (self.width, self.height);
        let mut keep = vec![false; self.glyphs.len()];
        let mut stack: Vec<Point> = self.arrows.iter().flatten().copied().collect();
        while let Some((x, y)) = stack.pop() {
            let i = (y * w + x) as usize;
            if keep[i] || self.glyphs[i] == Glyph::Shaded {
                continue;
            }
            keep[i] = true;
            for (dx, dy) in [(0, 1), (0, -1), (1, 0), (-1, 0)] {
                let (nx, ny) = (x + dx, y + dy);
                if (0..w).contains(&nx) && (0..h).contains(&ny) {
                    stack.push((nx, ny));
                }
            }
        }
        for (g, k) in self.glyphs.iter_mut().zip(keep) {
            if !k {
                *g = Glyph::Shaded;
            }
        }
    }

    pub fn glyph(&self, p: Point) -> Glyph {
        self.glyphs[(p.1 * self.width + p.0) as usize]
    }

    /// White and predrawn cells with their glyph.
    pub fn cells(&self) -> impl Iterator<Item = (Point, Glyph)> + '_ {
        (0..self.height).flat_map(move |y| {
            (0..self.width).filter_map(move |x| match self.glyph((x, y)) {
                Glyph::Shaded => None,
                g => Some(((x, y), g)),
            })
        })
    }

    /// Column of input port `k`.
    pub fn input_x(&self, k: usize) -> i32 {
        self.arrows[self.inputs[k]][0].0
    }

    /// Column of output port `k`.
    pub fn output_x(&self, k: usize) -> i32 {
        self.arrows[self.outputs[k]].last().unwrap().0
    }

    pub fn is_port(&self, a: usize) -> bool {
        self.inputs.contains(&a) || self.outputs.contains(&a)
    }
}

/// Shared, lazily built copies of every template.
pub fn template(kind: TemplateKind) -> &'static Template {
    use std::sync::OnceLock;
    static CACHE: OnceLock<Vec<Template>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        TemplateKind::ALL
            .iter()
            .map(|&k| Template::load(k))
            .collect()
    });
    &all[TemplateKind::ALL.iter().position(|&k| k == kind).unwrap()]
}
