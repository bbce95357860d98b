use std::fmt::Write as _;

use thiserror::Error;

use crate::board::{Board, Cell, Solution};

use super::cnf::{parse_cnf, Cnf, CnfError};

/// Cells that tell a variable's value apart. Patterns list occupancy per
/// cell for each value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub cells: Vec<Cell>,
    pub when_true: Vec<bool>,
    pub when_false: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeMap {
    pub rows: usize,
    pub cols: usize,
    pub formula: Cnf,
    /// One probe per variable, variable 1 first.
    pub probes: Vec<Probe>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("solution is {found_rows}x{found_cols}, decode map expects {rows}x{cols}")]
    Size {
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("variable {var}: probe cells match neither value")]
    Undetermined { var: usize },
    #[error("decode map line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("decode map formula: {0}")]
    Formula(#[from] CnfError),
}

impl DecodeMap {
    pub(crate) fn new(board: &Board, formula: Cnf, bases: &[[Cell; 2]]) -> DecodeMap {
        DecodeMap {
            rows: board.rows(),
            cols: board.cols(),
            formula,
            probes: bases
                .iter()
                .map(|b| Probe {
                    cells: b.to_vec(),
                    when_true: vec![false, false],
                    when_false: vec![true, true],
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("evolomino-decode 1\nsize {} {}\n", self.rows, self.cols);
        out.push_str(&self.formula.to_dimacs());
        let _ = writeln!(out, "vars {}", self.probes.len());
        let pat = |p: &[bool]| {
            p.iter()
                .map(|&b| if b { 'x' } else { '.' })
                .collect::<String>()
        };
        for (v, p) in self.probes.iter().enumerate() {
            let _ = write!(out, "var {}", v + 1);
            for c in &p.cells {
                let _ = write!(out, " {c}");
            }
            let _ = writeln!(
                out,
                " true {} false {}",
                pat(&p.when_true),
                pat(&p.when_false)
            );
        }
        out
    }
}

/// Reads the assignment encoded by a solution of a reduced board.
pub fn decode(map: &DecodeMap, solution: &Solution) -> Result<Vec<bool>, DecodeError> {
    if (solution.rows(), solution.cols()) != (map.rows, map.cols) {
        return Err(DecodeError::Size {
            rows: map.rows,
            cols: map.cols,
            found_rows: solution.rows(),
            found_cols: solution.cols(),
        });
    }
    map.probes
        .iter()
        .enumerate()
        .map(|(v, p)| {
            let seen: Vec<bool> = p.cells.iter().map(|&c| solution.contains(c)).collect();
            if seen == p.when_true {
                Ok(true)
            } else if seen == p.when_false {
                Ok(false)
            } else {
                Err(DecodeError::Undetermined { var: v + 1 })
            }
        })
        .collect()
}

pub fn parse_decode_map(text: &str) -> Result<DecodeMap, DecodeError> {
    let lines: Vec<&str> = text.lines().collect();
    let err = |line: usize, message: &str| DecodeError::Syntax {
        line,
        message: message.to_string(),
    };
    if lines.first().map(|l| l.trim()) != Some("evolomino-decode 1") {
        return Err(err(1, "expected `evolomino-decode 1`"));
    }
    let size: Vec<usize> = match lines
        .get(1)
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
    {
        Some(t) if t.len() == 3 && t[0] == "size" => t[1..]
            .iter()
            .map(|s| s.parse().map_err(|_| err(2, "bad size")))
            .collect::<Result<_, _>>()?,
        _ => return Err(err(2, "expected `size <rows> <cols>`")),
    };
    let vars_at = lines
        .iter()
        .position(|l| l.starts_with("vars "))
        .ok_or_else(|| err(lines.len(), "missing `vars` line"))?;
    let formula = parse_cnf(&lines[2..vars_at].join("\n"))?;
    let count: usize = lines[vars_at][5..]
        .trim()
        .parse()
        .map_err(|_| err(vars_at + 1, "bad variable count"))?;
    let mut probes = Vec::with_capacity(count);
    for k in 0..count {
        let line = vars_at + 2 + k;
        let toks: Vec<&str> = lines
            .get(line - 1)
            .ok_or_else(|| err(line, "missing variable line"))?
            .split_whitespace()
            .collect();
        if toks.len() < 6 || toks[0] != "var" || toks[1] != (k + 1).to_string() {
            return Err(err(
                line,
                "expected `var <i> <cells> true <pat> false <pat>`",
            ));
        }
        let n = toks.len();
        if toks[n - 4] != "true" || toks[n - 2] != "false" {
            return Err(err(line, "expected `true <pat> false <pat>`"));
        }
        let cells = toks[2..n - 4]
            .iter()
            .map(|t| {
                let (r, c) = t.split_once(',').ok_or_else(|| err(line, "bad cell"))?;
                Ok(Cell::new(
                    r.parse().map_err(|_| err(line, "bad cell"))?,
                    c.parse().map_err(|_| err(line, "bad cell"))?,
                ))
            })
            .collect::<Result<Vec<_>, DecodeError>>()?;
        let pat = |s: &str| -> Result<Vec<bool>, DecodeError> {
            let p: Vec<bool> = s.chars().map(|ch| ch == 'x').collect();
            if p.len() != cells.len() || s.chars().any(|ch| ch != 'x' && ch != '.') {
                return Err(err(line, "pattern length or glyph mismatch"));
            }
            Ok(p)
        };
        probes.push(Probe {
            when_true: pat(toks[n - 3])?,
            when_false: pat(toks[n - 1])?,
            cells,
        });
    }
    if probes.len() != formula.num_vars() {
        return Err(err(vars_at + 1, "variable count differs from the formula"));
    }
    Ok(DecodeMap {
        rows: size[0],
        cols: size[1],
        formula,
        probes,
    })
}
