use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn from_dimacs(v: i64) -> Literal {
        Literal {
            var: v.unsigned_abs() as usize,
            positive: v > 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

pub type Clause = [Literal; 3];

/// A 3-CNF formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Clause>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("line {line}: malformed header, expected `p cnf <vars> <clauses>`")]
    Header { line: usize },
    #[error("line {line}: clause data before the header")]
    MissingHeader { line: usize },
    #[error("line {line}: bad literal `{token}`")]
    BadLiteral { line: usize, token: String },
    #[error("line {line}: literal {literal} out of range 1..={num_vars}")]
    OutOfRange {
        line: usize,
        literal: i64,
        num_vars: usize,
    },
    #[error("line {line}: clause has {found} literals, expected 3")]
    Arity { line: usize, found: usize },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("variable {var} out of range 1..={num_vars}")]
    VarRange { var: usize, num_vars: usize },
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Cnf, CnfError> {
        for lit in clauses.iter().flatten() {
            if lit.var == 0 || lit.var > num_vars {
                return Err(CnfError::VarRange {
                    var: lit.var,
                    num_vars,
                });
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// Builds a formula from DIMACS-style integer triples.
    pub fn from_dimacs(num_vars: usize, clauses: &[[i64; 3]]) -> Result<Cnf, CnfError> {
        Cnf::new(
            num_vars,
            clauses
                .iter()
                .map(|c| c.map(Literal::from_dimacs))
                .collect(),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.num_vars);
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    /// Satisfying assignments by truth-table enumeration, in binary counting
    /// order with variable 1 as the least significant bit.
    pub fn models(&self) -> Vec<Vec<bool>> {
        assert!(self.num_vars < 32, "truth table too large");
        (0u64..1 << self.num_vars)
            .map(|bits| {
                (0..self.num_vars)
                    .map(|v| bits >> v & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .filter(|a| self.eval(a))
            .collect()
    }

    pub fn count_models(&self) -> u64 {
        assert!(self.num_vars < 32, "truth table too large");
        let mut a = vec![false; self.num_vars];
        let mut count = 0;
        for bits in 0u64..1 << self.num_vars {
            for (v, slot) in a.iter_mut().enumerate() {
                *slot = bits >> v & 1 == 1;
            }
            count += self.eval(&a) as u64;
        }
        count
    }

    /// Occurrence counts per variable, index 0 for variable 1.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.num_vars];
        for lit in self.clauses.iter().flatten() {
            occ[lit.var - 1] += 1;
        }
        occ
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            let lit = |l: &Literal| format!("{}x{}", if l.positive { "" } else { "~" }, l.var);
            write!(f, "({} | {} | {})", lit(&c[0]), lit(&c[1]), lit(&c[2]))?;
        }
        Ok(())
    }
}

/// Parses DIMACS CNF. Comment lines start with `c`; clauses may span lines;
/// a `%` line ends the input.
pub fn parse_cnf(text: &str) -> Result<Cnf, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        if l.starts_with('%') {
            break;
        }
        if l.starts_with('p') {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let parsed = match toks.as_slice() {
                ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                _ => None,
            };
            if header.is_some() || parsed.is_none() {
                return Err(CnfError::Header { line });
            }
            header = parsed;
            continue;
        }
        let Some((n, _)) = header else {
            return Err(CnfError::MissingHeader { line });
        };
        for tok in l.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| CnfError::BadLiteral {
                line,
                token: tok.to_string(),
            })?;
            if v == 0 {
                if current.len() != 3 {
                    return Err(CnfError::Arity {
                        line,
                        found: current.len(),
                    });
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
                continue;
            }
            if v.unsigned_abs() as usize > n {
                return Err(CnfError::OutOfRange {
                    line,
                    literal: v,
                    num_vars: n,
                });
            }
            if current.is_empty() {
                current_line = line;
            }
            current.push(Literal::from_dimacs(v));
        }
    }
    let Some((n, m)) = header else {
        return Err(CnfError::Header { line: 1 });
    };
    if !current.is_empty() {
        return Err(CnfError::Arity {
            line: current_line,
            found: current.len(),
        });
    }
    if clauses.len() != m {
        return Err(CnfError::ClauseCount {
            declared: m,
            found: clauses.len(),
        });
    }
    Cnf::new(n, clauses)
}
