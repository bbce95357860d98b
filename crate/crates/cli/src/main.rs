use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use evolomino::reduce::{parse_decode_map, DecodeMap};
use evolomino::solver::DEFAULT_ORACLE_MAX_FREE;
use evolomino::{
    check_parsimony, count_solutions, decode, oracle_count, parse_board, parse_cnf, parse_solution,
    reduce, render, serialize_board, serialize_solution, solve, verify, Board, Format,
    RenderOptions, Solution, SolveConfig, Status,
};

/// Evolomino puzzle toolkit.
#[derive(Parser)]
#[command(name = "evolomino", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a solution against the rules.
    Verify {
        board: PathBuf,
        solution: PathBuf,
        /// Report every violation instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Find one solution, or count them with --count.
    Solve {
        board: PathBuf,
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Count solutions.
    Count {
        board: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compile a DIMACS 3-CNF formula into a board.
    Reduce {
        cnf: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
        /// Also write the sidecar that maps solutions back to assignments.
        #[arg(long, value_name = "PATH")]
        emit_decode_map: Option<PathBuf>,
    },
    /// Read the assignment encoded by a solution of a reduced board.
    Decode { map: PathBuf, solution: PathBuf },
    /// Compare #SAT with the solution count of the reduced board.
    Parsimony {
        cnf: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Draw a board, optionally with a solution on top.
    Render {
        board: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
        #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u32).range(1..))]
        cell_px: u32,
        #[arg(long)]
        no_arrows: bool,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Stop counting after this many solutions.
    #[arg(long)]
    limit: Option<u64>,
    /// Give up after this many search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Count with the brute-force enumerator instead of the solver.
    #[arg(long)]
    oracle: bool,
    /// Free-cell ceiling for --oracle.
    #[arg(long, default_value_t = DEFAULT_ORACLE_MAX_FREE)]
    max_free: usize,
}

impl SearchArgs {
    fn config(&self) -> SolveConfig {
        SolveConfig {
            count_limit: self.limit,
            node_budget: self.budget,
            ..SolveConfig::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

const NEGATIVE: u8 = 2;

fn read(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    if path == Path::new("-") {
        return io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("stdout: {e}"));
    }
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_board(path: &Path) -> Result<Board, String> {
    parse_board(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_solution(path: &Path, board: &Board) -> Result<Solution, String> {
    parse_solution(&read(path)?, board).map_err(|e| format!("{}: {e}", path.display()))
}

fn count(board: &Board, search: &SearchArgs) -> Result<ExitCode, String> {
    let n = if search.oracle {
        oracle_count(board, search.max_free).map_err(|e| e.to_string())?
    } else {
        let out = count_solutions(board, &search.config());
        if out.status == Status::BudgetExhausted {
            return Err(format!("budget exhausted after {} nodes", out.nodes));
        }
        if out.truncated {
            eprintln!(
                "stopped at the limit of {} solutions",
                out.count.unwrap_or(0)
            );
        }
        out.count.expect("completed count")
    };
    println!("{n}");
    Ok(if n == 0 {
        ExitCode::from(NEGATIVE)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify {
            board,
            solution,
            all,
        } => {
            let b = load_board(&board)?;
            let s = load_solution(&solution, &b)?;
            let mut report = verify(&b, &s);
            if !all {
                report.violations.truncate(1);
            }
            print!("{report}");
            Ok(if report.is_valid() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(NEGATIVE)
            })
        }
        Command::Solve {
            board,
            count: true,
            search,
        }
        | Command::Count { board, search } => count(&load_board(&board)?, &search),
        Command::Solve { board, search, .. } => {
            let b = load_board(&board)?;
            let out = solve(&b, &search.config());
            match (out.status, out.witness) {
                (Status::BudgetExhausted, _) => {
                    Err(format!("budget exhausted after {} nodes", out.nodes))
                }
                (_, Some(w)) => {
                    print!("{}", serialize_solution(&b, &w));
                    Ok(ExitCode::SUCCESS)
                }
                (_, None) => {
                    println!("unsat");
                    Ok(ExitCode::from(NEGATIVE))
                }
            }
        }
        Command::Reduce {
            cnf,
            output,
            emit_decode_map,
        } => {
            let f = parse_cnf(&read(&cnf)?).map_err(|e| format!("{}: {e}", cnf.display()))?;
            let art = reduce(&f);
            write(&output, &serialize_board(&art.board))?;
            if let Some(path) = emit_decode_map {
                write(&path, &art.decode_map.to_text())?;
            }
            eprintln!("{}", art.inventory);
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode { map, solution } => {
            let m: DecodeMap =
                parse_decode_map(&read(&map)?).map_err(|e| format!("{}: {e}", map.display()))?;
            let board = reduce(&m.formula).board;
            if (board.rows(), board.cols()) != (m.rows, m.cols) {
                return Err(format!(
                    "{}: size {}x{} does not match the formula's board",
                    map.display(),
                    m.rows,
                    m.cols
                ));
            }
            let s = load_solution(&solution, &board)?;
            let report = verify(&board, &s);
            if !report.is_valid() {
                eprint!("solution is not valid:\n{report}");
                return Ok(ExitCode::from(NEGATIVE));
            }
            let a = decode(&m, &s).map_err(|e| e.to_string())?;
            let lits: Vec<String> = a
                .iter()
                .enumerate()
                .map(|(v, &t)| {
                    if t {
                        format!("{}", v + 1)
                    } else {
                        format!("-{}", v + 1)
                    }
                })
                .collect();
            println!("v {} 0", lits.join(" "));
            Ok(if m.formula.eval(&a) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(NEGATIVE)
            })
        }
        Command::Parsimony { cnf, budget } => {
            let f = parse_cnf(&read(&cnf)?).map_err(|e| format!("{}: {e}", cnf.display()))?;
            let cfg = SolveConfig {
                node_budget: budget,
                ..SolveConfig::default()
            };
            let report = check_parsimony(&f, &cfg).map_err(|e| e.to_string())?;
            println!("{report}");
            Ok(if report.equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(NEGATIVE)
            })
        }
        Command::Render {
            board,
            solution,
            format,
            cell_px,
            no_arrows,
            output,
        } => {
            let b = load_board(&board)?;
            let overlay = solution.map(|p| load_solution(&p, &b)).transpose()?;
            let opts = RenderOptions {
                format: match format {
                    RenderFormat::Ascii => Format::Ascii,
                    RenderFormat::Svg => Format::Svg,
                },
                cell_px,
                show_arrows: !no_arrows,
                overlay,
            };
            write(&output, &render(&b, &opts).map_err(|e| e.to_string())?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
