use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use evolomino::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures")).join(name)
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evolomino"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_evolomino"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn load(name: &str) -> Board {
    parse_board(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

#[test]
fn verify_valid_and_invalid() {
    let b = fixture("sample.board");
    let o = run(&["verify", path(&b), path(&fixture("sample.solution"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid\n");

    let o = run(&[
        "verify",
        "--all",
        path(&fixture("negation.board")),
        path(&fixture("negation_in_true.solution")),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = run(&[
        "verify",
        path(&fixture("negation.board")),
        path(&fixture("negation_in_true.solution")),
    ]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn solve_prints_the_library_solution() {
    let b = load("sample.board");
    let want = solve(&b, &SolveConfig::default()).witness.unwrap();
    let o = run(&["solve", path(&fixture("sample.board"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), serialize_solution(&b, &want));
}

#[test]
fn count_matches_library() {
    let o = run(&["count", path(&fixture("harness_crossover.board"))]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "4\n".into()));
    let o = run(&["solve", "--count", path(&fixture("harness_variable.board"))]);
    assert_eq!(stdout(&o), "2\n");
    let o = run(&["count", "--oracle", path(&fixture("sample.board"))]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn unsolvable_board_exits_two() {
    let text = "evolomino 1\nsize 1 2\ngrid\n..\narrows 1\narrow 1,1 1,2\n";
    let o = run_stdin(&["solve", "-"], text);
    assert_eq!((o.status.code(), stdout(&o)), (Some(2), "unsat\n".into()));
    let o = run_stdin(&["count", "-"], text);
    assert_eq!((o.status.code(), stdout(&o)), (Some(2), "0\n".into()));
}

#[test]
fn budget_exhaustion_is_an_error() {
    let o = run(&["count", "--budget", "3", path(&fixture("worked.board"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn reduce_solve_decode_round_trip() {
    let cnf = fixture("worked.cnf");
    let (board, map, sol) = (
        scratch("rt.board"),
        scratch("rt.decode"),
        scratch("rt.solution"),
    );
    let o = run(&[
        "reduce",
        path(&cnf),
        "-o",
        path(&board),
        "--emit-decode-map",
        path(&map),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(String::from_utf8_lossy(&o.stderr).contains("crossover=1"));

    let f = parse_cnf(&std::fs::read_to_string(&cnf).unwrap()).unwrap();
    let art = reduce(&f);
    assert_eq!(
        std::fs::read_to_string(&board).unwrap(),
        serialize_board(&art.board)
    );
    assert_eq!(
        std::fs::read_to_string(&map).unwrap(),
        art.decode_map.to_text()
    );

    let o = run(&["solve", path(&board)]);
    std::fs::write(&sol, &o.stdout).unwrap();
    let o = run(&["decode", path(&map), path(&sol)]);
    assert_eq!(o.status.code(), Some(0));
    let s = solve(&art.board, &SolveConfig::default()).witness.unwrap();
    let a = decode(&art.decode_map, &s).unwrap();
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
    assert_eq!(stdout(&o), format!("v {} 0\n", lits.join(" ")));
}

#[test]
fn parsimony_reports_pass() {
    let o = run(&["parsimony", path(&fixture("worked.cnf"))]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(0), "sat=12 puzzle=12 PASS\n".into())
    );
}

#[test]
fn render_matches_library() {
    let b = load("sample.board");
    let o = run(&["render", path(&fixture("sample.board"))]);
    assert_eq!(stdout(&o), render(&b, &RenderOptions::default()).unwrap());

    let s = parse_solution(
        &std::fs::read_to_string(fixture("sample.solution")).unwrap(),
        &b,
    )
    .unwrap();
    let opts = RenderOptions {
        format: Format::Svg,
        cell_px: 10,
        show_arrows: false,
        overlay: Some(s),
    };
    let o = run(&[
        "render",
        path(&fixture("sample.board")),
        "--solution",
        path(&fixture("sample.solution")),
        "--format",
        "svg",
        "--cell-px",
        "10",
        "--no-arrows",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), render(&b, &opts).unwrap());
}

#[test]
fn render_ascii_golden() {
    let o = run(&["render", path(&fixture("sample.board"))]);
    assert_eq!(stdout(&o), "...>.\n...#o\no..^.\n.....\n..>.#\n");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        run(&["render", "--cell-px", "0", "x"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["count", "/no/such/board"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let o = run_stdin(&["reduce", "-"], "p cnf 2 1\n1 2 0\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3"));
}
