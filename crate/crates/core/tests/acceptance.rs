mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::{board, fixture, random_board, random_cnf};
use evolomino::reduce::harness::{self, Driver};
use evolomino::reduce::{count_route_crossings, size_bound, Inventory};
use evolomino::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Suite = fn() -> Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || {
        format!("took {:?}, limit {limit:?}", start.elapsed())
    })
}

fn count(b: &Board) -> u64 {
    count_solutions(b, &SolveConfig::default()).count.unwrap()
}

fn sample_board() -> Outcome {
    let start = Instant::now();
    let b = board("sample");
    let s = parse_solution(&fixture("sample.solution"), &b).map_err(|e| e.to_string())?;
    ensure(verify(&b, &s).is_valid(), || {
        "fixture solution rejected".into()
    })?;
    let found = solve(&b, &SolveConfig::default()).witness;
    ensure(found.as_ref() == Some(&s), || {
        "solver missed the fixture solution".into()
    })?;
    let (c, o) = (count(&b), oracle_count(&b, 24).map_err(|e| e.to_string())?);
    ensure(c == o && c >= 1, || format!("solver {c}, oracle {o}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("count={c} oracle={o}"))
}

fn gadget_counts() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("variable", harness::variable(), 2),
        ("split", harness::split(Driver::Variable), 2),
        (
            "crossover",
            harness::crossover(Driver::Variable, Driver::Variable),
            4,
        ),
        ("negation", harness::negation(Driver::Variable), 2),
    ];
    let mut parts = Vec::new();
    for (name, b, want) in cases {
        let (c, o) = (count(&b), oracle_count(&b, 64).map_err(|e| e.to_string())?);
        ensure(c == want && o == want, || {
            format!("{name}: solver {c}, oracle {o}, want {want}")
        })?;
        parts.push(format!("{name}={c}"));
    }
    within(start, Duration::from_secs(30))?;
    Ok(parts.join(" "))
}

fn clause_table() -> Outcome {
    let start = Instant::now();
    let mut solvable = 0;
    for mask in 0..8 {
        let d = [0, 1, 2].map(|k| {
            if mask >> k & 1 == 1 {
                Driver::True
            } else {
                Driver::False
            }
        });
        let sat = solve(&harness::clause(d), &SolveConfig::default())
            .witness
            .is_some();
        ensure(sat == (mask != 0), || {
            format!("inputs {d:?}: solvable={sat}")
        })?;
        solvable += usize::from(sat);
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{solvable}/8 solvable"))
}

fn end_to_end() -> Outcome {
    let start = Instant::now();
    let worked = parse_cnf(&fixture("worked.cnf")).map_err(|e| e.to_string())?;
    let mut formulas = vec![worked];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    formulas.extend((0..50).map(|_| random_cnf(&mut rng, 4, 3)));
    for (k, f) in formulas.iter().enumerate() {
        let art = reduce(f);
        let sat = f.count_models();
        let puzzle = count(&art.board);
        ensure(sat == puzzle, || {
            format!("{f}: #SAT {sat}, puzzle {puzzle}")
        })?;
        if k == 0 {
            ensure(puzzle == 12, || format!("worked formula counts {puzzle}"))?;
        }
        for s in enumerate_solutions(&art.board, &SolveConfig::default(), None) {
            let a = decode(&art.decode_map, &s).map_err(|e| e.to_string())?;
            ensure(f.eval(&a), || {
                format!("{f}: witness decodes to non-model {a:?}")
            })?;
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok("worked=12 and 50 random formulas match".into())
}

fn inventory() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let f = random_cnf(&mut rng, 8, 10);
        let art = reduce(&f);
        let inv = art.inventory;
        ensure(Inventory::expected(&f).matches(&inv), || {
            format!("{f}: {inv}")
        })?;
        let crossings = count_route_crossings(&art.plan);
        ensure(crossings == inv.crossover, || {
            format!("{f}: {crossings} crossings, {} crossovers", inv.crossover)
        })?;
        let (n, m) = (f.num_vars(), f.clauses().len());
        let side = art.board.rows().max(art.board.cols());
        ensure(side <= size_bound(n, m), || format!("{f}: side {side}"))?;
        worst = worst.max(side as f64 / (m * m + n) as f64);
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("200 formulas, worst side/(m^2+n) = {worst:.1}"))
}

fn solver_vs_oracle() -> Outcome {
    let start = Instant::now();
    let mut nonzero = 0;
    for seed in 0..300u64 {
        let b = random_board(seed, 18);
        let (c, o) = (count(&b), oracle_count(&b, 18).map_err(|e| e.to_string())?);
        ensure(c == o, || {
            format!(
                "seed {seed}: solver {c}, oracle {o}\n{}",
                serialize_board(&b)
            )
        })?;
        nonzero += usize::from(c > 0);
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("300 boards agree, {nonzero} solvable"))
}

fn properties() -> Outcome {
    let suites: [Suite; 8] = [
        common::prop_board_round_trip,
        common::prop_solution_round_trip,
        common::prop_shape_normalization,
        common::prop_extends_by_one,
        common::prop_pruning_admissible,
        common::prop_blocks_partition,
        common::prop_verify_matches_brute_force,
        common::prop_solver_deterministic,
    ];
    for run in suites {
        run()?;
    }
    Ok(format!("{} suites x {} cases", suites.len(), common::CASES))
}

/// Bypasses the test harness capture so the lines reach the log.
fn report(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("sample board", sample_board),
        ("gadget counts", gadget_counts),
        ("clause truth table", clause_table),
        ("end-to-end parsimony", end_to_end),
        ("inventory identities", inventory),
        ("solver vs oracle", solver_vs_oracle),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => report(format!("PASS {} {name}: {detail}", k + 1)),
            Err(why) => {
                failed += 1;
                report(format!("FAIL {} {name}: {why}", k + 1));
            }
        }
    }
    assert_eq!(failed, 0);
}
