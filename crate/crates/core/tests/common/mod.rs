#![allow(dead_code)]

use std::collections::BTreeSet;

use evolomino::reduce::Cnf;
use evolomino::solver::oracle_count;
use evolomino::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 1000;

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

pub fn board(name: &str) -> Board {
    parse_board(&fixture(&format!("{name}.board"))).unwrap()
}

/// Random board with at most `max_free` free white cells and one to three
/// arrows.
pub fn random_board(seed: u64, max_free: usize) -> Board {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(2..=6);
        let p_shade = rng.gen_range(0.0..0.5);
        let mut white = vec![vec![false; cols]; rows];
        for row in white.iter_mut() {
            for w in row.iter_mut() {
                *w = !rng.gen_bool(p_shade);
            }
        }
        let mut used = vec![vec![false; cols]; rows];
        let mut arrows = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let starts: Vec<(usize, usize)> = (0..rows)
                .flat_map(|r| (0..cols).map(move |c| (r, c)))
                .filter(|&(r, c)| white[r][c] && !used[r][c])
                .collect();
            let Some(&(mut r, mut c)) = starts.choose(&mut rng) else {
                break;
            };
            let len = rng.gen_range(2..=6);
            let mut path = vec![(r, c)];
            used[r][c] = true;
            while path.len() < len {
                let mut next = Vec::new();
                if r > 0 {
                    next.push((r - 1, c));
                }
                if r + 1 < rows {
                    next.push((r + 1, c));
                }
                if c > 0 {
                    next.push((r, c - 1));
                }
                if c + 1 < cols {
                    next.push((r, c + 1));
                }
                next.retain(|&(a, b)| white[a][b] && !used[a][b]);
                let Some(&(a, b)) = next.choose(&mut rng) else {
                    break;
                };
                used[a][b] = true;
                path.push((a, b));
                (r, c) = (a, b);
            }
            if path.len() >= 2 {
                arrows.push(path);
            } else {
                used[path[0].0][path[0].1] = false;
            }
        }
        let mut shaded = Vec::new();
        let mut predrawn = Vec::new();
        for (r, row) in white.iter().enumerate() {
            for (c, &w) in row.iter().enumerate() {
                let cell = Cell::new(r + 1, c + 1);
                if !w {
                    shaded.push(cell);
                } else if rng.gen_bool(0.12) {
                    predrawn.push(cell);
                }
            }
        }
        let arrows = arrows
            .into_iter()
            .map(|p| {
                Arrow::new(
                    p.into_iter()
                        .map(|(r, c)| Cell::new(r + 1, c + 1))
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        let b = Board::new(rows, cols, shaded, predrawn, arrows).unwrap();
        if b.free_count() <= max_free {
            return b;
        }
    }
}

pub fn random_cnf(rng: &mut impl Rng, max_vars: usize, max_clauses: usize) -> Cnf {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(1..=max_clauses);
    let clauses: Vec<[i64; 3]> = (0..m)
        .map(|_| {
            [0; 3].map(|_| {
                let v = rng.gen_range(1..=n as i64);
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            })
        })
        .collect();
    Cnf::from_dimacs(n, &clauses).unwrap()
}

/// Every square set over the free cells that passes the verifier.
pub fn brute_force_valid(b: &Board) -> BTreeSet<Vec<Cell>> {
    let free: Vec<Cell> = b
        .cells()
        .filter(|&c| b.kind(c) == CellKind::White)
        .collect();
    assert!(free.len() <= 20);
    let fixed: Vec<Cell> = b.predrawn().collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << free.len() {
        let mut squares = fixed.clone();
        squares.extend(
            (0..free.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| free[k]),
        );
        let s = Solution::from_squares(b, squares).unwrap();
        if verify(b, &s).is_valid() {
            out.insert(s.squares().collect());
        }
    }
    out
}

/// Random polyomino on a 10x10 field grown from one cell.
pub fn polyomino(rng: &mut impl Rng, size: usize) -> Vec<(usize, usize)> {
    let mut cells = vec![(5usize, 5usize)];
    while cells.len() < size {
        let &(r, c) = cells.choose(rng).unwrap();
        let (dr, dc) = [(0i32, 1i32), (1, 0), (0, -1), (-1, 0)][rng.gen_range(0..4)];
        let n = ((r as i32 + dr) as usize, (c as i32 + dc) as usize);
        if n.0 < 10 && n.1 < 10 && !cells.contains(&n) {
            cells.push(n);
        }
    }
    cells
}

fn normalize(cells: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let r0 = cells.iter().map(|c| c.0).min().unwrap_or(0);
    let c0 = cells.iter().map(|c| c.1).min().unwrap_or(0);
    let mut v: Vec<(i64, i64)> = cells.iter().map(|&(r, c)| (r - r0, c - c0)).collect();
    v.sort();
    v
}

/// Removal oracle: some cell of `next` can be dropped to leave a translate
/// of `prev`.
pub fn extends_by_removal(prev: &[(usize, usize)], next: &[(usize, usize)]) -> bool {
    let p: Vec<(i64, i64)> = prev.iter().map(|&(r, c)| (r as i64, c as i64)).collect();
    let target = normalize(&p);
    (0..next.len()).any(|i| {
        let rest: Vec<(i64, i64)> = next
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, &(r, c))| (r as i64, c as i64))
            .collect();
        normalize(&rest) == target
    })
}

fn run<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

pub fn prop_board_round_trip() -> Result<(), String> {
    run("board round trip", any::<u64>(), |seed| {
        let b = random_board(seed, 36);
        let text = serialize_board(&b);
        let back = parse_board(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(serialize_board(&back), text);
        Ok(())
    })
}

pub fn prop_solution_round_trip() -> Result<(), String> {
    run("solution round trip", any::<u64>(), |seed| {
        let b = random_board(seed, 36);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let squares: Vec<Cell> = b
            .cells()
            .filter(|&c| b.is_predrawn(c) || (!b.is_shaded(c) && rng.gen_bool(0.4)))
            .collect();
        let s = Solution::from_squares(&b, squares).unwrap();
        let text = serialize_solution(&b, &s);
        let back = parse_solution(&text, &b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(serialize_solution(&b, &back), text);
        Ok(())
    })
}

pub fn prop_blocks_partition() -> Result<(), String> {
    run("blocks partition", any::<u64>(), |seed| {
        let b = random_board(seed, 36);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb10c);
        let squares: Vec<Cell> = b
            .cells()
            .filter(|&c| b.is_predrawn(c) || (!b.is_shaded(c) && rng.gen_bool(0.5)))
            .collect();
        let s = Solution::from_squares(&b, squares).unwrap();
        let blocks = blocks_of(&b, &s);
        let mut seen = BTreeSet::new();
        for blk in &blocks {
            for &c in blk.cells() {
                prop_assert!(seen.insert(c), "cell {} in two blocks", c);
            }
            // connected
            let mut reach = vec![blk.cells()[0]];
            let mut k = 0;
            while k < reach.len() {
                let c = reach[k];
                k += 1;
                for &d in blk.cells() {
                    if c.is_adjacent(d) && !reach.contains(&d) {
                        reach.push(d);
                    }
                }
            }
            prop_assert_eq!(reach.len(), blk.len());
            // maximal
            for &c in blk.cells() {
                for d in s.squares() {
                    if c.is_adjacent(d) {
                        prop_assert!(blk.cells().contains(&d));
                    }
                }
            }
        }
        let all: BTreeSet<Cell> = s.squares().collect();
        prop_assert_eq!(seen, all);
        let anchors: Vec<Cell> = blocks.iter().map(|b| b.anchor()).collect();
        let mut sorted = anchors.clone();
        sorted.sort();
        prop_assert_eq!(anchors, sorted);
        Ok(())
    })
}

pub fn prop_shape_normalization() -> Result<(), String> {
    run(
        "shape normalization",
        (any::<u64>(), 1usize..=8, 0usize..20, 0usize..20),
        |(seed, size, dr, dc)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cells = polyomino(&mut rng, size);
            let base = Shape::from_cells(cells.iter().copied());
            let moved = Shape::from_cells(cells.iter().map(|&(r, c)| (r + dr, c + dc)));
            prop_assert_eq!(&base, &moved);
            // quarter turn: equal exactly when the normalized sets coincide
            let rot: Vec<(usize, usize)> = cells.iter().map(|&(r, c)| (c, 20 - r)).collect();
            let a: Vec<(i64, i64)> = cells.iter().map(|&(r, c)| (r as i64, c as i64)).collect();
            let b: Vec<(i64, i64)> = rot.iter().map(|&(r, c)| (r as i64, c as i64)).collect();
            let same = normalize(&a) == normalize(&b);
            prop_assert_eq!(Shape::from_cells(rot.iter().copied()) == base, same);
            prop_assert_eq!(base.len(), size);
            Ok(())
        },
    )
}

pub fn prop_extends_by_one() -> Result<(), String> {
    run(
        "extends_by_one vs removal",
        (any::<u64>(), 2usize..=8, any::<bool>()),
        |(seed, size, related)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let next = polyomino(&mut rng, size);
            let prev: Vec<(usize, usize)> = if related {
                // drop one cell and shift; may disconnect, which the oracle handles
                let skip = rng.gen_range(0..size);
                let (dr, dc) = (rng.gen_range(0..3), rng.gen_range(0..3));
                next.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &(r, c))| (r + dr, c + dc))
                    .collect()
            } else {
                let k = rng.gen_range(1..=size);
                polyomino(&mut rng, k)
            };
            let got = extends_by_one(
                &Shape::from_cells(prev.iter().copied()),
                &Shape::from_cells(next.iter().copied()),
            );
            let want = prev.len() + 1 == next.len() && extends_by_removal(&prev, &next);
            prop_assert_eq!(got, want);
            Ok(())
        },
    )
}

pub fn prop_pruning_admissible() -> Result<(), String> {
    run("pruning admissibility", any::<u64>(), |seed| {
        let b = random_board(seed, 12);
        let oracle = oracle_count(&b, 24).unwrap();
        for mask in 0..8u8 {
            let cfg = SolveConfig {
                pruning: Pruning {
                    blocks: mask & 1 != 0,
                    progression: mask & 2 != 0,
                    capacity: mask & 4 != 0,
                },
                ..SolveConfig::default()
            };
            let out = count_solutions(&b, &cfg);
            prop_assert_eq!(out.count, Some(oracle), "pruning mask {}", mask);
            if let Some(w) = &out.witness {
                prop_assert!(verify(&b, w).is_valid());
            }
        }
        let rm = SolveConfig {
            cell_order: CellOrder::RowMajor,
            ..SolveConfig::default()
        };
        prop_assert_eq!(count_solutions(&b, &rm).count, Some(oracle));
        Ok(())
    })
}

pub fn prop_verify_matches_brute_force() -> Result<(), String> {
    run("verify vs brute force", any::<u64>(), |seed| {
        let b = random_board(seed, 12);
        prop_assume!(b.white_count() <= 20);
        let brute = brute_force_valid(&b);
        let solver: BTreeSet<Vec<Cell>> = enumerate_solutions(&b, &SolveConfig::default(), None)
            .iter()
            .map(|s| s.squares().collect())
            .collect();
        prop_assert_eq!(&solver, &brute);
        prop_assert_eq!(oracle_count(&b, 24).unwrap(), brute.len() as u64);
        Ok(())
    })
}

pub fn prop_solver_deterministic() -> Result<(), String> {
    run("solver determinism", any::<u64>(), |seed| {
        let b = random_board(seed, 18);
        let cfg = SolveConfig::default();
        prop_assert_eq!(solve(&b, &cfg), solve(&b, &cfg));
        prop_assert_eq!(count_solutions(&b, &cfg), count_solutions(&b, &cfg));
        Ok(())
    })
}
