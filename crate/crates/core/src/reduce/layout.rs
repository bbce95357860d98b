//! Places gadgets in horizontal layers and routes each wire as a single
//! fenced arrow.
//!
//! Every literal occurrence owns a column slot, `6 * slot` on the canvas.
//! Layers from the bottom: variable sources, split chains, negations and idle
//! sinks, rounds of odd-even transposition made of crossovers, and clauses.
//! Between layers, wires jog sideways in bands; every moving wire gets its
//! own jog row.

use std::collections::BTreeMap;

use crate::board::{Board, Cell};

use super::canvas::{Canvas, Frame, Owner};
use super::cnf::{Cnf, Literal};
use super::tiles::{template, Point, TemplateKind};

const PITCH: i32 = 6;

fn col(slot: usize) -> i32 {
    PITCH * slot as i32
}

/// One stamped gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub kind: TemplateKind,
    /// Board cell of the tile's top-left corner.
    pub origin: Cell,
    pub rows: usize,
    pub cols: usize,
}

/// Path of one literal occurrence from the gadget that first carries it
/// alone to its clause port, as board points `(row, col)`. Consecutive
/// points are joined by straight segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    pub literal: Literal,
    /// 0-based clause index.
    pub clause: usize,
    /// 0-based port within the clause.
    pub port: usize,
    pub polyline: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Route indices, the one entering on the left first.
    pub routes: (usize, usize),
    /// Placement index of the crossover.
    pub gadget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayoutPlan {
    pub rows: usize,
    pub cols: usize,
    pub placements: Vec<Placement>,
    /// Indexed by occurrence `3 * clause + port`.
    pub routes: Vec<Route>,
    pub crossings: Vec<Crossing>,
}

/// Everything the reducer needs from one layout pass.
pub(crate) struct Built {
    pub plan: LayoutPlan,
    pub board: Board,
    pub owners: Vec<Option<Owner>>,
    /// Per variable, the two base cells of its source.
    pub probes: Vec<[Cell; 2]>,
}

struct Wire {
    id: usize,
    path: Vec<Point>,
    occurrence: Option<usize>,
}

pub(crate) struct Job {
    pub kind: TemplateKind,
    /// Column of the tile's left edge.
    pub x: i32,
    /// Slots consumed, in input port order.
    pub inputs: Vec<usize>,
    /// Slots produced, in output port order.
    pub outputs: Vec<usize>,
    /// Occurrence carried by each output, when it is no longer shared.
    pub carry: Vec<Option<usize>>,
}

impl Job {
    pub fn new(kind: TemplateKind, x: i32, inputs: Vec<usize>, outputs: Vec<usize>) -> Job {
        let carry = vec![None; outputs.len()];
        Job {
            kind,
            x,
            inputs,
            outputs,
            carry,
        }
    }
}

pub(crate) struct Builder {
    pub canvas: Canvas,
    open: BTreeMap<usize, Wire>,
    /// Top row used so far.
    y: i32,
    /// Move idle wires back to their slot column before each layer.
    normalize: bool,
    routes: Vec<Vec<Point>>,
    crossings: Vec<(usize, usize, usize)>,
}

impl Builder {
    pub fn new(routes: usize, normalize: bool) -> Builder {
        Builder {
            canvas: Canvas::default(),
            open: BTreeMap::new(),
            y: -2,
            normalize,
            routes: vec![Vec::new(); routes],
            crossings: Vec::new(),
        }
    }

    /// Moves wires sideways so each sits at `want[slot]`, or at its slot
    /// column when absent. Right movers jog rightmost first, then left
    /// movers leftmost first.
    fn band(&mut self, want: &BTreeMap<usize, i32>) {
        let target = |slot: usize| want.get(&slot).copied().unwrap_or(col(slot));
        let mut right = Vec::new();
        let mut left = Vec::new();
        for (&slot, w) in &self.open {
            let x = w.path.last().unwrap().0;
            let t = target(slot);
            if t > x {
                right.push((x, slot));
            } else if t < x {
                left.push((x, slot));
            }
        }
        if right.is_empty() && left.is_empty() {
            return;
        }
        right.sort_by(|a, b| b.cmp(a));
        left.sort();
        let movers: Vec<usize> = right.into_iter().chain(left).map(|(_, s)| s).collect();
        for (k, &slot) in movers.iter().enumerate() {
            let row = self.y + 2 * (k as i32 + 1);
            let w = self.open.get_mut(&slot).unwrap();
            let x = w.path.last().unwrap().0;
            self.canvas.extend(w.id, &mut w.path, (x, row));
            self.canvas.extend(w.id, &mut w.path, (target(slot), row));
        }
        self.y += 2 * movers.len() as i32;
        self.raise(self.y);
    }

    pub fn is_closed(&self) -> bool {
        self.open.is_empty()
    }

    /// Extends every open wire straight up to row `y`.
    fn raise(&mut self, y: i32) {
        for w in self.open.values_mut() {
            let x = w.path.last().unwrap().0;
            self.canvas.extend(w.id, &mut w.path, (x, y));
        }
    }

    pub fn layer(&mut self, jobs: Vec<Job>) {
        if jobs.is_empty() {
            return;
        }
        if self.normalize {
            self.band(&BTreeMap::new());
        }
        let mut want = BTreeMap::new();
        for job in &jobs {
            let t = template(job.kind);
            for (k, &slot) in job.inputs.iter().enumerate() {
                want.insert(slot, job.x + t.input_x(k));
            }
        }
        self.band(&want);
        let y_lo = self.y + 2;
        self.raise(y_lo - 1);
        let mut top = y_lo;
        for job in jobs {
            let placed = self.canvas.place(job.kind, (job.x, y_lo));
            top = top.max(y_lo + template(job.kind).height - 1);
            let mut carried = Vec::new();
            for (k, slot) in job.inputs.iter().enumerate() {
                let mut w = self.open.remove(slot).expect("input wire");
                w.path.extend(&placed.inputs[k]);
                if let Some(q) = w.occurrence {
                    self.routes[q].extend(&w.path);
                }
                carried.push(w.occurrence);
                self.canvas.arrow(w.path);
            }
            for a in placed.internal {
                self.canvas.arrow(a);
            }
            if job.kind == TemplateKind::Crossover {
                if let [Some(a), Some(b)] = carried[..] {
                    self.crossings.push((a, b, placed.id));
                }
            }
            for (k, (slot, path)) in job.outputs.iter().zip(placed.outputs).enumerate() {
                let id = self.canvas.new_wire();
                let occurrence = job.carry[k];
                let old = self.open.insert(
                    *slot,
                    Wire {
                        id,
                        path,
                        occurrence,
                    },
                );
                assert!(old.is_none(), "slot {slot} already holds a wire");
            }
        }
        self.raise(top);
        self.y = top;
    }
}

/// Lays out the reduction of `f` and assembles the board.
pub(crate) fn build(f: &Cnf) -> Built {
    let n = f.num_vars();
    let literals: Vec<Literal> = f.clauses().iter().flatten().copied().collect();
    let total = literals.len();

    // Occurrences grouped by variable give the starting slot order.
    let mut seq: Vec<usize> = Vec::with_capacity(total);
    let mut first = vec![0usize; n + 1];
    let mut count = vec![0usize; n + 1];
    for v in 1..=n {
        first[v] = seq.len();
        for (q, lit) in literals.iter().enumerate() {
            if lit.var == v {
                seq.push(q);
            }
        }
        count[v] = seq.len() - first[v];
    }
    let mut idle = total;
    for v in 1..=n {
        if count[v] == 0 {
            first[v] = idle;
            idle += 1;
        }
    }

    let mut b = Builder::new(total, true);

    // Variable sources are the first n placements.
    b.layer(
        (1..=n)
            .map(|v| Job {
                kind: TemplateKind::Variable,
                x: col(first[v]) - 1,
                inputs: vec![],
                outputs: vec![first[v]],
                carry: vec![(count[v] == 1).then(|| seq[first[v]])],
            })
            .collect(),
    );

    let depth = count.iter().copied().max().unwrap_or(0);
    for d in 1..depth {
        let jobs = (1..=n)
            .filter(|&v| count[v] > d)
            .map(|v| {
                let at = first[v] + d - 1;
                Job {
                    kind: TemplateKind::Split,
                    x: col(at) - 2,
                    inputs: vec![at],
                    outputs: vec![at, at + 1],
                    carry: vec![Some(seq[at]), (d + 1 == count[v]).then(|| seq[at + 1])],
                }
            })
            .collect();
        b.layer(jobs);
    }

    let mut jobs: Vec<Job> = (0..total)
        .filter(|&slot| !literals[seq[slot]].positive)
        .map(|slot| Job {
            kind: TemplateKind::Negation,
            x: col(slot) - 1,
            inputs: vec![slot],
            outputs: vec![slot],
            carry: vec![Some(seq[slot])],
        })
        .collect();
    jobs.extend((1..=n).filter(|&v| count[v] == 0).map(|v| Job {
        kind: TemplateKind::IdleSink,
        x: col(first[v]) - 1,
        inputs: vec![first[v]],
        outputs: vec![],
        carry: vec![],
    }));
    b.layer(jobs);

    for round in 0.. {
        if seq.windows(2).all(|w| w[0] < w[1]) {
            break;
        }
        let mut jobs = Vec::new();
        let mut i = round % 2;
        while i + 1 < total {
            if seq[i] > seq[i + 1] {
                jobs.push(Job {
                    kind: TemplateKind::Crossover,
                    x: col(i) + 1,
                    inputs: vec![i, i + 1],
                    outputs: vec![i, i + 1],
                    carry: vec![Some(seq[i + 1]), Some(seq[i])],
                });
                seq.swap(i, i + 1);
            }
            i += 2;
        }
        b.layer(jobs);
    }

    b.layer(
        (0..f.clauses().len())
            .map(|j| Job {
                kind: TemplateKind::Clause,
                x: col(3 * j) - 1,
                inputs: vec![3 * j, 3 * j + 1, 3 * j + 2],
                outputs: vec![],
                carry: vec![],
            })
            .collect(),
    );
    assert!(b.is_closed(), "dangling wires");

    let Builder {
        canvas,
        routes,
        crossings,
        ..
    } = b;
    let tiles = canvas.tiles.clone();
    let (board, frame, owners) = canvas.finish();
    let placements = tiles
        .iter()
        .map(|&(kind, o)| {
            let t = template(kind);
            Placement {
                kind,
                origin: frame.cell((o.0, o.1 + t.height - 1)),
                rows: t.height as usize,
                cols: t.width as usize,
            }
        })
        .collect();
    let probes = tiles[..n]
        .iter()
        .map(|&(_, o)| {
            [
                frame.cell((o.0 + 1, o.1 + 1)),
                frame.cell((o.0 + 1, o.1 + 2)),
            ]
        })
        .collect();
    let routes = routes
        .into_iter()
        .enumerate()
        .map(|(q, pts)| Route {
            literal: literals[q],
            clause: q / 3,
            port: q % 3,
            polyline: corners(&pts, frame),
        })
        .collect();
    let crossings = crossings
        .into_iter()
        .map(|(a, b, gadget)| Crossing {
            routes: (a, b),
            gadget,
        })
        .collect();
    Built {
        plan: LayoutPlan {
            rows: board.rows(),
            cols: board.cols(),
            placements,
            routes,
            crossings,
        },
        board,
        owners,
        probes,
    }
}

/// Drops points that lie on a straight run between their neighbours.
fn corners(pts: &[Point], frame: Frame) -> Vec<(i64, i64)> {
    let pts: Vec<(i64, i64)> = pts
        .iter()
        .map(|&p| {
            let c = frame.cell(p);
            (c.row as i64, c.col as i64)
        })
        .collect();
    let mut out: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        if out.len() >= 2 {
            let a = out[out.len() - 2];
            let b = out[out.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - b.1) - (b.1 - a.1) * (p.0 - b.0);
            let forward = (b.0 - a.0) * (p.0 - b.0) + (b.1 - a.1) * (p.1 - b.1) >= 0;
            if cross == 0 && forward {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

/// Counts crossing points between distinct routes by checking every pair of
/// segments. Independent of the planner's own bookkeeping.
pub fn count_route_crossings(plan: &LayoutPlan) -> usize {
    type Seg = ((i64, i64), (i64, i64));
    let segs: Vec<Vec<Seg>> = plan
        .routes
        .iter()
        .map(|r| r.polyline.windows(2).map(|w| (w[0], w[1])).collect())
        .collect();
    let mut total = 0;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let mut points = Vec::new();
            for &s in &segs[i] {
                for &t in &segs[j] {
                    points.extend(meet(s, t));
                }
            }
            points.sort();
            points.dedup();
            total += points.len();
        }
    }
    total
}

/// Lattice points shared by two axis-parallel segments.
fn meet(s: ((i64, i64), (i64, i64)), t: ((i64, i64), (i64, i64))) -> Vec<(i64, i64)> {
    debug_assert!(s.0 .0 == s.1 .0 || s.0 .1 == s.1 .1);
    debug_assert!(t.0 .0 == t.1 .0 || t.0 .1 == t.1 .1);
    let span = |a: i64, b: i64| (a.min(b), a.max(b));
    let (sr, sc) = (span(s.0 .0, s.1 .0), span(s.0 .1, s.1 .1));
    let (tr, tc) = (span(t.0 .0, t.1 .0), span(t.0 .1, t.1 .1));
    let r = (sr.0.max(tr.0), sr.1.min(tr.1));
    let c = (sc.0.max(tc.0), sc.1.min(tc.1));
    let mut out = Vec::new();
    for row in r.0..=r.1 {
        for col in c.0..=c.1 {
            out.push((row, col));
        }
    }
    out
}
