use std::collections::HashMap;

use crate::board::{Arrow, Board, Cell};

use super::tiles::{template, Glyph, Point, TemplateKind};

/// Who a white cell belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    /// Index into the placement list.
    Gadget(usize),
    /// Routed corridor cells of one wire.
    Wire(usize),
}

/// A stamped tile, in canvas coordinates.
#[derive(Clone, Debug)]
pub(crate) struct Placed {
    pub id: usize,
    pub inputs: Vec<Vec<Point>>,
    pub outputs: Vec<Vec<Point>>,
    pub internal: Vec<Vec<Point>>,
}

/// Unbounded y-up drawing surface.
#[derive(Default)]
pub(crate) struct Canvas {
    cells: HashMap<Point, (Glyph, Owner)>,
    arrows: Vec<Vec<Point>>,
    pub tiles: Vec<(TemplateKind, Point)>,
    wires: usize,
}

/// Maps canvas points to board cells after [`Canvas::finish`].
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frame {
    pub x0: i32,
    pub y_top: i32,
}

impl Frame {
    pub fn cell(&self, p: Point) -> Cell {
        Cell::new(
            (self.y_top - p.1) as usize + 1,
            (p.0 - self.x0) as usize + 1,
        )
    }
}

impl Canvas {
    pub fn put(&mut self, p: Point, g: Glyph, owner: Owner) {
        let old = self.cells.insert(p, (g, owner));
        assert!(old.is_none(), "layout overlap at {p:?}");
    }

    pub fn place(&mut self, kind: TemplateKind, origin: Point) -> Placed {
        let t = template(kind);
        let id = self.tiles.len();
        self.tiles.push((kind, origin));
        for ((x, y), g) in t.cells() {
            self.put((origin.0 + x, origin.1 + y), g, Owner::Gadget(id));
        }
        let shift = |a: &Vec<Point>| -> Vec<Point> {
            a.iter()
                .map(|&(x, y)| (origin.0 + x, origin.1 + y))
                .collect()
        };
        Placed {
            id,
            inputs: t.inputs.iter().map(|&a| shift(&t.arrows[a])).collect(),
            outputs: t.outputs.iter().map(|&a| shift(&t.arrows[a])).collect(),
            internal: (0..t.arrows.len())
                .filter(|&a| !t.is_port(a))
                .map(|a| shift(&t.arrows[a]))
                .collect(),
        }
    }

    pub fn new_wire(&mut self) -> usize {
        self.wires += 1;
        self.wires - 1
    }

    /// Appends corridor cells to `path` until it reaches `to`, one axis at a
    /// time, vertical first.
    pub fn extend(&mut self, wire: usize, path: &mut Vec<Point>, to: Point) {
        let mut p = *path.last().unwrap();
        while p != to {
            if p.1 != to.1 {
                p.1 += (to.1 - p.1).signum();
            } else {
                p.0 += (to.0 - p.0).signum();
            }
            self.put(p, Glyph::White, Owner::Wire(wire));
            path.push(p);
        }
    }

    pub fn arrow(&mut self, path: Vec<Point>) {
        self.arrows.push(path);
    }

    /// Assembles the board. Arrows are listed by start cell, bottom row
    /// first, so the list follows signal flow.
    pub fn finish(mut self) -> (Board, Frame, Vec<Option<Owner>>) {
        self.arrows.sort_by_key(|a| (a[0].1, a[0].0));
        if self.cells.is_empty() {
            let frame = Frame { x0: 0, y_top: 0 };
            let board = Board::new(1, 1, vec![Cell::new(1, 1)], vec![], vec![]).unwrap();
            return (board, frame, vec![None]);
        }
        let xs = self.cells.keys().map(|p| p.0);
        let (x_min, x_max) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let ys = self.cells.keys().map(|p| p.1);
        let (y_min, y_max) = (ys.clone().min().unwrap(), ys.max().unwrap());
        let frame = Frame {
            x0: x_min - 1,
            y_top: y_max + 1,
        };
        let rows = (y_max - y_min + 3) as usize;
        let cols = (x_max - x_min + 3) as usize;
        let mut owners = vec![None; rows * cols];
        let mut shaded = Vec::new();
        let mut predrawn = Vec::new();
        for r in 1..=rows {
            for c in 1..=cols {
                let p = (frame.x0 + c as i32 - 1, frame.y_top + 1 - r as i32);
                match self.cells.get(&p) {
                    None => shaded.push(Cell::new(r, c)),
                    Some(&(g, owner)) => {
                        owners[(r - 1) * cols + c - 1] = Some(owner);
                        if g == Glyph::Predrawn {
                            predrawn.push(Cell::new(r, c));
                        }
                    }
                }
            }
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(a.iter().map(|&p| frame.cell(p)).collect()).expect("routed arrow"))
            .collect();
        let board = Board::new(rows, cols, shaded, predrawn, arrows).expect("assembled board");
        (board, frame, owners)
    }
}
