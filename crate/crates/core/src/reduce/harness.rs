//! Small test boards that exercise one gadget between drivers and sinks.
//!
//! A [`Driver::Variable`] source admits both values, so a harness counts the
//! gadget's behaviours; constant drivers pin the inputs.

use crate::board::Board;

use super::canvas::{Canvas, Owner};
use super::layout::{Builder, Job};
use super::tiles::{template, Glyph, TemplateKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Driver {
    Variable,
    True,
    False,
}

impl Driver {
    fn kind(self) -> TemplateKind {
        match self {
            Driver::Variable => TemplateKind::Variable,
            Driver::True => TemplateKind::ConstTrue,
            Driver::False => TemplateKind::ConstFalse,
        }
    }
}

fn finish(b: Builder) -> Board {
    assert!(b.is_closed(), "harness leaves a wire open");
    b.canvas.finish().0
}

fn single(driver: Driver, gadget: TemplateKind) -> Board {
    let mut b = Builder::new(0, false);
    b.layer(vec![Job::new(driver.kind(), 0, vec![], vec![0])]);
    b.layer(vec![Job::new(gadget, 0, vec![0], vec![0])]);
    b.layer(vec![Job::new(TemplateKind::Terminal, 0, vec![0], vec![])]);
    finish(b)
}

/// The full variable tile, closed by a junction into a terminal.
pub fn variable() -> Board {
    let mut c = Canvas::default();
    let tile = c.place(TemplateKind::VariableTile, (0, 0));
    for a in tile.internal {
        c.arrow(a);
    }
    let top = template(TemplateKind::VariableTile).height;
    let wire = c.new_wire();
    c.put((1, top), Glyph::Predrawn, Owner::Wire(wire));
    c.put((1, top + 1), Glyph::White, Owner::Wire(wire));
    let sink = c.place(TemplateKind::Terminal, (0, top + 2));
    let mut path = vec![(1, top), (1, top + 1)];
    path.extend(&sink.inputs[0]);
    c.arrow(path);
    c.finish().0
}

/// Driver, negation, terminal.
pub fn negation(driver: Driver) -> Board {
    single(driver, TemplateKind::Negation)
}

/// Driver, split, a terminal on each output.
pub fn split(driver: Driver) -> Board {
    let mut b = Builder::new(0, false);
    b.layer(vec![Job::new(driver.kind(), 1, vec![], vec![0])]);
    b.layer(vec![Job::new(TemplateKind::Split, 0, vec![0], vec![0, 1])]);
    b.layer(vec![
        Job::new(TemplateKind::Terminal, 0, vec![0], vec![]),
        Job::new(TemplateKind::Terminal, 2, vec![1], vec![]),
    ]);
    finish(b)
}

/// Two drivers into the crossover, a terminal on each output.
pub fn crossover(x: Driver, y: Driver) -> Board {
    let mut b = Builder::new(0, false);
    b.layer(vec![
        Job::new(x.kind(), 2, vec![], vec![0]),
        Job::new(y.kind(), 4, vec![], vec![1]),
    ]);
    b.layer(vec![Job::new(
        TemplateKind::Crossover,
        0,
        vec![0, 1],
        vec![0, 1],
    )]);
    b.layer(vec![
        Job::new(TemplateKind::Terminal, 4, vec![0], vec![]),
        Job::new(TemplateKind::Terminal, 6, vec![1], vec![]),
    ]);
    finish(b)
}

/// Three drivers into the clause tile.
pub fn clause(inputs: [Driver; 3]) -> Board {
    let mut b = Builder::new(0, false);
    b.layer(
        inputs
            .iter()
            .enumerate()
            .map(|(k, d)| Job::new(d.kind(), 2 * k as i32, vec![], vec![k]))
            .collect(),
    );
    b.layer(vec![Job::new(
        TemplateKind::Clause,
        0,
        vec![0, 1, 2],
        vec![],
    )]);
    finish(b)
}
