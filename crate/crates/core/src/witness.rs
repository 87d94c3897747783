//! Monochromatic path-power witnesses and their independent checker.

use std::collections::HashSet;

use crate::coloring::{Color, TwoColoring};
use crate::graph::Graph;

/// An ordered vertex sequence claimed to span a monochromatic copy of the
/// `power`th power of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub color: Color,
    pub power: usize,
    pub vertices: Vec<usize>,
}

impl Witness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn recolored(mut self, color: Color) -> Self {
        self.color = color;
        self
    }
}

/// True iff the witness vertices are distinct vertices of `g` and every pair
/// at sequence distance `1..=power` is an edge of `g` carrying `w.color`.
///
/// Deliberately shares no code with the solver; only graph lookups are used.
pub fn verify_witness(g: &Graph, coloring: &TwoColoring<'_>, w: &Witness) -> bool {
    if !std::ptr::eq(coloring.host(), g) && coloring.host() != g {
        return false;
    }
    if w.power == 0 {
        return false;
    }
    let n = g.order();
    let mut seen = HashSet::with_capacity(w.vertices.len());
    for &v in &w.vertices {
        if v >= n || !seen.insert(v) {
            return false;
        }
    }
    let m = w.vertices.len();
    for i in 0..m {
        for j in i + 1..m.min(i + w.power + 1) {
            let (x, y) = (w.vertices[i], w.vertices[j]);
            match g.edge_id(x, y) {
                Some(id) if coloring.color_of_edge(id) == w.color => {}
                _ => return false,
            }
        }
    }
    true
}
