//! Red/blue edge colorings.
//!
//! [`TwoColoring`] colors the edges of a specific sparse [`Graph`].
//! [`CompleteColoring`] is the dense form used on complete graphs (clusters,
//! completed auxiliary colorings) and [`BipartiteColoring`] holds the cross
//! edges between two vertex groups.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    /// Single-letter code used by the text formats.
    pub fn code(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn parse(token: &str) -> Option<Color> {
        match token {
            "R" | "r" | "red" | "Red" => Some(Color::Red),
            "B" | "b" | "blue" | "Blue" => Some(Color::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the host has {expected} edges")]
    NotTotal { expected: usize, got: usize },
    #[error("vertex set {{{0:?}}} does not induce a complete graph")]
    NotComplete(Vec<usize>),
}

/// A total red/blue assignment on the edge set of `host`.
#[derive(Clone, Debug)]
pub struct TwoColoring<'g> {
    host: &'g Graph,
    colors: Vec<Color>,
}

impl<'g> TwoColoring<'g> {
    /// `colors[id]` is the color of edge `id` of `host`.
    pub fn new(host: &'g Graph, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if colors.len() != host.edge_count() {
            return Err(ColoringError::NotTotal {
                expected: host.edge_count(),
                got: colors.len(),
            });
        }
        Ok(Self { host, colors })
    }

    pub fn uniform(host: &'g Graph, color: Color) -> Self {
        Self {
            host,
            colors: vec![color; host.edge_count()],
        }
    }

    pub fn from_fn(host: &'g Graph, mut f: impl FnMut(usize, usize) -> Color) -> Self {
        let colors = host.edges().iter().map(|&(u, v)| f(u, v)).collect();
        Self { host, colors }
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    /// Color of `{u, v}`, or `None` when it is not an edge of the host.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Option<Color> {
        self.host.edge_id(u, v).map(|id| self.colors[id])
    }

    #[inline]
    pub fn color_of_edge(&self, id: usize) -> Color {
        self.colors[id]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    /// The same coloring with red and blue exchanged.
    pub fn swapped(&self) -> TwoColoring<'g> {
        Self {
            host: self.host,
            colors: self.colors.iter().map(|c| c.other()).collect(),
        }
    }

    /// Restriction to a clique of the host, as a dense coloring whose vertex
    /// `i` is `vertices[i]`.
    pub fn restrict_to_clique(&self, vertices: &[usize]) -> Result<CompleteColoring, ColoringError> {
        let m = vertices.len();
        let mut out = CompleteColoring::uniform(m, Color::Red);
        for i in 0..m {
            for j in i + 1..m {
                match self.color(vertices[i], vertices[j]) {
                    Some(c) => out.set(i, j, c),
                    None => return Err(ColoringError::NotComplete(vertices.to_vec())),
                }
            }
        }
        Ok(out)
    }

    /// Cross edges between `left` and `right`; non-edges count as red.
    pub fn restrict_to_bipartite(&self, left: &[usize], right: &[usize]) -> BipartiteColoring {
        BipartiteColoring::from_fn(left.len(), right.len(), |i, j| {
            self.color(left[i], right[j]) == Some(Color::Blue)
        })
    }
}

/// Dense coloring of the complete graph on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteColoring {
    order: usize,
    blue: Vec<BitSet>,
}

impl CompleteColoring {
    pub fn uniform(order: usize, color: Color) -> Self {
        let blue = (0..order)
            .map(|v| {
                let mut row = match color {
                    Color::Blue => BitSet::full(order),
                    Color::Red => BitSet::new(order),
                };
                if color == Color::Blue {
                    row.remove(v);
                }
                row
            })
            .collect();
        Self { order, blue }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Color) -> Self {
        let mut out = Self::uniform(order, Color::Red);
        for u in 0..order {
            for v in u + 1..order {
                out.set(u, v, f(u, v));
            }
        }
        out
    }

    /// Dense form of a coloring of an arbitrary graph, with every non-edge
    /// given the color `missing`.
    pub fn completed(c: &TwoColoring<'_>, missing: Color) -> Self {
        let mut out = Self::uniform(c.host().order(), missing);
        for (id, &(u, v)) in c.host().edges().iter().enumerate() {
            out.set(u, v, c.color_of_edge(id));
        }
        out
    }

    /// Dense form of a coloring whose host must be complete.
    pub fn from_two_coloring(c: &TwoColoring<'_>) -> Result<Self, ColoringError> {
        let n = c.host().order();
        if c.host().edge_count() != n * n.saturating_sub(1) / 2 {
            return Err(ColoringError::NotComplete((0..n).collect()));
        }
        Ok(Self::completed(c, Color::Red))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, color: Color) {
        debug_assert!(u != v);
        match color {
            Color::Blue => {
                self.blue[u].insert(v);
                self.blue[v].insert(u);
            }
            Color::Red => {
                self.blue[u].remove(v);
                self.blue[v].remove(u);
            }
        }
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v);
        if self.blue[u].contains(v) {
            Color::Blue
        } else {
            Color::Red
        }
    }

    pub fn is_blue(&self, u: usize, v: usize) -> bool {
        self.blue[u].contains(v)
    }

    pub fn blue_neighbors(&self, v: usize) -> &BitSet {
        &self.blue[v]
    }

    /// Neighbors of `v` in the given color class.
    pub fn neighbors_in(&self, v: usize, color: Color) -> BitSet {
        match color {
            Color::Blue => self.blue[v].clone(),
            Color::Red => {
                let mut red = BitSet::full(self.order);
                red.remove(v);
                for w in self.blue[v].iter() {
                    red.remove(w);
                }
                red
            }
        }
    }

    pub fn swapped(&self) -> Self {
        Self::from_fn(self.order, |u, v| self.color(u, v).other())
    }

    pub fn count(&self, color: Color) -> usize {
        let blue = self.blue.iter().map(BitSet::count).sum::<usize>() / 2;
        match color {
            Color::Blue => blue,
            Color::Red => self.order * self.order.saturating_sub(1) / 2 - blue,
        }
    }
}

/// Blue relation between `left` and `right` vertex groups; absent pairs are red.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteColoring {
    left: usize,
    right: usize,
    blue: Vec<BitSet>,
}

impl BipartiteColoring {
    pub fn from_fn(left: usize, right: usize, mut is_blue: impl FnMut(usize, usize) -> bool) -> Self {
        let blue = (0..left)
            .map(|i| BitSet::from_indices(right, (0..right).filter(|&j| is_blue(i, j))))
            .collect();
        Self { left, right, blue }
    }

    /// Interprets a graph on `0..2t` as a balanced bipartite graph with
    /// sides `0..t` and `t..2t`; edges are blue. Returns `None` when the
    /// graph has odd order or an edge inside a side.
    pub fn from_balanced_graph(g: &Graph) -> Option<Self> {
        if !g.order().is_multiple_of(2) {
            return None;
        }
        let t = g.order() / 2;
        if g.edges().iter().any(|&(u, v)| (u < t) == (v < t)) {
            return None;
        }
        Some(Self::from_fn(t, t, |i, j| g.has_edge(i, t + j)))
    }

    pub fn left_len(&self) -> usize {
        self.left
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    #[inline]
    pub fn is_blue(&self, i: usize, j: usize) -> bool {
        self.blue[i].contains(j)
    }

    pub fn blue_row(&self, i: usize) -> &BitSet {
        &self.blue[i]
    }

    pub fn blue_count(&self) -> usize {
        self.blue.iter().map(BitSet::count).sum()
    }

    pub fn transposed(&self) -> Self {
        Self::from_fn(self.right, self.left, |j, i| self.is_blue(i, j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coloring_must_be_total() {
        let g = Graph::complete(3);
        assert_eq!(
            TwoColoring::new(&g, vec![Color::Red]).unwrap_err(),
            ColoringError::NotTotal { expected: 3, got: 1 }
        );
    }

    #[test]
    fn lookup_and_swap() {
        let g = Graph::path(3);
        let c = TwoColoring::new(&g, vec![Color::Red, Color::Blue]).unwrap();
        assert_eq!(c.color(1, 0), Some(Color::Red));
        assert_eq!(c.color(2, 1), Some(Color::Blue));
        assert_eq!(c.color(0, 2), None);
        let s = c.swapped();
        assert_eq!(s.color(0, 1), Some(Color::Blue));
        assert_eq!(s.count(Color::Red), 1);
    }

    #[test]
    fn completion_fills_missing_pairs() {
        let g = Graph::path(3);
        let c = TwoColoring::uniform(&g, Color::Blue);
        let dense = CompleteColoring::completed(&c, Color::Red);
        assert_eq!(dense.color(0, 1), Color::Blue);
        assert_eq!(dense.color(0, 2), Color::Red);
        assert_eq!(dense.count(Color::Blue), 2);
        assert!(CompleteColoring::from_two_coloring(&c).is_err());
    }

    #[test]
    fn clique_restriction_requires_clique() {
        let g = Graph::path(3);
        let c = TwoColoring::uniform(&g, Color::Blue);
        assert!(c.restrict_to_clique(&[0, 1, 2]).is_err());
        let dense = c.restrict_to_clique(&[2, 1]).unwrap();
        assert_eq!(dense.color(0, 1), Color::Blue);
    }

    #[test]
    fn red_neighborhood_is_complement() {
        let c = CompleteColoring::from_fn(4, |u, v| if u + v == 3 { Color::Blue } else { Color::Red });
        let red0: Vec<_> = c.neighbors_in(0, Color::Red).iter().collect();
        assert_eq!(red0, vec![1, 2]);
    }
}
