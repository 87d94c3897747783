//! Monochromatic cliques in two-colored complete graphs.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::coloring::{Color, ColoringError, CompleteColoring, TwoColoring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RamseyError {
    #[error("r(K_{0}) is not known exactly; supply a cluster size explicitly")]
    Unknown(usize),
}

/// Diagonal Ramsey numbers `r(K_t)`: exact for `t <= 4`, caller-supplied above.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RamseyTable {
    overrides: BTreeMap<usize, usize>,
}

impl RamseyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn exact(t: usize) -> Option<usize> {
        match t {
            1 => Some(1),
            2 => Some(2),
            3 => Some(6),
            4 => Some(18),
            _ => None,
        }
    }

    pub fn with_override(mut self, t: usize, value: usize) -> Self {
        self.overrides.insert(t, value);
        self
    }

    pub fn lookup(&self, t: usize) -> Result<usize, RamseyError> {
        Self::exact(t)
            .or_else(|| self.overrides.get(&t).copied())
            .ok_or(RamseyError::Unknown(t))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoClique {
    pub vertices: Vec<usize>,
    pub color: Color,
}

/// Chosen monochromatic clique `B(v)` for every base vertex `v`, with
/// vertices given as blown-up ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoCliqueAssignment {
    pub cliques: Vec<MonoClique>,
}

impl MonoCliqueAssignment {
    pub fn clique(&self, base: usize) -> &MonoClique {
        &self.cliques[base]
    }

    /// Base vertices whose clique has the given color, ascending.
    pub fn with_color(&self, color: Color) -> Vec<usize> {
        (0..self.cliques.len()).filter(|&v| self.cliques[v].color == color).collect()
    }

    /// Every clique edge carries the clique's color under `coloring`.
    pub fn holds(&self, coloring: &TwoColoring<'_>) -> bool {
        self.cliques.iter().all(|q| {
            q.vertices.iter().enumerate().all(|(i, &u)| {
                q.vertices[i + 1..].iter().all(|&v| coloring.color(u, v) == Some(q.color))
            })
        })
    }

    pub fn swapped(&self) -> Self {
        Self {
            cliques: self
                .cliques
                .iter()
                .map(|q| MonoClique {
                    vertices: q.vertices.clone(),
                    color: q.color.other(),
                })
                .collect(),
        }
    }
}

/// Lexicographically least `t`-clique in the `color` class, or `None`.
pub fn find_clique_of_color(c: &CompleteColoring, color: Color, t: usize) -> Option<Vec<usize>> {
    let n = c.order();
    if t > n {
        return None;
    }
    if t == 0 {
        return Some(Vec::new());
    }
    let neighborhoods: Vec<BitSet> = (0..n).map(|v| c.neighbors_in(v, color)).collect();
    // A vertex of a t-clique has color-degree at least t-1.
    let candidates = BitSet::from_indices(n, (0..n).filter(|&v| neighborhoods[v].count() + 1 >= t));
    let mut current = Vec::with_capacity(t);
    extend(&neighborhoods, &candidates, t, &mut current).then_some(current)
}

fn extend(nbhd: &[BitSet], candidates: &BitSet, t: usize, current: &mut Vec<usize>) -> bool {
    if current.len() == t {
        return true;
    }
    let need = t - current.len();
    let mut remaining = candidates.count();
    for v in candidates.iter() {
        if remaining < need {
            return false;
        }
        remaining -= 1;
        let mut next = candidates.intersection(&nbhd[v]);
        // Keep only vertices after v so each clique is found once, in order.
        for w in next.clone().iter() {
            if w <= v {
                next.remove(w);
            } else {
                break;
            }
        }
        if next.count() + 1 < need {
            continue;
        }
        current.push(v);
        if extend(nbhd, &next, t, current) {
            return true;
        }
        current.pop();
    }
    false
}

/// Some monochromatic `K_t`, searching the majority color first (blue on a
/// tie). `None` is only possible when the order is below `r(K_t)`.
pub fn find_mono_clique_dense(c: &CompleteColoring, t: usize) -> Option<MonoClique> {
    let first = if c.count(Color::Red) > c.count(Color::Blue) {
        Color::Red
    } else {
        Color::Blue
    };
    [first, first.other()].into_iter().find_map(|color| {
        find_clique_of_color(c, color, t).map(|vertices| MonoClique { vertices, color })
    })
}

/// [`find_mono_clique_dense`] for a coloring whose host must be complete.
pub fn find_mono_clique(c: &TwoColoring<'_>, t: usize) -> Result<Option<MonoClique>, ColoringError> {
    let dense = CompleteColoring::from_two_coloring(c)?;
    Ok(find_mono_clique_dense(&dense, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn pentagon() -> CompleteColoring {
        CompleteColoring::from_fn(5, |u, v| {
            if (v - u) % 5 == 1 || (v - u) % 5 == 4 {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }

    #[test]
    fn pentagon_has_no_mono_triangle() {
        assert_eq!(find_mono_clique_dense(&pentagon(), 3), None);
        // Mono edges exist in both colors.
        assert!(find_mono_clique_dense(&pentagon(), 2).is_some());
    }

    #[test]
    fn mono_k4_returns_everything() {
        let c = CompleteColoring::uniform(4, Color::Red);
        let found = find_mono_clique_dense(&c, 4).unwrap();
        assert_eq!(found.vertices, vec![0, 1, 2, 3]);
        assert_eq!(found.color, Color::Red);
    }

    #[test]
    fn majority_color_searched_first() {
        // Blue triangles {1,2,3} and {0,4,5}; red is the complement, a K_{3,3}
        // with 9 of the 15 edges. Red is searched first but is triangle-free.
        let blue_edges = [(1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 5)];
        let c = CompleteColoring::from_fn(6, |u, v| {
            if blue_edges.contains(&(u, v)) {
                Color::Blue
            } else {
                Color::Red
            }
        });
        assert_eq!(find_clique_of_color(&c, Color::Red, 3), None);
        let found = find_mono_clique_dense(&c, 3).unwrap();
        assert_eq!(found.color, Color::Blue);
        assert_eq!(found.vertices, vec![0, 4, 5]);
        assert_eq!(find_clique_of_color(&c, Color::Red, 2), Some(vec![0, 1]));
    }

    #[test]
    fn sparse_host_is_rejected() {
        let g = Graph::path(3);
        let c = TwoColoring::uniform(&g, Color::Blue);
        assert!(find_mono_clique(&c, 2).is_err());
    }

    #[test]
    fn table_lookup() {
        let table = RamseyTable::new();
        assert_eq!(table.lookup(3), Ok(6));
        assert_eq!(table.lookup(4), Ok(18));
        assert_eq!(table.lookup(5), Err(RamseyError::Unknown(5)));
        assert_eq!(table.with_override(5, 48).lookup(5), Ok(48));
    }
}
