//! The auxiliary coloring of `F^k`: an edge `{u, v}` is blue iff the cross
//! edges between the blue cliques `B(u)` and `B(v)` contain a blue
//! `K_{s,s}`, and red otherwise.

use thiserror::Error;

use crate::biclique::{has_blue_kss, KssWitness};
use crate::coloring::{Color, TwoColoring};
use crate::graph::Graph;
use crate::ramsey::MonoCliqueAssignment;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AuxiliaryError {
    #[error("F vertex {0} maps to base vertex {1}, which has no clique")]
    MissingClique(usize, usize),
    #[error("clique of base vertex {0} is not blue")]
    NotBlue(usize),
}

/// Blue `K_{s,s}` between `B(a)` and `B(b)` as blown-up vertex lists, sorted.
pub fn clique_biclique(
    coloring: &TwoColoring<'_>,
    cliques: &MonoCliqueAssignment,
    a: usize,
    b: usize,
    s: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let left = &cliques.clique(a).vertices;
    let right = &cliques.clique(b).vertices;
    let bc = coloring.restrict_to_bipartite(left, right);
    has_blue_kss(&bc, s).map(|KssWitness { left: li, right: ri }| {
        let mut x: Vec<usize> = li.iter().map(|&i| left[i]).collect();
        let mut y: Vec<usize> = ri.iter().map(|&j| right[j]).collect();
        x.sort_unstable();
        y.sort_unstable();
        (x, y)
    })
}

/// Colors `f_power` (vertex `i` stands for base vertex `f_to_base[i]`).
pub fn auxiliary_coloring<'f>(
    f_power: &'f Graph,
    f_to_base: &[usize],
    blowup_coloring: &TwoColoring<'_>,
    cliques: &MonoCliqueAssignment,
    s: usize,
) -> Result<TwoColoring<'f>, AuxiliaryError> {
    for (i, &v) in f_to_base.iter().enumerate() {
        let q = cliques
            .cliques
            .get(v)
            .ok_or(AuxiliaryError::MissingClique(i, v))?;
        if q.color != Color::Blue {
            return Err(AuxiliaryError::NotBlue(v));
        }
    }
    Ok(TwoColoring::from_fn(f_power, |u, v| {
        match clique_biclique(blowup_coloring, cliques, f_to_base[u], f_to_base[v], s) {
            Some(_) => Color::Blue,
            None => Color::Red,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::complete_blowup;
    use crate::ramsey::MonoClique;

    /// Two clusters of 4, each cluster one blue clique.
    fn two_clusters() -> (Graph, MonoCliqueAssignment) {
        let (blown, _) = complete_blowup(&Graph::complete(2), 4);
        let cliques = MonoCliqueAssignment {
            cliques: vec![
                MonoClique { vertices: vec![0, 1, 2, 3], color: Color::Blue },
                MonoClique { vertices: vec![4, 5, 6, 7], color: Color::Blue },
            ],
        };
        (blown, cliques)
    }

    /// Blue inside clusters, cross edges blue iff `cross(i, j)` on offsets.
    fn color_of(cross: &dyn Fn(usize, usize) -> bool) -> impl Fn(usize, usize) -> Color + '_ {
        move |u, v| {
            if u / 4 == v / 4 || cross(u % 4, v % 4) {
                Color::Blue
            } else {
                Color::Red
            }
        }
    }

    #[test]
    fn all_blue_cross_is_blue() {
        let cross = |_: usize, _: usize| true;
        let (blown, cliques) = two_clusters();
        let c = TwoColoring::from_fn(&blown, color_of(&cross));
        let f = Graph::complete(2);
        let aux = auxiliary_coloring(&f, &[0, 1], &c, &cliques, 1).unwrap();
        assert_eq!(aux.color(0, 1), Some(Color::Blue));
    }

    #[test]
    fn all_red_cross_is_red() {
        let cross = |_: usize, _: usize| false;
        let (blown, cliques) = two_clusters();
        let c = TwoColoring::from_fn(&blown, color_of(&cross));
        let f = Graph::complete(2);
        for s in 1..=3 {
            let aux = auxiliary_coloring(&f, &[0, 1], &c, &cliques, s).unwrap();
            assert_eq!(aux.color(0, 1), Some(Color::Red));
        }
    }

    #[test]
    fn matching_cross_is_red_at_s2() {
        let cross = |i: usize, j: usize| i == j;
        let (blown, cliques) = two_clusters();
        let c = TwoColoring::from_fn(&blown, color_of(&cross));
        let f = Graph::complete(2);
        let aux = auxiliary_coloring(&f, &[0, 1], &c, &cliques, 2).unwrap();
        assert_eq!(aux.color(0, 1), Some(Color::Red));
        let aux1 = auxiliary_coloring(&f, &[0, 1], &c, &cliques, 1).unwrap();
        assert_eq!(aux1.color(0, 1), Some(Color::Blue));
    }

    #[test]
    fn red_clique_is_rejected() {
        let (blown, mut cliques) = two_clusters();
        cliques.cliques[1].color = Color::Red;
        let c = TwoColoring::uniform(&blown, Color::Blue);
        let f = Graph::complete(2);
        assert_eq!(
            auxiliary_coloring(&f, &[0, 1], &c, &cliques, 1).unwrap_err(),
            AuxiliaryError::NotBlue(1)
        );
        assert!(matches!(
            auxiliary_coloring(&f, &[0, 5], &c, &cliques, 1),
            Err(AuxiliaryError::MissingClique(1, 5))
        ));
    }
}
