//! Covers of a two-colored complete graph by at most `k` vertex-disjoint blue
//! paths plus `k + 1` classes with every cross-class pair red.
//!
//! The heuristic is a blue depth-first search that stops once the dead set
//! is large relative to the unexplored set: at that moment the DFS stack is
//! a blue path, and dead vertices have no blue edge to unexplored ones, so
//! the dead set becomes one class and the search recurses on the unexplored
//! vertices with one path fewer. Classes are then regrouped by blue
//! component to even out their sizes. For small orders an exhaustive search
//! over path-vertex sets finds the cover with the largest smallest class.
//!
//! Nothing is returned without passing [`verify_cover`].

use std::collections::HashMap;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::coloring::{Color, CompleteColoring};

/// Largest order handled by the exhaustive fallback.
pub const EXHAUSTIVE_LIMIT: usize = 15;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("no verified cover found for order {order}, k = {k}")]
    SearchExhausted { order: usize, k: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionCover {
    /// At most `k` nonempty blue paths.
    pub blue_paths: Vec<Vec<usize>>,
    /// Exactly `k + 1` classes, possibly empty.
    pub classes: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverStrategy {
    Heuristic,
    Exhaustive,
}

impl PartitionCover {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn min_class(&self) -> usize {
        self.classes.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_class(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_balanced(&self) -> bool {
        self.min_class() == self.max_class()
    }

    pub fn path_vertex_count(&self) -> usize {
        self.blue_paths.iter().map(Vec::len).sum()
    }

    /// Larger is better: smallest class first, then balance, then a smaller
    /// largest class.
    fn quality(&self) -> (usize, bool, std::cmp::Reverse<usize>) {
        (self.min_class(), self.is_balanced(), std::cmp::Reverse(self.max_class()))
    }

    fn normalized(mut self) -> Self {
        self.blue_paths.retain(|p| !p.is_empty());
        for class in &mut self.classes {
            class.sort_unstable();
        }
        self
    }
}

/// Independent check of every cover invariant against `c`.
pub fn verify_cover(c: &CompleteColoring, k: usize, cover: &PartitionCover) -> bool {
    let n = c.order();
    if cover.blue_paths.len() > k || cover.classes.len() != k + 1 {
        return false;
    }
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    for v in cover.blue_paths.iter().flatten() {
        if *v >= n || seen[*v] {
            return false;
        }
        seen[*v] = true;
    }
    for (i, class) in cover.classes.iter().enumerate() {
        for &v in class {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
            class_of[v] = Some(i);
        }
    }
    if seen.iter().any(|s| !s) {
        return false;
    }
    for path in &cover.blue_paths {
        if path.windows(2).any(|w| c.color(w[0], w[1]) != Color::Blue) {
            return false;
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if let (Some(a), Some(b)) = (class_of[u], class_of[v]) {
                if a != b && c.color(u, v) != Color::Red {
                    return false;
                }
            }
        }
    }
    true
}

pub fn cover_blue_paths_red_multipartite(c: &CompleteColoring, k: usize) -> Result<PartitionCover, CoverError> {
    cover_search(c, k).map(|(cover, _)| cover)
}

/// Like [`cover_blue_paths_red_multipartite`], also reporting which search
/// produced the cover.
pub fn cover_search(c: &CompleteColoring, k: usize) -> Result<(PartitionCover, CoverStrategy), CoverError> {
    fn consider(
        c: &CompleteColoring,
        k: usize,
        best: &mut Option<(PartitionCover, CoverStrategy)>,
        cand: PartitionCover,
        strategy: CoverStrategy,
    ) {
        if verify_cover(c, k, &cand) && best.as_ref().is_none_or(|(b, _)| cand.quality() > b.quality()) {
            *best = Some((cand, strategy));
        }
    }
    let mut best = None;
    for variant in HEURISTIC_VARIANTS {
        consider(c, k, &mut best, heuristic_cover(c, k, variant), CoverStrategy::Heuristic);
    }
    let heuristic_balanced = best.as_ref().is_some_and(|(b, _)| b.is_balanced());
    if !heuristic_balanced && c.order() <= EXHAUSTIVE_LIMIT {
        if let Some(cand) = exhaustive_cover(c, k) {
            consider(c, k, &mut best, cand, CoverStrategy::Exhaustive);
        }
    }
    best.ok_or(CoverError::SearchExhausted { order: c.order(), k })
}

#[derive(Clone, Copy)]
enum NextPick {
    LeastId,
    /// Fewest unexplored blue neighbors first, which favors long paths.
    FewestOptions,
}

#[derive(Clone, Copy)]
enum StartPick {
    LeastId,
    MaxBlueDegree,
}

const HEURISTIC_VARIANTS: [(StartPick, NextPick); 4] = [
    (StartPick::LeastId, NextPick::LeastId),
    (StartPick::LeastId, NextPick::FewestOptions),
    (StartPick::MaxBlueDegree, NextPick::FewestOptions),
    (StartPick::MaxBlueDegree, NextPick::LeastId),
];

fn heuristic_cover(c: &CompleteColoring, k: usize, (start, next): (StartPick, NextPick)) -> PartitionCover {
    let n = c.order();
    let mut paths = Vec::with_capacity(k);
    let mut classes = Vec::with_capacity(k + 1);
    let mut remaining = BitSet::full(n);
    for slots in (1..=k).rev() {
        let (path, dead, unexplored) = dfs_split(c, &remaining, slots, start, next);
        paths.push(path);
        classes.push(dead);
        remaining = unexplored;
    }
    classes.push(remaining.iter().collect());
    let cover = PartitionCover {
        blue_paths: paths,
        classes,
    };
    let regrouped = regroup_components(c, &cover, k);
    if regrouped.quality() > cover.quality() {
        regrouped.normalized()
    } else {
        cover.normalized()
    }
}

/// Blue DFS over `vertices` that halts at the first moment
/// `slots * |dead| >= |unexplored|`. Returns the stack, the dead set and the
/// unexplored set.
fn dfs_split(
    c: &CompleteColoring,
    vertices: &BitSet,
    slots: usize,
    start: StartPick,
    next: NextPick,
) -> (Vec<usize>, Vec<usize>, BitSet) {
    let mut unexplored = vertices.clone();
    let mut dead = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut remaining = unexplored.count();
    while slots * dead.len() < remaining {
        match stack.last() {
            None => {
                let v = match start {
                    StartPick::LeastId => unexplored.first(),
                    StartPick::MaxBlueDegree => {
                        // Ties go to the least id.
                        let mut best: Option<(usize, usize)> = None;
                        for v in unexplored.iter() {
                            let d = c.blue_neighbors(v).intersection_count(&unexplored);
                            if best.is_none_or(|(bd, _)| d > bd) {
                                best = Some((d, v));
                            }
                        }
                        best.map(|(_, v)| v)
                    }
                }
                .expect("unexplored set is nonempty while the stop rule fails");
                unexplored.remove(v);
                remaining -= 1;
                stack.push(v);
            }
            Some(&last) => {
                let options = c.blue_neighbors(last).intersection(&unexplored);
                let pick = match next {
                    NextPick::LeastId => options.first(),
                    NextPick::FewestOptions => {
                        let mut best: Option<(usize, usize)> = None;
                        for u in options.iter() {
                            let d = c.blue_neighbors(u).intersection_count(&unexplored);
                            if best.is_none_or(|(bd, _)| d < bd) {
                                best = Some((d, u));
                            }
                        }
                        best.map(|(_, u)| u)
                    }
                };
                match pick {
                    Some(u) => {
                        unexplored.remove(u);
                        remaining -= 1;
                        stack.push(u);
                    }
                    None => {
                        stack.pop();
                        dead.push(last);
                    }
                }
            }
        }
    }
    (stack, dead, unexplored)
}

/// Blue components of `vertices`, each sorted, in order of least member.
fn blue_components(c: &CompleteColoring, vertices: &[usize]) -> Vec<Vec<usize>> {
    let n = c.order();
    let member = BitSet::from_indices(n, vertices.iter().copied());
    let mut seen = BitSet::new(n);
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    for &root in &sorted {
        if seen.contains(root) {
            continue;
        }
        seen.insert(root);
        let mut comp = vec![root];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for w in c.blue_neighbors(v).intersection(&member).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Cross-class pairs are red, so every blue component of the class vertices
/// sits inside one class and components can be moved between classes
/// freely. Largest component first into the currently smallest class.
fn regroup_components(c: &CompleteColoring, cover: &PartitionCover, k: usize) -> PartitionCover {
    let all: Vec<usize> = cover.classes.iter().flatten().copied().collect();
    let mut comps = blue_components(c, &all);
    comps.sort_by_key(|comp| std::cmp::Reverse(comp.len()));
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for comp in comps {
        let smallest = (0..=k).min_by_key(|&i| (classes[i].len(), i)).unwrap();
        classes[smallest].extend(comp);
    }
    PartitionCover {
        blue_paths: cover.blue_paths.clone(),
        classes,
    }
}

/// Exhaustive search for `order <= EXHAUSTIVE_LIMIT`: every vertex set with
/// blue path-cover number at most `k` is tried as the path part, and the
/// blue components of the rest are split into `k + 1` classes by an exact
/// partition search.
fn exhaustive_cover(c: &CompleteColoring, k: usize) -> Option<PartitionCover> {
    let n = c.order();
    assert!(n <= EXHAUSTIVE_LIMIT);
    let full = (1usize << n) - 1;
    let blue_mask: Vec<usize> = (0..n)
        .map(|v| c.blue_neighbors(v).iter().fold(0usize, |m, w| m | (1 << w)))
        .collect();

    // ends[mask]: bitmask of vertices at which some blue Hamiltonian path of
    // `mask` ends.
    let mut ends = vec![0usize; 1 << n];
    for mask in 1..=full {
        if mask.count_ones() == 1 {
            ends[mask] = mask;
            continue;
        }
        let mut e = 0;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if ends[mask ^ (1 << v)] & blue_mask[v] != 0 {
                e |= 1 << v;
            }
        }
        ends[mask] = e;
    }

    // cover_count[mask]: fewest blue paths covering exactly `mask`, capped at k+1.
    let cap = (k + 1) as u8;
    let mut cover_count = vec![cap; 1 << n];
    cover_count[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut best = cap;
        // Submasks of `rest`, each joined with the lowest bit.
        let mut sub = rest;
        loop {
            let part = sub | low;
            if ends[part] != 0 {
                best = best.min(cover_count[mask ^ part].saturating_add(1)).min(cap);
                if best == 1 {
                    break;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        cover_count[mask] = best;
    }

    let mut best: Option<PartitionCover> = None;
    let mut masks: Vec<usize> = (0..=full).filter(|&m| cover_count[m] as usize <= k).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for path_mask in masks {
        // Smallest class can be at most the rest divided evenly.
        let ceiling = (n - path_mask.count_ones() as usize) / (k + 1);
        if let Some(b) = &best {
            if ceiling < b.min_class() || (ceiling == b.min_class() && b.is_balanced()) {
                continue;
            }
        }
        let rest: Vec<usize> = (0..n).filter(|v| path_mask & (1 << v) == 0).collect();
        let comps = blue_components(c, &rest);
        let Some(classes) = best_partition(&comps, k + 1) else {
            continue;
        };
        let cand = PartitionCover {
            blue_paths: Vec::new(),
            classes,
        };
        if best.as_ref().is_some_and(|b| cand.quality() <= b.quality()) {
            continue;
        }
        let blue_paths = extract_paths(path_mask, &ends, &cover_count, &blue_mask);
        best = Some(PartitionCover { blue_paths, ..cand }.normalized());
    }
    best
}

/// Recovers an explicit path cover of `mask` from the DP tables.
fn extract_paths(mut mask: usize, ends: &[usize], cover_count: &[u8], blue_mask: &[usize]) -> Vec<Vec<usize>> {
    let mut paths = Vec::new();
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        let part = loop {
            let part = sub | low;
            if ends[part] != 0 && cover_count[mask ^ part] + 1 == cover_count[mask] {
                break part;
            }
            assert!(sub != 0, "cover count table is inconsistent");
            sub = (sub - 1) & rest;
        };
        paths.push(hamiltonian_path(part, ends, blue_mask));
        mask ^= part;
    }
    paths
}

fn hamiltonian_path(mut mask: usize, ends: &[usize], blue_mask: &[usize]) -> Vec<usize> {
    let mut path = Vec::new();
    let mut last = ends[mask].trailing_zeros() as usize;
    loop {
        path.push(last);
        mask ^= 1 << last;
        if mask == 0 {
            break;
        }
        let candidates = ends[mask] & blue_mask[last];
        last = candidates.trailing_zeros() as usize;
    }
    path.reverse();
    path
}

/// Splits components into `groups` classes maximizing the smallest class,
/// then preferring balance and a smaller largest class.
fn best_partition(comps: &[Vec<usize>], groups: usize) -> Option<Vec<Vec<usize>>> {
    // State: sorted group sizes; value: component -> group assignment whose
    // group order matches the unsorted sizes it was built from.
    let mut states: HashMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = HashMap::new();
    states.insert(vec![0; groups], (vec![0; groups], Vec::new()));
    for comp in comps {
        let mut next: HashMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = HashMap::new();
        let mut keys: Vec<&Vec<usize>> = states.keys().collect();
        keys.sort();
        for key in keys {
            let (sizes, assign) = &states[key];
            for g in 0..groups {
                let mut sizes2 = sizes.clone();
                sizes2[g] += comp.len();
                let mut key2 = sizes2.clone();
                key2.sort_unstable();
                next.entry(key2).or_insert_with(|| {
                    let mut a = assign.clone();
                    a.push(g);
                    (sizes2, a)
                });
            }
        }
        states = next;
    }
    let (_, (_, assign)) = states.into_iter().max_by(|(a, _), (b, _)| {
        let score = |s: &Vec<usize>| (s[0], s[0] == s[s.len() - 1], std::cmp::Reverse(s[s.len() - 1]));
        score(a).cmp(&score(b)).then_with(|| b.cmp(a))
    })?;
    let mut classes = vec![Vec::new(); groups];
    for (comp, g) in comps.iter().zip(assign) {
        classes[g].extend(comp.iter().copied());
    }
    Some(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_red_k9_splits_into_three_threes() {
        let c = CompleteColoring::uniform(9, Color::Red);
        let cover = cover_blue_paths_red_multipartite(&c, 2).unwrap();
        assert!(verify_cover(&c, 2, &cover));
        assert_eq!(cover.class_sizes(), vec![3, 3, 3]);
        assert_eq!(cover.path_vertex_count(), 0);
    }

    #[test]
    fn all_blue_k9_is_one_path() {
        let c = CompleteColoring::uniform(9, Color::Blue);
        for k in 1..=3 {
            let cover = cover_blue_paths_red_multipartite(&c, k).unwrap();
            assert!(verify_cover(&c, k, &cover));
            assert_eq!(cover.blue_paths.len(), 1);
            assert_eq!(cover.blue_paths[0].len(), 9);
            assert!(cover.classes.iter().all(Vec::is_empty));
        }
    }

    #[test]
    fn verifier_rejects_bad_covers() {
        let c = CompleteColoring::from_fn(4, |u, v| if (u, v) == (0, 1) { Color::Blue } else { Color::Red });
        let good = PartitionCover {
            blue_paths: vec![vec![0, 1]],
            classes: vec![vec![2], vec![3]],
        };
        assert!(verify_cover(&c, 1, &good));
        let blue_cross = PartitionCover {
            blue_paths: vec![],
            classes: vec![vec![0, 2], vec![1, 3]],
        };
        assert!(!verify_cover(&c, 1, &blue_cross));
        let missing = PartitionCover {
            blue_paths: vec![vec![0, 1]],
            classes: vec![vec![2], vec![]],
        };
        assert!(!verify_cover(&c, 1, &missing));
        let red_path = PartitionCover {
            blue_paths: vec![vec![0, 2]],
            classes: vec![vec![1], vec![3]],
        };
        assert!(!verify_cover(&c, 1, &red_path));
        let too_many_paths = PartitionCover {
            blue_paths: vec![vec![0, 1], vec![2]],
            classes: vec![vec![3], vec![]],
        };
        assert!(!verify_cover(&c, 1, &too_many_paths));
    }

    #[test]
    fn exhaustive_agrees_on_small_structured_case() {
        // Blue is a perfect matching on 6 vertices: with k = 1, one blue edge
        // becomes the path and the other two matched pairs form the classes.
        let c = CompleteColoring::from_fn(6, |u, v| if v == u + 1 && u % 2 == 0 { Color::Blue } else { Color::Red });
        let cover = exhaustive_cover(&c, 1).unwrap();
        assert!(verify_cover(&c, 1, &cover));
        assert_eq!(cover.class_sizes(), vec![2, 2]);
    }

    #[test]
    fn partition_prefers_large_minimum() {
        let comps = vec![vec![0, 1, 2], vec![3, 4], vec![5], vec![6]];
        let classes = best_partition(&comps, 2).unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 4]);
    }
}
