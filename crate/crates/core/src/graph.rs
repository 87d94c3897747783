//! Undirected simple graphs with contiguous vertex ids.
//!
//! Adjacency is stored in compressed sparse-row form with every neighbor list
//! sorted ascending. Each undirected edge `{u, v}` with `u < v` gets a stable
//! edge id equal to its rank in lexicographic order, which colorings use as
//! their index.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{u}, {v}}} references a vertex outside 0..{order}")]
    UnknownVertex { u: usize, v: usize, order: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    edge_ids: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list. Endpoints may be given in either
    /// order; self-loops, out-of-range ids and repeated edges are rejected.
    pub fn from_edges(
        order: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= order || b >= order {
                return Err(GraphError::UnknownVertex { u: a, v: b, order });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(order, list))
    }

    /// `edges` must be sorted, deduplicated, in range, with `u < v`.
    pub(crate) fn from_sorted_unique(order: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degree = vec![0usize; order];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(order + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..order].to_vec();
        let mut neighbors = vec![0; 2 * edges.len()];
        let mut edge_ids = vec![0; 2 * edges.len()];
        // Lexicographic edge order fills each list in ascending neighbor order
        // for the smaller endpoint; the larger endpoint receives its smaller
        // neighbors in ascending order as well, before any larger ones.
        for (id, &(u, v)) in edges.iter().enumerate() {
            neighbors[cursor[v]] = u;
            edge_ids[cursor[v]] = id;
            cursor[v] += 1;
        }
        for (id, &(u, v)) in edges.iter().enumerate() {
            neighbors[cursor[u]] = v;
            edge_ids[cursor[u]] = id;
            cursor[u] += 1;
        }
        Self {
            offsets,
            neighbors,
            edge_ids,
            edges,
        }
    }

    pub fn empty(order: usize) -> Self {
        Self::from_sorted_unique(order, Vec::new())
    }

    pub fn complete(order: usize) -> Self {
        let mut edges = Vec::with_capacity(order * order.saturating_sub(1) / 2);
        for u in 0..order {
            for v in u + 1..order {
                edges.push((u, v));
            }
        }
        Self::from_sorted_unique(order, edges)
    }

    pub fn path(order: usize) -> Self {
        Self::from_sorted_unique(order, (1..order).map(|v| (v - 1, v)).collect())
    }

    pub fn cycle(order: usize) -> Self {
        assert!(order >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
        edges.push((0, order - 1));
        edges.sort_unstable();
        Self::from_sorted_unique(order, edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, indexed by edge id.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Neighbors of `v` paired with the id of the connecting edge.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.neighbors[range.clone()]
            .iter()
            .copied()
            .zip(self.edge_ids[range].iter().copied())
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.order() || v >= self.order() {
            return None;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        let start = self.offsets[a];
        self.neighbors(a)
            .binary_search(&b)
            .ok()
            .map(|i| self.edge_ids[start + i])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Graph::from_sorted_unique(vertices.len(), edges)
    }

    /// FNV-1a hash of the order and edge list; stable across platforms.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |x: u64| {
            for byte in x.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(self.order() as u64);
        for &(u, v) in &self.edges {
            eat(u as u64);
            eat(v as u64);
        }
        h
    }

    /// Hop distances from `source`, truncated at `limit` (`None` beyond it).
    pub fn bfs_distances(&self, source: usize, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            if d == limit {
                continue;
            }
            for &w in self.neighbors(v) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// The `k`th power: same vertices, `{u, v}` an edge iff `1 <= dist(u, v) <= k`.
pub fn graph_power(g: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "graph power needs k >= 1");
    if k == 1 {
        return g.clone();
    }
    let n = g.order();
    let mut edges = Vec::new();
    let mut seen = vec![usize::MAX; n];
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    let mut reached = Vec::new();
    for source in 0..n {
        seen[source] = source;
        frontier.clear();
        frontier.push(source);
        reached.clear();
        for _ in 0..k {
            next.clear();
            for &v in &frontier {
                for &w in g.neighbors(v) {
                    if seen[w] != source {
                        seen[w] = source;
                        next.push(w);
                        if w > source {
                            reached.push(w);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            std::mem::swap(&mut frontier, &mut next);
        }
        reached.sort_unstable();
        edges.extend(reached.iter().map(|&w| (source, w)));
    }
    Graph::from_sorted_unique(n, edges)
}
