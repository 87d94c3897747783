//! Complete blow-ups: every base vertex becomes a clique (its cluster) and
//! every base edge becomes a complete bipartite graph between clusters.

use crate::graph::Graph;

/// Cluster structure of a blow-up. Blown-up vertex `v * cluster_size + o`
/// is member `o` of the cluster of base vertex `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowupMap {
    base_order: usize,
    cluster_size: usize,
}

impl BlowupMap {
    pub fn new(base_order: usize, cluster_size: usize) -> Self {
        assert!(cluster_size >= 1, "cluster size must be positive");
        Self {
            base_order,
            cluster_size,
        }
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn cluster_size(&self) -> usize {
        self.cluster_size
    }

    pub fn blown_order(&self) -> usize {
        self.base_order * self.cluster_size
    }

    #[inline]
    pub fn cluster_of(&self, blown: usize) -> usize {
        blown / self.cluster_size
    }

    pub fn members_of(&self, base: usize) -> std::ops::Range<usize> {
        base * self.cluster_size..(base + 1) * self.cluster_size
    }

    #[inline]
    pub fn vertex(&self, base: usize, offset: usize) -> usize {
        debug_assert!(offset < self.cluster_size);
        base * self.cluster_size + offset
    }
}

/// Exact edge count of a complete blow-up:
/// `r^2 |E(g)| + order(g) * r(r-1)/2`.
pub fn blowup_edge_count(g: &Graph, cluster_size: usize) -> usize {
    let r = cluster_size;
    r * r * g.edge_count() + g.order() * r * (r - 1) / 2
}

pub fn complete_blowup(g: &Graph, cluster_size: usize) -> (Graph, BlowupMap) {
    let map = BlowupMap::new(g.order(), cluster_size);
    let r = cluster_size;
    let mut edges = Vec::with_capacity(blowup_edge_count(g, r));
    // Emitted in lexicographic order: for blown vertex x in cluster u, first
    // its larger cluster-mates, then the clusters of larger base neighbors.
    for u in 0..g.order() {
        let larger: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| w > u).collect();
        for a in 0..r {
            let x = map.vertex(u, a);
            for b in a + 1..r {
                edges.push((x, map.vertex(u, b)));
            }
            for &w in &larger {
                for b in 0..r {
                    edges.push((x, map.vertex(w, b)));
                }
            }
        }
    }
    debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
    (Graph::from_sorted_unique(map.blown_order(), edges), map)
}
