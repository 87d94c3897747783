//! Bounded-degree host construction: sample a binomial random graph on
//! `2an` vertices with edge probability `c/n`, then repeatedly delete a vertex
//! of maximum degree until `an` vertices remain.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HostError {
    #[error("a*n = {0} is not a positive integer")]
    NonIntegerOrder(BigRational),
    #[error("edge probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(BigRational),
    #[error("edge probability {0} needs a denominator wider than 64 bits")]
    ProbabilityTooFine(BigRational),
}

#[derive(Clone, Debug)]
pub struct HostSample {
    /// The pruned host on `an` vertices.
    pub graph: Graph,
    /// The binomial random graph before pruning.
    pub sampled: Graph,
    /// `retained[i]` is the sampled-graph id of host vertex `i`.
    pub retained: Vec<usize>,
    pub max_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruned {
    pub graph: Graph,
    pub retained: Vec<usize>,
}

/// Deletes a vertex of maximum degree (largest id among ties) until
/// `target_order` vertices remain, returning the induced subgraph.
pub fn degree_prune(g: &Graph, target_order: usize) -> Pruned {
    assert!(target_order <= g.order(), "cannot prune to a larger order");
    let mut degree: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.order()];
    let mut queue: BTreeSet<(usize, usize)> = (0..g.order()).map(|v| (degree[v], v)).collect();
    for _ in target_order..g.order() {
        let (_, v) = queue.pop_last().expect("queue holds every live vertex");
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    let retained: Vec<usize> = (0..g.order()).filter(|&v| alive[v]).collect();
    Pruned {
        graph: g.induced_subgraph(&retained),
        retained,
    }
}

fn exact_u64(r: &BigRational) -> Option<u64> {
    r.is_integer().then(|| r.to_integer().to_u64()).flatten()
}

/// Binomial random graph `G(order, num/den)`: every pair `(u, v)`, `u < v`, in
/// lexicographic order gets one uniform draw in `0..den`, and is an edge iff
/// the draw is below `num`.
pub fn binomial_graph(order: usize, num: u64, den: u64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..order {
        for v in u + 1..order {
            if rng.gen_range(0..den) < num {
                edges.push((u, v));
            }
        }
    }
    Graph::from_sorted_unique(order, edges)
}

pub fn sample_host(a: &BigRational, n: u64, c: &BigRational, seed: u64) -> Result<HostSample, HostError> {
    let n_rat = BigRational::from_integer(BigInt::from(n));
    let an = a * &n_rat;
    let host_order = exact_u64(&an)
        .filter(|&v| v >= 1)
        .ok_or_else(|| HostError::NonIntegerOrder(an.clone()))?;
    let p = c / &n_rat;
    if p.is_negative() || p > BigRational::from_integer(BigInt::from(1)) {
        return Err(HostError::ProbabilityOutOfRange(p));
    }
    let (num, den) = if p.is_zero() {
        (0, 1)
    } else {
        match (p.numer().to_u64(), p.denom().to_u64()) {
            (Some(num), Some(den)) => (num, den),
            _ => return Err(HostError::ProbabilityTooFine(p)),
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled = binomial_graph(2 * host_order as usize, num, den, &mut rng);
    let pruned = degree_prune(&sampled, host_order as usize);
    Ok(HostSample {
        max_degree: pruned.graph.max_degree(),
        graph: pruned.graph,
        sampled,
        retained: pruned.retained,
    })
}
