//! Certificates for the expansion property: every two disjoint vertex sets of
//! size at least `sigma` are joined by an edge.
//!
//! Both certifiers work one size level only. Enlarging `S` or `T` can only add
//! crossing edges, so checking sets of size exactly `sigma` suffices. For a
//! fixed `S` a bad partner `T` exists iff the non-neighborhood of `S` (outside
//! `S`) has at least `sigma` vertices, which turns the search into an
//! enumeration over `S` alone.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::Graph;

pub const DEFAULT_WORK_BOUND: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateMode {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Falsified,
    /// No counterexample among the sampled sets; not a proof.
    Unfalsified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCertificate {
    pub mode: CertificateMode,
    pub sigma: usize,
    pub verdict: Verdict,
    /// Disjoint `(S, T)` with no edge between them.
    pub counterexample: Option<(Vec<usize>, Vec<usize>)>,
    /// Sets `S` examined (exact mode) or trials run (sampled mode).
    pub trials: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("2*sigma = {} exceeds the order {order}", 2 * .sigma)]
    SigmaTooLarge { sigma: usize, order: usize },
    #[error("sigma must be at least 1")]
    ZeroSigma,
    #[error("exact certification needs {needed} subset checks, above the bound {bound}")]
    WorkBoundExceeded { needed: u128, bound: u64 },
}

impl ExpansionCertificate {
    /// Re-checks a falsifying counterexample against `h` by direct edge scan.
    pub fn counterexample_holds(&self, h: &Graph) -> bool {
        let Some((s, t)) = &self.counterexample else {
            return false;
        };
        let mut in_s = vec![false; h.order()];
        for &v in s {
            if v >= h.order() || in_s[v] {
                return false;
            }
            in_s[v] = true;
        }
        let mut in_t = vec![false; h.order()];
        for &v in t {
            if v >= h.order() || in_s[v] || in_t[v] {
                return false;
            }
            in_t[v] = true;
        }
        s.len() >= self.sigma
            && t.len() >= self.sigma
            && s.iter().all(|&u| h.neighbors(u).iter().all(|&w| !in_t[w]))
    }
}

impl fmt::Display for ExpansionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            CertificateMode::Exact => "exact",
            CertificateMode::Sampled => "sampled",
        };
        let verdict = match self.verdict {
            Verdict::Certified => "certified",
            Verdict::Falsified => "falsified",
            Verdict::Unfalsified => "unfalsified",
        };
        writeln!(f, "certificate")?;
        writeln!(f, "mode {mode}")?;
        writeln!(f, "sigma {}", self.sigma)?;
        writeln!(f, "verdict {verdict}")?;
        writeln!(f, "trials {}", self.trials)?;
        if let Some((s, t)) = &self.counterexample {
            let join = |xs: &[usize]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            writeln!(f, "S {}", join(s))?;
            writeln!(f, "T {}", join(t))?;
        }
        Ok(())
    }
}

fn check_sigma(h: &Graph, sigma: usize) -> Result<(), ExpansionError> {
    if sigma == 0 {
        return Err(ExpansionError::ZeroSigma);
    }
    if 2 * sigma > h.order() {
        return Err(ExpansionError::SigmaTooLarge {
            sigma,
            order: h.order(),
        });
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

fn closed_neighborhoods(h: &Graph) -> Vec<BitSet> {
    (0..h.order())
        .map(|v| {
            let mut s = BitSet::from_indices(h.order(), h.neighbors(v).iter().copied());
            s.insert(v);
            s
        })
        .collect()
}

/// `sigma` vertices outside `S ∪ N(S)`, given the union of closed neighborhoods.
fn free_partner(covered: &BitSet, sigma: usize) -> Option<Vec<usize>> {
    let free: Vec<usize> = (0..covered.capacity()).filter(|&v| !covered.contains(v)).take(sigma).collect();
    (free.len() == sigma).then_some(free)
}

pub fn certify_expansion_exact(
    h: &Graph,
    sigma: usize,
    work_bound: u64,
) -> Result<ExpansionCertificate, ExpansionError> {
    check_sigma(h, sigma)?;
    let n = h.order();
    let needed = binomial(n, sigma);
    if needed > work_bound as u128 {
        return Err(ExpansionError::WorkBoundExceeded {
            needed,
            bound: work_bound,
        });
    }
    let closed = closed_neighborhoods(h);
    // Lexicographic walk over sigma-subsets with prefix unions on a stack.
    let mut subset: Vec<usize> = Vec::with_capacity(sigma);
    let mut unions: Vec<BitSet> = vec![BitSet::new(n)];
    let mut examined = 0u64;
    let mut next = 0usize;
    loop {
        if subset.len() == sigma {
            examined += 1;
            let covered = unions.last().unwrap();
            if let Some(t) = free_partner(covered, sigma) {
                return Ok(ExpansionCertificate {
                    mode: CertificateMode::Exact,
                    sigma,
                    verdict: Verdict::Falsified,
                    counterexample: Some((subset.clone(), t)),
                    trials: examined,
                });
            }
        }
        if subset.len() < sigma && next + (sigma - subset.len()) <= n {
            let mut u = unions.last().unwrap().clone();
            for w in closed[next].iter() {
                u.insert(w);
            }
            subset.push(next);
            unions.push(u);
            next += 1;
            continue;
        }
        // Backtrack to the next sibling.
        match subset.pop() {
            Some(last) => {
                unions.pop();
                next = last + 1;
            }
            None => break,
        }
    }
    Ok(ExpansionCertificate {
        mode: CertificateMode::Exact,
        sigma,
        verdict: Verdict::Certified,
        counterexample: None,
        trials: examined,
    })
}

/// Samples `trials` candidate sets `S` and tests whether some `T` of size
/// `sigma` avoids them. Even trials draw `S` uniformly; odd trials grow `S`
/// greedily from a random start, each time adding a vertex that keeps the
/// most vertices outside `S ∪ N(S)`. Trial `i` uses its own ChaCha stream, so
/// the first failing trial does not depend on evaluation order.
pub fn certify_expansion_sampled(
    h: &Graph,
    sigma: usize,
    trials: u64,
    seed: u64,
) -> Result<ExpansionCertificate, ExpansionError> {
    check_sigma(h, sigma)?;
    assert!(trials >= 1, "need at least one trial");
    let n = h.order();
    let closed = closed_neighborhoods(h);
    let vertices: Vec<usize> = (0..n).collect();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let s: Vec<usize> = if trial % 2 == 0 {
            let mut s: Vec<usize> = vertices.choose_multiple(&mut rng, sigma).copied().collect();
            s.sort_unstable();
            s
        } else {
            greedy_isolated_set(&closed, sigma, &mut rng)
        };
        let mut covered = BitSet::new(n);
        for &v in &s {
            for w in closed[v].iter() {
                covered.insert(w);
            }
        }
        if let Some(t) = free_partner(&covered, sigma) {
            return Ok(ExpansionCertificate {
                mode: CertificateMode::Sampled,
                sigma,
                verdict: Verdict::Falsified,
                counterexample: Some((s, t)),
                trials: trial + 1,
            });
        }
    }
    Ok(ExpansionCertificate {
        mode: CertificateMode::Sampled,
        sigma,
        verdict: Verdict::Unfalsified,
        counterexample: None,
        trials,
    })
}

fn greedy_isolated_set(closed: &[BitSet], sigma: usize, rng: &mut impl Rng) -> Vec<usize> {
    let n = closed.len();
    let mut covered = BitSet::new(n);
    let mut chosen = BitSet::new(n);
    let mut s = Vec::with_capacity(sigma);
    let start = rng.gen_range(0..n);
    for w in closed[start].iter() {
        covered.insert(w);
    }
    chosen.insert(start);
    s.push(start);
    while s.len() < sigma {
        let mut best = Vec::new();
        let mut best_growth = usize::MAX;
        for (v, nb) in closed.iter().enumerate() {
            if chosen.contains(v) {
                continue;
            }
            let growth = nb.count() - nb.intersection_count(&covered);
            if growth < best_growth {
                best_growth = growth;
                best.clear();
            }
            if growth == best_growth {
                best.push(v);
            }
        }
        let v = best[rng.gen_range(0..best.len())];
        for w in closed[v].iter() {
            covered.insert(w);
        }
        chosen.insert(v);
        s.push(v);
    }
    s.sort_unstable();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cliques(m: usize) -> Graph {
        let mut edges = Vec::new();
        for base in [0, m] {
            for u in 0..m {
                for v in u + 1..m {
                    edges.push((base + u, base + v));
                }
            }
        }
        Graph::from_edges(2 * m, edges).unwrap()
    }

    #[test]
    fn complete_graph_is_certified() {
        let cert = certify_expansion_exact(&Graph::complete(10), 2, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert_eq!(cert.trials, 45);
    }

    #[test]
    fn empty_graph_is_falsified() {
        let h = Graph::empty(10);
        let cert = certify_expansion_exact(&h, 2, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(cert.verdict, Verdict::Falsified);
        assert!(cert.counterexample_holds(&h));
    }

    #[test]
    fn two_k5_are_separated() {
        let h = two_cliques(5);
        let cert = certify_expansion_exact(&h, 3, DEFAULT_WORK_BOUND).unwrap();
        assert_eq!(cert.verdict, Verdict::Falsified);
        assert!(cert.counterexample_holds(&h));
        let (s, t) = cert.counterexample.unwrap();
        assert!(s.iter().all(|&v| v < 5));
        assert!(t.iter().all(|&v| v >= 5));
    }

    #[test]
    fn guards() {
        assert!(matches!(
            certify_expansion_exact(&Graph::complete(5), 3, DEFAULT_WORK_BOUND),
            Err(ExpansionError::SigmaTooLarge { .. })
        ));
        assert!(matches!(
            certify_expansion_exact(&Graph::complete(60), 20, 1000),
            Err(ExpansionError::WorkBoundExceeded { .. })
        ));
    }

    #[test]
    fn sampled_finds_clique_split() {
        let h = two_cliques(20);
        let cert = certify_expansion_sampled(&h, 10, 10_000, 7).unwrap();
        assert_eq!(cert.verdict, Verdict::Falsified);
        assert!(cert.counterexample_holds(&h));
        assert_eq!(cert, certify_expansion_sampled(&h, 10, 10_000, 7).unwrap());
    }

    #[test]
    fn sampled_on_complete_and_empty() {
        let k40 = Graph::complete(40);
        let cert = certify_expansion_sampled(&k40, 5, 200, 1).unwrap();
        assert_eq!(cert.verdict, Verdict::Unfalsified);
        assert_eq!(cert.trials, 200);
        let empty = Graph::empty(6);
        let cert = certify_expansion_sampled(&empty, 1, 1, 1).unwrap();
        assert_eq!(cert.verdict, Verdict::Falsified);
        assert!(cert.counterexample_holds(&empty));
    }

    #[test]
    fn certificate_text_block() {
        let cert = certify_expansion_exact(&Graph::empty(4), 1, DEFAULT_WORK_BOUND).unwrap();
        let text = cert.to_string();
        assert!(text.starts_with("certificate\nmode exact\nsigma 1\nverdict falsified\n"));
        assert!(text.contains("S 0\nT 1\n"));
    }
}
