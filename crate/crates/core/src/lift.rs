//! Lifting a path of `F^k` back into the blow-up: a blue `P_n` becomes a
//! blue `P_{2kn}^k` through the blue bicliques, and a red `P_n^k` becomes a
//! red `P_n^k` by picking one representative per clique.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::auxiliary::clique_biclique;
use crate::coloring::{Color, TwoColoring};
use crate::ramsey::MonoCliqueAssignment;
use crate::witness::{verify_witness, Witness};

/// Violations kept in a resampling trace; later ones are only counted.
pub const TRACE_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub round: u64,
    pub i: usize,
    pub j: usize,
    pub y_i: usize,
    pub y_j: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum LiftError {
    #[error("empty path")]
    EmptyPath,
    #[error("biclique side s={s} is below 2k={}", 2 * k)]
    SmallBiclique { s: usize, k: usize },
    #[error("clique of base vertex {base} has {size} vertices, need {need}")]
    CliqueTooSmall { base: usize, size: usize, need: usize },
    #[error("path edge {0} has no blue K_s,s between its cliques")]
    MissingKssWitness(usize),
    #[error("blue K_s,s between the cliques of path positions {i} and {j}")]
    PreconditionViolated { i: usize, j: usize },
    #[error("no red representative system exists ({steps} steps)")]
    NoRepresentatives { steps: u64 },
    #[error("backtracking budget of {steps} steps exhausted")]
    BacktrackBudget { steps: u64 },
    #[error("resampling budget exhausted after {rounds} rounds")]
    BudgetExhausted { rounds: u64, trace: Vec<Violation> },
    #[error("lifted sequence failed verification")]
    Unverified,
}

fn verified(coloring: &TwoColoring<'_>, w: Witness) -> Result<Witness, LiftError> {
    if verify_witness(coloring.host(), coloring, &w) {
        Ok(w)
    } else {
        Err(LiftError::Unverified)
    }
}

/// Blue `P_{2kn}^k` from a blue path `x_1..x_n` (base ids) of `F^k`.
pub fn lift_blue(
    blue_path: &[usize],
    coloring: &TwoColoring<'_>,
    cliques: &MonoCliqueAssignment,
    s: usize,
    k: usize,
) -> Result<Witness, LiftError> {
    let n = blue_path.len();
    if n == 0 {
        return Err(LiftError::EmptyPath);
    }
    if s < 2 * k {
        return Err(LiftError::SmallBiclique { s, k });
    }
    if n == 1 {
        let q = &cliques.clique(blue_path[0]).vertices;
        if q.len() < 2 * k {
            return Err(LiftError::CliqueTooSmall {
                base: blue_path[0],
                size: q.len(),
                need: 2 * k,
            });
        }
        let mut block: Vec<usize> = q.clone();
        block.sort_unstable();
        block.truncate(2 * k);
        return verified(coloring, Witness { color: Color::Blue, power: k, vertices: block });
    }
    // xs[i] ⊆ B(x_i), ys[i] ⊆ B(x_{i+1}) for the i-th path edge.
    let mut xs = Vec::with_capacity(n - 1);
    let mut ys = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let (x, y) = clique_biclique(coloring, cliques, blue_path[i], blue_path[i + 1], s)
            .ok_or(LiftError::MissingKssWitness(i))?;
        xs.push(x);
        ys.push(y);
    }
    let mut seq = Vec::with_capacity(2 * k * n);
    seq.extend_from_slice(&xs[0][..2 * k]);
    for i in 1..n - 1 {
        // Path position i owns Y_i = ys[i-1] and X_i = xs[i].
        let y_block: Vec<usize> = ys[i - 1][..k].to_vec();
        let x_block: Vec<usize> = xs[i].iter().copied().filter(|v| !y_block.contains(v)).take(k).collect();
        seq.extend_from_slice(&y_block);
        seq.extend_from_slice(&x_block);
    }
    seq.extend_from_slice(&ys[n - 2][..2 * k]);
    verified(coloring, Witness { color: Color::Blue, power: k, vertices: seq })
}

/// Fails if some pair within distance `k` on the path has a blue `K_{s,s}`
/// between its cliques.
pub fn check_red_precondition(
    path: &[usize],
    coloring: &TwoColoring<'_>,
    cliques: &MonoCliqueAssignment,
    s: usize,
    k: usize,
) -> Result<(), LiftError> {
    for i in 0..path.len() {
        for j in i + 1..path.len().min(i + k + 1) {
            if clique_biclique(coloring, cliques, path[i], path[j], s).is_some() {
                return Err(LiftError::PreconditionViolated { i, j });
            }
        }
    }
    Ok(())
}

fn red_witness(coloring: &TwoColoring<'_>, k: usize, vertices: Vec<usize>) -> Result<Witness, LiftError> {
    verified(coloring, Witness { color: Color::Red, power: k, vertices })
}

fn sorted_cliques(path: &[usize], cliques: &MonoCliqueAssignment) -> Result<Vec<Vec<usize>>, LiftError> {
    path.iter()
        .map(|&x| {
            let mut q = cliques.clique(x).vertices.clone();
            if q.is_empty() {
                return Err(LiftError::CliqueTooSmall { base: x, size: 0, need: 1 });
            }
            q.sort_unstable();
            Ok(q)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyLift {
    pub witness: Witness,
    pub steps: u64,
}

/// Left-to-right choice of the smallest compatible representative, with
/// chronological backtracking. `budget` caps candidate tests.
pub fn lift_red_greedy(
    red_path: &[usize],
    coloring: &TwoColoring<'_>,
    cliques: &MonoCliqueAssignment,
    s: usize,
    k: usize,
    budget: u64,
) -> Result<GreedyLift, LiftError> {
    let n = red_path.len();
    if n == 0 {
        return Err(LiftError::EmptyPath);
    }
    check_red_precondition(red_path, coloring, cliques, s, k)?;
    let qs = sorted_cliques(red_path, cliques)?;
    // next[i] is the next candidate index to try at position i.
    let mut next = vec![0usize; n];
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut steps = 0u64;
    while chosen.len() < n {
        let i = chosen.len();
        let mut placed = false;
        while next[i] < qs[i].len() {
            if steps == budget {
                return Err(LiftError::BacktrackBudget { steps });
            }
            steps += 1;
            let y = qs[i][next[i]];
            next[i] += 1;
            let ok = chosen[i.saturating_sub(k)..]
                .iter()
                .all(|&z| coloring.color(z, y) == Some(Color::Red));
            if ok {
                chosen.push(y);
                placed = true;
                break;
            }
        }
        if !placed {
            next[i] = 0;
            if chosen.pop().is_none() {
                return Err(LiftError::NoRepresentatives { steps });
            }
        }
    }
    Ok(GreedyLift {
        witness: red_witness(coloring, k, chosen)?,
        steps,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResampleLift {
    pub witness: Witness,
    pub rounds: u64,
    pub trace: Vec<Violation>,
    /// Largest blue density between two cliques within distance `k`.
    pub max_event_probability: f64,
    /// `4 t^(-1/s)` for the smallest clique size `t` on the path.
    pub event_probability_bound: f64,
}

/// Uniform independent representatives, then repeated resampling of the
/// lowest-indexed blue pair until none is left or `max_rounds` is spent.
pub fn lift_red_resample(
    red_path: &[usize],
    coloring: &TwoColoring<'_>,
    cliques: &MonoCliqueAssignment,
    s: usize,
    k: usize,
    seed: u64,
    max_rounds: u64,
) -> Result<ResampleLift, LiftError> {
    let n = red_path.len();
    if n == 0 {
        return Err(LiftError::EmptyPath);
    }
    check_red_precondition(red_path, coloring, cliques, s, k)?;
    let qs = sorted_cliques(red_path, cliques)?;

    let mut events = Vec::new();
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut max_p = 0f64;
    for i in 0..n {
        for j in i + 1..n.min(i + k + 1) {
            touching[i].push(events.len());
            touching[j].push(events.len());
            events.push((i, j));
            let blue = qs[i]
                .iter()
                .flat_map(|&u| qs[j].iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| coloring.color(u, v) == Some(Color::Blue))
                .count();
            max_p = max_p.max(blue as f64 / (qs[i].len() * qs[j].len()) as f64);
        }
    }
    let t_min = qs.iter().map(Vec::len).min().unwrap_or(1) as f64;
    let bound = 4.0 * t_min.powf(-1.0 / s as f64);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y: Vec<usize> = qs.iter().map(|q| q[rng.gen_range(0..q.len())]).collect();
    let bad = |y: &[usize], e: usize| {
        let (i, j) = events[e];
        coloring.color(y[i], y[j]) != Some(Color::Red)
    };
    let mut violated: BTreeSet<usize> = (0..events.len()).filter(|&e| bad(&y, e)).collect();
    let mut trace = Vec::new();
    let mut rounds = 0u64;
    while let Some(&e) = violated.first() {
        if rounds == max_rounds {
            return Err(LiftError::BudgetExhausted { rounds, trace });
        }
        rounds += 1;
        let (i, j) = events[e];
        if trace.len() < TRACE_LIMIT {
            trace.push(Violation { round: rounds, i, j, y_i: y[i], y_j: y[j] });
        }
        for v in [i, j] {
            y[v] = qs[v][rng.gen_range(0..qs[v].len())];
        }
        for &f in touching[i].iter().chain(&touching[j]) {
            if bad(&y, f) {
                violated.insert(f);
            } else {
                violated.remove(&f);
            }
        }
    }
    Ok(ResampleLift {
        witness: red_witness(coloring, k, y)?,
        rounds,
        trace,
        max_event_probability: max_p,
        event_probability_bound: bound,
    })
}
