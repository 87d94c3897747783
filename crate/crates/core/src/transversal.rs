//! Depth-first search for a transversal path: a path `x_1, ..., x_n` whose
//! `j`th vertex lies in class `A_{((j-1) mod m) + 1}` for `m` disjoint classes.
//!
//! Each class `A_i` is split into unused vertices `U_i`, dead ends `D_i` and
//! the vertices currently on the path. The search restarts from a fresh
//! vertex of `U_1` while every dead set is at most half its class; it extends
//! the path into the smallest adjacent unused vertex of the next class, and
//! otherwise declares the last vertex a dead end and backs up.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("target length must be at least 1")]
    ZeroLength,
    #[error("at least one class is required")]
    NoClasses,
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("vertex {vertex} in class {class} is outside the host")]
    UnknownVertex { class: usize, vertex: usize },
    #[error("vertex {vertex} appears in classes {first} and {second}")]
    Overlap {
        vertex: usize,
        first: usize,
        second: usize,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("event {index}: {message}")]
    Mismatch { index: usize, message: String },
}

#[derive(Clone, Debug)]
pub struct TransversalInstance<'g> {
    host: &'g Graph,
    classes: Vec<Vec<usize>>,
    target_length: usize,
    class_of: Vec<Option<usize>>,
}

impl<'g> TransversalInstance<'g> {
    pub fn new(host: &'g Graph, classes: Vec<Vec<usize>>, target_length: usize) -> Result<Self, InstanceError> {
        if target_length == 0 {
            return Err(InstanceError::ZeroLength);
        }
        if classes.is_empty() {
            return Err(InstanceError::NoClasses);
        }
        let mut class_of = vec![None; host.order()];
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(InstanceError::EmptyClass(i));
            }
            for &v in class {
                if v >= host.order() {
                    return Err(InstanceError::UnknownVertex { class: i, vertex: v });
                }
                if let Some(first) = class_of[v] {
                    return Err(InstanceError::Overlap {
                        vertex: v,
                        first,
                        second: i,
                    });
                }
                class_of[v] = Some(i);
            }
        }
        Ok(Self {
            host,
            classes,
            target_length,
            class_of,
        })
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn target_length(&self) -> usize {
        self.target_length
    }

    /// 0-based class index of 0-based path position `pos`.
    #[inline]
    pub fn class_at(&self, pos: usize) -> usize {
        pos % self.classes.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfsEvent {
    /// Outer-loop restart: `x_1` taken from `U_1`.
    Start(usize),
    /// Path extended by an unused vertex of the next class.
    Extend(usize),
    /// Last path vertex declared a dead end and removed.
    DeadEnd(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsState {
    pub unused: Vec<BTreeSet<usize>>,
    pub dead: Vec<BTreeSet<usize>>,
    pub path: Vec<usize>,
}

impl DfsState {
    pub fn initial(inst: &TransversalInstance<'_>) -> Self {
        Self {
            unused: inst.classes.iter().map(|c| c.iter().copied().collect()).collect(),
            dead: vec![BTreeSet::new(); inst.classes.len()],
            path: Vec::new(),
        }
    }

    /// `U_i`, `D_i` and the path vertices of class `i` partition `A_i`, and
    /// path position `j` holds a vertex of class `j mod m`.
    pub fn invariants_hold(&self, inst: &TransversalInstance<'_>) -> bool {
        let m = inst.classes.len();
        for (pos, &v) in self.path.iter().enumerate() {
            if inst.class_of.get(v).copied().flatten() != Some(inst.class_at(pos)) {
                return false;
            }
        }
        (0..m).all(|i| {
            let on_path: Vec<usize> = self.path.iter().copied().filter(|&v| inst.class_of[v] == Some(i)).collect();
            let total = self.unused[i].len() + self.dead[i].len() + on_path.len();
            let mut union: BTreeSet<usize> = self.unused[i].union(&self.dead[i]).copied().collect();
            union.extend(on_path);
            let class: BTreeSet<usize> = inst.classes[i].iter().copied().collect();
            total == class.len() && union == class
        })
    }

    /// `sum_i (|D_i| - |U_i|)`, which grows by one on every step.
    pub fn progress(&self) -> i64 {
        self.dead
            .iter()
            .zip(&self.unused)
            .map(|(d, u)| d.len() as i64 - u.len() as i64)
            .sum()
    }

    fn guard_holds(&self, inst: &TransversalInstance<'_>) -> bool {
        self.dead
            .iter()
            .zip(&inst.classes)
            .all(|(d, a)| 2 * d.len() <= a.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransversalOutcome {
    Found(Vec<usize>),
    /// Some dead set exceeded half its class before a path was completed.
    Failure(DfsState),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalRun {
    pub outcome: TransversalOutcome,
    pub trace: Vec<DfsEvent>,
}

impl TransversalRun {
    pub fn path(&self) -> Option<&[usize]> {
        match &self.outcome {
            TransversalOutcome::Found(p) => Some(p),
            TransversalOutcome::Failure(_) => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Unused,
    Dead,
    OnPath,
}

pub fn find_transversal_path(inst: &TransversalInstance<'_>) -> TransversalRun {
    let g = inst.host;
    let m = inst.classes.len();
    let n = inst.target_length;
    let mut status = vec![Status::Unused; g.order()];
    let mut unused: Vec<BTreeSet<usize>> = inst.classes.iter().map(|c| c.iter().copied().collect()).collect();
    let mut dead_count = vec![0usize; m];
    let mut path: Vec<usize> = Vec::with_capacity(n);
    let mut trace = Vec::new();

    let guard = |dead_count: &[usize]| (0..m).all(|i| 2 * dead_count[i] <= inst.classes[i].len());

    while guard(&dead_count) {
        // Nonempty: |U_1| >= |A_1| - |D_1| >= |A_1|/2 > 0 with an empty path.
        let x1 = unused[0].pop_first().expect("U_1 nonempty while the guard holds");
        status[x1] = Status::OnPath;
        path.push(x1);
        trace.push(DfsEvent::Start(x1));
        while !path.is_empty() && path.len() < n {
            let last = *path.last().unwrap();
            let next_class = inst.class_at(path.len());
            let ext = g
                .neighbors(last)
                .iter()
                .copied()
                .find(|&u| status[u] == Status::Unused && inst.class_of[u] == Some(next_class));
            match ext {
                Some(u) => {
                    unused[next_class].remove(&u);
                    status[u] = Status::OnPath;
                    path.push(u);
                    trace.push(DfsEvent::Extend(u));
                }
                None => {
                    path.pop();
                    status[last] = Status::Dead;
                    dead_count[inst.class_at(path.len())] += 1;
                    trace.push(DfsEvent::DeadEnd(last));
                }
            }
        }
        if path.len() == n {
            return TransversalRun {
                outcome: TransversalOutcome::Found(path),
                trace,
            };
        }
    }

    let dead = (0..m)
        .map(|i| {
            inst.classes[i]
                .iter()
                .copied()
                .filter(|&v| status[v] == Status::Dead)
                .collect()
        })
        .collect();
    TransversalRun {
        outcome: TransversalOutcome::Failure(DfsState {
            unused,
            dead,
            path,
        }),
        trace,
    }
}

/// Rebuilds every intermediate state from a decision log, starting with the
/// initial state. Each event is validated against the algorithm's rules.
pub fn replay_trace(inst: &TransversalInstance<'_>, log: &[DfsEvent]) -> Result<Vec<DfsState>, ReplayError> {
    let mismatch = |index: usize, message: String| ReplayError::Mismatch { index, message };
    let mut state = DfsState::initial(inst);
    let mut states = vec![state.clone()];
    for (index, &event) in log.iter().enumerate() {
        match event {
            DfsEvent::Start(x) => {
                if !state.path.is_empty() {
                    return Err(mismatch(index, "restart with a nonempty path".into()));
                }
                if !state.guard_holds(inst) {
                    return Err(mismatch(index, "restart after a dead set passed half its class".into()));
                }
                if state.unused[0].first() != Some(&x) {
                    return Err(mismatch(index, format!("{x} is not the least unused vertex of the first class")));
                }
                state.unused[0].remove(&x);
                state.path.push(x);
            }
            DfsEvent::Extend(u) => {
                let Some(&last) = state.path.last() else {
                    return Err(mismatch(index, "extension of an empty path".into()));
                };
                if state.path.len() >= inst.target_length {
                    return Err(mismatch(index, "extension past the target length".into()));
                }
                let class = inst.class_at(state.path.len());
                if !state.unused[class].contains(&u) || !inst.host.has_edge(last, u) {
                    return Err(mismatch(index, format!("{u} is not an unused neighbor of {last} in class {class}")));
                }
                state.unused[class].remove(&u);
                state.path.push(u);
            }
            DfsEvent::DeadEnd(x) => {
                if state.path.last() != Some(&x) {
                    return Err(mismatch(index, format!("{x} is not the last path vertex")));
                }
                state.path.pop();
                let class = inst.class_at(state.path.len());
                state.dead[class].insert(x);
            }
        }
        states.push(state.clone());
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_cycle_alternating() {
        let c6 = Graph::cycle(6);
        let inst = TransversalInstance::new(&c6, vec![vec![0, 2, 4], vec![1, 3, 5]], 6).unwrap();
        let run = find_transversal_path(&inst);
        assert_eq!(run.path(), Some(&[0, 1, 2, 3, 4, 5][..]));
    }

    #[test]
    fn disconnected_classes_fail() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let inst = TransversalInstance::new(&g, vec![vec![0, 1], vec![2, 3]], 2).unwrap();
        let run = find_transversal_path(&inst);
        match &run.outcome {
            TransversalOutcome::Failure(state) => {
                assert!(state.path.is_empty());
                assert!(state.invariants_hold(&inst));
                assert!(state.dead.iter().zip(inst.classes()).any(|(d, a)| 2 * d.len() > a.len()));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn length_one_takes_least_vertex() {
        let g = Graph::empty(5);
        let inst = TransversalInstance::new(&g, vec![vec![4, 2], vec![0]], 1).unwrap();
        assert_eq!(find_transversal_path(&inst).path(), Some(&[2][..]));
    }

    #[test]
    fn instance_validation() {
        let g = Graph::empty(4);
        assert_eq!(
            TransversalInstance::new(&g, vec![vec![0, 1], vec![1]], 2).unwrap_err(),
            InstanceError::Overlap {
                vertex: 1,
                first: 0,
                second: 1
            }
        );
        assert_eq!(
            TransversalInstance::new(&g, vec![vec![0], vec![]], 2).unwrap_err(),
            InstanceError::EmptyClass(1)
        );
        assert_eq!(
            TransversalInstance::new(&g, vec![vec![0]], 0).unwrap_err(),
            InstanceError::ZeroLength
        );
        assert!(matches!(
            TransversalInstance::new(&g, vec![vec![9]], 1),
            Err(InstanceError::UnknownVertex { .. })
        ));
    }

    #[test]
    fn replay_reconstructs_terminal_state() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let inst = TransversalInstance::new(&g, vec![vec![0, 2, 4], vec![1, 3, 5]], 4).unwrap();
        let run = find_transversal_path(&inst);
        let states = replay_trace(&inst, &run.trace).unwrap();
        assert!(states.iter().all(|s| s.invariants_hold(&inst)));
        if let TransversalOutcome::Failure(terminal) = &run.outcome {
            assert_eq!(states.last().unwrap(), terminal);
        } else {
            panic!("no transversal path of length 4 exists");
        }
    }

    #[test]
    fn replay_rejects_forged_logs() {
        let c6 = Graph::cycle(6);
        let inst = TransversalInstance::new(&c6, vec![vec![0, 2, 4], vec![1, 3, 5]], 6).unwrap();
        assert!(replay_trace(&inst, &[DfsEvent::Start(2)]).is_err());
        assert!(replay_trace(&inst, &[DfsEvent::Start(0), DfsEvent::Extend(3)]).is_err());
        assert!(replay_trace(&inst, &[DfsEvent::Extend(1)]).is_err());
        assert!(replay_trace(&inst, &[DfsEvent::Start(0), DfsEvent::DeadEnd(1)]).is_err());
    }
}
