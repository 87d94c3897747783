//! End-to-end search for a monochromatic `P^k` in a colored blow-up of
//! `H^k`: choose one monochromatic clique per cluster, color `F^k` by blue
//! bicliques, split into the blue-path and red-power-path cases, and lift.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::auxiliary::auxiliary_coloring;
use crate::blowup::{blowup_edge_count, BlowupMap};
use crate::coloring::{Color, CompleteColoring, TwoColoring};
use crate::cover::{cover_search, CoverError, CoverStrategy, PartitionCover};
use crate::graph::{graph_power, Graph};
use crate::lift::{lift_blue, lift_red_greedy, lift_red_resample, LiftError};
use crate::ramsey::{find_clique_of_color, MonoClique, MonoCliqueAssignment, RamseyTable};
use crate::transversal::{find_transversal_path, InstanceError, TransversalInstance, TransversalOutcome};
use crate::witness::{verify_witness, Witness};

pub const DEFAULT_MAX_ROUNDS: u64 = 1_000_000;
pub const DEFAULT_GREEDY_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lifter {
    Greedy,
    Resample,
}

impl Lifter {
    pub fn name(self) -> &'static str {
        match self {
            Lifter::Greedy => "greedy",
            Lifter::Resample => "resample",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "greedy" => Some(Lifter::Greedy),
            "resample" => Some(Lifter::Resample),
            _ => None,
        }
    }
}

mod rational_text {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        text.trim().parse().map_err(|_| D::Error::custom(format!("bad rational '{text}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub k: usize,
    /// Target base path length.
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub cluster_size: usize,
    #[serde(with = "rational_text")]
    pub epsilon: BigRational,
    pub lifter: Lifter,
    pub seed: u64,
    pub max_rounds: u64,
    pub greedy_budget: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{0} must be at least 1")]
    Zero(&'static str),
    #[error("cluster size {cluster_size} is below t = {t}")]
    ClusterBelowT { cluster_size: usize, t: usize },
    #[error("epsilon must lie in (0, 1)")]
    Epsilon,
}

impl SolveConfig {
    /// Reachable parameters: `t = 3`, cluster size `r(K_3) = 6`, `s = 2`,
    /// `epsilon = 1/(3(k+1))`.
    pub fn desk(k: usize, n: usize) -> Self {
        Self {
            k,
            n,
            s: 2,
            t: 3,
            cluster_size: 6,
            epsilon: BigRational::new(BigInt::one(), BigInt::from(3 * (k + 1))),
            lifter: Lifter::Greedy,
            seed: 0,
            max_rounds: DEFAULT_MAX_ROUNDS,
            greedy_budget: DEFAULT_GREEDY_BUDGET,
        }
    }

    /// Errors on invalid values; returns warnings for stages that are bound to
    /// fail with these parameters.
    pub fn validate(&self) -> Result<Vec<String>, ConfigError> {
        for (name, v) in [("k", self.k), ("n", self.n), ("s", self.s), ("t", self.t)] {
            if v == 0 {
                return Err(ConfigError::Zero(name));
            }
        }
        if self.cluster_size < self.t {
            return Err(ConfigError::ClusterBelowT {
                cluster_size: self.cluster_size,
                t: self.t,
            });
        }
        if self.epsilon <= BigRational::zero() || self.epsilon >= BigRational::one() {
            return Err(ConfigError::Epsilon);
        }
        let mut warnings = Vec::new();
        if let Some(r) = RamseyTable::exact(self.t) {
            if self.cluster_size < r {
                warnings.push(format!(
                    "cluster size {} is below r(K_{}) = {r}; the Ramsey step may fail",
                    self.cluster_size, self.t
                ));
            }
        }
        if self.s < 2 * self.k || self.t < 2 * self.k {
            warnings.push(format!(
                "s = {} and t = {} do not reach 2k = {}; a blue case cannot be lifted",
                self.s,
                self.t,
                2 * self.k
            ));
        }
        Ok(warnings)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SideError {
    #[error("cluster {0} is not a clique of the blow-up")]
    ClusterNotClique(usize),
    #[error("cluster {0} contains no monochromatic K_t")]
    RamseyStepFailed(usize),
}

/// Clique choice after the color roles are fixed so that `W` is blue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajoritySide {
    /// Cliques in working colors (original colors exchanged when `swapped`).
    pub cliques: MonoCliqueAssignment,
    pub swapped: bool,
    /// Clusters containing a blue, respectively red, `K_t` in original colors.
    pub blue_clusters: usize,
    pub red_clusters: usize,
    /// Base vertices whose chosen clique is blue in working colors.
    pub w: Vec<usize>,
}

pub fn select_majority_side(map: &BlowupMap, coloring: &TwoColoring<'_>, t: usize) -> Result<MajoritySide, SideError> {
    let mut found = Vec::with_capacity(map.base_order());
    for v in 0..map.base_order() {
        let members: Vec<usize> = map.members_of(v).collect();
        let dense = coloring
            .restrict_to_clique(&members)
            .map_err(|_| SideError::ClusterNotClique(v))?;
        let lift = |q: Option<Vec<usize>>| q.map(|q| q.into_iter().map(|i| members[i]).collect::<Vec<_>>());
        let blue = lift(find_clique_of_color(&dense, Color::Blue, t));
        let red = lift(find_clique_of_color(&dense, Color::Red, t));
        if blue.is_none() && red.is_none() {
            return Err(SideError::RamseyStepFailed(v));
        }
        found.push((blue, red));
    }
    let blue_clusters = found.iter().filter(|(b, _)| b.is_some()).count();
    let red_clusters = found.iter().filter(|(_, r)| r.is_some()).count();
    let majority = match blue_clusters.cmp(&red_clusters) {
        std::cmp::Ordering::Greater => Color::Blue,
        std::cmp::Ordering::Less => Color::Red,
        std::cmp::Ordering::Equal => {
            if coloring.count(Color::Red) > coloring.count(Color::Blue) {
                Color::Red
            } else {
                Color::Blue
            }
        }
    };
    let swapped = majority == Color::Red;
    let cliques = found
        .into_iter()
        .map(|(blue, red)| {
            let (preferred, fallback) = if swapped { (red, blue) } else { (blue, red) };
            match preferred {
                Some(vertices) => MonoClique { vertices, color: Color::Blue },
                None => MonoClique {
                    vertices: fallback.expect("one color was found"),
                    color: Color::Red,
                },
            }
        })
        .collect();
    let cliques = MonoCliqueAssignment { cliques };
    let w = cliques.with_color(Color::Blue);
    Ok(MajoritySide {
        cliques,
        swapped,
        blue_clusters,
        red_clusters,
        w,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    Cover(CoverError),
    SmallClass { sizes: Vec<usize>, threshold: usize },
    Instance(InstanceError),
    NoTransversal { unused: Vec<usize>, dead: Vec<usize>, path: usize },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::Cover(e) => write!(f, "cover: {e}"),
            Infeasibility::SmallClass { sizes, threshold } => {
                write!(f, "class sizes {} below threshold {threshold}", join(sizes))
            }
            Infeasibility::Instance(e) => write!(f, "transversal instance: {e}"),
            Infeasibility::NoTransversal { unused, dead, path } => write!(
                f,
                "no transversal path: unused {} dead {} path {path}",
                join(unused),
                join(dead)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    /// `n` vertices of `F`, consecutive pairs blue under the auxiliary coloring.
    BluePath(Vec<usize>),
    /// `n` vertices of `F`, pairs within distance `k` red or absent in `F^k`.
    RedPowerPath(Vec<usize>),
    Infeasible(Infeasibility),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    pub outcome: Dichotomy,
    pub cover: Option<(PartitionCover, CoverStrategy)>,
    pub threshold: usize,
}

/// Smallest integer at least `x`, for `x >= 0`.
fn ceil_usize(x: &BigRational) -> usize {
    let c = x.ceil().to_integer();
    usize::try_from(c).unwrap_or(usize::MAX)
}

/// Blue path or red power path in `F^k` under `chi_prime`, following the
/// cover-then-transversal argument. `chi_prime` colors `graph_power(f, k)`.
pub fn claim_dichotomy(
    f: &Graph,
    k: usize,
    n: usize,
    chi_prime: &TwoColoring<'_>,
    epsilon: &BigRational,
    a: &BigRational,
) -> DichotomyReport {
    let threshold = ceil_usize(&(epsilon * a * BigRational::from_integer(BigInt::from(n))));
    let completed = CompleteColoring::completed(chi_prime, Color::Red);
    let (cover, strategy) = match cover_search(&completed, k) {
        Ok(found) => found,
        Err(e) => {
            return DichotomyReport {
                outcome: Dichotomy::Infeasible(Infeasibility::Cover(e)),
                cover: None,
                threshold,
            }
        }
    };
    let outcome = if let Some(path) = cover.blue_paths.iter().find(|p| p.len() >= n) {
        Dichotomy::BluePath(path[..n].to_vec())
    } else if cover.min_class() < threshold {
        Dichotomy::Infeasible(Infeasibility::SmallClass {
            sizes: cover.class_sizes(),
            threshold,
        })
    } else {
        match TransversalInstance::new(f, cover.classes.clone(), n) {
            Err(e) => Dichotomy::Infeasible(Infeasibility::Instance(e)),
            Ok(inst) => match find_transversal_path(&inst).outcome {
                TransversalOutcome::Found(path) => Dichotomy::RedPowerPath(path),
                TransversalOutcome::Failure(state) => Dichotomy::Infeasible(Infeasibility::NoTransversal {
                    unused: state.unused.iter().map(|u| u.len()).collect(),
                    dead: state.dead.iter().map(|d| d.len()).collect(),
                    path: state.path.len(),
                }),
            },
        }
    };
    DichotomyReport {
        outcome,
        cover: Some((cover, strategy)),
        threshold,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Setup,
    Ramsey,
    Auxiliary,
    Dichotomy,
    Lift,
    Verify,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Setup => "setup",
            Stage::Ramsey => "ramsey",
            Stage::Auxiliary => "auxiliary",
            Stage::Dichotomy => "dichotomy",
            Stage::Lift => "lift",
            Stage::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Witness(Witness),
    StageFailure { stage: Stage, diagnostics: String },
}

/// One line per completed stage, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveLog {
    pub warnings: Vec<String>,
    pub lines: Vec<(Stage, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub config: SolveConfig,
    pub log: SolveLog,
    pub outcome: SolveOutcome,
}

impl SolveReport {
    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            SolveOutcome::Witness(w) => Some(w),
            SolveOutcome::StageFailure { .. } => None,
        }
    }

    pub fn failed_stage(&self) -> Option<Stage> {
        match &self.outcome {
            SolveOutcome::Witness(_) => None,
            SolveOutcome::StageFailure { stage, .. } => Some(*stage),
        }
    }
}

fn join(xs: &[usize]) -> String {
    if xs.is_empty() {
        return "-".into();
    }
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "solve-report")?;
        writeln!(
            f,
            "config k={} n={} s={} t={} cluster_size={} epsilon={} lifter={} seed={}",
            c.k,
            c.n,
            c.s,
            c.t,
            c.cluster_size,
            c.epsilon,
            c.lifter.name(),
            c.seed
        )?;
        for w in &self.log.warnings {
            writeln!(f, "warning {w}")?;
        }
        for (stage, line) in &self.log.lines {
            writeln!(f, "stage {} ok {line}", stage.name())?;
        }
        match &self.outcome {
            SolveOutcome::Witness(w) => writeln!(
                f,
                "outcome witness color={} power={} length={}",
                w.color,
                w.power,
                w.len()
            ),
            SolveOutcome::StageFailure { stage, diagnostics } => {
                writeln!(f, "stage {} failed {diagnostics}", stage.name())?;
                writeln!(f, "outcome failure stage={}", stage.name())
            }
        }
    }
}

/// Runs the whole pipeline. `blown` must be the complete blow-up of
/// `graph_power(host, cfg.k)` with clusters as in `map`, and `coloring` must
/// color `blown`. A returned witness is in original colors and verified.
pub fn solve(
    host: &Graph,
    blown: &Graph,
    map: &BlowupMap,
    coloring: &TwoColoring<'_>,
    cfg: &SolveConfig,
) -> SolveReport {
    let mut log = SolveLog::default();
    let outcome = match run(host, blown, map, coloring, cfg, &mut log) {
        Ok(w) => SolveOutcome::Witness(w),
        Err((stage, diagnostics)) => SolveOutcome::StageFailure { stage, diagnostics },
    };
    SolveReport {
        config: cfg.clone(),
        log,
        outcome,
    }
}

type StageResult<T> = Result<T, (Stage, String)>;

fn run(
    host: &Graph,
    blown: &Graph,
    map: &BlowupMap,
    coloring: &TwoColoring<'_>,
    cfg: &SolveConfig,
    log: &mut SolveLog,
) -> StageResult<Witness> {
    let setup = |msg: String| (Stage::Setup, msg);
    log.warnings = cfg.validate().map_err(|e| setup(e.to_string()))?;
    if map.base_order() != host.order() || map.cluster_size() != cfg.cluster_size {
        return Err(setup(format!(
            "blow-up map has {} clusters of size {}, expected {} of size {}",
            map.base_order(),
            map.cluster_size(),
            host.order(),
            cfg.cluster_size
        )));
    }
    if blown.order() != map.blown_order() {
        return Err(setup("blown graph order does not match the map".into()));
    }
    if !std::ptr::eq(coloring.host(), blown) && coloring.host() != blown {
        return Err(setup("coloring is not on the blown graph".into()));
    }
    let host_power = graph_power(host, cfg.k);
    if blown.edge_count() != blowup_edge_count(&host_power, cfg.cluster_size) {
        return Err(setup("blown graph is not the blow-up of the host power".into()));
    }
    log.lines.push((
        Stage::Setup,
        format!(
            "host_order={} host_edges={} power_edges={} blown_order={} blown_edges={}",
            host.order(),
            host.edge_count(),
            host_power.edge_count(),
            blown.order(),
            blown.edge_count()
        ),
    ));

    let side = select_majority_side(map, coloring, cfg.t).map_err(|e| (Stage::Ramsey, e.to_string()))?;
    let working = if side.swapped { coloring.swapped() } else { coloring.clone() };
    log.lines.push((
        Stage::Ramsey,
        format!(
            "blue_clusters={} red_clusters={} swapped={} w={}",
            side.blue_clusters,
            side.red_clusters,
            side.swapped,
            side.w.len()
        ),
    ));

    let f = host.induced_subgraph(&side.w);
    let f_power = graph_power(&f, cfg.k);
    let chi = auxiliary_coloring(&f_power, &side.w, &working, &side.cliques, cfg.s)
        .map_err(|e| (Stage::Auxiliary, e.to_string()))?;
    log.lines.push((
        Stage::Auxiliary,
        format!(
            "f_order={} f_edges={} f_power_edges={} blue={} red={}",
            f.order(),
            f.edge_count(),
            f_power.edge_count(),
            chi.count(Color::Blue),
            chi.count(Color::Red)
        ),
    ));

    let a = BigRational::new(BigInt::from(host.order()), BigInt::from(cfg.n));
    let dich = claim_dichotomy(&f, cfg.k, cfg.n, &chi, &cfg.epsilon, &a);
    let cover_text = match &dich.cover {
        Some((cover, strategy)) => format!(
            "cover={} paths={} classes={}",
            match strategy {
                CoverStrategy::Heuristic => "heuristic",
                CoverStrategy::Exhaustive => "exhaustive",
            },
            join(&cover.blue_paths.iter().map(Vec::len).collect::<Vec<_>>()),
            join(&cover.class_sizes())
        ),
        None => "cover=none".into(),
    };
    let to_base = |p: &[usize]| p.iter().map(|&v| side.w[v]).collect::<Vec<_>>();
    let (case, path) = match &dich.outcome {
        Dichotomy::BluePath(p) => (Color::Blue, to_base(p)),
        Dichotomy::RedPowerPath(p) => (Color::Red, to_base(p)),
        Dichotomy::Infeasible(why) => {
            return Err((Stage::Dichotomy, format!("{cover_text} threshold={} {why}", dich.threshold)));
        }
    };
    log.lines.push((
        Stage::Dichotomy,
        format!(
            "{cover_text} threshold={} case={}",
            dich.threshold,
            if case == Color::Blue { "blue-path" } else { "red-power-path" }
        ),
    ));

    let lift_err = |e: LiftError| (Stage::Lift, e.to_string());
    let witness = match case {
        Color::Blue => {
            let w = lift_blue(&path, &working, &side.cliques, cfg.s, cfg.k).map_err(lift_err)?;
            log.lines.push((Stage::Lift, format!("case=blue length={}", w.len())));
            w
        }
        Color::Red => match cfg.lifter {
            Lifter::Greedy => {
                let g = lift_red_greedy(&path, &working, &side.cliques, cfg.s, cfg.k, cfg.greedy_budget)
                    .map_err(lift_err)?;
                log.lines.push((Stage::Lift, format!("case=red lifter=greedy steps={}", g.steps)));
                g.witness
            }
            Lifter::Resample => {
                let r = lift_red_resample(
                    &path,
                    &working,
                    &side.cliques,
                    cfg.s,
                    cfg.k,
                    cfg.seed,
                    cfg.max_rounds,
                )
                .map_err(lift_err)?;
                log.lines.push((
                    Stage::Lift,
                    format!(
                        "case=red lifter=resample rounds={} max_event_probability={:.6} bound={:.6}",
                        r.rounds, r.max_event_probability, r.event_probability_bound
                    ),
                ));
                r.witness
            }
        },
    };

    let witness = if side.swapped {
        let c = witness.color.other();
        witness.recolored(c)
    } else {
        witness
    };
    if !verify_witness(blown, coloring, &witness) {
        return Err((Stage::Verify, "witness failed verification".into()));
    }
    log.lines.push((Stage::Verify, format!("color={} length={}", witness.color, witness.len())));
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::complete_blowup;

    fn instance(host: &Graph, k: usize, r: usize) -> (Graph, BlowupMap) {
        complete_blowup(&graph_power(host, k), r)
    }

    #[test]
    fn all_blue_gives_blue_witness_of_length_2kn() {
        let host = Graph::path(8);
        let mut cfg = SolveConfig::desk(1, 4);
        cfg.epsilon = BigRational::new(BigInt::from(1), BigInt::from(100));
        let (blown, map) = instance(&host, 1, 6);
        let c = TwoColoring::uniform(&blown, Color::Blue);
        let report = solve(&host, &blown, &map, &c, &cfg);
        let w = report.witness().unwrap_or_else(|| panic!("{report}"));
        assert_eq!(w.color, Color::Blue);
        assert_eq!(w.len(), 2 * cfg.k * cfg.n);
        assert!(verify_witness(&blown, &c, w));
    }

    #[test]
    fn all_red_reports_red_after_swap() {
        let host = Graph::path(8);
        let mut cfg = SolveConfig::desk(1, 4);
        cfg.epsilon = BigRational::new(BigInt::from(1), BigInt::from(100));
        let (blown, map) = instance(&host, 1, 6);
        let c = TwoColoring::uniform(&blown, Color::Red);
        let report = solve(&host, &blown, &map, &c, &cfg);
        let w = report.witness().unwrap();
        assert_eq!(w.color, Color::Red);
        assert!(report.to_string().contains("swapped=true"));
        assert!(verify_witness(&blown, &c, w));
    }

    #[test]
    fn majority_side_counts() {
        let host = Graph::empty(3);
        let (blown, map) = instance(&host, 1, 6);
        let c = TwoColoring::uniform(&blown, Color::Red);
        let side = select_majority_side(&map, &c, 3).unwrap();
        assert!(side.swapped);
        assert_eq!(side.w, vec![0, 1, 2]);
        assert_eq!((side.blue_clusters, side.red_clusters), (0, 3));
        // The pentagon inside a 5-cluster has no mono triangle.
        let (blown5, map5) = instance(&host, 1, 5);
        let c5 = TwoColoring::from_fn(&blown5, |u, v| {
            let d = (v % 5 + 5 - u % 5) % 5;
            if d == 1 || d == 4 {
                Color::Red
            } else {
                Color::Blue
            }
        });
        assert_eq!(select_majority_side(&map5, &c5, 3), Err(SideError::RamseyStepFailed(0)));
    }

    #[test]
    fn red_power_path_from_all_red_auxiliary() {
        let f = Graph::complete(12);
        let fk = graph_power(&f, 2);
        let chi = TwoColoring::uniform(&fk, Color::Red);
        let eps = BigRational::new(BigInt::from(1), BigInt::from(9));
        let a = BigRational::new(BigInt::from(12), BigInt::from(4));
        let rep = claim_dichotomy(&f, 2, 4, &chi, &eps, &a);
        match rep.outcome {
            Dichotomy::RedPowerPath(p) => {
                assert_eq!(p.len(), 4);
                for w in p.windows(2) {
                    assert!(f.has_edge(w[0], w[1]));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_f_is_infeasible() {
        let f = Graph::path(3);
        let fk = graph_power(&f, 1);
        let chi = TwoColoring::uniform(&fk, Color::Red);
        let eps = BigRational::new(BigInt::from(1), BigInt::from(6));
        let a = BigRational::new(BigInt::from(60), BigInt::from(10));
        let rep = claim_dichotomy(&f, 1, 10, &chi, &eps, &a);
        assert!(matches!(rep.outcome, Dichotomy::Infeasible(Infeasibility::SmallClass { .. })));
    }

    #[test]
    fn config_round_trips_through_toml() {
        let cfg = SolveConfig::desk(2, 10);
        let text = toml::to_string(&cfg).unwrap();
        assert!(text.contains("epsilon = \"1/9\""));
        let back: SolveConfig = toml::from_str(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(cfg.validate().unwrap().len(), 1);
    }
}
