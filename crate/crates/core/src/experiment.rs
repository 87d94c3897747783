//! Seeded campaigns: sample hosts, blow them up, color them adversarially,
//! solve and re-verify, with failing trials dumped for replay.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adversary::{color_with, Adversary, AdversaryError, AdversaryKind};
use crate::blowup::{blowup_edge_count, complete_blowup};
use crate::coloring::{Color, TwoColoring};
use crate::expansion::{certify_expansion_exact, certify_expansion_sampled, ExpansionError, Verdict};
use crate::graph::{graph_power, Graph};
use crate::host::{sample_host, HostError};
use crate::io::{read_coloring, read_graph, write_coloring, write_graph, FormatError};
use crate::ramsey::RamseyTable;
use crate::solve::{solve, Lifter, SolveConfig, SolveReport, Stage, DEFAULT_GREEDY_BUDGET, DEFAULT_MAX_ROUNDS};
use crate::witness::verify_witness;

/// Blown-up graphs above this many edges are refused.
pub const MEMORY_GUARD_EDGES: u128 = 50_000_000;

/// Child seed `label` of `parent`, independent across labels.
pub fn derive_seed(parent: u64, label: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(parent);
    rng.set_stream(label);
    rng.gen()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionCheck {
    None,
    Exact,
    Sampled,
}

fn default_lifter() -> Lifter {
    Lifter::Greedy
}

fn default_expansion() -> ExpansionCheck {
    ExpansionCheck::Sampled
}

fn default_expansion_trials() -> u64 {
    200
}

fn default_host_attempts() -> u32 {
    3
}

fn default_max_rounds() -> u64 {
    DEFAULT_MAX_ROUNDS
}

fn default_greedy_budget() -> u64 {
    DEFAULT_GREEDY_BUDGET
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub k: usize,
    pub n: usize,
    pub s: usize,
    pub t: usize,
    /// Defaults to `r(K_t)` when known.
    #[serde(default)]
    pub cluster_size: Option<usize>,
    /// Rational text such as `"1/9"`; defaults to `1/(3(k+1))`.
    #[serde(default)]
    pub epsilon: Option<String>,
    /// Host order is `a * n`; rational text.
    #[serde(default)]
    pub host_a: Option<String>,
    /// Edge probability `c / n`; rational text.
    #[serde(default)]
    pub host_c: Option<String>,
    /// Retry hosts whose maximum degree exceeds this.
    #[serde(default)]
    pub host_b: Option<usize>,
    /// Fixed host instead of sampling.
    #[serde(default)]
    pub host_file: Option<PathBuf>,
    #[serde(default = "default_host_attempts")]
    pub host_attempts: u32,
    #[serde(default = "default_expansion")]
    pub expansion: ExpansionCheck,
    #[serde(default = "default_expansion_trials")]
    pub expansion_trials: u64,
    pub adversaries: Vec<String>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_lifter")]
    pub lifter: Lifter,
    #[serde(default = "default_max_rounds")]
    pub max_rounds: u64,
    #[serde(default = "default_greedy_budget")]
    pub greedy_budget: u64,
    /// Where failing trials are dumped.
    #[serde(default)]
    pub dump_dir: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("spec parse: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("host: {0}")]
    Host(#[from] HostError),
    #[error("expansion: {0}")]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("i/o on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("blow-up would have {0} edges, above the memory guard")]
    TooLarge(u128),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn rational(field: &str, text: &str) -> Result<BigRational, ExperimentError> {
    text.trim()
        .parse()
        .map_err(|_| ExperimentError::Spec(format!("{field} = '{text}' is not a rational")))
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    fn cluster_size(&self) -> Result<usize, ExperimentError> {
        match self.cluster_size.or_else(|| RamseyTable::exact(self.t)) {
            Some(r) => Ok(r),
            None => Err(ExperimentError::Spec(format!(
                "cluster_size is required for t = {}",
                self.t
            ))),
        }
    }

    /// Configuration passed to the solver, before the per-trial seed.
    pub fn solve_config(&self) -> Result<SolveConfig, ExperimentError> {
        let mut cfg = SolveConfig::desk(self.k, self.n);
        cfg.s = self.s;
        cfg.t = self.t;
        cfg.cluster_size = self.cluster_size()?;
        if let Some(e) = &self.epsilon {
            cfg.epsilon = rational("epsilon", e)?;
        }
        cfg.lifter = self.lifter;
        cfg.max_rounds = self.max_rounds;
        cfg.greedy_budget = self.greedy_budget;
        cfg.validate().map_err(|e| ExperimentError::Spec(e.to_string()))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        self.solve_config()?;
        if self.adversaries.is_empty() || self.trials == 0 {
            return Err(ExperimentError::Spec("need at least one adversary and one trial".into()));
        }
        for a in &self.adversaries {
            AdversaryKind::parse(a)?;
        }
        if self.host_file.is_none() && (self.host_a.is_none() || self.host_c.is_none()) {
            return Err(ExperimentError::Spec("give host_file or both host_a and host_c".into()));
        }
        if self.host_attempts == 0 {
            return Err(ExperimentError::Spec("host_attempts must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub index: usize,
    pub adversary: String,
    pub host_order: usize,
    pub max_degree: usize,
    pub host_attempts: u32,
    pub expansion: Option<Verdict>,
    pub report: SolveReport,
    /// Re-checked by the harness, independently of the solver.
    pub verified: Option<bool>,
    pub dump: Option<PathBuf>,
}

impl TrialRecord {
    pub fn line(&self) -> String {
        let expansion = match self.expansion {
            None => "skipped",
            Some(Verdict::Certified) => "certified",
            Some(Verdict::Falsified) => "falsified",
            Some(Verdict::Unfalsified) => "unfalsified",
        };
        let head = format!(
            "trial {} adversary={} host_order={} max_degree={} host_attempts={} expansion={expansion}",
            self.index, self.adversary, self.host_order, self.max_degree, self.host_attempts
        );
        match (self.report.witness(), self.report.failed_stage()) {
            (Some(w), _) => format!(
                "{head} outcome=witness color={} length={} verified={}",
                w.color,
                w.len(),
                if self.verified == Some(true) { "yes" } else { "NO" }
            ),
            (None, Some(stage)) => format!("{head} outcome=failure stage={}", stage.name()),
            (None, None) => unreachable!("a report has a witness or a failed stage"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignReport {
    pub trials: Vec<TrialRecord>,
}

const STAGES: [Stage; 6] = [
    Stage::Setup,
    Stage::Ramsey,
    Stage::Auxiliary,
    Stage::Dichotomy,
    Stage::Lift,
    Stage::Verify,
];

impl CampaignReport {
    pub fn witnesses(&self) -> usize {
        self.trials.iter().filter(|t| t.report.witness().is_some()).count()
    }

    pub fn witnesses_of(&self, color: Color) -> usize {
        self.trials
            .iter()
            .filter(|t| t.report.witness().is_some_and(|w| w.color == color))
            .count()
    }

    pub fn unverified(&self) -> usize {
        self.trials.iter().filter(|t| t.verified == Some(false)).count()
    }

    pub fn failures_at(&self, stage: Stage) -> usize {
        self.trials
            .iter()
            .filter(|t| t.report.failed_stage() == Some(stage))
            .count()
    }

    /// Process exit status: nonzero iff some emitted witness failed
    /// verification.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.unverified() > 0)
    }
}

impl fmt::Display for CampaignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.trials {
            writeln!(f, "{}", t.line())?;
        }
        writeln!(
            f,
            "summary trials={} witnesses={} blue={} red={} unverified={}",
            self.trials.len(),
            self.witnesses(),
            self.witnesses_of(Color::Blue),
            self.witnesses_of(Color::Red),
            self.unverified()
        )?;
        let failures: Vec<String> = STAGES
            .iter()
            .map(|&s| format!("{}={}", s.name(), self.failures_at(s)))
            .collect();
        writeln!(f, "failures {}", failures.join(" "))
    }
}

struct HostChoice {
    graph: Graph,
    attempts: u32,
    expansion: Option<Verdict>,
}

fn choose_host(spec: &ExperimentSpec, seed: u64, work_bound: u64) -> Result<HostChoice, ExperimentError> {
    let epsilon = spec.solve_config()?.epsilon;
    // Property (1) at level eps * n: disjoint sets of that size must be joined.
    let certify = |g: &Graph, seed: u64| -> Result<Option<Verdict>, ExperimentError> {
        let sigma = (&epsilon * BigRational::from_integer(BigInt::from(spec.n)))
            .ceil()
            .to_integer();
        let sigma = usize::try_from(sigma).unwrap_or(usize::MAX).max(1);
        if spec.expansion == ExpansionCheck::None || 2 * sigma > g.order() {
            return Ok(None);
        }
        let cert = match spec.expansion {
            ExpansionCheck::Exact => certify_expansion_exact(g, sigma, work_bound)?,
            _ => certify_expansion_sampled(g, sigma, spec.expansion_trials, seed)?,
        };
        Ok(Some(cert.verdict))
    };
    if let Some(path) = &spec.host_file {
        let graph = read_graph(path)?;
        let expansion = certify(&graph, derive_seed(seed, 1))?;
        return Ok(HostChoice {
            graph,
            attempts: 1,
            expansion,
        });
    }
    let a = rational("host_a", spec.host_a.as_deref().unwrap_or_default())?;
    let c = rational("host_c", spec.host_c.as_deref().unwrap_or_default())?;
    let mut last = None;
    for attempt in 0..spec.host_attempts {
        let attempt_seed = derive_seed(seed, u64::from(attempt));
        let sample = sample_host(&a, spec.n as u64, &c, derive_seed(attempt_seed, 0))?;
        let expansion = certify(&sample.graph, derive_seed(attempt_seed, 1))?;
        let degree_ok = spec.host_b.is_none_or(|b| sample.max_degree <= b);
        let accepted = degree_ok && expansion != Some(Verdict::Falsified);
        last = Some(HostChoice {
            graph: sample.graph,
            attempts: attempt + 1,
            expansion,
        });
        if accepted {
            break;
        }
    }
    Ok(last.expect("at least one attempt"))
}

/// Files written for a failing trial.
pub const DUMP_HOST: &str = "host.txt";
pub const DUMP_COLORING: &str = "coloring.txt";
pub const DUMP_CONFIG: &str = "solve.toml";
pub const DUMP_REPORT: &str = "report.txt";

fn dump_trial(
    dir: &Path,
    host: &Graph,
    coloring: &TwoColoring<'_>,
    cfg: &SolveConfig,
    report: &SolveReport,
) -> Result<(), ExperimentError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    write_graph(host, dir.join(DUMP_HOST))?;
    write_coloring(coloring, dir.join(DUMP_COLORING))?;
    let cfg_path = dir.join(DUMP_CONFIG);
    fs::write(&cfg_path, toml::to_string(cfg).expect("config serializes")).map_err(io_err(&cfg_path))?;
    let report_path = dir.join(DUMP_REPORT);
    fs::write(&report_path, report.to_string()).map_err(io_err(&report_path))?;
    Ok(())
}

/// Re-solves a dumped trial from its host, coloring and configuration.
pub fn replay_dump(dir: &Path) -> Result<SolveReport, ExperimentError> {
    let host = read_graph(dir.join(DUMP_HOST))?;
    let cfg_path = dir.join(DUMP_CONFIG);
    let cfg_text = fs::read_to_string(&cfg_path).map_err(io_err(&cfg_path))?;
    let cfg: SolveConfig = toml::from_str(&cfg_text)?;
    let (blown, map) = complete_blowup(&graph_power(&host, cfg.k), cfg.cluster_size);
    let coloring = read_coloring(dir.join(DUMP_COLORING), &blown)?;
    Ok(solve(&host, &blown, &map, &coloring, &cfg))
}

/// Runs trial `index` of adversary `adv_index`; seeds depend only on these
/// indices and the master seed.
pub fn run_trial(
    spec: &ExperimentSpec,
    adv_index: usize,
    trial: usize,
    work_bound: u64,
) -> Result<TrialRecord, ExperimentError> {
    let index = adv_index * spec.trials + trial;
    let trial_seed = derive_seed(derive_seed(spec.seed, adv_index as u64), trial as u64);
    let host = choose_host(spec, derive_seed(trial_seed, 0), work_bound)?;
    let mut cfg = spec.solve_config()?;
    cfg.seed = derive_seed(trial_seed, 3);
    let power = graph_power(&host.graph, spec.k);
    let predicted = blowup_edge_count(&power, cfg.cluster_size) as u128;
    if predicted > MEMORY_GUARD_EDGES {
        return Err(ExperimentError::TooLarge(predicted));
    }
    let (blown, map) = complete_blowup(&power, cfg.cluster_size);
    let adversary = Adversary {
        kind: AdversaryKind::parse(&spec.adversaries[adv_index])?,
        seed: derive_seed(trial_seed, 2),
    };
    let coloring = color_with(&adversary, &blown, Some(&map))?;
    let report = solve(&host.graph, &blown, &map, &coloring, &cfg);
    let verified = report.witness().map(|w| verify_witness(&blown, &coloring, w));
    let mut dump = None;
    if let (None, Some(root)) = (report.witness(), &spec.dump_dir) {
        let dir = root.join(format!("trial-{index:04}"));
        dump_trial(&dir, &host.graph, &coloring, &cfg, &report)?;
        dump = Some(dir);
    }
    Ok(TrialRecord {
        index,
        adversary: adversary.kind.to_string(),
        host_order: host.graph.order(),
        max_degree: host.graph.max_degree(),
        host_attempts: host.attempts,
        expansion: host.expansion,
        report,
        verified,
        dump,
    })
}

/// All trials, ordered by adversary then trial index.
pub fn run_experiment(spec: &ExperimentSpec, work_bound: u64) -> Result<CampaignReport, ExperimentError> {
    spec.validate()?;
    let mut trials = Vec::with_capacity(spec.adversaries.len() * spec.trials);
    for adv_index in 0..spec.adversaries.len() {
        for trial in 0..spec.trials {
            trials.push(run_trial(spec, adv_index, trial, work_bound)?);
        }
    }
    Ok(CampaignReport { trials })
}

/// Realized edge count of a blow-up of `host^k` against the degree-sum bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBudget {
    pub k: usize,
    pub n: usize,
    pub host_order: usize,
    pub degree_bound: usize,
    pub cluster_size: usize,
    pub power_edges: usize,
    pub realized: u128,
    /// `r^2 * order * (b + b^2 + ... + b^k) / 2 + order * r(r-1)/2`.
    pub bound: u128,
}

impl EdgeBudget {
    pub fn holds(&self) -> bool {
        self.realized <= self.bound
    }
}

/// `degree_bound` defaults to the host's maximum degree.
pub fn edge_budget_report(host: &Graph, k: usize, n: usize, cluster_size: usize, degree_bound: Option<usize>) -> EdgeBudget {
    let b = degree_bound.unwrap_or_else(|| host.max_degree()) as u128;
    let r = cluster_size as u128;
    let order = host.order() as u128;
    let mut power_sum = 0u128;
    let mut term = 1u128;
    for _ in 0..k {
        term = term.saturating_mul(b);
        power_sum = power_sum.saturating_add(term);
    }
    let power = graph_power(host, k);
    EdgeBudget {
        k,
        n,
        host_order: host.order(),
        degree_bound: b as usize,
        cluster_size,
        power_edges: power.edge_count(),
        realized: blowup_edge_count(&power, cluster_size) as u128,
        bound: (r * r).saturating_mul(order.saturating_mul(power_sum) / 2) + order * r * (r.saturating_sub(1)) / 2,
    }
}

impl fmt::Display for EdgeBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "edge-budget")?;
        writeln!(
            f,
            "k {} n {} host_order {} degree_bound {} cluster_size {}",
            self.k, self.n, self.host_order, self.degree_bound, self.cluster_size
        )?;
        writeln!(f, "power_edges {}", self.power_edges)?;
        writeln!(f, "realized {}", self.realized)?;
        writeln!(f, "bound {}", self.bound)?;
        writeln!(f, "bound_per_n {}", BigRational::new(BigInt::from(self.bound), BigInt::from(self.n.max(1))))?;
        writeln!(f, "holds {}", self.holds())
    }
}
