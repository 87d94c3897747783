use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use pathpower::adversary::{color_with, Adversary, AdversaryKind};
use pathpower::biclique::{has_blue_kss, kst_bound_holds};
use pathpower::blowup::BlowupMap;
use pathpower::constants::paper_constants;
use pathpower::cover::{cover_search, verify_cover, CoverStrategy};
use pathpower::expansion::{certify_expansion_exact, certify_expansion_sampled, DEFAULT_WORK_BOUND};
use pathpower::experiment::{edge_budget_report, replay_dump, run_experiment, ExperimentSpec, DUMP_REPORT};
use pathpower::host::sample_host;
use pathpower::io::{
    format_coloring, format_cover, format_graph, format_trace, format_witness, parse_complete_coloring,
    read_classes, read_coloring, read_graph, read_witness,
};
use pathpower::ramsey::find_mono_clique_dense;
use pathpower::solve::{solve, Lifter, SolveConfig};
use pathpower::transversal::{find_transversal_path, replay_trace, TransversalInstance, TransversalOutcome};
use pathpower::{complete_blowup, graph_power, verify_witness, BipartiteColoring, CompleteColoring, Graph, TwoColoring};

/// Overrides the exact expansion work bound.
const WORK_BOUND_ENV: &str = "PATHPOWER_WORK_BOUND";

#[derive(Parser)]
#[command(name = "pathpower", version, about = "Monochromatic path powers in blown-up expander hosts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LifterArg {
    Greedy,
    Resample,
}

impl From<LifterArg> for Lifter {
    fn from(value: LifterArg) -> Self {
        match value {
            LifterArg::Greedy => Lifter::Greedy,
            LifterArg::Resample => Lifter::Resample,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a host graph on a*n vertices with maximum-degree pruning.
    GenHost {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long)]
        n: u64,
        /// Host order factor; defaults to the derived constant.
        #[arg(long)]
        a: Option<BigRational>,
        /// Edge probability numerator c in c/n; defaults to the derived constant.
        #[arg(long)]
        c: Option<BigRational>,
        #[arg(long)]
        epsilon: Option<BigRational>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Certify or falsify the expansion property at level sigma.
    Certify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with = "epsilon")]
        sigma: Option<usize>,
        /// sigma = ceil(epsilon * n).
        #[arg(long, requires = "n")]
        epsilon: Option<BigRational>,
        /// Target path length; the host has order a*n.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        work_bound: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k-th power of a graph.
    Power {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Complete blow-up of a graph (or of its power) with cliques of the given size.
    Blowup {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cluster_size: usize,
        /// Blow up the power of the graph instead.
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Also report the edge budget for this target length.
        #[arg(long)]
        budget_n: Option<usize>,
        /// Degree bound for the budget; defaults to the maximum degree.
        #[arg(long)]
        budget_b: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monochromatic K_t in a coloring of a complete graph.
    FindClique {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// At most k blue paths plus k+1 classes with red cross pairs.
    Cover {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the biclique edge bound on a balanced bipartite graph (sides 0..t and t..2t).
    KstCheck {
        #[arg(long)]
        bipartite: PathBuf,
        #[arg(long)]
        s: usize,
    },
    /// Transversal path through cyclically ordered classes.
    EmbedPath {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        classes: PathBuf,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color a graph with an adversary.
    Color {
        #[arg(long)]
        graph: PathBuf,
        /// uniform, all-blue, all-red, cluster-parity, anti-clique or replay:<file>.
        #[arg(long)]
        adversary: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Treat consecutive blocks of this many vertices as clusters.
        #[arg(long)]
        cluster_size: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the full pipeline on a colored blow-up of host^k.
    Solve {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        cluster_size: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long)]
        epsilon: Option<BigRational>,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, value_enum, default_value_t = LifterArg::Greedy)]
        lifter: LifterArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_rounds: Option<u64>,
        #[arg(long)]
        greedy_budget: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Independently check a witness against a coloring.
    Verify {
        /// Graph the coloring is on.
        #[arg(long, required_unless_present = "host")]
        graph: Option<PathBuf>,
        /// Alternatively, the host whose power is blown up.
        #[arg(long, requires_all = ["k", "cluster_size"])]
        host: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        cluster_size: Option<usize>,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Print the derived constants for k.
    Constants {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        epsilon: Option<BigRational>,
        #[arg(long)]
        a: Option<BigRational>,
    },
    /// Run a seeded campaign from a TOML spec, or replay a dumped trial.
    Experiment {
        #[arg(long, required_unless_present = "replay")]
        spec: Option<PathBuf>,
        /// Directory of a dumped failing trial.
        #[arg(long, conflicts_with = "spec")]
        replay: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    print!("{text}");
    match out {
        Some(path) => write(path, text),
        None => Ok(()),
    }
}

fn work_bound(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(WORK_BOUND_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{WORK_BOUND_ENV}={v}")),
        Err(_) => Ok(DEFAULT_WORK_BOUND),
    }
}

fn ceil_times(eps: &BigRational, n: usize) -> usize {
    let x = (eps * BigRational::from_integer(n.into())).ceil().to_integer();
    usize::try_from(x).unwrap_or(usize::MAX)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn blown_from_host(host: &Graph, k: usize, cluster_size: usize) -> (Graph, BlowupMap) {
    complete_blowup(&graph_power(host, k), cluster_size)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GenHost {
            k,
            n,
            a,
            c,
            epsilon,
            seed,
            out,
        } => {
            let (a, c) = match (a, c) {
                (Some(a), Some(c)) => (a, c),
                (a, c) => {
                    let pc = paper_constants(k, epsilon, a.clone())?;
                    (a.unwrap_or(pc.a), c.unwrap_or(pc.c))
                }
            };
            let sample = sample_host(&a, n, &c, seed)?;
            write(&out, &format_graph(&sample.graph))?;
            println!(
                "host order {} edges {} max_degree {} sampled_order {} sampled_edges {}",
                sample.graph.order(),
                sample.graph.edge_count(),
                sample.max_degree,
                sample.sampled.order(),
                sample.sampled.edge_count()
            );
        }
        Command::Certify {
            graph,
            sigma,
            epsilon,
            n,
            mode,
            trials,
            seed,
            work_bound: bound,
            out,
        } => {
            let g = read_graph(&graph)?;
            let sigma = match (sigma, epsilon, n) {
                (Some(s), _, _) => s,
                (None, Some(e), Some(n)) => ceil_times(&e, n),
                _ => bail!("give --sigma, or --epsilon with --n"),
            };
            let cert = match mode {
                ModeArg::Exact => certify_expansion_exact(&g, sigma, work_bound(bound)?)?,
                ModeArg::Sampled => certify_expansion_sampled(&g, sigma, trials, seed)?,
            };
            emit(&cert.to_string(), out.as_deref())?;
        }
        Command::Power { graph, k, out } => {
            let p = graph_power(&read_graph(&graph)?, k);
            write(&out, &format_graph(&p))?;
            println!("power order {} edges {}", p.order(), p.edge_count());
        }
        Command::Blowup {
            graph,
            cluster_size,
            power,
            budget_n,
            budget_b,
            out,
        } => {
            let g = read_graph(&graph)?;
            let (blown, map) = blown_from_host(&g, power, cluster_size);
            if let Some(path) = &out {
                write(path, &format_graph(&blown))?;
            }
            println!(
                "blowup clusters {} cluster_size {} order {} edges {}",
                map.base_order(),
                map.cluster_size(),
                blown.order(),
                blown.edge_count()
            );
            if let Some(n) = budget_n {
                print!("{}", edge_budget_report(&g, power, n, cluster_size, budget_b));
            }
        }
        Command::FindClique { coloring, t } => {
            let text = fs::read_to_string(&coloring).with_context(|| coloring.display().to_string())?;
            let (host, colors) = parse_complete_coloring(&text)?;
            let c = TwoColoring::new(&host, colors)?;
            match find_mono_clique_dense(&CompleteColoring::from_two_coloring(&c)?, t) {
                Some(q) => println!("clique {} {}", q.color, join(&q.vertices)),
                None => println!("none"),
            }
        }
        Command::Cover { coloring, k, out } => {
            let text = fs::read_to_string(&coloring).with_context(|| coloring.display().to_string())?;
            let (host, colors) = parse_complete_coloring(&text)?;
            let c = CompleteColoring::from_two_coloring(&TwoColoring::new(&host, colors)?)?;
            let (cover, strategy) = cover_search(&c, k)?;
            debug_assert!(verify_cover(&c, k, &cover));
            let strategy = match strategy {
                CoverStrategy::Heuristic => "heuristic",
                CoverStrategy::Exhaustive => "exhaustive",
            };
            println!("strategy {strategy} balanced {}", cover.is_balanced());
            emit(&format_cover(k, &cover), out.as_deref())?;
        }
        Command::KstCheck { bipartite, s } => {
            let g = read_graph(&bipartite)?;
            let Some(bc) = BipartiteColoring::from_balanced_graph(&g) else {
                bail!("{} is not a balanced bipartite graph with sides 0..t and t..2t", bipartite.display());
            };
            let edges = bc.blue_count();
            let kss = has_blue_kss(&bc, s).is_some();
            let bound = kst_bound_holds(edges, bc.left_len(), s);
            println!(
                "kst t {} s {s} edges {edges} kss {} edge_bound {} holds {}",
                bc.left_len(),
                if kss { "yes" } else { "no" },
                bound,
                kss || bound
            );
            if !(kss || bound) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::EmbedPath {
            graph,
            classes,
            length,
            trace,
            out,
        } => {
            let g = read_graph(&graph)?;
            let inst = TransversalInstance::new(&g, read_classes(&classes)?, length)?;
            let run = find_transversal_path(&inst);
            replay_trace(&inst, &run.trace)?;
            if let Some(path) = &trace {
                write(path, &format_trace(&run.trace))?;
            }
            let text = match &run.outcome {
                TransversalOutcome::Found(p) => format!("path {}\n", join(p)),
                TransversalOutcome::Failure(state) => {
                    let sizes = |sets: &[std::collections::BTreeSet<usize>]| {
                        sets.iter().map(|s| s.len()).collect::<Vec<_>>()
                    };
                    format!(
                        "failure unused {} dead {}\n",
                        join(&sizes(&state.unused)),
                        join(&sizes(&state.dead))
                    )
                }
            };
            emit(&text, out.as_deref())?;
        }
        Command::Color {
            graph,
            adversary,
            seed,
            cluster_size,
            out,
        } => {
            let g = read_graph(&graph)?;
            let map = match cluster_size {
                Some(r) if r == 0 || g.order() % r != 0 => {
                    bail!("order {} is not a multiple of cluster size {r}", g.order())
                }
                Some(r) => Some(BlowupMap::new(g.order() / r, r)),
                None => None,
            };
            let adversary = Adversary {
                kind: AdversaryKind::parse(&adversary)?,
                seed,
            };
            let c = color_with(&adversary, &g, map.as_ref())?;
            write(&out, &format_coloring(&c))?;
            println!(
                "coloring edges {} blue {} red {}",
                g.edge_count(),
                c.count(pathpower::Color::Blue),
                c.count(pathpower::Color::Red)
            );
        }
        Command::Solve {
            host,
            k,
            n,
            cluster_size,
            s,
            t,
            epsilon,
            coloring,
            lifter,
            seed,
            max_rounds,
            greedy_budget,
            report,
            witness,
        } => {
            let h = read_graph(&host)?;
            let (blown, map) = blown_from_host(&h, k, cluster_size);
            let c = read_coloring(&coloring, &blown)?;
            let mut cfg = SolveConfig::desk(k, n);
            cfg.s = s;
            cfg.t = t;
            cfg.cluster_size = cluster_size;
            if let Some(e) = epsilon {
                cfg.epsilon = e;
            }
            cfg.lifter = lifter.into();
            cfg.seed = seed;
            if let Some(r) = max_rounds {
                cfg.max_rounds = r;
            }
            if let Some(b) = greedy_budget {
                cfg.greedy_budget = b;
            }
            let rep = solve(&h, &blown, &map, &c, &cfg);
            emit(&rep.to_string(), report.as_deref())?;
            if let (Some(w), Some(path)) = (rep.witness(), &witness) {
                write(path, &format_witness(w))?;
            }
        }
        Command::Verify {
            graph,
            host,
            k,
            cluster_size,
            coloring,
            witness,
        } => {
            let g = match (graph, host) {
                (Some(path), _) => read_graph(&path)?,
                (None, Some(path)) => {
                    let h = read_graph(&path)?;
                    blown_from_host(&h, k.unwrap_or(1), cluster_size.unwrap_or(1)).0
                }
                (None, None) => bail!("give --graph or --host"),
            };
            let c = read_coloring(&coloring, &g)?;
            let w = read_witness(&witness)?;
            let ok = verify_witness(&g, &c, &w);
            println!(
                "witness color {} power {} length {} {}",
                w.color,
                w.power,
                w.len(),
                if ok { "valid" } else { "invalid" }
            );
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Constants { k, epsilon, a } => {
            print!("{}", paper_constants(k, epsilon, a)?);
        }
        Command::Experiment { spec, replay, out } => {
            if let Some(dir) = replay {
                let rep = replay_dump(&dir)?;
                let text = rep.to_string();
                emit(&text, out.as_deref())?;
                let stored = fs::read_to_string(dir.join(DUMP_REPORT)).unwrap_or_default();
                if stored != text {
                    eprintln!("replayed report differs from {}", dir.join(DUMP_REPORT).display());
                    return Ok(ExitCode::from(1));
                }
                return Ok(ExitCode::SUCCESS);
            }
            let path = spec.expect("clap requires --spec without --replay");
            let text = fs::read_to_string(&path).with_context(|| path.display().to_string())?;
            let spec = ExperimentSpec::from_toml(&text)?;
            let report = run_experiment(&spec, work_bound(None)?)?;
            emit(&report.to_string(), out.as_deref())?;
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
