//! Edge colorers used to attack the pipeline.

use std::fmt;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::blowup::BlowupMap;
use crate::coloring::{Color, TwoColoring};
use crate::graph::Graph;
use crate::io::{read_coloring, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdversaryKind {
    /// Independent fair coin per edge.
    UniformRandom,
    AllOne(Color),
    /// Cluster `c` is blue inside when `c` is even and red when odd. Edges
    /// between two clusters of equal parity take the opposite of their inside
    /// color; mixed-parity edges take the inside color of the lower cluster.
    ClusterParity,
    /// Inside clusters, each edge (in id order) takes the color closing fewer
    /// monochromatic triangles with edges already colored; cross edges are
    /// random.
    AntiClique,
    FileReplay(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adversary {
    pub kind: AdversaryKind,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum AdversaryError {
    #[error("unknown adversary '{0}'")]
    Unknown(String),
    #[error("replayed coloring does not match the graph: {0}")]
    Replay(#[from] FormatError),
}

impl AdversaryKind {
    /// `uniform`, `all-blue`, `all-red`, `cluster-parity`, `anti-clique` or
    /// `replay:<path>`.
    pub fn parse(name: &str) -> Result<Self, AdversaryError> {
        Ok(match name {
            "uniform" => AdversaryKind::UniformRandom,
            "all-blue" => AdversaryKind::AllOne(Color::Blue),
            "all-red" => AdversaryKind::AllOne(Color::Red),
            "cluster-parity" => AdversaryKind::ClusterParity,
            "anti-clique" => AdversaryKind::AntiClique,
            _ => match name.strip_prefix("replay:") {
                Some(path) if !path.is_empty() => AdversaryKind::FileReplay(PathBuf::from(path)),
                _ => return Err(AdversaryError::Unknown(name.to_string())),
            },
        })
    }
}

impl fmt::Display for AdversaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdversaryKind::UniformRandom => f.write_str("uniform"),
            AdversaryKind::AllOne(c) => write!(f, "all-{c}"),
            AdversaryKind::ClusterParity => f.write_str("cluster-parity"),
            AdversaryKind::AntiClique => f.write_str("anti-clique"),
            AdversaryKind::FileReplay(p) => write!(f, "replay:{}", p.display()),
        }
    }
}

/// Total coloring of `g`. Without a map every vertex is its own cluster.
pub fn color_with<'g>(
    adversary: &Adversary,
    g: &'g Graph,
    map: Option<&BlowupMap>,
) -> Result<TwoColoring<'g>, AdversaryError> {
    let cluster = |v: usize| map.map_or(v, |m| m.cluster_of(v));
    let mut rng = ChaCha8Rng::seed_from_u64(adversary.seed);
    let coin = |rng: &mut ChaCha8Rng| if rng.gen::<bool>() { Color::Blue } else { Color::Red };
    Ok(match &adversary.kind {
        AdversaryKind::UniformRandom => TwoColoring::from_fn(g, |_, _| coin(&mut rng)),
        AdversaryKind::AllOne(c) => TwoColoring::uniform(g, *c),
        AdversaryKind::ClusterParity => {
            let inside = |c: usize| if c.is_multiple_of(2) { Color::Blue } else { Color::Red };
            TwoColoring::from_fn(g, |u, v| {
                let (cu, cv) = (cluster(u), cluster(v));
                if cu == cv {
                    inside(cu)
                } else if cu % 2 == cv % 2 {
                    inside(cu).other()
                } else {
                    inside(cu.min(cv))
                }
            })
        }
        AdversaryKind::AntiClique => {
            let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
            for (id, &(u, v)) in g.edges().iter().enumerate() {
                if cluster(u) != cluster(v) {
                    colors[id] = Some(coin(&mut rng));
                    continue;
                }
                let mut closing = [0usize; 2];
                for &w in g.neighbors(u) {
                    if cluster(w) != cluster(u) {
                        continue;
                    }
                    let (Some(a), Some(b)) = (g.edge_id(u, w), g.edge_id(v, w)) else {
                        continue;
                    };
                    if let (Some(x), Some(y)) = (colors[a], colors[b]) {
                        if x == y {
                            closing[(x == Color::Blue) as usize] += 1;
                        }
                    }
                }
                colors[id] = Some(match closing[0].cmp(&closing[1]) {
                    std::cmp::Ordering::Less => Color::Red,
                    std::cmp::Ordering::Greater => Color::Blue,
                    std::cmp::Ordering::Equal => coin(&mut rng),
                });
            }
            TwoColoring::new(g, colors.into_iter().map(|c| c.expect("every edge colored")).collect())
                .expect("one color per edge")
        }
        AdversaryKind::FileReplay(path) => read_coloring(path, g)?,
    })
}
