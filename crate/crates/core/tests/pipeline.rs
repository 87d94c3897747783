//! Properties of the solver stages on small seeded instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use pathpower::auxiliary::auxiliary_coloring;
use pathpower::host::sample_host;
use pathpower::lift::{lift_red_greedy, lift_red_resample};
use pathpower::ramsey::{MonoClique, MonoCliqueAssignment};
use pathpower::solve::{claim_dichotomy, select_majority_side, solve, Dichotomy, SolveConfig};
use pathpower::{complete_blowup, graph_power, Color, Graph, TwoColoring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_coloring<'g>(g: &'g Graph, p_blue: f64, rng: &mut ChaCha8Rng) -> TwoColoring<'g> {
    TwoColoring::from_fn(g, |_, _| if rng.gen_bool(p_blue) { Color::Blue } else { Color::Red })
}

#[test]
fn swapping_colors_swaps_the_witness() {
    let host = Graph::complete(8);
    let mut cfg = SolveConfig::desk(1, 4);
    cfg.epsilon = ratio(1, 8);
    let (blown, map) = complete_blowup(&graph_power(&host, cfg.k), cfg.cluster_size);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut witnesses = 0;
    for trial in 0..40 {
        let p = [0.2, 0.5, 0.8][trial % 3];
        let c = random_coloring(&blown, p, &mut rng);
        if c.count(Color::Blue) == c.count(Color::Red) {
            continue;
        }
        cfg.seed = trial as u64;
        let a = solve(&host, &blown, &map, &c, &cfg);
        let swapped = c.swapped();
        let b = solve(&host, &blown, &map, &swapped, &cfg);
        match (a.witness(), b.witness()) {
            (Some(x), Some(y)) => {
                assert_eq!(x.vertices, y.vertices, "trial {trial}");
                assert_eq!(x.color, y.color.other(), "trial {trial}");
                witnesses += 1;
            }
            (None, None) => assert_eq!(a.failed_stage(), b.failed_stage(), "trial {trial}"),
            _ => panic!("trial {trial}: only one side produced a witness"),
        }
    }
    assert!(witnesses > 0);
}

fn brute_kss(c: &TwoColoring<'_>, left: &[usize], right: &[usize], s: usize) -> bool {
    let pick = |xs: &[usize]| -> Vec<Vec<usize>> {
        (0u32..1 << xs.len())
            .filter(|m| m.count_ones() as usize == s)
            .map(|m| (0..xs.len()).filter(|&i| m >> i & 1 == 1).map(|i| xs[i]).collect())
            .collect()
    };
    let rights = pick(right);
    pick(left).iter().any(|l| {
        rights
            .iter()
            .any(|r| l.iter().all(|&u| r.iter().all(|&v| c.color(u, v) == Some(Color::Blue))))
    })
}

#[test]
fn auxiliary_color_is_a_local_biclique_test() {
    let base = Graph::cycle(7);
    let k = 2;
    let s = 2;
    let power = graph_power(&base, k);
    let (blown, map) = complete_blowup(&power, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let c = random_coloring(&blown, 0.6, &mut rng);
        let Ok(side) = select_majority_side(&map, &c, 3) else { continue };
        let working = if side.swapped { c.swapped() } else { c.clone() };
        let f = base.induced_subgraph(&side.w);
        let f_power = graph_power(&f, k);
        let chi = auxiliary_coloring(&f_power, &side.w, &working, &side.cliques, s).unwrap();
        for &(i, j) in f_power.edges() {
            let (bu, bv) = (&side.cliques.clique(side.w[i]).vertices, &side.cliques.clique(side.w[j]).vertices);
            let expected = if brute_kss(&working, bu, bv, s) { Color::Blue } else { Color::Red };
            assert_eq!(chi.color(i, j), Some(expected));

            // Recolor every edge outside B(u) x B(v); the color must not move.
            let inside = |x: usize, y: usize| (bu.contains(&x) && bv.contains(&y)) || (bu.contains(&y) && bv.contains(&x));
            let mut noise = ChaCha8Rng::seed_from_u64((i * 100 + j) as u64);
            let perturbed = TwoColoring::from_fn(&blown, |x, y| {
                if inside(x, y) {
                    working.color(x, y).unwrap()
                } else if noise.gen_bool(0.5) {
                    Color::Blue
                } else {
                    Color::Red
                }
            });
            let chi2 = auxiliary_coloring(&f_power, &side.w, &perturbed, &side.cliques, s).unwrap();
            assert_eq!(chi2.color(i, j), chi.color(i, j));
        }
    }
}

#[test]
fn dichotomy_outputs_have_their_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut seen = [0usize; 3];
    for trial in 0..200 {
        let order = rng.gen_range(6..14);
        let k = rng.gen_range(1..3);
        let n = rng.gen_range(2..5);
        let f = {
            let p = rng.gen_range(0.3..0.9);
            let edges: Vec<(usize, usize)> = (0..order)
                .flat_map(|u| (u + 1..order).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            Graph::from_edges(order, edges).unwrap()
        };
        let f_power = graph_power(&f, k);
        let chi = random_coloring(&f_power, rng.gen_range(0.0..0.5), &mut rng);
        let report = claim_dichotomy(&f, k, n, &chi, &ratio(1, 8), &ratio(1, 1));
        match report.outcome {
            Dichotomy::BluePath(p) => {
                seen[0] += 1;
                assert_eq!(p.len(), n);
                for w in p.windows(2) {
                    assert_eq!(chi.color(w[0], w[1]), Some(Color::Blue), "trial {trial}");
                }
            }
            Dichotomy::RedPowerPath(p) => {
                seen[1] += 1;
                assert_eq!(p.len(), n);
                for i in 0..n {
                    if i + 1 < n {
                        assert!(f.has_edge(p[i], p[i + 1]), "trial {trial}");
                    }
                    for j in i + 1..n.min(i + k + 1) {
                        assert_eq!(chi.color(p[i], p[j]), Some(Color::Red), "trial {trial}");
                    }
                }
            }
            Dichotomy::Infeasible(_) => seen[2] += 1,
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "outcomes {seen:?}");
}

#[test]
fn red_lifters_pick_one_vertex_per_clique() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let n = rng.gen_range(2..7);
        let k = rng.gen_range(1..3);
        let r = rng.gen_range(3..6);
        let (blown, map) = complete_blowup(&graph_power(&Graph::path(n), k), r);
        // Sparse blue matchings across clusters keep every pair K_{2,2}-free.
        let shift: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
        let c = TwoColoring::from_fn(&blown, |u, v| {
            let (cu, cv) = (map.cluster_of(u), map.cluster_of(v));
            if cu == cv || (u % r + shift[cu]) % r == (v % r + shift[cv]) % r {
                Color::Blue
            } else {
                Color::Red
            }
        });
        let cliques = MonoCliqueAssignment {
            cliques: (0..n)
                .map(|v| MonoClique { vertices: map.members_of(v).collect(), color: Color::Blue })
                .collect(),
        };
        let path: Vec<usize> = (0..n).collect();
        let greedy = lift_red_greedy(&path, &c, &cliques, 2, k, 1_000_000).unwrap();
        let resample = lift_red_resample(&path, &c, &cliques, 2, k, 9, 1_000_000).unwrap();
        for w in [&greedy.witness, &resample.witness] {
            assert_eq!(w.color, Color::Red);
            assert_eq!(w.len(), n);
            for (i, &y) in w.vertices.iter().enumerate() {
                assert_eq!(map.cluster_of(y), i);
            }
        }
        assert!(resample.max_event_probability <= 1.0 / r as f64 + 1e-12);
    }
}

#[test]
fn host_sampling_is_pinned() {
    let host = sample_host(&ratio(60, 1), 10, &ratio(1, 3), 7).unwrap();
    assert_eq!(host.graph.order(), 600);
    assert_eq!(host.sampled.order(), 1200);
    assert_eq!(host.graph.fingerprint(), 13623636316239886303);
}
