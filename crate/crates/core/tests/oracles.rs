//! Library routines against brute-force oracles written from the definitions.

use pathpower::biclique::has_blue_kss;
use pathpower::cover::{cover_blue_paths_red_multipartite, verify_cover, PartitionCover};
use pathpower::expansion::{certify_expansion_exact, Verdict};
use pathpower::{graph_power, verify_witness, BipartiteColoring, Color, CompleteColoring, Graph, TwoColoring, Witness};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(order: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..order {
        for v in u + 1..order {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(order, edges).unwrap()
}

/// All-pairs distances by Floyd-Warshall on an adjacency matrix.
fn distances(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let inf = usize::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for u in 0..n {
            for v in 0..n {
                if d[u][m] + d[m][v] < d[u][v] {
                    d[u][v] = d[u][m] + d[m][v];
                }
            }
        }
    }
    d
}

/// Some disjoint `S`, `T` of size at least `sigma` with no edge between
/// them, by assigning every vertex to `S`, `T` or neither.
fn naive_expansion_fails(g: &Graph, sigma: usize) -> bool {
    let n = g.order();
    let total = 3usize.pow(n as u32);
    (0..total).any(|mut code| {
        let mut side = vec![0u8; n];
        for s in side.iter_mut() {
            *s = (code % 3) as u8;
            code /= 3;
        }
        let s_len = side.iter().filter(|&&x| x == 1).count();
        let t_len = side.iter().filter(|&&x| x == 2).count();
        s_len >= sigma && t_len >= sigma && g.edges().iter().all(|&(u, v)| side[u] * side[v] != 2)
    })
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

fn naive_kss(bc: &BipartiteColoring, s: usize) -> bool {
    let lefts = subsets(bc.left_len(), s);
    let rights = subsets(bc.right_len(), s);
    lefts
        .iter()
        .any(|l| rights.iter().any(|r| l.iter().all(|&i| r.iter().all(|&j| bc.is_blue(i, j)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_matches_distance_oracle(seed in any::<u64>(), order in 1usize..30, k in 1usize..6, p in 0.02f64..0.3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(order, p, &mut rng);
        let power = graph_power(&g, k);
        let d = distances(&g);
        for (u, row) in d.iter().enumerate() {
            for (v, &dist) in row.iter().enumerate().skip(u + 1) {
                prop_assert_eq!(power.has_edge(u, v), dist <= k, "pair {} {}", u, v);
            }
        }
    }

    #[test]
    fn exact_expansion_matches_three_way_split(seed in any::<u64>(), order in 2usize..10, p in 0.1f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(order, p, &mut rng);
        for sigma in 1..=order / 2 {
            let cert = certify_expansion_exact(&g, sigma, u64::MAX).unwrap();
            let fails = naive_expansion_fails(&g, sigma);
            prop_assert_eq!(cert.verdict == Verdict::Falsified, fails, "sigma {}", sigma);
            if fails {
                prop_assert!(cert.counterexample_holds(&g));
            }
        }
    }

    #[test]
    fn biclique_search_matches_enumeration(seed in any::<u64>(), left in 1usize..9, right in 1usize..9, s in 1usize..4, p in 0.2f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bc = BipartiteColoring::from_fn(left, right, |_, _| rng.gen_bool(p));
        let found = has_blue_kss(&bc, s);
        prop_assert_eq!(found.is_some(), naive_kss(&bc, s));
        if let Some(w) = found {
            prop_assert!(w.holds(&bc));
            prop_assert_eq!(w.left.len(), s);
            prop_assert_eq!(w.right.len(), s);
        }
    }

    #[test]
    fn witness_check_matches_definition(seed in any::<u64>(), order in 2usize..12, power in 1usize..4, len in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(order, 0.7, &mut rng);
        let coloring = TwoColoring::from_fn(&g, |_, _| if rng.gen_bool(0.8) { Color::Blue } else { Color::Red });
        let vertices: Vec<usize> = (0..len).map(|_| rng.gen_range(0..order + 1)).collect();
        let w = Witness { color: Color::Blue, power, vertices: vertices.clone() };
        let distinct = vertices.iter().enumerate().all(|(i, v)| *v < order && !vertices[..i].contains(v));
        let pairs_ok = (0..len).all(|i| {
            (i + 1..len).filter(|j| j - i <= power).all(|j| {
                g.edges().iter().position(|&e| e == (vertices[i].min(vertices[j]), vertices[i].max(vertices[j])))
                    .is_some_and(|id| coloring.colors()[id] == Color::Blue)
            })
        });
        prop_assert_eq!(verify_witness(&g, &coloring, &w), distinct && pairs_ok);
    }
}

/// Cover check written against the definition, independent of `verify_cover`.
fn cover_ok(c: &CompleteColoring, k: usize, cover: &PartitionCover) -> bool {
    let mut all: Vec<usize> = cover.blue_paths.iter().flatten().chain(cover.classes.iter().flatten()).copied().collect();
    all.sort_unstable();
    if all != (0..c.order()).collect::<Vec<_>>() {
        return false;
    }
    let paths = cover.blue_paths.len() <= k
        && cover.blue_paths.iter().all(|p| !p.is_empty() && p.windows(2).all(|w| c.color(w[0], w[1]) == Color::Blue));
    let classes = cover.classes.len() == k + 1
        && cover.classes.iter().enumerate().all(|(i, a)| {
            cover.classes[i + 1..]
                .iter()
                .all(|b| a.iter().all(|&u| b.iter().all(|&v| c.color(u, v) == Color::Red)))
        });
    paths && classes
}

#[test]
fn covers_exist_and_verify_on_small_complete_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..300 {
        let n = 1 + case % 10;
        let k = 1 + case % 3;
        let p = rng.gen_range(0.1..0.9);
        let c = CompleteColoring::from_fn(n, |_, _| if rng.gen_bool(p) { Color::Blue } else { Color::Red });
        let cover = cover_blue_paths_red_multipartite(&c, k)
            .unwrap_or_else(|e| panic!("case {case}: n={n} k={k}: {e}"));
        assert!(cover_ok(&c, k, &cover), "case {case}");
        assert!(verify_cover(&c, k, &cover), "case {case}");
    }
}

#[test]
fn verify_cover_rejects_mutations() {
    let c = CompleteColoring::from_fn(6, |u, v| if u + v < 5 { Color::Blue } else { Color::Red });
    let cover = cover_blue_paths_red_multipartite(&c, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let mut m = cover.clone();
        let lists: Vec<&mut Vec<usize>> = m.blue_paths.iter_mut().chain(m.classes.iter_mut()).collect();
        let nonempty: Vec<&mut Vec<usize>> = lists.into_iter().filter(|l| !l.is_empty()).collect();
        let count = nonempty.len();
        let list = nonempty.into_iter().nth(rng.gen_range(0..count)).unwrap();
        let i = rng.gen_range(0..list.len());
        list[i] = rng.gen_range(0..7);
        m.blue_paths.retain(|p| !p.is_empty());
        assert_eq!(verify_cover(&c, 2, &m), cover_ok(&c, 2, &m));
    }
}
