//! Blue `K_{s,s}` detection between two vertex groups, and the
//! Kővári–Sós–Turán edge bound check.

use num_bigint::BigUint;
use num_traits::Pow;

use crate::bitset::BitSet;
use crate::coloring::BipartiteColoring;

/// `left` and `right` index the two sides of a [`BipartiteColoring`]; every
/// left-right pair is blue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KssWitness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl KssWitness {
    pub fn holds(&self, bc: &BipartiteColoring) -> bool {
        self.left.iter().all(|&i| self.right.iter().all(|&j| bc.is_blue(i, j)))
    }
}

/// Exact search: enumerates `s`-subsets of the smaller side in lexicographic
/// order, intersecting blue neighborhoods and cutting branches whose common
/// neighborhood drops below `s`.
pub fn has_blue_kss(bc: &BipartiteColoring, s: usize) -> Option<KssWitness> {
    assert!(s >= 1, "biclique side must be positive");
    if bc.left_len() < s || bc.right_len() < s {
        return None;
    }
    if bc.left_len() > bc.right_len() {
        return has_blue_kss(&bc.transposed(), s).map(|w| KssWitness {
            left: w.right,
            right: w.left,
        });
    }
    let rows: Vec<usize> = (0..bc.left_len()).filter(|&i| bc.blue_row(i).count() >= s).collect();
    let mut chosen = Vec::with_capacity(s);
    let common = BitSet::full(bc.right_len());
    search(bc, &rows, 0, s, &common, &mut chosen).map(|right| KssWitness {
        left: chosen,
        right,
    })
}

fn search(
    bc: &BipartiteColoring,
    rows: &[usize],
    from: usize,
    s: usize,
    common: &BitSet,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == s {
        return Some(common.iter().take(s).collect());
    }
    let need = s - chosen.len();
    for idx in from..rows.len() {
        if rows.len() - idx < need {
            break;
        }
        let row = rows[idx];
        let next = common.intersection(bc.blue_row(row));
        if next.count() < s {
            continue;
        }
        chosen.push(row);
        if let Some(right) = search(bc, rows, idx + 1, s, &next, chosen) {
            return Some(right);
        }
        chosen.pop();
    }
    None
}

/// `edges <= 4 t^(2 - 1/s)`, compared exactly as `edges^s <= 4^s t^(2s-1)`.
pub fn kst_bound_holds(edges: usize, t: usize, s: usize) -> bool {
    assert!(s >= 1);
    let s32 = s as u32;
    let lhs: BigUint = Pow::pow(BigUint::from(edges), s32);
    let rhs: BigUint = Pow::pow(BigUint::from(4u32), s32) * Pow::pow(BigUint::from(t), 2 * s32 - 1);
    lhs <= rhs
}

/// True iff the balanced bipartite graph (blue pairs are edges, `t` per side)
/// contains a `K_{s,s}` or has at most `4 t^(2-1/s)` edges.
pub fn kst_edge_bound_check(bc: &BipartiteColoring, s: usize) -> bool {
    assert_eq!(bc.left_len(), bc.right_len(), "KST check needs a balanced bipartite graph");
    has_blue_kss(bc, s).is_some() || kst_bound_holds(bc.blue_count(), bc.left_len(), s)
}
