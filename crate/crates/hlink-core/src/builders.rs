//! Tournament builders and random graph models.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use thiserror::Error;

use crate::graph::OrientedGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("regular tournaments require odd order, got {0}")]
    RegularNeedsOddOrder(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TournamentMode {
    /// Every vertex has `d⁺ = d⁻ = (m−1)/2`; requires odd order.
    Regular,
    /// Every vertex has `|d⁺ − d⁻| ≤ 1`; any order.
    NearRegular,
}

/// Identity permutation, or a seeded shuffle when `seed` is given. Permuting
/// labels preserves the degree sequence, so seeded builds stay (near-)regular.
fn label_permutation(m: usize, seed: Option<u64>) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..m).collect();
    if let Some(s) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        perm.shuffle(&mut rng);
    }
    perm
}

/// Circulant orientation of the pair `{i, j}` over `m` labels, for pairs that
/// are not antipodal when `m` is even: `i` beats the next `⌊(m−1)/2⌋` labels.
fn circulant_beats(i: usize, j: usize, m: usize) -> bool {
    let fwd = (j + m - i) % m;
    fwd >= 1 && fwd <= (m - 1) / 2
}

/// Builds a (near-)regular tournament on `m` vertices.
///
/// The default is the deterministic circulant orientation; for even `m` the
/// antipodal pairs `{i, i + m/2}` are oriented by the parity of the smaller
/// index. A seed only relabels vertices and never changes the degree profile.
pub fn build_tournament(
    m: usize,
    mode: TournamentMode,
    seed: Option<u64>,
) -> Result<OrientedGraph, BuildError> {
    if mode == TournamentMode::Regular && m % 2 == 0 {
        return Err(BuildError::RegularNeedsOddOrder(m));
    }
    let perm = label_permutation(m, seed);
    let mut g = OrientedGraph::new(m);
    for i in 0..m {
        for j in i + 1..m {
            let forward = if m % 2 == 0 && j == i + m / 2 {
                i % 2 == 0
            } else if circulant_beats(i, j, m) {
                true
            } else {
                debug_assert!(circulant_beats(j, i, m));
                false
            };
            if forward {
                g.add_arc(perm[i], perm[j]).unwrap();
            } else {
                g.add_arc(perm[j], perm[i]).unwrap();
            }
        }
    }
    Ok(g)
}

/// Uniformly random tournament: each pair oriented by a fair coin.
pub fn random_tournament<R: Rng>(m: usize, rng: &mut R) -> OrientedGraph {
    let mut g = OrientedGraph::new(m);
    for i in 0..m {
        for j in i + 1..m {
            if rng.gen_bool(0.5) {
                g.add_arc(i, j).unwrap();
            } else {
                g.add_arc(j, i).unwrap();
            }
        }
    }
    g
}

/// Random oriented graph: each unordered pair carries an arc with probability
/// `p`, oriented uniformly.
pub fn random_oriented<R: Rng>(n: usize, p: f64, rng: &mut R) -> OrientedGraph {
    let mut g = OrientedGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                if rng.gen_bool(0.5) {
                    g.add_arc(i, j).unwrap();
                } else {
                    g.add_arc(j, i).unwrap();
                }
            }
        }
    }
    g
}

/// Orients every cross pair of a bipartition by a circulant window: with `a`
/// and `b` indexed locally, `a_i -> b_j` iff `(j - i) mod |b|` falls in the
/// first `⌈|b|/2⌉` residues. Every `a`-vertex gets exactly `⌈|b|/2⌉` out-arcs;
/// `b`-vertices are balanced to within one when the sides differ by at most
/// one. A seed relabels each side, preserving the degree profile.
pub fn build_balanced_bipartite_tournament(
    a_set: &[usize],
    b_set: &[usize],
    seed: Option<u64>,
) -> Vec<(usize, usize)> {
    let half = b_set.len().div_ceil(2);
    bipartite_circulant_arcs(a_set, b_set, half, seed)
}

/// Circulant cross orientation where every `a`-vertex gets exactly `out_target`
/// arcs into `b` (and `|b| − out_target` arcs back). Used by constructions
/// that must pin the `a`-side degrees exactly.
pub fn bipartite_circulant_arcs(
    a_set: &[usize],
    b_set: &[usize],
    out_target: usize,
    seed: Option<u64>,
) -> Vec<(usize, usize)> {
    assert!(out_target <= b_set.len());
    if a_set.is_empty() || b_set.is_empty() {
        return Vec::new();
    }
    let (pa, pb) = match seed {
        None => (a_set.to_vec(), b_set.to_vec()),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let mut pa = a_set.to_vec();
            let mut pb = b_set.to_vec();
            pa.shuffle(&mut rng);
            pb.shuffle(&mut rng);
            (pa, pb)
        }
    };
    let mut arcs = Vec::with_capacity(pa.len() * pb.len());
    for (i, &a) in pa.iter().enumerate() {
        for (j, &b) in pb.iter().enumerate() {
            if (j + pb.len() - i % pb.len()) % pb.len() < out_target {
                arcs.push((a, b));
            } else {
                arcs.push((b, a));
            }
        }
    }
    arcs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;
    use rand::SeedableRng;

    #[test]
    fn regular_tournament_degrees() {
        let g = build_tournament(5, TournamentMode::Regular, None).unwrap();
        for v in 0..5 {
            assert_eq!(g.out_degree(v), 2);
            assert_eq!(g.in_degree(v), 2);
        }
        assert_eq!(g.arc_count(), 10);
    }

    #[test]
    fn regular_rejects_even_order() {
        assert_eq!(
            build_tournament(4, TournamentMode::Regular, None).unwrap_err(),
            BuildError::RegularNeedsOddOrder(4)
        );
    }

    #[test]
    fn near_regular_even_orders() {
        for m in [4, 6, 16, 18] {
            let g = build_tournament(m, TournamentMode::NearRegular, None).unwrap();
            assert_eq!(g.arc_count(), m * (m - 1) / 2);
            for v in 0..m {
                let (dp, dm) = (g.out_degree(v), g.in_degree(v));
                assert!(dp == m / 2 || dp == m / 2 - 1, "m={m} v={v} d+={dp}");
                assert!(dp.abs_diff(dm) <= 1);
            }
        }
    }

    #[test]
    fn seeded_tournament_keeps_degree_profile() {
        let g = build_tournament(9, TournamentMode::Regular, Some(42)).unwrap();
        for v in 0..9 {
            assert_eq!(g.out_degree(v), 4);
        }
        let g2 = build_tournament(9, TournamentMode::Regular, Some(42)).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn degree_sums_match_arc_count() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = random_oriented(20, 0.4, &mut rng);
        let out_sum: usize = (0..20).map(|v| g.out_degree(v)).sum();
        let in_sum: usize = (0..20).map(|v| g.in_degree(v)).sum();
        assert_eq!(out_sum, g.arc_count());
        assert_eq!(in_sum, g.arc_count());
    }

    #[test]
    fn tournament_arc_sum_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let g = random_tournament(12, &mut rng);
        let out_sum: usize = (0..12).map(|v| g.out_degree(v)).sum();
        assert_eq!(out_sum, 12 * 11 / 2);
    }

    fn cross_degrees(
        arcs: &[(usize, usize)],
        a: &[usize],
        b: &[usize],
    ) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let deg = |v: usize| {
            let out = arcs.iter().filter(|&&(u, _)| u == v).count();
            let inn = arcs.iter().filter(|&&(_, w)| w == v).count();
            (out, inn)
        };
        (
            a.iter().map(|&v| deg(v)).collect(),
            b.iter().map(|&v| deg(v)).collect(),
        )
    }

    #[test]
    fn balanced_bipartite_equal_sides() {
        let a: Vec<usize> = (0..18).collect();
        let b: Vec<usize> = (18..36).collect();
        let arcs = build_balanced_bipartite_tournament(&a, &b, None);
        assert_eq!(arcs.len(), 18 * 18);
        let (da, db) = cross_degrees(&arcs, &a, &b);
        for &(out, inn) in da.iter().chain(db.iter()) {
            assert_eq!((out, inn), (9, 9));
        }
    }

    #[test]
    fn balanced_bipartite_uneven_sides() {
        let a = [0usize, 1, 2];
        let b = [3usize, 4, 5, 6];
        let arcs = build_balanced_bipartite_tournament(&a, &b, None);
        assert_eq!(arcs.len(), 12);
        let (da, db) = cross_degrees(&arcs, &a, &b);
        for &(out, inn) in &da {
            assert_eq!((out, inn), (2, 2));
        }
        for &(out, inn) in &db {
            assert!(out.abs_diff(inn) <= 1, "b-side out={out} in={inn}");
        }
    }

    #[test]
    fn circulant_out_target_is_exact() {
        let a: Vec<usize> = (0..25).collect();
        let b: Vec<usize> = (25..50).collect();
        let arcs = bipartite_circulant_arcs(&a, &b, 13, None);
        let (da, _) = cross_degrees(&arcs, &a, &b);
        for &(out, inn) in &da {
            assert_eq!(out, 13);
            assert_eq!(inn, 12);
        }
    }
}
