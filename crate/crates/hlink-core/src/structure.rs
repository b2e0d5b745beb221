//! Structural checkers: robust outexpansion, part-relative vertex taxonomy
//! (acceptable / circular), the extremal-case detector, and the almost-
//! circular path predicate. All of them are exact and read-only; the only
//! non-exhaustive variant is the sampled expansion checker, whose negative
//! answer is explicitly not a proof.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{Digraph, OrientedGraph, Path};
use crate::parts::PartSystem;
use crate::report::Report;

const EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("order {order} exceeds the exact-scan cap {cap}; use the sampled checker")]
    OverCap { order: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("vertex {0} is not labeled with any of D1..D4")]
    Unlabeled(usize),
    #[error("vertex {0} not covered by the four parts")]
    IncompleteCover(usize),
    #[error("parts D{0} and D{1} overlap on vertex {2}")]
    OverlappingParts(usize, usize, usize),
    #[error("part D{0} is empty")]
    EmptyPart(usize),
    #[error("sampling requires at least one trial")]
    ZeroTrials,
    #[error("path is not valid in the host graph: {0}")]
    InvalidPath(String),
}

// ---------------------------------------------------------------------------
// Robust outexpansion
// ---------------------------------------------------------------------------

/// Parameters of the robust outexpansion predicate. `degree_slack` is the
/// `d` of the degree hypothesis used by the expansion-persistence property
/// test and is not consulted by the checkers themselves.
#[derive(Clone, Copy, Debug)]
pub struct ExpanderParams {
    pub mu: f64,
    pub tau: f64,
    pub degree_slack: f64,
}

impl ExpanderParams {
    pub fn new(mu: f64, tau: f64) -> Result<Self, StructureError> {
        if !(mu > 0.0 && mu <= tau && tau < 1.0) {
            return Err(StructureError::InvalidParams(format!(
                "need 0 < mu <= tau < 1, got mu = {mu}, tau = {tau}"
            )));
        }
        Ok(ExpanderParams {
            mu,
            tau,
            degree_slack: 0.0,
        })
    }

    pub fn with_degree_slack(mut self, d: f64) -> Self {
        self.degree_slack = d;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpanderVerdict {
    Holds,
    Violated(VertexSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampledVerdict {
    NoViolationFound,
    Violated(VertexSet),
}

pub const EXACT_EXPANDER_CAP: usize = 20;

fn out_neighborhood_size<G: Digraph>(g: &G, members: &[usize]) -> usize {
    let mut acc = VertexSet::empty(g.order());
    for &v in members {
        acc.union_with(g.out_set(v));
    }
    acc.len()
}

fn violates<G: Digraph>(g: &G, members: &[usize], mu: f64) -> bool {
    let r = g.order() as f64;
    (out_neighborhood_size(g, members) as f64) < members.len() as f64 + mu * r
}

fn size_window(r: usize, tau: f64) -> (usize, usize) {
    let rf = r as f64;
    let lo = (1..=r)
        .find(|&s| s as f64 + EPS >= tau * rf)
        .unwrap_or(r + 1);
    let hi = (0..=r)
        .rev()
        .find(|&s| s as f64 <= (1.0 - tau) * rf + EPS)
        .unwrap_or(0);
    (lo, hi)
}

/// Exhaustive check of the robust outexpansion predicate by subset scan.
///
/// `Holds` means every set `S` with `τ|R| ≤ |S| ≤ (1−τ)|R|` satisfies
/// `|N⁺(S)| ≥ |S| + μ|R|`. `Violated` returns a witness of minimum size
/// (lexicographically first among those). Orders above
/// [`EXACT_EXPANDER_CAP`] are rejected.
pub fn robust_outexpander_exact<G: Digraph>(
    g: &G,
    params: &ExpanderParams,
) -> Result<ExpanderVerdict, StructureError> {
    let r = g.order();
    if r > EXACT_EXPANDER_CAP {
        return Err(StructureError::OverCap {
            order: r,
            cap: EXACT_EXPANDER_CAP,
        });
    }
    let (lo, hi) = size_window(r, params.tau);
    for s in lo..=hi.min(r) {
        // Combinations of size s in lexicographic order.
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            if violates(g, &idx, params.mu) {
                return Ok(ExpanderVerdict::Violated(VertexSet::from_vertices(
                    r,
                    idx.iter().copied(),
                )));
            }
            // Advance to the next combination.
            let mut pos = s;
            while pos > 0 {
                pos -= 1;
                if idx[pos] != r - s + pos {
                    idx[pos] += 1;
                    for j in pos + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    Ok(ExpanderVerdict::Holds)
}

/// Randomized search for an expansion violation: deterministic adversarial
/// candidates first (prefixes of the out-degree-sorted vertex order at every
/// window size), then `trials` random subsets. `Violated` is always verified
/// before being reported; `NoViolationFound` is not a proof of expansion.
pub fn robust_outexpander_sampled<G: Digraph>(
    g: &G,
    params: &ExpanderParams,
    trials: usize,
    seed: u64,
) -> Result<SampledVerdict, StructureError> {
    if trials == 0 {
        return Err(StructureError::ZeroTrials);
    }
    let r = g.order();
    let (lo, hi) = size_window(r, params.tau);
    if lo > hi || r == 0 {
        return Ok(SampledVerdict::NoViolationFound);
    }

    let mut by_out_degree: Vec<usize> = (0..r).collect();
    by_out_degree.sort_by_key(|&v| (g.out_degree(v), v));
    for s in lo..=hi {
        let prefix = &by_out_degree[..s];
        if violates(g, prefix, params.mu) {
            return Ok(SampledVerdict::Violated(VertexSet::from_vertices(
                r,
                prefix.iter().copied(),
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = (0..r).collect();
    for _ in 0..trials {
        let s = rng.gen_range(lo..=hi);
        pool.shuffle(&mut rng);
        let members = &pool[..s];
        if violates(g, members, params.mu) {
            return Ok(SampledVerdict::Violated(VertexSet::from_vertices(
                r,
                members.iter().copied(),
            )));
        }
    }
    Ok(SampledVerdict::NoViolationFound)
}

/// τ sample grid for the expansion-persistence property test: the primary
/// window is `[μ, 1/100]` restricted to `τ·r ≥ 1`; at small orders that
/// window is empty and the test falls back to `[max(μ, 1/r), 1/3]`, where the
/// same persistence argument applies.
pub fn persistence_tau_grid(r: usize, mu: f64, samples: usize) -> Vec<f64> {
    assert!(samples >= 2);
    let floor = 1.0 / r as f64;
    let primary = (mu.max(floor), 0.01);
    let (lo, hi) = if primary.0 <= primary.1 {
        primary
    } else {
        (mu.max(floor), 1.0 / 3.0)
    };
    if lo > hi {
        return Vec::new();
    }
    (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect()
}

// ---------------------------------------------------------------------------
// Four-part views and the vertex taxonomy
// ---------------------------------------------------------------------------

/// The cyclic partition (D1, D2, D3, D4) the taxonomy is defined against.
#[derive(Clone, Debug)]
pub struct FourParts {
    sets: [VertexSet; 4],
}

impl FourParts {
    pub fn new(sets: [VertexSet; 4]) -> Self {
        FourParts { sets }
    }

    /// Extracts parts named `D1..D4` from a part system.
    pub fn from_part_system(ps: &PartSystem) -> Result<Self, StructureError> {
        let mut sets = Vec::with_capacity(4);
        for name in ["D1", "D2", "D3", "D4"] {
            let set = ps
                .get(name)
                .ok_or_else(|| StructureError::InvalidParams(format!("missing part {name}")))?;
            sets.push(set.clone());
        }
        Ok(FourParts {
            sets: sets.try_into().unwrap(),
        })
    }

    /// Part set by 0-based index (0 ↦ D1, …, 3 ↦ D4).
    pub fn set(&self, i: usize) -> &VertexSet {
        &self.sets[i]
    }

    /// 0-based index of the part containing `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.sets.iter().position(|s| s.contains(v))
    }

    fn check_disjoint(&self) -> Result<(), StructureError> {
        for i in 0..4 {
            for j in i + 1..4 {
                if let Some(v) = self.sets[i].intersection(&self.sets[j]).first() {
                    return Err(StructureError::OverlappingParts(i + 1, j + 1, v));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

/// One acceptability pattern: a vertex of the `home` part must clear the
/// α-threshold against two (part, direction) requirements.
#[derive(Clone, Copy, Debug)]
pub struct AcceptancePattern {
    pub home: usize,
    pub needs: [(usize, Direction); 2],
}

use Direction::{In, Out};

/// The sixteen acceptability patterns, four per home part. Parts are 0-based
/// (0 ↦ D1). Stacked super/subscript entries require both directions against
/// the same part.
pub const ACCEPTANCE_PATTERNS: [AcceptancePattern; 16] = [
    AcceptancePattern { home: 0, needs: [(1, Out), (3, In)] },
    AcceptancePattern { home: 0, needs: [(0, Out), (3, In)] },
    AcceptancePattern { home: 0, needs: [(0, In), (1, Out)] },
    AcceptancePattern { home: 0, needs: [(0, Out), (0, In)] },
    AcceptancePattern { home: 1, needs: [(0, In), (2, Out)] },
    AcceptancePattern { home: 1, needs: [(0, In), (3, Out)] },
    AcceptancePattern { home: 1, needs: [(2, Out), (3, In)] },
    AcceptancePattern { home: 1, needs: [(3, Out), (3, In)] },
    AcceptancePattern { home: 2, needs: [(1, In), (3, Out)] },
    AcceptancePattern { home: 2, needs: [(1, In), (2, Out)] },
    AcceptancePattern { home: 2, needs: [(2, In), (3, Out)] },
    AcceptancePattern { home: 2, needs: [(2, Out), (2, In)] },
    AcceptancePattern { home: 3, needs: [(0, Out), (2, In)] },
    AcceptancePattern { home: 3, needs: [(0, Out), (1, In)] },
    AcceptancePattern { home: 3, needs: [(1, Out), (2, In)] },
    AcceptancePattern { home: 3, needs: [(1, Out), (1, In)] },
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptVerdict {
    pub acceptable: bool,
    /// Indices into [`ACCEPTANCE_PATTERNS`] of every matched pattern.
    pub matched: Vec<usize>,
}

fn clears_threshold<G: Digraph>(
    g: &G,
    parts: &FourParts,
    v: usize,
    need: (usize, Direction),
    alpha: f64,
) -> bool {
    let part = parts.set(need.0);
    // Patterns over empty parts are declared unmatched: a vertex gains no
    // structural usefulness from an empty part.
    if part.is_empty() {
        return false;
    }
    let hits = match need.1 {
        Out => g.out_set(v).intersection_len(part),
        In => g.in_set(v).intersection_len(part),
    };
    hits as f64 + EPS >= alpha * part.len() as f64
}

/// Evaluates the four acceptability patterns of `v`'s home part. Errors when
/// `v` is outside all four parts (e.g. a hub vertex).
pub fn classify_acceptable<G: Digraph>(
    g: &G,
    parts: &FourParts,
    alpha: f64,
    v: usize,
) -> Result<AcceptVerdict, StructureError> {
    let home = parts.part_of(v).ok_or(StructureError::Unlabeled(v))?;
    let mut matched = Vec::new();
    for (idx, pattern) in ACCEPTANCE_PATTERNS.iter().enumerate() {
        if pattern.home != home {
            continue;
        }
        if pattern
            .needs
            .iter()
            .all(|&need| clears_threshold(g, parts, v, need, alpha))
        {
            matched.push(idx);
        }
    }
    Ok(AcceptVerdict {
        acceptable: !matched.is_empty(),
        matched,
    })
}

/// `(1−c)`-circularity: a vertex of `D_i` misses at most a `c`-fraction of
/// `D_{i+1}` as out-neighbors and of `D_{i−1}` as in-neighbors (cyclically).
pub fn classify_circular<G: Digraph>(
    g: &G,
    parts: &FourParts,
    c: f64,
    v: usize,
) -> Result<bool, StructureError> {
    let i = parts.part_of(v).ok_or(StructureError::Unlabeled(v))?;
    let succ = parts.set((i + 1) % 4);
    let pred = parts.set((i + 3) % 4);
    let missing_out = succ.difference_len(g.out_set(v)) as f64;
    let missing_in = pred.difference_len(g.in_set(v)) as f64;
    Ok(missing_out <= c * succ.len() as f64 + EPS && missing_in <= c * pred.len() as f64 + EPS)
}

// ---------------------------------------------------------------------------
// Extremal-case detection
// ---------------------------------------------------------------------------

/// Thresholds of the extremal-case test. `alpha` defaults to 1/200.
#[derive(Clone, Copy, Debug)]
pub struct ExtremalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub mu: f64,
    pub d: f64,
    pub alpha: f64,
}

impl ExtremalParams {
    pub fn new(c: (f64, f64, f64, f64), mu: f64, d: f64) -> Self {
        ExtremalParams {
            c1: c.0,
            c2: c.1,
            c3: c.2,
            c4: c.3,
            mu,
            d,
            alpha: 1.0 / 200.0,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }
}

/// Evaluates the six extremal-case bullets against the supplied partition
/// (which must cover the whole graph; exclude hub vertices beforehand).
/// Density bullets use strict `>`. No witnessing partition is searched for.
pub fn detect_extremal_case(
    g: &OrientedGraph,
    parts: &FourParts,
    params: &ExtremalParams,
) -> Result<Report, StructureError> {
    parts.check_disjoint()?;
    let mut covered = VertexSet::empty(g.order());
    for i in 0..4 {
        if parts.set(i).is_empty() {
            return Err(StructureError::EmptyPart(i + 1));
        }
        covered.union_with(parts.set(i));
    }
    if let Some(v) = VertexSet::full(g.order()).difference(&covered).first() {
        return Err(StructureError::IncompleteCover(v));
    }

    let n = g.order() as f64;
    let mut report = Report::new();

    {
        let lo = (0.25 - params.c1 * params.mu) * n;
        let hi = (0.25 + params.c1 * params.mu) * n;
        let sizes: Vec<usize> = (0..4).map(|i| parts.set(i).len()).collect();
        let ok = sizes
            .iter()
            .all(|&s| s as f64 + EPS >= lo && s as f64 <= hi + EPS);
        report.push(
            "part_sizes",
            ok,
            format!("|D_i| = {sizes:?}, window [{lo:.2}, {hi:.2}]"),
        );
    }

    {
        let bound = (1.0 - params.c2 * params.mu) * n * n / 16.0;
        let counts: Vec<usize> = (0..4)
            .map(|i| g.arcs_between(parts.set(i), parts.set((i + 1) % 4)))
            .collect();
        let ok = counts.iter().all(|&a| a as f64 > bound);
        report.push(
            "cyclic_density",
            ok,
            format!("a(D_i, D_i+1) = {counts:?}, bound > {bound:.2}"),
        );
    }

    {
        let bound = (0.5 - params.c3 * params.mu) * n * n / 16.0;
        let a1 = g.arcs_within(parts.set(0));
        let a3 = g.arcs_within(parts.set(2));
        let ok = (a1 as f64) > bound && (a3 as f64) > bound;
        report.push(
            "tournament_density",
            ok,
            format!("a(D1) = {a1}, a(D3) = {a3}, bound > {bound:.2}"),
        );
    }

    {
        let bound = (0.5 - params.c4 * params.mu) * n * n / 16.0;
        let a24 = g.arcs_between(parts.set(1), parts.set(3));
        let a42 = g.arcs_between(parts.set(3), parts.set(1));
        let ok = (a24 as f64) > bound && (a42 as f64) > bound;
        report.push(
            "bipartite_density",
            ok,
            format!("a(D2,D4) = {a24}, a(D4,D2) = {a42}, bound > {bound:.2}"),
        );
    }

    {
        // The two exception sets (weak out- and weak in-neighborhoods in D2)
        // are bounded as one union, the stricter of the two readings.
        let need = n / 16.0;
        let exceptions = parts
            .set(3)
            .iter()
            .filter(|&v| {
                (g.out_set(v).intersection_len(parts.set(1)) as f64) < need
                    || (g.in_set(v).intersection_len(parts.set(1)) as f64) < need
            })
            .count();
        let allowed = 800.0 * params.d * n;
        report.push(
            "d4_to_d2_degrees",
            exceptions as f64 <= allowed + EPS,
            format!("{exceptions} exceptional D4 vertices, allowed <= {allowed:.2}"),
        );
    }

    {
        let c_circ = 9000.0 * params.mu.sqrt();
        let mut non_acceptable = 0usize;
        let mut non_circular = 0usize;
        for v in covered.iter() {
            if !classify_acceptable(g, parts, params.alpha, v)?.acceptable {
                non_acceptable += 1;
            }
            if !classify_circular(g, parts, c_circ, v)? {
                non_circular += 1;
            }
        }
        let allowed = params.mu.sqrt() * n;
        let ok = non_acceptable == 0 && non_circular as f64 <= allowed + EPS;
        report.push(
            "acceptable_and_circular",
            ok,
            format!(
                "{non_acceptable} non-acceptable vertices, {non_circular} non-circular \
                 (allowed <= {allowed:.2})"
            ),
        );
    }

    Ok(report)
}

// ---------------------------------------------------------------------------
// Almost-circular paths
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct AlmostCircularVerdict {
    /// Condition (i): consecutive labels only stay or advance one layer.
    pub label_steps_ok: bool,
    /// Number of path arcs inside D1 or inside D3.
    pub heavy_arcs: usize,
    /// Condition (iii): that count is at most `l`.
    pub heavy_arcs_ok: bool,
    /// Condition (ii), evaluated only when a circularity constant was given.
    pub interior_circular_ok: Option<bool>,
}

impl AlmostCircularVerdict {
    pub fn passes(&self) -> bool {
        self.label_steps_ok && self.heavy_arcs_ok && self.interior_circular_ok.unwrap_or(true)
    }
}

/// The `l`-almost-circular path predicate. Condition (ii) (interior vertices
/// `(1−c)`-circular) is only evaluated when `interior_circularity` supplies
/// the constant `c`; otherwise the verdict flags it as skipped.
pub fn check_almost_circular_path(
    g: &OrientedGraph,
    parts: &FourParts,
    path: &Path,
    l: usize,
    interior_circularity: Option<f64>,
) -> Result<AlmostCircularVerdict, StructureError> {
    path.validate_in(g)
        .map_err(|e| StructureError::InvalidPath(e.to_string()))?;
    let labels: Vec<usize> = path
        .vertices()
        .iter()
        .map(|&v| parts.part_of(v).ok_or(StructureError::Unlabeled(v)))
        .collect::<Result<_, _>>()?;

    let label_steps_ok = labels
        .windows(2)
        .all(|w| w[1] == w[0] || w[1] == (w[0] + 1) % 4);

    let heavy_arcs = labels
        .windows(2)
        .filter(|w| w[0] == w[1] && (w[0] == 0 || w[0] == 2))
        .count();

    let interior_circular_ok = match interior_circularity {
        None => None,
        Some(c) => {
            let mut ok = true;
            for &v in path.internal_vertices() {
                if !classify_circular(g, parts, c, v)? {
                    ok = false;
                    break;
                }
            }
            Some(ok)
        }
    };

    Ok(AlmostCircularVerdict {
        label_steps_ok,
        heavy_arcs,
        heavy_arcs_ok: heavy_arcs <= l,
        interior_circular_ok,
    })
}
