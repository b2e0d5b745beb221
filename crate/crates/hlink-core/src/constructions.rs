//! Deterministic generators for the two extremal counterexample families,
//! plus verifiers that re-derive every claimed property from the generated
//! object rather than trusting the builder.

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::builders::{
    bipartite_circulant_arcs, build_tournament, BuildError, TournamentMode,
};
use crate::graph::{Digraph, GraphError, OrientedGraph};
use crate::parts::{PartSystem, PartsError};
use crate::report::Report;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error(transparent)]
    Parts(#[from] PartsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("graph order {graph} does not match part universe {parts}")]
    UniverseMismatch { graph: usize, parts: usize },
}

fn range_set(n: usize, lo: usize, hi: usize) -> VertexSet {
    VertexSet::from_vertices(n, lo..hi)
}

/// Picks regular orientation for odd part sizes and near-regular otherwise.
fn internal_tournament_arcs(
    ids: &[usize],
    seed: Option<u64>,
) -> Result<Vec<(usize, usize)>, BuildError> {
    let m = ids.len();
    if m <= 1 {
        return Ok(Vec::new());
    }
    let mode = if m % 2 == 1 {
        TournamentMode::Regular
    } else {
        TournamentMode::NearRegular
    };
    let t = build_tournament(m, mode, seed)?;
    Ok(t.arcs().map(|(i, j)| (ids[i], ids[j])).collect())
}

// ---------------------------------------------------------------------------
// prop21 family: four cyclically dominating layers plus a small hub set B
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prop21Params {
    pub n: usize,
    pub k: usize,
    pub q: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prop21Sizes {
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
    pub d4: usize,
    pub b: usize,
    /// |L1| = |L3| = 2q + k.
    pub ell: usize,
}

impl Prop21Params {
    /// The semi-degree floor this family is built to meet.
    pub fn semi_degree_bound(&self) -> usize {
        (3 * self.n + 3 * self.k + 6 * self.q - 18).div_ceil(8)
    }

    pub fn sizes(&self) -> Result<Prop21Sizes, ConstructionError> {
        let (n, k, q) = (self.n as i64, self.k as i64, self.q as i64);
        if k < 2 {
            return Err(ConstructionError::Inadmissible(format!(
                "k = {k} but the hub wiring needs k >= 2"
            )));
        }
        if q < 1 {
            return Err(ConstructionError::Inadmissible("q must be >= 1".into()));
        }
        let quarters = [
            ("n+k+2q-10", n + k + 2 * q - 10),
            ("n-3k+2q+2", n - 3 * k + 2 * q + 2),
            ("n-3k-6q+18", n - 3 * k - 6 * q + 18),
        ];
        for (name, value) in quarters {
            if value <= 0 {
                return Err(ConstructionError::Inadmissible(format!(
                    "({name}) = {value} is not positive"
                )));
            }
            if value % 4 != 0 {
                return Err(ConstructionError::Inadmissible(format!(
                    "({name}) = {value} not divisible by 4"
                )));
            }
        }
        let sizes = Prop21Sizes {
            d1: ((n + k + 2 * q - 10) / 4) as usize,
            d2: ((n - 3 * k + 2 * q + 2) / 4) as usize,
            d3: ((n + k + 2 * q - 10) / 4) as usize,
            d4: ((n - 3 * k - 6 * q + 18) / 4) as usize,
            b: self.k,
            ell: 2 * self.q + self.k,
        };
        debug_assert_eq!(
            sizes.d1 + sizes.d2 + sizes.d3 + sizes.d4 + sizes.b,
            self.n
        );
        if sizes.ell > sizes.d1 {
            return Err(ConstructionError::Inadmissible(format!(
                "|L1| = 2q+k = {} exceeds |D1| = {}",
                sizes.ell, sizes.d1
            )));
        }
        Ok(sizes)
    }
}

struct Prop21Layout {
    d: [VertexSet; 4],
    b: VertexSet,
    l1: VertexSet,
    l3: VertexSet,
    u: usize,
    v: usize,
}

impl Prop21Layout {
    fn canonical(n: usize, sizes: Prop21Sizes) -> Self {
        let o1 = 0;
        let o2 = o1 + sizes.d1;
        let o3 = o2 + sizes.d2;
        let o4 = o3 + sizes.d3;
        let ob = o4 + sizes.d4;
        Prop21Layout {
            d: [
                range_set(n, o1, o2),
                range_set(n, o2, o3),
                range_set(n, o3, o4),
                range_set(n, o4, ob),
            ],
            b: range_set(n, ob, n),
            l1: range_set(n, o1, o1 + sizes.ell),
            l3: range_set(n, o3, o3 + sizes.ell),
            u: ob,
            v: ob + 1,
        }
    }
}

/// Builds the four-layer counterexample graph and its part labeling.
///
/// A seed only relabels vertices inside the internal tournaments and the
/// cross bipartite block; part membership and all degree profiles are
/// unchanged, so the same parameters always verify identically.
pub fn build_prop21(
    params: &Prop21Params,
    seed: Option<u64>,
) -> Result<(OrientedGraph, PartSystem), ConstructionError> {
    let sizes = params.sizes()?;
    let n = params.n;
    let lay = Prop21Layout::canonical(n, sizes);
    let mut g = OrientedGraph::new(n);

    // Internal tournaments on the three odd-ish layers; D4 and B independent.
    for (idx, part) in lay.d.iter().enumerate().take(3) {
        let sub = seed.map(|s| s.wrapping_add(idx as u64 + 1));
        for (a, b) in internal_tournament_arcs(&part.to_vec(), sub)? {
            g.add_arc(a, b)?;
        }
    }

    // Cyclic complete dominations D_i -> D_{i+1}.
    for i in 0..4 {
        for a in lay.d[i].iter() {
            for b in lay.d[(i + 1) % 4].iter() {
                g.add_arc(a, b)?;
            }
        }
    }

    // D3 vs D1: arcs only out of L3 or into L1.
    for y in lay.d[2].iter() {
        for x in lay.d[0].iter() {
            if lay.l3.contains(y) || lay.l1.contains(x) {
                g.add_arc(y, x)?;
            }
        }
    }

    // The D4/D2 bipartite block, with the D4 side pinned to the exact
    // out-degree the semi-degree floor demands.
    let t_out = params
        .semi_degree_bound()
        .saturating_sub(sizes.d1 + 1)
        .min(sizes.d2);
    let bip = bipartite_circulant_arcs(
        &lay.d[3].to_vec(),
        &lay.d[1].to_vec(),
        t_out,
        seed.map(|s| s.wrapping_add(17)),
    );
    for (a, b) in bip {
        g.add_arc(a, b)?;
    }

    // Hub wiring: u, v and the generic remainder of B.
    for w in lay.b.iter() {
        if w == lay.u {
            for x in lay.d[0].union(&lay.d[3]).iter() {
                g.add_arc(x, w)?;
            }
            for y in lay.d[1].union(&lay.d[2].difference(&lay.l3)).iter() {
                g.add_arc(w, y)?;
            }
        } else if w == lay.v {
            for x in lay.d[0].difference(&lay.l1).union(&lay.d[1]).iter() {
                g.add_arc(x, w)?;
            }
            for y in lay.d[2].union(&lay.d[3]).iter() {
                g.add_arc(w, y)?;
            }
        } else {
            for x in lay.d[0].union(&lay.d[1]).iter() {
                g.add_arc(x, w)?;
            }
            for y in lay.d[2].union(&lay.d[3]).iter() {
                g.add_arc(w, y)?;
            }
        }
    }

    let mut parts = PartSystem::new(n);
    parts.insert("D1", lay.d[0].clone())?;
    parts.insert("D2", lay.d[1].clone())?;
    parts.insert("D3", lay.d[2].clone())?;
    parts.insert("D4", lay.d[3].clone())?;
    parts.insert("B", lay.b.clone())?;
    parts.insert("L1", lay.l1.clone())?;
    parts.insert("L3", lay.l3.clone())?;
    parts.insert("u", VertexSet::from_vertices(n, [lay.u]))?;
    parts.insert("v", VertexSet::from_vertices(n, [lay.v]))?;
    Ok((g, parts))
}

struct Prop21View {
    d: [VertexSet; 4],
    b: VertexSet,
    l1: VertexSet,
    l3: VertexSet,
    u: usize,
    v: usize,
}

fn prop21_view(g: &OrientedGraph, parts: &PartSystem) -> Result<Prop21View, ConstructionError> {
    if parts.universe() != g.order() {
        return Err(ConstructionError::UniverseMismatch {
            graph: g.order(),
            parts: parts.universe(),
        });
    }
    let d = [
        parts.require("D1")?.clone(),
        parts.require("D2")?.clone(),
        parts.require("D3")?.clone(),
        parts.require("D4")?.clone(),
    ];
    let b = parts.require("B")?.clone();
    let l1 = parts.require("L1")?.clone();
    let l3 = parts.require("L3")?.clone();
    let u = match parts.get("u").and_then(|s| s.first()) {
        Some(u) => u,
        None => b.first().ok_or_else(|| {
            ConstructionError::Inadmissible("part B is empty, no hub vertices".into())
        })?,
    };
    let v = match parts.get("v").and_then(|s| s.first()) {
        Some(v) => v,
        None => b
            .iter()
            .find(|&w| w != u)
            .ok_or_else(|| ConstructionError::Inadmissible("part B has no second hub".into()))?,
    };
    Ok(Prop21View { d, b, l1, l3, u, v })
}

/// Collects direction/adjacency violations for a complete one-way block.
fn check_complete_domination(
    g: &OrientedGraph,
    from: &VertexSet,
    to: &VertexSet,
    label: &str,
    violations: &mut Vec<String>,
) {
    for a in from.iter() {
        for b in to.iter() {
            if g.has_arc(b, a) {
                violations.push(format!("{label}: arc {b}->{a} runs against the domination"));
            } else if !g.has_arc(a, b) {
                violations.push(format!("{label}: pair ({a},{b}) not adjacent"));
            }
        }
    }
}

fn check_independent(
    g: &OrientedGraph,
    set: &VertexSet,
    label: &str,
    violations: &mut Vec<String>,
) {
    let ids = set.to_vec();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if g.has_arc(a, b) || g.has_arc(b, a) {
                violations.push(format!("{label}: internal pair ({a},{b}) is adjacent"));
            }
        }
    }
}

fn check_tournament(
    g: &OrientedGraph,
    set: &VertexSet,
    label: &str,
    violations: &mut Vec<String>,
) {
    let ids = set.to_vec();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if !g.has_arc(a, b) && !g.has_arc(b, a) {
                violations.push(format!("{label}: pair ({a},{b}) not adjacent"));
            }
        }
    }
}

fn violations_detail(violations: &[String]) -> String {
    if violations.is_empty() {
        "all constraints hold".to_string()
    } else {
        let shown: Vec<&str> = violations.iter().take(4).map(|s| s.as_str()).collect();
        format!(
            "{} violation(s); first: {}",
            violations.len(),
            shown.join("; ")
        )
    }
}

/// Re-derives every property the four-layer family is built for. Checks:
/// exact part sizes (a), the full wiring/domination structure (b), the
/// semi-degree floor (c), the order-4 path obstruction between the two hubs
/// (d), and the |D2| − |D4| counting identity (e).
pub fn verify_prop21(
    g: &OrientedGraph,
    parts: &PartSystem,
    params: &Prop21Params,
) -> Result<Report, ConstructionError> {
    let sizes = params.sizes()?;
    let view = prop21_view(g, parts)?;
    let mut report = Report::new();

    // (a) exact part sizes
    {
        let expect = [sizes.d1, sizes.d2, sizes.d3, sizes.d4];
        let actual = [
            view.d[0].len(),
            view.d[1].len(),
            view.d[2].len(),
            view.d[3].len(),
        ];
        let mut ok = actual == expect && view.b.len() == sizes.b;
        let mut notes = format!(
            "|D1..D4| = {actual:?} (expected {expect:?}), |B| = {} (expected {})",
            view.b.len(),
            sizes.b
        );
        if view.l1.len() != sizes.ell || view.l3.len() != sizes.ell {
            ok = false;
            notes.push_str(&format!(
                ", |L1| = {} |L3| = {} (expected {})",
                view.l1.len(),
                view.l3.len(),
                sizes.ell
            ));
        }
        if !view.l1.is_subset_of(&view.d[0]) || !view.l3.is_subset_of(&view.d[2]) {
            ok = false;
            notes.push_str(", L1/L3 not nested in D1/D3");
        }
        report.push("part_sizes", ok, notes);
    }

    // (b) wiring and domination structure
    {
        let mut bad = Vec::new();
        for (i, label) in ["D1", "D2", "D3"].iter().enumerate() {
            check_tournament(g, &view.d[i], label, &mut bad);
        }
        check_independent(g, &view.d[3], "D4", &mut bad);
        check_independent(g, &view.b, "B", &mut bad);
        for i in 0..4 {
            let label = format!("D{}->D{}", i + 1, (i + 1) % 4 + 1);
            check_complete_domination(g, &view.d[i], &view.d[(i + 1) % 4], &label, &mut bad);
        }
        // D3 vs D1: adjacency exactly on (L3 x D1) ∪ (D3 x L1), directed D3 -> D1.
        for y in view.d[2].iter() {
            for x in view.d[0].iter() {
                let should = view.l3.contains(y) || view.l1.contains(x);
                match (g.has_arc(y, x), g.has_arc(x, y)) {
                    (true, _) if !should => {
                        bad.push(format!("D3/D1: unexpected arc {y}->{x}"))
                    }
                    (false, false) if should => {
                        bad.push(format!("D3/D1: pair ({y},{x}) should carry arc {y}->{x}"))
                    }
                    (_, true) => bad.push(format!("D3/D1: arc {x}->{y} runs against D3->L1/L3->D1")),
                    _ => {}
                }
            }
        }
        // Every cross pair of the D2/D4 block carries exactly one arc.
        for z in view.d[1].iter() {
            for w in view.d[3].iter() {
                if !g.has_arc(z, w) && !g.has_arc(w, z) {
                    bad.push(format!("D2/D4 bipartite: pair ({z},{w}) not adjacent"));
                }
            }
        }
        // Hub wiring.
        let (u, v) = (view.u, view.v);
        let n = g.order();
        let rest = {
            let mut r = view.b.clone();
            r.remove(u);
            r.remove(v);
            r
        };
        let u_in = view.d[0].union(&view.d[3]);
        let u_out = view.d[1].union(&view.d[2].difference(&view.l3));
        check_complete_domination(g, &u_in, &VertexSet::from_vertices(n, [u]), "->u", &mut bad);
        check_complete_domination(g, &VertexSet::from_vertices(n, [u]), &u_out, "u->", &mut bad);
        for y in view.l3.iter() {
            if g.has_arc(u, y) || g.has_arc(y, u) {
                bad.push(format!("u is adjacent to L3 vertex {y}"));
            }
        }
        let v_in = view.d[0].difference(&view.l1).union(&view.d[1]);
        let v_out = view.d[2].union(&view.d[3]);
        check_complete_domination(g, &v_in, &VertexSet::from_vertices(n, [v]), "->v", &mut bad);
        check_complete_domination(g, &VertexSet::from_vertices(n, [v]), &v_out, "v->", &mut bad);
        for x in view.l1.iter() {
            if g.has_arc(v, x) || g.has_arc(x, v) {
                bad.push(format!("v is adjacent to L1 vertex {x}"));
            }
        }
        let w_in = view.d[0].union(&view.d[1]);
        let w_out = view.d[2].union(&view.d[3]);
        check_complete_domination(g, &w_in, &rest, "->B\\{u,v}", &mut bad);
        check_complete_domination(g, &rest, &w_out, "B\\{u,v}->", &mut bad);
        report.push("domination", bad.is_empty(), violations_detail(&bad));
    }

    // (c) semi-degree floor, recomputed by direct degree scan
    {
        let actual = g.semi_degree();
        let bound = params.semi_degree_bound();
        report.push(
            "semi_degree",
            actual >= bound,
            format!("actual semi-degree {actual}, required >= {bound}"),
        );
    }

    // (d) every order-4 path from u to v has both interior vertices in D2
    {
        let (u, v) = (view.u, view.v);
        let mut count = 0usize;
        let mut bad: Option<(usize, usize)> = None;
        for a in g.out_set(u).iter() {
            if a == v {
                continue;
            }
            for b in g.out_set(a).intersection(g.in_set(v)).iter() {
                if b == u || b == v || b == a {
                    continue;
                }
                count += 1;
                if bad.is_none() && !(view.d[1].contains(a) && view.d[1].contains(b)) {
                    bad = Some((a, b));
                }
            }
        }
        let pass = bad.is_none() && count > 0;
        let detail = match bad {
            None if count > 0 => {
                format!("{count} order-4 u->v paths enumerated, all interiors inside D2")
            }
            None => "no order-4 u->v path exists".to_string(),
            Some((a, b)) => format!(
                "{count} paths enumerated; path u->{a}->{b}->v leaves D2"
            ),
        };
        report.push("short_path_obstruction", pass, detail);
    }

    // (e) |D2| - |D4| = 2(q - 2)
    {
        let diff = view.d[1].len() as i64 - view.d[3].len() as i64;
        let expect = 2 * (params.q as i64 - 2);
        report.push(
            "part_size_identity",
            diff == expect,
            format!("|D2| - |D4| = {diff}, expected {expect}"),
        );
    }

    Ok(report)
}

// ---------------------------------------------------------------------------
// section5 family: a non-k-linked graph built around two blocking sets
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Section5Params {
    pub n: usize,
    pub k: usize,
}

impl Section5Params {
    /// |B| = |C| = (n - 2k)/2.
    pub fn side_size(&self) -> Result<usize, ConstructionError> {
        if self.k < 1 {
            return Err(ConstructionError::Inadmissible("k must be >= 1".into()));
        }
        if self.n <= 2 * self.k {
            return Err(ConstructionError::Inadmissible(format!(
                "(n-2k) = {} is not positive",
                self.n as i64 - 2 * self.k as i64
            )));
        }
        let rest = self.n - 2 * self.k;
        if rest % 2 != 0 {
            return Err(ConstructionError::Inadmissible(format!(
                "(n-2k) = {rest} is odd, cannot split into |B| = |C|"
            )));
        }
        Ok(rest / 2)
    }

    /// The semi-degree floor `⌈n/4 + 3k/2 − 5/2⌉`.
    pub fn semi_degree_bound(&self) -> usize {
        (self.n + 6 * self.k - 10).div_ceil(4)
    }
}

struct Section5Layout {
    x: VertexSet,
    y: VertexSet,
    b: VertexSet,
    c: VertexSet,
    xk: usize,
    yk: usize,
}

fn section5_layout(n: usize, k: usize, s: usize) -> Section5Layout {
    Section5Layout {
        x: range_set(n, 0, k),
        y: range_set(n, k, 2 * k),
        b: range_set(n, 2 * k, 2 * k + s),
        c: range_set(n, 2 * k + s, n),
        xk: k - 1,
        yk: 2 * k - 1,
    }
}

/// Builds the non-k-linked family. The terminal pairs live in X and Y with
/// `x_i = i-1`, `y_i = k+i-1`; B and C are (near-)regular tournaments; X and Y
/// are internally transitive by index.
pub fn build_section5(
    params: &Section5Params,
    seed: Option<u64>,
) -> Result<(OrientedGraph, PartSystem), ConstructionError> {
    let s = params.side_size()?;
    let (n, k) = (params.n, params.k);
    let lay = section5_layout(n, k, s);
    let mut g = OrientedGraph::new(n);

    // (1) X, Y internally transitive by index.
    for set in [&lay.x, &lay.y] {
        let ids = set.to_vec();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                g.add_arc(a, b)?;
            }
        }
    }

    // (2) B and C span (near-)regular tournaments.
    for (idx, set) in [&lay.b, &lay.c].into_iter().enumerate() {
        let sub = seed.map(|sd| sd.wrapping_add(idx as u64 + 1));
        for (a, b) in internal_tournament_arcs(&set.to_vec(), sub)? {
            g.add_arc(a, b)?;
        }
    }

    // (3) the four one-way blocks around B and C.
    let specials = VertexSet::from_vertices(n, [lay.xk, lay.yk]);
    let others = lay.x.union(&lay.y).difference(&specials);
    for a in specials.union(&lay.c).iter() {
        for b in lay.b.iter() {
            g.add_arc(a, b)?;
        }
    }
    for a in lay.b.iter() {
        for b in others.iter() {
            g.add_arc(a, b)?;
        }
    }
    for a in lay.c.iter() {
        for b in specials.iter() {
            g.add_arc(a, b)?;
        }
    }
    for a in others.iter() {
        for b in lay.c.iter() {
            g.add_arc(a, b)?;
        }
    }

    // (4) X -> Y everywhere except the matched pairs, which run backwards.
    for i in 0..k {
        for j in 0..k {
            if i == j {
                g.add_arc(k + j, i)?;
            } else {
                g.add_arc(i, k + j)?;
            }
        }
    }

    let mut parts = PartSystem::new(n);
    parts.insert("X", lay.x.clone())?;
    parts.insert("Y", lay.y.clone())?;
    parts.insert("B", lay.b.clone())?;
    parts.insert("C", lay.c.clone())?;
    parts.insert("xk", VertexSet::from_vertices(n, [lay.xk]))?;
    parts.insert("yk", VertexSet::from_vertices(n, [lay.yk]))?;
    Ok((g, parts))
}

struct Section5View {
    x: VertexSet,
    y: VertexSet,
    b: VertexSet,
    c: VertexSet,
    xk: usize,
    yk: usize,
}

fn section5_view(
    g: &OrientedGraph,
    parts: &PartSystem,
) -> Result<Section5View, ConstructionError> {
    if parts.universe() != g.order() {
        return Err(ConstructionError::UniverseMismatch {
            graph: g.order(),
            parts: parts.universe(),
        });
    }
    let x = parts.require("X")?.clone();
    let y = parts.require("Y")?.clone();
    let b = parts.require("B")?.clone();
    let c = parts.require("C")?.clone();
    let xk = parts
        .get("xk")
        .and_then(|s| s.first())
        .or_else(|| x.iter().last())
        .ok_or_else(|| ConstructionError::Inadmissible("part X is empty".into()))?;
    let yk = parts
        .get("yk")
        .and_then(|s| s.first())
        .or_else(|| y.iter().last())
        .ok_or_else(|| ConstructionError::Inadmissible("part Y is empty".into()))?;
    Ok(Section5View { x, y, b, c, xk, yk })
}

/// Checks part sizes (a), the orientation rules around B and C plus the X/Y
/// cross block (b), the semi-degree floor (c), and the defining obstruction:
/// `y_k` unreachable from `x_k` once the other terminals are removed (d).
pub fn verify_section5(
    g: &OrientedGraph,
    parts: &PartSystem,
    params: &Section5Params,
) -> Result<Report, ConstructionError> {
    let s = params.side_size()?;
    let view = section5_view(g, parts)?;
    let mut report = Report::new();

    // (a) part sizes
    {
        let ok = view.x.len() == params.k
            && view.y.len() == params.k
            && view.b.len() == s
            && view.c.len() == s;
        report.push(
            "part_sizes",
            ok,
            format!(
                "|X| = {}, |Y| = {} (expected {}), |B| = {}, |C| = {} (expected {s})",
                view.x.len(),
                view.y.len(),
                params.k,
                view.b.len(),
                view.c.len()
            ),
        );
    }

    // (b) orientation structure
    {
        let n = g.order();
        let mut bad = Vec::new();
        check_tournament(g, &view.b, "B", &mut bad);
        check_tournament(g, &view.c, "C", &mut bad);
        let specials = VertexSet::from_vertices(n, [view.xk, view.yk]);
        let others = view.x.union(&view.y).difference(&specials);
        check_complete_domination(g, &specials.union(&view.c), &view.b, "{xk,yk}uC->B", &mut bad);
        check_complete_domination(g, &view.b, &others, "B->(XuY)\\{xk,yk}", &mut bad);
        check_complete_domination(g, &view.c, &specials, "C->{xk,yk}", &mut bad);
        check_complete_domination(g, &others, &view.c, "(XuY)\\{xk,yk}->C", &mut bad);
        // X -> Y except matched pairs. Pair x_i with y_i by ascending id.
        let xs = view.x.to_vec();
        let ys = view.y.to_vec();
        if xs.len() == ys.len() {
            for (i, &xi) in xs.iter().enumerate() {
                for (j, &yj) in ys.iter().enumerate() {
                    if i == j {
                        if !g.has_arc(yj, xi) {
                            bad.push(format!("matched pair: expected arc {yj}->{xi}"));
                        }
                    } else if !g.has_arc(xi, yj) {
                        bad.push(format!("cross block: expected arc {xi}->{yj}"));
                    }
                }
            }
        } else {
            bad.push("cannot match X against Y: sizes differ".to_string());
        }
        report.push("orientation", bad.is_empty(), violations_detail(&bad));
    }

    // (c) semi-degree floor
    {
        let actual = g.semi_degree();
        let bound = params.semi_degree_bound();
        report.push(
            "semi_degree",
            actual >= bound,
            format!("actual semi-degree {actual}, required >= {bound}"),
        );
    }

    // (d) reachability obstruction
    {
        let mut forbidden = view.x.union(&view.y);
        forbidden.remove(view.xk);
        forbidden.remove(view.yk);
        let reach = g.reachable(view.xk, view.yk, &forbidden);
        report.push(
            "reachability_obstruction",
            !reach,
            format!(
                "y_k={} {} from x_k={} once the other terminals are removed",
                view.yk,
                if reach { "REACHABLE" } else { "unreachable" },
                view.xk
            ),
        );
    }

    Ok(report)
}
