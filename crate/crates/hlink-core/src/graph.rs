//! Oriented-graph representation with bitset adjacency, plus the text format.
//!
//! An oriented graph is a digraph with no loops and no 2-cycles. Vertices are
//! dense ids `0..n`. Adjacency is stored as per-vertex out- and in-bitsets so
//! that the search code can do neighborhood intersections at word level.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph of order {1}")]
    VertexOutOfRange(usize, usize),
    #[error("loop arc {0}->{0} rejected")]
    LoopArc(usize),
    #[error("arc {0}->{1} would create a 2-cycle with existing arc {1}->{0}")]
    TwoCycle(usize, usize),
    #[error("duplicate arc {0}->{1}")]
    DuplicateArc(usize, usize),
    #[error("vertex sets overlap on vertex {0}")]
    OverlappingSets(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {0}: expected two integers, got {1:?}")]
    MalformedLine(usize, String),
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("line {0}: {1}")]
    BadArc(usize, GraphError),
    #[error("expected {expected} arcs, found {found}")]
    ArcCountMismatch { expected: usize, found: usize },
}

/// Common read-only view shared by [`OrientedGraph`] and [`DenseDigraph`].
///
/// The structural checkers only need orders and neighborhoods, so they are
/// written against this trait rather than a concrete graph type.
pub trait Digraph {
    fn order(&self) -> usize;
    fn out_set(&self, v: usize) -> &VertexSet;
    fn in_set(&self, v: usize) -> &VertexSet;

    fn out_degree(&self, v: usize) -> usize {
        self.out_set(v).len()
    }

    fn in_degree(&self, v: usize) -> usize {
        self.in_set(v).len()
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.out_set(u).contains(v)
    }

    /// Minimum over all vertices of `min(d⁺, d⁻)`; 0 for the empty graph.
    fn semi_degree(&self) -> usize {
        (0..self.order())
            .map(|v| self.out_degree(v).min(self.in_degree(v)))
            .min()
            .unwrap_or(0)
    }
}

/// A loop-free digraph without 2-cycles. Immutable once built: construct with
/// [`OrientedGraph::new`] + [`OrientedGraph::add_arc`], then share freely.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    m: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

impl std::fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OrientedGraph(n={}, m={})", self.n, self.m)
    }
}

impl Digraph for OrientedGraph {
    fn order(&self) -> usize {
        self.n
    }
    fn out_set(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }
    fn in_set(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }
}

impl OrientedGraph {
    pub fn new(n: usize) -> Self {
        OrientedGraph {
            n,
            m: 0,
            out: vec![VertexSet::empty(n); n],
            inn: vec![VertexSet::empty(n); n],
        }
    }

    pub fn arc_count(&self) -> usize {
        self.m
    }

    /// Adds the arc `u -> v`, rejecting loops, duplicates and 2-cycles.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::LoopArc(u));
        }
        if self.out[u].contains(v) {
            return Err(GraphError::DuplicateArc(u, v));
        }
        if self.out[v].contains(u) {
            return Err(GraphError::TwoCycle(u, v));
        }
        self.out[u].insert(v);
        self.inn[v].insert(u);
        self.m += 1;
        Ok(())
    }

    /// All arcs in ascending `(u, v)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |v| (u, v)))
    }

    /// Number of arcs from `xs` to `ys`.
    pub fn arcs_between(&self, xs: &VertexSet, ys: &VertexSet) -> usize {
        xs.iter().map(|x| self.out[x].intersection_len(ys)).sum()
    }

    /// Number of arcs with both endpoints in `xs`.
    pub fn arcs_within(&self, xs: &VertexSet) -> usize {
        self.arcs_between(xs, xs)
    }

    /// True iff no arc runs from `ys` to `xs`: every arc between the two sets
    /// (there may be none) is directed from `xs` to `ys`. Errors when the sets
    /// overlap. Note domination is not transitive and none is inferred.
    pub fn dominates(&self, xs: &VertexSet, ys: &VertexSet) -> Result<bool, GraphError> {
        if let Some(v) = xs.intersection(ys).first() {
            return Err(GraphError::OverlappingSets(v));
        }
        Ok(self.arcs_between(ys, xs) == 0)
    }

    /// BFS reachability from `from` to `to` in the graph minus `forbidden`.
    pub fn reachable(&self, from: usize, to: usize, forbidden: &VertexSet) -> bool {
        debug_assert!(!forbidden.contains(from) && !forbidden.contains(to));
        if from == to {
            return true;
        }
        let mut seen = forbidden.clone();
        seen.insert(from);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if self.out[u].contains(to) {
                return true;
            }
            for w in self.out[u].difference(&seen).iter() {
                seen.insert(w);
                queue.push_back(w);
            }
        }
        false
    }

    /// Arc-count distances from every vertex of `free ∪ {target}` to `target`,
    /// using only `free` vertices as intermediate hops. `usize::MAX` marks
    /// unreachable vertices.
    pub fn distances_to(&self, target: usize, free: &VertexSet) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[target] = 0;
        let mut frontier = VertexSet::from_vertices(self.n, [target]);
        let mut unvisited = free.clone();
        unvisited.remove(target);
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = VertexSet::empty(self.n);
            for x in frontier.iter() {
                next.union_with(&self.inn[x].intersection(&unvisited));
            }
            for w in next.iter() {
                dist[w] = d;
            }
            unvisited.subtract(&next);
            frontier = next;
        }
        dist
    }

    /// True iff every pair inside `xs` is joined by exactly one arc.
    pub fn spans_tournament(&self, xs: &VertexSet) -> bool {
        let verts = xs.to_vec();
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                if !self.has_arc(a, b) && !self.has_arc(b, a) {
                    return false;
                }
            }
        }
        true
    }
}

/// A general digraph: loops still rejected but 2-cycles allowed. Used by the
/// expansion checkers, whose input need not be an oriented graph.
#[derive(Clone)]
pub struct DenseDigraph {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

impl Digraph for DenseDigraph {
    fn order(&self) -> usize {
        self.n
    }
    fn out_set(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }
    fn in_set(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }
}

impl DenseDigraph {
    pub fn new(n: usize) -> Self {
        DenseDigraph {
            n,
            out: vec![VertexSet::empty(n); n],
            inn: vec![VertexSet::empty(n); n],
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::LoopArc(u));
        }
        self.out[u].insert(v);
        self.inn[v].insert(u);
        Ok(())
    }

    /// The complete digraph: both arcs between every pair.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.add_arc(u, v).unwrap();
                }
            }
        }
        g
    }
}

impl From<&OrientedGraph> for DenseDigraph {
    fn from(g: &OrientedGraph) -> Self {
        DenseDigraph {
            n: g.n,
            out: g.out.clone(),
            inn: g.inn.clone(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("path must contain at least one vertex")]
    Empty,
    #[error("vertex {0} repeats on the path")]
    RepeatedVertex(usize),
    #[error("consecutive pair {0}->{1} is not an arc of the host graph")]
    MissingArc(usize, usize),
    #[error("vertex {0} out of range for graph of order {1}")]
    VertexOutOfRange(usize, usize),
}

/// A directed path given as its vertex sequence. Per the conventions used
/// throughout this crate, the *length* of a path is its order (vertex count),
/// not its arc count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    verts: Vec<usize>,
}

impl Path {
    pub fn new(verts: Vec<usize>) -> Result<Self, PathError> {
        if verts.is_empty() {
            return Err(PathError::Empty);
        }
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(PathError::RepeatedVertex(w[0]));
            }
        }
        Ok(Path { verts })
    }

    /// Length of the path by the order convention: its vertex count.
    pub fn order(&self) -> usize {
        self.verts.len()
    }

    pub fn first(&self) -> usize {
        self.verts[0]
    }

    pub fn last(&self) -> usize {
        *self.verts.last().unwrap()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    /// Interior vertices (everything but the two endpoints).
    pub fn internal_vertices(&self) -> &[usize] {
        if self.verts.len() <= 2 {
            &[]
        } else {
            &self.verts[1..self.verts.len() - 1]
        }
    }

    /// Checks that every consecutive pair is an arc of `g`.
    pub fn validate_in(&self, g: &OrientedGraph) -> Result<(), PathError> {
        for &v in &self.verts {
            if v >= g.order() {
                return Err(PathError::VertexOutOfRange(v, g.order()));
            }
        }
        for w in self.verts.windows(2) {
            if !g.has_arc(w[0], w[1]) {
                return Err(PathError::MissingArc(w[0], w[1]));
            }
        }
        Ok(())
    }

    /// Like [`Path::validate_in`] but additionally requires the closing arc
    /// `last -> first`, i.e. treats the sequence as a cycle.
    pub fn validate_cycle_in(&self, g: &OrientedGraph) -> Result<(), PathError> {
        self.validate_in(g)?;
        if self.order() >= 2 && !g.has_arc(self.last(), self.first()) {
            return Err(PathError::MissingArc(self.last(), self.first()));
        }
        Ok(())
    }
}

/// Parses the plain text graph format: a header line `n m`, then `m` lines
/// `u v` (one arc each). Lines starting with `#` and blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<OrientedGraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let mut it = header.split_whitespace();
    let parse_num = |s: Option<&str>, lineno: usize, line: &str| {
        s.and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| FormatError::MalformedLine(lineno, line.to_string()))
    };
    let n = parse_num(it.next(), lineno, header)?;
    let m = parse_num(it.next(), lineno, header)?;
    if it.next().is_some() {
        return Err(FormatError::MalformedLine(lineno, header.to_string()));
    }

    let mut g = OrientedGraph::new(n);
    let mut found = 0usize;
    for (lineno, line) in lines {
        let mut it = line.split_whitespace();
        let u = parse_num(it.next(), lineno, line)?;
        let v = parse_num(it.next(), lineno, line)?;
        if it.next().is_some() {
            return Err(FormatError::MalformedLine(lineno, line.to_string()));
        }
        g.add_arc(u, v).map_err(|e| FormatError::BadArc(lineno, e))?;
        found += 1;
    }
    if found != m {
        return Err(FormatError::ArcCountMismatch { expected: m, found });
    }
    Ok(g)
}

/// Serializes a graph to the text format in normalized form: arcs sorted by
/// `(u, v)`, no comments. `parse_graph(serialize_graph(g))` reproduces `g`.
pub fn serialize_graph(g: &OrientedGraph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", g.order(), g.arc_count()).unwrap();
    for (u, v) in g.arcs() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}
