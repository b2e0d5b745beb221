//! Exact decision/search for pattern subdivisions with prescribed path
//! orders, an unpruned brute-force oracle for cross-validation, and the
//! derived all-placements / ordered-cycle queries.
//!
//! Length convention: a prescribed length is the path's order (vertex count).
//! A "path of length 4" has 4 vertices and 3 arcs.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{Digraph, OrientedGraph, Path};
use crate::pattern::PatternGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("prescribed length {length} for arc {index} is below the minimum of 4")]
    LengthTooShort { index: usize, length: usize },
    #[error("{got} lengths prescribed for {expected} pattern arcs")]
    LengthCountMismatch { expected: usize, got: usize },
    #[error("branch map required but absent from the instance")]
    BranchMapMissing,
    #[error("branch map places {got} vertices but the pattern has {expected}")]
    BranchMapWrongLength { expected: usize, got: usize },
    #[error("branch map is not injective: vertex {0} used twice")]
    BranchMapNotInjective(usize),
    #[error("branch vertex {vertex} out of range for graph of order {order}")]
    BranchVertexOutOfRange { vertex: usize, order: usize },
    #[error("pattern has {k} vertices but the graph only {n}")]
    PatternTooLarge { k: usize, n: usize },
    #[error("graph order {order} exceeds the brute-force cap {cap}")]
    OracleCapExceeded { order: usize, cap: usize },
    #[error("duplicate terminal {0}")]
    DuplicateTerminal(usize),
    #[error("budget limits must be positive")]
    ZeroBudget,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error("expected {expected} paths, got {got}")]
    PathCount { expected: usize, got: usize },
    #[error("path for arc {arc} does not join its branch vertices")]
    WrongEndpoints { arc: usize },
    #[error("path for arc {arc} has order {got}, prescribed {expected}")]
    WrongLength {
        arc: usize,
        expected: usize,
        got: usize,
    },
    #[error("path for arc {arc} is below the minimum order {min}")]
    TooShort { arc: usize, min: usize },
    #[error("path for arc {arc} uses missing arc {u}->{v}")]
    MissingArc { arc: usize, u: usize, v: usize },
    #[error("interior vertex {vertex} of arc {arc} is a branch vertex")]
    InteriorHitsBranch { arc: usize, vertex: usize },
    #[error("vertex {vertex} is interior to two different paths")]
    InteriorOverlap { vertex: usize },
}

/// Search budget. `NotFound` is an exhaustive certificate only when the
/// search finishes without tripping either limit.
#[derive(Clone, Copy, Debug)]
pub struct SolveBudget {
    node_limit: u64,
    time_limit: Option<Duration>,
}

impl Default for SolveBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget {
            node_limit: u64::MAX,
            time_limit: None,
        }
    }

    pub fn with_node_limit(nodes: u64) -> Result<Self, SolveError> {
        if nodes == 0 {
            return Err(SolveError::ZeroBudget);
        }
        Ok(SolveBudget {
            node_limit: nodes,
            time_limit: None,
        })
    }

    pub fn and_time_limit(mut self, limit: Duration) -> Result<Self, SolveError> {
        if limit.is_zero() {
            return Err(SolveError::ZeroBudget);
        }
        self.time_limit = Some(limit);
        Ok(self)
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }
}

/// One subdivision-search instance: host graph, pattern, optional branch
/// placement and optional prescribed path orders (absent means any order
/// at least 2 is accepted, i.e. plain linkage semantics).
#[derive(Clone, Debug)]
pub struct LinkageInstance<'a> {
    pub graph: &'a OrientedGraph,
    pub pattern: &'a PatternGraph,
    pub branch_map: Option<Vec<usize>>,
    pub lengths: Option<Vec<usize>>,
}

impl<'a> LinkageInstance<'a> {
    pub fn new(graph: &'a OrientedGraph, pattern: &'a PatternGraph) -> Self {
        LinkageInstance {
            graph,
            pattern,
            branch_map: None,
            lengths: None,
        }
    }

    pub fn with_branch_map(mut self, f: Vec<usize>) -> Self {
        self.branch_map = Some(f);
        self
    }

    pub fn with_lengths(mut self, lengths: Vec<usize>) -> Self {
        self.lengths = Some(lengths);
        self
    }

    fn validate(&self) -> Result<(), SolveError> {
        if self.pattern.vertex_count() > self.graph.order() {
            return Err(SolveError::PatternTooLarge {
                k: self.pattern.vertex_count(),
                n: self.graph.order(),
            });
        }
        if let Some(lengths) = &self.lengths {
            if lengths.len() != self.pattern.arc_count() {
                return Err(SolveError::LengthCountMismatch {
                    expected: self.pattern.arc_count(),
                    got: lengths.len(),
                });
            }
            for (i, &len) in lengths.iter().enumerate() {
                if len < 4 {
                    return Err(SolveError::LengthTooShort {
                        index: i,
                        length: len,
                    });
                }
            }
        }
        if let Some(f) = &self.branch_map {
            validate_branch_map(f, self.pattern.vertex_count(), self.graph.order())?;
        }
        Ok(())
    }
}

fn validate_branch_map(f: &[usize], k: usize, n: usize) -> Result<(), SolveError> {
    if f.len() != k {
        return Err(SolveError::BranchMapWrongLength {
            expected: k,
            got: f.len(),
        });
    }
    for &v in f {
        if v >= n {
            return Err(SolveError::BranchVertexOutOfRange { vertex: v, order: n });
        }
    }
    let mut sorted = f.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(SolveError::BranchMapNotInjective(w[0]));
        }
    }
    Ok(())
}

/// A realized subdivision: the branch placement plus one path per pattern
/// arc, in pattern-arc order. Paths for loop arcs hold the cycle's vertex
/// sequence starting at the branch vertex; the closing arc is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub branch_map: Vec<usize>,
    pub paths: Vec<Path>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Found(Subdivision),
    NotFound,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct SolveRun {
    pub outcome: SolveOutcome,
    pub nodes_expanded: u64,
}

/// Validates a subdivision against the instance it claims to solve. This is
/// the independent check every solver exit is audited with.
pub fn check_subdivision(
    graph: &OrientedGraph,
    pattern: &PatternGraph,
    branch_map: &[usize],
    lengths: Option<&[usize]>,
    sub: &Subdivision,
) -> Result<(), SubdivisionError> {
    let q = pattern.arc_count();
    if sub.paths.len() != q {
        return Err(SubdivisionError::PathCount {
            expected: q,
            got: sub.paths.len(),
        });
    }
    let branch_set: Vec<usize> = branch_map.to_vec();
    let mut interior_seen = VertexSet::empty(graph.order());
    for (i, &(a, b)) in pattern.arcs().iter().enumerate() {
        let path = &sub.paths[i];
        let is_loop = a == b;
        let (from, to) = (branch_map[a], branch_map[b]);
        if is_loop {
            if path.first() != from {
                return Err(SubdivisionError::WrongEndpoints { arc: i });
            }
        } else if path.first() != from || path.last() != to {
            return Err(SubdivisionError::WrongEndpoints { arc: i });
        }
        match lengths {
            Some(ls) => {
                if path.order() != ls[i] {
                    return Err(SubdivisionError::WrongLength {
                        arc: i,
                        expected: ls[i],
                        got: path.order(),
                    });
                }
            }
            None => {
                let min = if is_loop { 3 } else { 2 };
                if path.order() < min {
                    return Err(SubdivisionError::TooShort { arc: i, min });
                }
            }
        }
        let arc_check = if is_loop {
            path.validate_cycle_in(graph)
        } else {
            path.validate_in(graph)
        };
        if let Err(crate::graph::PathError::MissingArc(u, v)) = arc_check {
            return Err(SubdivisionError::MissingArc { arc: i, u, v });
        }
        arc_check.map_err(|_| SubdivisionError::WrongEndpoints { arc: i })?;
        let interior: &[usize] = if is_loop {
            &path.vertices()[1..]
        } else {
            path.internal_vertices()
        };
        for &v in interior {
            if branch_set.contains(&v) {
                return Err(SubdivisionError::InteriorHitsBranch { arc: i, vertex: v });
            }
            if interior_seen.contains(v) {
                return Err(SubdivisionError::InteriorOverlap { vertex: v });
            }
            interior_seen.insert(v);
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct Task {
    orig_idx: usize,
    from: usize,
    to: usize,
    exact: Option<usize>,
    is_loop: bool,
}

impl Task {
    /// Interior vertices this task will consume from the free pool.
    fn min_interior(&self) -> usize {
        match (self.exact, self.is_loop) {
            (Some(len), false) => len - 2,
            (Some(len), true) => len - 1,
            (None, false) => 0,
            (None, true) => 2,
        }
    }
}

struct Abort;

struct Engine<'a> {
    g: &'a OrientedGraph,
    tasks: Vec<Task>,
    /// Branch vertices plus committed and in-progress interiors.
    used: VertexSet,
    free_count: usize,
    /// Suffix sums of interior demand over tasks i.., one extra 0 at the end.
    rest_demand: Vec<usize>,
    paths: Vec<Vec<usize>>,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
}

impl<'a> Engine<'a> {
    fn tick(&mut self) -> Result<(), Abort> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Abort);
        }
        if let Some(deadline) = self.deadline {
            if self.nodes % 4096 == 0 && Instant::now() > deadline {
                return Err(Abort);
            }
        }
        Ok(())
    }

    fn solve_task(&mut self, i: usize) -> Result<bool, Abort> {
        if i == self.tasks.len() {
            return Ok(true);
        }
        let task = self.tasks[i];
        if self.rest_demand[i] > self.free_count {
            return Ok(false);
        }
        let free = VertexSet::full(self.g.order()).difference(&self.used);
        let dist = self.g.distances_to(task.to, &free);
        let mut path = vec![task.from];
        self.extend(i, task, &mut path, &dist)
    }

    fn extend(
        &mut self,
        i: usize,
        task: Task,
        path: &mut Vec<usize>,
        dist: &[usize],
    ) -> Result<bool, Abort> {
        self.tick()?;
        let cur = *path.last().unwrap();

        // Completion step.
        match task.exact {
            Some(len) => {
                let complete_at = if task.is_loop { len } else { len - 1 };
                if path.len() == complete_at {
                    if self.g.has_arc(cur, task.to) {
                        let mut full = path.clone();
                        if !task.is_loop {
                            full.push(task.to);
                        }
                        return self.commit(i, full);
                    }
                    return Ok(false);
                }
            }
            None => {
                let min_here = if task.is_loop { 3 } else { 2 };
                if path.len() + 1 >= min_here && self.g.has_arc(cur, task.to) {
                    let mut full = path.clone();
                    if !task.is_loop {
                        full.push(task.to);
                    }
                    if self.commit(i, full)? {
                        return Ok(true);
                    }
                }
            }
        }

        // Interior demand still ahead of us (this task plus the rest).
        let here = task.min_interior().saturating_sub(path.len() - 1);
        if here + self.rest_demand[i + 1] > self.free_count {
            return Ok(false);
        }

        // Extension step: free out-neighbors in ascending id order.
        let mut candidates = self.g.out_set(cur).clone();
        candidates.intersect_with(&free_mask(&self.used));
        for w in candidates.iter() {
            if let Some(len) = task.exact {
                // After stepping to w the path holds path.len()+1 vertices;
                // the arcs still to traverse must cover the distance to the
                // target (distances only grow as vertices get used, so this
                // prune is exact).
                let arcs_left = if task.is_loop {
                    len - path.len()
                } else {
                    (len - 1) - path.len()
                };
                if dist[w] == usize::MAX || dist[w] > arcs_left {
                    continue;
                }
            } else if dist[w] == usize::MAX {
                continue;
            }
            path.push(w);
            self.used.insert(w);
            self.free_count -= 1;
            let hit = self.extend(i, task, path, dist)?;
            path.pop();
            self.used.remove(w);
            self.free_count += 1;
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn commit(&mut self, i: usize, full: Vec<usize>) -> Result<bool, Abort> {
        self.paths[i] = full;
        let hit = self.solve_task(i + 1)?;
        if !hit {
            self.paths[i].clear();
        }
        Ok(hit)
    }
}

fn free_mask(used: &VertexSet) -> VertexSet {
    VertexSet::full(used.universe()).difference(used)
}

fn run_engine(
    graph: &OrientedGraph,
    pattern: &PatternGraph,
    branch_map: &[usize],
    lengths: Option<&[usize]>,
    node_limit: u64,
    deadline: Option<Instant>,
) -> Result<SolveRun, SolveError> {
    let n = graph.order();
    let mut tasks: Vec<Task> = pattern
        .arcs()
        .iter()
        .enumerate()
        .map(|(idx, &(a, b))| Task {
            orig_idx: idx,
            from: branch_map[a],
            to: branch_map[b],
            exact: lengths.map(|ls| ls[idx]),
            is_loop: a == b,
        })
        .collect();
    // Longest prescribed length first; ties and free arcs keep arc order.
    tasks.sort_by_key(|t| (std::cmp::Reverse(t.exact.unwrap_or(0)), t.orig_idx));

    let mut rest_demand = vec![0usize; tasks.len() + 1];
    for i in (0..tasks.len()).rev() {
        rest_demand[i] = rest_demand[i + 1] + tasks[i].min_interior();
    }

    // Pigeonhole precheck: interiors plus branch vertices must fit.
    if rest_demand[0] + pattern.vertex_count() > n {
        return Ok(SolveRun {
            outcome: SolveOutcome::NotFound,
            nodes_expanded: 0,
        });
    }

    let used = VertexSet::from_vertices(n, branch_map.iter().copied());
    let free_count = n - used.len();
    let mut engine = Engine {
        g: graph,
        tasks,
        used,
        free_count,
        rest_demand,
        paths: vec![Vec::new(); pattern.arc_count()],
        nodes: 0,
        node_limit,
        deadline,
    };

    let outcome = match engine.solve_task(0) {
        Err(Abort) => SolveOutcome::BudgetExceeded,
        Ok(false) => SolveOutcome::NotFound,
        Ok(true) => {
            let mut paths: Vec<Option<Path>> = vec![None; pattern.arc_count()];
            for (slot, task) in engine.paths.iter().zip(&engine.tasks) {
                paths[task.orig_idx] = Some(Path::new(slot.clone()).expect("solver built a path"));
            }
            let sub = Subdivision {
                branch_map: branch_map.to_vec(),
                paths: paths.into_iter().map(|p| p.unwrap()).collect(),
            };
            check_subdivision(graph, pattern, branch_map, lengths, &sub)
                .expect("solver returned a subdivision that fails its own check");
            SolveOutcome::Found(sub)
        }
    };
    Ok(SolveRun {
        outcome,
        nodes_expanded: engine.nodes,
    })
}

/// Backtracking search for a subdivision at a fixed branch placement.
///
/// Pattern arcs are processed in decreasing prescribed length, paths extended
/// by DFS over out-neighbor bitsets in ascending id order, pruned by exact
/// residual-distance and global interior-demand bounds, so `NotFound` without
/// budget interruption is an exhaustive-search certificate. Loop arcs of the
/// pattern ask for a cycle of the prescribed order through their branch
/// vertex (an extension beyond plain path semantics, see module docs).
pub fn find_subdivision(
    inst: &LinkageInstance,
    budget: &SolveBudget,
) -> Result<SolveRun, SolveError> {
    inst.validate()?;
    let f = inst
        .branch_map
        .as_ref()
        .ok_or(SolveError::BranchMapMissing)?;
    let deadline = budget.time_limit.map(|d| Instant::now() + d);
    run_engine(
        inst.graph,
        inst.pattern,
        f,
        inst.lengths.as_deref(),
        budget.node_limit,
        deadline,
    )
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

pub const DEFAULT_ORACLE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Found(Subdivision),
    NotFound,
}

/// Ground truth by unpruned enumeration, capped at [`DEFAULT_ORACLE_CAP`]
/// vertices.
pub fn brute_force_oracle(inst: &LinkageInstance) -> Result<OracleOutcome, SolveError> {
    brute_force_oracle_with_cap(inst, DEFAULT_ORACLE_CAP)
}

/// The oracle with an explicit order cap. Arcs are tried in pattern order and
/// paths enumerated by plain DFS with no pruning beyond simple-path validity,
/// keeping this implementation independent of the solver's search.
pub fn brute_force_oracle_with_cap(
    inst: &LinkageInstance,
    cap: usize,
) -> Result<OracleOutcome, SolveError> {
    inst.validate()?;
    if inst.graph.order() > cap {
        return Err(SolveError::OracleCapExceeded {
            order: inst.graph.order(),
            cap,
        });
    }
    let f = inst
        .branch_map
        .as_ref()
        .ok_or(SolveError::BranchMapMissing)?;
    let g = inst.graph;
    let mut used: Vec<bool> = vec![false; g.order()];
    for &v in f {
        used[v] = true;
    }
    let mut paths: Vec<Vec<usize>> = vec![Vec::new(); inst.pattern.arc_count()];
    let found = oracle_arc(g, inst.pattern, f, inst.lengths.as_deref(), 0, &mut used, &mut paths);
    if !found {
        return Ok(OracleOutcome::NotFound);
    }
    let sub = Subdivision {
        branch_map: f.clone(),
        paths: paths
            .into_iter()
            .map(|p| Path::new(p).expect("oracle built a path"))
            .collect(),
    };
    check_subdivision(g, inst.pattern, f, inst.lengths.as_deref(), &sub)
        .expect("oracle returned a subdivision that fails the check");
    Ok(OracleOutcome::Found(sub))
}

fn oracle_arc(
    g: &OrientedGraph,
    pattern: &PatternGraph,
    f: &[usize],
    lengths: Option<&[usize]>,
    i: usize,
    used: &mut Vec<bool>,
    paths: &mut Vec<Vec<usize>>,
) -> bool {
    if i == pattern.arc_count() {
        return true;
    }
    let (a, b) = pattern.arcs()[i];
    let exact = lengths.map(|ls| ls[i]);
    let mut prefix = vec![f[a]];
    oracle_paths(g, pattern, f, lengths, i, f[b], a == b, exact, &mut prefix, used, paths)
}

#[allow(clippy::too_many_arguments)]
fn oracle_paths(
    g: &OrientedGraph,
    pattern: &PatternGraph,
    f: &[usize],
    lengths: Option<&[usize]>,
    i: usize,
    target: usize,
    is_loop: bool,
    exact: Option<usize>,
    prefix: &mut Vec<usize>,
    used: &mut Vec<bool>,
    paths: &mut Vec<Vec<usize>>,
) -> bool {
    let cur = *prefix.last().unwrap();
    let order_if_closed = prefix.len() + usize::from(!is_loop);
    let closes = match exact {
        Some(len) => order_if_closed == len,
        None => order_if_closed >= if is_loop { 3 } else { 2 },
    };
    if closes && g.has_arc(cur, target) {
        let mut full = prefix.clone();
        if !is_loop {
            full.push(target);
        }
        paths[i] = full;
        if oracle_arc(g, pattern, f, lengths, i + 1, used, paths) {
            return true;
        }
        paths[i].clear();
    }
    if let Some(len) = exact {
        if order_if_closed >= len {
            return false;
        }
    }
    for w in 0..g.order() {
        if used[w] || !g.has_arc(cur, w) {
            continue;
        }
        prefix.push(w);
        used[w] = true;
        let hit = oracle_paths(
            g, pattern, f, lengths, i, target, is_loop, exact, prefix, used, paths,
        );
        prefix.pop();
        used[w] = false;
        if hit {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Quantified queries
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlacementOutcome {
    AllFound,
    Counterexample(Vec<usize>),
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct PlacementRun {
    pub outcome: PlacementOutcome,
    pub nodes_expanded: u64,
    pub placements_tried: u64,
}

/// Quantifies [`find_subdivision`] over every injection of the pattern
/// vertices, in lexicographic order, under one shared budget. With `lengths`
/// absent any path order at least 2 is accepted (plain linkage semantics).
pub fn is_h_linked_for_all_f(
    graph: &OrientedGraph,
    pattern: &PatternGraph,
    lengths: Option<&[usize]>,
    budget: &SolveBudget,
) -> Result<PlacementRun, SolveError> {
    let k = pattern.vertex_count();
    let n = graph.order();
    let template = LinkageInstance {
        graph,
        pattern,
        branch_map: None,
        lengths: lengths.map(|l| l.to_vec()),
    };
    template.validate()?;
    let deadline = budget.time_limit.map(|d| Instant::now() + d);
    let mut total_nodes = 0u64;
    let mut placements = 0u64;
    let mut stack: Vec<usize> = Vec::with_capacity(k);
    let mut taken = vec![false; n];

    // Depth-first lexicographic enumeration of injections.
    fn next_candidate(taken: &[bool], from: usize) -> Option<usize> {
        (from..taken.len()).find(|&v| !taken[v])
    }

    let mut cursor = vec![0usize; k + 1];
    loop {
        if stack.len() == k {
            placements += 1;
            let remaining = budget.node_limit.saturating_sub(total_nodes);
            if remaining == 0 {
                return Ok(PlacementRun {
                    outcome: PlacementOutcome::BudgetExceeded,
                    nodes_expanded: total_nodes,
                    placements_tried: placements,
                });
            }
            let run = run_engine(graph, pattern, &stack, lengths, remaining, deadline)?;
            total_nodes += run.nodes_expanded;
            match run.outcome {
                SolveOutcome::Found(_) => {}
                SolveOutcome::NotFound => {
                    return Ok(PlacementRun {
                        outcome: PlacementOutcome::Counterexample(stack.clone()),
                        nodes_expanded: total_nodes,
                        placements_tried: placements,
                    });
                }
                SolveOutcome::BudgetExceeded => {
                    return Ok(PlacementRun {
                        outcome: PlacementOutcome::BudgetExceeded,
                        nodes_expanded: total_nodes,
                        placements_tried: placements,
                    });
                }
            }
            // Backtrack to advance the last coordinate.
            let v = stack.pop().unwrap();
            taken[v] = false;
            cursor[stack.len()] = v + 1;
            continue;
        }
        match next_candidate(&taken, cursor[stack.len()]) {
            Some(v) => {
                taken[v] = true;
                stack.push(v);
                cursor[stack.len()] = 0;
            }
            None => {
                if stack.is_empty() {
                    return Ok(PlacementRun {
                        outcome: PlacementOutcome::AllFound,
                        nodes_expanded: total_nodes,
                        placements_tried: placements,
                    });
                }
                let v = stack.pop().unwrap();
                taken[v] = false;
                cursor[stack.len()] = v + 1;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderedCycleOutcome {
    Found(Path),
    NotFound,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct OrderedCycleRun {
    pub outcome: OrderedCycleOutcome,
    pub nodes_expanded: u64,
}

/// Looks for a cycle visiting `terminals` in the given order, with optional
/// prescribed segment orders (terminal-to-terminal path lengths, each at
/// least 4 and sharing endpoints). Reduces to a directed-cycle pattern
/// solved by [`find_subdivision`].
pub fn l_ordered_check(
    graph: &OrientedGraph,
    terminals: &[usize],
    segment_lengths: Option<&[usize]>,
    budget: &SolveBudget,
) -> Result<OrderedCycleRun, SolveError> {
    let l = terminals.len();
    let mut sorted = terminals.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(SolveError::DuplicateTerminal(w[0]));
        }
    }
    let pattern = PatternGraph::directed_cycle(l).map_err(|_| SolveError::PatternTooLarge {
        k: 0,
        n: graph.order(),
    })?;
    let mut inst = LinkageInstance::new(graph, &pattern).with_branch_map(terminals.to_vec());
    if let Some(ls) = segment_lengths {
        inst = inst.with_lengths(ls.to_vec());
    }
    let run = find_subdivision(&inst, budget)?;
    let outcome = match run.outcome {
        SolveOutcome::NotFound => OrderedCycleOutcome::NotFound,
        SolveOutcome::BudgetExceeded => OrderedCycleOutcome::BudgetExceeded,
        SolveOutcome::Found(sub) => {
            let mut cycle: Vec<usize> = Vec::new();
            if l == 1 {
                cycle = sub.paths[0].vertices().to_vec();
            } else {
                for path in &sub.paths {
                    let verts = path.vertices();
                    cycle.extend_from_slice(&verts[..verts.len() - 1]);
                }
            }
            let cycle = Path::new(cycle).expect("segments are internally disjoint");
            cycle
                .validate_cycle_in(graph)
                .expect("assembled cycle must be valid");
            OrderedCycleOutcome::Found(cycle)
        }
    };
    Ok(OrderedCycleRun {
        outcome,
        nodes_expanded: run.nodes_expanded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OrientedGraph;

    fn directed_cycle_graph(n: usize) -> OrientedGraph {
        let mut g = OrientedGraph::new(n);
        for i in 0..n {
            g.add_arc(i, (i + 1) % n).unwrap();
        }
        g
    }

    fn transitive_tournament(n: usize) -> OrientedGraph {
        let mut g = OrientedGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_arc(i, j).unwrap();
            }
        }
        g
    }

    #[test]
    fn four_cycle_single_arc_found() {
        let g = directed_cycle_graph(4);
        let h = PatternGraph::single_arc();
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![0, 3])
            .with_lengths(vec![4]);
        let run = find_subdivision(&inst, &SolveBudget::unlimited()).unwrap();
        match run.outcome {
            SolveOutcome::Found(sub) => {
                assert_eq!(sub.paths[0].vertices(), &[0, 1, 2, 3]);
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn transitive_sink_has_no_outgoing_path() {
        let g = transitive_tournament(4);
        let h = PatternGraph::single_arc();
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![3, 0])
            .with_lengths(vec![4]);
        let run = find_subdivision(&inst, &SolveBudget::unlimited()).unwrap();
        assert_eq!(run.outcome, SolveOutcome::NotFound);
    }

    #[test]
    fn oracle_agrees_on_trivial_cases() {
        let g = directed_cycle_graph(4);
        let h = PatternGraph::single_arc();
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![0, 3])
            .with_lengths(vec![4]);
        assert!(matches!(
            brute_force_oracle(&inst).unwrap(),
            OracleOutcome::Found(_)
        ));

        let g = transitive_tournament(4);
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![3, 0])
            .with_lengths(vec![4]);
        assert_eq!(brute_force_oracle(&inst).unwrap(), OracleOutcome::NotFound);
    }

    #[test]
    fn oracle_pigeonhole_notfound() {
        // Lengths demand more interior vertices than exist.
        let g = directed_cycle_graph(5);
        let h = PatternGraph::single_arc();
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![0, 4])
            .with_lengths(vec![8]);
        assert_eq!(brute_force_oracle(&inst).unwrap(), OracleOutcome::NotFound);
        let run = find_subdivision(&inst, &SolveBudget::unlimited()).unwrap();
        assert_eq!(run.outcome, SolveOutcome::NotFound);
        assert_eq!(run.nodes_expanded, 0, "precheck should cut the search");
    }

    #[test]
    fn parallel_arcs_on_disjoint_paths_graph() {
        // Two internally disjoint order-4 paths from 0 to 5.
        let mut g = OrientedGraph::new(6);
        for (u, v) in [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)] {
            g.add_arc(u, v).unwrap();
        }
        let h = PatternGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![0, 5])
            .with_lengths(vec![4, 4]);
        assert!(matches!(
            brute_force_oracle(&inst).unwrap(),
            OracleOutcome::Found(_)
        ));
        let run = find_subdivision(&inst, &SolveBudget::unlimited()).unwrap();
        assert!(matches!(run.outcome, SolveOutcome::Found(_)));
    }

    #[test]
    fn length_below_four_rejected() {
        let g = directed_cycle_graph(4);
        let h = PatternGraph::single_arc();
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![0, 3])
            .with_lengths(vec![3]);
        assert_eq!(
            find_subdivision(&inst, &SolveBudget::unlimited()).unwrap_err(),
            SolveError::LengthTooShort {
                index: 0,
                length: 3
            }
        );
    }

    #[test]
    fn non_injective_branch_map_rejected() {
        let g = directed_cycle_graph(4);
        let h = PatternGraph::new(2, vec![(0, 1)]).unwrap();
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![1, 1])
            .with_lengths(vec![4]);
        assert_eq!(
            find_subdivision(&inst, &SolveBudget::unlimited()).unwrap_err(),
            SolveError::BranchMapNotInjective(1)
        );
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let g = transitive_tournament(10);
        let h = PatternGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![0, 9])
            .with_lengths(vec![5, 5]);
        let run = find_subdivision(&inst, &SolveBudget::with_node_limit(2).unwrap()).unwrap();
        assert_eq!(run.outcome, SolveOutcome::BudgetExceeded);
    }

    #[test]
    fn rotational_tournament_is_linked_for_all_placements() {
        let g = crate::builders::build_tournament(7, crate::builders::TournamentMode::Regular, None)
            .unwrap();
        let h = PatternGraph::single_arc();
        let run =
            is_h_linked_for_all_f(&g, &h, None, &SolveBudget::unlimited()).unwrap();
        assert_eq!(run.outcome, PlacementOutcome::AllFound);
        assert_eq!(run.placements_tried, 42);
    }

    #[test]
    fn transitive_tournament_counterexample_is_lexicographic_first() {
        let g = transitive_tournament(5);
        let h = PatternGraph::single_arc();
        let run =
            is_h_linked_for_all_f(&g, &h, None, &SolveBudget::unlimited()).unwrap();
        // No path leads backwards in a transitive tournament; the first
        // failing placement in lexicographic order is (1, 0).
        assert_eq!(run.outcome, PlacementOutcome::Counterexample(vec![1, 0]));
    }

    #[test]
    fn ordered_cycle_on_directed_cycle() {
        let g = directed_cycle_graph(8);
        let run = l_ordered_check(&g, &[0, 3, 5], None, &SolveBudget::unlimited()).unwrap();
        match run.outcome {
            OrderedCycleOutcome::Found(cycle) => {
                assert_eq!(cycle.order(), 8);
                assert_eq!(cycle.first(), 0);
            }
            other => panic!("expected Found, got {other:?}"),
        }
        // Non-cyclic visiting order cannot be realized on the unique cycle.
        let run = l_ordered_check(&g, &[0, 5, 3], None, &SolveBudget::unlimited()).unwrap();
        assert_eq!(run.outcome, OrderedCycleOutcome::NotFound);
    }

    #[test]
    fn ordered_cycle_duplicate_terminals_rejected() {
        let g = directed_cycle_graph(8);
        assert_eq!(
            l_ordered_check(&g, &[0, 0], None, &SolveBudget::unlimited()).unwrap_err(),
            SolveError::DuplicateTerminal(0)
        );
    }

    #[test]
    fn loop_arc_asks_for_a_cycle() {
        let g = directed_cycle_graph(5);
        let h = PatternGraph::new(1, vec![(0, 0)]).unwrap();
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![2])
            .with_lengths(vec![5]);
        let run = find_subdivision(&inst, &SolveBudget::unlimited()).unwrap();
        match run.outcome {
            SolveOutcome::Found(sub) => {
                assert_eq!(sub.paths[0].order(), 5);
                assert_eq!(sub.paths[0].first(), 2);
            }
            other => panic!("expected Found, got {other:?}"),
        }
        // No 4-cycle exists inside a 5-cycle.
        let inst = LinkageInstance::new(&g, &h)
            .with_branch_map(vec![2])
            .with_lengths(vec![4]);
        let run = find_subdivision(&inst, &SolveBudget::unlimited()).unwrap();
        assert_eq!(run.outcome, SolveOutcome::NotFound);
    }

    #[test]
    fn check_subdivision_rejects_tampered_results() {
        let g = directed_cycle_graph(4);
        let h = PatternGraph::single_arc();
        let good = Subdivision {
            branch_map: vec![0, 3],
            paths: vec![Path::new(vec![0, 1, 2, 3]).unwrap()],
        };
        check_subdivision(&g, &h, &[0, 3], Some(&[4]), &good).unwrap();
        assert_eq!(
            check_subdivision(&g, &h, &[0, 3], Some(&[5]), &good),
            Err(SubdivisionError::WrongLength {
                arc: 0,
                expected: 5,
                got: 4
            })
        );
        let bad = Subdivision {
            branch_map: vec![0, 3],
            paths: vec![Path::new(vec![0, 2, 1, 3]).unwrap()],
        };
        assert!(matches!(
            check_subdivision(&g, &h, &[0, 3], Some(&[4]), &bad),
            Err(SubdivisionError::MissingArc { .. })
        ));
    }
}
