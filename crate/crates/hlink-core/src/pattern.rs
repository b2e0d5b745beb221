//! The pattern multi-digraph H whose subdivisions are searched for.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern must have at least one vertex")]
    NoVertices,
    #[error("pattern must have at least one arc")]
    NoArcs,
    #[error("arc endpoint {0} out of range for pattern on {1} vertices")]
    EndpointOutOfRange(usize, usize),
    #[error("line {0}: malformed pattern line {1:?}")]
    MalformedLine(usize, String),
    #[error("missing pattern header line \"k q\"")]
    MissingHeader,
    #[error("expected {expected} arcs, found {found}")]
    ArcCountMismatch { expected: usize, found: usize },
}

/// A multi-digraph on `k` vertices with an ordered list of `q` arcs. Parallel
/// arcs are allowed; loop arcs are representable (their subdivision semantics
/// are a documented extension, see the solver).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    k: usize,
    arcs: Vec<(usize, usize)>,
}

impl PatternGraph {
    pub fn new(k: usize, arcs: Vec<(usize, usize)>) -> Result<Self, PatternError> {
        if k == 0 {
            return Err(PatternError::NoVertices);
        }
        if arcs.is_empty() {
            return Err(PatternError::NoArcs);
        }
        for &(a, b) in &arcs {
            if a >= k {
                return Err(PatternError::EndpointOutOfRange(a, k));
            }
            if b >= k {
                return Err(PatternError::EndpointOutOfRange(b, k));
            }
        }
        Ok(PatternGraph { k, arcs })
    }

    /// The single-arc pattern on two vertices, `0 -> 1`.
    pub fn single_arc() -> Self {
        PatternGraph::new(2, vec![(0, 1)]).unwrap()
    }

    /// The directed cycle pattern on `l` vertices (a loop for `l == 1`).
    pub fn directed_cycle(l: usize) -> Result<Self, PatternError> {
        if l == 0 {
            return Err(PatternError::NoVertices);
        }
        let arcs = (0..l).map(|i| (i, (i + 1) % l)).collect();
        PatternGraph::new(l, arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_loops(&self) -> bool {
        self.arcs.iter().any(|&(a, b)| a == b)
    }
}

/// Pattern file format: a header `k q`, then `q` lines `a b`. `#` comments
/// and blank lines are skipped.
pub fn parse_pattern(text: &str) -> Result<PatternGraph, PatternError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines.next().ok_or(PatternError::MissingHeader)?;
    let parse_num = |s: Option<&str>, lineno: usize, line: &str| {
        s.and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| PatternError::MalformedLine(lineno, line.to_string()))
    };
    let mut it = header.split_whitespace();
    let k = parse_num(it.next(), lineno, header)?;
    let q = parse_num(it.next(), lineno, header)?;
    if it.next().is_some() {
        return Err(PatternError::MalformedLine(lineno, header.to_string()));
    }

    let mut arcs = Vec::new();
    for (lineno, line) in lines {
        let mut it = line.split_whitespace();
        let a = parse_num(it.next(), lineno, line)?;
        let b = parse_num(it.next(), lineno, line)?;
        if it.next().is_some() {
            return Err(PatternError::MalformedLine(lineno, line.to_string()));
        }
        arcs.push((a, b));
    }
    if arcs.len() != q {
        return Err(PatternError::ArcCountMismatch {
            expected: q,
            found: arcs.len(),
        });
    }
    PatternGraph::new(k, arcs)
}

pub fn serialize_pattern(p: &PatternGraph) -> String {
    let mut s = String::new();
    writeln!(s, "{} {}", p.vertex_count(), p.arc_count()).unwrap();
    for &(a, b) in p.arcs() {
        writeln!(s, "{a} {b}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_validation() {
        let p = PatternGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(p.arc_count(), 2);
        assert!(!p.has_loops());
        assert_eq!(PatternGraph::new(0, vec![]), Err(PatternError::NoVertices));
        assert_eq!(PatternGraph::new(2, vec![]), Err(PatternError::NoArcs));
        assert_eq!(
            PatternGraph::new(2, vec![(0, 2)]),
            Err(PatternError::EndpointOutOfRange(2, 2))
        );
        assert!(PatternGraph::new(1, vec![(0, 0)]).unwrap().has_loops());
    }

    #[test]
    fn cycle_pattern() {
        let c = PatternGraph::directed_cycle(3).unwrap();
        assert_eq!(c.arcs(), &[(0, 1), (1, 2), (2, 0)]);
        let l = PatternGraph::directed_cycle(1).unwrap();
        assert_eq!(l.arcs(), &[(0, 0)]);
    }

    #[test]
    fn parse_roundtrip() {
        let p = parse_pattern("2 2\n0 1\n0 1\n").unwrap();
        assert_eq!(parse_pattern(&serialize_pattern(&p)).unwrap(), p);
        assert!(matches!(
            parse_pattern("2 1\n"),
            Err(PatternError::ArcCountMismatch { .. })
        ));
    }
}
