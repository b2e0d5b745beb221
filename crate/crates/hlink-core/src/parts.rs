//! Named vertex partitions and the sidecar text format.
//!
//! A `PartSystem` is an ordered collection of named vertex sets. Sets that are
//! contained in another named set are treated as auxiliary subset-parts (e.g.
//! a distinguished sub-block of a layer); the remaining *main* parts must be
//! pairwise disjoint and cover all vertices.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartsError {
    #[error("duplicate part name {0:?}")]
    DuplicateName(String),
    #[error("vertex {0} out of range for universe {1}")]
    VertexOutOfRange(usize, usize),
    #[error("line {0}: malformed part line {1:?}")]
    MalformedLine(usize, String),
    #[error("main parts {0:?} and {1:?} overlap on vertex {2}")]
    Overlap(String, String, usize),
    #[error("vertex {0} not covered by any main part")]
    Uncovered(usize),
    #[error("part {0:?} not found")]
    MissingPart(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartSystem {
    n: usize,
    entries: Vec<(String, VertexSet)>,
}

impl PartSystem {
    pub fn new(n: usize) -> Self {
        PartSystem {
            n,
            entries: Vec::new(),
        }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, name: &str, set: VertexSet) -> Result<(), PartsError> {
        if self.entries.iter().any(|(k, _)| k == name) {
            return Err(PartsError::DuplicateName(name.to_string()));
        }
        if let Some(v) = set.iter().find(|&v| v >= self.n) {
            return Err(PartsError::VertexOutOfRange(v, self.n));
        }
        self.entries.push((name.to_string(), set));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&VertexSet> {
        self.entries
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, s)| s)
    }

    pub fn require(&self, name: &str) -> Result<&VertexSet, PartsError> {
        self.get(name)
            .ok_or_else(|| PartsError::MissingPart(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }

    /// Main parts: entries not strictly contained in (or equal to a later
    /// duplicate of) another entry.
    pub fn main_parts(&self) -> Vec<(&str, &VertexSet)> {
        let mut mains = Vec::new();
        for (i, (name, set)) in self.entries.iter().enumerate() {
            let is_subset = self.entries.iter().enumerate().any(|(j, (_, other))| {
                if i == j {
                    return false;
                }
                set.is_subset_of(other) && (set != other || j < i)
            });
            if !is_subset {
                mains.push((name.as_str(), set));
            }
        }
        mains
    }

    /// Name of the main part containing `v`, if any.
    pub fn label_of(&self, v: usize) -> Option<&str> {
        self.main_parts()
            .into_iter()
            .find(|(_, set)| set.contains(v))
            .map(|(name, _)| name)
    }

    /// Checks that the main parts are pairwise disjoint and cover `0..n`.
    pub fn validate_cover(&self) -> Result<(), PartsError> {
        let mains = self.main_parts();
        let mut seen = VertexSet::empty(self.n);
        for (i, (name, set)) in mains.iter().enumerate() {
            for (other_name, other) in &mains[i + 1..] {
                if let Some(v) = set.intersection(other).first() {
                    return Err(PartsError::Overlap(
                        name.to_string(),
                        other_name.to_string(),
                        v,
                    ));
                }
            }
            seen.union_with(set);
        }
        if let Some(v) = VertexSet::full(self.n).difference(&seen).first() {
            return Err(PartsError::Uncovered(v));
        }
        Ok(())
    }
}

/// Sidecar format: one line per part, `name v1 v2 ...`. `#` comments and
/// blank lines are skipped. The universe size is taken from the host graph.
pub fn parse_parts(text: &str, n: usize) -> Result<PartSystem, PartsError> {
    let mut ps = PartSystem::new(n);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let name = it
            .next()
            .ok_or_else(|| PartsError::MalformedLine(lineno + 1, line.to_string()))?;
        let mut set = VertexSet::empty(n);
        for tok in it {
            let v: usize = tok
                .parse()
                .map_err(|_| PartsError::MalformedLine(lineno + 1, line.to_string()))?;
            if v >= n {
                return Err(PartsError::VertexOutOfRange(v, n));
            }
            set.insert(v);
        }
        ps.insert(name, set)?;
    }
    Ok(ps)
}

pub fn serialize_parts(ps: &PartSystem) -> String {
    let mut s = String::new();
    for (name, set) in &ps.entries {
        write!(s, "{name}").unwrap();
        for v in set.iter() {
            write!(s, " {v}").unwrap();
        }
        writeln!(s).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> PartSystem {
        let mut ps = PartSystem::new(6);
        ps.insert("A", VertexSet::from_vertices(6, [0, 1, 2]))
            .unwrap();
        ps.insert("B", VertexSet::from_vertices(6, [3, 4, 5]))
            .unwrap();
        ps.insert("A0", VertexSet::from_vertices(6, [0])).unwrap();
        ps
    }

    #[test]
    fn mains_exclude_subsets() {
        let ps = sample();
        let mains: Vec<&str> = ps.main_parts().into_iter().map(|(n, _)| n).collect();
        assert_eq!(mains, vec!["A", "B"]);
        assert_eq!(ps.label_of(0), Some("A"));
        assert_eq!(ps.label_of(4), Some("B"));
        ps.validate_cover().unwrap();
    }

    #[test]
    fn cover_violations_detected() {
        let mut ps = PartSystem::new(3);
        ps.insert("X", VertexSet::from_vertices(3, [0, 1])).unwrap();
        ps.insert("Y", VertexSet::from_vertices(3, [1, 2])).unwrap();
        assert!(matches!(ps.validate_cover(), Err(PartsError::Overlap(..))));

        let mut ps2 = PartSystem::new(3);
        ps2.insert("X", VertexSet::from_vertices(3, [0])).unwrap();
        assert_eq!(ps2.validate_cover(), Err(PartsError::Uncovered(1)));
    }

    #[test]
    fn sidecar_roundtrip() {
        let ps = sample();
        let text = serialize_parts(&ps);
        let back = parse_parts(&text, 6).unwrap();
        assert_eq!(back, ps);
        assert!(matches!(
            parse_parts("A 0 9\n", 6),
            Err(PartsError::VertexOutOfRange(9, 6))
        ));
        assert!(matches!(
            parse_parts("A 0\nA 1\n", 6),
            Err(PartsError::DuplicateName(_))
        ));
    }
}
