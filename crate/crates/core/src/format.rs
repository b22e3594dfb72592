//! Text encodings of [`BipartiteGraph`].
//!
//! JSON: `{"left":L,"right":R,"edges":[[l,r],...]}` with edges in
//! lexicographic order, emitted compactly on one line.
//!
//! DIMACS-like: a header `p bip L R E` followed by one `e l r` line per edge,
//! indices 1-based, same edge order. Lines starting with `c` are comments.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&BipartiteGraph> for GraphJson {
    fn from(g: &BipartiteGraph) -> Self {
        GraphJson {
            left: g.left_size(),
            right: g.right_size(),
            edges: g.edges().into_iter().map(|(l, r)| [l, r]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for BipartiteGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        BipartiteGraph::from_edges(j.left, j.right, j.edges.into_iter().map(|[l, r]| (l, r)))
    }
}

impl Serialize for BipartiteGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        BipartiteGraph::try_from(j).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(g: &BipartiteGraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph JSON is always serializable")
}

pub fn from_json(s: &str) -> Result<BipartiteGraph> {
    let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    BipartiteGraph::try_from(j)
}

pub fn to_dimacs(g: &BipartiteGraph) -> String {
    let edges = g.edges();
    let mut out = format!("p bip {} {} {}\n", g.left_size(), g.right_size(), edges.len());
    for (l, r) in edges {
        writeln!(out, "e {} {}", l + 1, r + 1).unwrap();
    }
    out
}

pub fn from_dimacs(s: &str) -> Result<BipartiteGraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (lineno, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: malformed `{line}`", lineno + 1));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        match fields.as_slice() {
            ["p", "bip", l, r, e] if header.is_none() => {
                header = Some((num(l)?, num(r)?, num(e)?));
            }
            ["e", l, r] if header.is_some() => {
                let (l, r) = (num(l)?, num(r)?);
                if l == 0 || r == 0 {
                    return Err(Error::Parse(format!(
                        "line {}: vertex indices are 1-based",
                        lineno + 1
                    )));
                }
                edges.push((l - 1, r - 1));
            }
            _ => return Err(bad()),
        }
    }
    let (left, right, count) =
        header.ok_or_else(|| Error::Parse("missing `p bip L R E` header".into()))?;
    if edges.len() != count {
        return Err(Error::Parse(format!(
            "header declares {count} edges, found {}",
            edges.len()
        )));
    }
    BipartiteGraph::from_edges(left, right, edges)
}

/// Parses either encoding, deciding by the first non-blank character.
pub fn parse_any(s: &str) -> Result<BipartiteGraph> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        from_dimacs(s)
    }
}

/// Serde adapter writing a [`BigCount`](crate::BigCount) as a decimal string.
pub mod decimal {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::BigCount;

    pub fn serialize<S: Serializer>(v: &BigCount, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigCount, D::Error> {
        let s = String::deserialize(d)?;
        BigCount::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom(format!("`{s}` is not a decimal integer")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, BipartiteGraph};

    #[test]
    fn p4_json_is_exact() {
        let p = path(4).unwrap();
        assert_eq!(to_json(&p), r#"{"left":2,"right":2,"edges":[[0,0],[1,0],[1,1]]}"#);
        assert_eq!(from_json(&to_json(&p)).unwrap(), p);
    }

    #[test]
    fn p4_dimacs_is_exact() {
        let p = path(4).unwrap();
        assert_eq!(to_dimacs(&p), "p bip 2 2 3\ne 1 1\ne 2 1\ne 2 2\n");
        assert_eq!(from_dimacs(&to_dimacs(&p)).unwrap(), p);
    }

    #[test]
    fn empty_graph_encodings() {
        let g = BipartiteGraph::empty();
        assert_eq!(to_json(&g), r#"{"left":0,"right":0,"edges":[]}"#);
        assert_eq!(to_dimacs(&g), "p bip 0 0 0\n");
        assert_eq!(parse_any("p bip 0 0 0\n").unwrap(), g);
    }

    #[test]
    fn dimacs_rejects_bad_input() {
        assert!(from_dimacs("e 1 1\n").is_err());
        assert!(from_dimacs("p bip 1 1 2\ne 1 1\n").is_err());
        assert!(from_dimacs("p bip 1 1 1\ne 0 1\n").is_err());
        assert!(from_dimacs("p bip 1 1 1\ne 1 2\n").is_err());
        assert!(from_dimacs("p bip 1 1 1\nx\n").is_err());
    }

    #[test]
    fn dimacs_skips_comments() {
        let g = from_dimacs("c hello\np bip 1 1 1\nc mid\ne 1 1\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 0)]);
    }

    #[test]
    fn json_rejects_out_of_range_edges() {
        assert!(from_json(r#"{"left":1,"right":1,"edges":[[0,1]]}"#).is_err());
        assert!(from_json("{").is_err());
    }
}
