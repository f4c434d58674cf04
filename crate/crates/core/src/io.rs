//! Text and JSON serializations of hypergraphs.
//!
//! Text: a `p hg <n> <r>` header, then one `e v1 .. vr` line per edge with
//! 0-indexed vertices. Lines starting with `c` are comments.
//!
//! JSON: `{"n": .., "r": .., "edges": [[..], ..]}` with sorted vertex lists.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphJson { n: self.n(), r: self.r(), edges: self.edge_lists() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HypergraphJson::deserialize(d)?;
        Hypergraph::from_edges(raw.n, raw.r, raw.edges).map_err(serde::de::Error::custom)
    }
}

pub fn to_text(h: &Hypergraph) -> String {
    let mut out = format!("p hg {} {}\n", h.n(), h.r());
    for e in h.edge_lists() {
        out.push('e');
        for v in e {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn from_text(src: &str) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let lineno = i + 1;
        let err = |message: String| Error::Parse { line: lineno, message };
        let mut tok = line.split_whitespace();
        match tok.next() {
            None => continue,
            Some(t) if t.starts_with('c') => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(err("second header line".into()));
                }
                if tok.next() != Some("hg") {
                    return Err(err("expected `p hg <n> <r>`".into()));
                }
                let nums: Vec<usize> = tok
                    .map(|t| t.parse().map_err(|_| err(format!("bad integer {t:?}"))))
                    .collect::<Result<_>>()?;
                let [n, r] = nums[..] else {
                    return Err(err("expected `p hg <n> <r>`".into()));
                };
                header = Some((n, r));
            }
            Some("e") => {
                let Some((_, r)) = header else {
                    return Err(err("edge before header".into()));
                };
                let verts: Vec<usize> = tok
                    .map(|t| t.parse().map_err(|_| err(format!("bad vertex {t:?}"))))
                    .collect::<Result<_>>()?;
                if verts.len() != r {
                    return Err(err(format!("edge has {} vertices, expected {r}", verts.len())));
                }
                edges.push((lineno, verts));
            }
            Some(t) => return Err(err(format!("unknown line type {t:?}"))),
        }
    }
    let (n, r) = header.ok_or(Error::Parse { line: 0, message: "missing `p hg` header".into() })?;
    let mut masks = Vec::with_capacity(edges.len());
    let mut seen = std::collections::HashSet::new();
    for (lineno, verts) in edges {
        let h = Hypergraph::from_edges(n, r, [&verts]).map_err(|e| Error::Parse { line: lineno, message: e.to_string() })?;
        let m = h.edges()[0];
        if !seen.insert(m) {
            return Err(Error::Parse { line: lineno, message: format!("duplicate edge {verts:?}") });
        }
        masks.push(m);
    }
    Hypergraph::from_masks(n, r, masks)
}

pub fn to_json(h: &Hypergraph) -> String {
    serde_json::to_string(h).expect("hypergraph serialization cannot fail")
}

pub fn from_json(src: &str) -> Result<Hypergraph> {
    Ok(serde_json::from_str(src)?)
}

/// Parse either format, picking JSON when the first non-blank character
/// is `{`.
pub fn parse_any(src: &str) -> Result<Hypergraph> {
    if src.trim_start().starts_with('{') {
        from_json(src)
    } else {
        from_text(src)
    }
}
