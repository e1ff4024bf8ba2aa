use std::collections::HashMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{build_lattice, FiniteLattice, FinitePoset};
use crate::error::{Error, Result};
use crate::json::Id;

/// `{"elements": [...], "leq": [[a, b], ...], "covers": true}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<Id>,
    pub leq: Vec<[Id; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub covers: bool,
}

impl LatticeJson {
    /// Cover-pair encoding of a poset.
    pub fn from_poset(p: &FinitePoset) -> Self {
        let label = |i: usize| Id(p.label(i).to_string());
        LatticeJson {
            elements: (0..p.len()).map(label).collect(),
            leq: p.cover_pairs().into_iter().map(|(a, b)| [label(a), label(b)]).collect(),
            covers: true,
        }
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        let index: HashMap<&str, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.0.as_str(), i))
            .collect();
        let lookup = |id: &Id| {
            index
                .get(id.0.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownElement(id.0.clone()))
        };
        let pairs = self
            .leq
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let labels = self.elements.iter().map(|e| e.0.clone());
        if self.covers {
            FinitePoset::from_covers(labels, pairs)
        } else {
            FinitePoset::from_relation(labels, pairs)
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        build_lattice(self.to_poset()?)
    }
}

/// Shortens labels longer than 40 characters, keeping them distinct by a
/// digest suffix.
pub fn truncate_label(label: &str) -> String {
    const MAX: usize = 40;
    if label.chars().count() <= MAX {
        return label.to_string();
    }
    let digest = Sha256::digest(label.as_bytes());
    let head: String = label.chars().take(MAX).collect();
    let mut suffix = String::new();
    for byte in &digest[..4] {
        write!(suffix, "{byte:02x}").expect("writing to a String");
    }
    format!("{head}…#{suffix}")
}

/// Hasse diagram in DOT with the minimal elements at rank 0.
pub fn hasse_dot(p: &FinitePoset, name: &str) -> String {
    let heights = p.heights();
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for i in 0..p.len() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(&truncate_label(p.label(i)))).unwrap();
    }
    let max_height = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=max_height {
        let ids: Vec<String> = (0..p.len())
            .filter(|&i| heights[i] == h)
            .map(|i| format!("n{i}"))
            .collect();
        if !ids.is_empty() {
            writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
        }
    }
    for (a, b) in p.cover_pairs() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
