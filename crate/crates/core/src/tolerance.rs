//! Tolerances on finite lattices and their block systems.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::Id;
use crate::lattice::FiniteLattice;
use crate::rough::PreRoughAlgebra;

/// A reflexive, symmetric relation on `0..n`, kept as the sorted list of
/// pairs `(a, b)` with `a <= b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToleranceRelation {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
    matrix: Vec<bool>,
}

impl ToleranceRelation {
    /// Reflexive and symmetric closure of `pairs`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut t = ToleranceRelation {
            n,
            pairs: BTreeSet::new(),
            matrix: vec![false; n * n],
        };
        for a in 0..n {
            t.insert(a, a);
        }
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            t.insert(a, b);
        }
        Ok(t)
    }

    pub fn diagonal(n: usize) -> Self {
        Self::from_pairs(n, []).expect("in range")
    }

    pub fn total(n: usize) -> Self {
        Self::from_pairs(n, (0..n).flat_map(|a| (0..n).map(move |b| (a, b)))).expect("in range")
    }

    fn insert(&mut self, a: usize, b: usize) {
        self.pairs.insert((a.min(b), a.max(b)));
        self.matrix[a * self.n + b] = true;
        self.matrix[b * self.n + a] = true;
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.n + b]
    }

    /// Unordered pairs `(a, b)`, `a <= b`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    /// `[x]_T = {a : (a, x) ∈ T}`.
    pub fn associates(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&a| self.contains(a, x)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.pairs.len() == self.n
    }

    pub fn is_total(&self) -> bool {
        self.matrix.iter().all(|&b| b)
    }

    pub fn to_json(&self, labels: &[String]) -> ToleranceJson {
        ToleranceJson {
            pairs: self
                .pairs()
                .map(|(a, b)| [Id(labels[a].clone()), Id(labels[b].clone())])
                .collect(),
        }
    }
}

/// `{"pairs": [[a, b], ...]}`, one entry per unordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToleranceJson {
    pub pairs: Vec<[Id; 2]>,
}

/// `(a, b) ∈ T` iff `L(c) ≤ a, b ≤ M(c)` for some `c`.
pub fn coapproximability(alg: &PreRoughAlgebra) -> ToleranceRelation {
    let n = alg.len();
    let mut t = ToleranceRelation::diagonal(n);
    for c in 0..n {
        let (lo, hi) = (alg.l(c), alg.m(c));
        let between: Vec<usize> = (0..n).filter(|&x| alg.leq(lo, x) && alg.leq(x, hi)).collect();
        for (i, &a) in between.iter().enumerate() {
            for &b in &between[i..] {
                t.insert(a, b);
            }
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Compatibility {
    pub compatible: bool,
    pub counterexample: Option<String>,
}

/// Closure of `t` under meet, join and each named unary operation.
pub fn is_compatible(l: &FiniteLattice, unary: &[(&str, &[usize])], t: &ToleranceRelation) -> Compatibility {
    let label = |x: usize| l.label(x);
    let pairs: Vec<(usize, usize)> = t.pairs().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    for &(name, f) in unary {
        for &(a, b) in &pairs {
            if !t.contains(f[a], f[b]) {
                return Compatibility {
                    compatible: false,
                    counterexample: Some(format!(
                        "({}, {}) ∈ T but {name} gives ({}, {}) ∉ T",
                        label(a),
                        label(b),
                        label(f[a]),
                        label(f[b])
                    )),
                };
            }
        }
    }
    for &(a, b) in &pairs {
        for &(c, e) in &pairs {
            for (name, x, y) in [
                ("meet", l.meet(a, c), l.meet(b, e)),
                ("join", l.join(a, c), l.join(b, e)),
            ] {
                if !t.contains(x, y) {
                    return Compatibility {
                        compatible: false,
                        counterexample: Some(format!(
                            "({}, {}), ({}, {}) ∈ T but their {name} ({}, {}) ∉ T",
                            label(a),
                            label(b),
                            label(c),
                            label(e),
                            label(x),
                            label(y)
                        )),
                    };
                }
            }
        }
    }
    Compatibility {
        compatible: true,
        counterexample: None,
    }
}

/// Compatibility with `⊓, ⊔, L, ¬`.
pub fn is_compatible_rough(alg: &PreRoughAlgebra, t: &ToleranceRelation) -> Compatibility {
    let n = alg.len();
    let l: Vec<usize> = (0..n).map(|x| alg.l(x)).collect();
    let neg: Vec<usize> = (0..n).map(|x| alg.neg(x)).collect();
    is_compatible(alg.lattice(), &[("L", &l), ("neg", &neg)], t)
}

/// Maximal cliques of a tolerance, each sorted, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
            b.dedup();
        }
        blocks.sort();
        blocks.dedup();
        BlockSystem { blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn to_json(&self, labels: &[String]) -> BlockSystemJson {
        BlockSystemJson {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|&x| Id(labels[x].clone())).collect())
                .collect(),
        }
    }
}

/// `{"blocks": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystemJson {
    pub blocks: Vec<Vec<Id>>,
}

/// Bron–Kerbosch with pivoting over the tolerance graph.
pub fn blocks(t: &ToleranceRelation) -> BlockSystem {
    fn expand(t: &ToleranceRelation, r: &mut Vec<usize>, p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| (p.iter().filter(|&&v| t.contains(u, v)).count(), std::cmp::Reverse(u)))
            .expect("p is non-empty");
        let mut p = p;
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| v == pivot || !t.contains(pivot, v))
            .collect();
        for v in candidates {
            let np = p.iter().copied().filter(|&w| w != v && t.contains(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| w != v && t.contains(v, w)).collect();
            r.push(v);
            expand(t, r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    expand(t, &mut Vec::new(), (0..t.len()).collect(), Vec::new(), &mut out);
    BlockSystem::new(out)
}

/// `(⋀B, ⋁B)`, provided `B` is exactly that interval.
pub fn block_interval(l: &FiniteLattice, block: &[usize]) -> Result<(usize, usize)> {
    if block.is_empty() {
        return Err(Error::NotAnInterval("empty block".into()));
    }
    let lo = l.meet_all(block.iter().copied());
    let hi = l.join_all(block.iter().copied());
    let interval = l.interval(lo, hi);
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    if interval != sorted {
        let names = |xs: &[usize]| xs.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(", ");
        return Err(Error::NotAnInterval(format!(
            "{{{}}} differs from [{}, {}] = {{{}}}",
            names(&sorted),
            l.label(lo),
            l.label(hi),
            names(&interval)
        )));
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockClause {
    pub id: u8,
    pub statement: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

/// Outcome of the four block-system conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSystemReport {
    pub clauses: Vec<BlockClause>,
    pub passes: bool,
    /// How ideals and filters are compared in the last clause.
    pub note: &'static str,
}

impl BlockSystemReport {
    pub fn to_text(&self) -> String {
        let mut out = String::from("block system conditions\n");
        for c in &self.clauses {
            let status = if c.holds { "PASS" } else { "FAIL" };
            writeln!(out, "  [{}] {status}  {}", c.id, c.statement).unwrap();
            if let Some(w) = &c.witness {
                writeln!(out, "      counterexample: {w}").unwrap();
            }
        }
        writeln!(out, "  note: {}", self.note).unwrap();
        out
    }
}

const FILTER_NOTE: &str = "ideals and filters of finite lattices are principal; ideals are ordered by inclusion and \
filters by their generators, so a filter join is generated by the join of the generators";

/// The four conditions characterising block systems of tolerances on a
/// finite lattice.
pub fn verify_block_system(l: &FiniteLattice, s: &BlockSystem) -> BlockSystemReport {
    let name = |b: &[usize]| format!("{{{}}}", b.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(", "));
    let mut clauses = Vec::new();

    let convex = s.blocks.iter().find_map(|b| {
        if b.is_empty() {
            return Some("an empty block".to_string());
        }
        let lo = l.meet_all(b.iter().copied());
        let hi = l.join_all(b.iter().copied());
        (l.interval(lo, hi) != *b).then(|| format!("{} is not a convex sublattice", name(b)))
    });
    clauses.push(BlockClause {
        id: 1,
        statement: "every member is a convex sublattice",
        holds: convex.is_none(),
        witness: convex,
    });

    let uncovered = (0..l.len()).find(|x| !s.blocks.iter().any(|b| b.contains(x)));
    clauses.push(BlockClause {
        id: 2,
        statement: "the members cover the lattice",
        holds: uncovered.is_none(),
        witness: uncovered.map(|x| format!("{} lies in no member", l.label(x))),
    });

    // Generators of the ideal and filter of each non-empty member.
    let bounds: Vec<(usize, usize)> = s
        .blocks
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| (l.meet_all(b.iter().copied()), l.join_all(b.iter().copied())))
        .collect();
    let named: Vec<&Vec<usize>> = s.blocks.iter().filter(|b| !b.is_empty()).collect();
    let mut clash = None;
    'outer: for (i, &(lo_c, hi_c)) in bounds.iter().enumerate() {
        for (j, &(lo_e, hi_e)) in bounds.iter().enumerate() {
            if (hi_c == hi_e) != (lo_c == lo_e) {
                clash = Some(format!("{} and {}", name(named[i]), name(named[j])));
                break 'outer;
            }
        }
    }
    clauses.push(BlockClause {
        id: 3,
        statement: "equal ideals iff equal filters",
        holds: clash.is_none(),
        witness: clash.map(|w| format!("{w} agree on one side only")),
    });

    let mut missing = None;
    'pairs: for (i, &(lo_c, hi_c)) in bounds.iter().enumerate() {
        for (j, &(lo_a, hi_a)) in bounds.iter().enumerate() {
            let e = bounds
                .iter()
                .any(|&(lo_e, hi_e)| hi_e == l.join(hi_c, hi_a) && l.leq(l.join(lo_c, lo_a), lo_e));
            let f = bounds
                .iter()
                .any(|&(lo_f, hi_f)| lo_f == l.meet(lo_c, lo_a) && l.leq(hi_f, l.meet(hi_c, hi_a)));
            if !e || !f {
                let which = if e { "F" } else { "E" };
                missing = Some(format!("no {which} for {} and {}", name(named[i]), name(named[j])));
                break 'pairs;
            }
        }
    }
    clauses.push(BlockClause {
        id: 4,
        statement: "any two members have members E and F bounding their ideals and filters",
        holds: missing.is_none(),
        witness: missing,
    });
    let passes = clauses.iter().all(|c| c.holds);
    BlockSystemReport {
        clauses,
        passes,
        note: FILTER_NOTE,
    }
}

/// The tolerance whose blocks are `s`; fails unless the blocks of that
/// tolerance are exactly `s`.
pub fn reconstruct_from_blocks(n: usize, s: &BlockSystem) -> Result<ToleranceRelation> {
    let mut pairs = Vec::new();
    for b in &s.blocks {
        for (i, &a) in b.iter().enumerate() {
            for &c in &b[i..] {
                pairs.push((a, c));
            }
        }
    }
    let t = ToleranceRelation::from_pairs(n, pairs)?;
    let back = blocks(&t);
    if back != *s {
        return Err(Error::InvalidBlockSystem(format!(
            "the induced tolerance has {} blocks instead of the given {}",
            back.len(),
            s.len()
        )));
    }
    Ok(t)
}
