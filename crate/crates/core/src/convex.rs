//! Convex sublattices, the lattice `Co(L)`, and convex subsets of posets.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    build_lattice, check_condition_with, find_isomorphism, hasse_dot, semi_join_distributivity, Condition,
    FiniteLattice, FinitePoset, LatticeJson,
};
use crate::par::Parallelism;

/// A subset of an ambient carrier of at most 64 elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct ConvexSublattice(pub u64);

impl ConvexSublattice {
    pub const EMPTY: ConvexSublattice = ConvexSublattice(0);

    pub fn from_members(members: impl IntoIterator<Item = usize>) -> Self {
        ConvexSublattice(members.into_iter().fold(0, |acc, x| acc | 1 << x))
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn members(self) -> Vec<usize> {
        (0..64).filter(|&x| self.contains(x)).collect()
    }

    pub fn label(self, labels: &[String]) -> String {
        let names: Vec<&str> = self.members().into_iter().map(|x| labels[x].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

fn check_ambient(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeCapExceeded {
            what: "convex-sublattice ambient carrier",
            size: n,
            cap,
        });
    }
    if n > 64 {
        return Err(Error::SizeCapExceeded {
            what: "convex-sublattice ambient carrier",
            size: n,
            cap: 64,
        });
    }
    Ok(())
}

fn interval_set(l: &FiniteLattice, lo: usize, hi: usize) -> ConvexSublattice {
    ConvexSublattice::from_members(l.interval(lo, hi))
}

/// Direct check: closed under meet and join and order-convex.
pub fn is_convex_sublattice(l: &FiniteLattice, s: ConvexSublattice) -> bool {
    let m = s.members();
    m.iter().all(|&x| {
        m.iter().all(|&y| {
            s.contains(l.meet(x, y))
                && s.contains(l.join(x, y))
                && (!l.leq(x, y) || l.interval(x, y).into_iter().all(|a| s.contains(a)))
        })
    })
}

/// `∅` followed by one interval `[m, M]` per pair `m ≤ M`, in
/// lexicographic order of `(m, M)`.
pub fn enumerate_convex_sublattices(l: &FiniteLattice, cap: usize) -> Result<Vec<ConvexSublattice>> {
    let n = l.len();
    check_ambient(n, cap)?;
    let mut out = vec![ConvexSublattice::EMPTY];
    for lo in 0..n {
        for hi in 0..n {
            if l.leq(lo, hi) {
                out.push(interval_set(l, lo, hi));
            }
        }
    }
    Ok(out)
}

/// `A ∪ B ∪ {x : y ≤ x ≤ z for some (y, z) ∈ A×B ∪ B×A}`.
pub fn co_join_formula(l: &FiniteLattice, a: ConvexSublattice, b: ConvexSublattice) -> ConvexSublattice {
    let mut out = a.0 | b.0;
    for y in a.members() {
        for z in b.members() {
            for (lo, hi) in [(y, z), (z, y)] {
                if l.leq(lo, hi) {
                    out |= interval_set(l, lo, hi).0;
                }
            }
        }
    }
    ConvexSublattice(out)
}

/// Least convex sublattice containing `s`, by saturating under meet, join
/// and betweenness.
pub fn convex_closure(l: &FiniteLattice, s: ConvexSublattice) -> ConvexSublattice {
    let mut cur = s;
    loop {
        let mut next = cur.0;
        let m = cur.members();
        for &x in &m {
            for &y in &m {
                next |= 1 << l.meet(x, y) | 1 << l.join(x, y);
                if l.leq(x, y) {
                    next |= interval_set(l, x, y).0;
                }
            }
        }
        if next == cur.0 {
            return cur;
        }
        cur = ConvexSublattice(next);
    }
}

/// The join in `Co(L)`; fails when the explicit formula and the closure
/// disagree.
pub fn co_join(l: &FiniteLattice, a: ConvexSublattice, b: ConvexSublattice) -> Result<ConvexSublattice> {
    let formula = co_join_formula(l, a, b);
    let closure = convex_closure(l, ConvexSublattice(a.0 | b.0));
    if formula != closure {
        return Err(Error::FormulaClosureMismatch {
            formula: formula.label(l.labels()),
            closure: closure.label(l.labels()),
        });
    }
    Ok(formula)
}

/// Convex sublattices ordered by inclusion.
#[derive(Debug, Clone)]
pub struct CoLattice {
    ambient: FiniteLattice,
    elements: Vec<ConvexSublattice>,
    index: HashMap<ConvexSublattice, usize>,
    lattice: FiniteLattice,
}

/// The finitely testable structural claims about `Co(L)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoFacts {
    pub size: usize,
    /// Atoms are exactly the singletons.
    pub singleton_atoms: bool,
    pub atomistic: bool,
    pub join_semidistributive: bool,
    pub semidistributivity_witness: Option<String>,
    pub s_i: bool,
    pub b_i: bool,
    pub u_i: bool,
    pub condition_witnesses: Vec<String>,
    /// First pair on which the explicit join formula is not the closure.
    pub formula_mismatch: Option<String>,
}

impl CoFacts {
    pub fn all_hold(&self) -> bool {
        self.singleton_atoms
            && self.atomistic
            && self.join_semidistributive
            && self.s_i
            && self.b_i
            && self.u_i
            && self.formula_mismatch.is_none()
    }
}

pub fn build_co_lattice(l: &FiniteLattice, cap: usize) -> Result<CoLattice> {
    let elements = enumerate_convex_sublattices(l, cap)?;
    let labels: Vec<String> = elements.iter().map(|s| s.label(l.labels())).collect();
    let poset = FinitePoset::from_fn(labels, |a, b| elements[a].is_subset(elements[b]))?;
    let lattice = build_lattice(poset)?;
    let index = elements.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    Ok(CoLattice {
        ambient: l.clone(),
        elements,
        index,
        lattice,
    })
}

impl CoLattice {
    pub fn ambient(&self) -> &FiniteLattice {
        &self.ambient
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ConvexSublattice] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> ConvexSublattice {
        self.elements[i]
    }

    pub fn index_of(&self, s: ConvexSublattice) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        self.lattice.label(i)
    }

    pub fn empty(&self) -> usize {
        0
    }

    /// Index of `{x}`.
    pub fn singleton(&self, x: usize) -> usize {
        self.index[&ConvexSublattice::from_members([x])]
    }

    /// Index of `[lo, hi]`.
    pub fn interval(&self, lo: usize, hi: usize) -> usize {
        self.index[&interval_set(&self.ambient, lo, hi)]
    }

    pub fn facts(&self, mode: Parallelism) -> CoFacts {
        let co = &self.lattice;
        let atoms = co.atoms();
        let mut singletons: Vec<usize> = (0..self.ambient.len()).map(|x| self.singleton(x)).collect();
        singletons.sort_unstable();
        let atomistic = (0..co.len()).all(|a| co.join_all(atoms.iter().copied().filter(|&x| co.leq(x, a))) == a);
        let sd = semi_join_distributivity(co, mode);
        let witnesses: Vec<_> = [Condition::Si, Condition::Bi, Condition::Ui]
            .iter()
            .map(|&c| check_condition_with(co, c, mode))
            .collect();
        let mut formula_mismatch = None;
        'pairs: for (i, &a) in self.elements.iter().enumerate() {
            for &b in &self.elements[i..] {
                let f = co_join_formula(&self.ambient, a, b);
                let j = self.elements[co.join(self.index[&a], self.index[&b])];
                if f != j {
                    let names = self.ambient.labels();
                    formula_mismatch = Some(format!(
                        "{} ∨ {}: formula gives {}, the least convex sublattice is {}",
                        a.label(names),
                        b.label(names),
                        f.label(names),
                        j.label(names)
                    ));
                    break 'pairs;
                }
            }
        }
        CoFacts {
            size: co.len(),
            singleton_atoms: atoms == singletons,
            atomistic,
            join_semidistributive: sd.is_none(),
            semidistributivity_witness: sd
                .map(|[x, y, z]| format!("x = {}, y = {}, z = {}", co.label(x), co.label(y), co.label(z))),
            s_i: witnesses[0].holds,
            b_i: witnesses[1].holds,
            u_i: witnesses[2].holds,
            condition_witnesses: witnesses.iter().filter(|w| !w.holds).map(|w| w.describe(co)).collect(),
            formula_mismatch,
        }
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson::from_poset(self.lattice.poset())
    }

    pub fn to_dot(&self) -> String {
        hasse_dot(self.lattice.poset(), "co_lattice")
    }
}

/// Order-convex subsets of a poset, `∅` first, then by bitmask.
pub fn convex_subsets(p: &FinitePoset, cap: usize) -> Result<Vec<ConvexSublattice>> {
    let n = p.len();
    if n > cap.min(24) {
        return Err(Error::SizeCapExceeded {
            what: "poset for convex-subset enumeration",
            size: n,
            cap: cap.min(24),
        });
    }
    // between[x][y]: elements a with x ≤ a ≤ y.
    let between: Vec<u64> = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            (0..n)
                .filter(|&a| p.leq(x, a) && p.leq(a, y))
                .fold(0u64, |acc, a| acc | 1 << a)
        })
        .collect();
    Ok((0..1u64 << n)
        .filter(|&s| {
            let m = ConvexSublattice(s).members();
            m.iter().all(|&x| m.iter().all(|&y| between[x * n + y] & !s == 0))
        })
        .map(ConvexSublattice)
        .collect())
}

/// The lattice of order-convex subsets, meet = intersection.
pub fn convex_subset_lattice(p: &FinitePoset, cap: usize) -> Result<FiniteLattice> {
    let subsets = convex_subsets(p, cap)?;
    let labels: Vec<String> = subsets.iter().map(|s| s.label(p.labels())).collect();
    build_lattice(FinitePoset::from_fn(labels, |a, b| subsets[a].is_subset(subsets[b]))?)
}

pub fn is_convexly_isomorphic(p1: &FinitePoset, p2: &FinitePoset, cap: usize) -> Result<bool> {
    let l1 = convex_subset_lattice(p1, cap)?;
    let l2 = convex_subset_lattice(p2, cap)?;
    Ok(find_isomorphism(&l1, &l2).is_some())
}

/// Parameters of the three constructions producing convexly isomorphic
/// posets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Construction {
    /// Step 1: drop covering pairs `x ≺ y` with `x` minimal and `y` maximal.
    RemoveCovers(Vec<(usize, usize)>),
    /// Step 2: keep only comparabilities inside `C` or inside its
    /// complement `D`; every cross pair must be incomparable.
    Split(Vec<usize>),
    /// Step 3: add pairs `x < y` of incomparable minimal `x` and maximal `y`,
    /// no two of them chained.
    AddPairs(Vec<(usize, usize)>),
}

pub fn poset_construct(a: &FinitePoset, step: &Construction) -> Result<FinitePoset> {
    let (min, max) = (a.minimal(), a.maximal());
    let label = |x: usize| a.label(x).to_string();
    match step {
        Construction::RemoveCovers(pairs) => {
            for &(x, y) in pairs {
                if x >= a.len() || y >= a.len() || !a.covers(x, y) || !min.contains(&x) || !max.contains(&y) {
                    return Err(Error::InvalidParams(format!(
                        "({}, {}) is not a covering pair from a minimal to a maximal element",
                        name(a, x),
                        name(a, y)
                    )));
                }
            }
            a.filtered(|x, y| !pairs.contains(&(x, y)))
        }
        Construction::Split(c) => {
            let n = a.len();
            if let Some(&bad) = c.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidParams(format!("element #{bad} is out of range")));
            }
            let in_c = |x: usize| c.contains(&x);
            for x in 0..n {
                for y in 0..n {
                    if in_c(x) && !in_c(y) && a.comparable(x, y) {
                        return Err(Error::InvalidParams(format!(
                            "{} in C and {} in D are comparable",
                            label(x),
                            label(y)
                        )));
                    }
                }
            }
            a.filtered(|x, y| in_c(x) == in_c(y))
        }
        Construction::AddPairs(q) => {
            for &(x, y) in q {
                if x >= a.len() || y >= a.len() || a.comparable(x, y) || !min.contains(&x) || !max.contains(&y) {
                    return Err(Error::InvalidParams(format!(
                        "({}, {}) is not an incomparable minimal-maximal pair",
                        name(a, x),
                        name(a, y)
                    )));
                }
            }
            for &(_, v) in q {
                if q.iter().any(|&(w, _)| w == v) {
                    return Err(Error::InvalidParams(format!(
                        "pairs ending and starting at {} are chained",
                        name(a, v)
                    )));
                }
            }
            FinitePoset::from_fn(a.labels().to_vec(), |x, y| a.leq(x, y) || q.contains(&(x, y)))
        }
    }
}

fn name(a: &FinitePoset, x: usize) -> String {
    if x < a.len() {
        a.label(x).to_string()
    } else {
        format!("#{x}")
    }
}

/// Covering pairs eligible for step 1.
pub fn removable_covers(a: &FinitePoset) -> Vec<(usize, usize)> {
    let (min, max) = (a.minimal(), a.maximal());
    a.cover_pairs()
        .into_iter()
        .filter(|(x, y)| min.contains(x) && max.contains(y))
        .collect()
}

/// Sets `C` for step 2: unions of connected components of the comparability
/// graph.
pub fn legal_splits(a: &FinitePoset) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        component[s] = count;
        while let Some(x) = stack.pop() {
            let fresh: Vec<usize> = (0..n)
                .filter(|&y| component[y] == usize::MAX && a.comparable(x, y))
                .collect();
            for y in fresh {
                component[y] = count;
                stack.push(y);
            }
        }
        count += 1;
    }
    (0..1u64 << count)
        .map(|mask| (0..n).filter(|&x| mask >> component[x] & 1 == 1).collect())
        .collect()
}

/// Candidate pairs for step 3.
pub fn addable_pairs(a: &FinitePoset) -> Vec<(usize, usize)> {
    let (min, max) = (a.minimal(), a.maximal());
    let mut out = Vec::new();
    for &x in &min {
        for &y in &max {
            if !a.comparable(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(l: &FiniteLattice) -> Vec<ConvexSublattice> {
        let mut v: Vec<ConvexSublattice> = (0..1u64 << l.len())
            .map(ConvexSublattice)
            .filter(|&s| is_convex_sublattice(l, s))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn enumeration_matches_subset_filter() {
        for l in [
            FiniteLattice::chain(1),
            FiniteLattice::chain(3),
            FiniteLattice::boolean(2),
            FiniteLattice::boolean(3),
        ] {
            let mut got = enumerate_convex_sublattices(&l, 16).unwrap();
            assert!(got.iter().all(|&s| is_convex_sublattice(&l, s)));
            got.sort();
            assert_eq!(got, brute_force(&l));
        }
        assert_eq!(
            enumerate_convex_sublattices(&FiniteLattice::chain(3), 16)
                .unwrap()
                .len(),
            7
        );
        assert_eq!(
            enumerate_convex_sublattices(&FiniteLattice::boolean(2), 16)
                .unwrap()
                .len(),
            10
        );
        assert_eq!(
            enumerate_convex_sublattices(&FiniteLattice::chain(1), 16)
                .unwrap()
                .len(),
            2
        );
        assert!(matches!(
            enumerate_convex_sublattices(&FiniteLattice::chain(17), 16),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn sublattice_but_not_convex() {
        let c3 = FiniteLattice::chain(3);
        assert!(!is_convex_sublattice(&c3, ConvexSublattice::from_members([0, 2])));
    }

    #[test]
    fn joins() {
        let c3 = FiniteLattice::chain(3);
        let one = |x| ConvexSublattice::from_members([x]);
        assert_eq!(
            co_join(&c3, one(0), one(2)).unwrap(),
            ConvexSublattice::from_members([0, 1, 2])
        );
        assert_eq!(co_join(&c3, one(1), ConvexSublattice::EMPTY).unwrap(), one(1));
        assert_eq!(co_join(&c3, one(1), one(1)).unwrap(), one(1));
        let b2 = FiniteLattice::boolean(2);
        match co_join(&b2, one(1), one(2)) {
            Err(Error::FormulaClosureMismatch { formula, closure }) => {
                assert_eq!(formula, "{01, 10}");
                assert_eq!(closure, "{00, 01, 10, 11}");
            }
            other => panic!("expected a mismatch, got {other:?}"),
        }
    }

    #[test]
    fn co_of_small_lattices() {
        let co = build_co_lattice(&FiniteLattice::chain(3), 16).unwrap();
        assert_eq!(co.len(), 7);
        let facts = co.facts(Parallelism::Sequential);
        assert!(facts.singleton_atoms && facts.atomistic);
        assert!(facts.all_hold(), "{facts:?}");
        let co = build_co_lattice(&FiniteLattice::boolean(2), 16).unwrap();
        assert_eq!(co.len(), 10);
        let facts = co.facts(Parallelism::Sequential);
        assert!(facts.singleton_atoms && facts.atomistic);
        assert!(facts.formula_mismatch.is_some());
        assert!(!facts.join_semidistributive);
    }

    #[test]
    fn poset_constructions() {
        let c2 = FinitePoset::chain(2);
        assert_eq!(poset_construct(&c2, &Construction::RemoveCovers(vec![])).unwrap(), c2);
        let split = poset_construct(&c2, &Construction::RemoveCovers(vec![(0, 1)])).unwrap();
        assert_eq!(split, FinitePoset::antichain(2));
        assert_eq!(poset_construct(&c2, &Construction::AddPairs(vec![])).unwrap(), c2);
        assert!(matches!(
            poset_construct(&c2, &Construction::AddPairs(vec![(0, 1)])),
            Err(Error::InvalidParams(_))
        ));
        let a2 = FinitePoset::antichain(2);
        assert_eq!(poset_construct(&a2, &Construction::AddPairs(vec![(0, 1)])).unwrap(), c2);
        assert!(matches!(
            poset_construct(
                &FinitePoset::antichain(3),
                &Construction::AddPairs(vec![(0, 1), (1, 2)])
            ),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            poset_construct(&c2, &Construction::Split(vec![0])),
            Err(Error::InvalidParams(_))
        ));
        assert_eq!(legal_splits(&a2).len(), 4);
    }

    #[test]
    fn convex_isomorphism() {
        let p = FinitePoset::chain(3);
        assert!(is_convexly_isomorphic(&p, &p, 16).unwrap());
        assert!(is_convexly_isomorphic(&FinitePoset::chain(2), &FinitePoset::antichain(2), 16).unwrap());
        assert!(!is_convexly_isomorphic(&FinitePoset::chain(3), &FinitePoset::antichain(3), 16).unwrap());
        assert_eq!(convex_subsets(&FinitePoset::chain(3), 16).unwrap().len(), 7);
        assert_eq!(convex_subsets(&FinitePoset::antichain(3), 16).unwrap().len(), 8);
    }
}
