//! Finite posets and lattices, lattice conditions, structural predicates and
//! isomorphism search.

mod conditions;
mod io;
mod iso;
mod poset;
mod predicates;

pub use conditions::{
    check_condition, check_condition_with, is_long_lattice, semi_join_distributivity, Condition, ConditionWitness,
    LongLatticeReport,
};
pub use io::{hasse_dot, truncate_label, LatticeJson};
pub use iso::{find_isomorphism, find_order_isomorphism, for_each_order_isomorphism};
pub use poset::FinitePoset;
pub use predicates::{structural_predicates, PredicateOptions, StructuralPredicates};

use crate::error::{Error, Result};

/// A finite lattice with explicit order, meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<u16>,
    join: Vec<u16>,
    bottom: usize,
    top: usize,
}

/// Computes meet and join tables for `poset`, failing on the first pair
/// without a greatest lower or least upper bound.
pub fn build_lattice(poset: FinitePoset) -> Result<FiniteLattice> {
    let n = poset.len();
    if n == 0 {
        return Err(Error::InvalidPoset("a lattice needs at least one element".into()));
    }
    if n > u16::MAX as usize {
        return Err(Error::SizeCapExceeded {
            what: "lattice",
            size: n,
            cap: u16::MAX as usize,
        });
    }
    let mut meet = vec![0u16; n * n];
    let mut join = vec![0u16; n * n];
    let bound = |a: usize, b: usize, below: bool| -> Option<usize> {
        let is_bound = |x: usize| {
            if below {
                poset.leq(x, a) && poset.leq(x, b)
            } else {
                poset.leq(a, x) && poset.leq(b, x)
            }
        };
        let bounds: Vec<usize> = (0..n).filter(|&x| is_bound(x)).collect();
        bounds.iter().copied().find(|&x| {
            bounds
                .iter()
                .all(|&y| if below { poset.leq(y, x) } else { poset.leq(x, y) })
        })
    };
    for a in 0..n {
        for b in a..n {
            let (m, j) = if poset.leq(a, b) {
                (Some(a), Some(b))
            } else if poset.leq(b, a) {
                (Some(b), Some(a))
            } else {
                (bound(a, b, true), bound(a, b, false))
            };
            let fail = |missing| Error::NotALattice {
                left: poset.label(a).to_string(),
                right: poset.label(b).to_string(),
                missing,
            };
            let m = m.ok_or_else(|| fail("meet"))?;
            let j = j.ok_or_else(|| fail("join"))?;
            meet[a * n + b] = m as u16;
            meet[b * n + a] = m as u16;
            join[a * n + b] = j as u16;
            join[b * n + a] = j as u16;
        }
    }
    let bottom = (1..n).fold(0, |acc, x| meet[acc * n + x] as usize);
    let top = (1..n).fold(0, |acc, x| join[acc * n + x] as usize);
    Ok(FiniteLattice {
        poset,
        meet,
        join,
        bottom,
        top,
    })
}

impl FiniteLattice {
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        build_lattice(poset)
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        build_lattice(FinitePoset::chain(n)).expect("a nonempty chain is a lattice")
    }

    /// The Boolean lattice of subsets of a `k`-element set, labelled by the
    /// binary digits of each subset.
    pub fn boolean(k: usize) -> Self {
        let n = 1usize << k;
        let labels = (0..n).map(|s| format!("{:0width$b}", s, width = k.max(1)));
        let poset = FinitePoset::from_fn(labels, |a, b| a & !b == 0).expect("subset order");
        build_lattice(poset).expect("Boolean lattice")
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet_table(&self) -> &[u16] {
        &self.meet
    }

    pub fn join_table(&self) -> &[u16] {
        &self.join
    }

    /// Meet of a finite family; the empty meet is the top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a finite family; the empty join is the bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `J(L)`: elements other than the bottom that are not a join of two
    /// strictly smaller elements.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&x| x != self.bottom)
            .filter(|&x| !(0..n).any(|a| (0..n).any(|b| a != x && b != x && self.join(a, b) == x)))
            .collect()
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.poset.covers(self.bottom, x)).collect()
    }

    /// Elements `x` with `lo <= x <= hi`, in canonical order.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.leq(lo, x) && self.leq(x, hi))
            .collect()
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))))
        })
    }

    /// Builds a lattice over `labels` whose order is read off a total meet
    /// table (`a <= b` iff `meet(a, b) = a`), and checks the table is the
    /// lattice meet of that order.
    pub fn from_meet_table(labels: Vec<String>, meet: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let poset = FinitePoset::from_fn(labels, |a, b| meet(a, b) == a)?;
        let lattice = build_lattice(poset)?;
        for a in 0..n {
            for b in 0..n {
                if lattice.meet(a, b) != meet(a, b) {
                    return Err(Error::NotALattice {
                        left: lattice.label(a).to_string(),
                        right: lattice.label(b).to_string(),
                        missing: "meet agreeing with the table",
                    });
                }
            }
        }
        Ok(lattice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_lattice() {
        let l = FiniteLattice::chain(1);
        assert_eq!(l.meet(0, 0), 0);
        assert_eq!(l.join(0, 0), 0);
        assert_eq!(l.bottom(), l.top());
        assert!(l.join_irreducibles().is_empty());
    }

    #[test]
    fn three_chain_is_min_max() {
        let l = FiniteLattice::chain(3);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.meet(a, b), a.min(b));
                assert_eq!(l.join(a, b), a.max(b));
            }
        }
        assert_eq!(l.join_irreducibles(), vec![1, 2]);
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let err = build_lattice(FinitePoset::antichain(2)).unwrap_err();
        assert!(matches!(err, Error::NotALattice { .. }));
    }

    #[test]
    fn boolean_square() {
        let l = FiniteLattice::boolean(2);
        assert_eq!(l.labels(), &["00", "01", "10", "11"]);
        assert_eq!(l.join_irreducibles(), vec![1, 2]);
        assert_eq!(l.atoms(), vec![1, 2]);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert!(l.is_distributive());
    }

    #[test]
    fn meet_table_round_trip() {
        let l = FiniteLattice::boolean(2);
        let again = FiniteLattice::from_meet_table(l.labels().to_vec(), |a, b| l.meet(a, b)).unwrap();
        assert_eq!(again, l);
    }
}
