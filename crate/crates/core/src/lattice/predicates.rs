use serde::Serialize;

use super::conditions::{check_condition, semi_join_distributivity, Condition};
use super::{FiniteLattice, FinitePoset};
use crate::error::{Error, Result};
use crate::par::Parallelism;

/// Structural properties of a finite lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructuralPredicates {
    pub semi_join_distributive: bool,
    pub finitely_spatial: bool,
    pub lower_continuous: bool,
    pub dually_2_distributive: bool,
    pub tree_like: bool,
    pub sectionally_complemented: bool,
    pub complete: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct PredicateOptions {
    /// Decide completeness and lower continuity by enumerating subsets
    /// instead of returning `true` for every finite lattice.
    pub exhaustive: bool,
    /// Largest carrier for which subset enumeration is attempted.
    pub subset_cap: usize,
}

impl Default for PredicateOptions {
    fn default() -> Self {
        PredicateOptions {
            exhaustive: false,
            subset_cap: 12,
        }
    }
}

pub fn structural_predicates(l: &FiniteLattice, opts: &PredicateOptions) -> Result<StructuralPredicates> {
    let (complete, lower_continuous) = if opts.exhaustive {
        if l.len() > opts.subset_cap {
            return Err(Error::SizeCapExceeded {
                what: "subset enumeration",
                size: l.len(),
                cap: opts.subset_cap,
            });
        }
        (complete_by_subsets(l), lower_continuous_by_subsets(l))
    } else {
        (true, true)
    };
    Ok(StructuralPredicates {
        semi_join_distributive: semi_join_distributivity(l, Parallelism::Auto).is_none(),
        finitely_spatial: finitely_spatial(l),
        lower_continuous,
        dually_2_distributive: check_condition(l, Condition::P).holds,
        tree_like: tree_like(l.poset()),
        sectionally_complemented: sectionally_complemented(l),
        complete,
    })
}

/// Every element is the join of the join-irreducibles below it.
fn finitely_spatial(l: &FiniteLattice) -> bool {
    let j = l.join_irreducibles();
    (0..l.len()).all(|x| l.join_all(j.iter().copied().filter(|&y| l.leq(y, x))) == x)
}

/// For all `b < a` some `c` has `b ∧ c = 0` and `b ∨ c = a`.
fn sectionally_complemented(l: &FiniteLattice) -> bool {
    let n = l.len();
    (0..n).all(|a| {
        (0..n)
            .filter(|&b| l.poset().lt(b, a))
            .all(|b| (0..n).any(|c| l.meet(b, c) == l.bottom() && l.join(b, c) == a))
    })
}

/// Between any two comparable elements there is at most one maximal chain of
/// covers. Finite posets always have finite covering chains.
pub(crate) fn tree_like(p: &FinitePoset) -> bool {
    let n = p.len();
    let heights = p.heights();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| heights[x]);
    for a in 0..n {
        let mut paths = vec![0u32; n];
        paths[a] = 1;
        for &x in &order {
            if x == a || !p.lt(a, x) {
                continue;
            }
            paths[x] = (0..n)
                .filter(|&y| p.covers(y, x) && p.leq(a, y))
                .map(|y| paths[y])
                .sum();
            if paths[x] > 1 {
                return false;
            }
        }
    }
    true
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

fn complete_by_subsets(l: &FiniteLattice) -> bool {
    let n = l.len();
    subsets(n).all(|xs| {
        let lower: Vec<usize> = (0..n).filter(|&y| xs.iter().all(|&x| l.leq(y, x))).collect();
        let upper: Vec<usize> = (0..n).filter(|&y| xs.iter().all(|&x| l.leq(x, y))).collect();
        lower.iter().any(|&g| lower.iter().all(|&y| l.leq(y, g)))
            && upper.iter().any(|&s| upper.iter().all(|&y| l.leq(s, y)))
    })
}

/// `a ∨ ⋀X = ⋀(a ∨ x)` for every nonempty downward directed `X`.
fn lower_continuous_by_subsets(l: &FiniteLattice) -> bool {
    let n = l.len();
    subsets(n).filter(|xs| !xs.is_empty()).all(|xs| {
        let directed = xs
            .iter()
            .all(|&x| xs.iter().all(|&y| xs.iter().any(|&z| l.leq(z, x) && l.leq(z, y))));
        !directed
            || (0..n).all(|a| l.join(a, l.meet_all(xs.iter().copied())) == l.meet_all(xs.iter().map(|&x| l.join(a, x))))
    })
}
