use std::ops::ControlFlow;

use super::{FiniteLattice, FinitePoset};

/// Order-isomorphism `f` with `f[x]` the image of `x`, or `None`.
pub fn find_order_isomorphism(p1: &FinitePoset, p2: &FinitePoset) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_order_isomorphism(p1, p2, |f| {
        found = Some(f.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// An order isomorphism between lattices preserves meets and joins.
pub fn find_isomorphism(l1: &FiniteLattice, l2: &FiniteLattice) -> Option<Vec<usize>> {
    find_order_isomorphism(l1.poset(), l2.poset())
}

/// Visits every order isomorphism `p1 → p2` in a deterministic order until
/// the visitor breaks.
pub fn for_each_order_isomorphism<F>(p1: &FinitePoset, p2: &FinitePoset, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = p1.len();
    if n != p2.len() {
        return;
    }
    let inv1 = invariants(p1);
    let inv2 = invariants(p2);
    let mut sorted1 = inv1.clone();
    let mut sorted2 = inv2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return;
    }
    let heights = p1.heights();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (heights[x], x));
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| inv2[y] == inv1[x]).collect())
        .collect();
    let mut search = Search {
        p1,
        p2,
        order,
        candidates,
        image: vec![usize::MAX; n],
        used: vec![false; n],
    };
    let _ = search.extend(0, &mut visit);
}

fn invariants(p: &FinitePoset) -> Vec<(usize, usize, usize, usize)> {
    let n = p.len();
    (0..n)
        .map(|x| {
            let down = (0..n).filter(|&y| p.leq(y, x)).count();
            let up = (0..n).filter(|&y| p.leq(x, y)).count();
            let lower_covers = (0..n).filter(|&y| p.covers(y, x)).count();
            let upper_covers = (0..n).filter(|&y| p.covers(x, y)).count();
            (down, up, lower_covers, upper_covers)
        })
        .collect()
}

struct Search<'a> {
    p1: &'a FinitePoset,
    p2: &'a FinitePoset,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend<F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(&self.image);
        }
        let x = self.order[depth];
        for idx in 0..self.candidates[x].len() {
            let y = self.candidates[x][idx];
            if self.used[y] || !self.consistent(depth, x, y) {
                continue;
            }
            self.image[x] = y;
            self.used[y] = true;
            let flow = self.extend(depth + 1, visit);
            self.used[y] = false;
            self.image[x] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn consistent(&self, depth: usize, x: usize, y: usize) -> bool {
        self.order[..depth].iter().all(|&u| {
            let v = self.image[u];
            self.p1.leq(u, x) == self.p2.leq(v, y) && self.p1.leq(x, u) == self.p2.leq(y, v)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;

    #[test]
    fn chain_to_itself() {
        let c = FiniteLattice::chain(3);
        assert_eq!(find_isomorphism(&c, &c), Some(vec![0, 1, 2]));
    }

    #[test]
    fn size_mismatch() {
        assert_eq!(
            find_isomorphism(&FiniteLattice::chain(3), &FiniteLattice::boolean(2)),
            None
        );
    }

    #[test]
    fn permuted_atoms() {
        let b = FiniteLattice::boolean(2);
        let permuted =
            build_lattice(FinitePoset::from_covers(["0", "b", "a", "1"], [(0, 2), (0, 1), (2, 3), (1, 3)]).unwrap())
                .unwrap();
        let f = find_isomorphism(&b, &permuted).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(permuted.meet(f[x], f[y]), f[b.meet(x, y)]);
                assert_eq!(permuted.join(f[x], f[y]), f[b.join(x, y)]);
            }
        }
        let mut count = 0;
        for_each_order_isomorphism(b.poset(), b.poset(), |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 2);
    }

    #[test]
    fn chain_not_antichain() {
        assert_eq!(
            find_order_isomorphism(&FinitePoset::chain(2), &FinitePoset::antichain(2)),
            None
        );
    }
}
