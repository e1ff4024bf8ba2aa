//! Exhaustive and seeded enumerations of small structures.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approximation::ApproximationSpace;
use crate::lattice::{build_lattice, find_order_isomorphism, FiniteLattice, FinitePoset};

/// Every partition of `0..n`, as blocks in order of least element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut growth = vec![0usize; n];
    fn extend(i: usize, max: usize, growth: &mut [usize], out: &mut Vec<Vec<Vec<usize>>>) {
        if i == growth.len() {
            let mut blocks = vec![Vec::new(); max];
            for (x, &b) in growth.iter().enumerate() {
                blocks[b].push(x);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            growth[i] = b;
            extend(i + 1, max.max(b + 1), growth, out);
        }
    }
    extend(0, 0, &mut growth, &mut out);
    out
}

/// Every approximation space on `n` objects named `1..=n`.
pub fn all_spaces(n: usize) -> Vec<ApproximationSpace> {
    set_partitions(n)
        .iter()
        .map(|p| ApproximationSpace::from_blocks(n, p).expect("a partition"))
        .collect()
}

/// Naturally labelled posets on `0..n`: `i <= j` only when `i <= j` as
/// numbers. Each new element picks an order ideal of the earlier ones as
/// its strict down-set.
pub fn naturally_labelled_posets(n: usize) -> Vec<FinitePoset> {
    let mut below: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for downs in &below {
            for ideal in ideals(downs, k) {
                let mut d = downs.clone();
                d.push(ideal);
                next.push(d);
            }
        }
        below = next;
    }
    below.iter().map(|d| poset_from_downsets(d)).collect()
}

/// Order ideals of the poset on `0..k` whose strict down-sets are `downs`.
fn ideals(downs: &[u64], k: usize) -> Vec<u64> {
    (0u64..1 << k)
        .filter(|&s| (0..k).all(|x| s >> x & 1 == 0 || downs[x] & !s == 0))
        .collect()
}

fn poset_from_downsets(downs: &[u64]) -> FinitePoset {
    FinitePoset::from_fn((0..downs.len()).map(|i| i.to_string()), |a, b| downs[b] >> a & 1 == 1)
        .expect("down-sets of an ideal extension are transitive")
}

fn invariant(p: &FinitePoset) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut v: Vec<(usize, usize)> = (0..n)
        .map(|x| {
            (
                (0..n).filter(|&y| p.leq(y, x)).count(),
                (0..n).filter(|&y| p.leq(x, y)).count(),
            )
        })
        .collect();
    v.sort_unstable();
    v
}

/// Discards posets isomorphic to an earlier one, keeping first occurrences.
pub fn dedupe_posets(posets: Vec<FinitePoset>) -> Vec<FinitePoset> {
    let mut kept: Vec<FinitePoset> = Vec::new();
    let mut by_invariant: HashMap<Vec<(usize, usize)>, Vec<usize>> = HashMap::new();
    for p in posets {
        let bucket = by_invariant.entry(invariant(&p)).or_default();
        if bucket.iter().all(|&i| find_order_isomorphism(&kept[i], &p).is_none()) {
            bucket.push(kept.len());
            kept.push(p);
        }
    }
    kept
}

/// Posets on exactly `n` elements, one per isomorphism class.
pub fn posets(n: usize) -> Vec<FinitePoset> {
    dedupe_posets(naturally_labelled_posets(n))
}

/// Adjoins a new bottom and top to `interior`.
fn bounded(interior: &FinitePoset) -> FinitePoset {
    let m = interior.len();
    let labels = std::iter::once("0".to_string())
        .chain((0..m).map(|i| format!("e{i}")))
        .chain(std::iter::once("1".to_string()));
    FinitePoset::from_fn(labels, |a, b| {
        a == 0 || b == m + 1 || (a > 0 && b > 0 && b <= m && a <= m && interior.leq(a - 1, b - 1))
    })
    .expect("a bounded extension is a poset")
}

/// Lattices on exactly `n` elements, one per isomorphism class.
pub fn lattices(n: usize) -> Vec<FiniteLattice> {
    match n {
        0 => Vec::new(),
        1 | 2 => vec![FiniteLattice::chain(n)],
        _ => posets(n - 2)
            .iter()
            .filter_map(|p| build_lattice(bounded(p)).ok())
            .collect(),
    }
}

/// Lattices with at most `n` elements, by size.
pub fn lattices_up_to(n: usize) -> Vec<FiniteLattice> {
    (1..=n).flat_map(lattices).collect()
}

/// A lattice on `size` elements drawn from `rng`: a random naturally
/// labelled interior, retried until bounding it gives a lattice.
pub fn random_lattice(rng: &mut ChaCha8Rng, size: usize) -> FiniteLattice {
    if size <= 2 {
        return FiniteLattice::chain(size.max(1));
    }
    let m = size - 2;
    loop {
        let mut downs: Vec<u64> = Vec::with_capacity(m);
        for k in 0..m {
            let pick: u64 = rng.gen::<u64>() & ((1u64 << k) - 1);
            let closed = (0..k)
                .filter(|&x| pick >> x & 1 == 1)
                .fold(pick, |acc, x| acc | downs[x]);
            downs.push(closed);
        }
        if let Ok(l) = build_lattice(bounded(&poset_from_downsets(&downs))) {
            return l;
        }
    }
}

/// `count` seeded random lattices with sizes uniform in `1..=max_size`.
pub fn random_lattices(seed: u64, count: usize, max_size: usize) -> Vec<FiniteLattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            random_lattice(&mut rng, size)
        })
        .collect()
}
