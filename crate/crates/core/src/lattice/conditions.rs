use serde::{Deserialize, Serialize};

use super::predicates::{structural_predicates, PredicateOptions, StructuralPredicates};
use super::FiniteLattice;
use crate::par::{self, Parallelism};

/// The lattice conditions characterising lattices of convex subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    S,
    B,
    U,
    #[serde(rename = "S_i")]
    Si,
    #[serde(rename = "B_i")]
    Bi,
    #[serde(rename = "U_i")]
    Ui,
    P,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::S,
        Condition::B,
        Condition::U,
        Condition::Si,
        Condition::Bi,
        Condition::Ui,
        Condition::P,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::S => "S",
            Condition::B => "B",
            Condition::U => "U",
            Condition::Si => "S_i",
            Condition::Bi => "B_i",
            Condition::Ui => "U_i",
            Condition::P => "P",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s) || c.name().replace('_', "") == s)
    }

    pub fn variables(self) -> &'static [&'static str] {
        match self {
            Condition::S | Condition::Si => &["a", "b", "b0", "b1", "c"],
            Condition::B | Condition::Bi => &["x", "a0", "a1", "b0", "b1"],
            Condition::U | Condition::Ui => &["x", "x0", "x1", "x2"],
            Condition::P => &["a", "b", "c", "e"],
        }
    }

    /// Whether the variables range over join-irreducibles only.
    pub fn element_wise(self) -> bool {
        matches!(self, Condition::Si | Condition::Bi | Condition::Ui)
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of an exhaustive condition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionWitness {
    pub condition: Condition,
    pub holds: bool,
    /// First failing assignment in canonical order, one element per variable.
    pub counterexample: Option<Vec<usize>>,
}

impl ConditionWitness {
    /// The counterexample as `(variable, element label)` pairs.
    pub fn assignment(&self, l: &FiniteLattice) -> Option<Vec<(String, String)>> {
        self.counterexample.as_ref().map(|xs| {
            self.condition
                .variables()
                .iter()
                .zip(xs)
                .map(|(v, &x)| (v.to_string(), l.label(x).to_string()))
                .collect()
        })
    }

    pub fn describe(&self, l: &FiniteLattice) -> String {
        match self.assignment(l) {
            None => format!("{} holds", self.condition),
            Some(vars) => {
                let vars: Vec<String> = vars.into_iter().map(|(v, x)| format!("{v} = {x}")).collect();
                format!("{} fails at {}", self.condition, vars.join(", "))
            }
        }
    }
}

pub fn check_condition(l: &FiniteLattice, condition: Condition) -> ConditionWitness {
    check_condition_with(l, condition, Parallelism::Auto)
}

/// Exhaustive check of `condition` over every assignment of its variables,
/// lexicographic in canonical element order.
pub fn check_condition_with(l: &FiniteLattice, condition: Condition, mode: Parallelism) -> ConditionWitness {
    let ops = Ops::new(l);
    let counterexample = match condition {
        Condition::S => par::find_first(ops.n, mode, |a| ops.s_from(a)),
        Condition::B => par::find_first(ops.n, mode, |x| ops.b_from(x)),
        Condition::U => par::find_first(ops.n, mode, |x| ops.u_from(x)),
        Condition::P => par::find_first(ops.n, mode, |a| ops.p_from(a)),
        Condition::Si | Condition::Bi | Condition::Ui => {
            let j = l.join_irreducibles();
            let f = |i: usize| match condition {
                Condition::Si => ops.si_from(&j, j[i]),
                Condition::Bi => ops.bi_from(&j, j[i]),
                _ => ops.ui_from(&j, j[i]),
            };
            par::find_first(j.len(), mode, f)
        }
    };
    ConditionWitness {
        condition,
        holds: counterexample.is_none(),
        counterexample,
    }
}

/// `x ∨ y = x ∨ z ⟶ x ∨ y = x ∨ (y ∧ z)`; returns the first failing triple.
pub fn semi_join_distributivity(l: &FiniteLattice, mode: Parallelism) -> Option<[usize; 3]> {
    let ops = Ops::new(l);
    let n = ops.n;
    par::find_first(n, mode, |x| {
        for y in 0..n {
            let xy = ops.j(x, y);
            for z in 0..n {
                if ops.j(x, z) == xy && ops.j(x, ops.m(y, z)) != xy {
                    return Some([x, y, z]);
                }
            }
        }
        None
    })
}

struct Ops<'a> {
    n: usize,
    meet: &'a [u16],
    join: &'a [u16],
    leq: Vec<bool>,
}

impl<'a> Ops<'a> {
    fn new(l: &'a FiniteLattice) -> Self {
        let n = l.len();
        let leq = (0..n * n).map(|k| l.leq(k / n, k % n)).collect();
        Ops {
            n,
            meet: l.meet_table(),
            join: l.join_table(),
            leq,
        }
    }

    #[inline(always)]
    fn m(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    #[inline(always)]
    fn j(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    #[inline(always)]
    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    /// a∧(b*∨c) = (a∧b*) ∨ ⋁ᵢ (a∧(bᵢ∨c) ∧ ((b*∧(a∨bᵢ))∨c)), b* = b∧(b₀∨b₁).
    fn s_from(&self, a: usize) -> Option<Vec<usize>> {
        let n = self.n;
        for b in 0..n {
            for b0 in 0..n {
                for b1 in 0..n {
                    let bs = self.m(b, self.j(b0, b1));
                    let abs = self.m(a, bs);
                    let t0 = self.m(bs, self.j(a, b0));
                    let t1 = self.m(bs, self.j(a, b1));
                    for c in 0..n {
                        let lhs = self.m(a, self.j(bs, c));
                        let r0 = self.m(self.m(a, self.j(b0, c)), self.j(t0, c));
                        let r1 = self.m(self.m(a, self.j(b1, c)), self.j(t1, c));
                        if lhs != self.j(self.j(abs, r0), r1) {
                            return Some(vec![a, b, b0, b1, c]);
                        }
                    }
                }
            }
        }
        None
    }

    /// x∧A∧B = ⋁ᵢ((x∧aᵢ∧B) ∨ (x∧bᵢ∧A)) ∨ ⋁ᵢ(x∧A∧B∧(a₀∨bᵢ)∧(a₁∨b₁₋ᵢ)),
    /// A = a₀∨a₁, B = b₀∨b₁.
    fn b_from(&self, x: usize) -> Option<Vec<usize>> {
        let n = self.n;
        for a0 in 0..n {
            for a1 in 0..n {
                let aa = self.j(a0, a1);
                let xa = self.m(x, aa);
                let xa0 = self.m(x, a0);
                let xa1 = self.m(x, a1);
                for b0 in 0..n {
                    for b1 in 0..n {
                        let bb = self.j(b0, b1);
                        let lhs = self.m(xa, bb);
                        let mut r = self.j(self.m(xa0, bb), self.m(xa1, bb));
                        r = self.j(r, self.m(self.m(x, b0), aa));
                        r = self.j(r, self.m(self.m(x, b1), aa));
                        r = self.j(r, self.m(self.m(lhs, self.j(a0, b0)), self.j(a1, b1)));
                        r = self.j(r, self.m(self.m(lhs, self.j(a0, b1)), self.j(a1, b0)));
                        if lhs != r {
                            return Some(vec![x, a0, a1, b0, b1]);
                        }
                    }
                }
            }
        }
        None
    }

    /// x∧(x₀∨x₁)∧(x₀∨x₂)∧(x₁∨x₂) = ⋁ over {i,j,k} = {0,1,2} of x∧xᵢ∧(xⱼ∨xₖ).
    fn u_from(&self, x: usize) -> Option<Vec<usize>> {
        let n = self.n;
        for x0 in 0..n {
            let xx0 = self.m(x, x0);
            for x1 in 0..n {
                let j01 = self.j(x0, x1);
                let xx1 = self.m(x, x1);
                for x2 in 0..n {
                    let j02 = self.j(x0, x2);
                    let j12 = self.j(x1, x2);
                    let lhs = self.m(self.m(self.m(x, j01), j02), j12);
                    let rhs = self.j(self.j(self.m(xx0, j12), self.m(xx1, j02)), self.m(self.m(x, x2), j01));
                    if lhs != rhs {
                        return Some(vec![x, x0, x1, x2]);
                    }
                }
            }
        }
        None
    }

    /// a∧(b∨c∨e) = (a∧(b∨c)) ∨ (a∧(b∨e)) ∨ (a∧(c∨e)).
    fn p_from(&self, a: usize) -> Option<Vec<usize>> {
        let n = self.n;
        for b in 0..n {
            for c in 0..n {
                let bc = self.j(b, c);
                let abc = self.m(a, bc);
                for e in 0..n {
                    let lhs = self.m(a, self.j(bc, e));
                    let rhs = self.j(self.j(abc, self.m(a, self.j(b, e))), self.m(a, self.j(c, e)));
                    if lhs != rhs {
                        return Some(vec![a, b, c, e]);
                    }
                }
            }
        }
        None
    }

    fn si_from(&self, js: &[usize], a: usize) -> Option<Vec<usize>> {
        for &b in js {
            if a == b {
                continue;
            }
            for &c in js {
                if !self.le(a, self.j(b, c)) {
                    continue;
                }
                let below = (0..self.n).any(|bb| bb != b && self.le(bb, b) && self.le(a, self.j(bb, c)));
                if below {
                    continue;
                }
                for &b0 in js {
                    for &b1 in js {
                        if !self.le(b, self.j(b0, b1)) {
                            continue;
                        }
                        let split = [b0, b1]
                            .iter()
                            .any(|&bi| self.le(b, self.j(a, bi)) && self.le(a, self.j(bi, c)));
                        if !split {
                            return Some(vec![a, b, b0, b1, c]);
                        }
                    }
                }
            }
        }
        None
    }

    fn bi_from(&self, js: &[usize], x: usize) -> Option<Vec<usize>> {
        for &a0 in js {
            for &a1 in js {
                if !self.le(x, self.j(a0, a1)) {
                    continue;
                }
                for &b0 in js {
                    for &b1 in js {
                        if !self.le(x, self.j(b0, b1)) {
                            continue;
                        }
                        let ok = [a0, a1, b0, b1].iter().any(|&t| self.le(x, t))
                            || (self.le(x, self.j(a0, b0)) && self.le(x, self.j(a1, b1)))
                            || (self.le(x, self.j(a0, b1)) && self.le(x, self.j(a1, b0)));
                        if !ok {
                            return Some(vec![x, a0, a1, b0, b1]);
                        }
                    }
                }
            }
        }
        None
    }

    fn ui_from(&self, js: &[usize], x: usize) -> Option<Vec<usize>> {
        for &x0 in js {
            for &x1 in js {
                if !self.le(x, self.j(x0, x1)) {
                    continue;
                }
                for &x2 in js {
                    if self.le(x, self.j(x0, x2))
                        && self.le(x, self.j(x1, x2))
                        && ![x0, x1, x2].iter().any(|&t| self.le(x, t))
                    {
                        return Some(vec![x, x0, x1, x2]);
                    }
                }
            }
        }
        None
    }
}

/// Verdict on the long-lattice property with every ingredient exposed.
#[derive(Debug, Clone)]
pub struct LongLatticeReport {
    pub is_long: bool,
    pub predicates: StructuralPredicates,
    /// Witnesses for `P, S, B, U, S_i, B_i, U_i` in that order.
    pub witnesses: Vec<ConditionWitness>,
    /// False when the element-wise and identity forms disagree although the
    /// remaining hypotheses hold, i.e. a finite counterexample to the claim
    /// that the element-wise forms imply the identities.
    pub consistent: bool,
}

impl LongLatticeReport {
    pub fn witness(&self, c: Condition) -> &ConditionWitness {
        self.witnesses
            .iter()
            .find(|w| w.condition == c)
            .expect("all conditions are checked")
    }

    pub fn summary(&self, l: &FiniteLattice) -> String {
        let failing: Vec<String> = self
            .witnesses
            .iter()
            .filter(|w| !w.holds)
            .map(|w| w.describe(l))
            .collect();
        if self.is_long {
            "long lattice".to_string()
        } else if failing.is_empty() {
            "not a long lattice: structural hypotheses fail".to_string()
        } else {
            format!("not a long lattice: {}", failing.join("; "))
        }
    }
}

pub fn is_long_lattice(l: &FiniteLattice, mode: Parallelism) -> LongLatticeReport {
    let predicates =
        structural_predicates(l, &PredicateOptions::default()).expect("the finite shortcut never exceeds a cap");
    let order = [
        Condition::P,
        Condition::S,
        Condition::B,
        Condition::U,
        Condition::Si,
        Condition::Bi,
        Condition::Ui,
    ];
    let witnesses: Vec<ConditionWitness> = order.iter().map(|&c| check_condition_with(l, c, mode)).collect();
    let holds = |c: Condition| witnesses.iter().any(|w| w.condition == c && w.holds);
    let hypotheses = predicates.complete && predicates.lower_continuous && predicates.finitely_spatial;
    let identities = holds(Condition::S) && holds(Condition::B) && holds(Condition::U);
    let element_wise = holds(Condition::Si) && holds(Condition::Bi) && holds(Condition::Ui);
    let consistent = !(hypotheses && holds(Condition::P) && element_wise && !identities);
    LongLatticeReport {
        is_long: hypotheses && holds(Condition::P) && identities,
        predicates,
        witnesses,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_hold(l: &FiniteLattice) -> bool {
        Condition::ALL.iter().all(|&c| check_condition(l, c).holds)
    }

    #[test]
    fn chains_satisfy_everything() {
        for n in 1..=4 {
            assert!(all_hold(&FiniteLattice::chain(n)), "chain {n}");
        }
    }

    #[test]
    fn boolean_square_element_wise_union() {
        let l = FiniteLattice::boolean(2);
        assert!(check_condition(&l, Condition::Ui).holds);
        assert!(check_condition(&l, Condition::U).holds);
    }

    #[test]
    fn two_chain_u() {
        assert!(check_condition(&FiniteLattice::chain(2), Condition::U).holds);
    }

    #[test]
    fn counterexample_evaluates_unequal() {
        // M3 is not join-semidistributive and fails S.
        let m3 = crate::lattice::build_lattice(
            crate::lattice::FinitePoset::from_covers(
                ["0", "a", "b", "c", "1"],
                [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            )
            .unwrap(),
        )
        .unwrap();
        let w = check_condition(&m3, Condition::S);
        assert!(!w.holds);
        let v = w.counterexample.unwrap();
        let (a, b, b0, b1, c) = (v[0], v[1], v[2], v[3], v[4]);
        let bs = m3.meet(b, m3.join(b0, b1));
        let lhs = m3.meet(a, m3.join(bs, c));
        let mut rhs = m3.meet(a, bs);
        for bi in [b0, b1] {
            let t = m3.meet(m3.meet(a, m3.join(bi, c)), m3.join(m3.meet(bs, m3.join(a, bi)), c));
            rhs = m3.join(rhs, t);
        }
        assert_ne!(lhs, rhs);
        assert!(semi_join_distributivity(&m3, Parallelism::Sequential).is_some());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let l = FiniteLattice::boolean(3);
        for c in Condition::ALL {
            assert_eq!(
                check_condition_with(&l, c, Parallelism::Sequential),
                check_condition_with(&l, c, Parallelism::Auto)
            );
        }
    }

    #[test]
    fn cube_with_parallel_atom_fails_p() {
        let l = crate::lattice::build_lattice(
            crate::lattice::FinitePoset::from_covers(
                ["0", "b", "c", "e", "bc", "be", "ce", "1", "a"],
                [
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (1, 4),
                    (2, 4),
                    (1, 5),
                    (3, 5),
                    (2, 6),
                    (3, 6),
                    (4, 7),
                    (5, 7),
                    (6, 7),
                    (0, 8),
                    (8, 7),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let w = check_condition(&l, Condition::P);
        assert_eq!(w.describe(&l), "P fails at a = a, b = b, c = c, e = e");
        let report = is_long_lattice(&l, Parallelism::Auto);
        assert!(!report.is_long);
        assert!(!report.witness(Condition::P).holds);
    }

    #[test]
    fn p_holds_on_small_lattices() {
        for l in crate::sweep::lattices_up_to(8) {
            assert!(check_condition(&l, Condition::P).holds);
        }
    }

    #[test]
    fn long_lattice_trivial_cases() {
        assert!(is_long_lattice(&FiniteLattice::chain(1), Parallelism::Auto).is_long);
        assert!(is_long_lattice(&FiniteLattice::chain(3), Parallelism::Auto).is_long);
    }
}
