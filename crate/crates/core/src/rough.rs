//! Pre-rough and rough algebras.
//!
//! [`PreRoughAlgebra`] holds total tables over an abstract carrier;
//! [`RoughAlgebra`] is the concrete algebra of an approximation space,
//! whose elements are the realizable `(lower, upper)` pairs of definable
//! sets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::approximation::{ApproximationSpace, ClassSet, SpaceJson};
use crate::error::{Error, Result};
use crate::lattice::{hasse_dot, FiniteLattice};
use crate::partial::{AxiomReport, Checker, ModelJson, PartialAlgebraModel, Signature};
use crate::theories;

/// The rough-equality class of a subset, as its pair of approximations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RoughElement {
    pub lower: ClassSet,
    pub upper: ClassSet,
}

impl fmt::Display for RoughElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lower, self.upper)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoughOp {
    Meet,
    Join,
    Imp,
    L,
    M,
    Neg,
    Zero,
    One,
}

impl RoughOp {
    pub const ALL: [RoughOp; 8] = [
        RoughOp::Meet,
        RoughOp::Join,
        RoughOp::Imp,
        RoughOp::L,
        RoughOp::M,
        RoughOp::Neg,
        RoughOp::Zero,
        RoughOp::One,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RoughOp::Meet => "meet",
            RoughOp::Join => "join",
            RoughOp::Imp => "imp",
            RoughOp::L => "l",
            RoughOp::M => "m",
            RoughOp::Neg => "neg",
            RoughOp::Zero => "zero",
            RoughOp::One => "one",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            RoughOp::Meet | RoughOp::Join | RoughOp::Imp => 2,
            RoughOp::L | RoughOp::M | RoughOp::Neg => 1,
            RoughOp::Zero | RoughOp::One => 0,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|op| op.name() == s)
    }
}

/// An atom of the definable elements `{a : L(a) = a}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefinableAtom {
    pub element: usize,
    pub label: String,
    /// False when some `x` has `L(x) = 0` and `M(x)` equal to this atom.
    pub singleton: bool,
}

/// Total `⊓, ⊔, ⇒, L, ¬, 0, 1` tables over a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreRoughAlgebra {
    lattice: FiniteLattice,
    neg: Vec<usize>,
    l: Vec<usize>,
    imp: Vec<usize>,
    zero: usize,
    one: usize,
}

impl PreRoughAlgebra {
    /// Builds the order from `meet`; `⇒` follows from its defining formula
    /// and the constants are the bounds.
    pub fn from_operations(
        labels: Vec<String>,
        meet: impl Fn(usize, usize) -> usize,
        neg: Vec<usize>,
        l: Vec<usize>,
    ) -> Result<Self> {
        let lattice = FiniteLattice::from_meet_table(labels, meet)?;
        let n = lattice.len();
        for (name, table) in [("neg", &neg), ("l", &l)] {
            if table.len() != n || table.iter().any(|&x| x >= n) {
                return Err(Error::NotARoughAlgebra(format!("`{name}` is not a map on the carrier")));
            }
        }
        let (zero, one) = (lattice.bottom(), lattice.top());
        let mut alg = PreRoughAlgebra {
            lattice,
            neg,
            l,
            imp: Vec::new(),
            zero,
            one,
        };
        alg.imp = (0..n * n).map(|i| alg.imp_formula(i / n, i % n)).collect();
        Ok(alg)
    }

    /// Reads an algebra over `meet, join, imp, l, neg, zero, one`; every
    /// table is taken as given.
    pub fn from_model(model: &PartialAlgebraModel) -> Result<Self> {
        let op = |name: &str, arity: usize| -> Result<usize> {
            let i = model.op(name)?;
            if model.signature().arity(i) != arity {
                return Err(Error::ArityMismatch {
                    op: name.into(),
                    expected: arity,
                    found: model.signature().arity(i),
                });
            }
            if !model.is_total(i) {
                return Err(Error::NotARoughAlgebra(format!("`{name}` is not total")));
            }
            Ok(i)
        };
        let [meet, join, imp, l, neg, zero, one] = [
            ("meet", 2),
            ("join", 2),
            ("imp", 2),
            ("l", 1),
            ("neg", 1),
            ("zero", 0),
            ("one", 0),
        ]
        .map(|(name, arity)| op(name, arity));
        let (meet, join, imp, l, neg, zero, one) = (meet?, join?, imp?, l?, neg?, zero?, one?);
        let get = |op: usize, args: &[usize]| model.apply(op, args).expect("total");
        let lattice = FiniteLattice::from_meet_table(model.labels().to_vec(), |a, b| get(meet, &[a, b]))?;
        let n = lattice.len();
        for a in 0..n {
            for b in 0..n {
                if get(join, &[a, b]) != lattice.join(a, b) {
                    return Err(Error::NotARoughAlgebra(format!(
                        "`join` of {} and {} is not their least upper bound",
                        lattice.label(a),
                        lattice.label(b)
                    )));
                }
            }
        }
        Ok(PreRoughAlgebra {
            neg: (0..n).map(|a| get(neg, &[a])).collect(),
            l: (0..n).map(|a| get(l, &[a])).collect(),
            imp: (0..n * n).map(|i| get(imp, &[i / n, i % n])).collect(),
            zero: get(zero, &[]),
            one: get(one, &[]),
            lattice,
        })
    }

    fn imp_formula(&self, a: usize, b: usize) -> usize {
        let left = self.join(self.neg(self.l(a)), self.l(b));
        let right = self.join(self.l(self.neg(a)), self.neg(self.l(self.neg(b))));
        self.meet(left, right)
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        self.lattice.labels()
    }

    pub fn label(&self, a: usize) -> &str {
        self.lattice.label(a)
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn l(&self, a: usize) -> usize {
        self.l[a]
    }

    /// `M = ¬L¬`.
    pub fn m(&self, a: usize) -> usize {
        self.neg(self.l(self.neg(a)))
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.len() + b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn apply(&self, op: RoughOp, args: &[usize]) -> Result<usize> {
        if args.len() != op.arity() {
            return Err(Error::ArityMismatch {
                op: op.name().into(),
                expected: op.arity(),
                found: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(match op {
            RoughOp::Meet => self.meet(args[0], args[1]),
            RoughOp::Join => self.join(args[0], args[1]),
            RoughOp::Imp => self.imp(args[0], args[1]),
            RoughOp::L => self.l(args[0]),
            RoughOp::M => self.m(args[0]),
            RoughOp::Neg => self.neg(args[0]),
            RoughOp::Zero => self.zero,
            RoughOp::One => self.one,
        })
    }

    /// The algebra as a total model over `meet, join, imp, l, neg, zero, one`.
    pub fn to_model(&self) -> PartialAlgebraModel {
        let n = self.len();
        let signature = Signature::new([
            ("meet", 2),
            ("join", 2),
            ("imp", 2),
            ("l", 1),
            ("neg", 1),
            ("zero", 0),
            ("one", 0),
        ])
        .expect("distinct names");
        let binary = |f: &dyn Fn(usize, usize) -> usize| (0..n * n).map(|i| Some(f(i / n, i % n))).collect();
        let tables = vec![
            binary(&|a, b| self.meet(a, b)),
            binary(&|a, b| self.join(a, b)),
            binary(&|a, b| self.imp(a, b)),
            self.l.iter().map(|&x| Some(x)).collect(),
            self.neg.iter().map(|&x| Some(x)).collect(),
            vec![Some(self.zero)],
            vec![Some(self.one)],
        ];
        PartialAlgebraModel::new(signature, self.labels().to_vec(), tables).expect("tables match the carrier")
    }

    pub fn check_axioms(&self) -> Result<AxiomReport> {
        check_prerough_axioms(&self.to_model())
    }

    /// Atoms of `{a : L(a) = a}`, flagged by whether their class is a
    /// singleton.
    pub fn definable_atoms(&self) -> Result<Vec<DefinableAtom>> {
        let n = self.len();
        let definable: Vec<usize> = (0..n).filter(|&a| self.l(a) == a).collect();
        let is_def = |a: usize| self.l(a) == a;
        for &a in &definable {
            if !is_def(self.neg(a)) || self.join(a, self.neg(a)) != self.one || self.meet(a, self.neg(a)) != self.zero {
                return Err(Error::NotARoughAlgebra(format!(
                    "definable element {} has no definable complement",
                    self.label(a)
                )));
            }
            for &b in &definable {
                if !is_def(self.meet(a, b)) || !is_def(self.join(a, b)) {
                    return Err(Error::NotARoughAlgebra(format!(
                        "definable elements {} and {} are not closed under meet and join",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        if !is_def(self.zero) || !is_def(self.one) {
            return Err(Error::NotARoughAlgebra("0 or 1 is not definable".into()));
        }
        Ok(definable
            .iter()
            .copied()
            .filter(|&d| d != self.zero && definable.iter().all(|&e| e == self.zero || e == d || !self.leq(e, d)))
            .map(|d| DefinableAtom {
                element: d,
                label: self.label(d).to_string(),
                singleton: !(0..n).any(|x| self.l(x) == self.zero && self.m(x) == d),
            })
            .collect())
    }
}

/// Checks the pre-rough axioms, with distributivity reported as its own
/// clause.
pub fn check_prerough_axioms(model: &PartialAlgebraModel) -> Result<AxiomReport> {
    for (name, arity) in [
        ("meet", 2),
        ("join", 2),
        ("imp", 2),
        ("l", 1),
        ("neg", 1),
        ("zero", 0),
        ("one", 0),
    ] {
        let op = model.op(name)?;
        if model.signature().arity(op) != arity {
            return Err(Error::ArityMismatch {
                op: name.into(),
                expected: arity,
                found: model.signature().arity(op),
            });
        }
        if !model.is_total(op) {
            return Err(Error::NotARoughAlgebra(format!("`{name}` is not total")));
        }
    }
    let mut report = Checker::new(model).check_theory(theories::prerough())?;
    if let Some(c) = report.clauses.iter_mut().find(|c| c.id == "distributive") {
        c.notes
            .push("on a finite carrier distributivity is complete distributivity".into());
    }
    Ok(report)
}

/// The rough algebra of an approximation space.
#[derive(Debug, Clone)]
pub struct RoughAlgebra {
    space: ApproximationSpace,
    elements: Vec<RoughElement>,
    index: HashMap<RoughElement, usize>,
    algebra: PreRoughAlgebra,
}

/// Number of realizable pairs: three choices per non-singleton class and
/// two per singleton class.
pub fn rough_carrier_size(space: &ApproximationSpace) -> u128 {
    let singles = space.singleton_classes().len() as u32;
    let others = space.class_count() as u32 - singles;
    3u128
        .saturating_pow(others)
        .saturating_mul(2u128.saturating_pow(singles))
}

/// Builds the algebra of realizable pairs, refusing carriers above `cap`.
pub fn build_rough_algebra(space: &ApproximationSpace, cap: usize) -> Result<RoughAlgebra> {
    let size = rough_carrier_size(space);
    if size > cap as u128 {
        return Err(Error::SizeCapExceeded {
            what: "rough algebra carrier",
            size: usize::try_from(size).unwrap_or(usize::MAX),
            cap,
        });
    }
    let k = space.class_count();
    let mut elements = vec![RoughElement {
        lower: ClassSet::EMPTY,
        upper: ClassSet::EMPTY,
    }];
    for class in 0..k {
        let bit = ClassSet::singleton(class);
        let mut next = Vec::with_capacity(elements.len() * 3);
        for e in &elements {
            next.push(*e);
            if !space.is_singleton_class(class) {
                next.push(RoughElement {
                    lower: e.lower,
                    upper: e.upper.union(bit),
                });
            }
            next.push(RoughElement {
                lower: e.lower.union(bit),
                upper: e.upper.union(bit),
            });
        }
        elements = next;
    }
    elements.sort_unstable_by_key(|e| (e.lower, e.upper));
    let index: HashMap<RoughElement, usize> = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let labels: Vec<String> = elements.iter().map(|e| pair_label(space, e)).collect();
    let full = ClassSet::full(k);
    let at = |e: RoughElement| index[&e];
    let neg = elements
        .iter()
        .map(|e| {
            at(RoughElement {
                lower: e.upper.complement(k),
                upper: e.lower.complement(k),
            })
        })
        .collect();
    let l = elements
        .iter()
        .map(|e| {
            at(RoughElement {
                lower: e.lower,
                upper: e.lower,
            })
        })
        .collect();
    let algebra = PreRoughAlgebra::from_operations(
        labels,
        |a, b| {
            let (x, y) = (elements[a], elements[b]);
            at(RoughElement {
                lower: x.lower.intersection(y.lower),
                upper: x.upper.intersection(y.upper),
            })
        },
        neg,
        l,
    )?;
    debug_assert_eq!(
        elements[algebra.one()],
        RoughElement {
            lower: full,
            upper: full
        }
    );
    let alg = RoughAlgebra {
        space: space.clone(),
        elements,
        index,
        algebra,
    };
    let report = alg.algebra.check_axioms()?;
    if !report.passes() {
        return Err(Error::NotARoughAlgebra(format!(
            "axioms fail: {}",
            report.failing().join(", ")
        )));
    }
    Ok(alg)
}

fn pair_label(space: &ApproximationSpace, e: &RoughElement) -> String {
    let objects = |c: ClassSet| {
        let names: Vec<&str> = space
            .members(c)
            .into_iter()
            .map(|i| space.universe()[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    };
    format!("({},{})", objects(e.lower), objects(e.upper))
}

#[derive(Debug, Clone, Serialize)]
pub struct RoughElementJson {
    pub label: String,
    pub lower: ClassSet,
    pub upper: ClassSet,
}

/// Space, carrier pairs (class indices), and operation tables.
#[derive(Debug, Clone, Serialize)]
pub struct RoughAlgebraJson {
    pub space: SpaceJson,
    pub carrier: Vec<RoughElementJson>,
    pub model: ModelJson,
}

impl RoughAlgebra {
    pub fn space(&self) -> &ApproximationSpace {
        &self.space
    }

    pub fn algebra(&self) -> &PreRoughAlgebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[RoughElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> RoughElement {
        self.elements[i]
    }

    pub fn label(&self, i: usize) -> &str {
        self.algebra.label(i)
    }

    pub fn index_of(&self, e: &RoughElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// The rough-equality class of a subset of the universe.
    pub fn class_of_set(&self, set: &BTreeSet<usize>) -> usize {
        let e = RoughElement {
            lower: self.space.lower_classes(set),
            upper: self.space.upper_classes(set),
        };
        self.index[&e]
    }

    pub fn rough_op(&self, op: RoughOp, args: &[RoughElement]) -> Result<RoughElement> {
        let idx = args
            .iter()
            .map(|a| self.index_of(a).ok_or_else(|| Error::UnknownElement(a.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.elements[self.algebra.apply(op, &idx)?])
    }

    pub fn definable_atoms(&self) -> Result<Vec<DefinableAtom>> {
        self.algebra.definable_atoms()
    }

    pub fn to_json(&self) -> RoughAlgebraJson {
        RoughAlgebraJson {
            space: self.space.to_json(),
            carrier: self
                .elements
                .iter()
                .enumerate()
                .map(|(i, e)| RoughElementJson {
                    label: self.label(i).to_string(),
                    lower: e.lower,
                    upper: e.upper,
                })
                .collect(),
            model: self.algebra.to_model().to_json(),
        }
    }

    pub fn to_dot(&self) -> String {
        hasse_dot(self.algebra.lattice().poset(), "rough_algebra")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(blocks: &[&[usize]]) -> ApproximationSpace {
        let n = blocks.iter().map(|b| b.len()).sum();
        ApproximationSpace::from_blocks(n, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Subsets of the universe grouped by their approximations.
    fn quotient_size(s: &ApproximationSpace) -> usize {
        let n = s.universe().len();
        let pairs: BTreeSet<(ClassSet, ClassSet)> = (0..1u32 << n)
            .map(|mask| {
                let set: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                (s.lower_classes(&set), s.upper_classes(&set))
            })
            .collect();
        pairs.len()
    }

    #[test]
    fn carrier_sizes() {
        let s = space(&[&[0, 1], &[2], &[3]]);
        let alg = build_rough_algebra(&s, 64).unwrap();
        assert_eq!(alg.len(), 12);
        assert_eq!(quotient_size(&s), 12);
        let d = ApproximationSpace::discrete(4);
        assert_eq!(build_rough_algebra(&d, 64).unwrap().len(), 16);
        assert!(matches!(
            build_rough_algebra(&ApproximationSpace::discrete(7), 64),
            Err(Error::SizeCapExceeded { size: 128, cap: 64, .. })
        ));
    }

    #[test]
    fn indiscrete_pair_is_a_chain() {
        let alg = build_rough_algebra(&ApproximationSpace::indiscrete(2), 64).unwrap();
        assert_eq!(alg.algebra().labels(), ["({},{})", "({},{1,2})", "({1,2},{1,2})"]);
        let a = alg.algebra();
        assert!(a.leq(0, 1) && a.leq(1, 2));
        assert_eq!(a.l(1), 0);
        assert_eq!(a.m(1), 2);
        let mid = alg.element(1);
        assert_eq!(alg.rough_op(RoughOp::L, &[mid]).unwrap(), alg.element(0));
    }

    #[test]
    fn discrete_pair_is_boolean_with_identity_l() {
        let alg = build_rough_algebra(&ApproximationSpace::discrete(2), 64).unwrap();
        let a = alg.algebra();
        assert_eq!(a.len(), 4);
        assert!((0..4).all(|x| a.l(x) == x));
        assert!(a.lattice().is_distributive());
        assert_eq!(a.lattice().atoms().len(), 2);
    }

    #[test]
    fn operations_match_their_definitions() {
        let alg = build_rough_algebra(&space(&[&[0, 1], &[2], &[3, 4]]), 64).unwrap();
        let a = alg.algebra();
        let k = alg.space().class_count();
        for x in 0..alg.len() {
            let e = alg.element(x);
            assert_eq!(
                alg.element(a.m(x)),
                RoughElement {
                    lower: e.upper,
                    upper: e.upper
                }
            );
            assert_eq!(a.neg(a.neg(x)), x);
            assert_eq!(a.imp(x, x), a.one());
            assert!(a.leq(a.l(x), x) && a.leq(x, a.m(x)));
            let ne = alg.element(a.neg(x));
            assert_eq!(ne.lower, e.upper.complement(k));
            for y in 0..alg.len() {
                assert_eq!(a.imp(x, y) == a.one(), a.leq(x, y));
            }
        }
        assert!(matches!(
            alg.rough_op(RoughOp::Meet, &[alg.element(0)]),
            Err(Error::ArityMismatch { .. })
        ));
        let bogus = RoughElement {
            lower: ClassSet(1),
            upper: ClassSet::EMPTY,
        };
        assert!(matches!(
            alg.rough_op(RoughOp::Neg, &[bogus]),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn definable_atom_flags() {
        let alg = build_rough_algebra(&space(&[&[0, 1], &[2]]), 64).unwrap();
        let atoms = alg.definable_atoms().unwrap();
        assert_eq!(atoms.len(), 2);
        let flags: Vec<(String, bool)> = atoms.iter().map(|a| (a.label.clone(), a.singleton)).collect();
        assert_eq!(
            flags,
            [("({1,2},{1,2})".to_string(), false), ("({3},{3})".to_string(), true)]
        );
        let discrete = build_rough_algebra(&ApproximationSpace::discrete(3), 64).unwrap();
        assert!(discrete.definable_atoms().unwrap().iter().all(|a| a.singleton));
        let one = build_rough_algebra(&ApproximationSpace::indiscrete(2), 64).unwrap();
        let atoms = one.definable_atoms().unwrap();
        assert_eq!(atoms.len(), 1);
        assert!(!atoms[0].singleton);
    }

    fn boolean_with_l(l: Vec<usize>) -> PreRoughAlgebra {
        let b = FiniteLattice::boolean(2);
        PreRoughAlgebra::from_operations(b.labels().to_vec(), |x, y| b.meet(x, y), vec![3, 2, 1, 0], l).unwrap()
    }

    #[test]
    fn axiom_checker_on_hand_built_algebras() {
        let identity = boolean_with_l(vec![0, 1, 2, 3]);
        assert!(identity.check_axioms().unwrap().passes());
        let collapsing = boolean_with_l(vec![0, 0, 0, 3]);
        let report = collapsing.check_axioms().unwrap();
        assert_eq!(report.failing(), ["additive", "implication-order"]);
        assert!(report.clause("boolean-l").unwrap().holds);
    }

    #[test]
    fn model_round_trip() {
        let alg = build_rough_algebra(&space(&[&[0, 1], &[2]]), 64).unwrap();
        let model = alg.algebra().to_model();
        let back = PreRoughAlgebra::from_model(&model).unwrap();
        assert_eq!(&back, alg.algebra());
        let report = check_prerough_axioms(&model).unwrap();
        assert!(report.passes(), "{}", report.to_text());
    }
}
