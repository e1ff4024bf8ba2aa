use serde::Serialize;

use crate::convex::{build_co_lattice, CoLattice, ConvexSublattice};
use crate::error::{Error, Result};
use crate::lattice::{check_condition, Condition};
use crate::partial::{PartialAlgebraModel, Signature};
use crate::rough::RoughAlgebra;
use crate::tolerance::{blocks, coapproximability, BlockSystem, ToleranceRelation};

/// Operation symbols of the set-algebra model, in table order.
pub const SET_ALGEBRA_OPS: [(&str, usize); 11] = [
    ("meet", 2),
    ("join", 2),
    ("rmeet", 2),
    ("rjoin", 2),
    ("neg", 1),
    ("lr", 1),
    ("lt", 1),
    ("down", 1),
    ("up", 1),
    ("one", 0),
    ("empty", 0),
];

/// Whether `Co(S)` satisfies the element-wise conditions `S_i, B_i, U_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub failures: Vec<String>,
}

/// The partial algebra on all convex sublattices of a rough algebra.
#[derive(Debug, Clone)]
pub struct SuperRoughSetAlgebra {
    rough: RoughAlgebra,
    co: CoLattice,
    tolerance: ToleranceRelation,
    blocks: BlockSystem,
    model: PartialAlgebraModel,
    conditions: ConditionReport,
}

/// Builds the set-algebra; `cap` bounds the rough-algebra carrier whose
/// convex sublattices are enumerated. Failures of `S_i, B_i, U_i` on the
/// carrier are recorded, not raised.
pub fn build_super_rough(alg: &RoughAlgebra, cap: usize) -> Result<SuperRoughSetAlgebra> {
    let s = alg.algebra();
    let co = build_co_lattice(s.lattice(), cap)?;
    let tolerance = coapproximability(s);
    let blocks = blocks(&tolerance);
    let n = co.len();
    let image = |members: &mut dyn Iterator<Item = usize>| co.index_of(ConvexSublattice::from_members(members));
    let elementwise2 = |a: usize, b: usize, f: &dyn Fn(usize, usize) -> usize| {
        let (a, b) = (co.element(a).members(), co.element(b).members());
        image(
            &mut a
                .iter()
                .flat_map(|&x| b.iter().map(move |&y| (x, y)))
                .map(|(x, y)| f(x, y)),
        )
    };
    let elementwise1 = |a: usize, f: &dyn Fn(usize) -> usize| image(&mut co.element(a).members().into_iter().map(f));
    let block_sets: Vec<ConvexSublattice> = blocks
        .blocks
        .iter()
        .map(|b| ConvexSublattice::from_members(b.iter().copied()))
        .collect();
    let cl = co.lattice();
    let (bottom, top) = (s.zero(), s.one());
    let binary = |f: &dyn Fn(usize, usize) -> Option<usize>| (0..n * n).map(|i| f(i / n, i % n)).collect::<Vec<_>>();
    let unary = |f: &dyn Fn(usize) -> Option<usize>| (0..n).map(f).collect::<Vec<_>>();
    let tables = vec![
        binary(&|a, b| Some(cl.meet(a, b))),
        binary(&|a, b| Some(cl.join(a, b))),
        binary(&|a, b| elementwise2(a, b, &|x, y| s.meet(x, y))),
        binary(&|a, b| elementwise2(a, b, &|x, y| s.join(x, y))),
        unary(&|a| elementwise1(a, &|x| s.neg(x))),
        unary(&|a| elementwise1(a, &|x| s.l(x))),
        unary(&|a| block_sets.contains(&co.element(a)).then_some(a)),
        unary(&|a| {
            let m = co.element(a).members();
            Some(if m.is_empty() {
                co.empty()
            } else {
                co.interval(bottom, s.lattice().join_all(m))
            })
        }),
        unary(&|a| {
            let m = co.element(a).members();
            Some(if m.is_empty() {
                co.empty()
            } else {
                co.interval(s.lattice().meet_all(m), top)
            })
        }),
        vec![Some(cl.top())],
        vec![Some(co.empty())],
    ];
    let signature = Signature::new(SET_ALGEBRA_OPS).expect("distinct names");
    let members = (0..n)
        .map(|a| {
            co.element(a)
                .members()
                .into_iter()
                .map(|x| s.label(x).to_string())
                .collect()
        })
        .collect();
    let model = PartialAlgebraModel::new(signature, cl.labels().to_vec(), tables)?.with_members(members);
    let failures: Vec<String> = [Condition::Si, Condition::Bi, Condition::Ui]
        .into_iter()
        .map(|c| check_condition(cl, c))
        .filter(|w| !w.holds)
        .map(|w| w.describe(cl))
        .collect();
    let conditions = ConditionReport {
        holds: failures.is_empty(),
        failures,
    };
    Ok(SuperRoughSetAlgebra {
        rough: alg.clone(),
        co,
        tolerance,
        blocks,
        model,
        conditions,
    })
}

/// As [`build_super_rough`], but a carrier violating `S_i, B_i, U_i` is an
/// error.
pub fn build_super_rough_checked(alg: &RoughAlgebra, cap: usize) -> Result<SuperRoughSetAlgebra> {
    let r = build_super_rough(alg, cap)?;
    if !r.conditions.holds {
        return Err(Error::ConvexConditionViolation(r.conditions.failures.join("; ")));
    }
    Ok(r)
}

impl SuperRoughSetAlgebra {
    pub fn rough(&self) -> &RoughAlgebra {
        &self.rough
    }

    pub fn co(&self) -> &CoLattice {
        &self.co
    }

    pub fn tolerance(&self) -> &ToleranceRelation {
        &self.tolerance
    }

    pub fn blocks(&self) -> &BlockSystem {
        &self.blocks
    }

    pub fn model(&self) -> &PartialAlgebraModel {
        &self.model
    }

    /// `S_i, B_i, U_i` on the carrier lattice.
    pub fn conditions(&self) -> &ConditionReport {
        &self.conditions
    }

    pub fn len(&self) -> usize {
        self.model.len()
    }

    pub fn is_empty(&self) -> bool {
        self.model.is_empty()
    }
}
