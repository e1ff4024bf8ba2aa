use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use super::build::{build_super_rough, SuperRoughSetAlgebra};
use super::verify::check_super_rough_axioms;
use crate::approximation::ApproximationSpace;
use crate::convex::ConvexSublattice;
use crate::error::{Error, Result, Stage};
use crate::lattice::for_each_order_isomorphism;
use crate::partial::{Atom, AxiomReport, Checker, Formula, PartialAlgebraModel, Semantics};
use crate::rough::{build_rough_algebra, check_prerough_axioms, PreRoughAlgebra};
use crate::tolerance::{coapproximability, reconstruct_from_blocks, verify_block_system, BlockSystem};

/// Which axiom outcomes admit a model to the representation pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gate {
    /// Every axiom must hold strictly.
    Full,
    /// The (meet, join) reduct must be a lattice and the remaining axioms
    /// must hold with conclusions read weakly.
    #[default]
    Reconstructive,
}

impl std::str::FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Gate::Full),
            "reconstructive" => Ok(Gate::Reconstructive),
            other => Err(Error::Parse(format!("unknown gate `{other}`"))),
        }
    }
}

/// A recovered approximation space with the round-trip isomorphism.
#[derive(Debug, Clone, Serialize)]
pub struct Representation {
    #[serde(skip)]
    pub space: ApproximationSpace,
    pub gate: Gate,
    pub singletons: usize,
    pub blocks: usize,
    /// `(input label, rebuilt label)` for every carrier element.
    pub certificate: Vec<(String, String)>,
    #[serde(skip)]
    pub rebuilt: SuperRoughSetAlgebra,
    pub axioms: AxiomReport,
}

fn fail(stage: Stage, detail: impl Into<String>) -> Error {
    Error::RepresentationFailure {
        stage,
        detail: detail.into(),
    }
}

fn admitted(model: &PartialAlgebraModel, report: &AxiomReport, gate: Gate) -> Result<()> {
    let rejected: Vec<&str> = match gate {
        Gate::Full => report.failing(),
        Gate::Reconstructive => {
            let lattice = Formula {
                premises: vec![],
                exists: vec![],
                conclusion: vec![Atom::Lattice],
                informational: false,
            };
            let reduct = Checker::new(model).check_formula(&lattice, Semantics::Strict)?;
            if !reduct.holds {
                return Err(fail(
                    Stage::Axioms,
                    format!(
                        "the (meet, join) reduct is not a lattice: {}",
                        reduct.counterexample.unwrap_or_default()
                    ),
                ));
            }
            report
                .clauses
                .iter()
                .filter(|c| c.id != "1" && !c.holds_weakly)
                .map(|c| c.id.as_str())
                .collect()
        }
    };
    if rejected.is_empty() {
        Ok(())
    } else {
        let noun = if rejected.len() == 1 { "clause" } else { "clauses" };
        let verb = if rejected.len() == 1 { "fails" } else { "fail" };
        Err(fail(Stage::Axioms, format!("{noun} {} {verb}", rejected.join(", "))))
    }
}

/// Recovers an approximation space whose set-algebra is isomorphic to
/// `model`.
pub fn represent(model: &PartialAlgebraModel, gate: Gate) -> Result<Representation> {
    let report = check_super_rough_axioms(model).map_err(|e| fail(Stage::Axioms, e.to_string()))?;
    admitted(model, &report, gate)?;
    let op = |name: &str| model.op(name).expect("signature checked");
    let (meet, lt) = (op("meet"), op("lt"));
    let empty = model
        .apply(op("empty"), &[])
        .ok_or_else(|| fail(Stage::Singletons, "the constant `empty` is undefined"))?;
    let below = |x: usize, a: usize| model.apply(meet, &[x, a]) == Some(x);
    let n = model.len();
    let singletons: Vec<usize> = (0..n)
        .filter(|&x| x != empty && below(empty, x) && (0..n).all(|y| !below(y, x) || y == x || y == empty))
        .collect();
    if singletons.is_empty() {
        return Err(fail(Stage::Singletons, "no element covers `empty`"));
    }
    let position: HashMap<usize, usize> = singletons.iter().enumerate().map(|(i, &x)| (x, i)).collect();

    let induced = |name: &str, args: &[usize]| -> Result<usize> {
        let raw: Vec<usize> = args.iter().map(|&i| singletons[i]).collect();
        let v = model.apply(op(name), &raw);
        v.and_then(|v| position.get(&v).copied()).ok_or_else(|| {
            let shown: Vec<&str> = raw.iter().map(|&x| model.label(x)).collect();
            fail(
                Stage::Operations,
                format!("`{name}` of singletons ({}) is not a singleton", shown.join(", ")),
            )
        })
    };
    let k = singletons.len();
    let mut meet_f = vec![0; k * k];
    let mut join_f = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            meet_f[a * k + b] = induced("rmeet", &[a, b])?;
            join_f[a * k + b] = induced("rjoin", &[a, b])?;
        }
    }
    let neg_f = (0..k).map(|a| induced("neg", &[a])).collect::<Result<Vec<_>>>()?;
    let l_f = (0..k).map(|a| induced("lr", &[a])).collect::<Result<Vec<_>>>()?;
    let labels: Vec<String> = singletons.iter().map(|&x| model.label(x).to_string()).collect();
    let f = PreRoughAlgebra::from_operations(labels, |a, b| meet_f[a * k + b], neg_f, l_f)
        .map_err(|e| fail(Stage::Operations, e.to_string()))?;
    if let Some(i) = (0..k * k).find(|&i| join_f[i] != f.join(i / k, i % k)) {
        return Err(fail(
            Stage::Operations,
            format!(
                "rjoin of {} and {} is not their least upper bound",
                f.label(i / k),
                f.label(i % k)
            ),
        ));
    }

    let fixed: Vec<usize> = (0..n).filter(|&a| model.apply(lt, &[a]) == Some(a)).collect();
    let system = BlockSystem::new(
        fixed
            .iter()
            .map(|&a| (0..k).filter(|&x| below(singletons[x], a)).collect())
            .collect(),
    );
    let check = verify_block_system(f.lattice(), &system);
    if let Some(c) = check.clauses.iter().find(|c| !c.holds) {
        return Err(fail(
            Stage::Blocks,
            format!(
                "fixed points of lt: clause {} fails: {}",
                c.id,
                c.witness.clone().unwrap_or_default()
            ),
        ));
    }
    let t = reconstruct_from_blocks(k, &system).map_err(|e| fail(Stage::Blocks, e.to_string()))?;
    if t != coapproximability(&f) {
        return Err(fail(
            Stage::Blocks,
            "the fixed points of lt are not the coapproximability blocks",
        ));
    }

    let prerough = check_prerough_axioms(&f.to_model()).map_err(|e| fail(Stage::PreRough, e.to_string()))?;
    if !prerough.passes() {
        return Err(fail(
            Stage::PreRough,
            format!("axioms fail: {}", prerough.failing().join(", ")),
        ));
    }

    let atoms = f.definable_atoms().map_err(|e| fail(Stage::Space, e.to_string()))?;
    let mut classes = Vec::new();
    let mut next = 0;
    for a in &atoms {
        let size = if a.singleton { 1 } else { 2 };
        classes.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let space = ApproximationSpace::from_blocks(next, &classes).map_err(|e| fail(Stage::Space, e.to_string()))?;

    let rough = build_rough_algebra(&space, k.max(1)).map_err(|e| fail(Stage::RoundTrip, e.to_string()))?;
    let rebuilt = build_super_rough(&rough, k.max(1)).map_err(|e| fail(Stage::RoundTrip, e.to_string()))?;
    let certificate = model_isomorphism(model, &singletons, &f, &rebuilt).ok_or_else(|| {
        fail(
            Stage::RoundTrip,
            "no isomorphism between the input and the rebuilt set-algebra",
        )
    })?;
    let certificate = certificate
        .iter()
        .enumerate()
        .map(|(a, &b)| (model.label(a).to_string(), rebuilt.model().label(b).to_string()))
        .collect();
    Ok(Representation {
        space,
        gate,
        singletons: k,
        blocks: system.len(),
        certificate,
        rebuilt,
        axioms: report,
    })
}

/// Isomorphisms of pre-rough algebras, as images of `a`'s elements.
pub fn rough_isomorphism(a: &PreRoughAlgebra, b: &PreRoughAlgebra) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_rough_isomorphism(a, b, |phi| {
        found = Some(phi.to_vec());
        ControlFlow::Break(())
    });
    found
}

fn for_each_rough_isomorphism(
    a: &PreRoughAlgebra,
    b: &PreRoughAlgebra,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) {
    for_each_order_isomorphism(a.lattice().poset(), b.lattice().poset(), |phi| {
        let preserves = (0..a.len()).all(|x| phi[a.neg(x)] == b.neg(phi[x]) && phi[a.l(x)] == b.l(phi[x]));
        if preserves {
            visit(phi)
        } else {
            ControlFlow::Continue(())
        }
    });
}

/// Extends algebra isomorphisms on the singletons to the whole carrier and
/// returns the first extension that validates.
fn model_isomorphism(
    model: &PartialAlgebraModel,
    singletons: &[usize],
    f: &PreRoughAlgebra,
    rebuilt: &SuperRoughSetAlgebra,
) -> Option<Vec<usize>> {
    let meet = model.op("meet").ok()?;
    let below: Vec<Vec<usize>> = (0..model.len())
        .map(|a| {
            (0..singletons.len())
                .filter(|&x| model.apply(meet, &[singletons[x], a]) == Some(singletons[x]))
                .collect()
        })
        .collect();
    let target = rebuilt.rough().algebra();
    let mut found = None;
    for_each_rough_isomorphism(f, target, |phi| {
        let map: Option<Vec<usize>> = below
            .iter()
            .map(|xs| {
                rebuilt
                    .co()
                    .index_of(ConvexSublattice::from_members(xs.iter().map(|&x| phi[x])))
            })
            .collect();
        match map {
            Some(map) if verify_mapping(model, rebuilt.model(), &map).is_ok() => {
                found = Some(map);
                ControlFlow::Break(())
            }
            _ => ControlFlow::Continue(()),
        }
    });
    found
}

fn verify_mapping(a: &PartialAlgebraModel, b: &PartialAlgebraModel, map: &[usize]) -> std::result::Result<(), String> {
    let n = a.len();
    if b.len() != n || map.len() != n {
        return Err(format!("carrier sizes {} and {} differ", n, b.len()));
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return Err("the mapping is not a bijection".into());
        }
    }
    for sym in a.signature().ops() {
        let oa = a.op(&sym.name).map_err(|e| e.to_string())?;
        let ob = b.op(&sym.name).map_err(|e| e.to_string())?;
        if b.signature().arity(ob) != sym.arity {
            return Err(format!("`{}` has different arities", sym.name));
        }
        let mut args = vec![0usize; sym.arity];
        let total = n.pow(sym.arity as u32);
        for idx in 0..total {
            let mut r = idx;
            for slot in args.iter_mut().rev() {
                *slot = r % n;
                r /= n;
            }
            let image: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            let left = a.apply(oa, &args).map(|v| map[v]);
            let right = b.apply(ob, &image);
            if left != right {
                let shown: Vec<&str> = args.iter().map(|&x| a.label(x)).collect();
                return Err(format!("`{}` at ({}) is not preserved", sym.name, shown.join(", ")));
            }
        }
    }
    Ok(())
}

/// Re-validates a certificate: a bijection by labels preserving every
/// operation, definedness included, in both directions.
pub fn verify_certificate(
    a: &PartialAlgebraModel,
    b: &PartialAlgebraModel,
    certificate: &[(String, String)],
) -> Result<()> {
    let mut map = vec![usize::MAX; a.len()];
    for (x, y) in certificate {
        let i = a.index_of(x).ok_or_else(|| Error::UnknownElement(x.clone()))?;
        let j = b.index_of(y).ok_or_else(|| Error::UnknownElement(y.clone()))?;
        map[i] = j;
    }
    if map.contains(&usize::MAX) {
        return Err(Error::RepresentationFailure {
            stage: Stage::RoundTrip,
            detail: "certificate misses elements".into(),
        });
    }
    let to_err = |detail| Error::RepresentationFailure {
        stage: Stage::RoundTrip,
        detail,
    };
    verify_mapping(a, b, &map).map_err(to_err)?;
    let mut inverse = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        inverse[j] = i;
    }
    verify_mapping(b, a, &inverse).map_err(to_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rough::build_rough_algebra;

    fn model_of(space: &ApproximationSpace) -> SuperRoughSetAlgebra {
        build_super_rough(&build_rough_algebra(space, 64).unwrap(), 16).unwrap()
    }

    #[test]
    fn discrete_pair_round_trip() {
        let r = model_of(&ApproximationSpace::discrete(2));
        let rep = represent(r.model(), Gate::Reconstructive).unwrap();
        assert_eq!(rep.space.class_count(), 2);
        assert!((0..2).all(|k| rep.space.is_singleton_class(k)));
        verify_certificate(r.model(), rep.rebuilt.model(), &rep.certificate).unwrap();
        assert!(matches!(
            represent(r.model(), Gate::Full),
            Err(Error::RepresentationFailure {
                stage: Stage::Axioms,
                ..
            })
        ));
    }

    #[test]
    fn indiscrete_pair_round_trip() {
        let r = model_of(&ApproximationSpace::indiscrete(2));
        let rep = represent(r.model(), Gate::Reconstructive).unwrap();
        assert!(represent(r.model(), Gate::Full).is_err());
        assert_eq!(rep.space.classes(), [vec![0, 1]]);
        assert!(rough_isomorphism(r.rough().algebra(), rep.rebuilt.rough().algebra()).is_some());
    }

    #[test]
    fn junk_is_rejected_at_axioms() {
        let r = model_of(&ApproximationSpace::indiscrete(2));
        let mut junk = r.model().clone();
        junk.set("neg", &[0], Some(1)).unwrap();
        match represent(&junk, Gate::Reconstructive) {
            Err(Error::RepresentationFailure { stage, .. }) => assert_eq!(stage, Stage::Axioms),
            other => panic!("expected an axioms failure, got {:?}", other.map(|r| r.certificate)),
        }
    }
}
