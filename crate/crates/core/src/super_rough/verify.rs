use super::build::{SuperRoughSetAlgebra, SET_ALGEBRA_OPS};
use crate::error::{Error, Result};
use crate::par::Parallelism;
use crate::partial::{AxiomReport, Checker, PartialAlgebraModel};
use crate::theories;

fn check_signature(model: &PartialAlgebraModel) -> Result<()> {
    for (name, arity) in SET_ALGEBRA_OPS {
        let op = model
            .signature()
            .index_of(name)
            .ok_or_else(|| Error::SignatureMismatch(format!("missing operation `{name}`")))?;
        let found = model.signature().arity(op);
        if found != arity {
            return Err(Error::SignatureMismatch(format!(
                "`{name}` has arity {found}, expected {arity}"
            )));
        }
    }
    Ok(())
}

/// The laws every super rough set-algebra is claimed to satisfy.
pub fn verify_set_algebra_laws(r: &SuperRoughSetAlgebra) -> Result<AxiomReport> {
    Checker::new(r.model()).check_theory(theories::set_algebra())
}

/// The abstract super rough algebra axioms.
pub fn check_super_rough_axioms(model: &PartialAlgebraModel) -> Result<AxiomReport> {
    check_super_rough_axioms_with(model, Parallelism::Auto)
}

pub fn check_super_rough_axioms_with(model: &PartialAlgebraModel, mode: Parallelism) -> Result<AxiomReport> {
    check_signature(model)?;
    let mut report = Checker::new(model)
        .with_parallelism(mode)
        .check_theory(theories::super_rough())?;
    if let Some(c) = report.clauses.iter_mut().find(|c| c.id == "9") {
        c.notes
            .push("singletons are the atoms of the meet order covering empty".into());
    }
    Ok(report)
}
