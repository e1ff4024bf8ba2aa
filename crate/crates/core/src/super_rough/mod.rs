//! Super rough set-algebras over the convex sublattices of a finite rough
//! algebra, their axiom systems, and the representation of abstract models.

mod build;
mod represent;
mod verify;

pub use build::{build_super_rough, build_super_rough_checked, ConditionReport, SuperRoughSetAlgebra, SET_ALGEBRA_OPS};
pub use represent::{represent, rough_isomorphism, verify_certificate, Gate, Representation};
pub use verify::{check_super_rough_axioms, check_super_rough_axioms_with, verify_set_algebra_laws};
