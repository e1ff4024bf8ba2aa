//! Finite rough-set algebra toolkit.
//!
//! From an approximation space the crate builds the rough algebra of
//! realizable (lower, upper) pairs, its coapproximability tolerance and
//! blocks, the lattice of convex sublattices, and the partial super rough
//! set-algebra on it. Axiom sets are checked by an exhaustive partial-algebra
//! model checker, and [`super_rough::represent`] runs the reverse direction.
//!
//! ```
//! use superrough::approximation::ApproximationSpace;
//! use superrough::rough::build_rough_algebra;
//! use superrough::super_rough::build_super_rough;
//!
//! let rough = build_rough_algebra(&ApproximationSpace::indiscrete(2), 64).unwrap();
//! assert_eq!(rough.len(), 3);
//! assert_eq!(build_super_rough(&rough, 16).unwrap().len(), 7);
//! ```

pub mod approximation;
pub mod convex;
pub mod error;
pub mod json;
pub mod lattice;
pub mod par;
pub mod partial;
pub mod rough;
pub mod super_rough;
pub mod sweep;
pub mod theories;
pub mod tolerance;

pub use error::{Error, Result, Stage};
