//! Axiom systems shipped with the crate.

use std::sync::OnceLock;

use crate::partial::Theory;

pub const PREROUGH_SOURCE: &str = include_str!("../theories/prerough.thy");
pub const SET_ALGEBRA_SOURCE: &str = include_str!("../theories/set_algebra.thy");
pub const SUPER_ROUGH_SOURCE: &str = include_str!("../theories/super_rough.thy");

fn cached(cell: &'static OnceLock<Theory>, name: &str, source: &str) -> &'static Theory {
    cell.get_or_init(|| Theory::parse(name, source).expect("bundled theory parses"))
}

/// Pre-rough axioms over `meet, join, imp, l, neg, zero, one`.
pub fn prerough() -> &'static Theory {
    static CELL: OnceLock<Theory> = OnceLock::new();
    cached(&CELL, "prerough", PREROUGH_SOURCE)
}

/// Laws satisfied by every super rough set-algebra.
pub fn set_algebra() -> &'static Theory {
    static CELL: OnceLock<Theory> = OnceLock::new();
    cached(&CELL, "set-algebra", SET_ALGEBRA_SOURCE)
}

/// The abstract super rough algebra axioms.
pub fn super_rough() -> &'static Theory {
    static CELL: OnceLock<Theory> = OnceLock::new();
    cached(&CELL, "super-rough", SUPER_ROUGH_SOURCE)
}

pub fn builtin(name: &str) -> Option<&'static Theory> {
    match name {
        "prerough" => Some(prerough()),
        "set-algebra" => Some(set_algebra()),
        "super-rough" => Some(super_rough()),
        _ => None,
    }
}
