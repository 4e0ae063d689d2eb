//! Exact verification of binomial-sum identities around the Catalan
//! triangle: Wilf-Zeilberger certificates checked as rational-function
//! identities, grid verification of identities with exact rationals and
//! q-polynomials, a lattice-path bijection, and the `L` operator iterates.

pub mod arith;
pub mod catalog;
pub mod conjecture;
pub mod error;
pub mod paths;
pub mod poly;
pub mod wz;

use std::collections::BTreeMap;

pub use error::{Error, Result};

/// An integer assignment to named parameters.
pub type Point = BTreeMap<String, i64>;

pub fn point(pairs: &[(&str, i64)]) -> Point {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn fmt_point(p: &Point) -> String {
    let parts: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(",")
}
