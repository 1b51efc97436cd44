//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use annmod::dsl::parse_module;
use annmod::finmod::{construct_module, FiniteModule};

pub const LOCAL: &str = "(polyquot (Z 2) [x y] {x^2 xy y^2})";

/// Modules of increasing size, labelled for the bench ids.
pub fn fixtures() -> Vec<(&'static str, Arc<FiniteModule>)> {
    [
        (
            "z2_z4_over_z8",
            "(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))".to_string(),
        ),
        ("z12_squared", "(free (Z 12) 2)".to_string()),
        (
            "local_a_plus_a_mod_x",
            format!("(dsum (self {LOCAL}) (cyclic {LOCAL} (ideal x)))"),
        ),
        ("f2_cubed", "(free (Z 2) 3)".to_string()),
    ]
    .into_iter()
    .map(|(label, text)| (label, build(&text)))
    .collect()
}

pub fn build(text: &str) -> Arc<FiniteModule> {
    construct_module(&parse_module(text).expect("fixture parses")).expect("fixture builds")
}
