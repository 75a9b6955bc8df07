//! Fixtures shared by the benchmarks.

use hochserre_core::{parse_poly, JacobianRing, OrbifoldModel, Polynomial, VarSystem};

pub const QDS_FERMAT: &str = "x1^4 + x2^4 + x3^4 + x4^4 + x5^2";
pub const QDS_MIXED: &str =
    "x1^4 + x2^4 + x3^4 + x4^4 + x5^2 + x1*x2*x3*x4 + 2*x1^2*x2*x3 - 3/2*x3*x4*x5 + x2^3*x4";
pub const CUBIC_FERMAT: &str = "x1^3 + x2^3 + x3^3 + x4^3 + x5^3";

pub fn vars(weights: &[u32], d: u32) -> VarSystem {
    let names: Vec<String> = (1..=weights.len()).map(|i| format!("x{i}")).collect();
    VarSystem::new(names, weights.to_vec(), d).expect("valid weights")
}

pub fn qds_vars() -> VarSystem {
    vars(&[1, 1, 1, 1, 2], 4)
}

pub fn cubic_vars() -> VarSystem {
    vars(&[1; 5], 3)
}

pub fn poly(v: &VarSystem, text: &str) -> Polynomial {
    parse_poly(text, v).expect("fixture parses")
}

pub fn ring(v: &VarSystem, text: &str) -> JacobianRing {
    JacobianRing::new(poly(v, text), v.clone()).expect("fixture ring")
}

pub fn model(v: &VarSystem, text: &str) -> OrbifoldModel {
    OrbifoldModel::new(v.clone(), poly(v, text)).expect("smooth fixture")
}
