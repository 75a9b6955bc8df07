#![allow(dead_code)]

use hochserre_core::{parse_poly, OrbifoldModel, Polynomial, VarSystem};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn vars(weights: &[u32], d: u32) -> VarSystem {
    let names: Vec<String> = (1..=weights.len()).map(|i| format!("x{i}")).collect();
    VarSystem::new(names, weights.to_vec(), d).unwrap()
}

pub fn poly(v: &VarSystem, s: &str) -> Polynomial {
    parse_poly(s, v).unwrap()
}

pub fn model(weights: &[u32], d: u32, omega: &str) -> OrbifoldModel {
    let v = vars(weights, d);
    let p = poly(&v, omega);
    OrbifoldModel::new(v, p).unwrap()
}

pub fn qds_fermat() -> OrbifoldModel {
    model(&[1, 1, 1, 1, 2], 4, "x1^4 + x2^4 + x3^4 + x4^4 + x5^2")
}

pub fn cubic_fermat() -> OrbifoldModel {
    model(&[1; 5], 3, "x1^3 + x2^3 + x3^3 + x4^3 + x5^3")
}

/// Textbook Gauss–Jordan over Q, kept deliberately naive as an oracle.
pub fn naive_rref(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn naive_rank(rows: &[Vec<BigRational>]) -> usize {
    naive_rref(rows).1.len()
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
