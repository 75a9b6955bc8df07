//! Weighted multivariate polynomials with exact rational coefficients.
//!
//! A [`VarSystem`] fixes the variable names, their weights and the degree `d`
//! of the superpotential. [`Polynomial`] is a sparse map from exponent vectors
//! to nonzero [`BigRational`] coefficients; it only knows its variable count,
//! so operations that need weights or names take the system explicitly.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::parse_poly;

/// Variable names, weights `a_0..a_n` and the degree `d` of the polynomial under study.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSystem {
    names: Vec<String>,
    weights: Vec<u32>,
    degree: u32,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarSystem {
    /// Validated constructor: nonempty, weights ≥ 1 with gcd 1, distinct identifier names.
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        weights: Vec<u32>,
        degree: u32,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidVarSystem("no variables".into()));
        }
        if names.len() != weights.len() {
            return Err(Error::InvalidVarSystem(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if degree == 0 {
            return Err(Error::InvalidVarSystem("degree must be positive".into()));
        }
        if let Some(w) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidVarSystem(format!(
                "weight of `{}` must be positive",
                names[w]
            )));
        }
        let g = weights.iter().fold(0u32, |acc, &w| acc.gcd(&w));
        if g != 1 {
            return Err(Error::InvalidVarSystem(format!(
                "weights have common factor {g}"
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidVarSystem(format!(
                    "`{name}` is not a valid variable name"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidVarSystem(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Self {
            names,
            weights,
            degree,
        })
    }

    /// The system spanned by the variables in `keep`, in their original order.
    ///
    /// The gcd condition is not imposed: fixed loci routinely have weights
    /// with a common factor (the `x5` axis of `P(1,1,1,1,2)` has weight 2),
    /// and the empty system models the origin.
    pub fn subsystem(&self, keep: &[usize]) -> Self {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        Self {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            weights: keep.iter().map(|&i| self.weights[i]).collect(),
            degree: self.degree,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().map(|&w| i64::from(w)).sum()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.weights.iter().copied().max()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        m.0.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| i64::from(e) * i64::from(w))
            .sum()
    }

    /// All monomials of weighted degree `e`, lexicographically descending
    /// (largest power of the first variable first).
    pub fn monomials_of_degree(&self, e: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if e < 0 {
            return out;
        }
        let mut current = vec![0u32; self.len()];
        self.enumerate(0, e, &mut current, &mut out);
        out
    }

    fn enumerate(&self, var: usize, remaining: i64, current: &mut [u32], out: &mut Vec<Monomial>) {
        if var == self.len() {
            if remaining == 0 {
                out.push(Monomial(current.to_vec()));
            }
            return;
        }
        let w = i64::from(self.weights[var]);
        let max = remaining / w;
        for exp in (0..=max).rev() {
            current[var] = exp as u32;
            self.enumerate(var + 1, remaining - exp * w, current, out);
        }
        current[var] = 0;
    }

    /// Canonical term order: higher weighted degree first, then lexicographically larger first.
    pub fn canonical_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.monomial_degree(b)
            .cmp(&self.monomial_degree(a))
            .then_with(|| b.cmp(a))
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let factors: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

/// Dense exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn supported_in(&self, keep: &[bool]) -> bool {
        self.0.iter().zip(keep).all(|(&e, &k)| k || e == 0)
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Integer-coefficient shorthand, mostly for tests.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (Monomial(e.to_vec()), BigRational::from_integer(BigInt::from(*c)))),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.0.len(), self.nvars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// The common weighted degree of all terms.
    pub fn weighted_degree(&self, vars: &VarSystem) -> Result<i64> {
        self.check_vars(vars)?;
        let mut iter = self.terms.keys();
        let first = iter.next().ok_or(Error::ZeroPolynomial)?;
        let first_degree = vars.monomial_degree(first);
        for m in iter {
            let deg = vars.monomial_degree(m);
            if deg != first_degree {
                return Err(Error::NotQuasiHomogeneous {
                    first: vars.render_monomial(first),
                    first_degree,
                    second: vars.render_monomial(m),
                    second_degree: deg,
                });
            }
        }
        Ok(first_degree)
    }

    fn check_vars(&self, vars: &VarSystem) -> Result<()> {
        if vars.len() != self.nvars {
            return Err(Error::InvalidVarSystem(format!(
                "polynomial has {} variables, system has {}",
                self.nvars,
                vars.len()
            )));
        }
        Ok(())
    }

    /// Drops every monomial involving a variable outside `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mask = self.mask(keep);
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.supported_in(&mask))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Restricts to `keep` and re-expresses the result in the subsystem on `keep`.
    pub fn project(&self, keep: &[usize]) -> Self {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mask = self.mask(&keep);
        Self {
            nvars: keep.len(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.supported_in(&mask))
                .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()))
                .collect(),
        }
    }

    fn mask(&self, keep: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.nvars];
        for &i in keep {
            mask[i] = true;
        }
        mask
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Canonical text form; parses back to the same polynomial.
    pub fn render(&self, vars: &VarSystem) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| vars.canonical_cmp(a.0, b.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if i > 0 {
                out.push_str(if negative { " - " } else { " + " });
            }
            let magnitude = if i > 0 { c.abs() } else { c.clone() };
            if m.is_one() {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&vars.render_monomial(m));
            } else {
                out.push_str(&format!("{}*{}", magnitude, vars.render_monomial(m)));
            }
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Exact product.
pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p * q
}

pub fn weighted_degree(p: &Polynomial, vars: &VarSystem) -> Result<i64> {
    p.weighted_degree(vars)
}

pub fn restrict(p: &Polynomial, keep: &[usize]) -> Polynomial {
    p.restrict(keep)
}
