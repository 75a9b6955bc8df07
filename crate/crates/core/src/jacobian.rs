//! Graded Jacobian rings `k[x]/(∂ω/∂x_0, …, ∂ω/∂x_n)`.
//!
//! Each graded piece is computed on its own: list the monomials of the
//! degree, list the products `m·∂ω/∂x_i` of that degree, and row-reduce.
//! The non-pivot monomials form the basis of the piece, and the reduced rows
//! express every pivot monomial in that basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, ExactMatrix, IntRow, RankMethod};
use crate::wpoly::{Monomial, Polynomial, VarSystem};

#[derive(Debug, Clone)]
enum Image {
    Basis(usize),
    Combination(Vec<(usize, BigRational)>),
}

/// One weighted degree of a Jacobian ring.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: i64,
    nvars: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    basis: Vec<Monomial>,
    images: Vec<Image>,
    /// Set when the piece is known to vanish and its monomials were never listed.
    vanishing_weights: Option<Vec<u32>>,
}

impl GradedPiece {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis monomials in canonical order.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Every monomial of this degree, in canonical order.
    /// Empty for degrees above the certified window, which are zero without being enumerated.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Adds `c` times the class of `m` to `coords`; `None` if `m` has a different degree.
    fn accumulate(&self, m: &Monomial, c: &BigRational, coords: &mut [BigRational]) -> Option<()> {
        if let Some(w) = &self.vanishing_weights {
            let deg: i64 = m.0.iter().zip(w).map(|(&e, &a)| i64::from(e) * i64::from(a)).sum();
            return (m.0.len() == w.len() && deg == self.degree).then_some(());
        }
        match &self.images[*self.index.get(m)?] {
            Image::Basis(k) => coords[*k] += c,
            Image::Combination(terms) => {
                for (k, v) in terms {
                    coords[*k] += c * v;
                }
            }
        }
        Some(())
    }

    pub fn reduce_monomial(&self, m: &Monomial) -> Option<Vec<BigRational>> {
        let mut coords = vec![BigRational::zero(); self.dim()];
        self.accumulate(m, &BigRational::one(), &mut coords)?;
        Some(coords)
    }

    /// Representative polynomial `Σ coords_k · basis_k`.
    pub fn lift(&self, coords: &[BigRational]) -> Polynomial {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        Polynomial::from_terms(
            self.nvars,
            self.basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }
}

/// The Jacobian ring of a quasi-homogeneous polynomial, with lazily computed graded pieces.
#[derive(Debug)]
pub struct JacobianRing {
    vars: VarSystem,
    omega: Polynomial,
    partials: Vec<Polynomial>,
    socle_degree: i64,
    pieces: Mutex<BTreeMap<i64, Arc<GradedPiece>>>,
    window_vanishes: OnceLock<bool>,
}

impl JacobianRing {
    /// `omega` must be quasi-homogeneous of degree `vars.degree()`, or zero.
    pub fn new(omega: Polynomial, vars: VarSystem) -> Result<Self> {
        if omega.nvars() != vars.len() {
            return Err(Error::InvalidVarSystem(format!(
                "polynomial has {} variables, system has {}",
                omega.nvars(),
                vars.len()
            )));
        }
        if !omega.is_zero() {
            let found = omega.weighted_degree(&vars)?;
            let expected = i64::from(vars.degree());
            if found != expected {
                return Err(Error::DegreeMismatch { expected, found });
            }
        }
        let partials = (0..vars.len()).map(|i| omega.partial(i)).collect();
        let d = i64::from(vars.degree());
        let socle_degree = vars.weights().iter().map(|&a| d - 2 * i64::from(a)).sum();
        Ok(Self {
            vars,
            omega,
            partials,
            socle_degree,
            pieces: Mutex::new(BTreeMap::new()),
            window_vanishes: OnceLock::new(),
        })
    }

    pub fn vars(&self) -> &VarSystem {
        &self.vars
    }

    pub fn omega(&self) -> &Polynomial {
        &self.omega
    }

    pub fn partials(&self) -> &[Polynomial] {
        &self.partials
    }

    /// `Σ (d − 2a_i)`: the top degree when the singularity is isolated.
    pub fn socle_degree(&self) -> i64 {
        self.socle_degree
    }

    pub fn graded_piece(&self, e: i64) -> Arc<GradedPiece> {
        if let Some(p) = self.pieces.lock().expect("piece cache").get(&e) {
            return Arc::clone(p);
        }
        let piece = Arc::new(if e > self.window_end() && self.window_vanishes() {
            GradedPiece {
                degree: e,
                nvars: self.vars.len(),
                monomials: Vec::new(),
                index: HashMap::new(),
                basis: Vec::new(),
                images: Vec::new(),
                vanishing_weights: Some(self.vars.weights().to_vec()),
            }
        } else {
            self.compute_piece(e)
        });
        // A racing writer computed the same piece; keep whichever landed first.
        Arc::clone(
            self.pieces
                .lock()
                .expect("piece cache")
                .entry(e)
                .or_insert(piece),
        )
    }

    fn window_end(&self) -> i64 {
        self.socle_degree + i64::from(self.vars.max_weight().unwrap_or(0))
    }

    /// Every monomial past the window is `x_i` times one inside it, so zero there means zero above.
    fn window_vanishes(&self) -> bool {
        *self.window_vanishes.get_or_init(|| {
            ((self.socle_degree + 1)..=self.window_end()).all(|e| self.graded_piece(e).dim() == 0)
        })
    }

    fn compute_piece(&self, e: i64) -> GradedPiece {
        let monomials = self.vars.monomials_of_degree(e);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let d = i64::from(self.vars.degree());
        let mut generators = Vec::new();
        for (partial, &a) in self.partials.iter().zip(self.vars.weights()) {
            if partial.is_zero() {
                continue;
            }
            for m in self.vars.monomials_of_degree(e - (d - i64::from(a))) {
                generators.push(IntRow::from_rational(
                    partial
                        .terms()
                        .map(|(t, c)| (index[&t.mul(&m)], c.clone())),
                ));
            }
        }
        let (rows, pivots) = linalg::reduced_rows(generators, monomials.len());
        let mut is_pivot = vec![false; monomials.len()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut coord = vec![usize::MAX; monomials.len()];
        let mut basis = Vec::new();
        for (col, m) in monomials.iter().enumerate() {
            if !is_pivot[col] {
                coord[col] = basis.len();
                basis.push(m.clone());
            }
        }
        let mut images: Vec<Image> = (0..monomials.len())
            .map(|col| Image::Basis(coord[col]))
            .collect();
        for (row, &p) in rows.iter().zip(&pivots) {
            // m_p ≡ −Σ_free row[f]·m_f
            let terms = row
                .iter()
                .filter(|(c, _)| !is_pivot[*c])
                .map(|(c, v)| (coord[*c], -v.clone()))
                .collect();
            images[p] = Image::Combination(terms);
        }
        GradedPiece {
            degree: e,
            nvars: self.vars.len(),
            monomials,
            index,
            basis,
            images,
            vanishing_weights: None,
        }
    }

    /// Dimensions of the pieces in degrees `0..=σ`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        (0..=self.socle_degree.max(-1))
            .map(|e| self.graded_piece(e).dim())
            .collect()
    }

    /// Total dimension, certified finite by the vanishing of every degree in `(σ, σ + max a_i]`.
    pub fn milnor_number(&self) -> Result<usize> {
        if let Some(max_a) = self.vars.max_weight() {
            let sigma = self.socle_degree;
            for e in (sigma + 1)..=(sigma + i64::from(max_a)) {
                let dim = self.graded_piece(e).dim();
                if dim != 0 {
                    return Err(Error::NonIsolatedSingularity {
                        sector: None,
                        degree: e,
                        dim,
                        socle: sigma,
                    });
                }
            }
        }
        Ok(self.hilbert_function().iter().sum())
    }

    /// Coordinates of a homogeneous polynomial of degree `e`; the zero polynomial is allowed.
    pub fn normal_form_in_degree(&self, p: &Polynomial, e: i64) -> Result<Vec<BigRational>> {
        let piece = self.graded_piece(e);
        let mut coords = vec![BigRational::zero(); piece.dim()];
        for (m, c) in p.terms() {
            if piece.accumulate(m, c, &mut coords).is_none() {
                return Err(Error::DegreeMismatch {
                    expected: e,
                    found: self.vars.monomial_degree(m),
                });
            }
        }
        Ok(coords)
    }

    /// Degree and coordinates of the class of a nonzero quasi-homogeneous polynomial.
    pub fn normal_form(&self, p: &Polynomial) -> Result<(i64, Vec<BigRational>)> {
        let e = p.weighted_degree(&self.vars)?;
        Ok((e, self.normal_form_in_degree(p, e)?))
    }

    /// Product of two classes given in basis coordinates of degrees `e1` and `e2`.
    pub fn multiply(
        &self,
        e1: i64,
        a: &[BigRational],
        e2: i64,
        b: &[BigRational],
    ) -> Vec<BigRational> {
        let (p1, p2) = (self.graded_piece(e1), self.graded_piece(e2));
        let target = self.graded_piece(e1 + e2);
        let mut out = vec![BigRational::zero(); target.dim()];
        for (m1, c1) in p1.basis().iter().zip(a).filter(|(_, c)| !c.is_zero()) {
            for (m2, c2) in p2.basis().iter().zip(b).filter(|(_, c)| !c.is_zero()) {
                target
                    .accumulate(&m1.mul(m2), &(c1 * c2), &mut out)
                    .expect("product degree is e1 + e2");
            }
        }
        out
    }

    /// The bilinear map `Jac_e1 × Jac_e2 → Jac_{e1+e2}` as a linear map
    /// `Jac_e1 → Hom(Jac_e2, Jac_{e1+e2})`. Rows are `(i, j)` pairs (basis `i`
    /// of `e2`, basis `j` of `e1+e2`) in lexicographic order; columns are the
    /// basis of `e1`.
    pub fn pairing_matrix(&self, e1: i64, e2: i64) -> ExactMatrix {
        let (p1, p2) = (self.graded_piece(e1), self.graded_piece(e2));
        let target = self.graded_piece(e1 + e2);
        let (n1, n2, nt) = (p1.dim(), p2.dim(), target.dim());
        let mut m = ExactMatrix::zeros(n2 * nt, n1);
        for (col, m1) in p1.basis().iter().enumerate() {
            for (i, m2) in p2.basis().iter().enumerate() {
                let image = target.reduce_monomial(&m1.mul(m2)).expect("degree e1 + e2");
                for (j, v) in image.into_iter().enumerate() {
                    if !v.is_zero() {
                        m.set(i * nt + j, col, v);
                    }
                }
            }
        }
        m
    }

    pub fn pairing_rank(&self, e1: i64, e2: i64) -> (ExactMatrix, usize) {
        self.pairing_rank_with(e1, e2, RankMethod::Exact)
    }

    pub fn pairing_rank_with(&self, e1: i64, e2: i64, method: RankMethod) -> (ExactMatrix, usize) {
        let m = self.pairing_matrix(e1, e2);
        let r = linalg::rank_with(&m, method);
        (m, r)
    }
}

pub fn build_jacobian(omega: Polynomial, vars: VarSystem) -> Result<JacobianRing> {
    JacobianRing::new(omega, vars)
}

/// Coefficients of `Π (1 − t^{d−a_i}) / (1 − t^{a_i})`, the Hilbert series of
/// the Jacobian ring when the partials form a regular sequence.
pub fn hilbert_oracle(vars: &VarSystem) -> Result<Vec<i64>> {
    let d = i64::from(vars.degree());
    let mut numerator: Vec<i128> = vec![1];
    let mut denominator: Vec<i128> = vec![1];
    let times_one_minus = |poly: &[i128], k: usize| {
        let mut out = vec![0i128; poly.len() + k];
        for (i, &c) in poly.iter().enumerate() {
            out[i] += c;
            out[i + k] -= c;
        }
        out
    };
    for (name, &a) in vars.names().iter().zip(vars.weights()) {
        let a = i64::from(a);
        if d <= a {
            return Err(Error::NonPolynomialSeries(format!(
                "weight {a} of `{name}` is not below the degree {d}"
            )));
        }
        numerator = times_one_minus(&numerator, (d - a) as usize);
        denominator = times_one_minus(&denominator, a as usize);
    }
    let sigma = numerator.len() as i64 - denominator.len() as i64;
    if sigma < 0 {
        return Err(Error::NonPolynomialSeries(format!(
            "negative socle degree {sigma}"
        )));
    }
    // Power-series division; the denominator has constant term 1.
    let mut remainder = numerator;
    let mut quotient = vec![0i128; sigma as usize + 1];
    for k in 0..quotient.len() {
        let c = remainder[k];
        quotient[k] = c;
        if c != 0 {
            for (j, &dj) in denominator.iter().enumerate() {
                remainder[k + j] -= c * dj;
            }
        }
    }
    if remainder.iter().any(|&c| c != 0) {
        return Err(Error::NonPolynomialSeries(
            "the product does not truncate to a polynomial".into(),
        ));
    }
    Ok(quotient.into_iter().map(|c| c as i64).collect())
}
