//! Hochschild–Serre multiplication and the map `γ: HH² → Hom(HH₋₁, HH₁)`.
//!
//! For `a = (f_{γ^j})_j` and `b = (g_{γ^l})_l` the sector-`γ^k` component of
//! `a·b` is `Σ_j f_{γ^j} ∘ ((γ^j,1)·g_{γ^{k−j}})`. Only some of these terms
//! are computable from the sector data alone, and each term is resolved by
//! the first rule that applies:
//!
//! * [`Rule::Untwisted`]: `j = k = 0`, the product of functions in `Jac(ω)`.
//! * [`Rule::VanishingTarget`]: the target summand is zero-dimensional or absent.
//! * [`Rule::ZeroFactor`]: one of the two factors is zero.
//! * [`Rule::RestrictionAction`] (opt-in): `j = 0`, the untwisted factor is
//!   restricted to the fixed locus of `γ^k` and multiplied in `Jac(ω_{γ^k})`.
//!
//! Anything else is reported as [`Error::IndeterminateComposition`].

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::{HSElement, HochschildKind, HomSpace, OrbifoldModel};
use crate::error::{Error, Result, UnresolvedTerm};
use crate::linalg::{self, ExactMatrix, RankMethod};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MultiplyOptions {
    /// Resolve `f_1 ∘ g_{γ^k}` by restricting `f_1` to the fixed locus of `γ^k`.
    /// This goes beyond what the sector data determine and is off by default.
    pub assume_restriction_action: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Untwisted,
    VanishingTarget,
    ZeroFactor,
    RestrictionAction,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::Untwisted => "R1-untwisted-product",
            Rule::VanishingTarget => "R2-vanishing-target",
            Rule::ZeroFactor => "R3-zero-factor",
            Rule::RestrictionAction => "X-restriction-action",
        }
    }
}

/// How a product term with two nonzero factors was evaluated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermRecord {
    pub left_sector: u32,
    pub right_sector: u32,
    pub target_sector: u32,
    pub target_degree: Option<i64>,
    pub target_dim: usize,
    pub rule: Rule,
}

fn is_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

impl OrbifoldModel {
    /// `a·b`, an element of `Hom(Δ, Δ(m₁+m₂)[t₁+t₂])`.
    pub fn multiply(&self, a: &HSElement, b: &HSElement, opts: MultiplyOptions) -> Result<HSElement> {
        self.multiply_traced(a, b, opts).map(|(e, _)| e)
    }

    /// `a·b` together with a record of every term whose factors were both nonzero.
    pub fn multiply_traced(
        &self,
        a: &HSElement,
        b: &HSElement,
        opts: MultiplyOptions,
    ) -> Result<(HSElement, Vec<TermRecord>)> {
        let target = self.hom_space(a.space.m + b.space.m, a.space.t + b.space.t);
        self.multiply_into(a, b, &target, opts)
    }

    fn multiply_into(
        &self,
        a: &HSElement,
        b: &HSElement,
        target: &HomSpace,
        opts: MultiplyOptions,
    ) -> Result<(HSElement, Vec<TermRecord>)> {
        let d = self.d();
        for e in [a, b] {
            if let Some(s) = e.space.summands.iter().find(|s| s.sector >= d) {
                return Err(Error::InvalidElement(format!(
                    "sector {} does not exist for d = {d}",
                    s.sector
                )));
            }
        }
        let mut out = HSElement::zero(target);
        let mut records = Vec::new();
        let mut unresolved = Vec::new();
        for k in 0..d {
            let slot = target.summand_for(k);
            let target_dim = slot.map_or(0, |(_, s)| s.dim());
            let target_degree = slot.map(|(_, s)| s.degree);
            for j in 0..d {
                let l = (k + d - j) % d;
                let f = a.component(j).filter(|f| !is_zero(f));
                let g = b.component(l).filter(|g| !is_zero(g));
                let record = |rule| TermRecord {
                    left_sector: j,
                    right_sector: l,
                    target_sector: k,
                    target_degree,
                    target_dim,
                    rule,
                };
                if j == 0 && k == 0 {
                    if let (Some(f), Some(g), Some((pos, slot))) = (f, g, slot) {
                        let (fa, gb) = (
                            a.space.summand_for(0).expect("sector 0").1,
                            b.space.summand_for(0).expect("sector 0").1,
                        );
                        debug_assert_eq!(fa.degree + gb.degree, slot.degree);
                        let prod = self.jacobian().multiply(fa.degree, f, gb.degree, g);
                        add_into(&mut out.coords[pos], &prod);
                        records.push(record(Rule::Untwisted));
                    }
                    continue;
                }
                let both = f.is_some() && g.is_some();
                if target_dim == 0 {
                    if both {
                        records.push(record(Rule::VanishingTarget));
                    }
                    continue;
                }
                let (Some(f), Some(g)) = (f, g) else {
                    continue;
                };
                if opts.assume_restriction_action && j == 0 {
                    let (pos, slot) = slot.expect("nonzero target");
                    let sector = self.sector(k);
                    let f_poly = a.space.summand_for(0).expect("sector 0").1.piece.lift(f);
                    let g_poly = b.space.summand_for(k).expect("sector k").1.piece.lift(g);
                    let prod = &f_poly.project(sector.fixed()) * &g_poly;
                    let coords = sector.jacobian().normal_form_in_degree(&prod, slot.degree)?;
                    add_into(&mut out.coords[pos], &coords);
                    records.push(record(Rule::RestrictionAction));
                    continue;
                }
                unresolved.push(UnresolvedTerm {
                    left_sector: j,
                    right_sector: l,
                    target_sector: k,
                    target_degree: target_degree.expect("nonzero target"),
                    target_dim,
                });
            }
        }
        if !unresolved.is_empty() {
            return Err(Error::IndeterminateComposition { terms: unresolved });
        }
        Ok((out, records))
    }

    /// Assembles `γ` column by column from products of basis elements.
    pub fn gamma(&self, opts: MultiplyOptions, method: RankMethod) -> Result<GammaReport> {
        let hh2 = self.hochschild(HochschildKind::Cohomology, 2);
        let hh_m1 = self.hochschild(HochschildKind::Homology, -1);
        let hh1 = self.hochschild(HochschildKind::Homology, 1);
        let target = self.hom_space(hh2.m + hh_m1.m, hh2.t + hh_m1.t);
        debug_assert_eq!((target.m, target.t), (hh1.m, hh1.t));
        let (n2, nm1, n1) = (hh2.total_dim(), hh_m1.total_dim(), hh1.total_dim());
        let mut matrix = ExactMatrix::zeros(nm1 * n1, n2);
        let mut audit: BTreeMap<TermRecord, usize> = BTreeMap::new();
        for col in 0..n2 {
            let a = HSElement::basis_vector(&hh2, col)?;
            for p in 0..nm1 {
                let b = HSElement::basis_vector(&hh_m1, p)?;
                let (prod, records) = self.multiply_into(&a, &b, &target, opts)?;
                for (q, v) in prod.flatten().into_iter().enumerate() {
                    if !v.is_zero() {
                        matrix.set(p * n1 + q, col, v);
                    }
                }
                for r in records {
                    *audit.entry(r).or_default() += 1;
                }
            }
        }
        let rank = linalg::rank_with(&matrix, method);
        let kernel_basis = linalg::nullspace_basis(&matrix)
            .iter()
            .map(|v| HSElement::from_flat(&hh2, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(GammaReport {
            kernel_dim: n2 - rank,
            hh2,
            hh_minus1: hh_m1,
            hh1,
            matrix,
            rank,
            kernel_basis,
            resolved_terms: audit.into_iter().collect(),
        })
    }
}

fn add_into(acc: &mut [BigRational], v: &[BigRational]) {
    for (x, y) in acc.iter_mut().zip(v) {
        *x += y;
    }
}

/// The matrix of `γ` and its kernel.
///
/// Rows are indexed by `(HH₋₁ basis index, HH₁ basis index)` in lexicographic
/// order, columns by the `HH²` basis in summand-then-basis order.
#[derive(Debug, Clone)]
pub struct GammaReport {
    pub hh2: HomSpace,
    pub hh_minus1: HomSpace,
    pub hh1: HomSpace,
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<HSElement>,
    /// Distinct resolved terms with nonzero factors, and how often each occurred.
    pub resolved_terms: Vec<(TermRecord, usize)>,
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cubic, qds};
    use super::*;
    use crate::wpoly::{parse_poly, VarSystem};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn twisted_times_untwisted_vanishes() {
        let m = qds();
        let hh2 = m.hochschild(HochschildKind::Cohomology, 2);
        let hh_m1 = m.hochschild(HochschildKind::Homology, -1);
        let a = HSElement::sector_unit(&hh2, 2).unwrap();
        let b = HSElement::basis_vector(&hh_m1, 3).unwrap();
        let (prod, records) = m.multiply_traced(&a, &b, MultiplyOptions::default()).unwrap();
        assert!(prod.is_zero());
        assert_eq!((prod.space().m, prod.space().t), (-6, 6));
        assert_eq!(
            records,
            [TermRecord {
                left_sector: 2,
                right_sector: 0,
                target_sector: 2,
                target_degree: Some(2),
                target_dim: 0,
                rule: Rule::VanishingTarget,
            }]
        );
    }

    #[test]
    fn untwisted_product_is_function_multiplication() {
        let m = qds();
        let hh2 = m.hochschild(HochschildKind::Cohomology, 2);
        let hh_m1 = m.hochschild(HochschildKind::Homology, -1);
        let v = m.vars();
        let jac = m.jacobian();
        let f = parse_poly("x1^2*x2^2 + 3*x3*x4^3 - x1*x2*x3*x4", v).unwrap();
        let g = parse_poly("x1*x2 - 1/2*x4^2", v).unwrap();
        let a = HSElement::from_coords(
            &hh2,
            vec![jac.normal_form_in_degree(&f, 4).unwrap(), vec![q(0)]],
        )
        .unwrap();
        let b = HSElement::from_coords(
            &hh_m1,
            vec![jac.normal_form_in_degree(&g, 2).unwrap(), vec![]],
        )
        .unwrap();
        let prod = m.multiply(&a, &b, MultiplyOptions::default()).unwrap();
        let expected = jac.normal_form_in_degree(&(&f * &g), 6).unwrap();
        assert_eq!(prod.component(0).unwrap(), expected.as_slice());
        assert!(!prod.is_zero());
    }

    #[test]
    fn zero_factor() {
        let m = qds();
        let hh2 = m.hochschild(HochschildKind::Cohomology, 2);
        let a = HSElement::basis_vector(&hh2, 5).unwrap();
        let b = HSElement::zero(&hh2);
        let prod = m.multiply(&a, &b, MultiplyOptions::default()).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn twisted_pair_with_nonzero_target_is_indeterminate() {
        let m = qds();
        let hh2 = m.hochschild(HochschildKind::Cohomology, 2);
        let u = HSElement::sector_unit(&hh2, 2).unwrap();
        let err = m.multiply(&u, &u, MultiplyOptions::default()).unwrap_err();
        assert_eq!(
            err,
            Error::IndeterminateComposition {
                terms: vec![UnresolvedTerm {
                    left_sector: 2,
                    right_sector: 2,
                    target_sector: 0,
                    target_degree: 8,
                    target_dim: 1,
                }]
            }
        );
        // the extension flag only covers untwisted left factors
        let opts = MultiplyOptions {
            assume_restriction_action: true,
        };
        assert!(m.multiply(&u, &u, opts).is_err());
    }

    #[test]
    fn restriction_action_extension() {
        let m = qds();
        let hh0 = m.hochschild(HochschildKind::Cohomology, 0);
        let hh2 = m.hochschild(HochschildKind::Cohomology, 2);
        let one = HSElement::basis_vector(&hh0, 0).unwrap();
        let u = HSElement::sector_unit(&hh2, 2).unwrap();
        assert!(m.multiply(&one, &u, MultiplyOptions::default()).is_err());
        let opts = MultiplyOptions {
            assume_restriction_action: true,
        };
        let (prod, records) = m.multiply_traced(&one, &u, opts).unwrap();
        assert_eq!(prod, u);
        assert_eq!(records[0].rule, Rule::RestrictionAction);
    }

    #[test]
    fn gamma_quartic_double_solid() {
        let m = qds();
        let report = m.gamma(MultiplyOptions::default(), RankMethod::Exact).unwrap();
        assert_eq!((report.matrix.rows(), report.matrix.cols()), (100, 20));
        assert_eq!(report.rank, 19);
        assert_eq!(report.kernel_dim, 1);
        let hh2 = &report.hh2;
        assert_eq!(report.kernel_basis[0], HSElement::sector_unit(hh2, 2).unwrap());
        let rules: Vec<Rule> = report.resolved_terms.iter().map(|(r, _)| r.rule).collect();
        assert_eq!(rules, [Rule::Untwisted, Rule::VanishingTarget]);
    }

    #[test]
    fn gamma_cubic_threefold() {
        let report = cubic().gamma(MultiplyOptions::default(), RankMethod::Exact).unwrap();
        assert_eq!(
            (
                report.hh2.total_dim(),
                report.hh_minus1.total_dim(),
                report.hh1.total_dim()
            ),
            (10, 5, 5)
        );
        assert_eq!(report.rank, 10);
        assert_eq!(report.kernel_dim, 0);
        assert!(report.kernel_basis.is_empty());
    }

    #[test]
    fn gamma_with_modular_rank() {
        let report = qds().gamma(MultiplyOptions::default(), RankMethod::Modular(1_000_000_007)).unwrap();
        assert_eq!(report.kernel_dim, 1);
    }

    #[test]
    fn gamma_rejects_singular_input() {
        let vars = VarSystem::new(["x1", "x2", "x3", "x4", "x5"], vec![1, 1, 1, 1, 2], 4).unwrap();
        let omega = parse_poly("x1^4 + x2^4 + x5^2", &vars).unwrap();
        assert!(matches!(
            OrbifoldModel::new(vars, omega),
            Err(Error::NonIsolatedSingularity { .. })
        ));
    }
}
