//! Orbifold model of `Hom(Δ, Δ(m)[t])` for a graded matrix factorization
//! category `(A^{n+1}, C*, O(d), ω)`.
//!
//! The morphism spaces split over the sectors `g = γ^j ∈ μ_d`. The sector
//! `g` contributes a graded piece of the Jacobian ring of `ω` restricted to
//! the fixed locus of `g`, in degree `m − k_g + d(t − rk W_g)/2`, but only
//! when `t − rk W_g` is even.

mod product;

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jacobian::{GradedPiece, JacobianRing};
use crate::wpoly::{Polynomial, VarSystem};

pub use product::{GammaReport, MultiplyOptions, Rule, TermRecord};

/// Serre functor `− ⊗ O(twist)[shift]` of the category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SerreData {
    pub twist: i64,
    pub shift: i64,
}

impl SerreData {
    pub fn of(vars: &VarSystem) -> Self {
        Self {
            twist: -vars.weight_sum(),
            shift: vars.len() as i64,
        }
    }
}

/// The sector `γ^j` of `μ_d`.
#[derive(Debug, Clone)]
pub struct SectorData {
    j: u32,
    fixed: Vec<usize>,
    rank_w: usize,
    k_g: i64,
    omega_g: Polynomial,
    jac: Arc<JacobianRing>,
}

impl SectorData {
    fn new(vars: &VarSystem, omega: &Polynomial, j: u32) -> Result<Self> {
        let d = vars.degree();
        let fixed: Vec<usize> = (0..vars.len())
            .filter(|&i| (u64::from(j) * u64::from(vars.weights()[i])) % u64::from(d) == 0)
            .collect();
        let k_g = -(0..vars.len())
            .filter(|i| !fixed.contains(i))
            .map(|i| i64::from(vars.weights()[i]))
            .sum::<i64>();
        let omega_g = omega.restrict(&fixed);
        let jac = JacobianRing::new(omega_g.project(&fixed), vars.subsystem(&fixed))?;
        Ok(Self {
            j,
            rank_w: vars.len() - fixed.len(),
            fixed,
            k_g,
            omega_g,
            jac: Arc::new(jac),
        })
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// Indices of the coordinates fixed by `γ^j`.
    pub fn fixed(&self) -> &[usize] {
        &self.fixed
    }

    /// Number of coordinates moved by `γ^j`.
    pub fn rank_w(&self) -> usize {
        self.rank_w
    }

    /// Minus the total weight of the moved coordinates.
    pub fn k_g(&self) -> i64 {
        self.k_g
    }

    /// `ω` restricted to the fixed locus, in the ambient variables.
    pub fn omega_g(&self) -> &Polynomial {
        &self.omega_g
    }

    /// Jacobian ring of `ω_g` over the fixed coordinates only.
    pub fn jacobian(&self) -> &Arc<JacobianRing> {
        &self.jac
    }

    /// Degree of the Jacobian piece this sector contributes to `Hom(Δ, Δ(m)[t])`,
    /// or `None` when `t − rk W_g` is odd.
    pub fn degree_index(&self, d: u32, m: i64, t: i64) -> Option<i64> {
        let excess = t - self.rank_w as i64;
        if excess.rem_euclid(2) != 0 {
            return None;
        }
        Some(m - self.k_g + i64::from(d) * excess / 2)
    }
}

/// Builds the `d` sectors of `μ_d`, certifying that every `ω_g` has an isolated singularity.
pub fn sectors(vars: &VarSystem, omega: &Polynomial) -> Result<Vec<SectorData>> {
    (0..vars.degree())
        .map(|j| {
            let s = SectorData::new(vars, omega, j)?;
            s.jac.milnor_number().map_err(|e| match e {
                Error::NonIsolatedSingularity {
                    degree, dim, socle, ..
                } => Error::NonIsolatedSingularity {
                    sector: (j != 0).then_some(j),
                    degree,
                    dim,
                    socle,
                },
                other => other,
            })?;
            Ok(s)
        })
        .collect()
}

/// One sector's contribution to a Hom space. Zero-dimensional summands are kept.
#[derive(Debug, Clone)]
pub struct Summand {
    pub sector: u32,
    pub degree: i64,
    pub piece: Arc<GradedPiece>,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.piece.dim()
    }
}

/// `Hom(Δ, Δ(m)[t])` as a direct sum over the parity-admissible sectors.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub m: i64,
    pub t: i64,
    summands: Vec<Summand>,
}

impl HomSpace {
    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(Summand::dim).sum()
    }

    /// Position and summand for sector `j`, if it satisfies the parity condition.
    pub fn summand_for(&self, sector: u32) -> Option<(usize, &Summand)> {
        self.summands
            .iter()
            .enumerate()
            .find(|(_, s)| s.sector == sector)
    }

    /// Maps a flat basis index (summand-then-basis order) to `(summand position, index)`.
    pub fn locate(&self, mut flat: usize) -> Option<(usize, usize)> {
        for (pos, s) in self.summands.iter().enumerate() {
            if flat < s.dim() {
                return Some((pos, flat));
            }
            flat -= s.dim();
        }
        None
    }
}

/// Which Hochschild space to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HochschildKind {
    Cohomology,
    Homology,
}

/// An element of a [`HomSpace`], stored as one coordinate vector per summand.
#[derive(Debug, Clone)]
pub struct HSElement {
    space: HomSpace,
    coords: Vec<Vec<BigRational>>,
}

impl HSElement {
    pub fn zero(space: &HomSpace) -> Self {
        Self {
            coords: space
                .summands
                .iter()
                .map(|s| vec![BigRational::zero(); s.dim()])
                .collect(),
            space: space.clone(),
        }
    }

    pub fn from_coords(space: &HomSpace, coords: Vec<Vec<BigRational>>) -> Result<Self> {
        if coords.len() != space.summands.len() {
            return Err(Error::InvalidElement(format!(
                "{} coordinate vectors for {} summands",
                coords.len(),
                space.summands.len()
            )));
        }
        for (c, s) in coords.iter().zip(&space.summands) {
            if c.len() != s.dim() {
                return Err(Error::InvalidElement(format!(
                    "sector {} has dimension {}, got {} coordinates",
                    s.sector,
                    s.dim(),
                    c.len()
                )));
            }
        }
        Ok(Self {
            space: space.clone(),
            coords,
        })
    }

    pub fn from_flat(space: &HomSpace, flat: &[BigRational]) -> Result<Self> {
        if flat.len() != space.total_dim() {
            return Err(Error::InvalidElement(format!(
                "{} coordinates for a space of dimension {}",
                flat.len(),
                space.total_dim()
            )));
        }
        let mut rest = flat;
        let coords = space
            .summands
            .iter()
            .map(|s| {
                let (head, tail) = rest.split_at(s.dim());
                rest = tail;
                head.to_vec()
            })
            .collect();
        Ok(Self {
            space: space.clone(),
            coords,
        })
    }

    /// The `flat`-th basis vector in summand-then-basis order.
    pub fn basis_vector(space: &HomSpace, flat: usize) -> Result<Self> {
        let (pos, idx) = space.locate(flat).ok_or_else(|| {
            Error::InvalidElement(format!(
                "basis index {flat} out of range for dimension {}",
                space.total_dim()
            ))
        })?;
        let mut e = Self::zero(space);
        e.coords[pos][idx] = BigRational::from_integer(1.into());
        Ok(e)
    }

    /// Unit of the sector-`j` summand in degree 0, when that summand is `k`.
    pub fn sector_unit(space: &HomSpace, sector: u32) -> Result<Self> {
        let (pos, s) = space.summand_for(sector).ok_or_else(|| {
            Error::InvalidElement(format!("sector {sector} is not a summand"))
        })?;
        if s.degree != 0 || s.dim() != 1 {
            return Err(Error::InvalidElement(format!(
                "sector {sector} summand is not one-dimensional in degree 0"
            )));
        }
        let mut e = Self::zero(space);
        e.coords[pos][0] = BigRational::from_integer(1.into());
        Ok(e)
    }

    pub fn space(&self) -> &HomSpace {
        &self.space
    }

    pub fn coords(&self) -> &[Vec<BigRational>] {
        &self.coords
    }

    /// Coordinates of the sector-`j` component, `None` if the sector is absent.
    pub fn component(&self, sector: u32) -> Option<&[BigRational]> {
        self.space
            .summand_for(sector)
            .map(|(pos, _)| self.coords[pos].as_slice())
    }

    pub fn flatten(&self) -> Vec<BigRational> {
        self.coords.iter().flatten().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(Zero::is_zero)
    }

    pub fn add(&self, other: &HSElement) -> Result<HSElement> {
        self.check_same_space(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self {
            space: self.space.clone(),
            coords,
        })
    }

    pub fn scale(&self, c: &BigRational) -> HSElement {
        Self {
            space: self.space.clone(),
            coords: self
                .coords
                .iter()
                .map(|v| v.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    fn check_same_space(&self, other: &HSElement) -> Result<()> {
        if (self.space.m, self.space.t) != (other.space.m, other.space.t) {
            return Err(Error::InvalidElement(format!(
                "elements of Hom(Δ, Δ({})[{}]) and Hom(Δ, Δ({})[{}])",
                self.space.m, self.space.t, other.space.m, other.space.t
            )));
        }
        Ok(())
    }
}

impl PartialEq for HSElement {
    fn eq(&self, other: &Self) -> bool {
        (self.space.m, self.space.t) == (other.space.m, other.space.t)
            && self.coords == other.coords
    }
}

/// A smooth weighted hypersurface `{ω = 0}` together with its sector decomposition.
#[derive(Debug, Clone)]
pub struct OrbifoldModel {
    vars: VarSystem,
    omega: Polynomial,
    sectors: Vec<SectorData>,
    serre: SerreData,
    warnings: Vec<String>,
}

impl OrbifoldModel {
    /// Validates `ω` (quasi-homogeneous of degree `d`) and certifies every sector.
    pub fn new(vars: VarSystem, omega: Polynomial) -> Result<Self> {
        let found = omega.weighted_degree(&vars)?;
        let expected = i64::from(vars.degree());
        if found != expected {
            return Err(Error::DegreeMismatch { expected, found });
        }
        let sectors = sectors(&vars, &omega)?;
        let serre = SerreData::of(&vars);
        let mut warnings = Vec::new();
        let index = vars.weight_sum() - expected;
        if index < 1 {
            warnings.push(format!(
                "Fano index Σa_j − d = {index} < 1: the exceptional collection \
                 O, …, O({}) is empty, so the Hom spaces describe the whole \
                 hypersurface rather than a Kuznetsov component",
                index - 1
            ));
        }
        Ok(Self {
            vars,
            omega,
            sectors,
            serre,
            warnings,
        })
    }

    pub fn vars(&self) -> &VarSystem {
        &self.vars
    }

    pub fn omega(&self) -> &Polynomial {
        &self.omega
    }

    pub fn sectors(&self) -> &[SectorData] {
        &self.sectors
    }

    pub fn sector(&self, j: u32) -> &SectorData {
        &self.sectors[j as usize]
    }

    /// The untwisted Jacobian ring `Jac(ω)`.
    pub fn jacobian(&self) -> &Arc<JacobianRing> {
        &self.sectors[0].jac
    }

    pub fn serre(&self) -> SerreData {
        self.serre
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn d(&self) -> u32 {
        self.vars.degree()
    }

    pub fn hom_space(&self, m: i64, t: i64) -> HomSpace {
        let d = self.d();
        let summands = self
            .sectors
            .iter()
            .filter_map(|s| {
                s.degree_index(d, m, t).map(|degree| Summand {
                    sector: s.j,
                    degree,
                    piece: s.jac.graded_piece(degree),
                })
            })
            .collect();
        HomSpace { m, t, summands }
    }

    /// `HH^k = Hom(Δ, Δ[k])` and `HH_k = Hom(Δ, S[k])` with `S = (twist)[shift]`.
    pub fn hochschild(&self, kind: HochschildKind, k: i64) -> HomSpace {
        match kind {
            HochschildKind::Cohomology => self.hom_space(0, k),
            HochschildKind::Homology => self.hom_space(self.serre.twist, self.serre.shift + k),
        }
    }

    /// Whether `Hom(Δ, Δ(m+d)[t])` and `Hom(Δ, Δ(m)[t+2])` agree sector by sector.
    pub fn periodicity_check(&self, m: i64, t: i64) -> bool {
        let shape = |h: &HomSpace| -> Vec<(u32, i64, usize)> {
            h.summands
                .iter()
                .map(|s| (s.sector, s.degree, s.dim()))
                .collect()
        };
        shape(&self.hom_space(m + i64::from(self.d()), t)) == shape(&self.hom_space(m, t + 2))
    }
}
