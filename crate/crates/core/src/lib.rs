//! Exact computations for graded matrix factorization categories of
//! weighted-projective hypersurfaces: Jacobian rings, the orbifold
//! decomposition of `Hom(Δ, Δ(m)[t])`, Hochschild (co)homology of the
//! Kuznetsov component and the multiplication map
//! `γ: HH² → Hom(HH₋₁, HH₁)`.
//!
//! Everything is computed over `Q` with arbitrary-precision integers.

pub mod error;
pub mod jacobian;
pub mod linalg;
pub mod orbifold;
pub mod wpoly;

pub use error::{Error, Result, UnresolvedTerm};
pub use jacobian::{build_jacobian, hilbert_oracle, GradedPiece, JacobianRing};
pub use linalg::{nullspace_basis, rank, rank_with, row_reduce, ExactMatrix, RankMethod};
pub use orbifold::{
    GammaReport, HSElement, HochschildKind, HomSpace, MultiplyOptions, OrbifoldModel, Rule,
    SectorData, SerreData, Summand, TermRecord,
};
pub use wpoly::{parse_poly, poly_mul, restrict, weighted_degree, Monomial, Polynomial, VarSystem};
