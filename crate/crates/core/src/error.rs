use std::fmt;

use thiserror::Error;

/// One product term `f_j ∘ ((γ^j,1)·g_l)` that none of the resolution rules could evaluate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedTerm {
    pub left_sector: u32,
    pub right_sector: u32,
    pub target_sector: u32,
    pub target_degree: i64,
    pub target_dim: usize,
}

impl fmt::Display for UnresolvedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f[{}] ∘ g[{}] -> sector {} degree {} (dim {})",
            self.left_sector,
            self.right_sector,
            self.target_sector,
            self.target_degree,
            self.target_dim
        )
    }
}

fn join_terms(terms: &[UnresolvedTerm]) -> String {
    terms
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("zero denominator at offset {offset}")]
    ZeroDenominator { offset: usize },

    #[error("invalid variable system: {0}")]
    InvalidVarSystem(String),

    #[error(
        "polynomial is not quasi-homogeneous: `{first}` has weighted degree {first_degree} \
         but `{second}` has weighted degree {second_degree}"
    )]
    NotQuasiHomogeneous {
        first: String,
        first_degree: i64,
        second: String,
        second_degree: i64,
    },

    #[error("the zero polynomial has no weighted degree")]
    ZeroPolynomial,

    #[error("expected a polynomial of weighted degree {expected}, found degree {found}")]
    DegreeMismatch { expected: i64, found: i64 },

    #[error("Hilbert series is not a polynomial: {0}")]
    NonPolynomialSeries(String),

    #[error(
        "non-isolated singularity{}: Jacobian ring has dimension {dim} in degree {degree}, \
         beyond the socle degree {socle}",
        sector.map(|j| format!(" in sector {j}")).unwrap_or_default()
    )]
    NonIsolatedSingularity {
        sector: Option<u32>,
        degree: i64,
        dim: usize,
        socle: i64,
    },

    #[error("indeterminate composition, unresolved terms: {}", join_terms(.terms))]
    IndeterminateComposition { terms: Vec<UnresolvedTerm> },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
