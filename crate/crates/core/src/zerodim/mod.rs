//! Gröbner bases, quotient rings, and rational univariate representations
//! of zero-dimensional ideals.

pub mod groebner;
pub mod linalg;
pub mod quotient;
pub mod rur;

pub use groebner::{groebner_basis, is_zero_dim_no_infinity, s_polynomial, GroebnerBasis};
pub use linalg::Matrix;
pub use quotient::{multiplication_matrix, quotient_basis, NormalForms, QuotientRing};
pub use rur::{compute_rur, Rur, RurOutcome};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZeroDimError {
    #[error("ideal is not zero-dimensional: no pure power of variable {var} among leading monomials")]
    PositiveDimensional { var: usize },
    #[error("ideal is the whole ring")]
    UnitIdeal,
}
