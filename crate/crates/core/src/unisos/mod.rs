//! Univariate nonnegativity decisions and weighted sum-of-squares
//! decompositions over the rationals.

pub mod bigfloat;
pub mod decompose;
pub mod sturm;

pub use decompose::{weighted_sos_decompose, UnisosError, WeightedSos};
pub use sturm::{count_real_roots, is_nonneg_univariate, isolate_real_roots, squarefree_decomposition, RootInterval};
