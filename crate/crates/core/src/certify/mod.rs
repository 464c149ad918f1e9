//! Nonnegativity certificates: SOS-RUR, the perturbation stages, the file
//! format and the verifier.

pub mod algorithms;
pub mod certificate;
pub mod format;
pub mod sosrur;
pub mod verify;

pub use algorithms::{
    certify, hj_sos_neg, hj_sos_neg_logged, hj_sos_pos, hj_sos_rur, CertifyOptions, CertifyOutcome, CertifyRun,
    GammaLog, GammaOutcome, Mode, NegFailReason, NegFailure, NegOutcome, RunLog,
};
pub use certificate::{Certificate, PertType};
pub use format::{from_json, to_json};
pub use sosrur::{sos_rur, SosRurOutcome};
pub use verify::{verify_certificate, Check, VerificationReport};

use crate::unisos::UnisosError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("odd degree {0}: the polynomial is unbounded below")]
    OddDegree(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("gradient ideal is not zero-dimensional")]
    PositiveDimensional,
    #[error("no separating form with squarefree characteristic polynomial")]
    NotRadical,
    #[error("univariate decomposition failed: {0}")]
    Unisos(UnisosError),
    #[error("positive perturbation stage failed after {attempts} attempts")]
    HardFailure { attempts: u32 },
    #[error("stage {0} does not apply to this polynomial")]
    StageNotApplicable(&'static str),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("internal error: {0}")]
    Internal(String),
}
