//! Certificate objects.

use crate::bounds::SizeProfile;
use crate::hjpert::{neg_perturb, pos_perturb, Lambda, Regime};
use crate::poly::rational::Rational;
use crate::poly::MvPoly;
use crate::stereo::{stereo_transform, Witness};
use crate::unisos::WeightedSos;
use crate::zerodim::Rur;
use num_traits::One;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PertType {
    NoPert,
    NegPert,
    PosPert,
}

impl PertType {
    pub fn as_str(self) -> &'static str {
        match self {
            PertType::NoPert => "nopert",
            PertType::NegPert => "negpert",
            PertType::PosPert => "pospert",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "nopert" => Some(PertType::NoPert),
            "negpert" => Some(PertType::NegPert),
            "pospert" => Some(PertType::PosPert),
            _ => None,
        }
    }
}

/// Either a nonnegativity certificate for `subject` (and hence for the input
/// polynomial) or a rational point where the input is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub variables: Vec<String>,
    /// The input polynomial as given.
    pub polynomial: MvPoly,
    pub nonneg: bool,
    pub pert_type: PertType,
    pub lambda: Option<Rational>,
    pub shift: Option<Vec<i64>>,
    pub rur: Option<Rur>,
    pub sos: Option<WeightedSos>,
    /// Polynomials in `(T, X_1, …, X_n)`.
    pub quotients: Option<Vec<MvPoly>>,
    pub witness: Option<Witness>,
    pub profile: SizeProfile,
    pub subject: MvPoly,
}

impl Certificate {
    /// `D` in `(R0')^D · subject = Σ w_j s_j^2 + Σ (R0' X_i − R_i) q_i`.
    pub fn identity_degree(&self) -> u32 {
        self.subject.degree()
    }

    /// Positive only when the certificate proves strict positivity.
    pub fn proves_strict_positivity(&self) -> bool {
        self.nonneg && self.pert_type == PertType::NegPert
    }
}

/// `lcm(denominators) · f`: a positive multiple with integer coefficients.
pub fn normalize(f: &MvPoly) -> MvPoly {
    f.clear_denominators().0
}

/// The polynomial the pipeline works on: the normalized input, translated by
/// `shift` when present.
pub fn working_polynomial(f: &MvPoly, shift: Option<&[i64]>) -> MvPoly {
    let g = normalize(f);
    match shift {
        Some(c) => {
            let c: Vec<Rational> = c.iter().map(|&v| crate::poly::rational::rat(v)).collect();
            g.translate(&c)
        }
        None => g,
    }
}

/// Subject polynomial for a perturbation type: `𝒮(g)` or its perturbation.
pub fn subject_of(g: &MvPoly, pert: PertType, lambda: Option<&Rational>) -> Option<MvPoly> {
    let s = stereo_transform(g).transformed;
    match (pert, lambda) {
        (PertType::NoPert, None) => Some(s),
        (PertType::PosPert, Some(l)) => pos_perturb(
            &s,
            &Lambda {
                value: l.clone(),
                regime: Regime::Pos,
                gamma: None,
            },
        )
        .ok(),
        (PertType::NegPert, Some(l)) => neg_perturb(
            &s,
            &Lambda {
                value: l.clone(),
                regime: Regime::Neg,
                gamma: None,
            },
        )
        .ok(),
        _ => None,
    }
}

/// Certificate for a positive constant `c`: the single square `c · 1^2`.
pub fn constant_sos(c: &Rational) -> WeightedSos {
    WeightedSos {
        weights: vec![c.clone()],
        squares: vec![crate::poly::UvPoly::constant(Rational::one())],
    }
}
