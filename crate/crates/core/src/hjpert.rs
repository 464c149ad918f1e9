//! Positive and negative perturbations `f ± λ Σ_i (1 + X_i^2 + X_i^k)` and
//! the choice of `λ`.

use crate::bounds::{epsilon_bound, SizeProfile};
use crate::poly::rational::{self, Rational};
use crate::poly::{ExpVec, MvPoly};
use crate::rng::SplitMix64;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

/// Sub-stream id for negative-regime draws.
pub const NEG_LAMBDA_STREAM: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Pos,
    Neg,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda {
    pub value: Rational,
    pub regime: Regime,
    pub gamma: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PertError {
    #[error("perturbation parameter must be positive")]
    NonPositive,
    #[error("expected a {expected:?} regime parameter")]
    WrongRegime { expected: Regime },
    #[error("perturbation needs even degree >= 2, got {0}")]
    BadDegree(u32),
    #[error("all {size} candidates for gamma = {gamma} were used")]
    Exhausted { gamma: u32, size: u64 },
}

/// `Σ_i (1 + X_i^2 + X_i^k)`.
pub fn perturbation_term(n: usize, k: u32) -> MvPoly {
    let mut p = MvPoly::zero(n);
    for i in 0..n {
        p.add_term(ExpVec::zero(n), Rational::one());
        p.add_term(ExpVec::unit(n, i, 2), Rational::one());
        p.add_term(ExpVec::unit(n, i, k), Rational::one());
    }
    p
}

fn check(f: &MvPoly, lambda: &Lambda, regime: Regime) -> Result<u32, PertError> {
    if lambda.regime != regime {
        return Err(PertError::WrongRegime { expected: regime });
    }
    if !lambda.value.is_positive() {
        return Err(PertError::NonPositive);
    }
    let d = f.degree();
    if d < 2 || d % 2 == 1 {
        return Err(PertError::BadDegree(d));
    }
    Ok(d)
}

/// `f + λ Σ_i (1 + X_i^2 + X_i^{d+2})` with `d = deg f`.
pub fn pos_perturb(f: &MvPoly, lambda: &Lambda) -> Result<MvPoly, PertError> {
    let d = check(f, lambda, Regime::Pos)?;
    Ok(f + &perturbation_term(f.nvars(), d + 2).scale(&lambda.value))
}

/// `f - λ Σ_i (1 + X_i^2 + X_i^d)` with `d = deg f`.
pub fn neg_perturb(f: &MvPoly, lambda: &Lambda) -> Result<MvPoly, PertError> {
    let d = check(f, lambda, Regime::Neg)?;
    Ok(f - &perturbation_term(f.nvars(), d).scale(&lambda.value))
}

/// Rational in `(0, eps]` with the smallest denominator, largest among ties.
pub fn simplest_in_unit_interval(eps: &Rational) -> Rational {
    simplest_at_most(eps.numer(), eps.denom())
}

/// [`simplest_in_unit_interval`] for `eps = num / den` given unreduced.
pub fn simplest_at_most(num: &BigInt, den: &BigInt) -> Rational {
    assert!(num.is_positive() && den.is_positive());
    let q = Integer::div_ceil(den, num);
    let p = (num * &q).div_floor(den);
    Rational::new(p, q)
}

pub fn pick_lambda_pos(profile: SizeProfile) -> Lambda {
    let (num, den) = epsilon_bound(profile).fraction();
    Lambda {
        value: simplest_at_most(&num, &den),
        regime: Regime::Pos,
        gamma: None,
    }
}

pub fn pick_lambda_pos_from(eps: &Rational) -> Lambda {
    Lambda {
        value: simplest_in_unit_interval(eps),
        regime: Regime::Pos,
        gamma: None,
    }
}

/// Number of values of λ for which the negative perturbation of the
/// transformed polynomial can fail to have a zero-dimensional gradient ideal
/// without solutions at infinity: `(2d-1)^{n-1}(2d-1+n)`.
pub fn unlucky_count(n: u32, d: u32) -> u64 {
    let b = 2 * d as u64 - 1;
    b.pow(n - 1) * (b + n as u64)
}

/// Candidate set description for one γ window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegCandidates {
    pub size: u64,
    pub log_size: u32,
    stride: u64,
    offset: u64,
}

impl NegCandidates {
    /// `size = k (2d-1)^{n-1} (2d-1+n)`; the draw order is a seeded affine
    /// permutation `j = (stride * attempt + offset) mod size`.
    pub fn new(n: u32, d: u32, k: u32, seed: u64, gamma: u32) -> Self {
        let size = k as u64 * unlucky_count(n, d);
        let log_size = rational::ceil_log2(&num_bigint::BigUint::from(size)) as u32;
        let mut g = SplitMix64::derived(seed ^ (gamma as u64).rotate_left(32), NEG_LAMBDA_STREAM);
        let mut stride = 1 + g.below(size);
        while stride.gcd(&size) != 1 {
            stride = 1 + g.below(size);
        }
        let offset = g.below(size);
        NegCandidates {
            size,
            log_size,
            stride,
            offset,
        }
    }

    /// `λ = (2^{m+1} + 2j + 1) / 2^{2γ+m+1}` with `m = ⌈lg size⌉`, which lies
    /// in `(2^{-2γ}, 2^{-2γ+1}] ⊆ (2^{-2γ}, 2^{-γ}]`.
    pub fn lambda(&self, gamma: u32, attempt: u64) -> Result<Lambda, PertError> {
        if attempt >= self.size {
            return Err(PertError::Exhausted { gamma, size: self.size });
        }
        let j = ((self.stride as u128 * attempt as u128 + self.offset as u128) % self.size as u128) as u64;
        let m = self.log_size as usize;
        let num = (BigInt::one() << (m + 1)) + BigInt::from(2 * j + 1);
        let den = BigInt::one() << (2 * gamma as usize + m + 1);
        Ok(Lambda {
            value: Rational::new(num, den),
            regime: Regime::Neg,
            gamma: Some(gamma),
        })
    }
}

pub fn pick_lambda_neg(gamma: u32, attempt: u64, k: u32, seed: u64, profile: SizeProfile) -> Result<Lambda, PertError> {
    assert!(gamma >= 1);
    NegCandidates::new(profile.n, profile.d, k, seed, gamma).lambda(gamma, attempt)
}

/// True iff `λ ∈ (2^{-2γ}, 2^{-γ}]`.
pub fn in_neg_window(value: &Rational, gamma: u32) -> bool {
    value > &rational::pow2(-2 * gamma as i64) && value <= &rational::pow2(-(gamma as i64))
}
