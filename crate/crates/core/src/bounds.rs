//! Explicit constants: radius of positivity, a lower bound on nonzero
//! critical values, and the perturbation threshold derived from both.

use crate::poly::rational::{self, Rational};
use crate::poly::MvPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Rational upper bound for e: 2.7182818285.
pub fn e_upper() -> Rational {
    Rational::new(BigInt::from(27_182_818_285u64), BigInt::from(10_000_000_000u64))
}

/// Size of an input polynomial: `n` variables, degree `d`, `H(f) ≤ 2^tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SizeProfile {
    pub n: u32,
    pub d: u32,
    pub tau: u32,
}

impl SizeProfile {
    pub fn new(n: u32, d: u32, tau: u32) -> Self {
        SizeProfile { n, d, tau }
    }

    /// Profile of a polynomial with the smallest admissible `tau`.
    pub fn of(f: &MvPoly) -> Self {
        let h = f.norms().height;
        SizeProfile {
            n: f.nvars() as u32,
            d: f.degree(),
            tau: rational::ceil_log2(&h) as u32,
        }
    }
}

/// Positive rational kept as `cofactor * Π base^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub cofactor: Rational,
    pub factors: Vec<(Rational, i64)>,
}

fn rat_pow(b: &Rational, e: i64) -> Rational {
    // powers of a reduced fraction are reduced
    let k = e.unsigned_abs();
    let num = num_traits::pow::Pow::pow(b.numer(), k);
    let den = num_traits::pow::Pow::pow(b.denom(), k);
    if e >= 0 {
        Rational::new_raw(num, den)
    } else if num.is_negative() {
        Rational::new_raw(-den, -num)
    } else {
        Rational::new_raw(den, num)
    }
}

impl BoundValue {
    pub fn exact(v: Rational) -> Self {
        BoundValue {
            cofactor: v,
            factors: Vec::new(),
        }
    }

    pub fn expand(&self) -> Rational {
        let mut acc = self.cofactor.clone();
        for (b, e) in &self.factors {
            acc = rational::mul(&acc, &rat_pow(b, *e));
        }
        acc
    }

    /// Unreduced `(numerator, denominator)` with a positive denominator.
    /// Reducing the bounds used here would cost a gcd of numbers with
    /// millions of bits, and comparisons do not need it.
    pub fn fraction(&self) -> (BigInt, BigInt) {
        let mut num = self.cofactor.numer().clone();
        let mut den = self.cofactor.denom().clone();
        for (b, e) in &self.factors {
            let k = e.unsigned_abs();
            let (p, q) = (
                num_traits::pow::Pow::pow(b.numer(), k),
                num_traits::pow::Pow::pow(b.denom(), k),
            );
            if *e >= 0 {
                num *= p;
                den *= q;
            } else {
                num *= q;
                den *= p;
            }
        }
        if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        }
    }

    /// `x ≤ self`, compared without reducing `self`.
    pub fn at_least(&self, x: &Rational) -> bool {
        let (num, den) = self.fraction();
        x.numer() * den <= num * x.denom()
    }

    pub fn mul(&self, other: &BoundValue) -> BoundValue {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        BoundValue {
            cofactor: &self.cofactor * &other.cofactor,
            factors,
        }
    }

    pub fn recip(&self) -> BoundValue {
        BoundValue {
            cofactor: self.cofactor.recip(),
            factors: self.factors.iter().map(|(b, e)| (b.clone(), -e)).collect(),
        }
    }

    pub fn powi(&self, k: i64) -> BoundValue {
        let mut factors: Vec<(Rational, i64)> = self.factors.iter().map(|(b, e)| (b.clone(), e * k)).collect();
        if !self.cofactor.is_one() {
            factors.push((self.cofactor.clone(), k));
        }
        BoundValue {
            cofactor: Rational::one(),
            factors,
        }
    }

    /// Approximate base-2 logarithm, for logging and cheap pre-comparisons.
    pub fn log2_approx(&self) -> f64 {
        fn lg(x: &Rational) -> f64 {
            let bits = |v: &BigInt| -> f64 {
                let b = v.bits();
                let shift = b.saturating_sub(60);
                let top: BigInt = v.abs() >> shift;
                let t: f64 = top.to_string().parse().unwrap_or(1.0);
                t.log2() + shift as f64
            };
            bits(x.numer()) - bits(x.denom())
        }
        lg(&self.cofactor) + self.factors.iter().map(|(b, e)| lg(b) * *e as f64).sum::<f64>()
    }
}

/// `2^{n+2d+tau}`.
pub fn radius_bound(p: SizeProfile) -> BoundValue {
    BoundValue {
        cofactor: Rational::one(),
        factors: vec![(rational::rat(2), (p.n + 2 * p.d + p.tau) as i64)],
    }
}

/// Lower bound on the absolute value of any nonzero critical value of an
/// integer polynomial with the given profile, with `e` replaced by a rational
/// upper bound.
pub fn critical_value_lower_bound(p: SizeProfile) -> BoundValue {
    let n = p.n as i64;
    let d = p.d as i64;
    let r = rational::rat;
    let a = (n + 1) * (n + 2) * d.pow(p.n + 1);
    let b = (n + 1) * d.pow(p.n);
    // (n^n (n+1) d 2^tau)
    let inner = Rational::from_integer(BigInt::from(n).pow(p.n) * BigInt::from(n + 1) * BigInt::from(d));
    let mut factors = vec![
        (r((n + 2) * (n + 2)), -a),
        (e_upper(), -(n + 3) * a),
        (r(2), -(p.tau as i64) * b),
    ];
    if !inner.is_one() && !inner.is_zero() {
        factors.push((inner, -b));
    }
    BoundValue {
        cofactor: Rational::one(),
        factors,
    }
}

/// Bitsize argument used inside the perturbation threshold:
/// `d * ceil(lg(n+1)) + n + 2d + tau`.
pub fn shifted_tau(p: SizeProfile) -> u32 {
    let lg = rational::ceil_log2(&num_bigint::BigUint::from(p.n + 1)) as u32;
    p.d * lg + p.n + 2 * p.d + p.tau
}

/// `c'(n, 2d, tau*) / (6n * Rad(n,d,tau)^{2d+2})`.
pub fn epsilon_bound(p: SizeProfile) -> BoundValue {
    let c = critical_value_lower_bound(SizeProfile::new(p.n, 2 * p.d, shifted_tau(p)));
    let rad = radius_bound(p).powi(-(2 * p.d as i64 + 2));
    let mut out = c.mul(&rad);
    out.cofactor = Rational::new(BigInt::one(), BigInt::from(6 * p.n as i64));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::{pow2, rat};

    #[test]
    fn radius_instances() {
        assert_eq!(radius_bound(SizeProfile::new(1, 2, 2)).expand(), rat(128));
        assert_eq!(radius_bound(SizeProfile::new(2, 6, 2)).expand(), pow2(16));
        assert_eq!(radius_bound(SizeProfile::new(1, 0, 0)).expand(), rat(2));
    }

    #[test]
    fn critical_bound_small_instance() {
        let c = critical_value_lower_bound(SizeProfile::new(1, 1, 0)).expand();
        let e4 = rat_pow(&e_upper(), 4);
        let expected = rat_pow(&(rat(9) * e4), -6) * rat_pow(&rat(2), -2);
        assert_eq!(c, expected);
    }

    #[test]
    fn critical_bound_between_e_brackets() {
        // with e_lo < e < e_hi = e_upper, the true bound lies between the
        // e_hi version (ours) and the e_lo version; base 3 is smaller still
        for (n, d, t) in [(1u32, 2u32, 1u32), (2, 2, 0), (1, 4, 3), (2, 1, 2)] {
            let c = critical_value_lower_bound(SizeProfile::new(n, d, t)).expand();
            let (ni, di) = (n as i64, d as i64);
            let a = (ni + 1) * (ni + 2) * di.pow(n + 1);
            let b = (ni + 1) * di.pow(n);
            let inner = rat(ni.pow(n) * (ni + 1) * di) * pow2(t as i64);
            let with_e = |e: Rational| {
                let base = rat((ni + 2) * (ni + 2)) * rat_pow(&e, ni + 3);
                rat_pow(&base, -a) * rat_pow(&inner, -b)
            };
            let e_lo = Rational::new(BigInt::from(2_718_281_828u64), BigInt::from(1_000_000_000u64));
            assert!(c > Rational::zero());
            assert!(c >= with_e(rat(3)));
            assert!(c < with_e(e_lo));
        }
    }

    #[test]
    fn epsilon_small_instance() {
        let p = SizeProfile::new(1, 2, 2);
        let eps = epsilon_bound(p).expand();
        // the denominator carries Rad^6 = 2^42
        let scaled = &eps * pow2(42);
        let c = critical_value_lower_bound(SizeProfile::new(1, 4, shifted_tau(p))).expand();
        assert_eq!(scaled, c / rat(6));
        assert!(eps < pow2(-42) / rat(6));
    }

    #[test]
    fn log2_tracks_expansion() {
        let p = SizeProfile::new(1, 2, 2);
        let v = epsilon_bound(p);
        let exact = v.expand();
        let bits = exact.denom().bits() as f64 - exact.numer().bits() as f64;
        assert!((v.log2_approx() + bits).abs() < 2.0);
    }
}
