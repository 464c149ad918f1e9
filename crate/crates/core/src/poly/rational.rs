//! Helpers around [`BigRational`], the scalar type used everywhere.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        from_bigint(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// H(p/q) = max(|p|, q); H(0) = 0.
pub fn height(x: &Rational) -> BigUint {
    if x.is_zero() {
        return BigUint::zero();
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    if n > d {
        n.clone()
    } else {
        d.clone()
    }
}

/// ⌊lg H(x)⌋ + 1, and 0 for x = 0.
pub fn bitsize(x: &Rational) -> u64 {
    height(x).bits()
}

/// Smallest τ ≥ 0 with `h ≤ 2^τ`.
pub fn ceil_log2(h: &BigUint) -> u64 {
    if h <= &BigUint::one() {
        0
    } else {
        (h - BigUint::one()).bits()
    }
}

/// Canonical fraction text: always `num/den`.
pub fn format_fraction(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short text: `num` for integers, `num/den` otherwise.
pub fn format_short(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format_fraction(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}")]
pub struct RationalParseError(pub String);

/// Parses `p`, `-p`, `p/q`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let t = s.trim();
    let err = || RationalParseError(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |x: &str, signed: bool| {
        let digits = if signed {
            x.strip_prefix('-').or_else(|| x.strip_prefix('+')).unwrap_or(x)
        } else {
            x
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n, true) || !valid(d, false) {
        return Err(err());
    }
    let num = BigInt::from_str(n.trim_start_matches('+')).map_err(|_| err())?;
    let den = BigInt::from_str(d).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// ⌈x⌉ as an integer.
pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Least common multiple of the denominators of an iterator of rationals.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut acc = BigInt::one();
    for x in xs {
        let d = x.denom();
        if d.is_one() || (&acc % d).is_zero() {
            continue;
        }
        let g = gcd(&acc, d);
        acc = &acc / g * d;
    }
    acc
}

/// Operands above this size go through the subquadratic gcd of `dashu-int`.
const FAST_GCD_BITS: u64 = 2048;

/// Nonnegative gcd.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    if small.is_zero() {
        return big.abs();
    }
    // the binary gcd of num-bigint is slow on operands of very different
    // sizes; one Euclid step brings them to the size of the smaller one
    if big.bits() > 2 * small.bits() + 64 {
        return gcd(small, &(big % small));
    }
    if small.bits() < FAST_GCD_BITS {
        return a.gcd(b);
    }
    use dashu_int::ops::Gcd;
    let ua = dashu_int::UBig::from_le_bytes(&a.magnitude().to_bytes_le());
    let ub = dashu_int::UBig::from_le_bytes(&b.magnitude().to_bytes_le());
    let g = (&ua).gcd(&ub);
    BigInt::from_biguint(Sign::Plus, BigUint::from_bytes_le(&g.to_le_bytes()))
}

/// `n / d` in lowest terms.
pub fn reduced(n: BigInt, d: BigInt) -> Rational {
    assert!(!d.is_zero(), "zero denominator");
    if n.is_zero() {
        return Rational::zero();
    }
    let (n, d) = if d.is_negative() { (-n, -d) } else { (n, d) };
    if d.is_one() {
        return Rational::new_raw(n, d);
    }
    let g = gcd(&n, &d);
    if g.is_one() {
        Rational::new_raw(n, d)
    } else {
        Rational::new_raw(n / &g, d / g)
    }
}

pub fn add(a: &Rational, b: &Rational) -> Rational {
    if a.denom() == b.denom() {
        reduced(a.numer() + b.numer(), a.denom().clone())
    } else {
        reduced(a.numer() * b.denom() + b.numer() * a.denom(), a.denom() * b.denom())
    }
}

pub fn sub(a: &Rational, b: &Rational) -> Rational {
    if a.denom() == b.denom() {
        reduced(a.numer() - b.numer(), a.denom().clone())
    } else {
        reduced(a.numer() * b.denom() - b.numer() * a.denom(), a.denom() * b.denom())
    }
}

pub fn mul(a: &Rational, b: &Rational) -> Rational {
    reduced(a.numer() * b.numer(), a.denom() * b.denom())
}

/// `(xs · L, L)` with `L` the lcm of the denominators.
pub fn to_integers<'a>(xs: impl IntoIterator<Item = &'a Rational> + Clone) -> (Vec<BigInt>, BigInt) {
    let l = denominator_lcm(xs.clone());
    let v = xs.into_iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (v, l)
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

pub fn is_negative(x: &Rational) -> bool {
    x.numer().sign() == Sign::Minus
}
