//! Minimal binary floating point with arbitrary mantissa width, used only to
//! approximate complex roots; results are always re-checked exactly.

use crate::poly::rational::Rational;
use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

/// `mantissa · 2^exponent`, mantissa truncated to `prec` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    fn normalized(mantissa: BigInt, exponent: i64, prec: u64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let bits = mantissa.bits();
        if bits > prec {
            let shift = bits - prec;
            BigFloat {
                mantissa: mantissa >> shift as usize,
                exponent: exponent + shift as i64,
            }
        } else {
            BigFloat { mantissa, exponent }
        }
    }

    pub fn from_rational(x: &Rational, prec: u64) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let nb = x.numer().bits() as i64;
        let db = x.denom().bits() as i64;
        let shift = prec as i64 + 2 + db - nb;
        let (num, exp) = if shift >= 0 {
            (x.numer() << shift as usize, -shift)
        } else {
            (x.numer() >> (-shift) as usize, -shift)
        };
        Self::normalized(num / x.denom(), exp, prec)
    }

    pub fn from_f64(v: f64, prec: u64) -> Self {
        if v == 0.0 || !v.is_finite() {
            return Self::zero();
        }
        let scaled = v * 2f64.powi(60);
        let m = BigInt::from(scaled as i128);
        Self::normalized(m, -60, prec)
    }

    /// Exact dyadic value.
    pub fn to_rational(&self) -> Rational {
        let one = BigInt::from(1);
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            Rational::new(self.mantissa.clone(), one << (-self.exponent) as usize)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.sign() == Sign::Minus
    }

    /// Rough base-2 magnitude: `floor(lg |x|)`; very negative for zero.
    pub fn log2(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            self.mantissa.bits() as i64 - 1 + self.exponent
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mantissa: -self.mantissa.clone(),
            exponent: self.exponent,
        }
    }

    pub fn add(&self, o: &Self, prec: u64) -> Self {
        if self.is_zero() {
            return Self::normalized(o.mantissa.clone(), o.exponent, prec);
        }
        if o.is_zero() {
            return Self::normalized(self.mantissa.clone(), self.exponent, prec);
        }
        let (hi, lo) = if self.log2() >= o.log2() { (self, o) } else { (o, self) };
        // terms far below the precision window are dropped
        if hi.log2() - lo.log2() > prec as i64 + 4 {
            return Self::normalized(hi.mantissa.clone(), hi.exponent, prec);
        }
        let e = self.exponent.min(o.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &o.mantissa << (o.exponent - e) as usize;
        Self::normalized(a + b, e, prec)
    }

    pub fn sub(&self, o: &Self, prec: u64) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u64) -> Self {
        Self::normalized(&self.mantissa * &o.mantissa, self.exponent + o.exponent, prec)
    }

    pub fn div(&self, o: &Self, prec: u64) -> Self {
        assert!(!o.is_zero(), "division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let shift = prec as i64 + 2 + o.mantissa.bits() as i64 - self.mantissa.bits() as i64;
        let shift = shift.max(0);
        let num = &self.mantissa << shift as usize;
        Self::normalized(num / &o.mantissa, self.exponent - o.exponent - shift, prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let shift = bits.saturating_sub(60);
        let top: BigInt = &self.mantissa >> shift as usize;
        let t: f64 = top.to_string().parse().unwrap_or(0.0);
        t * 2f64.powi((self.exponent + shift as i64).clamp(-1070, 1020) as i32)
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }
}

/// Complex number over [`BigFloat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn zero() -> Self {
        Complex {
            re: BigFloat::zero(),
            im: BigFloat::zero(),
        }
    }

    pub fn real(re: BigFloat) -> Self {
        Complex {
            re,
            im: BigFloat::zero(),
        }
    }

    pub fn add(&self, o: &Self, p: u64) -> Self {
        Complex {
            re: self.re.add(&o.re, p),
            im: self.im.add(&o.im, p),
        }
    }

    pub fn sub(&self, o: &Self, p: u64) -> Self {
        Complex {
            re: self.re.sub(&o.re, p),
            im: self.im.sub(&o.im, p),
        }
    }

    pub fn mul(&self, o: &Self, p: u64) -> Self {
        Complex {
            re: self.re.mul(&o.re, p).sub(&self.im.mul(&o.im, p), p),
            im: self.re.mul(&o.im, p).add(&self.im.mul(&o.re, p), p),
        }
    }

    pub fn norm_sq(&self, p: u64) -> BigFloat {
        self.re.mul(&self.re, p).add(&self.im.mul(&self.im, p), p)
    }

    pub fn div(&self, o: &Self, p: u64) -> Self {
        let den = o.norm_sq(p);
        let re = self.re.mul(&o.re, p).add(&self.im.mul(&o.im, p), p);
        let im = self.im.mul(&o.re, p).sub(&self.re.mul(&o.im, p), p);
        Complex {
            re: re.div(&den, p),
            im: im.div(&den, p),
        }
    }

    pub fn recip(&self, p: u64) -> Self {
        let den = self.norm_sq(p);
        Complex {
            re: self.re.div(&den, p),
            im: self.im.neg().div(&den, p),
        }
    }

    /// `floor(lg |z|)` up to one unit.
    pub fn log2(&self) -> i64 {
        self.re.log2().max(self.im.log2())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}
