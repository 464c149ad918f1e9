use super::expvec::ExpVec;
use super::intpoly;
use super::mvpoly::MvPoly;
use super::rational::{rat, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial, coefficients lowest degree first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UvPoly {
    coeffs: Vec<Rational>,
}

impl UvPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UvPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        UvPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate T.
    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg 0 = 0 by convention.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // Σ c_k p^k q^{n-k} over integers for x = p/q
        let (c, l) = super::rational::to_integers(&self.coeffs);
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for ck in c.iter().rev() {
            acc = acc * p + ck * &qpow;
            qpow *= q;
        }
        let n = self.coeffs.len() - 1;
        super::rational::reduced(acc, l * q.pow(n as u32))
    }

    /// Sign of the value at `x` (-1, 0, 1).
    pub fn sign_at(&self, x: &Rational) -> i32 {
        super::rational::sign(&self.eval(x))
    }

    pub fn derivative(&self) -> UvPoly {
        UvPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> UvPoly {
        UvPoly::new(self.coeffs.iter().map(|a| super::rational::mul(a, c)).collect())
    }

    pub fn monic(&self) -> UvPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn shift_up(&self, k: usize) -> UvPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UvPoly { coeffs: v }
    }

    pub fn pow(&self, k: u32) -> UvPoly {
        let mut result = UvPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    /// Runs as integer pseudo-division and normalizes once at the end.
    pub fn div_rem(&self, d: &UvPoly) -> (UvPoly, UvPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (UvPoly::zero(), self.clone());
        }
        let (p, dp) = super::rational::to_integers(&self.coeffs);
        let (m, dm) = super::rational::to_integers(&d.coeffs);
        let (q, r, steps) = intpoly::pseudo_div(p, &m);
        let scale = m[d.deg()].pow(steps) * &dp;
        let qs = q.into_iter().map(|c| c * &dm).collect();
        (UvPoly::from_integers(qs, &scale), UvPoly::from_integers(r, &scale))
    }

    /// `Σ c_k T^k / den`.
    pub fn from_integers(c: Vec<BigInt>, den: &BigInt) -> UvPoly {
        UvPoly::new(
            c.into_iter()
                .map(|x| super::rational::reduced(x, den.clone()))
                .collect(),
        )
    }

    /// Integer coefficients and the positive common denominator.
    pub fn to_integers(&self) -> (Vec<BigInt>, BigInt) {
        super::rational::to_integers(&self.coeffs)
    }

    pub fn rem(&self, d: &UvPoly) -> UvPoly {
        if self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        self.div_rem(d).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &UvPoly) -> UvPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UvPoly) -> UvPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Positive rational multiple with coprime integer coefficients and
    /// positive leading coefficient; keeps Euclid's remainders small.
    pub fn primitive(&self) -> UvPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (ints, _) = super::rational::to_integers(&self.coeffs);
        let mut g = BigInt::zero();
        for x in &ints {
            if g.is_one() {
                break;
            }
            g = super::rational::gcd(&g, x);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        UvPoly::new(ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// `self(g(T))`.
    pub fn compose(&self, g: &UvPoly) -> UvPoly {
        let mut acc = UvPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UvPoly::constant(c.clone());
        }
        acc
    }

    /// Embeds as a polynomial in variable `var` of an `nvars`-variable ring.
    pub fn to_mvpoly(&self, nvars: usize, var: usize) -> MvPoly {
        MvPoly::from_terms(
            nvars,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (ExpVec::unit(nvars, var, k as u32), c.clone())),
        )
    }

    /// Inverse of [`to_mvpoly`](Self::to_mvpoly) for univariate `MvPoly`s in
    /// variable `var`; `None` if another variable occurs.
    pub fn from_mvpoly(p: &MvPoly, var: usize) -> Option<UvPoly> {
        let mut v = vec![Rational::zero(); p.degree() as usize + 1];
        for (e, c) in p.terms() {
            if e.total_degree() != e.get(var) {
                return None;
            }
            v[e.get(var) as usize] = c.clone();
        }
        Some(UvPoly::new(v))
    }

    /// Bound on absolute values of real roots (Cauchy).
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading_coeff().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + m / lc
    }
}

impl std::fmt::Debug for UvPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*T")?,
                _ => write!(f, "{c}*T^{k}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a UvPoly> for &'a UvPoly {
    type Output = UvPoly;
    fn add(self, rhs: &UvPoly) -> UvPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UvPoly::new(
            (0..n)
                .map(|k| super::rational::add(&self.coeff(k), &rhs.coeff(k)))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a UvPoly> for &'a UvPoly {
    type Output = UvPoly;
    fn sub(self, rhs: &UvPoly) -> UvPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UvPoly::new(
            (0..n)
                .map(|k| super::rational::sub(&self.coeff(k), &rhs.coeff(k)))
                .collect(),
        )
    }
}

impl Neg for &UvPoly {
    type Output = UvPoly;
    fn neg(self) -> UvPoly {
        UvPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<'a> Mul<&'a UvPoly> for &'a UvPoly {
    type Output = UvPoly;
    fn mul(self, rhs: &UvPoly) -> UvPoly {
        if self.is_zero() || rhs.is_zero() {
            return UvPoly::zero();
        }
        // integer products over a common denominator, one normalization per
        // output coefficient
        let (a, da) = self.to_integers();
        let (b, db) = rhs.to_integers();
        UvPoly::from_integers(intpoly::mul(&a, &b), &(da * db))
    }
}

impl Mul for UvPoly {
    type Output = UvPoly;
    fn mul(self, rhs: UvPoly) -> UvPoly {
        &self * &rhs
    }
}
