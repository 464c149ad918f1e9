//! Denominator-free stereographic transform `f^h(2X_1, …, 2X_n, -1 + ΣX_i^2)`,
//! transport of negative values back to the original polynomial, and the
//! translation used when `f(0) ≤ 0`.

use crate::poly::rational::{self, rat, Rational};
use crate::poly::{ExpVec, MvPoly};
use crate::rng::SplitMix64;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sub-stream id for the shift sampler.
pub const SHIFT_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StereoResult {
    pub transformed: MvPoly,
    pub source_degree: u32,
    pub source_height: Rational,
}

/// Rational point at which the original polynomial is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub point: Vec<Rational>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StereoError {
    #[error("transformed polynomial is {value} >= 0 at the given point")]
    NotNegative { value: Rational },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// `-1 + ΣX_i^2` in `n` variables.
pub fn sphere_form(n: usize) -> MvPoly {
    let mut p = MvPoly::constant(n, rat(-1));
    for i in 0..n {
        p.add_term(ExpVec::unit(n, i, 2), Rational::one());
    }
    p
}

pub fn stereo_transform(f: &MvPoly) -> StereoResult {
    let n = f.nvars();
    let d = f.degree();
    let s = sphere_form(n);
    let mut s_pow = vec![MvPoly::one(n)];
    for k in 1..=d as usize {
        let next = &s_pow[k - 1] * &s;
        s_pow.push(next);
    }
    let mut out = MvPoly::zero(n);
    for (e, c) in f.terms() {
        let k = e.total_degree();
        let coeff = c * rational::pow2(k as i64);
        let t = s_pow[(d - k) as usize].mul_term(e, &coeff);
        out = &out + &t;
    }
    StereoResult {
        transformed: out,
        source_degree: d,
        source_height: Rational::from_integer(BigInt::from(f.norms().height)),
    }
}

fn point_height(x: &[Rational]) -> BigInt {
    x.iter()
        .map(|v| BigInt::from(rational::height(v)))
        .max()
        .unwrap_or_else(BigInt::zero)
        .max(BigInt::one())
}

pub fn norm2_sq(x: &[Rational]) -> Rational {
    x.iter().map(|v| v * v).sum()
}

/// Maps a point where `𝒮(f)` is negative to a point where `f` is negative.
/// `f` is expected to have integer coefficients and even degree.
pub fn witness_transport(f: &MvPoly, x: &[Rational]) -> Result<Witness, StereoError> {
    let n = f.nvars();
    if x.len() != n {
        return Err(StereoError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let s = stereo_transform(f).transformed;
    let sv = s.eval(x).expect("dimension checked");
    if !sv.is_negative() {
        return Err(StereoError::NotNegative { value: sv });
    }
    let r = norm2_sq(x);
    let point: Vec<Rational> = if r != Rational::one() {
        let den = &r - Rational::one();
        x.iter().map(|v| rat(2) * v / &den).collect()
    } else {
        let d = f.degree() as i64;
        let hx = point_height(x);
        let hf = BigInt::from(f.norms().height);
        let exp = ((n as i64 + 1) * d - 1).max(0) as u32;
        let mut c = Rational::from_integer(
            (BigInt::one() << (n as i64 + 2 * d - 1).max(0) as usize) * num_traits::pow::Pow::pow(&hx, exp) * hf,
        );
        // the scaled point is negative for every large enough scale; the
        // doubling only matters for inputs outside the integer-coefficient
        // hypothesis
        loop {
            let p: Vec<Rational> = x.iter().map(|v| rat(2) * v * &c).collect();
            if f.eval(&p).expect("dimension checked").is_negative() {
                break p;
            }
            c *= rat(2);
        }
    };
    let value = f.eval(&point).expect("dimension checked");
    debug_assert!(value.is_negative());
    Ok(Witness { point, value })
}

/// Result of translating `f` so its value at the origin is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftOutcome {
    Shifted { g: MvPoly, shift: Vec<i64> },
    Negative(Witness),
}

/// Samples `c ∈ {1..k·d}^n` until `f(c) ≠ 0`; returns `f(X + c)` when
/// `f(c) > 0`, otherwise the witness `c`.
pub fn shift_to_positive_constant(f: &MvPoly, seed: u64, k: u32) -> ShiftOutcome {
    assert!(!f.is_zero() && k >= 2);
    let n = f.nvars();
    let hi = (k as i64) * (f.degree().max(1) as i64);
    let mut g = SplitMix64::derived(seed, SHIFT_STREAM);
    loop {
        let c: Vec<i64> = (0..n).map(|_| g.range_inclusive(1, hi)).collect();
        let cr: Vec<Rational> = c.iter().map(|&v| rat(v)).collect();
        let v = f.eval(&cr).expect("dimension matches");
        if v.is_zero() {
            continue;
        }
        if v.is_negative() {
            return ShiftOutcome::Negative(Witness { point: cr, value: v });
        }
        return ShiftOutcome::Shifted {
            g: f.translate(&cr),
            shift: c,
        };
    }
}

/// Rational point on the unit sphere `S^{n-1}` from `n-1` parameters
/// (inverse stereographic projection from the pole `-e_1`).
pub fn sphere_point(params: &[Rational]) -> Vec<Rational> {
    let q = norm2_sq(params);
    let den = Rational::one() + &q;
    let mut p = vec![(Rational::one() - &q) / &den];
    p.extend(params.iter().map(|t| rat(2) * t / &den));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly_auto;

    fn poly(s: &str, n: usize) -> MvPoly {
        parse_poly_auto(s, n).unwrap()
    }

    #[test]
    fn transform_of_x2_plus_1() {
        let f = poly("x1^2 + 1", 1);
        let s = stereo_transform(&f);
        let oracle = &sphere_form(1).pow(2) + &poly("4*x1^2", 1);
        assert_eq!(s.transformed, oracle);
        assert_eq!(s.transformed, poly("x1^4 + 2*x1^2 + 1", 1));
        assert_eq!(s.source_degree, 2);
    }

    #[test]
    fn transform_of_shifted_sphere_example() {
        let f = poly("x1^2 + x2^2 + 4", 2);
        let s = stereo_transform(&f).transformed;
        let expected = &poly("4*x1^2 + 4*x2^2", 2) + &sphere_form(2).pow(2).scale(&rat(4));
        assert_eq!(s, expected);
    }

    #[test]
    fn homogeneous_input_is_scaled() {
        let f = poly("x1^3*x2 - 2*x1*x2^3", 2);
        let scaled = f.compose(&[poly("2*x1", 2), poly("2*x2", 2)]);
        assert_eq!(stereo_transform(&f).transformed, scaled);
    }

    #[test]
    fn transport_off_sphere() {
        let f = poly("x1^2 - 4*x1 + 3", 1);
        let s = stereo_transform(&f).transformed;
        let x = (-64..=64)
            .map(|k| Rational::new(BigInt::from(k), BigInt::from(8)))
            .find(|x| s.eval(std::slice::from_ref(x)).unwrap().is_negative())
            .expect("grid contains a negative value");
        let w = witness_transport(&f, &[x]).unwrap();
        assert!(w.value.is_negative());
        assert_eq!(f.eval(&w.point).unwrap(), w.value);
    }

    #[test]
    fn transport_on_sphere() {
        let f = poly("-x1^4 + x2^2 + 1", 2);
        let x = [rat(1), rat(0)];
        let s = stereo_transform(&f).transformed;
        assert_eq!(s.eval(&x).unwrap(), rat(-16));
        let w = witness_transport(&f, &x).unwrap();
        assert!(w.value.is_negative());
        // C = 2^{n+2d-1} H(x)^{(n+1)d-1} H(f) = 2^9
        assert_eq!(w.point, vec![rat(1024), rat(0)]);
    }

    #[test]
    fn transport_rejects_nonnegative() {
        let f = poly("x1^2 + 1", 1);
        assert!(matches!(
            witness_transport(&f, &[rat(0)]),
            Err(StereoError::NotNegative { .. })
        ));
    }

    #[test]
    fn shift_cases() {
        let f = poly("x1^2 - 1", 1);
        match shift_to_positive_constant(&f, 7, 4) {
            ShiftOutcome::Shifted { g, shift } => {
                assert!(shift[0] >= 2);
                assert!(g.constant_term() > Rational::zero());
            }
            ShiftOutcome::Negative(_) => panic!("x^2-1 is nonnegative on the grid"),
        }
        let h = poly("-x1^2", 1);
        assert!(matches!(
            shift_to_positive_constant(&h, 7, 4),
            ShiftOutcome::Negative(_)
        ));
    }

    #[test]
    fn sphere_points_have_unit_norm() {
        let p = sphere_point(&[rational::ratio(1, 3), rational::ratio(-2, 5)]);
        assert_eq!(norm2_sq(&p), Rational::one());
    }
}
