//! Weighted sums of squares for nonnegative univariate polynomials:
//! perturb by `ε Θ_m`, pair complex-conjugate roots numerically, round, and
//! absorb the exact remainder into monomial squares.

use super::bigfloat::{BigFloat, Complex};
use super::sturm::{count_real_roots, is_nonneg_univariate, squarefree_decomposition};
use crate::poly::rational::{pow2, rat, Rational};
use crate::poly::UvPoly;
use num_traits::{One, Signed, Zero};

/// `Σ_j w_j s_j^2` with every `w_j > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSos {
    pub weights: Vec<Rational>,
    pub squares: Vec<UvPoly>,
}

impl WeightedSos {
    pub fn expand(&self) -> UvPoly {
        self.weights
            .iter()
            .zip(&self.squares)
            .fold(UvPoly::zero(), |acc, (w, s)| &acc + &(s * s).scale(w))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights_positive(&self) -> bool {
        self.weights.iter().all(Signed::is_positive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnisosError {
    #[error("polynomial is not nonnegative")]
    NotNonnegative,
    #[error("zero polynomial has no weighted decomposition")]
    ZeroPolynomial,
    #[error("root approximation did not reach the required accuracy within {bits} bits; retry with a larger cap")]
    PrecisionCap { bits: u64 },
}

/// Default cap on the working precision in bits.
pub const DEFAULT_PRECISION_CAP: u64 = 1 << 20;

pub fn weighted_sos_decompose(r: &UvPoly) -> Result<WeightedSos, UnisosError> {
    weighted_sos_decompose_with_cap(r, DEFAULT_PRECISION_CAP)
}

pub fn weighted_sos_decompose_with_cap(r: &UvPoly, cap: u64) -> Result<WeightedSos, UnisosError> {
    if r.is_zero() {
        return Err(UnisosError::ZeroPolynomial);
    }
    if !is_nonneg_univariate(r) {
        return Err(UnisosError::NotNonnegative);
    }
    let lc = r.leading_coeff();
    if r.is_constant() {
        return Ok(WeightedSos {
            weights: vec![lc],
            squares: vec![UvPoly::one()],
        });
    }
    // r = lc · g^2 · h with h squarefree and free of real roots
    let mut g = UvPoly::one();
    let mut h = UvPoly::one();
    for (i, f) in squarefree_decomposition(r).iter().enumerate() {
        let mult = i as u32 + 1;
        if mult / 2 > 0 {
            g = &g * &f.pow(mult / 2);
        }
        if mult % 2 == 1 {
            h = &h * f;
        }
    }
    if h.is_constant() {
        return Ok(WeightedSos {
            weights: vec![lc],
            squares: vec![g],
        });
    }
    if let Some(d) = diagonal(r) {
        return Ok(d);
    }
    // keep the scale of r on the factor that gets perturbed
    let inner = decompose_positive(&h.scale(&lc), cap)?;
    Ok(WeightedSos {
        weights: inner.weights,
        squares: inner.squares.iter().map(|s| s * &g).collect(),
    })
}

/// Even-only polynomial with nonnegative coefficients.
fn diagonal(r: &UvPoly) -> Option<WeightedSos> {
    let c = r.coeffs();
    if c.iter()
        .enumerate()
        .any(|(k, v)| (k % 2 == 1 && !v.is_zero()) || v.is_negative())
    {
        return None;
    }
    let mut out = WeightedSos {
        weights: Vec::new(),
        squares: Vec::new(),
    };
    for k in (0..c.len()).step_by(2).rev() {
        if !c[k].is_zero() {
            out.weights.push(c[k].clone());
            out.squares.push(UvPoly::monomial(k / 2, Rational::one()));
        }
    }
    Some(out)
}

/// `Θ_m = Σ_{i=0}^{m} T^{2i}`.
pub fn theta(m: usize) -> UvPoly {
    UvPoly::new(
        (0..=2 * m)
            .map(|k| if k % 2 == 0 { Rational::one() } else { Rational::zero() })
            .collect(),
    )
}

/// Largest dyadic `ε = 2^{-k} ≤ 1` with `h − εΘ_m` of degree `2m`, positive
/// leading coefficient and no real roots. Binary search over `k`: gallop
/// `k = 0, 1, 2, 4, …` to bracket, then bisect.
pub fn perturbation_margin(h: &UvPoly) -> Rational {
    let m = h.deg() / 2;
    let th = theta(m);
    let ok = |k: u64| {
        let he = h - &th.scale(&pow2(-(k as i64)));
        he.deg() == 2 * m && he.leading_coeff().is_positive() && count_real_roots(&he) == 0
    };
    if ok(0) {
        return Rational::one();
    }
    let (mut bad, mut good) = (0u64, 1u64);
    while !ok(good) {
        bad = good;
        good *= 2;
    }
    while good - bad > 1 {
        let mid = (bad + good) / 2;
        if ok(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    pow2(-(good as i64))
}

fn decompose_positive(h: &UvPoly, cap: u64) -> Result<WeightedSos, UnisosError> {
    let m = h.deg() / 2;
    let eps = perturbation_margin(h);
    let he = h - &theta(m).scale(&eps);
    let c = he.leading_coeff();
    let monic = he.scale(&c.recip());
    let mut prec: u64 = 64;
    let mut roots: Option<Vec<Complex>> = None;
    while prec <= cap {
        let (zs, _) = aberth_sweeps(&monic, prec, roots.as_deref(), 60 + 4 * monic.deg());
        let upper: Vec<&Complex> = zs.iter().filter(|z| !z.im.is_negative() && !z.im.is_zero()).collect();
        if upper.len() == m {
            let (s1, s2) = conjugate_half(&upper, prec);
            let approx = &(&s1 * &s1) + &(&s2 * &s2);
            let u = h - &approx.scale(&c);
            if let Some(rest) = absorb(&u) {
                let mut weights = vec![c.clone()];
                let mut squares = vec![s1];
                if !s2.is_zero() {
                    weights.push(c.clone());
                    squares.push(s2);
                }
                weights.extend(rest.weights);
                squares.extend(rest.squares);
                return Ok(WeightedSos { weights, squares });
            }
        }
        roots = Some(zs);
        prec *= 2;
    }
    Err(UnisosError::PrecisionCap { bits: cap })
}

/// Real and imaginary parts of `Π (T − z)` over the given roots.
fn conjugate_half(upper: &[&Complex], prec: u64) -> (UvPoly, UvPoly) {
    let mut q: Vec<Complex> = vec![Complex::real(BigFloat::from_rational(&Rational::one(), prec))];
    for z in upper {
        let mut next = vec![Complex::zero(); q.len() + 1];
        for (k, a) in q.iter().enumerate() {
            next[k + 1] = next[k + 1].add(a, prec);
            let t = a.mul(z, prec);
            next[k] = next[k].sub(&t, prec);
        }
        q = next;
    }
    let re = UvPoly::new(q.iter().map(|a| a.re.to_rational()).collect());
    let im = UvPoly::new(q.iter().map(|a| a.im.to_rational()).collect());
    (re, im)
}

/// Writes `u` as a weighted sum of monomial squares and squares
/// `(T^{i+1} ± T^i)^2`, if the even coefficients leave room for the odd ones.
fn absorb(u: &UvPoly) -> Option<WeightedSos> {
    let n = u.deg() + 1;
    let mut even: Vec<Rational> = (0..n)
        .map(|k| if k % 2 == 0 { u.coeff(k) } else { Rational::zero() })
        .collect();
    even.push(Rational::zero());
    let mut out = WeightedSos {
        weights: Vec::new(),
        squares: Vec::new(),
    };
    for k in (1..n).step_by(2) {
        let ck = u.coeff(k);
        if ck.is_zero() {
            continue;
        }
        let half = ck.abs() / rat(2);
        even[k - 1] -= &half;
        even[k + 1] -= &half;
        let i = k / 2;
        let sign = if ck.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut v = vec![Rational::zero(); i + 2];
        v[i + 1] = Rational::one();
        v[i] = sign;
        out.weights.push(half);
        out.squares.push(UvPoly::new(v));
    }
    if even.iter().any(Signed::is_negative) {
        return None;
    }
    for (k, w) in even.into_iter().enumerate() {
        if k % 2 == 0 && w.is_positive() {
            out.weights.push(w);
            out.squares.push(UvPoly::monomial(k / 2, Rational::one()));
        }
    }
    Some(out)
}

fn horner(coeffs: &[BigFloat], z: &Complex, prec: u64) -> (Complex, Complex) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z, prec).add(&p, prec);
        p = p.mul(z, prec).add(&Complex::real(c.clone()), prec);
    }
    (p, dp)
}

/// `lg Σ |a_k| |z|^k`, the scale of the rounding error of [`horner`].
fn eval_scale(abs_coeffs: &[BigFloat], z: &Complex, prec: u64) -> i64 {
    let r = z.re.abs().add(&z.im.abs(), prec);
    let mut acc = BigFloat::zero();
    for c in abs_coeffs.iter().rev() {
        acc = acc.mul(&r, prec).add(c, prec);
    }
    acc.log2()
}

/// Simultaneous approximation of all complex roots of a monic polynomial by
/// Aberth's iteration; `None` if it does not settle.
pub fn aberth(p: &UvPoly, prec: u64, start: Option<&[Complex]>) -> Option<Vec<Complex>> {
    let (z, converged) = aberth_sweeps(p, prec, start, 100 + 20 * p.deg());
    converged.then_some(z)
}

/// At most `max_sweeps` Aberth sweeps; roots whose correction drops below
/// the working precision are frozen. Returns the approximations and whether
/// all of them froze.
pub fn aberth_sweeps(p: &UvPoly, prec: u64, start: Option<&[Complex]>, max_sweeps: usize) -> (Vec<Complex>, bool) {
    let n = p.deg();
    let coeffs: Vec<BigFloat> = p.coeffs().iter().map(|c| BigFloat::from_rational(c, prec)).collect();
    let mut z: Vec<Complex> = match start {
        Some(s) if s.len() == n => s.to_vec(),
        _ => initial_guesses(p, prec),
    };
    let abs_coeffs: Vec<BigFloat> = coeffs.iter().map(BigFloat::abs).collect();
    let tol = prec as i64 - 12;
    let one = Complex::real(BigFloat::from_rational(&Rational::one(), prec));
    let mut frozen = vec![false; n];
    for _ in 0..max_sweeps {
        let mut done = true;
        for k in 0..n {
            if frozen[k] {
                continue;
            }
            let (pv, dpv) = horner(&coeffs, &z[k], prec);
            if pv.is_zero() {
                frozen[k] = true;
                continue;
            }
            done = false;
            // the value is at rounding level: one more step cannot help
            let at_noise = pv.log2() <= eval_scale(&abs_coeffs, &z[k], prec) - tol;
            if dpv.is_zero() {
                // nudge off a critical point
                let bump = Complex::real(BigFloat::from_f64(1e-3, prec));
                z[k] = z[k].add(&bump, prec);
                continue;
            }
            let ratio = pv.div(&dpv, prec);
            let mut s = Complex::zero();
            for j in 0..n {
                if j != k {
                    let d = z[k].sub(&z[j], prec);
                    if !d.is_zero() {
                        s = s.add(&d.recip(prec), prec);
                    }
                }
            }
            let den = one.sub(&ratio.mul(&s, prec), prec);
            let w = if den.is_zero() { ratio } else { ratio.div(&den, prec) };
            let scale = z[k].log2().max(0);
            if at_noise || w.log2() <= scale - tol {
                frozen[k] = true;
            }
            z[k] = z[k].sub(&w, prec);
        }
        if done {
            return (z, true);
        }
    }
    let all = frozen.iter().all(|&f| f);
    (z, all)
}

/// Points on the circles given by the upper convex hull of
/// `(k, log2 |a_k|)`; each hull edge from `i` to `j` carries `j - i` roots of
/// roughly equal modulus.
fn initial_guesses(p: &UvPoly, prec: u64) -> Vec<Complex> {
    let n = p.deg();
    let pts: Vec<(usize, f64)> = (0..=n)
        .filter_map(|k| {
            let c = p.coeff(k);
            (!c.is_zero()).then(|| (k, BigFloat::from_rational(&c, 64).log2() as f64))
        })
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &q in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (q.1 - a.1) - (b.1 - a.1) * (q.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let mut z = Vec::with_capacity(n);
    // roots at zero when the low coefficients vanish
    let tiny = BigFloat::from_rational(&crate::poly::rational::pow2(-(prec as i64)), prec);
    for k in 0..hull[0].0 {
        let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
        z.push(Complex {
            re: BigFloat::from_f64(angle.cos(), prec).mul(&tiny, prec),
            im: BigFloat::from_f64(angle.sin(), prec).mul(&tiny, prec),
        });
    }
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let m = j - i;
        let lr = (li - lj) / m as f64;
        let radius = BigFloat::from_rational(&crate::poly::rational::pow2(lr.round() as i64), prec);
        for k in 0..m {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / m as f64 + 0.4 + i as f64;
            z.push(Complex {
                re: BigFloat::from_f64(angle.cos(), prec).mul(&radius, prec),
                im: BigFloat::from_f64(angle.sin(), prec).mul(&radius, prec),
            });
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::ratio;

    #[test]
    fn perfect_square_short_circuit() {
        let r = UvPoly::from_ints(&[1, 0, 2, 0, 1]);
        let s = weighted_sos_decompose(&r).unwrap();
        assert_eq!(s.weights, vec![rat(1)]);
        assert_eq!(s.squares, vec![UvPoly::from_ints(&[1, 0, 1])]);
    }

    #[test]
    fn diagonal_short_circuit() {
        let s = weighted_sos_decompose(&UvPoly::from_ints(&[2, 0, 2])).unwrap();
        assert_eq!(s.weights, vec![rat(2), rat(2)]);
        assert_eq!(s.squares, vec![UvPoly::x(), UvPoly::one()]);
    }

    #[test]
    fn general_positive_polynomials() {
        for coeffs in [
            vec![rat(2), rat(-2), rat(1)],
            vec![rat(5), rat(-3), rat(1), rat(-1), rat(1)],
            vec![ratio(1, 3), rat(1), rat(2), rat(0), ratio(7, 2), rat(-1), rat(1)],
        ] {
            let r = UvPoly::new(coeffs);
            let s = weighted_sos_decompose(&r).unwrap();
            assert!(s.weights_positive());
            assert_eq!(s.expand(), r);
        }
    }

    #[test]
    fn with_real_double_roots() {
        let g = UvPoly::from_ints(&[-1, 1]);
        let h = UvPoly::from_ints(&[3, 1, 1]);
        let r = (&(&g * &g) * &h).scale(&rat(4));
        let s = weighted_sos_decompose(&r).unwrap();
        assert_eq!(s.expand(), r);
    }

    #[test]
    fn rejects_negative_input() {
        assert_eq!(
            weighted_sos_decompose(&UvPoly::from_ints(&[-1, 0, 1])),
            Err(UnisosError::NotNonnegative)
        );
        assert_eq!(
            weighted_sos_decompose(&UvPoly::zero()),
            Err(UnisosError::ZeroPolynomial)
        );
    }
}
