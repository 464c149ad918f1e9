//! SOS-RUR: certificate of nonnegativity or a negative point for a
//! polynomial whose gradient ideal is zero-dimensional.

use super::CertifyError;
use crate::poly::intpoly;
use crate::poly::rational::{reduced, Rational};
use crate::poly::{ExpVec, MvPoly, UvPoly};
use crate::unisos::sturm::{bisect, count_roots_in, squarefree_part};
use crate::unisos::{is_nonneg_univariate, isolate_real_roots, weighted_sos_decompose, RootInterval, WeightedSos};
use crate::zerodim::rur::substitute_parametrization;
use crate::zerodim::{compute_rur, groebner_basis, quotient_basis, Rur, RurOutcome};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SosRurOutcome {
    Nonneg {
        rur: Rur,
        sos: WeightedSos,
        quotients: Vec<MvPoly>,
    },
    /// `g(point) = value < 0`.
    Negative { point: Vec<Rational>, value: Rational },
}

/// Decides `g ≥ 0` for a coercive `g` of even degree with a zero-dimensional
/// gradient ideal.
pub fn sos_rur(g: &MvPoly, seed: u64) -> Result<SosRurOutcome, CertifyError> {
    let grad = g.gradient();
    let gb = groebner_basis(&grad);
    let q = quotient_basis(&gb).map_err(|_| CertifyError::PositiveDimensional)?;
    let rur = match compute_rur(&gb, &q, seed) {
        RurOutcome::Found(r) => r,
        RurOutcome::NotRadical => return Err(CertifyError::NotRadical),
    };
    let r0p = rur.r0_prime();
    if g.nvars() == 1 {
        return univariate(g, rur, &r0p);
    }
    let r = substitute_parametrization(g, &r0p, &rur.r, None);
    if is_nonneg_univariate(&r) {
        let sos = if r.is_zero() {
            WeightedSos {
                weights: Vec::new(),
                squares: Vec::new(),
            }
        } else {
            weighted_sos_decompose(&r).map_err(CertifyError::Unisos)?
        };
        let quotients = parametrization_quotients(g, &r0p, &rur.r);
        return Ok(SosRurOutcome::Nonneg { rur, sos, quotients });
    }
    let (point, value) = negative_point(g, &rur, &r);
    Ok(SosRurOutcome::Negative { point, value })
}

/// One variable: decide and decompose `g` directly, then transport each
/// square through `X = R_1/R0'`. Avoids the expensive exact work on the
/// resolvent, whose coefficients are far larger than those of `g`.
fn univariate(g: &MvPoly, rur: Rur, r0p: &UvPoly) -> Result<SosRurOutcome, CertifyError> {
    let guv = UvPoly::from_mvpoly(g, 0).expect("one variable");
    if !is_nonneg_univariate(&guv) {
        let (point, value) = critical_negative_point(g, &rur).unwrap_or_else(|| {
            let (x, v) = univariate_negative_point(&guv);
            (vec![x], v)
        });
        return Ok(SosRurOutcome::Negative { point, value });
    }
    let d = g.degree() as usize;
    let base = if guv.is_zero() {
        WeightedSos {
            weights: Vec::new(),
            squares: Vec::new(),
        }
    } else {
        weighted_sos_decompose(&guv).map_err(CertifyError::Unisos)?
    };
    let half = d / 2;
    // S_j = δ^{-half} Σ_k s_jk B^k A^{half-k} with A = δ R0', B = δ R_1
    let delta = crate::poly::rational::denominator_lcm(r0p.coeffs().iter().chain(rur.r[0].coeffs()));
    let ints = |p: &UvPoly| -> Vec<BigInt> { p.coeffs().iter().map(|c| c.numer() * (&delta / c.denom())).collect() };
    let (a, b) = (ints(r0p), ints(&rur.r[0]));
    let mut bpow = vec![vec![BigInt::one()]];
    let mut apow = vec![vec![BigInt::one()]];
    for _ in 0..half {
        bpow.push(intpoly::mul(bpow.last().unwrap(), &b));
        apow.push(intpoly::mul(apow.last().unwrap(), &a));
    }
    let mixed: Vec<Vec<BigInt>> = (0..=half).map(|k| intpoly::mul(&bpow[k], &apow[half - k])).collect();
    let dh = delta.pow(half as u32);
    let squares = base
        .squares
        .iter()
        .map(|s| {
            assert!(s.degree().unwrap_or(0) <= half, "square of degree above half");
            let (si, sd) = s.to_integers();
            let mut acc = Vec::new();
            for (k, c) in si.iter().enumerate() {
                if !c.is_zero() {
                    intpoly::add_scaled(&mut acc, &mixed[k], c);
                }
            }
            UvPoly::from_integers(acc, &(&sd * &dh))
        })
        .collect();
    let sos = WeightedSos {
        weights: base.weights,
        squares,
    };
    let quotients = parametrization_quotients(g, r0p, &rur.r);
    Ok(SosRurOutcome::Nonneg { rur, sos, quotients })
}

/// Bisections spent near each critical point before giving up on it.
const CRITICAL_REFINEMENTS: usize = 64;

/// A rational point near a critical point where `g` is negative.
fn critical_negative_point(g: &MvPoly, rur: &Rur) -> Option<(Vec<Rational>, Rational)> {
    for mut iv in isolate_real_roots(&rur.r0) {
        for _ in 0..=CRITICAL_REFINEMENTS {
            let t = if iv.is_exact() { iv.lo.clone() } else { iv.midpoint() };
            if let Some(p) = parametrized_point(rur, &t) {
                let v = g.eval(&p).expect("dimension matches");
                if v.is_negative() {
                    return Some((p, v));
                }
            }
            if iv.is_exact() {
                break;
            }
            iv = bisect(&rur.r0, &iv);
        }
    }
    None
}

/// Rational `x` with `p(x) < 0` for a polynomial taking negative values.
fn univariate_negative_point(p: &UvPoly) -> (Rational, Rational) {
    let roots = isolate_real_roots(&squarefree_part(p));
    let two = Rational::from_integer(2.into());
    let mut candidates = Vec::new();
    if let (Some(first), Some(last)) = (roots.first(), roots.last()) {
        candidates.push(&first.lo - Rational::one());
        candidates.push(&last.hi + Rational::one());
    } else {
        candidates.push(Rational::zero());
    }
    for w in roots.windows(2) {
        candidates.push((&w[0].hi + &w[1].lo) / &two);
    }
    for x in candidates {
        let v = p.eval(&x);
        if v.is_negative() {
            return (x, v);
        }
    }
    unreachable!("a sign change lies between consecutive roots")
}

/// Quotients `q_i` over `(T, X_1, …, X_n)` with
/// `(R0')^D g − r = Σ (R0' X_i − R_i) q_i`, where `r` is the unreduced
/// substitution. For each monomial the difference `Π A_j^{α_j} − Π B_j^{α_j}`
/// with `A_j = R0' X_j`, `B_j = R_j` telescopes one variable at a time.
pub fn parametrization_quotients(g: &MvPoly, r0p: &UvPoly, r: &[UvPoly]) -> Vec<MvPoly> {
    let n = r.len();
    if n == 1 {
        return vec![univariate_quotient(g, r0p, &r[0])];
    }
    telescoped_quotients(g, r0p, r)
}

fn telescoped_quotients(g: &MvPoly, r0p: &UvPoly, r: &[UvPoly]) -> Vec<MvPoly> {
    let n = r.len();
    let nv = n + 1;
    let d = g.degree();
    let p = r0p.to_mvpoly(nv, 0);
    let a: Vec<MvPoly> = (0..n).map(|i| &p * &MvPoly::var(nv, i + 1)).collect();
    let b: Vec<MvPoly> = r.iter().map(|ri| ri.to_mvpoly(nv, 0)).collect();
    let mut ppow = vec![MvPoly::one(nv)];
    let mut apow: Vec<Vec<MvPoly>> = vec![vec![MvPoly::one(nv)]; n];
    let mut bpow: Vec<Vec<MvPoly>> = vec![vec![MvPoly::one(nv)]; n];
    let grow = |v: &mut Vec<MvPoly>, base: &MvPoly, k: usize| {
        while v.len() <= k {
            let next = v.last().unwrap() * base;
            v.push(next);
        }
    };
    let mut q = vec![MvPoly::zero(nv); n];
    for (e, c) in g.terms() {
        let ex = e.exponents();
        grow(&mut ppow, &p, (d - e.total_degree()) as usize);
        for i in 0..n {
            grow(&mut apow[i], &a[i], ex[i] as usize);
            grow(&mut bpow[i], &b[i], ex[i] as usize);
        }
        let lead = ppow[(d - e.total_degree()) as usize].scale(c);
        for i in 0..n {
            let ai = ex[i] as usize;
            if ai == 0 {
                continue;
            }
            let mut t = lead.clone();
            for j in 0..i {
                if ex[j] > 0 {
                    t = &t * &bpow[j][ex[j] as usize];
                }
            }
            for j in i + 1..n {
                if ex[j] > 0 {
                    t = &t * &apow[j][ex[j] as usize];
                }
            }
            let mut mid = MvPoly::zero(nv);
            for k in 0..ai {
                mid = &mid + &(&apow[i][k] * &bpow[i][ai - 1 - k]);
            }
            q[i] = &q[i] + &(&t * &mid);
        }
    }
    q
}

/// One variable: the coefficient of `X^k` in `q` is `P^k h_k` with
/// `h_D = 0` and `h_{k-1} = B h_k + a_k P^{D-k}`.
fn univariate_quotient(g: &MvPoly, p: &UvPoly, b: &UvPoly) -> MvPoly {
    let guv = UvPoly::from_mvpoly(g, 0).expect("one variable");
    let d = g.degree() as usize;
    let mut ppow = vec![UvPoly::one()];
    for _ in 0..d {
        ppow.push(ppow.last().unwrap() * p);
    }
    let mut q = MvPoly::zero(2);
    let mut h = UvPoly::zero();
    for k in (1..=d).rev() {
        if !h.is_zero() {
            let c = &ppow[k] * &h;
            q = &q + &(&c.to_mvpoly(2, 0) * &MvPoly::var(2, 1).pow(k as u32));
        }
        h = &(b * &h) + &ppow[d - k].scale(&guv.coeff(k));
    }
    if !h.is_zero() {
        q = &q + &h.to_mvpoly(2, 0);
    }
    q
}

/// `(R_1(t)/R0'(t), …, R_n(t)/R0'(t))`, or `None` where `R0'(t) = 0`.
pub fn parametrized_point(rur: &Rur, t: &Rational) -> Option<Vec<Rational>> {
    let den = rur.r0_prime().eval(t);
    if den.is_zero() {
        return None;
    }
    Some(rur.r.iter().map(|ri| ri.eval(t) / &den).collect())
}

/// Sign of `r` at the unique root of `r0` in `iv`.
fn sign_at_root(r0: &UvPoly, r: &UvPoly, iv: &RootInterval) -> (i32, RootInterval) {
    if iv.is_exact() {
        return (r.sign_at(&iv.lo), iv.clone());
    }
    let common = r0.gcd(r);
    if !common.is_constant() && count_roots_in(&common, &iv.lo, &iv.hi) > 0 {
        return (0, iv.clone());
    }
    let rs = squarefree_part(r);
    let mut iv = iv.clone();
    loop {
        if iv.is_exact() {
            return (r.sign_at(&iv.lo), iv);
        }
        if rs.is_constant() || count_roots_in(&rs, &iv.lo, &iv.hi) == 0 {
            return (r.sign_at(&iv.hi), iv);
        }
        iv = bisect(r0, &iv);
    }
}

/// Rational point with `g < 0`, taken near a real critical point with a
/// negative critical value.
fn negative_point(g: &MvPoly, rur: &Rur, r: &UvPoly) -> (Vec<Rational>, Rational) {
    for iv in isolate_real_roots(&rur.r0) {
        let (s, mut iv) = sign_at_root(&rur.r0, r, &iv);
        if s >= 0 {
            continue;
        }
        loop {
            let t = if iv.is_exact() { iv.lo.clone() } else { iv.midpoint() };
            if let Some(p) = parametrized_point(rur, &t) {
                let v = g.eval(&p).expect("dimension matches");
                if v.is_negative() {
                    return (p, v);
                }
            }
            assert!(!iv.is_exact(), "exact critical point with negative value");
            iv = bisect(&rur.r0, &iv);
        }
    }
    // r(t) = R0'(t)^D g(p(t)) wherever R0'(t) ≠ 0, so any t with r(t) < 0 works.
    let mut candidates: Vec<Rational> = Vec::new();
    let roots = isolate_real_roots(&squarefree_part(r));
    let bound = r.cauchy_bound() + Rational::one();
    candidates.push(-bound.clone());
    candidates.push(bound);
    for w in roots.windows(2) {
        candidates.push((&w[0].hi + &w[1].lo) / Rational::from_integer(2.into()));
    }
    for iv in &roots {
        candidates.push(iv.lo.clone());
        candidates.push(iv.hi.clone());
    }
    let mut step = Rational::one();
    loop {
        for t in &candidates {
            for c in [t.clone(), t + &step, t - &step] {
                if r.eval(&c).is_negative() {
                    if let Some(p) = parametrized_point(rur, &c) {
                        let v = g.eval(&p).expect("dimension matches");
                        if v.is_negative() {
                            return (p, v);
                        }
                    }
                }
            }
        }
        step /= Rational::from_integer(2.into());
    }
}

/// Expands `(R0')^D g − Σ w_j s_j^2 − Σ (R0' X_i − R_i) q_i` over `(T, X)`.
/// Each `X` coefficient is a sum of integer vectors over denominators,
/// normalized once.
pub fn identity_residual(g: &MvPoly, rur: &Rur, sos: &WeightedSos, quotients: &[MvPoly], d: u32) -> MvPoly {
    type Frac = (Vec<BigInt>, BigInt);
    let n = rur.nvars();
    let (p, pd) = rur.r0_prime().to_integers();
    let mut acc: BTreeMap<Vec<u32>, Vec<Frac>> = BTreeMap::new();
    let mut p_d = vec![BigInt::one()];
    for _ in 0..d {
        p_d = intpoly::mul(&p_d, &p);
    }
    let pd_d = pd.pow(d);
    for (e, c) in g.terms() {
        let mut num = p_d.clone();
        intpoly::scale(&mut num, c.numer());
        acc.entry(e.exponents().to_vec())
            .or_default()
            .push((num, &pd_d * c.denom()));
    }
    for (w, s) in sos.weights.iter().zip(&sos.squares) {
        let (si, sd) = s.to_integers();
        let mut num = intpoly::mul(&si, &si);
        intpoly::scale(&mut num, &-w.numer());
        acc.entry(vec![0; n]).or_default().push((num, w.denom() * &sd * &sd));
    }
    for (i, qi) in quotients.iter().enumerate() {
        let (ri, rd) = rur.r[i].to_integers();
        for (xe, c) in split_t(qi) {
            let (ci, cd) = c.to_integers();
            let mut up = xe.clone();
            up[i] += 1;
            let mut num = intpoly::mul(&p, &ci);
            intpoly::scale(&mut num, &-BigInt::one());
            acc.entry(up).or_default().push((num, &pd * &cd));
            acc.entry(xe).or_default().push((intpoly::mul(&ri, &ci), &rd * &cd));
        }
    }
    let mut out = MvPoly::zero(n + 1);
    for (xe, parts) in acc {
        let (num, den) = intpoly::sum_fractions(&parts);
        for (k, ck) in num.into_iter().enumerate() {
            if !ck.is_zero() {
                let mut e = vec![k as u32];
                e.extend_from_slice(&xe);
                out.add_term(ExpVec::new(e), reduced(ck, den.clone()));
            }
        }
    }
    out
}

/// Groups a polynomial in `(T, X)` by its `X` exponent.
fn split_t(q: &MvPoly) -> BTreeMap<Vec<u32>, UvPoly> {
    let mut parts: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
    for (e, c) in q.terms() {
        let ex = e.exponents();
        let v = parts.entry(ex[1..].to_vec()).or_default();
        let k = ex[0] as usize;
        if v.len() <= k {
            v.resize(k + 1, Rational::zero());
        }
        v[k] = c.clone();
    }
    parts.into_iter().map(|(k, v)| (k, UvPoly::new(v))).collect()
}
