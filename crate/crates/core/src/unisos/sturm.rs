//! Squarefree decomposition, Sturm sequences, and real-root isolation.

use crate::poly::rational::{self, rat, Rational};
use crate::poly::UvPoly;
use num_traits::{Signed, Zero};

/// Yun's algorithm: monic `f_1, f_2, …` with `p = lc(p) · Π f_i^i`
/// (entries may be 1).
pub fn squarefree_decomposition(p: &UvPoly) -> Vec<UvPoly> {
    if p.is_constant() {
        return Vec::new();
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0).monic();
    let mut c = dp.div_exact(&a0).scale(&p.leading_coeff().recip());
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.div_exact(&a).monic();
        c = d.div_exact(&a);
        d = &c - &b.derivative();
        out.push(a);
    }
    out
}

/// Squarefree part (monic).
pub fn squarefree_part(p: &UvPoly) -> UvPoly {
    if p.is_constant() {
        return UvPoly::one();
    }
    p.div_exact(&p.gcd(&p.derivative())).monic()
}

/// Sturm sequence of `p`, with positive rescalings to keep sizes small.
pub fn sturm_sequence(p: &UvPoly) -> Vec<UvPoly> {
    let mut seq = vec![positive_rescale(p), positive_rescale(&p.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(positive_rescale(&-&r));
    }
    seq
}

/// Positive rational multiple of `p` with coprime integer coefficients.
fn positive_rescale(p: &UvPoly) -> UvPoly {
    let q = p.primitive();
    if q.leading_coeff().signum() == p.leading_coeff().signum() {
        q
    } else {
        -&q
    }
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn changes_at(seq: &[UvPoly], x: &Rational) -> usize {
    sign_changes(seq.iter().map(|q| q.sign_at(x)))
}

fn changes_at_infinity(seq: &[UvPoly], positive: bool) -> usize {
    sign_changes(seq.iter().map(|q| {
        let s = rational::sign(&q.leading_coeff());
        if !positive && q.deg() % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &UvPoly) -> usize {
    if p.is_constant() {
        return 0;
    }
    let seq = sturm_sequence(p);
    changes_at_infinity(&seq, false) - changes_at_infinity(&seq, true)
}

/// Number of distinct real roots in `(a, b]`.
pub fn count_roots_in(p: &UvPoly, a: &Rational, b: &Rational) -> usize {
    if p.is_constant() {
        return 0;
    }
    let seq = sturm_sequence(p);
    changes_at(&seq, a) - changes_at(&seq, b)
}

/// Interval `(lo, hi]` containing exactly one root; `lo == hi` marks an
/// exactly known rational root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Isolating intervals for the distinct real roots of `p`, ascending.
pub fn isolate_real_roots(p: &UvPoly) -> Vec<RootInterval> {
    if p.is_constant() {
        return Vec::new();
    }
    let seq = sturm_sequence(p);
    let b = p.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let k = changes_at(&seq, &lo) - changes_at(&seq, &hi);
        match k {
            0 => {}
            1 => {
                if p.eval(&hi).is_zero() {
                    out.push(RootInterval { lo: hi.clone(), hi });
                } else {
                    out.push(RootInterval { lo, hi });
                }
            }
            _ => {
                let mid = (&lo + &hi) / rat(2);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Halves an isolating interval of a squarefree `p`.
pub fn bisect(p: &UvPoly, iv: &RootInterval) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let mid = iv.midpoint();
    if p.eval(&mid).is_zero() {
        return RootInterval {
            lo: mid.clone(),
            hi: mid,
        };
    }
    let s_hi = p.sign_at(&iv.hi);
    let s_mid = p.sign_at(&mid);
    if s_hi == 0 || s_mid != s_hi {
        RootInterval {
            lo: mid,
            hi: iv.hi.clone(),
        }
    } else {
        RootInterval {
            lo: iv.lo.clone(),
            hi: mid,
        }
    }
}

/// Exact decision of `r(t) ≥ 0` for all real `t`.
pub fn is_nonneg_univariate(r: &UvPoly) -> bool {
    if r.is_zero() {
        return true;
    }
    if r.is_constant() {
        return r.leading_coeff().is_positive();
    }
    if r.deg() % 2 == 1 || r.leading_coeff().is_negative() {
        return false;
    }
    squarefree_decomposition(r)
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .all(|(_, f)| count_real_roots(f) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yun_decomposition() {
        let a = UvPoly::from_ints(&[-1, 1]);
        let b = UvPoly::from_ints(&[1, 0, 1]);
        let p = (&a * &b.pow(2)).scale(&rat(3));
        let d = squarefree_decomposition(&p);
        assert_eq!(d, vec![a.clone(), b.clone()]);
        assert_eq!(squarefree_part(&p), &a * &b);
    }

    #[test]
    fn root_counts() {
        // (x-1)(x-2)(x+3)(x^2+1)
        let p = &(&UvPoly::from_ints(&[-1, 1]) * &UvPoly::from_ints(&[-2, 1]))
            * &(&UvPoly::from_ints(&[3, 1]) * &UvPoly::from_ints(&[1, 0, 1]));
        assert_eq!(count_real_roots(&p), 3);
        assert_eq!(count_roots_in(&p, &rat(0), &rat(2)), 2);
        let iv = isolate_real_roots(&p);
        assert_eq!(iv.len(), 3);
        for (i, r) in [-3i64, 1, 2].iter().enumerate() {
            assert!(iv[i].lo < rat(*r) && rat(*r) <= iv[i].hi || iv[i].lo == rat(*r));
        }
    }

    #[test]
    fn nonneg_examples() {
        assert!(is_nonneg_univariate(&UvPoly::from_ints(&[1, 0, 1]).pow(2)));
        assert!(is_nonneg_univariate(&UvPoly::from_ints(&[2, -2, 1])));
        assert!(!is_nonneg_univariate(&UvPoly::from_ints(&[0, 0, 0, 1])));
        assert!(is_nonneg_univariate(&UvPoly::from_ints(&[-1, 1]).pow(2)));
        assert!(!is_nonneg_univariate(&UvPoly::from_ints(&[-1, 0, 1])));
        assert!(!is_nonneg_univariate(&UvPoly::from_ints(&[-1])));
    }
}
