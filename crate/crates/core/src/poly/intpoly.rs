//! Integer coefficient vectors, lowest degree first. Used where rational
//! normalization after every operation would dominate the cost.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                v[i + j] += x * y;
            }
        }
    }
    v
}

pub fn add_scaled(acc: &mut Vec<BigInt>, p: &[BigInt], c: &BigInt) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (a, x) in acc.iter_mut().zip(p) {
        if !x.is_zero() {
            *a += x * c;
        }
    }
}

pub fn scale(p: &mut [BigInt], c: &BigInt) {
    for x in p {
        *x *= c;
    }
}

/// Pseudo-division `lc(m)^s · p = q · m + r` with `s = len p − deg m` steps
/// (zero when `p` is already short). Returns `(q, r, s)`; `m` must have a
/// nonzero leading entry.
pub fn pseudo_div(mut r: Vec<BigInt>, m: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>, u32) {
    let dd = m.len() - 1;
    if r.len() <= dd {
        return (Vec::new(), r, 0);
    }
    let lc = &m[dd];
    let steps = r.len() - dd;
    let mut q = vec![BigInt::zero(); steps];
    for k in (dd..r.len()).rev() {
        let t = std::mem::take(&mut r[k]);
        scale(&mut r[..k], lc);
        scale(&mut q[k - dd + 1..], lc);
        if !t.is_zero() {
            for (j, mc) in m[..dd].iter().enumerate() {
                r[k - dd + j] -= &t * mc;
            }
        }
        q[k - dd] = t;
    }
    r.truncate(dd);
    (q, r, steps as u32)
}

/// `Σ num_j / den_j` over the least common denominator, unnormalized.
/// Denominators must be nonzero.
pub fn sum_fractions(parts: &[(Vec<BigInt>, BigInt)]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for (_, d) in parts {
        if !(&l % d).is_zero() {
            l = &l / super::rational::gcd(&l, d) * d;
        }
    }
    let mut acc = Vec::new();
    for (num, d) in parts {
        add_scaled(&mut acc, num, &(&l / d));
    }
    (acc, l)
}
