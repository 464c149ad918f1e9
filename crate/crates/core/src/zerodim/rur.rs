//! Rational univariate representation of a radical zero-dimensional ideal.

use super::groebner::GroebnerBasis;
use super::linalg::Matrix;
use super::quotient::{NormalForms, QuotientRing};
use crate::poly::intpoly;
use crate::poly::rational::{denominator_lcm, rat, to_integers, Rational};
use crate::poly::{ExpVec, MvPoly, UvPoly};
use crate::rng::SplitMix64;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// Sub-stream id for separating-form draws.
pub const SEPARATING_STREAM: u64 = 3;

/// `X_i = R_i(t) / R0'(t)` at the roots `t` of the squarefree `R0`, where
/// `t = Σ L_i X_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rur {
    pub r0: UvPoly,
    pub r: Vec<UvPoly>,
    pub l: Vec<Rational>,
    pub quotient_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RurOutcome {
    Found(Rur),
    /// No separating form with squarefree characteristic polynomial was
    /// found; the ideal is (most likely) not radical.
    NotRadical,
}

impl Rur {
    pub fn nvars(&self) -> usize {
        self.r.len()
    }

    pub fn r0_prime(&self) -> UvPoly {
        self.r0.derivative()
    }

    /// `T·R0' − Σ L_i R_i ≡ 0 (mod R0)`.
    pub fn trace_identity_holds(&self) -> bool {
        let lhs = &UvPoly::x() * &self.r0_prime();
        let mut acc = lhs;
        for (li, ri) in self.l.iter().zip(&self.r) {
            acc = &acc - &ri.scale(li);
        }
        acc.rem(&self.r0).is_zero()
    }

    /// `(R0')^D · g(R_1/R0', …, R_n/R0') mod R0` with `D = deg g`.
    pub fn substitute(&self, g: &MvPoly) -> UvPoly {
        substitute_parametrization(g, &self.r0_prime(), &self.r, Some(&self.r0))
    }
}

/// `Σ a_α R0'^{D−|α|} Π R_i^{α_i}` for `g = Σ a_α X^α` of degree `D`,
/// reduced modulo `modulus` when given.
///
/// Every term has total degree `D` in `(R0', R_1, …, R_n)`, so with all of
/// them written as integer vectors over one denominator `δ` the sum is
/// `δ^{-D}` times an integer polynomial; modular reduction is integer
/// pseudo-division with the powers of the leading coefficient tracked.
pub fn substitute_parametrization(g: &MvPoly, r0p: &UvPoly, r: &[UvPoly], modulus: Option<&UvPoly>) -> UvPoly {
    if g.is_zero() {
        return UvPoly::zero();
    }
    let d = g.degree() as usize;
    let delta = denominator_lcm(r0p.coeffs().iter().chain(r.iter().flat_map(|p| p.coeffs())));
    let ints = |p: &UvPoly| -> Vec<BigInt> { p.coeffs().iter().map(|c| c.numer() * (&delta / c.denom())).collect() };
    let m = modulus.map(|m| m.to_integers().0);
    let lc = m.as_ref().map(|m| m.last().unwrap().clone());
    // residues `num / lc^e`
    let reduce = |p: Vec<BigInt>, e: u32| -> (Vec<BigInt>, u32) {
        match &m {
            Some(m) => {
                let (_, r, s) = intpoly::pseudo_div(p, m);
                (r, e + s)
            }
            None => (p, e),
        }
    };
    let mul = |a: &(Vec<BigInt>, u32), b: &(Vec<BigInt>, u32)| reduce(intpoly::mul(&a.0, &b.0), a.1 + b.1);
    let one = (vec![BigInt::one()], 0u32);
    let a = reduce(ints(r0p), 0);
    let mut dpow = vec![one.clone()];
    for k in 1..=d {
        dpow.push(mul(&dpow[k - 1], &a));
    }
    let b: Vec<_> = r.iter().map(|p| reduce(ints(p), 0)).collect();
    let mut rpow: Vec<Vec<(Vec<BigInt>, u32)>> = r.iter().map(|_| vec![one.clone()]).collect();
    let coeffs: Vec<Rational> = g.terms().map(|(_, c)| c.clone()).collect();
    let (cs, dc) = to_integers(&coeffs);
    let mut terms = Vec::new();
    for ((e, _), c) in g.terms().zip(cs) {
        let mut t = dpow[d - e.total_degree() as usize].clone();
        for (i, &k) in e.exponents().iter().enumerate() {
            while rpow[i].len() <= k as usize {
                let next = mul(rpow[i].last().unwrap(), &b[i]);
                rpow[i].push(next);
            }
            if k > 0 {
                t = mul(&t, &rpow[i][k as usize]);
            }
        }
        terms.push((t, c));
    }
    let top = terms.iter().map(|((_, e), _)| *e).max().unwrap_or(0);
    let mut acc: Vec<BigInt> = Vec::new();
    for ((num, e), c) in terms {
        let c = match &lc {
            Some(lc) if e < top => c * lc.pow(top - e),
            _ => c,
        };
        intpoly::add_scaled(&mut acc, &num, &c);
    }
    let mut den = delta.pow(d as u32) * dc;
    if let Some(lc) = &lc {
        den *= lc.pow(top);
    }
    let out = UvPoly::from_integers(acc, &den);
    match modulus {
        Some(m) => out.rem(m),
        None => out,
    }
}

/// Number of distinct complex points of the variety: rank of the trace form
/// `(b_i, b_j) ↦ Tr(M_{b_i b_j})`.
pub fn distinct_points(gb: &GroebnerBasis, q: &QuotientRing) -> usize {
    let n = q.dimension();
    let mut nf = NormalForms::new(gb, q);
    let basis = q.basis_monomials().to_vec();
    let mut trace_cache: std::collections::HashMap<ExpVec, Rational> = Default::default();
    let mut trace = |m: &ExpVec, nf: &mut NormalForms| -> Rational {
        if let Some(t) = trace_cache.get(m) {
            return t.clone();
        }
        let t: Rational = (0..n).map(|k| nf.monomial(&m.add(&basis[k]))[k].clone()).sum();
        trace_cache.insert(m.clone(), t.clone());
        t
    };
    let mut h = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = trace(&basis[i].add(&basis[j]), &mut nf);
            h[(i, j)] = t.clone();
            h[(j, i)] = t;
        }
    }
    rank(h)
}

fn rank(mut m: Matrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m[(r, c)].recip();
        for i in r + 1..rows {
            if m[(i, c)].is_zero() {
                continue;
            }
            let f = &m[(i, c)] * &inv;
            for j in c..cols {
                let t = &m[(r, j)] * &f;
                m[(i, j)] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Largest quotient dimension for which the trace-form radicality test runs.
const TRACE_TEST_LIMIT: usize = 64;

/// Searches separating forms `L = X_1 + j X_2 + j^2 X_3 + …` for seeded
/// integers `j`. `L` is accepted when the characteristic polynomial of
/// `M_L` is squarefree, which holds iff the ideal is radical and `L`
/// separates its points.
pub fn compute_rur(gb: &GroebnerBasis, q: &QuotientRing, seed: u64) -> RurOutcome {
    let n = gb.nvars();
    let dim = q.dimension();
    assert!(dim > 0, "empty variety has no representation");
    let mut nf = NormalForms::new(gb, q);
    let mx: Vec<Matrix> = (0..n).map(|i| nf.multiplication_matrix(&MvPoly::var(n, i))).collect();
    let max_attempts = if n == 1 { 1 } else { 4 * dim * (dim - 1) / 2 + 1 };
    let bound = (max_attempts as u64 * 2).max(8);
    let mut g = SplitMix64::derived(seed, SEPARATING_STREAM);
    let mut tried = BTreeSet::new();
    for attempt in 0..max_attempts {
        let j = if attempt == 0 {
            2
        } else {
            loop {
                let c = 1 + g.below(bound) as i64;
                if !tried.contains(&c) {
                    break c;
                }
            }
        };
        tried.insert(j);
        let l: Vec<Rational> = (0..n as u32).map(|k| rat(j).pow(k as i32)).collect();
        let mut ml = Matrix::zeros(dim, dim);
        for (li, m) in l.iter().zip(&mx) {
            ml = ml.add_scaled(m, li);
        }
        let chi = ml.charpoly();
        if chi.is_squarefree() {
            return RurOutcome::Found(build(chi, l, &ml, &mx, q));
        }
        if attempt == 0 && dim <= TRACE_TEST_LIMIT && n > 1 && distinct_points(gb, q) < dim {
            return RurOutcome::NotRadical;
        }
    }
    RurOutcome::NotRadical
}

fn build(r0: UvPoly, l: Vec<Rational>, ml: &Matrix, mx: &[Matrix], q: &QuotientRing) -> Rur {
    let dim = q.dimension();
    let n = mx.len();
    let one = q.position(&ExpVec::zero(n)).expect("1 is a standard monomial");
    let mut v = vec![Rational::zero(); dim];
    v[one] = Rational::one();
    // Krylov basis 1, L, …, L^{dim-1} of the quotient
    let mut krylov = Vec::with_capacity(dim);
    for _ in 0..dim {
        let next = ml.mul_vec(&v);
        krylov.push(std::mem::replace(&mut v, next));
    }
    let k = Matrix::from_columns(&krylov);
    let rhs: Vec<Vec<Rational>> = mx.iter().map(|m| m.column(one)).collect();
    let sols = k
        .solve(&rhs)
        .expect("separating form gives an invertible Krylov matrix");
    let r0p = r0.derivative();
    let r = sols.into_iter().map(|c| (&UvPoly::new(c) * &r0p).rem(&r0)).collect();
    let rur = Rur {
        r0,
        r,
        l,
        quotient_dim: dim,
    };
    debug_assert!(rur.trace_identity_holds());
    rur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly_auto;
    use crate::zerodim::groebner::groebner_basis;
    use crate::zerodim::quotient::quotient_basis;

    fn p(s: &str, n: usize) -> MvPoly {
        parse_poly_auto(s, n).unwrap()
    }

    fn rur_of(gens: &[MvPoly]) -> Rur {
        let gb = groebner_basis(gens);
        let q = quotient_basis(&gb).unwrap();
        match compute_rur(&gb, &q, 0) {
            RurOutcome::Found(r) => r,
            RurOutcome::NotRadical => panic!("expected a representation"),
        }
    }

    #[test]
    fn linear_case() {
        let r = rur_of(&[p("2*x1 - 4", 1)]);
        assert_eq!(r.r0, UvPoly::from_ints(&[-2, 1]));
        assert_eq!(r.r[0], UvPoly::from_ints(&[2]));
    }

    #[test]
    fn cubic_case() {
        let r = rur_of(&[p("x1^3 + x1", 1)]);
        assert_eq!(r.r0, UvPoly::from_ints(&[0, 1, 0, 1]));
        assert!(r.trace_identity_holds());
        // with L = X the parametrization is X = T, so R_1 ≡ T·R0'
        assert_eq!(r.r[0], (&UvPoly::x() * &r.r0_prime()).rem(&r.r0));
    }

    #[test]
    fn four_points() {
        let gens = [p("x1^2 - 1", 2), p("x2^2 - 1", 2)];
        let r = rur_of(&gens);
        assert_eq!(r.r0.deg(), 4);
        assert!(r.trace_identity_holds());
        for g in &gens {
            assert!(r.substitute(g).is_zero());
        }
        // each root t of R0 maps to a point with coordinates ±1
        for x1 in [-1i64, 1] {
            for x2 in [-1i64, 1] {
                let t = &r.l[0] * rat(x1) + &r.l[1] * rat(x2);
                assert!(r.r0.eval(&t).is_zero());
                let d = r.r0_prime().eval(&t);
                assert_eq!(r.r[0].eval(&t) / &d, rat(x1));
                assert_eq!(r.r[1].eval(&t) / &d, rat(x2));
            }
        }
    }

    #[test]
    fn non_radical_detected() {
        let gb = groebner_basis(&[p("x1^2", 2), p("x2^2 - 1", 2)]);
        let q = quotient_basis(&gb).unwrap();
        assert_eq!(distinct_points(&gb, &q), 2);
        assert_eq!(compute_rur(&gb, &q, 0), RurOutcome::NotRadical);
        let gb1 = groebner_basis(&[p("x1^2 - 2*x1 + 1", 1)]);
        let q1 = quotient_basis(&gb1).unwrap();
        assert_eq!(compute_rur(&gb1, &q1, 0), RurOutcome::NotRadical);
    }
}
