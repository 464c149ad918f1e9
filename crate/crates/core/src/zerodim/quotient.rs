//! Standard-monomial basis of a zero-dimensional quotient ring, normal forms
//! as coordinate vectors, and multiplication matrices.

use super::groebner::GroebnerBasis;
use super::linalg::Matrix;
use super::ZeroDimError;
use crate::poly::rational::Rational;
use crate::poly::{ExpVec, MvPoly};
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRing {
    basis: Vec<ExpVec>,
    index: HashMap<ExpVec, usize>,
}

impl QuotientRing {
    pub fn basis_monomials(&self) -> &[ExpVec] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, m: &ExpVec) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Polynomial with the given coordinates.
    pub fn to_poly(&self, coords: &[Rational], nvars: usize) -> MvPoly {
        MvPoly::from_terms(nvars, self.basis.iter().cloned().zip(coords.iter().cloned()))
    }
}

/// Standard monomials (not divisible by any leading monomial), ascending.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<QuotientRing, ZeroDimError> {
    if gb.is_unit() {
        return Ok(QuotientRing {
            basis: Vec::new(),
            index: HashMap::new(),
        });
    }
    if let Some(var) = gb.unbounded_variable() {
        return Err(ZeroDimError::PositiveDimensional { var });
    }
    let n = gb.nvars();
    let lms = gb.leading_monomials();
    let standard = |m: &ExpVec| !lms.iter().any(|l| l.divides(m));
    let mut found: BTreeSet<ExpVec> = BTreeSet::new();
    let mut stack = vec![ExpVec::zero(n)];
    while let Some(m) = stack.pop() {
        if !standard(&m) || !found.insert(m.clone()) {
            continue;
        }
        for i in 0..n {
            stack.push(m.add(&ExpVec::unit(n, i, 1)));
        }
    }
    let basis: Vec<ExpVec> = found.into_iter().collect();
    let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(QuotientRing { basis, index })
}

/// Memoized normal forms of monomials as coordinate vectors.
pub struct NormalForms<'a> {
    gb: &'a GroebnerBasis,
    q: &'a QuotientRing,
    memo: HashMap<ExpVec, Vec<Rational>>,
}

impl<'a> NormalForms<'a> {
    pub fn new(gb: &'a GroebnerBasis, q: &'a QuotientRing) -> Self {
        NormalForms {
            gb,
            q,
            memo: HashMap::new(),
        }
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.q.dimension()];
        v[i] = Rational::one();
        v
    }

    pub fn monomial(&mut self, m: &ExpVec) -> Vec<Rational> {
        if let Some(i) = self.q.position(m) {
            return self.unit(i);
        }
        if let Some(v) = self.memo.get(m) {
            return v.clone();
        }
        let gb = self.gb;
        let (k, lm) = gb
            .leading_monomials()
            .iter()
            .enumerate()
            .find(|(_, l)| l.divides(m))
            .expect("nonstandard monomial has a divisor");
        let u = m.checked_sub(lm).unwrap();
        let mut acc = vec![Rational::zero(); self.q.dimension()];
        for (e, c) in gb.generators()[k].terms().rev().skip(1) {
            let v = self.monomial(&e.add(&u));
            for (a, b) in acc.iter_mut().zip(&v) {
                if !b.is_zero() {
                    *a -= c * b;
                }
            }
        }
        self.memo.insert(m.clone(), acc.clone());
        acc
    }

    pub fn poly(&mut self, p: &MvPoly) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.q.dimension()];
        for (e, c) in p.terms() {
            let v = self.monomial(e);
            for (a, b) in acc.iter_mut().zip(&v) {
                if !b.is_zero() {
                    *a += c * b;
                }
            }
        }
        acc
    }

    /// Matrix of multiplication by `g`; column `j` holds `NF(g · b_j)`.
    pub fn multiplication_matrix(&mut self, g: &MvPoly) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.q.dimension())
            .map(|j| {
                let b = self.q.basis_monomials()[j].clone();
                self.poly(&g.mul_term(&b, &Rational::one()))
            })
            .collect();
        Matrix::from_columns(&cols)
    }
}

pub fn multiplication_matrix(gb: &GroebnerBasis, q: &QuotientRing, g: &MvPoly) -> Matrix {
    NormalForms::new(gb, q).multiplication_matrix(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly_auto;
    use crate::poly::rational::rat;
    use crate::zerodim::groebner::groebner_basis;

    fn p(s: &str, n: usize) -> MvPoly {
        parse_poly_auto(s, n).unwrap()
    }

    #[test]
    fn staircases() {
        let gb = groebner_basis(&[p("x1^3 + x1", 1)]);
        let q = quotient_basis(&gb).unwrap();
        assert_eq!(q.dimension(), 3);
        let gb = groebner_basis(&[p("x1^3", 2), p("x2^3", 2)]);
        assert_eq!(quotient_basis(&gb).unwrap().dimension(), 9);
        let gb = groebner_basis(&[p("x1", 2), p("x2", 2)]);
        assert_eq!(quotient_basis(&gb).unwrap().dimension(), 1);
        let gb = groebner_basis(&[p("x1^2", 2)]);
        assert_eq!(quotient_basis(&gb), Err(ZeroDimError::PositiveDimensional { var: 1 }));
    }

    #[test]
    fn companion_matrix() {
        let gb = groebner_basis(&[p("x1^3 + x1", 1)]);
        let q = quotient_basis(&gb).unwrap();
        let m = multiplication_matrix(&gb, &q, &p("x1", 1));
        // basis (1, X, X^2); X·X^2 = X^3 ≡ -X
        assert_eq!(m.column(2), vec![rat(0), rat(-1), rat(0)]);
        assert_eq!(m.column(0), vec![rat(0), rat(1), rat(0)]);
        assert_eq!(multiplication_matrix(&gb, &q, &p("1", 1)), Matrix::identity(3));
        assert!(multiplication_matrix(&gb, &q, &p("x1^3 + x1", 1)).is_zero());
    }

    #[test]
    fn matrices_are_multiplicative() {
        let gb = groebner_basis(&[p("x1^2 - x2 - 1", 2), p("x2^2 - x1", 2)]);
        let q = quotient_basis(&gb).unwrap();
        let mut nf = NormalForms::new(&gb, &q);
        let a = p("x1 + 2*x2", 2);
        let b = p("x1*x2 - 3", 2);
        let ma = nf.multiplication_matrix(&a);
        let mb = nf.multiplication_matrix(&b);
        assert_eq!(nf.multiplication_matrix(&(&a * &b)), ma.mul(&mb));
        assert_eq!(nf.multiplication_matrix(&(&a + &b)), ma.add(&mb));
    }
}
