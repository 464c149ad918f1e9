use super::expvec::ExpVec;
use super::rational::{self, rat, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("requested degree {requested} is below the polynomial degree {degree}")]
    DegreeTooLow { requested: u32, degree: u32 },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name:?} at position {pos}")]
    UnknownVariable { pos: usize, name: String },
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MvPoly {
    nvars: usize,
    terms: BTreeMap<ExpVec, Rational>,
}

/// Coefficient statistics of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Norms {
    pub height: BigUint,
    pub bitsize: u64,
    pub one_norm: Rational,
}

impl MvPoly {
    pub fn zero(nvars: usize) -> Self {
        MvPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExpVec::zero(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `X_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(ExpVec::unit(nvars, i, 1), Rational::one())
    }

    pub fn monomial(exp: ExpVec, c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (ExpVec, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer exponent lists and integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (ExpVec::new(e.to_vec()), rat(*c))))
    }

    /// Builds from a term map, dropping zero coefficients.
    pub fn from_map(nvars: usize, mut terms: BTreeMap<ExpVec, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        MvPoly { nvars, terms }
    }

    pub fn into_terms(self) -> BTreeMap<ExpVec, Rational> {
        self.terms
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExpVec) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&ExpVec::zero(self.nvars))
    }

    pub fn add_term(&mut self, e: ExpVec, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = rational::add(o.get(), &c);
                *o.get_mut() = v;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, ExpVec::total_degree)
    }

    pub fn leading_term(&self) -> Option<(&ExpVec, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&ExpVec> {
        self.terms.keys().next_back()
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|e| e.total_degree() == d)
    }

    pub fn scale(&self, c: &Rational) -> MvPoly {
        if c.is_zero() {
            return MvPoly::zero(self.nvars);
        }
        MvPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), rational::mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, exp: &ExpVec, c: &Rational) -> MvPoly {
        if c.is_zero() {
            return MvPoly::zero(self.nvars);
        }
        MvPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.add(exp), rational::mul(a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MvPoly {
        let mut result = MvPoly::one(self.nvars);
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

    pub fn eval(&self, x: &[Rational]) -> Result<Rational, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: x.len(),
            });
        }
        // per-variable power caches keep evaluation of dense polynomials cheap
        let mut powers: Vec<Vec<Rational>> = x.iter().map(|v| vec![Rational::one(), v.clone()]).collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap() * &x[i];
                    cache.push(next);
                }
                t *= &cache[k as usize];
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to the variable of index `i`.
    pub fn partial(&self, i: usize) -> MvPoly {
        let mut out = MvPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k == 0 {
                continue;
            }
            let mut v = e.exponents().to_vec();
            v[i] -= 1;
            out.add_term(ExpVec::new(v), rational::mul(c, &rat(k as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MvPoly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Homogenization with a new variable X0 prepended (index 0 of the result).
    pub fn homogenize(&self, total_degree: u32) -> Result<MvPoly, PolyError> {
        let d = self.degree();
        if total_degree < d {
            return Err(PolyError::DegreeTooLow {
                requested: total_degree,
                degree: d,
            });
        }
        Ok(MvPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.prepend(total_degree - e.total_degree()), c.clone()))
                .collect(),
        })
    }

    /// Sets the first variable to 1 and drops it.
    pub fn dehomogenize(&self) -> MvPoly {
        let mut out = MvPoly::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            out.add_term(e.tail(), c.clone());
        }
        out
    }

    /// The homogeneous component of top degree.
    pub fn top_part(&self) -> Result<MvPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.homogeneous_part(self.degree()))
    }

    pub fn homogeneous_part(&self, k: u32) -> MvPoly {
        MvPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn norms(&self) -> Norms {
        let height = self
            .terms
            .values()
            .map(rational::height)
            .max()
            .unwrap_or_else(BigUint::zero);
        let one_norm = self.terms.values().map(|c| c.abs()).sum();
        Norms {
            bitsize: height.bits(),
            height,
            one_norm,
        }
    }

    /// Substitutes `X_i -> images[i]`; all images share one ring.
    pub fn compose(&self, images: &[MvPoly]) -> MvPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut cache: Vec<Vec<MvPoly>> = images.iter().map(|p| vec![MvPoly::one(target), p.clone()]).collect();
        let mut out = MvPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MvPoly::constant(target, c.clone());
            for (i, &k) in e.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cc = &mut cache[i];
                while cc.len() <= k as usize {
                    let next = cc.last().unwrap() * &images[i];
                    cc.push(next);
                }
                t = &t * &cc[k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Embeds into a ring with `extra` new variables placed first.
    pub fn prepend_vars(&self, extra: usize) -> MvPoly {
        MvPoly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = vec![0; extra];
                    v.extend_from_slice(e.exponents());
                    (ExpVec::new(v), c.clone())
                })
                .collect(),
        }
    }

    /// Monic scaling (leading coefficient 1); zero stays zero.
    pub fn monic(&self) -> MvPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// `f * lcm(denominators)` together with the multiplier.
    pub fn clear_denominators(&self) -> (MvPoly, BigInt) {
        let l = rational::denominator_lcm(self.terms.values());
        (self.scale(&Rational::from_integer(l.clone())), l)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// `f(X + c)`.
    pub fn translate(&self, shift: &[Rational]) -> MvPoly {
        let images: Vec<MvPoly> = (0..self.nvars)
            .map(|i| &MvPoly::var(self.nvars, i) + &MvPoly::constant(self.nvars, shift[i].clone()))
            .collect();
        self.compose(&images)
    }
}

impl std::fmt::Debug for MvPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}",
            super::parse::to_text(self, &super::parse::default_names(self.nvars))
        )
    }
}

impl<'a> Add<&'a MvPoly> for &'a MvPoly {
    type Output = MvPoly;
    fn add(self, rhs: &MvPoly) -> MvPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MvPoly> for &'a MvPoly {
    type Output = MvPoly;
    fn sub(self, rhs: &MvPoly) -> MvPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MvPoly {
    type Output = MvPoly;
    fn neg(self) -> MvPoly {
        MvPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<'a> Mul<&'a MvPoly> for &'a MvPoly {
    type Output = MvPoly;
    fn mul(self, rhs: &MvPoly) -> MvPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let (a, da) = super::rational::to_integers(self.terms.values());
        let (b, db) = super::rational::to_integers(rhs.terms.values());
        let mut acc: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
        for (e1, c1) in self.terms.keys().zip(&a) {
            for (e2, c2) in rhs.terms.keys().zip(&b) {
                *acc.entry(e1.add(e2)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        let den = da * db;
        MvPoly {
            nvars: self.nvars,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, rational::reduced(c, den.clone())))
                .collect(),
        }
    }
}

impl Add for MvPoly {
    type Output = MvPoly;
    fn add(self, rhs: MvPoly) -> MvPoly {
        &self + &rhs
    }
}

impl Sub for MvPoly {
    type Output = MvPoly;
    fn sub(self, rhs: MvPoly) -> MvPoly {
        &self - &rhs
    }
}

impl Mul for MvPoly {
    type Output = MvPoly;
    fn mul(self, rhs: MvPoly) -> MvPoly {
        &self * &rhs
    }
}
