//! Buchberger's algorithm over the rationals in graded-lex order.

use crate::poly::rational::Rational;
use crate::poly::{ExpVec, MvPoly};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Reduced Gröbner basis: monic, interreduced, sorted by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    generators: Vec<MvPoly>,
    leading: Vec<ExpVec>,
}

impl GroebnerBasis {
    fn from_generators(nvars: usize, mut generators: Vec<MvPoly>) -> Self {
        generators.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        let leading = generators
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero generator").clone())
            .collect();
        GroebnerBasis {
            nvars,
            generators,
            leading,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MvPoly] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[ExpVec] {
        &self.leading
    }

    /// The ideal is the whole ring (basis `{1}`).
    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(ExpVec::is_constant)
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        self.is_unit() || self.unbounded_variable().is_none()
    }

    /// First variable without a pure-power leading monomial.
    pub fn unbounded_variable(&self) -> Option<usize> {
        (0..self.nvars).find(|&i| {
            !self
                .leading
                .iter()
                .any(|m| matches!(m.pure_power(), Some((j, _)) if j == i))
        })
    }

    /// Full reduction modulo the basis.
    pub fn reduce(&self, p: &MvPoly) -> MvPoly {
        reduce(p, &self.generators)
    }

    pub fn contains(&self, p: &MvPoly) -> bool {
        self.reduce(p).is_zero()
    }
}

/// Full reduction of `p` by monic polynomials.
pub fn reduce(p: &MvPoly, basis: &[MvPoly]) -> MvPoly {
    let nvars = p.nvars();
    let mut work: BTreeMap<ExpVec, Rational> = p.clone().into_terms();
    let mut rem: BTreeMap<ExpVec, Rational> = BTreeMap::new();
    while let Some((m, c)) = work.pop_last() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let lc = g.leading_term().unwrap().1;
                let u = m.checked_sub(lm).unwrap();
                let factor = if lc.is_one() { c } else { c / lc };
                for (e, gc) in g.terms().rev().skip(1) {
                    let key = e.add(&u);
                    let delta = gc * &factor;
                    match work.entry(key) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(-delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            *o.get_mut() -= delta;
                            if o.get().is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
            }
            None => {
                rem.insert(m, c);
            }
        }
    }
    MvPoly::from_map(nvars, rem)
}

/// `S(f, g)` for nonzero `f`, `g`.
pub fn s_polynomial(f: &MvPoly, g: &MvPoly) -> MvPoly {
    let (lf, cf) = f.leading_term().expect("nonzero");
    let (lg, cg) = g.leading_term().expect("nonzero");
    let l = lf.lcm(lg);
    let a = f.mul_term(&l.checked_sub(lf).unwrap(), &cf.recip());
    let b = g.mul_term(&l.checked_sub(lg).unwrap(), &cg.recip());
    &a - &b
}

fn interreduce(nvars: usize, gens: Vec<MvPoly>) -> GroebnerBasis {
    // drop generators whose leading monomial is divisible by another one
    let mut kept: Vec<MvPoly> = Vec::new();
    let mut sorted = gens;
    sorted.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in sorted {
        let lm = g.leading_monomial().unwrap().clone();
        if !kept.iter().any(|k| k.leading_monomial().unwrap().divides(&lm)) {
            kept.push(g);
        }
    }
    if let Some(unit) = kept.iter().find(|g| g.leading_monomial().unwrap().is_constant()) {
        let one = MvPoly::one(unit.nvars());
        return GroebnerBasis::from_generators(nvars, vec![one]);
    }
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<MvPoly> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = kept[i].leading_term().unwrap();
        let head = MvPoly::monomial(lm.clone(), lc.clone());
        let tail = &kept[i] - &head;
        let r = &head + &reduce(&tail, &others);
        out.push(r.monic());
    }
    GroebnerBasis::from_generators(nvars, out)
}

/// Reduced Gröbner basis of the ideal generated by `gens` (zero entries are
/// ignored). When the leading monomials are pairwise coprime the input is
/// already a basis and only interreduction runs.
pub fn groebner_basis(gens: &[MvPoly]) -> GroebnerBasis {
    let nvars = gens.first().map_or(0, MvPoly::nvars);
    let mut basis: Vec<MvPoly> = gens.iter().filter(|g| !g.is_zero()).map(MvPoly::monic).collect();
    if basis.is_empty() {
        return GroebnerBasis::from_generators(nvars, Vec::new());
    }
    let coprime = basis.iter().enumerate().all(|(i, a)| {
        basis[i + 1..]
            .iter()
            .all(|b| a.leading_monomial().unwrap().coprime(b.leading_monomial().unwrap()))
    });
    if coprime {
        return interreduce(nvars, basis);
    }
    // pairs ordered by degree of the lcm (normal strategy), then indices
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut processed: BTreeSet<(usize, usize)> = BTreeSet::new();
    let lcm_deg = |b: &[MvPoly], i: usize, j: usize| {
        b[i].leading_monomial()
            .unwrap()
            .lcm(b[j].leading_monomial().unwrap())
            .total_degree()
    };
    for j in 1..basis.len() {
        for i in 0..j {
            pairs.insert((lcm_deg(&basis, i, j), i, j));
        }
    }
    while let Some((_, i, j)) = pairs.pop_first() {
        processed.insert((i, j));
        let li = basis[i].leading_monomial().unwrap().clone();
        let lj = basis[j].leading_monomial().unwrap().clone();
        if li.coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        // chain criterion: some k with lm_k | lcm and both pairs with k done
        let ordered = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && processed.contains(&ordered(i, k))
                && processed.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.leading_monomial().unwrap().is_constant() {
            return GroebnerBasis::from_generators(nvars, vec![MvPoly::one(nvars)]);
        }
        basis.push(r);
        let k = basis.len() - 1;
        for i2 in 0..k {
            pairs.insert((lcm_deg(&basis, i2, k), i2, k));
        }
    }
    interreduce(nvars, basis)
}

/// True iff the top-degree parts of `gens` have only the trivial common zero,
/// i.e. the system has finitely many affine solutions and none at infinity.
pub fn is_zero_dim_no_infinity(gens: &[MvPoly]) -> bool {
    let tops: Vec<MvPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.top_part().expect("nonzero"))
        .collect();
    if tops.is_empty() {
        return false;
    }
    groebner_basis(&tops).is_zero_dimensional()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly_auto;

    fn p(s: &str, n: usize) -> MvPoly {
        parse_poly_auto(s, n).unwrap()
    }

    #[test]
    fn univariate_gcd_basis() {
        let f = p("x1^4 + 2*x1^2 + 1", 1);
        let gb = groebner_basis(&f.gradient());
        assert_eq!(gb.generators(), &[p("x1^3 + x1", 1)]);
    }

    #[test]
    fn variables_basis() {
        let gb = groebner_basis(&[p("x1", 2), p("x2", 2)]);
        assert_eq!(gb.generators(), &[p("x2", 2), p("x1", 2)]);
        assert!(gb.is_zero_dimensional());
    }

    #[test]
    fn cyclic_example_closes_under_s_polynomials() {
        let gens = [p("x1^2*x2 - 1", 2), p("x1*x2^2 - x1", 2)];
        let gb = groebner_basis(&gens);
        for g in &gens {
            assert!(gb.contains(g));
        }
        let g = gb.generators();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                assert!(gb.reduce(&s_polynomial(&g[i], &g[j])).is_zero());
            }
        }
    }

    #[test]
    fn unit_ideal_detected() {
        let gb = groebner_basis(&[p("x1*x2 - 1", 2), p("x1", 2)]);
        assert!(gb.is_unit());
    }

    #[test]
    fn no_infinity_checks() {
        assert!(is_zero_dim_no_infinity(&[p("x1^2 - 1", 2), p("x2^2 - 1", 2)]));
        assert!(!is_zero_dim_no_infinity(&[p("x1^2 - x2", 2), p("x1*x2 - 1", 2)]));
        assert!(is_zero_dim_no_infinity(&[p("x1*x2 - 1", 2), p("x1^2 - x2^2", 2)]));
    }
}
