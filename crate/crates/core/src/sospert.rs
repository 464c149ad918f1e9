//! Explicit SOS perturbation `f + ε(1 + ‖X‖²)^t`: block Gram matrices,
//! the degree threshold, and an exact positive semidefiniteness check.

use crate::poly::rational::{format_fraction, rat, Rational};
use crate::poly::{default_names, to_text, ExpVec, MvPoly};
use crate::zerodim::linalg::Matrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::HashMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SosPertError {
    #[error("degree {0} is not even")]
    OddDegree(u32),
    #[error("t = {t} is below half the degree {d}")]
    TooSmallT { t: u32, d: u32 },
    #[error("ε must be positive")]
    NonPositiveEpsilon,
    #[error("f(0) must be nonnegative")]
    NegativeConstant,
}

/// Symmetric matrix indexed by the degree-`t` monomials in `(X0, X1, …, Xn)`:
/// `X0^t`, then `X0^{t-1} Xi`, then the rest in lexicographically descending
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub t: u32,
    pub nvars_h: usize,
    pub index: Vec<ExpVec>,
    pub entries: Matrix,
}

impl GramMatrix {
    fn zeros(nvars_h: usize, t: u32) -> Self {
        let index = ExpVec::all_of_degree(nvars_h, t);
        let m = index.len();
        GramMatrix {
            t,
            nvars_h,
            index,
            entries: Matrix::zeros(m, m),
        }
    }

    pub fn dimension(&self) -> usize {
        self.index.len()
    }

    fn position(&self) -> HashMap<&ExpVec, usize> {
        self.index.iter().enumerate().map(|(i, e)| (e, i)).collect()
    }

    /// `[m_t]ᵀ G [m_t]`, homogeneous of degree `2t` in `nvars_h` variables.
    pub fn expand(&self) -> MvPoly {
        let mut out = MvPoly::zero(self.nvars_h);
        for (i, a) in self.index.iter().enumerate() {
            for (j, b) in self.index.iter().enumerate() {
                let c = &self.entries[(i, j)];
                if !c.is_zero() {
                    out.add_term(a.add(b), c.clone());
                }
            }
        }
        out
    }

    pub fn add_scaled(&self, other: &GramMatrix, c: &Rational) -> GramMatrix {
        assert_eq!(self.index, other.index, "Gram matrices on different bases");
        GramMatrix {
            entries: self.entries.add_scaled(&other.entries, c),
            ..self.clone()
        }
    }
}

/// Multinomial coefficient `|α|! / Π α_i!`.
pub fn multinomial(alpha: &[u32]) -> BigInt {
    let mut out = BigInt::one();
    let mut total = 0u32;
    for &a in alpha {
        for k in 1..=a {
            total += 1;
            out = out * BigInt::from(total) / BigInt::from(k);
        }
    }
    out
}

/// Diagonal Gram matrix of `(X0² + ‖X‖²)^t`.
pub fn build_at(n: usize, t: u32) -> GramMatrix {
    let mut g = GramMatrix::zeros(n + 1, t);
    for i in 0..g.dimension() {
        let c = multinomial(g.index[i].exponents());
        g.entries[(i, i)] = Rational::from_integer(c);
    }
    g
}

/// Splits an exponent vector of degree `2d` into `α + β` with `|α| = |β| = d`:
/// halve every coordinate, then give the odd remainders to `α` starting with
/// `X1, …, Xn` in ascending order and `X0` last.
pub fn split_exponent(gamma: &ExpVec, d: u32) -> (ExpVec, ExpVec) {
    let g = gamma.exponents();
    let mut alpha: Vec<u32> = g.iter().map(|x| x / 2).collect();
    let mut missing = d - alpha.iter().sum::<u32>();
    let order = (1..g.len()).chain(std::iter::once(0));
    for i in order {
        if missing == 0 {
            break;
        }
        if g[i] % 2 == 1 {
            alpha[i] += 1;
            missing -= 1;
        }
    }
    assert_eq!(missing, 0, "exponent of degree {} does not split", 2 * d);
    let beta: Vec<u32> = g.iter().zip(&alpha).map(|(x, a)| x - a).collect();
    (ExpVec::new(alpha), ExpVec::new(beta))
}

/// Half the even degree of `f`, rejecting odd degrees.
fn half_degree(f: &MvPoly) -> Result<u32, SosPertError> {
    let deg = f.degree();
    if deg % 2 == 1 {
        return Err(SosPertError::OddDegree(deg));
    }
    Ok(deg / 2)
}

/// Gram matrix of `X0^{2(t-d)} f^h` supported on the monomials
/// `X0^{t-d} X^α` with `|α| = d`.
pub fn build_ft(f: &MvPoly, t: u32) -> Result<GramMatrix, SosPertError> {
    let d = half_degree(f)?;
    if t < d {
        return Err(SosPertError::TooSmallT { t, d });
    }
    let n = f.nvars();
    let fh = f.homogenize(2 * d).expect("degree is 2d");
    let mut g = GramMatrix::zeros(n + 1, t);
    let pos: HashMap<ExpVec, usize> = g.position().into_iter().map(|(e, i)| (e.clone(), i)).collect();
    let lift = |a: &ExpVec| {
        let mut e = a.exponents().to_vec();
        e[0] += t - d;
        pos[&ExpVec::new(e)]
    };
    let two = rat(2);
    for (gamma, c) in fh.terms() {
        let (alpha, beta) = split_exponent(gamma, d);
        let (i, j) = (lift(&alpha), lift(&beta));
        if i == j {
            g.entries[(i, i)] = c.clone();
        } else {
            g.entries[(i, j)] = c / &two;
            g.entries[(j, i)] = c / &two;
        }
    }
    Ok(g)
}

/// `max{d, ⌈(‖f‖₁ + ‖∇f(0)‖₂² / (f(0) + ε)) / ε⌉}`.
pub fn sos_pert_threshold(f: &MvPoly, epsilon: &Rational) -> Result<u32, SosPertError> {
    if !epsilon.is_positive() {
        return Err(SosPertError::NonPositiveEpsilon);
    }
    let f0 = f.constant_term();
    if f0.is_negative() {
        return Err(SosPertError::NegativeConstant);
    }
    let d = half_degree(f)?;
    let grad_sq: Rational = (0..f.nvars())
        .map(|i| {
            let c = f.coeff(&ExpVec::unit(f.nvars(), i, 1));
            &c * &c
        })
        .sum();
    let bound = (f.norms().one_norm + grad_sq / (&f0 + epsilon)) / epsilon;
    let t = bound.ceil().to_integer();
    let t: u32 = t.try_into().expect("threshold fits in u32");
    Ok(t.max(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdReport {
    pub psd: bool,
    /// Diagonal of the LDLᵀ factorization in pivot order.
    pub pivots: Vec<Rational>,
    /// `v` with `vᵀ G v < 0` when not PSD.
    pub failure_vector: Option<Vec<Rational>>,
}

struct Step {
    pivot: usize,
    d: Rational,
    /// Nonzero entries of the pivot row of the Schur complement at
    /// elimination time.
    row: Vec<(usize, Rational)>,
}

/// Exact LDLᵀ with maximal-diagonal symmetric pivoting.
pub fn psd_check(g: &Matrix) -> PsdReport {
    assert!(g.is_symmetric(), "Gram matrix must be symmetric");
    let m = g.rows();
    let mut s = g.clone();
    let mut remaining: Vec<usize> = (0..m).collect();
    let mut steps: Vec<Step> = Vec::new();
    let mut pivots = Vec::new();
    while !remaining.is_empty() {
        let (k, p) = remaining
            .iter()
            .enumerate()
            .max_by(|(ka, a), (kb, b)| s[(**a, **a)].cmp(&s[(**b, **b)]).then(kb.cmp(ka)))
            .map(|(k, &p)| (k, p))
            .unwrap();
        let dp = s[(p, p)].clone();
        if !dp.is_positive() {
            if dp.is_negative() {
                return fail(g, &steps, pivots, vec![(p, Rational::one())]);
            }
            // all remaining diagonals are zero: PSD only if the block vanishes
            for &i in &remaining {
                for &j in &remaining {
                    let x = &s[(i, j)];
                    if !x.is_zero() {
                        let sign = if x.is_positive() {
                            -Rational::one()
                        } else {
                            Rational::one()
                        };
                        return fail(g, &steps, pivots, vec![(i, Rational::one()), (j, sign)]);
                    }
                }
            }
            pivots.extend(std::iter::repeat_n(Rational::zero(), remaining.len()));
            break;
        }
        remaining.remove(k);
        let row: Vec<(usize, Rational)> = remaining
            .iter()
            .filter(|&&j| !s[(p, j)].is_zero())
            .map(|&j| (j, s[(p, j)].clone()))
            .collect();
        for (i, si) in &row {
            let f = si / &dp;
            for (j, sj) in &row {
                let v = &s[(*i, *j)] - &f * sj;
                s[(*i, *j)] = v;
            }
        }
        pivots.push(dp.clone());
        steps.push(Step { pivot: p, d: dp, row });
    }
    PsdReport {
        psd: true,
        pivots,
        failure_vector: None,
    }
}

/// Pulls a vector `w` with `wᵀ S w < 0` on the current Schur complement back
/// through the eliminations: `v_p = −(s_p · v) / d_p` preserves the form.
fn fail(g: &Matrix, steps: &[Step], pivots: Vec<Rational>, w: Vec<(usize, Rational)>) -> PsdReport {
    let mut v = vec![Rational::zero(); g.rows()];
    for (i, x) in w {
        v[i] = x;
    }
    for st in steps.iter().rev() {
        let dot: Rational = st.row.iter().map(|(j, x)| x * &v[*j]).sum();
        v[st.pivot] = -dot / &st.d;
    }
    assert!(g.quadratic_form(&v).is_negative(), "failure vector does not certify");
    PsdReport {
        psd: false,
        pivots,
        failure_vector: Some(v),
    }
}

/// `(X0² + ‖X‖²)^t` in `n + 1` variables.
pub fn ball_power_h(n: usize, t: u32) -> MvPoly {
    let mut s = MvPoly::zero(n + 1);
    for i in 0..=n {
        s.add_term(ExpVec::unit(n + 1, i, 2), Rational::one());
    }
    s.pow(t)
}

/// `h_t = (1 + ‖X‖²)^t`.
pub fn h_t(n: usize, t: u32) -> MvPoly {
    ball_power_h(n, t).dehomogenize()
}

/// `X0^{2(t-d)} f^h + ε (X0² + ‖X‖²)^t`.
pub fn perturbed_homogeneous(f: &MvPoly, epsilon: &Rational, t: u32) -> Result<MvPoly, SosPertError> {
    let d = half_degree(f)?;
    if t < d {
        return Err(SosPertError::TooSmallT { t, d });
    }
    let fh = f.homogenize(2 * d).expect("degree is 2d");
    let shifted = fh.mul_term(&ExpVec::unit(f.nvars() + 1, 0, 2 * (t - d)), &Rational::one());
    Ok(&shifted + &ball_power_h(f.nvars(), t).scale(epsilon))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SosPertResult {
    pub gram: GramMatrix,
    pub report: PsdReport,
    pub epsilon: Rational,
    /// `t ε − ‖F̃_d‖₁ − ‖v‖² / (f(0) + ε)`; nonnegative values suffice for PSD.
    pub slack: Rational,
    /// `[m_t]ᵀ G [m_t]`.
    pub expansion: MvPoly,
}

/// Builds `G_t = F_t + ε A_t`, checks the Gram identity exactly and decides
/// positive semidefiniteness.
pub fn certify_sos_perturbed(f: &MvPoly, epsilon: &Rational, t: u32) -> Result<SosPertResult, SosPertError> {
    if !epsilon.is_positive() {
        return Err(SosPertError::NonPositiveEpsilon);
    }
    let ft = build_ft(f, t)?;
    let at = build_at(f.nvars(), t);
    let gram = ft.add_scaled(&at, epsilon);
    let expansion = gram.expand();
    assert_eq!(
        expansion,
        perturbed_homogeneous(f, epsilon, t)?,
        "Gram matrix does not re-expand to the perturbed polynomial"
    );
    let report = psd_check(&gram.entries);
    let slack = schur_slack(f, &ft, epsilon, t);
    Ok(SosPertResult {
        gram,
        report,
        epsilon: epsilon.clone(),
        slack,
        expansion,
    })
}

fn schur_slack(f: &MvPoly, ft: &GramMatrix, epsilon: &Rational, t: u32) -> Rational {
    let d = half_degree(f).expect("checked");
    let inner: Vec<usize> = (1..ft.dimension()).filter(|&i| ft.index[i].get(0) >= t - d).collect();
    let norm1 = inner
        .iter()
        .map(|&j| inner.iter().map(|&i| ft.entries[(i, j)].abs()).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero);
    let v_sq: Rational = (1..=f.nvars().min(ft.dimension() - 1))
        .map(|i| &ft.entries[(0, i)] * &ft.entries[(0, i)])
        .sum();
    let f0 = f.constant_term();
    rat(t as i64) * epsilon - norm1 - v_sq / (f0 + epsilon)
}

/// `θ_t = Σ_{k=0}^{t} Σ_i X_i^{2k} / k!`.
pub fn lasserre_theta(n: usize, t: u32) -> MvPoly {
    let mut out = MvPoly::zero(n);
    let mut fact = BigInt::one();
    for k in 0..=t {
        if k > 0 {
            fact *= k;
        }
        let c = Rational::new(BigInt::one(), fact.clone());
        for i in 0..n {
            out.add_term(ExpVec::unit(n, i, 2 * k), c.clone());
        }
    }
    out
}

/// `s_t = Σ_{k=0}^{t} 1/k!`, so that `‖θ_t‖₁ = n s_t`.
pub fn theta_normalizer(t: u32) -> Rational {
    let mut fact = BigInt::one();
    let mut s = Rational::zero();
    for k in 0..=t {
        if k > 0 {
            fact *= k;
        }
        s += Rational::new(BigInt::one(), fact.clone());
    }
    s
}

/// `‖h_t‖₁ = (n + 1)^t`.
pub fn h_t_norm(n: usize, t: u32) -> BigInt {
    BigInt::from(n + 1).pow(t)
}

#[derive(Debug, Serialize)]
struct ReportFile {
    t: u32,
    epsilon: String,
    dimension: usize,
    psd: bool,
    pivots: Vec<String>,
    failure_vector: Option<Vec<String>>,
    slack: String,
    expansion_sha256: String,
}

/// SHA-256 of the canonical text of a polynomial.
pub fn checksum(p: &MvPoly) -> String {
    let text = to_text(p, &default_names(p.nvars()));
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

impl SosPertResult {
    pub fn to_json(&self) -> String {
        let file = ReportFile {
            t: self.gram.t,
            epsilon: format_fraction(&self.epsilon),
            dimension: self.gram.dimension(),
            psd: self.report.psd,
            pivots: self.report.pivots.iter().map(format_fraction).collect(),
            failure_vector: self
                .report
                .failure_vector
                .as_ref()
                .map(|v| v.iter().map(format_fraction).collect()),
            slack: format_fraction(&self.slack),
            expansion_sha256: checksum(&self.expansion),
        };
        serde_json::to_string_pretty(&file).expect("serializable") + "\n"
    }
}
