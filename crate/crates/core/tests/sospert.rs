use num_traits::{Signed, Zero};
use polycert::poly::rational::{rat, ratio, Rational};
use polycert::poly::{parse_poly_auto, ExpVec, MvPoly};
use polycert::rng::SplitMix64;
use polycert::sospert::*;
use polycert::zerodim::linalg::Matrix;

const MOTZKIN: &str = "x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1";

fn poly(s: &str, n: usize) -> MvPoly {
    parse_poly_auto(s, n).unwrap()
}

/// Determinant by cofactor expansion; independent of the elimination code.
fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return rat(1);
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn all_principal_minors_nonneg(m: &Matrix) -> bool {
    let n = m.rows();
    (1u32..1 << n).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| m[(i, j)].clone()).collect())
            .collect();
        !det(&sub).is_negative()
    })
}

fn random_symmetric(rng: &mut SplitMix64, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    match rng.below(3) {
        // Bᵀ B with a random rank, often singular
        0 => {
            let k = rng.below(n as u64 + 1) as usize;
            let b: Vec<Vec<i64>> = (0..k)
                .map(|_| (0..n).map(|_| rng.range_inclusive(-3, 3)).collect())
                .collect();
            for i in 0..n {
                for j in 0..n {
                    let s: i64 = b.iter().map(|row| row[i] * row[j]).sum();
                    m[(i, j)] = rat(s);
                }
            }
        }
        _ => {
            for i in 0..n {
                for j in i..n {
                    let v = ratio(rng.range_inclusive(-4, 4), rng.range_inclusive(1, 3));
                    m[(i, j)] = v.clone();
                    m[(j, i)] = v;
                }
            }
        }
    }
    m
}

#[test]
fn motzkin_thresholds() {
    let m = poly(MOTZKIN, 2);
    assert_eq!(sos_pert_threshold(&m, &rat(1)).unwrap(), 6);
    assert_eq!(sos_pert_threshold(&m, &rat(2)).unwrap(), 3);
    assert_eq!(sos_pert_threshold(&m, &rat(0)), Err(SosPertError::NonPositiveEpsilon));
}

#[test]
fn threshold_first_branch() {
    // ∇f(0) = 0 and ‖f‖₁ = 2 ≤ ε d with ε = 1, d = 2
    let f = poly("x1^4 + x2^2", 2);
    assert_eq!(sos_pert_threshold(&f, &rat(1)).unwrap(), 2);
}

#[test]
fn motzkin_gram_matrix_is_psd_at_threshold() {
    let m = poly(MOTZKIN, 2);
    let r = certify_sos_perturbed(&m, &rat(1), 6).unwrap();
    assert_eq!(r.gram.dimension(), 28);
    assert!(r.report.psd);
    assert!(r.report.pivots.iter().all(|p| !p.is_negative()));
    let expected = &m.homogenize(6).unwrap().mul_term(&ExpVec::new(vec![6, 0, 0]), &rat(1)) + &ball_power_h(2, 6);
    assert_eq!(r.expansion, expected);
}

#[test]
fn motzkin_ft_at_t3_is_its_homogenization() {
    let m = poly(MOTZKIN, 2);
    assert_eq!(build_ft(&m, 3).unwrap().expand(), m.homogenize(6).unwrap());
}

#[test]
fn small_quadratic_is_psd() {
    let f = poly("x1^2 + 1", 1);
    let r = certify_sos_perturbed(&f, &rat(1), 1).unwrap();
    assert!(r.report.psd);
    assert_eq!(
        r.gram.entries,
        Matrix::from_rows(vec![vec![rat(2), rat(0)], vec![rat(0), rat(2)]])
    );
}

#[test]
fn indefinite_gram_gives_failure_vector() {
    // x1^2 - 3 x1 + 1 is negative at 1; a small perturbation stays indefinite
    let f = poly("x1^2 - 3*x1 + 1", 1);
    let r = certify_sos_perturbed(&f, &ratio(1, 10), 1).unwrap();
    assert!(!r.report.psd);
    let v = r.report.failure_vector.unwrap();
    assert!(r.gram.entries.quadratic_form(&v).is_negative());
}

#[test]
fn at_reexpands_to_ball_power() {
    for n in 1..=2 {
        for t in 0..=6 {
            assert_eq!(build_at(n, t).expand(), ball_power_h(n, t), "n={n} t={t}");
        }
    }
}

#[test]
fn at_block_eigenvalue_facts() {
    // A_{t,1}: entries with t-d ≤ α0 < t are at least t once t ≥ 2d
    for (n, d, t) in [(2usize, 3u32, 6u32), (1, 2, 5), (3, 1, 4)] {
        let a = build_at(n, t);
        for (i, e) in a.index.iter().enumerate() {
            let a0 = e.get(0);
            if a0 >= t - d && a0 < t {
                assert!(a.entries[(i, i)] >= rat(t as i64));
            }
            if e.pure_power().is_some_and(|(v, _)| v >= 1) {
                assert_eq!(a.entries[(i, i)], rat(1));
            }
        }
    }
}

#[test]
fn theorem_guarantee_on_random_sos() {
    let eps = [rat(1), ratio(1, 2), ratio(1, 4)];
    for seed in 0..20u64 {
        let mut rng = SplitMix64::new(seed);
        let n = 1 + (seed % 2) as usize;
        let d = 1 + rng.below(if n == 1 { 3 } else { 2 }) as u32;
        // a single square of a sparse polynomial with unit coefficients
        let mut q = MvPoly::zero(n);
        for _ in 0..2 {
            let k = rng.below(d as u64 + 1) as u32;
            let mut e = vec![0u32; n];
            for _ in 0..k {
                e[rng.below(n as u64) as usize] += 1;
            }
            q.add_term(ExpVec::new(e), rat(rng.range_inclusive(-1, 1)));
        }
        let mut top = vec![0u32; n];
        top[0] = d;
        q.add_term(ExpVec::new(top), rat(1));
        let f = &q * &q;
        let e = &eps[(seed % 3) as usize];
        let t = sos_pert_threshold(&f, e).unwrap();
        let r = certify_sos_perturbed(&f, e, t).unwrap();
        assert!(r.report.psd, "seed {seed}: f = {f:?}, t = {t}");
    }
}

#[test]
fn psd_agrees_with_principal_minors() {
    for seed in 0..120u64 {
        let mut rng = SplitMix64::new(seed);
        let n = 1 + rng.below(6) as usize;
        let m = random_symmetric(&mut rng, n);
        let r = psd_check(&m);
        assert_eq!(r.psd, all_principal_minors_nonneg(&m), "seed {seed}");
        if let Some(v) = &r.failure_vector {
            assert!(m.quadratic_form(v).is_negative());
        }
    }
}

#[test]
fn h_t_has_even_positive_structure() {
    for n in 1..=3 {
        for t in 0..=8 {
            let h = h_t(n, t);
            assert!(h
                .terms()
                .all(|(e, c)| c.is_positive() && e.exponents().iter().all(|x| x % 2 == 0)));
            assert_eq!(h.norms().one_norm, Rational::from_integer(h_t_norm(n, t)));
        }
    }
}

#[test]
fn theta_norm_and_subtraction_structure() {
    for n in 1..=3 {
        for t in 0..=8 {
            let th = lasserre_theta(n, t);
            assert_eq!(th.norms().one_norm, rat(n as i64) * theta_normalizer(t));
            // h_t minus the pure powers C(t,k) X_i^{2k}, k ≥ 1, keeps positive
            // coefficients on even exponents
            let mut rest = h_t(n, t);
            let mut binom = Rational::from_integer(1.into());
            for k in 1..=t {
                binom = binom * rat((t - k + 1) as i64) / rat(k as i64);
                for i in 0..n {
                    rest.add_term(ExpVec::unit(n, i, 2 * k), -binom.clone());
                }
            }
            assert!(rest
                .terms()
                .all(|(e, c)| c.is_positive() && e.exponents().iter().all(|x| x % 2 == 0)));
            // C(t,k) ≥ t!/(t-k)!/k! ≥ 1/k! coefficientwise against θ_t
            let mut fact = rat(1);
            let mut binom = rat(1);
            for k in 1..=t {
                fact *= rat(k as i64);
                binom = binom * rat((t - k + 1) as i64) / rat(k as i64);
                assert!(binom >= rat(1) / &fact);
            }
        }
    }
}

#[test]
fn report_is_deterministic() {
    let m = poly(MOTZKIN, 2);
    let a = certify_sos_perturbed(&m, &rat(1), 6).unwrap().to_json();
    let b = certify_sos_perturbed(&m, &rat(1), 6).unwrap().to_json();
    assert_eq!(a, b);
    assert!(a.contains("\"psd\": true"));
}
