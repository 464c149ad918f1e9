//! Staged certification: unperturbed, negatively perturbed and positively
//! perturbed transformed polynomials.

use super::certificate::{constant_sos, normalize, working_polynomial, Certificate, PertType};
use super::sosrur::{sos_rur, SosRurOutcome};
use super::CertifyError;
use crate::bounds::{epsilon_bound, SizeProfile};
use crate::hjpert::{neg_perturb, pick_lambda_pos, pos_perturb, Lambda, NegCandidates, Regime};
use crate::poly::rational::{rat, Rational};
use crate::poly::{default_names, MvPoly};
use crate::stereo::{shift_to_positive_constant, stereo_transform, witness_transport, ShiftOutcome, Witness};
use crate::unisos::WeightedSos;
use crate::zerodim::{is_zero_dim_no_infinity, Rur};
use num_traits::{Signed, Zero};

/// Attempts in the positive stage before a hard failure.
pub const POS_ATTEMPTS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Unperturbed, then negative, then positive perturbation.
    Auto,
    Pos,
    Neg,
    NoPert,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "auto" => Some(Mode::Auto),
            "pos" => Some(Mode::Pos),
            "neg" => Some(Mode::Neg),
            "nopert" => Some(Mode::NoPert),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub mode: Mode,
    pub seed: u64,
    /// Grid parameter for shift points and the λ candidate sets.
    pub k: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            mode: Mode::Auto,
            seed: 0,
            k: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaOutcome {
    Certified,
    /// The perturbed polynomial is negative at a probe point.
    NegativeProbe,
    /// SOS-RUR found a negative value of the perturbed polynomial.
    NegativeValue,
    /// Every candidate λ of the window was rejected.
    Exhausted,
}

/// One γ iteration of the negative stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaLog {
    pub gamma: u32,
    pub candidates: u64,
    pub attempts: u64,
    /// λ with a positive-dimensional gradient ideal or solutions at infinity.
    pub rejected: u64,
    /// λ for which no separating form with squarefree characteristic
    /// polynomial was found.
    pub not_radical: u64,
    pub outcome: GammaOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NegFailReason {
    /// The transformed polynomial is not positive at this point, so no
    /// negative perturbation can be nonnegative.
    NonPositiveAt(Vec<Rational>),
    /// `2^{-γ}` dropped to `ε'` without a certificate.
    WindowExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegFailure {
    pub reason: NegFailReason,
    pub gammas: Vec<GammaLog>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunLog {
    pub events: Vec<String>,
    pub gammas: Vec<GammaLog>,
    pub pos_attempts: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NegOutcome {
    Certified(Box<Certificate>),
    Fail(NegFailure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certificate(Box<Certificate>),
    /// Only in `Mode::Neg`: strict positivity could not be certified.
    NegFail(NegFailure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyRun {
    pub outcome: CertifyOutcome,
    pub log: RunLog,
}

/// Result of one stage on the working polynomial `g`.
#[derive(Debug, Clone)]
enum StageBody {
    Nonneg {
        rur: Rur,
        sos: WeightedSos,
        quotients: Vec<MvPoly>,
    },
    /// Point where `g < 0`.
    Negative(Vec<Rational>),
}

#[derive(Debug, Clone)]
struct Stage {
    pert: PertType,
    lambda: Option<Rational>,
    subject: MvPoly,
    body: StageBody,
}

fn check_working(g: &MvPoly) -> Result<(), CertifyError> {
    if g.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    if g.degree() % 2 == 1 {
        return Err(CertifyError::OddDegree(g.degree()));
    }
    if g.degree() == 0 {
        return Err(CertifyError::Precondition("constant polynomial".into()));
    }
    if !g.has_integer_coefficients() {
        return Err(CertifyError::Precondition("coefficients must be integers".into()));
    }
    if !g.constant_term().is_positive() {
        return Err(CertifyError::Precondition(
            "value at the origin must be positive".into(),
        ));
    }
    Ok(())
}

/// Maps an SOS-RUR result for a subject bounded above by `𝒮(g)` back to `g`.
fn lift(
    g: &MvPoly,
    pert: PertType,
    lambda: Option<Rational>,
    subject: MvPoly,
    out: SosRurOutcome,
) -> Result<Stage, CertifyError> {
    let body = match out {
        SosRurOutcome::Nonneg { rur, sos, quotients } => StageBody::Nonneg { rur, sos, quotients },
        SosRurOutcome::Negative { point, .. } => {
            let w = witness_transport(g, &point).map_err(|e| CertifyError::Internal(e.to_string()))?;
            StageBody::Negative(w.point)
        }
    };
    Ok(Stage {
        pert,
        lambda,
        subject,
        body,
    })
}

/// Stage 1: `None` when the gradient of `𝒮(g)` is not zero-dimensional or
/// has solutions at infinity.
fn stage_nopert(g: &MvPoly, seed: u64, log: &mut RunLog) -> Result<Option<Stage>, CertifyError> {
    let s = stereo_transform(g).transformed;
    if !is_zero_dim_no_infinity(&s.gradient()) {
        log.events
            .push("nopert: gradient ideal not zero-dimensional without infinity".into());
        return Ok(None);
    }
    match sos_rur(&s, seed) {
        Ok(out) => {
            log.events.push("nopert: decided".into());
            lift(g, PertType::NoPert, None, s, out).map(Some)
        }
        Err(CertifyError::NotRadical) => {
            log.events.push("nopert: not radical".into());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn stage_pos(g: &MvPoly, seed: u64, log: &mut RunLog) -> Result<Stage, CertifyError> {
    let s = stereo_transform(g).transformed;
    let base = pick_lambda_pos(SizeProfile::of(g)).value;
    for j in 0..POS_ATTEMPTS {
        log.pos_attempts = j + 1;
        let value = &base / rat(2 * j as i64 + 1);
        let lambda = Lambda {
            value: value.clone(),
            regime: Regime::Pos,
            gamma: None,
        };
        let subject = pos_perturb(&s, &lambda).map_err(|e| CertifyError::Internal(e.to_string()))?;
        match sos_rur(&subject, seed) {
            Ok(out) => {
                log.events.push(format!("pos: decided at attempt {j}"));
                return lift(g, PertType::PosPert, Some(value), subject, out);
            }
            Err(CertifyError::NotRadical) => {
                log.events.push(format!("pos: not radical at attempt {j}"));
            }
            Err(e) => return Err(e),
        }
    }
    Err(CertifyError::HardFailure { attempts: POS_ATTEMPTS })
}

/// Points where a negative perturbation is checked before running SOS-RUR:
/// the origin and `±e_i`.
fn probes(n: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![Rational::zero(); n]];
    for i in 0..n {
        for s in [1, -1] {
            let mut p = vec![Rational::zero(); n];
            p[i] = rat(s);
            out.push(p);
        }
    }
    out
}

fn stage_neg(g: &MvPoly, seed: u64, k: u32, log: &mut RunLog) -> Result<Result<Stage, NegFailure>, CertifyError> {
    let s = stereo_transform(g).transformed;
    let profile = SizeProfile::of(g);
    let n = g.nvars();
    let mut probe_points = probes(n);
    let mut gammas = Vec::new();
    for p in &probe_points {
        if !s.eval(p).expect("dimension matches").is_positive() {
            log.events
                .push("neg: transformed polynomial not positive at a probe".into());
            return Ok(Err(NegFailure {
                reason: NegFailReason::NonPositiveAt(p.clone()),
                gammas,
            }));
        }
    }
    let (eps_num, eps_den) = epsilon_bound(profile).fraction();
    let mut gamma: u32 = 1;
    // 2^{-γ} > ε'
    while eps_den > &eps_num << gamma as usize {
        let cands = NegCandidates::new(n as u32, profile.d, k, seed, gamma);
        let mut entry = GammaLog {
            gamma,
            candidates: cands.size,
            attempts: 0,
            rejected: 0,
            not_radical: 0,
            outcome: GammaOutcome::Exhausted,
        };
        let mut attempt = 0u64;
        while let Ok(lambda) = cands.lambda(gamma, attempt) {
            attempt += 1;
            entry.attempts = attempt;
            let subject = neg_perturb(&s, &lambda).map_err(|e| CertifyError::Internal(e.to_string()))?;
            if probe_points
                .iter()
                .any(|p| subject.eval(p).expect("dimension matches").is_negative())
            {
                entry.outcome = GammaOutcome::NegativeProbe;
                break;
            }
            if !is_zero_dim_no_infinity(&subject.gradient()) {
                entry.rejected += 1;
                continue;
            }
            match sos_rur(&subject, seed) {
                Ok(SosRurOutcome::Nonneg { rur, sos, quotients }) => {
                    entry.outcome = GammaOutcome::Certified;
                    gammas.push(entry);
                    log.gammas = gammas;
                    log.events.push(format!("neg: certified at gamma {gamma}"));
                    return Ok(Ok(Stage {
                        pert: PertType::NegPert,
                        lambda: Some(lambda.value),
                        subject,
                        body: StageBody::Nonneg { rur, sos, quotients },
                    }));
                }
                Ok(SosRurOutcome::Negative { point, .. }) => {
                    probe_points.push(point);
                    entry.outcome = GammaOutcome::NegativeValue;
                    break;
                }
                Err(CertifyError::NotRadical) => entry.not_radical += 1,
                Err(CertifyError::PositiveDimensional) => entry.rejected += 1,
                Err(e) => return Err(e),
            }
        }
        gammas.push(entry);
        gamma = gamma
            .checked_mul(2)
            .ok_or(CertifyError::Internal("gamma overflow".into()))?;
    }
    log.gammas = gammas.clone();
    log.events.push("neg: window exhausted".into());
    Ok(Err(NegFailure {
        reason: NegFailReason::WindowExhausted,
        gammas,
    }))
}

fn names(n: usize) -> Vec<String> {
    default_names(n)
}

fn witness_certificate(
    f: &MvPoly,
    point: Vec<Rational>,
    pert: PertType,
    lambda: Option<Rational>,
    shift: Option<Vec<i64>>,
    subject: MvPoly,
) -> Certificate {
    let value = f.eval(&point).expect("dimension matches");
    let profile = SizeProfile::of(&working_polynomial(f, shift.as_deref()));
    Certificate {
        variables: names(f.nvars()),
        polynomial: f.clone(),
        nonneg: false,
        pert_type: pert,
        lambda,
        shift,
        rur: None,
        sos: None,
        quotients: None,
        witness: Some(Witness { point, value }),
        profile,
        subject,
    }
}

fn assemble(f: &MvPoly, g: &MvPoly, shift: Option<Vec<i64>>, stage: Stage) -> Certificate {
    match stage.body {
        StageBody::Nonneg { rur, sos, quotients } => Certificate {
            variables: names(f.nvars()),
            polynomial: f.clone(),
            nonneg: true,
            pert_type: stage.pert,
            lambda: stage.lambda,
            shift,
            rur: Some(rur),
            sos: Some(sos),
            quotients: Some(quotients),
            witness: None,
            profile: SizeProfile::of(g),
            subject: stage.subject,
        },
        StageBody::Negative(p) => {
            let point = match &shift {
                Some(c) => p.iter().zip(c).map(|(x, &ci)| x + rat(ci)).collect(),
                None => p,
            };
            witness_certificate(f, point, stage.pert, stage.lambda, shift, stage.subject)
        }
    }
}

/// Positive-perturbation stage on an integer polynomial of even degree with positive value at 0.
pub fn hj_sos_pos(f: &MvPoly, seed: u64) -> Result<Certificate, CertifyError> {
    check_working(f)?;
    let stage = stage_pos(f, seed, &mut RunLog::default())?;
    Ok(assemble(f, f, None, stage))
}

/// Negative-perturbation stage on an integer polynomial of even degree with positive value at 0.
pub fn hj_sos_neg(f: &MvPoly, seed: u64, k: u32) -> Result<NegOutcome, CertifyError> {
    hj_sos_neg_logged(f, seed, k, &mut RunLog::default())
}

pub fn hj_sos_neg_logged(f: &MvPoly, seed: u64, k: u32, log: &mut RunLog) -> Result<NegOutcome, CertifyError> {
    check_working(f)?;
    Ok(match stage_neg(f, seed, k, log)? {
        Ok(stage) => NegOutcome::Certified(Box::new(assemble(f, f, None, stage))),
        Err(fail) => NegOutcome::Fail(fail),
    })
}

/// Full pipeline with default options.
pub fn hj_sos_rur(f: &MvPoly, seed: u64) -> Result<Certificate, CertifyError> {
    let opts = CertifyOptions {
        seed,
        ..CertifyOptions::default()
    };
    match certify(f, &opts)?.outcome {
        CertifyOutcome::Certificate(c) => Ok(*c),
        CertifyOutcome::NegFail(_) => unreachable!("auto mode ends with the positive stage"),
    }
}

/// Certifies nonnegativity of `f` (rational coefficients) or finds a
/// rational point where it is negative.
pub fn certify(f: &MvPoly, opts: &CertifyOptions) -> Result<CertifyRun, CertifyError> {
    let mut log = RunLog::default();
    if f.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    let n = f.nvars();
    if f.degree() == 0 {
        let c = f.constant_term();
        let g = normalize(f);
        let cert = if c.is_positive() {
            Certificate {
                variables: names(n),
                polynomial: f.clone(),
                nonneg: true,
                pert_type: PertType::NoPert,
                lambda: None,
                shift: None,
                rur: None,
                sos: Some(constant_sos(&g.constant_term())),
                quotients: Some(Vec::new()),
                witness: None,
                profile: SizeProfile::of(&g),
                subject: g,
            }
        } else {
            witness_certificate(f, vec![Rational::zero(); n], PertType::NoPert, None, None, g)
        };
        log.events.push("constant input".into());
        return Ok(CertifyRun {
            outcome: CertifyOutcome::Certificate(Box::new(cert)),
            log,
        });
    }
    if f.degree() % 2 == 1 {
        return Err(CertifyError::OddDegree(f.degree()));
    }
    let mut g = normalize(f);
    let mut shift = None;
    if !g.constant_term().is_positive() {
        match shift_to_positive_constant(&g, opts.seed, opts.k.max(2)) {
            ShiftOutcome::Negative(w) => {
                log.events.push("shift: sampled a negative point".into());
                let subject = stereo_transform(&g).transformed;
                let cert = witness_certificate(f, w.point, PertType::NoPert, None, None, subject);
                return Ok(CertifyRun {
                    outcome: CertifyOutcome::Certificate(Box::new(cert)),
                    log,
                });
            }
            ShiftOutcome::Shifted { g: shifted, shift: c } => {
                log.events.push(format!("shift: translated by {c:?}"));
                g = shifted;
                shift = Some(c);
            }
        }
    }
    let done = |stage: Stage, log: RunLog, shift: Option<Vec<i64>>, g: &MvPoly| CertifyRun {
        outcome: CertifyOutcome::Certificate(Box::new(assemble(f, g, shift, stage))),
        log,
    };
    if matches!(opts.mode, Mode::Auto | Mode::NoPert) {
        match stage_nopert(&g, opts.seed, &mut log)? {
            Some(stage) => return Ok(done(stage, log, shift, &g)),
            None if opts.mode == Mode::NoPert => {
                return Err(CertifyError::StageNotApplicable("nopert"));
            }
            None => {}
        }
    }
    if matches!(opts.mode, Mode::Auto | Mode::Neg) {
        match stage_neg(&g, opts.seed, opts.k, &mut log)? {
            Ok(stage) => return Ok(done(stage, log, shift, &g)),
            Err(fail) if opts.mode == Mode::Neg => {
                return Ok(CertifyRun {
                    outcome: CertifyOutcome::NegFail(fail),
                    log,
                });
            }
            Err(_) => {}
        }
    }
    let stage = stage_pos(&g, opts.seed, &mut log)?;
    Ok(done(stage, log, shift, &g))
}
