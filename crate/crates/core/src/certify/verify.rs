//! Independent certificate checking.

use super::certificate::{subject_of, working_polynomial, Certificate, PertType};
use super::sosrur::identity_residual;
use crate::bounds::{epsilon_bound, SizeProfile};
use crate::poly::rational::{format_short, ratio};
use crate::poly::MvPoly;
use crate::zerodim::{groebner_basis, quotient_basis};
use num_traits::Signed;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Report for a certificate file that could not be parsed.
    pub fn malformed(detail: impl Into<String>) -> Self {
        VerificationReport {
            valid: false,
            checks: vec![Check {
                name: "structure".into(),
                passed: false,
                detail: detail.into(),
            }],
        }
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            valid: self.0.iter().all(|c| c.passed),
            checks: self.0,
        }
    }
}

/// Re-derives everything from `f` and the certificate data.
pub fn verify_certificate(f: &MvPoly, cert: &Certificate) -> VerificationReport {
    let mut ck = Checks(Vec::new());
    let n = f.nvars();
    let same = cert.polynomial == *f && cert.variables.len() == n;
    ck.push(
        "polynomial",
        same,
        if same {
            "matches the input"
        } else {
            "certificate is for a different polynomial"
        },
    );
    if !same {
        return ck.finish();
    }
    if !cert.nonneg {
        verify_witness(f, cert, &mut ck);
        return ck.finish();
    }
    let structural = cert.witness.is_none() && cert.sos.is_some() && cert.quotients.is_some();
    if !ck.push(
        "structure",
        structural,
        if structural {
            "sos data present, no witness"
        } else {
            "nonneg certificate needs sos and quotients and no witness"
        },
    ) {
        return ck.finish();
    }
    if f.is_zero() {
        ck.push("subject", false, "zero polynomial");
        return ck.finish();
    }
    if let Some(c) = &cert.shift {
        if c.len() != n {
            ck.push("subject", false, "shift has the wrong length");
            return ck.finish();
        }
    }
    let g = working_polynomial(f, cert.shift.as_deref());
    if g.degree() == 0 {
        verify_constant(&g, cert, &mut ck);
        return ck.finish();
    }
    let subject = match subject_of(&g, cert.pert_type, cert.lambda.as_ref()) {
        Some(s) => s,
        None => {
            ck.push("subject", false, "perturbation type and λ are inconsistent");
            return ck.finish();
        }
    };
    ck.push(
        "subject",
        subject == cert.subject,
        if subject == cert.subject {
            "reconstructed"
        } else {
            "differs from the reconstruction"
        },
    );
    lambda_range(&g, cert, &mut ck);
    let (rur, sos, quotients) = match (&cert.rur, &cert.sos, &cert.quotients) {
        (Some(r), Some(s), Some(q)) => (r, s, q),
        _ => {
            ck.push("rur_squarefree", false, "missing representation");
            return ck.finish();
        }
    };
    if rur.nvars() != n || rur.l.len() != n || quotients.len() != n || quotients.iter().any(|q| q.nvars() != n + 1) {
        ck.push(
            "rur_squarefree",
            false,
            "representation has the wrong number of variables",
        );
        return ck.finish();
    }
    // (c)
    let r0 = &rur.r0;
    let squarefree = !r0.is_zero() && !r0.is_constant() && r0.is_squarefree();
    let low_degree = rur.r.iter().all(|ri| ri.is_zero() || ri.deg() < r0.deg());
    let trace = squarefree && rur.trace_identity_holds();
    ck.push(
        "rur_squarefree",
        squarefree && trace && low_degree,
        match (squarefree, trace, low_degree) {
            (false, _, _) => "R0 is not a nonconstant squarefree polynomial".to_string(),
            (_, false, _) => "trace identity T R0' = Σ L_i R_i mod R0 fails".to_string(),
            (_, _, false) => "some R_i has degree ≥ deg R0".to_string(),
            _ => format!("deg R0 = {}", r0.deg()),
        },
    );
    if !squarefree {
        return ck.finish();
    }
    // (d)
    let grad = subject.gradient();
    let bad: Vec<usize> = grad
        .iter()
        .enumerate()
        .filter(|(_, p)| !rur.substitute(p).is_zero())
        .map(|(i, _)| i + 1)
        .collect();
    let dim = quotient_basis(&groebner_basis(&grad)).map(|q| q.dimension());
    let detail = match (&bad[..], &dim) {
        ([], Ok(d)) if *d == r0.deg() => format!("all partials vanish; {d} critical points parametrized"),
        ([], Ok(d)) => format!("quotient dimension {d} differs from deg R0 = {}", r0.deg()),
        ([], Err(e)) => format!("gradient ideal: {e}"),
        (b, _) => format!("partials {b:?} do not vanish on the parametrization"),
    };
    ck.push("variety_inclusion", bad.is_empty() && dim == Ok(r0.deg()), detail);
    // (e)
    let positive = sos.weights_positive();
    let residual = identity_residual(&subject, rur, sos, quotients, subject.degree());
    ck.push(
        "identity",
        positive && residual.is_zero(),
        match (positive, residual.is_zero()) {
            (false, _) => "a weight is not positive".to_string(),
            (_, false) => format!("residual has {} terms", residual.num_terms()),
            _ => "exact".to_string(),
        },
    );
    ck.finish()
}

fn lambda_range(g: &MvPoly, cert: &Certificate, ck: &mut Checks) {
    let g0 = g.constant_term();
    let (ok, detail) = match (cert.pert_type, &cert.lambda) {
        (PertType::NoPert, None) => (
            g0.is_positive(),
            "no perturbation; value at origin positive".to_string(),
        ),
        (PertType::NoPert, Some(_)) => (false, "unperturbed certificate carries λ".to_string()),
        (_, None) => (false, "perturbed certificate has no λ".to_string()),
        (PertType::PosPert, Some(l)) => {
            let ok = l.is_positive() && epsilon_bound(SizeProfile::of(g)).at_least(l) && g0.is_positive();
            (
                ok,
                if ok {
                    "0 < λ ≤ ε'".into()
                } else {
                    "λ outside (0, ε']".into()
                },
            )
        }
        (PertType::NegPert, Some(l)) => {
            // every candidate window (2^{-2γ}, 2^{-γ}] lies in (0, 1/2]
            let ok = l.is_positive() && *l < g0 && *l <= ratio(1, 2);
            (
                ok,
                if ok {
                    "0 < λ < min(f(0), 1/2]".to_string()
                } else {
                    format!("λ outside (0, min({}, 1/2)]", format_short(&g0))
                },
            )
        }
    };
    ck.push("lambda_range", ok, detail);
}

fn verify_constant(g: &MvPoly, cert: &Certificate, ck: &mut Checks) {
    let c = g.constant_term();
    let sos = cert.sos.as_ref().expect("checked by caller");
    let shape = cert.pert_type == PertType::NoPert
        && cert.lambda.is_none()
        && cert.rur.is_none()
        && cert.quotients.as_ref().is_some_and(|q| q.is_empty());
    ck.push("subject", shape && cert.subject == *g, "constant input");
    let expanded = sos.expand();
    let ok = sos.weights_positive() && expanded.is_constant() && expanded.coeff(0) == c && c.is_positive();
    ck.push(
        "identity",
        ok,
        if ok { "c = c · 1^2" } else { "constant identity fails" },
    );
}

fn verify_witness(f: &MvPoly, cert: &Certificate, ck: &mut Checks) {
    let structural = cert.witness.is_some() && cert.rur.is_none() && cert.sos.is_none() && cert.quotients.is_none();
    if !ck.push(
        "structure",
        structural,
        if structural {
            "witness only"
        } else {
            "negative certificate needs exactly a witness"
        },
    ) {
        return;
    }
    let w = cert.witness.as_ref().expect("checked");
    let (ok, detail) = match f.eval(&w.point) {
        Ok(v) if v.is_negative() && v == w.value => (true, format!("f = {} < 0", format_short(&v))),
        Ok(v) if v.is_negative() => (false, format!("recorded value differs from f = {}", format_short(&v))),
        Ok(v) => (false, format!("f = {} is not negative", format_short(&v))),
        Err(e) => (false, e.to_string()),
    };
    ck.push("witness", ok, detail);
    // the stage that produced the witness must be described consistently
    if cert.pert_type != PertType::NoPert || cert.lambda.is_some() {
        lambda_range(&working_polynomial(f, cert.shift.as_deref()), cert, ck);
    }
}
