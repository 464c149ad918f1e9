//! JSON certificate files.

use super::certificate::{subject_of, working_polynomial, Certificate, PertType, FORMAT_VERSION};
use super::CertifyError;
use crate::bounds::SizeProfile;
use crate::poly::rational::{format_fraction, parse_rational, Rational};
use crate::poly::{default_names, ExpVec, MvPoly, UvPoly};
use crate::stereo::{stereo_transform, Witness};
use crate::unisos::WeightedSos;
use crate::zerodim::Rur;
use serde::{Deserialize, Serialize};

type TermList = Vec<(Vec<u32>, String)>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    version: u32,
    variables: Vec<String>,
    polynomial: TermList,
    nonneg: bool,
    pert_type: String,
    lambda: Option<String>,
    shift: Option<Vec<i64>>,
    rur: Option<RurFile>,
    sos: Option<SosFile>,
    quotients: Option<Vec<TermList>>,
    witness: Option<WitnessFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct RurFile {
    R0: Vec<String>,
    R: Vec<Vec<String>>,
    L: Vec<String>,
    D: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SosFile {
    weights: Vec<String>,
    squares: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessFile {
    point: Vec<String>,
    value: String,
}

fn rats(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_fraction).collect()
}

/// Terms in descending graded-lex order.
fn terms(p: &MvPoly) -> TermList {
    p.terms()
        .rev()
        .map(|(e, c)| (e.exponents().to_vec(), format_fraction(c)))
        .collect()
}

pub fn to_json(cert: &Certificate) -> String {
    let file = CertificateFile {
        version: FORMAT_VERSION,
        variables: cert.variables.clone(),
        polynomial: terms(&cert.polynomial),
        nonneg: cert.nonneg,
        pert_type: cert.pert_type.as_str().to_string(),
        lambda: cert.lambda.as_ref().map(format_fraction),
        shift: cert.shift.clone(),
        rur: cert.rur.as_ref().map(|r| RurFile {
            R0: rats(r.r0.coeffs()),
            R: r.r.iter().map(|ri| rats(ri.coeffs())).collect(),
            L: rats(&r.l),
            D: cert.identity_degree(),
        }),
        sos: cert.sos.as_ref().map(|s| SosFile {
            weights: rats(&s.weights),
            squares: s.squares.iter().map(|q| rats(q.coeffs())).collect(),
        }),
        quotients: cert.quotients.as_ref().map(|qs| qs.iter().map(terms).collect()),
        witness: cert.witness.as_ref().map(|w| WitnessFile {
            point: rats(&w.point),
            value: format_fraction(&w.value),
        }),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

fn malformed(field: &str, msg: impl std::fmt::Display) -> CertifyError {
    CertifyError::Malformed(format!("{field}: {msg}"))
}

/// Only the canonical `num/den` spelling is accepted.
fn parse_canonical(field: &str, s: &str) -> Result<Rational, CertifyError> {
    let x = parse_rational(s).map_err(|e| malformed(field, e))?;
    if format_fraction(&x) != s {
        return Err(malformed(field, format!("non-canonical rational {s:?}")));
    }
    Ok(x)
}

fn parse_list(field: &str, xs: &[String]) -> Result<Vec<Rational>, CertifyError> {
    xs.iter().map(|s| parse_canonical(field, s)).collect()
}

fn parse_uv(field: &str, xs: &[String]) -> Result<UvPoly, CertifyError> {
    let coeffs = parse_list(field, xs)?;
    let p = UvPoly::new(coeffs.clone());
    if p.coeffs().len() != coeffs.len() {
        return Err(malformed(field, "trailing zero coefficients"));
    }
    Ok(p)
}

fn parse_terms(field: &str, nvars: usize, ts: &TermList) -> Result<MvPoly, CertifyError> {
    let mut out: Vec<(ExpVec, Rational)> = Vec::with_capacity(ts.len());
    for (e, c) in ts {
        if e.len() != nvars {
            return Err(malformed(
                field,
                format!("exponent vector of length {} (expected {nvars})", e.len()),
            ));
        }
        let c = parse_canonical(field, c)?;
        if c == Rational::from_integer(0.into()) {
            return Err(malformed(field, "zero coefficient"));
        }
        out.push((ExpVec::new(e.clone()), c));
    }
    let p = MvPoly::from_terms(nvars, out);
    if terms(&p) != *ts {
        return Err(malformed(field, "terms not in descending graded-lex order or repeated"));
    }
    Ok(p)
}

pub fn from_json(text: &str) -> Result<Certificate, CertifyError> {
    let file: CertificateFile = serde_json::from_str(text).map_err(|e| malformed("document", e))?;
    if file.version != FORMAT_VERSION {
        return Err(malformed("version", format!("unsupported version {}", file.version)));
    }
    let n = file.variables.len();
    if file.variables != default_names(n) {
        return Err(malformed("variables", "expected x1, …, xn"));
    }
    let polynomial = parse_terms("polynomial", n, &file.polynomial)?;
    let pert_type = PertType::parse(&file.pert_type).ok_or_else(|| malformed("pert_type", &file.pert_type))?;
    let lambda = file
        .lambda
        .as_deref()
        .map(|s| parse_canonical("lambda", s))
        .transpose()?;
    if let Some(c) = &file.shift {
        if c.len() != n {
            return Err(malformed("shift", "length differs from the number of variables"));
        }
    }
    let g = working_polynomial(&polynomial, file.shift.as_deref());
    let subject = if g.degree() == 0 {
        g.clone()
    } else {
        subject_of(&g, pert_type, lambda.as_ref()).unwrap_or_else(|| stereo_transform(&g).transformed)
    };
    let rur = match &file.rur {
        Some(r) => {
            if r.R.len() != n || r.L.len() != n {
                return Err(malformed("rur", "R and L must have one entry per variable"));
            }
            if r.D != subject.degree() {
                return Err(malformed(
                    "rur.D",
                    format!("{} differs from the subject degree {}", r.D, subject.degree()),
                ));
            }
            let r0 = parse_uv("rur.R0", &r.R0)?;
            let rs =
                r.R.iter()
                    .map(|x| parse_uv("rur.R", x))
                    .collect::<Result<Vec<_>, _>>()?;
            Some(Rur {
                quotient_dim: r0.coeffs().len().saturating_sub(1),
                r0,
                r: rs,
                l: parse_list("rur.L", &r.L)?,
            })
        }
        None => None,
    };
    let sos = match &file.sos {
        Some(s) => {
            if s.weights.len() != s.squares.len() {
                return Err(malformed("sos", "weights and squares differ in length"));
            }
            Some(WeightedSos {
                weights: parse_list("sos.weights", &s.weights)?,
                squares: s
                    .squares
                    .iter()
                    .map(|x| parse_uv("sos.squares", x))
                    .collect::<Result<Vec<_>, _>>()?,
            })
        }
        None => None,
    };
    let quotients = match &file.quotients {
        Some(qs) => Some(
            qs.iter()
                .map(|q| parse_terms("quotients", n + 1, q))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let witness = match &file.witness {
        Some(w) => {
            if w.point.len() != n {
                return Err(malformed(
                    "witness.point",
                    "length differs from the number of variables",
                ));
            }
            Some(Witness {
                point: parse_list("witness.point", &w.point)?,
                value: parse_canonical("witness.value", &w.value)?,
            })
        }
        None => None,
    };
    Ok(Certificate {
        variables: file.variables,
        polynomial,
        nonneg: file.nonneg,
        pert_type,
        lambda,
        shift: file.shift,
        rur,
        sos,
        quotients,
        witness,
        profile: SizeProfile::of(&g),
        subject,
    })
}
