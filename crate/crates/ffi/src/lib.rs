//! C ABI for polycert. Objects cross the boundary as opaque handles owned by
//! the caller and released with the matching `*_free` function. Every entry
//! point returns a `PolycertStatus`; on failure `polycert_last_error` gives a
//! message for the calling thread.

use polycert::certify::{
    certify, from_json, to_json, verify_certificate, Certificate, CertifyOptions, CertifyOutcome, Mode,
};
use polycert::poly::rational::{format_fraction, parse_rational, Rational};
use polycert::poly::{parse_poly, parse_poly_auto, MvPoly};
use polycert::sospert::{certify_sos_perturbed, sos_pert_threshold};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolycertStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    /// The certification pipeline could not reach a decision.
    Undecided = 5,
    MalformedCertificate = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolycertMode {
    Auto = 0,
    Pos = 1,
    Neg = 2,
    NoPert = 3,
}

/// Parsed polynomial.
pub struct PolycertPoly(MvPoly);

/// Nonnegativity certificate or witness.
pub struct PolycertCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

type Fallible<T> = Result<T, (PolycertStatus, String)>;

fn guard(f: impl FnOnce() -> Fallible<()>) -> PolycertStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PolycertStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PolycertStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Fallible<&'a str> {
    if p.is_null() {
        return Err((PolycertStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PolycertStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Fallible<&'a T> {
    p.as_ref()
        .ok_or((PolycertStatus::NullArgument, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Fallible<&'a mut T> {
    p.as_mut()
        .ok_or((PolycertStatus::NullArgument, format!("{what} is null")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn polycert_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a polynomial in `x1, x2, …`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out_poly` must be writable.
#[no_mangle]
pub unsafe extern "C" fn polycert_poly_parse(text: *const c_char, out_poly: *mut *mut PolycertPoly) -> PolycertStatus {
    guard(|| {
        let t = self::text(text, "text")?;
        let slot = out(out_poly, "out_poly")?;
        let f = parse_poly_auto(t, 1).map_err(|e| (PolycertStatus::ParseError, e.to_string()))?;
        *slot = Box::into_raw(Box::new(PolycertPoly(f)));
        Ok(())
    })
}

/// Number of variables of a polynomial, or 0 for a null handle.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polycert_poly_nvars(poly: *const PolycertPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.0.nvars())
}

/// Exact value at a point given as `"p1/q1,…,pn/qn"`; the result is a
/// string `"num/den"` to be released with `polycert_string_free`.
///
/// # Safety
/// Pointers must be valid as described.
#[no_mangle]
pub unsafe extern "C" fn polycert_poly_eval(
    poly: *const PolycertPoly,
    point: *const c_char,
    out_value: *mut *mut c_char,
) -> PolycertStatus {
    guard(|| {
        let f = &handle(poly, "poly")?.0;
        let pt = text(point, "point")?;
        let slot = out(out_value, "out_value")?;
        let coords: Vec<Rational> = pt
            .split(',')
            .map(|s| parse_rational(s).map_err(|e| (PolycertStatus::ParseError, e.to_string())))
            .collect::<Result<_, _>>()?;
        let v = f
            .eval(&coords)
            .map_err(|e| (PolycertStatus::InvalidArgument, e.to_string()))?;
        *slot = c_string(format_fraction(&v));
        Ok(())
    })
}

/// # Safety
/// `poly` must be null or a handle from `polycert_poly_parse`.
#[no_mangle]
pub unsafe extern "C" fn polycert_poly_free(poly: *mut PolycertPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Runs the certification pipeline. A negative polynomial yields a
/// certificate carrying a witness; `Undecided` means no certificate.
///
/// # Safety
/// Pointers must be valid as described.
#[no_mangle]
pub unsafe extern "C" fn polycert_certify(
    poly: *const PolycertPoly,
    mode: PolycertMode,
    seed: u64,
    k: u32,
    out_cert: *mut *mut PolycertCertificate,
) -> PolycertStatus {
    guard(|| {
        let f = &handle(poly, "poly")?.0;
        let slot = out(out_cert, "out_cert")?;
        let mode = match mode {
            PolycertMode::Auto => Mode::Auto,
            PolycertMode::Pos => Mode::Pos,
            PolycertMode::Neg => Mode::Neg,
            PolycertMode::NoPert => Mode::NoPert,
        };
        let run =
            certify(f, &CertifyOptions { mode, seed, k }).map_err(|e| (PolycertStatus::Undecided, e.to_string()))?;
        match run.outcome {
            CertifyOutcome::Certificate(c) => {
                *slot = Box::into_raw(Box::new(PolycertCertificate(*c)));
                Ok(())
            }
            CertifyOutcome::NegFail(_) => Err((PolycertStatus::Undecided, "negative perturbation stage failed".into())),
        }
    })
}

/// Whether the certificate proves nonnegativity (`true`) or carries a
/// witness of a negative value (`false`).
///
/// # Safety
/// Pointers must be valid as described.
#[no_mangle]
pub unsafe extern "C" fn polycert_certificate_is_nonneg(
    cert: *const PolycertCertificate,
    out_nonneg: *mut bool,
) -> PolycertStatus {
    guard(|| {
        let c = &handle(cert, "cert")?.0;
        *out(out_nonneg, "out_nonneg")? = c.nonneg;
        Ok(())
    })
}

/// Canonical JSON text, released with `polycert_string_free`.
///
/// # Safety
/// Pointers must be valid as described.
#[no_mangle]
pub unsafe extern "C" fn polycert_certificate_to_json(
    cert: *const PolycertCertificate,
    out_json: *mut *mut c_char,
) -> PolycertStatus {
    guard(|| {
        let c = &handle(cert, "cert")?.0;
        *out(out_json, "out_json")? = c_string(to_json(c));
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid as described.
#[no_mangle]
pub unsafe extern "C" fn polycert_certificate_from_json(
    json: *const c_char,
    out_cert: *mut *mut PolycertCertificate,
) -> PolycertStatus {
    guard(|| {
        let t = text(json, "json")?;
        let slot = out(out_cert, "out_cert")?;
        let c = from_json(t).map_err(|e| (PolycertStatus::MalformedCertificate, e.to_string()))?;
        *slot = Box::into_raw(Box::new(PolycertCertificate(c)));
        Ok(())
    })
}

/// # Safety
/// `cert` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn polycert_certificate_free(cert: *mut PolycertCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Checks a certificate against polynomial text, reading the variable names
/// from the certificate. `out_report` may be null; otherwise it receives the
/// JSON report, released with `polycert_string_free`.
///
/// # Safety
/// Pointers must be valid as described.
#[no_mangle]
pub unsafe extern "C" fn polycert_verify(
    poly_text: *const c_char,
    cert: *const PolycertCertificate,
    out_valid: *mut bool,
    out_report: *mut *mut c_char,
) -> PolycertStatus {
    guard(|| {
        let t = text(poly_text, "poly_text")?;
        let c = &handle(cert, "cert")?.0;
        let valid = out(out_valid, "out_valid")?;
        let f = parse_poly(t, &c.variables).map_err(|e| (PolycertStatus::ParseError, e.to_string()))?;
        let report = verify_certificate(&f, c);
        *valid = report.valid;
        if let Some(slot) = out_report.as_mut() {
            *slot = c_string(report.to_json());
        }
        Ok(())
    })
}

/// Gram matrix check for `f + ε(1 + ‖X‖²)^t`; `t = 0` selects the
/// guaranteed threshold. `out_report` may be null.
///
/// # Safety
/// Pointers must be valid as described.
#[no_mangle]
pub unsafe extern "C" fn polycert_sospert(
    poly: *const PolycertPoly,
    epsilon: *const c_char,
    t: u32,
    out_psd: *mut bool,
    out_report: *mut *mut c_char,
) -> PolycertStatus {
    guard(|| {
        let f = &handle(poly, "poly")?.0;
        let e = parse_rational(text(epsilon, "epsilon")?).map_err(|e| (PolycertStatus::ParseError, e.to_string()))?;
        let psd = out(out_psd, "out_psd")?;
        let invalid = |e: polycert::sospert::SosPertError| (PolycertStatus::InvalidArgument, e.to_string());
        let t = if t == 0 {
            sos_pert_threshold(f, &e).map_err(invalid)?
        } else {
            t
        };
        let r = certify_sos_perturbed(f, &e, t).map_err(invalid)?;
        *psd = r.report.psd;
        if let Some(slot) = out_report.as_mut() {
            *slot = c_string(r.to_json());
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn polycert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
