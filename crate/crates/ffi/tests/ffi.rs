use polycert_ffi::*;
use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    polycert_string_free(p);
    s
}

#[test]
fn parse_eval_and_errors() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            polycert_poly_parse(cstr("x1*x2 + 1").as_ptr(), &mut p),
            PolycertStatus::Ok
        );
        assert_eq!(polycert_poly_nvars(p), 2);
        let mut v = ptr::null_mut();
        assert_eq!(
            polycert_poly_eval(p, cstr("1/2,-3").as_ptr(), &mut v),
            PolycertStatus::Ok
        );
        assert_eq!(take_string(v), "-1/2");
        assert_eq!(
            polycert_poly_eval(p, cstr("1").as_ptr(), &mut v),
            PolycertStatus::InvalidArgument
        );
        polycert_poly_free(p);

        let mut q = ptr::null_mut();
        assert_eq!(
            polycert_poly_parse(cstr("x1 +* 2").as_ptr(), &mut q),
            PolycertStatus::ParseError
        );
        let msg = CStr::from_ptr(polycert_last_error()).to_str().unwrap();
        assert!(msg.contains("position"), "{msg}");
        assert_eq!(polycert_poly_parse(ptr::null(), &mut q), PolycertStatus::NullArgument);
        assert_eq!(
            polycert_poly_parse(cstr("x1").as_ptr(), ptr::null_mut()),
            PolycertStatus::NullArgument
        );
        polycert_poly_free(ptr::null_mut());
        polycert_certificate_free(ptr::null_mut());
        polycert_string_free(ptr::null_mut());
    }
}

#[test]
fn certify_json_round_trip_and_verify() {
    unsafe {
        let text = cstr("x1^4 + 2*x1^2 + 1");
        let mut p = ptr::null_mut();
        assert_eq!(polycert_poly_parse(text.as_ptr(), &mut p), PolycertStatus::Ok);
        let mut c = ptr::null_mut();
        assert_eq!(
            polycert_certify(p, PolycertMode::Auto, 0, 4, &mut c),
            PolycertStatus::Ok
        );
        let mut nonneg = false;
        assert_eq!(polycert_certificate_is_nonneg(c, &mut nonneg), PolycertStatus::Ok);
        assert!(nonneg);
        let mut json = ptr::null_mut();
        assert_eq!(polycert_certificate_to_json(c, &mut json), PolycertStatus::Ok);
        let json = take_string(json);
        let mut c2 = ptr::null_mut();
        assert_eq!(
            polycert_certificate_from_json(cstr(&json).as_ptr(), &mut c2),
            PolycertStatus::Ok
        );
        let mut valid = false;
        let mut report = ptr::null_mut();
        assert_eq!(
            polycert_verify(text.as_ptr(), c2, &mut valid, &mut report),
            PolycertStatus::Ok
        );
        assert!(valid);
        assert!(take_string(report).contains("\"valid\": true"));
        assert_eq!(
            polycert_verify(cstr("x1^4 + 3").as_ptr(), c2, &mut valid, ptr::null_mut()),
            PolycertStatus::Ok
        );
        assert!(!valid);
        assert_eq!(
            polycert_certificate_from_json(cstr("{}").as_ptr(), &mut c2),
            PolycertStatus::MalformedCertificate
        );
        polycert_certificate_free(c);
        polycert_poly_free(p);
    }
}

#[test]
fn odd_degree_is_undecided() {
    unsafe {
        let mut p = ptr::null_mut();
        polycert_poly_parse(cstr("x1^3").as_ptr(), &mut p);
        let mut c = ptr::null_mut();
        assert_eq!(
            polycert_certify(p, PolycertMode::Auto, 0, 4, &mut c),
            PolycertStatus::Undecided
        );
        assert!(c.is_null());
        polycert_poly_free(p);
    }
}

#[test]
fn sospert_motzkin() {
    unsafe {
        let mut p = ptr::null_mut();
        polycert_poly_parse(cstr("x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1").as_ptr(), &mut p);
        let mut psd = false;
        let mut report = ptr::null_mut();
        assert_eq!(
            polycert_sospert(p, cstr("1").as_ptr(), 0, &mut psd, &mut report),
            PolycertStatus::Ok
        );
        assert!(psd);
        assert!(take_string(report).contains("\"t\": 6"));
        assert_eq!(
            polycert_sospert(p, cstr("0").as_ptr(), 0, &mut psd, ptr::null_mut()),
            PolycertStatus::InvalidArgument
        );
        polycert_poly_free(p);
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let src = manifest.join("tests/smoke.c");
    assert!(include.join("polycert.h").exists());
    let syntax = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status();
    match syntax {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => {
            eprintln!("no C compiler; skipping");
            return;
        }
    }
    let lib = target_dir().join("libpolycert_ffi.a");
    if !lib.exists() {
        eprintln!("static library not built yet; link step skipped");
        return;
    }
    let exe = std::env::temp_dir().join(format!("polycert_smoke_{}", std::process::id()));
    let built = Command::new("cc")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(built.success());
    let run = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stdout));
}
