use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ambiskew_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ambiskew_string_free(s) };
    out
}

fn last_error() -> String {
    let p = ambiskew_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn parse(text: &str) -> (AmbiskewStatus, *mut AmbiskewSession) {
    let c = CString::new(text).unwrap();
    let mut s = ptr::null_mut();
    let st = unsafe { ambiskew_session_parse(c.as_ptr(), &mut s) };
    (st, s)
}

fn run(s: *mut AmbiskewSession) -> *mut AmbiskewReport {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { ambiskew_session_run(s, &mut r) }, AmbiskewStatus::Ok);
    r
}

#[test]
fn parse_run_and_inspect() {
    let (st, s) = parse("algebra W = weyl(U, V);\nassert W: [U, V] == 1;\nassert W: U*V == V*U;\n");
    assert_eq!(st, AmbiskewStatus::Ok);
    assert!(ambiskew_last_error().is_null());
    let r = run(s);
    unsafe {
        assert_eq!(ambiskew_report_passed(r), 0);
        assert_eq!(ambiskew_report_skipped(r), 0);
        assert_eq!(ambiskew_report_verdict_count(r), 2);
        let (mut name, mut pass, mut witness) = (ptr::null_mut(), -1, ptr::null_mut());
        assert_eq!(ambiskew_report_verdict(r, 1, &mut name, &mut pass, &mut witness), AmbiskewStatus::Ok);
        assert_eq!(pass, 0);
        assert!(take(name).contains("U*V"));
        assert!(!take(witness).is_empty());
        assert_eq!(ambiskew_report_verdict(r, 0, ptr::null_mut(), &mut pass, ptr::null_mut()), AmbiskewStatus::Ok);
        assert_eq!(pass, 1);
        assert_eq!(ambiskew_report_verdict(r, 2, ptr::null_mut(), &mut pass, ptr::null_mut()), AmbiskewStatus::OutOfRange);
        assert!(last_error().contains("index 2"));

        let mut json = ptr::null_mut();
        assert_eq!(ambiskew_report_json(r, &mut json), AmbiskewStatus::Ok);
        assert!(take(json).starts_with('{'));
        let mut text = ptr::null_mut();
        assert_eq!(ambiskew_report_text(r, &mut text), AmbiskewStatus::Ok);
        assert!(take(text).contains("FAIL"));
        ambiskew_report_free(r);
        ambiskew_session_free(s);
    }
}

#[test]
fn error_codes_and_messages() {
    let (st, s) = parse("algebra W = weyl(U, V)");
    assert_eq!(st, AmbiskewStatus::Syntax);
    assert!(s.is_null());
    assert!(last_error().starts_with("syntax error at 1:"));

    let (st, s) = parse("assert W: U == U;");
    assert_eq!(st, AmbiskewStatus::UnknownName);
    assert!(s.is_null());
    assert!(last_error().contains('W'));

    let (st, s) = parse("algebra kT = poly(T);\nelement e in kT = T^-1;");
    assert_eq!(st, AmbiskewStatus::Ok);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { ambiskew_session_run(s, &mut r) }, AmbiskewStatus::Execution);
    assert!(r.is_null());
    assert!(last_error().contains("line 2"));
    unsafe { ambiskew_session_free(s) };

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ambiskew_session_parse(ptr::null(), &mut out) }, AmbiskewStatus::NullArgument);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { ambiskew_session_parse(bad.as_ptr().cast(), &mut out) }, AmbiskewStatus::InvalidUtf8);
    assert_eq!(unsafe { ambiskew_session_run(ptr::null(), ptr::null_mut()) }, AmbiskewStatus::NullArgument);
}

#[test]
fn gallery_and_specialization() {
    let n = ambiskew_gallery_count();
    assert!(n >= 12);
    let names: Vec<String> = (0..n)
        .map(|i| {
            let mut p = ptr::null_mut();
            assert_eq!(unsafe { ambiskew_gallery_name(i, &mut p) }, AmbiskewStatus::Ok);
            take(p)
        })
        .collect();
    assert!(names.iter().any(|x| x == "qtorus-case1"));

    let name = CString::new("qtorus-case1").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ambiskew_session_from_gallery(name.as_ptr(), &mut s) }, AmbiskewStatus::Ok);
    let r = run(s);
    assert_eq!(unsafe { ambiskew_report_passed(r) }, 1);
    unsafe { ambiskew_report_free(r) };

    let (q, one) = (CString::new("q").unwrap(), CString::new("1").unwrap());
    assert_eq!(unsafe { ambiskew_session_specialize(s, q.as_ptr(), one.as_ptr()) }, AmbiskewStatus::Ok);
    let r = run(s);
    assert_eq!(unsafe { ambiskew_report_skipped(r) }, 1);
    unsafe {
        ambiskew_report_free(r);
        ambiskew_session_free(s);
    }

    let missing = CString::new("nope").unwrap();
    assert_eq!(unsafe { ambiskew_session_from_gallery(missing.as_ptr(), &mut s) }, AmbiskewStatus::NotFound);
}

#[test]
fn print_round_trips_and_sampling_is_settable() {
    let (_, s) = parse("algebra W = weyl(U, V); check props W;");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ambiskew_session_print(s, &mut p) }, AmbiskewStatus::Ok);
    let printed = take(p);
    let (st, s2) = parse(&printed);
    assert_eq!(st, AmbiskewStatus::Ok);
    assert_eq!(unsafe { ambiskew_session_set_sampling(s, 9, 2, 20) }, AmbiskewStatus::Ok);
    let r = run(s);
    let mut json = ptr::null_mut();
    unsafe { ambiskew_report_json(r, &mut json) };
    let json = take(json);
    let v = json.replace([' ', '\n'], "");
    assert!(v.contains("\"seed\":9,\"bound\":2"), "{json}");
    unsafe {
        ambiskew_report_free(r);
        ambiskew_session_free(s);
        ambiskew_session_free(s2);
        ambiskew_string_free(ptr::null_mut());
        ambiskew_report_free(ptr::null_mut());
    }
    assert_eq!(unsafe { CStr::from_ptr(ambiskew_version()) }.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::path::Path::new(dir).join("include/ambiskew.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["ambiskew_session_parse", "ambiskew_last_error", "ambiskew_string_free", "ambiskew_report_verdict"] {
        assert!(text.contains(f), "{f}");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", "-"])
        .arg(format!("-I{dir}/include"))
        .stdin(std::process::Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            use std::io::Write;
            c.stdin.take().unwrap().write_all(b"#include \"ambiskew.h\"\nint main(void) { AmbiskewSession *s = 0; return ambiskew_session_parse(\"\", &s) == AMBISKEW_STATUS_OK ? 0 : 1; }\n")?;
            c.wait()
        })
    else {
        eprintln!("no C compiler; header syntax not checked");
        return;
    };
    assert!(status.success());
}
