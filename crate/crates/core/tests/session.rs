use ambiskew::gallery;
use ambiskew::session::{run_text, ExecOptions, Session};
use ambiskew::Error;

#[test]
fn fixtures_print_canonically() {
    for case in gallery::registry() {
        let a = Session::parse(&case.source).unwrap_or_else(|e| panic!("{}: {e}", case.name));
        let printed = a.to_string();
        let b = Session::parse(&printed).unwrap_or_else(|e| panic!("{}: reparse: {e}\n{printed}", case.name));
        assert_eq!(a, b, "{}", case.name);
        assert_eq!(printed, b.to_string(), "{}", case.name);
    }
}

#[test]
fn syntax_errors_carry_positions() {
    let e = Session::parse("algebra R = poly(T);\nelement e in R = T +;").unwrap_err();
    assert!(matches!(e, Error::Syntax { line: 2, .. }), "{e:?}");
    let e = Session::parse("algebra R = poly(T)").unwrap_err();
    assert!(matches!(e, Error::Syntax { line: 1, .. }), "{e:?}");
    let e = Session::parse("expect R contains \"open").unwrap_err();
    assert!(e.to_string().contains("unterminated"), "{e}");
}

#[test]
fn unknown_check_kind_is_rejected() {
    assert!(Session::parse("algebra R = field; check frobnicate R;").is_err());
    assert!(Session::parse("algebra R = field; check iso R;").is_err());
}

#[test]
fn failed_assert_is_a_failing_verdict() {
    let r = run_text("algebra W = weyl(U, V); assert W: U*V == V*U;", ExecOptions::default()).unwrap();
    assert!(!r.passed());
    assert_eq!(r.failures().count(), 1);
}

#[test]
fn refute_inverts_the_outcome() {
    let text = "algebra k = field; mu M on k = {}; sextuple S on M = {tau: id, omega: id, g: 1, h: 1, c: 1, xi: 2}; refute thm41 S;";
    let r = run_text(text, ExecOptions::default()).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let r = run_text(&text.replace("xi: 2", "xi: 1"), ExecOptions::default()).unwrap();
    assert!(!r.passed());
}

#[test]
fn runtime_errors_carry_the_line() {
    let e = run_text("algebra kT = poly(T);\nelement e in kT = T^-1;", ExecOptions::default()).unwrap_err();
    assert!(e.to_string().contains("line 2"), "{e}");
}

#[test]
fn specialization_skips_on_violated_assumption() {
    let text = "param nonzero q;\nassume nonzero q - 1;\nalgebra W = weyl(U, V);\nassert W: [U, V] == 1;";
    let opts = ExecOptions { specialize: vec![("q".into(), "1".into())], ..Default::default() };
    let r = run_text(text, opts).unwrap();
    assert!(r.skipped.is_some());
    assert!(r.verdicts.is_empty());
    let opts = ExecOptions { specialize: vec![("q".into(), "2".into())], ..Default::default() };
    let r = run_text(text, opts).unwrap();
    assert!(r.skipped.is_none());
    assert!(r.passed());
}

#[test]
fn json_report_is_stable() {
    let text = "algebra W = weyl(U, V); assert W: [U, V] == 1;";
    let a = run_text(text, ExecOptions::default()).unwrap();
    let b = run_text(text, ExecOptions::default()).unwrap();
    let strip = |s: String| {
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(strip(a.to_json()), strip(b.to_json()));
}
