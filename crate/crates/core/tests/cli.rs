use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ambiskew"))
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ambiskew-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn code(c: &mut Command) -> i32 {
    c.output().unwrap().status.code().unwrap()
}

#[test]
fn check_passes_and_fails() {
    let ok = write("ok.ses", "algebra W = weyl(U, V);\nassert W: [U, V] == 1;\n");
    let bad = write("bad.ses", "algebra W = weyl(U, V);\nassert W: [U, V] == 2;\n");
    assert_eq!(code(bin().arg("check").arg(&ok)), 0);
    assert_eq!(code(bin().arg("check").arg(&bad)), 1);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let syntax = write("syntax.ses", "algebra W = weyl(U, V)\n");
    assert_eq!(code(bin().arg("check").arg(&syntax)), 2);
    assert_eq!(code(bin().arg("check").arg("/nonexistent/file.ses")), 2);
    assert_eq!(code(bin().arg("frobnicate")), 2);
    assert_eq!(code(bin().args(["gallery", "no-such-case"])), 2);
    assert_eq!(code(bin().args(["--set", "q", "gallery", "kT-usl2"])), 2);
}

#[test]
fn execution_errors_exit_1() {
    let f = write("exec.ses", "algebra kT = poly(T);\nelement e in kT = T^-1;\n");
    let out = bin().arg("check").arg(&f).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn derive_hopf_requires_a_derive_statement() {
    let f = write("nod.ses", "algebra W = weyl(U, V);\n");
    assert_eq!(code(bin().arg("derive-hopf").arg(&f)), 2);
}

#[test]
fn gallery_listing_and_json() {
    let out = bin().arg("gallery").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 12);
    assert!(text.contains("qtorus-case2"));

    let out = bin().args(["--json", "gallery", "kZ-class1"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "gallery kZ-class1");
    assert!(v["verdicts"].as_array().unwrap().iter().all(|x| x["pass"] == true));
}

#[test]
fn build_prints_presentations() {
    let f = write(
        "build.ses",
        "algebra k = field;\nmu M on k = {};\nsextuple S on M = {tau: id, omega: id, g: 1, h: 1, c: 1, xi: 1};\nbuild extension S as A(X, Y);\n",
    );
    let out = bin().arg("build").arg(&f).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("[X, Y] = 1"));
}

#[test]
fn specialization_reports_skip() {
    let out = bin().args(["--set", "q=1", "gallery", "qtorus-case1"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("skipped"));
}

#[test]
fn fixtures_directory_replaces_builtins() {
    let dir = std::env::temp_dir().join(format!("ambiskew-fixtures-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    fs::write(dir.join("tiny.ses"), "# tiny case\nalgebra W = weyl(U, V);\nassert W: [U, V] == 1;\n").unwrap();
    let out = bin().arg("--fixtures").arg(&dir).args(["gallery", "--all"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pass tiny"), "{text}");
    assert!(text.contains("1 cases, 0 failed, 0 skipped"));
}
