//! Acceptance harness: one line per criterion, with pinned limits.
//!
//! Criteria whose published values are inconsistent with the definitions
//! are listed in `EXPECTED_FAILURES` together with the analysis; the
//! process fails only when a criterion's outcome differs from that list.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use ambiskew::gallery::{self, GalleryCase};
use ambiskew::hopfgalois::{triple, HopfGaloisStructure, AX_COASSOC, AX_LEFT, AX_RIGHT};
use ambiskew::report::Report;
use ambiskew::session::{run_text, ExecOptions, Session, StmtKind};
use ambiskew::{ParamRing, Scalar, TowerAlgebra};

const SEED: u64 = 0;
const BOUND: u32 = 3;
const TRIPLES: usize = 200;
const MIN_MUTATIONS: usize = 5;

const LIMIT_MS: [u128; 8] = [1_000, 5_000, 5_000, 10_000, 10_000, 10_000, 60_000, 60_000];

const EXPECTED_FAILURES: &[(usize, &str)] = &[
    (
        5,
        "c' = (gh)^-1 ⊗ c - (gh)^-1 c ⊗ 1 with g = T1, h = T2, c = γ*T1*T2 gives \
         γ*(T1*T2)^-1 ⊗ T1*T2 - γ*1 ⊗ 1, which is γ*(K1*K2 - 1) under ι. \
         The published γ*(1 - K1*K2) has the opposite sign; ω'τ' = id holds.",
    ),
    (
        6,
        "for c = γ + c1*U + c2*V, σ-centrality needs c*U = σ(U)*c, i.e. [c, U] = (αu + βu)*c, \
         and [c, U] = -c2. Comparing the U- and V-coefficients forces c1 = c2 = 0 and \
         γ*(αu + βu) = γ*(αv + βv) = 0. The published c1 = αv + βv, c2 = -(αu + βu) drop the \
         factor c, so the stated [X, Y] is not admissible for generic shifts and the pipeline \
         stops at σ-centrality.",
    ),
];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn opts(command: &str) -> ExecOptions {
    ExecOptions { command: command.into(), seed: SEED, bound: BOUND, triples: TRIPLES, ..Default::default() }
}

fn failing(report: &Report) -> Vec<String> {
    report.failures().map(|v| v.to_string()).collect()
}

/// Runs a session and summarizes it; every verdict must pass.
fn session_outcome(label: &str, text: &str) -> Outcome {
    match run_text(text, opts(label)) {
        Ok(r) if r.passed() => Outcome::new(true, format!("{} verdicts", r.verdicts.len())),
        Ok(r) => {
            let f = failing(&r);
            Outcome::new(false, format!("{} of {} verdicts fail, first: {}", f.len(), r.verdicts.len(), f[0]))
        }
        Err(e) => Outcome::new(false, format!("error: {e}")),
    }
}

fn combine(parts: Vec<(String, Outcome)>) -> Outcome {
    let pass = parts.iter().all(|(_, o)| o.pass);
    let detail = parts
        .iter()
        .filter(|(_, o)| o.pass != pass || pass)
        .map(|(l, o)| format!("{l}: {}", o.detail))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome::new(pass, detail)
}

fn criterion1() -> Outcome {
    let k = TowerAlgebra::base_field(ParamRing::new());
    let w = k.weyl("A1", "x", "y").expect("weyl algebra");
    let one = w.one();
    let terms = |i: usize| {
        let x = w.gen(i);
        [(triple(&w, &x, &one, &one), 1), (triple(&w, &one, &x, &one), -1), (triple(&w, &one, &one, &x), 1)]
    };
    let image = |i: usize, mutate: Option<usize>| {
        let mut t = ambiskew::tensor::TensorSignature::torsor(&w).zero();
        for (j, (term, sign)) in terms(i).into_iter().enumerate() {
            let c = if mutate == Some(j) { 2 * sign } else { sign };
            t = t.add(&term.scale(&Scalar::from_int(c)));
        }
        t
    };
    let mu = match HopfGaloisStructure::unverified(&w, vec![image(0, None), image(1, None)]) {
        Ok(m) => m,
        Err(e) => return Outcome::new(false, format!("error: {e}")),
    };
    let v = mu.verification();
    if let Some(bad) = v.iter().find(|v| !v.pass) {
        return Outcome::new(false, format!("displayed μ fails: {bad}"));
    }
    let axioms = [AX_COASSOC, AX_LEFT, AX_RIGHT];
    let mut flipped = Vec::new();
    for g in 0..2 {
        for j in 0..3 {
            let imgs = (0..2).map(|i| image(i, (i == g).then_some(j))).collect();
            let m = match HopfGaloisStructure::unverified(&w, imgs) {
                Ok(m) => m,
                Err(e) => return Outcome::new(false, format!("error: {e}")),
            };
            let failed: Vec<String> =
                m.verification().into_iter().filter(|v| !v.pass && axioms.contains(&v.name.as_str())).map(|v| v.name).collect();
            if failed.is_empty() {
                return Outcome::new(false, format!("doubling term {j} of μ({}) breaks no axiom", w.gen_name(g)));
            }
            flipped.push(failed[0].clone());
        }
    }
    Outcome::new(true, format!("3 axioms hold; 6 term mutations each fail a named axiom ({})", flipped.join(", ")))
}

const KT_HEADER: &str = r#"
algebra kT = poly(T);
mu M on kT = {T -> (T | 1 | 1) - (1 | T | 1) + (1 | 1 | T)};
hopf H on kT = standard;
morphism s on kT = {T -> T + 1};
"#;

fn kt_hopf(extra: &str, name: &str, tau: &str, omega: &str, c: &str, rels: &[&str]) -> String {
    let mut s = format!(
        "{KT_HEADER}{extra}hopfdata D on H = {{tau: {tau}, omega: {omega}, g: 1, h: 1, c: {c}, xi: 1}};\n\
         check thm31 D;\nbuild hopf D as {name}(X, Y);\ncheck hopf {name};\n"
    );
    for r in rels {
        s.push_str(&format!("assert {name}: {r};\n"));
    }
    s
}

fn criterion2() -> Outcome {
    let mut parts = vec![
        ("U(sl2)".to_string(), kt_hopf("", "U", "s", "s^-1", "T", &["[X, T] == X", "[Y, T] == -Y", "[X, Y] == T"])),
        ("U(h)".to_string(), kt_hopf("", "U", "id", "id", "T", &["[X, T] == 0", "[Y, T] == 0", "[X, Y] == T"])),
    ];
    for beta in ["-1", "2", "1/3"] {
        let extra = format!("morphism b on kT = {{T -> T + {beta}}};\n");
        let text = kt_hopf(&extra, "U", "s", "b", "0", &["[X, T] == X", &format!("[Y, T] == {beta}*Y"), "[X, Y] == 0"]);
        parts.push((format!("U_β, β = {beta}"), text));
    }
    parts.push(("k[T, X, Y]".into(), kt_hopf("", "U", "id", "id", "0", &["[X, T] == 0", "[Y, T] == 0", "[X, Y] == 0"])));

    let table = [
        ("1", "λ", "s", "[E, t] == E", "[F, t] == -F", "[E, F] == λ*t", Some(("s2", "s2^-1"))),
        ("1", "0", "s", "[E, t] == E", "[F, t] == -F", "[E, F] == 0", None),
        ("0", "λ", "id", "[E, t] == 0", "[F, t] == 0", "[E, F] == λ*t", Some(("id", "id"))),
        ("0", "0", "id", "[E, t] == 0", "[F, t] == 0", "[E, F] == 0", None),
    ];
    let mut ual = String::from("param nonzero λ;\n");
    ual.push_str(KT_HEADER);
    ual.push_str(
        "algebra kt = poly(t);\nhopf Ht on kt = standard;\npresentation P on M, Ht = {t -> (1 | T) - (T | 1)};\ncheck hr P;\n\
         algebra kT2 = poly(T);\nmorphism s2 on kT2 = {T -> T + 1};\n",
    );
    for (i, (alpha, lambda, tau, r1, r2, r3, iso)) in table.iter().enumerate() {
        let tau_inv = if *tau == "id" { "id".to_string() } else { format!("{tau}^-1") };
        let c = if *lambda == "0" { "1".to_string() } else { format!("1 + {lambda}*T") };
        ual.push_str(&format!(
            "sextuple S{i} on M = {{tau: {tau}, omega: {tau_inv}, g: 1, h: 1, c: {c}, xi: 1}};\n\
             check thm41 S{i};\n\
             hopfdata D{i} on H = {{tau: {tau}, omega: {tau_inv}, g: 1, h: 1, c: {c}, xi: 1}};\n\
             refute thm31 D{i};\n\
             build extension S{i} as A{i}(X, Y);\n\
             assert A{i}: [X, T] == {alpha}*X;\nassert A{i}: [Y, T] == -{alpha}*Y;\nassert A{i}: [X, Y] == {c};\n\
             derive P S{i} as AR{i}(X, Y), HA{i}(E, F);\n\
             assert HA{i}: {r1};\nassert HA{i}: {r2};\nassert HA{i}: {r3};\ncheck hopf HA{i};\n"
        ));
        if let Some((t, w)) = iso {
            ual.push_str(&format!(
                "algebra U{i} = ambiskew(kT2, X, Y, {t}, {w}, T, 1);\n\
                 map f{i} from U{i} to HA{i} = {{T -> t, X -> E/λ, Y -> F}};\n\
                 map g{i} from HA{i} to U{i} = {{t -> T, E -> λ*X, F -> Y}};\n\
                 check iso f{i}, g{i};\n"
            ));
        }
    }
    parts.push(("U_(α,λ) table (a)-(d)".into(), ual));
    combine(parts.into_iter().map(|(l, t)| (l.clone(), session_outcome(&l, &t))).collect())
}

fn criterion3() -> Outcome {
    let mut parts = Vec::new();
    let head = "param nonzero t;\nparam γ, μ;\nalgebra kZ = laurent(K);\nhopf H on kZ = standard;\nmu M on kZ = torsor(H);\n";
    for (n, m) in [(-1i32, -1i32), (1, 2), (-1, 2), (2, -1), (2, 3)] {
        let (a, b, xi) = (-n, m, -n * m);
        let text = format!(
            "{head}morphism a on kZ = {{K -> t^{a}*K}};\nmorphism b on kZ = {{K -> t^{b}*K}};\n\
             sextuple S on M = {{tau: a, omega: b, g: K^{n}, h: K^{m}, c: 0, xi: t^{xi}}};\ncheck thm41 S;\n\
             hopfdata D on H = {{tau: a, omega: b, g: K^{n}, h: K^{m}, c: 0, xi: t^{xi}}};\ncheck thm31 D;\n\
             build extension S as A(X, Y);\n\
             assert A: X*K == t^{a}*K*X;\nassert A: Y*K == t^{b}*K*Y;\nassert A: X*Y - t^{xi}*Y*X == 0;\n"
        );
        parts.push((format!("class 1, n = {n}, m = {m}"), session_outcome("class 1", &text)));
    }
    for n in [-1i32, 1, 2] {
        let text = format!(
            "{head}morphism a on kZ = {{K -> t*K}};\n\
             sextuple S on M = {{tau: a, omega: a^-1, g: K^{n}, h: K^{n}, c: γ + μ*(1 - K^{}), xi: t^{n}}};\ncheck thm41 S;\n\
             hopfdata D on H = {{tau: a, omega: a^-1, g: K^{n}, h: K^{n}, c: μ*(1 - K^{}), xi: t^{n}}};\ncheck thm31 D;\n\
             build extension S as A(X, Y);\n\
             assert A: X*K == t*K*X;\nassert A: Y*K == t^-1*K*Y;\nassert A: X*Y - t^{n}*Y*X == γ + μ*(1 - K^{});\n",
            2 * n,
            2 * n,
            2 * n
        );
        parts.push((format!("class 2, n = m = {n}"), session_outcome("class 2", &text)));
    }
    let uq = r#"
param nonzero q;
param γ;
algebra kZ = laurent(K);
hopf H on kZ = standard;
mu M on kZ = torsor(H);
morphism a on kZ = {K -> q^-2*K};
hopfdata D on H = {tau: a, omega: a^-1, g: K^-1, h: K^-1, c: 0 + (1 - K^-2)/(q - q^-1), xi: q^2};
check thm31 D;
build hopf D as B(X, Y);
check hopf B;
algebra kZ2 = laurent(K);
morphism a2 on kZ2 = {K -> q^-2*K};
algebra Uq = ambiskew(kZ2, E, F, a2, a2^-1, (K - K^-1)/(q - q^-1), 1);
assert Uq: K*E == q^2*E*K;
assert Uq: K*F == q^-2*F*K;
assert Uq: E*F - F*E == (K - K^-1)/(q - q^-1);
map f from Uq to B = {K -> K, E -> q^2*X*K, F -> Y};
map g from B to Uq = {K -> K, X -> q^-2*E*K^-1, Y -> F};
check iso f, g;
sextuple S on M = {tau: a, omega: a^-1, g: K^-1, h: K^-1, c: γ + (1 - K^-2)/(q - q^-1), xi: q^2};
check thm41 S;
build extension S as Aa(X, Y);
element a0 in kZ = γ + 1/(q - q^-1);
assert Aa: X*K == q^-2*K*X;
assert Aa: Y*K == q^2*K*Y;
assert Aa: X*Y - q^2*Y*X == a0 - K^-2/(q - q^-1);
hopfdata Da on H = {tau: a, omega: a^-1, g: K^-1, h: K^-1, c: γ + (1 - K^-2)/(q - q^-1), xi: q^2};
refute thm31 Da;
"#;
    parts.push(("U_q(sl2) and A_(a)".into(), session_outcome("uq", uq)));
    combine(parts)
}

const QTORUS_HEAD: &str = r#"
param nonzero q, ξ;
param γ;
assume nonzero q - 1;
algebra R1 = laurent(T1);
algebra R = skew(R1, T2, inv, {T1 -> q^-1*T1});
assert R: T1*T2 == q*T2*T1;
mu M on R = {T1 -> (T1 | T1^-1 | T1), T2 -> (T2 | T2^-1 | T2)};
algebra H1 = laurent(K1);
algebra H = laurent(H1, K2);
hopf HH on H = standard;
presentation P on M, HH = {K1 -> (T1^-1 | T1), K2 -> (T2^-1 | T2)};
check hr P;
"#;

/// The note of the first verdict whose name ends with `suffix`.
fn note_of<'a>(r: &'a Report, suffix: &str) -> Option<&'a str> {
    r.verdicts.iter().find(|v| v.name.ends_with(suffix)).and_then(|v| v.witness.as_deref())
}

fn criterion4() -> Outcome {
    let text = format!(
        "{QTORUS_HEAD}{}",
        r#"
morphism t on R = {T1 -> ξ*T1, T2 -> ξ*T2};
sextuple S on M = {tau: t, omega: t^-1, g: T1, h: T2, c: 1, xi: ξ};
check thm41 S;
build extension S as A(X, Y);
assert A: X*T1 == ξ*T1*X;
assert A: X*T2 == ξ*T2*X;
assert A: Y*T1 == ξ^-1*T1*Y;
assert A: Y*T2 == ξ^-1*T2*Y;
assert A: X*Y - ξ*Y*X == 1;
check hr P;
derive P S as AR(X, Y), HA(E, F);
assert HA: K1*K2 == K2*K1;
assert HA: E*K1 == ξ*K1*E;
assert HA: E*K2 == ξ*q^-1*K2*E;
assert HA: F*K1 == ξ^-1*q*K1*F;
assert HA: F*K2 == ξ^-1*K2*F;
assert HA: E*F - q^-1*ξ*F*E == 0;
assert HA: ξ' == q^-1*ξ;
assert HA: c' == 0;
check hopf HA;
check cor55 P, S;
"#
    );
    match run_text(&text, opts("qtorus case 1")) {
        Ok(r) => {
            let tw = note_of(&r, "cor55 P, S: τω = id");
            let tw2 = note_of(&r, "cor55 P, S: τ'ω' = id");
            let f = failing(&r);
            let pass = f.is_empty() && tw == Some("true") && tw2 == Some("false");
            let detail = if pass {
                format!("{} verdicts; τω = id and τ'ω' ≠ id", r.verdicts.len())
            } else {
                format!("failures: [{}]; τω = id: {tw:?}, τ'ω' = id: {tw2:?}", f.join(" | "))
            };
            Outcome::new(pass, detail)
        }
        Err(e) => Outcome::new(false, format!("error: {e}")),
    }
}

fn criterion5() -> Outcome {
    let text = format!(
        "{QTORUS_HEAD}{}",
        r#"
morphism t on R = {T1 -> q^-1*ξ*T1, T2 -> ξ*T2};
morphism w on R = {T1 -> ξ^-1*T1, T2 -> q*ξ^-1*T2};
sextuple S on M = {tau: t, omega: w, g: T1, h: T2, c: γ*T1*T2, xi: ξ};
check thm41 S;
build extension S as A(X, Y);
assert A: X*T1 == q^-1*ξ*T1*X;
assert A: X*T2 == ξ*T2*X;
assert A: Y*T1 == ξ^-1*T1*Y;
assert A: Y*T2 == q*ξ^-1*T2*Y;
assert A: X*Y - ξ*Y*X == γ*T1*T2;
derive P S as AR(X, Y), HA(E, F);
assert HA: E*K1 == q^-1*ξ*K1*E;
assert HA: E*K2 == ξ*q^-1*K2*E;
assert HA: F*K1 == ξ^-1*q*K1*F;
assert HA: F*K2 == q*ξ^-1*K2*F;
assert HA: E*F*K1 == K1*E*F;
assert HA: E*F*K2 == K2*E*F;
assert HA: c' == γ*(1 - K1*K2);
assert HA: E*F - q^-1*ξ*F*E == γ*(1 - K1*K2);
"#
    );
    match run_text(&text, opts("qtorus case 2")) {
        Ok(r) => {
            let f = failing(&r);
            let c = r.derived.get("HA.c'").and_then(|v| v.as_str()).unwrap_or("?").to_string();
            if f.is_empty() {
                Outcome::new(true, format!("{} verdicts; c' = {c}", r.verdicts.len()))
            } else {
                Outcome::new(false, format!("derived c' = {c}; {} failing: {}", f.len(), f.join(" | ")))
            }
        }
        Err(e) => Outcome::new(false, format!("error: {e}")),
    }
}

fn criterion6() -> Outcome {
    let text = r#"
param αu, αv, βu, βv, γ;
algebra W = weyl(U, V);
mu M on W = {U -> (U | 1 | 1) - (1 | U | 1) + (1 | 1 | U), V -> (V | 1 | 1) - (1 | V | 1) + (1 | 1 | V)};
check mu M;
morphism t on W = {U -> U + αu, V -> V + αv};
morphism w on W = {U -> U + βu, V -> V + βv};
algebra ku = poly(u);
algebra H = poly(ku, v);
hopf Huv on H = standard;
presentation P on M, Huv = {u -> (1 | U) - (U | 1), v -> (1 | V) - (V | 1)};
check hr P;
sextuple S on M = {tau: t, omega: w, g: 1, h: 1, c: γ + (αv + βv)*U - (αu + βu)*V, xi: 1};
check thm41 S;
build extension S as A(X, Y);
assert A: [X, Y] == γ + (αv + βv)*U - (αu + βu)*V;
derive P S as AR(X, Y), HA(E, F);
assert HA: c' == (αv + βv)*u - (αu + βu)*v;
assert HA: ξ' == 1;
"#;
    match run_text(text, opts("weyl shifts")) {
        Ok(r) if r.passed() => Outcome::new(true, format!("{} verdicts", r.verdicts.len())),
        Ok(r) => Outcome::new(false, failing(&r).join(" | ")),
        Err(e) => {
            let probe = run_text(&text[..text.find("build extension").unwrap_or(text.len())], opts("weyl shifts"));
            let why = probe.map(|r| failing(&r).join(" | ")).unwrap_or_default();
            Outcome::new(false, format!("pipeline stops: {e}; {why}"))
        }
    }
}

/// Gaps in a case's coverage of the property and mutation suites.
fn coverage(case: &GalleryCase) -> (Vec<String>, Vec<String>) {
    let s = match Session::parse(&case.source) {
        Ok(s) => s,
        Err(e) => return (vec![format!("parse: {e}")], Vec::new()),
    };
    let checks: Vec<(&str, &[String], bool)> = s
        .stmts
        .iter()
        .filter_map(|st| match &st.kind {
            StmtKind::Check { kind, args, refute } => Some((kind.as_str(), args.as_slice(), *refute)),
            _ => None,
        })
        .collect();
    let has = |kind: &str, name: &str| checks.iter().any(|(k, a, r)| *k == kind && !*r && a.first().map(String::as_str) == Some(name));
    let refuted = |kind: &str, name: &str| checks.iter().any(|(k, a, r)| *k == kind && *r && a[0] == name);
    let has_pair = |kind: &str, p: &str, x: &str| checks.iter().any(|(k, a, _)| *k == kind && a.len() == 2 && a[0] == p && a[1] == x);

    let mut pres_of_mu: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut props = Vec::new();
    let mut mutations = Vec::new();
    for st in &s.stmts {
        match &st.kind {
            StmtKind::Mu { name, on, .. } if !refuted("mu", name) => {
                if !has("remarks", name) && !has("remarks", on) {
                    props.push(format!("remarks for {name}"));
                }
            }
            StmtKind::Presentation { name, mu, .. } => {
                pres_of_mu.entry(mu.as_str()).or_default().push(name.as_str());
                if !has("lemma28", name) {
                    props.push(format!("lemma28 for {name}"));
                }
            }
            StmtKind::Build { name, .. } if !has("props", name) && !has("hopf", name) => {
                props.push(format!("props for {name}"));
            }
            StmtKind::Derive { har, .. } if !has("hopf", &har.0) => props.push(format!("hopf for {}", har.0)),
            StmtKind::HopfData { name, .. } if !has("thm31", name) && !refuted("thm31", name) => {
                props.push(format!("thm31 for {name}"));
            }
            StmtKind::Sextuple { name, on, .. } if !refuted("thm41", name) => {
                if !has("mutations", name) {
                    mutations.push(format!("mutations for {name}"));
                }
                for p in pres_of_mu.get(on.as_str()).into_iter().flatten() {
                    if !has_pair("lemma51", p, name) {
                        props.push(format!("lemma51 for {p}, {name}"));
                    }
                }
            }
            _ => {}
        }
    }
    (props, mutations)
}

fn criterion7(runs: &[(GalleryCase, Result<Report, String>)]) -> Outcome {
    let mut gaps = Vec::new();
    let mut fails = Vec::new();
    let mut triples = 0usize;
    for (case, run) in runs {
        gaps.extend(coverage(case).0.into_iter().map(|g| format!("{}: {g}", case.name)));
        match run {
            Ok(r) => {
                fails.extend(failing(r).into_iter().map(|f| format!("{}: {f}", case.name)));
                triples += r.verdicts.iter().filter(|v| v.name.contains(&format!("on {TRIPLES} random triples"))).count();
            }
            Err(e) => fails.push(format!("{}: error {e}", case.name)),
        }
    }
    if fails.is_empty() && gaps.is_empty() {
        let n: usize = runs.iter().map(|(_, r)| r.as_ref().map(|r| r.verdicts.len()).unwrap_or(0)).sum();
        Outcome::new(true, format!("{} cases, {n} verdicts, {} triple-suites of {TRIPLES}", runs.len(), triples))
    } else {
        Outcome::new(false, format!("failures: [{}]; coverage gaps: [{}]", fails.join(" | "), gaps.join(", ")))
    }
}

fn criterion8(runs: &[(GalleryCase, Result<Report, String>)]) -> Outcome {
    let mut problems = Vec::new();
    let mut sextuples = 0usize;
    let mut mutations = 0usize;
    for (case, run) in runs {
        problems.extend(coverage(case).1.into_iter().map(|g| format!("{}: {g}", case.name)));
        let Ok(r) = run else {
            problems.push(format!("{}: did not run", case.name));
            continue;
        };
        let mut per: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for v in &r.verdicts {
            if let Some(rest) = v.name.strip_prefix("mutations ") {
                if !v.name.ends_with("flips a verdict") {
                    continue;
                }
                let s = rest.split(':').next().unwrap_or("").to_string();
                let e = per.entry(s).or_default();
                e.0 += 1;
                if v.pass {
                    e.1 += 1;
                }
            }
        }
        for (s, (n, flipped)) in per {
            sextuples += 1;
            mutations += n;
            if n < MIN_MUTATIONS || flipped < n {
                problems.push(format!("{}: {s} has {flipped}/{n} flipping mutations", case.name));
            }
        }
    }
    if problems.is_empty() {
        Outcome::new(true, format!("{sextuples} sextuples, {mutations} mutations, all flip"))
    } else {
        Outcome::new(false, problems.join("; "))
    }
}

fn main() -> ExitCode {
    let titles = [
        "Weyl torsor axioms and single-term mutations",
        "Hopf presentations over k[T] and the U_(α,λ) table",
        "kZ classes, U_q(sl2) and A_(a)",
        "quantum torus case 1 pipeline and τ'ω' ≠ id",
        "quantum torus case 2: c' = γ(1 - K1K2) and ω'τ' = id",
        "Weyl shifts: [X, Y] and c' as published",
        "property suite over the gallery",
        "negative-mutation suite over the gallery",
    ];
    let mut results: Vec<(Outcome, u128)> = Vec::new();
    let timed = |f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        (o, t.elapsed().as_millis())
    };
    results.push(timed(&criterion1));
    results.push(timed(&criterion2));
    results.push(timed(&criterion3));
    results.push(timed(&criterion4));
    results.push(timed(&criterion5));
    results.push(timed(&criterion6));

    let t = Instant::now();
    let runs: Vec<(GalleryCase, Result<Report, String>)> = gallery::registry()
        .into_iter()
        .map(|c| {
            let r = gallery::run_case(&c, &opts("gallery")).map_err(|e| e.to_string());
            (c, r)
        })
        .collect();
    let gallery_ms = t.elapsed().as_millis();
    let (o7, ms7) = timed(&|| criterion7(&runs));
    results.push((o7, ms7 + gallery_ms));
    let (o8, ms8) = timed(&|| criterion8(&runs));
    results.push((o8, ms8 + gallery_ms));

    let mut unexpected = 0;
    for (i, (o, ms)) in results.iter().enumerate() {
        let id = i + 1;
        let limit = LIMIT_MS[i];
        let pass = o.pass && *ms <= limit;
        let timing = if *ms > limit { " over time limit" } else { "" };
        println!(
            "criterion {id} {} {} ({ms} ms, limit {limit} ms{timing}): {}",
            if pass { "PASS" } else { "FAIL" },
            titles[i],
            o.detail
        );
        match EXPECTED_FAILURES.iter().find(|(n, _)| *n == id) {
            Some((_, why)) if !pass => println!("  expected failure: {why}"),
            Some(_) => {
                println!("  unexpected pass of a criterion listed as unattainable");
                unexpected += 1;
            }
            None if !pass => unexpected += 1,
            None => {}
        }
    }
    let passed = results.iter().enumerate().filter(|(i, (o, ms))| o.pass && *ms <= LIMIT_MS[*i]).count();
    println!("{passed}/{} criteria pass, {} expected failures, {unexpected} unexpected", results.len(), EXPECTED_FAILURES.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
