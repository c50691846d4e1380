//! Catalogue of worked examples, each a session script with its
//! expectations written as `assert`, `expect` and `refute` statements.

use std::borrow::Cow;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::session::{run_text, ExecOptions};

#[derive(Clone, Debug)]
pub struct GalleryCase {
    pub name: Cow<'static, str>,
    pub title: Cow<'static, str>,
    pub source: Cow<'static, str>,
}

macro_rules! builtin {
    ($name:literal, $title:literal) => {
        GalleryCase {
            name: Cow::Borrowed($name),
            title: Cow::Borrowed($title),
            source: Cow::Borrowed(include_str!(concat!("../fixtures/", $name, ".ses"))),
        }
    };
}

/// The built-in cases, in presentation order.
pub fn registry() -> Vec<GalleryCase> {
    vec![
        builtin!("baby-kxy", "R = k, c = 0: k[X, Y] with primitive X, Y"),
        builtin!("baby-weyl", "R = k, c = 1: the Weyl algebra and its torsor structure"),
        builtin!("kT-usl2", "R = k[T]: U(sl2)"),
        builtin!("kT-heisenberg", "R = k[T]: enveloping algebra of the Heisenberg algebra"),
        builtin!("kT-ubeta", "R = k[T]: the solvable family U_β"),
        builtin!("kT-abelian", "R = k[T]: k[T, X, Y]"),
        builtin!("kT-ualphalambda", "R = k[T]: the Hopf-Galois family U_(α,λ) and its four Hopf algebras"),
        builtin!("kZ-class1", "R = kZ, c = 0"),
        builtin!("kZ-class2", "R = kZ, c ≠ 0: U_q(sl2) and its cleft objects"),
        builtin!("qtorus-case1", "quantum torus, c = 1, τω = id"),
        builtin!("qtorus-case2", "quantum torus, c = γ*T1*T2, σ ≠ id"),
        builtin!("weyl-shifts", "R = A1(k) with shift automorphisms"),
    ]
}

/// Cases read from `*.ses` files of a directory; the first comment line is
/// the title.
pub fn load_dir(dir: &Path) -> Result<Vec<GalleryCase>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for ent in entries {
        let path = ent.map_err(|e| Error::Io(e.to_string()))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("ses") {
            continue;
        }
        let source = fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let title = source.lines().next().and_then(|l| l.strip_prefix('#')).unwrap_or("").trim().to_string();
        out.push(GalleryCase { name: name.into(), title: title.into(), source: source.into() });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

pub fn find<'a>(cases: &'a [GalleryCase], name: &str) -> Option<&'a GalleryCase> {
    cases.iter().find(|c| c.name == name)
}

pub fn run_case(case: &GalleryCase, opts: &ExecOptions) -> Result<Report> {
    let opts = ExecOptions { command: format!("gallery {}", case.name), ..opts.clone() };
    run_text(&case.source, opts)
}

#[derive(Debug, Default)]
pub struct Summary {
    pub runs: Vec<(String, Result<Report>)>,
}

impl Summary {
    pub fn failures(&self) -> usize {
        self.runs.iter().filter(|(_, r)| !matches!(r, Ok(rep) if rep.passed())).count()
    }

    pub fn skipped(&self) -> usize {
        self.runs.iter().filter(|(_, r)| matches!(r, Ok(rep) if rep.skipped.is_some())).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .runs
            .iter()
            .map(|(name, r)| match r {
                Ok(rep) if rep.skipped.is_some() => {
                    format!("skip {name}: {}", rep.skipped.as_deref().unwrap_or_default())
                }
                Ok(rep) if rep.passed() => format!("pass {name} ({} verdicts, {} ms)", rep.verdicts.len(), rep.elapsed_ms),
                Ok(rep) => format!("FAIL {name}: {} of {} verdicts fail", rep.failures().count(), rep.verdicts.len()),
                Err(e) => format!("FAIL {name}: {e}"),
            })
            .collect();
        out.push(format!(
            "{} cases, {} failed, {} skipped",
            self.runs.len(),
            self.failures(),
            self.skipped()
        ));
        out
    }
}

pub fn run_all(cases: &[GalleryCase], opts: &ExecOptions) -> Summary {
    Summary { runs: cases.iter().map(|c| (c.name.to_string(), run_case(c, opts))).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_registry_passes() {
        let s = run_all(&[], &ExecOptions::default());
        assert!(s.passed());
        assert_eq!(s.lines(), vec!["0 cases, 0 failed, 0 skipped".to_string()]);
    }

    #[test]
    fn registry_names_are_unique() {
        let r = registry();
        let mut names: Vec<_> = r.iter().map(|c| c.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), r.len());
        assert!(r.len() >= 12);
    }

    #[test]
    fn fixtures_parse() {
        for c in registry() {
            if let Err(e) = crate::session::Session::parse(&c.source) {
                panic!("{}: {e}", c.name);
            }
        }
    }
}
