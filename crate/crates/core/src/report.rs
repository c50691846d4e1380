//! Verdicts and reports shared by the checkers, the session driver and the
//! CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

/// Outcome of one named condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub fn pass(name: impl Into<String>) -> Self {
        Verdict { name: name.into(), pass: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Verdict { name: name.into(), pass: false, witness: Some(witness.into()) }
    }

    pub fn from_check(name: impl Into<String>, failure: Option<String>) -> Self {
        match failure {
            None => Verdict::pass(name),
            Some(w) => Verdict::fail(name, w),
        }
    }

    /// Passing verdict carrying an informational note.
    pub fn note(name: impl Into<String>, pass: bool, note: impl Into<String>) -> Self {
        Verdict { name: name.into(), pass, witness: Some(note.into()) }
    }

    pub fn renamed(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}{}", self.name);
        self
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.pass { "pass" } else { "FAIL" }, self.name)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// A condition whose truth is the vanishing of a list of scalars. Keeping
/// the residuals lets the scanner turn failed conditions into polynomial
/// constraints on free parameters.
#[derive(Clone, Debug)]
pub struct Condition {
    pub name: String,
    pub residuals: Vec<Scalar>,
    /// Structural failure independent of parameters.
    pub hard_failure: Option<String>,
    pub witness: Option<String>,
}

impl Condition {
    pub fn new(name: impl Into<String>) -> Self {
        Condition { name: name.into(), residuals: Vec::new(), hard_failure: None, witness: None }
    }

    pub fn holds(&self) -> bool {
        self.hard_failure.is_none() && self.residuals.iter().all(|r| r.is_zero())
    }

    pub fn push(&mut self, r: Scalar, witness: impl FnOnce() -> String) {
        if !r.is_zero() && self.witness.is_none() {
            self.witness = Some(witness());
        }
        self.residuals.push(r);
    }

    /// Adds every coefficient of a difference as a residual.
    pub fn push_all<'a>(&mut self, coeffs: impl IntoIterator<Item = &'a Scalar>, witness: impl FnOnce() -> String) {
        let mut any = false;
        for c in coeffs {
            if !c.is_zero() {
                any = true;
            }
            self.residuals.push(c.clone());
        }
        if any && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn fail_hard(&mut self, why: impl Into<String>) {
        if self.hard_failure.is_none() {
            self.hard_failure = Some(why.into());
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.holds() {
            Verdict::pass(&self.name)
        } else {
            let w = self.hard_failure.clone().or_else(|| self.witness.clone()).unwrap_or_default();
            Verdict::fail(&self.name, w)
        }
    }
}

/// Serializable command report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub verdicts: Vec<Verdict>,
    pub derived: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
    pub bound: u32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub output: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, bound: u32) -> Self {
        Report { command: command.into(), seed, bound, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }

    pub fn derive_str(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.derived.insert(key.into(), serde_json::Value::String(value.into()));
    }

    pub fn derive_list(&mut self, key: impl Into<String>, values: Vec<String>) {
        self.derived
            .insert(key.into(), serde_json::Value::Array(values.into_iter().map(serde_json::Value::String).collect()));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} (seed {}, bound {})\n", self.command, self.seed, self.bound));
        for line in &self.output {
            out.push_str(line);
            out.push('\n');
        }
        for v in &self.verdicts {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        if !self.derived.is_empty() {
            out.push_str("-- derived\n");
            for (k, v) in &self.derived {
                match v {
                    serde_json::Value::String(s) => out.push_str(&format!("{k} = {s}\n")),
                    serde_json::Value::Array(items) => {
                        out.push_str(&format!("{k}:\n"));
                        for it in items {
                            out.push_str(&format!("  {}\n", it.as_str().map(str::to_string).unwrap_or_else(|| it.to_string())));
                        }
                    }
                    other => out.push_str(&format!("{k} = {other}\n")),
                }
            }
        }
        if let Some(why) = &self.skipped {
            out.push_str(&format!("skipped: {why}\n"));
        }
        let fails = self.failures().count();
        out.push_str(&format!("{} verdicts, {} failed\n", self.verdicts.len(), fails));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_collects_residuals() {
        let mut c = Condition::new("x");
        c.push(Scalar::zero(), || "never".into());
        assert!(c.holds());
        c.push(Scalar::one(), || "one".into());
        assert!(!c.holds());
        assert_eq!(c.verdict().witness.as_deref(), Some("one"));
    }

    #[test]
    fn json_keys_are_stable() {
        let mut r = Report::new("check", 0, 3);
        r.verdicts.push(Verdict::pass("a"));
        r.derive_str("xi'", "q");
        let j: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(j["verdicts"][0]["name"], "a");
        assert_eq!(j["derived"]["xi'"], "q");
        assert_eq!(j["bound"], 3);
    }
}
