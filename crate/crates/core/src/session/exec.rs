//! Statement execution: an environment of named values and the report.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use crate::algebra::{Element, TowerAlgebra};
use crate::ambiskew::{check_thm41, extend_hopf_galois, extend_unchecked, mutations, probe, Sextuple};
use crate::error::{Error, Result};
use crate::expr::{Expr, Pos};
use crate::hopf::{self, build_ambiskew_hopf, check_cor33, check_thm31, AmbiskewHopfData, HopfStructure};
use crate::hopfgalois::HopfGaloisStructure;
use crate::hra::{self, HRPresentation, Names, DEFAULT_PULLBACK_DEGREE};
use crate::morphism::{Automorphism, Morphism};
use crate::props::{self, PropOptions};
use crate::report::{Report, Verdict};
use crate::scalar::{ParamRing, Scalar};
use crate::scan::{scan_admissible, ScanBounds};
use crate::tensor::{TensorElement, TensorSignature};

use super::ast::*;

#[derive(Clone, Debug)]
pub struct ExecOptions {
    pub command: String,
    pub seed: u64,
    pub bound: u32,
    pub triples: usize,
    /// Parameter values substituted on declaration, as scalar expressions.
    pub specialize: Vec<(String, String)>,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            command: "check".into(),
            seed: 0,
            bound: 3,
            triples: props::DEFAULT_TRIPLES,
            specialize: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
struct AlgEntry {
    alg: TowerAlgebra,
    mu: Option<HopfGaloisStructure>,
    hopf: Option<HopfStructure>,
    /// Names bound only when evaluating inside this algebra.
    locals: BTreeMap<String, Element>,
}

#[derive(Clone, Debug)]
enum Value {
    Algebra(AlgEntry),
    Morphism(Automorphism),
    Map(Morphism<TowerAlgebra>),
    Mu(HopfGaloisStructure),
    Hopf(HopfStructure),
    Element(TowerAlgebra, Element),
    Sextuple(Sextuple),
    HopfData(AmbiskewHopfData),
    Presentation(HRPresentation),
    Param,
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Algebra(_) => "algebra",
            Value::Morphism(_) => "morphism",
            Value::Map(_) => "map",
            Value::Mu(_) => "mu",
            Value::Hopf(_) => "hopf",
            Value::Element(..) => "element",
            Value::Sextuple(_) => "sextuple",
            Value::HopfData(_) => "hopfdata",
            Value::Presentation(_) => "presentation",
            Value::Param => "param",
        }
    }
}

pub struct Executor {
    opts: ExecOptions,
    ring: ParamRing,
    field: Option<TowerAlgebra>,
    env: HashMap<String, Value>,
    overrides: HashMap<String, Scalar>,
    report: Report,
    stopped: bool,
}

fn wrong_kind<T>(name: &str, want: &str, got: &Value) -> Result<T> {
    Err(Error::invalid(format!("`{name}` is a {}, expected {want}", got.kind())))
}

fn at(pos: Pos, e: Error) -> Error {
    match e {
        Error::Syntax { .. } => e,
        Error::UnknownName(n) => Error::UnknownName(format!("{n} (line {})", pos.line)),
        other => Error::Eval(format!("line {}: {other}", pos.line)),
    }
}

/// The scalar of an element supported on the unit monomial.
fn as_scalar(e: &Element) -> Option<Scalar> {
    if e.is_zero() {
        return Some(Scalar::zero());
    }
    match e.as_term() {
        Some((m, c)) if m.is_one() => Some(c.clone()),
        _ => None,
    }
}

fn contains_tensor(e: &Expr) -> bool {
    match e {
        Expr::Tensor(_) => true,
        Expr::Int(_) | Expr::Ident(..) => false,
        Expr::Neg(a) | Expr::Pow(a, _) => contains_tensor(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Bracket(a, b) => {
            contains_tensor(a) || contains_tensor(b)
        }
    }
}

impl Executor {
    pub fn new(opts: ExecOptions) -> Self {
        let report = Report::new(opts.command.clone(), opts.seed, opts.bound);
        Executor {
            opts,
            ring: ParamRing::new(),
            field: None,
            env: HashMap::new(),
            overrides: HashMap::new(),
            report,
            stopped: false,
        }
    }

    /// Runs every statement; the first hard error aborts with its line.
    pub fn run(mut self, session: &Session) -> Result<Report> {
        let start = Instant::now();
        for stmt in &session.stmts {
            if self.stopped {
                break;
            }
            self.exec(stmt).map_err(|e| at(stmt.pos, e))?;
        }
        self.report.elapsed_ms = start.elapsed().as_millis();
        Ok(self.report)
    }

    fn field(&mut self) -> TowerAlgebra {
        self.field.get_or_insert_with(|| TowerAlgebra::base_field(self.ring.clone())).clone()
    }

    fn get(&self, name: &str) -> Result<&Value> {
        self.env.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    fn bind(&mut self, name: &str, v: Value) -> Result<()> {
        if self.env.contains_key(name) {
            return Err(Error::Redeclared(name.to_string()));
        }
        self.env.insert(name.to_string(), v);
        Ok(())
    }

    fn algebra(&self, name: &str) -> Result<TowerAlgebra> {
        match self.get(name)? {
            Value::Algebra(a) => Ok(a.alg.clone()),
            Value::Element(a, _) => Ok(a.clone()),
            Value::Mu(m) => Ok(m.algebra().clone()),
            Value::Hopf(h) => Ok(h.algebra().clone()),
            other => wrong_kind(name, "an algebra", other),
        }
    }

    fn mu(&self, name: &str) -> Result<HopfGaloisStructure> {
        match self.get(name)? {
            Value::Mu(m) => Ok(m.clone()),
            Value::Hopf(h) => h.to_hopf_galois(),
            Value::Algebra(a) => match (&a.mu, &a.hopf) {
                (Some(m), _) => Ok(m.clone()),
                (None, Some(h)) => h.to_hopf_galois(),
                _ => Err(Error::invalid(format!("algebra `{name}` carries no coaction"))),
            },
            other => wrong_kind(name, "a coaction", other),
        }
    }

    fn hopf(&self, name: &str) -> Result<HopfStructure> {
        match self.get(name)? {
            Value::Hopf(h) => Ok(h.clone()),
            Value::Algebra(AlgEntry { hopf: Some(h), .. }) => Ok(h.clone()),
            other => wrong_kind(name, "a Hopf algebra", other),
        }
    }

    fn sextuple(&self, name: &str) -> Result<Sextuple> {
        match self.get(name)? {
            Value::Sextuple(s) => Ok(s.clone()),
            other => wrong_kind(name, "a sextuple", other),
        }
    }

    fn hopfdata(&self, name: &str) -> Result<AmbiskewHopfData> {
        match self.get(name)? {
            Value::HopfData(d) => Ok(d.clone()),
            other => wrong_kind(name, "hopf data", other),
        }
    }

    fn presentation(&self, name: &str) -> Result<HRPresentation> {
        match self.get(name)? {
            Value::Presentation(p) => Ok(p.clone()),
            other => wrong_kind(name, "a presentation", other),
        }
    }

    fn attach(&mut self, alg: &TowerAlgebra, mu: Option<HopfGaloisStructure>, hopf: Option<HopfStructure>) {
        for v in self.env.values_mut() {
            if let Value::Algebra(a) = v {
                if &a.alg == alg {
                    if mu.is_some() {
                        a.mu = mu.clone();
                    }
                    if hopf.is_some() {
                        a.hopf = hopf.clone();
                    }
                }
            }
        }
    }

    // ---- evaluation

    fn lookup_ident(&self, alg: &TowerAlgebra, name: &str) -> Result<Element> {
        if let Some(i) = alg.gen_index(name) {
            return Ok(alg.gen(i));
        }
        if let Some(s) = self.overrides.get(name) {
            return Ok(alg.scalar(s.clone()));
        }
        if let Some(i) = self.ring.index(name) {
            return Ok(alg.scalar(Scalar::param(i)));
        }
        for v in self.env.values() {
            if let Value::Algebra(a) = v {
                if &a.alg == alg {
                    if let Some(e) = a.locals.get(name) {
                        return Ok(e.clone());
                    }
                }
            }
        }
        match self.env.get(name) {
            Some(Value::Element(a, e)) if alg.extends(a) || a == alg => Ok(e.clone()),
            Some(Value::Element(a, _)) => {
                Err(Error::invalid(format!("element `{name}` lives in {}, not in {}", a.name(), alg.name())))
            }
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    fn eval(&self, alg: &TowerAlgebra, e: &Expr) -> Result<Element> {
        Ok(match e {
            Expr::Int(n) => alg.scalar(Scalar::from_rational(n.clone().into())),
            Expr::Ident(name, pos) => self.lookup_ident(alg, name).map_err(|e| at(*pos, e))?,
            Expr::Neg(a) => self.eval(alg, a)?.neg(),
            Expr::Add(a, b) => self.eval(alg, a)?.add(&self.eval(alg, b)?),
            Expr::Sub(a, b) => self.eval(alg, a)?.sub(&self.eval(alg, b)?),
            Expr::Mul(a, b) => alg.multiply(&self.eval(alg, a)?, &self.eval(alg, b)?)?,
            Expr::Div(a, b) => {
                let num = self.eval(alg, a)?;
                let den = self.eval(alg, b)?;
                match as_scalar(&den) {
                    Some(s) if s.is_zero() => return Err(Error::DivisionByZero),
                    Some(s) => num.scale(&s.inv()?),
                    None => {
                        let inv = alg.unit_inverse(&den).ok_or_else(|| Error::NotUnit(alg.display(&den).to_string()))?;
                        alg.mul(&num, &inv)
                    }
                }
            }
            Expr::Pow(a, k) => alg.pow(&self.eval(alg, a)?, *k)?,
            Expr::Bracket(a, b) => alg.commutator(&self.eval(alg, a)?, &self.eval(alg, b)?),
            Expr::Tensor(_) => return Err(Error::Eval(format!("tensor literal in {}", alg.name()))),
        })
    }

    fn eval_scalar(&mut self, alg: &TowerAlgebra, e: &Expr) -> Result<Scalar> {
        let v = self.eval(alg, e)?;
        as_scalar(&v).ok_or_else(|| Error::Eval(format!("`{e}` is not a scalar")))
    }

    fn eval_tensor(&mut self, sig: &TensorSignature, e: &Expr) -> Result<TensorElement> {
        if !contains_tensor(e) {
            let f = self.field();
            let s = self.eval_scalar(&f, e)?;
            return Ok(sig.one().scale(&s));
        }
        Ok(match e {
            Expr::Tensor(parts) => {
                if parts.len() != sig.len() {
                    return Err(Error::Eval(format!("tensor literal with {} slots, expected {}", parts.len(), sig.len())));
                }
                let mut elems = Vec::new();
                for (i, p) in parts.iter().enumerate() {
                    elems.push(self.eval(&sig.slot(i).algebra, p)?);
                }
                sig.pure(&elems)?
            }
            Expr::Neg(a) => self.eval_tensor(sig, a)?.neg(),
            Expr::Add(a, b) => self.eval_tensor(sig, a)?.add(&self.eval_tensor(sig, b)?),
            Expr::Sub(a, b) => self.eval_tensor(sig, a)?.sub(&self.eval_tensor(sig, b)?),
            Expr::Mul(a, b) => self.eval_tensor(sig, a)?.tensor_multiply(&self.eval_tensor(sig, b)?)?,
            Expr::Div(a, b) => {
                let f = self.field();
                let d = self.eval_scalar(&f, b)?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                self.eval_tensor(sig, a)?.scale(&d.inv()?)
            }
            Expr::Pow(a, k) => {
                if *k < 0 {
                    let t = self.eval_tensor(sig, a)?;
                    let inv = t.unit_inverse().ok_or_else(|| Error::Eval("tensor is not a unit".into()))?;
                    (1..-k).fold(inv.clone(), |acc, _| acc.mul(&inv))
                } else {
                    let t = self.eval_tensor(sig, a)?;
                    (0..*k).fold(sig.one(), |acc, _| acc.mul(&t))
                }
            }
            Expr::Bracket(a, b) => {
                let (x, y) = (self.eval_tensor(sig, a)?, self.eval_tensor(sig, b)?);
                x.mul(&y).sub(&y.mul(&x))
            }
            Expr::Int(_) | Expr::Ident(..) => unreachable!("handled as scalars"),
        })
    }

    /// Generator-indexed images; `default` fills unlisted generators.
    fn images<T>(
        &mut self,
        alg: &TowerAlgebra,
        images: &Images,
        mut default: impl FnMut(usize) -> Option<T>,
        mut eval: impl FnMut(&mut Self, &Expr) -> Result<T>,
    ) -> Result<Vec<T>> {
        for (g, _) in images {
            if alg.gen_index(g).is_none() {
                return Err(Error::UnknownName(format!("{g} is not a generator of {}", alg.name())));
            }
        }
        let mut out = Vec::new();
        for i in 0..alg.ngens() {
            let name = alg.gen_name(i);
            let given: Vec<&Expr> = images.iter().filter(|(g, _)| g == name).map(|(_, e)| e).collect();
            match given.as_slice() {
                [] => out.push(default(i).ok_or_else(|| Error::Eval(format!("no image given for {name}")))?),
                [e] => out.push(eval(self, e)?),
                _ => return Err(Error::Eval(format!("{name} is mapped twice"))),
            }
        }
        Ok(out)
    }

    fn element_images(&mut self, src: &TowerAlgebra, tgt: &TowerAlgebra, images: &Images, identity: bool) -> Result<Vec<Element>> {
        let t = tgt.clone();
        let s = src.clone();
        self.images(src, images, |i| identity.then(|| s.gen(i)), move |me, e| me.eval(&t, e))
    }

    fn tensor_images(&mut self, alg: &TowerAlgebra, sig: &TensorSignature, images: &Images) -> Result<Vec<TensorElement>> {
        let sig = sig.clone();
        self.images(alg, images, |_| None, move |me, e| me.eval_tensor(&sig, e))
    }

    fn morph(&self, alg: &TowerAlgebra, m: &MorphExpr) -> Result<Automorphism> {
        let mut acc = Automorphism::identity(alg);
        for atom in &m.0 {
            let next = match atom {
                MorphAtom::Id => Automorphism::identity(alg),
                MorphAtom::Name(n) | MorphAtom::Inverse(n) => {
                    let a = match self.get(n)? {
                        Value::Morphism(a) => a.clone(),
                        other => return wrong_kind(n, "a morphism", other),
                    };
                    if a.algebra() != alg {
                        return Err(Error::invalid(format!("morphism `{n}` acts on {}, not {}", a.algebra().name(), alg.name())));
                    }
                    if matches!(atom, MorphAtom::Inverse(_)) {
                        a.inverted()
                    } else {
                        a
                    }
                }
            };
            acc = acc.compose(&next);
        }
        Ok(acc)
    }

    fn record(&mut self, alg: &TowerAlgebra, r: &Record) -> Result<(Automorphism, Automorphism, Element, Element, Element, Scalar)> {
        let tau = self.morph(alg, &r.tau)?;
        let omega = self.morph(alg, &r.omega)?;
        let g = self.eval(alg, &r.g)?;
        let h = self.eval(alg, &r.h)?;
        let c = self.eval(alg, &r.c)?;
        let xi = self.eval_scalar(alg, &r.xi)?;
        Ok((tau, omega, g, h, c, xi))
    }

    fn show_scalar(&self, s: &Scalar) -> String {
        s.display(&self.ring).to_string()
    }

    fn push_all(&mut self, prefix: &str, vs: impl IntoIterator<Item = Verdict>) {
        let prefix = format!("{prefix}: ");
        self.report.verdicts.extend(vs.into_iter().map(|v| v.renamed(&prefix)));
    }

    // ---- statements

    fn exec(&mut self, stmt: &Stmt) -> Result<()> {
        match &stmt.kind {
            StmtKind::Param { nonzero, names } => {
                if self.field.is_some() {
                    return Err(Error::invalid("parameters must be declared before the first algebra"));
                }
                for n in names {
                    self.ring.add(n, *nonzero)?;
                    self.bind(n, Value::Param)?;
                    if let Some((_, text)) = self.opts.specialize.iter().find(|(k, _)| k == n) {
                        let s = self.ring.parse(text)?;
                        self.report.derive_str(format!("specialized {n}"), self.show_scalar(&s));
                        self.overrides.insert(n.clone(), s);
                    }
                }
            }
            StmtKind::Assume { value } => {
                let f = self.field();
                let s = self.eval_scalar(&f, value)?;
                if s.is_zero() {
                    self.report.skipped = Some(format!("assumption {value} ≠ 0 does not hold"));
                    self.stopped = true;
                }
            }
            StmtKind::Algebra { name, def } => {
                let alg = self.algebra_def(name, def)?;
                self.bind(name, Value::Algebra(AlgEntry { alg, mu: None, hopf: None, locals: BTreeMap::new() }))?;
            }
            StmtKind::Morphism { name, on, images, inverse } => {
                let alg = self.algebra(on)?;
                let fwd = self.element_images(&alg, &alg, images, true)?;
                let inv = match inverse {
                    Some(im) => Some(self.element_images(&alg, &alg, im, true)?),
                    None => None,
                };
                let a = Automorphism::from_images(&alg, fwd, inv)?;
                self.bind(name, Value::Morphism(a))?;
            }
            StmtKind::Map { name, from, to, images } => {
                let (src, tgt) = (self.algebra(from)?, self.algebra(to)?);
                let im = self.element_images(&src, &tgt, images, false)?;
                let m = Morphism::define(&src, &tgt, im, None, false)?;
                self.bind(name, Value::Map(m))?;
            }
            StmtKind::Mu { name, on, def } => {
                let alg = self.algebra(on)?;
                let mu = match def {
                    MuDef::Images(im) => {
                        let sig = TensorSignature::torsor(&alg);
                        let im = self.tensor_images(&alg, &sig, im)?;
                        HopfGaloisStructure::unverified(&alg, im)?
                    }
                    MuDef::Torsor(h) => {
                        let hs = self.hopf(h)?;
                        if hs.algebra() != &alg {
                            return Err(Error::AlgebraMismatch);
                        }
                        hs.to_hopf_galois()?
                    }
                };
                self.attach(&alg, Some(mu.clone()), None);
                self.bind(name, Value::Mu(mu))?;
            }
            StmtKind::Hopf { name, on, def } => {
                let alg = self.algebra(on)?;
                let hs = match def {
                    HopfDef::Standard => hopf::standard::commutative_hopf(&alg)?,
                    HopfDef::Explicit { delta, counit, antipode } => {
                        let sig = TensorSignature::straight(&alg, 2);
                        let d = self.tensor_images(&alg, &sig, delta)?;
                        let f = self.field();
                        let e = self.images(&alg, counit, |_| None, move |me, x| me.eval_scalar(&f, x))?;
                        let s = self.element_images(&alg, &alg, antipode, false)?;
                        HopfStructure::unverified(&alg, d, e, s)?
                    }
                };
                self.attach(&alg, None, Some(hs.clone()));
                self.bind(name, Value::Hopf(hs))?;
            }
            StmtKind::Element { name, on, value } => {
                let alg = self.algebra(on)?;
                let e = self.eval(&alg, value)?;
                self.bind(name, Value::Element(alg, e))?;
            }
            StmtKind::Sextuple { name, on, data } => {
                let mu = self.mu(on)?;
                let (tau, omega, g, h, c, xi) = self.record(&mu.algebra().clone(), data)?;
                self.bind(name, Value::Sextuple(Sextuple { mu, tau, omega, g, h, c, xi }))?;
            }
            StmtKind::HopfData { name, on, data } => {
                let hs = self.hopf(on)?;
                let (tau, omega, g, h, c, xi) = self.record(&hs.algebra().clone(), data)?;
                self.bind(name, Value::HopfData(AmbiskewHopfData { hopf: hs, tau, omega, g, h, c, xi }))?;
            }
            StmtKind::Presentation { name, mu, hopf, iota } => {
                let mu = self.mu(mu)?;
                let hs = self.hopf(hopf)?;
                let sig = TensorSignature::op_straight(mu.algebra());
                let im = self.tensor_images(&hs.algebra().clone(), &sig, iota)?;
                let pres = HRPresentation::new(&mu, &hs, im, DEFAULT_PULLBACK_DEGREE)?;
                self.bind(name, Value::Presentation(pres))?;
            }
            StmtKind::Build { kind, source, name, x, y } => self.build(*kind, source, name, x, y)?,
            StmtKind::Derive { pres, sextuple, ar, har } => self.derive(pres, sextuple, ar, har)?,
            StmtKind::Check { kind, args, refute } => {
                let label = format!("{kind} {}", args.join(", "));
                let outcome = self.check(kind, args);
                if *refute {
                    let v = match outcome {
                        Ok(vs) => {
                            let failed: Vec<String> = vs.iter().filter(|v| !v.pass).map(|v| v.name.clone()).collect();
                            if failed.is_empty() {
                                Verdict::fail(format!("refute {label}"), "every verdict passes")
                            } else {
                                Verdict::note(format!("refute {label}"), true, format!("fails: {}", failed.join("; ")))
                            }
                        }
                        Err(e) => Verdict::note(format!("refute {label}"), true, format!("rejected: {e}")),
                    };
                    self.report.verdicts.push(v);
                } else {
                    let vs = outcome?;
                    self.push_all(&label, vs);
                }
            }
            StmtKind::Scan { mu, group, degree } => {
                let m = self.mu(mu)?;
                let d = ScanBounds::default();
                let bounds = ScanBounds { group_exp: group.unwrap_or(d.group_exp), c_degree: degree.unwrap_or(d.c_degree) };
                let fams = scan_admissible(&m, bounds)?;
                let lines: Vec<String> = fams.iter().map(|f| f.describe()).collect();
                self.report.output.push(format!("scan {mu}: {} families", lines.len()));
                self.report.output.extend(lines.iter().map(|l| format!("  {l}")));
                self.report.derive_list(format!("{mu}.families"), lines);
            }
            StmtKind::Print { name } => {
                let lines = self.describe(name)?;
                self.report.output.push(format!("{name}:"));
                self.report.output.extend(lines.iter().map(|l| format!("  {l}")));
                self.report.derive_list(format!("{name}.print"), lines);
            }
            StmtKind::Assert { on, lhs, rhs } => {
                let alg = self.algebra(on)?;
                let (l, r) = (self.eval(&alg, lhs)?, self.eval(&alg, rhs)?);
                let diff = l.sub(&r);
                self.report.verdicts.push(Verdict::from_check(
                    format!("{on}: {lhs} == {rhs}"),
                    (!diff.is_zero()).then(|| format!("lhs - rhs = {}", alg.display(&diff))),
                ));
            }
            StmtKind::Expect { name, text } => {
                let mut hay = self.describe(name).unwrap_or_default();
                let prefix = format!("{name}.");
                for (k, v) in &self.report.derived {
                    if k.starts_with(&prefix) {
                        hay.push(format!("{} = {}", &k[prefix.len()..], v));
                        match v {
                            serde_json::Value::String(s) => hay.push(s.clone()),
                            serde_json::Value::Array(a) => hay.extend(a.iter().filter_map(|x| x.as_str().map(String::from))),
                            _ => {}
                        }
                    }
                }
                let found = hay.iter().any(|l| l.contains(text.as_str()));
                self.report.verdicts.push(Verdict::from_check(
                    format!("{name} shows \"{text}\""),
                    (!found).then(|| format!("not in: {}", hay.join(" | "))),
                ));
            }
        }
        Ok(())
    }

    fn algebra_def(&mut self, name: &str, def: &AlgebraDef) -> Result<TowerAlgebra> {
        let base = |me: &mut Self, b: &Option<String>| -> Result<TowerAlgebra> {
            match b {
                Some(b) => me.algebra(b),
                None => Ok(me.field()),
            }
        };
        Ok(match def {
            AlgebraDef::Field => self.field(),
            AlgebraDef::Poly { base: b, gen } => base(self, b)?.polynomial(name, gen)?,
            AlgebraDef::Laurent { base: b, gen } => base(self, b)?.laurent(name, gen)?,
            AlgebraDef::Weyl { base: b, u, v } => base(self, b)?.weyl(name, u, v)?,
            AlgebraDef::Skew { base: b, gen, invertible, tau } => {
                let r = self.algebra(b)?;
                let im = self.element_images(&r, &r, tau, true)?;
                let t = Automorphism::from_images(&r, im, None)?;
                r.skew_adjoin(name, gen, *invertible, t)?
            }
            AlgebraDef::Ambiskew { base: b, x, y, tau, omega, c, xi } => {
                let r = self.algebra(b)?;
                let t = self.morph(&r, tau)?;
                let w = self.morph(&r, omega)?;
                let c = self.eval(&r, c)?;
                let xi = self.eval_scalar(&r, xi)?;
                r.ambiskew_adjoin(name, x, y, t, w, c, xi)?
            }
        })
    }

    fn bind_algebra(&mut self, name: &str, alg: TowerAlgebra, mu: Option<HopfGaloisStructure>, hopf: Option<HopfStructure>) -> Result<()> {
        let lines = alg.presentation_in(&self.ring);
        self.report.derive_list(format!("{name}.presentation"), lines);
        self.bind(name, Value::Algebra(AlgEntry { alg, mu, hopf, locals: BTreeMap::new() }))
    }

    fn build(&mut self, kind: BuildKind, source: &str, name: &str, x: &str, y: &str) -> Result<()> {
        match kind {
            BuildKind::Extension => {
                let s = self.sextuple(source)?;
                let out = check_thm41(&s);
                let pass = out.passed();
                if let Some(l) = &out.lambda {
                    self.report.derive_str(format!("{name}.λ"), self.show_scalar(l));
                }
                self.push_all(&format!("build {name}"), out.verdicts());
                if !pass {
                    return Err(Error::invalid(format!("{source} does not satisfy the extension conditions")));
                }
                let (alg, mu) = extend_hopf_galois(&s, name, x, y)?;
                self.report.verdicts.push(Verdict::pass(format!("build {name}: μ_A re-verified")));
                self.bind_algebra(name, alg, Some(mu), None)
            }
            BuildKind::Hopf => {
                let d = self.hopfdata(source)?;
                let out = check_thm31(&d)?;
                let pass = out.passed();
                self.push_all(&format!("build {name}"), out.verdicts);
                if !pass {
                    return Err(Error::invalid(format!("{source} does not satisfy the Hopf extension conditions")));
                }
                let (alg, hs) = build_ambiskew_hopf(&d, name, x, y)?;
                self.report.verdicts.push(Verdict::pass(format!("build {name}: Hopf axioms re-verified")));
                self.bind_algebra(name, alg, None, Some(hs))
            }
        }
    }

    fn derive(&mut self, pres: &str, sextuple: &str, ar: &(String, String, String), har: &(String, String, String)) -> Result<()> {
        let p = self.presentation(pres)?;
        let s = self.sextuple(sextuple)?;
        let out = hra::derive_hopf_of_ambiskew(&p, &s, Names { x: &ar.1, y: &ar.2, e: &har.1, f: &har.2 })?;
        let label = format!("derive {}", har.0);
        self.push_all(&label, out.thm31.verdicts.clone());
        self.push_all(&label, out.verdicts.clone());
        let d = &out.derived;
        let h = &out.a_h;
        let r = self.ring.clone();
        let imgs = |a: &Automorphism| {
            let alg = a.algebra();
            (0..alg.ngens())
                .map(|i| format!("{} ↦ {}", alg.gen_name(i), alg.display_in(a.image(i), &r)))
                .collect::<Vec<_>>()
        };
        let key = |k: &str| format!("{}.{k}", har.0);
        self.report.derive_list(key("τ'"), imgs(&d.tau));
        self.report.derive_list(key("ω'"), imgs(&d.omega));
        self.report.derive_str(key("g'"), h.display_in(&d.g, &r).to_string());
        self.report.derive_str(key("h'"), h.display_in(&d.h, &r).to_string());
        self.report.derive_str(key("c'"), h.display_in(&d.c, &r).to_string());
        self.report.derive_str(key("ξ'"), self.show_scalar(&d.xi));
        self.report.derive_str(key("λ"), self.show_scalar(&d.lambda));
        self.report.output.push(format!("{}: c' = {}", har.0, h.display_in(&d.c, &r)));
        let mut locals = BTreeMap::new();
        locals.insert("c'".to_string(), d.c.clone());
        locals.insert("g'".to_string(), d.g.clone());
        locals.insert("h'".to_string(), d.h.clone());
        locals.insert("ξ'".to_string(), h.scalar(d.xi.clone()));
        self.bind_algebra(&ar.0, out.a_r.clone(), Some(out.mu_a.clone()), None)?;
        self.bind_algebra(&har.0, out.a_h.clone(), None, Some(out.hopf.clone()))?;
        if let Some(Value::Algebra(e)) = self.env.get_mut(&har.0) {
            e.locals = locals;
        }
        Ok(())
    }

    fn check(&mut self, kind: &str, args: &[String]) -> Result<Vec<Verdict>> {
        let a0 = args[0].as_str();
        Ok(match kind {
            "mu" => self.mu(a0)?.verification(),
            "hopf" => self.hopf(a0)?.verification(),
            "hr" => self.presentation(a0)?.verification(),
            "thm41" => {
                let out = check_thm41(&self.sextuple(a0)?);
                if let Some(l) = &out.lambda {
                    self.report.derive_str(format!("{a0}.λ"), self.show_scalar(l));
                }
                out.verdicts()
            }
            "thm31" => check_thm31(&self.hopfdata(a0)?)?.verdicts,
            "cor33" => check_cor33(&self.hopfdata(a0)?)?,
            "mutations" => {
                let s = self.sextuple(a0)?;
                let mut out = Vec::new();
                for (label, m) in mutations(&s) {
                    let p = probe(&label, &m);
                    let ext = if p.extension_pass { "μ_A verifies" } else { "μ_A fails" };
                    out.push(if p.conditions_pass {
                        Verdict::fail(format!("{label} flips a verdict"), format!("all conditions still hold, {ext}"))
                    } else {
                        Verdict::note(format!("{label} flips a verdict"), true, format!("fails: {}; {ext}", p.failed.join("; ")))
                    });
                }
                out
            }
            "lemma28" => {
                let p = self.presentation(a0)?;
                let mu = p.mu.clone();
                let alg = mu.algebra().clone();
                let groups = mu.scan_group_likes(1);
                let mut prims = Vec::new();
                let one = alg.one();
                for g in &groups {
                    let mut cands: Vec<Element> = (0..alg.ngens()).map(|i| alg.gen(i)).collect();
                    if !cands.contains(g) {
                        cands.push(g.clone());
                    }
                    for x in cands {
                        if matches!(mu.check_skew_primitive(&x, g, &one), Ok(Some(_))) {
                            prims.push((g.clone(), x));
                        }
                    }
                }
                p.lemma28(&groups, &prims)
            }
            "lemma51" => {
                let p = self.presentation(a0)?;
                let s = self.sextuple(&args[1])?;
                let (_, mu_a) = extend_unchecked(&s, "A", "X", "Y")?;
                hra::lemma51(&p, &s, &mu_a)?
            }
            "cor54" => {
                let p = self.presentation(a0)?;
                let s = self.sextuple(&args[1])?;
                let (al, be) = hra::step1_characters(&p, &s)?;
                hra::check_cor54(&p, &s, &al, &be)?
            }
            "cor55" => {
                let p = self.presentation(a0)?;
                let s = self.sextuple(&args[1])?;
                let d = hra::derived_data(&p, &s)?;
                hra::cor55(&s, &d)
            }
            "remarks" => props::closure_properties(&self.mu(a0)?),
            "props" => {
                let alg = self.algebra(a0)?;
                let mu = self.mu(a0).ok();
                let opts = PropOptions { seed: self.opts.seed, bound: self.opts.bound, triples: self.opts.triples };
                props::algebra_properties(&alg, mu.as_ref(), opts)
            }
            "iso" => {
                let f = self.map(a0)?;
                let g = self.map(&args[1])?;
                if f.target() != g.source() || g.target() != f.source() {
                    return Err(Error::invalid(format!("{a0} and {} are not opposite maps", args[1])));
                }
                vec![round_trip(&f, &g, &args[1], a0), round_trip(&g, &f, a0, &args[1])]
            }
            other => return Err(Error::invalid(format!("unknown check `{other}`"))),
        })
    }

    fn map(&self, name: &str) -> Result<Morphism<TowerAlgebra>> {
        match self.get(name)? {
            Value::Map(m) => Ok(m.clone()),
            Value::Morphism(a) => Ok(a.forward().clone()),
            other => wrong_kind(name, "a map", other),
        }
    }

    fn describe(&self, name: &str) -> Result<Vec<String>> {
        let r = &self.ring;
        Ok(match self.get(name)? {
            Value::Algebra(a) => {
                let mut out = a.alg.presentation_in(r);
                if let Some(h) = &a.hopf {
                    out.extend(hopf_lines(h, r));
                } else if let Some(m) = &a.mu {
                    out.extend(mu_lines(m, r));
                }
                out
            }
            Value::Element(a, e) => vec![a.display_in(e, r).to_string()],
            Value::Mu(m) => mu_lines(m, r),
            Value::Hopf(h) => hopf_lines(h, r),
            Value::Morphism(a) => {
                let alg = a.algebra();
                (0..alg.ngens()).map(|i| format!("{} ↦ {}", alg.gen_name(i), alg.display_in(a.image(i), r))).collect()
            }
            Value::Map(m) => {
                let alg = m.source();
                let tgt = m.target();
                (0..alg.ngens()).map(|i| format!("{} ↦ {}", alg.gen_name(i), tgt.display_in(m.image(i), r))).collect()
            }
            Value::Sextuple(s) => {
                let alg = s.algebra();
                vec![
                    format!("g = {}, h = {}", alg.display_in(&s.g, r), alg.display_in(&s.h, r)),
                    format!("c = {}, ξ = {}", alg.display_in(&s.c, r), s.xi.display(r)),
                ]
            }
            Value::HopfData(d) => {
                let alg = d.hopf.algebra();
                vec![
                    format!("g = {}, h = {}", alg.display_in(&d.g, r), alg.display_in(&d.h, r)),
                    format!("c = {}, ξ = {}", alg.display_in(&d.c, r), d.xi.display(r)),
                ]
            }
            Value::Presentation(p) => {
                let h = p.h();
                (0..h.ngens()).map(|i| format!("ι({}) = {}", h.gen_name(i), p.iota.image(i).display(r))).collect()
            }
            Value::Param => vec![format!("parameter {name}")],
        })
    }
}

fn mu_lines(m: &HopfGaloisStructure, r: &ParamRing) -> Vec<String> {
    let alg = m.algebra();
    (0..alg.ngens()).map(|i| format!("μ({}) = {}", alg.gen_name(i), m.image(i).display(r))).collect()
}

fn hopf_lines(h: &HopfStructure, r: &ParamRing) -> Vec<String> {
    let alg = h.algebra();
    (0..alg.ngens())
        .map(|i| {
            let g = alg.gen(i);
            format!(
                "Δ({0}) = {1}, ε({0}) = {2}, S({0}) = {3}",
                alg.gen_name(i),
                h.delta(&g).display(r),
                h.eps(&g).display(r),
                alg.display_in(&h.s(&g), r)
            )
        })
        .collect()
}

fn round_trip(f: &Morphism<TowerAlgebra>, g: &Morphism<TowerAlgebra>, gname: &str, fname: &str) -> Verdict {
    let alg = f.source();
    let bad = (0..alg.ngens()).find(|&i| g.apply(f.image(i)) != alg.gen(i));
    Verdict::from_check(
        format!("{gname}∘{fname} = id on {}", alg.name()),
        bad.map(|i| format!("at {}: {}", alg.gen_name(i), alg.display(&g.apply(f.image(i))))),
    )
}

/// Parses and runs a session.
pub fn run_text(text: &str, opts: ExecOptions) -> Result<Report> {
    let s = Session::parse(text)?;
    Executor::new(opts).run(&s)
}
