//! Session statements, their parser and the canonical printer.
//!
//! ```text
//! param [nonzero] a, b;
//! assume nonzero <expr>;
//! algebra N = field | poly([B,] T) | laurent([B,] T) | weyl([B,] U, V)
//!           | skew(B, T, inv|noinv, {gen -> expr, ..})
//!           | ambiskew(B, X, Y, <morph>, <morph>, <expr>, <expr>);
//! morphism t on R = {gen -> expr, ..} [inverse {..}];
//! map f from A to B = {gen -> expr, ..};
//! mu M on R = {gen -> tensor, ..} | torsor(H);
//! hopf H on K = standard | delta {..} counit {..} antipode {..};
//! element e in R = <expr>;
//! sextuple S on M = {tau: <morph>, omega: <morph>, g: e, h: e, c: e, xi: e};
//! hopfdata D on H = {tau: .., omega: .., g: .., h: .., c: .., xi: ..};
//! presentation P on M, H = {gen -> tensor, ..};
//! build extension S as A(X, Y);
//! build hopf D as A(E, F);
//! derive P S as AR(X, Y), HAR(E, F);
//! check <kind> name, ..;     refute <kind> name, ..;
//! scan M [group n] [degree d];
//! print N;
//! assert R: <expr> == <expr>;
//! expect N contains "text";
//! ```
//! `<morph>` is `id`, a morphism name, `name^-1`, or a `*`-separated
//! composite of those.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{Expr, Parser, Pos, Tok};

pub type Images = Vec<(String, Expr)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphAtom {
    Id,
    Name(String),
    Inverse(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphExpr(pub Vec<MorphAtom>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraDef {
    Field,
    Poly { base: Option<String>, gen: String },
    Laurent { base: Option<String>, gen: String },
    Weyl { base: Option<String>, u: String, v: String },
    Skew { base: String, gen: String, invertible: bool, tau: Images },
    Ambiskew { base: String, x: String, y: String, tau: MorphExpr, omega: MorphExpr, c: Expr, xi: Expr },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuDef {
    Images(Images),
    Torsor(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HopfDef {
    Standard,
    Explicit { delta: Images, counit: Images, antipode: Images },
}

/// The six data of an ambiskew extension, before evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub tau: MorphExpr,
    pub omega: MorphExpr,
    pub g: Expr,
    pub h: Expr,
    pub c: Expr,
    pub xi: Expr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildKind {
    Extension,
    Hopf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Param { nonzero: bool, names: Vec<String> },
    Assume { value: Expr },
    Algebra { name: String, def: AlgebraDef },
    Morphism { name: String, on: String, images: Images, inverse: Option<Images> },
    Map { name: String, from: String, to: String, images: Images },
    Mu { name: String, on: String, def: MuDef },
    Hopf { name: String, on: String, def: HopfDef },
    Element { name: String, on: String, value: Expr },
    Sextuple { name: String, on: String, data: Record },
    HopfData { name: String, on: String, data: Record },
    Presentation { name: String, mu: String, hopf: String, iota: Images },
    Build { kind: BuildKind, source: String, name: String, x: String, y: String },
    Derive { pres: String, sextuple: String, ar: (String, String, String), har: (String, String, String) },
    Check { kind: String, args: Vec<String>, refute: bool },
    Scan { mu: String, group: Option<u32>, degree: Option<u32> },
    Print { name: String },
    Assert { on: String, lhs: Expr, rhs: Expr },
    Expect { name: String, text: String },
}

#[derive(Clone, Debug)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Session {
    pub stmts: Vec<Stmt>,
}

/// Kinds accepted by `check` and `refute`, with their arity.
pub const CHECK_KINDS: &[(&str, usize)] = &[
    ("mu", 1),
    ("hopf", 1),
    ("hr", 1),
    ("thm41", 1),
    ("thm31", 1),
    ("cor33", 1),
    ("mutations", 1),
    ("lemma28", 1),
    ("lemma51", 2),
    ("cor54", 2),
    ("cor55", 2),
    ("remarks", 1),
    ("props", 1),
    ("iso", 2),
];

impl Session {
    pub fn parse(text: &str) -> Result<Session> {
        let mut p = Parser::from_text(text)?;
        let mut stmts = Vec::new();
        let mut scope = Scope::default();
        while !p.at_eof() {
            let stmt = statement(&mut p)?;
            scope.visit(&stmt)?;
            stmts.push(stmt);
        }
        Ok(Session { stmts })
    }

    /// Names introduced by the session, in order.
    pub fn declared(&self) -> Vec<String> {
        self.stmts.iter().flat_map(|s| declares(&s.kind)).collect()
    }
}

/// Statement-level names checked at parse time: each declared once and
/// before use. Names inside expressions are resolved during execution.
#[derive(Default)]
struct Scope {
    names: HashSet<String>,
}

fn declares(k: &StmtKind) -> Vec<String> {
    match k {
        StmtKind::Param { names, .. } => names.clone(),
        StmtKind::Algebra { name, .. }
        | StmtKind::Morphism { name, .. }
        | StmtKind::Map { name, .. }
        | StmtKind::Mu { name, .. }
        | StmtKind::Hopf { name, .. }
        | StmtKind::Element { name, .. }
        | StmtKind::Sextuple { name, .. }
        | StmtKind::HopfData { name, .. }
        | StmtKind::Presentation { name, .. }
        | StmtKind::Build { name, .. } => vec![name.clone()],
        StmtKind::Derive { ar, har, .. } => vec![ar.0.clone(), har.0.clone()],
        _ => Vec::new(),
    }
}

fn uses(k: &StmtKind) -> Vec<String> {
    let morph = |m: &MorphExpr| {
        m.0.iter()
            .filter_map(|a| match a {
                MorphAtom::Id => None,
                MorphAtom::Name(n) | MorphAtom::Inverse(n) => Some(n.clone()),
            })
            .collect::<Vec<_>>()
    };
    match k {
        StmtKind::Algebra { def, .. } => match def {
            AlgebraDef::Field => vec![],
            AlgebraDef::Poly { base, .. } | AlgebraDef::Laurent { base, .. } | AlgebraDef::Weyl { base, .. } => {
                base.iter().cloned().collect()
            }
            AlgebraDef::Skew { base, .. } => vec![base.clone()],
            AlgebraDef::Ambiskew { base, tau, omega, .. } => {
                let mut v = vec![base.clone()];
                v.extend(morph(tau));
                v.extend(morph(omega));
                v
            }
        },
        StmtKind::Morphism { on, .. } | StmtKind::Element { on, .. } | StmtKind::Assert { on, .. } => vec![on.clone()],
        StmtKind::Map { from, to, .. } => vec![from.clone(), to.clone()],
        StmtKind::Mu { on, def, .. } => {
            let mut v = vec![on.clone()];
            if let MuDef::Torsor(h) = def {
                v.push(h.clone());
            }
            v
        }
        StmtKind::Hopf { on, .. } => vec![on.clone()],
        StmtKind::Sextuple { on, data, .. } | StmtKind::HopfData { on, data, .. } => {
            let mut v = vec![on.clone()];
            v.extend(morph(&data.tau));
            v.extend(morph(&data.omega));
            v
        }
        StmtKind::Presentation { mu, hopf, .. } => vec![mu.clone(), hopf.clone()],
        StmtKind::Build { source, .. } => vec![source.clone()],
        StmtKind::Derive { pres, sextuple, .. } => vec![pres.clone(), sextuple.clone()],
        StmtKind::Check { args, .. } => args.clone(),
        StmtKind::Scan { mu, .. } => vec![mu.clone()],
        StmtKind::Print { name } | StmtKind::Expect { name, .. } => vec![name.clone()],
        StmtKind::Param { .. } | StmtKind::Assume { .. } => vec![],
    }
}

impl Scope {
    fn visit(&mut self, s: &Stmt) -> Result<()> {
        for u in uses(&s.kind) {
            if !self.names.contains(&u) {
                return Err(Error::UnknownName(format!("{u} (line {})", s.pos.line)));
            }
        }
        for d in declares(&s.kind) {
            if !self.names.insert(d.clone()) {
                return Err(Error::Redeclared(format!("{d} (line {})", s.pos.line)));
            }
        }
        Ok(())
    }
}

fn statement(p: &mut Parser) -> Result<Stmt> {
    let pos = p.pos();
    let (kw, _) = p.ident()?;
    let kind = match kw.as_str() {
        "param" => {
            let nonzero = p.eat_keyword("nonzero");
            let names = ident_list(p)?;
            StmtKind::Param { nonzero, names }
        }
        "assume" => {
            p.expect_keyword("nonzero")?;
            StmtKind::Assume { value: p.expr()? }
        }
        "algebra" => {
            let name = p.ident()?.0;
            p.expect_sym('=')?;
            StmtKind::Algebra { name, def: algebra_def(p)? }
        }
        "morphism" => {
            let name = p.ident()?.0;
            p.expect_keyword("on")?;
            let on = p.ident()?.0;
            p.expect_sym('=')?;
            let images = images(p)?;
            let inverse = if p.eat_keyword("inverse") { Some(self::images(p)?) } else { None };
            StmtKind::Morphism { name, on, images, inverse }
        }
        "map" => {
            let name = p.ident()?.0;
            p.expect_keyword("from")?;
            let from = p.ident()?.0;
            p.expect_keyword("to")?;
            let to = p.ident()?.0;
            p.expect_sym('=')?;
            StmtKind::Map { name, from, to, images: images(p)? }
        }
        "mu" => {
            let name = p.ident()?.0;
            p.expect_keyword("on")?;
            let on = p.ident()?.0;
            p.expect_sym('=')?;
            let def = if p.eat_keyword("torsor") {
                p.expect_sym('(')?;
                let h = p.ident()?.0;
                p.expect_sym(')')?;
                MuDef::Torsor(h)
            } else {
                MuDef::Images(images(p)?)
            };
            StmtKind::Mu { name, on, def }
        }
        "hopf" => {
            let name = p.ident()?.0;
            p.expect_keyword("on")?;
            let on = p.ident()?.0;
            p.expect_sym('=')?;
            let def = if p.eat_keyword("standard") {
                HopfDef::Standard
            } else {
                p.expect_keyword("delta")?;
                let delta = images(p)?;
                p.expect_keyword("counit")?;
                let counit = images(p)?;
                p.expect_keyword("antipode")?;
                let antipode = images(p)?;
                HopfDef::Explicit { delta, counit, antipode }
            };
            StmtKind::Hopf { name, on, def }
        }
        "element" => {
            let name = p.ident()?.0;
            p.expect_keyword("in")?;
            let on = p.ident()?.0;
            p.expect_sym('=')?;
            StmtKind::Element { name, on, value: p.expr()? }
        }
        "sextuple" | "hopfdata" => {
            let name = p.ident()?.0;
            p.expect_keyword("on")?;
            let on = p.ident()?.0;
            p.expect_sym('=')?;
            let data = record(p)?;
            if kw == "sextuple" {
                StmtKind::Sextuple { name, on, data }
            } else {
                StmtKind::HopfData { name, on, data }
            }
        }
        "presentation" => {
            let name = p.ident()?.0;
            p.expect_keyword("on")?;
            let mu = p.ident()?.0;
            p.expect_sym(',')?;
            let hopf = p.ident()?.0;
            p.expect_sym('=')?;
            StmtKind::Presentation { name, mu, hopf, iota: images(p)? }
        }
        "build" => {
            let kind = if p.eat_keyword("extension") {
                BuildKind::Extension
            } else if p.eat_keyword("hopf") {
                BuildKind::Hopf
            } else {
                let found = p.peek().clone();
                return p.error(format!("expected `extension` or `hopf`, found {found}"));
            };
            let source = p.ident()?.0;
            p.expect_keyword("as")?;
            let (name, x, y) = named_pair(p)?;
            StmtKind::Build { kind, source, name, x, y }
        }
        "derive" => {
            let pres = p.ident()?.0;
            let sextuple = p.ident()?.0;
            p.expect_keyword("as")?;
            let ar = named_pair(p)?;
            p.expect_sym(',')?;
            let har = named_pair(p)?;
            StmtKind::Derive { pres, sextuple, ar, har }
        }
        "check" | "refute" => {
            let (kind, kpos) = p.ident()?;
            let Some(&(_, arity)) = CHECK_KINDS.iter().find(|(k, _)| *k == kind) else {
                return Err(Error::Syntax { line: kpos.line, col: kpos.col, msg: format!("unknown check `{kind}`") });
            };
            let args = ident_list(p)?;
            if args.len() != arity {
                return p.error(format!("`{kind}` takes {arity} argument(s), got {}", args.len()));
            }
            StmtKind::Check { kind, args, refute: kw == "refute" }
        }
        "scan" => {
            let mu = p.ident()?.0;
            let group = if p.eat_keyword("group") { Some(small_u32(p)?) } else { None };
            let degree = if p.eat_keyword("degree") { Some(small_u32(p)?) } else { None };
            StmtKind::Scan { mu, group, degree }
        }
        "print" => StmtKind::Print { name: p.ident()?.0 },
        "assert" => {
            let on = p.ident()?.0;
            p.expect_sym(':')?;
            let lhs = p.expr()?;
            p.expect_sym('=')?;
            p.expect_sym('=')?;
            let rhs = p.expr()?;
            StmtKind::Assert { on, lhs, rhs }
        }
        "expect" => {
            let name = p.ident()?.0;
            p.expect_keyword("contains")?;
            let text = match p.peek().clone() {
                Tok::Str(s) => {
                    p.bump();
                    s
                }
                other => return p.error(format!("expected string, found {other}")),
            };
            StmtKind::Expect { name, text }
        }
        other => {
            return Err(Error::Syntax { line: pos.line, col: pos.col, msg: format!("unknown statement `{other}`") })
        }
    };
    p.expect_sym(';')?;
    Ok(Stmt { kind, pos })
}

fn small_u32(p: &mut Parser) -> Result<u32> {
    let n = p.small_int()?;
    match u32::try_from(n) {
        Ok(v) => Ok(v),
        Err(_) => p.error("expected a non-negative integer"),
    }
}

fn ident_list(p: &mut Parser) -> Result<Vec<String>> {
    let mut out = vec![p.ident()?.0];
    while p.eat_sym(',') {
        out.push(p.ident()?.0);
    }
    Ok(out)
}

fn named_pair(p: &mut Parser) -> Result<(String, String, String)> {
    let name = p.ident()?.0;
    p.expect_sym('(')?;
    let x = p.ident()?.0;
    p.expect_sym(',')?;
    let y = p.ident()?.0;
    p.expect_sym(')')?;
    Ok((name, x, y))
}

fn images(p: &mut Parser) -> Result<Images> {
    p.expect_sym('{')?;
    let mut out = Vec::new();
    if p.eat_sym('}') {
        return Ok(out);
    }
    loop {
        let g = p.ident()?.0;
        p.expect_arrow()?;
        out.push((g, p.expr()?));
        if p.eat_sym('}') {
            return Ok(out);
        }
        p.expect_sym(',')?;
    }
}

fn morph_expr(p: &mut Parser) -> Result<MorphExpr> {
    let mut atoms = vec![morph_atom(p)?];
    while p.eat_sym('*') {
        atoms.push(morph_atom(p)?);
    }
    Ok(MorphExpr(atoms))
}

fn morph_atom(p: &mut Parser) -> Result<MorphAtom> {
    let name = p.ident()?.0;
    if name == "id" {
        return Ok(MorphAtom::Id);
    }
    if p.eat_sym('^') {
        let paren = p.eat_sym('(');
        let k = p.small_int()?;
        if paren {
            p.expect_sym(')')?;
        }
        if k != -1 {
            return p.error("only the exponent -1 is allowed on morphisms");
        }
        return Ok(MorphAtom::Inverse(name));
    }
    Ok(MorphAtom::Name(name))
}

fn record(p: &mut Parser) -> Result<Record> {
    p.expect_sym('{')?;
    let mut tau = None;
    let mut omega = None;
    let mut vals: [Option<Expr>; 4] = Default::default();
    loop {
        let (key, kpos) = p.ident()?;
        p.expect_sym(':')?;
        let dup = |slot_full: bool| -> Result<()> {
            if slot_full {
                Err(Error::Syntax { line: kpos.line, col: kpos.col, msg: format!("duplicate key `{key}`") })
            } else {
                Ok(())
            }
        };
        match key.as_str() {
            "tau" => {
                dup(tau.is_some())?;
                tau = Some(morph_expr(p)?);
            }
            "omega" => {
                dup(omega.is_some())?;
                omega = Some(morph_expr(p)?);
            }
            k => {
                let i = match k {
                    "g" => 0,
                    "h" => 1,
                    "c" => 2,
                    "xi" => 3,
                    _ => {
                        return Err(Error::Syntax { line: kpos.line, col: kpos.col, msg: format!("unknown key `{key}`") })
                    }
                };
                dup(vals[i].is_some())?;
                vals[i] = Some(p.expr()?);
            }
        }
        if p.eat_sym('}') {
            break;
        }
        p.expect_sym(',')?;
    }
    let [g, h, c, xi] = vals;
    let missing = |k: &str| p.error::<Record>(format!("missing key `{k}`"));
    let Some(tau) = tau else { return missing("tau") };
    let Some(omega) = omega else { return missing("omega") };
    let Some(g) = g else { return missing("g") };
    let Some(h) = h else { return missing("h") };
    let Some(c) = c else { return missing("c") };
    let Some(xi) = xi else { return missing("xi") };
    Ok(Record { tau, omega, g, h, c, xi })
}

fn algebra_def(p: &mut Parser) -> Result<AlgebraDef> {
    let (kind, kpos) = p.ident()?;
    if kind == "field" {
        return Ok(AlgebraDef::Field);
    }
    p.expect_sym('(')?;
    let mut names = vec![p.ident()?.0];
    let def = match kind.as_str() {
        "poly" | "laurent" | "weyl" => {
            while p.eat_sym(',') {
                names.push(p.ident()?.0);
            }
            let want = if kind == "weyl" { 2 } else { 1 };
            let base = match names.len() {
                n if n == want => None,
                n if n == want + 1 => Some(names.remove(0)),
                _ => return p.error(format!("wrong number of arguments to `{kind}`")),
            };
            match kind.as_str() {
                "poly" => AlgebraDef::Poly { base, gen: names.remove(0) },
                "laurent" => AlgebraDef::Laurent { base, gen: names.remove(0) },
                _ => AlgebraDef::Weyl { base, u: names[0].clone(), v: names[1].clone() },
            }
        }
        "skew" => {
            p.expect_sym(',')?;
            let gen = p.ident()?.0;
            p.expect_sym(',')?;
            let invertible = if p.eat_keyword("inv") {
                true
            } else if p.eat_keyword("noinv") {
                false
            } else {
                return p.error("expected `inv` or `noinv`");
            };
            p.expect_sym(',')?;
            let tau = images(p)?;
            AlgebraDef::Skew { base: names.remove(0), gen, invertible, tau }
        }
        "ambiskew" => {
            p.expect_sym(',')?;
            let x = p.ident()?.0;
            p.expect_sym(',')?;
            let y = p.ident()?.0;
            p.expect_sym(',')?;
            let tau = morph_expr(p)?;
            p.expect_sym(',')?;
            let omega = morph_expr(p)?;
            p.expect_sym(',')?;
            let c = p.expr()?;
            p.expect_sym(',')?;
            let xi = p.expr()?;
            AlgebraDef::Ambiskew { base: names.remove(0), x, y, tau, omega, c, xi }
        }
        _ => return Err(Error::Syntax { line: kpos.line, col: kpos.col, msg: format!("unknown algebra kind `{kind}`") }),
    };
    p.expect_sym(')')?;
    Ok(def)
}

struct ShowImages<'a>(&'a Images);

impl fmt::Display for ShowImages<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (g, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g} -> {e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for MorphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match a {
                MorphAtom::Id => write!(f, "id")?,
                MorphAtom::Name(n) => write!(f, "{n}")?,
                MorphAtom::Inverse(n) => write!(f, "{n}^-1")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{tau: {}, omega: {}, g: {}, h: {}, c: {}, xi: {}}}",
            self.tau, self.omega, self.g, self.h, self.c, self.xi
        )
    }
}

fn opt_base(base: &Option<String>) -> String {
    base.as_ref().map(|b| format!("{b}, ")).unwrap_or_default()
}

impl fmt::Display for AlgebraDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraDef::Field => write!(f, "field"),
            AlgebraDef::Poly { base, gen } => write!(f, "poly({}{gen})", opt_base(base)),
            AlgebraDef::Laurent { base, gen } => write!(f, "laurent({}{gen})", opt_base(base)),
            AlgebraDef::Weyl { base, u, v } => write!(f, "weyl({}{u}, {v})", opt_base(base)),
            AlgebraDef::Skew { base, gen, invertible, tau } => write!(
                f,
                "skew({base}, {gen}, {}, {})",
                if *invertible { "inv" } else { "noinv" },
                ShowImages(tau)
            ),
            AlgebraDef::Ambiskew { base, x, y, tau, omega, c, xi } => {
                write!(f, "ambiskew({base}, {x}, {y}, {tau}, {omega}, {c}, {xi})")
            }
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Param { nonzero, names } => {
                write!(f, "param {}{};", if *nonzero { "nonzero " } else { "" }, names.join(", "))
            }
            StmtKind::Assume { value } => write!(f, "assume nonzero {value};"),
            StmtKind::Algebra { name, def } => write!(f, "algebra {name} = {def};"),
            StmtKind::Morphism { name, on, images, inverse } => {
                write!(f, "morphism {name} on {on} = {}", ShowImages(images))?;
                if let Some(inv) = inverse {
                    write!(f, " inverse {}", ShowImages(inv))?;
                }
                write!(f, ";")
            }
            StmtKind::Map { name, from, to, images } => {
                write!(f, "map {name} from {from} to {to} = {};", ShowImages(images))
            }
            StmtKind::Mu { name, on, def } => match def {
                MuDef::Images(im) => write!(f, "mu {name} on {on} = {};", ShowImages(im)),
                MuDef::Torsor(h) => write!(f, "mu {name} on {on} = torsor({h});"),
            },
            StmtKind::Hopf { name, on, def } => match def {
                HopfDef::Standard => write!(f, "hopf {name} on {on} = standard;"),
                HopfDef::Explicit { delta, counit, antipode } => write!(
                    f,
                    "hopf {name} on {on} = delta {} counit {} antipode {};",
                    ShowImages(delta),
                    ShowImages(counit),
                    ShowImages(antipode)
                ),
            },
            StmtKind::Element { name, on, value } => write!(f, "element {name} in {on} = {value};"),
            StmtKind::Sextuple { name, on, data } => write!(f, "sextuple {name} on {on} = {data};"),
            StmtKind::HopfData { name, on, data } => write!(f, "hopfdata {name} on {on} = {data};"),
            StmtKind::Presentation { name, mu, hopf, iota } => {
                write!(f, "presentation {name} on {mu}, {hopf} = {};", ShowImages(iota))
            }
            StmtKind::Build { kind, source, name, x, y } => {
                let k = match kind {
                    BuildKind::Extension => "extension",
                    BuildKind::Hopf => "hopf",
                };
                write!(f, "build {k} {source} as {name}({x}, {y});")
            }
            StmtKind::Derive { pres, sextuple, ar, har } => write!(
                f,
                "derive {pres} {sextuple} as {}({}, {}), {}({}, {});",
                ar.0, ar.1, ar.2, har.0, har.1, har.2
            ),
            StmtKind::Check { kind, args, refute } => {
                write!(f, "{} {kind} {};", if *refute { "refute" } else { "check" }, args.join(", "))
            }
            StmtKind::Scan { mu, group, degree } => {
                write!(f, "scan {mu}")?;
                if let Some(g) = group {
                    write!(f, " group {g}")?;
                }
                if let Some(d) = degree {
                    write!(f, " degree {d}")?;
                }
                write!(f, ";")
            }
            StmtKind::Print { name } => write!(f, "print {name};"),
            StmtKind::Assert { on, lhs, rhs } => write!(f, "assert {on}: {lhs} == {rhs};"),
            StmtKind::Expect { name, text } => write!(f, "expect {name} contains \"{text}\";"),
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{}", s.kind)?;
        }
        Ok(())
    }
}
