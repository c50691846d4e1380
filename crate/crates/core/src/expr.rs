//! Tokenizer and expression parser shared by scalar parsing and the session
//! language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := base ('^' int)?          int may carry a sign or sit in parentheses
//! base   := int | ident | '(' expr ')' | '(' expr ('|' expr)+ ')' | '[' expr ',' expr ']'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Str(String),
    Arrow,
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits `text` into tokens. `#` and `//` start comments running to the end
/// of the line.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), pos });
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(s), pos });
            continue;
        }
        if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' && chars[j] != '\n' {
                j += 1;
            }
            if j >= chars.len() || chars[j] != '"' {
                return Err(Error::Syntax { line, col, msg: "unterminated string".into() });
            }
            let s: String = chars[start..j].iter().collect();
            col += j + 1 - i;
            i = j + 1;
            out.push(Token { tok: Tok::Str(s), pos });
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            col += 2;
            out.push(Token { tok: Tok::Arrow, pos });
            continue;
        }
        if c == '→' {
            i += 1;
            col += 1;
            out.push(Token { tok: Tok::Arrow, pos });
            continue;
        }
        if "+-*/^()[]{},;|=:<>".contains(c) {
            i += 1;
            col += 1;
            out.push(Token { tok: Tok::Sym(c), pos });
            continue;
        }
        if c == '−' {
            i += 1;
            col += 1;
            out.push(Token { tok: Tok::Sym('-'), pos });
            continue;
        }
        if c == '⊗' {
            i += 1;
            col += 1;
            out.push(Token { tok: Tok::Sym('|'), pos });
            continue;
        }
        return Err(Error::Syntax { line, col, msg: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}

/// Equality ignores source positions.
#[derive(Clone, Debug)]
pub enum Expr {
    Int(BigInt),
    Ident(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    /// Commutator `[a, b] = ab - ba`.
    Bracket(Box<Expr>, Box<Expr>),
    /// Tensor literal `(x | y | z)`.
    Tensor(Vec<Expr>),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use Expr::*;
        match (self, other) {
            (Int(a), Int(b)) => a == b,
            (Ident(a, _), Ident(b, _)) => a == b,
            (Neg(a), Neg(b)) => a == b,
            (Add(a, b), Add(c, d)) | (Sub(a, b), Sub(c, d)) | (Mul(a, b), Mul(c, d)) => a == c && b == d,
            (Div(a, b), Div(c, d)) | (Bracket(a, b), Bracket(c, d)) => a == c && b == d,
            (Pow(a, m), Pow(b, n)) => a == b && m == n,
            (Tensor(a), Tensor(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Expr {}

impl Expr {
    pub fn ident(name: &str) -> Expr {
        Expr::Ident(name.to_string(), Pos::default())
    }

    /// Identifiers occurring in the expression, in order of appearance.
    pub fn idents(&self) -> Vec<(&str, Pos)> {
        let mut out = Vec::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents<'a>(&'a self, out: &mut Vec<(&'a str, Pos)>) {
        match self {
            Expr::Int(_) => {}
            Expr::Ident(n, p) => out.push((n, *p)),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_idents(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Bracket(a, b) => {
                a.collect_idents(out);
                b.collect_idents(out);
            }
            Expr::Tensor(v) => v.iter().for_each(|e| e.collect_idents(out)),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ident(n, _) => write!(f, "{n}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 4)
            }
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 4)
            }
            Expr::Pow(a, k) => {
                wrap(f, a, 5)?;
                if *k < 0 {
                    write!(f, "^({k})")
                } else {
                    write!(f, "^{k}")
                }
            }
            Expr::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            Expr::Tensor(v) => {
                write!(f, "(")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Cursor over a token stream.
pub struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    pub fn new(toks: Vec<Token>) -> Self {
        Parser { toks, at: 0 }
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Ok(Parser::new(tokenize(text)?))
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    pub fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let p = self.pos();
        Err(Error::Syntax { line: p.line, col: p.col, msg: msg.into() })
    }

    pub fn is_sym(&self, c: char) -> bool {
        matches!(self.peek(), Tok::Sym(d) if *d == c)
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            let found = self.peek().clone();
            self.error(format!("expected `{c}`, found {found}"))
        }
    }

    pub fn expect_arrow(&mut self) -> Result<()> {
        if matches!(self.peek(), Tok::Arrow) {
            self.bump();
            Ok(())
        } else {
            let found = self.peek().clone();
            self.error(format!("expected `->`, found {found}"))
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            let found = self.peek().clone();
            self.error(format!("expected `{kw}`, found {found}"))
        }
    }

    pub fn ident(&mut self) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            other => self.error(format!("expected identifier, found {other}")),
        }
    }

    pub fn int(&mut self) -> Result<BigInt> {
        let neg = self.eat_sym('-');
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            other => self.error(format!("expected integer, found {other}")),
        }
    }

    pub fn small_int(&mut self) -> Result<i64> {
        let n = self.int()?;
        match n.to_i64() {
            Some(v) => Ok(v),
            None => self.error("integer out of range"),
        }
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat_sym('^') {
            let k = if self.eat_sym('(') {
                let k = self.small_int()?;
                self.expect_sym(')')?;
                k
            } else {
                self.small_int()?
            };
            let k = match i32::try_from(k) {
                Ok(k) => k,
                Err(_) => return self.error("exponent out of range"),
            };
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Ident(s, pos))
            }
            Tok::Sym('(') => {
                self.bump();
                let first = self.expr()?;
                if self.is_sym('|') {
                    let mut parts = vec![first];
                    while self.eat_sym('|') {
                        parts.push(self.expr()?);
                    }
                    self.expect_sym(')')?;
                    return Ok(Expr::Tensor(parts));
                }
                self.expect_sym(')')?;
                Ok(first)
            }
            Tok::Sym('[') => {
                self.bump();
                let a = self.expr()?;
                self.expect_sym(',')?;
                let b = self.expr()?;
                self.expect_sym(']')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            other => self.error(format!("expected expression, found {other}")),
        }
    }
}

/// Parses a complete expression.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::from_text(text)?;
    let e = p.expr()?;
    if !p.at_eof() {
        let found = p.peek().clone();
        return p.error(format!("unexpected {found} after expression"));
    }
    Ok(e)
}

/// True when the expression is syntactically the integer zero.
pub fn is_literal_zero(e: &Expr) -> bool {
    matches!(e, Expr::Int(n) if n.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_exponents() {
        let a = parse_expr("K^-1").unwrap();
        let b = parse_expr("K^(-1)").unwrap();
        assert_eq!(a, b);
        assert!(matches!(a, Expr::Pow(_, -1)));
    }

    #[test]
    fn precedence() {
        let e = parse_expr("-q^2 + a*b/c").unwrap();
        assert_eq!(e.to_string(), "-q^2 + a*b/c");
        let e = parse_expr("(a + b)*(a - b)").unwrap();
        assert_eq!(e.to_string(), "(a + b)*(a - b)");
    }

    #[test]
    fn tensor_and_bracket() {
        let e = parse_expr("(g | g^-1 | g) - [X, Y]").unwrap();
        assert_eq!(e.to_string(), "(g | g^(-1) | g) - [X, Y]");
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["a - (b - c)", "a/(b*c)", "(a/b)/c", "-(a + b)", "2*x^3 - 1/(q - q^(-1))"] {
            let e = parse_expr(s).unwrap();
            let again = parse_expr(&e.to_string()).unwrap();
            assert_eq!(strip(&e), strip(&again), "{s}");
        }
    }

    fn strip(e: &Expr) -> String {
        format!("{e}")
    }

    #[test]
    fn error_position() {
        match parse_expr("laurent(T1") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 8)),
            other => panic!("{other:?}"),
        }
        match parse_expr("(a + b") {
            Err(Error::Syntax { col, msg, .. }) => {
                assert_eq!(col, 7);
                assert!(msg.contains("end of input"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unicode_identifiers() {
        let e = parse_expr("ξ*γ'").unwrap();
        let names: Vec<_> = e.idents().into_iter().map(|(n, _)| n.to_string()).collect();
        assert_eq!(names, ["ξ", "γ'"]);
    }
}
