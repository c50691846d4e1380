use std::fmt;

use num_traits::{One, Signed};

use super::poly::{fmt_pmono, fmt_rational, PMono};
use super::Scalar;
use crate::error::{Error, Result};
use crate::expr::{self, Expr};

/// The ordered list of parameters generating the coefficient field.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamRing {
    names: Vec<String>,
    nonzero: Vec<bool>,
}

impl ParamRing {
    pub fn new() -> Self {
        ParamRing::default()
    }

    pub fn with_params<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut ring = ParamRing::new();
        for n in names {
            ring.add(n.as_ref(), false)?;
        }
        Ok(ring)
    }

    /// Appends a parameter. Indices of existing parameters never change, so
    /// scalars built over a prefix ring stay valid.
    pub fn add(&mut self, name: &str, nonzero: bool) -> Result<usize> {
        if self.index(name).is_some() {
            return Err(Error::Redeclared(name.to_string()));
        }
        self.names.push(name.to_string());
        self.nonzero.push(nonzero);
        Ok(self.names.len() - 1)
    }

    /// Appends a fresh parameter whose name starts with `stem`.
    pub fn fresh(&mut self, stem: &str, nonzero: bool) -> usize {
        let mut name = stem.to_string();
        let mut k = 1;
        while self.index(&name).is_some() {
            name = format!("{stem}{k}");
            k += 1;
        }
        self.add(&name, nonzero).expect("fresh name")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_nonzero(&self, i: usize) -> bool {
        self.nonzero.get(i).copied().unwrap_or(false)
    }

    pub fn param(&self, name: &str) -> Result<Scalar> {
        self.index(name)
            .map(Scalar::param)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Rejects scalars mentioning parameters outside this ring.
    pub fn check(&self, s: &Scalar) -> Result<()> {
        let n = s.numer().nvars().max(s.denom().nvars());
        if n > self.len() {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn eq(&self, a: &Scalar, b: &Scalar) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(a == b)
    }

    /// Parses an expression in integers, parameters, `+ - * / ^`, and
    /// parentheses.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let e = expr::parse_expr(text)?;
        self.eval(&e)
    }

    pub fn eval(&self, e: &Expr) -> Result<Scalar> {
        match e {
            Expr::Int(n) => Ok(Scalar::from_rational(n.clone().into())),
            Expr::Ident(name, _) => self.param(name),
            Expr::Neg(a) => Ok(-self.eval(a)?),
            Expr::Add(a, b) => Ok(self.eval(a)? + self.eval(b)?),
            Expr::Sub(a, b) => Ok(self.eval(a)? - self.eval(b)?),
            Expr::Mul(a, b) => Ok(self.eval(a)? * self.eval(b)?),
            Expr::Div(a, b) => {
                let d = self.eval(b)?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                self.eval(a)?.checked_div(&d)
            }
            Expr::Pow(a, k) => self.eval(a)?.pow(*k),
            Expr::Bracket(a, b) => {
                // Scalars commute.
                self.eval(a)?;
                self.eval(b)?;
                Ok(Scalar::zero())
            }
            Expr::Tensor(_) => Err(Error::Eval("tensor literal where a scalar was expected".into())),
        }
    }
}

/// Prints a scalar with parameter names. Fractions whose denominator is a
/// monomial are printed as Laurent polynomials.
pub struct ScalarDisplay<'a> {
    s: &'a Scalar,
    names: &'a [String],
}

impl<'a> ScalarDisplay<'a> {
    pub(crate) fn new(s: &'a Scalar, names: &'a [String]) -> Self {
        ScalarDisplay { s, names }
    }

    /// Number of printed summands; callers parenthesize when more than one.
    pub fn summands(&self) -> usize {
        if self.s.denom().as_monomial().is_some() {
            self.s.numer().len()
        } else {
            1
        }
    }
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = (self.s.numer(), self.s.denom());
        if den.is_one() {
            return write!(f, "{}", num.display(self.names));
        }
        if let Some((dm, dc)) = den.as_monomial() {
            let inv = dc.recip();
            let scaled = num.scale(&inv);
            return scaled.display(self.names).fmt_with_denominator(Some(dm), f);
        }
        let wrap = |n: usize| n > 1;
        let ns = num.display(self.names).to_string();
        let ds = den.display(self.names).to_string();
        if wrap(num.len()) {
            write!(f, "({ns})")?;
        } else {
            write!(f, "{ns}")?;
        }
        if wrap(den.len()) {
            write!(f, "/({ds})")
        } else {
            write!(f, "/{ds}")
        }
    }
}

#[allow(dead_code)]
pub(crate) fn fmt_coefficient_monomial(c: &num_rational::BigRational, m: &PMono, names: &[String]) -> String {
    let mono = fmt_pmono(m, names, None);
    if mono.is_empty() {
        fmt_rational(c)
    } else if c.is_one() {
        mono
    } else if c.is_negative() && (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{}*{mono}", fmt_rational(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> ParamRing {
        ParamRing::with_params(&["q"]).unwrap()
    }

    #[test]
    fn parse_square() {
        let r = ring();
        let s = r.parse("q^2").unwrap();
        assert_eq!(s, &r.param("q").unwrap() * &r.param("q").unwrap());
        assert!(s.denom().is_one());
    }

    #[test]
    fn parse_inverse_of_q_minus_inverse() {
        let r = ring();
        let s = r.parse("1/(q - q^(-1))").unwrap();
        let q = r.param("q").unwrap();
        let expected = q.checked_div(&(&q * &q - Scalar::one())).unwrap();
        // Cross-multiplication oracle: s * (q^2 - 1) == q.
        let lhs = &s * &(&q * &q - Scalar::one());
        assert_eq!(lhs, q);
        assert_eq!(s, expected);
        assert_eq!(s.display(&r).to_string(), "q/(q^2 - 1)");
    }

    #[test]
    fn parse_zero_is_canonical() {
        let s = ring().parse("0/1 + 0").unwrap();
        assert!(s.is_zero());
        assert!(s.denom().is_one());
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert!(matches!(r.parse("q +"), Err(Error::Syntax { .. })));
        assert!(matches!(r.parse("p"), Err(Error::UnknownName(_))));
        assert!(matches!(r.parse("1/(q - q)"), Err(Error::DivisionByZero)));
    }

    #[test]
    fn laurent_printing() {
        let r = ParamRing::with_params(&["q", "ξ"]).unwrap();
        let s = r.parse("ξ/q").unwrap();
        assert_eq!(s.display(&r).to_string(), "q^-1*ξ");
    }
}
