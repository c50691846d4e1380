//! The coefficient field `Q(p_1, ..., p_n)` of rational functions in the
//! declared parameters.
//!
//! Fractions are kept as numerator/denominator pairs without a multivariate
//! gcd. Equality is decided by cross-multiplication, so two differently
//! written representatives of the same rational function always compare
//! equal. Normalization only cancels common monomial factors, performs exact
//! division when one side divides the other, and fixes the integer content
//! and sign so that printed forms are stable.

mod poly;
mod ring;

pub use poly::{PMono, Poly, PolyDisplay};
pub use ring::{ParamRing, ScalarDisplay};

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { num: Poly::from_int(n), den: Poly::one() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar { num: Poly::constant(c), den: Poly::one() }
    }

    /// The parameter with index `i`.
    pub fn param(i: usize) -> Self {
        Scalar { num: Poly::var(i), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    /// `num / den`, failing if `den` is the zero polynomial.
    pub fn fraction(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar { num, den }.normalized())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The rational value when the scalar does not depend on any parameter.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn uses_param(&self, i: usize) -> bool {
        self.num.uses_var(i) || self.den.uses_var(i)
    }

    /// A scalar whose nonvanishing is guaranteed for every value of the
    /// parameters with the listed nonzero ones: a constant times a product
    /// of those parameters (possibly with negative exponents).
    pub fn is_monomial_in(&self, nonzero: &dyn Fn(usize) -> bool) -> bool {
        let ok = |p: &Poly| {
            p.as_monomial().is_some_and(|(m, _)| {
                m.exps().iter().enumerate().all(|(i, &e)| e == 0 || nonzero(i))
            })
        };
        ok(&self.num) && ok(&self.den)
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = self.den.as_constant() {
            if !c.is_one() {
                let inv = c.recip();
                self.num = self.num.scale(&inv);
                self.den = Poly::one();
            }
            return self;
        }
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !g.is_one() {
            self.num = self.num.div_monomial(&g).expect("monomial content divides");
            self.den = self.den.div_monomial(&g).expect("monomial content divides");
        }
        if self.den.len() > 1 {
            if let Some(q) = self.num.exact_div(&self.den) {
                return Scalar { num: q, den: Poly::one() };
            }
            if self.num.len() > 1 {
                if let Some(q) = self.den.exact_div(&self.num) {
                    self.num = Poly::one();
                    self.den = q;
                }
            }
        }
        if let Some(c) = self.den.as_constant() {
            return Scalar { num: self.num.scale(&c.recip()), den: Poly::one() };
        }
        let content = self.den.content();
        if !content.is_one() {
            let inv = content.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Ok(Scalar { num: self.den.clone(), den: self.num.clone() }.normalized())
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Scalar { num: base.num.pow(e), den: base.den.pow(e) }.normalized())
    }

    /// Replace parameter `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Scalar) -> Result<Scalar> {
        let num = subst_poly(&self.num, var, value)?;
        let den = subst_poly(&self.den, var, value)?;
        num.checked_div(&den)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv().map_err(|_| Error::DivisionByZero)?)
    }

    pub fn display<'a>(&'a self, ring: &'a ParamRing) -> ScalarDisplay<'a> {
        ScalarDisplay::new(self, ring.names())
    }
}

fn subst_poly(p: &Poly, var: usize, value: &Scalar) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    let mut powers: Vec<Scalar> = vec![Scalar::one()];
    for (m, c) in p.terms() {
        let e = m.exp(var) as usize;
        while powers.len() <= e {
            let next = powers.last().unwrap() * value;
            powers.push(next);
        }
        let rest = Scalar::from_poly(Poly::monomial(m.without(var), c.clone()));
        acc = &acc + &(&rest * &powers[e]);
    }
    Ok(acc)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den.is_one() && other.den.is_one() {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar { num: self.num.add(&rhs.num), den: self.den.clone() }.normalized();
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar { num, den: self.den.mul(&rhs.den) }.normalized()
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: self.num.mul(&rhs.num), den: Poly::one() };
        }
        Scalar { num: self.num.mul(&rhs.num), den: self.den.mul(&rhs.den) }.normalized()
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::param(0)
    }

    #[test]
    fn scaled_fractions_are_equal() {
        let a = q().checked_div(&(&q() * &q() - Scalar::one())).unwrap();
        let two = Scalar::from_int(2);
        let b = (&two * &q()).checked_div(&(&(&two * &q()) * &q() - two.clone())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn q_is_not_its_inverse() {
        assert_ne!(q(), q().inv().unwrap());
    }

    #[test]
    fn invert_zero_fails() {
        assert!(matches!(Scalar::zero().inv(), Err(Error::InversionOfZero)));
    }

    #[test]
    fn swap_on_inversion() {
        let one = Scalar::one();
        let a = (&q() - &one).checked_div(&(&q() + &one)).unwrap();
        let b = (&q() + &one).checked_div(&(&q() - &one)).unwrap();
        assert_eq!(a.inv().unwrap(), b);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn exact_cancellation_clears_denominator() {
        let one = Scalar::one();
        let num = &q() * &q() - one.clone();
        let den = &q() - &one;
        let r = num.checked_div(&den).unwrap();
        assert!(r.denom().is_one());
        assert_eq!(r, &q() + &one);
    }

    #[test]
    fn substitution() {
        let x = &q() * &q() + Scalar::one();
        let v = x.substitute(0, &Scalar::from_int(3)).unwrap();
        assert_eq!(v, Scalar::from_int(10));
        let pole = Scalar::one().checked_div(&(&q() - &Scalar::one())).unwrap();
        assert!(pole.substitute(0, &Scalar::one()).is_err());
    }
}
