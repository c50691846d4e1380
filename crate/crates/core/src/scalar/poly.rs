//! Sparse multivariate polynomials over Q in the declared parameters.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a parameter monomial, trailing zeros trimmed so that
/// the derived lexicographic ordering is a monomial order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PMono(Vec<u16>);

impl PMono {
    pub fn one() -> Self {
        PMono(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        PMono(v)
    }

    pub fn from_exps(mut v: Vec<u16>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        PMono(v)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &PMono) -> PMono {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        PMono(v)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &PMono) -> Option<PMono> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            if v[i] < e {
                return None;
            }
            v[i] -= e;
        }
        Some(PMono::from_exps(v))
    }

    pub fn gcd(&self, other: &PMono) -> PMono {
        let n = self.0.len().min(other.0.len());
        PMono::from_exps((0..n).map(|i| self.0[i].min(other.0[i])).collect())
    }

    pub fn without(&self, var: usize) -> PMono {
        let mut v = self.0.clone();
        if var < v.len() {
            v[var] = 0;
        }
        PMono::from_exps(v)
    }

    pub fn max_var(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }
}

/// A polynomial `sum c_m * m` with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<PMono, BigRational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("p{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PMono::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(i: usize) -> Self {
        Poly::monomial(PMono::var(i), BigRational::one())
    }

    pub fn monomial(m: PMono, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono, &BigRational)> {
        self.terms.iter()
    }

    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The single term when the polynomial is `c * m`.
    pub fn as_monomial(&self) -> Option<(&PMono, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Lex-largest term.
    pub fn leading(&self) -> Option<(&PMono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(PMono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.degree_in(var) > 0
    }

    fn add_term(&mut self, m: PMono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &PMono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn div_monomial(&self, m: &PMono) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Poly { terms })
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division in lex order; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let mut guard = 0usize;
        while let Some((m, c)) = rem.leading() {
            guard += 1;
            if guard > 100_000 {
                return None;
            }
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let t = Poly::monomial(qm, qc);
            rem = rem.sub(&divisor.mul(&t));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Greatest common monomial factor of all terms.
    pub fn monomial_content(&self) -> PMono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return PMono::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Rational content with the sign of the leading coefficient: dividing by
    /// it leaves a primitive integer polynomial with positive leading term.
    pub fn content(&self) -> BigRational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return BigRational::one();
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            content = -content;
        }
        content
    }

    /// Split as `coef * var + rest` when `self` has degree exactly one in `var`.
    pub fn linear_in(&self, var: usize) -> Option<(Poly, Poly)> {
        if self.degree_in(var) != 1 {
            return None;
        }
        let mut a = Poly::zero();
        let mut b = Poly::zero();
        for (m, c) in &self.terms {
            if m.exp(var) == 1 {
                a.add_term(m.without(var), c.clone());
            } else {
                b.add_term(m.clone(), c.clone());
            }
        }
        Some((a, b))
    }

    /// Split into the coefficients of `var^k`, as polynomials free of `var`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u16, Poly> {
        let mut out: BTreeMap<u16, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(var))
                .or_default()
                .add_term(m.without(var), c.clone());
        }
        out
    }

    pub fn vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.uses_var(v)).collect()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn fmt_pmono(m: &PMono, names: &[String], neg: Option<&PMono>) -> String {
    let mut parts = Vec::new();
    let n = m.0.len().max(neg.map_or(0, |x| x.0.len()));
    for i in 0..n {
        let e = m.exp(i) as i32 - neg.map_or(0, |x| x.exp(i) as i32);
        if e == 0 {
            continue;
        }
        let name = names.get(i).cloned().unwrap_or_else(|| format!("p{i}"));
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// Prints terms by descending total degree.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl PolyDisplay<'_> {
    pub(crate) fn fmt_with_denominator(&self, den: Option<&PMono>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let mono = fmt_pmono(m, self.names, den);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_denominator(None, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Poly {
        Poly::var(0)
    }

    #[test]
    fn exact_division_of_difference_of_squares() {
        let p = q().mul(&q()).sub(&Poly::one());
        let d = q().sub(&Poly::one());
        let quot = p.exact_div(&d).unwrap();
        assert_eq!(quot, q().add(&Poly::one()));
        assert!(q().exact_div(&d).is_none());
    }

    #[test]
    fn content_is_signed_by_leading_term() {
        let p = q().scale(&BigRational::from_integer((-4).into())).add(&Poly::from_int(2));
        let c = p.content();
        assert_eq!(c, BigRational::from_integer((-2).into()));
    }

    #[test]
    fn linear_split() {
        let p = Poly::var(1).mul(&q()).add(&Poly::from_int(3));
        let (a, b) = p.linear_in(1).unwrap();
        assert_eq!(a, q());
        assert_eq!(b, Poly::from_int(3));
        assert!(p.mul(&Poly::var(1)).linear_in(1).is_none());
    }
}
