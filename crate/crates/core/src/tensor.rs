//! Mixed tensor products `A_1 ⊗ A_2^op ⊗ ...` with sparse terms.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Element, Monomial, TowerAlgebra};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::morphism::Codomain;
use crate::scalar::{ParamRing, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Straight,
    Opposite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub algebra: TowerAlgebra,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSignature(Arc<Vec<Slot>>);

impl TensorSignature {
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::invalid("a tensor signature needs at least one slot"));
        }
        Ok(TensorSignature(Arc::new(slots)))
    }

    pub fn from_parities(alg: &TowerAlgebra, parities: &[Parity]) -> Self {
        let slots = parities.iter().map(|&parity| Slot { algebra: alg.clone(), parity }).collect();
        TensorSignature::new(slots).expect("nonempty")
    }

    /// `R ⊗ R^op ⊗ R`.
    pub fn torsor(alg: &TowerAlgebra) -> Self {
        TensorSignature::from_parities(alg, &[Parity::Straight, Parity::Opposite, Parity::Straight])
    }

    /// `R ⊗ R^op ⊗ R ⊗ R^op ⊗ R`.
    pub fn torsor5(alg: &TowerAlgebra) -> Self {
        use Parity::*;
        TensorSignature::from_parities(alg, &[Straight, Opposite, Straight, Opposite, Straight])
    }

    /// `R^op ⊗ R`.
    pub fn op_straight(alg: &TowerAlgebra) -> Self {
        TensorSignature::from_parities(alg, &[Parity::Opposite, Parity::Straight])
    }

    pub fn straight(alg: &TowerAlgebra, n: usize) -> Self {
        TensorSignature::from_parities(alg, &vec![Parity::Straight; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.0
    }

    pub fn slot(&self, i: usize) -> &Slot {
        &self.0[i]
    }

    pub fn splice(&self, i: usize, inner: &TensorSignature) -> TensorSignature {
        let mut slots: Vec<Slot> = self.0[..i].to_vec();
        slots.extend(inner.0.iter().cloned());
        slots.extend(self.0[i + 1..].iter().cloned());
        TensorSignature(Arc::new(slots))
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement { sig: self.clone(), terms: LinComb::zero() }
    }

    pub fn one(&self) -> TensorElement {
        TensorElement { sig: self.clone(), terms: LinComb::basis(vec![Monomial::one(); self.len()]) }
    }

    /// `e_1 ⊗ e_2 ⊗ ...`.
    pub fn pure(&self, parts: &[Element]) -> Result<TensorElement> {
        if parts.len() != self.len() {
            return Err(Error::SignatureMismatch);
        }
        for (p, s) in parts.iter().zip(self.slots()) {
            s.algebra.check(p)?;
        }
        let mut acc: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for p in parts {
            let mut next = Vec::new();
            for (key, c) in &acc {
                for (m, d) in p.iter() {
                    let mut k = key.clone();
                    k.push(m.clone());
                    next.push((k, c * d));
                }
            }
            acc = next;
        }
        Ok(TensorElement { sig: self.clone(), terms: acc.into_iter().collect() })
    }

    /// Product of monomial tuples, expanded into normal form slot by slot.
    fn mul_keys(&self, a: &[Monomial], b: &[Monomial]) -> LinComb<Vec<Monomial>> {
        let mut acc: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::with_capacity(a.len()), Scalar::one())];
        for (i, slot) in self.slots().iter().enumerate() {
            let prod = match slot.parity {
                Parity::Straight => slot.algebra.mul_mono(&a[i], &b[i]),
                Parity::Opposite => slot.algebra.mul_mono(&b[i], &a[i]),
            };
            if prod.len() == 1 {
                let (m, d) = prod.iter().next().expect("one term");
                for (k, c) in acc.iter_mut() {
                    k.push(m.clone());
                    *c = &*c * d;
                }
                continue;
            }
            let mut next = Vec::with_capacity(acc.len() * prod.len());
            for (key, c) in &acc {
                for (m, d) in prod.iter() {
                    let mut k = key.clone();
                    k.push(m.clone());
                    next.push((k, c * d));
                }
            }
            acc = next;
        }
        acc.into_iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    sig: TensorSignature,
    terms: LinComb<Vec<Monomial>>,
}

impl TensorElement {
    pub fn signature(&self) -> &TensorSignature {
        &self.sig
    }

    pub fn terms(&self) -> &LinComb<Vec<Monomial>> {
        &self.terms
    }

    pub fn from_terms(sig: &TensorSignature, terms: LinComb<Vec<Monomial>>) -> Result<Self> {
        for k in terms.keys() {
            if k.len() != sig.len() {
                return Err(Error::SignatureMismatch);
            }
        }
        Ok(TensorElement { sig: sig.clone(), terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn same_sig(&self, other: &TensorElement) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        debug_assert_eq!(self.sig, other.sig);
        TensorElement { sig: self.sig.clone(), terms: self.terms.add(&other.terms) }
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        debug_assert_eq!(self.sig, other.sig);
        TensorElement { sig: self.sig.clone(), terms: self.terms.sub(&other.terms) }
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        TensorElement { sig: self.sig.clone(), terms: self.terms.scale(c) }
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&-Scalar::one())
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.same_sig(other)?;
        Ok(self.add(other))
    }

    pub fn checked_sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.same_sig(other)?;
        Ok(self.sub(other))
    }

    /// Slot-wise product; opposite slots multiply in reversed order.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        debug_assert_eq!(self.sig, other.sig);
        let mut out = LinComb::zero();
        for (ka, ca) in self.terms.iter() {
            for (kb, cb) in other.terms.iter() {
                out.add_scaled(&self.sig.mul_keys(ka, kb), &(ca * cb));
            }
        }
        TensorElement { sig: self.sig.clone(), terms: out }
    }

    pub fn tensor_multiply(&self, other: &TensorElement) -> Result<TensorElement> {
        self.same_sig(other)?;
        Ok(self.mul(other))
    }

    /// Inverse of a single pure tensor of units.
    pub fn unit_inverse(&self) -> Option<TensorElement> {
        let (key, c) = self.terms.as_term()?;
        let mut parts = Vec::with_capacity(key.len());
        for (i, m) in key.iter().enumerate() {
            let alg = &self.sig.slot(i).algebra;
            parts.push(alg.unit_inverse(&Element::basis(m.clone()))?);
        }
        parts[0] = parts[0].scale(&c.inv().ok()?);
        self.sig.pure(&parts).ok()
    }

    /// Replaces slot `i` by the image of a linear map given on monomials,
    /// whose values live in `inner` and are spliced in at position `i`.
    pub fn apply_at_slot(
        &self,
        i: usize,
        inner: &TensorSignature,
        f: &dyn Fn(&Monomial) -> TensorElement,
    ) -> Result<TensorElement> {
        if i >= self.sig.len() {
            return Err(Error::invalid(format!("slot {i} out of range")));
        }
        let sig = self.sig.splice(i, inner);
        let mut out = LinComb::zero();
        for (key, c) in self.terms.iter() {
            let img = f(&key[i]);
            if img.sig != *inner {
                return Err(Error::SignatureMismatch);
            }
            for (ik, d) in img.terms.iter() {
                let mut k: Vec<Monomial> = key[..i].to_vec();
                k.extend(ik.iter().cloned());
                k.extend(key[i + 1..].iter().cloned());
                out.add_term(k, c * d);
            }
        }
        Ok(TensorElement { sig, terms: out })
    }

    /// Applies an algebra-valued linear map at slot `i`, keeping the slot.
    pub fn map_slot(&self, i: usize, f: &dyn Fn(&Monomial) -> Element) -> Result<TensorElement> {
        let slot = TensorSignature::new(vec![self.sig.slot(i).clone()])?;
        self.apply_at_slot(i, &slot, &|m| TensorElement { sig: slot.clone(), terms: lift1(&f(m)) })
    }

    /// Multiplies slots `i` and `i + 1` in written order with the straight
    /// product; the merged slot keeps the parity of slot `i`.
    pub fn contract_adjacent(&self, i: usize) -> Result<TensorElement> {
        if i + 1 >= self.sig.len() {
            return Err(Error::invalid(format!("no slot after {i}")));
        }
        let (a, b) = (self.sig.slot(i), self.sig.slot(i + 1));
        if a.algebra != b.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let mut slots: Vec<Slot> = self.sig.slots().to_vec();
        slots.remove(i + 1);
        let sig = TensorSignature::new(slots)?;
        let mut out = LinComb::zero();
        for (key, c) in self.terms.iter() {
            let prod = a.algebra.mul_mono(&key[i], &key[i + 1]);
            for (m, d) in prod.iter() {
                let mut k: Vec<Monomial> = key[..i].to_vec();
                k.push(m.clone());
                k.extend(key[i + 2..].iter().cloned());
                out.add_term(k, c * d);
            }
        }
        Ok(TensorElement { sig, terms: out })
    }

    /// Evaluates a scalar-valued linear map on slot `i` and removes the slot.
    pub fn apply_functional(&self, i: usize, f: &dyn Fn(&Monomial) -> Scalar) -> Result<TensorElement> {
        if self.sig.len() < 2 || i >= self.sig.len() {
            return Err(Error::invalid(format!("cannot remove slot {i}")));
        }
        let mut slots: Vec<Slot> = self.sig.slots().to_vec();
        slots.remove(i);
        let sig = TensorSignature::new(slots)?;
        let mut out = LinComb::zero();
        for (key, c) in self.terms.iter() {
            let v = f(&key[i]);
            if v.is_zero() {
                continue;
            }
            let mut k = key.clone();
            k.remove(i);
            out.add_term(k, c * &v);
        }
        Ok(TensorElement { sig, terms: out })
    }

    /// Multiplies all slots together in written order with the straight
    /// product of a common algebra.
    pub fn multiply_out(&self) -> Result<Element> {
        let mut t = self.clone();
        while t.sig.len() > 1 {
            t = t.contract_adjacent(0)?;
        }
        Ok(t.into_single().expect("one slot"))
    }

    /// Reinterprets the element over a signature whose slot algebras extend
    /// the current ones.
    pub fn retag(&self, sig: &TensorSignature) -> Result<TensorElement> {
        if sig.len() != self.sig.len() {
            return Err(Error::SignatureMismatch);
        }
        for (new, old) in sig.slots().iter().zip(self.sig.slots()) {
            if new.parity != old.parity || !new.algebra.extends(&old.algebra) {
                return Err(Error::SignatureMismatch);
            }
        }
        Ok(TensorElement { sig: sig.clone(), terms: self.terms.clone() })
    }

    /// For a one-slot tensor, the underlying element.
    pub fn into_single(&self) -> Option<Element> {
        if self.sig.len() != 1 {
            return None;
        }
        Some(self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())).collect())
    }

    /// Each term split as `(slot monomials, coefficient)`.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn display<'a>(&'a self, ring: &'a ParamRing) -> TensorDisplay<'a> {
        TensorDisplay { t: self, ring }
    }
}

fn lift1(e: &Element) -> LinComb<Vec<Monomial>> {
    e.iter().map(|(m, c)| (vec![m.clone()], c.clone())).collect()
}

impl Codomain for TensorSignature {
    type Elem = TensorElement;

    fn one(&self) -> TensorElement {
        TensorSignature::one(self)
    }
    fn zero(&self) -> TensorElement {
        TensorSignature::zero(self)
    }
    fn add(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.add(b)
    }
    fn scale(&self, a: &TensorElement, s: &Scalar) -> TensorElement {
        a.scale(s)
    }
    fn mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        a.mul(b)
    }
    fn unit_inverse(&self, a: &TensorElement) -> Option<TensorElement> {
        a.unit_inverse()
    }
    fn belongs(&self, a: &TensorElement) -> bool {
        a.sig == *self
            && a.terms.keys().all(|k| {
                k.iter().zip(self.slots()).all(|(m, s)| s.algebra.contains(&Element::basis(m.clone())))
            })
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn show(&self, a: &TensorElement) -> String {
        let ring = self.slot(0).algebra.ring().clone();
        a.display(&ring).to_string()
    }
}

pub struct TensorDisplay<'a> {
    t: &'a TensorElement,
    ring: &'a ParamRing,
}

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.t.terms.iter().collect();
        let deg = |k: &Vec<Monomial>| k.iter().map(|m| m.degree()).sum::<u32>();
        terms.sort_by(|a, b| deg(a.0).cmp(&deg(b.0)).then_with(|| b.0.cmp(a.0)));
        for (i, (key, c)) in terms.into_iter().enumerate() {
            let text = c.display(self.ring).to_string();
            let multi = c.display(self.ring).summands() > 1;
            let (neg, abs) = if !multi && text.starts_with('-') { (true, -c) } else { (false, c.clone()) };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if !abs.is_one() {
                if multi {
                    write!(f, "({})*", abs.display(self.ring))?;
                } else {
                    write!(f, "{}*", abs.display(self.ring))?;
                }
            }
            let parts: Vec<String> = key
                .iter()
                .zip(self.t.sig.slots())
                .map(|(m, s)| {
                    let t = s.algebra.mono_text(m);
                    if t.is_empty() {
                        "1".to_string()
                    } else {
                        t
                    }
                })
                .collect();
            write!(f, "({})", parts.join(" | "))?;
        }
        Ok(())
    }
}
