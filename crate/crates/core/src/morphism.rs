//! Algebra maps given by generator images, verified on the defining
//! relations.
//!
//! Every relation of a tower algebra is generated by the rewriting rules on
//! generators (`g r = τ(r) g`, `g g⁻¹ = 1`, `Y X = ξ⁻¹(XY - c)`), and a map
//! defined multiplicatively on normal monomials is an algebra map as soon as
//! it respects those rule instances. Checking the finitely many instances is
//! therefore a complete test.

use std::fmt;

use crate::algebra::{Element, Monomial, TowerAlgebra};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Target of a morphism: an algebra, a tensor product of algebras, or the
/// coefficient field.
pub trait Codomain: Clone {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, s: &Scalar) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn belongs(&self, a: &Self::Elem) -> bool;
    fn same(&self, other: &Self) -> bool;
    fn show(&self, a: &Self::Elem) -> String;
}

impl Codomain for TowerAlgebra {
    type Elem = Element;

    fn one(&self) -> Element {
        TowerAlgebra::one(self)
    }
    fn zero(&self) -> Element {
        Element::zero()
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        a.add(b)
    }
    fn scale(&self, a: &Element, s: &Scalar) -> Element {
        a.scale(s)
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        TowerAlgebra::mul(self, a, b)
    }
    fn unit_inverse(&self, a: &Element) -> Option<Element> {
        TowerAlgebra::unit_inverse(self, a)
    }
    fn belongs(&self, a: &Element) -> bool {
        self.contains(a)
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn show(&self, a: &Element) -> String {
        self.display(a).to_string()
    }
}

/// The coefficient field as a codomain, for characters.
#[derive(Clone, Debug, Default)]
pub struct ScalarField {
    pub ring: crate::scalar::ParamRing,
}

impl Codomain for ScalarField {
    type Elem = Scalar;

    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn scale(&self, a: &Scalar, s: &Scalar) -> Scalar {
        a * s
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn unit_inverse(&self, a: &Scalar) -> Option<Scalar> {
        a.inv().ok()
    }
    fn belongs(&self, _: &Scalar) -> bool {
        true
    }
    fn same(&self, _: &Self) -> bool {
        true
    }
    fn show(&self, a: &Scalar) -> String {
        a.display(&self.ring).to_string()
    }
}

/// Multiplicative (or antimultiplicative) extension of generator images.
#[derive(Clone)]
pub struct Morphism<C: Codomain> {
    source: TowerAlgebra,
    target: C,
    images: Vec<C::Elem>,
    inverse_images: Vec<Option<C::Elem>>,
    antimultiplicative: bool,
}

impl<C: Codomain> fmt::Debug for Morphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.images.len())
            .map(|i| format!("{} ↦ {}", self.source.gen_name(i), self.target.show(&self.images[i])))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub type Character = Morphism<ScalarField>;

impl<C: Codomain> Morphism<C> {
    /// Builds and verifies a morphism. `inverse_images[i]`, when given, is
    /// the image of `g_i⁻¹`; otherwise it is derived as the unit inverse of
    /// the image of `g_i`.
    pub fn define(
        source: &TowerAlgebra,
        target: &C,
        images: Vec<C::Elem>,
        inverse_images: Option<Vec<Option<C::Elem>>>,
        antimultiplicative: bool,
    ) -> Result<Self> {
        let m = Morphism::unchecked(source, target, images, inverse_images, antimultiplicative)?;
        m.verify()?;
        Ok(m)
    }

    /// Builds the map, resolving inverse images, without checking relations.
    pub fn unchecked(
        source: &TowerAlgebra,
        target: &C,
        images: Vec<C::Elem>,
        inverse_images: Option<Vec<Option<C::Elem>>>,
        antimultiplicative: bool,
    ) -> Result<Self> {
        let n = source.ngens();
        if images.len() != n {
            return Err(Error::invalid(format!("expected {n} generator images, got {}", images.len())));
        }
        if let Some(bad) = images.iter().position(|e| !target.belongs(e)) {
            return Err(Error::invalid(format!("image of {} is outside the target", source.gen_name(bad))));
        }
        let mut given = inverse_images.unwrap_or_default();
        given.resize(n, None);
        let mut inv = Vec::with_capacity(n);
        for (i, g) in given.into_iter().enumerate() {
            if !source.is_invertible(i) {
                inv.push(None);
                continue;
            }
            let v = match g {
                Some(v) => v,
                None => target
                    .unit_inverse(&images[i])
                    .ok_or_else(|| Error::NotUnit(format!("image {} of {}", target.show(&images[i]), source.gen_name(i))))?,
            };
            inv.push(Some(v));
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), images, inverse_images: inv, antimultiplicative })
    }

    /// Checks every defining relation; the error names the first violated
    /// one.
    pub fn verify(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some((relation, witness)) => Err(Error::RelationViolation { relation, witness }),
        }
    }

    pub fn first_violation(&self) -> Option<(String, String)> {
        for rel in self.source.relations() {
            let factors: Vec<C::Elem> = rel.word.iter().map(|&(g, e)| self.gen_power(g, e)).collect();
            let lhs = self.product(&factors);
            let rhs = self.apply(&rel.rhs);
            if lhs != rhs {
                return Some((
                    self.source.relation_text(&rel),
                    format!("{} != {}", self.target.show(&lhs), self.target.show(&rhs)),
                ));
            }
        }
        None
    }

    fn product(&self, factors: &[C::Elem]) -> C::Elem {
        let mut acc = self.target.one();
        if self.antimultiplicative {
            for f in factors.iter().rev() {
                acc = self.target.mul(&acc, f);
            }
        } else {
            for f in factors {
                acc = self.target.mul(&acc, f);
            }
        }
        acc
    }

    fn gen_power(&self, g: usize, e: i32) -> C::Elem {
        let base = if e < 0 {
            self.inverse_images[g].as_ref().expect("inverse image of invertible generator")
        } else {
            &self.images[g]
        };
        let mut acc = self.target.one();
        for _ in 0..e.unsigned_abs() {
            acc = self.target.mul(&acc, base);
        }
        acc
    }

    pub fn source(&self) -> &TowerAlgebra {
        &self.source
    }

    pub fn target(&self) -> &C {
        &self.target
    }

    pub fn is_antimultiplicative(&self) -> bool {
        self.antimultiplicative
    }

    pub fn image(&self, i: usize) -> &C::Elem {
        &self.images[i]
    }

    pub fn images(&self) -> &[C::Elem] {
        &self.images
    }

    pub fn inverse_image(&self, i: usize) -> Option<&C::Elem> {
        self.inverse_images[i].as_ref()
    }

    pub fn apply_mono(&self, m: &Monomial) -> C::Elem {
        let factors: Vec<C::Elem> =
            m.exps().iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| self.gen_power(i, e)).collect();
        self.product(&factors)
    }

    /// Linear extension; the input must lie in the source.
    pub fn apply(&self, e: &Element) -> C::Elem {
        let mut acc = self.target.zero();
        for (m, c) in e.iter() {
            acc = self.target.add(&acc, &self.target.scale(&self.apply_mono(m), c));
        }
        acc
    }

    pub fn apply_checked(&self, e: &Element) -> Result<C::Elem> {
        if !self.source.contains(e) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.apply(e))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Morphism<TowerAlgebra>) -> Result<Morphism<C>> {
        if inner.target() != &self.source {
            return Err(Error::invalid("morphisms are not composable"));
        }
        let images = inner.images.iter().map(|e| self.apply(e)).collect();
        let inv = inner.inverse_images.iter().map(|o| o.as_ref().map(|e| self.apply(e))).collect();
        Ok(Morphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            images,
            inverse_images: inv,
            antimultiplicative: self.antimultiplicative != inner.antimultiplicative,
        })
    }

    /// Same images with every scalar transformed, e.g. a parameter
    /// substitution.
    pub fn with_images(&self, images: Vec<C::Elem>) -> Result<Morphism<C>> {
        Morphism::define(&self.source, &self.target, images, None, self.antimultiplicative)
    }
}

impl Morphism<TowerAlgebra> {
    pub fn identity(alg: &TowerAlgebra) -> Self {
        let images = (0..alg.ngens()).map(|i| alg.gen(i)).collect();
        Morphism::unchecked(alg, alg, images, None, false).expect("identity")
    }

    /// First generator on which `self ∘ other` and `other ∘ self` differ.
    pub fn first_noncommuting(&self, other: &Morphism<TowerAlgebra>) -> Option<usize> {
        first_noncommuting(self, other)
    }
}

pub fn first_noncommuting(f: &Morphism<TowerAlgebra>, g: &Morphism<TowerAlgebra>) -> Option<usize> {
    (0..f.source().ngens()).find(|&i| f.apply(g.image(i)) != g.apply(f.image(i)))
}

/// An automorphism together with its inverse, both composites checked to be
/// the identity on generators.
#[derive(Clone)]
pub struct Automorphism {
    fwd: Morphism<TowerAlgebra>,
    inv: Morphism<TowerAlgebra>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.fwd)
    }
}

impl Automorphism {
    pub fn identity(alg: &TowerAlgebra) -> Self {
        let id = Morphism::identity(alg);
        Automorphism { fwd: id.clone(), inv: id }
    }

    /// `g_i ↦ λ_i g_i` on every generator.
    pub fn scaling(alg: &TowerAlgebra, factors: &[Scalar]) -> Result<Self> {
        if factors.len() != alg.ngens() {
            return Err(Error::invalid("one factor per generator expected"));
        }
        let images = factors.iter().enumerate().map(|(i, s)| alg.gen(i).scale(s)).collect();
        Automorphism::from_images(alg, images, None)
    }

    /// Verifies the images, derives the inverse when not supplied, and checks
    /// both composites.
    pub fn from_images(alg: &TowerAlgebra, images: Vec<Element>, inverse: Option<Vec<Element>>) -> Result<Self> {
        let fwd = Morphism::define(alg, alg, images, None, false)?;
        let inv_images = match inverse {
            Some(v) => v,
            None => derive_inverse(&fwd)?,
        };
        let inv = Morphism::define(alg, alg, inv_images, None, false)?;
        for i in 0..alg.ngens() {
            let g = alg.gen(i);
            if fwd.apply(inv.image(i)) != g || inv.apply(fwd.image(i)) != g {
                return Err(Error::NotAutomorphism(format!("inverse fails on {}", alg.gen_name(i))));
            }
        }
        Ok(Automorphism { fwd, inv })
    }

    pub fn algebra(&self) -> &TowerAlgebra {
        self.fwd.source()
    }

    pub fn forward(&self) -> &Morphism<TowerAlgebra> {
        &self.fwd
    }

    pub fn inverse(&self) -> &Morphism<TowerAlgebra> {
        &self.inv
    }

    pub fn inverted(&self) -> Automorphism {
        Automorphism { fwd: self.inv.clone(), inv: self.fwd.clone() }
    }

    pub fn image(&self, i: usize) -> &Element {
        self.fwd.image(i)
    }

    pub fn apply(&self, e: &Element) -> Element {
        self.fwd.apply(e)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let fwd = self.fwd.after(&other.fwd).expect("same algebra");
        let inv = other.inv.after(&self.inv).expect("same algebra");
        Automorphism { fwd, inv }
    }

    pub fn commutes_with(&self, other: &Automorphism) -> bool {
        first_noncommuting(&self.fwd, &other.fwd).is_none()
    }

    pub fn is_identity(&self) -> bool {
        let alg = self.algebra();
        (0..alg.ngens()).all(|i| self.image(i) == &alg.gen(i))
    }
}

/// Inverse images for triangular maps: `g_i ↦ u·g_i^{±1} + (terms in g_j,
/// j < i)` with `u` a unit in lower generators.
fn derive_inverse(f: &Morphism<TowerAlgebra>) -> Result<Vec<Element>> {
    let alg = f.source().clone();
    let mut inv: Vec<Element> = Vec::with_capacity(alg.ngens());
    for i in 0..alg.ngens() {
        let img = f.image(i);
        let lower = Morphism::unchecked(
            &alg,
            &alg,
            (0..alg.ngens()).map(|j| if j < i { inv[j].clone() } else { alg.gen(j) }).collect(),
            None,
            false,
        );
        let fail = || Error::NotAutomorphism(format!("cannot invert image of {}; supply inverse images", alg.gen_name(i)));
        let lower = lower.map_err(|_| fail())?;
        let mut lead: Option<(Monomial, Scalar)> = None;
        let mut rest = Element::zero();
        for (m, c) in img.iter() {
            let top = m.width().saturating_sub(1);
            if m.width() > i + 1 {
                return Err(fail());
            }
            if m.width() == i + 1 && m.exp(i) != 0 && top == i {
                if lead.is_some() || m.exp(i).abs() != 1 {
                    return Err(fail());
                }
                lead = Some((m.clone(), c.clone()));
            } else {
                rest.add_term(m.clone(), c.clone());
            }
        }
        let (m, c) = lead.ok_or_else(fail)?;
        let e = m.exp(i);
        let low = m.prefix(i);
        let unit = Element::term(low, c);
        if !alg.is_unit(&unit) {
            return Err(fail());
        }
        let unit_pre = lower.apply(&unit);
        let unit_pre_inv = alg.unit_inverse(&unit_pre).ok_or_else(fail)?;
        let g = alg.gen(i);
        let value = if e == 1 {
            alg.mul(&unit_pre_inv, &g.sub(&lower.apply(&rest)))
        } else {
            if !rest.is_zero() || !alg.is_invertible(i) {
                return Err(fail());
            }
            let gi = alg.unit_inverse(&g).expect("invertible generator");
            alg.mul(&gi, &lower.apply(&unit))
        };
        inv.push(value);
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParamRing;

    #[test]
    fn shift_inverse_is_derived() {
        let k = TowerAlgebra::base_field(ParamRing::new());
        let kt = k.polynomial("kT", "T").unwrap();
        let one = kt.one();
        let tau = Automorphism::from_images(&kt, vec![kt.gen(0).add(&one)], None).unwrap();
        assert_eq!(tau.inverse().image(0), &kt.gen(0).sub(&one));
    }

    #[test]
    fn torus_map_collapsing_generators_is_rejected() {
        let r = ParamRing::with_params(&["q"]).unwrap();
        let q = r.param("q").unwrap();
        let k = TowerAlgebra::base_field(r);
        let t1 = k.laurent("R1", "T1").unwrap();
        let tau = Automorphism::scaling(&t1, &[q.inv().unwrap()]).unwrap();
        let t = t1.skew_adjoin("R", "T2", true, tau).unwrap();
        let bad = Morphism::define(&t, &t, vec![t.gen(0), t.gen(0)], None, false);
        assert!(matches!(bad, Err(Error::RelationViolation { .. })));
    }

    #[test]
    fn antipode_on_laurent() {
        let k = TowerAlgebra::base_field(ParamRing::new());
        let kz = k.laurent("kZ", "K").unwrap();
        let kinv = kz.unit_inverse(&kz.gen(0)).unwrap();
        let s = Morphism::define(&kz, &kz, vec![kinv.clone()], None, true).unwrap();
        let k2 = kz.mul(&kz.gen(0), &kz.gen(0));
        assert_eq!(s.apply(&k2), kz.mul(&kinv, &kinv));
    }
}
