//! Hopf-Galois structures `μ : R → R ⊗ R^op ⊗ R` and the predicates built on
//! them.
//!
//! The axioms are checked on generators and on inverses of invertible
//! generators. This is complete:
//!
//! * both sides of `(μ⊗id⊗id)∘μ = (id⊗id⊗μ)∘μ` are algebra maps into the
//!   five-fold tensor, so they agree everywhere once they agree on
//!   generators;
//! * if `x` and `y` satisfy `x(1)x(2) ⊗ x(3) = 1 ⊗ x`, then
//!   `(xy)(1)(xy)(2) ⊗ (xy)(3) = x(1)y(1)y(2)x(2) ⊗ x(3)y(3)` (the middle slot
//!   is opposite), which collapses to `x(1)x(2) ⊗ x(3)y = 1 ⊗ xy`; the right
//!   contraction is symmetric, and both identities are linear.

use std::fmt;

use crate::algebra::{Element, Monomial, TowerAlgebra};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::report::Verdict;
use crate::scalar::Scalar;
use crate::tensor::{TensorElement, TensorSignature};

pub const AX_COASSOC: &str = "(μ⊗id⊗id)∘μ = (id⊗id⊗μ)∘μ";
pub const AX_LEFT: &str = "(m⊗id)∘μ = η⊗id";
pub const AX_RIGHT: &str = "(id⊗m)∘μ = id⊗η";

#[derive(Clone)]
pub struct HopfGaloisStructure {
    alg: TowerAlgebra,
    sig: TensorSignature,
    mu: Morphism<TensorSignature>,
}

impl fmt::Debug for HopfGaloisStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "μ on {}: {:?}", self.alg.name(), self.mu)
    }
}

/// Certified `μ(g) = g ⊗ g⁻¹ ⊗ g`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupLikeCert {
    pub element: Element,
    pub inverse: Element,
}

/// Character values with `x g = α(x) g x` on a witness set.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiCentralCert {
    pub element: Element,
    pub values: Vec<(Element, Scalar)>,
}

impl QuasiCentralCert {
    pub fn value(&self, x: &Element) -> Option<&Scalar> {
        self.values.iter().find(|(w, _)| w == x).map(|(_, v)| v)
    }
}

/// Certified membership `x ∈ P⁰_{g,h}(R)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewPrimCert {
    pub element: Element,
    pub g: Element,
    pub h: Element,
}

impl HopfGaloisStructure {
    /// Builds μ from generator images in `R ⊗ R^op ⊗ R` and verifies that it
    /// is an algebra map satisfying all three axioms.
    pub fn define(alg: &TowerAlgebra, images: Vec<TensorElement>) -> Result<Self> {
        let s = HopfGaloisStructure::unverified(alg, images)?;
        s.mu.verify()?;
        if let Some((axiom, witness)) = s.first_axiom_failure() {
            return Err(Error::Axiom { axiom, witness });
        }
        Ok(s)
    }

    /// Builds μ, resolving inverse images, without checking anything else.
    pub fn unverified(alg: &TowerAlgebra, images: Vec<TensorElement>) -> Result<Self> {
        let sig = TensorSignature::torsor(alg);
        let images = images
            .into_iter()
            .map(|t| if t.signature() == &sig { Ok(t) } else { t.retag(&sig) })
            .collect::<Result<Vec<_>>>()?;
        let mu = Morphism::unchecked(alg, &sig, images, None, false)?;
        Ok(HopfGaloisStructure { alg: alg.clone(), sig, mu })
    }

    pub fn algebra(&self) -> &TowerAlgebra {
        &self.alg
    }

    pub fn signature(&self) -> &TensorSignature {
        &self.sig
    }

    pub fn morphism(&self) -> &Morphism<TensorSignature> {
        &self.mu
    }

    pub fn image(&self, i: usize) -> &TensorElement {
        self.mu.image(i)
    }

    pub fn mu(&self, x: &Element) -> TensorElement {
        self.mu.apply(x)
    }

    pub fn mu_mono(&self, m: &Monomial) -> TensorElement {
        self.mu.apply_mono(m)
    }

    /// Per-check verdicts: algebra map plus the three axioms.
    pub fn verification(&self) -> Vec<Verdict> {
        let mut out = vec![Verdict::from_check(
            "μ algebra map",
            self.mu.first_violation().map(|(r, w)| format!("{r}: {w}")),
        )];
        let fails = self.generator_failures();
        for ax in [AX_COASSOC, AX_LEFT, AX_RIGHT] {
            let w = fails.iter().find(|(a, _)| *a == ax).map(|(_, w)| w.clone());
            out.push(Verdict::from_check(ax, w));
        }
        out
    }

    pub fn is_verified(&self) -> bool {
        self.verification().iter().all(|v| v.pass)
    }

    fn first_axiom_failure(&self) -> Option<(String, String)> {
        self.generator_failures().into_iter().next().map(|(a, w)| (a.to_string(), w))
    }

    /// Axiom failures at generators and inverses of invertible generators.
    fn generator_failures(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        for i in 0..self.alg.ngens() {
            let mut probes = vec![Monomial::gen(i, 1)];
            if self.alg.is_invertible(i) {
                probes.push(Monomial::gen(i, -1));
            }
            for m in probes {
                for (ax, w) in self.axiom_failures_at(&Element::basis(m)) {
                    if !out.iter().any(|(a, _)| *a == ax) {
                        out.push((ax, w));
                    }
                }
            }
        }
        out
    }

    /// Axioms evaluated at an arbitrary element, each failure with a witness.
    pub fn axiom_failures_at(&self, x: &Element) -> Vec<(&'static str, String)> {
        let ring = self.alg.ring().clone();
        let label = self.alg.display(x).to_string();
        let mut out = Vec::new();
        let t = self.mu(x);
        let mu_at = |m: &Monomial| self.mu_mono(m);
        let left = t.apply_at_slot(0, &self.sig, &mu_at).expect("slot 0");
        let right = t.apply_at_slot(2, &self.sig, &mu_at).expect("slot 2");
        if left != right {
            out.push((
                AX_COASSOC,
                format!("at {label}: {} != {}", left.display(&ring), right.display(&ring)),
            ));
        }
        let l = t.contract_adjacent(0).expect("contract 0");
        let expect_l = l.signature().pure(&[self.alg.one(), x.clone()]).expect("pure");
        if l != expect_l {
            out.push((AX_LEFT, format!("at {label}: {} != {}", l.display(&ring), expect_l.display(&ring))));
        }
        let r = t.contract_adjacent(1).expect("contract 1");
        let expect_r = r.signature().pure(&[x.clone(), self.alg.one()]).expect("pure");
        if r != expect_r {
            out.push((AX_RIGHT, format!("at {label}: {} != {}", r.display(&ring), expect_r.display(&ring))));
        }
        out
    }

    fn inverse_of(&self, g: &Element) -> Result<Element> {
        self.alg.unit_inverse(g).ok_or_else(|| Error::NotUnit(self.alg.display(g).to_string()))
    }

    /// `g ⊗ g⁻¹ ⊗ g` for a unit `g`.
    pub fn group_like_display(&self, g: &Element) -> Result<TensorElement> {
        let gi = self.inverse_of(g)?;
        self.sig.pure(&[g.clone(), gi, g.clone()])
    }

    pub fn check_group_like(&self, g: &Element) -> Result<Option<GroupLikeCert>> {
        self.alg.check(g)?;
        let expected = self.group_like_display(g)?;
        if self.mu(g) == expected {
            Ok(Some(GroupLikeCert { element: g.clone(), inverse: self.inverse_of(g)? }))
        } else {
            Ok(None)
        }
    }

    pub fn is_group_like(&self, g: &Element) -> bool {
        matches!(self.check_group_like(g), Ok(Some(_)))
    }

    /// Finds `α(x)` with `x g = α(x) g x` for each witness.
    pub fn check_quasi_central(&self, g: &Element, witnesses: &[Element]) -> Result<Option<QuasiCentralCert>> {
        if !self.is_group_like(g) {
            return Err(Error::invalid(format!("{} is not group-like", self.alg.display(g))));
        }
        let mut values = Vec::new();
        for x in witnesses {
            if !self.is_group_like(x) {
                return Err(Error::invalid(format!("witness {} is not group-like", self.alg.display(x))));
            }
            let xg = self.alg.mul(x, g);
            let gx = self.alg.mul(g, x);
            match (xg.as_term(), gx.as_term()) {
                (Some((m1, c1)), Some((m2, c2))) if m1 == m2 => values.push((x.clone(), c1 / c2)),
                _ => return Ok(None),
            }
        }
        Ok(Some(QuasiCentralCert { element: g.clone(), values }))
    }

    /// `x ⊗ h⁻¹ ⊗ h − g ⊗ g⁻¹xh⁻¹ ⊗ h + g ⊗ g⁻¹ ⊗ x`.
    pub fn skew_primitive_display(&self, x: &Element, g: &Element, h: &Element) -> Result<TensorElement> {
        let gi = self.inverse_of(g)?;
        let hi = self.inverse_of(h)?;
        let mid = self.alg.mul_all([&gi, x, &hi]);
        let a = self.sig.pure(&[x.clone(), hi.clone(), h.clone()])?;
        let b = self.sig.pure(&[g.clone(), mid, h.clone()])?;
        let c = self.sig.pure(&[g.clone(), gi, x.clone()])?;
        Ok(a.sub(&b).add(&c))
    }

    /// `μ(x)` minus the skew-primitive display; zero iff `x ∈ P⁰_{g,h}`.
    pub fn skew_primitive_residual(&self, x: &Element, g: &Element, h: &Element) -> Result<TensorElement> {
        for (name, e) in [("g", g), ("h", h)] {
            if !self.is_group_like(e) {
                return Err(Error::invalid(format!("{name} = {} is not group-like", self.alg.display(e))));
            }
        }
        self.alg.check(x)?;
        Ok(self.mu(x).sub(&self.skew_primitive_display(x, g, h)?))
    }

    pub fn check_skew_primitive(&self, x: &Element, g: &Element, h: &Element) -> Result<Option<SkewPrimCert>> {
        let res = self.skew_primitive_residual(x, g, h)?;
        Ok(res.is_zero().then(|| SkewPrimCert { element: x.clone(), g: g.clone(), h: h.clone() }))
    }

    /// The two closure statements for a certified skew-primitive:
    /// `h⁻¹x ∈ P⁰_{h⁻¹g,1}` and `xg⁻¹ ∈ P⁰_{1,hg⁻¹}`.
    pub fn skew_primitive_closure(&self, cert: &SkewPrimCert) -> Result<Vec<Verdict>> {
        let one = self.alg.one();
        let gi = self.inverse_of(&cert.g)?;
        let hi = self.inverse_of(&cert.h)?;
        let x = &cert.element;
        let show = |e: &Element| self.alg.display(e).to_string();
        let left = self.alg.mul(&hi, x);
        let lg = self.alg.mul(&hi, &cert.g);
        let right = self.alg.mul(x, &gi);
        let rh = self.alg.mul(&cert.h, &gi);
        let v1 = self.check_skew_primitive(&left, &lg, &one)?;
        let v2 = self.check_skew_primitive(&right, &one, &rh)?;
        Ok(vec![
            Verdict::from_check(
                format!("h⁻¹x ∈ P⁰_(h⁻¹g,1) for x = {}", show(x)),
                v1.is_none().then(|| format!("{} fails", show(&left))),
            ),
            Verdict::from_check(
                format!("xg⁻¹ ∈ P⁰_(1,hg⁻¹) for x = {}", show(x)),
                v2.is_none().then(|| format!("{} fails", show(&right))),
            ),
        ])
    }

    /// Group-like monomials in the invertible generators with every exponent
    /// in `[-bound, bound]`, coefficient one.
    pub fn scan_group_likes(&self, bound: u32) -> Vec<Element> {
        let inv: Vec<usize> = (0..self.alg.ngens()).filter(|&i| self.alg.is_invertible(i)).collect();
        let b = bound as i32;
        let mut out = Vec::new();
        let mut exps = vec![-b; inv.len()];
        loop {
            let mut v = vec![0; self.alg.ngens()];
            for (k, &i) in inv.iter().enumerate() {
                v[i] = exps[k];
            }
            let g = Element::basis(Monomial::from_exps(v));
            if self.is_group_like(&g) {
                out.push(g);
            }
            let mut k = 0;
            loop {
                if k == exps.len() {
                    return out;
                }
                if exps[k] < b {
                    exps[k] += 1;
                    break;
                }
                exps[k] = -b;
                k += 1;
            }
        }
    }

    /// Invertible generators that are group-like.
    pub fn group_like_generators(&self) -> Vec<Element> {
        (0..self.alg.ngens())
            .filter(|&i| self.alg.is_invertible(i))
            .map(|i| self.alg.gen(i))
            .filter(|g| self.is_group_like(g))
            .collect()
    }
}

/// First generator `r` of `alg` with `c r != σ(r) c`.
pub fn sigma_central_failure(alg: &TowerAlgebra, c: &Element, sigma: &Morphism<TowerAlgebra>) -> Option<String> {
    alg.first_sigma_central_failure(c, sigma).map(|i| {
        let r = alg.gen(i);
        format!(
            "c*{0} = {1} but σ({0})*c = {2}",
            alg.gen_name(i),
            alg.display(&alg.mul(c, &r)),
            alg.display(&alg.mul(sigma.image(i), c))
        )
    })
}

pub fn check_sigma_central(alg: &TowerAlgebra, c: &Element, sigma: &Morphism<TowerAlgebra>) -> bool {
    sigma_central_failure(alg, c, sigma).is_none()
}

/// Helpers for writing μ images by hand.
pub fn triple(alg: &TowerAlgebra, a: &Element, b: &Element, c: &Element) -> TensorElement {
    TensorSignature::torsor(alg).pure(&[a.clone(), b.clone(), c.clone()]).expect("elements of the algebra")
}

/// `μ(x) = x ⊗ 1 ⊗ 1 − g ⊗ g⁻¹x ⊗ 1 + g ⊗ g⁻¹ ⊗ x` for a unit `g`.
pub fn primitive_like(alg: &TowerAlgebra, x: &Element, g: &Element) -> Result<TensorElement> {
    let gi = alg.unit_inverse(g).ok_or_else(|| Error::NotUnit(alg.display(g).to_string()))?;
    let one = alg.one();
    let a = triple(alg, x, &one, &one);
    let b = triple(alg, g, &alg.mul(&gi, x), &one);
    let c = triple(alg, g, &gi, x);
    Ok(a.sub(&b).add(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::Automorphism;
    use crate::scalar::ParamRing;

    fn weyl() -> (TowerAlgebra, HopfGaloisStructure) {
        let k = TowerAlgebra::base_field(ParamRing::new());
        let a = k.weyl("A1", "U", "V").unwrap();
        let one = a.one();
        let images = (0..2).map(|i| primitive_like(&a, &a.gen(i), &one).unwrap()).collect();
        let s = HopfGaloisStructure::define(&a, images).unwrap();
        (a, s)
    }

    fn torus() -> (TowerAlgebra, HopfGaloisStructure) {
        let ring = ParamRing::with_params(&["q"]).unwrap();
        let q = ring.param("q").unwrap();
        let k = TowerAlgebra::base_field(ring);
        let r1 = k.laurent("R1", "T1").unwrap();
        let tau = Automorphism::scaling(&r1, &[q.inv().unwrap()]).unwrap();
        let r = r1.skew_adjoin("Tq", "T2", true, tau).unwrap();
        let images = (0..2)
            .map(|i| {
                let g = r.gen(i);
                triple(&r, &g, &r.unit_inverse(&g).unwrap(), &g)
            })
            .collect();
        let s = HopfGaloisStructure::define(&r, images).unwrap();
        (r, s)
    }

    #[test]
    fn weyl_mu_satisfies_axioms() {
        let (a, s) = weyl();
        assert!(s.is_verified());
        let x = a.mul(&a.gen(0), &a.gen(1));
        assert!(s.axiom_failures_at(&x).is_empty());
    }

    #[test]
    fn truncated_mu_fails_left_contraction() {
        let (a, _) = weyl();
        let one = a.one();
        let images = vec![triple(&a, &a.gen(0), &one, &one), primitive_like(&a, &a.gen(1), &one).unwrap()];
        let err = HopfGaloisStructure::define(&a, images).unwrap_err();
        match err {
            Error::Axiom { axiom, .. } => assert_eq!(axiom, AX_LEFT),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scaled_group_like() {
        let (r, s) = torus();
        let g = r.gen(0).scale(&Scalar::from_int(5));
        assert!(s.check_group_like(&g).unwrap().is_some());
        assert!(s.check_group_like(&r.gen(0).add(&r.one())).is_err());
        assert_eq!(s.scan_group_likes(1).len(), 9);
    }

    #[test]
    fn torus_quasi_central_character() {
        let (r, s) = torus();
        let (t1, t2) = (r.gen(0), r.gen(1));
        let cert = s.check_quasi_central(&t1, &[t1.clone(), t2.clone()]).unwrap().unwrap();
        let q = r.ring().param("q").unwrap();
        assert_eq!(cert.value(&t1), Some(&Scalar::one()));
        assert_eq!(cert.value(&t2), Some(&q.inv().unwrap()));
    }

    #[test]
    fn weyl_generators_are_primitive() {
        let (a, s) = weyl();
        let one = a.one();
        let cert = s.check_skew_primitive(&a.gen(0), &one, &one).unwrap().unwrap();
        assert!(s.skew_primitive_closure(&cert).unwrap().iter().all(|v| v.pass));
        assert!(s.check_skew_primitive(&a.mul(&a.gen(0), &a.gen(0)), &one, &one).unwrap().is_none());
    }

    #[test]
    fn group_likes_are_skew_primitive() {
        let (r, s) = torus();
        let (g, h) = (r.gen(0), r.gen(1));
        assert!(s.check_skew_primitive(&h, &g, &h).unwrap().is_some());
        assert!(s.check_skew_primitive(&g, &g, &h).unwrap().is_some());
    }

    #[test]
    fn sigma_centrality_of_t1() {
        let (r, _) = torus();
        let id = Morphism::identity(&r);
        assert!(!check_sigma_central(&r, &r.gen(0), &id));
        assert!(check_sigma_central(&r, &r.one(), &id));
    }
}
