//! Sextuples `(τ, ω, g, h, c, ξ)` over a Hopf-Galois algebra: the condition
//! checker, the extended structure on `A(R, X, Y, τ, ω, c, ξ)`, and
//! single-datum mutations for probing the converse direction.

use crate::algebra::{Element, Monomial, TowerAlgebra};
use crate::error::{Error, Result};
use crate::hopfgalois::{primitive_like, HopfGaloisStructure};
use crate::morphism::{first_noncommuting, Automorphism};
use crate::report::{Condition, Verdict};
use crate::scalar::Scalar;
use crate::tensor::TensorElement;

#[derive(Clone, Debug)]
pub struct Sextuple {
    pub mu: HopfGaloisStructure,
    pub tau: Automorphism,
    pub omega: Automorphism,
    pub g: Element,
    pub h: Element,
    pub c: Element,
    pub xi: Scalar,
}

impl Sextuple {
    pub fn algebra(&self) -> &TowerAlgebra {
        self.mu.algebra()
    }

    pub fn sigma(&self) -> Automorphism {
        self.tau.compose(&self.omega)
    }
}

/// Values of the four group characters of the claim at one group-like.
#[derive(Clone, Debug)]
pub struct ClaimValues {
    pub x: Element,
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    pub gamma: Option<Scalar>,
    pub delta: Option<Scalar>,
}

#[derive(Clone, Debug)]
pub struct Thm41Outcome {
    pub conditions: Vec<Condition>,
    pub lambda: Option<Scalar>,
    pub claim: Vec<ClaimValues>,
    pub witnesses: Vec<Element>,
}

impl Thm41Outcome {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(Condition::holds)
    }

    pub fn verdicts(&self) -> Vec<Verdict> {
        self.conditions.iter().map(Condition::verdict).collect()
    }
}

pub const C_COMMUTE: &str = "τω = ωτ";
pub const C_ID1: &str = "μ(τ(r)) = τ(r(1))⊗r(2)⊗r(3) = τ(r(1))⊗τ(r(2))⊗τ(r(3))";
pub const C_ID1W: &str = "μ(ω(r)) = ω(r(1))⊗r(2)⊗r(3) = ω(r(1))⊗ω(r(2))⊗ω(r(3))";
pub const C_GROUP: &str = "g, h quasi-central group-like";
pub const C_ID2: &str = "g·r(1)⊗g·r(2)⊗r(3) = τ(r(1))⊗τ(r(2))⊗r(3)";
pub const C_ID3: &str = "h·r(1)⊗h·r(2)⊗r(3) = ω(r(1))⊗ω(r(2))⊗r(3)";
pub const C_XI: &str = "τ(h) = ξh, ω(g) = ξ⁻¹g";
pub const C_SIGMA: &str = "c ∈ Z_σ(R)";
pub const C_PRIM: &str = "c ∈ P_(gh,1)(R)";
pub const C_LAMBDA: &str = "gh = λhg";
pub const C_CLAIM: &str = "claim characters α, β, γ, δ";
pub const C_CHI_XI: &str = "α(h) = ξ, β(g) = ξ⁻¹";

fn tensor_residual(cond: &mut Condition, diff: &TensorElement, ring: &crate::scalar::ParamRing, at: &str) {
    let coeffs: Vec<Scalar> = diff.iter().map(|(_, c)| c.clone()).collect();
    cond.push_all(&coeffs, || format!("at {at}: difference {}", diff.display(ring)));
}

fn element_residual(cond: &mut Condition, alg: &TowerAlgebra, diff: &Element, at: &str) {
    let coeffs: Vec<Scalar> = diff.iter().map(|(_, c)| c.clone()).collect();
    cond.push_all(&coeffs, || format!("at {at}: difference {}", alg.display(diff)));
}

/// `t` with `f` applied to each listed slot.
fn map_slots(t: &TensorElement, slots: &[usize], f: &dyn Fn(&Monomial) -> Element) -> TensorElement {
    let mut out = t.clone();
    for &i in slots {
        out = out.map_slot(i, f).expect("slot in range");
    }
    out
}

/// Ratio `a / b` when `a` is a scalar multiple of the single-term `b`.
fn ratio(a: &Element, b: &Element) -> Option<Scalar> {
    let (mb, cb) = b.as_term()?;
    if a.is_zero() {
        return Some(Scalar::zero());
    }
    let (ma, ca) = a.as_term()?;
    (ma == mb).then(|| ca / cb)
}

/// Evaluates conditions (1)-(4), the claim characters and λ.
pub fn check_thm41(s: &Sextuple) -> Thm41Outcome {
    let mu = &s.mu;
    let alg = mu.algebra();
    let ring = alg.ring();
    let show = |e: &Element| alg.display(e).to_string();
    let mut conds = Vec::new();

    let mut comm = Condition::new(C_COMMUTE);
    for i in 0..alg.ngens() {
        let d = s.tau.apply(s.omega.image(i)).sub(&s.omega.apply(s.tau.image(i)));
        element_residual(&mut comm, alg, &d, alg.gen_name(i));
    }
    if s.tau.algebra() != alg || s.omega.algebra() != alg {
        comm.fail_hard("τ or ω acts on a different algebra");
    }
    conds.push(comm);

    for (name, map) in [(C_ID1, &s.tau), (C_ID1W, &s.omega)] {
        let mut cond = Condition::new(name);
        let f = |m: &Monomial| map.forward().apply_mono(m);
        for i in 0..alg.ngens() {
            let r = alg.gen(i);
            let lhs = mu.mu(&map.apply(&r));
            let m = mu.mu(&r);
            let mid = map_slots(&m, &[0], &f);
            let all = map_slots(&m, &[0, 1, 2], &f);
            let at = alg.gen_name(i);
            tensor_residual(&mut cond, &lhs.sub(&mid), ring, at);
            tensor_residual(&mut cond, &mid.sub(&all), ring, at);
        }
        conds.push(cond);
    }

    let mut group = Condition::new(C_GROUP);
    let units_ok = alg.is_unit(&s.g) && alg.is_unit(&s.h);
    let mut witnesses = mu.group_like_generators();
    if units_ok {
        for (name, e) in [("g", &s.g), ("h", &s.h)] {
            if !mu.is_group_like(e) {
                group.fail_hard(format!("{name} = {} is not group-like", show(e)));
            } else if !witnesses.contains(e) {
                witnesses.push(e.clone());
            }
        }
        if group.hard_failure.is_none() {
            for (name, e) in [("g", &s.g), ("h", &s.h)] {
                match mu.check_quasi_central(e, &witnesses) {
                    Ok(Some(_)) => {}
                    Ok(None) => group.fail_hard(format!("{name} = {} is not quasi-central", show(e))),
                    Err(err) => group.fail_hard(err.to_string()),
                }
            }
        }
    } else {
        group.fail_hard("g and h must be units");
    }
    let group_ok = group.holds();
    let wnames: Vec<String> = witnesses.iter().map(&show).collect();
    group.witness = Some(format!("witnesses {{{}}}", wnames.join(", ")));
    conds.push(group);

    for (name, u, map) in [(C_ID2, &s.g, &s.tau), (C_ID3, &s.h, &s.omega)] {
        let mut cond = Condition::new(name);
        if let Some(ui) = alg.unit_inverse(u) {
            let conj = |m: &Monomial| alg.mul_all([u, &Element::basis(m.clone()), &ui]);
            let f = |m: &Monomial| map.forward().apply_mono(m);
            for i in 0..alg.ngens() {
                let m = mu.mu(&alg.gen(i));
                let lhs = map_slots(&m, &[0, 1], &conj);
                let rhs = map_slots(&m, &[0, 1], &f);
                tensor_residual(&mut cond, &lhs.sub(&rhs), ring, alg.gen_name(i));
            }
        } else {
            cond.fail_hard(format!("{} is not a unit", show(u)));
        }
        conds.push(cond);
    }

    let mut xi_cond = Condition::new(C_XI);
    let xi_inv = s.xi.inv().ok();
    match &xi_inv {
        None => xi_cond.fail_hard("ξ = 0"),
        Some(xi_inv) => {
            element_residual(&mut xi_cond, alg, &s.tau.apply(&s.h).sub(&s.h.scale(&s.xi)), "h");
            element_residual(&mut xi_cond, alg, &s.omega.apply(&s.g).sub(&s.g.scale(xi_inv)), "g");
        }
    }
    conds.push(xi_cond);

    let sigma = s.sigma();
    let mut sc = Condition::new(C_SIGMA);
    for i in 0..alg.ngens() {
        let r = alg.gen(i);
        let d = alg.mul(&s.c, &r).sub(&alg.mul(sigma.image(i), &s.c));
        element_residual(&mut sc, alg, &d, alg.gen_name(i));
    }
    conds.push(sc);

    let gh = alg.mul(&s.g, &s.h);
    let hg = alg.mul(&s.h, &s.g);
    let mut prim = Condition::new(C_PRIM);
    if group_ok {
        match mu.skew_primitive_residual(&s.c, &gh, &alg.one()) {
            Ok(res) => tensor_residual(&mut prim, &res, ring, "c"),
            Err(e) => prim.fail_hard(e.to_string()),
        }
    } else {
        prim.fail_hard("gh is not group-like");
    }
    conds.push(prim);

    let mut lam = Condition::new(C_LAMBDA);
    let lambda = ratio(&gh, &hg).filter(|l| !l.is_zero());
    match &lambda {
        Some(l) => lam.witness = Some(format!("λ = {}", l.display(ring))),
        None => lam.fail_hard(format!("gh = {} is not a scalar multiple of hg = {}", show(&gh), show(&hg))),
    }

    let mut claim = Condition::new(C_CLAIM);
    let mut values = Vec::new();
    let gi = alg.unit_inverse(&s.g);
    let hi = alg.unit_inverse(&s.h);
    if let (Some(gi), Some(hi)) = (&gi, &hi) {
        for x in &witnesses {
            let tx = s.tau.apply(x);
            let ox = s.omega.apply(x);
            let gx = alg.mul_all([&s.g, x, gi]);
            let hx = alg.mul_all([&s.h, x, hi]);
            let v = ClaimValues {
                x: x.clone(),
                alpha: ratio(&tx, x),
                beta: ratio(&ox, x),
                gamma: ratio(&tx, &gx),
                delta: ratio(&ox, &hx),
            };
            if v.alpha.is_none() || v.beta.is_none() || v.gamma.is_none() || v.delta.is_none() {
                claim.fail_hard(format!("τ or ω does not act by a character at {}", show(x)));
            }
            values.push(v);
        }
        let at = |x: &Element| values.iter().find(|v| &v.x == x);
        if let (Some(vh), Some(vg)) = (at(&s.h), at(&s.g)) {
            if let (Some(ah), Some(bg), Some(ch), Some(dg)) = (&vh.alpha, &vg.beta, &vh.gamma, &vg.delta) {
                claim.push(&(ah * bg) - &(ch * dg), || "α(h)β(g) != γ(h)δ(g)".into());
                if let (Some(l), Ok(chi)) = (&lambda, ch.inv()) {
                    let expected = ah * &chi;
                    let r = l - &expected;
                    lam.push(r, || format!("λ != α(h)γ(h)⁻¹ = {}", expected.display(ring)));
                }
                let mut chi_xi = Condition::new(C_CHI_XI);
                chi_xi.push(ah - &s.xi, || format!("α(h) = {}", ah.display(ring)));
                if let Some(xi_inv) = &xi_inv {
                    chi_xi.push(bg - xi_inv, || format!("β(g) = {}", bg.display(ring)));
                }
                conds.push(chi_xi);
            }
        }
    } else {
        claim.fail_hard("g or h is not a unit");
    }
    conds.push(lam);
    conds.push(claim);
    Thm41Outcome { conditions: conds, lambda, claim: values, witnesses }
}

/// Builds `A` and the extended μ without checking the conditions first.
/// The returned structure is not verified.
pub fn extend_unchecked(s: &Sextuple, name: &str, x: &str, y: &str) -> Result<(TowerAlgebra, HopfGaloisStructure)> {
    let r = s.algebra();
    let a = r.ambiskew_adjoin(name, x, y, s.tau.clone(), s.omega.clone(), s.c.clone(), s.xi.clone())?;
    let sig = crate::tensor::TensorSignature::torsor(&a);
    let n = r.ngens();
    let mut images: Vec<TensorElement> = (0..n).map(|i| s.mu.image(i).retag(&sig)).collect::<Result<_>>()?;
    images.push(primitive_like(&a, &a.gen(n), &s.g)?);
    images.push(primitive_like(&a, &a.gen(n + 1), &s.h)?);
    let mu = HopfGaloisStructure::unverified(&a, images)?;
    Ok((a, mu))
}

/// Builds the extension after the conditions pass and re-verifies every
/// axiom on all generators of `A`.
pub fn extend_hopf_galois(s: &Sextuple, name: &str, x: &str, y: &str) -> Result<(TowerAlgebra, HopfGaloisStructure)> {
    let out = check_thm41(s);
    if let Some(bad) = out.conditions.iter().find(|c| !c.holds()) {
        return Err(Error::invalid(format!("sextuple conditions fail: {}", bad.verdict())));
    }
    let (a, mu) = extend_unchecked(s, name, x, y)?;
    if let Some(bad) = mu.verification().into_iter().find(|v| !v.pass) {
        return Err(Error::Reverify(bad.to_string()));
    }
    Ok((a, mu))
}

/// Result of running both directions on one sextuple.
#[derive(Clone, Debug)]
pub struct Probe {
    pub label: String,
    pub conditions_pass: bool,
    pub extension_pass: bool,
    pub failed: Vec<String>,
}

impl Probe {
    pub fn consistent(&self) -> bool {
        self.conditions_pass == self.extension_pass
    }
}

pub fn probe(label: &str, s: &Sextuple) -> Probe {
    let out = check_thm41(s);
    let failed: Vec<String> = out.conditions.iter().filter(|c| !c.holds()).map(|c| c.name.clone()).collect();
    let extension_pass = match extend_unchecked(s, "A", "X", "Y") {
        Ok((_, mu)) => mu.is_verified(),
        Err(_) => false,
    };
    Probe { label: label.to_string(), conditions_pass: failed.is_empty(), extension_pass, failed }
}

fn twist(alg: &TowerAlgebra) -> Option<Automorphism> {
    let n = alg.ngens();
    if n == 0 {
        return None;
    }
    let two = Scalar::from_int(2);
    let half = Scalar::from_ratio(1, 2);
    let mut a = vec![Scalar::one(); n];
    a[0] = two.clone();
    let mut b = a.clone();
    if n > 1 {
        b[1] = half;
    }
    [a, b].into_iter().find_map(|f| Automorphism::scaling(alg, &f).ok())
}

/// Single-datum mutations of a sextuple. Mutations that cannot even be
/// formed (e.g. a twisted τ that does not commute with ω) are still
/// returned; `probe` reports them as failing.
pub fn mutations(s: &Sextuple) -> Vec<(String, Sextuple)> {
    let alg = s.algebra().clone();
    let mut out = Vec::new();
    let with_xi = |label: &str, xi: Scalar| (label.to_string(), Sextuple { xi, ..s.clone() });
    out.push(with_xi("ξ → 2ξ", &s.xi * &Scalar::from_int(2)));
    out.push(with_xi("ξ → -ξ", -&s.xi));
    out.push(with_xi("ξ → ξ + 1", &s.xi + &Scalar::one()));
    out.push(with_xi("ξ → 3ξ", &s.xi * &Scalar::from_int(3)));
    out.push(with_xi("ξ → ξ/2", &s.xi * &Scalar::from_ratio(1, 2)));
    if let Some(t) = twist(&alg) {
        out.push(("τ → τ∘t".into(), Sextuple { tau: s.tau.compose(&t), ..s.clone() }));
        out.push(("ω → ω∘t".into(), Sextuple { omega: s.omega.compose(&t), ..s.clone() }));
    }
    if alg.ngens() > 0 {
        let r0 = alg.gen(0);
        let shift = r0.add(&alg.mul(&r0, &r0));
        out.push((
            format!("c → c + {}", alg.display(&shift)),
            Sextuple { c: s.c.add(&shift), ..s.clone() },
        ));
    }
    if let Some(u) = (0..alg.ngens()).find(|&i| alg.is_invertible(i)).map(|i| alg.gen(i)) {
        let label = alg.display(&u).to_string();
        out.push((format!("g → g*{label}"), Sextuple { g: alg.mul(&s.g, &u), ..s.clone() }));
        out.push((format!("h → h*{label}"), Sextuple { h: alg.mul(&s.h, &u), ..s.clone() }));
    }
    out
}

/// Quick structural precheck mirroring the algebra constructor.
pub fn constructible(s: &Sextuple) -> bool {
    first_noncommuting(s.tau.forward(), s.omega.forward()).is_none()
        && s.algebra().first_sigma_central_failure(&s.c, s.sigma().forward()).is_none()
        && !s.xi.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfgalois::triple;
    use crate::scalar::ParamRing;

    fn torus(params: &[&str]) -> (TowerAlgebra, HopfGaloisStructure) {
        let ring = ParamRing::with_params(params).unwrap();
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
        (r.clone(), HopfGaloisStructure::define(&r, images).unwrap())
    }

    fn case1(c_first: bool) -> Sextuple {
        let (r, mu) = torus(&["q", "ξ"]);
        let xi = r.ring().param("ξ").unwrap();
        let tau = Automorphism::scaling(&r, &[xi.clone(), xi.clone()]).unwrap();
        let omega = tau.inverted();
        let c = if c_first { r.gen(0) } else { r.one() };
        Sextuple { mu, tau, omega, g: r.gen(0), h: r.gen(1), c, xi }
    }

    #[test]
    fn torus_case_one_passes() {
        let s = case1(false);
        let out = check_thm41(&s);
        assert!(out.passed(), "{:?}", out.verdicts().into_iter().filter(|v| !v.pass).collect::<Vec<_>>());
        let q = s.algebra().ring().param("q").unwrap();
        assert_eq!(out.lambda, Some(q));
        let (_, mu) = extend_hopf_galois(&s, "A", "X", "Y").unwrap();
        assert!(mu.is_verified());
    }

    #[test]
    fn non_primitive_c_fails_condition_four() {
        let s = case1(true);
        let out = check_thm41(&s);
        let failed: Vec<&str> = out.conditions.iter().filter(|c| !c.holds()).map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&C_SIGMA));
        assert!(failed.contains(&C_PRIM));
    }

    #[test]
    fn mutations_flip_and_agree() {
        let s = case1(false);
        let ms = mutations(&s);
        assert!(ms.len() >= 5);
        for (label, m) in ms {
            let p = probe(&label, &m);
            assert!(!p.conditions_pass, "{label} did not flip");
            assert!(p.consistent(), "{label}: {p:?}");
        }
    }

    #[test]
    fn torus_case_two_passes() {
        let (r, mu) = torus(&["q", "ξ", "γ"]);
        let p = |n: &str| r.ring().param(n).unwrap();
        let (q, xi, gamma) = (p("q"), p("ξ"), p("γ"));
        let qi = q.inv().unwrap();
        let xii = xi.inv().unwrap();
        let tau = Automorphism::scaling(&r, &[&qi * &xi, xi.clone()]).unwrap();
        let omega = Automorphism::scaling(&r, &[xii.clone(), &q * &xii]).unwrap();
        let c = r.mul(&r.gen(0), &r.gen(1)).scale(&gamma);
        let s = Sextuple { mu, tau, omega, g: r.gen(0), h: r.gen(1), c, xi };
        let out = check_thm41(&s);
        assert!(out.passed(), "{:?}", out.verdicts().into_iter().filter(|v| !v.pass).collect::<Vec<_>>());
        assert!(extend_hopf_galois(&s, "A", "X", "Y").is_ok());
    }

    #[test]
    fn baby_weyl_recovers_weyl_torsor() {
        let k = TowerAlgebra::base_field(ParamRing::new());
        let mu = HopfGaloisStructure::define(&k, vec![]).unwrap();
        let id = Automorphism::identity(&k);
        let s = Sextuple { mu, tau: id.clone(), omega: id, g: k.one(), h: k.one(), c: k.one(), xi: Scalar::one() };
        let (a, mu_a) = extend_hopf_galois(&s, "A1", "X", "Y").unwrap();
        let one = a.one();
        for i in 0..2 {
            let x = a.gen(i);
            let expected = triple(&a, &x, &one, &one)
                .sub(&triple(&a, &one, &x, &one))
                .add(&triple(&a, &one, &one, &x));
            assert_eq!(mu_a.image(i), &expected);
        }
        let yx = a.mul(&a.gen(1), &a.gen(0));
        assert_eq!(yx, a.mul(&a.gen(0), &a.gen(1)).sub(&one));
    }
}
