//! Bounded search for admissible sextuples over a fixed Hopf-Galois algebra.
//!
//! τ and ω range over the automorphism shapes `r ↦ a·r` (invertible
//! generators) and `r ↦ r + b` (the others), with `a`, `b` fresh unknowns.
//! `c` is a generic combination of small monomials and `ξ` is a nonzero
//! unknown. The residuals of every condition become polynomial constraints,
//! which are eliminated where they are linear with a nonvanishing
//! coefficient and split where they factor through an unknown. Whatever is
//! left over is reported with the family.

use std::collections::BTreeSet;

use crate::algebra::{Element, TowerAlgebra};
use crate::ambiskew::{check_thm41, Sextuple};
use crate::error::Result;
use crate::hopfgalois::HopfGaloisStructure;
use crate::morphism::Automorphism;
use crate::scalar::{PMono, Poly};
use crate::scalar::{ParamRing, Scalar};

#[derive(Clone, Copy, Debug)]
pub struct ScanBounds {
    /// Exponent bound for g and h.
    pub group_exp: u32,
    /// Total degree bound for the monomials of c.
    pub c_degree: u32,
}

impl Default for ScanBounds {
    fn default() -> Self {
        ScanBounds { group_exp: 1, c_degree: 2 }
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    pub class: &'static str,
    pub ring: ParamRing,
    pub sextuple: Sextuple,
    /// Constraints the solver could not eliminate; each must vanish.
    pub constraints: Vec<Scalar>,
}

impl Family {
    pub fn describe(&self) -> String {
        let s = &self.sextuple;
        let alg = s.algebra();
        let r = &self.ring;
        let imgs = |a: &Automorphism| {
            (0..alg.ngens())
                .map(|i| format!("{} ↦ {}", alg.gen_name(i), alg.display_in(a.image(i), r)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = format!(
            "[{}] g = {}, h = {}, ξ = {}, c = {}",
            self.class,
            alg.display(&s.g),
            alg.display(&s.h),
            s.xi.display(r),
            alg.display_in(&s.c, r)
        );
        if alg.ngens() > 0 {
            out.push_str(&format!("; τ: {}; ω: {}", imgs(&s.tau), imgs(&s.omega)));
        }
        if !self.constraints.is_empty() {
            let cs: Vec<String> = self.constraints.iter().map(|c| format!("{} = 0", c.display(r))).collect();
            out.push_str(&format!("; subject to {}", cs.join(", ")));
        }
        out
    }
}

/// Elimination priority of each unknown; lower is eliminated first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    C,
    Xi,
    Omega,
    Tau,
}

struct Space {
    ring: ParamRing,
    unknowns: Vec<(usize, Kind)>,
    c_vars: Vec<usize>,
}

impl Space {
    fn is_unknown(&self, v: usize) -> bool {
        self.unknowns.iter().any(|&(u, _)| u == v)
    }

    /// Declared parameters are generic; unknowns only when flagged.
    fn nonzero(&self, v: usize) -> bool {
        !self.is_unknown(v) || self.ring.is_nonzero(v)
    }

    fn guaranteed_nonzero(&self, p: &Poly) -> bool {
        p.as_monomial().is_some_and(|(m, _)| m.exps().iter().enumerate().all(|(i, &e)| e == 0 || self.nonzero(i)))
    }
}

type Subs = Vec<(usize, Scalar)>;

fn subst_all(s: &Scalar, subs: &Subs) -> Scalar {
    subs.iter().fold(s.clone(), |acc, (v, val)| acc.substitute(*v, val).expect("generic substitution"))
}

fn subst_element(e: &Element, subs: &Subs) -> Element {
    e.map_coeffs(|c| subst_all(c, subs))
}

fn subst_auto(a: &Automorphism, subs: &Subs) -> Result<Automorphism> {
    let alg = a.algebra();
    let fwd = (0..alg.ngens()).map(|i| subst_element(a.image(i), subs)).collect();
    let inv = (0..alg.ngens()).map(|i| subst_element(a.inverse().image(i), subs)).collect();
    Automorphism::from_images(alg, fwd, Some(inv))
}

/// Numerator with nonvanishing monomial factors and rational content removed.
fn normalize(space: &Space, s: &Scalar) -> Option<Poly> {
    let p = s.numer();
    if p.is_zero() {
        return None;
    }
    let content = p.monomial_content();
    let strip: Vec<u16> = content.exps().iter().enumerate().map(|(i, &e)| if space.nonzero(i) { e } else { 0 }).collect();
    let p = p.div_monomial(&PMono::from_exps(strip)).expect("content divides");
    let k = p.content();
    Some(p.scale(&k.recip()))
}

enum Step {
    Solve(usize, Scalar),
    Split(usize, Poly),
    Stuck,
}

fn choose(space: &Space, constraints: &[Poly]) -> Step {
    let mut order: Vec<(usize, Kind)> = space.unknowns.clone();
    order.sort_by_key(|&(v, k)| (k, v));
    for &(v, _) in &order {
        for p in constraints {
            if let Some((a, b)) = p.linear_in(v) {
                if space.guaranteed_nonzero(&a) {
                    let value = Scalar::fraction(b.neg(), a).expect("nonzero coefficient");
                    return Step::Solve(v, value);
                }
            }
        }
    }
    for &(v, _) in &order {
        for p in constraints {
            if p.monomial_content().exp(v) > 0 {
                if p.len() == 1 {
                    return Step::Solve(v, Scalar::zero());
                }
                let rest = p.div_monomial(&PMono::var(v)).expect("variable divides");
                return Step::Split(v, rest);
            }
        }
    }
    Step::Stuck
}

struct Branch {
    subs: Subs,
    remaining: Vec<Scalar>,
}

fn solve(space: &Space, constraints: Vec<Scalar>, subs: Subs, out: &mut Vec<Branch>, depth: usize) {
    let mut polys: Vec<Poly> = Vec::new();
    for c in &constraints {
        if let Some(p) = normalize(space, c) {
            if p.as_constant().is_some() {
                return;
            }
            if !polys.contains(&p) {
                polys.push(p);
            }
        }
    }
    if polys.is_empty() || depth > 64 {
        out.push(Branch { subs, remaining: polys.into_iter().map(Scalar::from_poly).collect() });
        return;
    }
    let apply = |v: usize, value: &Scalar, subs: &Subs, cons: &[Poly]| {
        let mut subs: Subs = subs.iter().map(|(w, x)| (*w, x.substitute(v, value).expect("generic"))).collect();
        subs.push((v, value.clone()));
        let cons: Vec<Scalar> =
            cons.iter().map(|p| Scalar::from_poly(p.clone()).substitute(v, value).expect("generic")).collect();
        (subs, cons)
    };
    match choose(space, &polys) {
        Step::Solve(v, value) => {
            if space.ring.is_nonzero(v) && value.is_zero() {
                return;
            }
            let (s, c) = apply(v, &value, &subs, &polys);
            solve(space, c, s, out, depth + 1);
        }
        Step::Split(v, rest) => {
            if !space.ring.is_nonzero(v) {
                let (s, c) = apply(v, &Scalar::zero(), &subs, &polys);
                solve(space, c, s, out, depth + 1);
            }
            let mut cons: Vec<Scalar> = polys.iter().map(|p| Scalar::from_poly(p.clone())).collect();
            cons.push(Scalar::from_poly(rest));
            let pos = polys.iter().position(|p| p.monomial_content().exp(v) > 0).expect("split source");
            cons.remove(pos);
            solve(space, cons, subs, out, depth + 1);
        }
        Step::Stuck => out.push(Branch { subs, remaining: polys.into_iter().map(Scalar::from_poly).collect() }),
    }
}

fn family_automorphism(alg: &TowerAlgebra, ring: &mut ParamRing, stem: &str, kind: Kind, unknowns: &mut Vec<(usize, Kind)>) -> Result<Automorphism> {
    let mut fwd = Vec::new();
    let mut inv = Vec::new();
    for i in 0..alg.ngens() {
        let r = alg.gen(i);
        if alg.is_invertible(i) {
            let v = ring.fresh(&format!("{stem}{}", alg.gen_name(i)), true);
            unknowns.push((v, kind));
            let a = Scalar::param(v);
            fwd.push(r.scale(&a));
            inv.push(r.scale(&a.inv()?));
        } else {
            let v = ring.fresh(&format!("{stem}{}", alg.gen_name(i)), false);
            unknowns.push((v, kind));
            let b = alg.scalar(Scalar::param(v));
            fwd.push(r.add(&b));
            inv.push(r.sub(&b));
        }
    }
    Automorphism::from_images(alg, fwd, Some(inv))
}

/// Specializes `general` by the substitutions of `special`'s branch and
/// compares the resulting data.
fn specializes(special: &Family, general: &Family, subs: &Subs) -> bool {
    let a = &special.sextuple;
    let b = &general.sextuple;
    if a.g != b.g || a.h != b.h {
        return false;
    }
    let alg = a.algebra();
    let same_auto = |x: &Automorphism, y: &Automorphism| {
        (0..alg.ngens()).all(|i| subst_element(y.image(i), subs) == *x.image(i))
    };
    subst_all(&b.xi, subs) == a.xi
        && subst_element(&b.c, subs) == a.c
        && same_auto(&a.tau, &b.tau)
        && same_auto(&a.omega, &b.omega)
}

/// All families of sextuples within `bounds`, split into the classes
/// `c = 0` and `c ≠ 0`. Specializations of another family in the same
/// class are dropped.
pub fn scan_admissible(mu: &HopfGaloisStructure, bounds: ScanBounds) -> Result<Vec<Family>> {
    let alg = mu.algebra();
    let mut ring = alg.ring().clone();
    let mut unknowns = Vec::new();
    let tau = family_automorphism(alg, &mut ring, "a_", Kind::Tau, &mut unknowns)?;
    let omega = family_automorphism(alg, &mut ring, "b_", Kind::Omega, &mut unknowns)?;
    let xi_var = ring.fresh("ξ", true);
    unknowns.push((xi_var, Kind::Xi));
    let mut c = alg.zero();
    let mut c_vars = Vec::new();
    for m in alg.small_monomials(bounds.c_degree) {
        let v = ring.fresh(&format!("c{}", c_vars.len()), false);
        unknowns.push((v, Kind::C));
        c_vars.push(v);
        c = c.add(&Element::term(m, Scalar::param(v)));
    }
    let space = Space { ring: ring.clone(), unknowns, c_vars };
    let groups = mu.scan_group_likes(bounds.group_exp);

    let mut families: Vec<(Family, Subs)> = Vec::new();
    for g in &groups {
        for h in &groups {
            let generic = Sextuple {
                mu: mu.clone(),
                tau: tau.clone(),
                omega: omega.clone(),
                g: g.clone(),
                h: h.clone(),
                c: c.clone(),
                xi: Scalar::param(xi_var),
            };
            let out = check_thm41(&generic);
            if out.conditions.iter().any(|c| c.hard_failure.is_some()) {
                continue;
            }
            let residuals: Vec<Scalar> = out.conditions.iter().flat_map(|c| c.residuals.iter().cloned()).collect();
            for class in ["c = 0", "c ≠ 0"] {
                let start: Subs =
                    if class == "c = 0" { space.c_vars.iter().map(|&v| (v, Scalar::zero())).collect() } else { Vec::new() };
                let cons: Vec<Scalar> = residuals.iter().map(|r| subst_all(r, &start)).collect();
                let mut branches = Vec::new();
                solve(&space, cons, start, &mut branches, 0);
                for br in branches {
                    let s = Sextuple {
                        tau: subst_auto(&generic.tau, &br.subs)?,
                        omega: subst_auto(&generic.omega, &br.subs)?,
                        c: subst_element(&generic.c, &br.subs),
                        xi: subst_all(&generic.xi, &br.subs),
                        ..generic.clone()
                    };
                    if class == "c ≠ 0" && s.c.is_zero() {
                        continue;
                    }
                    let fam = Family { class, ring: ring.clone(), sextuple: s, constraints: br.remaining };
                    families.push((fam, br.subs));
                }
            }
        }
    }

    let mut keep = vec![true; families.len()];
    for i in 0..families.len() {
        for j in 0..families.len() {
            if i == j || !keep[j] || families[i].0.class != families[j].0.class {
                continue;
            }
            let (fi, si) = &families[i];
            let (fj, _) = &families[j];
            let dup = specializes(fi, fj, si);
            if dup && (!specializes(fj, fi, &families[j].1) || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut out: Vec<Family> = families.into_iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| f.0).collect();
    let mut seen = BTreeSet::new();
    out.retain(|f| seen.insert(f.describe()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::standard::commutative_hopf;

    fn torsor(alg: &TowerAlgebra) -> HopfGaloisStructure {
        commutative_hopf(alg).unwrap().to_hopf_galois().unwrap()
    }

    #[test]
    fn base_field_has_two_families() {
        let k = TowerAlgebra::base_field(ParamRing::new());
        let fams = scan_admissible(&torsor(&k), ScanBounds::default()).unwrap();
        assert_eq!(fams.len(), 2, "{:#?}", fams.iter().map(Family::describe).collect::<Vec<_>>());
        for f in &fams {
            assert!(f.sextuple.xi.is_one());
            assert!(f.constraints.is_empty());
        }
        assert!(fams.iter().any(|f| f.sextuple.c.is_zero()));
        assert!(fams.iter().any(|f| !f.sextuple.c.is_zero()));
    }

    #[test]
    fn polynomial_ring_forces_opposite_shifts() {
        let k = TowerAlgebra::base_field(ParamRing::new());
        let kt = k.polynomial("k[T]", "T").unwrap();
        let fams = scan_admissible(&torsor(&kt), ScanBounds::default()).unwrap();
        assert_eq!(fams.len(), 2, "{:#?}", fams.iter().map(Family::describe).collect::<Vec<_>>());
        let nz = fams.iter().find(|f| f.class == "c ≠ 0").unwrap();
        let s = &nz.sextuple;
        let sum = s.tau.image(0).add(s.omega.image(0)).sub(&kt.gen(0).scale(&Scalar::from_int(2)));
        assert!(sum.is_zero(), "{}", nz.describe());
        assert_eq!(s.c.len(), 2);
    }
}

#[cfg(test)]
mod laurent_tests {
    use super::*;
    use crate::hopf::standard::commutative_hopf;

    #[test]
    fn laurent_classes_at_inverse_generator() {
        let k = TowerAlgebra::base_field(ParamRing::new());
        let kz = k.laurent("kZ", "K").unwrap();
        let mu = commutative_hopf(&kz).unwrap().to_hopf_galois().unwrap();
        let fams = scan_admissible(&mu, ScanBounds { group_exp: 1, c_degree: 2 }).unwrap();
        let kinv = kz.gen_pow(0, -1).unwrap();
        let at: Vec<&Family> = fams.iter().filter(|f| f.sextuple.g == kinv && f.sextuple.h == kinv).collect();
        assert_eq!(at.len(), 2);
        for f in at {
            let s = &f.sextuple;
            assert!(f.constraints.is_empty());
            let alpha = s.tau.image(0).as_term().unwrap().1.clone();
            let beta = s.omega.image(0).as_term().unwrap().1.clone();
            // ξ = α^m = β^(-n) with n = m = -1
            assert_eq!(s.xi, alpha.inv().unwrap());
            assert_eq!(s.xi, beta);
            if f.class == "c ≠ 0" {
                assert_eq!(&alpha * &beta, Scalar::one());
                let mut supp: Vec<i32> = s.c.keys().map(|m| m.exp(0)).collect();
                supp.sort();
                assert_eq!(supp, vec![-2, 0]);
            } else {
                assert!(s.c.is_zero());
            }
        }
    }
}
