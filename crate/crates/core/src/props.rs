//! Seeded randomized property checks over an algebra and its coaction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Monomial, TowerAlgebra};
use crate::hopfgalois::HopfGaloisStructure;
use crate::report::Verdict;
use crate::scalar::Scalar;

pub const DEFAULT_TRIPLES: usize = 200;

#[derive(Clone, Copy, Debug)]
pub struct PropOptions {
    pub seed: u64,
    /// Total degree bound of the random elements.
    pub bound: u32,
    pub triples: usize,
}

impl Default for PropOptions {
    fn default() -> Self {
        PropOptions { seed: 0, bound: 3, triples: DEFAULT_TRIPLES }
    }
}

/// Random elements with up to three terms and small integer coefficients.
pub struct ElementSampler {
    rng: ChaCha8Rng,
    monos: Vec<Monomial>,
    params: Vec<Scalar>,
}

impl ElementSampler {
    pub fn new(alg: &TowerAlgebra, seed: u64, bound: u32) -> Self {
        let params = (0..alg.ring().len()).map(Scalar::param).collect();
        ElementSampler { rng: ChaCha8Rng::seed_from_u64(seed), monos: alg.small_monomials(bound), params }
    }

    fn coeff(&mut self) -> Scalar {
        let n = loop {
            let n: i64 = self.rng.gen_range(-3..=3);
            if n != 0 {
                break n;
            }
        };
        let s = Scalar::from_int(n);
        if !self.params.is_empty() && self.rng.gen_bool(0.25) {
            let p = self.params.choose(&mut self.rng).expect("nonempty").clone();
            &s * &p
        } else {
            s
        }
    }

    pub fn element(&mut self) -> Element {
        let terms = self.rng.gen_range(1..=3);
        let mut e = Element::zero();
        for _ in 0..terms {
            let m = self.monos.choose(&mut self.rng).expect("the unit monomial is always present").clone();
            let c = self.coeff();
            e.add_term(m, c);
        }
        e
    }
}

fn first_failure(name: String, total: usize, mut failures: Vec<String>) -> Verdict {
    let n = failures.len();
    if n == 0 {
        Verdict::pass(name)
    } else {
        Verdict::fail(name, format!("{n}/{total} fail, first: {}", failures.swap_remove(0)))
    }
}

/// Ring axioms of the normal-form product on random inputs, plus the
/// coaction axioms when `mu` is given.
pub fn algebra_properties(alg: &TowerAlgebra, mu: Option<&HopfGaloisStructure>, opts: PropOptions) -> Vec<Verdict> {
    let mut s = ElementSampler::new(alg, opts.seed, opts.bound);
    let show = |e: &Element| alg.display(e).to_string();
    let n = opts.triples;
    let (mut assoc, mut distrib, mut unit) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..n {
        let (a, b, c) = (s.element(), s.element(), s.element());
        let l = alg.mul(&alg.mul(&a, &b), &c);
        let r = alg.mul(&a, &alg.mul(&b, &c));
        if l != r {
            assoc.push(format!("({})({})({})", show(&a), show(&b), show(&c)));
        }
        let l = alg.mul(&a, &b.add(&c));
        let r = alg.mul(&a, &b).add(&alg.mul(&a, &c));
        if l != r {
            distrib.push(format!("{} * ({} + {})", show(&a), show(&b), show(&c)));
        }
        if alg.mul(&alg.one(), &a) != a || alg.mul(&a, &alg.one()) != a {
            unit.push(show(&a));
        }
    }
    let mut out = vec![
        first_failure(format!("(ab)c = a(bc) on {n} random triples"), n, assoc),
        first_failure(format!("a(b + c) = ab + ac on {n} random triples"), n, distrib),
        first_failure("1a = a = a1".into(), n, unit),
    ];
    if let Some(mu) = mu {
        let pairs = (n / 10).max(10);
        let mut mult = Vec::new();
        let mut axioms = Vec::new();
        for _ in 0..pairs {
            let (a, b) = (s.element(), s.element());
            if mu.mu(&alg.mul(&a, &b)) != mu.mu(&a).mul(&mu.mu(&b)) {
                mult.push(format!("{}, {}", show(&a), show(&b)));
            }
            axioms.extend(mu.axiom_failures_at(&a).into_iter().map(|(ax, w)| format!("{ax}: {w}")));
        }
        out.push(first_failure(format!("μ(ab) = μ(a)μ(b) on {pairs} random pairs"), pairs, mult));
        out.push(first_failure(format!("μ axioms at {pairs} random elements"), pairs, axioms));
    }
    out
}

/// Scaling and closure statements for group-likes and skew-primitives,
/// over the group-like monomials with exponents in `[-1, 1]` and the
/// generators as skew-primitive candidates.
pub fn closure_properties(mu: &HopfGaloisStructure) -> Vec<Verdict> {
    let alg = mu.algebra();
    let show = |e: &Element| alg.display(e).to_string();
    let groups = mu.scan_group_likes(1);
    let scalars = [Scalar::from_int(2), Scalar::from_ratio(-3, 2)];
    let mut scaling = Vec::new();
    let mut group = Vec::new();
    for g in &groups {
        for l in &scalars {
            if !mu.is_group_like(&g.scale(l)) {
                scaling.push(format!("{} * {}", l.display(alg.ring()), show(g)));
            }
        }
        if g != &alg.one() && mu.is_group_like(&g.add(&alg.one())) {
            scaling.push(format!("{} + 1 is group-like", show(g)));
        }
        let gi = alg.unit_inverse(g).expect("group-likes are units");
        if !mu.is_group_like(&gi) {
            group.push(format!("{}⁻¹", show(g)));
        }
        for h in &groups {
            if !mu.is_group_like(&alg.mul(g, h)) {
                group.push(format!("{} * {}", show(g), show(h)));
            }
        }
    }
    let mut ends = Vec::new();
    let mut closure = Vec::new();
    let mut certified = 0usize;
    let mut candidates: Vec<Element> = (0..alg.ngens()).map(|i| alg.gen(i)).collect();
    candidates.extend(groups.iter().cloned());
    for g in &groups {
        for h in &groups {
            for x in [g, h] {
                if !matches!(mu.check_skew_primitive(x, g, h), Ok(Some(_))) {
                    ends.push(format!("{} ∉ P⁰_({},{})", show(x), show(g), show(h)));
                }
            }
            for x in &candidates {
                let Ok(Some(cert)) = mu.check_skew_primitive(x, g, h) else { continue };
                certified += 1;
                match mu.skew_primitive_closure(&cert) {
                    Ok(vs) => closure.extend(vs.into_iter().filter(|v| !v.pass).map(|v| v.to_string())),
                    Err(e) => closure.push(e.to_string()),
                }
            }
        }
    }
    let ng = groups.len();
    vec![
        first_failure(format!("λg group-like for {ng} group-likes g"), ng, scaling),
        first_failure(format!("group-likes closed under products and inverses ({ng})"), ng, group),
        first_failure("g, h ∈ P⁰_(g,h)".into(), ng * ng, ends),
        first_failure(format!("closure of {certified} certified skew-primitives"), certified, closure),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfgalois::triple;
    use crate::scalar::ParamRing;

    fn kz() -> HopfGaloisStructure {
        let k = TowerAlgebra::base_field(ParamRing::new());
        let r = k.laurent("kZ", "K").unwrap();
        let g = r.gen(0);
        let gi = r.unit_inverse(&g).unwrap();
        HopfGaloisStructure::define(&r, vec![triple(&r, &g, &gi, &g)]).unwrap()
    }

    #[test]
    fn laurent_properties_hold() {
        let mu = kz();
        let opts = PropOptions { triples: 20, ..Default::default() };
        for v in algebra_properties(mu.algebra(), Some(&mu), opts) {
            assert!(v.pass, "{v}");
        }
        for v in closure_properties(&mu) {
            assert!(v.pass, "{v}");
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        let mu = kz();
        let mut a = ElementSampler::new(mu.algebra(), 7, 2);
        let mut b = ElementSampler::new(mu.algebra(), 7, 2);
        for _ in 0..5 {
            assert_eq!(a.element(), b.element());
        }
    }
}
