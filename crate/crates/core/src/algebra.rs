//! Tower algebras: the coefficient field extended by skew (Ore or Laurent)
//! generators and by ambiskew pairs, with multiplication computed directly in
//! the PBW basis.
//!
//! Generators carry a global index in layer order. A normal monomial is the
//! ordered product `g_0^{e_0} g_1^{e_1} ...`, so a monomial of a sub-tower is
//! also a valid monomial of every tower built on top of it. Multiplying a
//! generator of layer `L` onto a normal monomial `p · q · s` (with `p` below
//! `L`, `q` in `L`, `s` above) uses one of the rules
//!
//! ```text
//! g p     = τ(p) g            skew, and g⁻¹ p = τ⁻¹(p) g⁻¹
//! X p     = τ(p) X            ambiskew
//! Y p     = ω(p) Y
//! Y X^a   = ξ⁻¹ X (Y X^{a-1}) - ξ⁻¹ c X^{a-1}
//! ```
//!
//! Each rule strictly lowers the number of generator pairs out of layer
//! order, and the `YX` rule lowers the `Y`-before-`X` inversion count, so the
//! product terminates. Confluence is exercised by the associativity tests.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::morphism::Automorphism;
use crate::scalar::{ParamRing, Scalar};

/// Exponent vector over the global generator order, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exps(mut v: Vec<i32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn gen(i: usize, e: i32) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Monomial::from_exps(v)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of exponent slots in use.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// Sum of absolute exponents.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    /// The part in generators with index below `i`.
    pub fn prefix(&self, i: usize) -> Monomial {
        Monomial::from_exps(self.0.iter().take(i).copied().collect())
    }

    fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    fn with_tail(low: &Monomial, from: usize, tail: &[i32]) -> Monomial {
        debug_assert!(low.width() <= from);
        let mut v = low.0.clone();
        v.resize(from, 0);
        v.extend_from_slice(tail);
        Monomial::from_exps(v)
    }

    /// Exponents of both monomials added slot by slot.
    fn juxtapose(&self, other: &Monomial) -> Monomial {
        let n = self.width().max(other.width());
        Monomial::from_exps((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }
}

pub type Element = LinComb<Monomial>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Skew,
    AmbiskewX,
    AmbiskewY,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: String,
    pub invertible: bool,
    pub layer: usize,
    pub kind: GenKind,
}

type YxTerms = Vec<(Element, i32, i32)>;

#[allow(clippy::large_enum_variant)]
pub enum Layer {
    Skew {
        gen: usize,
        tau: Automorphism,
    },
    Ambiskew {
        x: usize,
        y: usize,
        tau: Automorphism,
        omega: Automorphism,
        c: Element,
        xi: Scalar,
        xi_inv: Scalar,
        yx: Mutex<Vec<YxTerms>>,
    },
}

impl Layer {
    pub fn tau(&self) -> &Automorphism {
        match self {
            Layer::Skew { tau, .. } | Layer::Ambiskew { tau, .. } => tau,
        }
    }
}

struct Inner {
    id: u64,
    name: String,
    ring: ParamRing,
    gens: Vec<GenDecl>,
    layers: Vec<Arc<Layer>>,
    /// `below[L]` is the sub-tower under layer `L`.
    below: Vec<TowerAlgebra>,
    cache: Mutex<HashMap<(usize, u8, Monomial), Element>>,
}

#[derive(Clone)]
pub struct TowerAlgebra(Arc<Inner>);

impl fmt::Debug for TowerAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerAlgebra({}: {})", self.0.name, self.generator_list())
    }
}

impl PartialEq for TowerAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for TowerAlgebra {}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

const TAU: u8 = 0;
const TAU_INV: u8 = 1;
const OMEGA: u8 = 2;

impl TowerAlgebra {
    /// The coefficient field with no generators.
    pub fn base_field(ring: ParamRing) -> Self {
        TowerAlgebra(Arc::new(Inner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: "k".into(),
            ring,
            gens: Vec::new(),
            layers: Vec::new(),
            below: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        }))
    }

    fn extend_with(&self, name: &str, new_gens: Vec<GenDecl>, layer: Layer) -> TowerAlgebra {
        let mut gens = self.0.gens.clone();
        gens.extend(new_gens);
        let mut layers = self.0.layers.clone();
        layers.push(Arc::new(layer));
        let mut below = self.0.below.clone();
        below.push(self.clone());
        TowerAlgebra(Arc::new(Inner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.to_string(),
            ring: self.0.ring.clone(),
            gens,
            layers,
            below,
            cache: Mutex::new(HashMap::new()),
        }))
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        if self.gen_index(name).is_some() || self.0.ring.index(name).is_some() {
            return Err(Error::Redeclared(name.to_string()));
        }
        Ok(())
    }

    /// `R[g; τ]`, or `R[g^{±1}; τ]` when `invertible`.
    pub fn skew_adjoin(&self, name: &str, gen: &str, invertible: bool, tau: Automorphism) -> Result<TowerAlgebra> {
        self.check_fresh(gen)?;
        if tau.algebra() != self {
            return Err(Error::AlgebraMismatch);
        }
        if invertible {
            for (i, d) in self.0.gens.iter().enumerate() {
                if !d.invertible {
                    continue;
                }
                let img = tau.image(i);
                if !self.is_unit(img) || !self.is_unit(tau.inverse().image(i)) {
                    return Err(Error::NotAutomorphism(format!(
                        "image of invertible generator {} is not a unit monomial",
                        d.name
                    )));
                }
            }
        }
        let idx = self.ngens();
        let decl = GenDecl { name: gen.to_string(), invertible, layer: self.0.layers.len(), kind: GenKind::Skew };
        Ok(self.extend_with(name, vec![decl], Layer::Skew { gen: idx, tau }))
    }

    /// Laurent extension `R[g^{±1}]` with `g` central.
    pub fn laurent(&self, name: &str, gen: &str) -> Result<TowerAlgebra> {
        self.skew_adjoin(name, gen, true, Automorphism::identity(self))
    }

    /// Polynomial extension `R[g]` with `g` central.
    pub fn polynomial(&self, name: &str, gen: &str) -> Result<TowerAlgebra> {
        self.skew_adjoin(name, gen, false, Automorphism::identity(self))
    }

    /// `A(R, X, Y, τ, ω, c, ξ)`.
    #[allow(clippy::too_many_arguments)]
    pub fn ambiskew_adjoin(
        &self,
        name: &str,
        x: &str,
        y: &str,
        tau: Automorphism,
        omega: Automorphism,
        c: Element,
        xi: Scalar,
    ) -> Result<TowerAlgebra> {
        self.check_fresh(x)?;
        self.check_fresh(y)?;
        if x == y {
            return Err(Error::Redeclared(y.to_string()));
        }
        if tau.algebra() != self || omega.algebra() != self {
            return Err(Error::AlgebraMismatch);
        }
        if !self.contains(&c) {
            return Err(Error::invalid("c must lie in the algebra being extended"));
        }
        if xi.is_zero() {
            return Err(Error::invalid("ξ must be nonzero"));
        }
        if let Some(i) = crate::morphism::first_noncommuting(tau.forward(), omega.forward()) {
            return Err(Error::RelationViolation {
                relation: "τω = ωτ".into(),
                witness: format!("fails on generator {}", self.gen_name(i)),
            });
        }
        let sigma = tau.compose(&omega);
        if let Some(i) = self.first_sigma_central_failure(&c, sigma.forward()) {
            return Err(Error::RelationViolation {
                relation: "c σ-central".into(),
                witness: format!("c*{0} != σ({0})*c", self.gen_name(i)),
            });
        }
        let ix = self.ngens();
        let layer = self.0.layers.len();
        let decls = vec![
            GenDecl { name: x.to_string(), invertible: false, layer, kind: GenKind::AmbiskewX },
            GenDecl { name: y.to_string(), invertible: false, layer, kind: GenKind::AmbiskewY },
        ];
        let xi_inv = xi.inv()?;
        Ok(self.extend_with(
            name,
            decls,
            Layer::Ambiskew { x: ix, y: ix + 1, tau, omega, c, xi, xi_inv, yx: Mutex::new(Vec::new()) },
        ))
    }

    /// The Weyl algebra `k<U, V | UV - VU = 1>` over this algebra.
    pub fn weyl(&self, name: &str, u: &str, v: &str) -> Result<TowerAlgebra> {
        self.ambiskew_adjoin(
            name,
            u,
            v,
            Automorphism::identity(self),
            Automorphism::identity(self),
            self.one(),
            Scalar::one(),
        )
    }

    /// Index of the first generator `r` with `c r != σ(r) c`.
    pub fn first_sigma_central_failure(&self, c: &Element, sigma: &crate::morphism::Morphism<TowerAlgebra>) -> Option<usize> {
        (0..self.ngens()).find(|&i| {
            let r = self.gen(i);
            self.mul(c, &r) != self.mul(sigma.image(i), c)
        })
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn ring(&self) -> &ParamRing {
        &self.0.ring
    }

    pub fn names(&self) -> Vec<String> {
        self.0.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn ngens(&self) -> usize {
        self.0.gens.len()
    }

    pub fn gens(&self) -> &[GenDecl] {
        &self.0.gens
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.0.gens[i].name
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.0.gens.iter().position(|g| g.name == name)
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.0.gens[i].invertible
    }

    pub fn layers(&self) -> &[Arc<Layer>] {
        &self.0.layers
    }

    /// The algebra directly below the top layer.
    pub fn parent(&self) -> Option<&TowerAlgebra> {
        self.0.below.last()
    }

    /// True when `other` is a sub-tower of `self` (or equal).
    pub fn extends(&self, other: &TowerAlgebra) -> bool {
        self == other || self.0.below.iter().any(|b| b == other)
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.keys().all(|m| self.mono_ok(m))
    }

    fn mono_ok(&self, m: &Monomial) -> bool {
        m.width() <= self.ngens() && m.exps().iter().enumerate().all(|(i, &e)| e >= 0 || self.is_invertible(i))
    }

    pub fn check(&self, e: &Element) -> Result<()> {
        for m in e.keys() {
            if m.width() > self.ngens() {
                return Err(Error::AlgebraMismatch);
            }
            for (i, &x) in m.exps().iter().enumerate() {
                if x < 0 && !self.is_invertible(i) {
                    return Err(Error::NegativePower(self.gen_name(i).to_string()));
                }
            }
        }
        Ok(())
    }

    /// Normal monomials of total degree at most `d`, with negative exponents
    /// allowed at invertible generators.
    pub fn small_monomials(&self, d: u32) -> Vec<Monomial> {
        fn rec(alg: &TowerAlgebra, i: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
            if i == alg.ngens() {
                out.push(Monomial::from_exps(cur.clone()));
                return;
            }
            let lo = if alg.is_invertible(i) { -left } else { 0 };
            for e in lo..=left {
                cur.push(e);
                rec(alg, i + 1, left - e.abs(), cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, d as i32, &mut Vec::with_capacity(self.ngens()), &mut out);
        out
    }

    pub fn one(&self) -> Element {
        Element::basis(Monomial::one())
    }

    pub fn zero(&self) -> Element {
        Element::zero()
    }

    pub fn scalar(&self, s: Scalar) -> Element {
        Element::term(Monomial::one(), s)
    }

    pub fn gen(&self, i: usize) -> Element {
        Element::basis(Monomial::gen(i, 1))
    }

    pub fn gen_named(&self, name: &str) -> Result<Element> {
        self.gen_index(name).map(|i| self.gen(i)).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// `g^e` for a generator, failing on negative powers of non-invertible
    /// generators.
    pub fn gen_pow(&self, i: usize, e: i32) -> Result<Element> {
        if e < 0 && !self.is_invertible(i) {
            return Err(Error::NegativePower(self.gen_name(i).to_string()));
        }
        Ok(Element::basis(Monomial::gen(i, e)))
    }

    fn layer_of(&self, g: usize) -> (usize, &Layer) {
        let l = self.0.gens[g].layer;
        (l, &self.0.layers[l])
    }

    fn apply_layer_map(&self, l: usize, which: u8, p: &Monomial) -> Element {
        if p.is_one() {
            return self.one();
        }
        let key = (l, which, p.clone());
        if let Some(e) = self.0.cache.lock().expect("cache").get(&key) {
            return e.clone();
        }
        let layer = &self.0.layers[l];
        let out = match (which, layer.as_ref()) {
            (TAU, _) => layer.tau().forward().apply_mono(p),
            (TAU_INV, _) => layer.tau().inverse().apply_mono(p),
            (OMEGA, Layer::Ambiskew { omega, .. }) => omega.forward().apply_mono(p),
            _ => unreachable!("map not present on layer"),
        };
        self.0.cache.lock().expect("cache").insert(key, out.clone());
        out
    }

    /// `Y X^a` as a list of `(r, i, j)` meaning `r X^i Y^j` with `r` below
    /// the layer.
    fn yx_terms(&self, l: usize, a: i32) -> YxTerms {
        let layer = &self.0.layers[l];
        let Layer::Ambiskew { yx, c, xi_inv, .. } = layer.as_ref() else {
            unreachable!("yx on a skew layer")
        };
        {
            let memo = yx.lock().expect("yx memo");
            if let Some(t) = memo.get(a as usize) {
                return t.clone();
            }
        }
        let below = &self.0.below[l];
        let mut memo_local: Vec<YxTerms> = yx.lock().expect("yx memo").clone();
        if memo_local.is_empty() {
            memo_local.push(vec![(below.one(), 0, 1)]);
        }
        while memo_local.len() <= a as usize {
            let k = memo_local.len() as i32;
            let prev = memo_local.last().expect("nonempty");
            let mut acc: Vec<(Element, i32, i32)> = Vec::new();
            let mut push = |r: Element, i: i32, j: i32| {
                if r.is_zero() {
                    return;
                }
                if let Some(slot) = acc.iter_mut().find(|t| t.1 == i && t.2 == j) {
                    slot.0 = slot.0.add(&r);
                } else {
                    acc.push((r, i, j));
                }
            };
            for (r, i, j) in prev {
                let tr = below.apply_via(l, TAU, self, r);
                push(tr.scale(xi_inv), i + 1, *j);
            }
            push(c.scale(&-xi_inv.clone()), k - 1, 0);
            acc.retain(|t| !t.0.is_zero());
            memo_local.push(acc);
        }
        let out = memo_local[a as usize].clone();
        *yx.lock().expect("yx memo") = memo_local;
        out
    }

    /// Applies a layer map of `top` (which has `self` below layer `l`) to an
    /// element of `self`.
    fn apply_via(&self, l: usize, which: u8, top: &TowerAlgebra, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.iter() {
            out.add_scaled(&top.apply_layer_map(l, which, m), c);
        }
        out
    }

    /// `g^{sign} · m` in normal form.
    fn lmul_gen(&self, g: usize, sign: i32, m: &Monomial) -> Element {
        let (l, layer) = self.layer_of(g);
        match layer {
            Layer::Skew { gen, .. } => {
                let p = m.prefix(*gen);
                let mut tail: Vec<i32> = m.exps().iter().skip(*gen).copied().collect();
                if tail.is_empty() {
                    tail.push(0);
                }
                tail[0] += sign;
                if p.is_one() {
                    return Element::basis(Monomial::with_tail(&p, *gen, &tail));
                }
                let img = self.apply_layer_map(l, if sign > 0 { TAU } else { TAU_INV }, &p);
                img.iter().map(|(pm, c)| (Monomial::with_tail(pm, *gen, &tail), c.clone())).collect()
            }
            Layer::Ambiskew { x, y, .. } => {
                debug_assert!(sign > 0);
                let p = m.prefix(*x);
                let a = m.exp(*x);
                let b = m.exp(*y);
                let rest: Vec<i32> = m.exps().iter().skip(*y + 1).copied().collect();
                if g == *x {
                    let mut tail = vec![a + 1, b];
                    tail.extend_from_slice(&rest);
                    let img = self.apply_layer_map(l, TAU, &p);
                    return img.iter().map(|(pm, c)| (Monomial::with_tail(pm, *x, &tail), c.clone())).collect();
                }
                let below = &self.0.below[l];
                let img = self.apply_layer_map(l, OMEGA, &p);
                let mut out = Element::zero();
                for (r, i, j) in self.yx_terms(l, a) {
                    let lowered = below.mul(&img, &r);
                    let mut tail = vec![i, j + b];
                    tail.extend_from_slice(&rest);
                    for (pm, c) in lowered.iter() {
                        out.add_term(Monomial::with_tail(pm, *x, &tail), c.clone());
                    }
                }
                out
            }
        }
    }

    /// Product of two normal monomials.
    pub fn mul_mono(&self, m1: &Monomial, m2: &Monomial) -> Element {
        if m1.is_one() {
            return Element::basis(m2.clone());
        }
        if m2.is_one() {
            return Element::basis(m1.clone());
        }
        let last1 = m1.width() - 1;
        let first2 = m2.first_nonzero().expect("nonunit");
        if last1 < first2 {
            return Element::basis(m1.juxtapose(m2));
        }
        if last1 == first2 && self.0.gens[last1].kind == GenKind::Skew {
            // Same skew generator meets itself.
            let rest1 = m1.prefix(last1);
            let mut merged = m2.clone().0;
            merged[last1] += m1.exp(last1);
            let merged = Monomial::from_exps(merged);
            if rest1.is_one() {
                return Element::basis(merged);
            }
            return self.mul_mono(&rest1, &merged);
        }
        let mut acc = Element::basis(m2.clone());
        for g in (0..m1.width()).rev() {
            let e = m1.exp(g);
            let sign = e.signum();
            for _ in 0..e.abs() {
                let mut next = Element::zero();
                for (m, c) in acc.iter() {
                    next.add_scaled(&self.lmul_gen(g, sign, m), c);
                }
                acc = next;
            }
        }
        acc
    }

    /// Product in normal form. Inputs are assumed to belong to the algebra;
    /// use [`TowerAlgebra::multiply`] for checked input.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in a.iter() {
            for (m2, c2) in b.iter() {
                out.add_scaled(&self.mul_mono(m1, m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn element_eq(&self, a: &Element, b: &Element) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(a == b)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// True for a nonzero scalar times a monomial in invertible generators.
    pub fn is_unit(&self, e: &Element) -> bool {
        match e.as_term() {
            Some((m, _)) => m.exps().iter().enumerate().all(|(i, &x)| x == 0 || self.is_invertible(i)),
            None => false,
        }
    }

    /// Two-sided inverse of a unit element.
    pub fn unit_inverse(&self, e: &Element) -> Option<Element> {
        if !self.is_unit(e) {
            return None;
        }
        let (m, c) = e.as_term()?;
        let mut acc = self.scalar(c.inv().ok()?);
        for i in (0..m.width()).rev() {
            let x = m.exp(i);
            if x != 0 {
                acc = self.mul(&acc, &Element::basis(Monomial::gen(i, -x)));
            }
        }
        Some(acc)
    }

    pub fn pow(&self, e: &Element, k: i32) -> Result<Element> {
        let base = if k < 0 {
            self.unit_inverse(e).ok_or_else(|| Error::NotUnit(self.display(e).to_string()))?
        } else {
            e.clone()
        };
        let mut acc = self.one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// `g r g⁻¹` for a unit `g`.
    pub fn conjugate(&self, g: &Element, r: &Element) -> Result<Element> {
        let gi = self.unit_inverse(g).ok_or_else(|| Error::NotUnit(self.display(g).to_string()))?;
        Ok(self.mul(&self.mul(g, r), &gi))
    }

    /// Defining relations on generators as `(word, rhs)`: a word of
    /// generator powers whose product must equal the normal element `rhs`.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for (l, layer) in self.0.layers.iter().enumerate() {
            let below = &self.0.below[l];
            let nb = below.ngens();
            match layer.as_ref() {
                Layer::Skew { gen, tau } => {
                    let g = self.gen(*gen);
                    for r in 0..nb {
                        out.push(Relation {
                            word: vec![(*gen, 1), (r, 1)],
                            rhs: self.mul(tau.image(r), &g),
                        });
                    }
                    if self.is_invertible(*gen) {
                        out.push(Relation { word: vec![(*gen, 1), (*gen, -1)], rhs: self.one() });
                        out.push(Relation { word: vec![(*gen, -1), (*gen, 1)], rhs: self.one() });
                    }
                }
                Layer::Ambiskew { x, y, tau, omega, c, xi_inv, .. } => {
                    let (gx, gy) = (self.gen(*x), self.gen(*y));
                    for r in 0..nb {
                        out.push(Relation { word: vec![(*x, 1), (r, 1)], rhs: self.mul(tau.image(r), &gx) });
                    }
                    for r in 0..nb {
                        out.push(Relation { word: vec![(*y, 1), (r, 1)], rhs: self.mul(omega.image(r), &gy) });
                    }
                    let xy = self.mul(&gx, &gy);
                    out.push(Relation { word: vec![(*y, 1), (*x, 1)], rhs: xy.sub(c).scale(xi_inv) });
                }
            }
        }
        out
    }

    pub fn relation_text(&self, rel: &Relation) -> String {
        let lhs: Vec<String> = rel.word.iter().map(|&(g, e)| pow_text(self.gen_name(g), e)).collect();
        format!("{} = {}", lhs.join("*"), self.display(&rel.rhs))
    }

    pub fn display<'a>(&'a self, e: &'a Element) -> ElementDisplay<'a> {
        ElementDisplay { alg: self, e, ring: None }
    }

    pub fn display_in<'a>(&'a self, e: &'a Element, ring: &'a ParamRing) -> ElementDisplay<'a> {
        ElementDisplay { alg: self, e, ring: Some(ring) }
    }

    pub fn mono_text(&self, m: &Monomial) -> String {
        let parts: Vec<String> =
            m.exps().iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| pow_text(self.gen_name(i), e)).collect();
        parts.join("*")
    }

    /// `k⟨T1^±1, X, Y⟩` style generator list.
    pub fn generator_list(&self) -> String {
        let parts: Vec<String> = self
            .0
            .gens
            .iter()
            .map(|g| if g.invertible { format!("{}^±1", g.name) } else { g.name.clone() })
            .collect();
        format!("k⟨{}⟩", parts.join(", "))
    }

    /// Defining relations in the customary form: `g*r = λ*r*g`,
    /// `[g, r] = ...`, `X*Y - ξ*Y*X = c`.
    pub fn presentation(&self) -> Vec<String> {
        self.presentation_in(self.ring())
    }

    pub fn presentation_in(&self, ring: &ParamRing) -> Vec<String> {
        let mut out = Vec::new();
        for (l, layer) in self.0.layers.iter().enumerate() {
            let nb = self.0.below[l].ngens();
            let mut skew_lines = |g: usize, map: &Automorphism| {
                for r in 0..nb {
                    out.push(self.commutation_text(g, r, map.image(r), ring));
                }
            };
            match layer.as_ref() {
                Layer::Skew { gen, tau } => skew_lines(*gen, tau),
                Layer::Ambiskew { x, y, tau, omega, c, xi, .. } => {
                    skew_lines(*x, tau);
                    skew_lines(*y, omega);
                    let (xn, yn) = (self.gen_name(*x), self.gen_name(*y));
                    let rhs = self.display_in(c, ring).to_string();
                    let lhs = if xi.is_one() {
                        format!("[{xn}, {yn}]")
                    } else {
                        let neg = -xi;
                        format!("{xn}*{yn} {}{yn}*{xn}", signed_coefficient(&neg, ring))
                    };
                    out.push(format!("{lhs} = {rhs}"));
                }
            }
        }
        out
    }

    fn commutation_text(&self, g: usize, r: usize, image: &Element, ring: &ParamRing) -> String {
        let (gn, rn) = (self.gen_name(g), self.gen_name(r));
        let rmono = Monomial::gen(r, 1);
        if let Some((m, c)) = image.as_term() {
            if *m == rmono {
                return if c.is_one() {
                    format!("{gn}*{rn} = {rn}*{gn}")
                } else {
                    format!("{gn}*{rn} = {}", self.display_in(&self.mul(image, &self.gen(g)), ring))
                };
            }
        }
        let diff = image.sub(&self.gen(r));
        format!("[{gn}, {rn}] = {}", self.display_in(&self.mul(&diff, &self.gen(g)), ring))
    }
}

/// `word = rhs` on generator powers.
#[derive(Clone, Debug)]
pub struct Relation {
    pub word: Vec<(usize, i32)>,
    pub rhs: Element,
}

fn pow_text(name: &str, e: i32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

/// `- 2*q` / `+ (a + b)*` style prefix for a coefficient in a sum.
fn signed_coefficient(c: &Scalar, ring: &ParamRing) -> String {
    let (neg, abs) = split_sign(c, ring);
    let body = coefficient_text(&abs, ring);
    let sign = if neg { '-' } else { '+' };
    if body.is_empty() {
        format!("{sign} ")
    } else {
        format!("{sign} {body}*")
    }
}

/// Splits off a leading minus sign of the printed scalar.
fn split_sign(c: &Scalar, ring: &ParamRing) -> (bool, Scalar) {
    if c.display(ring).to_string().starts_with('-') {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

/// Coefficient text for a positive-looking scalar; empty for one.
fn coefficient_text(c: &Scalar, ring: &ParamRing) -> String {
    if c.is_one() {
        return String::new();
    }
    let d = c.display(ring);
    if d.summands() > 1 {
        format!("({d})")
    } else {
        d.to_string()
    }
}

/// Prints an element as a sum of coefficient·monomial terms, lowest degree
/// first. A scalar common to all terms up to rational factors is pulled out.
pub struct ElementDisplay<'a> {
    alg: &'a TowerAlgebra,
    e: &'a Element,
    ring: Option<&'a ParamRing>,
}

impl ElementDisplay<'_> {
    fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut terms: Vec<_> = self.e.iter().collect();
        terms.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| b.0.cmp(a.0)));
        terms
    }

    fn write_sum(&self, f: &mut fmt::Formatter<'_>, terms: &[(&Monomial, Scalar)], ring: &ParamRing) -> fmt::Result {
        for (i, (m, c)) in terms.iter().enumerate() {
            let mono = self.alg.mono_text(m);
            let multi = c.display(ring).summands() > 1;
            if i == 0 && multi && mono.is_empty() {
                write!(f, "{}", c.display(ring))?;
                continue;
            }
            let (neg, abs) = split_sign(c, ring);
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if mono.is_empty() {
                if multi {
                    write!(f, "({})", abs.display(ring))?;
                } else {
                    write!(f, "{}", abs.display(ring))?;
                }
            } else {
                let coeff = coefficient_text(&abs, ring);
                if coeff.is_empty() {
                    write!(f, "{mono}")?;
                } else {
                    write!(f, "{coeff}*{mono}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring.unwrap_or(self.alg.ring());
        if self.e.is_zero() {
            return write!(f, "0");
        }
        let terms = self.sorted_terms();
        if terms.len() > 1 {
            let lead = terms[0].1;
            if !lead.is_constant() {
                let ratios: Option<Vec<Scalar>> =
                    terms.iter().map(|(_, c)| (*c / lead).is_constant().then(|| *c / lead)).collect();
                if let Some(ratios) = ratios {
                    let (neg, abs) = split_sign(lead, ring);
                    let inner: Vec<(&Monomial, Scalar)> =
                        terms.iter().zip(ratios).map(|((m, _), r)| (*m, r)).collect();
                    if neg {
                        write!(f, "-")?;
                    }
                    write!(f, "{}*(", coefficient_text(&abs, ring))?;
                    self.write_sum(f, &inner, ring)?;
                    return write!(f, ")");
                }
            }
        }
        let owned: Vec<(&Monomial, Scalar)> = terms.into_iter().map(|(m, c)| (m, c.clone())).collect();
        self.write_sum(f, &owned, ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> ParamRing {
        ParamRing::with_params(names).unwrap()
    }

    fn weyl() -> TowerAlgebra {
        TowerAlgebra::base_field(ring(&[])).weyl("A1", "U", "V").unwrap()
    }

    #[test]
    fn weyl_reorders() {
        let a = weyl();
        let (u, v) = (a.gen(0), a.gen(1));
        let vu = a.mul(&v, &u);
        assert_eq!(a.display(&vu).to_string(), "-1 + U*V");
        let s = a.mul(&u.add(&v), &u.sub(&v));
        assert_eq!(s, a.mul(&u, &u).sub(&a.mul(&v, &v)).sub(&a.one()));
    }

    #[test]
    fn quantum_torus() {
        let r = ring(&["q"]);
        let q = r.param("q").unwrap();
        let k = TowerAlgebra::base_field(r);
        let t1 = k.laurent("R1", "T1").unwrap();
        let tau = Automorphism::scaling(&t1, &[q.inv().unwrap()]).unwrap();
        let t = t1.skew_adjoin("R", "T2", true, tau).unwrap();
        let (a, b) = (t.gen(0), t.gen(1));
        assert_eq!(t.mul(&b, &a), t.mul(&a, &b).scale(&q.inv().unwrap()));
        assert_eq!(t.mul(&a, &b), t.mul(&b, &a).scale(&q));
        let binv = t.unit_inverse(&b).unwrap();
        assert_eq!(t.mul(&b, &binv), t.one());
        assert_eq!(t.mul(&binv, &b), t.one());
        let ab = t.mul(&a, &b);
        let inv = t.unit_inverse(&ab).unwrap();
        assert_eq!(t.mul(&ab, &inv), t.one());
        assert_eq!(t.mul(&inv, &ab), t.one());
    }

    #[test]
    fn shifted_polynomial() {
        let k = TowerAlgebra::base_field(ring(&[]));
        let kt = k.polynomial("kT", "T").unwrap();
        let tau = Automorphism::from_images(&kt, vec![kt.gen(0).add(&kt.one())], None).unwrap();
        let a = kt.skew_adjoin("A", "X", false, tau).unwrap();
        let x = a.gen(1);
        let t = a.gen(0);
        let lhs = a.mul_all([&x, &x, &t]);
        let expected = a.mul(&t.add(&a.scalar(Scalar::from_int(2))), &a.mul(&x, &x));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn factored_display() {
        let r = ring(&["γ"]);
        let g = r.param("γ").unwrap();
        let k = TowerAlgebra::base_field(r);
        let h = k.laurent("H1", "K1").unwrap().laurent("H", "K2").unwrap();
        let e = h.scalar(g.clone()).sub(&h.mul(&h.gen(0), &h.gen(1)).scale(&g));
        assert_eq!(h.display(&e).to_string(), "γ*(1 - K1*K2)");
    }

    #[test]
    fn compound_coefficients_keep_their_signs() {
        let r = ring(&["a", "b"]);
        let (a, b) = (r.param("a").unwrap(), r.param("b").unwrap());
        let k = TowerAlgebra::base_field(r);
        let kt = k.polynomial("kT", "T").unwrap();
        let c = -(&(&a + &b) + &Scalar::one());
        let e = kt.scalar(c.clone()).add(&kt.gen(0));
        assert_eq!(kt.display(&e).to_string(), "-a - b - 1 + T");
        let e = kt.mul(&kt.gen(0).add(&kt.scalar(c)), &kt.gen(0));
        assert_eq!(kt.display(&e).to_string(), "-(a + b + 1)*T + T^2");
        let e = kt.gen(0).sub(&kt.scalar(&a + &b));
        assert_eq!(kt.display(&e).to_string(), "-a - b + T");
    }

    #[test]
    fn negative_power_rejected() {
        let a = weyl();
        assert!(matches!(a.gen_pow(0, -1), Err(Error::NegativePower(_))));
        assert!(a.unit_inverse(&a.gen(0)).is_none());
    }
}
