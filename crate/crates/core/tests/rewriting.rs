//! Normal-form products against operator representations written out by hand.
//!
//! Each algebra acts on Laurent polynomials with rational coefficients; the
//! product of two normal forms must act as the composition of their actions.

use std::collections::BTreeMap;

use ambiskew::props::ElementSampler;
use ambiskew::{Automorphism, Element, ParamRing, Scalar, TowerAlgebra};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Poly = BTreeMap<Vec<i32>, BigRational>;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn add_to(p: &mut Poly, k: Vec<i32>, c: BigRational) {
    let e = p.entry(k.clone()).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&k);
    }
}

fn map_terms(p: &Poly, f: impl Fn(&[i32], &BigRational) -> Vec<(Vec<i32>, BigRational)>) -> Poly {
    let mut out = Poly::new();
    for (k, c) in p {
        for (k2, c2) in f(k, c) {
            add_to(&mut out, k2, c2);
        }
    }
    out
}

fn times_var(p: &Poly, v: usize, e: i32) -> Poly {
    map_terms(p, |k, c| {
        let mut k = k.to_vec();
        k[v] += e;
        vec![(k, c.clone())]
    })
}

fn deriv(p: &Poly, v: usize) -> Poly {
    map_terms(p, |k, c| {
        if k[v] == 0 {
            return vec![];
        }
        let mut k2 = k.to_vec();
        k2[v] -= 1;
        vec![(k2, c * BigRational::from_integer(BigInt::from(k[v])))]
    })
}

/// `f(.., q^e * x_v, ..)`.
fn dilate(p: &Poly, v: usize, q: &BigRational, e: i32) -> Poly {
    map_terms(p, |k, c| {
        let f = num_traits::pow::Pow::pow(q, k[v] * e);
        vec![(k.to_vec(), c * f)]
    })
}

fn scale(p: &Poly, s: &BigRational) -> Poly {
    map_terms(p, |k, c| vec![(k.to_vec(), c * s)])
}

fn sum(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (k, c) in b {
        add_to(&mut out, k.clone(), c.clone());
    }
    out
}

type GenAction = Box<dyn Fn(&Poly) -> Poly>;

struct Rep {
    alg: TowerAlgebra,
    vars: usize,
    /// Action of each generator and, for units, of its inverse.
    gens: Vec<(GenAction, Option<GenAction>)>,
}

impl Rep {
    fn act_mono(&self, exps: &[i32], v: &Poly) -> Poly {
        let mut out = v.clone();
        for (i, &e) in exps.iter().enumerate().rev() {
            let (fwd, inv) = &self.gens[i];
            let op: &GenAction = if e < 0 { inv.as_ref().expect("inverse action") } else { fwd };
            for _ in 0..e.abs() {
                out = op(&out);
            }
        }
        out
    }

    fn act(&self, x: &Element, v: &Poly) -> Poly {
        let mut out = Poly::new();
        for (m, c) in x.iter() {
            let c = c.as_rational().expect("rational coefficients");
            out = sum(&out, &scale(&self.act_mono(m.exps(), v), &c));
        }
        out
    }

    fn probes(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..3 {
                let mut k = vec![0; self.vars];
                k[0] = a;
                if self.vars > 1 {
                    k[1] = b;
                } else if b > 0 {
                    continue;
                }
                out.push(Poly::from([(k, BigRational::one())]));
            }
        }
        out
    }

    fn check_products(&self, seed: u64, pairs: usize) {
        let mut s = ElementSampler::new(&self.alg, seed, 3);
        let probes = self.probes();
        for _ in 0..pairs {
            let (a, b) = (s.element(), s.element());
            let ab = self.alg.mul(&a, &b);
            for v in &probes {
                let lhs = self.act(&ab, v);
                let rhs = self.act(&a, &self.act(&b, v));
                assert_eq!(lhs, rhs, "({}) * ({}) = {}", self.alg.display(&a), self.alg.display(&b), self.alg.display(&ab));
            }
        }
    }
}

fn field() -> TowerAlgebra {
    TowerAlgebra::base_field(ParamRing::new())
}

#[test]
fn weyl_as_differential_operators() {
    let alg = field().weyl("A1", "U", "V").unwrap();
    let rep = Rep {
        alg,
        vars: 1,
        gens: vec![(Box::new(|p| deriv(p, 0)), None), (Box::new(|p| times_var(p, 0, 1)), None)],
    };
    rep.check_products(1, 60);
}

#[test]
fn quantum_torus_as_dilations() {
    let q = rat(3, 1);
    let t1 = field().laurent("R1", "T1").unwrap();
    let tau = Automorphism::scaling(&t1, &[Scalar::from_ratio(1, 3)]).unwrap();
    let alg = t1.skew_adjoin("R", "T2", true, tau).unwrap();
    let (qa, qb) = (q.clone(), q.clone());
    let rep = Rep {
        alg,
        vars: 2,
        gens: vec![
            (
                Box::new(move |p| times_var(&dilate(p, 1, &qa, 1), 0, 1)),
                Some(Box::new(move |p| times_var(&dilate(p, 1, &qb, -1), 0, -1))),
            ),
            (Box::new(|p| times_var(p, 1, 1)), Some(Box::new(|p| times_var(p, 1, -1)))),
        ],
    };
    let (t1, t2) = (rep.alg.gen(0), rep.alg.gen(1));
    let lhs = rep.alg.mul(&t1, &t2);
    let rhs = rep.alg.mul(&t2, &t1).scale(&Scalar::from_int(3));
    assert_eq!(lhs, rhs);
    rep.check_products(2, 60);
}

#[test]
fn heisenberg_inside_weyl_over_polynomials() {
    let kt = field().polynomial("kT", "T").unwrap();
    let t = kt.gen(0);
    let id = Automorphism::identity(&kt);
    let alg = kt.ambiskew_adjoin("U(h)", "X", "Y", id.clone(), id, t, Scalar::one()).unwrap();
    // Variables (a, s): T = a, X = d/ds, Y = a*s.
    let rep = Rep {
        alg,
        vars: 2,
        gens: vec![
            (Box::new(|p| times_var(p, 0, 1)), None),
            (Box::new(|p| deriv(p, 1)), None),
            (Box::new(|p| times_var(&times_var(p, 1, 1), 0, 1)), None),
        ],
    };
    rep.check_products(3, 60);
}

#[test]
fn sl2_as_vector_fields() {
    let kt = field().polynomial("kT", "T").unwrap();
    let shift = Automorphism::from_images(&kt, vec![kt.gen(0).add(&kt.one())], None).unwrap();
    let alg = kt.ambiskew_adjoin("Usl2", "X", "Y", shift.clone(), shift.inverted(), kt.gen(0), Scalar::one()).unwrap();
    // Variables (x, b) with b central: X = d/dx, T = x d/dx + b, Y = x^2/2 d/dx + b x.
    let half = rat(1, 2);
    let rep = Rep {
        alg,
        vars: 2,
        gens: vec![
            (Box::new(|p| sum(&times_var(&deriv(p, 0), 0, 1), &times_var(p, 1, 1))), None),
            (Box::new(|p| deriv(p, 0)), None),
            (
                Box::new(move |p| sum(&scale(&times_var(&deriv(p, 0), 0, 2), &half), &times_var(&times_var(p, 0, 1), 1, 1))),
                None,
            ),
        ],
    };
    let (t, x, y) = (rep.alg.gen(0), rep.alg.gen(1), rep.alg.gen(2));
    assert_eq!(rep.alg.commutator(&x, &t), x);
    assert_eq!(rep.alg.commutator(&y, &t), y.scale(&Scalar::from_int(-1)));
    assert_eq!(rep.alg.commutator(&x, &y), t);
    rep.check_products(4, 60);
}

#[test]
fn quantum_plane_ambiskew_over_laurent() {
    // X K = q^-2 K X, Y K = q^2 K Y, X Y = q^2 Y X over kZ with c = 0 and q = 2.
    let kz = field().laurent("kZ", "K").unwrap();
    let a = Automorphism::scaling(&kz, &[Scalar::from_ratio(1, 4)]).unwrap();
    let alg = kz.ambiskew_adjoin("A", "X", "Y", a.clone(), a.inverted(), kz.zero(), Scalar::from_int(4)).unwrap();
    // Variables (k, x, y): K = k f(4x, y/4), X = x f, Y = y f(x/4, y).
    let rep = Rep {
        alg,
        vars: 3,
        gens: vec![
            (
                Box::new(|p| times_var(&dilate(&dilate(p, 1, &rat(4, 1), 1), 2, &rat(1, 4), 1), 0, 1)),
                Some(Box::new(|p| times_var(&dilate(&dilate(p, 1, &rat(4, 1), -1), 2, &rat(1, 4), -1), 0, -1))),
            ),
            (Box::new(|p| times_var(p, 1, 1)), None),
            (Box::new(|p| times_var(&dilate(p, 1, &rat(1, 4), 1), 2, 1)), None),
        ],
    };
    let (k, x, y) = (rep.alg.gen(0), rep.alg.gen(1), rep.alg.gen(2));
    let probe = Poly::from([(vec![0, 0, 0], BigRational::one())]);
    for (lhs, rhs) in [
        (rep.alg.mul(&x, &k), rep.alg.mul(&k, &x).scale(&Scalar::from_ratio(1, 4))),
        (rep.alg.mul(&y, &k), rep.alg.mul(&k, &y).scale(&Scalar::from_int(4))),
        (rep.alg.mul(&x, &y), rep.alg.mul(&y, &x).scale(&Scalar::from_int(4))),
    ] {
        assert_eq!(lhs, rhs);
        assert_eq!(rep.act(&lhs, &probe), rep.act(&rhs, &probe));
    }
    rep.check_products(5, 60);
}
