use num_traits::{One, Zero};
use proptest::prelude::*;

use posgeom::algebra::{
    parse_poly_in, parse_ratfn_in, rational_roots, FactoredRatFn, MPoly, Rat, RatMatrix, UPoly,
};

const XYZ: [&str; 3] = ["x", "y", "z"];

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn mpoly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 3), small_rat()), 0..5)
        .prop_map(|terms| MPoly::from_terms(&XYZ, terms))
}

fn nonzero_mpoly() -> impl Strategy<Value = MPoly> {
    mpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn upoly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec(small_rat(), 0..5).prop_map(UPoly::new)
}

fn point() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(small_rat(), 3)
}

fn matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(small_rat(), n * n).prop_map(move |v| RatMatrix::new(n, n, v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in mpoly(), b in mpoly(), x in point()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn text_round_trip(a in mpoly()) {
        prop_assert_eq!(parse_poly_in(&a.to_string(), &XYZ).unwrap(), a);
    }

    #[test]
    fn exact_division(a in mpoly(), b in nonzero_mpoly()) {
        prop_assert_eq!((&a * &b).exact_div(&b), Some(a));
    }

    #[test]
    fn substitution_matches_evaluation(a in mpoly(), s in mpoly(), x in point()) {
        let sub = a.substitute(&[("x", s.clone())]).with_vars(&XYZ).unwrap();
        let mut y = x.clone();
        y[0] = s.eval(&x);
        prop_assert_eq!(sub.eval(&x), a.eval(&y));
    }

    #[test]
    fn homogenize_then_dehomogenize(a in mpoly()) {
        let xy = a.substitute(&[("z", MPoly::constant(&XYZ, Rat::one()))]).with_vars(&XYZ).unwrap();
        let h = xy.homogenize("z", xy.degree());
        prop_assert!(xy.is_zero() || h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize("z").with_vars(&XYZ).unwrap(), xy);
    }

    #[test]
    fn division_with_remainder(a in upoly(), b in upoly().prop_filter("nonzero", |b| !b.is_zero())) {
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides(a in upoly(), b in upoly(), c in upoly().prop_filter("nonzero", |c| !c.is_zero())) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = ac.gcd(&bc);
        prop_assume!(!g.is_zero());
        prop_assert!(ac.exact_div(&g).is_some());
        prop_assert!(bc.exact_div(&g).is_some());
        prop_assert!(g.exact_div(&c).is_some());
    }

    #[test]
    fn planted_roots_are_found(roots in prop::collection::vec((small_rat(), 1u32..=2), 1..4), k in nonzero_rat()) {
        let mut p = UPoly::constant(k);
        for (r, m) in &roots {
            p = &p * &UPoly::linear_root(r).pow(*m);
        }
        let found = rational_roots(&p).unwrap();
        for (r, _) in &roots {
            let total: u32 = roots.iter().filter(|(s, _)| s == r).map(|(_, m)| m).sum();
            let hit = found.roots.iter().find(|(s, _)| s == r);
            prop_assert_eq!(hit.map(|(_, m)| *m), Some(total));
        }
        prop_assert_eq!(found.cofactor_degree(), 0);
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        prop_assert_eq!(a.mul(&b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn inverse_and_nullspace(a in matrix(3)) {
        match a.inverse() {
            Some(inv) => {
                prop_assert_eq!(a.mul(&inv), RatMatrix::identity(3));
                prop_assert!(a.nullspace().is_empty());
            }
            None => {
                prop_assert!(a.det().unwrap().is_zero());
                let ns = a.nullspace();
                prop_assert_eq!(ns.len(), 3 - a.rank());
                for v in ns {
                    prop_assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
                }
            }
        }
    }

    #[test]
    fn rational_functions(a in mpoly(), f in nonzero_mpoly(), g in nonzero_mpoly(), x in point()) {
        let r = FactoredRatFn::new(a.clone(), vec![(f.clone(), 1)]).unwrap();
        let s = FactoredRatFn::new(MPoly::constant(&XYZ, Rat::one()), vec![(g.clone(), 2)]).unwrap();
        prop_assert!(r.add(&s).sub(&s).sub(&r).is_zero());
        let fx = f.eval(&x);
        let gx = g.eval(&x);
        prop_assume!(!fx.is_zero() && !gx.is_zero());
        let sum = r.add(&s).eval(&x).unwrap();
        prop_assert_eq!(sum, a.eval(&x) / fx + Rat::one() / (gx.clone() * gx));
        let back = parse_ratfn_in(&r.to_string(), &XYZ).unwrap();
        prop_assert!(back.sub(&r).is_zero());
    }
}
