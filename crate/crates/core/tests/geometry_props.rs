use num_traits::{One, Zero};
use proptest::prelude::*;

use posgeom::algebra::{parse_poly_in, Rat};
use posgeom::canonical::{
    canonical_form, canonical_form_simple, canonical_form_via_triangulation,
    canonical_form_via_triangulation_with_order, dual_volume_function, verify_positive_geometry,
};
use posgeom::forms::{parse_form, LinePoint, OneFormOnLine};
use posgeom::polypol::{canonical_form_polypol, polypol_from_polygon};
use posgeom::polytope::{chart_vars, normalized_volume, vertices_from_hrep, HRep, Polytope};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

/// Bounded polytopes containing the origin in their interior.
fn polytope(d: usize) -> impl Strategy<Value = Polytope> {
    (d + 1..=7)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(prop::collection::vec(-3i64..=3, d), n),
                prop::collection::vec((1i64..=5, 1i64..=3), n),
            )
        })
        .prop_filter_map("unbounded or degenerate", |(rows, z)| {
            let rows = rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| Rat::from_integer(x.into())).collect())
                .collect();
            let z = z.into_iter().map(|(n, d)| Rat::new(n.into(), d.into())).collect();
            vertices_from_hrep(HRep::from_rows(rows, z).ok()?).ok()
        })
}

fn simple_polytope(d: usize) -> impl Strategy<Value = Polytope> {
    polytope(d).prop_filter("not simple", Polytope::is_simple)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vertex_formula_matches_triangulation(p in simple_polytope(2)) {
        let a = canonical_form_simple(&p).unwrap();
        let b = canonical_form_via_triangulation(&p).unwrap();
        prop_assert!(a.coeff().sub(b.coeff()).is_zero());
    }

    #[test]
    fn triangulation_order_is_irrelevant(p in polytope(2), seed in any::<u64>()) {
        let n = p.vertices().len();
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left((seed as usize) % n);
        let a = canonical_form_via_triangulation(&p).unwrap();
        let b = canonical_form_via_triangulation_with_order(&p, &order).unwrap();
        prop_assert!(a.coeff().sub(b.coeff()).is_zero());
    }

    #[test]
    fn dual_volume_is_volume_of_the_polar(p in polytope(2)) {
        let f = dual_volume_function(&p).unwrap();
        let y = p.vertex_centroid();
        let direct = normalized_volume(&p.translate(&y).polar_dual().unwrap());
        prop_assert_eq!(f.eval(&y), Some(direct));
        let origin = vec![Rat::zero(); 2];
        prop_assert_eq!(f.eval(&origin), Some(normalized_volume(&p.polar_dual().unwrap())));
    }

    #[test]
    fn residue_recursion_holds(p in simple_polytope(2)) {
        prop_assert!(verify_positive_geometry(&p).unwrap().passed());
    }

    #[test]
    fn polygons_as_polypols(p in polytope(2)) {
        let q = polypol_from_polygon(&p).unwrap();
        let c = canonical_form_polypol(&q, &[]).unwrap();
        let w = canonical_form(&p).unwrap();
        let renamed = c.form.coeff().substitute(&[
            ("x", parse_poly_in("y1", &chart_vars(2)).unwrap()),
            ("y", parse_poly_in("y2", &chart_vars(2)).unwrap()),
        ]).unwrap();
        prop_assert!(renamed.with_vars(&chart_vars(2)).unwrap().sub(w.coeff()).is_zero());
    }

    #[test]
    fn segment_residues(a in small_rat(), len in 1i64..=9) {
        let b = a.clone() + Rat::from_integer(len.into());
        let w = OneFormOnLine::segment("t", &a, &b);
        prop_assert!(w.residue_at(&LinePoint::Finite(a.clone())).unwrap().is_one());
        prop_assert_eq!(w.residue_at(&LinePoint::Finite(b)).unwrap(), -Rat::one());
        prop_assert!(w.residue_at(&LinePoint::Infinity).unwrap().is_zero());
    }

    #[test]
    fn form_text_round_trip(p in polytope(2)) {
        let w = canonical_form(&p).unwrap().form;
        let back = parse_form(&w.to_string()).unwrap();
        prop_assert_eq!(back.vars(), w.vars());
        prop_assert!(back.coeff().sub(w.coeff()).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn three_dimensional_routes_agree(p in polytope(3)) {
        let a = canonical_form(&p).unwrap();
        let b = canonical_form_via_triangulation(&p).unwrap();
        prop_assert!(a.coeff().sub(b.coeff()).is_zero());
        if p.is_simple() {
            prop_assert!(verify_positive_geometry(&p).unwrap().passed());
        }
    }
}
