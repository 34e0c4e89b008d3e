//! Acceptance suite: runs criteria 1 to 10 and prints one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posgeom::algebra::{int, parse_poly_in, parse_ratfn_in, rat, MPoly, Rat, RatMatrix, UPoly};
use posgeom::canonical::{
    adjoint_through_residual_points, canonical_form, canonical_form_in, canonical_form_simple,
    canonical_form_via_triangulation, default_facet_names, dual_volume_function, homogeneous_vars,
    simplex_hrep, toric_amplitude, universal_adjoint, verify_positive_geometry, warren_adjoint,
    CanonicalError,
};
use posgeom::fixtures;
use posgeom::forms::{
    parse_form, pullback_curve, CurveParam, LinePoint, OneFormOnLine, PlaneOneForm, RatForm,
};
use posgeom::polypol::{
    adjoint_curve, canonical_form_polypol, polypol_from_polygon, residual_arrangement, validate_polypol,
    verify_polypol_geometry, CurveData, IrrationalIntersection, PolypolError, QuasiRegularPolypol, XYZ,
};
use posgeom::polytope::{chart_vars, normalized_volume, vertices_from_hrep, HRep, Polytope, Simplex};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

fn pentagon_canonical_form() -> Check {
    let p = fixtures::pentagon();
    let r = canonical_form(&p).map_err(e)?;
    let vars = chart_vars(2);
    let num = parse_poly_in("5 - 3*y1 + 3*y2 - y1*y2", &vars).map_err(e)?;
    ensure!(r.numerator == num, "numerator is {}", r.numerator);
    let mut expected: Vec<MPoly> = ["1 + y1", "1 + y2", "1 - y1 + y2", "1 - y1", "1 - y2"]
        .iter()
        .map(|s| parse_poly_in(s, &vars).unwrap())
        .collect();
    ensure!(
        r.denominator_factors.len() == 5,
        "{} factors",
        r.denominator_factors.len()
    );
    for f in &r.denominator_factors {
        let k = expected
            .iter()
            .position(|g| g == f)
            .ok_or(format!("unexpected factor {f}"))?;
        expected.remove(k);
    }
    Ok(format!("numerator {num}"))
}

fn pentagon_dual_volume() -> Check {
    let p = fixtures::pentagon();
    let dv = dual_volume_function(&p).map_err(e)?;
    let at0 = dv.eval(&[int(0), int(0)]).ok_or("pole at 0")?;
    ensure!(at0 == int(5), "dual volume at 0 is {at0}");
    let direct = normalized_volume(&p.polar_dual().map_err(e)?);
    ensure!(
        direct == int(5),
        "normalized volume of the polar dual is {direct}"
    );
    let vertex_formula = canonical_form_simple(&p).map_err(e)?;
    let lhs = dv.numerator() * &vertex_formula.coeff().denominator();
    let rhs = vertex_formula.coeff().numerator() * &dv.denominator();
    ensure!(lhs == rhs, "cross-multiplied identity fails");
    Ok("vol(P°) = 5, dual volume function equals the vertex formula".into())
}

fn pentagon_amplitude_and_adjoints() -> Check {
    let p = fixtures::pentagon();
    let names = fixtures::pentagon_names();
    let amp = toric_amplitude(&p, &names).map_err(e)?;
    ensure!(amp.vertex_terms.len() == 5, "{} terms", amp.vertex_terms.len());
    let expected = parse_ratfn_in(
        "1/(x13*x14) + 1/(x14*x24) + 1/(x24*x25) + 1/(x25*x35) + 1/(x13*x35)",
        &names,
    )
    .map_err(e)?;
    ensure!(amp.to_ratfn() == expected, "amplitude is {amp}");
    let segre = parse_poly_in(
        "x24*x25*x35 + x13*x25*x35 + x13*x14*x35 + x13*x14*x24 + x14*x24*x25",
        &names,
    )
    .map_err(e)?;
    let adj = universal_adjoint(&p, &names).map_err(e)?.polynomial;
    ensure!(adj == segre, "universal adjoint is {adj}");
    let hv = homogeneous_vars(2);
    let h = p.hrep();
    let subs: Vec<(&str, MPoly)> = (0..5)
        .map(|i| {
            let mut c = vec![h.z()[i].clone()];
            c.extend_from_slice(h.u().row(i));
            (names[i].as_str(), MPoly::linear(&hv, &c, &Rat::zero()))
        })
        .collect();
    let substituted = adj.substitute(&subs).with_vars(&hv).map_err(e)?;
    let target = parse_poly_in("y0*(5*y0^2 - 3*y0*y1 + 3*y0*y2 - y1*y2)", &hv).map_err(e)?;
    ensure!(substituted == target, "substitution gives {substituted}");
    let warren = warren_adjoint(&p).map_err(e)?.polynomial;
    ensure!(
        warren.exact_div(&parse_poly_in("y0", &hv).unwrap()).is_none(),
        "Warren adjoint divisible by y0"
    );
    ensure!(
        &warren * &parse_poly_in("y0", &hv).unwrap() == target,
        "Warren adjoint is {warren}"
    );
    Ok(format!("Amp = {amp}"))
}

fn quadrilateral() -> Check {
    let q = fixtures::quadrilateral();
    let omega = canonical_form_in(&q, &xy()).map_err(e)?;
    let expected =
        parse_ratfn_in("(-18 + x + 12*y)/(x*(y - 1)*(x + 2*y - 3)*(x - 3*y - 3))", &xy()).map_err(e)?;
    if omega.coeff() == &expected {
        Ok("orientation sign +1".into())
    } else if omega.coeff() == &expected.neg() {
        Ok("orientation sign -1".into())
    } else {
        Err(format!("canonical form is {}", omega.form))
    }
}

fn associahedron() -> Check {
    let a = fixtures::associahedron();
    ensure!(a.vertices().len() == 14, "{} vertices", a.vertices().len());
    let report = verify_positive_geometry(&a).map_err(e)?;
    ensure!(report.passed(), "{:?}", report.first_failure());
    let counts = (
        report.strata(2).len(),
        report.strata(1).len(),
        report.strata(0).len(),
    );
    ensure!(counts == (9, 21, 14), "strata {counts:?}");
    let amp = toric_amplitude(&a, &default_facet_names(9)).map_err(e)?;
    ensure!(
        amp.vertex_terms.len() == 14,
        "{} amplitude terms",
        amp.vertex_terms.len()
    );
    Ok("14 vertices, 9/21/14 strata verified, 14 amplitude terms".into())
}

fn pyramid_triangulation() -> Check {
    let p = fixtures::pyramid();
    let vars = chart_vars(3);
    let v = |x: i64, y: i64, z: i64| vec![int(x), int(y), int(z)];
    let tets = [
        vec![v(0, 0, 1), v(1, 1, 0), v(-1, 1, 0), v(-1, -1, 0)],
        vec![v(0, 0, 1), v(1, 1, 0), v(-1, -1, 0), v(1, -1, 0)],
    ];
    let mut sum: Option<RatForm> = None;
    for t in tets {
        let s = Simplex::new(t).ok_or("degenerate tetrahedron")?;
        let tp = vertices_from_hrep(simplex_hrep(&s).map_err(e)?).map_err(e)?;
        let w = canonical_form_in(&tp, &vars).map_err(e)?.form;
        sum = Some(match sum {
            None => w,
            Some(acc) => acc.add(&w).map_err(e)?,
        });
    }
    let sum = sum.expect("two tetrahedra");
    let facets = p.hrep().facet_forms(&vars);
    for f in &facets {
        let k = sum.pole_order(f).map_err(e)?;
        ensure!(k == 1, "pole order {k} along facet {f}");
    }
    let wall = parse_poly_in("y1 - y2", &vars).map_err(e)?;
    let k = sum.pole_order(&wall).map_err(e)?;
    ensure!(k <= 0, "internal wall still has a pole of order {k}");
    for (g, _) in sum.coeff().factors() {
        if sum.pole_order(g).map_err(e)? > 0 {
            ensure!(
                facets.iter().any(|f| g.scalar_multiple_of(f).is_some()),
                "extra pole along {g}"
            );
        }
    }
    let dv = dual_volume_function(&p).map_err(e)?;
    ensure!(sum.coeff() == &dv, "sum differs from the dual volume function");
    let pulled = canonical_form_via_triangulation(&p).map_err(e)?;
    ensure!(pulled.coeff() == &dv, "pulling triangulation differs");
    Ok("5 facet poles, wall cancels, equals dual volume".into())
}

fn residues() -> Check {
    let w1 = parse_form("1/(x*y) dx^dy").map_err(e)?;
    let w2 = parse_form("1/(x*(y - x)) dx^dy").map_err(e)?;
    let x = parse_poly_in("x", &xy()).map_err(e)?;
    let y = parse_poly_in("y", &xy()).map_err(e)?;
    let minus_dy_y = parse_form("-1/y dy").map_err(e)?;
    let dx_x = parse_form("1/x dx").map_err(e)?;
    let r1 = w1.residue_along_linear(&x).map_err(e)?.form;
    let r2 = w2.residue_along_linear(&x).map_err(e)?.form;
    let r3 = w1.residue_along_linear(&y).map_err(e)?.form;
    ensure!(
        r1.coeff() == minus_dy_y.coeff() && r1.vars() == minus_dy_y.vars(),
        "Res_x 1/(xy) = {r1}"
    );
    ensure!(
        r2.coeff() == minus_dy_y.coeff() && r2.vars() == minus_dy_y.vars(),
        "Res_x 1/(x(y-x)) = {r2}"
    );
    ensure!(
        r3.coeff() == dx_x.coeff() && r3.vars() == dx_x.vars(),
        "Res_y 1/(xy) = {r3}"
    );

    for (a, b) in [(int(0), int(1)), (rat(-2, 3), int(5))] {
        let seg = OneFormOnLine::segment("x", &a, &b);
        let ra = seg.residue_at(&LinePoint::Finite(a.clone())).map_err(e)?;
        let rb = seg.residue_at(&LinePoint::Finite(b.clone())).map_err(e)?;
        ensure!(ra.is_one() && rb == -Rat::one(), "segment residues {ra}, {rb}");
        let w = parse_form(&format!("({b} - ({a}))/((x - ({a}))*(({b}) - x)) dx")).map_err(e)?;
        let vx = |c: &Rat| parse_poly_in(&format!("x - ({c})"), &["x"]).unwrap();
        let fa = w.residue_along_linear(&vx(&a)).map_err(e)?.form;
        let fb = w.residue_along_linear(&vx(&b)).map_err(e)?.form;
        ensure!(fa.coeff().eval(&[]) == Some(int(1)), "Res_a = {fa}");
        ensure!(fb.coeff().eval(&[]) == Some(int(-1)), "Res_b = {fb}");
    }

    let target = OneFormOnLine::new("t", UPoly::one(), UPoly::new(vec![int(0), int(-1), int(1)]));
    let circle = CurveParam::new(
        UPoly::new(vec![int(0), int(2)]),
        UPoly::new(vec![int(1), int(0), int(-1)]),
        UPoly::new(vec![int(1), int(0), int(1)]),
    );
    let eta =
        PlaneOneForm::new(&xy(), parse_ratfn_in("1/((1 - x - y)*y)", &xy()).map_err(e)?, "x").map_err(e)?;
    let pb = pullback_curve(&eta, &circle, "t").map_err(e)?;
    ensure!(pb == target, "circle pullback is {pb}");

    let cusp_form = RatForm::new(
        &xy(),
        parse_ratfn_in("(x^2 + y^2 + x*y + x)/((y - x^2)*(x^2 - y^3))", &xy()).map_err(e)?,
    )
    .map_err(e)?;
    let cubic = parse_poly_in("x^2 - y^3", &xy()).map_err(e)?;
    let eta = cusp_form.residue_along_curve(&cubic).map_err(e)?;
    let cusp = CurveParam::new(
        UPoly::new(vec![int(0), int(0), int(0), int(1)]),
        UPoly::new(vec![int(0), int(0), int(1)]),
        UPoly::one(),
    );
    let pb = pullback_curve(&eta, &cusp, "t").map_err(e)?;
    ensure!(pb == target, "cusp pullback is {pb}");
    Ok("Res goldens, segment residues ±1, circle and cusp pullbacks 1/(t(t-1)) dt".into())
}

fn pizza() -> Check {
    let q = fixtures::pizza();
    let arr = residual_arrangement(q.polypol(), &[]).map_err(e)?;
    let mut pts: Vec<Vec<Rat>> = arr.points.iter().map(|r| r.point.to_vec()).collect();
    pts.sort();
    let expected = vec![vec![int(-1), int(0), int(1)], vec![int(0), int(-1), int(1)]];
    ensure!(pts == expected, "residual points {pts:?}");
    let adj = adjoint_curve(q.polypol(), &[]).map_err(e)?;
    ensure!(adj == parse_poly_in("x + y + z", &XYZ).unwrap(), "adjoint {adj}");
    let c = canonical_form_polypol(&q, &[]).map_err(e)?;
    ensure!(c.alpha.is_one(), "alpha = {}", c.alpha);
    let eq3 = parse_ratfn_in("(1 + x + y)/(x*y*(1 - x^2 - y^2))", &xy()).map_err(e)?;
    ensure!(c.form.coeff() == &eq3, "canonical form {}", c.form);
    let report = verify_polypol_geometry(&q, &c.form).map_err(e)?;
    ensure!(report.passed(), "{:?}", report.first_failure());
    let vertex_checks: Vec<_> = report.checks.iter().filter(|c| c.dim == 0).collect();
    ensure!(
        vertex_checks.len() == 6,
        "{} vertex residues",
        vertex_checks.len()
    );
    ensure!(
        vertex_checks.iter().all(|c| c.sign.abs() == 1),
        "vertex residue not ±1"
    );

    let curve = |f: &str, p: [&str; 3]| CurveData {
        f: parse_poly_in(f, &XYZ).unwrap(),
        param: Some(CurveParam::new(up(p[0]), up(p[1]), up(p[2]))),
        nodes: vec![],
    };
    let original = validate_polypol(
        vec![
            curve("y", ["t", "0", "1"]),
            curve("x", ["0", "t", "1"]),
            curve("z^2 - x^2 - y^2", ["1 - t^2", "2*t", "1 + t^2"]),
        ],
        vec![
            [int(0), int(0), int(1)],
            [int(0), int(1), int(1)],
            [int(1), int(0), int(1)],
        ],
    );
    ensure!(
        original.is_ok(),
        "clockwise labelling rejected: {:?}",
        original.err()
    );
    Ok("residual {(-1:0:1), (0:-1:1)}, adjoint x+y+z, alpha 1, verified".into())
}

fn up(s: &str) -> UPoly {
    parse_poly_in(s, &["t"]).unwrap().to_upoly().unwrap()
}

fn random_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    rat(rng.random_range(lo..=hi), rng.random_range(1..=3))
}

fn random_simple_polytope(rng: &mut ChaCha8Rng, d: usize) -> Polytope {
    loop {
        let n = rng.random_range(d + 1..=8);
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..d).map(|_| int(rng.random_range(-3..=3))).collect())
            .collect();
        let z: Vec<Rat> = (0..n)
            .map(|_| rat(rng.random_range(1..=6), rng.random_range(1..=3)))
            .collect();
        let Ok(h) = HRep::from_rows(rows, z) else { continue };
        if let Ok(p) = vertices_from_hrep(h) {
            if p.is_simple() {
                return p;
            }
        }
    }
}

fn compose(p: &UPoly) -> UPoly {
    let s = UPoly::new(vec![int(1), int(2)]);
    p.coeffs()
        .iter()
        .rev()
        .fold(UPoly::zero(), |acc, c| &(&acc * &s) + &UPoly::constant(c.clone()))
}

fn reparametrize(q: &QuasiRegularPolypol) -> Result<QuasiRegularPolypol, String> {
    let curves = q
        .polypol()
        .curves()
        .iter()
        .map(|c| {
            let [r, s2, h] = c.param().expect("parametrized").coords();
            CurveData {
                f: c.f().clone(),
                param: Some(CurveParam::new(compose(r), compose(s2), compose(h))),
                nodes: c.nodes().to_vec(),
            }
        })
        .collect();
    let half = rat(1, 2);
    let intervals = q
        .intervals()
        .iter()
        .map(|(a, b)| ((a - int(1)) * &half, (b - int(1)) * &half))
        .collect();
    let p = validate_polypol(curves, q.polypol().vertices().to_vec()).map_err(e)?;
    QuasiRegularPolypol::new(p, intervals).map_err(e)
}

fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> RatMatrix {
    let mut m = RatMatrix::identity(d);
    for _ in 0..4 {
        let i = rng.random_range(0..d);
        let j = (i + rng.random_range(1..d)) % d;
        let k = int(rng.random_range(-2..=2));
        let mut el = RatMatrix::identity(d);
        el.set(i, j, k);
        m = m.mul(&el);
    }
    if rng.random_bool(0.5) {
        let mut flip = RatMatrix::identity(d);
        flip.set(0, 0, int(-1));
        m = m.mul(&flip);
    }
    m
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_917);

    for k in 0..25 {
        let d = if k % 2 == 0 { 2 } else { 3 };
        let p = random_simple_polytope(&mut rng, d);
        let report = verify_positive_geometry(&p).map_err(e)?;
        ensure!(
            report.passed(),
            "(a) polytope {k} fails: {:?}",
            report.first_failure()
        );
    }

    let simple: Vec<(&str, Polytope)> = fixtures::all_polytopes()
        .into_iter()
        .filter(|(_, p)| p.is_simple())
        .collect();
    for (name, p) in &simple {
        let adj = universal_adjoint(p, &default_facet_names(p.num_facets()))
            .map_err(e)?
            .polynomial;
        for _ in 0..20 {
            let y: Vec<Rat> = (0..p.dim()).map(|_| random_rat(&mut rng, -9, 9)).collect();
            let x = p.hrep().u().mul_vec(&y);
            ensure!(adj.eval(&x).is_zero(), "(b) Adj(U·y) ≠ 0 for {name}");
        }
    }

    let mut polypols = fixtures::all_quasi_regular();
    for (name, p) in &simple {
        if p.dim() == 2 {
            polypols.push((name, polypol_from_polygon(p).map_err(e)?, vec![]));
        }
    }
    for (name, q, irr) in &polypols {
        let c = canonical_form_polypol(q, irr).map_err(e)?;
        ensure!(
            c.gammas.iter().all(|g| g == &c.gammas[0]),
            "(c) gammas differ for {name}"
        );
        let r = reparametrize(q)?;
        let c2 = canonical_form_polypol(&r, &reparametrize_irrational(irr)).map_err(e)?;
        ensure!(
            c2.form.coeff() == c.form.coeff(),
            "(c) reparametrization changes the form of {name}"
        );
    }

    let pool = fixtures::all_polytopes();
    for k in 0..10 {
        let (name, p) = &pool[k % pool.len()];
        let d = p.dim();
        let a = random_unimodular(&mut rng, d);
        let b: Vec<Rat> = (0..d).map(|_| random_rat(&mut rng, -4, 4)).collect();
        let vars = chart_vars(d);
        let image = p.affine_image(&a, &b).map_err(e)?;
        let w_image = canonical_form_in(&image, &vars).map_err(e)?.form;
        let pulled = w_image.pullback_affine(&vars, &a, &b).map_err(e)?;
        let det = a.det().map_err(e)?;
        let w = canonical_form_in(p, &vars).map_err(e)?.form.scale(&det.signum());
        ensure!(pulled.coeff() == w.coeff(), "(d) equivariance fails for {name}");
    }

    for (name, p) in &pool {
        let centred = p.translate(&p.vertex_centroid());
        let dd = centred.polar_dual().map_err(e)?.polar_dual().map_err(e)?;
        ensure!(dd.vertices() == centred.vertices(), "(e) P°° ≠ P for {name}");
    }
    Ok(format!(
        "(a) 25 random, (b) {} fixtures, (c) {} polypols, (d) 10 transforms, (e) {} duals",
        simple.len(),
        polypols.len(),
        pool.len()
    ))
}

fn reparametrize_irrational(irr: &[IrrationalIntersection]) -> Vec<IrrationalIntersection> {
    irr.iter()
        .map(|x| IrrationalIntersection {
            min_poly: compose(&x.min_poly),
            ..x.clone()
        })
        .collect()
}

fn negatives() -> Check {
    let r = adjoint_curve(&fixtures::elliptic(), &[]);
    ensure!(
        matches!(r, Err(PolypolError::KernelDimensionNot1(_))),
        "elliptic: {r:?}"
    );
    let r = adjoint_through_residual_points(&fixtures::cube());
    ensure!(
        matches!(r, Err(CanonicalError::ArrangementNotSimple(_))),
        "cube: {:?}",
        r.map(|p| p.to_string())
    );
    let curve = |f: &str| CurveData {
        f: parse_poly_in(f, &XYZ).unwrap(),
        param: None,
        nodes: vec![],
    };
    let mut circle = curve("z^2 - x^2 - y^2");
    circle.param = Some(CurveParam::new(up("1 - t^2"), up("2*t"), up("1 + t^2")));
    let r = validate_polypol(
        vec![curve("x - z"), circle, curve("x")],
        vec![
            [int(1), int(0), int(1)],
            [int(0), int(1), int(1)],
            [int(0), int(1), int(0)],
        ],
    );
    ensure!(
        r == Err(PolypolError::NotTransversal { vertex: 0 }),
        "tangent vertex: {r:?}"
    );
    Ok("KernelDimensionNot1, ArrangementNotSimple, NotTransversal".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("pentagon canonical form", pentagon_canonical_form),
        ("pentagon dual volume", pentagon_dual_volume),
        ("pentagon amplitude and adjoints", pentagon_amplitude_and_adjoints),
        ("quadrilateral canonical form", quadrilateral),
        ("3D associahedron", associahedron),
        ("pyramid triangulation", pyramid_triangulation),
        ("residue goldens", residues),
        ("pizza polypol", pizza),
        ("property suites", properties),
        ("negative tests", negatives),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
