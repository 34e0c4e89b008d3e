use std::fmt;

use num_traits::{One, Signed, Zero};

use super::adjoint::{adjoint_curve, IrrationalIntersection};
use super::{validate_polypol, CurveData, PolypolError, QuasiRegularPolypol, XYZ};
use crate::algebra::{FactoredRatFn, MPoly, Rat, UPoly};
use crate::canonical::{StratumCheck, VerificationReport};
use crate::forms::{pullback_curve, CurveParam, LinePoint, OneFormOnLine, RatForm};
use crate::polytope::Polytope;

/// Affine chart coordinates used for polypol forms.
pub const CHART: [&str; 2] = ["x", "y"];

/// Residue of a form along one boundary curve pulled back to its parameter
/// line, and its ratio `gamma` to the segment form of `[a, b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentResidue {
    pub form: OneFormOnLine,
    pub gamma: Rat,
}

#[derive(Clone, Debug)]
pub struct PolypolCanonicalForm {
    pub form: RatForm,
    pub alpha: Rat,
    /// Homogeneous adjoint in `x, y, z`.
    pub adjoint: MPoly,
    pub gammas: Vec<Rat>,
}

impl fmt::Display for PolypolCanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

pub(crate) fn affine_curve(f: &MPoly, curve: usize) -> Result<MPoly, PolypolError> {
    let g = f.dehomogenize("z").with_vars(&CHART)?;
    if g.is_constant() {
        return Err(PolypolError::ChartDegenerate { curve });
    }
    Ok(g)
}

/// Pulls the residue of `omega` along curve `i` back to the parameter line
/// and compares it with the segment form of `[a, b]`.
pub fn segment_residue(
    omega: &RatForm,
    q: &QuasiRegularPolypol,
    i: usize,
) -> Result<SegmentResidue, PolypolError> {
    let curve = &q.polypol().curves()[i];
    let phi = curve
        .param()
        .ok_or(PolypolError::MissingParametrization { curve: i })?;
    let f = affine_curve(curve.f(), i)?;
    let eta = omega.residue_along_curve(&f)?;
    let form = pullback_curve(&eta, phi, "t")?;
    let (a, b) = &q.intervals()[i];
    let seg = OneFormOnLine::segment("t", a, b);
    let not_segment = |detail: String| PolypolError::ResidueNotLogSegmentForm { curve: i, detail };
    if form.is_zero() {
        return Err(not_segment("residue vanishes".into()));
    }
    if form.denominator() != seg.denominator() {
        return Err(not_segment(format!(
            "pullback {form} has poles away from {a} and {b}"
        )));
    }
    let num = form
        .numerator()
        .constant_value()
        .ok_or_else(|| not_segment(format!("pullback {form} has a nonconstant numerator")))?;
    let gamma = num / seg.numerator().coeff(0);
    Ok(SegmentResidue { form, gamma })
}

/// The canonical form `α · adj / (f₁ ⋯ f_r) dx ∧ dy` in the chart `z = 1`,
/// with `α` fixed so that every boundary residue is the segment form of its
/// interval.
pub fn canonical_form_polypol(
    q: &QuasiRegularPolypol,
    irrational: &[IrrationalIntersection],
) -> Result<PolypolCanonicalForm, PolypolError> {
    let p = q.polypol();
    let adjoint = adjoint_curve(p, irrational)?;
    let num = adjoint.dehomogenize("z").with_vars(&CHART)?;
    let factors = p
        .curves()
        .iter()
        .enumerate()
        .map(|(i, c)| Ok((affine_curve(c.f(), i)?, 1)))
        .collect::<Result<Vec<_>, PolypolError>>()?;
    let candidate = RatForm::new(&CHART, FactoredRatFn::new(num, factors)?)?;
    let mut gammas = Vec::new();
    for i in 0..p.num_curves() {
        let g = segment_residue(&candidate, q, i)?.gamma;
        if let Some(g0) = gammas.first() {
            if &g != g0 {
                return Err(PolypolError::GammaMismatch {
                    curve: i,
                    expected: Box::new(g0.clone()),
                    got: Box::new(g),
                });
            }
        }
        gammas.push(g);
    }
    let alpha = gammas[0].recip();
    Ok(PolypolCanonicalForm {
        form: candidate.scale(&alpha),
        alpha,
        adjoint,
        gammas,
    })
}

fn check(stratum: Vec<usize>, dim: usize, sign: i32, passed: bool, detail: String) -> StratumCheck {
    StratumCheck {
        stratum,
        dim,
        sign,
        passed,
        detail,
    }
}

/// Checks that `omega` has simple poles exactly along the boundary curves,
/// that its residue along each curve pulls back to the segment form of the
/// interval, and that the vertex residues are `+1` at `aᵢ` and `−1` at `bᵢ`,
/// so the two orders of taking residues at a vertex differ by a sign.
pub fn verify_polypol_geometry(
    q: &QuasiRegularPolypol,
    omega: &RatForm,
) -> Result<VerificationReport, PolypolError> {
    let p = q.polypol();
    let r = p.num_curves();
    let curves: Vec<MPoly> = p
        .curves()
        .iter()
        .enumerate()
        .map(|(i, c)| affine_curve(c.f(), i))
        .collect::<Result<_, _>>()?;
    let mut report = VerificationReport::default();
    let mut at_vertex: Vec<Vec<Rat>> = vec![Vec::new(); r];
    for (g, e) in omega.coeff().factors() {
        if !curves.iter().any(|f| g.scalar_multiple_of(f).is_some()) || *e != 1 {
            report.checks.push(check(
                Vec::new(),
                2,
                0,
                false,
                format!("pole of order {e} along {g}, which is not a simple boundary pole"),
            ));
        }
    }
    for (i, f) in curves.iter().enumerate() {
        let order = omega.pole_order(f)?;
        if order != 1 {
            report.checks.push(check(
                vec![i],
                1,
                1,
                false,
                format!("pole order {order} along {f}"),
            ));
            continue;
        }
        let (a, b) = &q.intervals()[i];
        let res = match segment_residue(omega, q, i) {
            Ok(res) => res,
            Err(e) => {
                report.checks.push(check(vec![i], 1, 1, false, e.to_string()));
                continue;
            }
        };
        let passed = res.gamma.is_one();
        report.checks.push(check(
            vec![i],
            1,
            1,
            passed,
            format!("residue along curve {i} is {} times the segment form", res.gamma),
        ));
        let prev = (i + r - 1) % r;
        let next = (i + 1) % r;
        for (t, other, vertex, expected) in [(a, prev, prev, 1i32), (b, next, i, -1i32)] {
            let value = res.form.residue_at(&LinePoint::Finite(t.clone()))?;
            at_vertex[vertex].push(value.clone());
            let passed = value == Rat::from_integer(expected.into());
            report.checks.push(check(
                vec![i, other],
                0,
                expected,
                passed,
                format!("residue at t = {t} is {value}, expected {expected}"),
            ));
        }
    }
    for (k, values) in at_vertex.iter().enumerate() {
        if let [u, v] = values.as_slice() {
            if !(u + v).is_zero() {
                report.checks.push(check(
                    vec![k, (k + 1) % r],
                    0,
                    0,
                    false,
                    format!("vertex residues {u} and {v} are not opposite"),
                ));
            }
        }
    }
    Ok(report)
}

/// A convex polygon as a polypol traversed counterclockwise, each edge
/// parametrized by arc direction `(u₂, −u₁)` starting at `t = 0`.
pub fn polypol_from_polygon(p: &Polytope) -> Result<QuasiRegularPolypol, PolypolError> {
    if p.dim() != 2 {
        return Err(PolypolError::NotPolygon(format!("dimension {}", p.dim())));
    }
    let n = p.num_facets();
    let h = p.hrep();
    let dir = |k: usize| [h.u().get(k, 1).clone(), -h.u().get(k, 0)];
    let dot = |v: &[Rat], d: &[Rat; 2]| &v[0] * &d[0] + &v[1] * &d[1];
    let ends = |k: usize| {
        let vs = p.facet_vertices(k);
        let d = dir(k);
        let (v, w) = (&p.vertices()[vs[0]], &p.vertices()[vs[1]]);
        if dot(v, &d) < dot(w, &d) {
            (vs[0], vs[1])
        } else {
            (vs[1], vs[0])
        }
    };
    let mut order = vec![0usize];
    while order.len() < n {
        let (_, end) = ends(*order.last().expect("nonempty"));
        let next = (0..n)
            .find(|&k| ends(k).0 == end)
            .ok_or_else(|| PolypolError::NotPolygon("boundary is not a cycle".into()))?;
        order.push(next);
    }
    let mut curves = Vec::new();
    let mut vertices = Vec::new();
    let mut intervals = Vec::new();
    for &k in &order {
        let (s, e) = ends(k);
        let d = dir(k);
        let (start, end) = (&p.vertices()[s], &p.vertices()[e]);
        let f = MPoly::linear(
            &XYZ,
            &[h.u().get(k, 0).clone(), h.u().get(k, 1).clone(), h.z()[k].clone()],
            &Rat::zero(),
        );
        let phi = CurveParam::new(
            UPoly::new(vec![start[0].clone(), d[0].clone()]),
            UPoly::new(vec![start[1].clone(), d[1].clone()]),
            UPoly::one(),
        );
        let len2 = dot(&d, &d);
        let diff = [&end[0] - &start[0], &end[1] - &start[1]];
        let b = dot(&diff, &d) / len2;
        debug_assert!(b.is_positive());
        curves.push(CurveData {
            f,
            param: Some(phi),
            nodes: Vec::new(),
        });
        vertices.push([end[0].clone(), end[1].clone(), Rat::one()]);
        intervals.push((Rat::zero(), b));
    }
    QuasiRegularPolypol::new(validate_polypol(curves, vertices)?, intervals)
}
