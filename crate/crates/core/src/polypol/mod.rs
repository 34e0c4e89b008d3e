//! Plane polypols: boundary curves with rational parametrizations, marked
//! vertices, residual arrangements, adjoint curves and normalized canonical
//! forms.
//!
//! Curves are homogeneous polynomials in `x, y, z`; points are homogeneous
//! rational triples. Curve `i` joins vertex `i − 1` to vertex `i`, where
//! vertex `i` is `v_{i,i+1}` (indices cyclic).

mod adjoint;
mod canonical;

pub use adjoint::{
    adjoint_curve, adjoint_from_arrangement, residual_arrangement, IrrationalIntersection,
    ResidualArrangementP, ResidualKind, ResidualPoint,
};
pub use canonical::{
    canonical_form_polypol, polypol_from_polygon, segment_residue, verify_polypol_geometry,
    PolypolCanonicalForm, SegmentResidue,
};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, MPoly, Rat, RatMatrix, UPoly};
use crate::forms::{CurveParam, FormError};

/// Homogeneous coordinate names.
pub const XYZ: [&str; 3] = ["x", "y", "z"];

pub type Point = [Rat; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolypolError {
    #[error("a polypol needs at least two curves")]
    TooFewCurves,
    #[error("expected {expected} vertices, got {got}")]
    VertexCount { expected: usize, got: usize },
    #[error("curve {curve} is not a nonzero homogeneous polynomial in x, y, z")]
    NotHomogeneous { curve: usize },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("vertex {vertex} does not lie on both of its curves")]
    VertexNotOnCurves { vertex: usize },
    #[error("vertex {vertex} also lies on curve {curve}")]
    VertexOnThirdCurve { vertex: usize, curve: usize },
    #[error("vertex {vertex} is a singular point of curve {curve}")]
    VertexSingular { vertex: usize, curve: usize },
    #[error("curves meet tangentially at vertex {vertex}")]
    NotTransversal { vertex: usize },
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("parametrization of curve {curve} is inconsistent: {reason}")]
    ParamInconsistent { curve: usize, reason: String },
    #[error("curve {curve} has no parametrization")]
    MissingParametrization { curve: usize },
    #[error("declared node of curve {curve} is invalid: {reason}")]
    InvalidNode { curve: usize, reason: String },
    #[error("curve union is not nodal: {0}")]
    NotNodal(String),
    #[error("curves {0} and {1} coincide")]
    DuplicateCurve(usize, usize),
    #[error("curves {curves:?} meet in {degree} points with irrational parameters not covered by supplied conditions")]
    IrrationalIntersection { curves: (usize, usize), degree: usize },
    #[error(
        "supplied irrational intersection for curves {curves:?} does not divide the intersection polynomial"
    )]
    IrrationalMismatch { curves: (usize, usize) },
    #[error("adjoint interpolation kernel has dimension {0}, expected 1")]
    KernelDimensionNot1(usize),
    #[error("adjoint curve contains curve {curve}")]
    AdjointContainsBoundary { curve: usize },
    #[error("adjoint curve passes through vertex {vertex}")]
    AdjointVanishesAtVertex { vertex: usize },
    #[error("total degree {0} is below 3")]
    DegreeTooSmall(u32),
    #[error("curve {curve} is the line at infinity of the chart z = 1")]
    ChartDegenerate { curve: usize },
    #[error("interval for curve {curve} does not match its vertices: {reason}")]
    IntervalMismatch { curve: usize, reason: String },
    #[error("segment of curve {curve} passes through a node")]
    SegmentThroughNode { curve: usize },
    #[error("residue along curve {curve} is not a segment form: {detail}")]
    ResidueNotLogSegmentForm { curve: usize, detail: String },
    #[error("gamma of curve {curve} is {got}, expected {expected}")]
    GammaMismatch {
        curve: usize,
        expected: Box<Rat>,
        got: Box<Rat>,
    },
    #[error("not a polygon: {0}")]
    NotPolygon(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub(crate) fn cross(a: &[Rat], b: &[Rat]) -> Point {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub(crate) fn proportional(a: &[Rat], b: &[Rat]) -> bool {
    cross(a, b).iter().all(Zero::is_zero)
}

/// Scales so that the last nonzero coordinate is 1.
pub fn normalize_point(p: &[Rat]) -> Result<Point, PolypolError> {
    let c = p
        .iter()
        .rev()
        .find(|x| !x.is_zero())
        .ok_or(PolypolError::ZeroPoint)?
        .clone();
    Ok([&p[0] / &c, &p[1] / &c, &p[2] / &c])
}

fn gradient(f: &MPoly) -> [MPoly; 3] {
    [f.derivative("x"), f.derivative("y"), f.derivative("z")]
}

fn eval_grad(f: &MPoly, p: &[Rat]) -> Point {
    let g = gradient(f);
    [g[0].eval(p), g[1].eval(p), g[2].eval(p)]
}

/// Parameter values mapping to `q`, as (rational roots, whether `∞` maps to `q`).
pub(crate) fn preimages(phi: &CurveParam, q: &[Rat]) -> (Vec<(Rat, u32)>, UPoly, bool) {
    let [r, s, h] = phi.coords();
    let comps = [
        &s.scale(&q[2]) - &h.scale(&q[1]),
        &h.scale(&q[0]) - &r.scale(&q[2]),
        &r.scale(&q[1]) - &s.scale(&q[0]),
    ];
    let g = comps.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c));
    let at_inf = proportional(&phi.point_at_infinity(), q);
    if g.is_zero() {
        return (Vec::new(), g, at_inf);
    }
    let roots = crate::algebra::rational_roots(&g).expect("nonzero");
    (roots.roots, g, at_inf)
}

/// An irreducible plane curve `f = 0`, optionally with a birational
/// parametrization and its declared nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    f: MPoly,
    param: Option<CurveParam>,
    nodes: Vec<Point>,
}

impl PlaneCurve {
    /// Validates homogeneity, the parametrization (`f(φ) ≡ 0`, coprime
    /// coordinates, degree `deg f`, generically injective) and each node
    /// (on the curve, vanishing gradient, nondegenerate Hessian). For a
    /// parametrized curve the number of nodes must be `(n−1)(n−2)/2`, which
    /// certifies that the curve has no other singularities.
    pub fn new(f: MPoly, param: Option<CurveParam>, nodes: Vec<Point>) -> Result<PlaneCurve, PolypolError> {
        Self::validated(f, param, nodes, 0)
    }

    pub(crate) fn validated(
        f: MPoly,
        param: Option<CurveParam>,
        nodes: Vec<Point>,
        idx: usize,
    ) -> Result<PlaneCurve, PolypolError> {
        let f = f
            .with_vars(&XYZ)
            .map_err(|_| PolypolError::NotHomogeneous { curve: idx })?;
        if f.is_zero() || f.is_constant() || !f.is_homogeneous() {
            return Err(PolypolError::NotHomogeneous { curve: idx });
        }
        let n = f.degree();
        let param = match param {
            None if n == 1 => Some(line_param(&f)),
            other => other,
        };
        let bad = |reason: &str| PolypolError::ParamInconsistent {
            curve: idx,
            reason: reason.to_string(),
        };
        if let Some(phi) = &param {
            let [r, s, h] = phi.coords();
            let g = r.gcd(s).gcd(h);
            if g.degree().unwrap_or(0) > 0 {
                return Err(bad("coordinates share a common factor"));
            }
            if phi.degree() != n as usize {
                return Err(bad("parametrization degree differs from the curve degree"));
            }
            if !f.eval_upoly(&[r.clone(), s.clone(), h.clone()]).is_zero() {
                return Err(bad("f(r(t), s(t), h(t)) is not identically zero"));
            }
            if !is_birational(phi) {
                return Err(bad("parametrization is not generically injective"));
            }
        }
        let mut normalized = Vec::new();
        for q in nodes {
            let q = normalize_point(&q)?;
            check_node(&f, &q).map_err(|reason| PolypolError::InvalidNode { curve: idx, reason })?;
            if normalized.contains(&q) {
                return Err(PolypolError::InvalidNode {
                    curve: idx,
                    reason: "node listed twice".into(),
                });
            }
            normalized.push(q);
        }
        if param.is_some() {
            let expected = ((n - 1) * (n.saturating_sub(2)) / 2) as usize;
            if normalized.len() != expected {
                return Err(PolypolError::InvalidNode {
                    curve: idx,
                    reason: format!(
                        "a rational nodal curve of degree {n} has {expected} nodes, {} declared",
                        normalized.len()
                    ),
                });
            }
        }
        Ok(PlaneCurve {
            f,
            param,
            nodes: normalized,
        })
    }

    /// The line `a·x + b·y + c·z = 0` with a parametrization of degree 1.
    pub fn line(a: Rat, b: Rat, c: Rat) -> Result<PlaneCurve, PolypolError> {
        let f = MPoly::linear(&XYZ, &[a, b, c], &Rat::zero());
        PlaneCurve::new(f, None, Vec::new())
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn param(&self) -> Option<&CurveParam> {
        self.param.as_ref()
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.f.eval(p).is_zero()
    }

    pub fn is_smooth_at(&self, p: &[Rat]) -> bool {
        eval_grad(&self.f, p).iter().any(|x| !x.is_zero())
    }

    fn transformed(&self, m: &RatMatrix, minv: &RatMatrix) -> PlaneCurve {
        let subs: Vec<(&str, MPoly)> = (0..3)
            .map(|k| (XYZ[k], MPoly::linear(&XYZ, minv.row(k), &Rat::zero())))
            .collect();
        let f = self.f.substitute(&subs).with_vars(&XYZ).expect("same variables");
        let param = self.param.as_ref().map(|phi| {
            let c = phi.coords();
            let row = |k: usize| (0..3).fold(UPoly::zero(), |acc, l| &acc + &c[l].scale(m.get(k, l)));
            CurveParam::new(row(0), row(1), row(2))
        });
        let nodes = self
            .nodes
            .iter()
            .map(|q| normalize_point(&m.mul_vec(q)).expect("invertible"))
            .collect();
        PlaneCurve { f, param, nodes }
    }
}

/// `t ↦ p + t·q` for a basis `p, q` of the line's kernel.
fn line_param(f: &MPoly) -> CurveParam {
    let normal: Vec<Rat> = (0..3)
        .map(|k| {
            let mut e = vec![0; 3];
            e[k] = 1;
            f.coeff(&e)
        })
        .collect();
    let kernel = RatMatrix::from_rows(vec![normal], 3)
        .expect("width 3")
        .nullspace();
    let coord = |i: usize| UPoly::new(vec![kernel[0][i].clone(), kernel[1][i].clone()]);
    CurveParam::new(coord(0), coord(1), coord(2))
}

fn is_birational(phi: &CurveParam) -> bool {
    let candidates = [0i64, 1, -1, 2, -2, 3, 5, -7, 11, 13];
    candidates.iter().any(|&t0| {
        let t0 = Rat::from_integer(t0.into());
        let q = phi.point_at(&t0);
        let (_, g, at_inf) = preimages(phi, &q);
        !at_inf && g.degree() == Some(1)
    })
}

fn check_node(f: &MPoly, q: &Point) -> Result<(), String> {
    if !f.eval(q).is_zero() {
        return Err("point is not on the curve".into());
    }
    if eval_grad(f, q).iter().any(|x| !x.is_zero()) {
        return Err("gradient does not vanish".into());
    }
    let k = (0..3).rev().find(|&k| !q[k].is_zero()).expect("normalized");
    let chart: Vec<&str> = (0..3).filter(|&i| i != k).map(|i| XYZ[i]).collect();
    let g = f.dehomogenize(XYZ[k]).with_vars(&chart).expect("subset");
    let point: Vec<Rat> = (0..3).filter(|&i| i != k).map(|i| &q[i] / &q[k]).collect();
    let h = |a: &str, b: &str| g.derivative(a).derivative(b).eval(&point);
    let det = h(chart[0], chart[0]) * h(chart[1], chart[1]) - h(chart[0], chart[1]).pow(2);
    if det.is_zero() {
        return Err("Hessian is degenerate; the singularity is not a node".into());
    }
    Ok(())
}

/// Curves `Y₁, …, Y_r` and vertices `v_{12}, …, v_{r1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polypol {
    curves: Vec<PlaneCurve>,
    vertices: Vec<Point>,
}

/// Raw curve data before validation.
#[derive(Clone, Debug)]
pub struct CurveData {
    pub f: MPoly,
    pub param: Option<CurveParam>,
    pub nodes: Vec<Point>,
}

/// Checks every condition of a polypol exactly.
pub fn validate_polypol(curves: Vec<CurveData>, vertices: Vec<Point>) -> Result<Polypol, PolypolError> {
    let r = curves.len();
    if r < 2 {
        return Err(PolypolError::TooFewCurves);
    }
    if vertices.len() != r {
        return Err(PolypolError::VertexCount {
            expected: r,
            got: vertices.len(),
        });
    }
    let curves: Vec<PlaneCurve> = curves
        .into_iter()
        .enumerate()
        .map(|(i, c)| PlaneCurve::validated(c.f, c.param, c.nodes, i))
        .collect::<Result<_, _>>()?;
    for i in 0..r {
        for j in i + 1..r {
            if curves[i].f.scalar_multiple_of(&curves[j].f).is_some() {
                return Err(PolypolError::DuplicateCurve(i, j));
            }
        }
    }
    let vertices: Vec<Point> = vertices
        .iter()
        .map(|v| normalize_point(v))
        .collect::<Result<_, _>>()?;
    for (k, v) in vertices.iter().enumerate() {
        if let Some(j) = vertices[..k].iter().position(|w| w == v) {
            return Err(PolypolError::DuplicateVertex(j, k));
        }
        let (a, b) = (k, (k + 1) % r);
        if !curves[a].contains(v) || !curves[b].contains(v) {
            return Err(PolypolError::VertexNotOnCurves { vertex: k });
        }
        if let Some(c) = (0..r).find(|&c| c != a && c != b && curves[c].contains(v)) {
            return Err(PolypolError::VertexOnThirdCurve { vertex: k, curve: c });
        }
        for c in [a, b] {
            if !curves[c].is_smooth_at(v) {
                return Err(PolypolError::VertexSingular { vertex: k, curve: c });
            }
        }
        if proportional(&eval_grad(&curves[a].f, v), &eval_grad(&curves[b].f, v)) {
            return Err(PolypolError::NotTransversal { vertex: k });
        }
    }
    Ok(Polypol { curves, vertices })
}

impl Polypol {
    pub fn curves(&self) -> &[PlaneCurve] {
        &self.curves
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn num_curves(&self) -> usize {
        self.curves.len()
    }

    /// `n = Σ deg Yᵢ`.
    pub fn total_degree(&self) -> u32 {
        self.curves.iter().map(PlaneCurve::degree).sum()
    }

    /// Applies the projective change of coordinates `X = M·x`.
    pub fn transform(&self, m: &RatMatrix) -> Result<Polypol, PolypolError> {
        let minv = m
            .inverse()
            .ok_or_else(|| PolypolError::NotPolygon("chart matrix is singular".into()))?;
        let curves = self.curves.iter().map(|c| c.transformed(m, &minv)).collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| normalize_point(&m.mul_vec(v)))
            .collect::<Result<_, _>>()?;
        Ok(Polypol { curves, vertices })
    }
}

/// A polypol together with parameter intervals `[aᵢ, bᵢ]` of its boundary
/// segments, `φᵢ(aᵢ) = v_{i−1,i}` and `φᵢ(bᵢ) = v_{i,i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiRegularPolypol {
    polypol: Polypol,
    intervals: Vec<(Rat, Rat)>,
}

impl QuasiRegularPolypol {
    /// Checks that every curve is parametrized, that the interval endpoints
    /// map to the right vertices and that no rational preimage of a node
    /// lies in a segment.
    pub fn new(polypol: Polypol, intervals: Vec<(Rat, Rat)>) -> Result<Self, PolypolError> {
        let r = polypol.num_curves();
        if intervals.len() != r {
            return Err(PolypolError::IntervalMismatch {
                curve: intervals.len().min(r),
                reason: format!("expected {r} intervals, got {}", intervals.len()),
            });
        }
        for (i, (a, b)) in intervals.iter().enumerate() {
            let curve = &polypol.curves[i];
            let phi = curve
                .param()
                .ok_or(PolypolError::MissingParametrization { curve: i })?;
            let start = &polypol.vertices[(i + r - 1) % r];
            let end = &polypol.vertices[i];
            if a == b {
                return Err(PolypolError::IntervalMismatch {
                    curve: i,
                    reason: "empty interval".into(),
                });
            }
            if !proportional(&phi.point_at(a), start) {
                return Err(PolypolError::IntervalMismatch {
                    curve: i,
                    reason: format!("φ({a}) is not vertex {}", (i + r - 1) % r),
                });
            }
            if !proportional(&phi.point_at(b), end) {
                return Err(PolypolError::IntervalMismatch {
                    curve: i,
                    reason: format!("φ({b}) is not vertex {i}"),
                });
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            for q in curve.nodes() {
                let (roots, _, _) = preimages(phi, q);
                if roots.iter().any(|(t, _)| lo <= t && t <= hi) {
                    return Err(PolypolError::SegmentThroughNode { curve: i });
                }
            }
        }
        Ok(QuasiRegularPolypol { polypol, intervals })
    }

    pub fn polypol(&self) -> &Polypol {
        &self.polypol
    }

    pub fn intervals(&self) -> &[(Rat, Rat)] {
        &self.intervals
    }

    pub fn transform(&self, m: &RatMatrix) -> Result<QuasiRegularPolypol, PolypolError> {
        Ok(QuasiRegularPolypol {
            polypol: self.polypol.transform(m)?,
            intervals: self.intervals.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_poly_in};

    fn curve(f: &str, param: Option<[&[i64]; 3]>) -> CurveData {
        CurveData {
            f: parse_poly_in(f, &XYZ).unwrap(),
            param: param.map(|[r, s, h]| {
                let u = |c: &[i64]| UPoly::new(c.iter().map(|&x| int(x)).collect());
                CurveParam::new(u(r), u(s), u(h))
            }),
            nodes: Vec::new(),
        }
    }

    fn pt(x: i64, y: i64, z: i64) -> Point {
        [int(x), int(y), int(z)]
    }

    #[test]
    fn pizza_in_the_original_labels_is_valid() {
        let curves = vec![
            curve("y", Some([&[0, 1], &[0], &[1]])),
            curve("x", Some([&[0], &[0, 1], &[1]])),
            curve("z^2 - x^2 - y^2", Some([&[1, 0, -1], &[0, 2], &[1, 0, 1]])),
        ];
        let p = validate_polypol(curves, vec![pt(0, 0, 1), pt(0, 1, 1), pt(1, 0, 1)]).unwrap();
        assert_eq!(p.total_degree(), 4);
    }

    #[test]
    fn rejects_bad_vertices() {
        let curves = || {
            vec![
                curve("y", Some([&[0, 1], &[0], &[1]])),
                curve("x", Some([&[0], &[0, 1], &[1]])),
                curve("z^2 - x^2 - y^2", Some([&[1, 0, -1], &[0, 2], &[1, 0, 1]])),
            ]
        };
        assert_eq!(
            validate_polypol(curves(), vec![pt(1, 1, 1), pt(0, 1, 1), pt(1, 0, 1)]),
            Err(PolypolError::VertexNotOnCurves { vertex: 0 })
        );
        assert_eq!(
            validate_polypol(curves(), vec![pt(0, 0, 1), pt(0, 0, 1), pt(1, 0, 1)]),
            Err(PolypolError::DuplicateVertex(0, 1))
        );
        let tangent = vec![
            curve("x - z", None),
            curve("z^2 - x^2 - y^2", Some([&[1, 0, -1], &[0, 2], &[1, 0, 1]])),
            curve("x", None),
        ];
        assert_eq!(
            validate_polypol(tangent, vec![pt(1, 0, 1), pt(0, 1, 1), pt(0, 1, 0)]),
            Err(PolypolError::NotTransversal { vertex: 0 })
        );
    }

    #[test]
    fn param_checks() {
        let c = curve("z^2 - x^2 - y^2", Some([&[1, 0, -1], &[0, 2], &[1, 0, 2]]));
        assert!(matches!(
            PlaneCurve::new(c.f, c.param, c.nodes),
            Err(PolypolError::ParamInconsistent { .. })
        ));
        let l = PlaneCurve::line(int(1), int(1), int(-1)).unwrap();
        assert!(l.contains(&pt(1, 0, 1)));
    }

    #[test]
    fn nodal_cubic_node_is_validated() {
        let f = parse_poly_in("y^2*z - x^3 - x^2*z", &XYZ).unwrap();
        let u = |c: &[i64]| UPoly::new(c.iter().map(|&x| int(x)).collect());
        let phi = CurveParam::new(u(&[-1, 0, 1]), u(&[0, -1, 0, 1]), u(&[1]));
        assert!(PlaneCurve::new(f.clone(), Some(phi.clone()), vec![]).is_err());
        let c = PlaneCurve::new(f, Some(phi), vec![pt(0, 0, 1)]).unwrap();
        assert_eq!(c.nodes().len(), 1);
        let cusp = parse_poly_in("y^2*z - x^3", &XYZ).unwrap();
        assert!(PlaneCurve::new(cusp, None, vec![pt(0, 0, 1)]).is_err());
    }
}
