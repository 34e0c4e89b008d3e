//! Canonical forms and adjoints of convex polytopes.
//!
//! Every form lives in the chart `y₁, …, y_d` (or caller-supplied names) with
//! the standard orientation `dy₁ ∧ … ∧ dy_d`.

mod verify;

pub use verify::{verify_form, verify_positive_geometry, StratumCheck, VerificationReport};

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{primitive_integer_vector, AlgebraError, FactoredRatFn, MPoly, Rat, RatMatrix};
use crate::forms::{FormError, RatForm};
use crate::polytope::{
    chart_vars, residual_flats, triangulate, triangulate_with_order, vertices_from_hrep, HRep, Polytope,
    PolytopeError, Simplex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("polytope is not simple: vertex {vertex} lies on {facets} facets")]
    NotSimple { vertex: usize, facets: usize },
    #[error("Adj_P(U·y + z·y0) is not divisible by y0")]
    DivisionByY0Fails,
    #[error("facet lines {0:?} are concurrent; the arrangement is not simple")]
    ArrangementNotSimple(Vec<usize>),
    #[error("interpolation kernel has dimension {0}, expected 1")]
    KernelDimensionNot1(usize),
    #[error("operation needs dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("expected {expected} variable names, got {got}")]
    NamesMismatch { expected: usize, got: usize },
    #[error("verification failed at stratum {stratum:?}: {detail}")]
    VerificationFailed { stratum: Vec<usize>, detail: String },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `ω(P) = numerator / Π denominator_factors · dy`.
#[derive(Clone, Debug)]
pub struct CanonicalFormResult {
    pub form: RatForm,
    pub numerator: MPoly,
    pub denominator_factors: Vec<MPoly>,
}

impl CanonicalFormResult {
    fn from_coeff(vars: &[String], coeff: FactoredRatFn) -> Result<Self, CanonicalError> {
        let form = RatForm::new(vars, coeff)?;
        let numerator = form.coeff().numerator().clone();
        let denominator_factors = form
            .coeff()
            .factors()
            .iter()
            .flat_map(|(f, e)| std::iter::repeat_n(f.clone(), *e as usize))
            .collect();
        Ok(CanonicalFormResult {
            form,
            numerator,
            denominator_factors,
        })
    }

    pub fn coeff(&self) -> &FactoredRatFn {
        self.form.coeff()
    }
}

impl fmt::Display for CanonicalFormResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

fn require_simple(p: &Polytope) -> Result<(), CanonicalError> {
    match p.incidence().iter().position(|s| s.len() != p.dim()) {
        Some(vertex) => Err(CanonicalError::NotSimple {
            vertex,
            facets: p.incidence()[vertex].len(),
        }),
        None => Ok(()),
    }
}

fn abs_det(m: &RatMatrix) -> Rat {
    m.det().expect("square").abs()
}

fn check_vars(p: &Polytope, vars: &[String]) -> Result<(), CanonicalError> {
    if vars.len() != p.dim() {
        return Err(CanonicalError::NamesMismatch {
            expected: p.dim(),
            got: vars.len(),
        });
    }
    Ok(())
}

/// Vertex formula for simple polytopes, combined over the product of all
/// facet forms.
pub fn canonical_form_simple(p: &Polytope) -> Result<CanonicalFormResult, CanonicalError> {
    canonical_form_simple_in(p, &chart_vars(p.dim()))
}

pub fn canonical_form_simple_in(
    p: &Polytope,
    vars: &[String],
) -> Result<CanonicalFormResult, CanonicalError> {
    require_simple(p)?;
    check_vars(p, vars)?;
    let facets = p.hrep().facet_forms(vars);
    let mut num = MPoly::zero(vars);
    for (k, inc) in p.incidence().iter().enumerate() {
        let mut term = MPoly::constant(vars, abs_det(&p.vertex_matrix(k)));
        for (i, f) in facets.iter().enumerate() {
            if !inc.contains(&i) {
                term = &term * f;
            }
        }
        num = &num + &term;
    }
    let coeff = FactoredRatFn::new(num, facets.into_iter().map(|f| (f, 1)).collect())?;
    CanonicalFormResult::from_coeff(vars, coeff)
}

/// The canonical form of any polytope: the vertex formula when simple and
/// the dual volume function otherwise.
pub fn canonical_form(p: &Polytope) -> Result<CanonicalFormResult, CanonicalError> {
    canonical_form_in(p, &chart_vars(p.dim()))
}

pub fn canonical_form_in(p: &Polytope, vars: &[String]) -> Result<CanonicalFormResult, CanonicalError> {
    if p.is_simple() {
        canonical_form_simple_in(p, vars)
    } else {
        let f = dual_volume_function_in(p, vars)?;
        CanonicalFormResult::from_coeff(vars, f)
    }
}

/// Simplicial cones (as facet index lists) of a pulling triangulation of the
/// normal cone at vertex `v`, using only the incident facet normals as rays
/// and pulling the lowest facet index first.
pub fn normal_cone_triangulation(p: &Polytope, v: usize) -> Vec<Vec<usize>> {
    let d = p.dim();
    let faces_by_dim: Vec<Vec<Vec<usize>>> = (0..=d).map(|k| p.faces(k)).collect();
    pull_cone(p, &faces_by_dim, &[v], 0)
}

/// The cone dual to `face` (of dimension `k`) is spanned by the normals of
/// the facets containing it; its facets are dual to the faces of dimension
/// `k + 1` containing `face`.
fn pull_cone(p: &Polytope, faces_by_dim: &[Vec<Vec<usize>>], face: &[usize], k: usize) -> Vec<Vec<usize>> {
    let rays = p.face_facets(face);
    let apex = rays[0];
    if k + 1 == p.dim() {
        return vec![vec![apex]];
    }
    let mut out = Vec::new();
    for g in &faces_by_dim[k + 1] {
        if !face.iter().all(|v| g.contains(v)) || p.face_facets(g).contains(&apex) {
            continue;
        }
        for mut c in pull_cone(p, faces_by_dim, g, k + 1) {
            c.insert(0, apex);
            out.push(c);
        }
    }
    out
}

/// `y ↦ vol((P − y)°)` as a rational function.
pub fn dual_volume_function(p: &Polytope) -> Result<FactoredRatFn, CanonicalError> {
    dual_volume_function_in(p, &chart_vars(p.dim()))
}

pub fn dual_volume_function_in(p: &Polytope, vars: &[String]) -> Result<FactoredRatFn, CanonicalError> {
    check_vars(p, vars)?;
    let facets = p.hrep().facet_forms(vars);
    let mut total = FactoredRatFn::constant(vars, Rat::zero());
    for v in 0..p.vertices().len() {
        for cone in normal_cone_triangulation(p, v) {
            let det = abs_det(&p.hrep().u().select_rows(&cone));
            let factors = cone.iter().map(|&i| (facets[i].clone(), 1)).collect();
            let term = FactoredRatFn::new(MPoly::constant(vars, det), factors)?;
            total = total.add(&term);
        }
    }
    Ok(total)
}

/// `Amp_P(x) = Σ_v |det U_v| / Π_{F∋v} x_F`, kept as a list of vertex terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amplitude {
    pub names: Vec<String>,
    pub vertex_terms: Vec<(Rat, Vec<usize>)>,
}

impl Amplitude {
    /// The amplitude as a single rational function of the facet variables.
    pub fn to_ratfn(&self) -> FactoredRatFn {
        let mut total = FactoredRatFn::constant(&self.names, Rat::zero());
        for (c, facets) in &self.vertex_terms {
            let factors = facets
                .iter()
                .map(|&i| (MPoly::var(&self.names, &self.names[i]), 1))
                .collect();
            let term = FactoredRatFn::new(MPoly::constant(&self.names, c.clone()), factors)
                .expect("variables are nonzero");
            total = total.add(&term);
        }
        total
    }

    /// Substitutes `x_F ← u_F·y + z_F`.
    pub fn substitute(&self, h: &HRep, vars: &[String]) -> Result<FactoredRatFn, CanonicalError> {
        let forms = h.facet_forms(vars);
        let subs: Vec<(&str, MPoly)> = self.names.iter().map(String::as_str).zip(forms).collect();
        let f = self.to_ratfn().substitute(&subs)?;
        Ok(f.with_vars(vars)?)
    }

    pub fn to_latex(&self) -> String {
        self.vertex_terms
            .iter()
            .map(|(c, facets)| {
                let den: Vec<String> = facets
                    .iter()
                    .map(|&i| crate::algebra::latex_var(&self.names[i]))
                    .collect();
                format!("\\frac{{{}}}{{{}}}", c, den.join(" "))
            })
            .join(" + ")
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.vertex_terms.iter().map(|(c, facets)| {
            let den = facets.iter().map(|&i| self.names[i].as_str()).join("*");
            if facets.len() > 1 {
                format!("{c}/({den})")
            } else {
                format!("{c}/{den}")
            }
        });
        write!(f, "{}", terms.format(" + "))
    }
}

/// Facet variable names `x1, …, xn`.
pub fn default_facet_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn check_names(p: &Polytope, names: &[String]) -> Result<(), CanonicalError> {
    if names.len() != p.num_facets() {
        return Err(CanonicalError::NamesMismatch {
            expected: p.num_facets(),
            got: names.len(),
        });
    }
    Ok(())
}

pub fn toric_amplitude(p: &Polytope, names: &[String]) -> Result<Amplitude, CanonicalError> {
    require_simple(p)?;
    check_names(p, names)?;
    let vertex_terms = p
        .incidence()
        .iter()
        .enumerate()
        .map(|(k, inc)| (abs_det(&p.vertex_matrix(k)), inc.clone()))
        .collect();
    Ok(Amplitude {
        names: names.to_vec(),
        vertex_terms,
    })
}

/// `Adj_P(x) = Σ_v |det U_v| Π_{F∌v} x_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalAdjoint {
    pub polynomial: MPoly,
}

pub fn universal_adjoint(p: &Polytope, names: &[String]) -> Result<UniversalAdjoint, CanonicalError> {
    require_simple(p)?;
    check_names(p, names)?;
    let n = p.num_facets();
    let terms = p.incidence().iter().enumerate().map(|(k, inc)| {
        let exps = (0..n).map(|i| u32::from(!inc.contains(&i))).collect();
        (exps, abs_det(&p.vertex_matrix(k)))
    });
    Ok(UniversalAdjoint {
        polynomial: MPoly::from_terms(names, terms),
    })
}

/// Homogeneous adjoint `adj_P(y₀, …, y_d)` of degree `n − d − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WarrenAdjoint {
    pub polynomial: MPoly,
}

impl WarrenAdjoint {
    /// The restriction to the chart `y₀ = 1`.
    pub fn dehomogenize(&self) -> MPoly {
        let h = self.polynomial.vars()[0].clone();
        self.polynomial.dehomogenize(&h)
    }
}

/// Homogeneous coordinate names `y0, y1, …, yd`.
pub fn homogeneous_vars(d: usize) -> Vec<String> {
    (0..=d).map(|i| format!("y{i}")).collect()
}

/// Warren's adjoint via the universal adjoint for simple polytopes and via
/// the numerator of the dual volume function otherwise. Normalized to be
/// positive on the interior.
pub fn warren_adjoint(p: &Polytope) -> Result<WarrenAdjoint, CanonicalError> {
    let hv = homogeneous_vars(p.dim());
    let poly = if p.is_simple() {
        let names = default_facet_names(p.num_facets());
        let adj = universal_adjoint(p, &names)?.polynomial;
        let h = p.hrep();
        let subs: Vec<(&str, MPoly)> = names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let mut coeffs = vec![h.z()[i].clone()];
                coeffs.extend_from_slice(h.u().row(i));
                (name.as_str(), MPoly::linear(&hv, &coeffs, &Rat::zero()))
            })
            .collect();
        let full = adj.substitute(&subs).with_vars(&hv)?;
        full.exact_div(&MPoly::var(&hv, &hv[0]))
            .ok_or(CanonicalError::DivisionByY0Fails)?
    } else {
        let vars = chart_vars(p.dim());
        let f = dual_volume_function_in(p, &vars)?;
        let facets = p.hrep().facet_forms(&vars);
        let mut num = f.numerator().clone();
        for (i, fi) in facets.iter().enumerate() {
            let order = f.pole_order(fi)?;
            if !(0..=1).contains(&order) {
                return Err(CanonicalError::VerificationFailed {
                    stratum: vec![i],
                    detail: format!("dual volume function has pole order {order}"),
                });
            }
            if order == 0 {
                num = &num * fi;
            }
        }
        let deg = (p.num_facets() - p.dim() - 1) as u32;
        num.homogenize(&hv[0], deg).with_vars(&hv)?
    };
    Ok(WarrenAdjoint {
        polynomial: normalize_on_interior(p, poly),
    })
}

/// Makes the value at the vertex centroid (with `y₀ = 1`) positive.
fn normalize_on_interior(p: &Polytope, poly: MPoly) -> MPoly {
    let mut point = vec![Rat::one()];
    point.extend(p.vertex_centroid());
    if poly.eval(&point).is_negative() {
        -poly
    } else {
        poly
    }
}

/// Facet inequalities of a simplex, one per vertex (the opposite facet),
/// oriented to be nonnegative on the simplex.
pub fn simplex_hrep(s: &Simplex) -> Result<HRep, CanonicalError> {
    let d = s.dim();
    let mut rows = Vec::new();
    let mut z = Vec::new();
    for i in 0..=d {
        let pts: Vec<Vec<Rat>> = s
            .vertices
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| {
                let mut r = vec![Rat::one()];
                r.extend_from_slice(v);
                r
            })
            .collect();
        let ker = RatMatrix::from_rows(pts, d + 1)?.nullspace();
        let mut normal = primitive_integer_vector(&ker[0]);
        let value: Rat = normal[0].clone()
            + normal[1..]
                .iter()
                .zip(&s.vertices[i])
                .map(|(a, b)| a * b)
                .sum::<Rat>();
        if value.is_negative() {
            normal = normal.iter().map(|x| -x).collect();
        }
        z.push(normal[0].clone());
        rows.push(normal[1..].to_vec());
    }
    Ok(HRep::from_rows(rows, z)?)
}

/// `Σ ω(Δᵢ)` over the pulling triangulation from the lexicographically
/// smallest vertex.
pub fn canonical_form_via_triangulation(p: &Polytope) -> Result<CanonicalFormResult, CanonicalError> {
    sum_over_simplices(p, &triangulate(p))
}

/// As [`canonical_form_via_triangulation`] with a caller-chosen pulling order.
pub fn canonical_form_via_triangulation_with_order(
    p: &Polytope,
    order: &[usize],
) -> Result<CanonicalFormResult, CanonicalError> {
    sum_over_simplices(p, &triangulate_with_order(p, order))
}

fn sum_over_simplices(p: &Polytope, simplices: &[Simplex]) -> Result<CanonicalFormResult, CanonicalError> {
    let vars = chart_vars(p.dim());
    let mut total = FactoredRatFn::constant(&vars, Rat::zero());
    for s in simplices {
        let q = vertices_from_hrep(simplex_hrep(s)?)?;
        let omega = canonical_form_simple_in(&q, &vars)?;
        total = total.add(omega.coeff());
    }
    CanonicalFormResult::from_coeff(&vars, total)
}

/// Monomials of total degree `k` in `m` variables, as exponent vectors in
/// lexicographically decreasing order.
pub fn monomials(m: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (0..m)
        .combinations_with_replacement(k as usize)
        .map(|c| {
            let mut e = vec![0; m];
            for i in c {
                e[i] += 1;
            }
            e
        })
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Evaluates a monomial at a point.
pub fn eval_monomial(e: &[u32], point: &[Rat]) -> Rat {
    e.iter()
        .zip(point)
        .map(|(&k, x)| x.pow(k as i32))
        .fold(Rat::one(), |a, b| a * b)
}

/// Linear conditions on the coefficients of a degree-`deg` form in
/// `y₀, …, y_d` (columns ordered as `monos`) for vanishing on the flat
/// spanned by the rows of `basis`.
fn vanishing_rows(monos: &[Vec<u32>], basis: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if basis.len() == 1 {
        return vec![monos.iter().map(|e| eval_monomial(e, &basis[0])).collect()];
    }
    let svars: Vec<String> = (0..basis.len()).map(|j| format!("s{j}")).collect();
    let coords: Vec<MPoly> = (0..basis[0].len())
        .map(|i| {
            let c: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            MPoly::linear(&svars, &c, &Rat::zero())
        })
        .collect();
    let mut rows: BTreeMap<Vec<u32>, Vec<Rat>> = BTreeMap::new();
    for (col, e) in monos.iter().enumerate() {
        let mut v = MPoly::constant(&svars, Rat::one());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                v = &v * &coords[i].pow(k);
            }
        }
        for (m, c) in v.terms() {
            rows.entry(m.exponents().to_vec())
                .or_insert_with(|| vec![Rat::zero(); monos.len()])[col] = c.clone();
        }
    }
    rows.into_values().collect()
}

/// The unique form of degree `n − d − 1` in `y₀, …, y_d` vanishing on every
/// residual flat, normalized to primitive integer coefficients and positive
/// on the interior. Refused unless the facet hyperplane arrangement is
/// simple, i.e. no `d + 1` facet hyperplanes share a projective point.
pub fn adjoint_through_residual_points(p: &Polytope) -> Result<MPoly, CanonicalError> {
    let d = p.dim();
    let h = p.hrep();
    let homog: Vec<Vec<Rat>> = (0..p.num_facets())
        .map(|i| {
            let mut r = vec![h.z()[i].clone()];
            r.extend_from_slice(h.u().row(i));
            r
        })
        .collect();
    for set in (0..p.num_facets()).combinations(d + 1) {
        let rows = set.iter().map(|&i| homog[i].clone()).collect();
        if RatMatrix::from_rows(rows, d + 1)?.rank() < d + 1 {
            return Err(CanonicalError::ArrangementNotSimple(set));
        }
    }
    let deg = (p.num_facets() - d - 1) as u32;
    let hv = homogeneous_vars(d);
    let monos = monomials(d + 1, deg);
    let rows: Vec<Vec<Rat>> = residual_flats(p)
        .iter()
        .flat_map(|f| vanishing_rows(&monos, &f.basis))
        .collect();
    let kernel = if rows.is_empty() {
        RatMatrix::identity(monos.len()).row_vecs()
    } else {
        RatMatrix::from_rows(rows, monos.len())?.nullspace()
    };
    if kernel.len() != 1 {
        return Err(CanonicalError::KernelDimensionNot1(kernel.len()));
    }
    let coeffs = primitive_integer_vector(&kernel[0]);
    let poly = MPoly::from_terms(&hv, monos.into_iter().zip(coeffs));
    Ok(normalize_on_interior(p, poly))
}
