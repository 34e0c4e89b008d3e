use num_traits::Zero;

use super::{normalize_point, preimages, proportional, Point, Polypol, PolypolError, XYZ};
use crate::algebra::{primitive_integer_vector, rational_roots, MPoly, Rat, RatMatrix, UPoly};
use crate::canonical::{eval_monomial, monomials};

/// Intersection points of `Y_param` and `Y_other` whose parameters on
/// `Y_param` are the roots of the irreducible `min_poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrationalIntersection {
    pub param_curve: usize,
    pub other_curve: usize,
    pub min_poly: UPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidualKind {
    Node { curve: usize },
    Intersection { curves: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualPoint {
    pub point: Point,
    pub kind: ResidualKind,
}

/// Rational residual points plus the irrational intersections they stand
/// in for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResidualArrangementP {
    pub points: Vec<ResidualPoint>,
    pub irrational: Vec<IrrationalIntersection>,
}

fn not_nodal(msg: String) -> PolypolError {
    PolypolError::NotNodal(msg)
}

/// Nodes of every curve together with the pairwise intersections that are
/// not vertices. Intersections are found on a parametrized member of each
/// pair; irrational ones must be covered by `irrational`.
pub fn residual_arrangement(
    p: &Polypol,
    irrational: &[IrrationalIntersection],
) -> Result<ResidualArrangementP, PolypolError> {
    let r = p.num_curves();
    let curves = p.curves();
    for e in irrational {
        let ok = e.param_curve < r
            && e.other_curve < r
            && e.param_curve != e.other_curve
            && curves[e.param_curve].param().is_some();
        if !ok {
            return Err(PolypolError::IrrationalMismatch {
                curves: (e.param_curve, e.other_curve),
            });
        }
    }
    let mut points: Vec<ResidualPoint> = Vec::new();
    let mut used = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let supplied: Vec<&IrrationalIntersection> = irrational
                .iter()
                .filter(|e| {
                    (e.param_curve, e.other_curve) == (i, j) || (e.param_curve, e.other_curve) == (j, i)
                })
                .collect();
            let (a, b) = match supplied.first() {
                Some(e) => (e.param_curve, e.other_curve),
                None if curves[i].param().is_some() => (i, j),
                None if curves[j].param().is_some() => (j, i),
                None => return Err(PolypolError::MissingParametrization { curve: j }),
            };
            if supplied.iter().any(|e| e.param_curve != a) {
                return Err(PolypolError::IrrationalMismatch { curves: (i, j) });
            }
            let phi = curves[a].param().expect("chosen side is parametrized");
            let [pr, ps, ph] = phi.coords();
            let g = curves[b].f().eval_upoly(&[pr.clone(), ps.clone(), ph.clone()]);
            if g.is_zero() {
                return Err(PolypolError::DuplicateCurve(i, j));
            }
            let total = (curves[a].degree() * curves[b].degree()) as usize;
            let at_inf = total - g.degree().unwrap_or(0);
            let roots = rational_roots(&g)?;
            let mut found: Vec<Point> = Vec::new();
            let mut candidates: Vec<Point> = Vec::new();
            for (t, m) in &roots.roots {
                if *m > 1 {
                    return Err(not_nodal(format!(
                        "curves {i} and {j} meet with multiplicity {m} at t = {t} on curve {a}"
                    )));
                }
                candidates.push(normalize_point(&phi.point_at(t))?);
            }
            match at_inf {
                0 => {}
                1 => candidates.push(normalize_point(&phi.point_at_infinity())?),
                m => {
                    return Err(not_nodal(format!(
                        "curves {i} and {j} meet with multiplicity {m} at t = ∞ on curve {a}"
                    )))
                }
            }
            for q in candidates {
                if found.contains(&q) {
                    return Err(not_nodal(format!("curve {b} passes through a node of curve {a}")));
                }
                found.push(q);
            }
            let cof = roots.cofactor.monic();
            let supplied_prod = supplied
                .iter()
                .fold(UPoly::one(), |acc, e| &acc * &e.min_poly.monic());
            if cof != supplied_prod {
                if supplied.is_empty() {
                    return Err(PolypolError::IrrationalIntersection {
                        curves: (i, j),
                        degree: cof.degree().unwrap_or(0),
                    });
                }
                return Err(PolypolError::IrrationalMismatch { curves: (i, j) });
            }
            if cof.degree().unwrap_or(0) > 0 && cof.gcd(&cof.derivative()).degree() != Some(0) {
                return Err(not_nodal(format!(
                    "curves {i} and {j} meet with multiplicity above one at irrational points"
                )));
            }
            for e in &supplied {
                for (k, c) in curves.iter().enumerate() {
                    if k == i || k == j {
                        continue;
                    }
                    let gk = c.f().eval_upoly(&[pr.clone(), ps.clone(), ph.clone()]);
                    if e.min_poly.gcd(&gk).degree() != Some(0) {
                        return Err(not_nodal(format!("curves {i}, {j} and {k} share a point")));
                    }
                }
                used.push((*e).clone());
            }
            for q in found {
                if let Some(k) = (0..r).find(|&k| k != i && k != j && curves[k].contains(&q)) {
                    return Err(not_nodal(format!("curves {i}, {j} and {k} share a point")));
                }
                if p.vertices().contains(&q) {
                    continue;
                }
                points.push(ResidualPoint {
                    point: q,
                    kind: ResidualKind::Intersection { curves: (i, j) },
                });
            }
        }
    }
    for (i, c) in curves.iter().enumerate() {
        for q in c.nodes() {
            if let Some(k) = (0..r).find(|&k| k != i && curves[k].contains(q)) {
                return Err(not_nodal(format!("node of curve {i} lies on curve {k}")));
            }
            points.push(ResidualPoint {
                point: q.clone(),
                kind: ResidualKind::Node { curve: i },
            });
        }
    }
    Ok(ResidualArrangementP {
        points,
        irrational: used,
    })
}

/// The adjoint curve of a polypol: the unique curve of degree `n − 3`
/// through its residual arrangement, with primitive integer coefficients
/// whose first nonzero coefficient (lexicographic exponent order) is
/// positive.
pub fn adjoint_curve(p: &Polypol, irrational: &[IrrationalIntersection]) -> Result<MPoly, PolypolError> {
    let arr = residual_arrangement(p, irrational)?;
    adjoint_from_arrangement(p, &arr)
}

/// Interpolates the adjoint through a precomputed arrangement.
pub fn adjoint_from_arrangement(p: &Polypol, arr: &ResidualArrangementP) -> Result<MPoly, PolypolError> {
    let n = p.total_degree();
    if n < 3 {
        return Err(PolypolError::DegreeTooSmall(n));
    }
    let monos = monomials(3, n - 3);
    let width = monos.len();
    let mut rows: Vec<Vec<Rat>> = arr
        .points
        .iter()
        .map(|q| monos.iter().map(|e| eval_monomial(e, &q.point)).collect())
        .collect();
    for e in &arr.irrational {
        let phi = p.curves()[e.param_curve].param().expect("validated");
        let [pr, ps, ph] = phi.coords();
        let deg = e.min_poly.degree().unwrap_or(0);
        let reduced: Vec<UPoly> =
            monos
                .iter()
                .map(|m| {
                    let v = MPoly::from_terms(&XYZ, [(m.clone(), Rat::from_integer(1.into()))])
                        .eval_upoly(&[pr.clone(), ps.clone(), ph.clone()]);
                    v.div_rem(&e.min_poly).1
                })
                .collect();
        for k in 0..deg {
            rows.push(reduced.iter().map(|v| v.coeff(k)).collect());
        }
    }
    let kernel = if rows.is_empty() {
        (0..width)
            .map(|i| {
                (0..width)
                    .map(|j| Rat::from_integer(i64::from(i == j).into()))
                    .collect()
            })
            .collect()
    } else {
        RatMatrix::from_rows(rows, width)?.nullspace()
    };
    if kernel.len() != 1 {
        return Err(PolypolError::KernelDimensionNot1(kernel.len()));
    }
    let mut c = primitive_integer_vector(&kernel[0]);
    if c.iter().find(|x| !x.is_zero()).is_some_and(|x| x < &Rat::zero()) {
        c = c.into_iter().map(|x| -x).collect();
    }
    let adj = MPoly::from_terms(&XYZ, monos.into_iter().zip(c));
    for (i, curve) in p.curves().iter().enumerate() {
        let contains = match curve.param() {
            Some(phi) => {
                let [pr, ps, ph] = phi.coords();
                adj.eval_upoly(&[pr.clone(), ps.clone(), ph.clone()]).is_zero()
            }
            None => adj.exact_div(curve.f()).is_some(),
        };
        if contains {
            return Err(PolypolError::AdjointContainsBoundary { curve: i });
        }
    }
    if let Some(k) = p.vertices().iter().position(|v| adj.eval(v).is_zero()) {
        return Err(PolypolError::AdjointVanishesAtVertex { vertex: k });
    }
    Ok(adj)
}

impl ResidualArrangementP {
    /// Whether `q` is one of the rational residual points.
    pub fn contains(&self, q: &[Rat]) -> bool {
        self.points.iter().any(|r| proportional(&r.point, q))
    }
}

impl Polypol {
    /// Rational parameters on curve `i` mapping to `q`.
    pub fn parameters_of(&self, i: usize, q: &[Rat]) -> Vec<Rat> {
        self.curves()[i]
            .param()
            .map(|phi| preimages(phi, q).0.into_iter().map(|(t, _)| t).collect())
            .unwrap_or_default()
    }
}
