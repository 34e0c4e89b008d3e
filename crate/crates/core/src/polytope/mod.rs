//! Convex polytopes `P = {y : U·y + z ≥ 0}` with exact vertices, incidences,
//! faces, polar duals, pulling triangulations and residual flats.

mod residual;
mod triangulate;

pub use residual::{residual_flats, ResidualFlat};
pub use triangulate::{normalized_volume, triangulate, triangulate_with_order, Simplex};

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, MPoly, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("U has rank {rank}, expected {d}")]
    NotFullRank { rank: usize, d: usize },
    #[error("the inequalities define an unbounded set")]
    Unbounded,
    #[error("the inequalities define the empty set")]
    Empty,
    #[error("the inequalities define a set of dimension {dim} in R^{d}")]
    NotFullDimensional { dim: usize, d: usize },
    #[error("inequality {row} does not define a facet")]
    RedundantInequality { row: usize },
    #[error("the origin is not an interior point (z_{row} = {value})")]
    OriginNotInterior { row: usize, value: Rat },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Inequality description `U·y + z ≥ 0` with `U` of size `n × d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    u: RatMatrix,
    z: Vec<Rat>,
}

impl HRep {
    pub fn new(u: RatMatrix, z: Vec<Rat>) -> Result<HRep, PolytopeError> {
        if u.rows() != z.len() {
            return Err(PolytopeError::Dimension(format!(
                "U has {} rows but z has {} entries",
                u.rows(),
                z.len()
            )));
        }
        if u.cols() == 0 {
            return Err(PolytopeError::Dimension("U has no columns".into()));
        }
        Ok(HRep { u, z })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, z: Vec<Rat>) -> Result<HRep, PolytopeError> {
        let d = rows.first().map_or(0, |r| r.len());
        HRep::new(RatMatrix::from_rows(rows, d)?, z)
    }

    pub fn u(&self) -> &RatMatrix {
        &self.u
    }

    pub fn z(&self) -> &[Rat] {
        &self.z
    }

    /// Number of inequalities.
    pub fn n(&self) -> usize {
        self.u.rows()
    }

    /// Ambient dimension.
    pub fn d(&self) -> usize {
        self.u.cols()
    }

    /// `u_i · y + z_i` evaluated at `y`.
    pub fn slack(&self, i: usize, y: &[Rat]) -> Rat {
        self.u.row(i).iter().zip(y).map(|(a, b)| a * b).sum::<Rat>() + &self.z[i]
    }

    /// The facet form `u_i · y + z_i` as a polynomial in `vars`.
    pub fn facet_form(&self, i: usize, vars: &[impl AsRef<str>]) -> MPoly {
        MPoly::linear(vars, self.u.row(i), &self.z[i])
    }

    pub fn facet_forms(&self, vars: &[impl AsRef<str>]) -> Vec<MPoly> {
        (0..self.n()).map(|i| self.facet_form(i, vars)).collect()
    }

    /// Keeps only the listed rows.
    pub fn select(&self, rows: &[usize]) -> HRep {
        HRep {
            u: self.u.select_rows(rows),
            z: rows.iter().map(|&i| self.z[i].clone()).collect(),
        }
    }
}

/// Default chart variable names `y1, …, yd`.
pub fn chart_vars(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("y{i}")).collect()
}

/// A full-dimensional polytope with minimal H-representation, its vertices
/// (sorted lexicographically) and for each vertex the sorted indices of the
/// facets containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    hrep: HRep,
    vertices: Vec<Vec<Rat>>,
    incidence: Vec<Vec<usize>>,
}

/// Affine dimension of a point set; `None` for the empty set.
pub fn affine_dim(points: &[&[Rat]]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    if rest.is_empty() {
        return Some(0);
    }
    let rows: Vec<Vec<Rat>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Some(
        RatMatrix::from_rows(rows, first.len())
            .expect("same width")
            .rank(),
    )
}

fn check_bounded(u: &RatMatrix) -> Result<(), PolytopeError> {
    let d = u.cols();
    let feasible = |c: &[Rat]| u.mul_vec(c).iter().all(|x| !x.is_negative());
    for rows in (0..u.rows()).combinations(d - 1) {
        let ker = u.select_rows(&rows).nullspace();
        if ker.len() != 1 {
            continue;
        }
        let r = &ker[0];
        let neg: Vec<Rat> = r.iter().map(|x| -x).collect();
        if feasible(r) || feasible(&neg) {
            return Err(PolytopeError::Unbounded);
        }
    }
    Ok(())
}

/// Enumerates vertices by solving every `d × d` subsystem, then validates
/// boundedness, full dimension and minimality.
pub fn vertices_from_hrep(h: HRep) -> Result<Polytope, PolytopeError> {
    let (n, d) = (h.n(), h.d());
    let rank = h.u.rank();
    if rank < d {
        return Err(PolytopeError::NotFullRank { rank, d });
    }
    let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for rows in (0..n).combinations(d) {
        let a = h.u.select_rows(&rows);
        let b: Vec<Rat> = rows.iter().map(|&i| -h.z[i].clone()).collect();
        if let Some(y) = a.solve(&b) {
            if (0..n).all(|i| !h.slack(i, &y).is_negative()) {
                found.insert(y);
            }
        }
    }
    if found.is_empty() {
        return Err(PolytopeError::Empty);
    }
    check_bounded(&h.u)?;
    let vertices: Vec<Vec<Rat>> = found.into_iter().collect();
    let refs: Vec<&[Rat]> = vertices.iter().map(|v| v.as_slice()).collect();
    let dim = affine_dim(&refs).expect("nonempty");
    if dim < d {
        return Err(PolytopeError::NotFullDimensional { dim, d });
    }
    let incidence: Vec<Vec<usize>> = vertices
        .iter()
        .map(|v| (0..n).filter(|&i| h.slack(i, v).is_zero()).collect())
        .collect();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let on: Vec<usize> = (0..vertices.len())
            .filter(|&k| incidence[k].contains(&i))
            .collect();
        let pts: Vec<&[Rat]> = on.iter().map(|&k| vertices[k].as_slice()).collect();
        if affine_dim(&pts) != Some(d - 1) || seen.contains(&on) {
            return Err(PolytopeError::RedundantInequality { row: i });
        }
        seen.push(on);
    }
    Ok(Polytope {
        hrep: h,
        vertices,
        incidence,
    })
}

impl Polytope {
    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn dim(&self) -> usize {
        self.hrep.d()
    }

    pub fn num_facets(&self) -> usize {
        self.hrep.n()
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn is_simple(&self) -> bool {
        self.incidence.iter().all(|s| s.len() == self.dim())
    }

    /// Indices of vertices on facet `i`.
    pub fn facet_vertices(&self, i: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&k| self.incidence[k].contains(&i))
            .collect()
    }

    /// Submatrix `U_v` of rows of facets containing vertex `k`.
    pub fn vertex_matrix(&self, k: usize) -> RatMatrix {
        self.hrep.u.select_rows(&self.incidence[k])
    }

    /// Average of the vertices; an interior point.
    pub fn vertex_centroid(&self) -> Vec<Rat> {
        let m = Rat::from_integer(self.vertices.len().into());
        (0..self.dim())
            .map(|j| self.vertices.iter().map(|v| v[j].clone()).sum::<Rat>() / &m)
            .collect()
    }

    /// Faces of the given dimension, each as the sorted list of its vertex
    /// indices, in lexicographic order.
    pub fn faces(&self, dim: usize) -> Vec<Vec<usize>> {
        let d = self.dim();
        if dim == d {
            return vec![(0..self.vertices.len()).collect()];
        }
        let mut out = BTreeSet::new();
        for facets in (0..self.num_facets()).combinations(d - dim) {
            let on: Vec<usize> = (0..self.vertices.len())
                .filter(|&k| facets.iter().all(|f| self.incidence[k].contains(f)))
                .collect();
            if self.face_dim(&on) == Some(dim) {
                out.insert(on);
            }
        }
        out.into_iter().collect()
    }

    fn face_dim(&self, face: &[usize]) -> Option<usize> {
        let pts: Vec<&[Rat]> = face.iter().map(|&k| self.vertices[k].as_slice()).collect();
        affine_dim(&pts)
    }

    /// Facets of a face (given by vertex indices), again as vertex index sets.
    pub fn subfaces(&self, face: &[usize]) -> Vec<Vec<usize>> {
        let Some(k) = self.face_dim(face) else {
            return Vec::new();
        };
        if k == 0 {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        for f in 0..self.num_facets() {
            let on: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&v| self.incidence[v].contains(&f))
                .collect();
            if on.len() < face.len() && self.face_dim(&on) == Some(k - 1) {
                out.insert(on);
            }
        }
        out.into_iter().collect()
    }

    /// Facets containing every vertex of the face.
    pub fn face_facets(&self, face: &[usize]) -> Vec<usize> {
        (0..self.num_facets())
            .filter(|f| face.iter().all(|&v| self.incidence[v].contains(f)))
            .collect()
    }

    /// Pivot used to eliminate a variable on facet `k`: the largest index
    /// with a nonzero normal coefficient.
    pub fn facet_pivot(&self, k: usize) -> usize {
        self.hrep
            .u
            .row(k)
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("nonzero normal")
    }

    /// Facet `k` as a polytope in the chart obtained by eliminating its
    /// pivot variable. Returns the polytope and, for each of its facets, the
    /// index of the facet of `self` it comes from.
    pub fn facet_polytope(&self, k: usize) -> Result<(Polytope, Vec<usize>), PolytopeError> {
        let d = self.dim();
        if d < 2 {
            return Err(PolytopeError::Dimension("facets of a segment are points".into()));
        }
        let p = self.facet_pivot(k);
        let uk = self.hrep.u.row(k);
        let cp = &uk[p];
        let on_k = self.facet_vertices(k);
        let mut rows = Vec::new();
        let mut z = Vec::new();
        let mut origin = Vec::new();
        for g in 0..self.num_facets() {
            if g == k {
                continue;
            }
            let ridge: Vec<usize> = on_k
                .iter()
                .copied()
                .filter(|&v| self.incidence[v].contains(&g))
                .collect();
            if self.face_dim(&ridge) != Some(d - 2) {
                continue;
            }
            let ug = self.hrep.u.row(g);
            let ratio = &ug[p] / cp;
            let row: Vec<Rat> = (0..d)
                .filter(|&i| i != p)
                .map(|i| &ug[i] - &ratio * &uk[i])
                .collect();
            rows.push(row);
            z.push(&self.hrep.z[g] - &ratio * &self.hrep.z[k]);
            origin.push(g);
        }
        let h = HRep::new(RatMatrix::from_rows(rows, d - 1)?, z)?;
        Ok((vertices_from_hrep(h)?, origin))
    }

    /// `P − y`, i.e. `z′ = U·y + z`.
    pub fn translate(&self, y: &[Rat]) -> Polytope {
        let z: Vec<Rat> = (0..self.num_facets()).map(|i| self.hrep.slack(i, y)).collect();
        let vertices: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(y).map(|(a, b)| a - b).collect())
            .collect();
        Polytope {
            hrep: HRep {
                u: self.hrep.u.clone(),
                z,
            },
            vertices,
            incidence: self.incidence.clone(),
        }
    }

    /// `A·P + b` for invertible `A`.
    pub fn affine_image(&self, a: &RatMatrix, b: &[Rat]) -> Result<Polytope, PolytopeError> {
        let ainv = a
            .inverse()
            .ok_or_else(|| PolytopeError::Dimension("transformation is singular".into()))?;
        let u = self.hrep.u.mul(&ainv);
        let ub = u.mul_vec(b);
        let z = self.hrep.z.iter().zip(&ub).map(|(zi, c)| zi - c).collect();
        vertices_from_hrep(HRep { u, z })
    }

    /// Polar dual `P° = {u : u·y ≥ −1 ∀ y ∈ P}`, described by one inequality
    /// `v·u + 1 ≥ 0` per vertex `v` of `P`.
    pub fn polar_dual(&self) -> Result<Polytope, PolytopeError> {
        if let Some((row, value)) = self.hrep.z.iter().enumerate().find(|(_, z)| !z.is_positive()) {
            return Err(PolytopeError::OriginNotInterior {
                row,
                value: value.clone(),
            });
        }
        let u = RatMatrix::from_rows(self.vertices.clone(), self.dim())?;
        let z = vec![Rat::one(); self.vertices.len()];
        vertices_from_hrep(HRep { u, z })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn hrep(rows: &[&[i64]], z: &[i64]) -> HRep {
        HRep::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            z.iter().map(|&x| int(x)).collect(),
        )
        .unwrap()
    }

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn unit_triangle() {
        let p = vertices_from_hrep(hrep(&[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0, 1])).unwrap();
        assert_eq!(p.vertices(), pts(&[&[0, 0], &[0, 1], &[1, 0]]));
        assert!(p.is_simple());
    }

    #[test]
    fn rejects_bad_inputs() {
        let unbounded = hrep(&[&[1, 0], &[0, 1]], &[0, 0]);
        assert_eq!(vertices_from_hrep(unbounded), Err(PolytopeError::Unbounded));
        let empty = hrep(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[-2, 1, 0, 1]);
        assert_eq!(vertices_from_hrep(empty), Err(PolytopeError::Empty));
        let rank = hrep(&[&[1, 0], &[-1, 0]], &[1, 1]);
        assert!(matches!(
            vertices_from_hrep(rank),
            Err(PolytopeError::NotFullRank { .. })
        ));
        let redundant = hrep(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, 0]], &[0, 0, 1, 5]);
        assert_eq!(
            vertices_from_hrep(redundant),
            Err(PolytopeError::RedundantInequality { row: 3 })
        );
        let flat = hrep(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[0, 0, 1, 1]);
        assert!(matches!(
            vertices_from_hrep(flat),
            Err(PolytopeError::NotFullDimensional { dim: 1, d: 2 })
        ));
    }

    #[test]
    fn square_faces() {
        let p = vertices_from_hrep(hrep(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1])).unwrap();
        assert_eq!(p.faces(0).len(), 4);
        assert_eq!(p.faces(1).len(), 4);
        assert_eq!(p.subfaces(&[0, 1, 2, 3]).len(), 4);
        let (f, origin) = p.facet_polytope(0).unwrap();
        assert_eq!(f.vertices(), pts(&[&[0], &[1]]));
        assert_eq!(origin, vec![1, 3]);
    }

    #[test]
    fn translation_and_dual() {
        let p = vertices_from_hrep(hrep(&[&[1, 0], &[0, 1], &[-1, -1]], &[1, 1, 1])).unwrap();
        let q = p.translate(&[int(0), int(0)]);
        assert_eq!(p, q);
        let dual = p.polar_dual().unwrap();
        assert_eq!(dual.vertices(), pts(&[&[-1, -1], &[0, 1], &[1, 0]]));
        let moved = p.translate(&[int(1), int(0)]);
        assert!(matches!(
            moved.polar_dual(),
            Err(PolytopeError::OriginNotInterior { .. })
        ));
    }
}
