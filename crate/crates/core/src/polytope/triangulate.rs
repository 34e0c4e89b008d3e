use num_traits::{Signed, Zero};

use super::Polytope;
use crate::algebra::{Rat, RatMatrix};

/// A `d`-simplex with the sign of `det(v₁−v₀, …, v_d−v₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<Vec<Rat>>,
    pub orientation: i32,
}

impl Simplex {
    /// Returns `None` when the points are affinely dependent.
    pub fn new(vertices: Vec<Vec<Rat>>) -> Option<Simplex> {
        let det = edge_det(&vertices);
        if det.is_zero() {
            return None;
        }
        let orientation = if det.is_positive() { 1 } else { -1 };
        Some(Simplex {
            vertices,
            orientation,
        })
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `d!` times the Euclidean volume.
    pub fn normalized_volume(&self) -> Rat {
        edge_det(&self.vertices).abs()
    }
}

fn edge_det(vertices: &[Vec<Rat>]) -> Rat {
    let (v0, rest) = vertices.split_first().expect("at least one vertex");
    if rest.is_empty() {
        return Rat::from_integer(1.into());
    }
    let rows = rest
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    RatMatrix::from_rows(rows, v0.len())
        .and_then(|m| m.det())
        .unwrap_or_else(|_| Rat::zero())
}

/// Pulling triangulation, pulling vertices in index order (which is
/// lexicographic order of coordinates).
pub fn triangulate(p: &Polytope) -> Vec<Simplex> {
    let order: Vec<usize> = (0..p.vertices().len()).collect();
    triangulate_with_order(p, &order)
}

/// Pulling triangulation where each face is coned from the earliest vertex of
/// `order` it contains. `order` must list every vertex index.
pub fn triangulate_with_order(p: &Polytope, order: &[usize]) -> Vec<Simplex> {
    let all: Vec<usize> = (0..p.vertices().len()).collect();
    pull(p, &all, order)
        .into_iter()
        .map(|ix| {
            let vs = ix.iter().map(|&k| p.vertices()[k].clone()).collect();
            Simplex::new(vs).expect("pulling produces full-dimensional simplices")
        })
        .collect()
}

fn pull(p: &Polytope, face: &[usize], order: &[usize]) -> Vec<Vec<usize>> {
    let apex = *order
        .iter()
        .find(|v| face.contains(v))
        .expect("order covers all vertices");
    if face.len() == 1 {
        return vec![vec![apex]];
    }
    let mut out = Vec::new();
    for sub in p.subfaces(face) {
        if sub.contains(&apex) {
            continue;
        }
        for mut s in pull(p, &sub, order) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// `d!` times the Euclidean volume of `p`.
pub fn normalized_volume(p: &Polytope) -> Rat {
    triangulate(p).iter().map(Simplex::normalized_volume).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::polytope::{vertices_from_hrep, HRep};

    fn cube() -> Polytope {
        let mut rows = Vec::new();
        let mut z = Vec::new();
        for i in 0..3 {
            let mut e = vec![int(0); 3];
            e[i] = int(1);
            rows.push(e.clone());
            z.push(int(0));
            rows.push(e.iter().map(|x| -x).collect());
            z.push(int(1));
        }
        vertices_from_hrep(HRep::from_rows(rows, z).unwrap()).unwrap()
    }

    #[test]
    fn cube_volume() {
        let c = cube();
        assert_eq!(normalized_volume(&c), int(6));
        assert_eq!(triangulate(&c).len(), 6);
        let rev: Vec<usize> = (0..8).rev().collect();
        let t = triangulate_with_order(&c, &rev);
        assert_eq!(t.iter().map(Simplex::normalized_volume).sum::<Rat>(), int(6));
    }

    #[test]
    fn degenerate_simplex() {
        assert!(Simplex::new(vec![vec![int(0)], vec![int(0)]]).is_none());
        let s = Simplex::new(vec![vec![int(1)], vec![int(0)]]).unwrap();
        assert_eq!(s.orientation, -1);
    }
}
