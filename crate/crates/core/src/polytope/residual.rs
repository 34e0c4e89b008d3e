use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;

use super::Polytope;
use crate::algebra::{Rat, RatMatrix};

/// The flat `L_S` cut out by the facet hyperplanes in `facets`, given in
/// homogeneous coordinates `(y₀ : y₁ : … : y_d)` by a reduced row echelon
/// basis. `at_infinity` is set when the whole flat lies in `y₀ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualFlat {
    pub facets: Vec<usize>,
    pub basis: Vec<Vec<Rat>>,
    pub at_infinity: bool,
}

impl ResidualFlat {
    /// Projective dimension of the flat.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    /// For a point flat, its homogeneous coordinates.
    pub fn point(&self) -> Option<&[Rat]> {
        (self.basis.len() == 1).then(|| self.basis[0].as_slice())
    }
}

/// Flats `L_S` with `2 ≤ |S| ≤ d` that miss `P`, including those lying in the
/// hyperplane at infinity. Flats reached from several subsets are reported
/// once, under the first subset in (size, lexicographic) order.
pub fn residual_flats(p: &Polytope) -> Vec<ResidualFlat> {
    let d = p.dim();
    let h = p.hrep();
    let homog: Vec<Vec<Rat>> = (0..p.num_facets())
        .map(|i| {
            let mut r = vec![h.z()[i].clone()];
            r.extend_from_slice(h.u().row(i));
            r
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for size in 2..=d {
        for s in (0..p.num_facets()).combinations(size) {
            if p.incidence().iter().any(|inc| s.iter().all(|f| inc.contains(f))) {
                continue;
            }
            let rows = s.iter().map(|&i| homog[i].clone()).collect();
            let m = RatMatrix::from_rows(rows, d + 1).expect("consistent widths");
            if m.rank() != size {
                continue;
            }
            let ker = m.nullspace();
            let basis = RatMatrix::from_rows(ker, d + 1)
                .expect("consistent widths")
                .rref()
                .row_vecs();
            if !seen.insert(basis.clone()) {
                continue;
            }
            let at_infinity = basis.iter().all(|b| b[0].is_zero());
            out.push(ResidualFlat {
                facets: s,
                basis,
                at_infinity,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::polytope::{vertices_from_hrep, HRep};

    fn poly(rows: &[&[i64]], z: &[i64]) -> Polytope {
        let h = HRep::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            z.iter().map(|&x| int(x)).collect(),
        )
        .unwrap();
        vertices_from_hrep(h).unwrap()
    }

    #[test]
    fn counts() {
        let tri = poly(&[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0, 1]);
        assert!(residual_flats(&tri).is_empty());
        let sq = poly(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1]);
        let r = residual_flats(&sq);
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|f| f.at_infinity));
        assert_eq!(r[0].point().unwrap(), &[int(0), int(0), int(1)]);
    }
}
