//! Benchmark workloads.

use posgeom::algebra::Rat;
use posgeom::fixtures;
use posgeom::polytope::{vertices_from_hrep, HRep, Polytope};

/// Lattice points on the circle of radius 5, counterclockwise.
const DIRECTIONS: [(i64, i64); 12] = [
    (5, 0),
    (4, 3),
    (3, 4),
    (0, 5),
    (-3, 4),
    (-4, 3),
    (-5, 0),
    (-4, -3),
    (-3, -4),
    (0, -5),
    (3, -4),
    (4, -3),
];

/// Polygon `u·y + 1 ≥ 0` over `n` of the directions above, `4 ≤ n ≤ 12`.
pub fn polygon(n: usize) -> Polytope {
    assert!((4..=12).contains(&n), "polygon size");
    let rows = (0..n)
        .map(|k| {
            let (a, b) = DIRECTIONS[k * 12 / n];
            vec![Rat::from_integer(a.into()), Rat::from_integer(b.into())]
        })
        .collect();
    let z = vec![Rat::from_integer(1.into()); n];
    vertices_from_hrep(HRep::from_rows(rows, z).expect("rows")).expect("bounded polygon")
}

/// Named polytopes for the canonical form benchmarks.
pub fn polytopes() -> Vec<(&'static str, Polytope)> {
    vec![
        ("pentagon", fixtures::pentagon()),
        ("polygon12", polygon(12)),
        ("pyramid", fixtures::pyramid()),
        ("associahedron", fixtures::associahedron()),
    ]
}
