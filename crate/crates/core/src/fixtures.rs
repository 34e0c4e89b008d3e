//! Worked examples used by tests, benchmarks and the CLI data files.

use crate::algebra::{parse_poly_in, parse_rat, Rat, UPoly};
use crate::forms::CurveParam;
use crate::polypol::{
    validate_polypol, CurveData, IrrationalIntersection, Point, Polypol, QuasiRegularPolypol, XYZ,
};
use crate::polytope::{vertices_from_hrep, HRep, Polytope};

fn r(s: &str) -> Rat {
    parse_rat(s).expect("fixture number")
}

fn polytope(rows: &[&[i64]], z: &[i64]) -> Polytope {
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    let z = z.iter().map(|&x| Rat::from_integer(x.into())).collect();
    vertices_from_hrep(HRep::from_rows(rows, z).expect("fixture rows")).expect("fixture polytope")
}

/// `y₁, y₂ ≥ 0`, `y₁ + y₂ ≤ 1`.
pub fn triangle() -> Polytope {
    polytope(&[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0, 1])
}

/// `[0, 1]²`.
pub fn square() -> Polytope {
    polytope(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1])
}

/// The pentagon with facets `1 + y₁, 1 + y₂, 1 − y₁ + y₂, 1 − y₁, 1 − y₂`.
pub fn pentagon() -> Polytope {
    polytope(
        &[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1]],
        &[1, 1, 1, 1, 1],
    )
}

/// Planar kinematic variables naming the pentagon facets in order.
pub fn pentagon_names() -> Vec<String> {
    ["x13", "x14", "x24", "x25", "x35"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// The three-dimensional associahedron with 9 facets and 14 vertices.
pub fn associahedron() -> Polytope {
    polytope(
        &[
            &[-1, 0, 0],
            &[0, -1, 0],
            &[0, 0, -1],
            &[1, -1, 0],
            &[1, 0, -1],
            &[1, 0, 0],
            &[0, 1, -1],
            &[0, 1, 0],
            &[0, 0, 1],
        ],
        &[3, 4, 3, 2, 2, 0, 1, 0, 0],
    )
}

/// `[0, 1]³`.
pub fn cube() -> Polytope {
    polytope(
        &[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ],
        &[0, 1, 0, 1, 0, 1],
    )
}

/// Square pyramid with apex `(0, 0, 1)` over `[−1, 1]²`; the apex lies on
/// four facets.
pub fn pyramid() -> Polytope {
    polytope(
        &[&[0, 0, 1], &[-1, 0, -1], &[1, 0, -1], &[0, -1, -1], &[0, 1, -1]],
        &[0, 1, 1, 1, 1],
    )
}

/// Quadrilateral with vertices `(0, 1), (1, 1), (3, 0), (0, −1)`.
pub fn quadrilateral() -> Polytope {
    polytope(&[&[1, 0], &[0, -1], &[-1, -2], &[-1, 3]], &[0, 1, 3, 3])
}

/// Every polytope fixture.
pub fn all_polytopes() -> Vec<(&'static str, Polytope)> {
    vec![
        ("triangle", triangle()),
        ("square", square()),
        ("pentagon", pentagon()),
        ("quadrilateral", quadrilateral()),
        ("cube", cube()),
        ("pyramid", pyramid()),
        ("associahedron", associahedron()),
    ]
}

fn up(s: &str) -> UPoly {
    parse_poly_in(s, &["t"])
        .expect("fixture")
        .to_upoly()
        .expect("univariate")
}

fn curve(f: &str, param: Option<[&str; 3]>, nodes: Vec<Point>) -> CurveData {
    CurveData {
        f: parse_poly_in(f, &XYZ).expect("fixture curve"),
        param: param.map(|[a, b, c]| CurveParam::new(up(a), up(b), up(c))),
        nodes,
    }
}

fn pt(x: &str, y: &str, z: &str) -> Point {
    [r(x), r(y), r(z)]
}

fn quasi(curves: Vec<CurveData>, vertices: Vec<Point>, intervals: &[(&str, &str)]) -> QuasiRegularPolypol {
    let p = validate_polypol(curves, vertices).expect("fixture polypol");
    let iv = intervals.iter().map(|(a, b)| (r(a), r(b))).collect();
    QuasiRegularPolypol::new(p, iv).expect("fixture intervals")
}

/// The quarter disc bounded by `y = 0`, the unit circle and `x = 0`,
/// traversed counterclockwise.
pub fn pizza() -> QuasiRegularPolypol {
    quasi(
        vec![
            curve("y", Some(["t", "0", "1"]), vec![]),
            curve("z^2 - x^2 - y^2", Some(["1 - t^2", "2*t", "1 + t^2"]), vec![]),
            curve("x", Some(["0", "1 - t", "1"]), vec![]),
        ],
        vec![pt("1", "0", "1"), pt("0", "1", "1"), pt("0", "0", "1")],
        &[("0", "1"), ("0", "1"), ("0", "1")],
    )
}

/// The non-convex quadrilateral with vertices `(2, 0), (2/3, 2/3), (0, 2), (0, 0)`.
pub fn arrowhead() -> QuasiRegularPolypol {
    quasi(
        vec![
            curve("y", Some(["t", "0", "1"]), vec![]),
            curve("x + 2*y - 2*z", Some(["2 - 2*t", "t", "1"]), vec![]),
            curve("2*x + y - 2*z", Some(["t", "2 - 2*t", "1"]), vec![]),
            curve("x", Some(["0", "t", "1"]), vec![]),
        ],
        vec![
            pt("2", "0", "1"),
            pt("2/3", "2/3", "1"),
            pt("0", "2", "1"),
            pt("0", "0", "1"),
        ],
        &[("0", "2"), ("0", "2/3"), ("2/3", "0"), ("2", "0")],
    )
}

/// The region between the chord `x + y = 1/2` and the unit circle in the
/// first quadrant; the chord meets the circle in two irrational points.
pub fn chord_region() -> (QuasiRegularPolypol, Vec<IrrationalIntersection>) {
    let q = quasi(
        vec![
            curve("y", Some(["t", "0", "1"]), vec![]),
            curve("z^2 - x^2 - y^2", Some(["1 - t^2", "2*t", "1 + t^2"]), vec![]),
            curve("x", Some(["0", "t", "1"]), vec![]),
            curve("2*x + 2*y - z", Some(["2*t", "1 - 2*t", "2"]), vec![]),
        ],
        vec![
            pt("1", "0", "1"),
            pt("0", "1", "1"),
            pt("0", "1", "2"),
            pt("1", "0", "2"),
        ],
        &[("1/2", "1"), ("0", "1"), ("1", "1/2"), ("0", "1/2")],
    );
    let irr = vec![IrrationalIntersection {
        param_curve: 1,
        other_curve: 3,
        min_poly: up("3*t^2 - 4*t - 1"),
    }];
    (q, irr)
}

/// A nodal cubic `y²z = x³ + x²z` cut by the line `x = 3z`.
pub fn nodal_cubic_with_line() -> Polypol {
    validate_polypol(
        vec![
            curve(
                "y^2*z - x^3 - x^2*z",
                Some(["t^2 - 1", "t^3 - t", "1"]),
                vec![pt("0", "0", "1")],
            ),
            curve("x - 3*z", Some(["3", "t", "1"]), vec![]),
        ],
        vec![pt("3", "6", "1"), pt("3", "-6", "1")],
    )
    .expect("fixture polypol")
}

/// The smooth cubic `y²z = x³ − xz²` with the line `y = 0`; the cubic has
/// genus one and no parametrization.
pub fn elliptic() -> Polypol {
    validate_polypol(
        vec![
            curve("y^2*z - x^3 + x*z^2", None, vec![]),
            curve("y", Some(["t", "0", "1"]), vec![]),
        ],
        vec![pt("0", "0", "1"), pt("1", "0", "1")],
    )
    .expect("fixture polypol")
}

/// Every quasi-regular polypol fixture with its irrational intersection data.
pub fn all_quasi_regular() -> Vec<(&'static str, QuasiRegularPolypol, Vec<IrrationalIntersection>)> {
    let (chord, irr) = chord_region();
    vec![
        ("pizza", pizza(), vec![]),
        ("arrowhead", arrowhead(), vec![]),
        ("chord", chord, irr),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(associahedron().vertices().len(), 14);
        assert_eq!(pyramid().vertices().len(), 5);
        assert!(!pyramid().is_simple());
        assert_eq!(quadrilateral().vertices().len(), 4);
        assert_eq!(all_quasi_regular().len(), 3);
        assert_eq!(nodal_cubic_with_line().total_degree(), 4);
        assert_eq!(elliptic().total_degree(), 4);
    }
}
