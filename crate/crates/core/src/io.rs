//! JSON input and output.
//!
//! Numbers are accepted as JSON integers or as `"p/q"` strings and are always
//! written as strings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{parse_poly_in, parse_rat, AlgebraError, Rat, UPoly};
use crate::forms::CurveParam;
use crate::polypol::{
    validate_polypol, CurveData, IrrationalIntersection, Point, PolypolError, QuasiRegularPolypol, XYZ,
};
use crate::polytope::{vertices_from_hrep, HRep, Polytope, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid number {0:?}")]
    Number(String),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Polypol(#[from] PolypolError),
}

impl IoError {
    /// Whether the input was malformed, as opposed to well-formed but
    /// geometrically invalid.
    pub fn is_parse(&self) -> bool {
        match self {
            IoError::Json(_) | IoError::Number(_) | IoError::Schema(_) => true,
            IoError::Algebra(e) => matches!(e, AlgebraError::Parse { .. }),
            IoError::Polytope(_) | IoError::Polypol(_) => false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    pub fn to_rat(&self) -> Result<Rat, IoError> {
        match self {
            Num::Int(n) => Ok(Rat::from_integer((*n).into())),
            Num::Str(s) => parse_rat(s).map_err(|_| IoError::Number(s.clone())),
        }
    }
}

impl From<&Rat> for Num {
    fn from(r: &Rat) -> Num {
        Num::Str(r.to_string())
    }
}

fn rats(v: &[Num]) -> Result<Vec<Rat>, IoError> {
    v.iter().map(Num::to_rat).collect()
}

pub fn rat_strings(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(r.to_string())).collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeJson {
    #[serde(rename = "U")]
    pub u: Vec<Vec<Num>>,
    pub z: Vec<Num>,
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

pub fn parse_hrep_json(text: &str) -> Result<HRep, IoError> {
    let raw: PolytopeJson = from_json(text)?;
    let rows = raw.u.iter().map(|r| rats(r)).collect::<Result<Vec<_>, _>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(IoError::Schema("rows of U have different lengths".into()));
    }
    Ok(HRep::from_rows(rows, rats(&raw.z)?)?)
}

pub fn parse_polytope_json(text: &str) -> Result<Polytope, IoError> {
    Ok(vertices_from_hrep(parse_hrep_json(text)?)?)
}

pub fn hrep_to_json(h: &HRep) -> Value {
    json!({
        "U": (0..h.n()).map(|i| rat_strings(h.u().row(i))).collect::<Vec<_>>(),
        "z": rat_strings(h.z()),
    })
}

/// Vertices (as strings) and, per vertex, the facets containing it.
pub fn vertices_to_json(p: &Polytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(|v| rat_strings(v)).collect::<Vec<_>>(),
        "incidence": p.incidence(),
        "simple": p.is_simple(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveJson {
    pub f: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<[String; 3]>,
    #[serde(default)]
    pub nodes: Vec<[Num; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrrationalJson {
    pub param_curve: usize,
    pub other_curve: usize,
    pub min_poly: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolypolJson {
    pub curves: Vec<CurveJson>,
    pub vertices: Vec<[Num; 3]>,
    #[serde(default)]
    pub intervals: Vec<[Num; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub irrational: Vec<IrrationalJson>,
}

/// Polypol input before the quasi-regularity check.
#[derive(Clone, Debug)]
pub struct PolypolInput {
    pub curves: Vec<CurveData>,
    pub vertices: Vec<Point>,
    pub intervals: Vec<(Rat, Rat)>,
    pub irrational: Vec<IrrationalIntersection>,
}

fn upoly_in_t(s: &str) -> Result<UPoly, IoError> {
    Ok(parse_poly_in(s, &["t"])?.to_upoly()?)
}

fn point(p: &[Num; 3]) -> Result<Point, IoError> {
    Ok([p[0].to_rat()?, p[1].to_rat()?, p[2].to_rat()?])
}

pub fn parse_polypol_json(text: &str) -> Result<PolypolInput, IoError> {
    let raw: PolypolJson = from_json(text)?;
    let curves = raw
        .curves
        .iter()
        .map(|c| {
            let f = parse_poly_in(&c.f, &XYZ)?;
            let param = match &c.param {
                Some([r, s, h]) => Some(CurveParam::new(upoly_in_t(r)?, upoly_in_t(s)?, upoly_in_t(h)?)),
                None => None,
            };
            let nodes = c.nodes.iter().map(point).collect::<Result<_, _>>()?;
            Ok(CurveData { f, param, nodes })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let vertices = raw.vertices.iter().map(point).collect::<Result<_, _>>()?;
    let intervals = raw
        .intervals
        .iter()
        .map(|[a, b]| Ok((a.to_rat()?, b.to_rat()?)))
        .collect::<Result<_, IoError>>()?;
    let irrational = raw
        .irrational
        .iter()
        .map(|e| {
            Ok(IrrationalIntersection {
                param_curve: e.param_curve,
                other_curve: e.other_curve,
                min_poly: upoly_in_t(&e.min_poly)?,
            })
        })
        .collect::<Result<_, IoError>>()?;
    Ok(PolypolInput {
        curves,
        vertices,
        intervals,
        irrational,
    })
}

impl PolypolInput {
    pub fn into_quasi_regular(self) -> Result<(QuasiRegularPolypol, Vec<IrrationalIntersection>), IoError> {
        let p = validate_polypol(self.curves, self.vertices)?;
        Ok((QuasiRegularPolypol::new(p, self.intervals)?, self.irrational))
    }
}

/// Serializes a quasi-regular polypol back to the input schema.
pub fn polypol_to_json(q: &QuasiRegularPolypol, irrational: &[IrrationalIntersection]) -> Value {
    let p = q.polypol();
    let curves: Vec<Value> = p
        .curves()
        .iter()
        .map(|c| {
            let mut v = json!({
                "f": c.f().to_string(),
                "nodes": c.nodes().iter().map(|n| rat_strings(n)).collect::<Vec<_>>(),
            });
            if let Some(phi) = c.param() {
                v["param"] = json!(phi.coords().map(|u| u.display_in("t")));
            }
            v
        })
        .collect();
    let mut out = json!({
        "curves": curves,
        "vertices": p.vertices().iter().map(|v| rat_strings(v)).collect::<Vec<_>>(),
        "intervals": q.intervals().iter().map(|(a, b)| rat_strings(&[a.clone(), b.clone()])).collect::<Vec<_>>(),
    });
    if !irrational.is_empty() {
        out["irrational"] = json!(irrational
            .iter()
            .map(|e| json!({
                "param_curve": e.param_curve,
                "other_curve": e.other_curve,
                "min_poly": e.min_poly.display_in("t"),
            }))
            .collect::<Vec<_>>());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn numbers_and_polytopes() {
        let p = parse_polytope_json(r#"{"U": [[1, 0], [0, 1], [-1, "-1"]], "z": [0, 0, "1/2"]}"#).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert!(p.vertices().contains(&vec![rat(1, 2), int(0)]));
        let back = hrep_to_json(p.hrep());
        assert_eq!(back["z"][2], "1/2");
        let again = parse_hrep_json(&back.to_string()).unwrap();
        assert_eq!(&again, p.hrep());
        let v = vertices_to_json(&p);
        assert_eq!(v["vertices"][0][0], "0");
    }

    #[test]
    fn errors_are_classified() {
        assert!(parse_polytope_json("{").unwrap_err().is_parse());
        assert!(parse_polytope_json(r#"{"U": [[1]], "z": ["x"]}"#)
            .unwrap_err()
            .is_parse());
        let e = parse_polytope_json(r#"{"U": [[1], [1]], "z": [0, 1]}"#).unwrap_err();
        assert!(!e.is_parse());
    }

    #[test]
    fn polypol_round_trip() {
        let text = r#"{
            "curves": [
                {"f": "y", "param": ["t", "0", "1"]},
                {"f": "z^2 - x^2 - y^2", "param": ["1 - t^2", "2*t", "1 + t^2"]},
                {"f": "x", "param": ["0", "1 - t", "1"]}
            ],
            "vertices": [[1, 0, 1], [0, 1, 1], [0, 0, 1]],
            "intervals": [[0, 1], [0, 1], [0, 1]]
        }"#;
        let (q, irr) = parse_polypol_json(text).unwrap().into_quasi_regular().unwrap();
        let back = polypol_to_json(&q, &irr).to_string();
        let (q2, _) = parse_polypol_json(&back).unwrap().into_quasi_regular().unwrap();
        assert_eq!(q, q2);
    }
}
