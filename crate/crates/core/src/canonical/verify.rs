use num_traits::Zero;

use super::{canonical_form_in, CanonicalError};
use crate::algebra::{FactoredRatFn, Rat};
use crate::forms::RatForm;
use crate::polytope::{chart_vars, Polytope};

/// One residue check. `stratum` lists the facets of the original polytope
/// whose intersection is the face being checked, in the order they were
/// taken; `sign` is the orientation sign relating the residue to the
/// canonical form of the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumCheck {
    pub stratum: Vec<usize>,
    pub dim: usize,
    pub sign: i32,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<StratumCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&StratumCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// Distinct faces of the given dimension that were checked.
    pub fn strata(&self, dim: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .checks
            .iter()
            .filter(|c| c.dim == dim)
            .map(|c| {
                let mut s = c.stratum.clone();
                s.sort_unstable();
                s
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn into_result(self) -> Result<VerificationReport, CanonicalError> {
        match self.first_failure() {
            Some(c) => Err(CanonicalError::VerificationFailed {
                stratum: c.stratum.clone(),
                detail: c.detail.clone(),
            }),
            None => Ok(self),
        }
    }
}

/// Checks the residue recursion for the canonical form of `p`.
pub fn verify_positive_geometry(p: &Polytope) -> Result<VerificationReport, CanonicalError> {
    let omega = canonical_form_in(p, &chart_vars(p.dim()))?.form;
    verify_form(p, &omega)
}

/// Checks that `omega` has simple poles exactly along the facets of `p` and
/// that its residue along every facet is, with the orientation sign of the
/// forms module, the canonical form of that facet; recursively down to
/// vertices.
pub fn verify_form(p: &Polytope, omega: &RatForm) -> Result<VerificationReport, CanonicalError> {
    if p.dim() > 4 {
        return Err(CanonicalError::WrongDimension {
            expected: 4,
            got: p.dim(),
        });
    }
    let mut report = VerificationReport::default();
    let labels: Vec<usize> = (0..p.num_facets()).collect();
    recurse(p, omega, &labels, &[], &mut report)?;
    Ok(report)
}

fn fail(stratum: &[usize], dim: usize, sign: i32, detail: String) -> StratumCheck {
    StratumCheck {
        stratum: stratum.to_vec(),
        dim,
        sign,
        passed: false,
        detail,
    }
}

fn check_poles(p: &Polytope, omega: &RatForm) -> Result<Option<String>, CanonicalError> {
    let facets = p.hrep().facet_forms(omega.vars());
    for (g, e) in omega.coeff().factors() {
        if *e != 1 {
            return Ok(Some(format!("pole of order {e} along {g}")));
        }
        if !facets.iter().any(|f| g.scalar_multiple_of(f).is_some()) {
            return Ok(Some(format!("pole along {g}, which is not a facet hyperplane")));
        }
    }
    for f in &facets {
        let order = omega.pole_order(f)?;
        if order != 1 {
            return Ok(Some(format!("pole order {order} along facet {f}")));
        }
    }
    Ok(None)
}

fn orientation_sign(p: &Polytope, k: usize) -> i32 {
    let d = p.dim();
    let piv = p.facet_pivot(k);
    let flip = if (d - 1 - piv).is_multiple_of(2) { 1 } else { -1 };
    if p.hrep().u().get(k, piv) > &Rat::zero() {
        flip
    } else {
        -flip
    }
}

fn recurse(
    p: &Polytope,
    omega: &RatForm,
    labels: &[usize],
    path: &[usize],
    report: &mut VerificationReport,
) -> Result<(), CanonicalError> {
    let d = p.dim();
    if let Some(msg) = check_poles(p, omega)? {
        report.checks.push(fail(path, d, 0, msg));
        return Ok(());
    }
    let facets = p.hrep().facet_forms(omega.vars());
    for (k, f) in facets.iter().enumerate() {
        let mut here = path.to_vec();
        here.push(labels[k]);
        let sign = orientation_sign(p, k);
        let res = omega.residue_along_linear(f)?;
        if d == 1 {
            let value = res.form.coeff();
            let expected = FactoredRatFn::constant(&Vec::<String>::new(), Rat::from_integer(sign.into()));
            let passed = *value == expected;
            report.checks.push(StratumCheck {
                stratum: here,
                dim: 0,
                sign,
                passed,
                detail: format!("residue {value}, expected {sign}"),
            });
            continue;
        }
        let (facet, origin) = p.facet_polytope(k)?;
        let sub_vars = res.form.vars().to_vec();
        let expected = canonical_form_in(&facet, &sub_vars)?.form;
        let signed = if sign > 0 {
            res.form.clone()
        } else {
            res.form.neg()
        };
        let passed = signed.coeff() == expected.coeff();
        let detail = if passed {
            format!("residue along {f} is {sign} times the facet form")
        } else if res.form.coeff() == &expected.coeff().neg() {
            format!(
                "residue along {f} has orientation sign {}, expected {sign}",
                -sign
            )
        } else {
            format!(
                "residue along {f} is {}, expected {} times {}",
                res.form, sign, expected
            )
        };
        report.checks.push(StratumCheck {
            stratum: here.clone(),
            dim: d - 1,
            sign,
            passed,
            detail,
        });
        let sub_labels: Vec<usize> = origin.iter().map(|&g| labels[g]).collect();
        recurse(&facet, &signed, &sub_labels, &here, report)?;
    }
    Ok(())
}
