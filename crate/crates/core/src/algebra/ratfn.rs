use std::fmt;

use num_traits::{One, Zero};

use super::mpoly::union_vars;
use super::{AlgebraError, MPoly, Rat, UPoly};

/// Rational function `numerator / Π fᵢ^eᵢ` with an explicit list of
/// denominator factors.
///
/// Factors are non-constant, pairwise not scalar multiples of each other,
/// and the numerator is not divisible by any of them. No multivariate gcd is
/// ever computed: cancellation happens only against the listed factors.
#[derive(Clone, Debug)]
pub struct FactoredRatFn {
    vars: Vec<String>,
    num: MPoly,
    factors: Vec<(MPoly, u32)>,
}

impl FactoredRatFn {
    pub fn from_poly(p: MPoly) -> FactoredRatFn {
        FactoredRatFn {
            vars: p.vars().to_vec(),
            num: p,
            factors: Vec::new(),
        }
    }

    pub fn constant(vars: &[impl AsRef<str>], c: Rat) -> FactoredRatFn {
        FactoredRatFn::from_poly(MPoly::constant(vars, c))
    }

    /// Builds and normalizes. Constant factors are folded into the
    /// numerator, scalar-multiple factors are merged (the first occurrence
    /// is kept as the representative), and common factors are cancelled.
    pub fn new(num: MPoly, factors: Vec<(MPoly, u32)>) -> Result<FactoredRatFn, AlgebraError> {
        let mut vars = num.vars().to_vec();
        for (f, _) in &factors {
            vars = union_vars(&vars, f.vars());
        }
        let mut num = num.with_vars(&vars)?;
        let mut merged: Vec<(MPoly, u32)> = Vec::new();
        for (f, e) in factors {
            if e == 0 {
                continue;
            }
            if f.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            let f = f.with_vars(&vars)?;
            if let Some(c) = f.constant_value() {
                num = num.scale(&c.pow(-(e as i32)));
                continue;
            }
            match merged
                .iter_mut()
                .find_map(|(g, k)| f.scalar_multiple_of(g).map(|lam| (k, lam)))
            {
                Some((k, lam)) => {
                    *k += e;
                    num = num.scale(&lam.pow(-(e as i32)));
                }
                None => merged.push((f, e)),
            }
        }
        let mut out = FactoredRatFn {
            vars,
            num,
            factors: merged,
        };
        out.reduce();
        Ok(out)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.factors.clear();
            return;
        }
        for (f, e) in self.factors.iter_mut() {
            while *e > 0 {
                match self.num.exact_div(f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.factors.retain(|(_, e)| *e > 0);
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn factors(&self) -> &[(MPoly, u32)] {
        &self.factors
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> MPoly {
        self.factors
            .iter()
            .fold(MPoly::constant(&self.vars, Rat::one()), |acc, (f, e)| {
                acc * f.pow(*e)
            })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Re-expresses over a variable list that contains all used variables.
    pub fn with_vars(&self, vars: &[impl AsRef<str>]) -> Result<FactoredRatFn, AlgebraError> {
        Ok(FactoredRatFn {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            num: self.num.with_vars(vars)?,
            factors: self
                .factors
                .iter()
                .map(|(f, e)| Ok((f.with_vars(vars)?, *e)))
                .collect::<Result<_, AlgebraError>>()?,
        })
    }

    /// Common denominator of two factor lists, matching factors up to scalars.
    fn common_factors(a: &[(MPoly, u32)], b: &[(MPoly, u32)]) -> Vec<(MPoly, u32)> {
        let mut out: Vec<(MPoly, u32)> = a.to_vec();
        for (f, e) in b {
            match out.iter_mut().find(|(g, _)| f.scalar_multiple_of(g).is_some()) {
                Some((_, k)) => *k = (*k).max(*e),
                None => out.push((f.clone(), *e)),
            }
        }
        out
    }

    /// Numerator of `self` when written over `Π target`; `target` must be
    /// a common multiple of this function's denominator factors.
    fn lift(&self, target: &[(MPoly, u32)]) -> MPoly {
        let mut num = self.num.clone();
        for (g, k) in target {
            let mine = self
                .factors
                .iter()
                .find_map(|(f, e)| f.scalar_multiple_of(g).map(|lam| (*e, lam)));
            match mine {
                Some((e, lam)) => {
                    num = num.scale(&lam.pow(-(e as i32)));
                    if *k > e {
                        num = num * g.pow(*k - e);
                    }
                }
                None => num = num * g.pow(*k),
            }
        }
        num
    }

    pub fn add(&self, other: &FactoredRatFn) -> FactoredRatFn {
        let target = Self::common_factors(&self.factors, &other.factors);
        let num = self.lift(&target) + other.lift(&target);
        FactoredRatFn::new(num, target).expect("nonzero factors")
    }

    pub fn sub(&self, other: &FactoredRatFn) -> FactoredRatFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FactoredRatFn {
        FactoredRatFn {
            vars: self.vars.clone(),
            num: -&self.num,
            factors: self.factors.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> FactoredRatFn {
        if c.is_zero() {
            return FactoredRatFn::constant(&self.vars, Rat::zero());
        }
        FactoredRatFn {
            vars: self.vars.clone(),
            num: self.num.scale(c),
            factors: self.factors.clone(),
        }
    }

    pub fn mul(&self, other: &FactoredRatFn) -> FactoredRatFn {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        FactoredRatFn::new(&self.num * &other.num, factors).expect("nonzero factors")
    }

    pub fn mul_poly(&self, p: &MPoly) -> FactoredRatFn {
        FactoredRatFn::new(&self.num * p, self.factors.clone()).expect("nonzero factors")
    }

    /// Divides by `p`, recording it as a new denominator factor.
    pub fn div_poly(&self, p: &MPoly, exp: u32) -> Result<FactoredRatFn, AlgebraError> {
        let mut factors = self.factors.clone();
        factors.push((p.clone(), exp));
        FactoredRatFn::new(self.num.clone(), factors)
    }

    pub fn div(&self, other: &FactoredRatFn) -> Result<FactoredRatFn, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut num = self.num.clone();
        for (f, e) in &other.factors {
            num = num * f.pow(*e);
        }
        let mut factors = self.factors.clone();
        factors.push((other.num.clone(), 1));
        FactoredRatFn::new(num, factors)
    }

    /// Order of `f` as a denominator factor minus its order in the numerator.
    /// `f` must be non-constant.
    pub fn pole_order(&self, f: &MPoly) -> Result<i64, AlgebraError> {
        if f.is_constant() {
            return Err(AlgebraError::Dimension("constant divisor".into()));
        }
        let mut den = 0i64;
        for (g, e) in &self.factors {
            let m = g.multiplicity_of(f);
            den += i64::from(m) * i64::from(*e);
        }
        let num = if self.num.is_zero() {
            0
        } else {
            i64::from(self.num.multiplicity_of(f))
        };
        Ok(den - num)
    }

    /// Value at a point in this function's variable order; `None` on a pole
    /// of the listed factors.
    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let mut d = Rat::one();
        for (f, e) in &self.factors {
            let v = f.eval(point);
            if v.is_zero() {
                return None;
            }
            d *= v.pow(*e as i32);
        }
        Some(self.num.eval(point) / d)
    }

    pub fn eval_named(&self, assignment: &[(&str, Rat)]) -> Result<Option<Rat>, AlgebraError> {
        let point: Vec<Rat> = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, x)| x.clone())
                    .ok_or_else(|| AlgebraError::Dimension(format!("no value for variable {v}")))
            })
            .collect::<Result<_, _>>()?;
        Ok(self.eval(&point))
    }

    /// Simultaneous substitution into numerator and every factor.
    pub fn substitute(&self, subs: &[(&str, MPoly)]) -> Result<FactoredRatFn, AlgebraError> {
        let num = self.num.substitute(subs);
        let factors = self
            .factors
            .iter()
            .map(|(f, e)| (f.substitute(subs), *e))
            .collect();
        FactoredRatFn::new(num, factors)
    }

    /// Numerator and expanded denominator as univariate polynomials, with
    /// the common univariate gcd removed.
    pub fn to_univariate(&self) -> Result<(UPoly, UPoly), AlgebraError> {
        let n = self.num.to_upoly()?;
        let d = self.denominator().to_upoly()?;
        let g = n.gcd(&d);
        if g.is_zero() || g.degree() == Some(0) {
            return Ok((n, d));
        }
        Ok((n.exact_div(&g).expect("gcd"), d.exact_div(&g).expect("gcd")))
    }

    pub fn to_latex(&self) -> String {
        if self.factors.is_empty() {
            return self.num.to_latex();
        }
        let den: Vec<String> = self
            .factors
            .iter()
            .map(|(f, e)| {
                let base = if is_atomic(f) {
                    f.to_latex()
                } else {
                    format!("({})", f.to_latex())
                };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{{{e}}}")
                }
            })
            .collect();
        format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), den.join(" "))
    }
}

fn is_atomic(f: &MPoly) -> bool {
    f.num_terms() == 1 && f.degree() == 1 && f.terms().next().is_some_and(|(_, c)| c.is_one())
}

impl PartialEq for FactoredRatFn {
    fn eq(&self, other: &Self) -> bool {
        let target = Self::common_factors(&self.factors, &other.factors);
        self.lift(&target) == other.lift(&target)
    }
}

impl Eq for FactoredRatFn {}

impl fmt::Display for FactoredRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, e)| {
                let base = if is_atomic(g) {
                    g.to_string()
                } else {
                    format!("({g})")
                };
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if parts.len() == 1 && self.factors[0].1 == 1 && is_atomic(&self.factors[0].0) {
            write!(f, "{num}/{}", parts[0])
        } else {
            write!(f, "{num}/({})", parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_poly, parse_ratfn};

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn constructor_normalizes() {
        let r = FactoredRatFn::new(p("2*x + 2"), vec![(p("x + 1"), 1), (p("2*y"), 1)]).unwrap();
        assert!(r.numerator().is_constant());
        assert_eq!(r.factors().len(), 1);
        assert_eq!(r, FactoredRatFn::new(p("1"), vec![(p("y"), 1)]).unwrap());
    }

    #[test]
    fn scalar_multiple_factors_merge() {
        let r = FactoredRatFn::new(p("1"), vec![(p("1 - x"), 1), (p("x - 1"), 1)]).unwrap();
        assert_eq!(r.factors().len(), 1);
        assert_eq!(r.factors()[0].1, 2);
        assert_eq!(r.numerator(), &p("-1"));
    }

    #[test]
    fn addition_over_common_denominator() {
        let a = parse_ratfn("1/x").unwrap();
        let b = parse_ratfn("1/(1 - x)").unwrap();
        let s = a.add(&b);
        assert_eq!(s, parse_ratfn("1/(x*(1 - x))").unwrap());
        let t = parse_ratfn("1/(x*y)")
            .unwrap()
            .sub(&parse_ratfn("1/(y*x)").unwrap());
        assert!(t.is_zero());
    }

    #[test]
    fn pole_orders() {
        let r = parse_ratfn("1/(x*y)").unwrap();
        assert_eq!(r.pole_order(&p("x")).unwrap(), 1);
        let s = parse_ratfn("x/y").unwrap();
        assert_eq!(s.pole_order(&p("x")).unwrap(), -1);
        assert_eq!(s.pole_order(&p("2*y")).unwrap(), 1);
        assert!(s.pole_order(&p("3")).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(parse_ratfn("1/x").unwrap().to_string(), "1/x");
        assert_eq!(
            parse_ratfn("1/(x*y*(1-x-y))").unwrap().to_string(),
            "1/(x*y*(1 - x - y))"
        );
        assert_eq!(parse_ratfn("(x+1)/x^2").unwrap().to_string(), "(1 + x)/(x^2)");
        assert_eq!(
            parse_ratfn("1/(x*y*(1-x-y))").unwrap().to_latex(),
            "\\frac{1}{x y (1 - x - y)}"
        );
    }

    #[test]
    fn evaluation_and_substitution() {
        let r = parse_ratfn("(x + y)/(x*(1 - y))").unwrap();
        assert_eq!(r.eval(&[int(1), int(3)]), Some(int(-2)));
        assert_eq!(r.eval(&[int(0), int(3)]), None);
        let s = r.substitute(&[("y", p("x"))]).unwrap();
        assert_eq!(s, parse_ratfn("2/(1 - x)").unwrap());
        assert!(r.substitute(&[("y", p("1"))]).is_err());
    }
}
