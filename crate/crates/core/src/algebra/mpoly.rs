use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{natural_sort, AlgebraError, Rat, UPoly};

/// Exponent vector. Ordered by total degree first and then by reversed
/// lexicographic comparison, so ascending iteration prints
/// `1 + x + y + x^2 + x*y + y^2`. The order is translation invariant, hence a monomial order,
/// and the largest element serves as the leading monomial for division.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with rational coefficients over a named, ordered list
/// of variables. Zero coefficients are never stored.
///
/// Binary operations unify variable lists by name: the result uses the left
/// operand's variables followed by any new ones from the right operand.
/// Equality compares term maps after aligning variable lists, so `x` over
/// `[x]` equals `x` over `[x, y]`.
#[derive(Clone, Debug)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(vars: &[impl AsRef<str>]) -> MPoly {
        MPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[impl AsRef<str>], c: Rat) -> MPoly {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(Monomial(vec![0; n]), c);
        }
        p
    }

    /// The variable `name`; appended to `vars` if not already present.
    pub fn var(vars: &[impl AsRef<str>], name: &str) -> MPoly {
        let mut vs: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let idx = match vs.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                vs.push(name.to_string());
                vs.len() - 1
            }
        };
        let mut e = vec![0; vs.len()];
        e[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(e), Rat::one());
        MPoly { vars: vs, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(vars: &[impl AsRef<str>], terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> MPoly {
        let mut p = MPoly::zero(vars);
        let n = p.vars.len();
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length must match variable count");
            add_term(&mut p.terms, Monomial(e), c);
        }
        p
    }

    /// Affine-linear form `coeffs · vars + constant`.
    pub fn linear(vars: &[impl AsRef<str>], coeffs: &[Rat], constant: &Rat) -> MPoly {
        assert_eq!(vars.len(), coeffs.len());
        let n = vars.len();
        let mut terms: Vec<(Vec<u32>, Rat)> = Vec::with_capacity(n + 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            terms.push((e, c.clone()));
        }
        terms.push((vec![0; n], constant.clone()));
        MPoly::from_terms(vars, terms)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The value if the polynomial is constant (including zero).
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Variables that occur with a positive exponent, in list order.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable that actually occurs.
    pub fn with_vars(&self, target: &[impl AsRef<str>]) -> Result<MPoly, AlgebraError> {
        let target: Vec<String> = target.iter().map(|v| v.as_ref().to_string()).collect();
        if target == self.vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == v) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.keys().any(|m| m.0[i] > 0) {
                        return Err(AlgebraError::Dimension(format!(
                            "variable {v} is used but missing from the target list"
                        )));
                    }
                    map.push(None);
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[*j] = m.0[i];
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(MPoly { vars: target, terms })
    }

    fn aligned(&self, other: &MPoly) -> (MPoly, MPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = union_vars(&self.vars, &other.vars);
        (
            self.with_vars(&vars).expect("superset"),
            other.with_vars(&vars).expect("superset"),
        )
    }

    /// Same polynomial with variables re-ordered by natural name order.
    pub fn sorted_vars(&self) -> MPoly {
        let mut vs = self.vars.clone();
        natural_sort(&mut vs);
        self.with_vars(&vs).expect("permutation")
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::constant(&self.vars, Rat::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `q` with `self = q · b`, or `None` when `b` does not
    /// divide `self` (or `b` is zero).
    pub fn exact_div(&self, b: &MPoly) -> Option<MPoly> {
        if b.is_zero() {
            return None;
        }
        let (a, b) = self.aligned(b);
        if let Some(c) = b.constant_value() {
            return Some(a.scale(&c.recip()));
        }
        let (lm_b, lc_b) = b.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = a.terms;
        let mut quot = BTreeMap::new();
        while let Some((lm_r, lc_r)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm_b.divides(&lm_r) {
                return None;
            }
            let shift: Vec<u32> = lm_r.0.iter().zip(&lm_b.0).map(|(r, s)| r - s).collect();
            let c = &lc_r / &lc_b;
            for (m, bc) in &b.terms {
                let e: Vec<u32> = m.0.iter().zip(&shift).map(|(x, y)| x + y).collect();
                add_term(&mut rem, Monomial(e), -(bc * &c));
            }
            quot.insert(Monomial(shift), c);
        }
        Some(MPoly {
            vars: a.vars,
            terms: quot,
        })
    }

    /// Largest `k` with `f^k | self`. `f` must be non-constant; the zero
    /// polynomial reports `u32::MAX`.
    pub fn multiplicity_of(&self, f: &MPoly) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(f) {
            cur = q;
            k += 1;
        }
        k
    }

    /// `Some(c)` when `self = c · other` with `c ≠ 0`.
    pub fn scalar_multiple_of(&self, other: &MPoly) -> Option<Rat> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (a, b) = self.aligned(other);
        let (m, ca) = a.leading_term()?;
        let cb = b.terms.get(m)?;
        let c = ca / cb;
        if a == b.scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    pub fn derivative(&self, var: &str) -> MPoly {
        let Some(i) = self.var_index(var) else {
            return MPoly::zero(&self.vars);
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                terms.insert(Monomial(e), c * Rat::from_integer(m.0[i].into()));
            }
        }
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Evaluates at a point given in this polynomial's variable order.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(&m.0) {
                if *e > 0 {
                    t *= num_traits::pow(x.clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluates with the given named assignment; every used variable must
    /// be assigned.
    pub fn eval_named(&self, assignment: &[(&str, Rat)]) -> Result<Rat, AlgebraError> {
        let mut point = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match assignment.iter().find(|(n, _)| n == v) {
                Some((_, x)) => point.push(x.clone()),
                None if self.terms.keys().all(|m| m.0[i] == 0) => point.push(Rat::zero()),
                None => return Err(AlgebraError::Dimension(format!("no value for variable {v}"))),
            }
        }
        Ok(self.eval(&point))
    }

    /// Simultaneous substitution of variables by polynomials. Substituted
    /// variables are dropped from the variable list unless they reappear in
    /// one of the replacement polynomials.
    pub fn substitute(&self, subs: &[(&str, MPoly)]) -> MPoly {
        let mut out_vars: Vec<String> = self
            .vars
            .iter()
            .filter(|v| !subs.iter().any(|(n, _)| n == v))
            .cloned()
            .collect();
        for (_, p) in subs {
            out_vars = union_vars(&out_vars, &p.vars);
        }
        let repl: Vec<MPoly> = self
            .vars
            .iter()
            .map(|v| match subs.iter().find(|(n, _)| n == v) {
                Some((_, p)) => p.with_vars(&out_vars).expect("superset"),
                None => MPoly::var(&out_vars, v),
            })
            .collect();
        self.compose(&repl, &out_vars)
    }

    /// Replaces the i-th variable by `values[i]`, all over `out_vars`.
    fn compose(&self, values: &[MPoly], out_vars: &[String]) -> MPoly {
        let mut powers: Vec<Vec<MPoly>> = values
            .iter()
            .map(|v| vec![MPoly::constant(out_vars, Rat::one()), v.clone()])
            .collect();
        let mut acc = MPoly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(out_vars, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let e = *e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &values[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluates with each variable replaced by a univariate polynomial,
    /// in this polynomial's variable order.
    pub fn eval_upoly(&self, values: &[UPoly]) -> UPoly {
        assert_eq!(values.len(), self.vars.len(), "point dimension");
        let mut powers: Vec<Vec<UPoly>> = values.iter().map(|v| vec![UPoly::one(), v.clone()]).collect();
        let mut acc = UPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UPoly::constant(c.clone());
            for (i, e) in m.0.iter().enumerate() {
                let e = *e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &values[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Multiplies every term by a power of the new variable `h` so that the
    /// result is homogeneous of degree `deg` (which must be at least the
    /// total degree). `h` is placed first in the variable list.
    pub fn homogenize(&self, h: &str, deg: u32) -> MPoly {
        assert!(deg >= self.degree(), "homogenizing degree below total degree");
        let mut vars = vec![h.to_string()];
        vars.extend(self.vars.iter().filter(|v| *v != h).cloned());
        let base = self.with_vars(&vars[1..]).expect("same vars");
        let terms = base.terms.iter().map(|(m, c)| {
            let mut e = vec![deg - m.degree()];
            e.extend_from_slice(&m.0);
            (e, c.clone())
        });
        MPoly::from_terms(&vars, terms)
    }

    /// Sets `var = 1` and drops it from the variable list.
    pub fn dehomogenize(&self, var: &str) -> MPoly {
        let one = MPoly::constant(&[] as &[&str], Rat::one());
        self.substitute(&[(var, one)])
    }

    /// `(coefficients, constant)` of an affine-linear polynomial over `vars`,
    /// or `None` when the degree exceeds one.
    pub fn affine_coeffs(&self, vars: &[impl AsRef<str>]) -> Option<(Vec<Rat>, Rat)> {
        if self.degree() > 1 {
            return None;
        }
        let p = self.with_vars(vars).ok()?;
        let n = vars.len();
        let coeffs = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                p.coeff(&e)
            })
            .collect();
        Some((coeffs, p.coeff(&vec![0; n])))
    }

    /// Converts a polynomial in at most one used variable.
    pub fn to_upoly(&self) -> Result<UPoly, AlgebraError> {
        let used = self.used_vars();
        if used.len() > 1 {
            return Err(AlgebraError::NotUnivariate(self.to_string()));
        }
        let mut coeffs = vec![Rat::zero(); self.degree() as usize + 1];
        for (m, c) in &self.terms {
            coeffs[m.degree() as usize] = c.clone();
        }
        Ok(UPoly::new(coeffs))
    }

    /// Polynomial with integer coefficients of content one, and the factor
    /// `c` with `self = c · primitive`. Sign of the leading term is kept.
    pub fn primitive(&self) -> (Rat, MPoly) {
        if self.is_zero() {
            return (Rat::one(), self.clone());
        }
        let coeffs: Vec<Rat> = self.terms.values().cloned().collect();
        let prim = super::primitive_integer_vector(&coeffs);
        let c = &coeffs[0] / &prim[0];
        let terms = self.terms.keys().cloned().zip(prim).collect();
        (
            c,
            MPoly {
                vars: self.vars.clone(),
                terms,
            },
        )
    }

    /// LaTeX rendering, e.g. `5 - 3 y_{1} + 3 y_{2} - y_{1} y_{2}`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(&m.0)
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| {
                    let v = latex_var(v);
                    if *e == 1 {
                        v
                    } else {
                        format!("{v}^{{{e}}}")
                    }
                })
                .collect();
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else {
                if !a.is_one() {
                    out.push_str(&coeff);
                    out.push(' ');
                }
                out.push_str(&mono.join(" "));
            }
        }
        out
    }
}

pub(crate) fn latex_var(v: &str) -> String {
    let split = v.char_indices().find(|(_, c)| c.is_ascii_digit()).map(|(i, _)| i);
    match split {
        Some(i) if i > 0 && v[i..].chars().all(|c| c.is_ascii_digit()) => {
            format!("{}_{{{}}}", &v[..i], &v[i..])
        }
        _ => v.to_string(),
    }
}

pub(crate) fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    for v in b {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

fn add_term(terms: &mut BTreeMap<Monomial, Rat>, m: Monomial, c: Rat) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MPoly {}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (mut a, b) = self.aligned(rhs);
        for (m, c) in b.terms {
            add_term(&mut a.terms, m, c);
        }
        a
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let (mut a, b) = self.aligned(rhs);
        for (m, c) in b.terms {
            add_term(&mut a.terms, m, -c);
        }
        a
    }
}

impl Monomial {
    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let (a, b) = self.aligned(rhs);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                add_term(&mut terms, ma.times(mb), ca * cb);
            }
        }
        MPoly { vars: a.vars, terms }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(&m.0)
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
