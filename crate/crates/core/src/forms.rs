//! Rational top-forms on affine charts, Poincaré residues, pullbacks along
//! parametrized curves and residues of one-forms on the line.
//!
//! Sign convention: near a simple pole `f = 0` a form is written as
//! `ω = η ∧ df/f + η′` with `df` in the last slot, and the residue is `η`
//! restricted to `f = 0`. With `x_p` the eliminated (pivot) variable this
//! gives `η = (−1)^(d−p) · g / (h · ∂f/∂x_p) dx_1 ∧ … ∧ dx̂_p ∧ … ∧ dx_d`.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{parse_ratfn_in, rational_roots, AlgebraError, FactoredRatFn, MPoly, Rat, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("pole of order {order} along {divisor}; residues need a simple pole")]
    HigherOrderPole { divisor: String, order: i64 },
    #[error("linear form {0} has no variable part")]
    LinearFormConstant(String),
    #[error("{0} is not affine-linear")]
    NotLinear(String),
    #[error("pole order along a constant is undefined")]
    ConstantDivisor,
    #[error("forms live on different charts: {0:?} vs {1:?}")]
    ChartMismatch(Vec<String>, Vec<String>),
    #[error("parametrization has vanishing derivative in both coordinates")]
    DegenerateParametrization,
    #[error("the factor {0} vanishes identically on the divisor")]
    FactorVanishes(String),
    #[error("operation needs a form in {expected} variables, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("malformed form text: {0}")]
    Syntax(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `coeff · dx_1 ∧ … ∧ dx_d` in the fixed order of `vars`.
#[derive(Clone, Debug)]
pub struct RatForm {
    vars: Vec<String>,
    coeff: FactoredRatFn,
}

/// How a residue chart was obtained: `pivot` was eliminated by `pivot = expr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMap {
    pub pivot: String,
    pub pivot_index: usize,
    pub expr: MPoly,
}

impl fmt::Display for ChartMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.pivot, self.expr)
    }
}

#[derive(Clone, Debug)]
pub struct Residue {
    pub form: RatForm,
    pub chart: ChartMap,
}

/// Sign of the permutation that sorts `order` into the positions given by `target`.
fn permutation_sign(order: &[usize]) -> Result<i32, FormError> {
    let n = order.len();
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return Err(FormError::Syntax("repeated or unknown differential".into()));
        }
        seen[i] = true;
    }
    let mut sign = 1;
    for i in 0..n {
        for j in i + 1..n {
            if order[i] > order[j] {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

impl RatForm {
    pub fn new(vars: &[impl AsRef<str>], coeff: FactoredRatFn) -> Result<RatForm, FormError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let coeff = coeff.with_vars(&vars)?;
        Ok(RatForm { vars, coeff })
    }

    /// `coeff · dw_1 ∧ … ∧ dw_d` where `wedge` lists the chart variables in
    /// any order; the result is normalized to the order of `vars`.
    pub fn from_wedge(
        vars: &[impl AsRef<str>],
        coeff: FactoredRatFn,
        wedge: &[impl AsRef<str>],
    ) -> Result<RatForm, FormError> {
        if wedge.len() != vars.len() {
            return Err(FormError::WrongDimension {
                expected: vars.len(),
                got: wedge.len(),
            });
        }
        let order: Vec<usize> = wedge
            .iter()
            .map(|w| {
                vars.iter()
                    .position(|v| v.as_ref() == w.as_ref())
                    .ok_or_else(|| FormError::Syntax(format!("d{} is not a chart differential", w.as_ref())))
            })
            .collect::<Result<_, _>>()?;
        let s = permutation_sign(&order)?;
        let f = RatForm::new(vars, coeff)?;
        Ok(if s < 0 { f.neg() } else { f })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn coeff(&self) -> &FactoredRatFn {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn neg(&self) -> RatForm {
        RatForm {
            vars: self.vars.clone(),
            coeff: self.coeff.neg(),
        }
    }

    /// Reverses orientation; the same as negation.
    pub fn flip_orientation(&self) -> RatForm {
        self.neg()
    }

    pub fn scale(&self, c: &Rat) -> RatForm {
        RatForm {
            vars: self.vars.clone(),
            coeff: self.coeff.scale(c),
        }
    }

    pub fn add(&self, other: &RatForm) -> Result<RatForm, FormError> {
        self.same_chart(other)?;
        Ok(RatForm {
            vars: self.vars.clone(),
            coeff: self.coeff.add(&other.coeff).with_vars(&self.vars)?,
        })
    }

    fn same_chart(&self, other: &RatForm) -> Result<(), FormError> {
        if self.vars != other.vars {
            return Err(FormError::ChartMismatch(self.vars.clone(), other.vars.clone()));
        }
        Ok(())
    }

    pub fn pole_order(&self, f: &MPoly) -> Result<i64, FormError> {
        if f.is_constant() {
            return Err(FormError::ConstantDivisor);
        }
        Ok(self.coeff.pole_order(f)?)
    }

    /// Splits `f` out of the coefficient: returns `rest` and the pole order
    /// `k` with `coeff = rest / f^k` exactly.
    fn split_pole(&self, f: &MPoly) -> Result<(FactoredRatFn, i64), FormError> {
        let mut order = 0i64;
        let mut rest = Vec::with_capacity(self.coeff.factors().len());
        for (g, e) in self.coeff.factors() {
            let mut g = g.clone();
            while let Some(q) = g.exact_div(f) {
                g = q;
                order += i64::from(*e);
            }
            rest.push((g, *e));
        }
        let mut num = self.coeff.numerator().clone();
        if !num.is_zero() {
            while let Some(q) = num.exact_div(f) {
                num = q;
                order -= 1;
            }
        }
        Ok((FactoredRatFn::new(num, rest)?, order))
    }

    /// Poincaré residue along the affine hyperplane `ℓ = 0`.
    pub fn residue_along_linear(&self, l: &MPoly) -> Result<Residue, FormError> {
        let (coeffs, c0) = l
            .affine_coeffs(&self.vars)
            .ok_or_else(|| FormError::NotLinear(l.to_string()))?;
        let p = coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| FormError::LinearFormConstant(l.to_string()))?;
        let d = self.dim();
        let cp = coeffs[p].clone();
        let rest_vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != p)
            .map(|(_, v)| v.clone())
            .collect();
        let rest_coeffs: Vec<Rat> = coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != p)
            .map(|(_, c)| -(c / &cp))
            .collect();
        let expr = MPoly::linear(&rest_vars, &rest_coeffs, &(-(&c0 / &cp)));
        let chart = ChartMap {
            pivot: self.vars[p].clone(),
            pivot_index: p,
            expr: expr.clone(),
        };
        let lp = l.with_vars(&self.vars)?;
        let (rest, order) = self.split_pole(&lp)?;
        if order > 1 {
            return Err(FormError::HigherOrderPole {
                divisor: l.to_string(),
                order,
            });
        }
        if order < 1 {
            let zero = FactoredRatFn::constant(&rest_vars, Rat::zero());
            return Ok(Residue {
                form: RatForm::new(&rest_vars, zero)?,
                chart,
            });
        }
        let sign = if (d - 1 - p).is_multiple_of(2) {
            Rat::one()
        } else {
            -Rat::one()
        };
        let eta = rest.scale(&(sign / &cp));
        let substituted = self.restrict(&eta, &chart.pivot, &expr, &rest_vars)?;
        Ok(Residue {
            form: RatForm::new(&rest_vars, substituted)?,
            chart,
        })
    }

    fn restrict(
        &self,
        eta: &FactoredRatFn,
        pivot: &str,
        expr: &MPoly,
        rest_vars: &[String],
    ) -> Result<FactoredRatFn, FormError> {
        let num = eta.numerator().substitute(&[(pivot, expr.clone())]);
        let mut factors = Vec::new();
        for (g, e) in eta.factors() {
            let h = g.substitute(&[(pivot, expr.clone())]);
            if h.is_zero() {
                return Err(FormError::FactorVanishes(g.to_string()));
            }
            factors.push((h, *e));
        }
        let r = FactoredRatFn::new(num, factors)?.with_vars(rest_vars)?;
        if rest_vars.len() == 1 {
            normalize_univariate(&r)
        } else {
            Ok(r)
        }
    }

    /// Residue of a plane form along the curve `f = 0`, as a one-form on the
    /// ambient plane to be restricted (e.g. by [`pullback_curve`]).
    pub fn residue_along_curve(&self, f: &MPoly) -> Result<PlaneOneForm, FormError> {
        if self.dim() != 2 {
            return Err(FormError::WrongDimension {
                expected: 2,
                got: self.dim(),
            });
        }
        let f = f.with_vars(&self.vars)?;
        let p = (0..2)
            .rev()
            .find(|&i| !f.derivative(&self.vars[i]).is_zero())
            .ok_or(FormError::ConstantDivisor)?;
        let (rest, order) = self.split_pole(&f)?;
        if order > 1 {
            return Err(FormError::HigherOrderPole {
                divisor: f.to_string(),
                order,
            });
        }
        let q = 1 - p;
        if order < 1 {
            return Ok(PlaneOneForm {
                vars: self.vars.clone(),
                coeff: FactoredRatFn::constant(&self.vars, Rat::zero()),
                differential: q,
            });
        }
        let sign = if p == 1 { Rat::one() } else { -Rat::one() };
        let fp = f.derivative(&self.vars[p]);
        let coeff = rest.div_poly(&fp, 1)?.scale(&sign);
        Ok(PlaneOneForm {
            vars: self.vars.clone(),
            coeff,
            differential: q,
        })
    }

    /// Pullback along the affine map `x = M·x′ + c`, with `new_vars` naming
    /// the coordinates `x′`. The coefficient is multiplied by `det M`.
    pub fn pullback_affine(
        &self,
        new_vars: &[impl AsRef<str>],
        m: &crate::algebra::RatMatrix,
        c: &[Rat],
    ) -> Result<RatForm, FormError> {
        let d = self.dim();
        if m.rows() != d || m.cols() != new_vars.len() || c.len() != d || new_vars.len() != d {
            return Err(FormError::WrongDimension {
                expected: d,
                got: m.cols(),
            });
        }
        let subs: Vec<MPoly> = (0..d).map(|i| MPoly::linear(new_vars, m.row(i), &c[i])).collect();
        let pairs: Vec<(&str, MPoly)> = self.vars.iter().map(|v| v.as_str()).zip(subs).collect();
        let det = m.det()?;
        let coeff = self.coeff.substitute(&pairs)?.scale(&det).with_vars(new_vars)?;
        RatForm::new(new_vars, coeff)
    }

    /// The one-variable form as a [`OneFormOnLine`].
    pub fn to_line_form(&self) -> Result<OneFormOnLine, FormError> {
        if self.dim() != 1 {
            return Err(FormError::WrongDimension {
                expected: 1,
                got: self.dim(),
            });
        }
        let (n, d) = self.coeff.to_univariate()?;
        Ok(OneFormOnLine::new(&self.vars[0], n, d))
    }

    pub fn to_latex(&self) -> String {
        let wedge: Vec<String> = self
            .vars
            .iter()
            .map(|v| format!("d{}", crate::algebra::latex_var(v)))
            .collect();
        if wedge.is_empty() {
            self.coeff.to_latex()
        } else {
            format!("{}\\, {}", self.coeff.to_latex(), wedge.join(" \\wedge "))
        }
    }
}

/// `true` iff both forms live on the same chart and have equal coefficients.
pub fn form_equal(a: &RatForm, b: &RatForm) -> Result<bool, FormError> {
    a.same_chart(b)?;
    Ok(a.coeff == b.coeff)
}

impl fmt::Display for RatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if !self.vars.is_empty() {
            let wedge: Vec<String> = self.vars.iter().map(|v| format!("d{v}")).collect();
            write!(f, " {}", wedge.join("^"))?;
        }
        Ok(())
    }
}

/// Parses `<ratfn> d<v1>^...^d<vD>`. The chart variables are the wedge
/// variables in sorted natural order; a form without differentials is a
/// 0-form on a point.
pub fn parse_form(s: &str) -> Result<RatForm, FormError> {
    let s = s.trim();
    let (body, wedge) = match s.rsplit_once(char::is_whitespace) {
        Some((b, w)) if is_wedge(w) => (b, w),
        _ if is_wedge(s) => ("1", s),
        _ => (s, ""),
    };
    let wedge: Vec<String> = if wedge.is_empty() {
        Vec::new()
    } else {
        wedge.split('^').map(|t| t[1..].to_string()).collect()
    };
    let mut vars = wedge.clone();
    crate::algebra::natural_sort(&mut vars);
    let coeff = parse_ratfn_in(body, &vars)?;
    RatForm::from_wedge(&vars, coeff, &wedge)
}

fn is_wedge(w: &str) -> bool {
    !w.is_empty()
        && w.split('^').all(|t| {
            let mut c = t.chars();
            c.next() == Some('d')
                && c.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && c.all(|c| c.is_ascii_alphanumeric() || c == '_')
        })
}

/// Brings a one-variable function into lowest terms: nonlinear factors are
/// split into rational linear factors and an irreducible-over-Q remainder,
/// and any univariate gcd with the numerator is cancelled.
fn normalize_univariate(r: &FactoredRatFn) -> Result<FactoredRatFn, FormError> {
    let vars = r.vars().to_vec();
    let var = vars[0].clone();
    let mut num = r.numerator().to_upoly()?;
    let mut factors: Vec<(MPoly, u32)> = Vec::new();
    for (g, e) in r.factors() {
        if g.degree() <= 1 {
            factors.push((g.clone(), *e));
            continue;
        }
        let roots = rational_roots(&g.to_upoly()?)?;
        for (root, m) in &roots.roots {
            let lin = UPoly::new(vec![-root.clone(), Rat::one()]);
            factors.push((lin.to_mpoly(&var).with_vars(&vars)?, m * e));
        }
        let mut co = roots.cofactor.clone();
        let g2 = num.gcd(&co);
        if g2.degree().unwrap_or(0) > 0 {
            for _ in 0..*e {
                match num.exact_div(&g2) {
                    Some(q) => {
                        num = q;
                        co = co.exact_div(&g2).expect("gcd divides");
                    }
                    None => break,
                }
            }
        }
        factors.push((co.to_mpoly(&var).with_vars(&vars)?, *e));
    }
    Ok(FactoredRatFn::new(num.to_mpoly(&var).with_vars(&vars)?, factors)?)
}

/// A one-form `coeff · dx_q` on a plane chart, not yet restricted to a curve.
#[derive(Clone, Debug)]
pub struct PlaneOneForm {
    pub vars: Vec<String>,
    pub coeff: FactoredRatFn,
    /// Index into `vars` of the differential.
    pub differential: usize,
}

impl fmt::Display for PlaneOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} d{}", self.coeff, self.vars[self.differential])
    }
}

impl PlaneOneForm {
    pub fn new(
        vars: &[impl AsRef<str>],
        coeff: FactoredRatFn,
        differential: &str,
    ) -> Result<PlaneOneForm, FormError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let differential = vars
            .iter()
            .position(|v| v == differential)
            .ok_or_else(|| FormError::Syntax(format!("d{differential} is not a chart differential")))?;
        Ok(PlaneOneForm {
            coeff: coeff.with_vars(&vars)?,
            vars,
            differential,
        })
    }

    pub fn scale(&self, c: &Rat) -> PlaneOneForm {
        PlaneOneForm {
            vars: self.vars.clone(),
            coeff: self.coeff.scale(c),
            differential: self.differential,
        }
    }
}

/// Homogeneous parametrization `t ↦ (r(t) : s(t) : h(t))`, i.e. the affine
/// point `(r/h, s/h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParam {
    pub r: UPoly,
    pub s: UPoly,
    pub h: UPoly,
}

impl CurveParam {
    pub fn new(r: UPoly, s: UPoly, h: UPoly) -> CurveParam {
        CurveParam { r, s, h }
    }

    pub fn coords(&self) -> [&UPoly; 3] {
        [&self.r, &self.s, &self.h]
    }

    /// Formal degree: the largest coordinate degree.
    pub fn degree(&self) -> usize {
        self.coords().iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Homogeneous point at a finite parameter value.
    pub fn point_at(&self, t: &Rat) -> [Rat; 3] {
        [self.r.eval(t), self.s.eval(t), self.h.eval(t)]
    }

    /// Homogeneous point at `t = ∞`: the coefficients of `t^deg`.
    pub fn point_at_infinity(&self) -> [Rat; 3] {
        let n = self.degree();
        [self.r.coeff(n), self.s.coeff(n), self.h.coeff(n)]
    }
}

/// Pulls a plane one-form back along `φ(t) = (r/h, s/h)`.
pub fn pullback_curve(eta: &PlaneOneForm, phi: &CurveParam, t: &str) -> Result<OneFormOnLine, FormError> {
    let (r, s, h) = (&phi.r, &phi.s, &phi.h);
    if h.is_zero() {
        return Err(FormError::DegenerateParametrization);
    }
    let wr = &(&r.derivative() * h) - &(r * &h.derivative());
    let ws = &(&s.derivative() * h) - &(s * &h.derivative());
    if wr.is_zero() && ws.is_zero() {
        return Err(FormError::DegenerateParametrization);
    }
    let w = if eta.differential == 0 { wr } else { ws };
    let hom = |p: &MPoly| -> Result<(UPoly, u32), FormError> {
        let p = p.with_vars(&eta.vars)?;
        let deg = p.degree();
        let ph = p.homogenize("__h", deg);
        Ok((ph.eval_upoly(&[h.clone(), r.clone(), s.clone()]), deg))
    };
    let (mut num, dn) = hom(eta.coeff.numerator())?;
    let mut den = UPoly::one();
    let mut hpow: i64 = -(i64::from(dn)) - 2;
    for (g, e) in eta.coeff.factors() {
        let (gv, dg) = hom(g)?;
        if gv.is_zero() {
            return Err(FormError::FactorVanishes(g.to_string()));
        }
        den = &den * &gv.pow(*e);
        hpow += i64::from(dg) * i64::from(*e);
    }
    num = &num * &w;
    if hpow >= 0 {
        num = &num * &h.pow(hpow as u32);
    } else {
        den = &den * &h.pow((-hpow) as u32);
    }
    Ok(OneFormOnLine::new(t, num, den))
}

/// A point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinePoint {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for LinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinePoint::Finite(a) => write!(f, "{a}"),
            LinePoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `num(t)/den(t) dt` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormOnLine {
    var: String,
    num: UPoly,
    den: UPoly,
}

impl OneFormOnLine {
    pub fn new(var: &str, num: UPoly, den: UPoly) -> OneFormOnLine {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (num.exact_div(&g).expect("gcd"), den.exact_div(&g).expect("gcd"))
        } else {
            (num, den)
        };
        if num.is_zero() {
            den = UPoly::one();
        }
        let lc = den.leading();
        num = num.scale(&lc.recip());
        den = den.scale(&lc.recip());
        OneFormOnLine {
            var: var.to_string(),
            num,
            den,
        }
    }

    /// Canonical form `(b − a)/((t − a)(b − t)) dt` of the segment from `a` to `b`.
    pub fn segment(var: &str, a: &Rat, b: &Rat) -> OneFormOnLine {
        let num = UPoly::constant(b - a);
        let den = &UPoly::linear_root(a) * &(-&UPoly::linear_root(b));
        OneFormOnLine::new(var, num, den)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> OneFormOnLine {
        OneFormOnLine {
            var: self.var.clone(),
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn flip_orientation(&self) -> OneFormOnLine {
        self.neg()
    }

    pub fn scale(&self, c: &Rat) -> OneFormOnLine {
        OneFormOnLine::new(&self.var, self.num.scale(c), self.den.clone())
    }

    pub fn add(&self, other: &OneFormOnLine) -> Result<OneFormOnLine, FormError> {
        if self.var != other.var {
            return Err(FormError::ChartMismatch(
                vec![self.var.clone()],
                vec![other.var.clone()],
            ));
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Ok(OneFormOnLine::new(&self.var, num, &self.den * &other.den))
    }

    /// Pole order at a point (negative for zeros of the form).
    pub fn pole_order_at(&self, p: &LinePoint) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        match p {
            LinePoint::Finite(a) => {
                i64::from(self.den.root_multiplicity(a)) - i64::from(self.num.root_multiplicity(a))
            }
            LinePoint::Infinity => {
                let n = self.num.degree().unwrap_or(0) as i64;
                let m = self.den.degree().unwrap_or(0) as i64;
                n - m + 2
            }
        }
    }

    /// Coefficient of `dt/(t − a)`; at infinity via `t = 1/u`, `dt = −du/u²`.
    pub fn residue_at(&self, p: &LinePoint) -> Result<Rat, FormError> {
        let order = self.pole_order_at(p);
        if self.is_zero() || order <= 0 {
            return Ok(Rat::zero());
        }
        if order > 1 {
            return Err(FormError::HigherOrderPole {
                divisor: format!("{} = {p}", self.var),
                order,
            });
        }
        match p {
            LinePoint::Finite(a) => {
                let q = self.den.exact_div(&UPoly::linear_root(a)).expect("simple pole");
                Ok(self.num.eval(a) / q.eval(a))
            }
            LinePoint::Infinity => Ok(-(self.num.leading() / self.den.leading())),
        }
    }

    /// All poles with rational location, including infinity when present.
    pub fn rational_poles(&self) -> Result<Vec<LinePoint>, FormError> {
        let mut out: Vec<LinePoint> = rational_roots(&self.den)?
            .roots
            .into_iter()
            .map(|(r, _)| LinePoint::Finite(r))
            .collect();
        if self.pole_order_at(&LinePoint::Infinity) > 0 {
            out.push(LinePoint::Infinity);
        }
        Ok(out)
    }

    fn as_ratfn(&self) -> FactoredRatFn {
        let roots = rational_roots(&self.den).expect("nonzero denominator");
        let mut factors: Vec<(MPoly, u32)> = roots
            .roots
            .iter()
            .map(|(r, m)| (UPoly::linear_root(r).to_mpoly(&self.var), *m))
            .collect();
        if roots.cofactor_degree() > 0 {
            factors.push((roots.cofactor.to_mpoly(&self.var), 1));
        }
        let lc = roots.cofactor.leading();
        FactoredRatFn::new(self.num.scale(&lc.recip()).to_mpoly(&self.var), factors).expect("nonzero factors")
    }

    pub fn to_latex(&self) -> String {
        format!(
            "{}\\, d{}",
            self.as_ratfn().to_latex(),
            crate::algebra::latex_var(&self.var)
        )
    }
}

impl fmt::Display for OneFormOnLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} d{}", self.as_ratfn(), self.var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_poly, parse_ratfn, rat};

    fn form(s: &str) -> RatForm {
        parse_form(s).unwrap()
    }

    #[test]
    fn wedge_order_normalized() {
        let a = form("1/(x*y) dy^dx");
        let b = form("-1/(x*y) dx^dy");
        assert!(form_equal(&a, &b).unwrap());
        assert!(parse_form("1/x dx^dx").is_err());
    }

    #[test]
    fn residues_in_the_plane() {
        let w = form("1/(x*y) dx^dy");
        let rx = w.residue_along_linear(&parse_poly("x").unwrap()).unwrap();
        assert!(form_equal(&rx.form, &form("-1/y dy")).unwrap());
        assert_eq!(rx.chart.pivot, "x");
        let ry = w.residue_along_linear(&parse_poly("y").unwrap()).unwrap();
        assert!(form_equal(&ry.form, &form("1/x dx")).unwrap());
    }

    #[test]
    fn scaled_divisor_does_not_change_residue() {
        let w = form("1/(x*y) dx^dy");
        let r = w.residue_along_linear(&parse_poly("-2*x").unwrap()).unwrap();
        assert!(form_equal(&r.form, &form("-1/y dy")).unwrap());
    }

    #[test]
    fn pole_orders() {
        assert_eq!(
            form("1/(x*y) dx^dy")
                .pole_order(&parse_poly("x").unwrap())
                .unwrap(),
            1
        );
        assert_eq!(
            form("x/y dx^dy").pole_order(&parse_poly("x").unwrap()).unwrap(),
            -1
        );
        assert_eq!(
            form("1/(x*y) dx^dy").pole_order(&parse_poly("1").unwrap()),
            Err(FormError::ConstantDivisor)
        );
        let w = form("1/(x^2*y) dx^dy");
        assert!(matches!(
            w.residue_along_linear(&parse_poly("x").unwrap()),
            Err(FormError::HigherOrderPole { order: 2, .. })
        ));
    }

    #[test]
    fn residue_without_pole_is_zero() {
        let w = form("1/(x*y) dx^dy");
        let r = w.residue_along_linear(&parse_poly("x + y - 1").unwrap()).unwrap();
        assert!(r.form.is_zero());
    }

    #[test]
    fn line_residues() {
        let seg = OneFormOnLine::segment("t", &int(2), &int(5));
        assert_eq!(seg.residue_at(&LinePoint::Finite(int(2))).unwrap(), int(1));
        assert_eq!(seg.residue_at(&LinePoint::Finite(int(5))).unwrap(), int(-1));
        assert_eq!(seg.residue_at(&LinePoint::Infinity).unwrap(), int(0));
        let dlog = OneFormOnLine::new("t", UPoly::one(), UPoly::t());
        assert_eq!(dlog.residue_at(&LinePoint::Infinity).unwrap(), int(-1));
        let double = OneFormOnLine::new("t", UPoly::one(), UPoly::t().pow(2));
        assert!(dlog
            .add(&double)
            .unwrap()
            .residue_at(&LinePoint::Finite(int(0)))
            .is_err());
    }

    #[test]
    fn pullback_identity_chart() {
        let eta = PlaneOneForm::new(&["x", "y"], parse_ratfn("1/x").unwrap(), "x").unwrap();
        let phi = CurveParam::new(UPoly::t(), UPoly::zero(), UPoly::one());
        let out = pullback_curve(&eta, &phi, "t").unwrap();
        assert_eq!(out, OneFormOnLine::new("t", UPoly::one(), UPoly::t()));
    }

    #[test]
    fn degenerate_parametrization() {
        let eta = PlaneOneForm::new(&["x", "y"], parse_ratfn("1/x").unwrap(), "x").unwrap();
        let phi = CurveParam::new(UPoly::t(), UPoly::t(), UPoly::t());
        assert_eq!(
            pullback_curve(&eta, &phi, "t"),
            Err(FormError::DegenerateParametrization)
        );
    }

    #[test]
    fn affine_pullback_multiplies_by_determinant() {
        let w = form("1/(x*y) dx^dy");
        let m = crate::algebra::RatMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]], 2)
            .unwrap();
        let p = w.pullback_affine(&["x", "y"], &m, &[int(0), int(0)]).unwrap();
        assert!(form_equal(&p, &form("-1/(x*y) dx^dy")).unwrap());
        let shift = w
            .pullback_affine(
                &["x", "y"],
                &crate::algebra::RatMatrix::identity(2),
                &[rat(1, 2), int(0)],
            )
            .unwrap();
        assert!(form_equal(&shift, &form("1/((x + 1/2)*y) dx^dy")).unwrap());
    }

    #[test]
    fn display_round_trip() {
        let w = form("(5 - 3*y1 + 3*y2 - y1*y2)/((1 + y1)*(1 + y2)) dy1^dy2");
        let again = parse_form(&w.to_string()).unwrap();
        assert!(form_equal(&w, &again).unwrap());
        assert_eq!(form("1/x dx").to_string(), "1/x dx");
    }
}
