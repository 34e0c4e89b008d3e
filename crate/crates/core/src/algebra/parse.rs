//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is allowed anywhere; `parse_poly` then requires the result to be
//! a polynomial, while `parse_ratfn` keeps each polynomial divisor as a
//! separate denominator factor.

use num_bigint::BigInt;
use num_traits::One;

use super::{natural_sort, AlgebraError, FactoredRatFn, MPoly, Rat};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(AlgebraError::Parse {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(BigInt),
    Var(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast, AlgebraError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast, AlgebraError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, AlgebraError> {
        if self.eat('-') {
            Ok(Ast::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Ast, AlgebraError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast, AlgebraError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Ast::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast, AlgebraError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        len: s.len(),
    };
    let ast = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(ast)
}

fn collect_vars(a: &Ast, out: &mut Vec<String>) {
    match a {
        Ast::Num(_) => {}
        Ast::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Ast::Neg(x) | Ast::Pow(x, _) => collect_vars(x, out),
        Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) | Ast::Div(x, y) => {
            collect_vars(x, out);
            collect_vars(y, out);
        }
    }
}

/// Evaluation value: an unexpanded product of polynomial numerator factors
/// over listed denominator factors.
struct Frac {
    num: Vec<MPoly>,
    den: Vec<(MPoly, u32)>,
}

impl Frac {
    fn poly(p: MPoly) -> Frac {
        Frac {
            num: vec![p],
            den: Vec::new(),
        }
    }

    fn into_ratfn(self, vars: &[String]) -> Result<FactoredRatFn, AlgebraError> {
        let num = self
            .num
            .into_iter()
            .fold(MPoly::constant(vars, Rat::one()), |a, b| a * b);
        FactoredRatFn::new(num, self.den)
    }
}

fn eval(a: &Ast, vars: &[String]) -> Result<Frac, AlgebraError> {
    Ok(match a {
        Ast::Num(n) => Frac::poly(MPoly::constant(vars, Rat::from_integer(n.clone()))),
        Ast::Var(v) => Frac::poly(MPoly::var(vars, v)),
        Ast::Neg(x) => {
            let mut f = eval(x, vars)?;
            f.num.push(MPoly::constant(vars, -Rat::one()));
            f
        }
        Ast::Mul(x, y) => {
            let mut f = eval(x, vars)?;
            let g = eval(y, vars)?;
            f.num.extend(g.num);
            f.den.extend(g.den);
            f
        }
        Ast::Div(x, y) => {
            let mut f = eval(x, vars)?;
            let g = eval(y, vars)?;
            for p in g.num {
                if p.is_zero() {
                    return Err(AlgebraError::DivisionByZero);
                }
                f.den.push((p, 1));
            }
            for (p, e) in g.den {
                f.num.extend(std::iter::repeat_n(p, e as usize));
            }
            f
        }
        Ast::Pow(x, k) => {
            let f = eval(x, vars)?;
            Frac {
                num: f
                    .num
                    .iter()
                    .flat_map(|p| std::iter::repeat_n(p.clone(), *k as usize))
                    .collect(),
                den: f.den.into_iter().map(|(p, e)| (p, e * k)).collect(),
            }
        }
        Ast::Add(x, y) | Ast::Sub(x, y) => {
            let f = eval(x, vars)?.into_ratfn(vars)?;
            let mut g = eval(y, vars)?.into_ratfn(vars)?;
            if matches!(a, Ast::Sub(..)) {
                g = g.neg();
            }
            let s = f.add(&g);
            Frac {
                num: vec![s.numerator().clone()],
                den: s.factors().to_vec(),
            }
        }
    })
}

fn vars_for(ast: &Ast, vars: Option<&[String]>) -> Result<Vec<String>, AlgebraError> {
    let mut used = Vec::new();
    collect_vars(ast, &mut used);
    match vars {
        None => {
            natural_sort(&mut used);
            Ok(used)
        }
        Some(vs) => {
            if let Some(v) = used.iter().find(|v| !vs.contains(v)) {
                return Err(AlgebraError::Parse {
                    pos: 0,
                    msg: format!("unknown variable {v}; expected one of {}", vs.join(", ")),
                });
            }
            Ok(vs.to_vec())
        }
    }
}

fn to_poly(r: FactoredRatFn) -> Result<MPoly, AlgebraError> {
    if r.is_polynomial() {
        Ok(r.numerator().clone())
    } else {
        Err(AlgebraError::NotPolynomial)
    }
}

/// Parses a polynomial; variables are the identifiers that occur, in
/// natural order (`x < y`, `y2 < y10`).
pub fn parse_poly(s: &str) -> Result<MPoly, AlgebraError> {
    let ast = parse_ast(s)?;
    let vars = vars_for(&ast, None)?;
    to_poly(eval(&ast, &vars)?.into_ratfn(&vars)?)
}

/// Parses a polynomial over a fixed variable list; other identifiers are
/// rejected.
pub fn parse_poly_in(s: &str, vars: &[impl AsRef<str>]) -> Result<MPoly, AlgebraError> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let ast = parse_ast(s)?;
    let vars = vars_for(&ast, Some(&vars))?;
    to_poly(eval(&ast, &vars)?.into_ratfn(&vars)?)
}

pub fn parse_ratfn(s: &str) -> Result<FactoredRatFn, AlgebraError> {
    let ast = parse_ast(s)?;
    let vars = vars_for(&ast, None)?;
    eval(&ast, &vars)?.into_ratfn(&vars)
}

pub fn parse_ratfn_in(s: &str, vars: &[impl AsRef<str>]) -> Result<FactoredRatFn, AlgebraError> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let ast = parse_ast(s)?;
    let vars = vars_for(&ast, Some(&vars))?;
    eval(&ast, &vars)?.into_ratfn(&vars)
}
