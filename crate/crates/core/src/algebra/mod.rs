//! Exact algebraic substrate: rationals, sparse multivariate polynomials,
//! rational functions kept in factored form, dense univariate polynomials,
//! fraction-free linear algebra and rational root finding.
//!
//! Everything here is exact. There is no floating point anywhere in the
//! crate, and every value is immutable once built.

mod matrix;
mod mpoly;
mod parse;
mod ratfn;
mod roots;
mod upoly;

pub use matrix::RatMatrix;
pub(crate) use mpoly::latex_var;
pub use mpoly::{MPoly, Monomial};
pub use parse::{parse_poly, parse_poly_in, parse_ratfn, parse_ratfn_in};
pub use ratfn::FactoredRatFn;
pub use roots::{rational_roots, RationalRoots};
pub use upoly::UPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational scalar, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("the zero polynomial has no roots to report")]
    ZeroPolynomial,
    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression has a non-constant denominator where a polynomial was expected")]
    NotPolynomial,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Integer-valued rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat, AlgebraError> {
    let s = s.trim();
    let bad = |msg: &str| AlgebraError::Parse {
        pos: 0,
        msg: format!("{msg}: {s:?}"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("invalid rational numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("invalid rational denominator"))?;
    if d.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(Rat::new(n, d))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Least common multiple of the denominators.
pub(crate) fn denominator_lcm<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a rational vector to a primitive integer vector (content 1) with the
/// same direction. The zero vector is returned unchanged.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<Rat> {
    let l = denominator_lcm(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|r| (r * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

/// Sort key that orders `y2` before `y10`.
pub(crate) fn natural_key(name: &str) -> (String, u64, String) {
    let digits_at = name
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .last()
        .map(|(i, _)| i);
    match digits_at {
        Some(i) if i > 0 => (
            name[..i].to_string(),
            name[i..].parse().unwrap_or(u64::MAX),
            name.to_string(),
        ),
        _ => (name.to_string(), 0, name.to_string()),
    }
}

pub(crate) fn natural_sort(names: &mut [String]) {
    names.sort_by_key(|n| natural_key(n));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_parsing() {
        assert_eq!(parse_rat("3").unwrap(), int(3));
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat(" 0/7 ").unwrap(), int(0));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn zero_is_canonical() {
        let z = rat(0, -5);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[rat(1, 2), rat(-3, 4), int(0)]);
        assert_eq!(v, vec![int(2), int(-3), int(0)]);
    }

    #[test]
    fn natural_order() {
        let mut v: Vec<String> = ["y10", "y2", "x", "y1"].iter().map(|s| s.to_string()).collect();
        natural_sort(&mut v);
        assert_eq!(v, ["x", "y1", "y2", "y10"]);
    }
}
