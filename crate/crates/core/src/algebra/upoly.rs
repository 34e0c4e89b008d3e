use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{MPoly, Rat};

/// Dense univariate polynomial, coefficients in ascending degree order with
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> UPoly {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> UPoly {
        UPoly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> UPoly {
        UPoly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `t - a`.
    pub fn linear_root(a: &Rat) -> UPoly {
        UPoly::new(vec![-a.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> UPoly {
        (0..k).fold(UPoly::one(), |acc, _| &acc * self)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, b: &UPoly) -> (UPoly, UPoly) {
        let db = b.degree().expect("division by the zero polynomial");
        let lb = b.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] / &lb;
            if c.is_zero() {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[i + j] -= &c * bc;
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn exact_div(&self, b: &UPoly) -> Option<UPoly> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(b);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `t = a` as a root.
    pub fn root_multiplicity(&self, a: &Rat) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let lin = UPoly::linear_root(a);
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(&lin) {
            cur = q;
            k += 1;
        }
        k
    }

    /// `t^n · p(1/t)`, the reversal relative to formal degree `n`.
    pub fn reversed(&self, n: usize) -> UPoly {
        assert!(self.degree().is_none_or(|d| d <= n), "formal degree too small");
        let mut c = self.coeffs.clone();
        c.resize(n + 1, Rat::zero());
        c.reverse();
        UPoly::new(c)
    }

    pub fn to_mpoly(&self, var: &str) -> MPoly {
        MPoly::from_terms(
            &[var],
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    pub fn display_in(&self, var: &str) -> String {
        self.to_mpoly(var).to_string()
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn division_with_remainder() {
        let (q, r) = up(&[1, 0, 1]).div_rem(&up(&[1, 1]));
        assert_eq!(q, up(&[-1, 1]));
        assert_eq!(r, up(&[2]));
        assert_eq!(up(&[-1, 0, 1]).exact_div(&up(&[1, 1])), Some(up(&[-1, 1])));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &up(&[-1, 1]) * &up(&[2, 3]);
        let b = &up(&[-1, 1]) * &up(&[5, 1]);
        assert_eq!(a.gcd(&b), up(&[-1, 1]));
        assert_eq!(up(&[2]).gcd(&up(&[0, 4])), up(&[1]));
    }

    #[test]
    fn evaluation_and_reversal() {
        let p = up(&[1, -3, 2]);
        assert_eq!(p.eval(&rat(1, 2)), int(0));
        assert_eq!(p.reversed(2), up(&[2, -3, 1]));
        assert_eq!(up(&[0, 1]).reversed(3), up(&[0, 0, 1]));
        assert_eq!(p.root_multiplicity(&int(1)), 1);
        assert_eq!((&p * &p).root_multiplicity(&rat(1, 2)), 2);
    }

    #[test]
    fn display_uses_variable() {
        assert_eq!(up(&[0, -1, 1]).display_in("t"), "-t + t^2");
    }
}
