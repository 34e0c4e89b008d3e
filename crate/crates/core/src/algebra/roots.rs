use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{primitive_integer_vector, AlgebraError, Rat, UPoly};

/// Rational roots of a univariate polynomial together with what is left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    /// Distinct rational roots in increasing order, each with its multiplicity.
    pub roots: Vec<(Rat, u32)>,
    /// The input divided by `Π (t − r)^m`; it has no rational roots.
    pub cofactor: UPoly,
}

impl RationalRoots {
    pub fn cofactor_degree(&self) -> usize {
        self.cofactor.degree().unwrap_or(0)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if n.is_multiple_of(&i) {
            small.push(i.clone());
            let j = &n / &i;
            if j != i {
                large.push(j);
            }
        }
        i += 1;
    }
    out.extend(small);
    out.extend(large.into_iter().rev());
    out
}

/// All rational roots with multiplicities, by the rational root theorem on
/// the primitive integer multiple and exact deflation.
pub fn rational_roots(p: &UPoly) -> Result<RationalRoots, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut cur = p.clone();
    let mut roots: Vec<(Rat, u32)> = Vec::new();

    let zero_mult = cur.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult as u32));
        cur = UPoly::new(cur.coeffs()[zero_mult..].to_vec());
    }

    if cur.degree().unwrap_or(0) > 0 {
        let ints = primitive_integer_vector(cur.coeffs());
        let a0 = ints[0].to_integer();
        let an = ints[ints.len() - 1].to_integer();
        let ps = divisors(&a0);
        let qs = divisors(&an);
        let mut cands: Vec<Rat> = Vec::new();
        for q in &qs {
            for pn in &ps {
                let r = Rat::new(pn.clone(), q.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if cur.degree().unwrap_or(0) == 0 {
                break;
            }
            if !cur.eval(&r).is_zero() {
                continue;
            }
            let lin = UPoly::linear_root(&r);
            let mut m = 0;
            while let Some(q) = cur.exact_div(&lin) {
                cur = q;
                m += 1;
            }
            roots.push((r, m));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RationalRoots { roots, cofactor: cur })
}
