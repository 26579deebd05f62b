//! Sturm sequences over the integers and root counting on half-open intervals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{sign_of, IntPoly};
use crate::error::{Error, Result};

/// A Sturm chain `p, p', -prem(..), ...` kept primitive.
///
/// Pseudo-remainders are multiplied by `lc^k` with `k` possibly odd; when the
/// divisor has a negative leading coefficient the sign is flipped back so that
/// every member is a positive multiple of the classical Sturm remainder.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    fn variations<F: Fn(&IntPoly) -> i32>(&self, sign: F) -> usize {
        let mut prev = 0;
        let mut v = 0;
        for p in &self.chain {
            let s = sign(p);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                v += 1;
            }
            prev = s;
        }
        v
    }

    /// Sign variations at a rational point.
    pub fn variations_at(&self, x: &BigRational) -> usize {
        self.variations(|p| p.sign_at(x))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        self.variations(|p| sign_of(&p.lead()))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        self.variations(|p| {
            let s = sign_of(&p.lead());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        })
    }

    /// Distinct roots of the first member in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Distinct real roots of the first member.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

pub fn sturm_sequence(p: &IntPoly) -> Result<SturmSequence> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(SturmSequence { chain });
    }
    chain.push(d.primitive_part().scale(&BigInt::from(sign_of(&d.lead()))));
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        let mut r = a.pseudo_rem(b)?;
        if r.is_zero() {
            break;
        }
        let k = a.deg() + 1 - b.deg();
        if b.lead().is_negative() && k % 2 == 1 {
            r = -r;
        }
        let c = r.content();
        chain.push(-&r.div_scalar_exact(&c));
    }
    Ok(SturmSequence { chain })
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
///
/// `p` need not be square-free: the chain counts distinct roots either way
/// because the final member is the gcd of `p` and `p'`.
pub fn sturm_count(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    Ok(sturm_sequence(p)?.count(lo, hi))
}

/// Cauchy bound `1 + max |a_i / a_n|`, rounded up to an integer.
/// Every real root lies strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &IntPoly) -> BigInt {
    let lead = p.lead().abs();
    if lead.is_zero() {
        return BigInt::one();
    }
    let mut m = BigInt::zero();
    for c in &p.coeffs()[..p.deg()] {
        let q = (c.abs() + &lead - BigInt::one()) / &lead;
        if q > m {
            m = q;
        }
    }
    m + BigInt::one() + BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_two_on_unit_interval() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &r(0, 1), &r(2, 1)).unwrap(), 1);
    }

    #[test]
    fn quadratic_with_two_positive_roots() {
        let p = IntPoly::from_i64(&[12, -10, 1]);
        assert_eq!(sturm_count(&p, &r(0, 1), &r(100, 1)).unwrap(), 2);
    }

    #[test]
    fn half_open_convention() {
        let p = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(sturm_count(&p, &r(1, 1), &r(2, 1)).unwrap(), 0);
        assert_eq!(sturm_count(&p, &r(1, 2), &r(1, 1)).unwrap(), 1);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(sturm_count(&IntPoly::zero(), &r(0, 1), &r(1, 1)).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn negative_leading_coefficients() {
        // -(t-1)(t-2)(t+3)
        let p = -&(&(&IntPoly::linear_root(1) * &IntPoly::linear_root(2)) * &IntPoly::linear_root(-3));
        let s = sturm_sequence(&p).unwrap();
        assert_eq!(s.count_all(), 3);
        assert_eq!(s.count(&r(0, 1), &r(5, 2)), 2);
        assert_eq!(s.count(&r(-4, 1), &r(0, 1)), 1);
    }

    #[test]
    fn bound_contains_roots() {
        let p = IntPoly::from_i64(&[-30, 1, 1]);
        let b = cauchy_bound(&p);
        let b = BigRational::from_integer(b);
        assert_eq!(sturm_count(&p, &-b.clone(), &b).unwrap(), 2);
    }
}
