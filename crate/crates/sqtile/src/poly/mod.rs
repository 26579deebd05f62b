//! Univariate polynomials with arbitrary precision integer coefficients.
//!
//! Coefficients are stored lowest degree first and are kept normalized:
//! the last stored coefficient is nonzero unless the polynomial is zero,
//! in which case the coefficient vector is empty.

mod factor;
mod hensel;
mod modp;
mod roots;
mod squarefree;
mod sturm;

pub use factor::{factor_over_integers, is_irreducible, Factorization};
pub use roots::{
    isolate_largest_real_root, isolate_largest_real_root_with_width, minimal_polynomial_of_root,
    minimal_polynomial_with_interval, squarefree_part, RootInterval,
};
pub use squarefree::squarefree_decomposition;
pub use sturm::{cauchy_bound, sturm_count, sturm_sequence, SturmSequence};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    /// `t - r`
    pub fn linear_root(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial treated as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Divides every coefficient by `s`; the caller guarantees divisibility.
    pub fn div_scalar_exact(&self, s: &BigInt) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| c / s).collect() }
    }

    /// Multiplies by `t^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    /// Largest `k` with `t^k` dividing `self`.
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `t^k`, dropping the low coefficients.
    pub fn shr(&self, k: usize) -> Self {
        if k >= self.coeffs.len() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs[k..].to_vec() }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let (num, den) = (x.numer(), x.denom());
        BigRational::new(self.eval_homogeneous(num, den), num_traits::pow(den.clone(), self.deg()))
    }

    /// `den^deg * p(num/den)`, an integer with the sign of `p(num/den)` when `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &dpow;
            dpow *= den;
        }
        acc
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sign_of(&self.eval_homogeneous(x.numer(), x.denom()))
    }

    /// `p(q(t))`
    pub fn compose(&self, q: &IntPoly) -> Self {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &IntPoly::constant(c.clone());
        }
        acc
    }

    /// `p(-t)`
    pub fn negate_var(&self) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `t^deg * p(1/t)`
    pub fn reverse(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = IntPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> Result<IntPoly> {
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let lb = b.lead();
        let mut r = self.clone();
        let mut steps = match self.degree() {
            Some(da) if da >= db => da - db + 1,
            _ => 0,
        };
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            let shift = dr - db;
            r = &r.scale(&lb) - &b.scale(&lr).shl(shift);
            steps -= 1;
        }
        // remaining multiplications that the loop skipped when degree dropped fast
        for _ in 0..steps {
            r = r.scale(&lb);
        }
        Ok(r)
    }

    /// Exact quotient and remainder over the integers; fails unless the
    /// leading coefficient of `b` divides every intermediate leading term.
    pub fn divrem_exact(&self, b: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n < db + 1 {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); n - db];
        for i in (0..n - db).rev() {
            let top = &r[i + db];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return Err(Error::NonExactDivision);
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[i + j] -= &qi * bc;
            }
            q[i] = qi;
        }
        Ok((IntPoly::new(q), IntPoly::new(r)))
    }

    /// Quotient `self / b`, failing with `NonExactDivision` unless the remainder is zero.
    pub fn div_exact(&self, b: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.divrem_exact(b)?;
        if !r.is_zero() {
            return Err(Error::NonExactDivision);
        }
        Ok(q)
    }

    /// True when `b` divides `self` in `Z[t]`.
    pub fn divisible_by(&self, b: &IntPoly) -> bool {
        matches!(self.divrem_exact(b), Ok((_, r)) if r.is_zero())
    }

    /// Greatest common divisor in `Z[t]`, with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// Exponent of the multiplicity of the root `r` (by repeated exact division).
    pub fn multiplicity_of_root(&self, r: i64) -> usize {
        let lin = IntPoly::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            match p.divrem_exact(&lin) {
                Ok((q, rem)) if rem.is_zero() => {
                    p = q;
                    k += 1;
                }
                _ => break,
            }
        }
        k
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn product<'a, I: IntoIterator<Item = &'a IntPoly>>(it: I) -> IntPoly {
        it.into_iter().fold(IntPoly::one(), |acc, p| &acc * p)
    }

    /// Coefficients as `i64` when every one fits.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = o.coeffs.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::new(v)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        self + &(-o)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, o: IntPoly) -> IntPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Coefficients serialize as JSON integers when they fit in 64 bits and as
/// decimal strings otherwise.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(x) => seq.serialize_element(&x)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coef {
            Int(i64),
            Str(String),
        }
        let v: Vec<Coef> = Vec::deserialize(d)?;
        let mut out = Vec::with_capacity(v.len());
        for c in v {
            out.push(match c {
                Coef::Int(x) => BigInt::from(x),
                Coef::Str(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom)?,
            });
        }
        Ok(IntPoly::new(out))
    }
}

pub(crate) fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_from_str(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        let g = p(&[-1, 0, 1]).gcd(&p(&[1, -2, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn derivative_of_cubic() {
        assert_eq!(p(&[0, -3, 0, 1]).derivative(), p(&[-3, 0, 3]));
    }

    #[test]
    fn evaluation_at_zero() {
        assert_eq!(p(&[12, -10, 1]).eval_i64(0), BigInt::from(12));
    }

    #[test]
    fn homogeneous_evaluation_matches_rational() {
        let f = p(&[3, -5, 0, 2]);
        let x = BigRational::new(BigInt::from(-7), BigInt::from(3));
        let direct = f.eval_rational(&x);
        // 2x^3 - 5x + 3 at -7/3
        let expected = BigRational::new(BigInt::from(2 * -343 + 5 * 7 * 9 + 3 * 27), BigInt::from(27));
        assert_eq!(direct, expected);
        assert_eq!(f.sign_at(&x), -1);
    }

    #[test]
    fn division_and_pseudo_remainder() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[1, 2]);
        let r = a.pseudo_rem(&b).unwrap();
        assert!(r.deg() == 0);
        // lc(b)^3 * a(-1/2) = 8 * (1 - 1 + 3/4 - 1/2) = 2
        assert_eq!(r, p(&[2]));
        assert_eq!(a.div_exact(&b), Err(Error::NonExactDivision));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[12, -10, 1]).to_string(), "t^2 - 10*t + 12");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn json_round_trip_with_big_coefficient() {
        let big = BigInt::from(1u64 << 62) * BigInt::from(1000);
        let f = IntPoly::new(vec![BigInt::from(-3), big]);
        let s = serde_json::to_string(&f).unwrap();
        let g: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
