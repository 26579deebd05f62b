use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::factor_over_integers;
use super::sturm::{cauchy_bound, sturm_sequence, SturmSequence};
use super::{rational_from_str, rational_to_string, IntPoly};
use crate::error::{Error, Result};

/// Default isolation width exponent: intervals are refined below `2^-32`.
pub const DEFAULT_WIDTH_BITS: u32 = 32;

/// An interval `(lo, hi]` holding exactly one real root of `poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub poly: IntPoly,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Midpoint as a float, for display only.
    pub fn approx(&self) -> f64 {
        let m = self.midpoint();
        m.numer().to_f64().unwrap_or(f64::NAN) / m.denom().to_f64().unwrap_or(f64::NAN)
    }

    /// Checks the defining property with a fresh Sturm count.
    pub fn verify(&self) -> bool {
        let sq = squarefree_part(&self.poly);
        sturm_sequence(&sq).map(|s| s.count(&self.lo, &self.hi) == 1).unwrap_or(false)
    }

    /// Bisects until the width drops below `2^-bits`.
    pub fn refine(&self, bits: u32) -> RootInterval {
        let sq = squarefree_part(&self.poly);
        let seq = sturm_sequence(&sq).expect("nonzero");
        let mut r = self.clone();
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
        while r.width() >= target {
            bisect(&seq, &mut r);
        }
        r
    }

    /// True when `x` lies in `(lo, hi]`.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x <= &self.hi
    }
}

fn bisect(seq: &SturmSequence, r: &mut RootInterval) {
    let mid = r.midpoint();
    if seq.count(&mid, &r.hi) >= 1 {
        r.lo = mid;
    } else {
        r.hi = mid;
    }
}

/// Primitive square-free part `p / gcd(p, p')`.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    let g = p.gcd(&p.derivative());
    if g.deg() == 0 {
        return p.primitive_part();
    }
    p.div_exact(&g).expect("gcd divides").primitive_part()
}

pub fn isolate_largest_real_root(p: &IntPoly) -> Result<RootInterval> {
    isolate_largest_real_root_with_width(p, DEFAULT_WIDTH_BITS)
}

/// Isolates the largest real root of `p` in an interval narrower than `2^-bits`.
pub fn isolate_largest_real_root_with_width(p: &IntPoly, bits: u32) -> Result<RootInterval> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sq = squarefree_part(p);
    let seq = sturm_sequence(&sq)?;
    let b = BigRational::from_integer(cauchy_bound(&sq));
    let mut r = RootInterval { lo: -b.clone(), hi: b, poly: p.clone() };
    if seq.count(&r.lo, &r.hi) == 0 {
        return Err(Error::NoRealRoot);
    }
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
    while seq.count(&r.lo, &r.hi) > 1 || r.width() >= target {
        bisect(&seq, &mut r);
    }
    Ok(r)
}

/// The irreducible factor of `p` vanishing at the root isolated by `r`,
/// together with an interval on which it is the only factor with a root.
pub fn minimal_polynomial_with_interval(p: &IntPoly, r: &RootInterval) -> Result<(IntPoly, RootInterval)> {
    let fac = factor_over_integers(p);
    let mut cands: Vec<(IntPoly, SturmSequence)> = Vec::new();
    for f in fac.distinct_factors() {
        cands.push((f.clone(), sturm_sequence(f)?));
    }
    let sq = squarefree_part(p);
    let seq = sturm_sequence(&sq)?;
    let mut r = r.clone();
    if seq.count(&r.lo, &r.hi) != 1 {
        return Err(Error::IntervalAmbiguous);
    }
    for _ in 0..4096 {
        let hits: Vec<usize> = cands
            .iter()
            .enumerate()
            .filter(|(_, (_, s))| s.count(&r.lo, &r.hi) > 0)
            .map(|(i, _)| i)
            .collect();
        match hits.len() {
            1 => {
                let f = cands[hits[0]].0.clone();
                let out = RootInterval { lo: r.lo.clone(), hi: r.hi.clone(), poly: f.clone() };
                return Ok((f, out));
            }
            0 => return Err(Error::IntervalAmbiguous),
            _ => bisect(&seq, &mut r),
        }
    }
    Err(Error::IntervalAmbiguous)
}

pub fn minimal_polynomial_of_root(p: &IntPoly, r: &RootInterval) -> Result<IntPoly> {
    Ok(minimal_polynomial_with_interval(p, r)?.0)
}

impl Serialize for RootInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            lo: String,
            hi: String,
            poly: &'a IntPoly,
            approx: f64,
        }
        Repr { lo: rational_to_string(&self.lo), hi: rational_to_string(&self.hi), poly: &self.poly, approx: self.approx() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            lo: String,
            hi: String,
            poly: IntPoly,
        }
        let r = Repr::deserialize(d)?;
        let bad = |s: &str| serde::de::Error::custom(format!("bad rational '{s}'"));
        Ok(RootInterval {
            lo: rational_from_str(&r.lo).ok_or_else(|| bad(&r.lo))?,
            hi: rational_from_str(&r.hi).ok_or_else(|| bad(&r.hi))?,
            poly: r.poly,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn largest_root_of_difference_of_squares() {
        let r = isolate_largest_real_root(&p(&[-9, 0, 1])).unwrap();
        assert!(r.contains(&BigRational::from_integer(3.into())));
        assert!(r.width() < BigRational::new(1.into(), BigInt::one() << 32));
    }

    #[test]
    fn largest_root_of_degree_two_family() {
        let r = isolate_largest_real_root(&p(&[12, -10, 1])).unwrap();
        let expected = 5.0 + 13f64.sqrt();
        assert!((r.approx() - expected).abs() < 1e-9);
        assert!(r.verify());
    }

    #[test]
    fn no_real_root() {
        assert_eq!(isolate_largest_real_root(&p(&[1, 0, 1])).unwrap_err(), Error::NoRealRoot);
    }

    #[test]
    fn minimal_polynomial_picks_the_right_factor() {
        let q = p(&[12, -10, 1]);
        let whole = &(&IntPoly::t().pow(2) * &IntPoly::linear_root(1).pow(2)) * &q;
        let r = isolate_largest_real_root(&whole).unwrap();
        assert_eq!(minimal_polynomial_of_root(&whole, &r).unwrap(), q);
        let lin = &IntPoly::linear_root(3) * &IntPoly::linear_root(1);
        let r = isolate_largest_real_root(&lin).unwrap();
        assert_eq!(minimal_polynomial_of_root(&lin, &r).unwrap(), IntPoly::linear_root(3));
    }

    #[test]
    fn interval_json_round_trip() {
        let r = isolate_largest_real_root(&p(&[-2, 0, 1])).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: RootInterval = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
