//! Factorization in `Z[t]`: content, square-free parts, rational roots,
//! a modular irreducibility screen, then Zassenhaus (Hensel lifting and
//! subset recombination).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{Integer};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::hensel::{lift, symmetric};
use super::modp::{factor_degrees, factor_squarefree, is_prime, is_zero_mod, ModPoly};
use super::squarefree::squarefree_decomposition;
use super::IntPoly;

/// Primes tried by the irreducibility screen.
pub const SCREEN_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "bigint_str")]
    pub content: BigInt,
    /// Primitive irreducible factors with positive leading coefficient and
    /// their multiplicities, sorted by degree then coefficients.
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    /// The irreducible factors, ignoring multiplicities.
    pub fn distinct_factors(&self) -> impl Iterator<Item = &IntPoly> {
        self.factors.iter().map(|(f, _)| f)
    }
}

pub(crate) mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn factor_over_integers(p: &IntPoly) -> Factorization {
    if p.is_zero() {
        return Factorization { content: BigInt::zero(), factors: Vec::new() };
    }
    let mut content = p.content();
    if p.lead().is_negative() {
        content = -content;
    }
    let mut factors: Vec<(IntPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for f in factor_squarefree_primitive(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    Factorization { content, factors }
}

/// Factors a primitive square-free polynomial with positive leading coefficient.
pub(crate) fn factor_squarefree_primitive(f: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut f = f.primitive_part();
    let v = f.t_valuation();
    if v > 0 {
        out.push(IntPoly::t());
        f = f.shr(v);
    }
    for lin in rational_roots(&f) {
        if let Ok(q) = f.div_exact(&lin) {
            f = q;
            out.push(lin);
        }
    }
    if f.deg() >= 1 {
        out.extend(zassenhaus(&f.primitive_part()));
    }
    out
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d * d != n {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    Some(ds)
}

/// Linear factors `(q t - p)` for the rational roots `p/q`, found by the
/// rational root test when the end coefficients are small enough to enumerate.
fn rational_roots(f: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    if f.deg() < 1 {
        return out;
    }
    let (Some(ps), Some(qs)) = (small_divisors(&f.coeff(0)), small_divisors(&f.lead())) else {
        return out;
    };
    if ps.len() * qs.len() > 20_000 {
        return out;
    }
    let mut seen = BTreeSet::new();
    for &q in &qs {
        for &p in &ps {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sp in [p as i128, -(p as i128)] {
                let num = BigInt::from(sp);
                let den = BigInt::from(q);
                if f.eval_homogeneous(&num, &den).is_zero() && seen.insert((sp, q)) {
                    out.push(IntPoly::new(vec![-num, den]));
                }
            }
        }
    }
    out
}

fn usable_prime(f: &IntPoly, p: u64) -> Option<ModPoly> {
    if is_zero_mod(&f.lead(), p) {
        return None;
    }
    let fm = ModPoly::from_int(f, p);
    if fm.deg() != f.deg() || !fm.is_squarefree() {
        return None;
    }
    Some(fm)
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let add: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(add);
    }
    s
}

/// Result of the modular screen: either an irreducibility certificate or the
/// set of factor degrees still possible over the integers.
pub(crate) enum Screen {
    Irreducible,
    Possible { degrees: BTreeSet<usize> },
}

pub(crate) fn modular_screen(f: &IntPoly) -> Screen {
    let n = f.deg();
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    for &p in &SCREEN_PRIMES {
        let Some(fm) = usable_prime(f, p) else { continue };
        let degs = factor_degrees(&fm);
        if degs.len() == 1 {
            return Screen::Irreducible;
        }
        let sums = subset_sums(&degs);
        possible = possible.intersection(&sums).copied().collect();
        if possible.len() <= 2 {
            return Screen::Irreducible;
        }
    }
    Screen::Possible { degrees: possible }
}

/// True when `f` is irreducible over the integers (for primitive square-free input).
pub fn is_irreducible(f: &IntPoly) -> bool {
    let f = f.primitive_part();
    if f.deg() == 0 {
        return false;
    }
    if f.deg() == 1 {
        return true;
    }
    let fs = factor_squarefree_primitive(&f);
    fs.len() == 1 && squarefree_decomposition(&f).len() == 1
}

/// Mignotte-style bound: any factor `h` of `f` satisfies `|lc(f)/lc(h) * h|_inf < bound / 2`.
fn coefficient_bound(f: &IntPoly) -> BigInt {
    let n = f.deg();
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b);
    let norm = norm2.sqrt() + BigInt::one();
    BigInt::from(2) * f.lead().abs() * (BigInt::one() << n) * norm
}

fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let possible = match modular_screen(f) {
        Screen::Irreducible => return vec![f.clone()],
        Screen::Possible { degrees } => degrees,
    };
    // choose the prime with the fewest modular factors among a wider range
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 12 && p < 5000 {
        if is_prime(p) {
            if let Some(fm) = usable_prime(f, p) {
                tried += 1;
                let degs = factor_degrees(&fm);
                let better = best.as_ref().is_none_or(|(_, b)| degs.len() < b.len());
                if better {
                    best = Some((p, factor_squarefree(&fm)));
                }
                if degs.len() == 1 {
                    return vec![f.clone()];
                }
            }
        }
        p += 2;
    }
    let (p, modular) = best.expect("some prime keeps a square-free image");
    let bound = coefficient_bound(f);
    let (mut lifted, m) = lift(f, &modular, p, &bound);
    recombine(f, &mut lifted, &m, &possible)
}

fn recombine(f: &IntPoly, lifted: &mut Vec<IntPoly>, m: &BigInt, possible: &BTreeSet<usize>) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].deg()).sum();
            if possible.contains(&deg) {
                if let Some(h) = try_subset(&f, lifted, &idx, m) {
                    f = f.div_exact(&h).expect("candidate divides");
                    out.push(h);
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    found = true;
                    break;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if f.deg() > 0 {
        out.push(f.primitive_part());
    }
    out
}

fn try_subset(f: &IntPoly, lifted: &[IntPoly], idx: &[usize], m: &BigInt) -> Option<IntPoly> {
    let lc = f.lead();
    // cheap constant-term test first
    let mut c0 = lc.clone();
    for &i in idx {
        c0 = (c0 * lifted[i].coeff(0)).mod_floor(m);
    }
    let half: BigInt = m / 2;
    let c0 = if c0 > half { c0 - m } else { c0 };
    if c0.is_zero() || !(&lc * f.coeff(0)).is_multiple_of(&c0) {
        return None;
    }
    let mut g = IntPoly::constant(lc);
    for &i in idx {
        g = symmetric(&(&g * &lifted[i]), m);
    }
    let h = g.primitive_part();
    if f.divisible_by(&h) {
        Some(h)
    } else {
        None
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn quadratic_with_nonsquare_discriminant() {
        let f = factor_over_integers(&p(&[12, -10, 1]));
        assert_eq!(f.factors, vec![(p(&[12, -10, 1]), 1)]);
    }

    #[test]
    fn product_with_multiplicities() {
        let q = p(&[12, -10, 1]);
        let x = &(&IntPoly::t().pow(2) * &IntPoly::linear_root(1).pow(2)) * &q;
        let f = factor_over_integers(&x);
        assert_eq!(f.factors, vec![(IntPoly::linear_root(1), 2), (IntPoly::t(), 2), (q, 1)]);
        assert_eq!(f.expand(), x);
    }

    #[test]
    fn sophie_germain_quartic() {
        let f = factor_over_integers(&p(&[4, 0, 0, 0, 1]));
        assert_eq!(f.factors, vec![(p(&[2, -2, 1]), 1), (p(&[2, 2, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_style_trap() {
        // t^4 - 10 t^2 + 1 is irreducible but splits modulo every prime
        let f = factor_over_integers(&p(&[1, 0, -10, 0, 1]));
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn nonmonic_factors_and_content() {
        let a = p(&[1, 3]);
        let b = p(&[-5, 0, 2]);
        let c = p(&[7, 1, 0, 4]);
        let x = (&(&a * &b) * &c.pow(2)).scale(&BigInt::from(-6));
        let f = factor_over_integers(&x);
        assert_eq!(f.content, BigInt::from(-6));
        assert_eq!(f.expand(), x);
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn next_combination_enumerates_all() {
        let mut idx = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut idx, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
