//! Dense polynomials over a prime field `GF(p)`, `p` an odd prime below 2^32.
//!
//! Used for the irreducibility screen and for the starting factorization of
//! Zassenhaus' algorithm (distinct-degree plus Cantor-Zassenhaus splitting).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    pub p: u64,
    /// Lowest degree first, normalized.
    pub c: Vec<u64>,
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|x| x.mod_floor(&pb).to_u64().unwrap())
            .collect();
        Self::new(p, c)
    }

    /// Symmetric lift to the integers.
    pub fn to_int(&self) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            self.c
                .iter()
                .map(|&x| if x > half { BigInt::from(x) - BigInt::from(self.p) } else { BigInt::from(x) })
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        ModPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        ModPoly { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invm(self.lead(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&a| mulm(a, s, self.p)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let v = (0..n)
            .map(|i| {
                let a = *self.c.get(i).unwrap_or(&0);
                let b = *o.c.get(i).unwrap_or(&0);
                (a + p - b) % p
            })
            .collect();
        Self::new(p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut v = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, v.into_iter().map(|x| x as u64).collect())
    }

    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.c.len() < b.c.len() {
            return (Self::zero(p), self.clone());
        }
        let inv = invm(b.lead(), p);
        let mut r = self.c.clone();
        let db = b.deg();
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let top = r[i + db];
            if top == 0 {
                continue;
            }
            let qi = mulm(top, inv, p);
            q[i] = qi;
            for (j, &bc) in b.c.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mulm(qi, bc, p)) % p;
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.divrem(b).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = invm(r0.lead(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mulm(a, i as u64 % p, p)).collect(),
        )
    }

    /// `self^e mod m`
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p);
        let base = self.rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).deg() == 0
    }
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// pairs `(g, k)` where `g` is the product of all irreducible factors of degree `k`.
pub fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut f = f.monic();
    let x = ModPoly::x(p);
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut k = 0;
    while f.deg() >= 2 * (k + 1) {
        k += 1;
        h = h.powmod(&pe, &f);
        let g = f.gcd(&h.sub(&x));
        if g.deg() > 0 {
            f = f.divrem(&g).0;
            h = h.rem(&f);
            out.push((g, k));
        }
    }
    if f.deg() > 0 {
        let d = f.deg();
        out.push((f, d));
    }
    out
}

/// Splits a monic product of irreducibles all of degree `k` (Cantor-Zassenhaus).
/// Trial polynomials run through a fixed enumeration, so the result is deterministic.
pub fn equal_degree(f: &ModPoly, k: usize) -> Vec<ModPoly> {
    let p = f.p;
    if f.deg() == k {
        return vec![f.monic()];
    }
    let exp = (num_traits::pow(BigUint::from(p), k) - BigUint::one()) / BigUint::from(2u32);
    let n = f.deg();
    let mut seed: u64 = 1;
    loop {
        // coefficients of the trial polynomial are the base-p digits of `seed`
        let mut digits = Vec::new();
        let mut s = seed;
        while s > 0 && digits.len() < n {
            digits.push(s % p);
            s /= p;
        }
        seed += 1;
        let a = ModPoly::new(p, digits);
        if a.deg() == 0 {
            continue;
        }
        let b = a.powmod(&exp, f).sub(&ModPoly::one(p));
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let h = f.divrem(&g).0;
            let mut out = equal_degree(&g, k);
            out.extend(equal_degree(&h, k));
            return out;
        }
    }
}

/// Complete factorization of a square-free polynomial into monic irreducibles.
pub fn factor_squarefree(f: &ModPoly) -> Vec<ModPoly> {
    let mut out = Vec::new();
    for (g, k) in distinct_degree(f) {
        out.extend(equal_degree(&g, k));
    }
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then(a.c.cmp(&b.c)));
    out
}

/// Degrees of the irreducible factors, from distinct-degree factorization alone.
pub fn factor_degrees(f: &ModPoly) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, k) in distinct_degree(f) {
        out.extend(std::iter::repeat_n(k, g.deg() / k));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn lead_mod(f: &IntPoly, p: u64) -> u64 {
    f.lead().mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn is_zero_mod(x: &BigInt, p: u64) -> bool {
    x.mod_floor(&BigInt::from(p)).is_zero()
}
