//! Quadratic Hensel lifting of a modular factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::ModPoly;
use super::IntPoly;

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

pub fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic divisor modulo `m`.
fn divrem_monic(a: &IntPoly, b: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    debug_assert!(b.is_monic());
    let db = b.deg();
    let mut r: Vec<BigInt> = reduce(a, m).into_coeffs();
    if r.len() <= db {
        return (IntPoly::zero(), IntPoly::new(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let top = r[i + db].mod_floor(m);
        if top.is_zero() {
            continue;
        }
        for (j, bc) in b.coeffs().iter().enumerate() {
            r[i + j] = (&r[i + j] - &top * bc).mod_floor(m);
        }
        q[i] = top;
    }
    (reduce(&IntPoly::new(q), m), reduce(&IntPoly::new(r), m))
}

fn mulm(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce(&(a * b), m)
}

/// One quadratic step: from `f = g h`, `s g + t h = 1 (mod m)` to the same
/// relations modulo `m^2`. `h` is monic.
fn step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = reduce(&(f - &(g * h)), &m2);
    let (q, r) = divrem_monic(&mulm(s, &e, &m2), h, &m2);
    let g2 = reduce(&(&(g + &mulm(t, &e, &m2)) + &mulm(&q, g, &m2)), &m2);
    let h2 = reduce(&(h + &r), &m2);
    let b = reduce(&(&(&mulm(s, &g2, &m2) + &mulm(t, &h2, &m2)) - &IntPoly::one()), &m2);
    let (c, d) = divrem_monic(&mulm(s, &b, &m2), &h2, &m2);
    let s2 = reduce(&(s - &d), &m2);
    let t2 = reduce(&(&(t - &mulm(t, &b, &m2)) - &mulm(&c, &g2, &m2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc(f) * prod u_i (mod p)` to a factorization modulo `p^(2^k) >= bound`.
/// Returns the lifted monic factors and the modulus.
pub fn lift(f: &IntPoly, factors: &[ModPoly], p: u64, bound: &BigInt) -> (Vec<IntPoly>, BigInt) {
    let pb = BigInt::from(p);
    let mut steps = 0;
    let mut modulus = pb.clone();
    while &modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let mut out = Vec::with_capacity(factors.len());
    // `rest` carries lc(f) times the product of the factors not yet split off,
    // already correct modulo the final modulus.
    let mut rest = reduce(f, &modulus);
    for (i, u) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            // the last factor is monic: divide off the leading coefficient
            let lc = rest.lead();
            let inv = lc.modinv(&modulus).expect("leading coefficient is a unit");
            out.push(reduce(&rest.scale(&inv), &modulus));
            break;
        }
        let others = factors[i + 1..]
            .iter()
            .fold(ModPoly::one(p), |a, b| a.mul(b))
            .scale(super::modp::lead_mod(f, p));
        let (gg, s0, t0) = others.ext_gcd(u);
        debug_assert_eq!(gg.deg(), 0);
        let mut m = pb.clone();
        let mut g = reduce(&others.to_int(), &pb);
        let mut h = reduce(&u.to_int(), &pb);
        let mut s = reduce(&s0.to_int(), &pb);
        let mut t = reduce(&t0.to_int(), &pb);
        for _ in 0..steps {
            let (g2, h2, s2, t2) = step(&rest, &g, &h, &s, &t, &m);
            g = g2;
            h = h2;
            s = s2;
            t = t2;
            m = &m * &m;
        }
        out.push(h);
        rest = g;
    }
    debug_assert!(modulus > BigInt::one());
    (out, modulus)
}
