//! Characteristic polynomials `det(tI - A)`.
//!
//! Small matrices go through fraction-free Bareiss elimination over `Z[t]`.
//! Larger ones (the Thurston-Veech matrices reach dimension 100 and more once
//! the vertical curves are counted) use Hessenberg reduction modulo word-sized
//! primes and Chinese remaindering up to a proven coefficient bound.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::IntMatrix;
use crate::poly::IntPoly;

/// Dimension up to which `charpoly` uses Bareiss elimination.
pub const BAREISS_MAX_DIM: usize = 24;

pub fn charpoly(a: &IntMatrix) -> IntPoly {
    if a.rows() <= BAREISS_MAX_DIM {
        charpoly_bareiss(a)
    } else {
        charpoly_multimodular(a)
    }
}

/// Bareiss elimination on `tI - A` with polynomial entries.
///
/// The leading principal minors of `tI - A` are monic, so no pivoting is
/// needed and every division is by a monic polynomial.
pub fn charpoly_bareiss(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square(), "charpoly of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return IntPoly::one();
    }
    let mut m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -a.get(i, j);
                    if i == j {
                        IntPoly::new(vec![c, BigInt::one()])
                    } else {
                        IntPoly::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&pivot * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = pivot;
    }
    m[n - 1][n - 1].clone()
}

/// `prod_i (1 + |row_i|_2)`, rounded up; bounds every coefficient of the charpoly.
fn coefficient_bound(a: &IntMatrix) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..a.rows() {
        let s: BigInt = a.row(i).iter().map(|x| x * x).fold(BigInt::zero(), |x, y| x + y);
        b *= s.sqrt() + BigInt::from(2);
    }
    b
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes just below 2^31, largest first.
fn primes() -> &'static Vec<u64> {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut v = Vec::new();
        let mut n: u64 = (1 << 31) - 1;
        while v.len() < 400 {
            if is_prime_u64(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    })
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Characteristic polynomial modulo `p` via reduction to upper Hessenberg form.
pub fn charpoly_mod_p(a: &IntMatrix, p: u64) -> Vec<u64> {
    let n = a.rows();
    let pb = BigInt::from(p);
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).mod_floor(&pb).to_u64().unwrap()).collect())
        .collect();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p);
        for j in m + 1..n {
            let u = h[j][m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            // row_j -= u row_m
            for k in 0..n {
                h[j][k] = (h[j][k] + p - u * h[m][k] % p) % p;
            }
            // col_m += u col_j
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[j]) % p;
            }
        }
    }
    // recurrence for the characteristic polynomials of the leading blocks
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        let d = h[m - 1][m - 1];
        for (k, &c) in prev.iter().enumerate() {
            pm[k + 1] = (pm[k + 1] + c) % p;
            pm[k] = (pm[k] + p - c * d % p) % p;
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = t * h[i][i - 1] % p;
            let coef = h[i - 1][m - 1] * t % p;
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i - 1].iter().enumerate() {
                pm[k] = (pm[k] + p - coef * c % p) % p;
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

/// Multimodular characteristic polynomial with an explicit coefficient bound.
pub fn charpoly_multimodular(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square(), "charpoly of a non-square matrix");
    let n = a.rows();
    let bound = coefficient_bound(a) * BigInt::from(2);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for &p in primes() {
        if modulus > bound {
            break;
        }
        let r = charpoly_mod_p(a, p);
        let pb = BigInt::from(p);
        // CRT: x = acc + modulus * ((r - acc) * modulus^-1 mod p)
        let minv = BigInt::from(inv_mod((&modulus % &pb).to_u64().unwrap(), p));
        for k in 0..=n {
            let diff = (BigInt::from(r[k]) - &acc[k]).mod_floor(&pb);
            let step = (diff * &minv).mod_floor(&pb);
            acc[k] = &acc[k] + &modulus * step;
        }
        modulus *= pb;
    }
    assert!(modulus > bound, "ran out of primes for the CRT bound");
    let half: BigInt = &modulus / 2;
    IntPoly::new(
        acc.into_iter()
            .map(|c| if c > half { c - &modulus } else { c })
            .collect(),
    )
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
            m.swap(i, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    &m[n - 1][n - 1] * sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one() {
        let a = IntMatrix::from_rows(&[vec![3]]);
        assert_eq!(charpoly(&a), IntPoly::from_i64(&[-3, 1]));
    }

    #[test]
    fn all_ones_block() {
        let a = IntMatrix::from_rows(&vec![vec![1; 4]; 4]);
        // t^3 (t - 4)
        assert_eq!(charpoly(&a), IntPoly::from_i64(&[0, 0, 0, -4, 1]));
        assert_eq!(charpoly_multimodular(&a), charpoly_bareiss(&a));
    }

    #[test]
    fn both_routes_agree_on_mixed_signs() {
        let a = IntMatrix::from_rows(&[
            vec![0, 2, -1, 7],
            vec![3, -5, 0, 1],
            vec![1, 1, 1, 1],
            vec![-4, 0, 2, 9],
        ]);
        assert_eq!(charpoly_multimodular(&a), charpoly_bareiss(&a));
    }

    #[test]
    fn determinant_with_zero_pivot() {
        let a = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&a), BigInt::from(-1));
        let b = IntMatrix::from_rows(&[vec![2, 4], vec![1, 2]]);
        assert_eq!(determinant(&b), BigInt::zero());
    }
}
