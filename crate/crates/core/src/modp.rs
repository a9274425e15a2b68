//! Polynomial arithmetic and factorization over small prime fields.
//!
//! Polynomials are dense `Vec<u64>` with coefficients in `[0, p)`, lowest
//! degree first and no trailing zeros. Primes stay below 2^16 so that a full
//! convolution row can be accumulated in a `u64` without intermediate
//! reductions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::intpoly::IntPoly;

pub(crate) type Poly = Vec<u64>;

pub(crate) const MAX_PRIME: u64 = 1 << 16;

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Odd primes in increasing order.
pub(crate) fn odd_primes() -> impl Iterator<Item = u64> {
    (3..MAX_PRIME).step_by(2).filter(|&n| is_prime_u64(n))
}

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &Poly) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn reduce(f: &IntPoly, p: u64) -> Poly {
    let pb = BigInt::from(p);
    let mut out: Poly = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    let (g, x, _) = ext_euclid(a as i64, p as i64);
    debug_assert_eq!(g, 1, "{a} not invertible mod {p}");
    x.rem_euclid(p as i64) as u64
}

fn ext_euclid(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_euclid(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
pub(crate) fn add(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &Poly, c: u64, p: u64) -> Poly {
    let mut out: Poly = a.iter().map(|&x| x * c % p).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let b_support: Vec<usize> = (0..b.len()).filter(|&j| b[j] != 0).collect();
    let dense = b_support.len() * 2 > b.len();
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if dense {
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x * y;
            }
        } else {
            for &j in &b_support {
                acc[i + j] += x * b[j];
            }
        }
    }
    let mut out: Poly = acc.into_iter().map(|v| v % p).collect();
    trim(&mut out);
    out
}

pub(crate) fn monic(a: &Poly, p: u64) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv(lc, p), p),
    }
}

/// Quotient and remainder of `a` by a nonzero `m`.
pub(crate) fn divrem(a: &Poly, m: &Poly, p: u64) -> (Poly, Poly) {
    let dm = degree(m).expect("division by zero polynomial");
    if a.len() <= dm {
        return (Vec::new(), a.clone());
    }
    let inv_lc = inv(*m.last().unwrap(), p);
    let support: Vec<usize> = (0..dm).filter(|&j| m[j] != 0).collect();
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = r[i] % p;
        if c == 0 {
            continue;
        }
        let t = c * inv_lc % p;
        q[i - dm] = t;
        r[i] = 0;
        for &j in &support {
            let idx = i - dm + j;
            r[idx] = (r[idx] + p - t * m[j] % p) % p;
        }
    }
    r.truncate(dm);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    divrem(a, m, p).1
}

pub(crate) fn mulmod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
pub(crate) fn ext_gcd(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let c = inv(*r0.last().expect("not both zero"), p);
    (scale(&r0, c, p), scale(&s0, c, p), scale(&t0, c, p))
}

pub(crate) fn derivative(a: &Poly, p: u64) -> Poly {
    let mut out: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn powmod(base: &Poly, exp: &BigUint, m: &Poly, p: u64) -> Poly {
    let mut result: Poly = vec![1];
    let base = rem(base, m, p);
    let bits = exp.bits();
    for i in (0..bits).rev() {
        result = mulmod(&result, &result, m, p);
        if exp.bit(i) {
            result = mulmod(&result, &base, m, p);
        }
    }
    if degree(m) == Some(0) {
        return Vec::new();
    }
    result
}

pub(crate) fn is_squarefree(f: &Poly, p: u64) -> bool {
    let df = derivative(f, p);
    if df.is_empty() {
        return degree(f) == Some(0);
    }
    degree(&gcd(f, &df, p)) == Some(0)
}

/// True when a prime not dividing either leading coefficient shows that the
/// two integer polynomials share no nonconstant factor.
pub(crate) fn certainly_coprime(a: &IntPoly, b: &IntPoly) -> bool {
    let (Some(la), Some(lb)) = (a.lc(), b.lc()) else {
        return false;
    };
    let lead = la * lb;
    let mut tried = 0;
    for p in odd_primes().skip(2) {
        if (&lead % p).is_zero() {
            continue;
        }
        let g = gcd(&reduce(a, p), &reduce(b, p), p);
        if degree(&g) == Some(0) {
            return true;
        }
        tried += 1;
        if tried == 3 {
            return false;
        }
    }
    false
}

/// Distinct-degree factorization of a monic squarefree polynomial.
/// Returns pairs `(d, g)` where `g` is the product of all irreducible factors
/// of degree `d`. Stops early (returning `None`) once more than `max_factors`
/// factors have been seen.
pub(crate) fn distinct_degree(f: &Poly, p: u64, max_factors: usize) -> Option<Vec<(usize, Poly)>> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, &rest, p);
    let pe = BigUint::from(p);
    let mut count = 0usize;
    let mut d = 0usize;
    while degree(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod(&h, &pe, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        if degree(&g).unwrap_or(0) > 0 {
            count += degree(&g).unwrap() / d;
            if count > max_factors {
                return None;
            }
            rest = divrem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((d, g));
        }
    }
    if let Some(dr) = degree(&rest) {
        if dr > 0 {
            count += 1;
            if count > max_factors {
                return None;
            }
            out.push((dr, rest));
        }
    }
    Some(out)
}

/// Cantor–Zassenhaus splitting of a product of irreducibles of equal degree `d`.
pub(crate) fn equal_degree<R: Rng>(g: &Poly, d: usize, p: u64, rng: &mut R) -> Vec<Poly> {
    let n = degree(g).unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let mut a: Poly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let direct = gcd(&a, g, p);
        let h = if degree(&direct).unwrap_or(0) > 0 {
            direct
        } else {
            let b = sub(&powmod(&a, &exp, g, p), &vec![1], p);
            gcd(&b, g, p)
        };
        let dh = degree(&h).unwrap_or(0);
        if dh > 0 && dh < n {
            let other = divrem(g, &h, p).0;
            let mut out = equal_degree(&h, d, p, rng);
            out.extend(equal_degree(&monic(&other, p), d, p, rng));
            return out;
        }
    }
}

/// Complete factorization of a monic squarefree polynomial into monic irreducibles.
#[cfg(test)]
pub(crate) fn factor_squarefree<R: Rng>(f: &Poly, p: u64, rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree(f, p, usize::MAX).unwrap() {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}
