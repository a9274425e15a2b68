//! Cyclotomic polynomials, the factorization identities they satisfy, and the
//! small number-theory helpers used throughout the crate.

use std::collections::HashMap;

use num_integer::Integer;
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

/// Prime factorization of `n` as `(prime, exponent)` pairs in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [(n, 1)]
}

/// Sorted list of positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in prime_factors(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn totient(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i32 {
    let pf = prime_factors(n);
    if pf.iter().any(|&(_, e)| e > 1) {
        0
    } else if pf.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of distinct prime divisors; `omega(1) = 0`.
pub fn omega(n: u64) -> u32 {
    prime_factors(n).len() as u32
}

/// Number of prime divisors counted with multiplicity; `big_omega(1) = 0`.
pub fn big_omega(n: u64) -> u32 {
    prime_factors(n).iter().map(|&(_, e)| e).sum()
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && prime_factors(n).iter().all(|&(_, e)| e == 1)
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    prime_factors(n).iter().map(|&(p, _)| p).product()
}

/// All `y` with `totient(y) = m`, sorted.
pub fn inverse_totient(m: u64) -> Vec<u64> {
    if m == 0 {
        return Vec::new();
    }
    let mut candidates: Vec<u64> = divisors(m)
        .into_iter()
        .map(|d| d + 1)
        .filter(|&p| is_prime(p))
        .collect();
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    inverse_totient_rec(m, &candidates, 1, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

fn inverse_totient_rec(m: u64, primes: &[u64], acc: u64, out: &mut Vec<u64>) {
    if m == 1 {
        out.push(acc);
    }
    for (i, &p) in primes.iter().enumerate() {
        if !m.is_multiple_of(p - 1) {
            continue;
        }
        let mut rest = m / (p - 1);
        let mut pk = p;
        loop {
            inverse_totient_rec(rest, &primes[i + 1..], acc * pk, out);
            if !rest.is_multiple_of(p) {
                break;
            }
            rest /= p;
            pk *= p;
        }
    }
}

static CACHE: Lazy<RwLock<HashMap<u64, IntPoly>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// The `n`-th cyclotomic polynomial.
///
/// For squarefree `n` this divides `x^n - 1` by every `Φ_d` with `d` a proper
/// divisor. Other indices reduce to their radical through
/// `Φ_n(x) = Φ_rad(n)(x^(n / rad(n)))`.
///
/// # Panics
/// Panics when `n == 0`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(f) = CACHE.read().get(&n) {
        return f.clone();
    }
    let rad = radical(n);
    let f = if rad != n {
        cyclotomic_poly(rad).compose_power((n / rad) as usize)
    } else {
        let mut acc = IntPoly::binomial(n as usize, 1);
        for d in divisors(n) {
            if d < n {
                acc = acc
                    .exact_div(&cyclotomic_poly(d))
                    .expect("cyclotomic division is exact");
            }
        }
        acc
    };
    CACHE.write().entry(n).or_insert_with(|| f.clone());
    f
}

/// Indices `d` with `x^n - 1 = ∏ Φ_d`, i.e. the divisors of `n`.
pub fn xn_minus_one_factorization(n: u64) -> Vec<u64> {
    divisors(n)
}

/// Indices `k` with `Φ_y(x^r) = ∏ Φ_k(x)` for squarefree `r ≥ 2`.
pub fn compose_indices(y: u64, r: u64) -> Result<Vec<u64>> {
    if y == 0 {
        return Err(Error::InvalidParameter("cyclotomic index must be positive".into()));
    }
    if r < 2 {
        return Err(Error::InvalidParameter(format!("exponent {r} must be at least 2")));
    }
    if !is_squarefree(r) {
        return Err(Error::NotSquarefree(r));
    }
    let g = y.gcd(&r);
    let mut out: Vec<u64> = divisors(r / g).into_iter().map(|d| y * d * g).collect();
    out.sort_unstable();
    Ok(out)
}
