//! Splitting of rational primes in cyclotomic fields and the exact valuation
//! bound for linear polynomials `x - a`.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::cyclotomic::{is_prime, is_squarefree, prime_factors, totient};
use crate::error::{Error, Result};

/// Least `k ≥ 1` with `a^k ≡ 1 (mod n)`.
pub fn multiplicative_order(a: i64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("modulus {n} must be at least 2")));
    }
    let n128 = n as i128;
    let orig = a;
    let a = (a as i128).rem_euclid(n128);
    if a.gcd(&n128) != 1 {
        return Err(Error::NotCoprime { a: orig, n });
    }
    let mut k = 1;
    let mut x = a;
    while x != 1 {
        x = x * a % n128;
        k += 1;
    }
    Ok(k)
}

/// Ramification index, residue degree and number of primes above `q` in
/// `Q(ζ_N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeSplittingData {
    pub q: u64,
    pub n: u64,
    pub e: u64,
    pub f_res: u64,
    pub g: u64,
}

pub fn prime_splitting_in_cyclotomic(q: u64, n: u64) -> Result<PrimeSplittingData> {
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!("{q} is not prime")));
    }
    if n < 3 {
        return Err(Error::InvalidParameter(format!("conductor {n} must be at least 3")));
    }
    if !is_squarefree(n) {
        return Err(Error::NotSquarefree(n));
    }
    let (e, f_res, g) = if !n.is_multiple_of(q) {
        let f_res = multiplicative_order(q as i64, n)?;
        (1, f_res, totient(n) / f_res)
    } else {
        let m = n / q;
        let f_res = if m <= 2 { 1 } else { multiplicative_order(q as i64, m)? };
        (q - 1, f_res, totient(m) / f_res)
    };
    Ok(PrimeSplittingData { q, n, e, f_res, g })
}

/// Validated input for the linear bound: `|a| ≥ 2` and a nonempty set of odd
/// primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearLambdaInput {
    a: i64,
    primes: BTreeSet<u64>,
}

impl LinearLambdaInput {
    pub fn new(a: i64, primes: &[u64]) -> Result<Self> {
        if a.unsigned_abs() <= 1 {
            return Err(Error::UnitRoot(a));
        }
        let primes: BTreeSet<u64> = primes.iter().copied().collect();
        if primes.is_empty() {
            return Err(Error::InvalidPrimeSet("empty".into()));
        }
        if let Some(bad) = primes.iter().find(|&&p| p == 2 || !is_prime(p)) {
            return Err(Error::InvalidPrimeSet(format!("{bad} is not an odd prime")));
        }
        Ok(LinearLambdaInput { a, primes })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn conductor(&self) -> u64 {
        self.primes.iter().product()
    }
}

/// Sum of the valuations of `a·O_K` over all primes of `K = Q(ζ_{∏P})`.
pub fn lambda_star_linear(a: i64, primes: &[u64]) -> Result<u64> {
    let input = LinearLambdaInput::new(a, primes)?;
    let n = input.conductor();
    let mut total = 0;
    for (q, v) in prime_factors(input.a.unsigned_abs()) {
        let data = prime_splitting_in_cyclotomic(q, n)?;
        total += v as u64 * data.e * data.g;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 3).unwrap(), 2);
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(3, 5).unwrap(), 4);
        assert_eq!(multiplicative_order(-1, 5).unwrap(), 2);
        assert_eq!(multiplicative_order(6, 9), Err(Error::NotCoprime { a: 6, n: 9 }));
    }

    #[test]
    fn splitting_examples() {
        let d = prime_splitting_in_cyclotomic(2, 3).unwrap();
        assert_eq!((d.e, d.f_res, d.g), (1, 2, 1));
        let d = prime_splitting_in_cyclotomic(3, 3).unwrap();
        assert_eq!((d.e, d.f_res, d.g), (2, 1, 1));
        let d = prime_splitting_in_cyclotomic(2, 15).unwrap();
        assert_eq!((d.e, d.f_res, d.g), (1, 4, 2));
        assert_eq!(prime_splitting_in_cyclotomic(2, 9), Err(Error::NotSquarefree(9)));
    }

    #[test]
    fn linear_values() {
        assert_eq!(lambda_star_linear(2, &[3]).unwrap(), 1);
        assert_eq!(lambda_star_linear(8, &[3]).unwrap(), 3);
        assert_eq!(lambda_star_linear(3, &[3]).unwrap(), 2);
        assert_eq!(lambda_star_linear(6, &[5]).unwrap(), 2);
        assert_eq!(lambda_star_linear(-8, &[3]).unwrap(), 3);
        assert_eq!(lambda_star_linear(1, &[3]), Err(Error::UnitRoot(1)));
        assert!(matches!(lambda_star_linear(2, &[2]), Err(Error::InvalidPrimeSet(_))));
        assert!(matches!(lambda_star_linear(2, &[]), Err(Error::InvalidPrimeSet(_))));
    }
}
