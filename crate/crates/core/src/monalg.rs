//! Polynomials with nonnegative rational exponents in `Z[M_q]` and their
//! factorization through the level algebras `Z[(1/r^λ) N_0]`, where `r` is
//! the radical of `d(q)`.
//!
//! The level-`λ` algebra is isomorphic to `Z[t]` via `x^m ↦ t^(m r^λ)`, so
//! factoring at a level means factoring an ordinary integer polynomial and
//! mapping the factors back.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cyclotomic::is_prime;
use crate::error::{Error, Result};
use crate::factor::{cyclotomic_index, factor_over_integers};
use crate::intpoly::{IntPoly, Sign};
use crate::monoid::{accp_status, AccpStatus, PuiseuxParam};

/// Sparse polynomial with reduced rational exponents whose denominators are
/// built from the primes of `d(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonAlgPoly {
    terms: BTreeMap<BigRational, BigInt>,
    param: PuiseuxParam,
}

fn denominator_compatible(den: &BigInt, d: u64) -> bool {
    let d = BigInt::from(d);
    let mut rest = den.clone();
    while !rest.is_one() {
        let g = rest.gcd(&d);
        if g.is_one() {
            return false;
        }
        rest /= g;
    }
    true
}

impl MonAlgPoly {
    pub fn new(
        terms: impl IntoIterator<Item = (BigRational, BigInt)>,
        param: PuiseuxParam,
    ) -> Result<Self> {
        let mut map: BTreeMap<BigRational, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.is_negative() {
                return Err(Error::InvalidParameter(format!("negative exponent {e}")));
            }
            if !denominator_compatible(e.denom(), param.den()) {
                return Err(Error::IncompatibleDenominator(e.to_string()));
            }
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MonAlgPoly { terms: map, param })
    }

    pub fn zero(param: PuiseuxParam) -> Self {
        MonAlgPoly { terms: BTreeMap::new(), param }
    }

    pub fn from_int_poly(f: &IntPoly, param: PuiseuxParam) -> Self {
        Self::from_level_poly(f, BigInt::one(), param)
    }

    /// Inverse of [`MonAlgPoly::to_integer_poly`]: `t^i ↦ x^(i / scale)`.
    fn from_level_poly(g: &IntPoly, scale: BigInt, param: PuiseuxParam) -> Self {
        let terms = g
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (BigRational::new(BigInt::from(i), scale.clone()), c.clone()))
            .collect();
        MonAlgPoly { terms, param }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &BigInt)> {
        self.terms.iter()
    }

    pub fn param(&self) -> &PuiseuxParam {
        &self.param
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn stats(&self) -> Result<MonAlgStats> {
        let order = self.terms.keys().next().ok_or(Error::ZeroPolynomial)?.clone();
        let degree = self.terms.keys().next_back().unwrap().clone();
        let content = self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Ok(MonAlgStats { support: self.terms.keys().cloned().collect(), order, degree, content })
    }

    /// Least `λ` with every exponent in `(1/r^λ) N_0`.
    pub fn level_of(&self, r: u64) -> Result<u32> {
        let mut level = 0;
        let rb = BigInt::from(r);
        for e in self.terms.keys() {
            let den = e.denom();
            let mut k = 0u32;
            let mut pow = BigInt::one();
            while !(&pow % den).is_zero() {
                // r^k with k = bits(den) already covers every prime power in den
                if r < 2 || k as u64 > den.bits() {
                    return Err(Error::IncompatibleDenominator(e.to_string()));
                }
                pow *= &rb;
                k += 1;
            }
            level = level.max(k);
        }
        Ok(level)
    }

    /// Level with respect to `r = rad(d(q))`.
    pub fn level(&self) -> Result<u32> {
        self.level_of(self.param.r())
    }

    /// The integer polynomial `g` with `g(t) = f(t^(r^λ))` read in `t = x^(1/r^λ)`.
    pub fn to_integer_poly(&self, level: u32) -> Result<IntPoly> {
        let required = self.level()?;
        if level < required {
            return Err(Error::LevelTooSmall { level, required });
        }
        let scale = BigRational::from_integer(BigInt::from(self.param.r()).pow(level));
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            let k = (e * &scale).to_integer().to_usize().ok_or(Error::DegreeLimit {
                degree: usize::MAX,
                limit: crate::factor::DEGREE_LIMIT,
            })?;
            if k >= coeffs.len() {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(IntPoly::new(coeffs))
    }

    pub fn factor_at_level(&self, level: u32) -> Result<LevelFactorization> {
        let g = self.to_integer_poly(level)?;
        let fac = factor_over_integers(&g)?;
        let scale = BigInt::from(self.param.r()).pow(level);
        let factors = fac
            .factors
            .iter()
            .map(|(h, m)| (MonAlgPoly::from_level_poly(h, scale.clone(), self.param.clone()), *m))
            .collect();
        let excluded = fac
            .factors
            .iter()
            .map(|(h, _)| *h == IntPoly::x() || cyclotomic_index(h).is_some())
            .collect();
        Ok(LevelFactorization {
            level,
            sign: fac.sign,
            content: fac.content,
            factors,
            excluded,
        })
    }

    /// Factorizations at every level from `level()` to `max_level`, with the
    /// first level after which the factor multiset no longer changes.
    pub fn stable_factorization(&self, max_level: u32) -> Result<StabilizationReport> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_monomial() {
            return Err(Error::InvalidParameter("monomials have trivial factorizations".into()));
        }
        let start = self.level()?;
        if max_level < start {
            return Err(Error::LevelTooSmall { level: max_level, required: start });
        }
        let levels: Vec<LevelFactorization> = (start..=max_level)
            .into_par_iter()
            .map(|l| self.factor_at_level(l))
            .collect::<Result<_>>()?;
        let full: Vec<Vec<(MonAlgPoly, u32)>> = levels.iter().map(|l| sorted(l.factors.clone())).collect();
        let core: Vec<Vec<(MonAlgPoly, u32)>> = levels
            .iter()
            .map(|l| {
                sorted(
                    l.factors
                        .iter()
                        .zip(&l.excluded)
                        .filter(|(_, &ex)| !ex)
                        .map(|(f, _)| f.clone())
                        .collect(),
                )
            })
            .collect();
        Ok(StabilizationReport {
            start_level: start,
            max_level,
            gamma: first_stable(&full).map(|i| start + i as u32),
            core_gamma: first_stable(&core).map(|i| start + i as u32),
            levels,
        })
    }
}

fn sorted(mut v: Vec<(MonAlgPoly, u32)>) -> Vec<(MonAlgPoly, u32)> {
    v.sort();
    v
}

/// Index from which all entries agree, unless that is only the last entry.
fn first_stable<T: PartialEq>(seq: &[T]) -> Option<usize> {
    let last = seq.last()?;
    let first = (0..seq.len()).find(|&i| seq[i..].iter().all(|s| s == last))?;
    (first + 1 < seq.len()).then_some(first)
}

impl Mul for &MonAlgPoly {
    type Output = MonAlgPoly;

    fn mul(self, rhs: &MonAlgPoly) -> MonAlgPoly {
        let mut terms: BTreeMap<BigRational, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *terms.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MonAlgPoly { terms, param: self.param.clone() }
    }
}

impl fmt::Display for MonAlgPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = if e.is_zero() {
                None
            } else if e.is_one() {
                Some("x".to_string())
            } else if e.is_integer() {
                Some(format!("x^{e}"))
            } else {
                Some(format!("x^({e})"))
            };
            match mono {
                None => write!(f, "{mag}")?,
                Some(m) if mag.is_one() => f.write_str(&m)?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonAlgStats {
    pub support: Vec<BigRational>,
    pub order: BigRational,
    pub degree: BigRational,
    pub content: BigInt,
}

/// A factorization inside one level algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelFactorization {
    pub level: u32,
    pub sign: Sign,
    pub content: BigInt,
    pub factors: Vec<(MonAlgPoly, u32)>,
    /// Per factor: a monomial or a cyclotomic polynomial in `t = x^(1/r^λ)`.
    pub excluded: Vec<bool>,
}

impl LevelFactorization {
    pub fn expand(&self, param: &PuiseuxParam) -> MonAlgPoly {
        let c = self.content.clone() * self.sign.as_i32();
        let mut acc = MonAlgPoly::new([(BigRational::zero(), c)], param.clone()).expect("constant");
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub start_level: u32,
    pub max_level: u32,
    /// First level from which the whole factor multiset stays constant through
    /// `max_level`; `None` when it changes at the last tested step.
    pub gamma: Option<u32>,
    /// Same, ignoring factors that are monomials or cyclotomic in the level variable.
    pub core_gamma: Option<u32>,
    pub levels: Vec<LevelFactorization>,
}

impl StabilizationReport {
    pub fn stabilized(&self) -> bool {
        self.gamma.is_some()
    }

    pub fn at_level(&self, level: u32) -> Option<&LevelFactorization> {
        self.levels.iter().find(|l| l.level == level)
    }
}

/// Whether `L^a ≤ 2^b`, decided exactly; `None` when the exact power would be
/// too large to form and the bit-length bounds do not decide it.
fn pow_le_pow2(l: &BigUint, a: &BigUint, b: &BigUint) -> Option<bool> {
    let bits = BigUint::from(l.bits());
    let low = a * (&bits - 1u32);
    if l.count_ones() == 1 {
        return Some(low <= *b);
    }
    if low >= *b {
        return Some(false);
    }
    if a * &bits <= *b {
        return Some(true);
    }
    let a = a.to_u32().filter(|&a| (a as u64).saturating_mul(l.bits()) <= 1 << 26)?;
    let v = l.pow(a);
    let bu = b.to_u64()?;
    Some(v.bits() <= bu)
}

/// `H = ⌈log_{(p-1)/p}(log_{|lc|} 2)⌉ + 1`, with the ceiling found as the least
/// `k ≥ 0` satisfying `|lc|^((p-1)^k) ≤ 2^(p^k)`.
pub fn lc_height(lc_abs: &BigUint, p_max: u64) -> Result<u64> {
    if lc_abs < &BigUint::from(2u32) {
        return Err(Error::InvalidParameter("leading coefficient must be at least 2".into()));
    }
    let p = BigUint::from(p_max);
    let pm1 = BigUint::from(p_max - 1);
    let mut k = 0u32;
    loop {
        let a = pm1.pow(k);
        let b = p.pow(k);
        match pow_le_pow2(lc_abs, &a, &b) {
            Some(true) => return Ok(k as u64 + 1),
            Some(false) => k += 1,
            None => {
                return Err(Error::InvalidParameter(
                    "leading coefficient too large for exact evaluation".into(),
                ))
            }
        }
    }
}

fn check_odd_primes(pi: &[u64]) -> Result<()> {
    if pi.is_empty() {
        return Err(Error::InvalidPrimeSet("empty".into()));
    }
    if let Some(bad) = pi.iter().find(|&&p| p == 2 || !is_prime(p)) {
        return Err(Error::InvalidPrimeSet(format!("{bad} is not an odd prime")));
    }
    Ok(())
}

/// Upper bound on the number of irreducible divisors of `f` in the level
/// algebras over `r = ∏ π`: `r^Λ` for `lc(f) = ±1`, else `r^(H + deg f · Λ)`.
pub fn divisor_count_bound(f: &IntPoly, pi: &[u64], lambda_value: u64) -> Result<BigUint> {
    check_odd_primes(pi)?;
    let mut primes = pi.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantInput);
    }
    if f.normalize_sign() == IntPoly::x() || cyclotomic_index(f).is_some() {
        return Err(Error::ExcludedPolynomial);
    }
    let r = BigUint::from(primes.iter().product::<u64>());
    let lc = f.lc().unwrap().abs().to_biguint().unwrap();
    let exponent = if lc.is_one() {
        lambda_value
    } else {
        lc_height(&lc, *primes.last().unwrap())? + deg as u64 * lambda_value
    };
    let e = u32::try_from(exponent)
        .map_err(|_| Error::InvalidParameter(format!("exponent {exponent} too large")))?;
    Ok(r.pow(e))
}

/// Number of distinct irreducible factors of `f(x^(r^λ))`.
pub fn count_irreducible_divisors(f: &IntPoly, r: u64, level: u32) -> Result<usize> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let e = r
        .checked_pow(level)
        .and_then(|e| usize::try_from(e).ok())
        .ok_or(Error::InvalidParameter("r^λ overflows".into()))?;
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg.saturating_mul(e) > crate::factor::DEGREE_LIMIT {
        return Err(Error::DegreeLimit { degree: deg.saturating_mul(e), limit: crate::factor::DEGREE_LIMIT });
    }
    Ok(factor_over_integers(&f.compose_power(e))?.factors.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AccpSupport {
    Yes,
    No,
    Unknown,
}

/// Whether some exponent in the support satisfies the ACCP in `M_q`.
pub fn is_accp_supported(f: &MonAlgPoly, horizon: usize) -> Result<AccpSupport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut all_fail = true;
    for e in f.terms.keys() {
        match accp_status(e, &f.param, horizon)?.status {
            AccpStatus::Satisfies => return Ok(AccpSupport::Yes),
            AccpStatus::Fails => {}
            AccpStatus::Unknown => all_fail = false,
        }
    }
    Ok(if all_fail { AccpSupport::No } else { AccpSupport::Unknown })
}
