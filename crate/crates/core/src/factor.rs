//! Complete factorization of integer polynomials.
//!
//! The pipeline is the classical one: strip powers of `x`, split into
//! squarefree parts, factor modulo a small prime, lift the modular factors
//! with quadratic Hensel lifting and recombine them by exhaustive subset
//! search with leading-coefficient correction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::{cyclotomic_poly, inverse_totient};
use crate::error::{Error, Result};
use crate::intpoly::{IntPoly, Sign};
use crate::modp::{self, Poly};

/// Inputs above this degree are rejected instead of attempted.
pub const DEGREE_LIMIT: usize = 4096;

/// Number of good primes examined before the modular factorization is fixed.
const PRIME_TRIALS: usize = 5;

const RNG_SEED: u64 = 0x5eed_cafe;

/// `sign * content * ∏ factor^mult` with primitive irreducible factors of
/// positive leading coefficient, sorted by the total order on `IntPoly`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: Sign,
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone() * self.sign.as_i32());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    /// Distinct irreducible factors, ignoring multiplicities.
    pub fn distinct(&self) -> impl Iterator<Item = &IntPoly> {
        self.factors.iter().map(|(f, _)| f)
    }
}

/// Yun's squarefree decomposition of the primitive part of `f`, ordered by
/// multiplicity.
pub fn squarefree_decomposition(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantInput);
    }
    let f = f.primitive_part();
    if quick_squarefree(&f) {
        return Ok(vec![(f, 1)]);
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let mut c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides b");
        c = d.exact_div(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// True when some prime not dividing the leading coefficient keeps `f`
/// squarefree, which certifies squarefreeness over the integers.
fn quick_squarefree(f: &IntPoly) -> bool {
    let lc = f.lc().expect("nonzero");
    modp::odd_primes()
        .filter(|&p| !(lc % p).is_zero())
        .take(3)
        .any(|p| modp::is_squarefree(&modp::reduce(f, p), p))
}

/// Irreducible factorization over the integers.
pub fn factor_over_integers(f: &IntPoly) -> Result<Factorization> {
    let (sign, content, prim) = f.content_primitive()?;
    let deg = prim.degree().unwrap();
    if deg > DEGREE_LIMIT {
        return Err(Error::DegreeLimit { degree: deg, limit: DEGREE_LIMIT });
    }
    let mut factors = Vec::new();
    let v = prim.x_valuation();
    if v > 0 {
        factors.push((IntPoly::x(), v as u32));
    }
    let rest = prim.shift_down(v);
    if !rest.is_constant() {
        let k = exponent_gcd(&rest);
        if k > 1 {
            let inner = factor_over_integers(&contract(&rest, k))?;
            for (h, mult) in inner.factors {
                for g in factor_composed(&h, k)? {
                    factors.push((g, mult));
                }
            }
        } else {
            for (part, mult) in squarefree_decomposition(&rest)? {
                for g in factor_squarefree(&part) {
                    factors.push((g, mult));
                }
            }
        }
    }
    factors.sort();
    Ok(Factorization { sign, content, factors })
}

/// Greatest common divisor of the exponents in the support.
fn exponent_gcd(f: &IntPoly) -> usize {
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(0, |g, (i, _)| g.gcd(&i))
}

/// `g` with `g(x^k) = f`; requires `k` to divide every exponent of `f`.
fn contract(f: &IntPoly, k: usize) -> IntPoly {
    IntPoly::new(f.coeffs().iter().step_by(k).cloned().collect())
}

/// Distinct irreducible factors of `h(x^n)` for irreducible `h` with
/// `h(0) ≠ 0`.
///
/// By Capelli's theorem `h(x^n)` is irreducible exactly when `h(x^q)` is for
/// every prime `q | n` (with `h(x^4)` standing in for `h(x^2)` when `4 | n`).
/// When some `h(x^q)` splits as `∏ g_j`, then `h(x^n) = ∏ g_j(x^(n/q))` and
/// each `g_j` is handled the same way, so only small compositions are ever
/// factored directly.
pub fn factor_composed(h: &IntPoly, n: usize) -> Result<Vec<IntPoly>> {
    if n == 1 {
        return Ok(vec![h.clone()]);
    }
    let total = h.degree().unwrap_or(0).saturating_mul(n);
    if total > DEGREE_LIMIT {
        return Err(Error::DegreeLimit { degree: total, limit: DEGREE_LIMIT });
    }
    if *h == IntPoly::x() {
        return Ok(vec![IntPoly::x()]);
    }
    for (q, _) in crate::cyclotomic::prime_factors(n as u64) {
        let step = if q == 2 && n.is_multiple_of(4) { 4 } else { q as usize };
        let parts = factor_squarefree(&h.compose_power(step));
        if parts.len() > 1 {
            let mut out = Vec::new();
            for g in parts {
                out.extend(factor_composed(&g, n / step)?);
            }
            out.sort();
            return Ok(out);
        }
    }
    Ok(vec![h.compose_power(n)])
}

/// True iff `f` is irreducible in `Z[x]`: one factor, multiplicity one,
/// content one.
pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantInput);
    }
    let fac = factor_over_integers(f)?;
    Ok(fac.content.is_one() && fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// `Some(y)` when `f = ±Φ_y`.
pub fn cyclotomic_index(f: &IntPoly) -> Option<u64> {
    let deg = f.degree()?;
    if deg == 0 {
        return None;
    }
    let g = f.normalize_sign();
    if !g.lc().unwrap().is_one() || !g.coeff(0).abs().is_one() {
        return None;
    }
    inverse_totient(deg as u64)
        .into_iter()
        .find(|&y| cyclotomic_poly(y) == g)
}

/// Factors a primitive squarefree polynomial with nonzero constant term and
/// positive leading coefficient.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree().unwrap();
    if n <= 1 {
        return vec![f.clone()];
    }
    let plan = match choose_prime(f) {
        PrimeChoice::Irreducible => return vec![f.clone()],
        PrimeChoice::Use(plan) => plan,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED ^ n as u64);
    let p = plan.p;
    let mut modular: Vec<Poly> = Vec::new();
    for (d, g) in &plan.ddf {
        modular.extend(modp::equal_degree(g, *d, p, &mut rng));
    }
    modular.sort();

    let bound = coefficient_bound(f);
    let two_b = &bound * 2u32;
    let pb = BigInt::from(p);
    let mut pl = pb.clone();
    while pl <= two_b {
        pl *= &pb;
    }
    let lifted = multifactor_lift(f, &modular, p, &pl);
    recombine(f, lifted, &pl, &plan.allowed)
}

struct PrimePlan {
    p: u64,
    ddf: Vec<(usize, Poly)>,
    allowed: Vec<bool>,
}

enum PrimeChoice {
    Irreducible,
    Use(PrimePlan),
}

/// Examines several good primes, intersecting the sets of factor degrees
/// they permit, and keeps the prime with the fewest modular factors.
fn choose_prime(f: &IntPoly) -> PrimeChoice {
    let n = f.degree().unwrap();
    let lc = f.lc().unwrap();
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(usize, PrimePlan)> = None;
    let mut good = 0;
    for p in modp::odd_primes() {
        if (lc % p).is_zero() {
            continue;
        }
        let fp = modp::monic(&modp::reduce(f, p), p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        good += 1;
        let ddf = modp::distinct_degree(&fp, p, usize::MAX).expect("no factor cap");
        let count: usize = ddf.iter().map(|(d, g)| modp::degree(g).unwrap() / d).sum();
        if count == 1 {
            return PrimeChoice::Irreducible;
        }
        let sums = subset_degree_sums(&ddf, n);
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        if allowed.iter().filter(|&&a| a).count() == 2 {
            return PrimeChoice::Irreducible;
        }
        if best.as_ref().is_none_or(|(c, _)| count < *c) {
            best = Some((count, PrimePlan { p, ddf, allowed: Vec::new() }));
        }
        if good >= PRIME_TRIALS {
            break;
        }
    }
    let (_, mut plan) = best.expect("a squarefree polynomial has good primes");
    plan.allowed = allowed;
    PrimeChoice::Use(plan)
}

fn subset_degree_sums(ddf: &[(usize, Poly)], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for (d, g) in ddf {
        for _ in 0..modp::degree(g).unwrap() / d {
            for s in (*d..=n).rev() {
                if reach[s - d] {
                    reach[s] = true;
                }
            }
        }
    }
    reach
}

/// `2^n * ||f||_2 * |lc(f)|`, bounding every coefficient of
/// `lc(f) * g / lc(g)` for any divisor `g` of `f`.
fn coefficient_bound(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap();
    (BigInt::one() << n) * f.l2_norm_ceil() * f.lc().unwrap().abs()
}

fn to_int(a: &Poly) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
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

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &IntPoly, b: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let db = b.degree().unwrap();
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    if r.len() <= db {
        return (IntPoly::zero(), reduce_mod(a, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    let bc = b.coeffs();
    for i in (db..r.len()).rev() {
        let c = r[i].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for j in 0..db {
            if !bc[j].is_zero() {
                let t = &c * &bc[j];
                r[i - db + j] -= t;
            }
        }
        r[i] = BigInt::zero();
        q[i - db] = c;
    }
    r.truncate(db);
    (reduce_mod(&IntPoly::new(q), m), reduce_mod(&IntPoly::new(r), m))
}

/// One quadratic Hensel step: from `f ≡ g h` and `s g + t h ≡ 1` modulo some
/// `m` to the same congruences modulo `m_new`, where `m_new | m^2`.
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m_new: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let e = reduce_mod(&(f - &(g * h)), m_new);
    let (q, r) = divrem_monic(&reduce_mod(&(s * &e), m_new), h, m_new);
    let g2 = reduce_mod(&(&(g + &(t * &e)) + &(&q * g)), m_new);
    let h2 = reduce_mod(&(h + &r), m_new);
    let b = reduce_mod(&(&(&(s * &g2) + &(t * &h2)) - &IntPoly::one()), m_new);
    let (c, d) = divrem_monic(&reduce_mod(&(s * &b), m_new), &h2, m_new);
    let s2 = reduce_mod(&(s - &d), m_new);
    let t2 = reduce_mod(&(&(t - &(t * &b)) - &(&c * &g2)), m_new);
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ lc(f) * ∏ factors (mod p)` to monic factors modulo `pl`.
fn multifactor_lift(f: &IntPoly, factors: &[Poly], p: u64, pl: &BigInt) -> Vec<IntPoly> {
    if factors.len() == 1 {
        let inv = mod_inverse(f.lc().unwrap(), pl);
        return vec![reduce_mod(&f.scale(&inv), pl)];
    }
    let k = factors.len() / 2;
    let prod = |fs: &[Poly]| fs.iter().fold(vec![1u64], |acc, g| modp::mul(&acc, g, p));
    let lc_p = f.lc().unwrap().mod_floor(&BigInt::from(p));
    let lc_p = u64::try_from(lc_p).unwrap();
    let g0 = modp::scale(&prod(&factors[..k]), lc_p, p);
    let h0 = prod(&factors[k..]);
    let (one, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);

    let (mut g, mut h, mut s, mut t) = (to_int(&g0), to_int(&h0), to_int(&s0), to_int(&t0));
    let mut m = BigInt::from(p);
    while &m < pl {
        m = (&m * &m).min(pl.clone());
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
    }
    let mut out = multifactor_lift(&g, &factors[..k], p, pl);
    out.extend(multifactor_lift(&h, &factors[k..], p, pl));
    out
}

/// Zassenhaus recombination of lifted monic factors.
fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, pl: &BigInt, allowed: &[bool]) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = rest.lc().unwrap().clone();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].degree().unwrap()).sum();
            if allowed.get(deg).copied().unwrap_or(true) {
                let mut g = IntPoly::constant(lc.clone());
                for &i in &idx {
                    g = reduce_mod(&(&g * &lifted[i]), pl);
                }
                let g = symmetric_mod(&g, pl).primitive_part();
                if let Some(q) = trial_div(&rest, &g) {
                    found.push(g);
                    rest = q.primitive_part();
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    if !rest.is_constant() {
        found.push(rest);
    }
    found.sort();
    found
}

fn trial_div(f: &IntPoly, g: &IntPoly) -> Option<IntPoly> {
    let (a, b) = (f.coeff(0), g.coeff(0));
    if !b.is_zero() && !a.is_multiple_of(&b) {
        return None;
    }
    f.exact_div(g)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
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
        IntPoly::from_i64s(c)
    }

    #[test]
    fn squarefree_examples() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(
            squarefree_decomposition(&f).unwrap(),
            vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]
        );
        assert_eq!(
            squarefree_decomposition(&p(&[1, -1, 0, 1])).unwrap(),
            vec![(p(&[1, -1, 0, 1]), 1)]
        );
        assert_eq!(squarefree_decomposition(&p(&[0, 0, 0, 0, 1])).unwrap(), vec![(p(&[0, 1]), 4)]);
        assert_eq!(squarefree_decomposition(&p(&[5])), Err(Error::ConstantInput));
    }

    #[test]
    fn factor_examples() {
        let fac = factor_over_integers(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let fac = factor_over_integers(&p(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(p(&[1, -1, 0, 1]), 1), (p(&[1, 1, 1, 2, 1, 0, 1]), 1)]
        );
        let fac = factor_over_integers(&IntPoly::binomial(27, 8)).unwrap();
        let mut big = vec![0i64; 19];
        big[0] = 4;
        big[9] = 2;
        big[18] = 1;
        assert_eq!(fac.factors, vec![(IntPoly::binomial(9, 2), 1), (p(&big), 1)]);
    }

    #[test]
    fn sign_content_and_repeats() {
        let f = p(&[0, 0, -12, 0, 12]); // -12 x^2 + 12 x^4 = 12 x^2 (x-1)(x+1)
        let fac = factor_over_integers(&f).unwrap();
        assert_eq!(fac.sign, Sign::Plus);
        assert_eq!(fac.content, BigInt::from(12));
        assert!(fac.factors.contains(&(p(&[0, 1]), 2)));
        assert_eq!(fac.expand(), f);
        let neg = -&f;
        assert_eq!(factor_over_integers(&neg).unwrap().expand(), neg);
        assert_eq!(factor_over_integers(&IntPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&IntPoly::binomial(3, 2)).unwrap());
        assert!(!is_irreducible(&p(&[-1, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&[1, 1, 1, 2, 1, 0, 1])).unwrap());
        assert!(!is_irreducible(&p(&[2, 2])).unwrap());
        assert_eq!(is_irreducible(&p(&[3])), Err(Error::ConstantInput));
    }

    #[test]
    fn cyclotomic_detection() {
        assert_eq!(cyclotomic_index(&p(&[1, 1, 1])), Some(3));
        assert_eq!(cyclotomic_index(&p(&[1, -1])), Some(1));
        assert_eq!(cyclotomic_index(&p(&[-2, 1])), None);
        assert_eq!(cyclotomic_index(&p(&[1, -1, 1])), Some(6));
        assert_eq!(cyclotomic_index(&cyclotomic_poly(105)), Some(105));
        assert_eq!(cyclotomic_index(&p(&[1, 0, 1, 0, 1])), None);
    }

    #[test]
    fn swinnerton_dyer_like_many_modular_factors() {
        // x^4 - 10x^2 + 1 is irreducible but splits into quadratics or linears mod every prime
        let f = p(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f).unwrap());
        let g = &f * &f;
        let fac = factor_over_integers(&g).unwrap();
        assert_eq!(fac.factors, vec![(f, 2)]);
    }

    #[test]
    fn cyclotomic_power_binomials() {
        let fac = factor_over_integers(&IntPoly::binomial(81, 1)).unwrap();
        let idx: Vec<u64> = fac.distinct().map(|g| cyclotomic_index(g).unwrap()).collect();
        assert_eq!(idx, vec![1, 3, 9, 27, 81]);
        let fac = factor_over_integers(&IntPoly::binomial(105, 1)).unwrap();
        assert_eq!(fac.factors.len(), 8);
        assert_eq!(fac.expand(), IntPoly::binomial(105, 1));
    }

    #[test]
    fn non_monic_recombination() {
        let a = p(&[3, -1, 0, 2]);
        let b = p(&[-5, 0, 6]);
        let c = p(&[7, 3]);
        let f = &(&a * &b) * &c;
        let fac = factor_over_integers(&f).unwrap();
        let mut want = vec![(a, 1), (b, 1), (c, 1)];
        want.sort();
        assert_eq!(fac.factors, want);
    }
}
