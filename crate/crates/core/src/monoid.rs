//! Arithmetic of the exponentially cyclic Puiseux monoid `M_q = ⟨q^i : i ≥ 0⟩`.
//!
//! Every element has a unique canonical representation
//! `a0 + Σ_{i=1..K} a_i q^i` with `0 ≤ a_i < d(q)`, obtained by carrying
//! `d(q)` copies of `q^i` into `n(q)` copies of `q^(i-1)`. Membership,
//! divisibility and the enumeration of factorizations are built on it.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::radical;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonoidClass {
    /// `q ∈ N`: the monoid is `N_0`.
    Natural,
    /// `q = 1/d` with `d > 1`: no atoms at all.
    Antimatter,
    /// `0 < q < 1` with `n(q) > 1`: atomic, but ACCP fails.
    AtomicNonAccp,
    /// `q > 1` not an integer.
    AtLeastOne,
}

/// The rational `q = num/den` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PuiseuxParam {
    num: u64,
    den: u64,
}

impl PuiseuxParam {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidParameter(format!("q = {num}/{den} must be positive")));
        }
        let g = num.gcd(&den);
        Ok(PuiseuxParam { num: num / g, den: den / g })
    }

    pub fn from_rational(q: &BigRational) -> Result<Self> {
        match (q.numer().to_u64(), q.denom().to_u64()) {
            (Some(n), Some(d)) => Self::new(n, d),
            _ => Err(Error::InvalidParameter(format!("q = {q} must be positive and fit in u64"))),
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Product of the distinct primes dividing `d(q)`.
    pub fn r(&self) -> u64 {
        radical(self.den)
    }

    pub fn q(&self) -> BigRational {
        BigRational::new(self.num.into(), self.den.into())
    }

    pub fn power(&self, i: u32) -> BigRational {
        BigRational::new(BigInt::from(self.num).pow(i), BigInt::from(self.den).pow(i))
    }

    pub fn class(&self) -> MonoidClass {
        if self.den == 1 {
            MonoidClass::Natural
        } else if self.num == 1 {
            MonoidClass::Antimatter
        } else if self.num < self.den {
            MonoidClass::AtomicNonAccp
        } else {
            MonoidClass::AtLeastOne
        }
    }
}

impl fmt::Display for PuiseuxParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomSet {
    /// The single atom `1`.
    One,
    /// No atoms.
    Antimatter,
    /// Every power `q^i`, `i ≥ 0`, is an atom.
    PowersOfQ,
}

pub fn atoms_of(p: &PuiseuxParam) -> AtomSet {
    match p.class() {
        MonoidClass::Natural => AtomSet::One,
        MonoidClass::Antimatter => AtomSet::Antimatter,
        _ => AtomSet::PowersOfQ,
    }
}

/// `a0 + Σ digits[i-1] q^i` with every digit below `d(q)` and a nonzero top digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalRep {
    pub a0: BigInt,
    pub digits: Vec<u64>,
}

impl CanonicalRep {
    pub fn value(&self, p: &PuiseuxParam) -> BigRational {
        let mut v = BigRational::from_integer(self.a0.clone());
        for (i, &a) in self.digits.iter().enumerate() {
            v += p.power(i as u32 + 1) * BigRational::from_integer(a.into());
        }
        v
    }
}

/// Canonical representation, or `None` when `x ∉ M_q`.
pub fn canonical_form(x: &BigRational, p: &PuiseuxParam) -> Option<CanonicalRep> {
    if x.is_negative() {
        return None;
    }
    let d = BigInt::from(p.den);
    let n = BigInt::from(p.num);
    // K = least k with d^k x integral
    let mut rest = x.denom().clone();
    let mut k = 0u32;
    while !rest.is_one() {
        let g = rest.gcd(&d);
        if g.is_one() {
            return None;
        }
        rest /= g;
        k += 1;
    }
    let mut big_x = (x * BigRational::from_integer(d.pow(k))).to_integer();
    let mut digits = vec![0u64; k as usize];
    if p.den > 1 {
        let n_inv = n.mod_floor(&d).extended_gcd(&d).x.mod_floor(&d);
        for i in (1..=k).rev() {
            let n_inv_i = n_inv.modpow(&BigInt::from(i), &d);
            let a = (&big_x * n_inv_i).mod_floor(&d);
            big_x = (&big_x - &a * n.pow(i)) / &d;
            digits[i as usize - 1] = a.to_u64().unwrap();
        }
    }
    if big_x.is_negative() {
        return None;
    }
    while digits.last() == Some(&0) {
        digits.pop();
    }
    Some(CanonicalRep { a0: big_x, digits })
}

pub fn is_member(x: &BigRational, p: &PuiseuxParam) -> bool {
    canonical_form(x, p).is_some()
}

fn require_member(x: &BigRational, p: &PuiseuxParam) -> Result<CanonicalRep> {
    canonical_form(x, p).ok_or_else(|| Error::NotMemberInput(x.to_string()))
}

/// `a | b` in the additive sense: `b - a ∈ M_q`.
pub fn divides(a: &BigRational, b: &BigRational, p: &PuiseuxParam) -> Result<bool> {
    require_member(a, p)?;
    require_member(b, p)?;
    Ok(is_member(&(b - a), p))
}

/// A factorization `Σ c_i q^i`, as exponent → multiplicity.
pub type AtomicFactorization = BTreeMap<u32, u64>;

pub fn factorization_value(f: &AtomicFactorization, p: &PuiseuxParam) -> BigRational {
    f.iter()
        .map(|(&i, &c)| p.power(i) * BigRational::from_integer(c.into()))
        .fold(BigRational::zero(), |a, b| a + b)
}

fn counts_of(rep: &CanonicalRep) -> Result<Vec<u64>> {
    let a0 = rep
        .a0
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("element too large to enumerate".into()))?;
    let mut c = vec![a0];
    c.extend(&rep.digits);
    Ok(c)
}

fn to_factorization(c: &[u64]) -> AtomicFactorization {
    c.iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(i, &v)| (i as u32, v))
        .collect()
}

fn trimmed(mut c: Vec<u64>) -> Vec<u64> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// Representations reachable in one move: `n` copies of `q^i` become `d`
/// copies of `q^(i+1)`, or the reverse.
fn neighbours(c: &[u64], n: u64, d: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for i in 0..c.len() {
        if c[i] >= n {
            let mut v = c.to_vec();
            v[i] -= n;
            if v.len() == i + 1 {
                v.push(0);
            }
            v[i + 1] += d;
            out.push(trimmed(v));
        }
        if i >= 1 && c[i] >= d {
            let mut v = c.to_vec();
            v[i] -= d;
            v[i - 1] += n;
            out.push(trimmed(v));
        }
    }
    out
}

/// Breadth-first closure under moves; `Err(partial)` when `cap` is reached first.
fn closure(start: Vec<u64>, p: &PuiseuxParam, cap: usize) -> std::result::Result<Vec<Vec<u64>>, Vec<Vec<u64>>> {
    let mut seen = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(c) = queue.pop_front() {
        order.push(c.clone());
        if order.len() >= cap {
            return Err(order);
        }
        for nb in neighbours(&c, p.num, p.den) {
            if seen.insert(nb.clone()) {
                queue.push_back(nb);
            }
        }
    }
    Ok(order)
}

/// Up to `limit` distinct factorizations of `x` into atoms, in breadth-first
/// order starting from the canonical representation.
pub fn atomic_factorizations(
    x: &BigRational,
    p: &PuiseuxParam,
    limit: usize,
) -> Result<Vec<AtomicFactorization>> {
    if p.class() == MonoidClass::Antimatter {
        return Err(Error::AntimatterMonoid);
    }
    let rep = require_member(x, p)?;
    if limit == 0 {
        return Ok(Vec::new());
    }
    if p.class() == MonoidClass::Natural {
        // the only atom is 1
        return Ok(vec![to_factorization(&[rep.a0.to_u64().ok_or_else(|| {
            Error::InvalidParameter("element too large to enumerate".into())
        })?])]);
    }
    let start = trimmed(counts_of(&rep)?);
    let found = match closure(start, p, limit) {
        Ok(v) | Err(v) => v,
    };
    Ok(found.iter().map(|c| to_factorization(c)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AccpStatus {
    Satisfies,
    Fails,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccpReport {
    pub status: AccpStatus,
    /// For `Fails`: a strictly descending divisor chain whose last step
    /// repeats an earlier step scaled by a power of `q`.
    pub witness: Vec<BigRational>,
}

/// `Some(m)` with `m ≥ 1` when `ratio = q^m`.
fn power_of_q(ratio: &BigRational, p: &PuiseuxParam) -> Option<u32> {
    if p.num == p.den {
        return None;
    }
    let (n, d) = (BigInt::from(p.num), BigInt::from(p.den));
    let (mut a, mut b) = (ratio.numer().clone(), ratio.denom().clone());
    let mut m = 0;
    while !(a.is_one() && b.is_one()) {
        if !(&a % &n).is_zero() || !(&b % &d).is_zero() {
            return None;
        }
        a /= &n;
        b /= &d;
        m += 1;
    }
    (m >= 1).then_some(m)
}

const CLOSURE_CAP_PER_STEP: usize = 64;
const CHAIN_NODE_CAP: usize = 20_000;

fn find_self_similar_chain(x: &BigRational, p: &PuiseuxParam, horizon: usize) -> Option<Vec<BigRational>> {
    // x·q^m divides x: then x > xq^m > xq^(2m) > …
    for m in 1..=horizon as u32 {
        let y = x * p.power(m);
        if is_member(&(x - &y), p) {
            let z = &y * p.power(m);
            return Some(vec![x.clone(), y, z]);
        }
    }
    // otherwise walk chains y -> y - q^i, looking for a node q^m times an ancestor
    let mut visited = HashSet::new();
    let mut stack: Vec<Vec<BigRational>> = vec![vec![x.clone()]];
    while let Some(chain) = stack.pop() {
        if visited.len() >= CHAIN_NODE_CAP {
            return None;
        }
        let y = chain.last().unwrap().clone();
        if chain.len() > horizon {
            continue;
        }
        for i in 0..=horizon as u32 {
            let z = &y - p.power(i);
            if !z.is_positive() || !is_member(&z, p) || !visited.insert(z.clone()) {
                continue;
            }
            for w in &chain {
                if let Some(m) = power_of_q(&(&z / w), p) {
                    let mut out = chain.clone();
                    let next = &z * p.power(m);
                    out.push(z);
                    out.push(next);
                    return Some(out);
                }
            }
            let mut ext = chain.clone();
            ext.push(z);
            stack.push(ext);
        }
    }
    None
}

/// Three-valued check of the ascending chain condition at the element `x`.
pub fn accp_status(x: &BigRational, p: &PuiseuxParam, horizon: usize) -> Result<AccpReport> {
    let rep = require_member(x, p)?;
    let done = |status| Ok(AccpReport { status, witness: Vec::new() });
    if x.is_zero() {
        return done(AccpStatus::Satisfies);
    }
    if matches!(p.class(), MonoidClass::Natural | MonoidClass::AtLeastOne) {
        // every element has finitely many divisors when q ≥ 1
        return done(AccpStatus::Satisfies);
    }
    if p.class() != MonoidClass::Antimatter {
        if let Ok(start) = counts_of(&rep) {
            let cap = CLOSURE_CAP_PER_STEP * horizon.max(1);
            if closure(trimmed(start), p, cap).is_ok() {
                // finitely many factorizations, hence finitely many divisors
                return done(AccpStatus::Satisfies);
            }
        }
    }
    match find_self_similar_chain(x, p, horizon) {
        Some(witness) => Ok(AccpReport { status: AccpStatus::Fails, witness }),
        None => done(AccpStatus::Unknown),
    }
}

/// Independent membership oracle: `reach[u]` says whether `u / d^scale` is a
/// sum of generators `q^i` with `i ≤ max_exp`, for `u / d^scale ≤ bound`.
/// Requires `scale ≤ max_exp`.
pub fn bounded_membership_table(p: &PuiseuxParam, max_exp: u32, scale: u32, bound: u64) -> Vec<bool> {
    assert!(scale <= max_exp);
    let (n, d) = (p.num, p.den);
    let total = bound * d.pow(max_exp);
    let weights: Vec<u64> = (0..=max_exp).map(|i| n.pow(i) * d.pow(max_exp - i)).collect();
    let mut reach = vec![false; total as usize + 1];
    reach[0] = true;
    for &w in &weights {
        let w = w as usize;
        for t in w..reach.len() {
            if reach[t - w] {
                reach[t] = true;
            }
        }
    }
    let step = d.pow(max_exp - scale) as usize;
    reach.into_iter().step_by(step).collect()
}
