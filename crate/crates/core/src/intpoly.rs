//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! `IntPoly` is always kept in canonical form: index `i` holds the
//! coefficient of `x^i` and the last stored coefficient is nonzero. The zero
//! polynomial is the empty vector and has no degree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modp;

/// Operand length below which multiplication stays schoolbook.
const KARATSUBA_CUTOFF: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// `x^n - a`.
    pub fn binomial(n: usize, a: impl Into<BigInt>) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        coeffs[0] -= a.into();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` encodes the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Lowest power of `x` dividing the polynomial (0 for the zero polynomial).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&self, k: usize) -> IntPoly {
        IntPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// An integer upper bound on the Euclidean norm of the coefficient vector.
    pub fn l2_norm_ceil(&self) -> BigInt {
        let sum: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let root = sum.sqrt();
        if &root * &root == sum {
            root
        } else {
            root + 1
        }
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The associate with positive leading coefficient.
    pub fn normalize_sign(&self) -> IntPoly {
        match self.lc() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Returns `f(x^r)`.
    pub fn compose_power(&self, r: usize) -> IntPoly {
        assert!(r >= 1, "compose_power needs a positive exponent");
        if r == 1 || self.is_zero() {
            return self.clone();
        }
        let deg = self.coeffs.len() - 1;
        let mut coeffs = vec![BigInt::zero(); deg * r + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * r] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// Content, sign and primitive part with `sign * content * primitive == self`
    /// and a positive leading coefficient on the primitive part.
    pub fn content_primitive(&self) -> Result<(Sign, BigInt, IntPoly)> {
        let lc = self.lc().ok_or(Error::ZeroPolynomial)?;
        let content = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if lc.is_negative() { Sign::Minus } else { Sign::Plus };
        let divisor = match sign {
            Sign::Plus => content.clone(),
            Sign::Minus => -content.clone(),
        };
        Ok((sign, content, self.div_scalar_exact(&divisor)))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient; zero maps to zero.
    pub fn primitive_part(&self) -> IntPoly {
        match self.content_primitive() {
            Ok((_, _, p)) => p,
            Err(_) => IntPoly::zero(),
        }
    }

    /// Division over the rationals, accepted only when quotient and remainder
    /// are integral.
    pub fn div_rem(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisorZero)?;
        let lc = divisor.lc().expect("nonzero divisor");
        if self.coeffs.len() <= dd {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let support: Vec<usize> = (0..=dd)
            .filter(|&j| !divisor.coeffs[j].is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(lc);
            if !r.is_zero() {
                return Err(Error::NonIntegralQuotient);
            }
            for &j in &support {
                let t = &q * &divisor.coeffs[j];
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// `Some(q)` with `self == q * divisor` when the division is exact in `Z[x]`.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn is_divisible_by(&self, divisor: &IntPoly) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        // cheap rejection on the constant terms before long division
        if let (Some(a), Some(b)) = (self.coeffs.first(), divisor.coeffs.first()) {
            if !b.is_zero() && !a.is_zero() && !a.is_multiple_of(b) {
                return false;
            }
        }
        self.exact_div(divisor).is_some()
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("nonzero divisor");
        let Some(da) = self.degree() else {
            return IntPoly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut steps = da - db + 1;
        while r.len() > db {
            let top = r.len() - 1;
            let lr = r.pop().unwrap();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for j in 0..db {
                if !b.coeffs[j].is_zero() {
                    r[top - db + j] -= &lr * &b.coeffs[j];
                }
            }
            steps -= 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        let out = IntPoly::new(r);
        if steps > 0 {
            out.scale(&num_traits::pow(lb, steps))
        } else {
            out
        }
    }

    /// Primitive gcd with positive leading coefficient (subresultant PRS).
    /// `gcd(0, 0)` is the zero polynomial.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.degree() == Some(0) {
            return IntPoly::one();
        }
        if modp::certainly_coprime(&a, &b) {
            return IntPoly::one();
        }
        subresultant_gcd(a, b)
    }
}

fn subresultant_gcd(mut a: IntPoly, mut b: IntPoly) -> IntPoly {
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.primitive_part();
        }
        if r.degree() == Some(0) {
            return IntPoly::one();
        }
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r.div_scalar_exact(&divisor);
        g = a.lc().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
    }
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn mul_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return schoolbook(a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = mul_slices(a0, b0);
    let z2 = mul_slices(a1, b1);
    let mut z1 = mul_slices(&add_slices(a0, a1), &add_slices(b0, b1));
    for (i, c) in z0.iter().enumerate() {
        z1[i] -= c;
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] -= c;
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.into_iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in z1.into_iter().enumerate() {
        if i + m < out.len() {
            out[i + m] += c;
        }
    }
    for (i, c) in z2.into_iter().enumerate() {
        out[i + 2 * m] += c;
    }
    out
}

impl Ord for IntPoly {
    /// Degree first, then coefficients compared from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(mul_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn canonical_form_trims() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert!((&p(&[3, 4]) * &IntPoly::zero()).is_zero());
        let g = p(&[1, -1, 0, 1]);
        let h = p(&[1, 1, 1, 2, 1, 0, 1]);
        assert_eq!(&g * &h, p(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 1]));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<BigInt> = (0..70).map(|i| BigInt::from(i * 7 - 200)).collect();
        let b: Vec<BigInt> = (0..53).map(|i| BigInt::from(13 - i * i)).collect();
        assert_eq!(mul_slices(&a, &b), schoolbook(&a, &b));
    }

    #[test]
    fn div_rem_examples() {
        let f = p(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 1]);
        let (q, r) = f.div_rem(&p(&[1, -1, 0, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1, 2, 1, 0, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&IntPoly::x()).unwrap();
        assert_eq!((q, r), (IntPoly::x(), IntPoly::one()));
        assert_eq!(
            IntPoly::x().div_rem(&p(&[0, 2])),
            Err(Error::NonIntegralQuotient)
        );
        assert_eq!(p(&[1]).div_rem(&IntPoly::zero()), Err(Error::DivisorZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        let f = p(&[-6, 0, -4]);
        assert_eq!(f.gcd(&f), p(&[3, 0, 2]));
        let big = p(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 1]);
        assert_eq!(big.gcd(&p(&[1, -1, 0, 1])), p(&[1, -1, 0, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), IntPoly::one());
    }

    #[test]
    fn subresultant_path_on_non_coprime_inputs() {
        // shared factor x^2 + 1 forces the full PRS rather than the modular shortcut
        let common = p(&[1, 0, 1]);
        let a = &common * &p(&[3, 5, 7, 1]);
        let b = &common * &p(&[-2, 0, 9]);
        assert_eq!(a.gcd(&b), common);
    }

    #[test]
    fn content_primitive_examples() {
        assert_eq!(
            p(&[9, 6]).content_primitive().unwrap(),
            (Sign::Plus, BigInt::from(3), p(&[3, 2]))
        );
        assert_eq!(
            p(&[0, 0, -4]).content_primitive().unwrap(),
            (Sign::Minus, BigInt::from(4), p(&[0, 0, 1]))
        );
        let f = p(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 1]);
        assert_eq!(
            f.content_primitive().unwrap(),
            (Sign::Plus, BigInt::one(), f.clone())
        );
        assert_eq!(IntPoly::zero().content_primitive(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn compose_power_examples() {
        assert_eq!(p(&[1, 1]).compose_power(3), p(&[1, 0, 0, 1]));
        let f = p(&[5, -3, 2]);
        assert_eq!(f.compose_power(1), f);
        assert_eq!(
            p(&[1, 2, 3, 1]).compose_power(3),
            p(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 1])
        );
    }

    #[test]
    fn pseudo_rem_identity() {
        let a = p(&[3, 0, 5, -2, 7]);
        let b = p(&[1, 0, 3]);
        let r = a.pseudo_rem(&b);
        // lc(b)^(4-2+1) * a - r must be divisible by b
        let lhs = &a.scale(&BigInt::from(27)) - &r;
        assert!(lhs.exact_div(&b).is_some());
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 1]).to_string(), "x^9 + 3*x^6 + 2*x^3 + 1");
        assert_eq!(p(&[-1, 0, -2]).to_string(), "-2*x^2 - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn ordering_is_degree_then_leading_coefficients() {
        let mut v = vec![p(&[1, 1]), p(&[-1, 1]), p(&[1, 0, 1]), p(&[5])];
        v.sort();
        assert_eq!(v, vec![p(&[5]), p(&[-1, 1]), p(&[1, 1]), p(&[1, 0, 1])]);
    }

    fn arb_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(|v| IntPoly::from_i64s(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn div_rem_recovers_product(f in arb_poly(30, 1_000_000), g in arb_poly(30, 1_000_000)) {
            prop_assume!(!g.is_zero());
            let prod = &f * &g;
            let (q, r) = prod.div_rem(&g).unwrap();
            prop_assert_eq!(q, f);
            prop_assert!(r.is_zero());
        }

        #[test]
        fn compose_power_composes(f in arb_poly(8, 50), a in 1usize..5, b in 1usize..5) {
            prop_assert_eq!(f.compose_power(a).compose_power(b), f.compose_power(a * b));
        }

        #[test]
        fn content_primitive_round_trip(f in arb_poly(12, 1000)) {
            prop_assume!(!f.is_zero());
            let (s, c, pp) = f.content_primitive().unwrap();
            let back = pp.scale(&(c * BigInt::from(s.as_i32())));
            prop_assert_eq!(back, f);
            prop_assert!(pp.content().is_one());
            prop_assert!(pp.lc().unwrap().is_positive());
        }

        #[test]
        fn gcd_scales_with_common_factor(f in arb_poly(6, 30), g in arb_poly(6, 30), h in arb_poly(4, 30)) {
            prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
            let lhs = (&f * &h).gcd(&(&g * &h));
            let rhs = &f.gcd(&g) * &h.primitive_part();
            prop_assert_eq!(lhs, rhs.normalize_sign());
        }
    }
}
