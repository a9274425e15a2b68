//! Deterministic test corpora of irreducible integer polynomials.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::factor::is_irreducible;
use crate::intpoly::IntPoly;

/// `count` distinct irreducible primitive polynomials with positive leading
/// coefficient, degree `1..=max_degree` and coefficients in
/// `[-max_coeff, max_coeff]`, drawn from a seeded generator.
pub fn random_irreducibles(seed: u64, count: usize, max_degree: usize, max_coeff: i64) -> Vec<IntPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<IntPoly> = Vec::with_capacity(count);
    while out.len() < count {
        let deg = rng.gen_range(1..=max_degree);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-max_coeff..=max_coeff)).collect();
        if c[deg] == 0 {
            c[deg] = rng.gen_range(1..=max_coeff);
        }
        let f = IntPoly::from_i64s(&c).normalize_sign();
        if f == IntPoly::x() || out.contains(&f) {
            continue;
        }
        if is_irreducible(&f).unwrap_or(false) {
            out.push(f);
        }
    }
    out
}

/// Irreducible polynomials whose compositions `f(x^r)` are known to split for
/// small odd `r`; random draws almost never have this property.
pub fn splitting_irreducibles() -> Vec<IntPoly> {
    let lin = |a: i64, b: i64| IntPoly::new(vec![BigInt::from(b), BigInt::from(a)]);
    let mut out = vec![
        lin(1, -8),
        lin(1, 27),
        lin(1, -32),
        lin(1, -243),
        lin(8, -27),
        lin(27, 8),
        lin(32, -1),
        lin(4, -1),
        lin(9, -1),
        lin(1, -64),
        lin(16, -81),
        IntPoly::from_i64s(&[4, 2, 1]),
        IntPoly::from_i64s(&[9, -3, 1]),
        IntPoly::from_i64s(&[-27, 0, 1]),
        IntPoly::from_i64s(&[64, 8, 1]),
        IntPoly::from_i64s(&[-2, 0, 9]),
        IntPoly::from_i64s(&[-1, 0, 27]),
    ];
    out.retain(|f| is_irreducible(f).unwrap_or(false));
    out
}
