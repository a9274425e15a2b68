//! Agreement with factorizations computed independently by sympy
//! (see `fixtures/gen_sympy_oracle.py`).

use num_bigint::BigInt;
use puiseux::{factor_over_integers, IntPoly};
use serde_json::Value;

fn fixture() -> Value {
    let text = include_str!("fixtures/sympy_oracle.json");
    serde_json::from_str(text).expect("valid fixture")
}

fn poly(v: &Value) -> IntPoly {
    IntPoly::new(
        v.as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_str().unwrap().parse::<BigInt>().unwrap())
            .collect(),
    )
}

#[test]
fn composed_factor_counts_match_sympy() {
    let data = fixture();
    let entries = data["composed"].as_array().unwrap();
    assert!(entries.len() >= 100);
    for e in entries {
        let f = poly(&e["f"]);
        for (r, want) in e["counts"].as_object().unwrap() {
            let r: usize = r.parse().unwrap();
            let got = factor_over_integers(&f.compose_power(r)).unwrap().factors.len();
            assert_eq!(got as u64, want.as_u64().unwrap(), "f = {f}, r = {r}");
        }
    }
}

#[test]
fn product_factorizations_match_sympy() {
    let data = fixture();
    for e in data["products"].as_array().unwrap() {
        let f = poly(&e["f"]);
        let fac = factor_over_integers(&f).unwrap();
        let constant: BigInt = e["constant"].as_str().unwrap().parse().unwrap();
        assert_eq!(fac.content.clone() * fac.sign.as_i32(), constant, "f = {f}");
        let mut want: Vec<(IntPoly, u32)> = e["factors"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| (poly(&g["coeffs"]), g["mult"].as_u64().unwrap() as u32))
            .collect();
        want.sort();
        assert_eq!(fac.factors, want, "f = {f}");
        assert_eq!(fac.expand(), f);
    }
}
