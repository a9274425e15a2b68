//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use puiseux::corpus::{random_irreducibles, splitting_irreducibles};
use puiseux::cyclotomic::{compose_indices, cyclotomic_poly, divisors, prime_factors};
use puiseux::monalg::count_irreducible_divisors;
use puiseux::monoid::{accp_status, bounded_membership_table, is_member, AccpStatus};
use puiseux::numfield::lambda_star_linear;
use puiseux::splitting::{constant_exponent_shape_check, enumerate_tree, lambda_empirical, Digit, SplitTree};
use puiseux::{factor_over_integers, is_irreducible, IntPoly, MonAlgPoly, PuiseuxParam};
use serde_json::Value;

/// Wall-clock budgets per criterion.
const BUDGET_1: Duration = Duration::from_secs(10);
const BUDGET_2: Duration = Duration::from_secs(60);
const BUDGET_3: Duration = Duration::from_secs(30);
const BUDGET_4: Duration = Duration::from_secs(5);
const BUDGET_5: Duration = Duration::from_secs(120);
const BUDGET_7: Duration = Duration::from_secs(30);
const BUDGET_8: Duration = Duration::from_secs(10);
const BUDGET_9: Duration = Duration::from_secs(60);
const BUDGET_10: Duration = Duration::from_secs(300);

/// Every count and bound below is exact: no tolerance is allowed.
const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 200;
const VERIFY_SEED: &str = "7";

/// Irreducible factor counts of x^27 - a for a = 2, 8, 512, computed with
/// sympy (`factor_list`). The value for 512 is 3: x^27 - 512 splits as
/// (x^3 - 2)(x^6 + 2x^3 + 4)(x^18 + 8x^9 + 64).
const LEVEL_THREE_ORACLE: [(i64, usize); 3] = [(2, 1), (8, 2), (512, 3)];

struct Outcome {
    ok: bool,
    details: String,
}

fn outcome(ok: bool, details: impl Into<String>) -> Outcome {
    Outcome { ok, details: details.into() }
}

fn lin(a: i64) -> IntPoly {
    IntPoly::from_i64s(&[-a, 1])
}

fn worked() -> IntPoly {
    IntPoly::from_i64s(&[1, 2, 3, 1])
}

/// Random irreducibles plus structured ones that are known to split, so the
/// leading-coefficient check is not vacuous.
fn corpus() -> Vec<IntPoly> {
    let mut c = random_irreducibles(CORPUS_SEED, CORPUS_SIZE, 5, 20);
    c.extend(splitting_irreducibles().into_iter().filter(|f| !c.contains(f)).collect::<Vec<_>>());
    c
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=300u64 {
        let prod = divisors(n).into_iter().fold(IntPoly::one(), |a, d| &a * &cyclotomic_poly(d));
        if prod != IntPoly::binomial(n as usize, 1) {
            bad.push(format!("n={n}"));
        }
    }
    let mut pairs = 0;
    for y in 1..=50u64 {
        for r in [3u64, 5, 7, 15, 21, 35, 105] {
            let rhs = compose_indices(y, r)
                .unwrap()
                .into_iter()
                .fold(IntPoly::one(), |a, k| &a * &cyclotomic_poly(k));
            if cyclotomic_poly(y).compose_power(r as usize) != rhs {
                bad.push(format!("y={y}, r={r}"));
            }
            pairs += 1;
        }
    }
    outcome(bad.is_empty(), format!("300 product identities, {pairs} composed identities, violations: {bad:?}"))
}

fn criterion_2() -> Outcome {
    let corpus = corpus();
    let mut bad = Vec::new();
    for f in &corpus {
        for r in [3usize, 5, 15] {
            let n = factor_over_integers(&f.compose_power(r)).unwrap().factors.len();
            if n > r {
                bad.push(format!("{f} r={r}: {n}"));
            }
        }
    }
    outcome(corpus.len() >= CORPUS_SIZE && bad.is_empty(), format!("{} polynomials, violations: {bad:?}", corpus.len()))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut eligible = 0;
    for f in corpus() {
        let lc = f.lc().unwrap().abs();
        if lc < BigInt::from(2) {
            continue;
        }
        eligible += 1;
        for r in [3u64, 5, 15] {
            let fac = factor_over_integers(&f.compose_power(r as usize)).unwrap();
            if fac.factors.len() < 2 {
                continue;
            }
            let p = prime_factors(r).last().unwrap().0 as u32;
            for (g, _) in &fac.factors {
                checked += 1;
                if g.lc().unwrap().abs().pow(p) > lc.pow(p - 1) {
                    bad.push(format!("{g} | {f}(x^{r})"));
                }
            }
        }
    }
    outcome(
        bad.is_empty() && checked > 0,
        format!("{eligible} polynomials with |lc| >= 2, {checked} split factors, violations: {bad:?}"),
    )
}

fn worked_tree() -> SplitTree {
    enumerate_tree(&worked(), &[3], 3).unwrap()
}

fn criterion_4() -> Outcome {
    let fac = factor_over_integers(&IntPoly::from_i64s(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 1])).unwrap();
    let got: BTreeSet<IntPoly> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
    let want: BTreeSet<IntPoly> =
        [IntPoly::from_i64s(&[1, -1, 0, 1]), IntPoly::from_i64s(&[1, 1, 1, 2, 1, 0, 1])].into();
    let exact = got == want && fac.factors.iter().all(|(_, m)| *m == 1) && fac.content.is_one();
    let tree = worked_tree();
    let path = tree.paths().into_iter().find(|p| p.digits == [Digit::S, Digit::L, Digit::L]);
    let lifts = path.as_ref().map(|p| {
        (1..=3u32)
            .map(|k| is_irreducible(&p.polys[1].compose_power(3usize.pow(k))).unwrap())
            .collect::<Vec<_>>()
    });
    let ok = exact && lifts.as_ref().is_some_and(|l| l.iter().all(|&b| b));
    outcome(ok, format!("factorization exact: {exact}; S,L,L path lifts for k=1..3: {lifts:?}"))
}

const PRIME_SETS: [&[u64]; 3] = [&[3], &[5], &[3, 5]];

/// Trees explored in criterion 5 for single odd exponents.
fn criterion_5_inner(trees: &mut Vec<(u64, SplitTree)>) -> Outcome {
    let mut bad = Vec::new();
    let mut sample = String::new();
    for p in PRIME_SETS {
        for m in 2..=64i64 {
            for a in [m, -m] {
                let star = lambda_star_linear(a, p).unwrap();
                let est = lambda_empirical(&lin(a), p, 4).unwrap();
                if est.lower_bound as u64 > star {
                    bad.push(format!("a={a} P={p:?}: {} > {star}", est.lower_bound));
                }
                if a == 8 && p == [3] {
                    sample = format!("a=8 P={{3}}: {} <= {star}", est.lower_bound);
                }
                if p.len() == 1 {
                    trees.push((p[0], est.tree));
                }
            }
        }
    }
    let exact = [(2i64, &[3u64][..], 1u64), (8, &[3], 3), (3, &[3], 2), (6, &[5], 2)];
    let mut wrong = Vec::new();
    for (a, p, want) in exact {
        let v = lambda_star_linear(a, p).unwrap();
        if v != want {
            wrong.push(format!("lambda*({a},{p:?})={v}, expected {want}"));
        }
    }
    outcome(
        bad.is_empty() && wrong.is_empty(),
        format!("378 (a, P) pairs; {sample}; bound violations {bad:?}; exact-value mismatches {wrong:?}"),
    )
}

fn criterion_6(trees: &[(u64, SplitTree)]) -> Outcome {
    let mut bad = 0;
    for (r, t) in trees {
        if !constant_exponent_shape_check(t, *r).unwrap() {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} constant-odd-exponent trees, {bad} with an S after an L", trees.len()))
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, want) in LEVEL_THREE_ORACLE {
        let bound = BigUint::from(3u32).pow(lambda_star_linear(a, &[3]).unwrap() as u32);
        let counts: Vec<usize> = (0..=3).map(|l| count_irreducible_divisors(&lin(a), 3, l).unwrap()).collect();
        ok &= counts.iter().all(|&c| BigUint::from(c) <= bound) && counts[3] == want;
        parts.push(format!("a={a}: counts {counts:?} <= {bound}, level 3 oracle {want}"));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_8() -> Outcome {
    let q = PuiseuxParam::new(2, 3).unwrap();
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let f8 = MonAlgPoly::from_int_poly(&lin(8), q.clone());
    let rep8 = f8.stable_factorization(4).unwrap();
    let want = vec![
        (MonAlgPoly::new([(r(1, 3), 1.into()), (r(0, 1), (-2).into())], q.clone()).unwrap(), 1),
        (MonAlgPoly::new([(r(2, 3), 1.into()), (r(1, 3), 2.into()), (r(0, 1), 4.into())], q.clone()).unwrap(), 1),
    ];
    let settled = (1..=4).all(|l| rep8.at_level(l).is_some_and(|x| x.factors == want));
    let rep2 = MonAlgPoly::from_int_poly(&lin(2), q).stable_factorization(4).unwrap();
    outcome(
        rep8.gamma == Some(1) && settled && rep2.gamma == Some(0),
        format!("x-8: gamma={:?}, multiset matches: {settled}; x-2: gamma={:?}", rep8.gamma, rep2.gamma),
    )
}

fn criterion_9() -> Outcome {
    let mut disagreements = Vec::new();
    let mut points = 0;
    for (n, d) in [(3u64, 4u64), (3, 5), (5, 9), (2, 7)] {
        let p = PuiseuxParam::new(n, d).unwrap();
        let scale = BigInt::from(d).pow(4);
        for (u, &reach) in bounded_membership_table(&p, 6, 4, 4).iter().enumerate() {
            points += 1;
            let x = BigRational::new(BigInt::from(u), scale.clone());
            if is_member(&x, &p) != reach {
                disagreements.push(format!("{x} in M_{p}"));
            }
        }
    }
    let rep = accp_status(&BigRational::from_integer(3.into()), &PuiseuxParam::new(3, 4).unwrap(), 8).unwrap();
    let chain: Vec<String> = rep.witness.iter().map(|x| x.to_string()).collect();
    let witness_ok = rep.status == AccpStatus::Fails && chain == ["3", "9/4", "27/16"];
    outcome(
        disagreements.is_empty() && witness_ok,
        format!(
            "{points} grid points, {} disagreements; accp(3, 3/4) = {:?} via {}",
            disagreements.len(),
            rep.status,
            chain.join(" > ")
        ),
    )
}

fn verify_run() -> (Value, i32, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_puiseux"))
        .args(["verify-paper", "--json", "--seed", VERIFY_SEED])
        .output()
        .expect("run puiseux binary");
    let elapsed = start.elapsed();
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("verify-paper emits JSON");
    v.as_object_mut().unwrap().remove("elapsed_ms");
    (v, out.status.code().unwrap_or(-1), elapsed)
}

fn criterion_10() -> Outcome {
    let (a, code_a, t_a) = verify_run();
    let (b, code_b, t_b) = verify_run();
    let slowest = t_a.max(t_b);
    let checks = a["checks"].as_array().map_or(0, Vec::len);
    outcome(
        a == b && code_a == code_b && slowest < BUDGET_10,
        format!(
            "two runs identical: {}; {checks} checks; exit codes {code_a}/{code_b}; slowest {:.1} s",
            a == b,
            slowest.as_secs_f64()
        ),
    )
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took >= budget {
        o.ok = false;
    }
    o.details = format!("{} [{:.2} s of {} s]", o.details, took.as_secs_f64(), budget.as_secs());
    o
}

fn main() {
    let mut trees: Vec<(u64, SplitTree)> = Vec::new();
    let mut results: Vec<(u32, Outcome)> = vec![
        (1, timed(BUDGET_1, criterion_1)),
        (2, timed(BUDGET_2, criterion_2)),
        (3, timed(BUDGET_3, criterion_3)),
        (4, timed(BUDGET_4, criterion_4)),
        (5, timed(BUDGET_5, || criterion_5_inner(&mut trees))),
    ];
    trees.push((3, worked_tree()));
    results.push((6, criterion_6(&trees)));
    results.push((7, timed(BUDGET_7, criterion_7)));
    results.push((8, timed(BUDGET_8, criterion_8)));
    results.push((9, timed(BUDGET_9, criterion_9)));
    results.push((10, criterion_10()));

    let mut failed = 0;
    for (n, o) in &results {
        println!("criterion {n:>2}: {} {}", if o.ok { "PASS" } else { "FAIL" }, o.details);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
