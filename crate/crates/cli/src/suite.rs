//! The `verify-paper` check suites.

use std::collections::BTreeSet;
use std::time::Instant;

use clap::ValueEnum;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use puiseux::corpus::{random_irreducibles, splitting_irreducibles};
use puiseux::cyclotomic::{
    compose_indices, cyclotomic_poly, divisors, is_prime, is_squarefree, prime_factors, totient,
};
use puiseux::monalg::{count_irreducible_divisors, divisor_count_bound, LevelFactorization};
use puiseux::monoid::{
    accp_status, atomic_factorizations, atoms_of, bounded_membership_table, canonical_form,
    factorization_value, is_member, AccpStatus, AtomSet, MonoidClass,
};
use puiseux::numfield::{lambda_star_linear, prime_splitting_in_cyclotomic};
use puiseux::splitting::{
    constant_exponent_shape_check, enumerate_tree_with, lambda_empirical_with, realize_divisor_path,
    Digit, SplitTree, TreeOptions, DEFAULT_NODE_BUDGET,
};
use puiseux::{factor_over_integers, is_irreducible, Error, IntPoly, MonAlgPoly, PuiseuxParam};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Check, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Selection {
    All,
    Cyclotomic,
    Composed,
    Splitting,
    Bounds,
    Monoid,
    Stabilization,
}

impl Selection {
    pub fn name(self) -> &'static str {
        match self {
            Selection::All => "all",
            Selection::Cyclotomic => "cyclotomic",
            Selection::Composed => "composed",
            Selection::Splitting => "splitting",
            Selection::Bounds => "bounds",
            Selection::Monoid => "monoid",
            Selection::Stabilization => "stabilization",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Depth of the empirical splitting searches.
    pub depth: usize,
    pub node_budget: usize,
    /// Number of random irreducibles in the composed-polynomial corpus.
    pub corpus_size: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, depth: 4, node_budget: DEFAULT_NODE_BUDGET, corpus_size: 200 }
    }
}

type Outcome = Result<(bool, String), Error>;

fn run(id: &str, anchor: &str, body: impl FnOnce() -> Outcome) -> Check {
    match body() {
        Ok((ok, details)) => Check::verdict(id, anchor, ok, details),
        Err(e) => Check::new(id, anchor, Status::Fail, format!("error: {e}")),
    }
}

/// Joins up to `limit` items, noting how many were left out.
fn summarize(items: &[String], limit: usize) -> String {
    let mut s = items.iter().take(limit).cloned().collect::<Vec<_>>().join("; ");
    if items.len() > limit {
        s.push_str(&format!("; … {} more", items.len() - limit));
    }
    s
}

fn violations(kind: &str, checked: usize, bad: Vec<String>) -> (bool, String) {
    if bad.is_empty() {
        (true, format!("{checked} {kind} checked, 0 violations"))
    } else {
        (false, format!("{} of {checked} {kind} violated: {}", bad.len(), summarize(&bad, 5)))
    }
}

fn lin(a: i64) -> IntPoly {
    IntPoly::from_i64s(&[-a, 1])
}

/// The worked example `1 + 2x + 3x² + x³`.
pub fn worked_polynomial() -> IntPoly {
    IntPoly::from_i64s(&[1, 2, 3, 1])
}

pub fn composed_corpus(cfg: &SuiteConfig) -> Vec<IntPoly> {
    let mut c = random_irreducibles(cfg.seed, cfg.corpus_size, 5, 20);
    for f in splitting_irreducibles() {
        if !c.contains(&f) {
            c.push(f);
        }
    }
    c
}

pub fn verify_suite(selection: Selection, cfg: &SuiteConfig) -> Report {
    let start = Instant::now();
    let mut checks = Vec::new();
    let want = |s: Selection| selection == Selection::All || selection == s;
    if want(Selection::Cyclotomic) {
        checks.extend(cyclotomic_checks());
    }
    if want(Selection::Composed) {
        checks.extend(composed_checks(cfg));
    }
    if want(Selection::Splitting) {
        checks.extend(splitting_checks(cfg));
    }
    if want(Selection::Bounds) {
        checks.extend(bounds_checks(cfg));
    }
    if want(Selection::Monoid) {
        checks.extend(monoid_checks(cfg));
    }
    if want(Selection::Stabilization) {
        checks.extend(stabilization_checks());
    }
    Report {
        suite: selection.name().into(),
        seed: cfg.seed,
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

pub const COMPOSED_CYCLOTOMIC_R: [u64; 7] = [3, 5, 7, 15, 21, 35, 105];

pub fn cyclotomic_checks() -> Vec<Check> {
    vec![
        run("cyclotomic.product", "x^n - 1 is the product of Phi_d over d | n", || {
            let bad: Vec<String> = (1..=300u64)
                .filter(|&n| {
                    let prod = divisors(n).into_iter().fold(IntPoly::one(), |a, d| &a * &cyclotomic_poly(d));
                    prod != IntPoly::binomial(n as usize, 1)
                })
                .map(|n| format!("n={n}"))
                .collect();
            Ok(violations("n <= 300", 300, bad))
        }),
        run("cyclotomic.degree", "deg Phi_n = phi(n), Phi_n(0) = 1", || {
            let bad: Vec<String> = (1..=300u64)
                .filter(|&n| {
                    let p = cyclotomic_poly(n);
                    p.degree() != Some(totient(n) as usize) || !p.is_monic() || (n >= 2 && !p.coeff(0).is_one())
                })
                .map(|n| format!("n={n}"))
                .collect();
            Ok(violations("n <= 300", 300, bad))
        }),
        run("cyclotomic.composed", "Phi_y(x^r) as a product of cyclotomic polynomials", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            for y in 1..=50u64 {
                for r in COMPOSED_CYCLOTOMIC_R {
                    let rhs = compose_indices(y, r)?
                        .into_iter()
                        .fold(IntPoly::one(), |a, k| &a * &cyclotomic_poly(k));
                    if cyclotomic_poly(y).compose_power(r as usize) != rhs {
                        bad.push(format!("y={y}, r={r}"));
                    }
                    checked += 1;
                }
            }
            Ok(violations("(y, r) pairs", checked, bad))
        }),
        run("cyclotomic.factor-engine", "factoring x^n - 1 returns its cyclotomic divisors", || {
            let mut bad = Vec::new();
            for n in 1..=60u64 {
                let got: Vec<IntPoly> = factor_over_integers(&IntPoly::binomial(n as usize, 1))?
                    .factors
                    .into_iter()
                    .map(|(g, _)| g)
                    .collect();
                let want: BTreeSet<IntPoly> = divisors(n).into_iter().map(cyclotomic_poly).collect();
                if got.into_iter().collect::<BTreeSet<_>>() != want {
                    bad.push(format!("n={n}"));
                }
            }
            Ok(violations("n <= 60", 60, bad))
        }),
    ]
}

pub fn composed_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let corpus = composed_corpus(cfg);
    vec![
        run("composed.worked-example", "x^9+3x^6+2x^3+1 = (x^3-x+1)(x^6+x^4+2x^3+x^2+x+1)", || {
            let f = worked_polynomial().compose_power(3);
            let fac = factor_over_integers(&f)?;
            let want = vec![
                (IntPoly::from_i64s(&[1, -1, 0, 1]), 1),
                (IntPoly::from_i64s(&[1, 1, 1, 2, 1, 0, 1]), 1),
            ];
            let ok = fac.factors == want && fac.content.is_one();
            let shown: Vec<String> = fac.factors.iter().map(|(g, _)| g.to_string()).collect();
            Ok((ok, format!("factors: {}", shown.join(", "))))
        }),
        run("composed.divisor-count", "f(x^r) has at most r irreducible divisors", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            for f in &corpus {
                for r in [3usize, 5, 15] {
                    let n = factor_over_integers(&f.compose_power(r))?.factors.len();
                    if n > r {
                        bad.push(format!("{f} at r={r}: {n}"));
                    }
                    checked += 1;
                }
            }
            Ok(violations(&format!("compositions of {} polynomials", corpus.len()), checked, bad))
        }),
        run("composed.leading-coefficient", "|lc g|^p_max <= |lc f|^(p_max-1) for split factors", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            for f in corpus.iter().filter(|f| f.lc().unwrap().abs() >= BigInt::from(2)) {
                let lc = f.lc().unwrap().abs();
                for r in [3u64, 5, 15] {
                    let fac = factor_over_integers(&f.compose_power(r as usize))?;
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
            Ok(violations("split factors", checked, bad))
        }),
        run("composed.tower", "f(x^r) irreducible implies f(x^(r^2)) irreducible", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            for f in &corpus {
                for r in [3usize, 5] {
                    if is_irreducible(&f.compose_power(r))? {
                        checked += 1;
                        if !is_irreducible(&f.compose_power(r * r))? {
                            bad.push(format!("{f} at r={r}"));
                        }
                    }
                }
            }
            Ok(violations("irreducible compositions", checked, bad))
        }),
    ]
}

fn shape_violations(tree: &SplitTree, r: u64, label: &str, bad: &mut Vec<String>) -> Result<(), Error> {
    if !constant_exponent_shape_check(tree, r)? {
        bad.push(label.to_string());
    }
    Ok(())
}

/// Trees with a single odd exponent: the worked example, small structured
/// roots, and the linear roots `x - a` searched by the bounds suite.
fn constant_exponent_trees(cfg: &SuiteConfig) -> Result<Vec<(String, u64, SplitTree)>, Error> {
    let opts = TreeOptions { node_budget: cfg.node_budget, open_paths_only: false };
    let mut out = Vec::new();
    let f = worked_polynomial();
    out.push((f.to_string(), 3, enumerate_tree_with(&f, &[3], 3, opts)?));
    for g in splitting_irreducibles().into_iter().filter(|g| g.degree() <= Some(2)) {
        for (r, depth) in [(3u64, 3usize), (5, 2)] {
            out.push((format!("{g} r={r}"), r, enumerate_tree_with(&g, &[r], depth, opts)?));
        }
    }
    let open = TreeOptions { node_budget: cfg.node_budget, open_paths_only: true };
    for m in 2..=64i64 {
        for a in [m, -m] {
            for r in [3u64, 5] {
                let t = enumerate_tree_with(&lin(a), &[r], cfg.depth, open)?;
                out.push((format!("x-({a}) r={r}"), r, t));
            }
        }
    }
    Ok(out)
}

pub fn splitting_checks(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run("splitting.worked-digits", "the worked example has a path S, L, L", || {
            let tree = enumerate_tree_with(&worked_polynomial(), &[3], 3, TreeOptions::default())?;
            let Some(path) = tree.paths().into_iter().find(|p| p.digits == [Digit::S, Digit::L, Digit::L]) else {
                return Ok((false, "no S,L,L path".into()));
            };
            let g = &path.polys[1];
            let mut lifts = Vec::new();
            for k in 1..=3u32 {
                lifts.push(is_irreducible(&g.compose_power(3usize.pow(k)))?);
            }
            let ok = lifts.iter().all(|&b| b);
            Ok((ok, format!("path through {g}; g(x^(3^k)) irreducible for k=1..3: {lifts:?}")))
        }),
        run("splitting.shape", "no S digit follows an L digit for constant odd exponents", || {
            let trees = constant_exponent_trees(cfg)?;
            let mut bad = Vec::new();
            for (label, r, tree) in &trees {
                shape_violations(tree, *r, label, &mut bad)?;
            }
            Ok(violations("trees", trees.len(), bad))
        }),
        run("splitting.children", "children multiply back and number at most e", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            let mut roots = vec![worked_polynomial()];
            roots.extend(splitting_irreducibles().into_iter().filter(|g| g.degree() <= Some(2)));
            let opts = TreeOptions { node_budget: cfg.node_budget, open_paths_only: false };
            for f in &roots {
                let tree = enumerate_tree_with(f, &[3, 5], 2, opts)?;
                for node in tree.nodes.iter().filter(|n| !n.children.is_empty()) {
                    for &e in &tree.exponents {
                        let kids: BTreeSet<&IntPoly> = node
                            .children
                            .iter()
                            .map(|&c| &tree.nodes[c])
                            .filter(|c| c.exponent == e)
                            .map(|c| &c.poly)
                            .collect();
                        let composed = node.poly.compose_power(e as usize);
                        let fac = factor_over_integers(&composed)?;
                        let distinct: BTreeSet<&IntPoly> = fac.factors.iter().map(|(g, _)| g).collect();
                        checked += 1;
                        if fac.expand() != composed || kids != distinct || kids.len() as u64 > e {
                            bad.push(format!("{} at e={e}", node.poly));
                        }
                    }
                }
            }
            Ok(violations("expanded nodes", checked, bad))
        }),
        run("splitting.divisor-paths", "every irreducible divisor of f(x^(e1 e2)) is reached by a splitting sequence", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            for f in [lin(8), lin(-27), lin(64), worked_polynomial(), IntPoly::from_i64s(&[4, 2, 1])] {
                for sigma in [[3u64, 3], [3, 5], [5, 3]] {
                    let total = (sigma[0] * sigma[1]) as usize;
                    for (b, _) in factor_over_integers(&f.compose_power(total))?.factors {
                        checked += 1;
                        let path = realize_divisor_path(&f, &b, &sigma)?;
                        if path.polys.last() != Some(&b) {
                            bad.push(format!("{b} from {f}"));
                        }
                    }
                }
            }
            Ok(violations("divisors", checked, bad))
        }),
    ]
}

pub const LAMBDA_PRIME_SETS: [&[u64]; 3] = [&[3], &[5], &[3, 5]];

/// `(a, P, Λ*)` exact values.
pub const LAMBDA_STAR_VALUES: [(i64, &[u64], u64); 4] = [(2, &[3], 1), (8, &[3], 3), (3, &[3], 2), (6, &[5], 2)];

/// `(a, count of irreducible factors of x^27 - a)` from an independent CAS.
pub const LEVEL_THREE_COUNTS: [(i64, usize); 3] = [(2, 1), (8, 2), (512, 3)];

pub fn bounds_checks(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run("bounds.lambda-soundness", "empirical initial splits never exceed lambda-star", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            let mut sample = String::new();
            for p in LAMBDA_PRIME_SETS {
                for m in 2..=64i64 {
                    for a in [m, -m] {
                        let star = lambda_star_linear(a, p)?;
                        let est = lambda_empirical_with(&lin(a), p, cfg.depth, cfg.node_budget)?;
                        let emp = est.lower_bound.max(est.open_prefix) as u64;
                        if a == 8 && p == [3] {
                            sample = format!("a=8, P={{3}}: lambda_emp={emp} <= lambda*={star}");
                        }
                        checked += 1;
                        if emp > star {
                            bad.push(format!("a={a}, P={p:?}: {emp} > {star}"));
                        }
                    }
                }
            }
            let (ok, d) = violations(&format!("(a, P) pairs at depth {}", cfg.depth), checked, bad);
            Ok((ok, format!("{d}; {sample}")))
        }),
        run("bounds.lambda-star-values", "exact lambda-star for linear polynomials", || {
            let mut got = Vec::new();
            let mut ok = true;
            for (a, p, want) in LAMBDA_STAR_VALUES {
                let v = lambda_star_linear(a, p)?;
                ok &= v == want;
                got.push(format!("lambda*({a},{p:?})={v}"));
            }
            Ok((ok, got.join(", ")))
        }),
        run("bounds.divisor-count-r3", "irreducible divisors of x-a at level l are at most 3^lambda*", || {
            let mut ok = true;
            let mut details = Vec::new();
            for (a, want) in LEVEL_THREE_COUNTS {
                let star = lambda_star_linear(a, &[3])?;
                let bound = BigUint::from(3u32).pow(star as u32);
                let mut counts = Vec::new();
                for level in 0..=3 {
                    let c = count_irreducible_divisors(&lin(a), 3, level)?;
                    ok &= BigUint::from(c) <= bound;
                    counts.push(c);
                }
                ok &= counts[3] == want;
                details.push(format!("a={a}: counts {counts:?} <= {bound}"));
            }
            Ok((ok, details.join("; ")))
        }),
        run("bounds.divisor-count-grid", "divisor counts within the level-algebra bound", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            for m in 2..=64i64 {
                for a in [m, -m] {
                    for (r, pi) in [(3u64, &[3u64][..]), (5, &[5]), (15, &[3, 5])] {
                        let bound = divisor_count_bound(&lin(a), pi, lambda_star_linear(a, pi)?)?;
                        for level in 0..=3 {
                            checked += 1;
                            let c = count_irreducible_divisors(&lin(a), r, level)?;
                            if BigUint::from(c) > bound {
                                bad.push(format!("a={a}, r={r}, level {level}: {c} > {bound}"));
                            }
                        }
                    }
                }
            }
            Ok(violations("(a, r, level) cases", checked, bad))
        }),
        run("bounds.splitting-data", "e * f * g = phi(N) in cyclotomic fields", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            for q in (2..50).filter(|&q| is_prime(q)) {
                for n in (3..120).filter(|&n| is_squarefree(n)) {
                    let d = prime_splitting_in_cyclotomic(q, n)?;
                    checked += 1;
                    if d.e * d.f_res * d.g != totient(n) {
                        bad.push(format!("q={q}, N={n}"));
                    }
                }
            }
            Ok(violations("(q, N) pairs", checked, bad))
        }),
    ]
}

pub const MONOID_GRID: [(u64, u64); 4] = [(3, 4), (3, 5), (5, 9), (2, 7)];

/// Disagreements between `is_member` and bounded enumeration over
/// `x = u/d^4 ≤ 4`, plus canonical-form round-trip failures.
pub fn monoid_oracle_disagreements() -> (usize, Vec<String>) {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (n, d) in MONOID_GRID {
        let p = PuiseuxParam::new(n, d).expect("valid grid parameter");
        let scale = BigInt::from(d).pow(4);
        for (u, &reach) in bounded_membership_table(&p, 6, 4, 4).iter().enumerate() {
            let x = BigRational::new(BigInt::from(u), scale.clone());
            checked += 1;
            if is_member(&x, &p) != reach {
                bad.push(format!("{x} in M_{p}"));
            }
            if let Some(rep) = canonical_form(&x, &p) {
                if rep.value(&p) != x {
                    bad.push(format!("canonical form of {x} in M_{p}"));
                }
            }
        }
    }
    (checked, bad)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn monoid_checks(cfg: &SuiteConfig) -> Vec<Check> {
    vec![
        run("monoid.oracle", "membership agrees with bounded enumeration", || {
            let (checked, bad) = monoid_oracle_disagreements();
            Ok(violations("grid points", checked, bad))
        }),
        run("monoid.accp-witness", "3 in M_(3/4) fails the ACCP", || {
            let p = PuiseuxParam::new(3, 4)?;
            let rep = accp_status(&rat(3, 1), &p, 8)?;
            let want = vec![rat(3, 1), rat(9, 4), rat(27, 16)];
            let chain: Vec<String> = rep.witness.iter().map(|x| x.to_string()).collect();
            Ok((
                rep.status == AccpStatus::Fails && rep.witness == want,
                format!("{:?} with chain {}", rep.status, chain.join(" > ")),
            ))
        }),
        run("monoid.classification", "atomic structure of M_q by the shape of q", || {
            let cases = [
                ((1u64, 2u64), MonoidClass::Antimatter, AtomSet::Antimatter),
                ((3, 4), MonoidClass::AtomicNonAccp, AtomSet::PowersOfQ),
                ((3, 1), MonoidClass::Natural, AtomSet::One),
                ((5, 2), MonoidClass::AtLeastOne, AtomSet::PowersOfQ),
            ];
            let mut ok = true;
            let mut details = Vec::new();
            for ((n, d), class, atoms) in cases {
                let p = PuiseuxParam::new(n, d)?;
                ok &= p.class() == class && atoms_of(&p) == atoms;
                details.push(format!("q={p}: {:?}", p.class()));
            }
            Ok((ok, details.join(", ")))
        }),
        run("monoid.factorizations", "atomic factorizations sum to the element", || {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut bad = Vec::new();
            let mut checked = 0;
            for (n, d) in MONOID_GRID {
                let p = PuiseuxParam::new(n, d)?;
                for _ in 0..25 {
                    let mut x = BigRational::from_integer(rng.gen_range(0..4).into());
                    for i in 1..=rng.gen_range(0..5u32) {
                        x += p.power(i) * BigRational::from_integer(rng.gen_range(0..d).into());
                    }
                    for f in atomic_factorizations(&x, &p, 30)? {
                        checked += 1;
                        if factorization_value(&f, &p) != x {
                            bad.push(format!("{x} in M_{p}"));
                        }
                    }
                }
            }
            Ok(violations("factorizations", checked, bad))
        }),
    ]
}

fn multiset(l: &LevelFactorization) -> Vec<String> {
    l.factors.iter().map(|(g, m)| format!("({g})^{m}")).collect()
}

/// `x - a` in the monoid algebra with `q = 2/3`, so `r = 3`.
pub fn algebra_linear(a: i64) -> MonAlgPoly {
    let q = PuiseuxParam::new(2, 3).expect("valid parameter");
    MonAlgPoly::from_int_poly(&lin(a), q)
}

pub fn stabilization_checks() -> Vec<Check> {
    vec![
        run("stabilization.x-8", "x - 8 settles at level 1", || {
            let f = algebra_linear(8);
            let rep = f.stable_factorization(4)?;
            let q = f.param().clone();
            let third = rat(1, 3);
            let want = vec![
                (MonAlgPoly::new([(third.clone(), 1.into()), (rat(0, 1), (-2).into())], q.clone())?, 1),
                (
                    MonAlgPoly::new(
                        [(rat(2, 3), 1.into()), (third, 2.into()), (rat(0, 1), 4.into())],
                        q,
                    )?,
                    1,
                ),
            ];
            let at1 = rep.at_level(1).map(|l| l.factors.clone()).unwrap_or_default();
            let ok = rep.gamma == Some(1) && at1 == want;
            let shown = rep.at_level(1).map(multiset).unwrap_or_default();
            Ok((ok, format!("gamma={:?}, factors at level 1: {}", rep.gamma, shown.join(" "))))
        }),
        run("stabilization.x-2", "x - 2 is stable from level 0", || {
            let rep = algebra_linear(2).stable_factorization(4)?;
            Ok((rep.gamma == Some(0), format!("gamma={:?}", rep.gamma)))
        }),
        run("stabilization.refinement", "each level refines the previous one", || {
            let mut bad = Vec::new();
            let mut checked = 0;
            for a in [8i64, -27, 64, 2, 1, 729] {
                let f = algebra_linear(a);
                let rep = f.stable_factorization(3)?;
                for pair in rep.levels.windows(2) {
                    let finer: Vec<&MonAlgPoly> = pair[1].factors.iter().map(|(g, _)| g).collect();
                    for (g, _) in &pair[0].factors {
                        checked += 1;
                        let split = g.factor_at_level(pair[1].level)?;
                        if split.factors.iter().any(|(h, _)| !finer.contains(&h)) {
                            bad.push(format!("{g} at level {}", pair[1].level));
                        }
                    }
                    if pair[1].expand(f.param()) != f {
                        bad.push(format!("{f} does not expand at level {}", pair[1].level));
                    }
                }
            }
            Ok(violations("level factors", checked, bad))
        }),
    ]
}
