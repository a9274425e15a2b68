use std::collections::BTreeSet;

use puiseux::corpus::{random_irreducibles, splitting_irreducibles};
use puiseux::cyclotomic::{is_prime, is_squarefree, totient};
use puiseux::numfield::{lambda_star_linear, prime_splitting_in_cyclotomic};
use puiseux::splitting::{constant_exponent_shape_check, enumerate_tree, lambda_empirical, SplitTree};
use puiseux::{factor_over_integers, IntPoly};

fn roots() -> Vec<IntPoly> {
    let mut v: Vec<IntPoly> = splitting_irreducibles()
        .into_iter()
        .filter(|f| f.degree().unwrap() <= 2)
        .collect();
    v.extend(random_irreducibles(11, 6, 2, 10));
    v
}

fn check_children(tree: &SplitTree) {
    for node in &tree.nodes {
        for &e in &tree.exponents {
            let kids: BTreeSet<&IntPoly> = node
                .children
                .iter()
                .map(|&c| &tree.nodes[c])
                .filter(|c| c.exponent == e)
                .map(|c| &c.poly)
                .collect();
            if kids.is_empty() {
                // Unexpanded frontier node.
                continue;
            }
            let composed = node.poly.compose_power(e as usize);
            let fac = factor_over_integers(&composed).unwrap();
            assert_eq!(fac.expand(), composed);
            assert!(fac.content == 1u32.into());
            let distinct: BTreeSet<&IntPoly> = fac.factors.iter().map(|(g, _)| g).collect();
            assert_eq!(kids, distinct, "children of {} at e={e}", node.poly);
            if e % 2 == 1 && is_squarefree(e) {
                assert!(kids.len() as u64 <= e);
            }
        }
    }
}

#[test]
fn children_multiply_back_and_respect_the_count_bound() {
    for f in roots() {
        for (t, depth) in [(vec![3u64], 3usize), (vec![5], 2), (vec![3, 5], 2), (vec![15], 1)] {
            let tree = enumerate_tree(&f, &t, depth).unwrap();
            check_children(&tree);
        }
    }
}

#[test]
fn constant_odd_exponent_trees_have_prefix_shape() {
    for f in roots() {
        for (r, depth) in [(3u64, 3usize), (5, 2), (7, 2)] {
            let tree = enumerate_tree(&f, &[r], depth).unwrap();
            assert!(constant_exponent_shape_check(&tree, r).unwrap(), "{f} with r={r}");
        }
    }
}

#[test]
fn empirical_lambda_never_exceeds_lambda_star() {
    for p in [vec![3u64], vec![5], vec![3, 5]] {
        for m in 2..=64i64 {
            for a in [m, -m] {
                let star = lambda_star_linear(a, &p).unwrap();
                let est = lambda_empirical(&IntPoly::from_i64s(&[-a, 1]), &p, 4).unwrap();
                assert!(
                    est.lower_bound as u64 <= star,
                    "a={a}, P={p:?}: empirical {} > {star}",
                    est.lower_bound
                );
            }
        }
    }
}

#[test]
fn splitting_data_multiplies_to_the_totient() {
    for q in (2..50).filter(|&q| is_prime(q)) {
        for n in (3..120).filter(|&n| is_squarefree(n)) {
            let d = prime_splitting_in_cyclotomic(q, n).unwrap();
            assert_eq!(d.e * d.f_res * d.g, totient(n), "q={q}, N={n}");
        }
    }
}

#[test]
fn lambda_star_scales_with_powers_of_primes() {
    for a in [2i64, 3, 5, 7, 11] {
        for p in [vec![3u64], vec![5], vec![3, 5], vec![7]] {
            let base = lambda_star_linear(a, &p).unwrap();
            let mut ak = a;
            for k in 1..=5u64 {
                assert_eq!(lambda_star_linear(ak, &p).unwrap(), k * base, "{a}^{k}, P={p:?}");
                ak *= a;
            }
        }
    }
}
