//! Splitting sequences: chains `f_0, f_1, …` where each `f_k` is an
//! irreducible divisor of `f_{k-1}(x^{e_k})`, their L/S digit strings, and
//! the trees that enumerate them.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::cyclotomic::is_prime;
use crate::error::{Error, Result};
use crate::factor::{factor_over_integers, is_irreducible};
use crate::intpoly::IntPoly;

pub const DEFAULT_NODE_BUDGET: usize = 100_000;

/// `L` when the composed polynomial stayed irreducible, `S` when it split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Digit {
    L,
    S,
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Digit::L => "L",
            Digit::S => "S",
        })
    }
}

/// A truncated splitting sequence. `digits[i]` and `exponents[i]` describe the
/// step from `polys[i]` to `polys[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPath {
    pub polys: Vec<IntPoly>,
    pub exponents: Vec<u64>,
    pub digits: Vec<Digit>,
}

impl SplitPath {
    pub fn digit_string(&self) -> String {
        self.digits.iter().map(Digit::to_string).collect()
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Number of initial splits of a finite path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NSpl {
    Determined(usize),
    /// Every observed digit is `S`; a longer path could split further.
    Undetermined,
}

pub fn n_spl(path: &SplitPath) -> NSpl {
    match path.digits.iter().position(|&d| d == Digit::L) {
        Some(k) => NSpl::Determined(k),
        None => NSpl::Undetermined,
    }
}

fn check_exponent(e: u64) -> Result<()> {
    if e < 2 {
        return Err(Error::InvalidParameter(format!("exponent {e} must be at least 2")));
    }
    Ok(())
}

fn require_irreducible(f: &IntPoly) -> Result<IntPoly> {
    if !is_irreducible(f)? {
        return Err(Error::ReducibleInput);
    }
    Ok(f.normalize_sign())
}

/// Children without the irreducibility check on the parent.
fn children_of(f: &IntPoly, e: u64) -> Result<Vec<(IntPoly, Digit)>> {
    let fac = factor_over_integers(&f.compose_power(e as usize))?;
    let whole = fac.factors.len() == 1 && fac.factors[0].1 == 1;
    let digit = if whole { Digit::L } else { Digit::S };
    Ok(fac.factors.into_iter().map(|(g, _)| (g, digit)).collect())
}

/// Distinct irreducible factors of `f(x^e)`, tagged `L` exactly when `f(x^e)`
/// is itself irreducible.
pub fn split_children(f: &IntPoly, e: u64) -> Result<Vec<(IntPoly, Digit)>> {
    check_exponent(e)?;
    let f = require_irreducible(f)?;
    children_of(&f, e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitNode {
    pub poly: IntPoly,
    pub parent: Option<usize>,
    /// Exponent of the step that produced this node; 0 for the root.
    pub exponent: u64,
    pub digit: Option<Digit>,
    pub depth: usize,
    pub children: Vec<usize>,
}

/// Breadth-first arena of truncated splitting sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTree {
    pub nodes: Vec<SplitNode>,
    pub exponents: Vec<u64>,
    pub depth: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct TreeOptions {
    pub node_budget: usize,
    /// Expand only nodes whose path so far consists of `S` digits.
    pub open_paths_only: bool,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions { node_budget: DEFAULT_NODE_BUDGET, open_paths_only: false }
    }
}

impl SplitTree {
    pub fn root(&self) -> &SplitNode {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Path from the root to node `idx`.
    pub fn path_to(&self, idx: usize) -> SplitPath {
        let mut chain = vec![idx];
        let mut cur = idx;
        while let Some(p) = self.nodes[cur].parent {
            chain.push(p);
            cur = p;
        }
        chain.reverse();
        let polys = chain.iter().map(|&i| self.nodes[i].poly.clone()).collect();
        let exponents = chain[1..].iter().map(|&i| self.nodes[i].exponent).collect();
        let digits = chain[1..].iter().map(|&i| self.nodes[i].digit.unwrap()).collect();
        SplitPath { polys, exponents, digits }
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].children.is_empty())
    }

    /// Root-to-leaf paths in arena order.
    pub fn paths(&self) -> Vec<SplitPath> {
        self.leaves().map(|i| self.path_to(i)).collect()
    }

    fn all_s(&self, idx: usize) -> bool {
        let mut cur = idx;
        while let Some(p) = self.nodes[cur].parent {
            if self.nodes[cur].digit == Some(Digit::L) {
                return false;
            }
            cur = p;
        }
        true
    }
}

fn check_exponent_set(t: &[u64]) -> Result<Vec<u64>> {
    let set: BTreeSet<u64> = t.iter().copied().collect();
    for &e in &set {
        check_exponent(e)?;
    }
    if set.is_empty() {
        return Err(Error::InvalidParameter("empty exponent set".into()));
    }
    Ok(set.into_iter().collect())
}

/// All truncated splitting sequences of `f` of length at most `depth` with
/// exponents drawn from `t`.
pub fn enumerate_tree(f: &IntPoly, t: &[u64], depth: usize) -> Result<SplitTree> {
    enumerate_tree_with(f, t, depth, TreeOptions::default())
}

pub fn enumerate_tree_with(
    f: &IntPoly,
    t: &[u64],
    depth: usize,
    opts: TreeOptions,
) -> Result<SplitTree> {
    let exponents = check_exponent_set(t)?;
    let root = require_irreducible(f)?;
    let mut tree = SplitTree {
        nodes: vec![SplitNode {
            poly: root,
            parent: None,
            exponent: 0,
            digit: None,
            depth: 0,
            children: Vec::new(),
        }],
        exponents,
        depth,
    };
    let mut memo: HashMap<(IntPoly, u64), Vec<(IntPoly, Digit)>> = HashMap::new();
    let mut frontier = vec![0usize];
    for level in 0..depth {
        let expand: Vec<usize> = frontier
            .iter()
            .copied()
            .filter(|&i| !opts.open_paths_only || tree.all_s(i))
            .collect();
        let mut jobs: Vec<(IntPoly, u64)> = Vec::new();
        let mut queued = HashSet::new();
        for &i in &expand {
            for &e in &tree.exponents {
                let key = (tree.nodes[i].poly.clone(), e);
                if !memo.contains_key(&key) && queued.insert(key.clone()) {
                    jobs.push(key);
                }
            }
        }
        let results: Vec<Result<Vec<(IntPoly, Digit)>>> =
            jobs.par_iter().map(|(g, e)| children_of(g, *e)).collect();
        for (key, res) in jobs.into_iter().zip(results) {
            memo.insert(key, res?);
        }
        let mut next = Vec::new();
        for &i in &expand {
            for e in tree.exponents.clone() {
                let kids = &memo[&(tree.nodes[i].poly.clone(), e)];
                for (g, d) in kids {
                    if tree.nodes.len() >= opts.node_budget {
                        return Err(Error::DepthLimit { budget: opts.node_budget });
                    }
                    let idx = tree.nodes.len();
                    tree.nodes.push(SplitNode {
                        poly: g.clone(),
                        parent: Some(i),
                        exponent: e,
                        digit: Some(*d),
                        depth: level + 1,
                        children: Vec::new(),
                    });
                    tree.nodes[i].children.push(idx);
                    next.push(idx);
                }
            }
        }
        frontier = next;
    }
    Ok(tree)
}

/// Empirical lower bound on the supremum of initial splits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaEstimate {
    /// Largest determined `N_spl` among explored paths.
    pub lower_bound: usize,
    /// No explored path is still all-`S` at the depth limit.
    pub saturated: bool,
    /// Length of the longest all-`S` path; also a lower bound for the supremum.
    pub open_prefix: usize,
    /// The explored tree, expanded only along all-`S` paths.
    pub tree: SplitTree,
}

pub fn lambda_empirical(f: &IntPoly, t: &[u64], depth: usize) -> Result<LambdaEstimate> {
    lambda_empirical_with(f, t, depth, DEFAULT_NODE_BUDGET)
}

pub fn lambda_empirical_with(
    f: &IntPoly,
    t: &[u64],
    depth: usize,
    node_budget: usize,
) -> Result<LambdaEstimate> {
    if f.normalize_sign() == IntPoly::x() {
        return Err(Error::ExcludedPolynomial);
    }
    let opts = TreeOptions { node_budget, open_paths_only: true };
    let tree = enumerate_tree_with(f, t, depth, opts)?;
    let mut lower_bound = 0;
    let mut open_prefix = 0;
    let mut saturated = true;
    for path in tree.paths() {
        match n_spl(&path) {
            NSpl::Determined(k) => lower_bound = lower_bound.max(k),
            NSpl::Undetermined => {
                saturated = false;
                open_prefix = open_prefix.max(path.len());
            }
        }
    }
    Ok(LambdaEstimate { lower_bound, saturated, open_prefix, tree })
}

/// Builds the splitting sequence from `f` to the divisor `b` of
/// `f(x^{∏ sigma})`, choosing at each stage the irreducible divisor `s` of the
/// current composition with `b | s(x^{remaining product})`.
pub fn realize_divisor_path(f: &IntPoly, b: &IntPoly, sigma: &[u64]) -> Result<SplitPath> {
    for &e in sigma {
        check_exponent(e)?;
    }
    let f = require_irreducible(f)?;
    let b = require_irreducible(b)?;
    let total: u64 = sigma.iter().product();
    if !f.compose_power(total as usize).is_divisible_by(&b) {
        return Err(Error::NotADivisor);
    }
    let mut path = SplitPath { polys: vec![f.clone()], exponents: Vec::new(), digits: Vec::new() };
    let mut cur = f;
    for (i, &e) in sigma.iter().enumerate() {
        let rest: u64 = sigma[i + 1..].iter().product();
        let kids = children_of(&cur, e)?;
        let (next, digit) = kids
            .into_iter()
            .find(|(s, _)| s.compose_power(rest as usize).is_divisible_by(&b))
            .ok_or(Error::NotADivisor)?;
        path.polys.push(next.clone());
        path.exponents.push(e);
        path.digits.push(digit);
        cur = next;
    }
    if cur != b {
        return Err(Error::NotADivisor);
    }
    Ok(path)
}

fn check_prime_set(p: &[u64]) -> Result<Vec<u64>> {
    let set: BTreeSet<u64> = p.iter().copied().collect();
    if let Some(bad) = set.iter().find(|&&q| !is_prime(q)) {
        return Err(Error::InvalidPrimeSet(format!("{bad} is not prime")));
    }
    Ok(set.into_iter().collect())
}

/// Exponents `r` with prime support in `primes`, `ω(r) ≤ max_omega` and
/// `Ω(r) ≤ max_big_omega`, including `r = 1`.
pub fn restricted_exponents(primes: &[u64], max_omega: u32, max_big_omega: u32) -> Vec<u64> {
    fn rec(primes: &[u64], acc: u64, omega: u32, big: u32, lim: (u32, u32), out: &mut Vec<u64>) {
        out.push(acc);
        for (i, &p) in primes.iter().enumerate() {
            if omega + 1 > lim.0 {
                break;
            }
            let mut pk = acc;
            for k in 1..=lim.1.saturating_sub(big) {
                pk *= p;
                rec(&primes[i + 1..], pk, omega + 1, big + k, lim, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(primes, 1, 0, 0, (max_omega, max_big_omega), &mut out);
    out.sort_unstable();
    out
}

/// Irreducible divisors of `f(x^r)` over the admissible exponents `r`.
pub fn composed_divisor_set(
    f: &IntPoly,
    primes: &[u64],
    max_omega: u32,
    max_big_omega: u32,
) -> Result<BTreeSet<IntPoly>> {
    let primes = check_prime_set(primes)?;
    let f = require_irreducible(f)?;
    let rs = restricted_exponents(&primes, max_omega, max_big_omega);
    let parts: Vec<Result<Vec<IntPoly>>> = rs
        .par_iter()
        .map(|&r| {
            let fac = factor_over_integers(&f.compose_power(r as usize))?;
            Ok(fac.factors.into_iter().map(|(g, _)| g).collect())
        })
        .collect();
    let mut out = BTreeSet::new();
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

/// For a tree built with the single odd exponent `r ≥ 3`: true iff no `S`
/// digit ever follows an `L` digit.
pub fn constant_exponent_shape_check(tree: &SplitTree, r: u64) -> Result<bool> {
    if tree.exponents != [r] || r < 3 || r.is_multiple_of(2) {
        return Err(Error::WrongExponentSet);
    }
    let mut seen_l = vec![false; tree.nodes.len()];
    for (i, node) in tree.nodes.iter().enumerate() {
        if let Some(p) = node.parent {
            if seen_l[p] && node.digit == Some(Digit::S) {
                return Ok(false);
            }
            seen_l[i] = seen_l[p] || node.digit == Some(Digit::L);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn children_examples() {
        assert_eq!(split_children(&IntPoly::x(), 3).unwrap(), vec![(IntPoly::x(), Digit::S)]);
        assert_eq!(
            split_children(&p(&[-2, 1]), 3).unwrap(),
            vec![(IntPoly::binomial(3, 2), Digit::L)]
        );
        assert_eq!(
            split_children(&p(&[-8, 1]), 3).unwrap(),
            vec![(p(&[-2, 1]), Digit::S), (p(&[4, 2, 1]), Digit::S)]
        );
        assert_eq!(split_children(&p(&[-1, 0, 1]), 3), Err(Error::ReducibleInput));
    }

    #[test]
    fn n_spl_semantics() {
        let mk = |d: &[Digit]| SplitPath { polys: vec![], exponents: vec![], digits: d.to_vec() };
        use Digit::*;
        assert_eq!(n_spl(&mk(&[S, L, L])), NSpl::Determined(1));
        assert_eq!(n_spl(&mk(&[L, L])), NSpl::Determined(0));
        assert_eq!(n_spl(&mk(&[S, S])), NSpl::Undetermined);
    }

    #[test]
    fn eisenstein_tower_is_one_chain() {
        let tree = enumerate_tree(&p(&[-2, 1]), &[3], 4).unwrap();
        let paths = tree.paths();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].digit_string(), "LLLL");
        assert!(constant_exponent_shape_check(&tree, 3).unwrap());
    }

    #[test]
    fn cyclotomic_root_tree() {
        // Φ1 → Φ3 → Φ9 appears as a path
        let tree = enumerate_tree(&p(&[-1, 1]), &[3], 2).unwrap();
        let phi9 = p(&[1, 0, 0, 1, 0, 0, 1]);
        assert!(tree.paths().iter().any(|path| path.polys[1] == p(&[1, 1, 1]) && path.polys[2] == phi9));
    }

    #[test]
    fn lambda_examples() {
        let est = lambda_empirical(&p(&[-2, 1]), &[3], 4).unwrap();
        assert_eq!((est.lower_bound, est.saturated), (0, true));
        let est = lambda_empirical(&p(&[-8, 1]), &[3], 4).unwrap();
        assert_eq!((est.lower_bound, est.saturated), (1, true));
        let est = lambda_empirical(&p(&[-512, 1]), &[3], 4).unwrap();
        assert_eq!((est.lower_bound, est.saturated), (2, true));
        assert_eq!(lambda_empirical(&IntPoly::x(), &[3], 2).unwrap_err(), Error::ExcludedPolynomial);
    }

    #[test]
    fn divisor_paths() {
        let path = realize_divisor_path(&p(&[-8, 1]), &p(&[-2, 1]), &[3]).unwrap();
        assert_eq!(path.polys, vec![p(&[-8, 1]), p(&[-2, 1])]);
        let path = realize_divisor_path(&p(&[-512, 1]), &p(&[-2, 1]), &[3, 3]).unwrap();
        assert_eq!(path.polys, vec![p(&[-512, 1]), p(&[-8, 1]), p(&[-2, 1])]);
        let f = p(&[1, 2, 3, 1]);
        assert_eq!(realize_divisor_path(&f, &f, &[]).unwrap().polys, vec![f.clone()]);
        assert_eq!(
            realize_divisor_path(&p(&[-8, 1]), &p(&[-3, 1]), &[3]),
            Err(Error::NotADivisor)
        );
    }

    #[test]
    fn composed_divisor_examples() {
        let got = composed_divisor_set(&p(&[-8, 1]), &[3], 1, 1).unwrap();
        let want: BTreeSet<IntPoly> = [p(&[-8, 1]), p(&[-2, 1]), p(&[4, 2, 1])].into();
        assert_eq!(got, want);
        let got = composed_divisor_set(&p(&[-2, 1]), &[3], 1, 2).unwrap();
        let want: BTreeSet<IntPoly> =
            [p(&[-2, 1]), IntPoly::binomial(3, 2), IntPoly::binomial(9, 2)].into();
        assert_eq!(got, want);
        let f = p(&[1, 2, 3, 1]);
        assert_eq!(composed_divisor_set(&f, &[], 0, 0).unwrap(), [f].into());
        assert!(matches!(composed_divisor_set(&p(&[-2, 1]), &[4], 1, 1), Err(Error::InvalidPrimeSet(_))));
    }

    #[test]
    fn restricted_exponent_lists() {
        assert_eq!(restricted_exponents(&[3, 5], 1, 2), vec![1, 3, 5, 9, 25]);
        assert_eq!(restricted_exponents(&[3, 5], 2, 2), vec![1, 3, 5, 9, 15, 25]);
        assert_eq!(restricted_exponents(&[], 3, 3), vec![1]);
    }

    #[test]
    fn shape_check_guards() {
        let tree = enumerate_tree(&p(&[-8, 1]), &[3], 4).unwrap();
        assert!(constant_exponent_shape_check(&tree, 3).unwrap());
        assert_eq!(constant_exponent_shape_check(&tree, 5), Err(Error::WrongExponentSet));
        let tree = enumerate_tree(&p(&[-8, 1]), &[2], 2).unwrap();
        assert_eq!(constant_exponent_shape_check(&tree, 2), Err(Error::WrongExponentSet));
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_tree_with(
            &p(&[-1, 1]),
            &[3],
            4,
            TreeOptions { node_budget: 3, open_paths_only: false },
        )
        .unwrap_err();
        assert_eq!(err, Error::DepthLimit { budget: 3 });
    }
}
