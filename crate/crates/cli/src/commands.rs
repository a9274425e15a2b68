use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use puiseux::monalg::{divisor_count_bound, is_accp_supported, AccpSupport};
use puiseux::monoid::{accp_status, atomic_factorizations, canonical_form, is_member};
use puiseux::numfield::lambda_star_linear;
use puiseux::splitting::{enumerate_tree_with, lambda_empirical_with, n_spl, NSpl, TreeOptions, DEFAULT_NODE_BUDGET};
use puiseux::{factor_over_integers, IntPoly, MonAlgPoly, PuiseuxParam};
use serde_json::{json, Value};

use crate::parse::{parse_int_poly, parse_monalg, parse_param, parse_rational};
use crate::report::{emit_report, int_poly_json, monalg_json, rational_string, Format};
use crate::suite::{verify_suite, Selection, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "puiseux", version, about = "Composed polynomials, splitting sequences and Puiseux monoid algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct Search {
    /// Exponent set, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor an integer polynomial into irreducibles.
    Factor {
        expr: String,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate splitting sequences with exponents from --primes.
    Split {
        expr: String,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        out: Output,
    },
    /// Empirical lower bound on the number of initial splits.
    Lambda {
        expr: String,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        out: Output,
    },
    /// Exact lambda-star of x - a over the prime set.
    LambdaStar {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(long, value_delimiter = ',', default_value = "3")]
        primes: Vec<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Membership, canonical form, factorizations and ACCP status in M_q.
    Monoid {
        /// A nonnegative rational such as 9/4.
        x: String,
        #[arg(long)]
        q: String,
        /// Maximum number of factorizations listed.
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Factor a polynomial with rational exponents in the level algebras of q.
    Algebra {
        expr: String,
        #[arg(long)]
        q: String,
        /// Highest level to factor at; defaults to three above the required level.
        #[arg(long)]
        level: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the built-in verification suites.
    VerifyPaper {
        #[arg(value_enum, default_value = "all")]
        suite: Selection,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: usize,
        #[command(flatten)]
        out: Output,
    },
}

/// What a command printed and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(stderr: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::usage(text)
            }
        }
    }
}

fn render(json: bool, value: Value, text: String) -> Outcome {
    if json {
        Outcome::ok(serde_json::to_string_pretty(&value).expect("json value"))
    } else {
        Outcome::ok(text)
    }
}

pub fn execute(cmd: Command) -> Outcome {
    match try_execute(cmd) {
        Ok(o) => o,
        Err(msg) => Outcome::usage(format!("error: {msg}")),
    }
}

fn try_execute(cmd: Command) -> Result<Outcome, String> {
    let s = |e: &dyn std::fmt::Display| e.to_string();
    match cmd {
        Command::Factor { expr, out } => {
            let f = parse_int_poly(&expr).map_err(|e| s(&e))?;
            let fac = factor_over_integers(&f).map_err(|e| s(&e))?;
            let sign = fac.sign.as_i32();
            let factors: Vec<Value> = fac
                .factors
                .iter()
                .map(|(g, m)| json!({"factor": int_poly_json(g), "text": g.to_string(), "multiplicity": m}))
                .collect();
            let mut text = format!("{f}\n= ");
            let mut parts = Vec::new();
            let unit = BigInt::from(sign) * &fac.content;
            if unit != BigInt::from(1) || fac.factors.is_empty() {
                parts.push(unit.to_string());
            }
            for (g, m) in &fac.factors {
                parts.push(if *m == 1 { format!("({g})") } else { format!("({g})^{m}") });
            }
            text.push_str(&parts.join(" * "));
            Ok(render(
                out.json,
                json!({"input": int_poly_json(&f), "sign": sign, "content": fac.content.to_string(), "factors": factors}),
                text,
            ))
        }
        Command::Split { expr, search, out } => {
            let f = parse_int_poly(&expr).map_err(|e| s(&e))?;
            let opts = TreeOptions { node_budget: search.node_budget, open_paths_only: false };
            let tree = enumerate_tree_with(&f, &search.primes, search.depth, opts).map_err(|e| s(&e))?;
            let mut lines = vec![format!("{} nodes, exponents {:?}, depth {}", tree.len(), tree.exponents, tree.depth)];
            let mut paths = Vec::new();
            for p in tree.paths() {
                let spl = match n_spl(&p) {
                    NSpl::Determined(k) => json!(k),
                    NSpl::Undetermined => Value::Null,
                };
                let chain: Vec<String> = p.polys.iter().map(|g| g.to_string()).collect();
                lines.push(format!(
                    "{:<8} N_spl={:<4} exps={:?}  {}",
                    if p.is_empty() { "-".to_string() } else { p.digit_string() },
                    spl.as_u64().map_or("?".to_string(), |k| k.to_string()),
                    p.exponents,
                    chain.join(" -> ")
                ));
                paths.push(json!({
                    "digits": p.digit_string(),
                    "exponents": p.exponents,
                    "n_spl": spl,
                    "polys": p.polys.iter().map(int_poly_json).collect::<Vec<_>>(),
                }));
            }
            Ok(render(
                out.json,
                json!({"nodes": tree.len(), "exponents": tree.exponents, "depth": tree.depth, "paths": paths}),
                lines.join("\n"),
            ))
        }
        Command::Lambda { expr, search, out } => {
            let f = parse_int_poly(&expr).map_err(|e| s(&e))?;
            let est = lambda_empirical_with(&f, &search.primes, search.depth, search.node_budget).map_err(|e| s(&e))?;
            // Exact value is available for x - a with a an integer.
            let star = match (f.degree(), f.lc()) {
                (Some(1), Some(lc)) if lc.magnitude() == &1u32.into() => {
                    let a = -(f.coeff(0) * lc);
                    a.to_i64().and_then(|a| lambda_star_linear(a, &search.primes).ok())
                }
                _ => None,
            };
            let mut text = format!(
                "lambda >= {} (longest all-S prefix {}, {})",
                est.lower_bound,
                est.open_prefix,
                if est.saturated { "saturated" } else { "not saturated at this depth" }
            );
            if let Some(v) = star {
                text.push_str(&format!("\nlambda* = {v}"));
            }
            Ok(render(
                out.json,
                json!({
                    "lower_bound": est.lower_bound,
                    "open_prefix": est.open_prefix,
                    "saturated": est.saturated,
                    "nodes": est.tree.len(),
                    "lambda_star": star,
                }),
                text,
            ))
        }
        Command::LambdaStar { a, primes, out } => {
            let v = lambda_star_linear(a, &primes).map_err(|e| s(&e))?;
            let f = IntPoly::from_i64s(&[-a, 1]);
            let bound = divisor_count_bound(&f, &primes, v).ok();
            let mut text = format!("lambda*(x - ({a}), {primes:?}) = {v}");
            if let Some(b) = &bound {
                text.push_str(&format!("\nlevel-algebra divisor bound = {b}"));
            }
            Ok(render(
                out.json,
                json!({"a": a, "primes": primes, "lambda_star": v, "divisor_bound": bound.map(|b| b.to_string())}),
                text,
            ))
        }
        Command::Monoid { x, q, limit, out } => {
            let p = parse_param(&q)?;
            let x = parse_rational(&x)?;
            let member = is_member(&x, &p);
            let mut text = format!("q = {p} ({:?}); {} {} M_q", p.class(), rational_string(&x), if member { "in" } else { "not in" });
            let mut value = json!({"q": p.to_string(), "class": format!("{:?}", p.class()), "x": rational_string(&x), "member": member});
            if member {
                let rep = canonical_form(&x, &p).expect("member has a canonical form");
                text.push_str(&format!("\ncanonical: a0 = {}, digits = {:?}", rep.a0, rep.digits));
                value["canonical"] = json!({"a0": rep.a0.to_string(), "digits": rep.digits});
                match atomic_factorizations(&x, &p, limit) {
                    Ok(fs) => {
                        let shown: Vec<Value> = fs
                            .iter()
                            .map(|f| json!(f.iter().map(|(i, c)| (i.to_string(), c)).collect::<std::collections::BTreeMap<_, _>>()))
                            .collect();
                        text.push_str(&format!("\nfactorizations (exponent: count), first {}:", fs.len()));
                        for f in &fs {
                            text.push_str(&format!("\n  {f:?}"));
                        }
                        value["factorizations"] = Value::Array(shown);
                    }
                    Err(e) => {
                        text.push_str(&format!("\nfactorizations: {e}"));
                        value["factorizations"] = Value::Null;
                    }
                }
                let accp = accp_status(&x, &p, 8).map_err(|e| s(&e))?;
                let chain: Vec<String> = accp.witness.iter().map(rational_string).collect();
                text.push_str(&format!("\nACCP: {:?}", accp.status));
                if !chain.is_empty() {
                    text.push_str(&format!(" (chain {})", chain.join(" > ")));
                }
                value["accp"] = json!({"status": format!("{:?}", accp.status), "witness": chain});
            }
            Ok(render(out.json, value, text))
        }
        Command::Algebra { expr, q, level, out } => {
            let p: PuiseuxParam = parse_param(&q)?;
            let f: MonAlgPoly = parse_monalg(&expr, &p).map_err(|e| s(&e))?;
            let stats = f.stats().map_err(|e| s(&e))?;
            let start = f.level().map_err(|e| s(&e))?;
            let max_level = level.unwrap_or(start + 3);
            let mut text = format!(
                "{f}\nq = {p}, r = {}, order {}, degree {}, content {}, level {start}",
                p.r(),
                rational_string(&stats.order),
                rational_string(&stats.degree),
                stats.content
            );
            let mut value = json!({
                "input": monalg_json(&f),
                "q": p.to_string(),
                "r": p.r(),
                "order": rational_string(&stats.order),
                "degree": rational_string(&stats.degree),
                "content": stats.content.to_string(),
                "level": start,
            });
            if f.is_monomial() {
                return Ok(render(out.json, value, text));
            }
            let rep = f.stable_factorization(max_level).map_err(|e| s(&e))?;
            let mut levels = Vec::new();
            for l in &rep.levels {
                let parts: Vec<String> = l.factors.iter().map(|(g, m)| format!("({g})^{m}")).collect();
                text.push_str(&format!("\nlevel {}: {} * {}", l.level, BigInt::from(l.sign.as_i32()) * &l.content, parts.join(" ")));
                levels.push(json!({
                    "level": l.level,
                    "sign": l.sign.as_i32(),
                    "content": l.content.to_string(),
                    "factors": l.factors.iter().zip(&l.excluded).map(|((g, m), ex)| json!({
                        "factor": monalg_json(g), "text": g.to_string(), "multiplicity": m, "excluded": ex,
                    })).collect::<Vec<_>>(),
                }));
            }
            let accp = is_accp_supported(&f, 8).map_err(|e| s(&e))?;
            text.push_str(&format!(
                "\ngamma = {}, core gamma = {}, ACCP-supported: {}",
                rep.gamma.map_or("not stable".into(), |g| g.to_string()),
                rep.core_gamma.map_or("not stable".into(), |g| g.to_string()),
                match accp {
                    AccpSupport::Yes => "yes",
                    AccpSupport::No => "no",
                    AccpSupport::Unknown => "unknown",
                }
            ));
            value["levels"] = Value::Array(levels);
            value["gamma"] = json!(rep.gamma);
            value["core_gamma"] = json!(rep.core_gamma);
            value["accp_supported"] = json!(format!("{accp:?}"));
            Ok(render(out.json, value, text))
        }
        Command::VerifyPaper { suite, seed, depth, node_budget, out } => {
            let cfg = SuiteConfig { seed, depth, node_budget, ..SuiteConfig::default() };
            let report = verify_suite(suite, &cfg);
            let format = if out.json { Format::Json } else { Format::Human };
            Ok(Outcome { code: report.exit_status(), stdout: emit_report(&report, format), stderr: String::new() })
        }
    }
}
