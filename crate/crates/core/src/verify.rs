//! Named property sweeps.
//!
//! Each suite expands into independent cases, enumerated in lexicographic
//! order of `(depth, index, N)`. With the `parallel` feature and more than one
//! job the cases run on a dedicated rayon pool; results are collected in
//! case order either way, so reports do not depend on the job count.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::arith::{Poly, Rational};
use crate::bernoulli::{apostol_faulhaber, bernoulli_number, bernoulli_poly, hansen_reduce};
use crate::egf::{verify_f_recurrence, verify_g_recurrence};
use crate::error::{Error, Result};
use crate::extbern::{beta_example_identity, beta_recurrence_check, derivative_link_check, Variant};
use crate::mzv::{zeta_constant_term, zeta_raabe, zeta_renorm};
use crate::powersum::{
    explicit_expansion_h, oracle_h, oracle_li, oracle_s, recurrence_h, symbolic_h, symbolic_h_at, symbolic_li,
    symbolic_s, MultiIndex,
};
use crate::umbral::UmbralPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    OracleH,
    OracleS,
    OracleLi,
    Recurrence1,
    ExplicitExpansion,
    BetaRecurrence,
    DerivativeLink,
    BetaExample,
    EgfF,
    EgfG,
    ZetaTriple,
    Cancellation,
    Hansen,
    ApostolFaulhaber,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::OracleH,
        Suite::OracleS,
        Suite::OracleLi,
        Suite::Recurrence1,
        Suite::ExplicitExpansion,
        Suite::BetaRecurrence,
        Suite::DerivativeLink,
        Suite::BetaExample,
        Suite::EgfF,
        Suite::EgfG,
        Suite::ZetaTriple,
        Suite::Cancellation,
        Suite::Hansen,
        Suite::ApostolFaulhaber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleH => "oracle-h",
            Suite::OracleS => "oracle-s",
            Suite::OracleLi => "oracle-li",
            Suite::Recurrence1 => "recurrence1",
            Suite::ExplicitExpansion => "explicit-expansion",
            Suite::BetaRecurrence => "beta-recurrence",
            Suite::DerivativeLink => "derivative-link",
            Suite::BetaExample => "beta-example",
            Suite::EgfF => "egf-f",
            Suite::EgfG => "egf-g",
            Suite::ZetaTriple => "zeta-triple",
            Suite::Cancellation => "cancellation",
            Suite::Hansen => "hansen",
            Suite::ApostolFaulhaber => "apostol-faulhaber",
        }
    }

    /// Limits used when a flag is not given.
    ///
    /// `max_weight` bounds each exponent, except for `zeta-triple` where it
    /// bounds their sum, and for the single-parameter suites where it is
    /// the largest exponent tested.
    pub fn default_limits(self) -> Limits {
        let l = |max_depth, max_weight, max_upper, bound| Limits { max_depth, max_weight, max_upper, bound };
        match self {
            Suite::OracleH | Suite::Recurrence1 | Suite::ExplicitExpansion => l(3, 4, 12, 6),
            Suite::OracleS | Suite::OracleLi => l(3, 3, 10, 6),
            Suite::BetaRecurrence => l(3, 4, 0, 6),
            Suite::DerivativeLink => l(3, 3, 0, 6),
            Suite::BetaExample => l(2, 4, 10, 6),
            Suite::EgfF => l(3, 0, 8, 6),
            Suite::EgfG => l(3, 0, 0, 6),
            Suite::ZetaTriple => l(4, 6, 0, 6),
            Suite::Cancellation => l(1, 8, 0, 6),
            Suite::Hansen => l(1, 6, 0, 6),
            Suite::ApostolFaulhaber => l(1, 6, 12, 6),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_depth: usize,
    pub max_weight: u32,
    pub max_upper: u64,
    pub bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Outcome = Option<(String, String)>;

/// One independent check: a key and a closure returning `(expected, got)`
/// on failure.
pub struct Case {
    pub key: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

impl Case {
    fn new(key: String, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Self {
        Case { key, run: Box::new(run) }
    }

    pub fn run(&self) -> Option<Failure> {
        (self.run)().map(|(expected, got)| Failure { case: self.key.clone(), expected, got })
    }
}

fn expect_eq<T: PartialEq + fmt::Display>(expected: T, got: T) -> Outcome {
    (expected != got).then(|| (expected.to_string(), got.to_string()))
}

fn polylog_samples() -> Vec<Rational> {
    ["1", "1/2", "2", "-1", "3/4"].iter().map(|s| s.parse().expect("literal")).collect()
}

fn g_samples() -> Vec<Rational> {
    ["0", "1", "2", "1/2", "-1"].iter().map(|s| s.parse().expect("literal")).collect()
}

/// Indices with depth in `min_depth..=max_depth` and entries in
/// `min_entry..=max_entry`.
fn indices(min_depth: usize, max_depth: usize, min_entry: u32, max_entry: u32) -> Vec<MultiIndex> {
    MultiIndex::enumerate(max_depth, max_entry)
        .into_iter()
        .filter(|i| i.depth() >= min_depth && i.as_slice().iter().all(|&n| n >= min_entry))
        .collect()
}

/// Expands `suite` into its cases under `limits`.
pub fn cases(suite: Suite, limits: &Limits) -> Vec<Case> {
    let Limits { max_depth, max_weight, max_upper, bound } = *limits;
    let mut out = Vec::new();
    match suite {
        Suite::OracleH => {
            for index in indices(1, max_depth, 0, max_weight) {
                for n in 1..=max_upper {
                    let index = index.clone();
                    out.push(Case::new(format!("({index}) N={n}"), move || {
                        let big = Rational::from(n);
                        let truth = oracle_h(&index, n);
                        let mut got = vec![("symbolic", symbolic_h_at(&index, &big))];
                        got.push(("explicit", explicit_expansion_h(&index).eval(&big)));
                        if index.depth() >= 2 {
                            got.push(("recurrence", recurrence_h(&index, &big).expect("depth >= 2")));
                        }
                        let bad: Vec<String> = got
                            .into_iter()
                            .filter(|(_, v)| *v != truth)
                            .map(|(m, v)| format!("{m}={v}"))
                            .collect();
                        (!bad.is_empty()).then(|| (truth.to_string(), bad.join(" ")))
                    }));
                }
            }
        }
        Suite::Recurrence1 => {
            for index in indices(2, max_depth, 0, max_weight) {
                for n in 1..=max_upper {
                    let index = index.clone();
                    out.push(Case::new(format!("({index}) N={n}"), move || {
                        let got = recurrence_h(&index, &Rational::from(n)).expect("depth >= 2");
                        expect_eq(oracle_h(&index, n), got)
                    }));
                }
            }
        }
        Suite::ExplicitExpansion => {
            for index in indices(1, max_depth, 0, max_weight) {
                out.push(Case::new(format!("({index})"), move || {
                    expect_eq(symbolic_h(&index).poly, explicit_expansion_h(&index).poly)
                }));
            }
        }
        Suite::OracleS => {
            for index in indices(1, max_depth, 0, max_weight) {
                for n in 0..=max_upper {
                    let index = index.clone();
                    out.push(Case::new(format!("({index}) N={n}"), move || {
                        expect_eq(oracle_s(&index, n), symbolic_s(&index).eval(&Rational::from(n)))
                    }));
                }
            }
        }
        Suite::OracleLi => {
            for index in indices(1, max_depth, 0, max_weight) {
                for n in 0..=max_upper {
                    for z in polylog_samples() {
                        let index = index.clone();
                        out.push(Case::new(format!("({index}) N={n} z={z}"), move || {
                            let truth = oracle_li(&index, &z, n);
                            let got = symbolic_li(&index, &z, n).expect("z != 0");
                            if got != truth {
                                return Some((truth.to_string(), got.to_string()));
                            }
                            if z.is_one() {
                                let h = symbolic_h_at(&index, &Rational::from(n));
                                if n > 0 && h != got {
                                    return Some((format!("H={h}"), got.to_string()));
                                }
                            }
                            None
                        }));
                    }
                }
            }
        }
        Suite::BetaRecurrence => {
            for index in indices(2, max_depth, 1, max_weight) {
                out.push(Case::new(format!("({index})"), move || {
                    let c = beta_recurrence_check(&index, Variant::Shifted).expect("valid index");
                    expect_eq(c.rhs, c.lhs)
                }));
            }
        }
        Suite::DerivativeLink => {
            for index in indices(1, max_depth, 1, max_weight) {
                out.push(Case::new(format!("({index})"), move || {
                    let c = derivative_link_check(&index).expect("valid index");
                    expect_eq(c.rhs, c.lhs)
                }));
            }
        }
        Suite::BetaExample => {
            for m in 0..=max_weight {
                for n in 0..=max_upper {
                    out.push(Case::new(format!("m={m} N={n}"), move || {
                        let c = beta_example_identity(m, n);
                        expect_eq(c.lhs, c.rhs)
                    }));
                }
            }
        }
        Suite::EgfF => {
            for r in 2..=max_depth.max(2) {
                for n in 2..=max_upper {
                    out.push(Case::new(format!("r={r} N={n} D={bound}"), move || {
                        let rep = verify_f_recurrence(r, n, bound).expect("r >= 2");
                        rep.mismatches.first().map(|m| {
                            (format!("{:?}: {}", m.tuple, m.rhs), format!("{:?}: {}", m.tuple, m.lhs))
                        })
                    }));
                }
            }
        }
        Suite::EgfG => {
            for r in 2..=max_depth.max(2) {
                for z in g_samples() {
                    out.push(Case::new(format!("r={r} z={z} D={bound}"), move || {
                        let rep = verify_g_recurrence(r, &z, bound).expect("r >= 2");
                        rep.mismatches.first().map(|m| {
                            (format!("{:?}: {}", m.tuple, m.rhs), format!("{:?}: {}", m.tuple, m.lhs))
                        })
                    }));
                }
            }
        }
        Suite::ZetaTriple => {
            for index in MultiIndex::enumerate(max_depth, max_weight) {
                if index.weight() > max_weight as u64 {
                    continue;
                }
                out.push(Case::new(format!("({index})"), move || {
                    let r = zeta_raabe(&index);
                    let n = zeta_renorm(&index);
                    let c = zeta_constant_term(&index);
                    (r != n || r != c).then(|| {
                        (format!("raabe={r}"), format!("renorm={n} constant-term={c}"))
                    })
                }));
            }
        }
        Suite::Cancellation => {
            for n in 0..=max_weight {
                out.push(Case::new(format!("n={n}"), move || cancellation_case(n)));
            }
        }
        Suite::Hansen => {
            for p in 0..=max_weight as u64 {
                for z in ["0", "1", "-1", "2", "-2", "1/2", "5/3"] {
                    let z: Rational = z.parse().expect("literal");
                    out.push(Case::new(format!("p={p} z={z}"), move || {
                        let expected = (bernoulli_poly(p + 1).eval(&z) - bernoulli_number(p + 1))
                            / Rational::from(p + 1);
                        expect_eq(expected, hansen_reduce(p, &z))
                    }));
                }
            }
        }
        Suite::ApostolFaulhaber => {
            for lambda in ["1", "2", "1/2", "-1", "3/5"] {
                let lambda: Rational = lambda.parse().expect("literal");
                for n in 0..=max_weight as u64 {
                    for m in 1..=max_upper {
                        let lambda = lambda.clone();
                        out.push(Case::new(format!("lambda={lambda} n={n} m={m}"), move || {
                            let direct: Rational = (1..m)
                                .map(|j| lambda.pow(j as i64) * Rational::from(j).pow(n as i64))
                                .sum();
                            expect_eq(direct, apostol_faulhaber(n, &lambda, m))
                        }));
                    }
                }
            }
        }
    }
    out
}

/// `(x + b + u)^n`, reduced in both orders, must return `x^n`.
fn cancellation_case(n: u32) -> Outcome {
    let vars = ["x", "b", "u"];
    let sum = vars
        .iter()
        .map(|v| UmbralPoly::var(&vars, v).expect("declared"))
        .reduce(|a, b| a.try_add(&b).expect("same variables"))
        .expect("non-empty");
    let p = sum.pow(n);
    let expected = Poly::monomial(n as usize, Rational::one());
    let bu = p.reduce_bernoulli("b").and_then(|q| q.reduce_uniform("u")).and_then(|q| q.to_poly("x"));
    let ub = p.reduce_uniform("u").and_then(|q| q.reduce_bernoulli("b")).and_then(|q| q.to_poly("x"));
    for got in [bu, ub] {
        match got {
            Ok(g) if g == expected => {}
            Ok(g) => return Some((expected.to_string(), g.to_string())),
            Err(e) => return Some((expected.to_string(), e.to_string())),
        }
    }
    None
}

/// Runs every case, on `jobs` worker threads when the `parallel` feature is
/// enabled and `jobs > 1`.
pub fn run_cases(cases: &[Case], jobs: usize) -> Vec<Option<Failure>> {
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        return pool.install(|| cases.par_iter().map(Case::run).collect());
    }
    let _ = jobs;
    cases.iter().map(Case::run).collect()
}

pub fn run_suite(suite: Suite, limits: &Limits, jobs: usize) -> VerifyReport {
    let start = Instant::now();
    let cases = cases(suite, limits);
    let failures: Vec<Failure> = run_cases(&cases, jobs).into_iter().flatten().collect();
    VerifyReport {
        suite: suite.name().to_string(),
        cases: cases.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> Limits {
        let mut l = suite.default_limits();
        l.max_depth = l.max_depth.min(2);
        l.max_weight = l.max_weight.min(2);
        l.max_upper = l.max_upper.min(5);
        l.bound = l.bound.min(4);
        l
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("nope".parse::<Suite>(), Err(Error::UnknownSuite("nope".into())));
    }

    #[test]
    fn small_sweeps_pass() {
        for s in Suite::ALL {
            let rep = run_suite(s, &small(s), 1);
            assert!(rep.cases > 0, "{s}");
            assert!(rep.passed(), "{s}: {:?}", rep.failures);
        }
    }

    #[test]
    fn jobs_do_not_change_reports() {
        let s = Suite::OracleH;
        let a = run_suite(s, &small(s), 1);
        let b = run_suite(s, &small(s), 4);
        assert_eq!((a.cases, a.failures), (b.cases, b.failures));
    }

    #[test]
    fn case_order_is_lexicographic() {
        let keys: Vec<String> = cases(Suite::ExplicitExpansion, &small(Suite::ExplicitExpansion))
            .into_iter()
            .map(|c| c.key)
            .collect();
        assert_eq!(keys[..4], ["(0)", "(1)", "(2)", "(0,0)"]);
    }
}
