//! Bernoulli numbers and polynomials, their Apostol twist, and the classical
//! summation identities built on them.
//!
//! Conventions: `B_1 = -1/2`, `B_n(x) = sum_k C(n,k) B_{n-k} x^k`.

use std::sync::{LazyLock, RwLock};

use crate::arith::{binomial, factorial, pochhammer, stirling2, Convention, Poly, Rational};

/// Memo table for Bernoulli numbers. Entries are appended in order and never
/// rewritten; readers only ever see fully computed prefixes.
#[derive(Debug, Default)]
pub struct BernoulliCache {
    table: RwLock<Vec<Rational>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `B_n`, extending the table as needed.
    pub fn get(&self, n: usize) -> Rational {
        if let Some(b) = self.table.read().expect("bernoulli cache poisoned").get(n) {
            return b.clone();
        }
        let mut table = self.table.write().expect("bernoulli cache poisoned");
        while table.len() <= n {
            let m = table.len() as u64;
            let next = if m == 0 {
                Rational::one()
            } else {
                // sum_{k=0}^{m} C(m+1, k) B_k = 0
                let s: Rational = table
                    .iter()
                    .enumerate()
                    .map(|(k, b)| binomial(m + 1, k as u64) * b)
                    .sum();
                -s / Rational::from(m + 1)
            };
            table.push(next);
        }
        table[n].clone()
    }

    /// Number of entries computed so far.
    pub fn len(&self) -> usize {
        self.table.read().expect("bernoulli cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

static CACHE: LazyLock<BernoulliCache> = LazyLock::new(BernoulliCache::new);

/// The `n`-th Bernoulli number, from the shared process-wide cache.
pub fn bernoulli_number(n: u64) -> Rational {
    CACHE.get(n as usize)
}

/// `B_n(x) = (B + x)^n`.
pub fn bernoulli_poly(n: u64) -> Poly {
    Poly::from_coeffs(
        (0..=n)
            .map(|k| binomial(n, k) * bernoulli_number(n - k))
            .collect(),
    )
}

/// `(B_{p+1}(x) - B_{p+1}) / (p+1)`, which equals `sum_{i=0}^{x-1} i^p`
/// for natural `x` (with `0^0 = 1`).
pub fn faulhaber_poly(p: u64) -> Poly {
    let mut b = bernoulli_poly(p + 1).into_coeffs();
    b[0] = Rational::zero();
    Poly::from_coeffs(b).scale(&Rational::new(1, p + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApostolParams {
    pub lambda: Rational,
}

impl ApostolParams {
    pub fn new(lambda: Rational) -> Self {
        ApostolParams { lambda }
    }
}

/// Apostol-Bernoulli polynomials `B_0(x|λ), ..., B_max(x|λ)` with generating
/// function `t e^{xt} / (λ e^t - 1)`.
///
/// For `λ != 1` they come from `λ sum_{k<=n} C(n,k) B_k(x|λ) - B_n(x|λ) = n x^{n-1}`;
/// `λ = 1` returns the ordinary Bernoulli polynomials.
pub fn apostol_bernoulli_polys(max: u64, params: &ApostolParams) -> Vec<Poly> {
    let lambda = &params.lambda;
    if lambda.is_one() {
        return (0..=max).map(bernoulli_poly).collect();
    }
    let denom = lambda - Rational::one();
    let mut out: Vec<Poly> = Vec::with_capacity(max as usize + 1);
    for n in 0..=max {
        let mut rhs = if n == 0 {
            Poly::zero()
        } else {
            Poly::monomial(n as usize - 1, Rational::from(n))
        };
        for (k, bk) in out.iter().enumerate() {
            rhs = &rhs - &bk.scale(&(lambda * binomial(n, k as u64)));
        }
        out.push(rhs.scale(&denom.recip().expect("λ != 1")));
    }
    out
}

pub fn apostol_bernoulli_poly(n: u64, params: &ApostolParams) -> Poly {
    apostol_bernoulli_polys(n, params).pop().expect("non-empty")
}

/// `sum_{j=1}^{m-1} λ^j j^n`, evaluated through the Apostol-Bernoulli closed
/// form `(λ^m B_{n+1}(m|λ) - B_{n+1}(0|λ)) / (n+1)`.
///
/// The closed form sums from `j = 0`, where `0^0 = 1` contributes one extra
/// unit for `n = 0`; that term is removed so the result is the sum as written.
pub fn apostol_faulhaber(n: u64, lambda: &Rational, m: u64) -> Rational {
    assert!(m >= 1, "upper limit must be at least 1");
    let b = apostol_bernoulli_poly(n + 1, &ApostolParams::new(lambda.clone()));
    let closed = (lambda.pow(m as i64) * b.eval(&Rational::from(m)) - b.coeff(0))
        / Rational::from(n + 1);
    if n == 0 {
        closed - Rational::one()
    } else {
        closed
    }
}

/// Pochhammer convention under which the Stirling form below reproduces
/// Faulhaber's polynomial. Fixed by `hansen_convention_is_rising` in the tests:
/// only the rising product satisfies the identity at `(p, z) = (1, 1), (2, 2)`.
pub const FROZEN_CONVENTION: Convention = Convention::Rising;

/// `sum_{l=0}^{p} S(p,l) l! (-1)^{l+1} / (l+1)! (-z)_{l+1}`, which equals
/// `(B_{p+1}(z) - B_{p+1}) / (p+1)`.
pub fn hansen_reduce(p: u64, z: &Rational) -> Rational {
    hansen_sum(p, z, FROZEN_CONVENTION)
}

fn hansen_sum(p: u64, z: &Rational, convention: Convention) -> Rational {
    let neg_z = -z;
    (0..=p)
        .map(|l| {
            stirling2(p, l)
                * Rational::from(factorial(l))
                * Rational::sign_power(l + 1)
                / Rational::from(factorial(l + 1))
                * pochhammer(&neg_z, l + 1, convention)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn numbers() {
        assert_eq!(bernoulli_number(0), q("1"));
        assert_eq!(bernoulli_number(1), q("-1/2"));
        assert_eq!(bernoulli_number(2), q("1/6"));
        assert_eq!(bernoulli_number(12), q("-691/2730"));
        for k in 1..=10 {
            assert!(bernoulli_number(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn von_staudt_clausen_denominator() {
        // B_12 + sum over primes p with (p-1) | 12 of 1/p is an integer.
        let primes = [2u64, 3, 5, 7, 13];
        let s: Rational = primes.iter().map(|&p| Rational::new(1, p)).sum();
        assert!((bernoulli_number(12) + s).is_integer());
    }

    #[test]
    fn separate_cache_agrees() {
        let cache = BernoulliCache::new();
        assert!(cache.is_empty());
        assert_eq!(cache.get(20), bernoulli_number(20));
        assert_eq!(cache.len(), 21);
        assert_eq!(cache.get(4), q("-1/30"));
    }

    #[test]
    fn polynomials() {
        assert_eq!(bernoulli_poly(0), Poly::one());
        assert_eq!(
            bernoulli_poly(2),
            Poly::from_coeffs(vec![q("1/6"), q("-1"), q("1")])
        );
        for n in 0..=12 {
            assert_eq!(bernoulli_poly(n).eval(&Rational::zero()), bernoulli_number(n));
        }
    }

    #[test]
    fn faulhaber_consistency() {
        // sum_{k=0}^{N-1} k^n, counting 0^0 = 1.
        for n in 0..=8u64 {
            for big_n in 1..=20u64 {
                let direct: Rational = (0..big_n).map(|k| Rational::from(k).pow(n as i64)).sum();
                let closed = (bernoulli_poly(n + 1).eval(&Rational::from(big_n))
                    - bernoulli_number(n + 1))
                    / Rational::from(n + 1);
                assert_eq!(closed, direct, "n={n} N={big_n}");
                assert_eq!(faulhaber_poly(n).eval(&Rational::from(big_n)), direct);
            }
        }
    }

    #[test]
    fn apostol_small_cases() {
        let two = ApostolParams::new(q("2"));
        assert!(apostol_bernoulli_poly(0, &two).is_zero());
        assert_eq!(apostol_bernoulli_poly(1, &two), Poly::one());
        for n in 0..8 {
            assert_eq!(
                apostol_bernoulli_poly(n, &ApostolParams::new(q("1"))),
                bernoulli_poly(n)
            );
        }
    }

    #[test]
    fn apostol_generating_function_product() {
        // (λ e^t - 1) * sum B_n(x|λ) t^n/n! = t e^{xt}, checked coefficient-wise.
        let params = ApostolParams::new(q("3/5"));
        let polys = apostol_bernoulli_polys(7, &params);
        for n in 0..=7u64 {
            let mut lhs = polys[n as usize].scale(&-Rational::one());
            for k in 0..=n {
                lhs = &lhs + &polys[k as usize].scale(&(&params.lambda * binomial(n, k)));
            }
            let rhs = if n == 0 {
                Poly::zero()
            } else {
                Poly::monomial(n as usize - 1, Rational::from(n))
            };
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn apostol_faulhaber_examples() {
        assert_eq!(apostol_faulhaber(1, &q("2"), 3), q("10"));
        assert_eq!(apostol_faulhaber(2, &q("1"), 5), q("30"));
        for n in 0..4 {
            assert_eq!(apostol_faulhaber(n, &q("7/2"), 1), Rational::zero());
        }
    }

    #[test]
    fn apostol_faulhaber_matches_direct_sum() {
        for lambda in ["1", "2", "1/2", "-1", "3/5"] {
            let lambda = q(lambda);
            for n in 0..=6u64 {
                for m in 1..=12u64 {
                    let direct: Rational = (1..m)
                        .map(|j| lambda.pow(j as i64) * Rational::from(j).pow(n as i64))
                        .sum();
                    assert_eq!(apostol_faulhaber(n, &lambda, m), direct);
                }
            }
        }
    }

    #[test]
    fn hansen_convention_is_rising() {
        let target = |p: u64, z: &Rational| {
            (bernoulli_poly(p + 1).eval(z) - bernoulli_number(p + 1)) / Rational::from(p + 1)
        };
        let probes = [(1u64, q("1")), (2, q("2"))];
        let rising_ok = probes
            .iter()
            .all(|(p, z)| hansen_sum(*p, z, Convention::Rising) == target(*p, z));
        let falling_ok = probes
            .iter()
            .all(|(p, z)| hansen_sum(*p, z, Convention::Falling) == target(*p, z));
        assert!(rising_ok);
        assert!(!falling_ok);
        assert_eq!(FROZEN_CONVENTION, Convention::Rising);
    }

    #[test]
    fn hansen_examples_and_sweep() {
        assert_eq!(hansen_reduce(0, &q("1")), q("1"));
        assert_eq!(hansen_reduce(1, &q("0")), q("0"));
        assert_eq!(hansen_reduce(2, &q("2")), q("1"));
        for p in 0..=6u64 {
            for z in ["0", "1", "-1", "2", "-2", "1/2", "5/3"] {
                let z = q(z);
                let expected = (bernoulli_poly(p + 1).eval(&z) - bernoulli_number(p + 1))
                    / Rational::from(p + 1);
                assert_eq!(hansen_reduce(p, &z), expected, "p={p} z={z}");
            }
        }
    }
}
