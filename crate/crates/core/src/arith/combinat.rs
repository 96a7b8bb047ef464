use num_bigint::BigInt;
use num_traits::One;

use super::{Poly, Rational};

/// `C(n, k)` as an exact integer, zero when `k > n`.
pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step.
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)`; `k > n` gives zero rather than an error.
pub fn binomial(n: u64, k: u64) -> Rational {
    Rational::from(binomial_int(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Stirling number of the second kind `S(p, l)`, from
/// `S(p, l) = l S(p-1, l) + S(p-1, l-1)` with `S(0, 0) = 1`.
pub fn stirling2(p: u64, l: u64) -> Rational {
    if l > p {
        return Rational::zero();
    }
    let (p, l) = (p as usize, l as usize);
    let mut row = vec![BigInt::from(0); l + 1];
    row[0] = BigInt::one();
    for n in 1..=p {
        for k in (1..=l.min(n)).rev() {
            row[k] = BigInt::from(k) * &row[k] + &row[k - 1];
        }
        row[0] = BigInt::from(0);
    }
    Rational::from(row[l].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `x (x+1) ... (x+l-1)`
    Rising,
    /// `x (x-1) ... (x-l+1)`
    Falling,
}

/// Pochhammer product of length `l`; the empty product is 1.
pub fn pochhammer(x: &Rational, l: u64, convention: Convention) -> Rational {
    (0..l)
        .map(|i| match convention {
            Convention::Rising => x + Rational::from(i),
            Convention::Falling => x - Rational::from(i),
        })
        .product()
}

/// The binomial polynomial `C(x, j) = x (x-1) ... (x-j+1) / j!`.
pub fn binomial_basis(j: u64) -> Poly {
    let mut acc = Poly::one();
    for i in 0..j {
        acc = &acc * &Poly::from_coeffs(vec![-Rational::from(i), Rational::one()]);
    }
    acc.scale(&Rational::new(1, factorial(j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: u64, k: u64) -> BigInt {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row.get(k as usize).cloned().unwrap_or_default()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), Rational::from(10));
        assert_eq!(binomial(4, 7), Rational::zero());
        assert_eq!(binomial(30, 15), Rational::from(155117520u64));
        assert_eq!(pascal(30, 15), BigInt::from(155117520u64));
        for n in 0..=30 {
            for k in 0..=n + 2 {
                assert_eq!(binomial_int(n, k), pascal(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn binomial_row_sums() {
        for n in 0..=30u64 {
            let s: Rational = (0..=n).map(|k| binomial(n, k)).sum();
            assert_eq!(s, Rational::from(2).pow(n as i64));
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(0, 0), Rational::one());
        assert_eq!(stirling2(4, 2), Rational::from(7));
        assert_eq!(stirling2(3, 5), Rational::zero());
        assert_eq!(stirling2(5, 0), Rational::zero());
        assert_eq!(stirling2(6, 3), Rational::from(90));
    }

    #[test]
    fn stirling_falling_factorial_basis() {
        for p in 0..=6u64 {
            for x in 0..=6i64 {
                let x = Rational::from(x);
                let rhs: Rational = (0..=p)
                    .map(|l| stirling2(p, l) * pochhammer(&x, l, Convention::Falling))
                    .sum();
                assert_eq!(x.pow(p as i64), rhs);
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        let three = Rational::from(3);
        assert_eq!(pochhammer(&Rational::new(7, 3), 0, Convention::Rising), Rational::one());
        assert_eq!(pochhammer(&three, 3, Convention::Rising), Rational::from(60));
        assert_eq!(pochhammer(&three, 3, Convention::Falling), Rational::from(6));
    }

    #[test]
    fn binomial_polynomials() {
        for j in 0..6u64 {
            for x in 0..10u64 {
                assert_eq!(binomial_basis(j).eval(&Rational::from(x)), binomial(x, j));
            }
        }
    }
}
