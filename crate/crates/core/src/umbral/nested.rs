use crate::arith::{Poly, Rational};
use crate::bernoulli::{
    apostol_bernoulli_polys, bernoulli_number, bernoulli_poly, faulhaber_poly, ApostolParams,
};
use crate::error::{Error, Result};
use crate::powersum::MultiIndex;

/// Upper limit of the outermost sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Upper {
    /// Keep `N` as the polynomial variable.
    Symbolic,
    /// Evaluate at a concrete (possibly non-integer) value.
    At(Rational),
}

/// What the outermost symbol `H_1` is evaluated against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionBase {
    /// `h^p -> ((B + N)^{p+1} - B_{p+1}) / (p+1)`.
    FiniteUpper(Upper),
    /// The `N -> infinity` rules: inner levels drop the subtracted constant,
    /// the base keeps only `B_{p+1} / (p+1)`.
    Renormalized,
    /// Geometric weight `lambda^{i_1}` on the outermost summation variable,
    /// with a concrete upper limit.
    Apostol { lambda: Rational, upper: u64 },
}

/// Summation range used for every finite level.
///
/// The symbol rule `h^p -> ((B + h')^{p+1} - B_{p+1}) / (p+1)` is the sum
/// `sum_{i=0}^{M-1} i^p` with `0^0 = 1`, so a zeroth power of a composite
/// symbol evaluates to `M` rather than `M - 1`. [`LevelRule::SYMBOL`] keeps
/// that reading. `from_one` starts the range at `i = 1` instead, which is the
/// literal nested sum; the two differ only when a zero exponent reaches a
/// level. `inclusive` extends the range to `i = M` (weak inequalities).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LevelRule {
    pub inclusive: bool,
    pub from_one: bool,
}

impl LevelRule {
    /// `sum_{i=0}^{M-1}`, the literal symbol rule.
    pub const SYMBOL: LevelRule = LevelRule { inclusive: false, from_one: false };
    /// `sum_{i=1}^{M-1}`, strict nested sums.
    pub const STRICT: LevelRule = LevelRule { inclusive: false, from_one: true };
    /// `sum_{i=1}^{M}`, weak nested sums.
    pub const WEAK: LevelRule = LevelRule { inclusive: true, from_one: true };

    /// Image of `h^p` as a polynomial in the next symbol out.
    fn finite_image(self, p: u64) -> Poly {
        let mut img = faulhaber_poly(p);
        if self.inclusive {
            img = img.translate(&Rational::one());
        }
        if self.from_one && p == 0 {
            img = &img - &Poly::one();
        }
        img
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Poly(Poly),
    Value(Rational),
}

impl Reduced {
    /// The value at `x`, evaluating a polynomial result.
    pub fn value_at(&self, x: &Rational) -> Rational {
        match self {
            Reduced::Poly(p) => p.eval(x),
            Reduced::Value(v) => v.clone(),
        }
    }

    pub fn into_poly(self) -> Option<Poly> {
        match self {
            Reduced::Poly(p) => Some(p),
            Reduced::Value(_) => None,
        }
    }

    pub fn into_value(self) -> Option<Rational> {
        match self {
            Reduced::Value(v) => Some(v),
            Reduced::Poly(_) => None,
        }
    }
}

/// Evaluates `prod_k H_{1..k}^{n_k}` under the literal symbol rule.
pub fn reduce_nested_product(index: &MultiIndex, base: &ReductionBase) -> Result<Reduced> {
    reduce_nested_product_with(index, base, LevelRule::SYMBOL)
}

pub fn reduce_nested_product_with(
    index: &MultiIndex,
    base: &ReductionBase,
    rule: LevelRule,
) -> Result<Reduced> {
    let n = index.as_slice();
    let (last, head) = n.split_last().ok_or(Error::EmptyIndex)?;
    collapse_levels(Poly::monomial(*last as usize, Rational::one()), head, base, rule)
}

/// Collapses a polynomial `q` in the innermost symbol `H_{1..k}`, where
/// `k = head.len() + 1` and `head` lists the exponents of the outer symbols.
///
/// Each level maps `h^p` to its image in `h'`, multiplies by `h'^{n_{k-1}}`
/// and repeats; the base rule then produces the final polynomial or value.
pub fn collapse_levels(
    q: Poly,
    head: &[u32],
    base: &ReductionBase,
    rule: LevelRule,
) -> Result<Reduced> {
    if let ReductionBase::Apostol { lambda, .. } = base {
        if lambda.is_zero() {
            return Err(Error::ZeroArgument("lambda"));
        }
    }
    let renorm = matches!(base, ReductionBase::Renormalized);
    let mut q = q;
    for &outer in head.iter().rev() {
        let mut next = Poly::zero();
        for (p, c) in q.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = if renorm {
                bernoulli_poly(p as u64 + 1).scale(&Rational::new(1, p as u64 + 1))
            } else {
                rule.finite_image(p as u64)
            };
            next = &next + &img.scale(c);
        }
        q = next.shift_degree(outer as usize);
    }

    let coeffs = q.coeffs();
    Ok(match base {
        ReductionBase::FiniteUpper(upper) => {
            let mut poly = Poly::zero();
            for (p, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    poly = &poly + &rule.finite_image(p as u64).scale(c);
                }
            }
            match upper {
                Upper::Symbolic => Reduced::Poly(poly),
                Upper::At(x) => Reduced::Value(poly.eval(x)),
            }
        }
        ReductionBase::Renormalized => Reduced::Value(
            coeffs
                .iter()
                .enumerate()
                .map(|(p, c)| c * bernoulli_number(p as u64 + 1) / Rational::from(p as u64 + 1))
                .sum(),
        ),
        ReductionBase::Apostol { lambda, upper } => {
            let m = *upper;
            // The upper limit is a concrete natural here, so an empty strict
            // range is summed literally instead of through the continuation.
            if rule.from_one && !rule.inclusive && m == 0 {
                return Ok(Reduced::Value(Rational::zero()));
            }
            let family = apostol_bernoulli_polys(coeffs.len() as u64, &ApostolParams::new(lambda.clone()));
            let lm = lambda.pow(m as i64);
            let mut total = Rational::zero();
            for (p, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let p = p as u64;
                // sum_{j=0}^{m-1} lambda^j j^p, then the same range
                // adjustments as the finite rule.
                let b = &family[p as usize + 1];
                let mut s = (&lm * b.eval(&Rational::from(m)) - b.coeff(0)) / Rational::from(p + 1);
                if rule.inclusive {
                    s += lm.clone() * Rational::from(m).pow(p as i64);
                }
                if rule.from_one && p == 0 {
                    s -= Rational::one();
                }
                total += c * s;
            }
            Reduced::Value(total)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn idx(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn at(n: i64) -> ReductionBase {
        ReductionBase::FiniteUpper(Upper::At(Rational::from(n)))
    }

    #[test]
    fn faulhaber_depth_one() {
        let r = reduce_nested_product(&idx("1"), &ReductionBase::FiniteUpper(Upper::Symbolic)).unwrap();
        assert_eq!(r, Reduced::Poly(Poly::from_coeffs(vec![q("0"), q("-1/2"), q("1/2")])));
    }

    #[test]
    fn nested_value() {
        let r = reduce_nested_product(&idx("1,1"), &at(4)).unwrap();
        assert_eq!(r, Reduced::Value(q("11")));
    }

    #[test]
    fn renormalized_depth_one() {
        let r = reduce_nested_product(&idx("1"), &ReductionBase::Renormalized).unwrap();
        assert_eq!(r, Reduced::Value(q("1/12")));
    }

    #[test]
    fn exponent_accumulation_is_not_a_product() {
        let nested = reduce_nested_product(&idx("1,1"), &at(4)).unwrap().into_value().unwrap();
        let single = reduce_nested_product(&idx("1"), &at(4)).unwrap().into_value().unwrap();
        assert_eq!(&single * &single, q("36"));
        assert_ne!(nested, &single * &single);
    }

    #[test]
    fn zero_exponent_semantics() {
        let sym = ReductionBase::FiniteUpper(Upper::Symbolic);
        // (B + V(N))^0 reduces to N under the symbol rule.
        let literal = reduce_nested_product(&idx("0"), &sym).unwrap().into_poly().unwrap();
        assert_eq!(literal, Poly::x());
        // The strict sum over 0 < i < N counts N - 1 terms.
        let strict = reduce_nested_product_with(&idx("0"), &sym, LevelRule::STRICT)
            .unwrap()
            .into_poly()
            .unwrap();
        assert_eq!(strict, Poly::from_coeffs(vec![q("-1"), q("1")]));
        // Weak sums over 0 < i <= N.
        let weak = reduce_nested_product_with(&idx("0"), &sym, LevelRule::WEAK)
            .unwrap()
            .into_poly()
            .unwrap();
        assert_eq!(weak, Poly::x());
    }

    #[test]
    fn rules_agree_without_zero_exponents() {
        for s in ["1", "2,1", "1,3", "2,2,1"] {
            for n in 1..8 {
                let a = reduce_nested_product_with(&idx(s), &at(n), LevelRule::SYMBOL).unwrap();
                let b = reduce_nested_product_with(&idx(s), &at(n), LevelRule::STRICT).unwrap();
                assert_eq!(a, b, "{s} at {n}");
            }
        }
    }

    #[test]
    fn apostol_unit_lambda_is_finite() {
        for s in ["0", "1", "2,1", "0,0", "1,0,2"] {
            for rule in [LevelRule::SYMBOL, LevelRule::STRICT, LevelRule::WEAK] {
                for n in 1..7u64 {
                    let a = reduce_nested_product_with(
                        &idx(s),
                        &ReductionBase::Apostol { lambda: q("1"), upper: n },
                        rule,
                    )
                    .unwrap();
                    let f = reduce_nested_product_with(&idx(s), &at(n as i64), rule).unwrap();
                    assert_eq!(a, f, "{s} N={n} {rule:?}");
                }
            }
        }
    }

    #[test]
    fn apostol_zero_lambda_rejected() {
        let base = ReductionBase::Apostol { lambda: q("0"), upper: 3 };
        assert_eq!(
            reduce_nested_product(&idx("1"), &base),
            Err(Error::ZeroArgument("lambda"))
        );
    }
}
