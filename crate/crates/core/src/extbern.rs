//! Extended Bernoulli polynomials in several indices.
//!
//! The shifted polynomials `beta_{n_1..n_r}(z)` are the symbolic product
//! `prod_k n_k (B_k + V_{1..k})^{n_k - 1}` evaluated with upper limit `z`.
//! The tilde variant replaces the last factor by
//! `(B_r + B_{r-1} + V_{1..r-1})^{n_r}` and keeps a constant term.

use serde::{Deserialize, Serialize};

use crate::arith::{binomial_basis, Poly, Rational};
use crate::bernoulli::{bernoulli_poly, faulhaber_poly};
use crate::error::{Error, Result};
use crate::powersum::{symbolic_h_at, MultiIndex};
use crate::umbral::{
    collapse_levels, reduce_nested_product, reduce_v_form, v_form_product, LevelRule, ReductionBase, Upper,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Shifted,
    Tilde,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtBernoulliPoly {
    pub poly: Poly,
    pub index: MultiIndex,
    pub variant: Variant,
}

impl ExtBernoulliPoly {
    pub fn eval(&self, z: &Rational) -> Rational {
        self.poly.eval(z)
    }
}

/// Two polynomials that should agree, and their difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyCheck {
    pub lhs: Poly,
    pub rhs: Poly,
    pub residual: Poly,
    pub pass: bool,
}

impl PolyCheck {
    fn new(lhs: Poly, rhs: Poly) -> Self {
        let residual = &lhs - &rhs;
        let pass = residual.is_zero();
        PolyCheck { lhs, rhs, residual, pass }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub residual: Rational,
    pub pass: bool,
}

impl ValueCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        let residual = &lhs - &rhs;
        let pass = residual.is_zero();
        ValueCheck { lhs, rhs, residual, pass }
    }
}

fn symbolic() -> ReductionBase {
    ReductionBase::FiniteUpper(Upper::Symbolic)
}

fn product_of(e: &[u32]) -> Rational {
    e.iter().map(|&n| Rational::from(n)).product()
}

/// `beta_{n_1..n_r}(z)`. Any zero index annihilates the product.
pub fn beta_symbolic(index: &MultiIndex) -> ExtBernoulliPoly {
    let e = index.as_slice();
    let poly = if e.contains(&0) {
        Poly::zero()
    } else {
        let lowered = MultiIndex::new(e.iter().map(|n| n - 1).collect()).expect("non-empty");
        reduce_nested_product(&lowered, &symbolic())
            .expect("non-empty index")
            .into_poly()
            .expect("symbolic upper limit")
            .scale(&product_of(e))
    };
    ExtBernoulliPoly { poly, index: index.clone(), variant: Variant::Shifted }
}

/// `tilde-beta_{n_1..n_r}(z)`; at depth one this is `B_{n_1}(z)`.
pub fn beta_tilde(index: &MultiIndex) -> ExtBernoulliPoly {
    let e = index.as_slice();
    let wrap = |poly| ExtBernoulliPoly { poly, index: index.clone(), variant: Variant::Tilde };
    let (&last, head) = e.split_last().expect("non-empty");
    if head.is_empty() {
        return wrap(bernoulli_poly(last as u64));
    }
    if head.contains(&0) {
        return wrap(Poly::zero());
    }
    // (B_r + H_{1..r-1})^{n_r} H_{1..r-1}^{n_{r-1}-1}, with B_r already reduced.
    let (&prev, outer) = head.split_last().expect("non-empty");
    let q = bernoulli_poly(last as u64).shift_degree(prev as usize - 1);
    let outer: Vec<u32> = outer.iter().map(|n| n - 1).collect();
    let poly = collapse_levels(q, &outer, &symbolic(), LevelRule::SYMBOL)
        .expect("valid base")
        .into_poly()
        .expect("symbolic upper limit")
        .scale(&product_of(head));
    wrap(poly)
}

fn ext(index: &MultiIndex, variant: Variant) -> Poly {
    match variant {
        Variant::Shifted => beta_symbolic(index).poly,
        Variant::Tilde => beta_tilde(index).poly,
    }
}

/// `P(z+1) - P(z) = n_1 z^{n_1-1} P_{n_2..n_r}(z)` as a polynomial identity,
/// with both sides taken from the same variant.
pub fn beta_recurrence_check(index: &MultiIndex, variant: Variant) -> Result<PolyCheck> {
    let e = index.as_slice();
    if e.len() < 2 {
        return Err(Error::DepthTooSmall { min: 2, got: e.len() });
    }
    if variant == Variant::Shifted && e.contains(&0) {
        return Err(Error::Invalid(format!("index ({index}) needs every entry at least 1")));
    }
    let lhs = ext(index, variant).forward_difference();
    let tail = MultiIndex::new(e[1..].to_vec()).expect("depth >= 2");
    let n1 = e[0];
    let rhs = if n1 == 0 {
        Poly::zero()
    } else {
        &Poly::monomial(n1 as usize - 1, Rational::from(n1)) * &ext(&tail, variant)
    };
    Ok(PolyCheck::new(lhs, rhs))
}

/// Differentiates the unreduced form of `H_{-n_1..-n_r}(z)` in every
/// Bernoulli symbol, reduces, and compares with [`beta_symbolic`].
pub fn derivative_link_check(index: &MultiIndex) -> Result<PolyCheck> {
    let e = index.as_slice();
    if e.contains(&0) {
        return Err(Error::Invalid(format!("index ({index}) needs every entry at least 1")));
    }
    let mut p = v_form_product(e)?;
    for k in 1..=e.len() {
        p = p.derivative(&format!("b{k}"))?;
    }
    let lhs = reduce_v_form(&p, e.len())?;
    Ok(PolyCheck::new(lhs, beta_symbolic(index).poly))
}

/// `2 sum_{k=0}^{N-1} k B_m(k) = (N^2 - N) B_m(N) - m (H_{-m-1}(N) + H_{-m}(N))`.
pub fn beta_example_identity(m: u32, n: u64) -> ValueCheck {
    let bm = bernoulli_poly(m as u64);
    let lhs: Rational = (0..n).map(|k| Rational::from(2 * k) * bm.eval(&Rational::from(k))).sum();
    let big = Rational::from(n);
    let h = |e: u32| symbolic_h_at(&MultiIndex::new(vec![e]).expect("non-empty"), &big);
    let rhs = (&big * &big - &big) * bm.eval(&big) - Rational::from(m) * (h(m + 1) + h(m));
    ValueCheck::new(lhs, rhs)
}

/// How the undetermined constant terms of the tail polynomials are fixed in
/// [`connection_probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailConvention {
    /// Tails are `tilde-beta`.
    Tilde,
    /// Tails are the shifted `beta`, constant term 0.
    ShiftedZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub index: MultiIndex,
    pub upper: u64,
    pub convention: TailConvention,
    pub lhs: Rational,
    pub rhs: Rational,
    pub residual: Rational,
}

/// Evaluates both sides of
/// `beta_{n_1..n_r}(N) = beta_{n_1}(N) B_{n_2..n_r}(N) - n_2 H^{n_2-1} B_{n_3..n_r}(H) beta_{n_1}(H+1)`
/// with the tails chosen by `convention` and `x^m -> sum_{j=0}^{N-1} j^m`
/// applied to the whole polynomial in `H`. Reports, never asserts.
pub fn connection_probe(index: &MultiIndex, n: u64, convention: TailConvention) -> Result<ProbeReport> {
    let e = index.as_slice();
    if e.len() < 2 {
        return Err(Error::DepthTooSmall { min: 2, got: e.len() });
    }
    let variant = match convention {
        TailConvention::Tilde => Variant::Tilde,
        TailConvention::ShiftedZero => Variant::Shifted,
    };
    let tail = |from: usize| {
        if from >= e.len() {
            Poly::one()
        } else {
            ext(&MultiIndex::new(e[from..].to_vec()).expect("non-empty"), variant)
        }
    };
    let big = Rational::from(n);
    let lhs = beta_symbolic(index).eval(&big);
    let beta1 = beta_symbolic(&MultiIndex::new(vec![e[0]]).expect("non-empty")).poly;

    let n2 = e[1];
    let in_h = if n2 == 0 {
        Poly::zero()
    } else {
        let lead = Poly::monomial(n2 as usize - 1, Rational::from(n2));
        &(&lead * &tail(2)) * &beta1.translate(&Rational::one())
    };
    let h_value: Rational = in_h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, c)| c * faulhaber_poly(m as u64).eval(&big))
        .sum();
    let rhs = beta1.eval(&big) * tail(1).eval(&big) - h_value;
    let residual = &lhs - &rhs;
    Ok(ProbeReport { index: index.clone(), upper: n, convention, lhs, rhs, residual })
}

/// The solution of `f(x+1) - f(x) = P(x)` with `f(0) = 0`: writing
/// `P = sum a_j C(x, j)` with `a_j = Delta^j P(0)`, `f = sum a_j C(x, j+1)`.
pub fn lemma9_solve(p: &Poly) -> Poly {
    let mut f = Poly::zero();
    let mut d = p.clone();
    let mut j = 0u64;
    while !d.is_zero() {
        f = &f + &binomial_basis(j + 1).scale(&d.eval(&Rational::zero()));
        d = d.forward_difference();
        j += 1;
    }
    f
}
