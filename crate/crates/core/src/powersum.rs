//! Multiple power sums `H_{-n_1,...,-n_r}(N)`, their weak-inequality
//! analogues, polynomial-weighted nested sums and truncated polylogarithms.
//!
//! Every symbolic evaluation has a brute-force oracle next to it. Oracles
//! use prefix sums over the summation lattice rather than any Bernoulli
//! identity, so they are independent ground truth.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{binomial, Poly, Rational};
use crate::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::umbral::{reduce_nested_product_with, LevelRule, ReductionBase, Upper};

/// Non-empty list of non-negative exponents `(n_1, ..., n_r)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyIndex);
        }
        Ok(MultiIndex(exponents))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `r`.
    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// `sum n_k`.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&n| n as u64).sum()
    }

    /// Every index of depth `1..=max_depth` with entries `0..=max_entry`, in
    /// lexicographic order of `(depth, tuple)`.
    pub fn enumerate(max_depth: usize, max_entry: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for depth in 1..=max_depth {
            let mut cur = vec![0u32; depth];
            loop {
                out.push(MultiIndex(cur.clone()));
                let Some(pos) = cur.iter().rposition(|&x| x < max_entry) else { break };
                cur[pos] += 1;
                for x in &mut cur[pos + 1..] {
                    *x = 0;
                }
            }
        }
        out
    }
}

impl TryFrom<Vec<u32>> for MultiIndex {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        MultiIndex::new(v)
    }
}

impl From<MultiIndex> for Vec<u32> {
    fn from(m: MultiIndex) -> Self {
        m.0
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Parses `"n1,n2,...,nr"`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::EmptyIndex);
        }
        let parsed: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        MultiIndex::new(parsed.map_err(|_| Error::ParseIndex(s.to_string()))?)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A multiple power sum as a polynomial in its upper limit `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSumPoly {
    pub poly: Poly,
    pub index: MultiIndex,
}

/// Outcome of the structural checks on a [`PowerSumPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub zero_constant: bool,
    pub expected_degree: usize,
    pub degree: Option<usize>,
    /// Integers in `0..=r` where the polynomial does not vanish.
    pub nonzero_at: Vec<u64>,
}

impl Structure {
    pub fn holds(&self) -> bool {
        self.zero_constant && self.degree == Some(self.expected_degree) && self.nonzero_at.is_empty()
    }
}

impl PowerSumPoly {
    pub fn eval(&self, n: &Rational) -> Rational {
        self.poly.eval(n)
    }

    /// Zero constant term, degree `sum n_k + r`, roots at `0, 1, ..., r`.
    pub fn structure(&self) -> Structure {
        let r = self.index.depth() as u64;
        Structure {
            zero_constant: self.poly.coeff(0).is_zero(),
            expected_degree: (self.index.weight() + r) as usize,
            degree: self.poly.degree(),
            nonzero_at: (0..=r).filter(|&x| !self.poly.eval(&Rational::from(x)).is_zero()).collect(),
        }
    }
}

/// `sum w_1(i_1) ... w_r(i_r)` over `N > i_1 > ... > i_r > 0`, or over
/// `N >= i_1 >= ... >= i_r >= 1` when `weak`.
fn lattice_sum(depth: usize, n: u64, weak: bool, weight: impl Fn(usize, u64) -> Rational) -> Rational {
    let top = if weak { n } else { n.saturating_sub(1) };
    if top == 0 {
        return Rational::zero();
    }
    // g[i] holds the partial sum over the levels below for i_k = i.
    let mut g: Vec<Rational> = (0..=top).map(|i| if i == 0 { Rational::zero() } else { weight(depth - 1, i) }).collect();
    for level in (0..depth - 1).rev() {
        let mut prefix = Rational::zero();
        let mut next = vec![Rational::zero(); g.len()];
        for i in 1..=top as usize {
            if weak {
                prefix += &g[i];
            }
            next[i] = weight(level, i as u64) * &prefix;
            if !weak {
                prefix += &g[i];
            }
        }
        g = next;
    }
    g.iter().sum()
}

fn int_pow(i: u64, e: u32) -> Rational {
    Rational::from(i).pow(e as i64)
}

/// Direct nested summation of `i_1^{n_1} ... i_r^{n_r}` over `N > i_1 > ... > i_r > 0`.
pub fn oracle_h(index: &MultiIndex, n: u64) -> Rational {
    let e = index.as_slice();
    lattice_sum(e.len(), n, false, |k, i| int_pow(i, e[k]))
}

/// `H` as a polynomial in `N`, from the nested symbol product with strict
/// summation ranges.
pub fn symbolic_h(index: &MultiIndex) -> PowerSumPoly {
    let poly = reduce_nested_product_with(index, &ReductionBase::FiniteUpper(Upper::Symbolic), LevelRule::STRICT)
        .expect("non-empty index")
        .into_poly()
        .expect("symbolic upper limit");
    PowerSumPoly { poly, index: index.clone() }
}

/// `H` at a concrete upper limit; non-integer `N` evaluates the polynomial.
pub fn symbolic_h_at(index: &MultiIndex, n: &Rational) -> Rational {
    reduce_nested_product_with(index, &ReductionBase::FiniteUpper(Upper::At(n.clone())), LevelRule::STRICT)
        .expect("non-empty index")
        .value_at(n)
}

/// `D_j = sum_{i>=j} n_i + (r-j+1) - sum_{i>j} k_i`, innermost first.
///
/// Returns the exponent of `N` and the coefficient
/// `prod_j C(D_j, k_j) B_{k_j} / D_j` for one tuple `k`, or `None` when the
/// tuple leaves the range `0 <= k_j <= D_j`.
pub(crate) fn expansion_term(n: &[u32], k: &[u32]) -> Option<(u64, Rational)> {
    debug_assert_eq!(n.len(), k.len());
    let mut coeff = Rational::one();
    let mut carry = 0u64; // D_{j+1} - k_{j+1}
    for j in (0..n.len()).rev() {
        let d = n[j] as u64 + 1 + carry;
        let kj = k[j] as u64;
        if kj > d {
            return None;
        }
        coeff *= binomial(d, kj) * bernoulli_number(kj) / Rational::from(d);
        carry = d - kj;
    }
    Some((carry, coeff))
}

/// Visits every tuple with `0 <= k_j <= D_j - 1` (or `<= D_j` when
/// `full_range`), choosing `k_r` first since each `D_j` depends on the
/// choices to its right.
pub(crate) fn for_each_tuple(n: &[u32], full_range: bool, mut f: impl FnMut(&[u32])) {
    fn go(n: &[u32], j: usize, carry: u64, full: bool, k: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        let d = n[j] as u64 + 1 + carry;
        let top = if full { d } else { d - 1 };
        for kj in 0..=top {
            k[j] = kj as u32;
            if j == 0 {
                f(k);
            } else {
                go(n, j - 1, d - kj, full, k, f);
            }
        }
    }
    let mut k = vec![0u32; n.len()];
    go(n, n.len() - 1, 0, full_range, &mut k, &mut f);
}

/// The nested Bernoulli-number sum for `H` with the displayed ranges, which
/// read zeroth powers of composite symbols as `M` rather than `M - 1`.
fn displayed_expansion(n: &[u32]) -> Poly {
    let mut coeffs = vec![Rational::zero(); n.iter().map(|&x| x as usize).sum::<usize>() + n.len() + 1];
    for_each_tuple(n, false, |k| {
        let (e, c) = expansion_term(n, k).expect("tuple in range");
        coeffs[e as usize] += c;
    });
    Poly::from_coeffs(coeffs)
}

/// `H` expanded directly as `sum over k of prod_j C(D_j,k_j) B_{k_j}/D_j N^{sum n + r - sum k}`.
///
/// A trailing zero exponent is peeled with `H_{...,a,0} = H_{...,a+1} - H_{...,a}`,
/// because the displayed ranges count the empty position `i_r = 0`.
pub fn explicit_expansion_h(index: &MultiIndex) -> PowerSumPoly {
    PowerSumPoly { poly: explicit_strict(index.as_slice()), index: index.clone() }
}

fn explicit_strict(n: &[u32]) -> Poly {
    match n.split_last() {
        Some((0, [])) => &displayed_expansion(n) - &Poly::one(),
        Some((0, head)) => {
            let mut merged = head.to_vec();
            *merged.last_mut().expect("non-empty head") += 1;
            &displayed_expansion(&merged) - &explicit_strict(head)
        }
        _ => displayed_expansion(n),
    }
}

/// `H` via the depth-lowering recurrence
/// `H_{..,-n_r}(N) = 1/(n_r+1) sum_{k=1}^{n_r+1} C(n_r+1,k) B_{n_r+1-k} H_{..,-(n_{r-1}+k)}(N)`,
/// minus `H_{-n_1..-n_{r-1}}(N)` when `n_r = 0` (the inner sum starts at 1).
pub fn recurrence_h(index: &MultiIndex, n: &Rational) -> Result<Rational> {
    if index.depth() < 2 {
        return Err(Error::DepthTooSmall { min: 2, got: index.depth() });
    }
    Ok(recurrence_inner(index.as_slice(), n))
}

fn recurrence_inner(e: &[u32], n: &Rational) -> Rational {
    let (&last, head) = e.split_last().expect("non-empty");
    if head.is_empty() {
        return symbolic_h_at(&MultiIndex(e.to_vec()), n);
    }
    let m = last as u64 + 1;
    let mut total = Rational::zero();
    for k in 1..=m {
        let b = bernoulli_number(m - k);
        if b.is_zero() {
            continue;
        }
        let mut shorter = head.to_vec();
        *shorter.last_mut().expect("non-empty head") += k as u32;
        total += binomial(m, k) * b * recurrence_inner(&shorter, n);
    }
    total /= Rational::from(m);
    if last == 0 {
        total -= recurrence_inner(head, n);
    }
    total
}

/// Direct summation over `N >= i_1 >= ... >= i_r >= 1`.
pub fn oracle_s(index: &MultiIndex, n: u64) -> Rational {
    let e = index.as_slice();
    lattice_sum(e.len(), n, true, |k, i| int_pow(i, e[k]))
}

/// The weak-inequality sum as a polynomial in `N`: every level uses the
/// shifted symbol, i.e. the upper limit `N + 1` and `h' + 1` inside.
pub fn symbolic_s(index: &MultiIndex) -> Poly {
    reduce_nested_product_with(index, &ReductionBase::FiniteUpper(Upper::Symbolic), LevelRule::WEAK)
        .expect("non-empty index")
        .into_poly()
        .expect("symbolic upper limit")
}

pub fn symbolic_s_at(index: &MultiIndex, n: &Rational) -> Rational {
    symbolic_s(index).eval(n)
}

/// `sum_{N > i_1 > ... > i_r > 0} P_1(i_1) ... P_r(i_r)`, expanded over the
/// monomials of each `P_k`.
pub fn weighted_nested_sum(polys: &[Poly], n: &Rational) -> Result<Rational> {
    if polys.is_empty() {
        return Err(Error::EmptyIndex);
    }
    if let Some(bad) = polys.iter().position(|p| !p.coeff(0).is_zero()) {
        return Err(Error::ConstantTerm(bad));
    }
    let mut total = Rational::zero();
    let mut exps = vec![0u32; polys.len()];
    fn go(polys: &[Poly], k: usize, c: Rational, exps: &mut Vec<u32>, n: &Rational, total: &mut Rational) {
        if k == polys.len() {
            *total += c * symbolic_h_at(&MultiIndex(exps.clone()), n);
            return;
        }
        for (e, a) in polys[k].coeffs().iter().enumerate().skip(1) {
            if a.is_zero() {
                continue;
            }
            exps[k] = e as u32;
            go(polys, k + 1, &c * a, exps, n, total);
        }
    }
    go(polys, 0, Rational::one(), &mut exps, n, &mut total);
    Ok(total)
}

/// Direct summation of `z^{i_1} i_1^{n_1} ... i_r^{n_r}` over `N > i_1 > ... > i_r > 0`.
pub fn oracle_li(index: &MultiIndex, z: &Rational, n: u64) -> Rational {
    let e = index.as_slice();
    lattice_sum(e.len(), n, false, |k, i| {
        let w = int_pow(i, e[k]);
        if k == 0 {
            w * z.pow(i as i64)
        } else {
            w
        }
    })
}

/// The truncated polylogarithm through the Apostol-Bernoulli base symbol.
pub fn symbolic_li(index: &MultiIndex, z: &Rational, n: u64) -> Result<Rational> {
    if z.is_zero() {
        return Err(Error::ZeroArgument("z"));
    }
    let base = ReductionBase::Apostol { lambda: z.clone(), upper: n };
    Ok(reduce_nested_product_with(index, &base, LevelRule::STRICT)?
        .into_value()
        .expect("apostol base yields a value"))
}

/// Direct summation with weight `prod_k z_k^{i_k}`.
pub fn oracle_multi_li(index: &MultiIndex, zs: &[Rational], n: u64) -> Result<Rational> {
    if zs.len() != index.depth() {
        return Err(Error::LengthMismatch { expected: index.depth(), got: zs.len() });
    }
    let e = index.as_slice();
    Ok(lattice_sum(e.len(), n, false, |k, i| int_pow(i, e[k]) * zs[k].pow(i as i64)))
}
