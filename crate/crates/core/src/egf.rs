//! Truncated multivariate exponential generating functions.
//!
//! A table stores the coefficient of `prod w_i^{d_i} / d_i!` for every tuple
//! of total degree at most the bound. In this normalization the substitution
//! `w <- w' + w''` is a pure re-indexing and multiplying by `w_i` shifts with
//! weight `d_i`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{binomial, Rational};
use crate::error::{Error, Result};
use crate::extbern::beta_symbolic;
use crate::powersum::MultiIndex;
use crate::umbral::{reduce_nested_product, ReductionBase, Upper};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EgfTable {
    arity: usize,
    bound: u32,
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

/// Every tuple of length `arity` with entries summing to at most `bound`,
/// in lexicographic order.
pub fn tuples(arity: usize, bound: u32) -> Vec<Vec<u32>> {
    fn go(arity: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == arity {
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur.push(d);
            go(arity, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(arity, bound, &mut Vec::with_capacity(arity), &mut out);
    out
}

impl EgfTable {
    pub fn zero(arity: usize, bound: u32) -> Self {
        EgfTable { arity, bound, coeffs: BTreeMap::new() }
    }

    /// Fills every in-range tuple from `f`.
    pub fn from_fn(arity: usize, bound: u32, mut f: impl FnMut(&[u32]) -> Rational) -> Self {
        let mut t = EgfTable::zero(arity, bound);
        for d in tuples(arity, bound) {
            let c = f(&d);
            t.set(d, c);
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Coefficient at `d`; zero outside the stored range.
    pub fn get(&self, d: &[u32]) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    fn set(&mut self, d: Vec<u32>, c: Rational) {
        debug_assert_eq!(d.len(), self.arity);
        if d.iter().sum::<u32>() > self.bound || c.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, c);
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.coeffs.iter().map(|(d, c)| (d.as_slice(), c))
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.arity {
            return Err(Error::VariableOutOfRange { index: var, arity: self.arity });
        }
        Ok(())
    }

    fn check_shape(&self, other: &EgfTable) -> Result<()> {
        if self.arity != other.arity || self.bound != other.bound {
            return Err(Error::Invalid(format!(
                "table shapes differ: arity {} bound {} vs arity {} bound {}",
                self.arity, self.bound, other.arity, other.bound
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &EgfTable) -> Result<EgfTable> {
        self.check_shape(other)?;
        Ok(EgfTable::from_fn(self.arity, self.bound, |d| self.get(d) + other.get(d)))
    }

    pub fn sub(&self, other: &EgfTable) -> Result<EgfTable> {
        self.check_shape(other)?;
        Ok(EgfTable::from_fn(self.arity, self.bound, |d| self.get(d) - other.get(d)))
    }

    /// `f(w_1, ..., w_{r-1} + w_r)` as a table of arity `r + 1`.
    pub fn shift_last_variable(&self) -> Result<EgfTable> {
        if self.arity == 0 {
            return Err(Error::VariableOutOfRange { index: 0, arity: 0 });
        }
        Ok(EgfTable::from_fn(self.arity + 1, self.bound, |d| {
            let mut src = d[..self.arity].to_vec();
            src[self.arity - 1] += d[self.arity];
            self.get(&src)
        }))
    }

    /// `f(w_1, ..., w_r)` viewed as a function of one more variable.
    pub fn embed(&self) -> EgfTable {
        EgfTable::from_fn(self.arity + 1, self.bound, |d| {
            if d[self.arity] == 0 {
                self.get(&d[..self.arity])
            } else {
                Rational::zero()
            }
        })
    }

    /// `(e^{w_var} - 1) f`.
    pub fn mul_exp_minus_one(&self, var: usize) -> Result<EgfTable> {
        self.check_var(var)?;
        Ok(EgfTable::from_fn(self.arity, self.bound, |d| {
            let mut src = d.to_vec();
            (1..=d[var])
                .map(|j| {
                    src[var] = d[var] - j;
                    binomial(d[var] as u64, j as u64) * self.get(&src)
                })
                .sum()
        }))
    }

    /// `w_var f`.
    pub fn mul_var(&self, var: usize) -> Result<EgfTable> {
        self.check_var(var)?;
        Ok(EgfTable::from_fn(self.arity, self.bound, |d| {
            if d[var] == 0 {
                return Rational::zero();
            }
            let mut src = d.to_vec();
            src[var] -= 1;
            Rational::from(d[var]) * self.get(&src)
        }))
    }
}

/// `F_r(w; N)`: coefficient `H_{-n_1..-n_r}(N)` read through the symbol rule,
/// i.e. the nested sum over `N > i_1 > ... > i_r >= 0` with `0^0 = 1`. This is
/// the reading under which `F_1 = (e^{Nw} - 1)/(e^w - 1)`.
pub fn build_f(r: usize, n: u64, bound: u32) -> Result<EgfTable> {
    if r == 0 {
        return Err(Error::DepthTooSmall { min: 1, got: 0 });
    }
    let base = ReductionBase::FiniteUpper(Upper::At(Rational::from(n)));
    Ok(EgfTable::from_fn(r, bound, |d| {
        let index = MultiIndex::new(d.to_vec()).expect("non-empty");
        reduce_nested_product(&index, &base).expect("valid base").value_at(&Rational::zero())
    }))
}

/// `G_r(w; z)`: coefficient `beta_{n_1..n_r}(z)`.
pub fn build_g(r: usize, z: &Rational, bound: u32) -> Result<EgfTable> {
    if r == 0 {
        return Err(Error::DepthTooSmall { min: 1, got: 0 });
    }
    Ok(EgfTable::from_fn(r, bound, |d| {
        beta_symbolic(&MultiIndex::new(d.to_vec()).expect("non-empty")).eval(z)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub tuple: Vec<u32>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
}

impl RecurrenceReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn compare(lhs: &EgfTable, rhs: &EgfTable) -> Self {
        let all = tuples(lhs.arity, lhs.bound);
        let mismatches = all
            .iter()
            .filter_map(|d| {
                let (a, b) = (lhs.get(d), rhs.get(d));
                (a != b).then(|| Mismatch { tuple: d.clone(), lhs: a, rhs: b })
            })
            .collect();
        RecurrenceReport { cases: all.len(), mismatches }
    }
}

/// `(e^{w_r} - 1) F_r = F_{r-1}(.., w_{r-1} + w_r) - F_{r-1}(.., w_{r-1})`.
pub fn verify_f_recurrence(r: usize, n: u64, bound: u32) -> Result<RecurrenceReport> {
    if r < 2 {
        return Err(Error::DepthTooSmall { min: 2, got: r });
    }
    let fr = build_f(r, n, bound)?;
    let prev = build_f(r - 1, n, bound)?;
    let lhs = fr.mul_exp_minus_one(r - 1)?;
    let rhs = prev.shift_last_variable()?.sub(&prev.embed())?;
    Ok(RecurrenceReport::compare(&lhs, &rhs))
}

/// Fraction-free form of the `G_r` recurrence:
/// `(w_{r-1} + w_r)(e^{w_r} - 1) G_r = w_r [w_{r-1} G_{r-1}(.., w_{r-1} + w_r) - (w_{r-1} + w_r) G_{r-1}(.., w_{r-1})]`.
pub fn verify_g_recurrence(r: usize, z: &Rational, bound: u32) -> Result<RecurrenceReport> {
    if r < 2 {
        return Err(Error::DepthTooSmall { min: 2, got: r });
    }
    let (a, b) = (r - 2, r - 1);
    let gr = build_g(r, z, bound)?;
    let prev = build_g(r - 1, z, bound)?;
    let e = gr.mul_exp_minus_one(b)?;
    let lhs = e.mul_var(a)?.add(&e.mul_var(b)?)?;
    let shifted = prev.shift_last_variable()?.mul_var(a)?;
    let embedded = prev.embed();
    let embedded = embedded.mul_var(a)?.add(&embedded.mul_var(b)?)?;
    let rhs = shifted.sub(&embedded)?.mul_var(b)?;
    Ok(RecurrenceReport::compare(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial;
    use crate::bernoulli::{bernoulli_number, bernoulli_poly};
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(tuples(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(tuples(3, 4).len(), 35);
    }

    #[test]
    fn f_examples() {
        let f = build_f(1, 3, 2).unwrap();
        assert_eq!([f.get(&[0]), f.get(&[1]), f.get(&[2])], [q("3"), q("3"), q("5")]);
        // The only pair below N = 2 is (1, 0), contributing e^{w_1}.
        let f = build_f(2, 2, 2).unwrap();
        for d in tuples(2, 2) {
            let expected = if d[1] == 0 { q("1") } else { q("0") };
            assert_eq!(f.get(&d), expected, "{d:?}");
        }
        assert_eq!(build_f(2, 4, 2).unwrap().get(&[1, 1]), q("11"));
    }

    #[test]
    fn f1_closed_form() {
        for n in 1..=8u64 {
            let f = build_f(1, n, 8).unwrap();
            for d in 0..=8u32 {
                let direct: Rational = (0..n).map(|k| Rational::from(k).pow(d as i64)).sum();
                assert_eq!(f.get(&[d]), direct);
            }
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(build_g(1, &q("2"), 3).unwrap().get(&[2]), q("2"));
        let g = build_g(2, &q("5/3"), 4).unwrap();
        for k in 0..=4 {
            assert!(g.get(&[0, k]).is_zero());
        }
        let z = q("5/3");
        assert_eq!(g.get(&[1, 1]), (&z * &z - &z) / Rational::from(2));
    }

    #[test]
    fn g1_closed_form() {
        // G_1 = w (e^{zw} - 1)/(e^w - 1), so its coefficients are B_n(z) - B_n.
        let z = q("3");
        let g = build_g(1, &z, 6).unwrap();
        for n in 0..=6u32 {
            assert_eq!(g.get(&[n]), bernoulli_poly(n as u64).eval(&z) - bernoulli_number(n as u64));
        }
    }

    #[test]
    fn substitution_examples() {
        let exp = EgfTable::from_fn(1, 4, |_| q("1"));
        let s = exp.shift_last_variable().unwrap();
        assert!(tuples(2, 4).iter().all(|d| s.get(d) == q("1")));

        let w = EgfTable::from_fn(1, 3, |d| if d[0] == 1 { q("1") } else { q("0") });
        let s = w.shift_last_variable().unwrap();
        assert_eq!((s.get(&[1, 0]), s.get(&[0, 1]), s.get(&[1, 1])), (q("1"), q("1"), q("0")));

        let w2 = EgfTable::from_fn(1, 3, |d| if d[0] == 2 { q("1") } else { q("0") });
        let s = w2.shift_last_variable().unwrap();
        for d in [[2, 0], [1, 1], [0, 2]] {
            assert_eq!(s.get(&d), q("1"));
        }
    }

    #[test]
    fn exp_minus_one_examples() {
        let one = EgfTable::from_fn(2, 4, |d| if d == [0, 0] { q("1") } else { q("0") });
        let e = one.mul_exp_minus_one(1).unwrap();
        for d in tuples(2, 4) {
            let expected = if d[0] == 0 && d[1] >= 1 { q("1") } else { q("0") };
            assert_eq!(e.get(&d), expected);
        }
        let w = EgfTable::from_fn(1, 6, |d| if d[0] == 1 { q("1") } else { q("0") });
        let e = w.mul_exp_minus_one(0).unwrap();
        assert!(e.get(&[1]).is_zero());
        for d in 2..=6u32 {
            assert_eq!(e.get(&[d]), Rational::from(d));
        }
        assert_eq!(one.mul_exp_minus_one(2), Err(Error::VariableOutOfRange { index: 2, arity: 2 }));
    }

    #[test]
    fn recurrence_examples() {
        assert!(verify_f_recurrence(2, 4, 5).unwrap().pass());
        assert!(verify_f_recurrence(3, 5, 5).unwrap().pass());
        assert!(verify_f_recurrence(2, 2, 4).unwrap().pass());
        assert!(verify_g_recurrence(2, &q("3"), 5).unwrap().pass());
        assert!(verify_g_recurrence(2, &q("0"), 4).unwrap().pass());
        assert!(verify_g_recurrence(3, &q("2"), 4).unwrap().pass());
        assert!(verify_f_recurrence(1, 4, 5).is_err());
    }

    /// Ordinary (non-divided) coefficients of a bivariate table.
    fn to_ordinary(t: &EgfTable) -> BTreeMap<(u32, u32), Rational> {
        tuples(2, t.bound())
            .into_iter()
            .map(|d| {
                let c = t.get(&d) / Rational::from(factorial(d[0] as u64) * factorial(d[1] as u64));
                ((d[0], d[1]), c)
            })
            .collect()
    }

    proptest! {
        #[test]
        fn exp_minus_one_matches_dense_convolution(
            vals in proptest::collection::vec(-9i64..9, 15),
            var in 0usize..2,
        ) {
            let bound = 4;
            let all = tuples(2, bound);
            let t = EgfTable::from_fn(2, bound, |d| {
                Rational::from(vals[all.iter().position(|x| x == d).unwrap()])
            });
            let got = to_ordinary(&t.mul_exp_minus_one(var).unwrap());
            let src = to_ordinary(&t);
            for (&(a, b), c) in &got {
                let mut expected = Rational::zero();
                for j in 1..=bound {
                    let (sa, sb) = if var == 0 { (a.checked_sub(j), Some(b)) } else { (Some(a), b.checked_sub(j)) };
                    if let (Some(sa), Some(sb)) = (sa, sb) {
                        expected += &src[&(sa, sb)] / Rational::from(factorial(j as u64));
                    }
                }
                prop_assert_eq!(c, &expected);
            }
        }
    }
}
