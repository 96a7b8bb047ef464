use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Poly, Rational};
use crate::bernoulli::bernoulli_number;
use crate::error::{Error, Result};

/// Multivariate polynomial over [`Rational`] in a declared, ordered set of
/// named symbol variables.
///
/// Terms map exponent tuples (one entry per declared variable) to non-zero
/// coefficients. Binary operations require identical variable sets; the
/// reductions that evaluate a symbol remove it from the set.
#[derive(Clone, PartialEq, Eq)]
pub struct UmbralPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl UmbralPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        UmbralPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Self {
        let mut p = UmbralPoly::zero(vars);
        p.add_term(vec![0; p.vars.len()], c);
        p
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let mut p = UmbralPoly::zero(vars);
        let idx = p.index_of(name)?;
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        p.add_term(e, Rational::one());
        Ok(p)
    }

    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = UmbralPoly::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::LengthMismatch { expected: p.vars.len(), got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Lifts a univariate polynomial into the variable `name`.
    pub fn from_poly<S: AsRef<str>>(vars: &[S], name: &str, poly: &Poly) -> Result<Self> {
        let mut p = UmbralPoly::zero(vars);
        let idx = p.index_of(name)?;
        for (k, c) in poly.coeffs().iter().enumerate() {
            let mut e = vec![0; p.vars.len()];
            e[idx] = k as u32;
            p.add_term(e, c.clone());
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a polynomial with no variable dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &UmbralPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch { left: self.vars.clone(), right: other.vars.clone() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &UmbralPoly) -> Result<UmbralPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &UmbralPoly) -> Result<UmbralPoly> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn try_mul(&self, other: &UmbralPoly) -> Result<UmbralPoly> {
        self.check_same(other)?;
        let mut out = UmbralPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> UmbralPoly {
        let mut out = UmbralPoly::zero(&self.vars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> UmbralPoly {
        let mut acc = UmbralPoly::constant(&self.vars, Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same variables");
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base).expect("same variables");
            }
        }
        acc
    }

    /// Formal partial derivative in `name`; the variable set is unchanged.
    pub fn derivative(&self, name: &str) -> Result<UmbralPoly> {
        let idx = self.index_of(name)?;
        let mut out = UmbralPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(e2, c * Rational::from(e[idx]));
        }
        Ok(out)
    }

    /// Replaces every power `name^m` by `image(m)`, a polynomial over the
    /// remaining variables, and drops `name` from the variable set.
    pub fn map_powers(
        &self,
        name: &str,
        mut image: impl FnMut(u32) -> Result<UmbralPoly>,
    ) -> Result<UmbralPoly> {
        let idx = self.index_of(name)?;
        let rest: Vec<String> = self.vars.iter().filter(|v| *v != name).cloned().collect();
        let mut cache: BTreeMap<u32, UmbralPoly> = BTreeMap::new();
        let mut out = UmbralPoly::zero(&rest);
        for (e, c) in &self.terms {
            let m = e[idx];
            if let Entry::Vacant(slot) = cache.entry(m) {
                let img = image(m)?;
                if img.vars != rest {
                    return Err(Error::VariableMismatch { left: rest.clone(), right: img.vars });
                }
                slot.insert(img);
            }
            let mut outer = e.clone();
            outer.remove(idx);
            for (ei, ci) in &cache[&m].terms {
                let merged = outer.iter().zip(ei).map(|(a, b)| a + b).collect();
                out.add_term(merged, c * ci);
            }
        }
        Ok(out)
    }

    fn map_scalar_powers(&self, name: &str, f: impl Fn(u32) -> Rational) -> Result<UmbralPoly> {
        let rest: Vec<String> = self.vars.iter().filter(|v| *v != name).cloned().collect();
        self.map_powers(name, |m| Ok(UmbralPoly::constant(&rest, f(m))))
    }

    /// Bernoulli-symbol evaluation `b^m -> B_m`.
    pub fn reduce_bernoulli(&self, name: &str) -> Result<UmbralPoly> {
        self.map_scalar_powers(name, |m| bernoulli_number(m as u64))
    }

    /// Uniform-symbol evaluation `u^m -> 1/(m+1)`.
    pub fn reduce_uniform(&self, name: &str) -> Result<UmbralPoly> {
        self.map_scalar_powers(name, |m| Rational::new(1, m + 1))
    }

    /// Substitutes a number for `name`.
    pub fn evaluate(&self, name: &str, value: &Rational) -> Result<UmbralPoly> {
        self.map_scalar_powers(name, |m| value.pow(m as i64))
    }

    /// Integration symbol over `[0, upper]` acting on the variable `name`:
    /// treating the polynomial as `P(name)`, returns `Q(upper) - Q(0)` with
    /// `Q' = P`, i.e. `name^m -> upper^{m+1} / (m+1)`. A term without `name`
    /// is its zeroth power and maps to `upper`.
    ///
    /// `upper` must be declared over the variables of `self` minus `name`.
    pub fn v_integrate(&self, name: &str, upper: &UmbralPoly) -> Result<UmbralPoly> {
        let mut pw = upper.clone();
        let mut powers = vec![pw.clone()];
        self.map_powers(name, |m| {
            while powers.len() <= m as usize {
                pw = pw.try_mul(upper)?;
                powers.push(pw.clone());
            }
            Ok(powers[m as usize].scale(&Rational::new(1, m + 1)))
        })
    }

    /// Converts a polynomial whose only variable is `name` to a [`Poly`].
    pub fn to_poly(&self, name: &str) -> Result<Poly> {
        let idx = self.index_of(name)?;
        if self.vars.len() != 1 {
            let others = self.terms.keys().any(|e| {
                e.iter().enumerate().any(|(i, &x)| i != idx && x != 0)
            });
            if others {
                return Err(Error::Invalid(format!(
                    "polynomial still depends on variables other than `{name}`"
                )));
            }
        }
        let deg = self.terms.keys().map(|e| e[idx] as usize).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[idx] as usize] += c;
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl fmt::Debug for UmbralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UmbralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}
