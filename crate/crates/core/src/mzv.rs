//! The multiple zeta function at non-positive integers,
//! `zeta(-n_1, ..., -n_r)`, computed three independent ways plus the
//! depth-two closed form.
//!
//! All methods return `zeta` itself; the sign `(-1)^{n_1+...+n_r}` that links
//! it to the renormalized power sum is applied internally.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{binomial, Rational};
use crate::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::powersum::{expansion_term, for_each_tuple, MultiIndex};
use crate::umbral::{reduce_nested_product, ReductionBase};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaMethod {
    Raabe,
    Renorm,
    ConstantTerm,
    Depth2,
}

impl ZetaMethod {
    pub const GENERAL: [ZetaMethod; 3] = [ZetaMethod::Raabe, ZetaMethod::Renorm, ZetaMethod::ConstantTerm];

    pub fn name(self) -> &'static str {
        match self {
            ZetaMethod::Raabe => "raabe",
            ZetaMethod::Renorm => "renorm",
            ZetaMethod::ConstantTerm => "constant-term",
            ZetaMethod::Depth2 => "depth2",
        }
    }
}

impl fmt::Display for ZetaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ZetaMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raabe" => Ok(ZetaMethod::Raabe),
            "renorm" => Ok(ZetaMethod::Renorm),
            "constant-term" => Ok(ZetaMethod::ConstantTerm),
            "depth2" => Ok(ZetaMethod::Depth2),
            _ => Err(Error::Invalid(format!("unknown zeta method `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaValue {
    pub index: MultiIndex,
    pub value: Rational,
    pub method: ZetaMethod,
}

pub fn zeta(index: &MultiIndex, method: ZetaMethod) -> Result<ZetaValue> {
    let value = match method {
        ZetaMethod::Raabe => zeta_raabe(index),
        ZetaMethod::Renorm => zeta_renorm(index),
        ZetaMethod::ConstantTerm => zeta_constant_term(index),
        ZetaMethod::Depth2 => match index.as_slice() {
            &[n, m] => zeta_depth2(n, m),
            _ => return Err(Error::Invalid(format!("depth2 needs exactly two entries, got ({index})"))),
        },
    };
    Ok(ZetaValue { index: index.clone(), value, method })
}

fn sign(index: &MultiIndex) -> Rational {
    Rational::sign_power(index.weight())
}

/// Raabe's sum over `k_2, ..., k_r`; the `k_1` factor is forced to
/// `B_{D_1} / D_1` with `D_1 = n~ + r - k~`.
pub fn zeta_raabe(index: &MultiIndex) -> Rational {
    let n = index.as_slice();
    let mut total = Rational::zero();
    if n.len() == 1 {
        let d = n[0] as u64 + 1;
        return sign(index) * bernoulli_number(d) / Rational::from(d);
    }
    // Enumerate the tail with D_j computed from the tail alone, then close
    // the tuple with k_1 = D_1.
    let tail = &n[1..];
    for_each_tuple(tail, true, |k_tail| {
        let d1 = n[0] as u64 + 1 + tail_carry(tail, k_tail);
        let mut k = Vec::with_capacity(n.len());
        k.push(d1 as u32);
        k.extend_from_slice(k_tail);
        if let Some((0, c)) = expansion_term(n, &k) {
            total += c;
        }
    });
    sign(index) * total
}

/// `D_2 - k_2` for the tail `(n_2..n_r)`, `(k_2..k_r)`.
fn tail_carry(tail: &[u32], k: &[u32]) -> u64 {
    let mut carry = 0u64;
    for j in (0..tail.len()).rev() {
        carry = tail[j] as u64 + 1 + carry - k[j] as u64;
    }
    carry
}

/// Renormalized symbol evaluation: inner levels `h^p -> B_{p+1}(h')/(p+1)`,
/// base `h^p -> B_{p+1}/(p+1)`.
pub fn zeta_renorm(index: &MultiIndex) -> Rational {
    let v = reduce_nested_product(index, &ReductionBase::Renormalized)
        .expect("non-empty index")
        .into_value()
        .expect("renormalized base yields a value");
    sign(index) * v
}

/// The constant slot of the explicit expansion: sums the expansion summand
/// over every tuple `0 <= k_j <= D_j` whose power of `N` is zero.
pub fn zeta_constant_term(index: &MultiIndex) -> Rational {
    let n = index.as_slice();
    let mut total = Rational::zero();
    for_each_tuple(n, true, |k| {
        if let Some((0, c)) = expansion_term(n, k) {
            total += c;
        }
    });
    sign(index) * total
}

/// `(-1)^{n+m} zeta(-n,-m) = sum_{k=0}^{m+1} C(m+1,k) B_k/(m+1) B_{n+m+2-k}/(n+m+2-k)`.
pub fn zeta_depth2(n: u32, m: u32) -> Rational {
    let (n, m) = (n as u64, m as u64);
    let s: Rational = (0..=m + 1)
        .map(|k| {
            let d = n + m + 2 - k;
            binomial(m + 1, k) * bernoulli_number(k) / Rational::from(m + 1) * bernoulli_number(d)
                / Rational::from(d)
        })
        .sum();
    Rational::sign_power(n + m) * s
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

    #[test]
    fn depth_one_values() {
        for (s, v) in [("0", "-1/2"), ("1", "-1/12"), ("2", "0"), ("3", "1/120")] {
            for m in ZetaMethod::GENERAL {
                assert_eq!(zeta(&idx(s), m).unwrap().value, q(v), "{s} {m}");
            }
        }
    }

    #[test]
    fn depth_two_values() {
        for (s, v) in [("0,0", "1/3"), ("1,0", "1/24"), ("1,1", "1/360")] {
            for m in [ZetaMethod::Raabe, ZetaMethod::Renorm, ZetaMethod::ConstantTerm, ZetaMethod::Depth2] {
                assert_eq!(zeta(&idx(s), m).unwrap().value, q(v), "{s} {m}");
            }
        }
    }

    #[test]
    fn depth2_closed_form_terms() {
        // k = 0 and k = 1 contributions for zeta(0,0).
        assert_eq!(zeta_depth2(0, 0), q("1/12") + q("1/4"));
        assert!(zeta(&idx("1,2,3"), ZetaMethod::Depth2).is_err());
    }

    #[test]
    fn methods_agree_on_small_indices() {
        for index in MultiIndex::enumerate(3, 3) {
            let r = zeta_raabe(&index);
            assert_eq!(zeta_renorm(&index), r, "{index:?}");
            assert_eq!(zeta_constant_term(&index), r, "{index:?}");
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in [ZetaMethod::Raabe, ZetaMethod::Renorm, ZetaMethod::ConstantTerm, ZetaMethod::Depth2] {
            assert_eq!(m.name().parse::<ZetaMethod>().unwrap(), m);
        }
        assert!("all".parse::<ZetaMethod>().is_err());
    }
}
