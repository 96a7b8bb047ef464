//! The unreduced form `prod_k (b_k + v_k)^{n_k}` of a nested product, where
//! `v_k` integrates over `[0, b_{k-1} + v_{k-1}]` and `v_1` over `[0, N]`.
//!
//! Keeping every `b_k` alive until its own level is reduced is what allows
//! formal derivatives in the Bernoulli symbols to be taken first.

use crate::arith::{Poly, Rational};
use crate::error::Result;

use super::UmbralPoly;

/// Variable order `b_1..b_r, v_1..v_r, N`.
pub fn v_form_vars(depth: usize) -> Vec<String> {
    let mut vars: Vec<String> = (1..=depth).map(|k| format!("b{k}")).collect();
    vars.extend((1..=depth).map(|k| format!("v{k}")));
    vars.push("N".to_string());
    vars
}

/// `prod_k (b_k + v_k)^{n_k}` over [`v_form_vars`].
pub fn v_form_product(exponents: &[u32]) -> Result<UmbralPoly> {
    let vars = v_form_vars(exponents.len());
    let mut acc = UmbralPoly::constant(&vars, Rational::one());
    for (k, &n) in exponents.iter().enumerate() {
        let h = UmbralPoly::var(&vars, &format!("b{}", k + 1))?
            .try_add(&UmbralPoly::var(&vars, &format!("v{}", k + 1))?)?;
        acc = acc.try_mul(&h.pow(n))?;
    }
    Ok(acc)
}

/// Integrates out `v_r, ..., v_1` and reduces each `b_k` right after its
/// level, leaving a polynomial in `N`.
pub fn reduce_v_form(p: &UmbralPoly, depth: usize) -> Result<Poly> {
    let mut cur = p.clone();
    for k in (1..=depth).rev() {
        let vk = format!("v{k}");
        let rest: Vec<String> = cur.vars().iter().filter(|v| **v != vk).cloned().collect();
        let upper = if k == 1 {
            UmbralPoly::var(&rest, "N")?
        } else {
            UmbralPoly::var(&rest, &format!("b{}", k - 1))?
                .try_add(&UmbralPoly::var(&rest, &format!("v{}", k - 1))?)?
        };
        cur = cur.v_integrate(&vk, &upper)?.reduce_bernoulli(&format!("b{k}"))?;
    }
    cur.to_poly("N")
}
