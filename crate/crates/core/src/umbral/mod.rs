//! Umbral symbols and the nested reduction engine.
//!
//! [`UmbralPoly`] carries unreduced expressions in named symbols. The nested
//! engine evaluates products `H_1^{n_1} H_{1,2}^{n_2} ... H_{1..r}^{n_r}`
//! level by level from the innermost symbol outwards, merging powers of the
//! same symbol before each level rule is applied.

mod nested;
mod symbolic;
mod vform;

pub use nested::{
    collapse_levels, reduce_nested_product, reduce_nested_product_with, LevelRule, ReductionBase,
    Reduced, Upper,
};
pub use symbolic::UmbralPoly;
pub use vform::{reduce_v_form, v_form_product, v_form_vars};
