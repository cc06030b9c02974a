//! Shared fixtures for the criterion benchmarks.

use awlab_core::{LaurentPoly, ParamSet, Scalar};

/// The reference point `q=1/2, a=1/3, b=1/5, c=1/7, d=1/11`.
pub fn reference_params(n_max: u32) -> ParamSet {
    ParamSet::parse_assignments("q=1/2,a=1/3,b=1/5,c=1/7,d=1/11", n_max)
        .expect("reference point is generic")
}

/// A fixed dense Laurent polynomial on degrees `-width..=width`.
pub fn dense_input(width: i64) -> LaurentPoly {
    LaurentPoly::from_terms((-width..=width).map(|k| (k, Scalar::new(k + 2 * width + 1, 3))))
}
