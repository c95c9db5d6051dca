//! Exact rational scalars, dense matrices, determinants and minors.

mod index_set;
mod matrix;
mod rational;

pub use index_set::{subsets_in_order, IndexSet};
pub(crate) use matrix::bareiss;
pub use matrix::{MatrixJson, RatMatrix, DET_ORACLE_CAP};
pub use rational::{
    binomial, common_denominator, format_fraction, from_decimal_pair, from_f64_exact, int, parse_rational,
    positive_part, pow, rat, sign_of, sign_pow, to_decimal_pair, to_f64, to_scientific, Rational,
};
