//! Exact arithmetic kernel: Laurent polynomials, truncated series,
//! Gaussian binomials and q-Pochhammer symbols.

mod poly;
mod qbinom;
mod series;

pub use poly::{poly_add, poly_mul, IntPolynomial};
pub use qbinom::{q_binomial, QBinomialTable};
pub use series::{
    compare_series, parse_rational, pochhammer, pochhammer_through, series_add, series_from_poly, series_invert,
    series_mul, Discrepancy, PochhammerLength, PochhammerSpec, SeriesComparison, SeriesError,
    TruncatedSeries,
};

use std::fmt;

/// Malformed text input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(pub String);

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}
