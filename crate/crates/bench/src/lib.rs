//! Shared fixtures for the benchmarks.

use p1dt_core::{build_positive_series, BigradedSeries, LaurentPoly, PipelineConfig};

/// Positive series for `ell` over the box `(rmax, dmax)`.
pub fn positive_series(ell: u32, rmax: u32, dmax: u32) -> BigradedSeries {
    build_positive_series(&PipelineConfig::new(ell, rmax, dmax))
}

/// A dense-ish polynomial `sum_{k=-n}^{n} (k^2 + 1) v^{2k}`.
pub fn dense_poly(n: i64) -> LaurentPoly {
    LaurentPoly::from_int_terms((-n..=n).map(|k| (2 * k, k * k + 1)))
}
