//! Motivic Donaldson-Thomas invariants of twisted Higgs bundles over the
//! projective line and of the associated infinite symmetric quiver.
//!
//! All arithmetic is exact: Laurent polynomials in `v = L^{1/2}` with
//! rational coefficients, and fractions whose denominators are products of
//! `v^{2i} - 1`.
//!
//! ```
//! use p1dt_core::{omega_l, QuiverConfig};
//!
//! let omega = omega_l(&QuiverConfig::new(1), 3, 1).unwrap();
//! assert_eq!(omega.poly.display_with("w").to_string(), "w^10 + w^8");
//! ```

pub mod error;
pub mod golden;
pub mod invariants;
pub mod quiver;
pub mod ring;
pub mod series;

pub use error::{Error, Result};
pub use invariants::{
    build_positive_series, build_positive_series_with, check_d_independence, check_hn_product,
    check_shift_invariance, check_theorem2, i_semistable, j_l_plus, j_q, normalize_degree,
    omega_l, omega_l_plus, omega_q, table_degree, OmegaValue, PipelineConfig,
};
pub use quiver::{enumerate_dimvecs, DimVector, QuiverConfig};
pub use ring::{LaurentPoly, PochDenominator, PochFraction, Rational};
pub use series::{Bidegree, BigradedSeries, BoxBound, DimGradedSeries, Grade, Series};
