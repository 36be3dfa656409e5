//! Exact coefficient arithmetic.
//!
//! Everything lives over `Q[v, v^-1]` where `v` is the square root of the
//! Lefschetz motive. Stacky counts carry denominators that are products of
//! the atomic factors `v^{2i} - 1`; [`PochFraction`] keeps those factors as
//! a multiset instead of expanding them, so no polynomial gcd is ever needed.

mod arith;
mod fraction;
mod laurent;

pub use arith::{mobius, Rational};
pub use fraction::{poch_denominator, poch_factor_product, PochDenominator, PochFraction};
pub use laurent::LaurentPoly;
