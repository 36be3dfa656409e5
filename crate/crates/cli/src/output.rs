use std::fmt::Write as _;

use num_traits::ToPrimitive;
use p1dt_core::{Error, LaurentPoly};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// One computed invariant, as printed in JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub ell: u32,
    pub r: u64,
    pub d: i64,
    /// Degree in the stable range that was actually used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimvec: Option<String>,
    pub kind: String,
    /// `(exponent of w, coefficient)`, exponents descending.
    pub poly: Vec<(i64, i64)>,
    pub ms: f64,
}

impl OutputRecord {
    pub fn poly_terms(poly: &LaurentPoly) -> Result<Vec<(i64, i64)>, Error> {
        let ints = poly.integer_terms().ok_or_else(|| {
            Error::IntegralityViolation(format!("non-integer coefficient in {poly}"))
        })?;
        ints.into_iter()
            .rev()
            .map(|(e, c)| {
                c.to_i64()
                    .map(|c| (e, c))
                    .ok_or_else(|| Error::InvalidInput(format!("coefficient {c} exceeds 64 bits")))
            })
            .collect()
    }

    pub fn polynomial(&self) -> LaurentPoly {
        LaurentPoly::from_int_terms(self.poly.iter().copied())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn text_poly(&self) -> String {
        self.polynomial().display_with("w").to_string()
    }

    pub fn latex_poly(&self) -> String {
        latex_poly(&self.poly)
    }

    pub fn label(&self) -> String {
        match &self.dimvec {
            Some(m) => format!("Omega_Q({m})"),
            None => format!("Omega_{}({})", self.ell, self.r),
        }
    }
}

/// `w^{10}+3\,w^{8}` style, highest power first.
pub fn latex_poly(terms: &[(i64, i64)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, &(e, c)) in terms.iter().enumerate() {
        if c < 0 {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let mag = c.unsigned_abs();
        match (e, mag) {
            (0, _) => write!(out, "{mag}").unwrap(),
            (_, 1) => write!(out, "w^{{{e}}}").unwrap(),
            _ => write!(out, "{mag}\\,w^{{{e}}}").unwrap(),
        }
    }
    out
}
