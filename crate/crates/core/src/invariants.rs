//! From weighted counts to DT invariants.
//!
//! Higgs side: `J⁺_L(r, d)` sums over splitting types of positive bundles,
//! the plethystic logarithm of `1 + sum J⁺_L z^r t^d` gives `Ω⁺_L / (v - v⁻¹)`
//! and `Ω_L(r, d) = Ω⁺_L(r, d)` once `d > ell * r(r-1)/2`.
//!
//! Quiver side: `J_Q(m) = v^{-chi(m, m)} / (v^{-2})_m` and `Ω_Q` comes from
//! the plethystic logarithm of the dimension-graded series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::quiver::{enumerate_dimvecs, DimVector, QuiverConfig};
use crate::ring::{poch_denominator, LaurentPoly, PochDenominator, PochFraction, Rational};
use crate::series::{Bidegree, BigradedSeries, BoxBound, DimGradedSeries};

/// `v - v^{-1}`
pub fn motivic_normalizer() -> LaurentPoly {
    LaurentPoly::from_int_terms([(1, 1), (-1, -1)])
}

/// Box sizes for the positive series and the extra window used in vanishing
/// checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    pub ell: u32,
    pub rmax: u32,
    pub dmax: u32,
    /// Theorem-2 sums are re-run over the window `[1 - margin, d]`.
    pub margin: u32,
}

impl PipelineConfig {
    pub fn new(ell: u32, rmax: u32, dmax: u32) -> Self {
        Self {
            ell,
            rmax,
            dmax,
            margin: 2,
        }
    }

    pub fn quiver(&self) -> QuiverConfig {
        QuiverConfig::new(self.ell)
    }

    pub fn bound(&self) -> BoxBound {
        BoxBound::new(self.rmax, self.dmax)
    }
}

/// A computed `Ω_L(r, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaValue {
    pub ell: u32,
    pub r: u32,
    /// The degree that was asked for.
    pub d: i64,
    /// The degree actually used, `d + k r > ell * r(r-1)/2`.
    pub stable_d: i64,
    pub poly: LaurentPoly,
}

impl OmegaValue {
    /// `ell r^2 + 1`, the dimension of the moduli space for coprime `(r, d)`.
    pub fn expected_dimension(&self) -> i64 {
        i64::from(self.ell) * i64::from(self.r).pow(2) + 1
    }

    pub fn is_coprime(&self) -> bool {
        i64::from(self.r).gcd(&self.stable_d) == 1
    }

    /// Violations of the structural regression properties: integer and
    /// nonnegative coefficients, uniform exponent parity `ell r^2 + 1`, and
    /// for coprime `(r, d)` a monic top term in degree `ell r^2 + 1`.
    pub fn structural_violations(&self) -> Vec<String> {
        structural_violations(&self.poly, self.expected_dimension(), self.is_coprime())
    }
}

pub(crate) fn structural_violations(poly: &LaurentPoly, dim: i64, coprime: bool) -> Vec<String> {
    let mut out = Vec::new();
    if !poly.is_integral() {
        out.push("non-integer coefficient".to_string());
    }
    if poly.terms().any(|(_, c)| c.is_negative()) {
        out.push("negative coefficient".to_string());
    }
    if let Some((e, _)) = poly.terms().find(|(e, _)| (e - dim).rem_euclid(2) != 0) {
        out.push(format!("exponent {e} has parity different from {dim}"));
    }
    if coprime {
        if poly.degree() != Some(dim) {
            out.push(format!("top degree {:?}, expected {dim}", poly.degree()));
        } else if !poly.leading_coeff().is_some_and(|c| *c == Rational::from_integer(1.into())) {
            out.push("leading coefficient is not 1".to_string());
        }
    }
    out
}

/// Weighted count of all representations of dimension vector `m`:
/// `v^{-chi(m, m)} / (v^{-2})_m`.
pub fn j_q(quiver: &QuiverConfig, m: &DimVector) -> PochFraction {
    let chi = quiver.euler_form(m, m);
    let (unit, den) = poch_denominator(m);
    // dividing by the unit v^{-e} multiplies by v^{e}
    let unit_exp = unit.low_degree().unwrap_or(0);
    PochFraction::new(LaurentPoly::v_pow(-chi - unit_exp), den)
}

/// Partitions of `d` into exactly `r` positive parts, parts non-increasing.
fn partitions_exact(d: i64, r: u32) -> Vec<Vec<i64>> {
    fn go(left: i64, parts: u32, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let p = i64::from(parts);
        // each remaining part lies in [1, max]
        if left < p || left > p * max {
            return;
        }
        for first in (1..=max.min(left - (p - 1))).rev() {
            cur.push(first);
            go(left - first, parts - 1, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && d >= i64::from(r) {
        go(d, r, d, &mut Vec::new(), &mut out);
    }
    out
}

/// `dim Hom(O(a), O(b)) = max(b - a + 1, 0)` on the projective line.
fn h0_line(a: i64, b: i64) -> i64 {
    (b - a + 1).max(0)
}

/// Contribution of the positive bundle `⊕ O(λ_k)` to `J⁺_L`:
/// `v^{-ell r^2 + 2 h0(E, E⊗L) - 2 h0(E, E)} / (v^{-2})_m`.
fn splitting_type_weight(ell: i64, parts: &[i64]) -> PochFraction {
    let r = parts.len() as i64;
    let mut power = -ell * r * r;
    for &a in parts {
        for &b in parts {
            power += 2 * h0_line(a, b + ell) - 2 * h0_line(a, b);
        }
    }
    // multiplicities of equal parts; (1 - v^{-2k}) = v^{-2k} (v^{2k} - 1)
    let mut den = PochDenominator::new();
    let mut start = 0;
    while start < parts.len() {
        let mut end = start;
        while end < parts.len() && parts[end] == parts[start] {
            end += 1;
        }
        for k in 1..=(end - start) as u32 {
            den.push(k, 1);
            power += 2 * i64::from(k);
        }
        start = end;
    }
    PochFraction::new(LaurentPoly::v_pow(power), den)
}

/// Weighted count `J⁺_L(r, d)` of positive Higgs bundles, summed over
/// splitting types `⊕ O(λ_k)` with all `λ_k >= 1`.
pub fn j_l_plus(quiver: &QuiverConfig, r: u32, d: i64) -> PochFraction {
    let ell = i64::from(quiver.ell);
    let terms: Vec<PochFraction> = partitions_exact(d, r)
        .iter()
        .map(|parts| splitting_type_weight(ell, parts))
        .collect();
    PochFraction::sum(&terms)
}

/// `1 + sum J⁺_L(r, d) z^r t^d` over the box of `cfg`.
pub fn build_positive_series(cfg: &PipelineConfig) -> BigradedSeries {
    let quiver = cfg.quiver();
    let bound = cfg.bound();
    let mut s = BigradedSeries::one(bound);
    for r in 1..=bound.rmax {
        for d in r..=bound.dmax {
            s.set(Bidegree::new(r, d), j_l_plus(&quiver, r, i64::from(d)));
        }
    }
    s
}

/// Same series, but each coefficient is assembled from per-vector weights
/// `weight(m)` over positive dimension vectors. With [`j_q`] this is the
/// quiver-side route to the same series.
pub fn build_positive_series_with<F>(bound: BoxBound, weight: F) -> BigradedSeries
where
    F: Fn(&DimVector) -> PochFraction,
{
    let mut s = BigradedSeries::one(bound);
    for r in 1..=bound.rmax {
        for d in r..=bound.dmax {
            let d = i64::from(d);
            let terms: Vec<PochFraction> = enumerate_dimvecs(r, d, (1, d)).iter().map(&weight).collect();
            s.set(Bidegree::new(r, d as u32), PochFraction::sum(&terms));
        }
    }
    s
}

/// `(v - v⁻¹) * [Log A]_{(r, d)}` as an integral Laurent polynomial.
pub fn extract_omega(log: &BigradedSeries, r: u32, d: u32) -> Result<LaurentPoly> {
    log.coeff(&Bidegree::new(r, d))
        .mul_poly(&motivic_normalizer())
        .to_laurent()
}

fn positive_degree(d: i64) -> Result<u32> {
    u32::try_from(d)
        .ok()
        .filter(|d| *d >= 1)
        .ok_or_else(|| Error::InvalidInput(format!("degree {d} must be a positive 32-bit integer")))
}

fn positive_rank(r: u32) -> Result<()> {
    if r == 0 {
        Err(Error::InvalidInput("rank must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `Ω⁺_L(r, d)` from the box `(r, d)`.
pub fn omega_l_plus(quiver: &QuiverConfig, r: u32, d: i64) -> Result<LaurentPoly> {
    positive_rank(r)?;
    let d = positive_degree(d)?;
    let cfg = PipelineConfig::new(quiver.ell, r, d);
    let log = build_positive_series(&cfg).pleth_log()?;
    extract_omega(&log, r, d)
}

/// `ell * r(r-1)/2`; degrees above it are in the stable range.
pub fn stability_threshold(ell: u32, r: u32) -> i64 {
    i64::from(ell) * i64::from(r) * (i64::from(r) - 1) / 2
}

/// Smallest `d + k r` (`k >= 0`) above the stability threshold; `d` itself
/// if it already is.
pub fn normalize_degree(quiver: &QuiverConfig, r: u32, d: i64) -> i64 {
    assert!(r >= 1);
    let threshold = stability_threshold(quiver.ell, r);
    if d > threshold {
        return d;
    }
    let r = i64::from(r);
    let k = (threshold - d).div_euclid(r) + 1;
    d + k * r
}

/// Smallest degree above the stability threshold that is coprime to `r`.
/// Used for table rows.
pub fn table_degree(ell: u32, r: u32) -> i64 {
    let start = stability_threshold(ell, r) + 1;
    (start..start + i64::from(r))
        .find(|d| d.gcd(&i64::from(r)) == 1)
        .unwrap_or(start)
}

/// `Ω_L(r, d)` for any integer `d`, via periodicity in `d` and the stable
/// range.
pub fn omega_l(quiver: &QuiverConfig, r: u32, d: i64) -> Result<OmegaValue> {
    positive_rank(r)?;
    let stable_d = normalize_degree(quiver, r, d);
    let poly = omega_l_plus(quiver, r, stable_d)?;
    Ok(OmegaValue {
        ell: quiver.ell,
        r,
        d,
        stable_d,
        poly,
    })
}

/// Quiver DT invariant `Ω_Q(m)`, computed in the pointwise box `[0, m]`.
pub fn omega_q(quiver: &QuiverConfig, m: &DimVector) -> Result<LaurentPoly> {
    if m.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let series = DimGradedSeries::from_coeffs(
        m.clone(),
        m.sub_vectors().into_iter().map(|sub| {
            let w = j_q(quiver, &sub);
            (sub, w)
        }),
    );
    series
        .pleth_log()?
        .coeff(m)
        .mul_poly(&motivic_normalizer())
        .to_laurent()
}

/// Stacky count `I⁺_L(r, d)` of semistable positive Higgs bundles: the
/// `(r, d)` coefficient of the slope factor of ray `d / r`.
pub fn i_semistable(quiver: &QuiverConfig, r: u32, d: i64) -> Result<PochFraction> {
    positive_rank(r)?;
    let d = positive_degree(d)?;
    let cfg = PipelineConfig::new(quiver.ell, r, d);
    let theta = Rational::new(BigInt::from(d), BigInt::from(r));
    let factor = build_positive_series(&cfg).slope_factor(&theta)?;
    Ok(factor.coeff(&Bidegree::new(r, d)))
}

#[derive(Debug, Clone)]
pub struct Theorem2Report {
    pub r: u32,
    pub d: i64,
    pub omega_l: LaurentPoly,
    pub quiver_sum: LaurentPoly,
    /// `Ω_Q(m)` for each positive `m` with `r(m) = r`, `d(m) = d`.
    pub summands: Vec<(DimVector, LaurentPoly)>,
    /// Number of vectors touching `[1 - margin, 0]` that were checked.
    pub extra_checked: usize,
    /// Vectors touching nonpositive vertices with nonzero `Ω_Q`.
    pub nonvanishing_extra: Vec<(DimVector, LaurentPoly)>,
}

impl Theorem2Report {
    pub fn passed(&self) -> bool {
        self.omega_l == self.quiver_sum && self.nonvanishing_extra.is_empty()
    }
}

/// Compares `Ω_L(r, d)` with `sum Ω_Q(m)` over positive vectors and checks
/// that vectors reaching into `[1 - margin, 0]` contribute nothing.
pub fn check_theorem2(quiver: &QuiverConfig, r: u32, d: i64, margin: u32) -> Result<Theorem2Report> {
    positive_rank(r)?;
    if d <= stability_threshold(quiver.ell, r) {
        return Err(Error::InvalidInput(format!(
            "degree {d} is not above ell*r(r-1)/2 = {}",
            stability_threshold(quiver.ell, r)
        )));
    }
    let omega_l = omega_l(quiver, r, d)?.poly;
    let summands = enumerate_dimvecs(r, d, (1, d))
        .into_iter()
        .map(|m| {
            let w = omega_q(quiver, &m)?;
            Ok((m, w))
        })
        .collect::<Result<Vec<_>>>()?;
    let quiver_sum = summands
        .iter()
        .fold(LaurentPoly::zero(), |acc, (_, w)| acc + w.clone());

    let extra: Vec<DimVector> = enumerate_dimvecs(r, d, (1 - i64::from(margin), d))
        .into_iter()
        .filter(|m| m.support_bounds().is_some_and(|(lo, _)| lo <= 0))
        .collect();
    let mut nonvanishing_extra = Vec::new();
    for m in &extra {
        let w = omega_q(quiver, m)?;
        if !w.is_zero() {
            nonvanishing_extra.push((m.clone(), w));
        }
    }
    Ok(Theorem2Report {
        r,
        d,
        omega_l,
        quiver_sum,
        summands,
        extra_checked: extra.len(),
        nonvanishing_extra,
    })
}

#[derive(Debug, Clone)]
pub struct DIndependenceReport {
    pub r: u32,
    pub values: Vec<OmegaValue>,
}

impl DIndependenceReport {
    pub fn passed(&self) -> bool {
        self.values.windows(2).all(|w| w[0].poly == w[1].poly)
    }
}

/// Computes `Ω_L(r, d)` for each listed degree.
pub fn check_d_independence(quiver: &QuiverConfig, r: u32, degrees: &[i64]) -> Result<DIndependenceReport> {
    let values = degrees
        .iter()
        .map(|&d| omega_l(quiver, r, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(DIndependenceReport { r, values })
}

#[derive(Debug, Clone)]
pub struct ShiftReport {
    pub m: DimVector,
    pub before: LaurentPoly,
    pub after: LaurentPoly,
}

impl ShiftReport {
    pub fn passed(&self) -> bool {
        self.before == self.after
    }
}

/// `Ω_Q(m)` against `Ω_Q(m[1])`.
pub fn check_shift_invariance(quiver: &QuiverConfig, m: &DimVector) -> Result<ShiftReport> {
    Ok(ShiftReport {
        m: m.clone(),
        before: omega_q(quiver, m)?,
        after: omega_q(quiver, &m.shift(1))?,
    })
}

#[derive(Debug, Clone)]
pub struct HnProductReport {
    pub bound: BoxBound,
    pub rays: usize,
    /// Grades where the product of slope factors differs from the series.
    pub mismatches: Vec<Bidegree>,
}

impl HnProductReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Multiplies the slope factors of the positive series over every ray in
/// the box and compares with the series itself.
pub fn check_hn_product(cfg: &PipelineConfig) -> Result<HnProductReport> {
    let series = build_positive_series(cfg);
    let factors = series.slope_factors()?;
    let mut product = BigradedSeries::one(cfg.bound());
    for (_, f) in &factors {
        product = product.mul(f)?;
    }
    let diff = product.sub(&series)?;
    Ok(HnProductReport {
        bound: cfg.bound(),
        rays: factors.len(),
        mismatches: diff.iter().map(|(g, _)| *g).collect(),
    })
}

pub fn is_nonnegative(poly: &LaurentPoly) -> bool {
    poly.terms().all(|(_, c)| !c.is_negative())
}
