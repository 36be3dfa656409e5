//! Truncated graded generating series with [`PochFraction`] coefficients.
//!
//! Two gradings are used: by `(rank, degree)` for the Higgs side and by
//! dimension vectors for the quiver side. Every series carries a truncation
//! bound and all operations discard grades outside it. Coefficients inside
//! the bound are exact because each output grade only depends on smaller
//! input grades.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::quiver::DimVector;
use crate::ring::{mobius, PochFraction, Rational};

/// A grading monoid with a truncation bound.
pub trait Grade: Clone + Ord + fmt::Debug {
    type Bound: Clone + PartialEq + fmt::Debug;

    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn scale(&self, n: u32) -> Self;
    fn within(&self, bound: &Self::Bound) -> bool;
    /// Additive weight, strictly positive on nonzero grades.
    fn weight(&self) -> u64;
    /// Every grade inside the bound, sorted by weight.
    fn grades_within(bound: &Self::Bound) -> Vec<Self>;
}

/// Grade `(r, d)` tracking rank and degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub r: u32,
    pub d: u32,
}

impl Bidegree {
    pub fn new(r: u32, d: u32) -> Self {
        Self { r, d }
    }
}

/// Rectangular box `0 <= r <= rmax`, `0 <= d <= dmax`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxBound {
    pub rmax: u32,
    pub dmax: u32,
}

impl BoxBound {
    pub fn new(rmax: u32, dmax: u32) -> Self {
        Self { rmax, dmax }
    }
}

impl Grade for Bidegree {
    type Bound = BoxBound;

    fn zero() -> Self {
        Self::new(0, 0)
    }

    fn is_zero(&self) -> bool {
        self.r == 0 && self.d == 0
    }

    fn add(&self, other: &Self) -> Self {
        Self::new(self.r + other.r, self.d + other.d)
    }

    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(Self::new(
            self.r.checked_sub(other.r)?,
            self.d.checked_sub(other.d)?,
        ))
    }

    fn scale(&self, n: u32) -> Self {
        Self::new(self.r * n, self.d * n)
    }

    fn within(&self, bound: &BoxBound) -> bool {
        self.r <= bound.rmax && self.d <= bound.dmax
    }

    fn weight(&self) -> u64 {
        u64::from(self.r) + u64::from(self.d)
    }

    fn grades_within(bound: &BoxBound) -> Vec<Self> {
        let mut out: Vec<Self> = (0..=bound.rmax)
            .flat_map(|r| (0..=bound.dmax).map(move |d| Self::new(r, d)))
            .collect();
        out.sort_by_key(|g| (g.weight(), *g));
        out
    }
}

impl Grade for DimVector {
    type Bound = DimVector;

    fn zero() -> Self {
        DimVector::zero()
    }

    fn is_zero(&self) -> bool {
        DimVector::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        DimVector::add(self, other)
    }

    fn checked_sub(&self, other: &Self) -> Option<Self> {
        DimVector::checked_sub(self, other)
    }

    fn scale(&self, n: u32) -> Self {
        DimVector::scale(self, n)
    }

    fn within(&self, bound: &DimVector) -> bool {
        self.le(bound)
    }

    fn weight(&self) -> u64 {
        self.rank()
    }

    fn grades_within(bound: &DimVector) -> Vec<Self> {
        let mut out = bound.sub_vectors();
        out.sort_by_key(|g| g.rank());
        out
    }
}

/// Truncated series `sum_g c_g z^g`.
#[derive(Clone)]
pub struct Series<G: Grade> {
    bound: G::Bound,
    coeffs: BTreeMap<G, PochFraction>,
}

/// Series graded by `(rank, degree)`.
pub type BigradedSeries = Series<Bidegree>;
/// Series graded by dimension vectors, truncated pointwise.
pub type DimGradedSeries = Series<DimVector>;

impl<G: Grade> Series<G> {
    pub fn zero(bound: G::Bound) -> Self {
        Self {
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(bound: G::Bound) -> Self {
        Self::zero(bound).with(G::zero(), PochFraction::one())
    }

    /// Grades outside the bound and zero coefficients are dropped; repeated
    /// grades are summed.
    pub fn from_coeffs<I>(bound: G::Bound, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (G, PochFraction)>,
    {
        let mut s = Self::zero(bound);
        for (g, c) in coeffs {
            s.add_at(g, &c);
        }
        s
    }

    /// Builder form of [`Series::set`].
    pub fn with(mut self, g: G, c: PochFraction) -> Self {
        self.set(g, c);
        self
    }

    pub fn set(&mut self, g: G, c: PochFraction) {
        if !g.within(&self.bound) || c.is_zero() {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, c);
        }
    }

    fn add_at(&mut self, g: G, c: &PochFraction) {
        if !g.within(&self.bound) || c.is_zero() {
            return;
        }
        let updated = match self.coeffs.get(&g) {
            Some(old) => old + c,
            None => c.clone(),
        };
        self.set(g, updated);
    }

    pub fn bound(&self) -> &G::Bound {
        &self.bound
    }

    pub fn get(&self, g: &G) -> Option<&PochFraction> {
        self.coeffs.get(g)
    }

    pub fn coeff(&self, g: &G) -> PochFraction {
        self.coeffs.get(g).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> PochFraction {
        self.coeff(&G::zero())
    }

    /// Nonzero coefficients in grade order.
    pub fn iter(&self) -> impl Iterator<Item = (&G, &PochFraction)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_bound(&self, other: &Self) -> Result<()> {
        if self.bound == other.bound {
            Ok(())
        } else {
            Err(Error::BoxMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_bound(other)?;
        let mut out = self.clone();
        for (g, c) in other.iter() {
            out.add_at(g.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(
            self.bound.clone(),
            self.coeffs.iter().map(|(g, c)| (g.clone(), c.scale(s))),
        )
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_bound(other)?;
        let mut buckets: BTreeMap<G, Vec<PochFraction>> = BTreeMap::new();
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                let g = a.add(b);
                if g.within(&self.bound) {
                    buckets.entry(g).or_default().push(ca * cb);
                }
            }
        }
        Ok(Self::from_coeffs(
            self.bound.clone(),
            buckets
                .into_iter()
                .map(|(g, terms)| (g, PochFraction::sum(&terms))),
        ))
    }

    /// Adams operation: grade `g -> n g`, coefficient `v -> (-1)^{n+1} v^n`.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operations are indexed by n >= 1");
        Self::from_coeffs(
            self.bound.clone(),
            self.coeffs.iter().map(|(g, c)| (g.scale(n), c.adams(n))),
        )
    }

    /// Classical logarithm of a series with constant term 1.
    ///
    /// Uses the weight derivation `D z^g = w(g) z^g`: from `D A = A D(log A)`,
    /// `w(g) F_g = w(g) A_g - sum_{b != 0} w(g - b) F_{g - b} A_b`.
    pub fn log(&self) -> Result<Self> {
        if self.constant_term() != PochFraction::one() {
            return Err(Error::BadConstantTerm { expected: "1" });
        }
        let mut out = Self::zero(self.bound.clone());
        for g in G::grades_within(&self.bound) {
            if g.is_zero() {
                continue;
            }
            let mut terms = Vec::new();
            for (b, ab) in self.iter() {
                if b.is_zero() {
                    continue;
                }
                let Some(a) = g.checked_sub(b) else { continue };
                if a.is_zero() {
                    continue;
                }
                if let Some(fa) = out.get(&a) {
                    terms.push((fa * ab).scale(&Rational::from_integer(BigInt::from(a.weight()))));
                }
            }
            let correction = PochFraction::sum(&terms)
                .scale(&Rational::new(BigInt::one(), BigInt::from(g.weight())));
            let fg = &self.coeff(&g) - &correction;
            out.set(g, fg);
        }
        Ok(out)
    }

    /// Classical exponential of a series with constant term 0.
    ///
    /// `w(g) E_g = sum_{a != 0} w(a) F_a E_{g - a}`, `E_0 = 1`.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::BadConstantTerm { expected: "0" });
        }
        let mut out = Self::one(self.bound.clone());
        for g in G::grades_within(&self.bound) {
            if g.is_zero() {
                continue;
            }
            let mut terms = Vec::new();
            for (a, fa) in self.iter() {
                let Some(b) = g.checked_sub(a) else { continue };
                if let Some(eb) = out.get(&b) {
                    terms.push((fa * eb).scale(&Rational::from_integer(BigInt::from(a.weight()))));
                }
            }
            let eg = PochFraction::sum(&terms)
                .scale(&Rational::new(BigInt::one(), BigInt::from(g.weight())));
            out.set(g, eg);
        }
        Ok(out)
    }

    /// Largest `n` for which some Adams image of a grade in `self` can stay
    /// inside the bound.
    fn adams_range(&self) -> u32 {
        let max_weight = G::grades_within(&self.bound)
            .last()
            .map(|g| g.weight())
            .unwrap_or(0);
        let min_weight = self
            .iter()
            .filter(|(g, _)| !g.is_zero())
            .map(|(g, _)| g.weight())
            .min()
            .unwrap_or(1);
        u32::try_from(max_weight / min_weight).unwrap_or(u32::MAX).max(1)
    }

    /// Plethystic logarithm `Log A = sum_{n >= 1} mu(n)/n psi_n(log A)`.
    pub fn pleth_log(&self) -> Result<Self> {
        let ln = self.log()?;
        let mut out = Self::zero(self.bound.clone());
        for n in 1..=ln.adams_range() {
            let mu = mobius(u64::from(n));
            if mu == 0 {
                continue;
            }
            let factor = Rational::new(BigInt::from(mu), BigInt::from(n));
            out = out.add(&ln.adams(n).scale(&factor))?;
        }
        Ok(out)
    }

    /// Plethystic exponential `Exp F = exp(sum_{n >= 1} psi_n(F)/n)`.
    pub fn pleth_exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::BadConstantTerm { expected: "0" });
        }
        let mut arg = Self::zero(self.bound.clone());
        for n in 1..=self.adams_range() {
            let factor = Rational::new(BigInt::one(), BigInt::from(n));
            arg = arg.add(&self.adams(n).scale(&factor))?;
        }
        arg.exp()
    }
}

impl<G: Grade> PartialEq for Series<G> {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound
            && self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .all(|(g, c)| other.get(g).is_some_and(|d| d == c))
    }
}

impl<G: Grade> fmt::Debug for Series<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Series")
            .field("bound", &self.bound)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

fn on_ray(g: &Bidegree, theta: &Rational) -> bool {
    g.r > 0 && BigInt::from(g.d) * theta.denom() == BigInt::from(g.r) * theta.numer()
}

impl BigradedSeries {
    /// Keeps only grades with `d / r = theta`; the constant term is dropped.
    pub fn ray_restrict(&self, theta: &Rational) -> Self {
        Self::from_coeffs(
            self.bound,
            self.iter()
                .filter(|(g, _)| on_ray(g, theta))
                .map(|(g, c)| (*g, c.clone())),
        )
    }

    /// Distinct slopes `d / r` of grades with `r >= 1` inside the box,
    /// ascending.
    pub fn rays(&self) -> Vec<Rational> {
        let mut rays: Vec<Rational> = Bidegree::grades_within(&self.bound)
            .into_iter()
            .filter(|g| g.r > 0)
            .map(|g| Rational::new(BigInt::from(g.d), BigInt::from(g.r)))
            .collect();
        rays.sort();
        rays.dedup();
        rays
    }

    /// Every slope factor of the box, computing `Log A` once.
    pub fn slope_factors(&self) -> Result<Vec<(Rational, Self)>> {
        let log = self.pleth_log()?;
        self.rays()
            .into_iter()
            .map(|theta| {
                let factor = log.ray_restrict(&theta).pleth_exp()?;
                Ok((theta, factor))
            })
            .collect()
    }

    /// The factor of the slope factorization supported on the ray `theta`:
    /// `Exp` of the ray part of `Log A`.
    pub fn slope_factor(&self, theta: &Rational) -> Result<Self> {
        self.pleth_log()?.ray_restrict(theta).pleth_exp()
    }
}
