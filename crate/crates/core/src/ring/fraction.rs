use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::quiver::DimVector;

/// Multiset of positive indices; index `i` stands for one factor `v^{2i} - 1`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PochDenominator {
    counts: BTreeMap<u32, u32>,
}

impl PochDenominator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(indices: I) -> Self {
        let mut den = Self::new();
        for i in indices {
            den.push(i, 1);
        }
        den
    }

    /// The denominator of `(q)_n`: indices `1..=n`, each once.
    pub fn pochhammer(n: u32) -> Self {
        Self::from_indices(1..=n)
    }

    pub fn push(&mut self, index: u32, times: u32) {
        assert!(index >= 1, "Pochhammer factor indices start at 1");
        if times > 0 {
            *self.counts.entry(index).or_insert(0) += times;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, index: u32) -> u32 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// `(index, multiplicity)` pairs in ascending index order.
    pub fn counts(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.counts.iter().map(|(i, c)| (*i, *c))
    }

    /// All indices with repetition, ascending.
    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.counts
            .iter()
            .flat_map(|(i, c)| std::iter::repeat_n(*i, *c as usize))
    }

    /// Per-index maximum; a common multiple of both denominators.
    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.counts() {
            let e = out.counts.entry(i).or_insert(0);
            *e = (*e).max(c);
        }
        out
    }

    /// Multiset sum.
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.counts() {
            out.push(i, c);
        }
        out
    }

    /// Factors of `self` not present in `other` (multiset difference).
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (i, c) in self.counts() {
            out.push(i, c.saturating_sub(other.count(i)));
        }
        out
    }

    /// Image under `v -> v^n`: index `i` becomes `n i`.
    pub fn adams(&self, n: u32) -> Self {
        Self {
            counts: self.counts.iter().map(|(i, c)| (i * n, *c)).collect(),
        }
    }

    /// Expanded product of all factors.
    pub fn product(&self) -> LaurentPoly {
        poch_factor_product(self)
    }
}

impl fmt::Debug for PochDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// `prod_{i in den} (v^{2i} - 1)`.
pub fn poch_factor_product(den: &PochDenominator) -> LaurentPoly {
    den.indices()
        .fold(LaurentPoly::one(), |acc, i| acc.mul_poch_factor(i))
}

/// Rewrites `(L^{-1})_m = prod_i prod_{k=1}^{m_i} (1 - v^{-2k})` as
/// `unit * prod (v^{2k} - 1)`, using `1 - v^{-2k} = v^{-2k} (v^{2k} - 1)`.
///
/// Returns `(unit, den)` with `unit = v^{-sum_i m_i (m_i + 1)}`.
pub fn poch_denominator(m: &DimVector) -> (LaurentPoly, PochDenominator) {
    let mut den = PochDenominator::new();
    let mut exp = 0i64;
    for (_, mult) in m.entries() {
        for k in 1..=mult {
            den.push(k, 1);
        }
        exp -= i64::from(mult) * (i64::from(mult) + 1);
    }
    (LaurentPoly::v_pow(exp), den)
}

/// A Laurent polynomial over a product of Pochhammer factors.
///
/// Equality is cross-multiplication equality; representatives are never
/// reduced until [`PochFraction::to_laurent`].
#[derive(Clone, Default)]
pub struct PochFraction {
    num: LaurentPoly,
    den: PochDenominator,
}

impl PochFraction {
    pub fn new(num: LaurentPoly, den: PochDenominator) -> Self {
        if num.is_zero() {
            Self::zero()
        } else {
            Self { num, den }
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self::new(num, PochDenominator::new())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &PochDenominator {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// Numerator rewritten over the larger denominator `target`, which must
    /// contain `self.den`.
    fn num_over(&self, target: &PochDenominator) -> LaurentPoly {
        target
            .difference(&self.den)
            .indices()
            .fold(self.num.clone(), |acc, i| acc.mul_poch_factor(i))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let den = self.den.lcm(&other.den);
        let a = self.num_over(&den);
        let b = other.num_over(&den);
        Self::new(if negate { a - b } else { a + b }, den)
    }

    /// Sums many fractions over a single common denominator.
    pub fn sum<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = &'a PochFraction>,
    {
        let terms: Vec<&PochFraction> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        match terms.len() {
            0 => return Self::zero(),
            1 => return terms[0].clone(),
            _ => {}
        }
        let den = terms
            .iter()
            .fold(PochDenominator::new(), |acc, t| acc.lcm(&t.den));
        let num = terms
            .iter()
            .fold(LaurentPoly::zero(), |acc, t| acc + t.num_over(&den));
        Self::new(num, den)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.num.scale(s), self.den.clone())
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::new(&self.num * p, self.den.clone())
    }

    /// Adams operation `v -> (-1)^{n+1} v^n` (see
    /// [`LaurentPoly::twisted_adams`]); each factor `v^{2i} - 1` becomes
    /// `v^{2ni} - 1`.
    pub fn adams(&self, n: u32) -> Self {
        Self::new(self.num.twisted_adams(n), self.den.adams(n))
    }

    /// Divides out every denominator factor exactly and requires the result
    /// to have integer coefficients.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        let mut p = self.num.clone();
        for i in self.den.indices() {
            p = p.div_poch_factor(i).ok_or_else(|| {
                Error::IntegralityViolation(format!(
                    "{} is not divisible by v^{} - 1",
                    self.num,
                    2 * i
                ))
            })?;
        }
        if !p.is_integral() {
            return Err(Error::IntegralityViolation(format!(
                "non-integer coefficient in {p}"
            )));
        }
        Ok(p)
    }
}

impl PartialEq for PochFraction {
    fn eq(&self, other: &Self) -> bool {
        let den = self.den.lcm(&other.den);
        self.num_over(&den) == other.num_over(&den)
    }
}

impl fmt::Debug for PochFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "({})", self.num)
        } else {
            write!(f, "({}) / {:?}", self.num, self.den)
        }
    }
}

impl Add for &PochFraction {
    type Output = PochFraction;
    fn add(self, rhs: &PochFraction) -> PochFraction {
        self.combine(rhs, false)
    }
}

impl Sub for &PochFraction {
    type Output = PochFraction;
    fn sub(self, rhs: &PochFraction) -> PochFraction {
        self.combine(rhs, true)
    }
}

impl Mul for &PochFraction {
    type Output = PochFraction;
    fn mul(self, rhs: &PochFraction) -> PochFraction {
        if self.is_zero() || rhs.is_zero() {
            return PochFraction::zero();
        }
        PochFraction::new(&self.num * &rhs.num, self.den.union(&rhs.den))
    }
}

impl Neg for &PochFraction {
    type Output = PochFraction;
    fn neg(self) -> PochFraction {
        PochFraction::new(-&self.num, self.den.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms.iter().copied())
    }

    fn frac(terms: &[(i64, i64)], den: &[u32]) -> PochFraction {
        PochFraction::new(p(terms), PochDenominator::from_indices(den.iter().copied()))
    }

    #[test]
    fn factor_products() {
        assert_eq!(poch_factor_product(&PochDenominator::new()), LaurentPoly::one());
        assert_eq!(
            poch_factor_product(&PochDenominator::from_indices([1])),
            p(&[(2, 1), (0, -1)])
        );
        assert_eq!(
            poch_factor_product(&PochDenominator::from_indices([1, 2])),
            p(&[(6, 1), (4, -1), (2, -1), (0, 1)])
        );
    }

    #[test]
    fn pochhammer_rewrite() {
        let (unit, den) = poch_denominator(&DimVector::delta(1));
        assert_eq!(unit, LaurentPoly::v_pow(-2));
        assert_eq!(den, PochDenominator::from_indices([1]));

        // (1 - v^-2)(1 - v^-4) expanded by hand: 1 - v^-2 - v^-4 + v^-6
        let m = DimVector::from_pairs([(1, 2)]);
        let (unit, den) = poch_denominator(&m);
        assert_eq!(unit, LaurentPoly::v_pow(-6));
        assert_eq!(den, PochDenominator::from_indices([1, 2]));
        assert_eq!(&unit * &den.product(), p(&[(0, 1), (-2, -1), (-4, -1), (-6, 1)]));

        let (unit, den) = poch_denominator(&DimVector::zero());
        assert!(unit.is_one());
        assert!(den.is_empty());
    }

    #[test]
    fn pochhammer_recurrence() {
        // (q)_n = (q)_{n-1} (1 - q^n), q = v^-2
        for n in 1..8u32 {
            let (u_n, d_n) = poch_denominator(&DimVector::from_pairs([(0, n)]));
            let (u_prev, d_prev) = poch_denominator(&DimVector::from_pairs([(0, n - 1)]));
            let lhs = &u_n * &d_n.product();
            let one_minus = &LaurentPoly::one() - &LaurentPoly::v_pow(-2 * i64::from(n));
            let rhs = &(&u_prev * &d_prev.product()) * &one_minus;
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn arithmetic_examples() {
        let a = frac(&[(0, 1)], &[1]);
        let sum = &a + &a;
        assert_eq!(sum.num(), &p(&[(0, 2)]));
        assert_eq!(sum.den(), &PochDenominator::from_indices([1]));

        let prod = &frac(&[(3, 1)], &[1]) * &frac(&[(1, 1)], &[1]);
        assert_eq!(prod.num(), &p(&[(4, 1)]));
        assert_eq!(prod.den(), &PochDenominator::from_indices([1, 1]));

        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let scaled = frac(&[(1, 1)], &[]).scale(&half);
        assert_eq!(scaled.num(), &LaurentPoly::monomial(1, half));
        assert!(scaled.den().is_empty());
    }

    #[test]
    fn conversion() {
        let err = frac(&[(8, 1), (6, -1)], &[1, 1]).to_laurent();
        assert!(matches!(err, Err(Error::IntegralityViolation(_))));
        assert_eq!(frac(&[(3, 1), (1, -1)], &[1]).to_laurent().unwrap(), p(&[(1, 1)]));
        // (v - v^-1) v^6 / (v^2 - 1) = v^5
        let x = PochFraction::new(p(&[(7, 1), (5, -1)]), PochDenominator::from_indices([1]));
        assert_eq!(x.to_laurent().unwrap(), p(&[(5, 1)]));
        let half = frac(&[(0, 1)], &[]).scale(&Rational::new(BigInt::from(1), BigInt::from(2)));
        assert!(half.to_laurent().is_err());
    }

    #[test]
    fn equality_is_representative_free() {
        let a = frac(&[(1, 1)], &[]);
        let b = PochFraction::new(p(&[(1, 1)]).mul_poch_factor(2), PochDenominator::from_indices([2]));
        assert_eq!(a, b);
        assert_ne!(a, frac(&[(1, 1)], &[1]));
    }

    fn small_frac() -> impl Strategy<Value = PochFraction> {
        (
            prop::collection::vec((-4i64..5, -3i64..4), 0..4),
            prop::collection::vec(1u32..4, 0..3),
        )
            .prop_map(|(t, d)| {
                PochFraction::new(LaurentPoly::from_int_terms(t), PochDenominator::from_indices(d))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in small_frac(), b in small_frac(), c in small_frac()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn conversion_inverts_multiplication(a in small_frac()) {
            if let Ok(poly) = a.to_laurent() {
                prop_assert_eq!(&poly * &a.den().product(), a.num().clone());
            }
            let cleared = a.mul_poly(&a.den().product());
            prop_assert_eq!(cleared.to_laurent().unwrap(), a.num().clone());
        }

        #[test]
        fn adams_is_multiplicative(a in small_frac(), b in small_frac(), n in 1u32..4) {
            prop_assert_eq!((&a * &b).adams(n), &a.adams(n) * &b.adams(n));
            prop_assert_eq!((&a + &b).adams(n), &a.adams(n) + &b.adams(n));
        }
    }
}
