use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Sparse Laurent polynomial in `v` with exact rational coefficients.
///
/// Terms are kept sorted by ascending exponent and no stored coefficient is
/// zero, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, Rational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// `coeff * v^exp`.
    pub fn monomial(exp: i64, coeff: Rational) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, coeff)] }
        }
    }

    /// `v^exp` with coefficient one.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(exp, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs;
    /// repeated exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (e, Rational::from_integer(BigInt::from(c)))),
        )
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Integer coefficients in ascending exponent order, or `None` if some
    /// coefficient is not an integer.
    pub fn integer_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.is_integer().then(|| (*e, c.to_integer())))
            .collect()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Multiplies by `v^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Adams operation `v -> v^n`.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operations are indexed by n >= 1");
        let n = i64::from(n);
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * n, c.clone())).collect(),
        }
    }

    /// Adams operation of the lambda-ring in which `-v` is a line element:
    /// `v -> (-1)^{n+1} v^n`. This is the operation the plethystic calculus
    /// uses; it differs from [`LaurentPoly::adams`] by the sign of odd powers
    /// when `n` is even.
    pub fn twisted_adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operations are indexed by n >= 1");
        let flip = n.is_multiple_of(2);
        let n = i64::from(n);
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let c = if flip && e.rem_euclid(2) == 1 { -c } else { c.clone() };
                    (e * n, c)
                })
                .collect(),
        }
    }

    /// Multiplies by the Pochhammer factor `v^{2i} - 1`.
    pub fn mul_poch_factor(&self, i: u32) -> Self {
        let step = 2 * i64::from(i);
        self.shift(step) - self.clone()
    }

    /// Exact division by `v^{2i} - 1`; `None` if the division leaves a
    /// remainder.
    pub fn div_poch_factor(&self, i: u32) -> Option<Self> {
        assert!(i >= 1);
        let (Some(lo), Some(hi)) = (self.low_degree(), self.degree()) else {
            return Some(Self::zero());
        };
        let step = 2 * i64::from(i);
        if hi - lo < step {
            return None;
        }
        let dense = self.to_dense(lo, hi);
        // p = q (v^step - 1): q_e = q_{e-step} - p_e for the low part, the
        // top `step` coefficients of p must then equal the shifted quotient.
        let qlen = (hi - lo - step + 1) as usize;
        let s = step as usize;
        let mut q: Vec<Rational> = Vec::with_capacity(qlen);
        for k in 0..qlen {
            let prev = if k >= s { q[k - s].clone() } else { Rational::zero() };
            q.push(prev - &dense[k]);
        }
        for (k, pk) in dense.iter().enumerate().skip(qlen) {
            let matches = if k >= s { q[k - s] == *pk } else { pk.is_zero() };
            if !matches {
                return None;
            }
        }
        Some(Self::from_dense(lo, q))
    }

    fn to_dense(&self, lo: i64, hi: i64) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            out[(e - lo) as usize] = c.clone();
        }
        out
    }

    fn from_dense(lo: i64, coeffs: Vec<Rational>) -> Self {
        Self {
            terms: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (lo + k as i64, c))
                .collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, ca)), Some((eb, cb))) => {
                    if ea < eb {
                        out.push((*ea, ca.clone()));
                        a.next();
                    } else if eb < ea {
                        out.push((*eb, if negate_other { -cb } else { cb.clone() }));
                        b.next();
                    } else {
                        let c = if negate_other { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((*ea, c));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ea, ca)), None) => {
                    out.push((*ea, ca.clone()));
                    a.next();
                }
                (None, Some((eb, cb))) => {
                    out.push((*eb, if negate_other { -cb } else { cb.clone() }));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.scale(c).shift(*e);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let span = (hi - lo + 1) as usize;
        if span <= 4 * self.terms.len() * other.terms.len() + 64 {
            let mut acc = vec![Rational::zero(); span];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    acc[(ea + eb - lo) as usize] += ca * cb;
                }
            }
            Self::from_dense(lo, acc)
        } else {
            Self::from_terms(
                self.terms
                    .iter()
                    .flat_map(|(ea, ca)| other.terms.iter().map(move |(eb, cb)| (ea + eb, ca * cb))),
            )
        }
    }

    /// Formats with an explicit variable name, highest power first.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, var }
    }
}

struct DisplayWith<'a> {
    poly: &'a LaurentPoly,
    var: &'a str,
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.poly.terms().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{}", self.var)?,
                (1, false) => write!(f, "{mag}*{}", self.var)?,
                (_, true) => write!(f, "{}^{e}", self.var)?,
                (_, false) => write!(f, "{mag}*{}^{e}", self.var)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("v").fmt(f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.merge(&rhs, false)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, false);
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self.merge(&rhs, true)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.product(rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.product(&rhs)
    }
}
