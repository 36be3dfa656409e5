//! Dimension vectors and the infinite symmetric quiver.
//!
//! Vertices are the integers; between `i` and `j` there are
//! `max(ell + 1 - |i - j|, 0)` arrows. A dimension vector `m` doubles as the
//! splitting type `⊕ O(i)^{m_i}` of a vector bundle on the projective line.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::Rational;

/// Finite-support map from vertices to multiplicities. Zero multiplicities
/// are never stored.
///
/// The derived ordering compares the sorted `(vertex, multiplicity)` lists
/// lexicographically.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector {
    entries: BTreeMap<i64, u32>,
}

impl DimVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector at vertex `i`.
    pub fn delta(i: i64) -> Self {
        Self::from_pairs([(i, 1)])
    }

    /// Repeated vertices are summed.
    pub fn from_pairs<I: IntoIterator<Item = (i64, u32)>>(pairs: I) -> Self {
        let mut entries = BTreeMap::new();
        for (i, k) in pairs {
            if k > 0 {
                *entries.entry(i).or_insert(0) += k;
            }
        }
        Self { entries }
    }

    /// `(vertex, multiplicity)` pairs with positive multiplicity, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.entries.iter().map(|(i, k)| (*i, *k))
    }

    pub fn get(&self, i: i64) -> u32 {
        self.entries.get(&i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `r(m) = sum_i m_i`
    pub fn rank(&self) -> u64 {
        self.entries.values().map(|k| u64::from(*k)).sum()
    }

    /// `d(m) = sum_i i m_i`
    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(i, k)| i * i64::from(*k)).sum()
    }

    pub fn slope(&self) -> Result<Rational> {
        let r = self.rank();
        if r == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Rational::new(BigInt::from(self.degree()), BigInt::from(r)))
    }

    /// Moves every entry `k` steps to the right: `m[k]_i = m_{i-k}`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, m)| (i + k, *m)).collect(),
        }
    }

    /// Smallest and largest vertex in the support.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        Some((*self.entries.keys().next()?, *self.entries.keys().next_back()?))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_pairs(self.entries().chain(other.entries()))
    }

    /// Pointwise difference, `None` unless `other <= self` pointwise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut entries = self.entries.clone();
        for (i, k) in other.entries() {
            let e = entries.get_mut(&i)?;
            match (*e).cmp(&k) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => {
                    entries.remove(&i);
                }
                std::cmp::Ordering::Greater => *e -= k,
            }
        }
        Some(Self { entries })
    }

    pub fn scale(&self, n: u32) -> Self {
        Self::from_pairs(self.entries().map(|(i, k)| (i, k * n)))
    }

    /// Exact pointwise division, `None` unless `n` divides every entry.
    pub fn divide(&self, n: u32) -> Option<Self> {
        self.entries
            .values()
            .all(|k| k % n == 0)
            .then(|| Self::from_pairs(self.entries().map(|(i, k)| (i, k / n))))
    }

    /// Pointwise `self <= bound`.
    pub fn le(&self, bound: &Self) -> bool {
        self.entries().all(|(i, k)| k <= bound.get(i))
    }

    /// Every vector `m'` with `0 <= m' <= self` pointwise, in the derived order.
    pub fn sub_vectors(&self) -> Vec<Self> {
        let mut out = vec![Self::zero()];
        for (i, k) in self.entries() {
            out = out
                .into_iter()
                .flat_map(|base| {
                    (0..=k).map(move |j| {
                        let mut next = base.clone();
                        if j > 0 {
                            next.entries.insert(i, j);
                        }
                        next
                    })
                })
                .collect();
        }
        out.sort();
        out
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (i, k)) in self.entries().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}:{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Parses `"index:multiplicity"` pairs separated by commas, e.g. `"-1:2,3:1"`.
/// The empty string is the zero vector.
impl FromStr for DimVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let mut entries = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (i, k) = part
                .split_once(':')
                .ok_or_else(|| err(format!("expected index:multiplicity, got {part:?}")))?;
            let i: i64 = i
                .trim()
                .parse()
                .map_err(|e| err(format!("bad index {i:?}: {e}")))?;
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|e| err(format!("bad multiplicity {k:?}: {e}")))?;
            if entries.contains_key(&i) {
                return Err(err(format!("vertex {i} listed twice")));
            }
            if k > 0 {
                entries.insert(i, k);
            }
        }
        Ok(Self { entries })
    }
}

/// The quiver attached to a line bundle of degree `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuiverConfig {
    pub ell: u32,
}

impl QuiverConfig {
    pub fn new(ell: u32) -> Self {
        Self { ell }
    }

    /// Number of arrows from `i` to `j`.
    pub fn arrows(&self, i: i64, j: i64) -> u64 {
        let reach = i64::from(self.ell) + 1 - (i - j).abs();
        reach.max(0) as u64
    }

    /// Euler-Ringel form
    /// `chi(m, m') = sum_i m_i m'_i - sum_{i,j} arrows(i, j) m_i m'_j`.
    pub fn euler_form(&self, m: &DimVector, m2: &DimVector) -> i64 {
        let mut chi = 0i64;
        for (i, a) in m.entries() {
            for (j, b) in m2.entries() {
                let ab = i64::from(a) * i64::from(b);
                let diag = i64::from(i == j);
                chi += ab * (diag - self.arrows(i, j) as i64);
            }
        }
        chi
    }
}

/// All dimension vectors supported in `window = (lo, hi)` with rank `r` and
/// degree `d`, sorted in [`DimVector`] order.
///
/// For `window` inside the positive integers these are the partitions of `d`
/// into exactly `r` parts.
pub fn enumerate_dimvecs(r: u32, d: i64, window: (i64, i64)) -> Vec<DimVector> {
    let (lo, hi) = window;
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut current = Vec::new();
    fill(lo, hi, r, d, &mut current, &mut out);
    out.sort();
    out
}

fn fill(
    vertex: i64,
    hi: i64,
    rank_left: u32,
    deg_left: i64,
    current: &mut Vec<(i64, u32)>,
    out: &mut Vec<DimVector>,
) {
    if rank_left == 0 {
        if deg_left == 0 {
            out.push(DimVector::from_pairs(current.iter().copied()));
        }
        return;
    }
    if vertex > hi {
        return;
    }
    // the remaining rank sits at vertices in [vertex, hi]
    let r = i64::from(rank_left);
    if deg_left < vertex * r || deg_left > hi * r {
        return;
    }
    for k in (0..=rank_left).rev() {
        if k > 0 {
            current.push((vertex, k));
        }
        fill(vertex + 1, hi, rank_left - k, deg_left - vertex * i64::from(k), current, out);
        if k > 0 {
            current.pop();
        }
    }
}
