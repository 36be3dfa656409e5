//! Published tables of `Ω_ℓ(r)` for `ℓ = 1, 2, 3`, and a self-test that
//! recomputes them.

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::ring::LaurentPoly;

#[derive(Debug, Clone, Copy)]
pub struct GoldenEntry {
    pub ell: u32,
    pub r: u32,
    /// `(exponent of w, coefficient)`, descending exponents.
    pub terms: &'static [(i64, i64)],
}

impl GoldenEntry {
    pub fn poly(&self) -> LaurentPoly {
        LaurentPoly::from_int_terms(self.terms.iter().copied())
    }
}

const fn entry(ell: u32, r: u32, terms: &'static [(i64, i64)]) -> GoldenEntry {
    GoldenEntry { ell, r, terms }
}

#[rustfmt::skip]
pub const GOLDEN: &[GoldenEntry] = &[
    entry(1, 1, &[(2, 1)]),
    entry(1, 2, &[(5, 1)]),
    entry(1, 3, &[(10, 1), (8, 1)]),
    entry(1, 4, &[(17, 1), (15, 1), (13, 3), (11, 2)]),
    entry(1, 5, &[(26, 1), (24, 1), (22, 3), (20, 5), (18, 7), (16, 9), (14, 5)]),
    entry(1, 6, &[(37, 1), (35, 1), (33, 3), (31, 5), (29, 10), (27, 13), (25, 22), (23, 27),
                  (21, 32), (19, 29), (17, 13)]),
    entry(2, 1, &[(3, 1)]),
    entry(2, 2, &[(9, 1), (7, 1)]),
    entry(2, 3, &[(19, 1), (17, 1), (15, 3), (13, 4), (11, 3)]),
    entry(2, 4, &[(33, 1), (31, 1), (29, 3), (27, 5), (25, 9), (23, 13), (21, 18), (19, 22),
                  (17, 20), (15, 10)]),
    entry(2, 5, &[(51, 1), (49, 1), (47, 3), (45, 5), (43, 10), (41, 15), (39, 26), (37, 38),
                  (35, 56), (33, 77), (31, 105), (29, 131), (27, 156), (25, 165), (23, 154),
                  (21, 103), (19, 40)]),
    entry(2, 6, &[(73, 1), (71, 1), (69, 3), (67, 5), (65, 10), (63, 16), (61, 28), (59, 42),
                  (57, 68), (55, 100), (53, 147), (51, 207), (49, 292), (47, 392), (45, 524),
                  (43, 678), (41, 858), (39, 1050), (37, 1253), (35, 1427), (33, 1537),
                  (31, 1531), (29, 1364), (27, 1022), (25, 557), (23, 171)]),
    entry(3, 1, &[(4, 1)]),
    entry(3, 2, &[(13, 1), (11, 1), (9, 2)]),
    entry(3, 3, &[(28, 1), (26, 1), (24, 3), (22, 4), (20, 7), (18, 9), (16, 9), (14, 6)]),
    entry(3, 4, &[(49, 1), (47, 1), (45, 3), (43, 5), (41, 9), (39, 13), (37, 22), (35, 30),
                  (33, 45), (31, 56), (29, 75), (27, 85), (25, 97), (23, 87), (21, 63), (19, 28)]),
    entry(3, 5, &[(76, 1), (74, 1), (72, 3), (70, 5), (68, 10), (66, 15), (64, 26), (62, 38),
                  (60, 60), (58, 85), (56, 125), (54, 172), (52, 238), (50, 315), (48, 417),
                  (46, 529), (44, 669), (42, 819), (40, 979), (38, 1130), (36, 1247), (34, 1314),
                  (32, 1274), (30, 1120), (28, 816), (26, 457), (24, 155)]),
];

/// Golden entries, optionally only those with `r <= 3`.
pub fn golden_entries(quick: bool) -> impl Iterator<Item = &'static GoldenEntry> {
    GOLDEN.iter().filter(move |e| !quick || e.r <= 3)
}

#[derive(Debug, Clone)]
pub struct SelftestOutcome {
    pub entry: GoldenEntry,
    pub computed: Result<LaurentPoly>,
    pub elapsed: Duration,
}

impl SelftestOutcome {
    pub fn passed(&self) -> bool {
        self.computed.as_ref().is_ok_and(|p| *p == self.entry.poly())
    }
}

/// Recomputes one entry with `compute(ell, r)` and times it.
pub fn check_entry<F>(entry: &GoldenEntry, compute: F) -> SelftestOutcome
where
    F: Fn(u32, u32) -> Result<LaurentPoly>,
{
    let start = Instant::now();
    let computed = compute(entry.ell, entry.r);
    SelftestOutcome {
        entry: *entry,
        computed,
        elapsed: start.elapsed(),
    }
}
