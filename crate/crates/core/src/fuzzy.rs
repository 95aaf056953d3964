//! Fuzzy-number kernel: stacked r-level intervals, levelwise arithmetic,
//! generalized Hukuhara difference and the Hausdorff metric.
//!
//! A fuzzy number is stored as M+1 closed intervals sampled at the uniform
//! membership grades r_j = j/M. Lower endpoints are non-decreasing in j and
//! upper endpoints non-increasing (nested level sets); the grade-one level is
//! non-empty. All arithmetic operates level by level, which is exact for the
//! triangular-generated closure under addition and scalar multiplication and
//! a sampled approximation for products.

use crate::error::{Error, Result};

/// Monotonicity slack used when deciding whether a gH-difference candidate
/// stacks into a valid fuzzy number. Absorbs floating-point drift only;
/// violations beyond it mean the difference does not exist.
pub const GH_MONOTONE_TOL: f64 = 1e-10;

/// Closed real interval, `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// Builds a fuzzy number from flattened endpoints `[lo_0.., hi_0..]`,
/// absorbing nesting violations up to `tol` and rejecting anything worse.
pub(crate) fn try_stack(flat: &[f64], tol: f64) -> Option<FuzzyNumber> {
    let width = flat.len() / 2;
    let mut levels = Vec::with_capacity(width);
    for j in 0..width {
        let (lo, hi) = (flat[j], flat[width + j]);
        if lo > hi + tol {
            return None;
        }
        levels.push(Interval::new(lo, hi));
    }
    for j in 1..width {
        if levels[j].lo < levels[j - 1].lo - tol || levels[j].hi > levels[j - 1].hi + tol {
            return None;
        }
    }
    enforce_nested(&mut levels);
    FuzzyNumber::from_levels(levels).ok()
}

/// Repairs sub-tolerance nesting violations in place so the stack satisfies
/// the fuzzy-number invariants exactly. Callers must have already rejected
/// violations beyond their tolerance; clean stacks pass through unchanged.
pub(crate) fn enforce_nested(levels: &mut [Interval]) {
    if levels.is_empty() {
        return;
    }
    if levels[0].lo > levels[0].hi {
        levels[0] = Interval::point(0.5 * (levels[0].lo + levels[0].hi));
    }
    for j in 1..levels.len() {
        let prev = levels[j - 1];
        let mut lo = levels[j].lo.max(prev.lo);
        let mut hi = levels[j].hi.min(prev.hi);
        if lo > hi {
            let mid = (0.5 * (lo + hi)).clamp(prev.lo, prev.hi);
            lo = mid;
            hi = mid;
        }
        levels[j] = Interval::new(lo, hi);
    }
}

impl Interval {
    /// `lo` and `hi` are canonicalized so that negative zero never leaks
    /// into serialized output.
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval {
            lo: lo + 0.0,
            hi: hi + 0.0,
        }
    }

    pub fn point(x: f64) -> Self {
        Interval::new(x, x)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Which branch of the gH-difference a level (or a whole stack) selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhCase {
    /// Endpoint-wise difference: w = [u⁻−v⁻, u⁺−v⁺].
    CaseI,
    /// Swapped difference: w = [u⁺−v⁺, u⁻−v⁻].
    CaseII,
    /// The branch varies with the level.
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LevelCase {
    I,
    II,
    Both,
}

/// Fuzzy number as a stack of nested r-level intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyNumber {
    levels: Vec<Interval>,
}

impl FuzzyNumber {
    /// Triangular fuzzy number (a1, a2, a3) sampled at `resolution`+1 levels.
    ///
    /// Level j carries [a1 + r_j(a2−a1), a3 − r_j(a3−a2)] with r_j = j/M.
    pub fn from_triangular(a1: f64, a2: f64, a3: f64, resolution: usize) -> Result<Self> {
        if !(a1 <= a2 && a2 <= a3) {
            return Err(Error::NotSorted(a1, a2, a3));
        }
        let m = resolution.max(1);
        let levels = (0..=m)
            .map(|j| {
                let r = j as f64 / m as f64;
                Interval::new(a1 + r * (a2 - a1), a3 - r * (a3 - a2))
            })
            .collect();
        Ok(FuzzyNumber { levels })
    }

    /// Validates a raw level stack: nested endpoints and a non-empty core.
    pub fn from_levels(levels: Vec<Interval>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyCore);
        }
        for j in 1..levels.len() {
            if levels[j].lo < levels[j - 1].lo || levels[j].hi > levels[j - 1].hi {
                return Err(Error::LevelMonotonicityViolation { level: j });
            }
        }
        let top = levels[levels.len() - 1];
        if top.lo > top.hi {
            return Err(Error::EmptyCore);
        }
        Ok(FuzzyNumber { levels })
    }

    /// Crisp number: the degenerate interval [x, x] at every level.
    pub fn crisp(x: f64, resolution: usize) -> Self {
        let m = resolution.max(1);
        FuzzyNumber {
            levels: vec![Interval::point(x); m + 1],
        }
    }

    pub fn zero(resolution: usize) -> Self {
        FuzzyNumber::crisp(0.0, resolution)
    }

    /// Level subdivision count M (the stack holds M+1 intervals).
    pub fn resolution(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Interval] {
        &self.levels
    }

    pub fn level(&self, j: usize) -> Interval {
        self.levels[j]
    }

    /// Membership grade of level j.
    pub fn grade(&self, j: usize) -> f64 {
        j as f64 / self.resolution() as f64
    }

    /// Width of level j; non-increasing in the grade because the levels
    /// are nested.
    pub fn width(&self, j: usize) -> f64 {
        self.levels[j].width()
    }

    /// Level set at an arbitrary grade, interpolating endpoints linearly
    /// between the sampled levels.
    pub fn level_at(&self, r: f64) -> Interval {
        let m = self.resolution() as f64;
        let x = (r.clamp(0.0, 1.0)) * m;
        let j = (x.floor() as usize).min(self.resolution());
        if j == self.resolution() {
            return self.levels[j];
        }
        let frac = x - j as f64;
        let a = self.levels[j];
        let b = self.levels[j + 1];
        Interval::new(a.lo + frac * (b.lo - a.lo), a.hi + frac * (b.hi - a.hi))
    }

    /// Rows (r, lo, hi), bottom grade first.
    pub fn level_table(&self) -> Vec<(f64, f64, f64)> {
        (0..self.levels.len())
            .map(|j| (self.grade(j), self.levels[j].lo, self.levels[j].hi))
            .collect()
    }

    pub fn is_crisp(&self) -> bool {
        self.levels.iter().all(|iv| iv.lo == iv.hi)
    }

    fn check_resolution(&self, other: &Self) -> Result<()> {
        if self.levels.len() != other.levels.len() {
            return Err(Error::ResolutionMismatch(
                self.resolution(),
                other.resolution(),
            ));
        }
        Ok(())
    }

    /// Levelwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_resolution(other)?;
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| Interval::new(a.lo + b.lo, a.hi + b.hi))
            .collect();
        Ok(FuzzyNumber { levels })
    }

    /// Levelwise scalar multiple; negative scalars flip the endpoints.
    pub fn scalar_mul(&self, k: f64) -> Self {
        let levels = self
            .levels
            .iter()
            .map(|iv| {
                if k >= 0.0 {
                    Interval::new(k * iv.lo, k * iv.hi)
                } else {
                    Interval::new(k * iv.hi, k * iv.lo)
                }
            })
            .collect();
        FuzzyNumber { levels }
    }

    /// Levelwise interval product (min/max of the four endpoint products).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_resolution(other)?;
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| {
                let p = [a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi];
                let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                Interval::new(lo, hi)
            })
            .collect();
        Ok(FuzzyNumber { levels })
    }

    /// Generalized Hukuhara difference.
    ///
    /// Per level the candidate is [min(u⁻−v⁻, u⁺−v⁺), max(u⁻−v⁻, u⁺−v⁺)];
    /// the stacked candidate is returned only if it satisfies the nesting
    /// invariants within [`GH_MONOTONE_TOL`].
    pub fn gh_diff(&self, other: &Self) -> Result<Self> {
        self.gh_diff_cases(other).map(|(w, _)| w)
    }

    /// gH-difference together with the branch bookkeeping per stack.
    pub fn gh_diff_cases(&self, other: &Self) -> Result<(Self, GhCase)> {
        self.check_resolution(other)?;
        let mut levels = Vec::with_capacity(self.levels.len());
        let mut cases = Vec::with_capacity(self.levels.len());
        for (a, b) in self.levels.iter().zip(&other.levels) {
            let d_lo = a.lo - b.lo;
            let d_hi = a.hi - b.hi;
            let case = if d_lo < d_hi {
                LevelCase::I
            } else if d_lo > d_hi {
                LevelCase::II
            } else {
                LevelCase::Both
            };
            levels.push(Interval::new(d_lo.min(d_hi), d_lo.max(d_hi)));
            cases.push(case);
        }

        // Existence: the stack must be a fuzzy number up to rounding slack.
        for j in 0..levels.len() {
            if levels[j].lo > levels[j].hi + GH_MONOTONE_TOL {
                return Err(Error::GHDifferenceNotFuzzy { level: j });
            }
            if j > 0
                && (levels[j].lo < levels[j - 1].lo - GH_MONOTONE_TOL
                    || levels[j].hi > levels[j - 1].hi + GH_MONOTONE_TOL)
            {
                return Err(Error::GHDifferenceNotFuzzy { level: j });
            }
        }
        // Clamp sub-tolerance drift so the returned stack satisfies the
        // invariants exactly; clean inputs pass through bit-identical.
        enforce_nested(&mut levels);

        let any_i = cases.contains(&LevelCase::I);
        let any_ii = cases.contains(&LevelCase::II);
        let case = match (any_i, any_ii) {
            (true, true) => GhCase::Mixed,
            (false, true) => GhCase::CaseII,
            _ => GhCase::CaseI,
        };
        Ok((FuzzyNumber { levels }, case))
    }

    /// Hausdorff distance: max over sampled levels of the larger endpoint gap.
    pub fn hausdorff(&self, other: &Self) -> Result<f64> {
        self.check_resolution(other)?;
        let mut d = 0.0f64;
        for (a, b) in self.levels.iter().zip(&other.levels) {
            d = d.max((a.lo - b.lo).abs()).max((a.hi - b.hi).abs());
        }
        Ok(d)
    }

    /// Hausdorff distance to the crisp zero.
    pub fn magnitude(&self) -> f64 {
        let mut d = 0.0f64;
        for iv in &self.levels {
            d = d.max(iv.lo.abs()).max(iv.hi.abs());
        }
        d
    }
}
