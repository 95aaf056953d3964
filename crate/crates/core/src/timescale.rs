//! Bounded time scales: finite unions of disjoint closed intervals with
//! exact jump operators, graininess, point classification and structural
//! predicates.
//!
//! Degenerate segments (lo = hi) represent isolated points, so purely
//! discrete scales, continuous intervals and mixtures share one
//! representation. Membership queries snap inputs to segment endpoints
//! within [`MEMBER_TOL`] to protect against decimal-to-binary drift.

use crate::error::{Error, Result};

/// Absolute tolerance for membership tests before snapping to an endpoint.
pub const MEMBER_TOL: f64 = 1e-12;

/// One maximal closed interval of the scale; `lo == hi` is an isolated point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
}

impl Segment {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Interior two-sided classification of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SClass {
    /// Left-dense, right-scattered.
    S1,
    /// Left-scattered, right-dense.
    S2,
    /// Isolated: scattered on both sides.
    S3,
    /// Dense on both sides.
    S4,
}

/// Point classification by graininess, with boundary flags.
///
/// At the minimum and maximum the jump conventions force zero graininess on
/// the outward side, so the class reads “dense” there; the flags record that
/// the definitional dense/scattered dichotomy does not apply on that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointClass {
    pub class: SClass,
    pub is_min: bool,
    pub is_max: bool,
}

impl std::fmt::Display for SClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SClass::S1 => "S1",
            SClass::S2 => "S2",
            SClass::S3 => "S3",
            SClass::S4 => "S4",
        };
        f.write_str(s)
    }
}

/// Non-empty bounded time scale. Immutable after construction; all
/// operations are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    segments: Vec<Segment>,
}

impl TimeScale {
    /// Normalizes a list of closed intervals: sorts, merges overlapping or
    /// touching intervals, and validates bounds.
    pub fn new(intervals: &[(f64, f64)]) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::EmptyTimeScale);
        }
        let mut ivs: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for &(lo, hi) in intervals {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::InvalidInterval { lo, hi });
            }
            ivs.push((lo, hi));
        }
        ivs.sort_by(|a, b| a.partial_cmp(b).expect("finite bounds"));
        let mut segments: Vec<Segment> = Vec::with_capacity(ivs.len());
        for (lo, hi) in ivs {
            match segments.last_mut() {
                Some(last) if lo <= last.hi => last.hi = last.hi.max(hi),
                _ => segments.push(Segment { lo, hi }),
            }
        }
        Ok(TimeScale { segments })
    }

    /// Discrete scale from a point list.
    pub fn from_points(points: &[f64]) -> Result<Self> {
        let ivs: Vec<(f64, f64)> = points.iter().map(|&p| (p, p)).collect();
        TimeScale::new(&ivs)
    }

    /// Uniform grid {a, a+step, …} up to b; the last point lands on b when
    /// (b − a) is an integral number of steps.
    pub fn uniform(a: f64, b: f64, step: f64) -> Result<Self> {
        if step.is_nan() || step <= 0.0 || a > b {
            return Err(Error::InvalidInterval { lo: a, hi: b });
        }
        let n = ((b - a) / step + MEMBER_TOL).floor() as usize;
        let pts: Vec<f64> = (0..=n).map(|k| a + k as f64 * step).collect();
        TimeScale::from_points(&pts)
    }

    /// Truncated two-sided geometric scale {−q^k} ∪ {q^k} for k in
    /// [k_min, k_max].
    pub fn geometric_two_sided(q: f64, k_min: i32, k_max: i32) -> Result<Self> {
        if q.is_nan() || q <= 1.0 || k_min > k_max {
            return Err(Error::InvalidInterval {
                lo: k_min as f64,
                hi: k_max as f64,
            });
        }
        let mut pts = Vec::new();
        for k in k_min..=k_max {
            let p = q.powi(k);
            pts.push(-p);
            pts.push(p);
        }
        TimeScale::from_points(&pts)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn min(&self) -> f64 {
        self.segments[0].lo
    }

    pub fn max(&self) -> f64 {
        self.segments[self.segments.len() - 1].hi
    }

    /// Segment index and snapped coordinate of a member point.
    fn locate(&self, t: f64) -> Result<(usize, f64)> {
        for (i, seg) in self.segments.iter().enumerate() {
            if (t - seg.lo).abs() <= MEMBER_TOL {
                return Ok((i, seg.lo));
            }
            if (t - seg.hi).abs() <= MEMBER_TOL {
                return Ok((i, seg.hi));
            }
            if t > seg.lo && t < seg.hi {
                return Ok((i, t));
            }
        }
        Err(Error::PointNotInScale(t))
    }

    pub fn contains(&self, t: f64) -> bool {
        self.locate(t).is_ok()
    }

    /// Membership test that returns the snapped coordinate.
    pub fn snap(&self, t: f64) -> Result<f64> {
        self.locate(t).map(|(_, s)| s)
    }

    /// Forward jump operator; `sigma(max) = max`.
    pub fn sigma(&self, t: f64) -> Result<f64> {
        let (i, t) = self.locate(t)?;
        let seg = self.segments[i];
        if t < seg.hi {
            Ok(t)
        } else if i + 1 < self.segments.len() {
            Ok(self.segments[i + 1].lo)
        } else {
            Ok(t)
        }
    }

    /// Backward jump operator; `rho(min) = min`.
    pub fn rho(&self, t: f64) -> Result<f64> {
        let (i, t) = self.locate(t)?;
        let seg = self.segments[i];
        if t > seg.lo {
            Ok(t)
        } else if i > 0 {
            Ok(self.segments[i - 1].hi)
        } else {
            Ok(t)
        }
    }

    /// Forward graininess `sigma(t) − t`.
    pub fn mu(&self, t: f64) -> Result<f64> {
        let t = self.snap(t)?;
        Ok(self.sigma(t)? - t)
    }

    /// Backward graininess `t − rho(t)`.
    pub fn nu(&self, t: f64) -> Result<f64> {
        let t = self.snap(t)?;
        Ok(t - self.rho(t)?)
    }

    pub fn classify(&self, t: f64) -> Result<PointClass> {
        let t = self.snap(t)?;
        let right_scattered = self.mu(t)? > 0.0;
        let left_scattered = self.nu(t)? > 0.0;
        let class = match (left_scattered, right_scattered) {
            (false, true) => SClass::S1,
            (true, false) => SClass::S2,
            (true, true) => SClass::S3,
            (false, false) => SClass::S4,
        };
        Ok(PointClass {
            class,
            is_min: t == self.min(),
            is_max: t == self.max(),
        })
    }

    /// Membership in the scale minus a left-scattered maximum.
    pub fn in_kappa_upper(&self, t: f64) -> Result<bool> {
        let t = self.snap(t)?;
        Ok(!(t == self.max() && self.nu(t)? > 0.0))
    }

    /// Membership in the scale minus a right-scattered minimum.
    pub fn in_kappa_lower(&self, t: f64) -> Result<bool> {
        let t = self.snap(t)?;
        Ok(!(t == self.min() && self.mu(t)? > 0.0))
    }

    /// Quasi-regularity: the jump operators invert each other on the
    /// kappa-restricted interior. For this representation that holds exactly
    /// when the scale is a single interval or purely discrete; any
    /// dense-to-scattered transition point breaks it.
    pub fn is_quasi_regular(&self) -> bool {
        self.segments.len() == 1 || self.segments.iter().all(|s| s.is_point())
    }

    /// Homogeneity: constant graininess. Returns the common graininess c —
    /// positive for a uniform grid, zero for a single interval.
    pub fn is_homogeneous(&self) -> Option<f64> {
        if self.segments.len() == 1 {
            return Some(0.0);
        }
        if !self.segments.iter().all(|s| s.is_point()) {
            return None;
        }
        let c = self.segments[1].lo - self.segments[0].lo;
        for w in self.segments.windows(2) {
            if ((w[1].lo - w[0].lo) - c).abs() > MEMBER_TOL {
                return None;
            }
        }
        Some(c)
    }

    /// Nabla derivative of the forward jump operator.
    ///
    /// Left-scattered points use the exact backward quotient
    /// (σ(t) − σ(ρ(t))) / (t − ρ(t)); left-dense interior points return 1.
    pub fn nabla_sigma(&self, t: f64) -> Result<f64> {
        let t = self.snap(t)?;
        let nu = self.nu(t)?;
        if nu > 0.0 {
            let r = self.rho(t)?;
            Ok((self.sigma(t)? - self.sigma(r)?) / nu)
        } else if t == self.min() {
            Err(Error::DegenerateQuotient(t))
        } else {
            Ok(1.0)
        }
    }

    /// Delta derivative of the backward jump operator (mirror of
    /// [`TimeScale::nabla_sigma`]).
    pub fn delta_rho(&self, t: f64) -> Result<f64> {
        let t = self.snap(t)?;
        let mu = self.mu(t)?;
        if mu > 0.0 {
            let s = self.sigma(t)?;
            Ok((self.rho(s)? - self.rho(t)?) / mu)
        } else if t == self.max() {
            Err(Error::DegenerateQuotient(t))
        } else {
            Ok(1.0)
        }
    }

    /// Scan grid over [a, b]: every scattered point of the window exactly,
    /// continuous stretches subdivided at step at most `h`.
    ///
    /// Requires `h > 0` and `a <= b` with both endpoints in the scale.
    pub fn grid(&self, a: f64, b: f64, h: f64) -> Result<Vec<f64>> {
        assert!(h > 0.0, "grid step must be positive");
        let a = self.snap(a)?;
        let b = self.snap(b)?;
        let mut out = Vec::new();
        for seg in &self.segments {
            let lo = seg.lo.max(a);
            let hi = seg.hi.min(b);
            if lo > hi {
                continue;
            }
            if lo == hi {
                out.push(lo);
                continue;
            }
            let n = ((hi - lo) / h).ceil().max(1.0) as usize;
            for k in 0..=n {
                let x = if k == n {
                    hi
                } else {
                    lo + (hi - lo) * (k as f64 / n as f64)
                };
                out.push(x);
            }
        }
        out.dedup();
        Ok(out)
    }

    /// All isolated or segment-boundary points of the scale (the points at
    /// which some side is scattered), ascending.
    pub fn boundary_points(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        for seg in &self.segments {
            pts.push(seg.lo);
            if !seg.is_point() {
                pts.push(seg.hi);
            }
        }
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed() -> TimeScale {
        TimeScale::new(&[(-3.0, -1.0), (0.0, 2.0)]).unwrap()
    }

    fn pts(v: &[f64]) -> TimeScale {
        TimeScale::from_points(v).unwrap()
    }

    #[test]
    fn construction_normalizes() {
        let t = mixed();
        assert_eq!(t.segments().len(), 2);

        let merged = TimeScale::new(&[(0.0, 1.0), (1.0, 2.0)]).unwrap();
        assert_eq!(merged.segments(), &[Segment { lo: 0.0, hi: 2.0 }]);

        let discrete = TimeScale::new(&[(0.0, 0.0), (1.0, 1.0), (3.0, 3.0)]).unwrap();
        assert_eq!(discrete.segments().len(), 3);
        assert!(discrete.segments().iter().all(Segment::is_point));

        assert!(matches!(TimeScale::new(&[]), Err(Error::EmptyTimeScale)));
        assert!(matches!(
            TimeScale::new(&[(2.0, 1.0)]),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn jump_operators_on_mixed_scale() {
        let t = mixed();
        assert_eq!(t.sigma(-1.0).unwrap(), 0.0);
        assert_eq!(t.sigma(2.0).unwrap(), 2.0); // sup convention
        assert_eq!(t.rho(0.0).unwrap(), -1.0);
        assert_eq!(t.rho(-3.0).unwrap(), -3.0); // inf convention
        assert_eq!(t.sigma(1.0).unwrap(), 1.0);
        assert_eq!(t.rho(1.5).unwrap(), 1.5);
    }

    #[test]
    fn jump_operators_on_discrete_scale() {
        let t = pts(&[0.0, 1.0, 3.0]);
        assert_eq!(t.sigma(1.0).unwrap(), 3.0);
        assert_eq!(t.mu(1.0).unwrap(), 2.0);
        assert_eq!(t.nu(1.0).unwrap(), 1.0);
    }

    #[test]
    fn graininess_on_mixed_scale() {
        let t = mixed();
        assert_eq!(t.mu(0.0).unwrap(), 0.0);
        assert_eq!(t.nu(0.0).unwrap(), 1.0);
        let c = TimeScale::new(&[(0.0, 2.0)]).unwrap();
        assert_eq!(c.mu(1.0).unwrap(), 0.0);
        assert_eq!(c.nu(1.0).unwrap(), 0.0);
    }

    #[test]
    fn membership_snapping() {
        let t = mixed();
        assert_eq!(t.snap(-1.0 + 1e-13).unwrap(), -1.0);
        assert!(matches!(t.snap(-0.5), Err(Error::PointNotInScale(_))));
    }

    #[test]
    fn classification() {
        let t = mixed();
        assert_eq!(t.classify(0.0).unwrap().class, SClass::S2);
        assert_eq!(t.classify(-1.0).unwrap().class, SClass::S1);
        assert_eq!(t.classify(1.0).unwrap().class, SClass::S4);
        let d = pts(&[0.0, 1.0, 3.0]);
        assert_eq!(d.classify(1.0).unwrap().class, SClass::S3);
        let c = TimeScale::new(&[(0.0, 2.0)]).unwrap();
        let top = c.classify(2.0).unwrap();
        assert!(top.is_max && !top.is_min);
    }

    #[test]
    fn kappa_membership() {
        let d = pts(&[0.0, 1.0, 3.0]);
        assert!(!d.in_kappa_upper(3.0).unwrap());
        assert!(!d.in_kappa_lower(0.0).unwrap());
        assert!(d.in_kappa_upper(1.0).unwrap());
        let c = TimeScale::new(&[(0.0, 2.0)]).unwrap();
        assert!(c.in_kappa_upper(2.0).unwrap());
        assert!(c.in_kappa_lower(0.0).unwrap());
    }

    #[test]
    fn structural_predicates() {
        let grid = pts(&[0.0, 1.0, 2.0, 3.0]);
        assert!(grid.is_quasi_regular());
        assert_eq!(grid.is_homogeneous(), Some(1.0));

        let uneven = pts(&[0.0, 1.0, 3.0]);
        assert!(uneven.is_homogeneous().is_none());
        assert!(uneven.is_quasi_regular());

        assert!(mixed().is_homogeneous().is_none());
        assert!(!mixed().is_quasi_regular());

        let single = TimeScale::new(&[(0.0, 1.0)]).unwrap();
        assert_eq!(single.is_homogeneous(), Some(0.0));
        assert!(single.is_quasi_regular());
    }

    #[test]
    fn jump_operator_derivatives() {
        let g = pts(&[1.0, 2.0, 4.0, 8.0]);
        assert_eq!(g.nabla_sigma(4.0).unwrap(), 2.0);
        assert_eq!(g.delta_rho(4.0).unwrap(), 0.5);
        assert_eq!(g.nabla_sigma(4.0).unwrap() * g.delta_rho(4.0).unwrap(), 1.0);

        let grid = pts(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(grid.nabla_sigma(1.0).unwrap(), 1.0);
        assert_eq!(grid.delta_rho(1.0).unwrap(), 1.0);

        assert!(matches!(
            g.nabla_sigma(1.0),
            Err(Error::DegenerateQuotient(_))
        ));
    }

    #[test]
    fn uniform_and_geometric_builders() {
        let z = TimeScale::uniform(0.0, 5.0, 1.0).unwrap();
        assert_eq!(z.segments().len(), 6);
        assert_eq!(z.max(), 5.0);

        let geo = TimeScale::geometric_two_sided(2.0, 0, 3).unwrap();
        let expected = [-8.0, -4.0, -2.0, -1.0, 1.0, 2.0, 4.0, 8.0];
        let got: Vec<f64> = geo.segments().iter().map(|s| s.lo).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn grid_examples() {
        let d = pts(&[0.0, 1.0, 3.0]);
        assert_eq!(d.grid(0.0, 3.0, 0.5).unwrap(), vec![0.0, 1.0, 3.0]);

        let c = TimeScale::new(&[(0.0, 1.0)]).unwrap();
        assert_eq!(c.grid(0.0, 1.0, 0.5).unwrap(), vec![0.0, 0.5, 1.0]);

        let m = mixed();
        let g = m.grid(-3.0, 2.0, 1.0).unwrap();
        assert!(g.contains(&-1.0) && g.contains(&0.0));
        assert_eq!(g.first().copied(), Some(-3.0));
        assert_eq!(g.last().copied(), Some(2.0));
    }
}
