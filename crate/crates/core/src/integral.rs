//! Scalar delta/nabla/diamond-alpha integrals on a time scale and the
//! levelwise Aumann diamond-alpha integral for fuzzy functions.
//!
//! The window [a, b] is decomposed once into scattered jump terms and
//! continuous pieces ([`IntegrationPlan`]); discrete sums are then exact up
//! to the function evaluations and the continuous pieces go through adaptive
//! Simpson quadrature. Summation order is fixed ascending, so identical
//! inputs reproduce identical floating-point output.

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::funcspec::FuzzyFunction;
use crate::fuzzy::{FuzzyNumber, Interval};
use crate::quad::{adaptive_simpson, adaptive_simpson_vec};
use crate::timescale::TimeScale;

/// Slack allowed when restacking the levelwise integrals into a fuzzy
/// number; violations beyond it indicate a numerical defect, not data.
pub const STACK_TOL: f64 = 1e-9;

/// Tolerance for the closed-form cross-check in [`local_step_integrals`].
pub const LOCAL_STEP_TOL: f64 = 1e-10;

/// Decomposition of an integration window over a time scale.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationPlan {
    /// Right-scattered points t in [a, b) with their forward graininess.
    pub scattered_delta_terms: Vec<(f64, f64)>,
    /// Left-scattered points t in (a, b] with their backward graininess.
    pub scattered_nabla_terms: Vec<(f64, f64)>,
    /// Non-degenerate sub-intervals of the scale's segments inside [a, b].
    pub continuous_pieces: Vec<(f64, f64)>,
}

/// Builds the window decomposition. Endpoints must belong to the scale and
/// satisfy a ≤ b; reversed bounds are rejected rather than sign-flipped.
pub fn integration_plan(ts: &TimeScale, a: f64, b: f64) -> Result<IntegrationPlan> {
    let a = ts.snap(a)?;
    let b = ts.snap(b)?;
    if a > b {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    let segs = ts.segments();
    let mut plan = IntegrationPlan {
        scattered_delta_terms: Vec::new(),
        scattered_nabla_terms: Vec::new(),
        continuous_pieces: Vec::new(),
    };
    for (i, seg) in segs.iter().enumerate() {
        if i + 1 < segs.len() {
            let t = seg.hi;
            if a <= t && t < b {
                plan.scattered_delta_terms.push((t, segs[i + 1].lo - t));
            }
        }
        if i > 0 {
            let t = seg.lo;
            if a < t && t <= b {
                plan.scattered_nabla_terms.push((t, t - segs[i - 1].hi));
            }
        }
        let lo = seg.lo.max(a);
        let hi = seg.hi.min(b);
        if lo < hi {
            plan.continuous_pieces.push((lo, hi));
        }
    }
    // jump terms plus pieces partition the window measure-consistently
    debug_assert!({
        let gaps: f64 = plan.scattered_delta_terms.iter().map(|&(_, w)| w).sum();
        let gaps_n: f64 = plan.scattered_nabla_terms.iter().map(|&(_, w)| w).sum();
        let pieces: f64 = plan.continuous_pieces.iter().map(|&(l, h)| h - l).sum();
        (gaps + pieces - (b - a)).abs() <= 1e-9 * (1.0 + b - a) && (gaps - gaps_n).abs() <= 1e-12
    });
    Ok(plan)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) || alpha.is_nan() {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

/// Classical delta integral of a real function: scattered forward-jump terms
/// plus Riemann integrals over the continuous pieces.
pub fn delta_int_scalar(
    g: &dyn Fn(f64) -> f64,
    ts: &TimeScale,
    a: f64,
    b: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    let plan = integration_plan(ts, a, b)?;
    let mut acc = 0.0;
    for &(t, w) in &plan.scattered_delta_terms {
        acc += w * g(t);
    }
    acc += pieces_scalar(g, &plan, cfg)?;
    Ok(acc)
}

/// Classical nabla integral: mirror of [`delta_int_scalar`] with backward
/// jump terms.
pub fn nabla_int_scalar(
    g: &dyn Fn(f64) -> f64,
    ts: &TimeScale,
    a: f64,
    b: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    let plan = integration_plan(ts, a, b)?;
    let mut acc = 0.0;
    for &(t, w) in &plan.scattered_nabla_terms {
        acc += w * g(t);
    }
    acc += pieces_scalar(g, &plan, cfg)?;
    Ok(acc)
}

fn pieces_scalar(
    g: &dyn Fn(f64) -> f64,
    plan: &IntegrationPlan,
    cfg: &NumericConfig,
) -> Result<f64> {
    let mut acc = 0.0;
    for &(lo, hi) in &plan.continuous_pieces {
        acc += adaptive_simpson(g, lo, hi, cfg.quad_tol, cfg.quad_max_depth)?;
    }
    Ok(acc)
}

/// Diamond-alpha integral of a real function: the convex combination
/// α·Δ-integral + (1−α)·∇-integral.
pub fn diamond_int_scalar(
    g: &dyn Fn(f64) -> f64,
    ts: &TimeScale,
    a: f64,
    b: f64,
    alpha: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    check_alpha(alpha)?;
    let d = delta_int_scalar(g, ts, a, b, cfg)?;
    let n = nabla_int_scalar(g, ts, a, b, cfg)?;
    Ok(alpha * d + (1.0 - alpha) * n)
}

/// Aumann diamond-alpha integral of a fuzzy function, with the per-level
/// endpoint integrals exposed.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyIntegralResult {
    pub value: FuzzyNumber,
    pub per_level_lower: Vec<f64>,
    pub per_level_upper: Vec<f64>,
}

fn eval_flat(f: &dyn FuzzyFunction, t: f64, width: usize) -> Result<Vec<f64>> {
    let v = f.value(t).map_err(|e| match e {
        Error::LevelMonotonicityViolation { .. } | Error::EmptyCore => {
            Error::IntegrandNotFuzzyAt(t)
        }
        other => other,
    })?;
    let levels = v.levels();
    if levels.len() != width {
        return Err(Error::ResolutionMismatch(width - 1, v.resolution()));
    }
    let mut flat = Vec::with_capacity(2 * width);
    flat.extend(levels.iter().map(|iv| iv.lo));
    flat.extend(levels.iter().map(|iv| iv.hi));
    Ok(flat)
}

/// Levelwise Aumann diamond-alpha integral over [a, b].
///
/// Per level the scalar diamond-alpha integral is applied to both endpoint
/// functions; the stacked result is validated as a fuzzy number (violations
/// beyond [`STACK_TOL`] surface as [`Error::ResultNotFuzzy`]).
pub fn diamond_int_fuzzy(
    f: &dyn FuzzyFunction,
    ts: &TimeScale,
    a: f64,
    b: f64,
    alpha: f64,
    cfg: &NumericConfig,
) -> Result<FuzzyIntegralResult> {
    check_alpha(alpha)?;
    let plan = integration_plan(ts, a, b)?;
    let width = f.resolution() + 1;
    let flat = |t: f64| eval_flat(f, t, width);

    let mut delta_acc = vec![0.0; 2 * width];
    for &(t, w) in &plan.scattered_delta_terms {
        let v = flat(t)?;
        for (acc, x) in delta_acc.iter_mut().zip(&v) {
            *acc += w * x;
        }
    }
    let mut nabla_acc = vec![0.0; 2 * width];
    for &(t, w) in &plan.scattered_nabla_terms {
        let v = flat(t)?;
        for (acc, x) in nabla_acc.iter_mut().zip(&v) {
            *acc += w * x;
        }
    }
    // The continuous part is common to both one-sided integrals.
    let mut common = vec![0.0; 2 * width];
    for &(lo, hi) in &plan.continuous_pieces {
        let piece = adaptive_simpson_vec(&flat, lo, hi, cfg.quad_tol, cfg.quad_max_depth)?;
        for (acc, x) in common.iter_mut().zip(&piece) {
            *acc += x;
        }
    }

    let mut lower = Vec::with_capacity(width);
    let mut upper = Vec::with_capacity(width);
    for j in 0..2 * width {
        let total = alpha * (delta_acc[j] + common[j]) + (1.0 - alpha) * (nabla_acc[j] + common[j]);
        if j < width {
            lower.push(total);
        } else {
            upper.push(total);
        }
    }

    let value = restack(&lower, &upper)?;
    Ok(FuzzyIntegralResult {
        value,
        per_level_lower: lower,
        per_level_upper: upper,
    })
}

/// Validates and clamps per-level endpoint arrays into a fuzzy number.
fn restack(lower: &[f64], upper: &[f64]) -> Result<FuzzyNumber> {
    let mut levels = Vec::with_capacity(lower.len());
    for j in 0..lower.len() {
        if lower[j] > upper[j] + STACK_TOL {
            return Err(Error::ResultNotFuzzy);
        }
        if j > 0 && (lower[j] < lower[j - 1] - STACK_TOL || upper[j] > upper[j - 1] + STACK_TOL) {
            return Err(Error::ResultNotFuzzy);
        }
        levels.push(Interval::new(lower[j], upper[j]));
    }
    crate::fuzzy::enforce_nested(&mut levels);
    FuzzyNumber::from_levels(levels).map_err(|_| Error::ResultNotFuzzy)
}

/// One-step integrals around an interior point: forward over [t, σ(t)] and
/// backward over [ρ(t), t].
///
/// Both are computed by [`diamond_int_fuzzy`] and cross-checked against the
/// closed forms μ(t)(αf(t) + (1−α)f(σ(t))) and ν(t)(αf(ρ(t)) + (1−α)f(t))
/// to [`LOCAL_STEP_TOL`] per level; a mismatch is an internal defect, so it
/// panics rather than returning a value.
pub fn local_step_integrals(
    f: &dyn FuzzyFunction,
    ts: &TimeScale,
    t: f64,
    alpha: f64,
    cfg: &NumericConfig,
) -> Result<(FuzzyNumber, FuzzyNumber)> {
    check_alpha(alpha)?;
    let t = ts.snap(t)?;
    if !ts.in_kappa_upper(t)? || !ts.in_kappa_lower(t)? {
        return Err(Error::PointNotInKappa(t));
    }
    let sig = ts.sigma(t)?;
    let rho = ts.rho(t)?;
    let forward = diamond_int_fuzzy(f, ts, t, sig, alpha, cfg)?.value;
    let backward = diamond_int_fuzzy(f, ts, rho, t, alpha, cfg)?.value;

    let mu = ts.mu(t)?;
    let nu = ts.nu(t)?;
    let fwd_closed = f
        .value(t)?
        .scalar_mul(alpha)
        .add(&f.value(sig)?.scalar_mul(1.0 - alpha))?
        .scalar_mul(mu);
    let bwd_closed = f
        .value(rho)?
        .scalar_mul(alpha)
        .add(&f.value(t)?.scalar_mul(1.0 - alpha))?
        .scalar_mul(nu);
    let dev = forward
        .hausdorff(&fwd_closed)?
        .max(backward.hausdorff(&bwd_closed)?);
    assert!(
        dev <= LOCAL_STEP_TOL,
        "one-step integral deviates from its closed form by {dev:e} at t = {t}"
    );
    Ok((forward, backward))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspec::{CrispFn, FuzzyFunctionExpr};

    const M: usize = 64;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn z(n: usize) -> TimeScale {
        TimeScale::uniform(0.0, n as f64, 1.0).unwrap()
    }

    #[test]
    fn delta_integral_discrete_gap_sum() {
        let ts = z(2);
        let v = delta_int_scalar(&|t| t, &ts, 0.0, 2.0, &cfg()).unwrap();
        assert_eq!(v, 1.0); // 1·g(0) + 1·g(1)
    }

    #[test]
    fn nabla_integral_discrete_gap_sum() {
        let ts = z(2);
        let v = nabla_int_scalar(&|t| t, &ts, 0.0, 2.0, &cfg()).unwrap();
        assert_eq!(v, 3.0); // 1·g(1) + 1·g(2)
    }

    #[test]
    fn continuous_integral_is_riemann() {
        let ts = TimeScale::new(&[(0.0, 1.0)]).unwrap();
        let d = delta_int_scalar(&|t| t, &ts, 0.0, 1.0, &cfg()).unwrap();
        let n = nabla_int_scalar(&|t| t, &ts, 0.0, 1.0, &cfg()).unwrap();
        assert!((d - 0.5).abs() < 1e-12);
        assert_eq!(d, n);
    }

    #[test]
    fn mixed_scale_decomposition() {
        // {0} ∪ [1,2]: one unit gap plus one unit segment
        let ts = TimeScale::new(&[(0.0, 0.0), (1.0, 2.0)]).unwrap();
        let v = delta_int_scalar(&|_| 1.0, &ts, 0.0, 2.0, &cfg()).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn empty_window_is_zero() {
        let ts = z(2);
        assert_eq!(
            nabla_int_scalar(&|t| t, &ts, 1.0, 1.0, &cfg()).unwrap(),
            0.0
        );
    }

    #[test]
    fn diamond_scalar_alpha_cancellation() {
        // g(t) = 2t + 2α − 1 integrates to 4 on Z ∩ [0,2] for every alpha
        let ts = z(2);
        for &alpha in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let g = move |t: f64| 2.0 * t + 2.0 * alpha - 1.0;
            let v = diamond_int_scalar(&g, &ts, 0.0, 2.0, alpha, &cfg()).unwrap();
            assert!((v - 4.0).abs() < 1e-12, "alpha={alpha}: {v}");
        }
    }

    #[test]
    fn diamond_scalar_degenerates_to_one_sided() {
        let ts = z(2);
        let g = |t: f64| t * t;
        let d = delta_int_scalar(&g, &ts, 0.0, 2.0, &cfg()).unwrap();
        let n = nabla_int_scalar(&g, &ts, 0.0, 2.0, &cfg()).unwrap();
        assert_eq!(
            diamond_int_scalar(&g, &ts, 0.0, 2.0, 1.0, &cfg()).unwrap(),
            d
        );
        assert_eq!(
            diamond_int_scalar(&g, &ts, 0.0, 2.0, 0.0, &cfg()).unwrap(),
            n
        );
    }

    #[test]
    fn alpha_is_validated() {
        let ts = z(2);
        assert!(matches!(
            diamond_int_scalar(&|t| t, &ts, 0.0, 2.0, 1.5, &cfg()),
            Err(Error::AlphaOutOfRange(_))
        ));
    }

    #[test]
    fn reversed_bounds_rejected() {
        let ts = z(2);
        assert!(matches!(
            delta_int_scalar(&|t| t, &ts, 2.0, 0.0, &cfg()),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn fuzzy_integral_of_constant() {
        let ts = TimeScale::new(&[(0.0, 1.0)]).unwrap();
        let u = FuzzyNumber::from_triangular(1.0, 2.0, 3.0, M).unwrap();
        let f = FuzzyFunctionExpr::Const(u.clone());
        for &alpha in &[0.0, 0.5, 1.0] {
            let r = diamond_int_fuzzy(&f, &ts, 0.0, 1.0, alpha, &cfg()).unwrap();
            assert!(r.value.hausdorff(&u).unwrap() < 1e-12);
        }
    }

    #[test]
    fn fuzzy_integral_degenerate_window_is_crisp_zero() {
        let ts = z(3);
        let f = FuzzyFunctionExpr::term(
            FuzzyNumber::from_triangular(1.0, 2.0, 3.0, M).unwrap(),
            CrispFn::Poly(vec![0.0, 1.0]),
        );
        let r = diamond_int_fuzzy(&f, &ts, 1.0, 1.0, 0.5, &cfg()).unwrap();
        assert!(r.value.is_crisp());
        assert_eq!(r.value.level(0).lo, 0.0);
    }

    #[test]
    fn one_step_integrals_match_closed_forms() {
        let ts = TimeScale::from_points(&[0.0, 1.0, 3.0]).unwrap();
        let f = FuzzyFunctionExpr::term(
            FuzzyNumber::from_triangular(1.0, 2.0, 3.0, M).unwrap(),
            CrispFn::Poly(vec![0.0, 1.0]),
        );
        for &alpha in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let (fwd, bwd) = local_step_integrals(&f, &ts, 1.0, alpha, &cfg()).unwrap();
            // forward: 2(α(1,2,3) + (1−α)(3,6,9)); backward: α·0 + (1−α)(1,2,3)
            let f1 = f.eval(1.0);
            let f3 = f.eval(3.0);
            let f0 = f.eval(0.0);
            let fwd_expect = f1
                .scalar_mul(alpha)
                .add(&f3.scalar_mul(1.0 - alpha))
                .unwrap()
                .scalar_mul(2.0);
            let bwd_expect = f0
                .scalar_mul(alpha)
                .add(&f1.scalar_mul(1.0 - alpha))
                .unwrap();
            assert!(fwd.hausdorff(&fwd_expect).unwrap() <= 1e-12);
            assert!(bwd.hausdorff(&bwd_expect).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn one_step_at_boundary_is_rejected() {
        let ts = TimeScale::from_points(&[0.0, 1.0, 3.0]).unwrap();
        let f = FuzzyFunctionExpr::Const(FuzzyNumber::crisp(1.0, M));
        assert!(matches!(
            local_step_integrals(&f, &ts, 0.0, 0.5, &cfg()),
            Err(Error::PointNotInKappa(_))
        ));
    }

    #[test]
    fn plan_partitions_the_window() {
        let ts = TimeScale::new(&[(-3.0, -1.0), (0.0, 0.0), (1.0, 2.0)]).unwrap();
        let plan = integration_plan(&ts, -3.0, 2.0).unwrap();
        let gaps: f64 = plan.scattered_delta_terms.iter().map(|&(_, w)| w).sum();
        let gaps_n: f64 = plan.scattered_nabla_terms.iter().map(|&(_, w)| w).sum();
        let pieces: f64 = plan.continuous_pieces.iter().map(|&(l, h)| h - l).sum();
        assert_eq!(gaps, gaps_n);
        assert!((gaps + pieces - 5.0).abs() < 1e-12);
    }
}
