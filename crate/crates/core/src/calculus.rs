//! Generalized Hukuhara delta, nabla and diamond-alpha derivatives of fuzzy
//! functions at points of a time scale, plus the real-valued counterparts
//! used by the verification harness.
//!
//! Scattered sides are exact difference quotients. Dense sides run a
//! geometric probe schedule with one level of Richardson extrapolation per
//! level endpoint and accept the limit on a repeated Cauchy criterion;
//! non-existence surfaces as a typed error, never as a NaN-filled value.

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::funcspec::{FuzzyFunction, Side};
use crate::fuzzy::{FuzzyNumber, GhCase};
use crate::timescale::TimeScale;

/// Evaluation-point/probe-point pair with the shifted graininesses
/// μ_st = σ(s) − t and ν_st = t − ρ(s) from the derivative definitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpContext {
    pub s: f64,
    pub t: f64,
    pub mu_st: f64,
    pub nu_st: f64,
}

impl JumpContext {
    pub fn new(ts: &TimeScale, s: f64, t: f64) -> Result<Self> {
        let s = ts.snap(s)?;
        let t = ts.snap(t)?;
        Ok(JumpContext {
            s,
            t,
            mu_st: ts.sigma(s)? - t,
            nu_st: t - ts.rho(s)?,
        })
    }
}

/// How a derivative value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivKind {
    /// Exact difference quotient across a scattered gap.
    ExactScattered,
    /// Cauchy-detected limit on a dense side.
    LimitDense,
}

/// A gH derivative value with provenance diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeResult {
    pub value: FuzzyNumber,
    pub kind: DerivKind,
    pub gh_case: GhCase,
}

fn combine_case(a: GhCase, b: GhCase) -> GhCase {
    if a == b {
        a
    } else {
        GhCase::Mixed
    }
}

/// Distance from `s` to the segment boundary in the probe direction.
fn side_span(ts: &TimeScale, s: f64, side: Side) -> f64 {
    for seg in ts.segments() {
        if s >= seg.lo && s <= seg.hi {
            return match side {
                Side::Right => seg.hi - s,
                Side::Left => s - seg.lo,
            };
        }
    }
    0.0
}

/// Limit of (f(t) ⊖ f(s)) / (t − s) as t approaches s from one dense side,
/// staying inside the scale.
fn quotient_limit_side(
    f: &dyn FuzzyFunction,
    ts: &TimeScale,
    s: f64,
    side: Side,
    cfg: &NumericConfig,
) -> Result<(Vec<f64>, GhCase)> {
    let span = side_span(ts, s, side);
    debug_assert!(span > 0.0, "probe side must accumulate");
    let dir = match side {
        Side::Right => 1.0,
        Side::Left => -1.0,
    };
    let fs = f.value(s)?;

    let quotient = |h: f64| -> Result<(Vec<f64>, GhCase)> {
        let (w, case) = f.value(s + dir * h)?.gh_diff_cases(&fs)?;
        let q = w.scalar_mul(1.0 / (dir * h));
        Ok((flatten(&q), case))
    };

    let mut h = cfg.h0.min(0.5 * span);
    let (mut raw_prev, _) = quotient(h)?;
    h *= 0.5;
    let (mut raw_cur, mut case) = quotient(h)?;
    // One Richardson level: the quotient error is O(h), so 2q(h/2) − q(h)
    // cancels the leading term and the Cauchy test converges well before
    // floating-point cancellation sets in.
    let mut extrapolated: Option<Vec<f64>> = None;
    let mut quiet = 0usize;
    for _ in 0..cfg.max_refinements {
        let ext: Vec<f64> = raw_cur
            .iter()
            .zip(&raw_prev)
            .map(|(c, p)| 2.0 * c - p)
            .collect();
        if let Some(prev_ext) = &extrapolated {
            let d = ext
                .iter()
                .zip(prev_ext)
                .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
            if d <= cfg.limit_tol {
                quiet += 1;
                if quiet >= 2 {
                    return Ok((ext, case));
                }
            } else {
                quiet = 0;
            }
        }
        extrapolated = Some(ext);
        h *= 0.5;
        raw_prev = raw_cur;
        let next = quotient(h)?;
        raw_cur = next.0;
        case = next.1;
    }
    Err(Error::NonConvergent {
        at: s,
        refinements: cfg.max_refinements,
    })
}

fn flatten(u: &FuzzyNumber) -> Vec<f64> {
    let mut v: Vec<f64> = u.levels().iter().map(|iv| iv.lo).collect();
    v.extend(u.levels().iter().map(|iv| iv.hi));
    v
}

/// Rebuilds a fuzzy number from flattened endpoints, absorbing extrapolation
/// noise up to `tol`; anything worse means the limit stack is not a fuzzy
/// number.
fn unflatten(flat: &[f64], tol: f64, at: f64, refinements: usize) -> Result<FuzzyNumber> {
    crate::fuzzy::try_stack(flat, tol).ok_or(Error::NonConvergent { at, refinements })
}

/// Dense-point derivative: the quotient limit over every side on which the
/// scale accumulates at `s`. Two-sided points must agree across sides.
fn limit_from_sides(
    f: &dyn FuzzyFunction,
    ts: &TimeScale,
    s: f64,
    sides: &[Side],
    cfg: &NumericConfig,
) -> Result<DerivativeResult> {
    debug_assert!(!sides.is_empty());
    let tol = 4.0 * cfg.limit_tol;
    let mut acc: Option<(Vec<f64>, GhCase)> = None;
    for &side in sides {
        let (flat, case) = quotient_limit_side(f, ts, s, side, cfg)?;
        acc = Some(match acc {
            None => (flat, case),
            Some((prev, prev_case)) => {
                let d = prev
                    .iter()
                    .zip(&flat)
                    .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                if d > 10.0 * cfg.limit_tol {
                    return Err(Error::NonConvergent {
                        at: s,
                        refinements: cfg.max_refinements,
                    });
                }
                let avg: Vec<f64> = prev.iter().zip(&flat).map(|(a, b)| 0.5 * (a + b)).collect();
                (avg, combine_case(prev_case, case))
            }
        });
    }
    let (flat, case) = acc.expect("at least one side");
    let value = unflatten(&flat, tol, s, cfg.max_refinements)?;
    Ok(DerivativeResult {
        value,
        kind: DerivKind::LimitDense,
        gh_case: case,
    })
}

/// Generalized Hukuhara delta derivative at `s` in the upper kappa set.
///
/// Right-scattered points use the exact quotient
/// (f(σ(s)) ⊖ f(s)) / μ(s); otherwise the dense-side limit runs two-sided
/// at dense interior points and one-sided where only one side accumulates.
pub fn delta_gh(
    f: &dyn FuzzyFunction,
    ts: &TimeScale,
    s: f64,
    cfg: &NumericConfig,
) -> Result<DerivativeResult> {
    let s = ts.snap(s)?;
    if !ts.in_kappa_upper(s)? {
        return Err(Error::PointNotInKappa(s));
    }
    let mu = ts.mu(s)?;
    if mu > 0.0 {
        let (w, gh_case) = f.value(ts.sigma(s)?)?.gh_diff_cases(&f.value(s)?)?;
        return Ok(DerivativeResult {
            value: w.scalar_mul(1.0 / mu),
            kind: DerivKind::ExactScattered,
            gh_case,
        });
    }
    let mut sides = Vec::new();
    if s != ts.max() {
        sides.push(Side::Right);
    }
    if ts.nu(s)? == 0.0 && s != ts.min() {
        sides.push(Side::Left);
    }
    limit_from_sides(f, ts, s, &sides, cfg)
}

/// Generalized Hukuhara nabla derivative at `s` in the lower kappa set.
pub fn nabla_gh(
    f: &dyn FuzzyFunction,
    ts: &TimeScale,
    s: f64,
    cfg: &NumericConfig,
) -> Result<DerivativeResult> {
    let s = ts.snap(s)?;
    if !ts.in_kappa_lower(s)? {
        return Err(Error::PointNotInKappa(s));
    }
    let nu = ts.nu(s)?;
    if nu > 0.0 {
        let rho = ts.rho(s)?;
        let (w, gh_case) = f.value(rho)?.gh_diff_cases(&f.value(s)?)?;
        return Ok(DerivativeResult {
            value: w.scalar_mul(1.0 / (rho - s)),
            kind: DerivKind::ExactScattered,
            gh_case,
        });
    }
    let mut sides = Vec::new();
    if s != ts.min() {
        sides.push(Side::Left);
    }
    if ts.mu(s)? == 0.0 && s != ts.max() {
        sides.push(Side::Right);
    }
    limit_from_sides(f, ts, s, &sides, cfg)
}

/// Diamond-alpha derivative as the convex combination
/// α·Δ_gH + (1−α)·∇_gH; both one-sided derivatives must exist for interior
/// weights.
pub fn diamond_alpha_gh(
    f: &dyn FuzzyFunction,
    ts: &TimeScale,
    s: f64,
    alpha: f64,
    cfg: &NumericConfig,
) -> Result<DerivativeResult> {
    if !(0.0..=1.0).contains(&alpha) || alpha.is_nan() {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let s = ts.snap(s)?;
    if !ts.in_kappa_upper(s)? || !ts.in_kappa_lower(s)? {
        return Err(Error::PointNotInKappa(s));
    }
    if alpha == 1.0 {
        return delta_gh(f, ts, s, cfg);
    }
    if alpha == 0.0 {
        return nabla_gh(f, ts, s, cfg);
    }
    let d = delta_gh(f, ts, s, cfg)?;
    let n = nabla_gh(f, ts, s, cfg)?;
    let value = d
        .value
        .scalar_mul(alpha)
        .add(&n.value.scalar_mul(1.0 - alpha))?;
    let kind = if d.kind == DerivKind::ExactScattered && n.kind == DerivKind::ExactScattered {
        DerivKind::ExactScattered
    } else {
        DerivKind::LimitDense
    };
    Ok(DerivativeResult {
        value,
        kind,
        gh_case: combine_case(d.gh_case, n.gh_case),
    })
}

/// Continuity of f at `s` within the scale: the Hausdorff distance of probe
/// values to f(s) must settle below the limit tolerance on every side that
/// accumulates at `s`. Isolated points are trivially continuous.
pub fn check_continuity_at(
    f: &dyn FuzzyFunction,
    ts: &TimeScale,
    s: f64,
    cfg: &NumericConfig,
) -> Result<bool> {
    let s = ts.snap(s)?;
    let fs = f.value(s)?;
    let mut sides = Vec::new();
    if ts.mu(s)? == 0.0 && s != ts.max() {
        sides.push(Side::Right);
    }
    if ts.nu(s)? == 0.0 && s != ts.min() {
        sides.push(Side::Left);
    }
    'sides: for side in sides {
        let span = side_span(ts, s, side);
        if span == 0.0 {
            continue;
        }
        let dir = match side {
            Side::Right => 1.0,
            Side::Left => -1.0,
        };
        let mut h = cfg.h0.min(0.5 * span);
        let mut quiet = 0usize;
        for _ in 0..cfg.max_refinements {
            let d = match f.value(s + dir * h) {
                Ok(v) => match v.hausdorff(&fs) {
                    Ok(d) => d,
                    Err(_) => return Ok(false),
                },
                Err(_) => return Ok(false),
            };
            if d <= cfg.limit_tol {
                quiet += 1;
                if quiet >= 2 {
                    continue 'sides;
                }
            } else {
                quiet = 0;
            }
            h *= 0.5;
        }
        return Ok(false);
    }
    Ok(true)
}

/// Residual of the diamond-alpha derivative definition at a probe point:
/// returns (D∞ between the shifted combination and the derivative times
/// μ_st·ν_st, |μ_st·ν_st|).
pub fn diamond_definition_residual(
    f: &dyn FuzzyFunction,
    ts: &TimeScale,
    s: f64,
    t: f64,
    alpha: f64,
    derivative: &FuzzyNumber,
) -> Result<(f64, f64)> {
    let ctx = JumpContext::new(ts, s, t)?;
    let fwd = f.value(ts.sigma(ctx.s)?)?.gh_diff(&f.value(ctx.t)?)?;
    let bwd = f.value(ctx.t)?.gh_diff(&f.value(ts.rho(ctx.s)?)?)?;
    let lhs = fwd
        .scalar_mul(alpha * ctx.nu_st)
        .add(&bwd.scalar_mul((1.0 - alpha) * ctx.mu_st))?;
    let rhs = derivative.scalar_mul(ctx.mu_st * ctx.nu_st);
    Ok((lhs.hausdorff(&rhs)?, (ctx.mu_st * ctx.nu_st).abs()))
}

// ---------------------------------------------------------------------------
// Real-valued time-scale derivatives (harness support)
// ---------------------------------------------------------------------------

fn real_limit_side(
    g: &dyn Fn(f64) -> f64,
    ts: &TimeScale,
    s: f64,
    side: Side,
    cfg: &NumericConfig,
) -> Result<f64> {
    let span = side_span(ts, s, side);
    let dir = match side {
        Side::Right => 1.0,
        Side::Left => -1.0,
    };
    let gs = g(s);
    let q = |h: f64| (g(s + dir * h) - gs) / (dir * h);
    let mut h = cfg.h0.min(0.5 * span);
    let mut raw_prev = q(h);
    h *= 0.5;
    let mut raw_cur = q(h);
    let mut prev_ext: Option<f64> = None;
    let mut quiet = 0usize;
    for _ in 0..cfg.max_refinements {
        let ext = 2.0 * raw_cur - raw_prev;
        if let Some(p) = prev_ext {
            if (ext - p).abs() <= cfg.limit_tol {
                quiet += 1;
                if quiet >= 2 {
                    return Ok(ext);
                }
            } else {
                quiet = 0;
            }
        }
        prev_ext = Some(ext);
        h *= 0.5;
        raw_prev = raw_cur;
        raw_cur = q(h);
    }
    Err(Error::NonConvergent {
        at: s,
        refinements: cfg.max_refinements,
    })
}

fn real_limit(
    g: &dyn Fn(f64) -> f64,
    ts: &TimeScale,
    s: f64,
    sides: &[Side],
    cfg: &NumericConfig,
) -> Result<f64> {
    let mut vals = Vec::new();
    for &side in sides {
        vals.push(real_limit_side(g, ts, s, side, cfg)?);
    }
    if vals.len() == 2 && (vals[0] - vals[1]).abs() > 10.0 * cfg.limit_tol {
        return Err(Error::NonConvergent {
            at: s,
            refinements: cfg.max_refinements,
        });
    }
    Ok(vals.iter().sum::<f64>() / vals.len() as f64)
}

/// Delta derivative of a real function on the scale.
pub fn delta_real(
    g: &dyn Fn(f64) -> f64,
    ts: &TimeScale,
    s: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    let s = ts.snap(s)?;
    if !ts.in_kappa_upper(s)? {
        return Err(Error::PointNotInKappa(s));
    }
    let mu = ts.mu(s)?;
    if mu > 0.0 {
        return Ok((g(ts.sigma(s)?) - g(s)) / mu);
    }
    let mut sides = Vec::new();
    if s != ts.max() {
        sides.push(Side::Right);
    }
    if ts.nu(s)? == 0.0 && s != ts.min() {
        sides.push(Side::Left);
    }
    real_limit(g, ts, s, &sides, cfg)
}

/// Nabla derivative of a real function on the scale.
pub fn nabla_real(
    g: &dyn Fn(f64) -> f64,
    ts: &TimeScale,
    s: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    let s = ts.snap(s)?;
    if !ts.in_kappa_lower(s)? {
        return Err(Error::PointNotInKappa(s));
    }
    let nu = ts.nu(s)?;
    if nu > 0.0 {
        return Ok((g(s) - g(ts.rho(s)?)) / nu);
    }
    let mut sides = Vec::new();
    if s != ts.min() {
        sides.push(Side::Left);
    }
    if ts.mu(s)? == 0.0 && s != ts.max() {
        sides.push(Side::Right);
    }
    real_limit(g, ts, s, &sides, cfg)
}

/// Real diamond-alpha derivative in the standard convex-combination form.
pub fn diamond_alpha_real(
    g: &dyn Fn(f64) -> f64,
    ts: &TimeScale,
    s: f64,
    alpha: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) || alpha.is_nan() {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let s = ts.snap(s)?;
    if !ts.in_kappa_upper(s)? || !ts.in_kappa_lower(s)? {
        return Err(Error::PointNotInKappa(s));
    }
    if alpha == 1.0 {
        return delta_real(g, ts, s, cfg);
    }
    if alpha == 0.0 {
        return nabla_real(g, ts, s, cfg);
    }
    Ok(alpha * delta_real(g, ts, s, cfg)? + (1.0 - alpha) * nabla_real(g, ts, s, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspec::{CrispFn, FuzzyFunctionExpr};

    const M: usize = 64;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn tri123() -> FuzzyNumber {
        FuzzyNumber::from_triangular(1.0, 2.0, 3.0, M).unwrap()
    }

    fn linear() -> FuzzyFunctionExpr {
        FuzzyFunctionExpr::term(tri123(), CrispFn::Poly(vec![0.0, 1.0]))
    }

    fn oscillator() -> FuzzyFunctionExpr {
        FuzzyFunctionExpr::term(tri123(), CrispFn::TSinInv)
    }

    #[test]
    fn delta_exact_on_discrete_scale() {
        let ts = TimeScale::from_points(&[0.0, 1.0, 3.0]).unwrap();
        let r = delta_gh(&linear(), &ts, 1.0, &cfg()).unwrap();
        assert_eq!(r.kind, DerivKind::ExactScattered);
        assert_eq!(r.value.hausdorff(&tri123()).unwrap(), 0.0);
    }

    #[test]
    fn nabla_exact_on_discrete_scale() {
        let ts = TimeScale::from_points(&[0.0, 1.0, 3.0]).unwrap();
        let r = nabla_gh(&linear(), &ts, 3.0, &cfg()).unwrap();
        assert_eq!(r.value.hausdorff(&tri123()).unwrap(), 0.0);
    }

    #[test]
    fn dense_two_sided_limit() {
        let ts = TimeScale::new(&[(0.0, 2.0)]).unwrap();
        let f = FuzzyFunctionExpr::term(tri123(), CrispFn::Poly(vec![0.0, 0.0, 1.0]));
        let r = delta_gh(&f, &ts, 1.0, &cfg()).unwrap();
        assert_eq!(r.kind, DerivKind::LimitDense);
        let expect = tri123().scalar_mul(2.0); // (2,4,6)
        assert!(r.value.hausdorff(&expect).unwrap() < 1e-8);

        // dense point: delta, nabla and diamond coincide
        let n = nabla_gh(&f, &ts, 1.0, &cfg()).unwrap();
        let d5 = diamond_alpha_gh(&f, &ts, 1.0, 0.5, &cfg()).unwrap();
        assert!(r.value.hausdorff(&n.value).unwrap() < 1e-7);
        assert!(r.value.hausdorff(&d5.value).unwrap() < 1e-7);
    }

    #[test]
    fn derivative_of_constant_is_crisp_zero() {
        let ts = TimeScale::new(&[(-3.0, -1.0), (0.0, 2.0)]).unwrap();
        let f = FuzzyFunctionExpr::Const(tri123());
        for s in [-2.0, -1.0, 0.0, 1.0] {
            let r = diamond_alpha_gh(&f, &ts, s, 0.5, &cfg()).unwrap();
            assert!(r.value.magnitude() < 1e-9, "at {s}");
        }
    }

    #[test]
    fn oscillator_delta_fails_nabla_exists() {
        let ts = TimeScale::new(&[(-3.0, -1.0), (0.0, 2.0)]).unwrap();
        let d = delta_gh(&oscillator(), &ts, 0.0, &cfg());
        assert!(matches!(d, Err(Error::NonConvergent { .. })));

        let n = nabla_gh(&oscillator(), &ts, 0.0, &cfg()).unwrap();
        let s1 = 1.0f64.sin();
        let expect = FuzzyNumber::from_triangular(-3.0 * s1, -2.0 * s1, -s1, M).unwrap();
        assert!(n.value.hausdorff(&expect).unwrap() < 1e-12);
    }

    #[test]
    fn mirrored_scale_swaps_the_asymmetry() {
        let ts = TimeScale::new(&[(-3.0, 0.0), (1.0, 2.0)]).unwrap();
        let d = delta_gh(&oscillator(), &ts, 0.0, &cfg()).unwrap();
        let s1 = 1.0f64.sin();
        let expect = FuzzyNumber::from_triangular(s1, 2.0 * s1, 3.0 * s1, M).unwrap();
        assert!(d.value.hausdorff(&expect).unwrap() < 1e-12);

        let n = nabla_gh(&oscillator(), &ts, 0.0, &cfg());
        assert!(matches!(n, Err(Error::NonConvergent { .. })));
    }

    #[test]
    fn one_sided_dense_limit_at_transition_point() {
        // s = 0 on [-3,-1] ∪ [0,2] is left-scattered right-dense; the delta
        // derivative of (1,2,3)t² needs only the right limit, which is 0.
        let ts = TimeScale::new(&[(-3.0, -1.0), (0.0, 2.0)]).unwrap();
        let f = FuzzyFunctionExpr::term(tri123(), CrispFn::Poly(vec![0.0, 0.0, 1.0]));
        let r = delta_gh(&f, &ts, 0.0, &cfg()).unwrap();
        assert!(r.value.magnitude() < 1e-8);
    }

    #[test]
    fn diamond_combination_on_integer_grid() {
        let ts = TimeScale::uniform(0.0, 5.0, 1.0).unwrap();
        let f = FuzzyFunctionExpr::term(
            FuzzyNumber::crisp(1.0, M),
            CrispFn::Poly(vec![0.0, 0.0, 1.0]),
        );
        let r = diamond_alpha_gh(&f, &ts, 1.0, 0.5, &cfg()).unwrap();
        assert!(r.value.is_crisp());
        assert!((r.value.level(0).lo - 2.0).abs() < 1e-12);
    }

    #[test]
    fn diamond_endpoints_match_one_sided_derivatives() {
        let ts = TimeScale::from_points(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        let f = linear();
        let d = delta_gh(&f, &ts, 1.0, &cfg()).unwrap();
        let n = nabla_gh(&f, &ts, 1.0, &cfg()).unwrap();
        let a1 = diamond_alpha_gh(&f, &ts, 1.0, 1.0, &cfg()).unwrap();
        let a0 = diamond_alpha_gh(&f, &ts, 1.0, 0.0, &cfg()).unwrap();
        assert_eq!(a1.value.hausdorff(&d.value).unwrap(), 0.0);
        assert_eq!(a0.value.hausdorff(&n.value).unwrap(), 0.0);
    }

    #[test]
    fn kappa_restrictions_enforced() {
        let ts = TimeScale::from_points(&[0.0, 1.0, 3.0]).unwrap();
        assert!(matches!(
            delta_gh(&linear(), &ts, 3.0, &cfg()),
            Err(Error::PointNotInKappa(_))
        ));
        assert!(matches!(
            nabla_gh(&linear(), &ts, 0.0, &cfg()),
            Err(Error::PointNotInKappa(_))
        ));
        assert!(matches!(
            diamond_alpha_gh(&linear(), &ts, 3.0, 0.5, &cfg()),
            Err(Error::PointNotInKappa(_))
        ));
    }

    #[test]
    fn alpha_validation() {
        let ts = TimeScale::from_points(&[0.0, 1.0, 3.0]).unwrap();
        assert!(matches!(
            diamond_alpha_gh(&linear(), &ts, 1.0, -0.1, &cfg()),
            Err(Error::AlphaOutOfRange(_))
        ));
    }

    #[test]
    fn continuity_detection() {
        let ts = TimeScale::new(&[(-3.0, -1.0), (0.0, 2.0)]).unwrap();
        assert!(check_continuity_at(&oscillator(), &ts, 0.0, &cfg()).unwrap());
        assert!(
            check_continuity_at(&FuzzyFunctionExpr::Const(tri123()), &ts, 1.0, &cfg()).unwrap()
        );
        let discrete = TimeScale::from_points(&[0.0, 1.0, 3.0]).unwrap();
        assert!(check_continuity_at(&oscillator(), &discrete, 1.0, &cfg()).unwrap());
    }

    #[test]
    fn real_derivatives_match_fuzzy_on_crisp_functions() {
        let ts = TimeScale::uniform(0.0, 5.0, 1.0).unwrap();
        let g = |t: f64| t * t;
        assert_eq!(delta_real(&g, &ts, 1.0, &cfg()).unwrap(), 3.0);
        assert_eq!(nabla_real(&g, &ts, 1.0, &cfg()).unwrap(), 1.0);
        assert_eq!(diamond_alpha_real(&g, &ts, 1.0, 0.5, &cfg()).unwrap(), 2.0);

        let cont = TimeScale::new(&[(0.0, 2.0)]).unwrap();
        let d = delta_real(&g, &cont, 1.0, &cfg()).unwrap();
        assert!((d - 2.0).abs() < 1e-9);
    }

    #[test]
    fn definition_residual_vanishes_at_scattered_points() {
        let ts = TimeScale::from_points(&[0.0, 1.0, 3.0]).unwrap();
        let f = linear();
        let r = diamond_alpha_gh(&f, &ts, 1.0, 0.5, &cfg()).unwrap();
        // probe t = s: both shifted graininesses stay positive, the
        // combination must reproduce the derivative exactly
        let (dist, weight) = diamond_definition_residual(&f, &ts, 1.0, 1.0, 0.5, &r.value).unwrap();
        assert!(weight > 0.0);
        assert!(dist <= 1e-12 * weight.max(1.0), "dist={dist}");
    }

    #[test]
    fn kinked_function_has_no_two_sided_derivative() {
        // crisp |t - 1| on a continuous scale: left and right quotients
        // settle on -1 and +1, so the two-sided limit must be rejected
        let ts = TimeScale::new(&[(0.0, 2.0)]).unwrap();
        let f = crate::funcspec::FuzzyClosure::new(M, |t: f64| {
            Ok(FuzzyNumber::crisp((t - 1.0).abs(), M))
        });
        assert!(matches!(
            delta_gh(&f, &ts, 1.0, &cfg()),
            Err(Error::NonConvergent { .. })
        ));
        // away from the kink the derivative exists
        let r = delta_gh(&f, &ts, 1.5, &cfg()).unwrap();
        assert!((r.value.level(0).lo - 1.0).abs() < 1e-8);
    }

    #[test]
    fn discontinuity_is_detected() {
        let ts = TimeScale::new(&[(0.0, 1.0)]).unwrap();
        let step = crate::funcspec::FuzzyClosure::new(M, |t: f64| {
            Ok(FuzzyNumber::crisp(if t < 0.5 { 0.0 } else { 1.0 }, M))
        });
        assert!(!check_continuity_at(&step, &ts, 0.5, &cfg()).unwrap());
        assert!(check_continuity_at(&step, &ts, 0.25, &cfg()).unwrap());
    }
}
