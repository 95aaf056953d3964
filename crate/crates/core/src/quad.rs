//! Adaptive Simpson quadrature over vector-valued integrands.
//!
//! All level endpoints of a fuzzy integrand are integrated simultaneously on
//! one shared refinement, so the quadrature nodes and weights are identical
//! across levels. Simpson weights are positive, which preserves the nesting
//! of level stacks through integration.

use crate::error::{Error, Result};

type VecFn<'a> = &'a dyn Fn(f64) -> Result<Vec<f64>>;

fn simpson(h: f64, fa: &[f64], fm: &[f64], fb: &[f64]) -> Vec<f64> {
    fa.iter()
        .zip(fm)
        .zip(fb)
        .map(|((a, m), b)| h / 6.0 * (a + 4.0 * m + b))
        .collect()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()))
}

#[allow(clippy::too_many_arguments)]
fn refine(
    f: VecFn,
    a: f64,
    b: f64,
    fa: Vec<f64>,
    fm: Vec<f64>,
    fb: Vec<f64>,
    whole: Vec<f64>,
    tol: f64,
    floor: f64,
    depth: usize,
) -> Result<Vec<f64>> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = simpson(m - a, &fa, &flm, &fm);
    let right = simpson(b - m, &fm, &frm, &fb);
    let both: Vec<f64> = left.iter().zip(&right).map(|(l, r)| l + r).collect();
    let err = max_abs_diff(&both, &whole);
    if err <= 15.0 * tol.max(floor) {
        // Richardson correction of the composite estimate
        return Ok(both
            .iter()
            .zip(&whole)
            .map(|(b2, w)| b2 + (b2 - w) / 15.0)
            .collect());
    }
    if depth == 0 {
        return Err(Error::QuadratureDepthExceeded {
            lo: a,
            hi: b,
            depth: 0,
        });
    }
    let l = refine(
        f,
        a,
        m,
        fa,
        flm,
        fm.clone(),
        left,
        0.5 * tol,
        floor,
        depth - 1,
    )?;
    let r = refine(f, m, b, fm, frm, fb, right, 0.5 * tol, floor, depth - 1)?;
    Ok(l.iter().zip(&r).map(|(x, y)| x + y).collect())
}

/// Integrates a vector-valued integrand over [a, b] to absolute tolerance
/// `tol` per component (shared refinement, max-norm error control).
///
/// The per-level tolerance halves with each split but is floored at
/// tol·2⁻²⁰; the floor never binds on smooth integrands and keeps bounded
/// oscillation (amplitude shrinking with the interval) from racing the
/// shrinking threshold forever.
pub fn adaptive_simpson_vec(
    f: VecFn,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> Result<Vec<f64>> {
    if a == b {
        return Ok(f(a)?.iter().map(|_| 0.0).collect());
    }
    let m = 0.5 * (a + b);
    let fa = f(a)?;
    let fm = f(m)?;
    let fb = f(b)?;
    let whole = simpson(b - a, &fa, &fm, &fb);
    let floor = tol * (0.5f64).powi(20);
    refine(f, a, b, fa, fm, fb, whole, tol, floor, max_depth)
}

/// Scalar convenience wrapper.
pub fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> Result<f64> {
    let g = |t: f64| -> Result<Vec<f64>> { Ok(vec![f(t)]) };
    Ok(adaptive_simpson_vec(&g, a, b, tol, max_depth)?[0])
}
