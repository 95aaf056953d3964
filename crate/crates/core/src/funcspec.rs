//! Declarative fuzzy-valued functions of a real variable, plus one-sided
//! limits for dense-point analysis.
//!
//! The expression tree pairs fuzzy coefficients with a small catalog of
//! crisp functions, which keeps scenario files serializable and runs
//! reproducible. Code that needs functions outside the catalog (for example
//! an antiderivative defined by integration) implements [`FuzzyFunction`]
//! directly, usually through [`FuzzyClosure`].

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyNumber;

/// Crisp catalog function of t. Every entry is total on the reals;
/// `TSinInv` is t·sin(1/t) extended with value 0 at t = 0.
#[derive(Debug, Clone, PartialEq)]
pub enum CrispFn {
    /// Polynomial with ascending coefficients: c0 + c1 t + c2 t² + …
    Poly(Vec<f64>),
    /// sin(a·t + b)
    Sin { a: f64, b: f64 },
    /// cos(a·t + b)
    Cos { a: f64, b: f64 },
    /// exp(a·t)
    Exp { a: f64 },
    /// t·sin(1/t), with 0 at t = 0
    TSinInv,
}

impl CrispFn {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            CrispFn::Poly(coeffs) => coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c),
            CrispFn::Sin { a, b } => (a * t + b).sin(),
            CrispFn::Cos { a, b } => (a * t + b).cos(),
            CrispFn::Exp { a } => (a * t).exp(),
            CrispFn::TSinInv => {
                if t == 0.0 {
                    0.0
                } else {
                    t * (1.0 / t).sin()
                }
            }
        }
    }
}

/// Expression tree for f: T → fuzzy numbers.
///
/// All embedded fuzzy numbers must share one level resolution; use
/// [`FuzzyFunctionExpr::validate`] after assembling a tree by hand.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyFunctionExpr {
    Const(FuzzyNumber),
    Term { coef: FuzzyNumber, func: CrispFn },
    Sum(Vec<FuzzyFunctionExpr>),
    Prod(Box<FuzzyFunctionExpr>, Box<FuzzyFunctionExpr>),
}

impl FuzzyFunctionExpr {
    pub fn term(coef: FuzzyNumber, func: CrispFn) -> Self {
        FuzzyFunctionExpr::Term { coef, func }
    }

    /// Level resolution shared by the tree.
    pub fn resolution(&self) -> usize {
        match self {
            FuzzyFunctionExpr::Const(u) => u.resolution(),
            FuzzyFunctionExpr::Term { coef, .. } => coef.resolution(),
            FuzzyFunctionExpr::Sum(parts) => parts[0].resolution(),
            FuzzyFunctionExpr::Prod(a, _) => a.resolution(),
        }
    }

    /// Checks that sums are non-empty and every embedded number shares one
    /// resolution.
    pub fn validate(&self) -> Result<()> {
        fn walk(e: &FuzzyFunctionExpr, expected: usize) -> Result<()> {
            match e {
                FuzzyFunctionExpr::Const(u) => {
                    if u.resolution() != expected {
                        return Err(Error::ResolutionMismatch(expected, u.resolution()));
                    }
                }
                FuzzyFunctionExpr::Term { coef, .. } => {
                    if coef.resolution() != expected {
                        return Err(Error::ResolutionMismatch(expected, coef.resolution()));
                    }
                }
                FuzzyFunctionExpr::Sum(parts) => {
                    if parts.is_empty() {
                        return Err(Error::InvalidConfig("empty sum expression".into()));
                    }
                    for p in parts {
                        walk(p, expected)?;
                    }
                }
                FuzzyFunctionExpr::Prod(a, b) => {
                    walk(a, expected)?;
                    walk(b, expected)?;
                }
            }
            Ok(())
        }
        walk(self, self.resolution())
    }

    /// Pointwise value. Terms scale the coefficient by g(t) (endpoints flip
    /// for negative g(t)), sums add levelwise, products multiply levelwise.
    ///
    /// Panics if the tree mixes level resolutions; see
    /// [`FuzzyFunctionExpr::validate`].
    pub fn eval(&self, t: f64) -> FuzzyNumber {
        match self {
            FuzzyFunctionExpr::Const(u) => u.clone(),
            FuzzyFunctionExpr::Term { coef, func } => coef.scalar_mul(func.eval(t)),
            FuzzyFunctionExpr::Sum(parts) => {
                let mut acc = parts[0].eval(t);
                for p in &parts[1..] {
                    acc = acc
                        .add(&p.eval(t))
                        .expect("uniform resolution enforced by validate");
                }
                acc
            }
            FuzzyFunctionExpr::Prod(a, b) => a
                .eval(t)
                .mul(&b.eval(t))
                .expect("uniform resolution enforced by validate"),
        }
    }
}

/// Approach direction for one-sided limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A fuzzy-valued function of a real variable, the interface the calculus
/// and integration operators work against.
pub trait FuzzyFunction {
    fn value(&self, t: f64) -> Result<FuzzyNumber>;
    fn resolution(&self) -> usize;
}

impl FuzzyFunction for FuzzyFunctionExpr {
    fn value(&self, t: f64) -> Result<FuzzyNumber> {
        Ok(self.eval(t))
    }

    fn resolution(&self) -> usize {
        self.resolution()
    }
}

/// Host-language callable satisfying the [`FuzzyFunction`] contract.
pub struct FuzzyClosure<F>
where
    F: Fn(f64) -> Result<FuzzyNumber>,
{
    func: F,
    resolution: usize,
}

impl<F> FuzzyClosure<F>
where
    F: Fn(f64) -> Result<FuzzyNumber>,
{
    pub fn new(resolution: usize, func: F) -> Self {
        FuzzyClosure { func, resolution }
    }
}

impl<F> FuzzyFunction for FuzzyClosure<F>
where
    F: Fn(f64) -> Result<FuzzyNumber>,
{
    fn value(&self, t: f64) -> Result<FuzzyNumber> {
        (self.func)(t)
    }

    fn resolution(&self) -> usize {
        self.resolution
    }
}

/// One-sided limit of f at t, detected on the geometric approach schedule
/// t ± h0·2^{−k}.
///
/// Each level endpoint is accelerated by one Richardson step (2v(h/2) −
/// v(h)), which cancels the leading linear error term; the limit is
/// accepted once two consecutive refinements move the accelerated stack by
/// at most `cfg.limit_tol`, and reported non-convergent when the schedule
/// runs out first.
pub fn one_sided_limit(
    f: &dyn FuzzyFunction,
    t: f64,
    side: Side,
    cfg: &NumericConfig,
) -> Result<FuzzyNumber> {
    let dir = match side {
        Side::Left => -1.0,
        Side::Right => 1.0,
    };
    let endpoints = |u: &FuzzyNumber| -> Vec<f64> {
        let mut v: Vec<f64> = u.levels().iter().map(|iv| iv.lo).collect();
        v.extend(u.levels().iter().map(|iv| iv.hi));
        v
    };
    let mut h = cfg.h0;
    let mut raw_prev = endpoints(&f.value(t + dir * h)?);
    h *= 0.5;
    let mut raw_cur = endpoints(&f.value(t + dir * h)?);
    let mut prev_ext: Option<Vec<f64>> = None;
    let mut quiet = 0usize;
    for _ in 0..cfg.max_refinements {
        let ext: Vec<f64> = raw_cur
            .iter()
            .zip(&raw_prev)
            .map(|(c, p)| 2.0 * c - p)
            .collect();
        if let Some(prev) = &prev_ext {
            let d = ext
                .iter()
                .zip(prev)
                .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
            if d <= cfg.limit_tol {
                quiet += 1;
                if quiet >= 2 {
                    return crate::fuzzy::try_stack(&ext, 4.0 * cfg.limit_tol).ok_or(
                        Error::NonConvergent {
                            at: t,
                            refinements: cfg.max_refinements,
                        },
                    );
                }
            } else {
                quiet = 0;
            }
        }
        prev_ext = Some(ext);
        h *= 0.5;
        raw_prev = raw_cur;
        raw_cur = endpoints(&f.value(t + dir * h)?);
    }
    Err(Error::NonConvergent {
        at: t,
        refinements: cfg.max_refinements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::Interval;

    const M: usize = 64;

    fn tri123() -> FuzzyNumber {
        FuzzyNumber::from_triangular(1.0, 2.0, 3.0, M).unwrap()
    }

    #[test]
    fn term_scales_by_catalog_value() {
        let f = FuzzyFunctionExpr::term(tri123(), CrispFn::Poly(vec![0.0, 1.0]));
        let at2 = f.eval(2.0);
        assert_eq!(at2.level(0), Interval::new(2.0, 6.0));
        assert_eq!(at2.level(M), Interval::new(4.0, 4.0));

        let neg = f.eval(-1.0);
        assert_eq!(neg.level(0), Interval::new(-3.0, -1.0));
        assert_eq!(neg.level(M), Interval::new(-2.0, -2.0));
    }

    #[test]
    fn oscillator_vanishes_at_origin() {
        let f = FuzzyFunctionExpr::term(tri123(), CrispFn::TSinInv);
        let v = f.eval(0.0);
        assert!(v.is_crisp());
        assert_eq!(v.level(0), Interval::point(0.0));
    }

    #[test]
    fn sum_matches_levelwise_addition() {
        let f = FuzzyFunctionExpr::term(tri123(), CrispFn::Poly(vec![0.0, 1.0]));
        let g = FuzzyFunctionExpr::Const(tri123());
        let s = FuzzyFunctionExpr::Sum(vec![f.clone(), g.clone()]);
        let t = 1.75;
        let direct = f.eval(t).add(&g.eval(t)).unwrap();
        assert_eq!(s.eval(t).hausdorff(&direct).unwrap(), 0.0);
    }

    #[test]
    fn limit_of_continuous_function_matches_eval() {
        let cfg = NumericConfig::default();
        for func in [
            CrispFn::Poly(vec![0.0, 0.0, 1.0]),
            CrispFn::Sin { a: 1.0, b: 0.5 },
            CrispFn::Exp { a: 0.7 },
        ] {
            let f = FuzzyFunctionExpr::term(tri123(), func);
            for side in [Side::Right, Side::Left] {
                let lim = one_sided_limit(&f, 1.0, side, &cfg).unwrap();
                assert!(lim.hausdorff(&f.eval(1.0)).unwrap() <= cfg.limit_tol);
            }
        }
    }

    #[test]
    fn limit_of_squeezed_oscillator_is_zero() {
        let cfg = NumericConfig::default();
        let f = FuzzyFunctionExpr::term(tri123(), CrispFn::TSinInv);
        let lim = one_sided_limit(&f, 0.0, Side::Right, &cfg).unwrap();
        assert!(lim.magnitude() <= 1e-7, "squeeze forces the limit to 0");
    }

    #[test]
    fn limit_of_constant_is_immediate() {
        let cfg = NumericConfig::default();
        let f = FuzzyFunctionExpr::Const(tri123());
        let lim = one_sided_limit(&f, 123.0, Side::Left, &cfg).unwrap();
        assert_eq!(lim.hausdorff(&tri123()).unwrap(), 0.0);
    }

    #[test]
    fn validate_rejects_mixed_resolution() {
        let bad = FuzzyFunctionExpr::Sum(vec![
            FuzzyFunctionExpr::Const(FuzzyNumber::crisp(1.0, 8)),
            FuzzyFunctionExpr::Const(FuzzyNumber::crisp(1.0, 16)),
        ]);
        assert!(matches!(
            bad.validate(),
            Err(Error::ResolutionMismatch(8, 16))
        ));
    }
}
