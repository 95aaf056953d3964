//! Property tests over randomized scales and fuzzy numbers.

use proptest::prelude::*;

use fuzzy_timescale::calculus::{diamond_alpha_gh, diamond_definition_residual};
use fuzzy_timescale::funcspec::{CrispFn, FuzzyFunctionExpr};
use fuzzy_timescale::fuzzy::FuzzyNumber;
use fuzzy_timescale::integral::{diamond_int_fuzzy, diamond_int_scalar};
use fuzzy_timescale::{NumericConfig, TimeScale};

const M: usize = 16;

/// Dyadic coordinates keep float addition exact, so invariants stated as
/// exact equalities really are exact.
fn dyadic() -> impl Strategy<Value = f64> {
    (-8192i32..=8192).prop_map(|k| k as f64 / 128.0)
}

fn triangular() -> impl Strategy<Value = FuzzyNumber> {
    (dyadic(), dyadic(), dyadic()).prop_map(|(a, b, c)| {
        let mut v = [a, b, c];
        v.sort_by(|x, y| x.partial_cmp(y).unwrap());
        FuzzyNumber::from_triangular(v[0], v[1], v[2], M).unwrap()
    })
}

/// A bounded scale made of up to four disjoint dyadic segments, some
/// degenerate.
fn timescale() -> impl Strategy<Value = TimeScale> {
    proptest::collection::vec((dyadic(), 0.0f64..4.0, any::<bool>()), 1..5).prop_map(|parts| {
        let mut ivs = Vec::new();
        let mut cursor = -64.0;
        for (offset, len, point) in parts {
            let lo = cursor + 0.5 + (offset + 64.0) / 16.0;
            let hi = if point { lo } else { lo + len };
            ivs.push((lo, hi));
            cursor = hi;
        }
        TimeScale::new(&ivs).unwrap()
    })
}

fn member_points(ts: &TimeScale) -> Vec<f64> {
    let mut pts = ts.boundary_points();
    for seg in ts.segments() {
        if !seg.is_point() {
            pts.push(0.5 * (seg.lo + seg.hi));
        }
    }
    pts
}

proptest! {
    #[test]
    fn jump_operators_bracket_the_point(ts in timescale()) {
        for t in member_points(&ts) {
            let sigma = ts.sigma(t).unwrap();
            let rho = ts.rho(t).unwrap();
            prop_assert!(rho <= t && t <= sigma);
            prop_assert!(ts.mu(t).unwrap() >= 0.0);
            prop_assert!(ts.nu(t).unwrap() >= 0.0);
        }
    }

    #[test]
    fn jump_operators_are_monotone(ts in timescale()) {
        let pts = {
            let mut p = member_points(&ts);
            p.sort_by(|a, b| a.partial_cmp(b).unwrap());
            p
        };
        for w in pts.windows(2) {
            prop_assert!(ts.sigma(w[0]).unwrap() <= ts.sigma(w[1]).unwrap());
            prop_assert!(ts.rho(w[0]).unwrap() <= ts.rho(w[1]).unwrap());
        }
    }

    #[test]
    fn classification_matches_graininess(ts in timescale()) {
        use fuzzy_timescale::SClass::*;
        for t in member_points(&ts) {
            let class = ts.classify(t).unwrap();
            let right_scattered = ts.mu(t).unwrap() > 0.0;
            let left_scattered = ts.nu(t).unwrap() > 0.0;
            let expected = match (left_scattered, right_scattered) {
                (false, true) => S1,
                (true, false) => S2,
                (true, true) => S3,
                (false, false) => S4,
            };
            prop_assert_eq!(class.class, expected);
            prop_assert_eq!(class.is_min, t == ts.min());
            prop_assert_eq!(class.is_max, t == ts.max());
        }
    }

    #[test]
    fn homogeneous_scales_are_quasi_regular(step in 1u32..5, n in 1usize..8, a in dyadic()) {
        let pts: Vec<f64> = (0..=n).map(|k| a + k as f64 * step as f64).collect();
        let ts = TimeScale::from_points(&pts).unwrap();
        prop_assert_eq!(ts.is_homogeneous(), Some(step as f64));
        prop_assert!(ts.is_quasi_regular());
    }

    #[test]
    fn quasi_regular_jumps_invert(ts in timescale()) {
        if !ts.is_quasi_regular() {
            return Ok(());
        }
        for t in member_points(&ts) {
            if t != ts.min() && t != ts.max() {
                prop_assert_eq!(ts.sigma(ts.rho(t).unwrap()).unwrap(), t);
                prop_assert_eq!(ts.rho(ts.sigma(t).unwrap()).unwrap(), t);
                let prod = ts.nabla_sigma(t).unwrap() * ts.delta_rho(t).unwrap();
                prop_assert!((prod - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn metric_axioms(a in triangular(), b in triangular(), c in triangular(), d in triangular(), k in dyadic()) {
        let base = a.hausdorff(&b).unwrap();
        let shifted = a.add(&c).unwrap().hausdorff(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(base, shifted);

        let hom = a.scalar_mul(k).hausdorff(&b.scalar_mul(k)).unwrap();
        prop_assert!((hom - k.abs() * base).abs() <= 1e-12);

        let lhs = a.add(&b).unwrap().hausdorff(&c.add(&d).unwrap()).unwrap();
        prop_assert!(lhs <= a.hausdorff(&c).unwrap() + b.hausdorff(&d).unwrap() + 1e-12);
    }

    #[test]
    fn gh_difference_inverts_addition(u in triangular(), v in triangular()) {
        let w = u.add(&v).unwrap().gh_diff(&v).unwrap();
        prop_assert!(w.hausdorff(&u).unwrap() <= 1e-12);
    }

    #[test]
    fn arithmetic_preserves_nesting(u in triangular(), v in triangular(), k in dyadic()) {
        for value in [u.add(&v).unwrap(), u.scalar_mul(k), u.mul(&v).unwrap()] {
            let levels = value.levels();
            for j in 1..levels.len() {
                prop_assert!(levels[j].lo >= levels[j - 1].lo);
                prop_assert!(levels[j].hi <= levels[j - 1].hi);
                prop_assert!(levels[j].lo <= levels[j].hi);
            }
        }
    }

    #[test]
    fn triangular_levels_match_interpolation(a in dyadic(), b in dyadic(), c in dyadic(), r in 0.0f64..1.0) {
        let mut v = [a, b, c];
        v.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let u = FuzzyNumber::from_triangular(v[0], v[1], v[2], 64).unwrap();
        let iv = u.level_at(r);
        prop_assert!((iv.lo - (v[0] + r * (v[1] - v[0]))).abs() <= 1e-12);
        prop_assert!((iv.hi - (v[2] - r * (v[2] - v[1]))).abs() <= 1e-12);
    }

    #[test]
    fn term_eval_scales_every_level(u in triangular(), t in dyadic()) {
        let f = FuzzyFunctionExpr::term(u.clone(), CrispFn::Poly(vec![0.0, 1.0]));
        let v = f.eval(t);
        for j in 0..=M {
            let iv = u.level(j);
            // the image of the level under x ↦ t·x, sampled densely
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for s in 0..=8 {
                let x = iv.lo + (iv.hi - iv.lo) * s as f64 / 8.0;
                lo = lo.min(t * x);
                hi = hi.max(t * x);
            }
            prop_assert!((v.level(j).lo - lo).abs() <= 1e-12);
            prop_assert!((v.level(j).hi - hi).abs() <= 1e-12);
        }
    }

    #[test]
    fn sum_eval_is_levelwise_addition(u in triangular(), v in triangular(), t in dyadic()) {
        let f = FuzzyFunctionExpr::term(u, CrispFn::Poly(vec![0.0, 1.0]));
        let g = FuzzyFunctionExpr::Const(v);
        let s = FuzzyFunctionExpr::Sum(vec![f.clone(), g.clone()]);
        let direct = f.eval(t).add(&g.eval(t)).unwrap();
        prop_assert_eq!(s.eval(t).hausdorff(&direct).unwrap(), 0.0);
    }

    #[test]
    fn integral_splits_additively(ts in timescale(), alpha in 0.0f64..=1.0) {
        let cfg = NumericConfig { level_resolution: M, ..NumericConfig::default() };
        let f = FuzzyFunctionExpr::term(
            FuzzyNumber::from_triangular(1.0, 2.0, 3.0, M).unwrap(),
            CrispFn::Poly(vec![0.0, 1.0]),
        );
        let (a, b) = (ts.min(), ts.max());
        let mids = member_points(&ts);
        let m = mids[mids.len() / 2];
        let whole = diamond_int_fuzzy(&f, &ts, a, b, alpha, &cfg).unwrap().value;
        let left = diamond_int_fuzzy(&f, &ts, a, m, alpha, &cfg).unwrap().value;
        let right = diamond_int_fuzzy(&f, &ts, m, b, alpha, &cfg).unwrap().value;
        prop_assert!(whole.hausdorff(&left.add(&right).unwrap()).unwrap() <= 1e-9);
    }

    #[test]
    fn crisp_integral_collapses_to_scalar(ts in timescale(), alpha in 0.0f64..=1.0) {
        let cfg = NumericConfig { level_resolution: M, ..NumericConfig::default() };
        let f = FuzzyFunctionExpr::term(FuzzyNumber::crisp(1.0, M), CrispFn::Poly(vec![0.0, 0.0, 1.0]));
        let (a, b) = (ts.min(), ts.max());
        let fuzzy = diamond_int_fuzzy(&f, &ts, a, b, alpha, &cfg).unwrap().value;
        let scalar = diamond_int_scalar(&|t| t * t, &ts, a, b, alpha, &cfg).unwrap();
        for iv in fuzzy.levels() {
            prop_assert!((iv.lo - scalar).abs() <= 1e-9);
            prop_assert!((iv.hi - scalar).abs() <= 1e-9);
        }
    }
}

/// The defining inequality of the diamond-alpha derivative, exercised
/// a-posteriori at a scattered point with probes marching toward it along
/// the dense side.
#[test]
fn diamond_definition_inequality_at_transition_point() {
    let cfg = NumericConfig::default();
    let ts = TimeScale::new(&[(-3.0, -1.0), (0.0, 2.0)]).unwrap();
    let f = FuzzyFunctionExpr::term(
        FuzzyNumber::from_triangular(1.0, 2.0, 3.0, cfg.level_resolution).unwrap(),
        CrispFn::Poly(vec![5.0, 0.0, 1.0]),
    );
    let s = 0.0;
    let alpha = 0.5;
    let d = diamond_alpha_gh(&f, &ts, s, alpha, &cfg).unwrap();
    let mut h = 0.25;
    let mut prev_ratio = f64::INFINITY;
    for _ in 0..10 {
        let (dist, weight) =
            diamond_definition_residual(&f, &ts, s, s + h, alpha, &d.value).unwrap();
        let ratio = dist / weight;
        assert!(ratio <= prev_ratio + 1e-12, "defect ratio must not grow");
        prev_ratio = ratio;
        h *= 0.5;
    }
    assert!(
        prev_ratio <= 1e-3,
        "defining inequality not satisfied in the limit: {prev_ratio}"
    );
}
