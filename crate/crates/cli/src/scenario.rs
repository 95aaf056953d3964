//! Scenario file schema and compilation into library objects.
//!
//! Scenarios are single JSON files so runs are reproducible from committed
//! artifacts; unknown fields are rejected so typos surface as schema errors
//! rather than silently ignored knobs.

use serde::Deserialize;

use fuzzy_timescale::error::Result;
use fuzzy_timescale::funcspec::{CrispFn, FuzzyFunctionExpr};
use fuzzy_timescale::fuzzy::{FuzzyNumber, Interval};
use fuzzy_timescale::{NumericConfig, TimeScale};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    Derive,
    Integrate,
    Verify,
    LocalSteps,
}

impl Operation {
    pub fn name(&self) -> &'static str {
        match self {
            Operation::Derive => "derive",
            Operation::Integrate => "integrate",
            Operation::Verify => "verify",
            Operation::LocalSteps => "local_steps",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum ScaleSpec {
    /// Explicit closed segments `[[lo, hi], …]`.
    Segments(Vec<[f64; 2]>),
    /// Uniform grid {a, a+step, …, b}.
    Uniform { a: f64, b: f64, step: f64 },
    /// Truncated two-sided geometric scale {−q^k} ∪ {q^k}, k in [k_min, k_max].
    GeometricTwoSided { q: f64, k_min: i32, k_max: i32 },
}

impl ScaleSpec {
    pub fn build(&self) -> Result<TimeScale> {
        match self {
            ScaleSpec::Segments(segs) => {
                let ivs: Vec<(f64, f64)> = segs.iter().map(|s| (s[0], s[1])).collect();
                TimeScale::new(&ivs)
            }
            ScaleSpec::Uniform { a, b, step } => TimeScale::uniform(*a, *b, *step),
            ScaleSpec::GeometricTwoSided { q, k_min, k_max } => {
                TimeScale::geometric_two_sided(*q, *k_min, *k_max)
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum FuzzySpec {
    Triangular([f64; 3]),
    Levels(Vec<[f64; 2]>),
    Crisp(f64),
}

impl FuzzySpec {
    pub fn build(&self, resolution: usize) -> Result<FuzzyNumber> {
        match self {
            FuzzySpec::Triangular([a, b, c]) => {
                FuzzyNumber::from_triangular(*a, *b, *c, resolution)
            }
            FuzzySpec::Levels(rows) => {
                let levels = rows.iter().map(|r| Interval::new(r[0], r[1])).collect();
                FuzzyNumber::from_levels(levels)
            }
            FuzzySpec::Crisp(x) => Ok(FuzzyNumber::crisp(*x, resolution)),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum CrispFnSpec {
    Poly(Vec<f64>),
    Sin { a: f64, b: f64 },
    Cos { a: f64, b: f64 },
    Exp { a: f64 },
    Tsininv {},
}

impl CrispFnSpec {
    fn build(&self) -> CrispFn {
        match self {
            CrispFnSpec::Poly(c) => CrispFn::Poly(c.clone()),
            CrispFnSpec::Sin { a, b } => CrispFn::Sin { a: *a, b: *b },
            CrispFnSpec::Cos { a, b } => CrispFn::Cos { a: *a, b: *b },
            CrispFnSpec::Exp { a } => CrispFn::Exp { a: *a },
            CrispFnSpec::Tsininv {} => CrispFn::TSinInv,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum ExprSpec {
    Const(FuzzySpec),
    Term {
        coef: FuzzySpec,
        #[serde(rename = "fn")]
        func: CrispFnSpec,
    },
    Sum(Vec<ExprSpec>),
    Prod(Box<ExprSpec>, Box<ExprSpec>),
}

impl ExprSpec {
    pub fn build(&self, resolution: usize) -> Result<FuzzyFunctionExpr> {
        let expr = match self {
            ExprSpec::Const(u) => FuzzyFunctionExpr::Const(u.build(resolution)?),
            ExprSpec::Term { coef, func } => {
                FuzzyFunctionExpr::term(coef.build(resolution)?, func.build())
            }
            ExprSpec::Sum(parts) => {
                let built: Result<Vec<_>> = parts.iter().map(|p| p.build(resolution)).collect();
                FuzzyFunctionExpr::Sum(built?)
            }
            ExprSpec::Prod(a, b) => FuzzyFunctionExpr::Prod(
                Box::new(a.build(resolution)?),
                Box::new(b.build(resolution)?),
            ),
        };
        expr.validate()?;
        Ok(expr)
    }
}

/// Per-field overrides of [`NumericConfig`].
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConfigOverride {
    pub limit_tol: Option<f64>,
    pub max_refinements: Option<usize>,
    pub h0: Option<f64>,
    pub level_resolution: Option<usize>,
    pub quad_tol: Option<f64>,
    pub quad_max_depth: Option<usize>,
    pub residual_tol: Option<f64>,
}

impl ConfigOverride {
    pub fn apply(&self, mut cfg: NumericConfig) -> NumericConfig {
        if let Some(v) = self.limit_tol {
            cfg.limit_tol = v;
        }
        if let Some(v) = self.max_refinements {
            cfg.max_refinements = v;
        }
        if let Some(v) = self.h0 {
            cfg.h0 = v;
        }
        if let Some(v) = self.level_resolution {
            cfg.level_resolution = v;
        }
        if let Some(v) = self.quad_tol {
            cfg.quad_tol = v;
        }
        if let Some(v) = self.quad_max_depth {
            cfg.quad_max_depth = v;
        }
        if let Some(v) = self.residual_tol {
            cfg.residual_tol = v;
        }
        cfg
    }
}

/// One scenario file: which operation to run, on what scale, with which
/// functions, points, window and weights.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub operation: Operation,
    pub timescale: ScaleSpec,
    #[serde(default)]
    pub function: Option<ExprSpec>,
    /// Second operand for pairwise checks (sum/product rules, parts).
    #[serde(default)]
    pub function_g: Option<ExprSpec>,
    #[serde(default)]
    pub points: Vec<f64>,
    #[serde(default)]
    pub a: Option<f64>,
    #[serde(default)]
    pub b: Option<f64>,
    /// Base point of the antiderivative in verification scenarios.
    #[serde(default)]
    pub t0: Option<f64>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub alpha_grid: Option<Vec<f64>>,
    #[serde(default)]
    pub config: ConfigOverride,
    #[serde(default)]
    pub format: Option<Format>,
}
