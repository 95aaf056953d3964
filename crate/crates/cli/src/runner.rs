//! Scenario dispatch: validate, run, serialize.
//!
//! Output is deterministic: fixed alpha iteration order, fixed point order,
//! pretty-printed JSON with stable field order. Domain failures inside a
//! batch (say, a non-convergent derivative at one point) are data and land
//! in the records; failures of the run itself map to exit code 1 and schema
//! problems to exit code 2.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use fuzzy_timescale::calculus::{
    delta_gh, diamond_alpha_gh, nabla_gh, DerivKind, DerivativeResult,
};
use fuzzy_timescale::error::Error;
use fuzzy_timescale::funcspec::FuzzyFunctionExpr;
use fuzzy_timescale::fuzzy::{FuzzyNumber, GhCase};
use fuzzy_timescale::integral::{diamond_int_fuzzy, local_step_integrals};
use fuzzy_timescale::theorems::{
    self, check_derivative_of_integral, check_differentiability_implications,
    check_ftc_homogeneous, check_ftc_quasi_regular, check_integral_laws,
    check_integration_by_parts, check_one_step_integrals, check_product_rule, check_scalar_rule,
    check_sum_rule, default_check_points, CheckReport, ALPHA_GRID,
};
use fuzzy_timescale::{NumericConfig, TimeScale};

use crate::scenario::{Format, Operation, Scenario};

/// Command-line / environment overrides; they win over scenario fields.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub levels: Option<usize>,
    pub alpha: Option<f64>,
    pub alpha_grid: Option<Vec<f64>>,
    pub format: Option<Format>,
    pub emit_plots: Option<PathBuf>,
    pub tol: Option<f64>,
}

/// What the process should print and how it should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
}

#[derive(Serialize)]
struct ErrorBody {
    code: String,
    message: String,
}

#[derive(Serialize)]
struct ErrorOut {
    error: ErrorBody,
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn schema_error(message: impl Into<String>) -> Outcome {
    Outcome {
        exit_code: 2,
        stdout: render(&ErrorOut {
            error: ErrorBody {
                code: "SchemaError".into(),
                message: message.into(),
            },
        }),
    }
}

/// Schema-level failure for command-line argument problems (exit code 2).
pub fn schema_outcome(message: String) -> Outcome {
    schema_error(message)
}

fn domain_error(e: &Error) -> Outcome {
    Outcome {
        exit_code: 1,
        stdout: render(&ErrorOut {
            error: ErrorBody {
                code: e.code().into(),
                message: e.to_string(),
            },
        }),
    }
}

fn io_error(e: &std::io::Error) -> Outcome {
    Outcome {
        exit_code: 1,
        stdout: render(&ErrorOut {
            error: ErrorBody {
                code: "IoError".into(),
                message: e.to_string(),
            },
        }),
    }
}

fn level_rows(u: &FuzzyNumber) -> Vec<[f64; 3]> {
    u.level_table()
        .iter()
        .map(|&(r, lo, hi)| [r, lo, hi])
        .collect()
}

fn kind_name(kind: DerivKind) -> &'static str {
    match kind {
        DerivKind::ExactScattered => "exact_scattered",
        DerivKind::LimitDense => "limit_dense",
    }
}

fn case_name(case: GhCase) -> &'static str {
    match case {
        GhCase::CaseI => "case_i",
        GhCase::CaseII => "case_ii",
        GhCase::Mixed => "mixed",
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum OpOut {
    Value {
        levels: Vec<[f64; 3]>,
        kind: &'static str,
        gh_case: &'static str,
    },
    Failed {
        error: String,
        message: String,
    },
}

impl OpOut {
    fn from(result: Result<DerivativeResult, Error>) -> Self {
        match result {
            Ok(d) => OpOut::Value {
                levels: level_rows(&d.value),
                kind: kind_name(d.kind),
                gh_case: case_name(d.gh_case),
            },
            Err(e) => OpOut::Failed {
                error: e.code().into(),
                message: e.to_string(),
            },
        }
    }
}

#[derive(Serialize)]
struct DiamondOut {
    alpha: f64,
    #[serde(flatten)]
    out: OpOut,
}

#[derive(Serialize)]
struct DeriveOut {
    point: f64,
    class: String,
    is_min: bool,
    is_max: bool,
    delta: OpOut,
    nabla: OpOut,
    diamond: Vec<DiamondOut>,
}

#[derive(Serialize)]
struct IntegrateAlphaOut {
    alpha: f64,
    levels: Vec<[f64; 3]>,
}

#[derive(Serialize)]
struct IntegrateOut {
    a: f64,
    b: f64,
    results: Vec<IntegrateAlphaOut>,
}

#[derive(Serialize)]
struct StepAlphaOut {
    alpha: f64,
    forward: Vec<[f64; 3]>,
    backward: Vec<[f64; 3]>,
}

#[derive(Serialize)]
struct StepOut {
    point: f64,
    results: Vec<StepAlphaOut>,
}

struct Compiled {
    ts: TimeScale,
    f: Option<FuzzyFunctionExpr>,
    g: Option<FuzzyFunctionExpr>,
    points: Vec<f64>,
    a: Option<f64>,
    b: Option<f64>,
    t0: Option<f64>,
    alphas: Vec<f64>,
    cfg: NumericConfig,
    format: Format,
}

fn compile(sc: &Scenario, ov: &Overrides) -> Result<Compiled, Error> {
    let mut cfg = sc.config.apply(NumericConfig::default());
    if let Some(m) = ov.levels {
        cfg.level_resolution = m;
    }
    if let Some(t) = ov.tol {
        cfg.residual_tol = t;
    }
    cfg.validate()?;

    let ts = sc.timescale.build()?;
    let f = sc
        .function
        .as_ref()
        .map(|e| e.build(cfg.level_resolution))
        .transpose()?;
    let g = sc
        .function_g
        .as_ref()
        .map(|e| e.build(cfg.level_resolution))
        .transpose()?;

    // points are validated (and snapped) before dispatch
    let mut points = Vec::with_capacity(sc.points.len());
    for &p in &sc.points {
        points.push(ts.snap(p)?);
    }

    let alphas: Vec<f64> = if let Some(a) = ov.alpha {
        vec![a]
    } else if let Some(grid) = &ov.alpha_grid {
        grid.clone()
    } else if let Some(a) = sc.alpha {
        vec![a]
    } else if let Some(grid) = &sc.alpha_grid {
        grid.clone()
    } else {
        ALPHA_GRID.to_vec()
    };
    for &a in &alphas {
        if !(0.0..=1.0).contains(&a) || a.is_nan() {
            return Err(Error::AlphaOutOfRange(a));
        }
    }

    let snap_opt = |x: Option<f64>| x.map(|v| ts.snap(v)).transpose();
    let a = snap_opt(sc.a)?;
    let b = snap_opt(sc.b)?;
    let t0 = snap_opt(sc.t0)?;

    Ok(Compiled {
        ts,
        f,
        g,
        points,
        a,
        b,
        t0,
        alphas,
        cfg,
        format: ov.format.or(sc.format).unwrap_or(Format::Json),
    })
}

fn require_function(c: &Compiled) -> Result<&FuzzyFunctionExpr, Outcome> {
    c.f.as_ref()
        .ok_or_else(|| schema_error("scenario is missing the \"function\" field"))
}

/// Executes a scenario file under the given subcommand.
pub fn run_file(expected: Operation, path: &Path, ov: &Overrides) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return schema_error(format!("cannot read {}: {e}", path.display())),
    };
    run_str(expected, &text, ov)
}

/// Executes a scenario given as a JSON string.
pub fn run_str(expected: Operation, json: &str, ov: &Overrides) -> Outcome {
    let sc: Scenario = match serde_json::from_str(json) {
        Ok(s) => s,
        Err(e) => return schema_error(format!("scenario does not match the schema: {e}")),
    };
    if sc.operation != expected {
        return schema_error(format!(
            "scenario declares operation \"{}\" but was invoked as \"{}\"",
            sc.operation.name(),
            expected.name()
        ));
    }
    let compiled = match compile(&sc, ov) {
        Ok(c) => c,
        Err(e) => return domain_error(&e),
    };
    if let Some(dir) = &ov.emit_plots {
        if let Err(e) = emit_plots(dir, &compiled) {
            return io_error(&e);
        }
    }
    match expected {
        Operation::Derive => run_derive(&compiled),
        Operation::Integrate => run_integrate(&compiled),
        Operation::LocalSteps => run_local_steps(&compiled),
        Operation::Verify => run_verify(&compiled),
    }
}

fn run_derive(c: &Compiled) -> Outcome {
    let f = match require_function(c) {
        Ok(f) => f,
        Err(out) => return out,
    };
    if c.points.is_empty() {
        return schema_error("derive scenario needs a non-empty \"points\" list");
    }
    let mut records = Vec::new();
    for &p in &c.points {
        let class = match c.ts.classify(p) {
            Ok(cl) => cl,
            Err(e) => return domain_error(&e),
        };
        let diamond = c
            .alphas
            .iter()
            .map(|&alpha| DiamondOut {
                alpha,
                out: OpOut::from(diamond_alpha_gh(f, &c.ts, p, alpha, &c.cfg)),
            })
            .collect();
        records.push(DeriveOut {
            point: p,
            class: class.class.to_string(),
            is_min: class.is_min,
            is_max: class.is_max,
            delta: OpOut::from(delta_gh(f, &c.ts, p, &c.cfg)),
            nabla: OpOut::from(nabla_gh(f, &c.ts, p, &c.cfg)),
            diamond,
        });
    }
    match c.format {
        Format::Json => Outcome {
            exit_code: 0,
            stdout: render(&records),
        },
        Format::Csv => Outcome {
            exit_code: 0,
            stdout: derive_csv(&records),
        },
    }
}

fn derive_csv(records: &[DeriveOut]) -> String {
    let mut out = String::from("point,op,alpha,r,lo,hi\n");
    let mut push_rows = |point: f64, op: &str, alpha: &str, o: &OpOut| {
        if let OpOut::Value { levels, .. } = o {
            for row in levels {
                out.push_str(&format!(
                    "{point},{op},{alpha},{},{},{}\n",
                    row[0], row[1], row[2]
                ));
            }
        }
    };
    for rec in records {
        push_rows(rec.point, "delta", "", &rec.delta);
        push_rows(rec.point, "nabla", "", &rec.nabla);
        for d in &rec.diamond {
            push_rows(rec.point, "diamond", &d.alpha.to_string(), &d.out);
        }
    }
    out
}

fn run_integrate(c: &Compiled) -> Outcome {
    let f = match require_function(c) {
        Ok(f) => f,
        Err(out) => return out,
    };
    let (a, b) = match (c.a, c.b) {
        (Some(a), Some(b)) => (a, b),
        _ => return schema_error("integrate scenario needs both \"a\" and \"b\""),
    };
    let mut results = Vec::new();
    for &alpha in &c.alphas {
        match diamond_int_fuzzy(f, &c.ts, a, b, alpha, &c.cfg) {
            Ok(r) => results.push(IntegrateAlphaOut {
                alpha,
                levels: level_rows(&r.value),
            }),
            Err(e) => return domain_error(&e),
        }
    }
    let out = IntegrateOut { a, b, results };
    match c.format {
        Format::Json => Outcome {
            exit_code: 0,
            stdout: render(&out),
        },
        Format::Csv => {
            let mut s = String::from("a,b,alpha,r,lo,hi\n");
            for res in &out.results {
                for row in &res.levels {
                    s.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        out.a, out.b, res.alpha, row[0], row[1], row[2]
                    ));
                }
            }
            Outcome {
                exit_code: 0,
                stdout: s,
            }
        }
    }
}

fn run_local_steps(c: &Compiled) -> Outcome {
    let f = match require_function(c) {
        Ok(f) => f,
        Err(out) => return out,
    };
    if c.points.is_empty() {
        return schema_error("local_steps scenario needs a non-empty \"points\" list");
    }
    let mut records = Vec::new();
    for &p in &c.points {
        let mut results = Vec::new();
        for &alpha in &c.alphas {
            match local_step_integrals(f, &c.ts, p, alpha, &c.cfg) {
                Ok((fwd, bwd)) => results.push(StepAlphaOut {
                    alpha,
                    forward: level_rows(&fwd),
                    backward: level_rows(&bwd),
                }),
                Err(e) => return domain_error(&e),
            }
        }
        records.push(StepOut { point: p, results });
    }
    match c.format {
        Format::Json => Outcome {
            exit_code: 0,
            stdout: render(&records),
        },
        Format::Csv => {
            let mut s = String::from("point,direction,alpha,r,lo,hi\n");
            for rec in &records {
                for res in &rec.results {
                    for (dir, levels) in [("forward", &res.forward), ("backward", &res.backward)] {
                        for row in levels {
                            s.push_str(&format!(
                                "{},{},{},{},{},{}\n",
                                rec.point, dir, res.alpha, row[0], row[1], row[2]
                            ));
                        }
                    }
                }
            }
            Outcome {
                exit_code: 0,
                stdout: s,
            }
        }
    }
}

fn reports_outcome(reports: Vec<CheckReport>, format: Format) -> Outcome {
    let all_pass = theorems::all_pass(&reports);
    let stdout = match format {
        Format::Json => render(&reports),
        Format::Csv => {
            let mut s = String::from("name,residual,tolerance,pass\n");
            for r in &reports {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    r.name, r.residual, r.tolerance, r.pass
                ));
            }
            s
        }
    };
    Outcome {
        exit_code: if all_pass { 0 } else { 1 },
        stdout,
    }
}

/// The built-in deterministic suite (`verify --suite standard`).
pub fn run_standard_suite(ov: &Overrides) -> Outcome {
    let mut cfg = NumericConfig::default();
    if let Some(m) = ov.levels {
        cfg.level_resolution = m;
    }
    if let Some(t) = ov.tol {
        cfg.residual_tol = t;
    }
    if let Err(e) = cfg.validate() {
        return domain_error(&e);
    }
    reports_outcome(
        theorems::standard_suite(&cfg),
        ov.format.unwrap_or(Format::Json),
    )
}

/// Scenario-driven verification: runs every check applicable to the
/// declared scale, functions and window, and reports one record per check.
fn run_verify(c: &Compiled) -> Outcome {
    let f = match require_function(c) {
        Ok(f) => f,
        Err(out) => return out,
    };
    let cfg = &c.cfg;
    let ts = &c.ts;
    let alphas = &c.alphas;
    let points = if c.points.is_empty() {
        default_check_points(ts)
    } else {
        c.points.clone()
    };
    let a = c.a.unwrap_or_else(|| ts.min());
    let b = c.b.unwrap_or_else(|| ts.max());
    let t0 = c.t0.unwrap_or(a);
    // interior split point for the additivity law
    let mid = points
        .iter()
        .copied()
        .filter(|&p| p >= a && p <= b)
        .min_by(|x, y| {
            let m = 0.5 * (a + b);
            (x - m).abs().partial_cmp(&(y - m).abs()).expect("finite")
        })
        .unwrap_or(a);

    let mut reports = Vec::new();
    let mut push = |r: Result<CheckReport, Error>, name: &str| match r {
        Ok(rep) => reports.push(rep),
        Err(e) => reports.push(CheckReport {
            name: name.into(),
            residual: f64::INFINITY,
            tolerance: cfg.residual_tol,
            pass: false,
            witnesses: vec![],
            notes: vec![e.to_string()],
        }),
    };

    push(
        check_scalar_rule(f, 2.0, ts, &points, alphas, cfg),
        "derivative_scalar_rule",
    );
    push(
        check_differentiability_implications(f, ts, &points, cfg),
        "differentiability_implications",
    );
    push(
        check_one_step_integrals(f, ts, &points, alphas, cfg),
        "one_step_integrals",
    );
    if let Some(g) = &c.g {
        push(
            check_sum_rule(f, g, ts, &points, alphas, cfg),
            "derivative_sum_rule",
        );
        push(
            check_product_rule(f, g, ts, &points, alphas, cfg),
            "derivative_product_rule",
        );
        push(
            check_integral_laws(f, g, ts, a, b, mid, 2.0, alphas, cfg),
            "integral_laws",
        );
    }
    let doi_points: Vec<f64> = points.iter().copied().filter(|&p| p > t0).collect();
    if !doi_points.is_empty() {
        push(
            check_derivative_of_integral(f, ts, t0, &doi_points, alphas, cfg),
            "derivative_of_integral",
        );
    }
    if ts.is_homogeneous().is_some() {
        push(
            check_ftc_homogeneous(f, ts, a, b, alphas, cfg).map(|o| o.report),
            "ftc_homogeneous",
        );
    } else if ts.is_quasi_regular() {
        push(
            check_ftc_quasi_regular(f, ts, a, b, alphas, cfg).map(|o| o.report),
            "ftc_quasi_regular",
        );
    }
    if let Some(g) = &c.g {
        if ts.is_homogeneous().is_some() || ts.is_quasi_regular() {
            push(
                check_integration_by_parts(f, g, ts, a, b, alphas, cfg),
                "integration_by_parts",
            );
        }
    }
    reports_outcome(reports, c.format)
}

/// Writes per-level endpoint curves of the scenario functions over a scan
/// grid, one CSV per function, for external plotting.
fn emit_plots(dir: &Path, c: &Compiled) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let span = c.ts.max() - c.ts.min();
    let h = if span > 0.0 { span / 256.0 } else { 1.0 };
    let grid =
        c.ts.grid(c.ts.min(), c.ts.max(), h)
            .expect("endpoints belong to the scale");
    let m = c.cfg.level_resolution;
    let sample_levels = [0, m / 4, m / 2, 3 * m / 4, m];
    for (name, expr) in [("function", &c.f), ("function_g", &c.g)] {
        let Some(expr) = expr else { continue };
        let mut s = String::from("t,r,lo,hi\n");
        for &t in &grid {
            let v = expr.eval(t);
            for &j in &sample_levels {
                let iv = v.level(j);
                s.push_str(&format!("{t},{},{},{}\n", v.grade(j), iv.lo, iv.hi));
            }
        }
        fs::write(dir.join(format!("{name}.csv")), s)?;
    }
    Ok(())
}
