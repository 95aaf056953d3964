//! Fuzzy-number calculus on bounded time scales.
//!
//! The crate provides, in dependency order:
//!
//! - [`timescale`]: bounded time scales with exact jump operators,
//!   graininess, point classification and structural predicates;
//! - [`fuzzy`]: the fuzzy-number kernel — nested r-level stacks, levelwise
//!   arithmetic, generalized Hukuhara differences and the Hausdorff metric;
//! - [`funcspec`]: declarative fuzzy-valued functions of t with one-sided
//!   limits;
//! - [`calculus`]: delta, nabla and diamond-alpha gH derivatives with
//!   explicit existence detection;
//! - [`integral`]: scalar and Aumann diamond-alpha integrals;
//! - [`theorems`]: a residual-based verification harness that reproduces
//!   the algebraic identities tying the pieces together, at desk scale.
//!
//! Everything is deterministic: fixed probe schedules, fixed summation
//! orders, seeded sampling. Identical inputs produce bit-identical results.
//!
//! Forward and backward differentiability genuinely come apart on scales
//! mixing dense and scattered structure; non-existence is a typed outcome:
//!
//! ```
//! use fuzzy_timescale::{
//!     delta_gh, nabla_gh, CrispFn, Error, FuzzyFunctionExpr, FuzzyNumber, NumericConfig,
//!     TimeScale,
//! };
//!
//! let cfg = NumericConfig::default();
//! let scale = TimeScale::new(&[(-3.0, -1.0), (0.0, 2.0)])?;
//! // f(t) = (1,2,3)·t·sin(1/t), extended by 0 at t = 0
//! let f = FuzzyFunctionExpr::term(
//!     FuzzyNumber::from_triangular(1.0, 2.0, 3.0, cfg.level_resolution)?,
//!     CrispFn::TSinInv,
//! );
//!
//! // 0 is left-scattered and right-dense: the backward derivative is the
//! // exact quotient across the gap, (1,2,3)·(−sin 1) levelwise…
//! let backward = nabla_gh(&f, &scale, 0.0, &cfg)?;
//! let s1 = 1.0f64.sin();
//! let expected = FuzzyNumber::from_triangular(-3.0 * s1, -2.0 * s1, -s1, cfg.level_resolution)?;
//! assert!(backward.value.hausdorff(&expected)? < 1e-12);
//!
//! // …while the forward derivative needs the oscillating dense-side limit,
//! // which does not settle
//! assert!(matches!(
//!     delta_gh(&f, &scale, 0.0, &cfg),
//!     Err(Error::NonConvergent { .. })
//! ));
//! # Ok::<(), fuzzy_timescale::Error>(())
//! ```

pub mod calculus;
pub mod config;
pub mod error;
pub mod funcspec;
pub mod fuzzy;
pub mod integral;
mod quad;
pub mod theorems;
pub mod timescale;

pub use calculus::{delta_gh, diamond_alpha_gh, nabla_gh, DerivKind, DerivativeResult};
pub use config::NumericConfig;
pub use error::{Error, Result};
pub use funcspec::{CrispFn, FuzzyClosure, FuzzyFunction, FuzzyFunctionExpr, Side};
pub use fuzzy::{FuzzyNumber, GhCase, Interval};
pub use integral::{diamond_int_fuzzy, diamond_int_scalar, FuzzyIntegralResult};
pub use theorems::CheckReport;
pub use timescale::{PointClass, SClass, TimeScale};
