//! Regression-transfer seeded dynamic multi-objective optimization.
//!
//! When a dynamic multi-objective problem changes, restarting the optimizer
//! from scratch wastes everything the previous environment taught us, while
//! carrying the old population forward chases the new optimum from a stale
//! starting point. This crate implements a third option: treat the previous
//! population as a *source domain*, draw a small sample of the new
//! environment as a *target domain*, train a boosted instance-transfer
//! regression ensemble that maps decision vectors to objective values under
//! the new environment, and use it to select a promising initial population
//! for the next static optimization burst.
//!
//! The pipeline is organised as one module per stage:
//!
//! - [`benchmark`] — the FDA and dMOP dynamic benchmark families plus the
//!   discrete time controller.
//! - [`pareto`] — dominance, fast non-dominated sorting, crowding distance.
//! - [`svr`] — weighted epsilon-SVR weak learner (RBF kernel, SMO solver).
//! - [`boost`] — boosted instance transfer over source/target samples.
//! - [`seeder`] — initial-population prediction from a trained ensemble.
//! - [`optimizer`] — the static multi-objective optimizer (NSGA-II).
//! - [`metrics`] — IGD, MIGD, maximum spread, and per-run reports.
//! - [`runner`] — experiment grids, change detection, CSV reports.
//! - [`synthetic`] — synthetic transfer tasks for self-testing the
//!   boosting machinery.
//!
//! The primary interface is the `examples/` directory; each example is a
//! runnable tour of one capability:
//!
//! ```text
//! cargo run --release --example benchmark_tour      # problems and fronts
//! cargo run --release --example pareto_sorting      # sorting + crowding
//! cargo run --release --example svr_fit             # weighted SVR learner
//! cargo run --release --example transfer_boosting   # boosting on synthetic tasks
//! cargo run --release --example static_optimize     # NSGA-II on a frozen slice
//! cargo run --release --example population_seeding  # seeding after one change
//! cargo run --release --example front_metrics       # IGD / MIGD / MS
//! cargo run --release --example ablation_cell       # seeded vs. carried-over runs
//! ```
//!
//! A thin `rtlp` binary wraps the same library calls for batch use
//! (`rtlp run`, `rtlp report`, `rtlp selftest transfer`).

pub mod benchmark;
pub mod boost;
pub mod metrics;
pub mod optimizer;
pub mod pareto;
pub mod runner;
pub mod seeder;
pub mod svr;
pub mod synthetic;

use std::fmt;
use std::str::FromStr;

pub use pareto::Individual;

/// How the initial population of each new environment is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Variant {
    /// Regression-transfer prediction: train a boosted transfer ensemble on
    /// the previous population plus a small sample of the new environment,
    /// then seed from its predicted front.
    #[serde(rename = "rtlp")]
    Rtlp,
    /// Carry the previous population forward unchanged.
    #[serde(rename = "plain")]
    Plain,
    /// Draw a fresh uniform population.
    #[serde(rename = "random-restart")]
    RandomRestart,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Rtlp, Variant::Plain, Variant::RandomRestart];

    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Rtlp => "rtlp",
            Variant::Plain => "plain",
            Variant::RandomRestart => "random-restart",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "rtlp" => Ok(Variant::Rtlp),
            "plain" => Ok(Variant::Plain),
            "random-restart" => Ok(Variant::RandomRestart),
            other => Err(Error::UnknownVariant(other.to_string())),
        }
    }
}

/// Errors surfaced to callers. Contract violations (mismatched lengths,
/// empty inputs, unevaluated individuals) are bugs in the calling code and
/// panic instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown problem '{0}' (expected FDA1–FDA5 or dMOP1–dMOP3)")]
    UnknownProblem(String),

    #[error("decision variable {dimension} = {value} lies outside [{lower}, {upper}] for {problem}")]
    OutOfBounds {
        problem: &'static str,
        dimension: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("decision vector has {got} variables, {problem} expects {expected}")]
    WrongDimension {
        problem: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("optimizer '{0}' is reserved but not implemented in this build")]
    ReservedOptimizer(String),

    #[error("unknown optimizer '{0}' (available: nsga2)")]
    UnknownOptimizer(String),

    #[error("unknown variant '{0}' (expected rtlp, plain, or random-restart)")]
    UnknownVariant(String),

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("failed to parse config: {0}")]
    ConfigParse(#[from] toml::de::Error),

    #[error("report I/O: {0}")]
    Io(#[from] std::io::Error),

    #[error("report CSV: {0}")]
    Csv(#[from] csv::Error),
}
