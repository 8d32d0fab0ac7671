//! Quality indicators for dynamic multi-objective optimization: inverted
//! generational distance (IGD), its mean over the environments of a run
//! (MIGD), and maximum spread (MS), plus the per-run report they are
//! collected into.
//!
//! IGD averages, over a reference sample of the true front, the distance to
//! the nearest obtained point. Plain Euclidean distance is the default; a
//! squared-distance variant is available behind [`IgdVariant`] for
//! comparisons against reports that use it.

use serde::{Deserialize, Serialize};

use crate::Variant;

/// Distance convention used inside IGD.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IgdVariant {
    /// Mean Euclidean distance to the nearest obtained point.
    #[default]
    Euclidean,
    /// Mean squared Euclidean distance to the nearest obtained point.
    Squared,
}

/// Inverted generational distance from `reference` (a sample of the true
/// front) to `obtained`, using plain Euclidean distance.
pub fn igd(reference: &[Vec<f64>], obtained: &[Vec<f64>]) -> f64 {
    igd_with(IgdVariant::Euclidean, reference, obtained)
}

/// IGD under an explicit distance convention.
pub fn igd_with(variant: IgdVariant, reference: &[Vec<f64>], obtained: &[Vec<f64>]) -> f64 {
    assert!(
        !reference.is_empty() && !obtained.is_empty(),
        "IGD needs non-empty reference and obtained sets"
    );
    let m = reference[0].len();
    assert!(
        reference.iter().chain(obtained).all(|p| p.len() == m),
        "IGD needs equal objective counts in both sets"
    );
    let total: f64 = reference
        .iter()
        .map(|r| {
            let nearest = obtained
                .iter()
                .map(|o| squared_distance(r, o))
                .fold(f64::INFINITY, f64::min);
            match variant {
                IgdVariant::Euclidean => nearest.sqrt(),
                IgdVariant::Squared => nearest,
            }
        })
        .sum();
    total / reference.len() as f64
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Mean IGD over the environments of one run.
pub fn migd(igd_values: &[f64]) -> f64 {
    assert!(!igd_values.is_empty(), "MIGD of an empty run");
    igd_values.iter().sum::<f64>() / igd_values.len() as f64
}

/// Maximum spread: how much of the true front's extent the obtained set
/// covers, as the root-mean-square per-objective overlap ratio.
///
/// `true_extremes[k]` is the `(min, max)` of objective `k` over the true
/// front. Negative overlap (obtained range entirely outside the true range)
/// clamps to zero, so `0 <= MS <= 1` and `MS = 1` exactly when the obtained
/// extremes span the true extremes.
pub fn maximum_spread(true_extremes: &[(f64, f64)], obtained: &[Vec<f64>]) -> f64 {
    assert!(!obtained.is_empty(), "MS of an empty obtained set");
    let m = true_extremes.len();
    assert!(
        obtained.iter().all(|p| p.len() == m),
        "MS needs matching objective counts"
    );
    let mut sum = 0.0;
    for (k, &(front_min, front_max)) in true_extremes.iter().enumerate() {
        assert!(
            front_max > front_min,
            "true range of objective {k} is degenerate"
        );
        let mut got_min = f64::INFINITY;
        let mut got_max = f64::NEG_INFINITY;
        for p in obtained {
            got_min = got_min.min(p[k]);
            got_max = got_max.max(p[k]);
        }
        let overlap = (got_max.min(front_max) - got_min.max(front_min)).max(0.0);
        let ratio = overlap / (front_max - front_min);
        sum += ratio * ratio;
    }
    (sum / m as f64).sqrt()
}

/// Per-objective `(min, max)` over a set of points, e.g. a sampled front.
pub fn objective_extremes(points: &[Vec<f64>]) -> Vec<(f64, f64)> {
    assert!(!points.is_empty(), "extremes of an empty set");
    let m = points[0].len();
    (0..m)
        .map(|k| {
            points.iter().fold(
                (f64::INFINITY, f64::NEG_INFINITY),
                |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])),
            )
        })
        .collect()
}

/// Measurements from one environment of a run, taken at the last generation
/// before the next change.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvRecord {
    /// 0-based environment counter (0 = the initial long burst).
    pub env_index: u32,
    /// Environment time.
    pub t: f64,
    pub igd: f64,
    pub ms: f64,
    /// True-function evaluations spent in this environment, including any
    /// transfer samples and change-detection probes.
    pub evals_used: u64,
}

/// Everything measured during a single `(problem, tau_t, n_t, seed,
/// variant)` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    pub tau_t: u32,
    pub n_t: u32,
    pub seed: u64,
    pub variant: Variant,
    pub records: Vec<EnvRecord>,
}

impl RunReport {
    /// Mean IGD over all recorded environments.
    pub fn migd(&self) -> f64 {
        migd(&self.records.iter().map(|r| r.igd).collect::<Vec<_>>())
    }

    /// Mean MS over all recorded environments.
    pub fn mean_ms(&self) -> f64 {
        assert!(!self.records.is_empty(), "report has no records");
        self.records.iter().map(|r| r.ms).sum::<f64>() / self.records.len() as f64
    }

    /// Total true-function evaluations across the run.
    pub fn total_evaluations(&self) -> u64 {
        self.records.iter().map(|r| r.evals_used).sum()
    }
}
