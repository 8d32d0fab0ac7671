//! Boosted instance transfer for regression, after TrAdaBoost (Dai et al.,
//! ICML 2007) in the regression form of Pardoe and Stone (ICML 2010).
//!
//! The training set mixes *source* samples (the previous population with its
//! stale objective values) and *target* samples (a small batch evaluated
//! under the current landscape). Every boosting round fits one weak learner
//! on the combined, weighted set; source samples that disagree with the
//! target landscape lose weight multiplicatively, target samples that the
//! hypothesis misses gain weight. Each objective is boosted as an
//! independent scalar chain over the shared inputs, and the final ensemble
//! keeps only the models of the last half of the rounds.

use crate::benchmark::DynamicProblem;
use crate::pareto::Individual;
use crate::svr::{self, SvrModel, SvrParams};
use rand::Rng;

/// Smallest admissible per-round confidence ratio; also `1 -` the largest.
const BETA_FLOOR: f64 = 1e-10;
const BETA_CEIL: f64 = 1.0 - 1e-10;

/// Which landscape a training sample was labeled under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleDomain {
    /// Labeled under the previous landscape (the old population).
    Source,
    /// Labeled under the current landscape (freshly evaluated).
    Target,
}

/// One training sample: decision vector, objective labels, provenance and
/// its current boosting weight.
#[derive(Debug, Clone)]
pub struct WeightedSample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub domain: SampleDomain,
    pub weight: f64,
}

/// A fitted scalar regressor.
pub trait Regressor: Send + Sync {
    fn predict(&self, x: &[f64]) -> f64;
}

impl Regressor for SvrModel {
    fn predict(&self, x: &[f64]) -> f64 {
        SvrModel::predict(self, x)
    }
}

/// Anything that can fit a weighted scalar regression; the boosting loop is
/// generic over this so tests can drive it with scripted hypotheses.
pub trait WeakLearner {
    fn fit(&self, xs: &[Vec<f64>], ys: &[f64], weights: &[f64]) -> Box<dyn Regressor>;
}

/// The default weak learner: weighted epsilon-SVR.
#[derive(Debug, Clone, Copy, Default)]
pub struct SvrLearner {
    /// Explicit hyperparameters; `None` selects the per-dimension defaults.
    pub params: Option<SvrParams>,
}

impl WeakLearner for SvrLearner {
    fn fit(&self, xs: &[Vec<f64>], ys: &[f64], weights: &[f64]) -> Box<dyn Regressor> {
        let params = self
            .params
            .unwrap_or_else(|| SvrParams::for_dimension(xs[0].len()));
        Box::new(svr::fit(xs, ys, weights, &params))
    }
}

/// Fixed source downweighting ratio `1 / (1 + sqrt(2 ln(n_source) / K))`.
pub fn source_beta(n_source: usize, rounds: usize) -> f64 {
    assert!(n_source >= 2 && rounds >= 1);
    1.0 / (1.0 + (2.0 * (n_source as f64).ln() / rounds as f64).sqrt())
}

/// Normalize absolute residuals by their maximum so every adjusted error
/// lies in `[0, 1]`. Returns `None` when the hypothesis is perfect (all
/// residuals zero), which has no meaningful normalization.
pub fn adjusted_errors(residuals: &[f64]) -> Option<Vec<f64>> {
    let max = residuals.iter().cloned().fold(0.0_f64, f64::max);
    assert!(max.is_finite(), "residuals must be finite");
    if max == 0.0 {
        return None;
    }
    Some(residuals.iter().map(|r| r / max).collect())
}

/// Weighted hypothesis error: the adjusted errors summed over *target*
/// samples only, weighted by the (normalized) sample weights.
pub fn hypothesis_error(adjusted: &[f64], samples: &[WeightedSample]) -> f64 {
    assert_eq!(adjusted.len(), samples.len());
    samples
        .iter()
        .zip(adjusted)
        .filter(|(s, _)| s.domain == SampleDomain::Target)
        .map(|(s, e)| s.weight * e)
        .sum()
}

/// Apply one round's multiplicative weight update in place: source weights
/// shrink by `beta^e`, target weights grow by `beta_i^(-e)`. Callers
/// renormalize afterwards with [`normalize_weights`].
pub fn update_weights(
    samples: &mut [WeightedSample],
    adjusted: &[f64],
    beta_i: f64,
    beta: f64,
) {
    assert_eq!(adjusted.len(), samples.len());
    for (sample, &e) in samples.iter_mut().zip(adjusted) {
        match sample.domain {
            SampleDomain::Source => sample.weight *= beta.powf(e),
            SampleDomain::Target => sample.weight *= beta_i.powf(-e),
        }
    }
}

/// Rescale weights to sum to one.
pub fn normalize_weights(samples: &mut [WeightedSample]) {
    let sum: f64 = samples.iter().map(|s| s.weight).sum();
    assert!(sum > 0.0, "weights must not all vanish");
    for sample in samples {
        sample.weight /= sum;
    }
}

/// Assemble the transfer training set for the landscape at time `t`: the
/// previous population (with the objective values it already carries) as
/// source plus `target_count` uniform samples freshly evaluated at `t`.
/// All weights start at `1 / |D|`.
pub fn build_training_set(
    previous: &[Individual],
    problem: &DynamicProblem,
    t: f64,
    target_count: usize,
    rng: &mut impl Rng,
) -> Vec<WeightedSample> {
    assert!(!previous.is_empty(), "previous population must be non-empty");
    assert!(target_count >= 1, "need at least one target sample");
    let total = previous.len() + target_count;
    let weight = 1.0 / total as f64;
    let mut samples: Vec<WeightedSample> = previous
        .iter()
        .map(|ind| WeightedSample {
            x: ind.x.clone(),
            y: ind.objectives().to_vec(),
            domain: SampleDomain::Source,
            weight,
        })
        .collect();
    for _ in 0..target_count {
        let x: Vec<f64> = problem
            .bounds()
            .iter()
            .map(|&(lo, hi)| rng.gen_range(lo..hi))
            .collect();
        let y = problem
            .evaluate(&x, t)
            .expect("uniform samples stay inside the box");
        samples.push(WeightedSample {
            x,
            y,
            domain: SampleDomain::Target,
            weight,
        });
    }
    samples
}

/// Per-round diagnostics of one objective's boosting chain.
#[derive(Debug, Clone, Default)]
pub struct ChainTrace {
    /// Weighted target error of each completed round.
    pub hypothesis_errors: Vec<f64>,
    /// Clamped confidence ratio `beta_i` of each completed round.
    pub betas: Vec<f64>,
    /// Full weight vector after each completed round's update.
    pub weights_after_round: Vec<Vec<f64>>,
}

/// The retained weak models of one objective with their confidence ratios.
pub struct ObjectiveChain {
    models: Vec<Box<dyn Regressor>>,
    betas: Vec<f64>,
}

impl ObjectiveChain {
    /// Confidence-weighted median prediction across the retained models.
    pub fn predict(&self, x: &[f64]) -> f64 {
        let values: Vec<f64> = self.models.iter().map(|m| m.predict(x)).collect();
        let confidences: Vec<f64> = self.betas.iter().map(|b| -b.ln()).collect();
        weighted_median(&values, &confidences)
    }

    /// Number of retained weak models.
    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    /// Confidence ratios of the retained models, in round order.
    pub fn betas(&self) -> &[f64] {
        &self.betas
    }
}

/// One boosted chain per objective over a shared input set.
pub struct TransferEnsemble {
    chains: Vec<ObjectiveChain>,
}

impl TransferEnsemble {
    /// Predict the full objective vector at `x`.
    pub fn predict(&self, x: &[f64]) -> Vec<f64> {
        self.chains.iter().map(|c| c.predict(x)).collect()
    }

    /// Number of objectives the ensemble models.
    pub fn objectives(&self) -> usize {
        self.chains.len()
    }

    pub fn chains(&self) -> &[ObjectiveChain] {
        &self.chains
    }
}

/// Smallest value whose cumulative confidence reaches half the total.
pub fn weighted_median(values: &[f64], confidences: &[f64]) -> f64 {
    assert_eq!(values.len(), confidences.len());
    assert!(!values.is_empty(), "median of an empty set");
    assert!(
        confidences.iter().all(|c| c.is_finite() && *c >= 0.0),
        "confidences must be non-negative"
    );
    let total: f64 = confidences.iter().sum();
    assert!(total > 0.0, "confidences must not all vanish");
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut cumulative = 0.0;
    for &i in &order {
        cumulative += confidences[i];
        if cumulative >= total / 2.0 {
            return values[i];
        }
    }
    values[*order.last().unwrap()]
}

/// Boost one chain per objective; see [`train_with_trace`] for diagnostics.
pub fn train(
    learner: &dyn WeakLearner,
    samples: &[WeightedSample],
    rounds: usize,
) -> TransferEnsemble {
    train_with_trace(learner, samples, rounds).0
}

/// Boost one chain per objective and report per-round traces.
///
/// Each chain runs up to `rounds` rounds and stops early when a hypothesis
/// is perfect (kept with the floor ratio) or when its weighted target error
/// reaches 1/2 (that model is dropped, unless it is the very first round,
/// which is kept with the ceiling ratio). Of the completed rounds, the
/// last half — `ceil(completed / 2)` — is retained.
pub fn train_with_trace(
    learner: &dyn WeakLearner,
    samples: &[WeightedSample],
    rounds: usize,
) -> (TransferEnsemble, Vec<ChainTrace>) {
    assert!(rounds >= 1, "need at least one boosting round");
    assert!(samples.len() >= 2, "need at least two samples");
    let objectives = samples[0].y.len();
    assert!(objectives >= 1, "samples must carry objective labels");
    assert!(
        samples.iter().all(|s| s.y.len() == objectives),
        "all samples must share one objective count"
    );
    let n_source = samples
        .iter()
        .filter(|s| s.domain == SampleDomain::Source)
        .count();
    assert!(
        n_source >= 2 && n_source < samples.len(),
        "need at least two source and one target sample"
    );

    let mut chains = Vec::with_capacity(objectives);
    let mut traces = Vec::with_capacity(objectives);
    for objective in 0..objectives {
        let (chain, trace) = train_chain(learner, samples, objective, rounds, n_source);
        chains.push(chain);
        traces.push(trace);
    }
    (TransferEnsemble { chains }, traces)
}

fn train_chain(
    learner: &dyn WeakLearner,
    samples: &[WeightedSample],
    objective: usize,
    rounds: usize,
    n_source: usize,
) -> (ObjectiveChain, ChainTrace) {
    let xs: Vec<Vec<f64>> = samples.iter().map(|s| s.x.clone()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.y[objective]).collect();
    let mut work = samples.to_vec();
    normalize_weights(&mut work);
    let beta = source_beta(n_source, rounds);

    let mut models: Vec<Box<dyn Regressor>> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut trace = ChainTrace::default();
    for round in 1..=rounds {
        let weights: Vec<f64> = work.iter().map(|s| s.weight).collect();
        let model = learner.fit(&xs, &ys, &weights);
        let residuals: Vec<f64> = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (model.predict(x) - y).abs())
            .collect();
        let Some(adjusted) = adjusted_errors(&residuals) else {
            // A perfect hypothesis: keep it at maximal confidence and stop.
            models.push(model);
            betas.push(BETA_FLOOR);
            trace.hypothesis_errors.push(0.0);
            trace.betas.push(BETA_FLOOR);
            trace.weights_after_round.push(weights);
            break;
        };
        let eps = hypothesis_error(&adjusted, &work);
        if eps >= 0.5 {
            if round == 1 {
                // Nothing better exists yet; keep the model at minimal
                // confidence rather than returning an empty ensemble.
                models.push(model);
                betas.push(BETA_CEIL);
                trace.hypothesis_errors.push(eps);
                trace.betas.push(BETA_CEIL);
                trace.weights_after_round.push(weights);
            }
            break;
        }
        let beta_i = (eps / (1.0 - eps)).clamp(BETA_FLOOR, BETA_CEIL);
        update_weights(&mut work, &adjusted, beta_i, beta);
        normalize_weights(&mut work);
        models.push(model);
        betas.push(beta_i);
        trace.hypothesis_errors.push(eps);
        trace.betas.push(beta_i);
        trace
            .weights_after_round
            .push(work.iter().map(|s| s.weight).collect());
    }

    let completed = models.len();
    assert!(completed >= 1);
    let keep = completed.div_ceil(2);
    let drop = completed - keep;
    models.drain(..drop);
    betas.drain(..drop);
    (ObjectiveChain { models, betas }, trace)
}
