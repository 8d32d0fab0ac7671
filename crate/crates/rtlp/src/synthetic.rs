//! Small synthetic regression-transfer tasks.
//!
//! These isolate the boosting core from the evolutionary loop: a scalar
//! target function `y = sin(2 pi x)` paired with source data that is
//! identical, shifted by a constant, or unrelated. The self-test checks the
//! two behaviours instance transfer must show — unrelated source data loses
//! its weight mass, and matching source data does not hurt held-out error.

use crate::boost::{
    self, SampleDomain, SvrLearner, WeightedSample,
};
use crate::svr::{self, SvrParams};
use rand::Rng;
use rand_distr::{Distribution, Normal};

/// Relationship between the source and the target regression task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    /// Source and target share `y = sin(2 pi x)`.
    Identical,
    /// Source is the target shifted up by a constant (`+2`).
    Shifted,
    /// Source follows an unrelated trend (`y = -x`).
    Unrelated,
}

impl TaskKind {
    pub const ALL: [TaskKind; 3] = [TaskKind::Identical, TaskKind::Shifted, TaskKind::Unrelated];

    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Identical => "identical",
            TaskKind::Shifted => "shifted",
            TaskKind::Unrelated => "unrelated",
        }
    }
}

/// Offset of the shifted source task.
const SHIFT: f64 = 2.0;

/// One generated transfer task: scalar samples as `(x, y)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticTask {
    pub kind: TaskKind,
    pub source: Vec<(Vec<f64>, f64)>,
    pub target: Vec<(Vec<f64>, f64)>,
    /// Noiseless target pairs on an even grid, for held-out error.
    pub heldout: Vec<(Vec<f64>, f64)>,
}

fn target_fn(x: f64) -> f64 {
    (2.0 * std::f64::consts::PI * x).sin()
}

/// Generate a transfer task of the given kind. Inputs are uniform on
/// [0, 1); Gaussian noise of the given standard deviation corrupts the
/// drawn labels (not the held-out grid).
pub fn make_shifted_task(
    kind: TaskKind,
    n_source: usize,
    n_target: usize,
    noise_sigma: f64,
    rng: &mut impl Rng,
) -> SyntheticTask {
    assert!(n_source >= 2 && n_target >= 2, "sizes must be at least 2");
    assert!(noise_sigma >= 0.0);
    let noise = Normal::new(0.0, noise_sigma.max(f64::MIN_POSITIVE)).unwrap();
    let draw = |f: &dyn Fn(f64) -> f64, n: usize, rng: &mut dyn rand::RngCore| {
        (0..n)
            .map(|_| {
                let x: f64 = rng.gen_range(0.0..1.0);
                let eps = if noise_sigma > 0.0 { noise.sample(rng) } else { 0.0 };
                (vec![x], f(x) + eps)
            })
            .collect::<Vec<_>>()
    };
    let source = match kind {
        TaskKind::Identical => draw(&target_fn, n_source, rng),
        TaskKind::Shifted => draw(&|x| target_fn(x) + SHIFT, n_source, rng),
        TaskKind::Unrelated => draw(&|x| -x, n_source, rng),
    };
    let target = draw(&target_fn, n_target, rng);
    let heldout = (0..=100)
        .map(|i| {
            let x = i as f64 / 100.0;
            (vec![x], target_fn(x))
        })
        .collect();
    SyntheticTask {
        kind,
        source,
        target,
        heldout,
    }
}

/// Combine a task's source and target samples into one boosting set with
/// uniform weights `1 / |D|`.
pub fn combined_training_set(task: &SyntheticTask) -> Vec<WeightedSample> {
    let total = task.source.len() + task.target.len();
    let weight = 1.0 / total as f64;
    let mut samples: Vec<WeightedSample> = task
        .source
        .iter()
        .map(|(x, y)| WeightedSample {
            x: x.clone(),
            y: vec![*y],
            domain: SampleDomain::Source,
            weight,
        })
        .collect();
    samples.extend(task.target.iter().map(|(x, y)| WeightedSample {
        x: x.clone(),
        y: vec![*y],
        domain: SampleDomain::Target,
        weight,
    }));
    samples
}

/// Root-mean-square error of predictions against reference pairs.
pub fn rmse(predict: impl Fn(&[f64]) -> f64, pairs: &[(Vec<f64>, f64)]) -> f64 {
    assert!(!pairs.is_empty());
    let sq: f64 = pairs
        .iter()
        .map(|(x, y)| {
            let d = predict(x) - y;
            d * d
        })
        .sum();
    (sq / pairs.len() as f64).sqrt()
}

/// Outcome of one self-test property across seeds.
#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passes: usize,
    pub trials: usize,
    pub required: usize,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.passes >= self.required
    }
}

/// Results of [`transfer_selftest`].
#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub properties: Vec<PropertyOutcome>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyOutcome::passed)
    }
}

/// Run the transfer self-test across the given seeds.
///
/// Three properties are checked, each allowed a small number of unlucky
/// seeds: unrelated source data must end with less weight mass than the
/// target data (at least 9/10 of seeds), transfer on the identical task
/// must not degrade held-out RMSE by more than 10% against a target-only
/// fit (at least 8/10), and the boosting weight invariants must hold on
/// every task and seed.
pub fn transfer_selftest(seeds: &[u64]) -> SelftestReport {
    use rand::SeedableRng;
    assert!(!seeds.is_empty());
    let n_source = 100;
    let n_target = 50;
    let noise_sigma = 0.05;
    let rounds = 10;
    let learner = SvrLearner::default();

    let mut filtering_passes = 0;
    let mut harmless_passes = 0;
    let mut invariant_passes = 0;
    let invariant_trials = seeds.len() * TaskKind::ALL.len();
    for &seed in seeds {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

        // Property 1: transfer filtering on the unrelated task.
        let task = make_shifted_task(TaskKind::Unrelated, n_source, n_target, noise_sigma, &mut rng);
        let samples = combined_training_set(&task);
        let (_, traces) = boost::train_with_trace(&learner, &samples, rounds);
        let last = traces[0]
            .weights_after_round
            .last()
            .expect("at least one round completes");
        let source_mass: f64 = last[..n_source].iter().sum();
        let target_mass: f64 = last[n_source..].iter().sum();
        if source_mass < target_mass {
            filtering_passes += 1;
        }

        // Property 2: transfer is harmless when domains match.
        let task = make_shifted_task(TaskKind::Identical, n_source, n_target, noise_sigma, &mut rng);
        let samples = combined_training_set(&task);
        let ensemble = boost::train(&learner, &samples, rounds);
        let ensemble_rmse = rmse(|x| ensemble.predict(x)[0], &task.heldout);
        let xs: Vec<Vec<f64>> = task.target.iter().map(|(x, _)| x.clone()).collect();
        let ys: Vec<f64> = task.target.iter().map(|(_, y)| *y).collect();
        let solo = svr::fit(&xs, &ys, &vec![1.0; ys.len()], &SvrParams::for_dimension(1));
        let solo_rmse = rmse(|x| solo.predict(x), &task.heldout);
        if ensemble_rmse <= 1.1 * solo_rmse {
            harmless_passes += 1;
        }

        // Property 3: weight invariants on every task kind.
        for kind in TaskKind::ALL {
            let task = make_shifted_task(kind, n_source, n_target, noise_sigma, &mut rng);
            let samples = combined_training_set(&task);
            let (_, traces) = boost::train_with_trace(&learner, &samples, rounds);
            let ok = traces.iter().all(|trace| {
                trace.weights_after_round.iter().all(|w| {
                    let sum: f64 = w.iter().sum();
                    (sum - 1.0).abs() < 1e-12 && w.iter().all(|v| *v >= 0.0)
                }) && trace.hypothesis_errors.iter().all(|e| (0.0..=1.0).contains(e))
            });
            if ok {
                invariant_passes += 1;
            }
        }
    }

    let n = seeds.len();
    SelftestReport {
        properties: vec![
            PropertyOutcome {
                name: "unrelated source loses weight mass",
                passes: filtering_passes,
                trials: n,
                required: (n * 9).div_ceil(10),
            },
            PropertyOutcome {
                name: "identical-domain transfer is harmless",
                passes: harmless_passes,
                trials: n,
                required: (n * 8).div_ceil(10),
            },
            PropertyOutcome {
                name: "weight invariants hold on all tasks",
                passes: invariant_passes,
                trials: invariant_trials,
                required: invariant_trials,
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identical_task_shares_the_target_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let task = make_shifted_task(TaskKind::Identical, 10, 10, 0.0, &mut rng);
        for (x, y) in task.source.iter().chain(&task.target) {
            assert_eq!(*y, target_fn(x[0]));
        }
    }

    #[test]
    fn shifted_task_offsets_only_the_source() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let task = make_shifted_task(TaskKind::Shifted, 10, 10, 0.0, &mut rng);
        for (x, y) in &task.source {
            assert!((y - target_fn(x[0]) - SHIFT).abs() < 1e-15);
        }
        for (x, y) in &task.target {
            assert_eq!(*y, target_fn(x[0]));
        }
        // At x = 0 the source sits at the shift constant, the target at 0.
        assert_eq!(target_fn(0.0), 0.0);
    }

    #[test]
    fn unrelated_task_uses_a_different_trend() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let task = make_shifted_task(TaskKind::Unrelated, 10, 10, 0.0, &mut rng);
        for (x, y) in &task.source {
            assert_eq!(*y, -x[0]);
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let a = make_shifted_task(TaskKind::Shifted, 8, 8, 0.1, &mut ChaCha8Rng::seed_from_u64(5));
        let b = make_shifted_task(TaskKind::Shifted, 8, 8, 0.1, &mut ChaCha8Rng::seed_from_u64(5));
        let c = make_shifted_task(TaskKind::Shifted, 8, 8, 0.1, &mut ChaCha8Rng::seed_from_u64(6));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn heldout_grid_is_noiseless() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let task = make_shifted_task(TaskKind::Identical, 5, 5, 0.5, &mut rng);
        assert_eq!(task.heldout.len(), 101);
        for (x, y) in &task.heldout {
            assert_eq!(*y, target_fn(x[0]));
        }
    }

    #[test]
    fn combined_set_tags_domains_and_normalizes_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let task = make_shifted_task(TaskKind::Identical, 6, 4, 0.0, &mut rng);
        let set = combined_training_set(&task);
        assert_eq!(set.len(), 10);
        assert!(set[..6].iter().all(|s| s.domain == SampleDomain::Source));
        assert!(set[6..].iter().all(|s| s.domain == SampleDomain::Target));
        assert!(set.iter().all(|s| (s.weight - 0.1).abs() < 1e-15));
    }

    #[test]
    fn rmse_hand_case() {
        let pairs = vec![(vec![0.0], 1.0), (vec![1.0], 3.0)];
        // Constant prediction 2.0: errors 1 and 1, RMSE 1.
        assert!((rmse(|_| 2.0, &pairs) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn selftest_passes_on_the_reference_seeds() {
        let seeds: Vec<u64> = (0..10).collect();
        let report = transfer_selftest(&seeds);
        for p in &report.properties {
            assert!(
                p.passed(),
                "{}: {}/{} passed, {} required",
                p.name,
                p.passes,
                p.trials,
                p.required
            );
        }
    }
}
