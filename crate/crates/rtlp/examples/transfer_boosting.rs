//! Boosted instance transfer on the synthetic tasks: how source samples
//! gain or lose weight, and when transfer helps versus when it is filtered
//! out.
//!
//! ```bash
//! cargo run --release --example transfer_boosting
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rtlp::boost::{train_with_trace, SampleDomain, SvrLearner, WeightedSample};
use rtlp::svr::{fit, SvrParams};
use rtlp::synthetic::{self, make_shifted_task, rmse, TaskKind};

fn main() {
    let learner = SvrLearner::default();

    for kind in TaskKind::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let task = make_shifted_task(kind, 100, 50, 0.05, &mut rng);

        // Assemble the combined weighted training set: source samples carry
        // labels from their own (possibly unrelated) generating function.
        let samples: Vec<WeightedSample> = synthetic::combined_training_set(&task);
        let n_source = samples.iter().filter(|s| s.domain == SampleDomain::Source).count();

        let (ensemble, traces) = train_with_trace(&learner, &samples, 10);
        let trace = &traces[0];

        // Where did the weight mass end up after the final round?
        let final_weights = trace.weights_after_round.last().unwrap();
        let source_mass: f64 = final_weights.iter().take(n_source).sum();
        let target_mass: f64 = final_weights.iter().skip(n_source).sum();

        // Held-out accuracy of the ensemble vs. an SVR trained on the
        // target samples alone (what we would do without transfer).
        let ensemble_rmse = rmse(|x| ensemble.predict(x)[0], &task.heldout);
        let xs: Vec<Vec<f64>> = task.target.iter().map(|(x, _)| x.clone()).collect();
        let ys: Vec<f64> = task.target.iter().map(|(_, y)| *y).collect();
        let solo = fit(&xs, &ys, &vec![1.0; ys.len()], &SvrParams::for_dimension(1));
        let solo_rmse = rmse(|x| solo.predict(x), &task.heldout);

        println!("{} task:", kind.as_str());
        println!("  rounds kept        : {}", ensemble.chains()[0].len());
        println!("  hypothesis errors  : {:?}", summarize(&trace.hypothesis_errors));
        println!("  final source mass  : {source_mass:.3} ({n_source} samples)");
        println!("  final target mass  : {target_mass:.3} ({} samples)", samples.len() - n_source);
        println!("  held-out RMSE      : ensemble {ensemble_rmse:.4} vs target-only {solo_rmse:.4}");
        println!();
    }

    // The packaged selftest runs the statistical versions of these checks
    // across seeds (also available as `rtlp selftest transfer`).
    let report = synthetic::transfer_selftest(&(0..10).collect::<Vec<_>>());
    for p in &report.properties {
        println!(
            "selftest {:<40} {} ({}/{})",
            p.name,
            if p.passed() { "pass" } else { "FAIL" },
            p.passes,
            p.trials
        );
    }
}

fn summarize(errors: &[f64]) -> Vec<f64> {
    errors.iter().map(|e| (e * 1000.0).round() / 1000.0).collect()
}
