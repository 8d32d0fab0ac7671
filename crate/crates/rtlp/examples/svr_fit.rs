//! The weighted epsilon-SVR weak learner on its own: a plain fit, the
//! epsilon tube, and what per-sample weights do to the solution.
//!
//! ```bash
//! cargo run --release --example svr_fit
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rtlp::svr::{fit, SvrParams};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    // Fit y = sin(2*pi*x) from 60 noiseless samples.
    let xs: Vec<Vec<f64>> = (0..60).map(|_| vec![rng.gen_range(0.0..1.0)]).collect();
    let ys: Vec<f64> = xs.iter().map(|x| (2.0 * std::f64::consts::PI * x[0]).sin()).collect();
    let weights = vec![1.0; xs.len()];

    // gamma = 1/n is far too blunt for a 1-D wave; widen the kernel.
    let params = SvrParams { gamma: 20.0, c: 10.0, ..SvrParams::for_dimension(1) };
    let model = fit(&xs, &ys, &weights, &params);

    println!("sine fit ({} support vectors, bias {:.4}):", model.support_vectors.len(), model.bias);
    let mut worst: f64 = 0.0;
    for i in 0..=8 {
        let x = i as f64 / 8.0;
        let truth = (2.0 * std::f64::consts::PI * x).sin();
        let pred = model.predict(&[x]);
        worst = worst.max((truth - pred).abs());
        println!("  x={x:.3}  true {truth:+.4}  predicted {pred:+.4}");
    }
    println!("  worst grid error {:.4} (tube epsilon = {})", worst, params.epsilon);

    // The epsilon tube: residuals inside the tube carry no penalty, so the
    // training residuals should hug +-epsilon.
    let max_train_resid = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - model.predict(x)).abs())
        .fold(0.0_f64, f64::max);
    println!("  max training residual {max_train_resid:.4}");

    // Weights: one heavy sample against 30 near-zero ones. The fit follows
    // the heavy sample and all but ignores the light cloud.
    let mut xs: Vec<Vec<f64>> = (0..30).map(|_| vec![rng.gen_range(0.0..1.0)]).collect();
    let mut ys: Vec<f64> = vec![5.0; 30];
    xs.push(vec![0.5]);
    ys.push(-1.0);
    let mut weights = vec![1e-9; 30];
    weights.push(1.0);

    let params = SvrParams::for_dimension(1);
    let model = fit(&xs, &ys, &weights, &params);
    println!("\nweight dominance: 30 samples at y=5 (weight 1e-9) vs one at y=-1 (weight 1):");
    println!("  prediction at the heavy sample = {:.4}", model.predict(&[0.5]));

    // Scaling every weight by the same constant changes nothing: weights
    // enter the dual only through normalized per-sample caps.
    let doubled: Vec<f64> = weights.iter().map(|w| w * 2.0).collect();
    let model2 = fit(&xs, &ys, &doubled, &params);
    println!(
        "  after doubling all weights: {:.4} (identical solve)",
        model2.predict(&[0.5])
    );
}
