//! Tour of the dynamic benchmark suite: the eight FDA/dMOP problems, the
//! discrete time controller, and the analytic reference fronts.
//!
//! ```bash
//! cargo run --release --example benchmark_tour
//! ```

use rtlp::benchmark::{DynamicProblem, ProblemName, TimeController};

fn main() {
    // Every problem with its shape and change type.
    println!("problem   n   m  change    bounds of x1 / tail");
    for &name in &ProblemName::ALL {
        let problem = DynamicProblem::new(name);
        let bounds = problem.bounds();
        let (first, last) = (bounds[0], bounds[bounds.len() - 1]);
        println!(
            "{:<8} {:>2}  {:>2}  {:<8} [{:.0}, {:.0}] / [{:.0}, {:.0}]",
            name.as_str(),
            problem.dimension(),
            problem.objectives(),
            format!("{:?}", problem.change_type()),
            first.0,
            first.1,
            last.0,
            last.1,
        );
    }

    // The time controller maps the generation counter to environment time:
    // t = (1/n_t) * floor(tau / tau_t).
    println!("\ntime controller at tau_t=5, n_t=10:");
    let mut ctrl = TimeController::new(10, 5);
    let mut changes = Vec::new();
    let mut last_t = ctrl.time();
    for _ in 0..30 {
        ctrl.advance();
        if ctrl.time() != last_t {
            changes.push(ctrl.time());
            last_t = ctrl.time();
        }
    }
    println!("  first environment times after t=0: {changes:?}");

    // The same decision vector drifts in objective space as t moves: FDA1's
    // tail optimum follows G(t) = sin(0.5*pi*t).
    let fda1 = DynamicProblem::new(ProblemName::Fda1);
    let x = vec![0.5; 20];
    println!("\nFDA1 at x = (0.5, ..., 0.5):");
    for t in [0.0, 0.5, 1.0] {
        let f = fda1.evaluate(&x, t).unwrap();
        println!("  t={t:.1}  f = ({:.4}, {:.4})", f[0], f[1]);
    }

    // Reference fronts. FDA1 is Type I: its POF is the same at every t.
    let a = fda1.sample_true_pof(0.0, 5);
    let b = fda1.sample_true_pof(2.7, 5);
    println!("\nFDA1 reference front (5 points, any t):");
    for (p, q) in a.iter().zip(&b) {
        assert_eq!(p, q, "Type I fronts are time-invariant");
        println!("  ({:.4}, {:.4})", p[0], p[1]);
    }

    // FDA2 is Type III: the POS stands still while the front changes shape.
    let fda2 = DynamicProblem::new(ProblemName::Fda2);
    println!("\nFDA2 front midpoint as the shape exponent H(t) moves:");
    for t in [0.0, 1.0, 2.0] {
        let mid = &fda2.sample_true_pof(t, 3)[1];
        println!("  t={t:.1}  f = ({:.4}, {:.4})", mid[0], mid[1]);
    }

    // Tri-objective FDA4: every front point sits on the unit sphere octant.
    let fda4 = DynamicProblem::new(ProblemName::Fda4);
    let sphere = fda4.sample_true_pof(0.3, 16);
    let max_err = sphere
        .iter()
        .map(|p| (p.iter().map(|v| v * v).sum::<f64>() - 1.0).abs())
        .fold(0.0_f64, f64::max);
    println!("\nFDA4 front: {} points, max | |f|^2 - 1 | = {max_err:.2e}", sphere.len());
}
