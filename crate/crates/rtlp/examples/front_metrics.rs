//! The quality indicators: inverted generational distance (IGD), its
//! per-run mean (MIGD), and maximum spread (MS), on hand-checkable fronts.
//!
//! ```bash
//! cargo run --release --example front_metrics
//! ```

use rtlp::benchmark::{DynamicProblem, ProblemName};
use rtlp::metrics::{igd, igd_with, maximum_spread, objective_extremes, IgdVariant};

fn main() {
    // IGD averages, over the reference front, each reference point's
    // distance to its nearest obtained point.
    let reference = vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]];
    let obtained = vec![vec![0.0, 1.0], vec![0.6, 0.5], vec![1.0, 0.1]];
    println!("reference front: {reference:?}");
    println!("obtained front : {obtained:?}");
    println!("igd (euclidean) = {:.6}", igd(&reference, &obtained));
    println!(
        "igd (squared)   = {:.6}  (squared-distance variant)",
        igd_with(IgdVariant::Squared, &reference, &obtained)
    );

    // A front compared against itself always scores zero.
    assert_eq!(igd(&reference, &reference), 0.0);
    println!("igd of a front against itself = 0");

    // Maximum spread measures how much of the true front's extent the
    // obtained front covers, per objective, as a root-mean-square ratio.
    let true_extremes = vec![(0.0, 1.0), (0.0, 1.0)];
    let full = maximum_spread(&true_extremes, &reference);
    let partial = maximum_spread(&true_extremes, &obtained);
    let half = maximum_spread(&true_extremes, &[vec![0.25, 0.75], vec![0.75, 0.25]]);
    println!("\nmaximum spread, exact coverage  : {full:.4}");
    println!("maximum spread, obtained above  : {partial:.4}");
    println!("maximum spread, half-range front: {half:.4}");

    // On a real benchmark: extremes come from the analytic front sampler.
    let problem = DynamicProblem::new(ProblemName::Fda1);
    let pof = problem.sample_true_pof(0.0, 500);
    let extremes = objective_extremes(&pof);
    println!("\nFDA1 true front extremes: {extremes:?}");

    // A diverged population can still cover the extremes exactly: MS
    // rewards extent, not proximity — read it next to IGD, never alone.
    let diverged = vec![vec![0.0, 9.0], vec![1.0, 0.5], vec![0.4, 0.0]];
    println!(
        "diverged front: igd = {:.3}, ms = {:.3}",
        igd(&pof, &diverged),
        maximum_spread(&extremes, &diverged)
    );
}
