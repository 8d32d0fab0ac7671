//! The static multi-objective optimizer on a frozen slice of a dynamic
//! problem: NSGA-II from a uniform start, with IGD convergence along the
//! way.
//!
//! ```bash
//! cargo run --release --example static_optimize
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rtlp::benchmark::{DynamicProblem, ProblemName};
use rtlp::metrics::igd;
use rtlp::optimizer::{optimizer_by_name, OptimizerConfig};
use rtlp::Individual;

fn main() {
    let problem = DynamicProblem::new(ProblemName::Fda1);
    let optimizer = optimizer_by_name("nsga2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let t = 0.0;
    let n = 100;

    let reference = problem.sample_true_pof(t, 500);
    let igd_of = |pop: &[Individual]| {
        let front: Vec<Vec<f64>> = pop.iter().map(|p| p.objectives().to_vec()).collect();
        igd(&reference, &front)
    };

    // Uniform initial population.
    let mut population: Vec<Individual> = (0..n)
        .map(|_| {
            Individual::new(
                problem
                    .bounds()
                    .iter()
                    .map(|&(lo, hi)| rng.gen_range(lo..hi))
                    .collect(),
            )
        })
        .collect();

    // Run 50 generations in 10-generation slices to watch convergence.
    println!("FDA1 frozen at t={t}, N={n}:");
    let cfg = OptimizerConfig::new(n, 10);
    for gen in (10..=50).step_by(10) {
        population = optimizer.optimize(population, &problem, t, &cfg, &mut rng);
        println!("  after {gen:>2} generations  IGD = {:.4}", igd_of(&population));
    }

    let final_igd = igd_of(&population);
    assert!(final_igd < 0.05, "FDA1's static slice converges below 0.05");
    println!("\nfinal front sample (every 10th member by f1):");
    let mut front: Vec<Vec<f64>> = population.iter().map(|p| p.objectives().to_vec()).collect();
    front.sort_by(|a, b| a[0].total_cmp(&b[0]));
    for p in front.iter().step_by(10) {
        println!("  ({:.4}, {:.4})", p[0], p[1]);
    }
}
