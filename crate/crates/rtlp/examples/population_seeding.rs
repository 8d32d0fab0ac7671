//! One full environment change, step by step: settle on the old landscape,
//! train the transfer ensemble from the outgoing population, screen a
//! uniform candidate pool through it, and compare the seeded start against
//! carrying the old population.
//!
//! ```bash
//! cargo run --release --example population_seeding
//! ```

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rtlp::benchmark::{DynamicProblem, ProblemName};
use rtlp::boost::{build_training_set, train, SampleDomain, SvrLearner};
use rtlp::metrics::igd;
use rtlp::optimizer::{optimizer_by_name, OptimizerConfig};
use rtlp::seeder::predict_initial_population;
use rtlp::Individual;

fn main() {
    // dMOP3 moves its whole tail every change and re-rolls which variable
    // spans the front, so carrying the old population over is costly and
    // the effect of seeding is easy to see.
    let problem = DynamicProblem::new(ProblemName::DMop3).with_seed(5);
    let optimizer = optimizer_by_name("nsga2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 100;

    // Settle in the initial environment.
    let uniform = |rng: &mut ChaCha8Rng| -> Vec<Individual> {
        (0..n)
            .map(|_| {
                Individual::new(
                    problem
                        .bounds()
                        .iter()
                        .map(|&(lo, hi)| rng.gen_range(lo..hi))
                        .collect(),
                )
            })
            .collect()
    };
    let cfg = OptimizerConfig::new(n, 50);
    let settled = optimizer.optimize(uniform(&mut rng), &problem, 0.0, &cfg, &mut rng);

    // The environment changes: t moves from 0 to 0.2 (n_t = 5 severity).
    let t_new = 0.2;
    let igd_at = |pop: &[Individual], t: f64| {
        let reference = problem.sample_true_pof(t, 500);
        let front: Vec<Vec<f64>> = pop
            .iter()
            .map(|p| problem.evaluate(&p.x, t).unwrap())
            .collect();
        igd(&reference, &front)
    };
    println!("settled population: IGD {:.4} at t=0, {:.4} at t={t_new}", igd_at(&settled, 0.0), igd_at(&settled, t_new));

    // Build the transfer training set: the outgoing population with its
    // stale labels (source) plus 50 fresh uniform samples under the new
    // landscape (target).
    let training = build_training_set(&settled, &problem, t_new, 50, &mut rng);
    let sources = training.iter().filter(|s| s.domain == SampleDomain::Source).count();
    println!(
        "training set: {} source + {} target samples, uniform weight {:.5}",
        sources,
        training.len() - sources,
        training[0].weight
    );

    // Ten boosting rounds, one chain per objective.
    let ensemble = train(&SvrLearner::default(), &training, 10);
    println!(
        "ensemble: {} objectives x {} retained rounds",
        ensemble.objectives(),
        ensemble.chains()[0].len()
    );

    // Screen 500 uniform candidates through the ensemble and assemble the
    // seed population from the predicted nondominated fronts.
    let seeded = predict_initial_population(&ensemble, &problem, n, 500, &mut rng);
    println!("\ninitial-population quality at t={t_new} (before any optimization):");
    println!("  seeded        IGD {:.4}", igd_at(&seeded, t_new));
    println!("  carried-over  IGD {:.4}", igd_at(&settled, t_new));
    println!("  fresh uniform IGD {:.4}", igd_at(&uniform(&mut rng), t_new));

    // Give each start the same short optimization burst.
    let cfg = OptimizerConfig::new(n, 5);
    let after_seed = optimizer.optimize(seeded, &problem, t_new, &cfg, &mut rng);
    let after_carry = optimizer.optimize(settled, &problem, t_new, &cfg, &mut rng);
    println!("\nafter 5 generations at t={t_new}:");
    println!("  seeded        IGD {:.4}", igd_at(&after_seed, t_new));
    println!("  carried-over  IGD {:.4}", igd_at(&after_carry, t_new));
}
