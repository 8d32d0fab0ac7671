//! Initial-population prediction: screens a large uniform candidate pool
//! through the transfer ensemble and assembles the next environment's
//! starting population from the best predicted fronts, padded with
//! Gaussian-perturbed copies when whole fronts stop fitting.

use crate::benchmark::DynamicProblem;
use crate::boost::TransferEnsemble;
use crate::pareto::{crowding_distance, fast_nondominated_sort, Individual};
use rand::Rng;
use rand_distr::{Distribution, Normal};

/// Noise scale of the padding perturbation, as a fraction of each
/// dimension's range.
const PAD_SIGMA_FRACTION: f64 = 0.05;

/// An assembled seed population before evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedAssembly {
    /// Decision vectors: pool picks first (in front order), then padding.
    pub xs: Vec<Vec<f64>>,
    /// Pool indices of the picks, aligned with the head of `xs`.
    pub picked: Vec<usize>,
}

/// Screen `test_count` uniform candidates through the ensemble and return
/// an `n`-sized unevaluated population for the optimizer to start from.
pub fn predict_initial_population(
    ensemble: &TransferEnsemble,
    problem: &DynamicProblem,
    n: usize,
    test_count: usize,
    rng: &mut impl Rng,
) -> Vec<Individual> {
    assert!(n >= 2, "population size must be at least 2");
    assert!(test_count >= n, "candidate pool must be at least N");
    assert_eq!(
        ensemble.objectives(),
        problem.objectives(),
        "ensemble and problem disagree on objective count"
    );
    let pool: Vec<Vec<f64>> = (0..test_count)
        .map(|_| {
            problem
                .bounds()
                .iter()
                .map(|&(lo, hi)| rng.gen_range(lo..hi))
                .collect()
        })
        .collect();
    let predicted: Vec<Vec<f64>> = pool.iter().map(|x| ensemble.predict(x)).collect();
    let assembly = assemble_initial_population(&pool, &predicted, n, problem.bounds(), rng);
    assembly.xs.into_iter().map(Individual::new).collect()
}

/// Assemble an `n`-sized population from a candidate pool and its
/// *predicted* objectives.
///
/// Whole predicted fronts are appended while they fit; the first front that
/// would overflow stops the fill, and Gaussian-perturbed copies of the
/// picked members (drawn round-robin, clipped to bounds) pad the rest. An
/// oversized first front is instead truncated to `n` by descending crowding
/// distance on the predicted objectives, with no padding.
pub fn assemble_initial_population(
    pool: &[Vec<f64>],
    predicted: &[Vec<f64>],
    n: usize,
    bounds: &[(f64, f64)],
    rng: &mut impl Rng,
) -> SeedAssembly {
    assert_eq!(pool.len(), predicted.len());
    assert!(pool.len() >= n, "candidate pool must be at least N");
    assert!(n >= 2);

    let partition = fast_nondominated_sort(predicted);
    let mut picked: Vec<usize> = Vec::with_capacity(n);
    for front in &partition.fronts {
        if picked.len() + front.len() > n {
            break;
        }
        picked.extend_from_slice(front);
    }

    if picked.is_empty() {
        // The first front alone overflows N: keep its most spread-out
        // members instead of admitting nothing.
        let front = &partition.fronts[0];
        let front_objectives: Vec<Vec<f64>> =
            front.iter().map(|&i| predicted[i].clone()).collect();
        let distance = crowding_distance(&front_objectives);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| distance[b].total_cmp(&distance[a]).then(a.cmp(&b)));
        picked = order[..n].iter().map(|&k| front[k]).collect();
    }

    let mut xs: Vec<Vec<f64>> = picked.iter().map(|&i| pool[i].clone()).collect();
    let noises: Vec<Option<Normal<f64>>> = bounds
        .iter()
        .map(|&(lo, hi)| {
            let sigma = PAD_SIGMA_FRACTION * (hi - lo);
            (sigma > 0.0).then(|| Normal::new(0.0, sigma).unwrap())
        })
        .collect();
    let mut base = 0;
    while xs.len() < n {
        let copy: Vec<f64> = xs[base % picked.len()]
            .iter()
            .zip(bounds.iter().zip(&noises))
            .map(|(&v, (&(lo, hi), noise))| {
                let jitter = noise.as_ref().map_or(0.0, |d| d.sample(rng));
                (v + jitter).clamp(lo, hi)
            })
            .collect();
        xs.push(copy);
        base += 1;
    }
    SeedAssembly { xs, picked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::ProblemName;
    use crate::boost::{self, SvrLearner};
    use crate::pareto::dominates;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    const UNIT_SQUARE: [(f64, f64); 2] = [(0.0, 2.0), (0.0, 2.0)];

    /// A pool whose predicted fronts are a 30-point line and an 80-point
    /// line strictly behind it; decision vectors mirror the objectives.
    fn two_front_pool() -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let mut predicted = Vec::new();
        for i in 0..30 {
            let u = i as f64 / 29.0;
            predicted.push(vec![u, 1.0 - u]);
        }
        for i in 0..80 {
            let u = i as f64 / 79.0;
            predicted.push(vec![u, 1.5 - u]);
        }
        (predicted.clone(), predicted)
    }

    #[test]
    fn whole_fronts_fill_first_and_noise_pads_the_rest() {
        let (pool, predicted) = two_front_pool();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let out = assemble_initial_population(&pool, &predicted, 100, &UNIT_SQUARE, &mut rng);
        // The 80-point second front does not fit after the first 30, so the
        // population is the whole first front plus 70 perturbed copies.
        assert_eq!(out.xs.len(), 100);
        assert_eq!(out.picked, (0..30).collect::<Vec<_>>());
        assert_eq!(&out.xs[..30], &pool[..30]);
        for pad in &out.xs[30..] {
            assert!(pool[30..].iter().all(|q| q != pad), "pad equals an F2 member");
            for (v, (lo, hi)) in pad.iter().zip(UNIT_SQUARE) {
                assert!((lo..=hi).contains(v));
            }
        }
    }

    #[test]
    fn oversized_first_front_is_truncated_by_crowding() {
        let pool: Vec<Vec<f64>> = (0..120)
            .map(|i| {
                let u = i as f64 / 119.0;
                vec![u, 1.0 - u]
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = assemble_initial_population(&pool, &pool, 100, &UNIT_SQUARE, &mut rng);
        assert_eq!(out.xs.len(), 100);
        assert_eq!(out.picked.len(), 100, "truncation pads nothing");
        // Oracle: descending crowding distance, ties by pool index.
        let distance = crowding_distance(&pool);
        let mut order: Vec<usize> = (0..120).collect();
        order.sort_by(|&a, &b| distance[b].total_cmp(&distance[a]).then(a.cmp(&b)));
        assert_eq!(out.picked, order[..100].to_vec());
    }

    #[test]
    fn an_exactly_fitting_front_passes_through_unpadded() {
        let pool: Vec<Vec<f64>> = (0..50)
            .map(|i| {
                let u = i as f64 / 49.0;
                vec![u, 1.0 - u]
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let out = assemble_initial_population(&pool, &pool, 50, &UNIT_SQUARE, &mut rng);
        assert_eq!(out.xs, pool);
        assert_eq!(out.picked, (0..50).collect::<Vec<_>>());
    }

    #[test]
    fn no_discarded_candidate_dominates_a_pick() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..50 {
            let pool_len = rng.gen_range(20..=60);
            let n = rng.gen_range(2..=pool_len.min(40));
            let predicted: Vec<Vec<f64>> = (0..pool_len)
                .map(|_| (0..2).map(|_| rng.gen_range(0.0..1.0)).collect())
                .collect();
            let out =
                assemble_initial_population(&predicted, &predicted, n, &UNIT_SQUARE, &mut rng);
            for &p in &out.picked {
                for q in 0..pool_len {
                    if !out.picked.contains(&q) {
                        assert!(
                            !dominates(&predicted[q], &predicted[p]),
                            "discarded {q} dominates picked {p}"
                        );
                    }
                }
            }
        }
    }

    fn small_fda1_ensemble(rng: &mut ChaCha8Rng) -> (boost::TransferEnsemble, DynamicProblem) {
        let problem = DynamicProblem::new(ProblemName::Fda1);
        let previous: Vec<Individual> = (0..30)
            .map(|_| {
                let x: Vec<f64> = problem
                    .bounds()
                    .iter()
                    .map(|&(lo, hi)| rng.gen_range(lo..hi))
                    .collect();
                let f = problem.evaluate(&x, 0.0).unwrap();
                Individual {
                    x,
                    f: Some(f),
                    t: 0.0,
                }
            })
            .collect();
        let set = boost::build_training_set(&previous, &problem, 0.2, 15, rng);
        (boost::train(&SvrLearner::default(), &set, 3), problem)
    }

    #[test]
    fn predicted_population_meets_its_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (ensemble, problem) = small_fda1_ensemble(&mut rng);
        let population = predict_initial_population(&ensemble, &problem, 20, 100, &mut rng);
        assert_eq!(population.len(), 20);
        for ind in &population {
            assert!(ind.f.is_none(), "seeded individuals are unevaluated");
            assert_eq!(ind.x.len(), problem.dimension());
            for (v, &(lo, hi)) in ind.x.iter().zip(problem.bounds()) {
                assert!((lo..=hi).contains(v));
            }
        }
    }

    #[test]
    fn prediction_is_reproducible_per_seed() {
        let mut setup = ChaCha8Rng::seed_from_u64(7);
        let (ensemble, problem) = small_fda1_ensemble(&mut setup);
        let mut a_rng = ChaCha8Rng::seed_from_u64(42);
        let mut b_rng = ChaCha8Rng::seed_from_u64(42);
        let a = predict_initial_population(&ensemble, &problem, 10, 50, &mut a_rng);
        let b = predict_initial_population(&ensemble, &problem, 10, 50, &mut b_rng);
        assert_eq!(a, b);
    }
}
