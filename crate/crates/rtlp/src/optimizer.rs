//! The pluggable static multi-objective optimizer run once per environment.
//!
//! The reference implementation is NSGA-II (Deb et al., 2002): binary
//! tournaments on (rank, crowding distance), simulated binary crossover,
//! polynomial mutation, and elitist (mu + lambda) environmental selection.
//! Anything implementing [`StaticOptimizer`] can stand in; names are kept
//! stable so a regularity-model optimizer can slot in later without
//! touching the harness.

use crate::benchmark::DynamicProblem;
use crate::pareto::{crowding_distance, fast_nondominated_sort, Individual};
use crate::Error;
use rand::{Rng, RngCore};

/// Settings of one optimizer call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Population size `N`; must be even.
    pub population_size: usize,
    /// Generations to run.
    pub generations: u32,
    /// Distribution index of simulated binary crossover.
    pub crossover_index: f64,
    /// Distribution index of polynomial mutation.
    pub mutation_index: f64,
    /// Per-pair crossover probability.
    pub crossover_probability: f64,
    /// Per-variable mutation probability; `None` selects `1/n`.
    pub mutation_probability: Option<f64>,
}

impl OptimizerConfig {
    /// Field-standard defaults around a population size and budget.
    pub fn new(population_size: usize, generations: u32) -> Self {
        OptimizerConfig {
            population_size,
            generations,
            crossover_index: 20.0,
            mutation_index: 20.0,
            crossover_probability: 0.9,
            mutation_probability: None,
        }
    }

    fn validate(&self) {
        assert!(
            self.population_size >= 2 && self.population_size % 2 == 0,
            "population size must be even and at least 2"
        );
        assert!(self.generations >= 1, "need at least one generation");
        assert!((0.0..=1.0).contains(&self.crossover_probability));
        if let Some(pm) = self.mutation_probability {
            assert!((0.0..=1.0).contains(&pm));
        }
    }
}

/// Generation budget of one environment: the initial environment gets a
/// long settling run, every later environment gets the change period.
pub fn budget_for_environment(tau_t: u32, initial: bool) -> u32 {
    assert!(tau_t >= 1);
    if initial {
        50
    } else {
        tau_t
    }
}

/// A static multi-objective optimizer usable by the harness.
pub trait StaticOptimizer: Send + Sync {
    fn name(&self) -> &'static str;

    /// Run the full budget on the landscape frozen at time `t` and return
    /// `N` evaluated individuals.
    fn optimize(
        &self,
        init: Vec<Individual>,
        problem: &DynamicProblem,
        t: f64,
        cfg: &OptimizerConfig,
        rng: &mut dyn RngCore,
    ) -> Vec<Individual>;
}

/// The NSGA-II reference optimizer.
#[derive(Debug, Clone, Copy, Default)]
pub struct Nsga2;

impl StaticOptimizer for Nsga2 {
    fn name(&self) -> &'static str {
        "nsga2"
    }

    fn optimize(
        &self,
        init: Vec<Individual>,
        problem: &DynamicProblem,
        t: f64,
        cfg: &OptimizerConfig,
        mut rng: &mut dyn RngCore,
    ) -> Vec<Individual> {
        optimize(init, problem, t, cfg, &mut rng)
    }
}

/// Look an optimizer up by its config name.
pub fn optimizer_by_name(name: &str) -> Result<Box<dyn StaticOptimizer>, Error> {
    match name {
        "nsga2" => Ok(Box::new(Nsga2)),
        "rmmeda" => Err(Error::ReservedOptimizer(name.to_string())),
        other => Err(Error::UnknownOptimizer(other.to_string())),
    }
}

/// Run NSGA-II on the landscape frozen at time `t`.
///
/// Every member of `init` is (re-)evaluated under `F(., t)` first — seeded
/// and carried-over populations arrive with missing or stale objectives —
/// so one call costs exactly `N * (G + 1)` problem evaluations.
pub fn optimize(
    init: Vec<Individual>,
    problem: &DynamicProblem,
    t: f64,
    cfg: &OptimizerConfig,
    rng: &mut impl Rng,
) -> Vec<Individual> {
    cfg.validate();
    let n = cfg.population_size;
    assert_eq!(init.len(), n, "initial population must have size N");
    let pm = cfg
        .mutation_probability
        .unwrap_or(1.0 / problem.dimension() as f64);

    let mut parents = init;
    for ind in &mut parents {
        evaluate_at(problem, t, ind);
    }

    for _ in 0..cfg.generations {
        let objectives: Vec<Vec<f64>> =
            parents.iter().map(|p| p.objectives().to_vec()).collect();
        let (ranks, crowding) = rank_and_crowding(&objectives);

        let mut offspring = Vec::with_capacity(n);
        while offspring.len() < n {
            let a = tournament(&ranks, &crowding, rng);
            let b = tournament(&ranks, &crowding, rng);
            let (mut c1, mut c2) = sbx_pair(
                &parents[a].x,
                &parents[b].x,
                problem.bounds(),
                cfg.crossover_index,
                cfg.crossover_probability,
                rng,
            );
            polynomial_mutation(&mut c1, problem.bounds(), cfg.mutation_index, pm, rng);
            polynomial_mutation(&mut c2, problem.bounds(), cfg.mutation_index, pm, rng);
            let mut child1 = Individual::new(c1);
            let mut child2 = Individual::new(c2);
            evaluate_at(problem, t, &mut child1);
            evaluate_at(problem, t, &mut child2);
            offspring.push(child1);
            offspring.push(child2);
        }

        parents.extend(offspring);
        parents = select_elitist(parents, n);
    }
    parents
}

fn evaluate_at(problem: &DynamicProblem, t: f64, ind: &mut Individual) {
    let f = problem
        .evaluate(&ind.x, t)
        .expect("population members stay inside the box");
    ind.f = Some(f);
    ind.t = t;
}

/// Front rank and within-front crowding distance of every member.
fn rank_and_crowding(objectives: &[Vec<f64>]) -> (Vec<usize>, Vec<f64>) {
    let partition = fast_nondominated_sort(objectives);
    let ranks = partition.ranks(objectives.len());
    let mut crowding = vec![0.0; objectives.len()];
    for front in &partition.fronts {
        let front_objs: Vec<Vec<f64>> = front.iter().map(|&i| objectives[i].clone()).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&front_objs)) {
            crowding[i] = d;
        }
    }
    (ranks, crowding)
}

/// Binary tournament: lower rank wins, larger crowding breaks rank ties,
/// the first contestant wins full ties.
fn tournament(ranks: &[usize], crowding: &[f64], rng: &mut impl Rng) -> usize {
    let a = rng.gen_range(0..ranks.len());
    let b = rng.gen_range(0..ranks.len());
    if ranks[b] < ranks[a] || (ranks[b] == ranks[a] && crowding[b] > crowding[a]) {
        b
    } else {
        a
    }
}

/// Elitist (mu + lambda) selection: keep whole fronts while they fit, then
/// fill the boundary front by descending crowding distance (ties by pool
/// index).
fn select_elitist(pool: Vec<Individual>, n: usize) -> Vec<Individual> {
    let objectives: Vec<Vec<f64>> = pool.iter().map(|p| p.objectives().to_vec()).collect();
    let partition = fast_nondominated_sort(&objectives);
    let mut keep: Vec<usize> = Vec::with_capacity(n);
    for front in &partition.fronts {
        if keep.len() + front.len() <= n {
            keep.extend_from_slice(front);
            continue;
        }
        let front_objs: Vec<Vec<f64>> = front.iter().map(|&i| objectives[i].clone()).collect();
        let distance = crowding_distance(&front_objs);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| distance[b].total_cmp(&distance[a]).then(a.cmp(&b)));
        keep.extend(order[..n - keep.len()].iter().map(|&k| front[k]));
        break;
    }
    let keep_set: Vec<bool> = {
        let mut mask = vec![false; pool.len()];
        for &i in &keep {
            mask[i] = true;
        }
        mask
    };
    // Preserve pool order for a stable, index-independent result.
    pool.into_iter()
        .zip(keep_set)
        .filter_map(|(ind, kept)| kept.then_some(ind))
        .collect()
}

/// Simulated binary crossover of two parents (Deb and Agrawal, 1995),
/// bounded form. Returns the pair unchanged (as copies) when the pair
/// probability does not fire.
pub fn sbx_pair(
    p1: &[f64],
    p2: &[f64],
    bounds: &[(f64, f64)],
    eta: f64,
    pair_probability: f64,
    rng: &mut impl Rng,
) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.gen_range(0.0..1.0) > pair_probability {
        return (c1, c2);
    }
    for j in 0..p1.len() {
        // Each variable crosses with probability 1/2.
        if rng.gen_range(0.0..1.0) > 0.5 {
            continue;
        }
        let (lo, hi) = bounds[j];
        let (y1, y2) = if p1[j] <= p2[j] {
            (p1[j], p2[j])
        } else {
            (p2[j], p1[j])
        };
        if (y2 - y1).abs() < 1e-14 {
            continue;
        }
        let u: f64 = rng.gen_range(0.0..1.0);
        let spread = |beta: f64| -> f64 {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(1.0 / (eta + 1.0))
            } else {
                (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
            }
        };
        let beta_lo = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
        let beta_hi = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
        let mut v1 = 0.5 * ((y1 + y2) - spread(beta_lo) * (y2 - y1));
        let mut v2 = 0.5 * ((y1 + y2) + spread(beta_hi) * (y2 - y1));
        v1 = v1.clamp(lo, hi);
        v2 = v2.clamp(lo, hi);
        // Hand each child either side at random.
        if rng.gen_range(0.0..1.0) <= 0.5 {
            (c1[j], c2[j]) = (v2, v1);
        } else {
            (c1[j], c2[j]) = (v1, v2);
        }
    }
    (c1, c2)
}

/// Bounded polynomial mutation (Deb, 2001) in place.
pub fn polynomial_mutation(
    x: &mut [f64],
    bounds: &[(f64, f64)],
    eta: f64,
    per_variable_probability: f64,
    rng: &mut impl Rng,
) {
    for j in 0..x.len() {
        if rng.gen_range(0.0..1.0) > per_variable_probability {
            continue;
        }
        let (lo, hi) = bounds[j];
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        let y = x[j];
        let delta1 = (y - lo) / range;
        let delta2 = (hi - y) / range;
        let u: f64 = rng.gen_range(0.0..1.0);
        let mut_pow = 1.0 / (eta + 1.0);
        let deltaq = if u < 0.5 {
            let xy = 1.0 - delta1;
            let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta + 1.0);
            val.powf(mut_pow) - 1.0
        } else {
            let xy = 1.0 - delta2;
            let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta + 1.0);
            1.0 - val.powf(mut_pow)
        };
        x[j] = (y + deltaq * range).clamp(lo, hi);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::ProblemName;
    use crate::metrics::igd;
    use crate::pareto::dominates;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_population(problem: &DynamicProblem, n: usize, rng: &mut impl Rng) -> Vec<Individual> {
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
    }

    #[test]
    fn budget_rule() {
        assert_eq!(budget_for_environment(5, true), 50);
        assert_eq!(budget_for_environment(5, false), 5);
        assert_eq!(budget_for_environment(10, false), 10);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(optimizer_by_name("nsga2").unwrap().name(), "nsga2");
        assert!(matches!(
            optimizer_by_name("rmmeda"),
            Err(Error::ReservedOptimizer(_))
        ));
        assert!(matches!(
            optimizer_by_name("cmaes"),
            Err(Error::UnknownOptimizer(_))
        ));
    }

    #[test]
    fn output_meets_the_population_contract() {
        let problem = DynamicProblem::new(ProblemName::DMop2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let init = random_population(&problem, 20, &mut rng);
        let cfg = OptimizerConfig::new(20, 3);
        let t = 0.4;
        let out = optimize(init, &problem, t, &cfg, &mut rng);
        assert_eq!(out.len(), 20);
        for ind in &out {
            assert_eq!(ind.t, t);
            let f = ind.objectives();
            assert_eq!(f, problem.evaluate(&ind.x, t).unwrap().as_slice());
            for (v, &(lo, hi)) in ind.x.iter().zip(problem.bounds()) {
                assert!((lo..=hi).contains(v));
            }
        }
    }

    #[test]
    fn optimization_is_deterministic_per_seed() {
        let problem = DynamicProblem::new(ProblemName::Fda1);
        let cfg = OptimizerConfig::new(10, 2);
        let run = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let init = random_population(&problem, 10, &mut rng);
            optimize(init, &problem, 0.0, &cfg, &mut rng)
        };
        assert_eq!(run(9), run(9));
        assert_ne!(run(9), run(10));
    }

    #[test]
    fn one_generation_is_an_elitist_selection() {
        // No survivor may be dominated by a discarded initial member.
        let problem = DynamicProblem::new(ProblemName::Fda1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let init = random_population(&problem, 20, &mut rng);
        let evaluated: Vec<Vec<f64>> = init
            .iter()
            .map(|ind| problem.evaluate(&ind.x, 0.0).unwrap())
            .collect();
        let out = optimize(init.clone(), &problem, 0.0, &OptimizerConfig::new(20, 1), &mut rng);
        let survivors: Vec<&[f64]> = out.iter().map(|o| o.objectives()).collect();
        for (ind, f) in init.iter().zip(&evaluated) {
            let discarded = !out.iter().any(|o| o.x == ind.x);
            if discarded {
                for s in &survivors {
                    assert!(
                        !dominates(f, s),
                        "discarded init member dominates a survivor"
                    );
                }
            }
        }
    }

    #[test]
    fn fda1_static_slice_converges() {
        let problem = DynamicProblem::new(ProblemName::Fda1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let init = random_population(&problem, 100, &mut rng);
        let out = optimize(init, &problem, 0.0, &OptimizerConfig::new(100, 50), &mut rng);
        let front: Vec<Vec<f64>> = out.iter().map(|o| o.objectives().to_vec()).collect();
        let reference = problem.sample_true_pof(0.0, 500);
        let value = igd(&reference, &front);
        assert!(value < 0.05, "IGD after 50 generations = {value}");
    }

    #[test]
    fn a_perfect_initial_population_stays_near_optimal() {
        // Start on the analytic optimal set. Exact IGD non-regression is
        // not achievable here: parents plus on-front offspring overfill the
        // first front, so crowding truncation must discard some members and
        // the set drifts from the f1-uniform sampling toward the crowding
        // equilibrium (measured: 0.0037 -> about 0.0049-0.0055 across seeds
        // and budgets). What elitism does guarantee is that the population
        // never leaves the front's neighbourhood; a selection bug would
        // push IGD an order of magnitude higher.
        let problem = DynamicProblem::new(ProblemName::Fda1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 100;
        let init: Vec<Individual> = (0..n)
            .map(|i| {
                let mut x = vec![0.0; problem.dimension()];
                x[0] = i as f64 / (n - 1) as f64;
                Individual::new(x)
            })
            .collect();
        let initial_front: Vec<Vec<f64>> = init
            .iter()
            .map(|ind| problem.evaluate(&ind.x, 0.0).unwrap())
            .collect();
        let reference = problem.sample_true_pof(0.0, 500);
        let initial = igd(&reference, &initial_front);
        assert!(initial < 0.005, "perfect init should start tight: {initial}");
        let out = optimize(init, &problem, 0.0, &OptimizerConfig::new(n, 50), &mut rng);
        let front: Vec<Vec<f64>> = out.iter().map(|o| o.objectives().to_vec()).collect();
        let after = igd(&reference, &front);
        assert!(
            after <= 0.008,
            "IGD drifted from {initial} to {after}, beyond the crowding equilibrium"
        );
    }

    #[test]
    fn sbx_children_stay_in_bounds_and_contract_with_the_index() {
        let bounds = [(0.0, 1.0); 5];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p1: Vec<f64> = (0..5).map(|_| rng.gen_range(0.2..0.8)).collect();
            let p2: Vec<f64> = (0..5).map(|_| rng.gen_range(0.2..0.8)).collect();
            let (c1, c2) = sbx_pair(&p1, &p2, &bounds, 20.0, 1.0, &mut rng);
            for j in 0..5 {
                assert!((0.0..=1.0).contains(&c1[j]));
                assert!((0.0..=1.0).contains(&c2[j]));
            }
            // A huge distribution index contracts children onto the
            // parents: per variable, the child pair matches the parent
            // pair up to a swap.
            let (t1, t2) = sbx_pair(&p1, &p2, &bounds, 1e6, 1.0, &mut rng);
            for j in 0..5 {
                let mut parents = [p1[j], p2[j]];
                let mut children = [t1[j], t2[j]];
                parents.sort_by(f64::total_cmp);
                children.sort_by(f64::total_cmp);
                assert!((parents[0] - children[0]).abs() < 1e-3);
                assert!((parents[1] - children[1]).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn sbx_without_the_pair_probability_copies_the_parents() {
        let bounds = [(0.0, 1.0); 3];
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let p1 = vec![0.1, 0.5, 0.9];
        let p2 = vec![0.3, 0.3, 0.3];
        let (c1, c2) = sbx_pair(&p1, &p2, &bounds, 20.0, 0.0, &mut rng);
        assert_eq!(c1, p1);
        assert_eq!(c2, p2);
    }

    #[test]
    fn mutation_respects_bounds_and_probability_extremes() {
        let bounds = [(-1.0, 1.0); 8];
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let original: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();

        let mut untouched = original.clone();
        polynomial_mutation(&mut untouched, &bounds, 20.0, 0.0, &mut rng);
        assert_eq!(untouched, original);

        let mut always = original.clone();
        polynomial_mutation(&mut always, &bounds, 20.0, 1.0, &mut rng);
        assert!(always.iter().all(|v| (-1.0..=1.0).contains(v)));
        assert_ne!(always, original, "pm=1 should perturb something");
    }

    #[test]
    #[should_panic(expected = "even")]
    fn odd_population_sizes_are_rejected() {
        let problem = DynamicProblem::new(ProblemName::Fda1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let init = random_population(&problem, 7, &mut rng);
        optimize(init, &problem, 0.0, &OptimizerConfig::new(7, 1), &mut rng);
    }
}
