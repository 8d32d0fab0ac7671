//! End-to-end experiment orchestration: the dynamic optimization loop per
//! cell, the (problem x setting x seed x variant) grid, change detection,
//! and CSV persistence and aggregation.
//!
//! Each cell runs one long settling burst in the initial environment and
//! then a fixed number of environment changes. At every change the `rtlp`
//! variant retrains the transfer ensemble from the outgoing population and
//! seeds the optimizer's next start; `plain` carries the population across
//! unchanged; `random-restart` draws a fresh uniform population. Cells are
//! independent and run in parallel; report writing stays on one thread.

use crate::benchmark::{splitmix64, DynamicProblem, ProblemName};
use crate::boost::{self, SvrLearner};
use crate::metrics::{self, EnvRecord, IgdVariant, RunReport};
use crate::optimizer::{budget_for_environment, optimizer_by_name, OptimizerConfig, StaticOptimizer};
use crate::pareto::Individual;
use crate::seeder::predict_initial_population;
use crate::{Error, Variant};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

/// Reference-front sample counts used for IGD and MS.
const POF_SAMPLES_BIOBJECTIVE: usize = 500;
const POF_SAMPLES_TRIOBJECTIVE: usize = 1024;

/// One dynamic setting: generations per environment and change severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Setting {
    pub tau_t: u32,
    pub n_t: u32,
}

/// How the loop decides that the environment has changed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChangeDetection {
    /// Trust the change schedule (every `tau_t` generations).
    #[default]
    Schedule,
    /// Re-evaluate a 10% sentinel panel of the population and compare.
    Sentinel,
}

/// Full description of an experiment grid. The TOML config file mirrors
/// these fields one to one; every field has a default so partial configs
/// stay valid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_problems")]
    pub problems: Vec<String>,
    #[serde(default = "default_settings")]
    pub settings: Vec<Setting>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_population_size")]
    pub population_size: usize,
    /// Boosting rounds `K`.
    #[serde(default = "default_boosting_rounds")]
    pub boosting_rounds: usize,
    /// Fresh samples evaluated under the new landscape per change.
    #[serde(default = "default_target_count")]
    pub target_count: usize,
    /// Candidate-pool size screened by the ensemble per change.
    #[serde(default = "default_test_count")]
    pub test_count: usize,
    #[serde(default = "default_optimizer")]
    pub optimizer: String,
    #[serde(default = "default_variants")]
    pub variants: Vec<Variant>,
    #[serde(default = "default_out_dir")]
    pub out_dir: String,
    #[serde(default)]
    pub igd_variant: IgdVariant,
    #[serde(default)]
    pub change_detection: ChangeDetection,
    /// Number of environment changes; `None` means `3 * n_t`.
    #[serde(default)]
    pub changes: Option<u32>,
}

fn default_problems() -> Vec<String> {
    ProblemName::ALL.iter().map(|p| p.as_str().to_string()).collect()
}
fn default_settings() -> Vec<Setting> {
    vec![Setting { tau_t: 5, n_t: 10 }]
}
fn default_seeds() -> Vec<u64> {
    (0..10).collect()
}
fn default_population_size() -> usize {
    100
}
fn default_boosting_rounds() -> usize {
    10
}
fn default_target_count() -> usize {
    50
}
fn default_test_count() -> usize {
    500
}
fn default_optimizer() -> String {
    "nsga2".to_string()
}
fn default_variants() -> Vec<Variant> {
    vec![Variant::Rtlp, Variant::Plain]
}
fn default_out_dir() -> String {
    "results".to_string()
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        toml::from_str("").expect("empty config uses the field defaults")
    }
}

impl ExperimentConfig {
    /// Parse a TOML config file.
    pub fn from_path(path: &Path) -> Result<Self, Error> {
        Ok(toml::from_str(&fs::read_to_string(path)?)?)
    }

    /// Problems named in the config, resolved; fails fast on a bad name.
    pub fn resolved_problems(&self) -> Result<Vec<ProblemName>, Error> {
        self.problems.iter().map(|p| p.parse()).collect()
    }

    /// Number of environment changes per run.
    pub fn changes_for(&self, setting: Setting) -> u32 {
        self.changes.unwrap_or(3 * setting.n_t)
    }

    fn validate(&self) -> Result<(), Error> {
        let invalid = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.problems.is_empty() {
            return invalid("no problems selected");
        }
        if self.settings.is_empty() {
            return invalid("no (tau_t, n_t) settings selected");
        }
        if self.settings.iter().any(|s| s.tau_t < 1 || s.n_t < 1) {
            return invalid("tau_t and n_t must be at least 1");
        }
        if self.seeds.is_empty() {
            return invalid("no seeds selected");
        }
        if self.variants.is_empty() {
            return invalid("no variants selected");
        }
        if self.population_size < 2 || self.population_size % 2 != 0 {
            return invalid("population_size must be even and at least 2");
        }
        if self.boosting_rounds < 1 {
            return invalid("boosting_rounds must be at least 1");
        }
        if self.target_count < 1 {
            return invalid("target_count must be at least 1");
        }
        if self.test_count < self.population_size {
            return invalid("test_count must be at least population_size");
        }
        self.resolved_problems()?;
        optimizer_by_name(&self.optimizer)?;
        Ok(())
    }
}

/// Run the whole grid, write one CSV per cell into `out_dir`, and return
/// the reports in grid order.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<RunReport>, Error> {
    cfg.validate()?;
    let problems = cfg.resolved_problems()?;
    let mut cells = Vec::new();
    for &problem in &problems {
        for &setting in &cfg.settings {
            for &seed in &cfg.seeds {
                for &variant in &cfg.variants {
                    cells.push((problem, setting, seed, variant));
                }
            }
        }
    }
    let reports: Vec<RunReport> = cells
        .par_iter()
        .map(|&(problem, setting, seed, variant)| run_cell(cfg, problem, setting, seed, variant))
        .collect();

    let dir = Path::new(&cfg.out_dir);
    fs::create_dir_all(dir)?;
    for report in &reports {
        write_report_csv(dir, report)?;
    }
    Ok(reports)
}

/// Cell RNG seed: mixes the run seed with the problem and setting but not
/// the variant, so ablation variants share the initial trajectory.
fn cell_seed(problem: ProblemName, setting: Setting, seed: u64) -> u64 {
    let mut z = splitmix64(seed ^ 0x9e37_79b9_7f4a_7c15);
    z = splitmix64(z ^ (problem as u64).wrapping_mul(0x100_0000_01b3));
    z = splitmix64(z ^ u64::from(setting.tau_t) << 32 ^ u64::from(setting.n_t));
    z
}

/// Run one `(problem, setting, seed, variant)` cell.
pub fn run_cell(
    cfg: &ExperimentConfig,
    problem_name: ProblemName,
    setting: Setting,
    seed: u64,
    variant: Variant,
) -> RunReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed(problem_name, setting, seed));
    let problem = DynamicProblem::new(problem_name).with_seed(cell_seed(problem_name, setting, seed));
    let optimizer = optimizer_by_name(&cfg.optimizer).expect("config was validated");
    let learner = SvrLearner::default();
    let n = cfg.population_size;
    let pof_samples = if problem.objectives() == 2 {
        POF_SAMPLES_BIOBJECTIVE
    } else {
        POF_SAMPLES_TRIOBJECTIVE
    };

    let mut records = Vec::new();

    // Initial environment: uniform population, long settling burst.
    let budget = budget_for_environment(setting.tau_t, true);
    let init = uniform_population(&problem, n, &mut rng);
    let mut population = optimize_with(
        optimizer.as_ref(),
        init,
        &problem,
        0.0,
        n,
        budget,
        &mut rng,
    );
    let mut evals = (n as u64) * (u64::from(budget) + 1);
    records.push(measure(&problem, 0, 0.0, &population, evals, pof_samples, cfg.igd_variant));

    for env in 1..=cfg.changes_for(setting) {
        let t = f64::from(env) / f64::from(setting.n_t);
        evals = 0;

        let changed = match cfg.change_detection {
            ChangeDetection::Schedule => true,
            ChangeDetection::Sentinel => {
                evals += sentinel_count(n) as u64;
                detect_change(&population, &problem, t, &mut rng)
            }
        };

        let init = if !changed {
            // A missed change degrades to carrying the population: the
            // loop keeps optimizing, unaware, under the new landscape.
            population
        } else {
            match variant {
                Variant::Rtlp => {
                    let training =
                        boost::build_training_set(&population, &problem, t, cfg.target_count, &mut rng);
                    evals += cfg.target_count as u64;
                    let ensemble = boost::train(&learner, &training, cfg.boosting_rounds);
                    predict_initial_population(&ensemble, &problem, n, cfg.test_count, &mut rng)
                }
                Variant::Plain => population,
                Variant::RandomRestart => uniform_population(&problem, n, &mut rng),
            }
        };

        let budget = budget_for_environment(setting.tau_t, false);
        population = optimize_with(optimizer.as_ref(), init, &problem, t, n, budget, &mut rng);
        evals += (n as u64) * (u64::from(budget) + 1);
        records.push(measure(&problem, env, t, &population, evals, pof_samples, cfg.igd_variant));
    }

    RunReport {
        problem: problem_name.as_str().to_string(),
        tau_t: setting.tau_t,
        n_t: setting.n_t,
        seed,
        variant,
        records,
    }
}

fn optimize_with(
    optimizer: &dyn StaticOptimizer,
    init: Vec<Individual>,
    problem: &DynamicProblem,
    t: f64,
    n: usize,
    generations: u32,
    rng: &mut ChaCha8Rng,
) -> Vec<Individual> {
    let cfg = OptimizerConfig::new(n, generations);
    optimizer.optimize(init, problem, t, &cfg, rng)
}

fn uniform_population(problem: &DynamicProblem, n: usize, rng: &mut impl Rng) -> Vec<Individual> {
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

fn measure(
    problem: &DynamicProblem,
    env_index: u32,
    t: f64,
    population: &[Individual],
    evals_used: u64,
    pof_samples: usize,
    igd_variant: IgdVariant,
) -> EnvRecord {
    let front: Vec<Vec<f64>> = population.iter().map(|p| p.objectives().to_vec()).collect();
    let reference = problem.sample_true_pof(t, pof_samples);
    let extremes = metrics::objective_extremes(&reference);
    EnvRecord {
        env_index,
        t,
        igd: metrics::igd_with(igd_variant, &reference, &front),
        ms: metrics::maximum_spread(&extremes, &front),
        evals_used,
    }
}

/// Sentinel panel size: 10% of the population, rounded up.
fn sentinel_count(population_len: usize) -> usize {
    population_len.div_ceil(10)
}

/// Re-evaluate a 10% sentinel panel under `t_new`; report a change when
/// any objective moved by more than 1e-12 against the stored values.
pub fn detect_change(
    population: &[Individual],
    problem: &DynamicProblem,
    t_new: f64,
    rng: &mut impl Rng,
) -> bool {
    assert!(!population.is_empty());
    let panel = rand::seq::index::sample(rng, population.len(), sentinel_count(population.len()));
    panel.into_iter().any(|i| {
        let fresh = problem
            .evaluate(&population[i].x, t_new)
            .expect("sentinels stay inside the box");
        population[i]
            .objectives()
            .iter()
            .zip(&fresh)
            .any(|(old, new)| (old - new).abs() > 1e-12)
    })
}

/// One CSV row of the per-environment report schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct CsvRow {
    problem: String,
    tau_t: u32,
    n_t: u32,
    seed: u64,
    variant: Variant,
    env_index: u32,
    t: f64,
    igd: f64,
    ms: f64,
    evals_used: u64,
}

/// Per-cell report file name; rerunning a cell overwrites only its file.
pub fn report_filename(report: &RunReport) -> String {
    format!(
        "{}_tau{}_nt{}_seed{}_{}.csv",
        report.problem, report.tau_t, report.n_t, report.seed, report.variant
    )
}

/// Write one run's per-environment rows to `<dir>/<cell>.csv`.
pub fn write_report_csv(dir: &Path, report: &RunReport) -> Result<(), Error> {
    let mut writer = csv::Writer::from_path(dir.join(report_filename(report)))?;
    for record in &report.records {
        writer.serialize(CsvRow {
            problem: report.problem.clone(),
            tau_t: report.tau_t,
            n_t: report.n_t,
            seed: report.seed,
            variant: report.variant,
            env_index: record.env_index,
            t: record.t,
            igd: record.igd,
            ms: record.ms,
            evals_used: record.evals_used,
        })?;
    }
    writer.flush().map_err(Error::from)?;
    Ok(())
}

/// Read every per-cell report CSV in `dir` (the aggregate `summary.csv` is
/// skipped) and reassemble the reports, sorted by cell key.
pub fn read_reports_csv(dir: &Path) -> Result<Vec<RunReport>, Error> {
    let mut grouped: BTreeMap<(String, u32, u32, u64, String), Vec<CsvRow>> = BTreeMap::new();
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|ext| ext == "csv")
                && p.file_name().is_some_and(|n| n != "summary.csv")
        })
        .collect();
    paths.sort();
    for path in paths {
        let mut reader = csv::Reader::from_path(&path)?;
        for row in reader.deserialize::<CsvRow>() {
            let row = row?;
            let key = (
                row.problem.clone(),
                row.tau_t,
                row.n_t,
                row.seed,
                row.variant.to_string(),
            );
            grouped.entry(key).or_default().push(row);
        }
    }
    let mut reports = Vec::with_capacity(grouped.len());
    for (_, mut rows) in grouped {
        rows.sort_by_key(|r| r.env_index);
        let first = &rows[0];
        reports.push(RunReport {
            problem: first.problem.clone(),
            tau_t: first.tau_t,
            n_t: first.n_t,
            seed: first.seed,
            variant: first.variant,
            records: rows
                .iter()
                .map(|r| EnvRecord {
                    env_index: r.env_index,
                    t: r.t,
                    igd: r.igd,
                    ms: r.ms,
                    evals_used: r.evals_used,
                })
                .collect(),
        });
    }
    Ok(reports)
}

/// One aggregated table row: seed statistics of a (problem, setting,
/// variant) group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub problem: String,
    pub tau_t: u32,
    pub n_t: u32,
    pub variant: Variant,
    pub migd_mean: f64,
    pub migd_std: f64,
    pub ms_mean: f64,
    pub ms_std: f64,
    pub n_seeds: usize,
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation (n-1 denominator); 0 for a single value.
fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64).sqrt()
}

fn problem_order(name: &str) -> usize {
    ProblemName::ALL
        .iter()
        .position(|p| p.as_str() == name)
        .unwrap_or(ProblemName::ALL.len())
}

fn variant_order(variant: Variant) -> usize {
    Variant::ALL.iter().position(|&v| v == variant).unwrap()
}

/// Collapse per-seed reports into per-(problem, setting, variant) rows,
/// sorted for stable table output.
pub fn aggregate(reports: &[RunReport]) -> Vec<AggregateRow> {
    let mut groups: BTreeMap<(usize, u32, u32, usize), Vec<&RunReport>> = BTreeMap::new();
    for report in reports {
        let key = (
            problem_order(&report.problem),
            report.tau_t,
            report.n_t,
            variant_order(report.variant),
        );
        groups.entry(key).or_default().push(report);
    }
    groups
        .into_values()
        .map(|group| {
            let migds: Vec<f64> = group.iter().map(|r| r.migd()).collect();
            let mss: Vec<f64> = group.iter().map(|r| r.mean_ms()).collect();
            let first = group[0];
            AggregateRow {
                problem: first.problem.clone(),
                tau_t: first.tau_t,
                n_t: first.n_t,
                variant: first.variant,
                migd_mean: mean(&migds),
                migd_std: sample_std(&migds),
                ms_mean: mean(&mss),
                ms_std: sample_std(&mss),
                n_seeds: group.len(),
            }
        })
        .collect()
}

/// Write the aggregate rows as `summary.csv`-shaped output.
pub fn write_aggregate_csv(path: &Path, rows: &[AggregateRow]) -> Result<(), Error> {
    let mut writer = csv::Writer::from_path(path)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(Error::from)?;
    Ok(())
}

/// Render MIGD and MS tables per setting, one problem per line and one
/// variant per column; `*` marks the best variant of each line (lowest
/// mean MIGD, highest mean MS).
pub fn render_tables(rows: &[AggregateRow]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let mut settings: Vec<(u32, u32)> = rows.iter().map(|r| (r.tau_t, r.n_t)).collect();
    settings.sort_unstable();
    settings.dedup();

    for (tau_t, n_t) in settings {
        let block: Vec<&AggregateRow> = rows
            .iter()
            .filter(|r| r.tau_t == tau_t && r.n_t == n_t)
            .collect();
        let mut variants: Vec<Variant> = block.iter().map(|r| r.variant).collect();
        variants.sort_by_key(|&v| variant_order(v));
        variants.dedup();
        let mut problems: Vec<&str> = block.iter().map(|r| r.problem.as_str()).collect();
        problems.sort_by_key(|p| problem_order(p));
        problems.dedup();

        for (metric, title, lower_is_better) in [
            ("migd", "MIGD", true),
            ("ms", "MS", false),
        ] {
            writeln!(out, "{title} mean(std) at tau_t={tau_t}, n_t={n_t}").unwrap();
            write!(out, "{:<10}", "problem").unwrap();
            for v in &variants {
                write!(out, " {:<22}", v.to_string()).unwrap();
            }
            out.push('\n');
            for problem in &problems {
                write!(out, "{problem:<10}").unwrap();
                let line: Vec<(&&AggregateRow, f64, f64)> = block
                    .iter()
                    .filter(|r| r.problem == *problem)
                    .map(|r| {
                        if metric == "migd" {
                            (r, r.migd_mean, r.migd_std)
                        } else {
                            (r, r.ms_mean, r.ms_std)
                        }
                    })
                    .collect();
                let best = line
                    .iter()
                    .map(|&(_, m, _)| m)
                    .fold(if lower_is_better { f64::INFINITY } else { f64::NEG_INFINITY }, |a, b| {
                        if lower_is_better {
                            a.min(b)
                        } else {
                            a.max(b)
                        }
                    });
                for v in &variants {
                    match line.iter().find(|(r, _, _)| r.variant == *v) {
                        Some(&(_, m, s)) => {
                            let mark = if m == best { "*" } else { "" };
                            write!(out, " {:<22}", format!("{m:.4}({s:.4}){mark}")).unwrap();
                        }
                        None => write!(out, " {:<22}", "-").unwrap(),
                    }
                }
                out.push('\n');
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn tiny_config() -> ExperimentConfig {
        ExperimentConfig {
            problems: vec!["FDA1".to_string()],
            settings: vec![Setting { tau_t: 2, n_t: 2 }],
            seeds: vec![0],
            population_size: 10,
            boosting_rounds: 2,
            target_count: 5,
            test_count: 20,
            variants: vec![Variant::Rtlp, Variant::Plain],
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn defaults_mirror_the_protocol() {
        let cfg = ExperimentConfig::default();
        assert_eq!(cfg.problems.len(), 8);
        assert_eq!(cfg.settings, vec![Setting { tau_t: 5, n_t: 10 }]);
        assert_eq!(cfg.seeds, (0..10).collect::<Vec<_>>());
        assert_eq!(cfg.population_size, 100);
        assert_eq!(cfg.boosting_rounds, 10);
        assert_eq!(cfg.target_count, 50);
        assert_eq!(cfg.test_count, 500);
        assert_eq!(cfg.optimizer, "nsga2");
        assert_eq!(cfg.variants, vec![Variant::Rtlp, Variant::Plain]);
        assert_eq!(cfg.change_detection, ChangeDetection::Schedule);
        assert_eq!(cfg.changes_for(Setting { tau_t: 5, n_t: 10 }), 30);
    }

    #[test]
    fn partial_toml_configs_fill_in_defaults() {
        let cfg: ExperimentConfig = toml::from_str(
            r#"
            problems = ["FDA1", "dMOP2"]
            settings = [{ tau_t = 10, n_t = 10 }]
            seeds = [0, 1, 2]
            variants = ["rtlp", "random-restart"]
            change_detection = "sentinel"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.problems, vec!["FDA1", "dMOP2"]);
        assert_eq!(cfg.population_size, 100);
        assert_eq!(
            cfg.variants,
            vec![Variant::Rtlp, Variant::RandomRestart]
        );
        assert_eq!(cfg.change_detection, ChangeDetection::Sentinel);
        assert!(cfg.changes.is_none());
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let err = toml::from_str::<ExperimentConfig>("popsize = 10").unwrap_err();
        assert!(err.to_string().contains("popsize"));
    }

    #[test]
    fn validation_catches_bad_names_before_any_run() {
        let mut cfg = tiny_config();
        cfg.problems = vec!["FDA9".to_string()];
        assert!(matches!(run(&cfg), Err(Error::UnknownProblem(_))));
        let mut cfg = tiny_config();
        cfg.optimizer = "rmmeda".to_string();
        assert!(matches!(run(&cfg), Err(Error::ReservedOptimizer(_))));
        let mut cfg = tiny_config();
        cfg.test_count = 5;
        assert!(matches!(run(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn budget_accounting_follows_the_protocol() {
        // tau_t=2, n_t=2 -> 6 changes: 7 records, 50 + 6*2 = 62 generations.
        let cfg = tiny_config();
        let report = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 0, Variant::Plain);
        assert_eq!(report.records.len(), 7);
        let generations: u32 = report
            .records
            .iter()
            .map(|r| if r.env_index == 0 { 50 } else { 2 })
            .sum();
        assert_eq!(generations, 62);
        // Evaluations: N*(G+1) per environment, nothing else for plain.
        let n = cfg.population_size as u64;
        assert_eq!(report.records[0].evals_used, n * 51);
        for r in &report.records[1..] {
            assert_eq!(r.evals_used, n * 3);
        }
        // rtlp adds exactly target_count per change.
        let rtlp = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 0, Variant::Rtlp);
        assert_eq!(rtlp.records[0].evals_used, n * 51);
        for r in &rtlp.records[1..] {
            assert_eq!(r.evals_used, n * 3 + cfg.target_count as u64);
        }
    }

    #[test]
    fn environment_times_follow_the_severity() {
        let cfg = tiny_config();
        let report = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 0, Variant::Plain);
        let times: Vec<f64> = report.records.iter().map(|r| r.t).collect();
        assert_eq!(times, vec![0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]);
    }

    #[test]
    fn cells_are_deterministic_and_variants_share_the_initial_burst() {
        let cfg = tiny_config();
        let a = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 3, Variant::Rtlp);
        let b = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 3, Variant::Rtlp);
        assert_eq!(a, b);
        let plain = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 3, Variant::Plain);
        assert_eq!(
            a.records[0], plain.records[0],
            "variants must share the t=0 trajectory"
        );
        let other_seed = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 4, Variant::Rtlp);
        assert_ne!(a.records, other_seed.records);
    }

    #[test]
    fn schedule_mode_change_detection_spots_real_changes() {
        let problem = DynamicProblem::new(ProblemName::Fda1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let population: Vec<Individual> = (0..20)
            .map(|_| {
                let x: Vec<f64> = problem
                    .bounds()
                    .iter()
                    .map(|&(lo, hi)| rng.gen_range(lo..hi))
                    .collect();
                let f = problem.evaluate(&x, 0.0).unwrap();
                Individual { x, f: Some(f), t: 0.0 }
            })
            .collect();
        // Same time: no change. Shifted time: FDA1 moves every objective.
        assert!(!detect_change(&population, &problem, 0.0, &mut rng));
        assert!(detect_change(&population, &problem, 0.5, &mut rng));
    }

    #[test]
    fn sentinel_mode_charges_probes_and_still_tracks() {
        let mut cfg = tiny_config();
        cfg.change_detection = ChangeDetection::Sentinel;
        cfg.variants = vec![Variant::Rtlp];
        let report = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 0, Variant::Rtlp);
        let n = cfg.population_size as u64;
        let probe = sentinel_count(cfg.population_size) as u64;
        for r in &report.records[1..] {
            // Probes are always charged; the transfer set only on detection.
            assert!(
                r.evals_used == n * 3 + probe + cfg.target_count as u64
                    || r.evals_used == n * 3 + probe,
                "unexpected evals_used {}",
                r.evals_used
            );
        }
    }

    #[test]
    fn csv_round_trip_preserves_reports_bitwise() {
        let cfg = tiny_config();
        let dir = tempdir().unwrap();
        let mut cfg = cfg;
        cfg.out_dir = dir.path().to_string_lossy().into_owned();
        let reports = run(&cfg).unwrap();
        assert_eq!(reports.len(), 2);
        let mut loaded = read_reports_csv(dir.path()).unwrap();
        loaded.sort_by_key(|r| variant_order(r.variant));
        let mut expected = reports.clone();
        expected.sort_by_key(|r| variant_order(r.variant));
        assert_eq!(loaded, expected);
    }

    #[test]
    fn csv_schema_matches_the_contract() {
        let cfg = tiny_config();
        let dir = tempdir().unwrap();
        let report = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 0, Variant::Plain);
        write_report_csv(dir.path(), &report).unwrap();
        let path = dir.path().join("FDA1_tau2_nt2_seed0_plain.csv");
        let text = fs::read_to_string(path).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(
            header,
            "problem,tau_t,n_t,seed,variant,env_index,t,igd,ms,evals_used"
        );
        assert_eq!(text.lines().count(), 1 + report.records.len());
    }

    #[test]
    fn rerunning_a_cell_overwrites_only_its_file() {
        let cfg = tiny_config();
        let dir = tempdir().unwrap();
        let a = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 0, Variant::Plain);
        let b = run_cell(&cfg, ProblemName::Fda1, cfg.settings[0], 1, Variant::Plain);
        write_report_csv(dir.path(), &a).unwrap();
        write_report_csv(dir.path(), &b).unwrap();
        let before = fs::read_to_string(dir.path().join(report_filename(&b))).unwrap();
        write_report_csv(dir.path(), &a).unwrap();
        let after = fs::read_to_string(dir.path().join(report_filename(&b))).unwrap();
        assert_eq!(before, after);
        assert_eq!(read_reports_csv(dir.path()).unwrap().len(), 2);
    }

    #[test]
    fn aggregation_computes_seed_statistics() {
        let mk = |seed: u64, variant: Variant, igd: f64, ms: f64| RunReport {
            problem: "FDA1".to_string(),
            tau_t: 5,
            n_t: 10,
            seed,
            variant,
            records: vec![EnvRecord {
                env_index: 0,
                t: 0.0,
                igd,
                ms,
                evals_used: 100,
            }],
        };
        let reports = vec![
            mk(0, Variant::Rtlp, 0.1, 0.9),
            mk(1, Variant::Rtlp, 0.3, 0.7),
            mk(0, Variant::Plain, 0.4, 0.6),
            mk(1, Variant::Plain, 0.6, 0.4),
        ];
        let rows = aggregate(&reports);
        assert_eq!(rows.len(), 2);
        let rtlp = &rows[0];
        assert_eq!(rtlp.variant, Variant::Rtlp);
        assert_eq!(rtlp.n_seeds, 2);
        assert!((rtlp.migd_mean - 0.2).abs() < 1e-15);
        // Sample std of {0.1, 0.3} is sqrt(0.02).
        assert!((rtlp.migd_std - 0.02_f64.sqrt()).abs() < 1e-12);
        assert!((rtlp.ms_mean - 0.8).abs() < 1e-15);

        let table = render_tables(&rows);
        assert!(table.contains("MIGD"), "{table}");
        assert!(table.contains("0.2000(0.1414)*"), "{table}");
        // MS marks the other direction: rtlp has the higher mean.
        assert!(table.contains("0.8000(0.1414)*"), "{table}");
    }

    #[test]
    fn a_tiny_end_to_end_grid_shows_the_ablation_signal() {
        // Not the acceptance-grade grid, just a smoke check that rtlp
        // produces finite, comparable numbers next to plain.
        let cfg = tiny_config();
        let dir = tempdir().unwrap();
        let mut cfg = cfg;
        cfg.out_dir = dir.path().to_string_lossy().into_owned();
        let reports = run(&cfg).unwrap();
        for report in &reports {
            assert!(report.migd().is_finite());
            assert!((0.0..=1.0 + 1e-12).contains(&report.mean_ms()));
        }
    }
}
