//! One ablation cell end to end: the same problem, seed, and budget run
//! once with transfer seeding (rtlp) and once carrying the population
//! across changes (plain), with per-environment reports written as CSV.
//!
//! ```bash
//! cargo run --release --example ablation_cell
//! ```

use rtlp::benchmark::ProblemName;
use rtlp::runner::{run_cell, write_report_csv, ExperimentConfig, Setting};
use rtlp::Variant;
use std::fs;
use std::path::Path;

fn main() {
    // dMOP3 at (tau_t, n_t) = (5, 10): 30 changes, 5 generations each,
    // after a 50-generation settling burst.
    let cfg = ExperimentConfig {
        problems: vec!["dMOP3".to_string()],
        settings: vec![Setting { tau_t: 5, n_t: 10 }],
        seeds: vec![0],
        ..ExperimentConfig::default()
    };
    let setting = cfg.settings[0];

    println!("running dMOP3 seed 0, rtlp vs plain ({} changes)...", cfg.changes_for(setting));
    let rtlp = run_cell(&cfg, ProblemName::DMop3, setting, 0, Variant::Rtlp);
    let plain = run_cell(&cfg, ProblemName::DMop3, setting, 0, Variant::Plain);

    // Both variants share the very same initial environment; they diverge
    // at the first change.
    assert_eq!(rtlp.records[0], plain.records[0]);

    println!("\n env      t   IGD rtlp  IGD plain");
    for (r, p) in rtlp.records.iter().zip(&plain.records).step_by(3) {
        println!(
            " {:>3}  {:>4.1}    {:>7.4}    {:>7.4}",
            r.env_index, r.t, r.igd, p.igd
        );
    }

    println!("\nper-run summary:");
    println!(
        "  rtlp : MIGD {:.4}  mean MS {:.4}  {} evaluations",
        rtlp.migd(),
        rtlp.mean_ms(),
        rtlp.total_evaluations()
    );
    println!(
        "  plain: MIGD {:.4}  mean MS {:.4}  {} evaluations",
        plain.migd(),
        plain.mean_ms(),
        plain.total_evaluations()
    );

    // Persist the two cells the same way `rtlp run` does.
    let dir = Path::new("target/ablation_cell");
    fs::create_dir_all(dir).unwrap();
    write_report_csv(dir, &rtlp).unwrap();
    write_report_csv(dir, &plain).unwrap();
    println!("\nwrote per-environment CSVs under {}", dir.display());
}
