//! A reproducible experiment from JSON, written to CSV, JSON and plot data.

use secretary_rank::harness::{emit_report, run_experiment, ExperimentConfig};

fn main() -> secretary_rank::Result<()> {
    let dir = std::env::temp_dir().join("secretary-rank-example");
    std::fs::create_dir_all(&dir)?;
    let config = format!(
        r#"{{
            "algorithm": "dense",
            "sizes": [256, 512, 1024, 2048],
            "trials": 100,
            "master_seed": 42,
            "output": {{
                "results_csv": "{0}/results.csv",
                "summary_json": "{0}/summary.json",
                "plot_data": "{0}/plot.dat"
            }}
        }}"#,
        dir.display()
    );
    let cfg = ExperimentConfig::from_json(&config)?;
    let report = run_experiment(&cfg)?;
    for g in &report.groups {
        println!(
            "n = {:>5}: mean K = {:>9.1}  95% CI [{:.1}, {:.1}]",
            g.n, g.inversions.mean, g.inversions.ci_low, g.inversions.ci_high
        );
    }
    if let Some(fit) = &report.slope {
        println!("log-log slope {:.3}", fit.slope);
    }
    for path in emit_report(&report, &cfg.output)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
