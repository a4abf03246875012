use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use secretary_rank::analysis::{
    alpha_zero, anti_concentration_scan, f_alpha, g_alpha, height_tail, solve_alpha, write_scan_csv,
    DEVROYE_TAIL_K,
};
use secretary_rank::harness::{
    decomposition_violations, emit_report, run_experiment_with_threads, run_oracle_checks, thread_count,
    ExperimentConfig, MRule,
};
use secretary_rank::instance::{derive_rng, generate_instance_with, ArrivalMode, SeedSpec};
use secretary_rank::rankers::{
    run_online, solve_general_height, write_dense_trace, write_tree_trace, AlgorithmId, AnyRanker, RankerSpec,
};
use secretary_rank::Error;

#[derive(Parser)]
#[command(name = "secretary-rank", version, about = "Online secretary ranking experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a JSON config or from flags.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "dense")]
        algo: String,
        #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// `m = n^beta`; default `m = n`.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        adversarial: bool,
        #[arg(long)]
        results: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Fail with exit code 3 if a trial breaks an invariant or the fitted
        /// slope leaves `--slope-range`.
        #[arg(long)]
        check: bool,
        /// `LOW,HIGH`
        #[arg(long, value_delimiter = ',')]
        slope_range: Option<Vec<f64>>,
    },
    /// Anti-concentration of the hypergeometric pmf at `r = ρ_r n`, `t = ρ_t n`.
    ScanAnticoncentration {
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000,1000000")]
        sizes: Vec<u64>,
        #[arg(long, default_value_t = 0.5)]
        rho_r: f64,
        #[arg(long, default_value_t = 0.5)]
        rho_t: f64,
    },
    /// Solve for the general ranker's tree parameters.
    SolveAlpha {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
    },
    /// Monte Carlo random BST heights and their upper tail.
    BstHeight {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = DEVROYE_TAIL_K)]
        k: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Compare fast structures and metrics against naive versions.
    OracleCheck {
        #[arg(long, default_value_t = 200)]
        cases: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Per-step CSV of one trial.
    Trace {
        #[arg(long, default_value = "dense")]
        algo: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long)]
        height: Option<u32>,
    },
}

enum Failure {
    Config(String),
    Check(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_config() {
            Failure::Config(e.to_string())
        } else {
            Failure::Other(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn algorithm(name: &str) -> Result<AlgorithmId, Failure> {
    AlgorithmId::parse(name).ok_or_else(|| Failure::Config(format!("unknown algorithm `{name}`")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    let threads = thread_count();
    // later pool builds fail harmlessly if one already exists
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Run {
            config,
            algo,
            sizes,
            trials,
            seed,
            beta,
            adversarial,
            results,
            summary,
            plot,
            check,
            slope_range,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
                    ExperimentConfig::from_json(&text)?
                }
                None => {
                    let mut cfg = ExperimentConfig::new(algorithm(&algo)?, sizes, trials, seed);
                    if let Some(beta) = beta {
                        cfg = cfg.with_m_rule(MRule::Power { beta });
                    }
                    if adversarial {
                        cfg = cfg.with_arrival_mode(ArrivalMode::AdversarialMinMax);
                    }
                    cfg
                }
            };
            cfg.output.results_csv = results.or(cfg.output.results_csv);
            cfg.output.summary_json = summary.or(cfg.output.summary_json);
            cfg.output.plot_data = plot.or(cfg.output.plot_data);
            cfg.validate()?;

            let report = run_experiment_with_threads(&cfg, threads)?;
            for path in emit_report(&report, &cfg.output)? {
                eprintln!("wrote {}", path.display());
            }
            writeln!(out, "algo n m trials mean_inversions ci_low ci_high clean_fraction")?;
            for g in &report.groups {
                writeln!(
                    out,
                    "{} {} {} {} {:.3} {:.3} {:.3} {:.4}",
                    g.algorithm, g.n, g.m, g.trials, g.inversions.mean, g.inversions.ci_low, g.inversions.ci_high,
                    g.clean_fraction
                )?;
            }
            if let Some(fit) = &report.slope {
                writeln!(out, "slope {:.4}", fit.slope)?;
            }
            if check {
                let bad = decomposition_violations(&report.trials);
                if bad > 0 {
                    return Err(Failure::Check(format!("{bad} trials break K <= F <= 2K or F <= est + assign")));
                }
                if let Some(range) = slope_range {
                    if range.len() != 2 {
                        return Err(Failure::Config("--slope-range takes LOW,HIGH".into()));
                    }
                    let slope = report
                        .slope
                        .as_ref()
                        .ok_or_else(|| Failure::Check("no slope fit (need three sizes)".into()))?
                        .slope;
                    if !(range[0] <= slope && slope <= range[1]) {
                        return Err(Failure::Check(format!(
                            "slope {slope:.4} outside [{}, {}]",
                            range[0], range[1]
                        )));
                    }
                }
                writeln!(out, "check passed")?;
            }
        }
        Command::ScanAnticoncentration { sizes, rho_r, rho_t } => {
            let rows = anti_concentration_scan(&sizes, rho_r, rho_t)?;
            write_scan_csv(&mut out, &rows)?;
        }
        Command::SolveAlpha { n, m } => {
            let alpha = solve_alpha(n, m)?;
            let solved = solve_general_height(n, m)?;
            writeln!(out, "alpha0 {:.9}", alpha_zero())?;
            writeln!(out, "alpha {alpha:.9}")?;
            writeln!(out, "f_alpha {:.9}", f_alpha(alpha)?)?;
            writeln!(out, "g_alpha {:.9}", g_alpha(alpha)?)?;
            writeln!(out, "height {}", solved.height)?;
            writeln!(out, "leaf_width {}", solved.leaf_width)?;
        }
        Command::BstHeight { n, trials, k, seed } => {
            if n == 0 || trials == 0 {
                return Err(Failure::Config("n and trials must be positive".into()));
            }
            let tail = height_tail(n, trials, k, seed);
            let (lo, hi) = tail.wilson_interval();
            let ln_n = (n as f64).ln();
            writeln!(out, "n {n}")?;
            writeln!(out, "trials {trials}")?;
            writeln!(out, "mean_height {:.4}", tail.mean_height)?;
            writeln!(out, "mean_over_ln_n {:.4}", tail.mean_height / ln_n)?;
            writeln!(out, "max_height {}", tail.max_height)?;
            writeln!(out, "threshold {:.4}", tail.threshold)?;
            writeln!(out, "tail_probability {:.6}", tail.probability)?;
            writeln!(out, "tail_ci95 {lo:.6} {hi:.6}")?;
            writeln!(out, "one_over_n_squared {:.6e}", 1.0 / (n as f64 * n as f64))?;
        }
        Command::OracleCheck { cases, seed } => {
            let checks = run_oracle_checks(cases, seed);
            let mut failed = 0;
            for c in &checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {} ({} cases, {} failures)", c.name, c.cases, c.failures)?;
                failed += usize::from(!c.passed());
            }
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} oracle checks failed")));
            }
        }
        Command::Trace {
            algo,
            n,
            m,
            seed,
            trial,
            height,
        } => {
            let algo = algorithm(&algo)?;
            let m = m.unwrap_or(match algo {
                AlgorithmId::Sparse => {
                    let h = height.unwrap_or_else(|| ((n.max(2) as f64).ln() * 5.0).ceil() as u32).min(62);
                    (1u64 << (h + 1)) - 1
                }
                AlgorithmId::General => (10.0 * n as f64 * (n.max(2) as f64).ln()).ceil() as u64,
                _ => n as u64,
            });
            let mut rng = derive_rng(SeedSpec::new(seed, trial));
            let instance = generate_instance_with(n, m, ArrivalMode::UniformRandom, &mut rng)?;
            let spec = RankerSpec { algorithm: algo, height };
            let mut ranker = AnyRanker::build(spec, n, m, rng)?;
            run_online(ranker.as_ranker(), &instance)?;
            match &ranker {
                AnyRanker::Dense(d) => write_dense_trace(&mut out, d.trace())?,
                AnyRanker::Tree(t) => write_tree_trace(&mut out, t.trace())?,
                AnyRanker::Random(_) => {
                    return Err(Failure::Config("no per-step trace for the random ranker".into()))
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}
