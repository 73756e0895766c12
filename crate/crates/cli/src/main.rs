//! `rsub`: benchmark harness for the robust-subspace fitters.
//!
//! Exit codes: 0 success, 2 config error, 3 dataset error, 4 numeric
//! failure (non-convergence under --strict).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use robust_subspace_cli::config::RawConfig;
use robust_subspace_cli::error::CliError;
use robust_subspace_cli::loader::{Layout, LayoutConfig};
use robust_subspace_cli::run::{
    oracle_report, run_benchmark, run_convergence_trace, run_feature_sweep, run_oracle_check,
    write_synth_images, BenchConfig, DataSource, Method, SplitRule, SynthSpec,
};
use robust_subspace_cli::textmat;

#[derive(Parser)]
#[command(
    name = "rsub",
    about = "Robust-subspace benchmark harness: PCA, R1-PCA, L1-PCA and their 2-D variants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by the experiment subcommands. Anything left unset falls
/// back to the config file, then to built-in defaults.
#[derive(Args)]
struct Common {
    /// Run configuration file (flat key-value with [method.*] sections)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dataset directory of PGM images; omit to run on synthetic data
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Directory layout: subject subdirectories or flat filenames
    #[arg(long)]
    layout: Option<Layout>,
    /// Comma-separated methods: pca, 2dpca, r1pca, 2dr1pca, l1pca, 2dl1pca
    #[arg(long, value_delimiter = ',')]
    method: Vec<Method>,
    /// Number of features (basis columns) to extract
    #[arg(long)]
    k: Option<usize>,
    /// Training images per subject
    #[arg(long)]
    train_per_subject: Option<usize>,
    /// Split rule: first (file order) or random (seeded)
    #[arg(long)]
    split: Option<SplitRule>,
    /// Seed for random splits and L1 restarts
    #[arg(long)]
    seed: Option<u64>,
    /// Iteration cap for the R1 fitters
    #[arg(long)]
    max_iters: Option<usize>,
    /// Convergence tolerance for the R1 fitters
    #[arg(long)]
    tol: Option<f64>,
    /// Fail (exit 4) when an iterative fitter does not converge
    #[arg(long)]
    strict: bool,
    /// Output directory for results and trace files
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fit every selected method, classify with 1-NN, report accuracy
    /// and timing
    Bench(Common),
    /// Emit the per-iteration convergence trace of one iterative method
    Trace {
        #[command(flatten)]
        common: Common,
    },
    /// Accuracy-versus-feature-count sweep over a k range
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Lowest k in the sweep
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        /// Highest k in the sweep
        #[arg(long)]
        k_max: usize,
    },
    /// Write a synthetic dataset to disk
    Synth {
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Kind of dataset: a PGM image tree or a line-plus-outliers
        /// text matrix
        #[arg(long, default_value = "images")]
        kind: String,
        #[arg(long, default_value_t = 8)]
        subjects: usize,
        #[arg(long, default_value_t = 10)]
        per_subject: usize,
        #[arg(long, default_value_t = 12)]
        rows: usize,
        #[arg(long, default_value_t = 10)]
        cols: usize,
        #[arg(long, default_value_t = 12.0)]
        noise_sigma: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Compare fitted L1 components against brute-force polarity
    /// enumeration on random small instances
    Oracle {
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Samples per instance (capped at 20 by the exact oracle)
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Ambient dimension per instance
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        /// Attainment threshold on fitted/exact objective ratio
        #[arg(long, default_value_t = 0.99)]
        threshold: f64,
    },
}

fn build_config(common: &Common) -> Result<BenchConfig, CliError> {
    let mut cfg = BenchConfig::default();
    if let Some(path) = &common.config {
        let raw = RawConfig::load(path)?;
        cfg.apply_file(&raw)?;
    }
    if let Some(root) = &common.dataset {
        cfg.source = DataSource::PgmDir(LayoutConfig::new(
            root.clone(),
            common.layout.unwrap_or(Layout::Subdirs),
        ));
    } else if let (Some(layout), DataSource::PgmDir(lc)) = (common.layout, &mut cfg.source) {
        lc.layout = layout;
    }
    if !common.method.is_empty() {
        cfg.methods = common.method.clone();
    }
    if let Some(k) = common.k {
        cfg.k = k;
    }
    if let Some(t) = common.train_per_subject {
        cfg.train_per_subject = t;
    }
    if let Some(split) = common.split {
        cfg.split = split;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(max_iters) = common.max_iters {
        cfg.max_iters = max_iters;
    }
    if let Some(tol) = common.tol {
        cfg.tol = tol;
    }
    if common.strict {
        cfg.strict = true;
    }
    if let Some(out) = &common.out {
        cfg.out_dir = Some(out.clone());
    }
    Ok(cfg)
}

fn write_or_print(out: &Option<PathBuf>, name: &str, content: &str) -> Result<(), CliError> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, content)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bench(common) => {
            let cfg = build_config(&common)?;
            let doc = run_benchmark(&cfg)?;
            print!("{}", doc.to_text());
            if let Some(dir) = &cfg.out_dir {
                println!("wrote {}", dir.join("results.txt").display());
            }
            Ok(())
        }
        Command::Trace { common } => {
            let cfg = build_config(&common)?;
            if cfg.methods.len() != 1 {
                return Err(CliError::config(
                    "trace needs exactly one method (--method r1pca, for example)",
                ));
            }
            let method = cfg.methods[0];
            let csv = run_convergence_trace(&cfg, method)?;
            write_or_print(&cfg.out_dir, &format!("trace_{}.csv", method.name()), &csv)
        }
        Command::Sweep { common, k_min, k_max } => {
            let cfg = build_config(&common)?;
            if k_min == 0 || k_min > k_max {
                return Err(CliError::config("sweep needs 1 <= k-min <= k-max"));
            }
            let csv = run_feature_sweep(&cfg, k_min..=k_max)?;
            write_or_print(&cfg.out_dir, "sweep.csv", &csv)
        }
        Command::Synth { out, kind, subjects, per_subject, rows, cols, noise_sigma, seed } => {
            match kind.as_str() {
                "images" => {
                    fs::create_dir_all(&out)?;
                    let spec =
                        SynthSpec { subjects, per_subject, rows, cols, noise_sigma, seed };
                    write_synth_images(&out, &spec)?;
                    println!("wrote {} subjects x {} images under {}",
                        subjects, per_subject, out.display());
                    Ok(())
                }
                "line" => {
                    fs::create_dir_all(&out)?;
                    let dir: Vec<f64> = {
                        let mut v = vec![0.0; rows.max(2)];
                        v[0] = 1.0;
                        v
                    };
                    let ds = robust_subspace::dataset::synth_line_with_outliers(
                        200, 10, &dir, 0.05, 2.5, seed,
                    );
                    let path = out.join("line.txt");
                    textmat::write_matrix(&path, ds.data())?;
                    println!("wrote {}", path.display());
                    Ok(())
                }
                other => Err(CliError::config(format!(
                    "unknown synth kind '{other}' (expected 'images' or 'line')"
                ))),
            }
        }
        Command::Oracle { instances, n, d, seed, restarts, threshold } => {
            let results = run_oracle_check(instances, n, d, seed, restarts)?;
            print!("{}", oracle_report(&results, threshold));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rsub: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
