//! The experiment harness: benchmark runs, convergence traces, feature
//! sweeps and the brute-force oracle check.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use robust_subspace::dataset::{
    split_first_k, split_random_k, synth_image_classes, vectorize,
};
use robust_subspace::l1::{brute_force_l1_oracle, fit_2dl1_pca, fit_l1_pca, L1Options};
use robust_subspace::pca::{fit_2dpca, fit_pca};
use robust_subspace::r1::{fit_2dr1_pca, fit_r1_pca, R1Options};
use robust_subspace::recognition::{
    accuracy, nn_classify, project_images, project_vectors, MatrixDistance,
};
use robust_subspace::rng::SplitMix64;
use robust_subspace::{Basis, FitReport, ImageDataset, LabeledSplit, Matrix, VectorDataset};

use crate::config::RawConfig;
use crate::error::CliError;
use crate::loader::{load_pgm_directory, LayoutConfig};
use crate::results::{ResultsDoc, Section};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Pca,
    TwoDPca,
    R1Pca,
    TwoDR1Pca,
    L1Pca,
    TwoDL1Pca,
}

pub const ALL_METHODS: [Method; 6] = [
    Method::Pca,
    Method::TwoDPca,
    Method::R1Pca,
    Method::TwoDR1Pca,
    Method::L1Pca,
    Method::TwoDL1Pca,
];

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Pca => "pca",
            Method::TwoDPca => "2dpca",
            Method::R1Pca => "r1pca",
            Method::TwoDR1Pca => "2dr1pca",
            Method::L1Pca => "l1pca",
            Method::TwoDL1Pca => "2dl1pca",
        }
    }

    pub fn is_two_d(self) -> bool {
        matches!(self, Method::TwoDPca | Method::TwoDR1Pca | Method::TwoDL1Pca)
    }

    pub fn is_iterative(self) -> bool {
        !matches!(self, Method::Pca | Method::TwoDPca)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pca" => Ok(Method::Pca),
            "2dpca" => Ok(Method::TwoDPca),
            "r1pca" => Ok(Method::R1Pca),
            "2dr1pca" => Ok(Method::TwoDR1Pca),
            "l1pca" => Ok(Method::L1Pca),
            "2dl1pca" => Ok(Method::TwoDL1Pca),
            other => Err(format!(
                "unknown method '{other}' (expected pca, 2dpca, r1pca, 2dr1pca, l1pca or 2dl1pca)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitRule {
    First,
    Random,
}

impl std::str::FromStr for SplitRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(SplitRule::First),
            "random" => Ok(SplitRule::Random),
            other => Err(format!("unknown split rule '{other}' (expected 'first' or 'random')")),
        }
    }
}

/// Synthetic multi-subject image stack parameters (the self-contained
/// smoke path when no dataset directory is supplied).
#[derive(Debug, Clone)]
pub struct SynthSpec {
    pub subjects: usize,
    pub per_subject: usize,
    pub rows: usize,
    pub cols: usize,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec { subjects: 8, per_subject: 10, rows: 12, cols: 10, noise_sigma: 12.0, seed: 1 }
    }
}

#[derive(Debug, Clone)]
pub enum DataSource {
    PgmDir(LayoutConfig),
    Synthetic(SynthSpec),
}

/// Per-method overrides from `[method.NAME]` config sections.
#[derive(Debug, Clone, Copy, Default)]
pub struct MethodOverrides {
    pub k: Option<usize>,
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub source: DataSource,
    pub methods: Vec<Method>,
    pub k: usize,
    pub train_per_subject: usize,
    pub split: SplitRule,
    pub seed: u64,
    pub max_iters: usize,
    pub tol: f64,
    pub restarts: usize,
    pub strict: bool,
    pub out_dir: Option<PathBuf>,
    pub overrides: Vec<(Method, MethodOverrides)>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            source: DataSource::Synthetic(SynthSpec::default()),
            methods: ALL_METHODS.to_vec(),
            k: 6,
            train_per_subject: 5,
            split: SplitRule::First,
            seed: 0,
            max_iters: 120,
            tol: robust_subspace::tol::R1_CHANGE,
            restarts: 3,
            strict: false,
            out_dir: None,
            overrides: Vec::new(),
        }
    }
}

const GLOBAL_KEYS: &[&str] = &[
    "dataset", "layout", "extension", "per_subject", "methods", "k", "train_per_subject",
    "split", "seed", "max_iters", "tol", "restarts", "strict", "out",
    "synth_subjects", "synth_per_subject", "synth_rows", "synth_cols", "synth_noise", "synth_seed",
];
const SECTION_KEYS: &[&str] = &["k", "max_iters", "tol", "seed", "restarts"];

impl BenchConfig {
    /// Applies a parsed config file on top of the current settings.
    pub fn apply_file(&mut self, raw: &RawConfig) -> Result<(), CliError> {
        let sections: Vec<String> =
            ALL_METHODS.iter().map(|m| format!("method.{}", m.name())).collect();
        let section_refs: Vec<&str> = sections.iter().map(String::as_str).collect();
        raw.reject_unknown(GLOBAL_KEYS, &section_refs, SECTION_KEYS)?;

        if let Some(entry) = raw.get("", "dataset") {
            let mut layout = LayoutConfig::new(
                PathBuf::from(&entry.value),
                raw.get_parsed("", "layout")?.unwrap_or(crate::loader::Layout::Subdirs),
            );
            if let Some(ext) = raw.get("", "extension") {
                layout.extension = ext.value.clone();
            }
            layout.per_subject = raw.get_parsed("", "per_subject")?;
            self.source = DataSource::PgmDir(layout);
        } else {
            let mut spec = match &self.source {
                DataSource::Synthetic(spec) => spec.clone(),
                DataSource::PgmDir(_) => SynthSpec::default(),
            };
            let mut any = false;
            if let Some(v) = raw.get_parsed("", "synth_subjects")? {
                spec.subjects = v;
                any = true;
            }
            if let Some(v) = raw.get_parsed("", "synth_per_subject")? {
                spec.per_subject = v;
                any = true;
            }
            if let Some(v) = raw.get_parsed("", "synth_rows")? {
                spec.rows = v;
                any = true;
            }
            if let Some(v) = raw.get_parsed("", "synth_cols")? {
                spec.cols = v;
                any = true;
            }
            if let Some(v) = raw.get_parsed("", "synth_noise")? {
                spec.noise_sigma = v;
                any = true;
            }
            if let Some(v) = raw.get_parsed("", "synth_seed")? {
                spec.seed = v;
                any = true;
            }
            if any || matches!(self.source, DataSource::Synthetic(_)) {
                self.source = DataSource::Synthetic(spec);
            }
        }

        if let Some(entry) = raw.get("", "methods") {
            let mut methods = Vec::new();
            for part in entry.value.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                methods.push(part.parse().map_err(|e| CliError::config_at(entry.line, e))?);
            }
            if methods.is_empty() {
                return Err(CliError::config_at(entry.line, "empty method list"));
            }
            self.methods = methods;
        }
        if let Some(v) = raw.get_parsed("", "k")? {
            self.k = v;
        }
        if let Some(v) = raw.get_parsed("", "train_per_subject")? {
            self.train_per_subject = v;
        }
        if let Some(entry) = raw.get("", "split") {
            self.split = entry.value.parse().map_err(|e| CliError::config_at(entry.line, e))?;
        }
        if let Some(v) = raw.get_parsed("", "seed")? {
            self.seed = v;
        }
        if let Some(v) = raw.get_parsed("", "max_iters")? {
            self.max_iters = v;
        }
        if let Some(v) = raw.get_parsed("", "tol")? {
            self.tol = v;
        }
        if let Some(v) = raw.get_parsed("", "restarts")? {
            self.restarts = v;
        }
        if let Some(v) = raw.get_parsed("", "strict")? {
            self.strict = v;
        }
        if let Some(entry) = raw.get("", "out") {
            self.out_dir = Some(PathBuf::from(&entry.value));
        }

        for method in ALL_METHODS {
            let section = format!("method.{}", method.name());
            let ov = MethodOverrides {
                k: raw.get_parsed(&section, "k")?,
                max_iters: raw.get_parsed(&section, "max_iters")?,
                tol: raw.get_parsed(&section, "tol")?,
                seed: raw.get_parsed(&section, "seed")?,
                restarts: raw.get_parsed(&section, "restarts")?,
            };
            if ov.k.is_some()
                || ov.max_iters.is_some()
                || ov.tol.is_some()
                || ov.seed.is_some()
                || ov.restarts.is_some()
            {
                self.overrides.push((method, ov));
            }
        }
        Ok(())
    }

    fn overrides_for(&self, method: Method) -> MethodOverrides {
        self.overrides
            .iter()
            .find(|(m, _)| *m == method)
            .map(|(_, ov)| *ov)
            .unwrap_or_default()
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.k == 0 {
            return Err(CliError::config("k must be at least 1"));
        }
        if self.train_per_subject == 0 {
            return Err(CliError::config("train_per_subject must be at least 1"));
        }
        if self.methods.is_empty() {
            return Err(CliError::config("no methods selected"));
        }
        Ok(())
    }
}

pub fn load_dataset(source: &DataSource) -> Result<ImageDataset, CliError> {
    match source {
        DataSource::PgmDir(layout) => load_pgm_directory(layout),
        DataSource::Synthetic(spec) => Ok(synth_image_classes(
            spec.subjects,
            spec.per_subject,
            spec.rows,
            spec.cols,
            spec.noise_sigma,
            spec.seed,
        )),
    }
}

fn make_split(cfg: &BenchConfig, labels: &[usize]) -> Result<LabeledSplit, CliError> {
    let split = match cfg.split {
        SplitRule::First => split_first_k(labels, cfg.train_per_subject),
        SplitRule::Random => split_random_k(labels, cfg.train_per_subject, cfg.seed),
    };
    split.map_err(|e| CliError::Dataset(format!("split failed: {e}")))
}

/// Outcome of fitting and scoring one method.
pub struct MethodRun {
    pub method: Method,
    pub k: usize,
    pub basis: Basis,
    pub report: FitReport,
    pub accuracy: f64,
    pub fit_seconds: f64,
    pub classify_seconds: f64,
}

/// Fits `method` on the train side and scores 1-NN accuracy on the test
/// side. Timing wraps the fit only; classification is timed separately.
pub fn fit_and_score(
    method: Method,
    train: &ImageDataset,
    test: &ImageDataset,
    k: usize,
    cfg: &BenchConfig,
) -> Result<MethodRun, CliError> {
    let ov = cfg.overrides_for(method);
    let k = ov.k.unwrap_or(k);
    let r1_opts = R1Options {
        max_iters: ov.max_iters.unwrap_or(cfg.max_iters),
        tol: ov.tol.unwrap_or(cfg.tol),
        ..R1Options::default()
    };
    let l1_opts = L1Options {
        restarts: ov.restarts.unwrap_or(cfg.restarts),
        seed: ov.seed.unwrap_or(cfg.seed),
        center: true,
    };

    let (basis, report, fit_seconds, train_feats, test_feats) = if method.is_two_d() {
        let train_c = train.center();
        let mean = train_c.mean().expect("centered dataset stores its mean").clone();
        let test_c = test
            .center_with(&mean)
            .map_err(|e| CliError::Dataset(format!("centering test images: {e}")))?;
        let started = Instant::now();
        let (basis, report) = match method {
            Method::TwoDPca => (fit_2dpca(&train_c, k)?, closed_form_report()),
            Method::TwoDR1Pca => fit_2dr1_pca(&train_c, k, &r1_opts)?,
            Method::TwoDL1Pca => fit_2dl1_pca(&train_c, k, &l1_opts)?,
            _ => unreachable!("1-D methods handled below"),
        };
        let fit_seconds = started.elapsed().as_secs_f64();
        let train_feats = project_images(&basis, &train_c, Some(&mean))?;
        let test_feats = project_images(&basis, &test_c, Some(&mean))?;
        (basis, report, fit_seconds, train_feats, test_feats)
    } else {
        let train_v = vectorize(train).center();
        let mean = train_v.mean().expect("centered dataset stores its mean").to_vec();
        let test_v = vectorize(test)
            .center_with(&mean)
            .map_err(|e| CliError::Dataset(format!("centering test vectors: {e}")))?;
        let started = Instant::now();
        let (basis, report) = match method {
            Method::Pca => (fit_pca(&train_v, k)?, closed_form_report()),
            Method::R1Pca => fit_r1_pca(&train_v, k, &r1_opts)?,
            Method::L1Pca => fit_l1_pca(&train_v, k, &l1_opts)?,
            _ => unreachable!("2-D methods handled above"),
        };
        let fit_seconds = started.elapsed().as_secs_f64();
        let train_feats = project_vectors(&basis, &train_v, Some(&mean))?;
        let test_feats = project_vectors(&basis, &test_v, Some(&mean))?;
        (basis, report, fit_seconds, train_feats, test_feats)
    };

    if cfg.strict && method.is_iterative() && !report.converged {
        return Err(CliError::Numeric(format!(
            "{method} did not converge within {} iterations (strict mode)",
            report.iterations
        )));
    }

    let started = Instant::now();
    let predicted = nn_classify(&train_feats, &test_feats, MatrixDistance::Frobenius)?;
    let classify_seconds = started.elapsed().as_secs_f64();
    let accuracy = accuracy(&predicted, test_feats.labels())?;

    Ok(MethodRun { method, k, basis, report, accuracy, fit_seconds, classify_seconds })
}

fn closed_form_report() -> FitReport {
    FitReport { converged: true, ..FitReport::default() }
}

/// Per-iteration trace CSV: the R1 family reports
/// `iteration,update_norm,change_norm,objective`, the L1 family
/// `iteration,objective,flipped_count`.
pub fn trace_csv(method: Method, report: &FitReport) -> String {
    let mut out = String::new();
    match method {
        Method::R1Pca | Method::TwoDR1Pca => {
            out.push_str("iteration,update_norm,change_norm,objective\n");
            for i in 0..report.iterations {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    i + 1,
                    report.update_norms[i],
                    report.change_norms[i],
                    report.objectives[i]
                ));
            }
        }
        _ => {
            out.push_str("iteration,objective,flipped_count\n");
            for i in 0..report.iterations {
                out.push_str(&format!(
                    "{},{},{}\n",
                    i + 1,
                    report.objectives[i],
                    report.flipped_counts[i]
                ));
            }
        }
    }
    out
}

/// Runs the full benchmark: load → split → per-method fit/score, and
/// assembles the results document. Trace CSVs are written when an output
/// directory is configured.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<ResultsDoc, CliError> {
    cfg.validate()?;
    let ds = load_dataset(&cfg.source)?;
    let split = make_split(cfg, ds.labels())?;
    let train = ds.subset(&split.train_indices);
    let test = ds.subset(&split.test_indices);

    let mut run = Section::new("run");
    match &cfg.source {
        DataSource::PgmDir(layout) => {
            run.push("dataset", layout.root.display());
            run.push("layout", format!("{:?}", layout.layout).to_lowercase());
        }
        DataSource::Synthetic(spec) => {
            run.push("dataset", "synthetic");
            run.push("synth_seed", spec.seed);
        }
    }
    run.push("n_images", ds.n_images());
    run.push("image_rows", ds.rows());
    run.push("image_cols", ds.cols());
    run.push("n_train", train.n_images());
    run.push("n_test", test.n_images());
    run.push("k", cfg.k);
    run.push("train_per_subject", cfg.train_per_subject);
    run.push("split", if cfg.split == SplitRule::First { "first" } else { "random" });
    run.push("seed", cfg.seed);
    run.push("max_iters", cfg.max_iters);
    run.push("tol", cfg.tol);

    let mut doc = ResultsDoc { sections: vec![run] };
    if let Some(dir) = &cfg.out_dir {
        fs::create_dir_all(dir)?;
    }

    for &method in &cfg.methods {
        let result = fit_and_score(method, &train, &test, cfg.k, cfg)?;
        let mut section = Section::new(format!("method.{}", method.name()));
        section.push("accuracy", result.accuracy);
        section.push("k", result.k);
        section.push("iterations", result.report.iterations);
        section.push("converged", result.report.converged);
        section.push("time_fit_seconds", result.fit_seconds);
        section.push("time_classify_seconds", result.classify_seconds);
        if let (Some(dir), true) = (&cfg.out_dir, method.is_iterative()) {
            let path = dir.join(format!("trace_{}.csv", method.name()));
            fs::write(&path, trace_csv(method, &result.report))?;
            section.push("trace_file", path.display());
        }
        doc.sections.push(section);
    }

    doc.validate()?;
    if let Some(dir) = &cfg.out_dir {
        doc.write(&dir.join("results.txt"))?;
    }
    Ok(doc)
}

/// Fits one iterative method on the train split and returns its
/// per-iteration trace CSV.
pub fn run_convergence_trace(cfg: &BenchConfig, method: Method) -> Result<String, CliError> {
    if !method.is_iterative() {
        return Err(CliError::config(format!(
            "trace requires an iterative method, got '{method}'"
        )));
    }
    cfg.validate()?;
    let ds = load_dataset(&cfg.source)?;
    let split = make_split(cfg, ds.labels())?;
    let train = ds.subset(&split.train_indices);
    let test = ds.subset(&split.test_indices);
    let result = fit_and_score(method, &train, &test, cfg.k, cfg)?;
    Ok(trace_csv(method, &result.report))
}

/// Accuracy-versus-feature-count sweep: one CSV row per (method, k).
pub fn run_feature_sweep(
    cfg: &BenchConfig,
    k_range: std::ops::RangeInclusive<usize>,
) -> Result<String, CliError> {
    cfg.validate()?;
    let ds = load_dataset(&cfg.source)?;
    let split = make_split(cfg, ds.labels())?;
    let train = ds.subset(&split.train_indices);
    let test = ds.subset(&split.test_indices);
    let mut out = String::from("method,k,accuracy\n");
    for &method in &cfg.methods {
        for k in k_range.clone() {
            let result = fit_and_score(method, &train, &test, k, cfg)?;
            out.push_str(&format!("{},{},{}\n", method.name(), k, result.accuracy));
        }
    }
    Ok(out)
}

/// One brute-force check: fitted-vs-exact L1 objective on a small random
/// instance.
pub struct OracleInstance {
    pub seed: u64,
    pub fitted: f64,
    pub exact: f64,
}

impl OracleInstance {
    pub fn ratio(&self) -> f64 {
        if self.exact == 0.0 {
            1.0
        } else {
            self.fitted / self.exact
        }
    }
}

/// Runs `instances` random Gaussian problems (`d` dims, `n` samples) and
/// compares the best-of-restarts first L1 component against exhaustive
/// polarity enumeration.
pub fn run_oracle_check(
    instances: usize,
    n: usize,
    d: usize,
    seed: u64,
    restarts: usize,
) -> Result<Vec<OracleInstance>, CliError> {
    let mut results = Vec::with_capacity(instances);
    for i in 0..instances {
        let inst_seed = seed.wrapping_add(i as u64);
        let mut rng = SplitMix64::new(inst_seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1));
        let data: Vec<f64> = (0..d * n).map(|_| rng.gaussian()).collect();
        let ds = VectorDataset::unlabeled(
            Matrix::new(d, n, data).expect("finite gaussian samples"),
        );
        let opts = L1Options { restarts, seed: inst_seed, center: false };
        let (basis, _) = fit_l1_pca(&ds, 1, &opts)?;
        let w = basis.column(0);
        let fitted: f64 = (0..n)
            .map(|j| ds.sample(j).iter().zip(&w).map(|(x, wi)| x * wi).sum::<f64>().abs())
            .sum();
        let (_, exact) = brute_force_l1_oracle(&ds)?;
        results.push(OracleInstance { seed: inst_seed, fitted, exact });
    }
    Ok(results)
}

/// Formats the oracle results: attainment rate at a ratio threshold plus
/// per-instance rows.
pub fn oracle_report(results: &[OracleInstance], threshold: f64) -> String {
    let attained = results.iter().filter(|r| r.ratio() >= threshold).count();
    let mut out = format!(
        "instances = {}\nattained_ratio_{threshold} = {attained}\nrate = {}\n",
        results.len(),
        attained as f64 / results.len().max(1) as f64
    );
    out.push_str("seed,fitted,exact,ratio\n");
    for r in results {
        out.push_str(&format!("{},{},{},{}\n", r.seed, r.fitted, r.exact, r.ratio()));
    }
    out
}

/// Writes a synthetic multi-subject PGM tree (`s1/1.pgm`, ...) usable as
/// a dataset directory.
pub fn write_synth_images(dir: &Path, spec: &SynthSpec) -> Result<(), CliError> {
    let ds = synth_image_classes(
        spec.subjects,
        spec.per_subject,
        spec.rows,
        spec.cols,
        spec.noise_sigma,
        spec.seed,
    );
    let mut index_within = 0usize;
    let mut last_label = usize::MAX;
    for i in 0..ds.n_images() {
        let label = ds.labels()[i];
        if label != last_label {
            index_within = 0;
            last_label = label;
        }
        index_within += 1;
        let subject_dir = dir.join(format!("s{}", label + 1));
        fs::create_dir_all(&subject_dir)?;
        crate::pgm::write_pgm(&subject_dir.join(format!("{index_within}.pgm")), ds.image(i))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> BenchConfig {
        BenchConfig {
            source: DataSource::Synthetic(SynthSpec {
                subjects: 4,
                per_subject: 6,
                rows: 6,
                cols: 5,
                noise_sigma: 10.0,
                seed: 3,
            }),
            methods: ALL_METHODS.to_vec(),
            k: 3,
            train_per_subject: 3,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn benchmark_runs_end_to_end_on_synthetic_data() {
        let doc = run_benchmark(&small_cfg()).unwrap();
        doc.validate().unwrap();
        for method in ALL_METHODS {
            let section = doc.section(&format!("method.{}", method.name())).unwrap();
            let acc: f64 = section.get("accuracy").unwrap().parse().unwrap();
            assert!((0.0..=1.0).contains(&acc));
        }
    }

    #[test]
    fn benchmark_is_deterministic_modulo_timing() {
        let cfg = small_cfg();
        let a = run_benchmark(&cfg).unwrap().numeric_view();
        let b = run_benchmark(&cfg).unwrap().numeric_view();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn trace_has_header_and_rows() {
        let csv = run_convergence_trace(&small_cfg(), Method::R1Pca).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "iteration,update_norm,change_norm,objective");
        assert!(lines.count() >= 1);
        assert!(run_convergence_trace(&small_cfg(), Method::Pca).is_err());
    }

    #[test]
    fn sweep_emits_row_per_method_and_k() {
        let mut cfg = small_cfg();
        cfg.methods = vec![Method::Pca, Method::TwoDPca];
        let csv = run_feature_sweep(&cfg, 1..=3).unwrap();
        assert_eq!(csv.lines().count(), 1 + 2 * 3);
    }

    #[test]
    fn config_file_overrides_apply() {
        let raw = RawConfig::parse(
            "methods = pca,r1pca\nk = 4\nsplit = random\nseed = 9\n[method.r1pca]\nmax_iters = 7\n",
        )
        .unwrap();
        let mut cfg = BenchConfig::default();
        cfg.apply_file(&raw).unwrap();
        assert_eq!(cfg.methods, vec![Method::Pca, Method::R1Pca]);
        assert_eq!(cfg.k, 4);
        assert_eq!(cfg.split, SplitRule::Random);
        assert_eq!(cfg.overrides_for(Method::R1Pca).max_iters, Some(7));
    }

    #[test]
    fn oracle_check_runs() {
        let results = run_oracle_check(5, 6, 3, 0, 4).unwrap();
        for r in &results {
            assert!(r.fitted <= r.exact + 1e-9);
        }
        let report = oracle_report(&results, 0.99);
        assert!(report.starts_with("instances = 5"));
    }

    #[test]
    fn synth_tree_loads_back() {
        let tmp = tempfile::tempdir().unwrap();
        let spec =
            SynthSpec { subjects: 2, per_subject: 3, rows: 3, cols: 3, noise_sigma: 5.0, seed: 2 };
        write_synth_images(tmp.path(), &spec).unwrap();
        let layout = LayoutConfig::new(tmp.path(), crate::loader::Layout::Subdirs);
        let ds = load_pgm_directory(&layout).unwrap();
        assert_eq!(ds.n_images(), 6);
        assert_eq!(ds.labels(), &[1, 1, 1, 2, 2, 2]);
    }
}
