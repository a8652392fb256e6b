//! Argument parsing and subcommand drivers.
//!
//! Every driver reads and validates all inputs and computes every artifact
//! before anything is written, so an input error leaves no partial output.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use log::info;
use mixfit_core::criteria::compare_models;
use mixfit_core::diagnostics::{collapse_metric, normalized_overlay, DEFAULT_COLLAPSE_EPSILON};
use mixfit_core::estimation::{default_init, fit, profile_k, FitOptions, FitResult};
use mixfit_core::synth::{draw_raw, exact_ks_oracle, generate};
use mixfit_core::{BinnedSample, ModelKind, ModelSpec};
use serde_json::json;

use crate::atomic::write_atomic;
use crate::error::{Error, Result};
use crate::records::{
    fnv1a, from_json, hex, to_json, BinSchemaRecord, CollapseRecord, ComparisonRecord, FitRecord, InputRecord,
    ModelRecord, RunManifest, SynthSpecRecord, TruthRecord,
};
use crate::report;
use crate::tables::{self, Ingested};

#[derive(Debug, Parser)]
#[command(name = "mixfit", version, about = "Fit finite-mixture income models to binned tabulations")]
pub struct Cli {
    /// Seed for every random choice; absent means 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "mixfit-out")]
    pub out: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one or more models to a dataset.
    Fit(FitArgs),
    /// Fit several models and rank them by every criterion.
    Compare(FitArgs),
    /// Empirical ccdf points, optionally temperature-normalized.
    Ccdf(CcdfArgs),
    /// Quantify how well temperature-normalized ccdfs coincide.
    Collapse(CollapseArgs),
    /// Draw a synthetic binned dataset from a JSON spec.
    Simulate(SimulateArgs),
    /// Simulate from a spec, refit the true family and report recovery.
    Verify(VerifyArgs),
}

fn parse_kind(s: &str) -> std::result::Result<ModelKind, String> {
    s.parse()
        .map_err(|_| format!("unknown model `{s}` (expected exp-pwr, lgn-pwr or exp-lgn-pwr)"))
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Binned tabulation CSV.
    #[arg(long)]
    pub data: PathBuf,

    /// Model to fit; repeat for several. Defaults to all three.
    #[arg(long = "model", value_parser = parse_kind)]
    pub models: Vec<ModelKind>,

    /// Power-law lower bound used for every model.
    #[arg(long, conflicts_with = "k_grid")]
    pub k: Option<f64>,

    /// Comma-separated k values; the best-likelihood k is kept per model.
    #[arg(long, value_delimiter = ',')]
    pub k_grid: Option<Vec<f64>>,

    /// Convergence tolerance on -lgL/n.
    #[arg(long)]
    pub tolerance: Option<f64>,

    /// Objective evaluations allowed per optimizer run.
    #[arg(long)]
    pub max_evals: Option<usize>,

    /// Dataset label; defaults to the file stem.
    #[arg(long)]
    pub label: Option<String>,
}

#[derive(Debug, Args)]
pub struct CcdfArgs {
    /// Binned tabulation CSV; repeat for several.
    #[arg(long, required = true)]
    pub data: Vec<PathBuf>,

    /// Temperatures, one per dataset, comma-separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "normalize")]
    pub temperature: Option<Vec<f64>>,

    /// Normalize by the temperature of a fitted `--model`.
    #[arg(long)]
    pub normalize: bool,

    /// Model supplying the temperature for `--normalize`.
    #[arg(long, value_parser = parse_kind, default_value = "exp-pwr")]
    pub model: ModelKind,
}

#[derive(Debug, Args)]
pub struct CollapseArgs {
    /// Binned tabulation CSV; at least two.
    #[arg(long, required = true)]
    pub data: Vec<PathBuf>,

    /// Temperatures, one per dataset. Otherwise fitted from `--model`.
    #[arg(long, value_delimiter = ',')]
    pub temperature: Option<Vec<f64>>,

    #[arg(long, value_parser = parse_kind, default_value = "exp-pwr")]
    pub model: ModelKind,

    /// Largest pairwise gap that still counts as collapsed.
    #[arg(long, default_value_t = DEFAULT_COLLAPSE_EPSILON)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Synthetic dataset spec (JSON).
    #[arg(long)]
    pub spec: PathBuf,

    /// Base name of the output files.
    #[arg(long, default_value = "synthetic")]
    pub name: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub spec: PathBuf,
}

/// Files produced by a run, not yet written.
#[derive(Debug, Default)]
pub struct Outcome {
    pub artifacts: Vec<(String, Vec<u8>)>,
    pub inputs: Vec<InputRecord>,
    pub config: serde_json::Value,
    pub converged: bool,
    /// Printed to stdout after the files are written.
    pub summary: String,
}

impl Outcome {
    fn push(&mut self, name: impl Into<String>, bytes: impl Into<Vec<u8>>) {
        self.artifacts.push((name.into(), bytes.into()));
    }
}

fn read_input(path: &Path) -> Result<(Vec<u8>, InputRecord)> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let rec = InputRecord {
        path: path.display().to_string(),
        bytes: bytes.len() as u64,
        fingerprint: hex(fnv1a(&bytes)),
    };
    Ok((bytes, rec))
}

fn load_data(path: &Path, label: Option<&str>, inputs: &mut Vec<InputRecord>) -> Result<Ingested> {
    let (bytes, rec) = read_input(path)?;
    inputs.push(rec);
    let label = label.map_or_else(|| tables::label_for(path), str::to_string);
    tables::read_binned(&bytes[..], &path.display().to_string(), &label)
}

/// Labels made unique by suffixing repeats with `-2`, `-3`, ...
fn unique_labels(labels: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(labels.len());
    for l in labels {
        let mut candidate = l.clone();
        let mut i = 2;
        while out.contains(&candidate) {
            candidate = format!("{l}-{i}");
            i += 1;
        }
        out.push(candidate);
    }
    out
}

fn load_many(paths: &[PathBuf], inputs: &mut Vec<InputRecord>) -> Result<Vec<BinnedSample>> {
    let samples = paths
        .iter()
        .map(|p| load_data(p, None, inputs).map(|i| i.sample))
        .collect::<Result<Vec<_>>>()?;
    let labels = unique_labels(samples.iter().map(|s| s.label().to_string()).collect());
    Ok(samples.into_iter().zip(labels).map(|(s, l)| s.with_label(l)).collect())
}

#[derive(Debug, Clone)]
enum KChoice {
    Default,
    Fixed(f64),
    Grid(Vec<f64>),
}

fn fit_one(s: &BinnedSample, kind: ModelKind, k: &KChoice, opts: &FitOptions) -> Result<FitResult> {
    let origin = format!("{} fit", kind.name());
    let core = |e| Error::core(origin.clone(), e);
    match k {
        KChoice::Grid(grid) => {
            let profile = profile_k(s, kind, grid, opts).map_err(core)?;
            match profile.best_fit() {
                Some(f) => Ok(f.clone()),
                None => {
                    let first = profile.points.into_iter().find_map(|(_, r)| r.err());
                    Err(core(first.unwrap_or(mixfit_core::Error::EmptyRange)))
                }
            }
        }
        _ => {
            let spec = match k {
                KChoice::Fixed(k) => ModelSpec::new(kind, *k).map_err(core)?,
                _ => ModelSpec::with_default_k(kind),
            };
            let init = default_init(s, spec).map_err(core)?;
            fit(s, spec, &init, opts).map_err(core)
        }
    }
}

/// Fits of every (sample, model) pair, one thread each, in input order.
fn fit_all(jobs: &[(&BinnedSample, ModelKind)], k: &KChoice, opts: &FitOptions) -> Result<Vec<FitResult>> {
    std::thread::scope(|sc| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(s, kind)| sc.spawn(move || fit_one(s, kind, k, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fit worker panicked"))
            .collect()
    })
}

fn fit_options(a: &FitArgs, seed: u64) -> Result<FitOptions> {
    let mut o = FitOptions {
        seed,
        ..Default::default()
    };
    if let Some(t) = a.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Invalid(format!("--tolerance must be positive, got {t}")));
        }
        o.tolerance = t;
    }
    if let Some(m) = a.max_evals {
        if m == 0 {
            return Err(Error::Invalid("--max-evals must be positive".to_string()));
        }
        o.max_evaluations = m;
    }
    Ok(o)
}

fn k_choice(a: &FitArgs) -> Result<KChoice> {
    Ok(match (&a.k, &a.k_grid) {
        (Some(k), _) => {
            if !(k.is_finite() && *k > 0.0) {
                return Err(Error::Invalid(format!("--k must be positive, got {k}")));
            }
            KChoice::Fixed(*k)
        }
        (None, Some(g)) => {
            if g.is_empty() || g.iter().any(|k| !(k.is_finite() && *k > 0.0)) {
                return Err(Error::Invalid("--k-grid needs positive values".to_string()));
            }
            let mut g = g.clone();
            g.sort_by(f64::total_cmp);
            g.dedup();
            KChoice::Grid(g)
        }
        (None, None) => KChoice::Default,
    })
}

fn fit_config(a: &FitArgs, models: &[ModelKind], o: &FitOptions) -> serde_json::Value {
    json!({
        "data": a.data.display().to_string(),
        "label": a.label,
        "models": models.iter().map(|m| m.name()).collect::<Vec<_>>(),
        "k": a.k,
        "k_grid": a.k_grid,
        "tolerance": o.tolerance,
        "x_tolerance": o.x_tolerance,
        "max_evaluations": o.max_evaluations,
        "starts": o.starts,
        "scan": o.scan,
    })
}

fn cmd_fit(a: &FitArgs, seed: u64) -> Result<Outcome> {
    let mut models = if a.models.is_empty() {
        ModelKind::ALL.to_vec()
    } else {
        a.models.clone()
    };
    let mut seen = Vec::new();
    models.retain(|m| {
        let fresh = !seen.contains(m);
        seen.push(*m);
        fresh
    });
    let opts = fit_options(a, seed)?;
    let k = k_choice(a)?;
    let mut out = Outcome {
        config: fit_config(a, &models, &opts),
        ..Default::default()
    };
    let data = load_data(&a.data, a.label.as_deref(), &mut out.inputs)?;
    let s = &data.sample;
    let jobs: Vec<_> = models.iter().map(|&m| (s, m)).collect();
    let fits = fit_all(&jobs, &k, &opts)?;
    for f in &fits {
        let rec = FitRecord::new(f, s.label());
        out.push(format!("fit_{}.json", f.kind().name()), to_json(&rec)?);
    }
    out.converged = fits.iter().all(|f| f.converged);
    let mut text = format!("dataset {} (n = {})\n", s.label(), s.n());
    text.push_str(&report::parameter_table(&fits));
    out.push("fit.txt", text.clone());
    out.summary = text;
    Ok(out)
}

fn cmd_compare(a: &FitArgs, seed: u64) -> Result<Outcome> {
    let models = if a.models.is_empty() {
        ModelKind::ALL.to_vec()
    } else {
        a.models.clone()
    };
    if models.len() < 2 {
        return Err(Error::Invalid("compare needs at least two --model values".to_string()));
    }
    let opts = fit_options(a, seed)?;
    let k = k_choice(a)?;
    let mut out = Outcome {
        config: fit_config(a, &models, &opts),
        ..Default::default()
    };
    let data = load_data(&a.data, a.label.as_deref(), &mut out.inputs)?;
    let s = &data.sample;
    let jobs: Vec<_> = models.iter().map(|&m| (s, m)).collect();
    let fits = fit_all(&jobs, &k, &opts)?;
    let cmp = compare_models(s, &fits).map_err(|e| Error::core("compare", e))?;
    out.push("comparison.json", to_json(&ComparisonRecord::new(&cmp))?);
    let mut text = report::parameter_table(&fits);
    text.push('\n');
    text.push_str(&report::comparison_table(&cmp));
    out.push("comparison.txt", text.clone());
    out.converged = fits.iter().all(|f| f.converged);
    out.summary = text;
    Ok(out)
}

/// Temperatures from `--temperature` or from fitting `model` to each sample.
fn temperatures(
    samples: &[BinnedSample],
    given: Option<&[f64]>,
    model: ModelKind,
    seed: u64,
) -> Result<(Vec<f64>, String, bool)> {
    if let Some(t) = given {
        if t.len() != samples.len() {
            return Err(Error::Invalid(format!(
                "{} temperatures for {} datasets",
                t.len(),
                samples.len()
            )));
        }
        return Ok((t.to_vec(), "given".to_string(), true));
    }
    if !model.has_exponential() {
        return Err(Error::Invalid(format!(
            "{} has no exponential component to supply a temperature",
            model.name()
        )));
    }
    let opts = FitOptions {
        seed,
        compute_std_errors: false,
        ..Default::default()
    };
    let jobs: Vec<_> = samples.iter().map(|s| (s, model)).collect();
    let fits = fit_all(&jobs, &KChoice::Default, &opts)?;
    let mut temps = Vec::with_capacity(fits.len());
    for (f, s) in fits.iter().zip(samples) {
        let t = f
            .model()
            .ok()
            .and_then(|m| m.temperature())
            .ok_or_else(|| Error::Invalid(format!("{}: fitted model has no temperature", s.label())))?;
        info!("{}: fitted {} temperature {t}", s.label(), model.name());
        temps.push(t);
    }
    let converged = fits.iter().all(|f| f.converged);
    Ok((temps, model.name().to_string(), converged))
}

fn cmd_ccdf(a: &CcdfArgs, seed: u64) -> Result<Outcome> {
    let mut out = Outcome {
        config: json!({
            "data": a.data.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "temperature": a.temperature,
            "normalize": a.normalize,
            "model": a.model.name(),
        }),
        converged: true,
        ..Default::default()
    };
    let samples = load_many(&a.data, &mut out.inputs)?;
    let temps = if a.normalize || a.temperature.is_some() {
        let (t, _, converged) = temperatures(&samples, a.temperature.as_deref(), a.model, seed)?;
        out.converged = converged;
        t
    } else {
        vec![1.0; samples.len()]
    };
    let mut text = String::new();
    for (s, &t) in samples.iter().zip(&temps) {
        let scaled = s.normalize_by_temperature(t).map_err(|e| Error::core(s.label(), e))?;
        let pts = scaled.empirical_ccdf().map_err(|e| Error::core(s.label(), e))?;
        out.push(format!("ccdf_{}.csv", s.label()), tables::ccdf_csv(&pts));
        text.push_str(&format!("{}: {} points, T = {t}\n", s.label(), pts.len()));
    }
    let overlay = normalized_overlay(&samples, &temps).map_err(|e| Error::core("overlay", e))?;
    out.push("overlay.csv", tables::overlay_csv(&overlay)?);
    out.summary = text;
    Ok(out)
}

fn cmd_collapse(a: &CollapseArgs, seed: u64) -> Result<Outcome> {
    if a.data.len() < 2 {
        return Err(Error::Invalid("collapse needs at least two --data files".to_string()));
    }
    if !(a.epsilon.is_finite() && a.epsilon > 0.0) {
        return Err(Error::Invalid(format!("--epsilon must be positive, got {}", a.epsilon)));
    }
    let mut out = Outcome {
        config: json!({
            "data": a.data.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "temperature": a.temperature,
            "model": a.model.name(),
            "epsilon": a.epsilon,
        }),
        ..Default::default()
    };
    let samples = load_many(&a.data, &mut out.inputs)?;
    let (temps, source, converged) = temperatures(&samples, a.temperature.as_deref(), a.model, seed)?;
    let r = collapse_metric(&samples, &temps, a.epsilon).map_err(|e| Error::core("collapse", e))?;
    let overlay = normalized_overlay(&samples, &temps).map_err(|e| Error::core("overlay", e))?;
    out.push("collapse.json", to_json(&CollapseRecord::new(&r, &source))?);
    out.push("overlay.csv", tables::overlay_csv(&overlay)?);
    let text = report::collapse_summary(&r);
    out.push("collapse.txt", text.clone());
    out.converged = converged;
    out.summary = text;
    Ok(out)
}

fn load_spec(path: &Path, inputs: &mut Vec<InputRecord>) -> Result<SynthSpecRecord> {
    let (bytes, rec) = read_input(path)?;
    inputs.push(rec);
    let text = String::from_utf8(bytes).map_err(|_| Error::Invalid(format!("{}: not UTF-8", path.display())))?;
    from_json(&text, &path.display().to_string())
}

/// Seed precedence: `--seed`, then the spec's own seed, then 0.
fn simulation_seed(cli_seed: Option<u64>, spec: &SynthSpecRecord) -> u64 {
    cli_seed.or(spec.seed).unwrap_or(0)
}

fn cmd_simulate(a: &SimulateArgs, cli_seed: Option<u64>) -> Result<Outcome> {
    if a.name.is_empty() || a.name.contains(['/', '\\']) {
        return Err(Error::Invalid(format!("--name `{}` is not a plain file name", a.name)));
    }
    let mut out = Outcome {
        converged: true,
        ..Default::default()
    };
    let rec = load_spec(&a.spec, &mut out.inputs)?;
    let seed = simulation_seed(cli_seed, &rec);
    let origin = a.spec.display().to_string();
    let spec = rec.to_spec(seed)?;
    let edges = spec.bins.edges().map_err(|e| Error::core(origin.clone(), e))?;
    let (sample, truth) = generate(&spec).map_err(|e| Error::core(origin.clone(), e))?;
    let sample = sample.with_label(a.name.clone());
    let truth_rec = TruthRecord {
        schema_version: crate::records::SCHEMA_VERSION,
        dataset: a.name.clone(),
        model: ModelRecord::from_params(&truth),
        n: sample.n(),
        seed,
        bins: BinSchemaRecord::from(&spec.bins),
        edges,
        data_fingerprint: hex(sample.fingerprint()),
    };
    out.config = json!({ "spec": origin, "name": a.name, "seed": seed });
    out.push(format!("{}.csv", a.name), tables::binned_csv(&sample));
    out.push(format!("{}_truth.json", a.name), to_json(&truth_rec)?);
    out.summary = format!(
        "{}: {} observations in {} bins (seed {seed})\n",
        a.name,
        sample.n(),
        sample.bins().len()
    );
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs, cli_seed: Option<u64>) -> Result<Outcome> {
    let mut out = Outcome::default();
    let rec = load_spec(&a.spec, &mut out.inputs)?;
    let seed = simulation_seed(cli_seed, &rec);
    let origin = a.spec.display().to_string();
    let core = |e| Error::core(origin.clone(), e);
    let spec = rec.to_spec(seed)?;
    let (sample, truth) = generate(&spec).map_err(core)?;
    let truth_spec = truth.spec().map_err(core)?;
    let opts = FitOptions {
        seed,
        ..Default::default()
    };
    let f = fit_all(&[(&sample, truth.kind)], &KChoice::Fixed(truth_spec.k()), &opts)?.remove(0);
    let fitted = f.model().map_err(core)?;
    let edges = spec.bins.edges().map_err(core)?;
    let raw = draw_raw(&spec.model, spec.n, edges[0], seed);
    let exact_ks_truth = exact_ks_oracle(&raw, &spec.model).map_err(core)?;
    let binned_ks_fit = mixfit_core::criteria::ks_statistic(&sample, &fitted).map_err(core)?.raw;

    let mut text = String::from("param  truth  fitted  std.err  |error|/std.err\n");
    let mut errors = serde_json::Map::new();
    for &p in truth.kind.free_params() {
        let (t, h) = (truth.get(p).unwrap_or(f64::NAN), f.theta_hat.get(p).unwrap_or(f64::NAN));
        let se = f.std_errors.get(p);
        let z = se.map(|se| (h - t).abs() / se);
        text.push_str(&format!(
            "{}  {t:.6e}  {h:.6e}  {}  {}\n",
            p.name(),
            se.map_or("-".to_string(), |v| format!("{v:.3e}")),
            z.map_or("-".to_string(), |v| format!("{v:.2}"))
        ));
        errors.insert(
            p.name().to_string(),
            json!({ "truth": t, "fitted": h, "std_error": se, "z": z }),
        );
    }
    text.push_str(&format!("exact KS of the raw draws against the truth: {exact_ks_truth:.3e}\n"));
    text.push_str(&format!("binned KS of the fit: {binned_ks_fit:.3e}\n"));
    let body = json!({
        "schema_version": crate::records::SCHEMA_VERSION,
        "truth": ModelRecord::from_params(&truth),
        "fit": FitRecord::new(&f, sample.label()),
        "recovery": errors,
        "exact_ks_truth": exact_ks_truth,
        "binned_ks_fit": binned_ks_fit,
    });
    out.config = json!({ "spec": origin, "seed": seed });
    out.push("verify.json", to_json(&body)?);
    out.push("verify.txt", text.clone());
    out.converged = f.converged;
    out.summary = text;
    Ok(out)
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fit(_) => "fit",
            Command::Compare(_) => "compare",
            Command::Ccdf(_) => "ccdf",
            Command::Collapse(_) => "collapse",
            Command::Simulate(_) => "simulate",
            Command::Verify(_) => "verify",
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Fit(a) => cmd_fit(a, seed),
        Command::Compare(a) => cmd_compare(a, seed),
        Command::Ccdf(a) => cmd_ccdf(a, seed),
        Command::Collapse(a) => cmd_collapse(a, seed),
        Command::Simulate(a) => cmd_simulate(a, cli.seed),
        Command::Verify(a) => cmd_verify(a, cli.seed),
    }
}

/// Write the artifacts and `run_manifest.json` into `cli.out`.
pub fn write_outcome(cli: &Cli, argv: &[String], outcome: &Outcome) -> Result<()> {
    std::fs::create_dir_all(&cli.out).map_err(|e| Error::io(&cli.out, e))?;
    let mut outputs = Vec::new();
    for (name, bytes) in &outcome.artifacts {
        write_atomic(&cli.out.join(name), bytes)?;
        outputs.push(name.clone());
    }
    let seed = match &cli.command {
        Command::Simulate(_) | Command::Verify(_) => outcome.config["seed"].as_u64().unwrap_or(0),
        _ => cli.seed.unwrap_or(0),
    };
    let manifest = RunManifest {
        schema_version: crate::records::SCHEMA_VERSION,
        tool: "mixfit".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        core_version: mixfit_core::VERSION.to_string(),
        subcommand: cli.command.name().to_string(),
        argv: argv.to_vec(),
        seed,
        config: outcome.config.clone(),
        inputs: outcome.inputs.clone(),
        outputs,
    };
    write_atomic(&cli.out.join("run_manifest.json"), to_json(&manifest)?.as_bytes())
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

/// Parse `argv`, run, write outputs; returns the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if let Err(e) = write_outcome(&cli, &argv, &outcome) {
        eprintln!("error: {e}");
        return EXIT_INPUT;
    }
    print!("{}", outcome.summary);
    if outcome.converged {
        EXIT_OK
    } else {
        eprintln!("warning: at least one fit did not converge");
        EXIT_NOT_CONVERGED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_made_unique() {
        let got = unique_labels(vec!["a".into(), "a".into(), "b".into(), "a".into()]);
        assert_eq!(got, ["a", "a-2", "b", "a-3"]);
    }

    #[test]
    fn seed_precedence() {
        let text = r#"{"model": {"kind": "exp-pwr", "weights": [0.9, 0.1],
            "params": {"beta": 3e-5, "alpha": 1.1}, "k": 44000}, "n": 10, "seed": 7}"#;
        let mut spec: SynthSpecRecord = from_json(text, "t").unwrap();
        assert_eq!(simulation_seed(Some(3), &spec), 3);
        assert_eq!(simulation_seed(None, &spec), 7);
        spec.seed = None;
        assert_eq!(simulation_seed(None, &spec), 0);
    }

    #[test]
    fn k_grid_conflicts_with_k() {
        let r = Cli::try_parse_from(["mixfit", "fit", "--data", "x.csv", "--k", "1", "--k-grid", "1,2"]);
        assert!(r.is_err());
    }

    #[test]
    fn model_names_parse() {
        let cli = Cli::try_parse_from(["mixfit", "compare", "--data", "x", "--model", "exp-pwr", "--model", "lgn-pwr"])
            .unwrap();
        match cli.command {
            Command::Compare(a) => assert_eq!(a.models, [ModelKind::ExpPwr, ModelKind::LgnPwr]),
            _ => unreachable!(),
        }
        assert!(Cli::try_parse_from(["mixfit", "fit", "--data", "x", "--model", "gamma"]).is_err());
    }
}
