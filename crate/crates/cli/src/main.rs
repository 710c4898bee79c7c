//! Command-line driver: metric and divergence evaluation on state files,
//! tensor extraction, geodesic sampling, monotonicity sweeps, and the full
//! verification suite.
//!
//! Exit codes: 0 on success, 1 when a verification suite or sweep reports a
//! violation, 2 on malformed input or a violated invariant.

mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use qig::channels::{divergence_monotonicity_trial, metric_monotonicity_trial, random_channel_rng};
use qig::divergences::{alpha_qrd, alpha_rre, alpha_z_renyi, divergence_by_name, DivergenceSpec};
use qig::extraction::extract_tensor;
use qig::geodesics::{fr_speed_squared, FRGeodesic};
use qig::json;
use qig::metrics::{builtin_f, petz_metric, MonotoneFunction};
use qig::states::{random_density_bounded_rng, random_tangent_rng};
use qig::suites::{run_all, CheckKind, SuiteParams, SuiteReport};
use qig::MetricFamily;

use report::{fmt_f64, Csv, Jv};

#[derive(Parser)]
#[command(
    name = "qig",
    version,
    about = "Monotone quantum metrics, divergences, and geodesics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a monotone metric G_f(ρ; v, w) from state and tangent files
    Metric {
        /// Metric family: BH, WY, or BKM
        #[arg(long)]
        f: String,
        /// State JSON file ({"kind":"density", "dim", "re", "im"})
        #[arg(long)]
        state: PathBuf,
        /// Tangent matrix JSON file (traceless Hermitian)
        #[arg(long)]
        v: PathBuf,
        /// Second tangent matrix JSON file
        #[arg(long)]
        w: PathBuf,
        /// Optional JSON report path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a divergence S(ρ, σ) between two state files
    Divergence {
        /// Registry name, or alpha-z / alpha-rre / alpha-qrd with --alpha/--z
        #[arg(long)]
        name: String,
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract the covariant 2-tensor of a divergence at an unfolded point
    Extract {
        /// Divergence name (same resolution as the divergence verb)
        #[arg(long)]
        divergence: String,
        /// Unfolded point JSON ({"U": matrix, "p": [..]}) or a density state
        /// JSON, which is factorized internally
        #[arg(long)]
        point: PathBuf,
        /// Unfolded tangent JSON file ({"H": matrix, "a": [..]})
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t2: PathBuf,
        /// Finite-difference step
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Disable Richardson extrapolation
        #[arg(long)]
        no_richardson: bool,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a universal geodesic as CSV: t, p_1..p_n, speed²
    Geodesic {
        /// Unfolded point JSON file
        #[arg(long)]
        point: PathBuf,
        /// Zero-sum velocity, comma separated (e.g. "0.3,-0.3")
        #[arg(long)]
        direction: String,
        /// Largest sampled parameter; must stay inside the simplex
        #[arg(long)]
        span: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// CSV output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized monotonicity sweep for a metric (--f) or divergence
    Monotonicity {
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        divergence: Option<String>,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
        /// Directory for margins.csv and summary.json
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run every verification suite; write report.json and per-suite CSVs
    Verify {
        /// Suite configuration JSON (defaults when omitted)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory (overrides the config's output_dir)
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, content: &str) -> Result<(), String> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        }
    }
    std::fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_family(name: &str) -> Result<MonotoneFunction, String> {
    let family: MetricFamily = name.parse().map_err(|e| format!("{e}"))?;
    Ok(builtin_f(family))
}

/// Accept either the (U, p) schema or a tagged density state.
fn parse_point_or_state(text: &str) -> Result<qig::UnfoldedPoint, String> {
    if let Ok(x) = json::parse_unfolded_point(text) {
        return Ok(x);
    }
    let rho = json::parse_state(text).map_err(|e| e.to_string())?;
    qig::states::unfold(&rho).map_err(|e| e.to_string())
}

/// Registry names plus the parameterized Rényi entries.
fn resolve_divergence(
    name: &str,
    alpha: Option<f64>,
    z: Option<f64>,
) -> Result<DivergenceSpec, String> {
    let need_alpha = || alpha.ok_or_else(|| format!("{name} requires --alpha"));
    let wrap = |spec: qig::Result<DivergenceSpec>| spec.map_err(|e| e.to_string());
    match name {
        "alpha-z" => {
            let a = need_alpha()?;
            let zz = z.ok_or_else(|| "alpha-z requires --z".to_string())?;
            wrap(DivergenceSpec::new(
                format!("alpha-z({a},{zz})"),
                vec![("alpha".into(), a), ("z".into(), zz)],
                true,
                false,
                true,
                move |r, s| alpha_z_renyi(a, zz, r, s),
            ))
        }
        "alpha-rre" => {
            let a = need_alpha()?;
            wrap(DivergenceSpec::new(
                format!("alpha-rre({a})"),
                vec![("alpha".into(), a)],
                true,
                false,
                true,
                move |r, s| alpha_rre(a, r, s),
            ))
        }
        "alpha-qrd" => {
            let a = need_alpha()?;
            wrap(DivergenceSpec::new(
                format!("alpha-qrd({a})"),
                vec![("alpha".into(), a)],
                true,
                false,
                true,
                move |r, s| alpha_qrd(a, r, s),
            ))
        }
        other => divergence_by_name(other).map_err(|e| e.to_string()),
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Metric {
            f,
            state,
            v,
            w,
            out,
        } => {
            let func = parse_family(&f)?;
            let rho = json::parse_state(&read_file(&state)?).map_err(|e| e.to_string())?;
            let tv = json::parse_tangent_vector(&read_file(&v)?).map_err(|e| e.to_string())?;
            let tw = json::parse_tangent_vector(&read_file(&w)?).map_err(|e| e.to_string())?;
            let value = petz_metric(&func, &rho, &tv, &tw).map_err(|e| e.to_string())?;
            println!("{}", fmt_f64(value));
            if let Some(path) = out {
                let doc = Jv::obj(vec![
                    ("f", Jv::Str(func.name().to_string())),
                    ("dim", Jv::Int(rho.dim() as i64)),
                    ("value", Jv::Num(value)),
                ]);
                write_file(&path, &doc.render())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Divergence {
            name,
            rho,
            sigma,
            alpha,
            z,
            out,
        } => {
            let spec = resolve_divergence(&name, alpha, z)?;
            let r = json::parse_state(&read_file(&rho)?).map_err(|e| e.to_string())?;
            let s = json::parse_state(&read_file(&sigma)?).map_err(|e| e.to_string())?;
            let value = spec.eval(&r, &s).map_err(|e| e.to_string())?;
            println!("{}", fmt_f64(value));
            if let Some(path) = out {
                let doc = Jv::obj(vec![
                    ("divergence", Jv::Str(spec.name().to_string())),
                    ("dim", Jv::Int(r.dim() as i64)),
                    ("value", Jv::Num(value)),
                ]);
                write_file(&path, &doc.render())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Extract {
            divergence,
            point,
            t1,
            t2,
            step,
            no_richardson,
            alpha,
            z,
            out,
        } => {
            let spec = resolve_divergence(&divergence, alpha, z)?;
            let x = parse_point_or_state(&read_file(&point)?)?;
            let u1 = json::parse_unfolded_tangent(&read_file(&t1)?).map_err(|e| e.to_string())?;
            let u2 = json::parse_unfolded_tangent(&read_file(&t2)?).map_err(|e| e.to_string())?;
            let rep = extract_tensor(&spec, &x, &u1, &u2, step, !no_richardson)
                .map_err(|e| e.to_string())?;
            let doc = Jv::obj(vec![
                ("divergence", Jv::Str(spec.name().to_string())),
                ("value", Jv::Num(rep.value())),
                ("value_ll", Jv::Num(rep.value_ll)),
                ("value_rr", Jv::Num(rep.value_rr)),
                ("value_lr", Jv::Num(rep.value_lr)),
                ("value_rl", Jv::Num(rep.value_rl)),
                (
                    "first_order_residuals",
                    Jv::Arr(vec![
                        Jv::Num(rep.first_order_residuals.0),
                        Jv::Num(rep.first_order_residuals.1),
                    ]),
                ),
                ("step", Jv::Num(rep.step)),
                ("richardson_used", Jv::Bool(rep.richardson_used)),
                ("consistency", Jv::Num(rep.consistency())),
            ]);
            let text = doc.render();
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Geodesic {
            point,
            direction,
            span,
            samples,
            out,
        } => {
            let x = json::parse_unfolded_point(&read_file(&point)?).map_err(|e| e.to_string())?;
            let a: Vec<f64> = direction
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| format!("direction: {e}"))
                })
                .collect::<Result<_, _>>()?;
            if samples < 2 {
                return Err("need at least 2 samples".into());
            }
            let geo = FRGeodesic::new(x.probabilities().clone(), a).map_err(|e| e.to_string())?;
            let n = x.dim();
            let mut header: Vec<String> = vec!["t".into()];
            header.extend((1..=n).map(|j| format!("p_{j}")));
            header.push("speed2".into());
            let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
            let mut csv = Csv::new(&header_refs);
            for i in 0..samples {
                let t = span * i as f64 / (samples - 1) as f64;
                let p = geo.point(t).map_err(|e| e.to_string())?;
                let s2 = fr_speed_squared(&geo, t).map_err(|e| e.to_string())?;
                let mut cells = vec![fmt_f64(t)];
                cells.extend(p.iter().map(|v| fmt_f64(*v)));
                cells.push(fmt_f64(s2));
                csv.row(&cells);
            }
            match out {
                Some(path) => write_file(&path, &csv.render())?,
                None => print!("{}", csv.render()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Monotonicity {
            f,
            divergence,
            dim,
            trials,
            seed,
            alpha,
            z,
            out_dir,
        } => run_monotonicity(f, divergence, dim, trials, seed, alpha, z, out_dir),
        Command::Verify { config, out_dir } => run_verify(config, out_dir),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_monotonicity(
    f: Option<String>,
    divergence: Option<String>,
    dim: usize,
    trials: usize,
    seed: u64,
    alpha: Option<f64>,
    z: Option<f64>,
    out_dir: Option<PathBuf>,
) -> Result<ExitCode, String> {
    if !(2..=8).contains(&dim) {
        return Err(format!("dim must lie in 2..=8, got {dim}"));
    }
    if trials == 0 {
        return Err("trials must be at least 1".into());
    }
    let (subject, tolerance) = match (&f, &divergence) {
        (Some(name), None) => (format!("metric:{}", name.to_uppercase()), -1e-8),
        (None, Some(name)) => (format!("divergence:{name}"), -1e-9),
        _ => return Err("pass exactly one of --f or --divergence".into()),
    };
    let func = f.as_deref().map(parse_family).transpose()?;
    let spec = divergence
        .as_deref()
        .map(|name| resolve_divergence(name, alpha, z))
        .transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut margins = Vec::with_capacity(trials);
    let mut csv = Csv::new(&["trial", "margin", "floored"]);
    for i in 0..trials {
        let phi = random_channel_rng(dim, &mut rng).map_err(|e| e.to_string())?;
        let outcome = if let Some(func) = &func {
            let rho = random_density_bounded_rng(dim, 0.02, &mut rng);
            let v = random_tangent_rng(dim, &mut rng).scale(0.5);
            metric_monotonicity_trial(func, &phi, &rho, &v).map_err(|e| e.to_string())?
        } else {
            let rho = random_density_bounded_rng(dim, 0.02, &mut rng);
            let sigma = random_density_bounded_rng(dim, 0.02, &mut rng);
            divergence_monotonicity_trial(spec.as_ref().unwrap(), &phi, &rho, &sigma)
                .map_err(|e| e.to_string())?
        };
        margins.push(outcome.margin);
        csv.row(&[
            i.to_string(),
            fmt_f64(outcome.margin),
            outcome.floored.to_string(),
        ]);
    }
    let min = margins.iter().cloned().fold(f64::MAX, f64::min);
    let mean = margins.iter().sum::<f64>() / margins.len() as f64;
    let violations = margins.iter().filter(|&&m| m < tolerance).count();
    let summary = Jv::obj(vec![
        ("subject", Jv::Str(subject)),
        ("dim", Jv::Int(dim as i64)),
        ("trials", Jv::Int(trials as i64)),
        ("seed", Jv::Int(seed as i64)),
        ("min", Jv::Num(min)),
        ("mean", Jv::Num(mean)),
        ("tolerance", Jv::Num(tolerance)),
        ("violations", Jv::Int(violations as i64)),
    ]);
    let text = summary.render();
    print!("{text}");
    if let Some(dir) = out_dir {
        write_file(&dir.join("margins.csv"), &csv.render())?;
        write_file(&dir.join("summary.json"), &text)?;
    }
    Ok(if violations == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct VerifyConfig {
    dims: Option<Vec<usize>>,
    trials: Option<usize>,
    mono_trials: Option<usize>,
    seed: Option<u64>,
    step: Option<f64>,
    tolerances: Option<BTreeMap<String, f64>>,
    output_dir: Option<String>,
}

fn suite_to_jv(report: &SuiteReport) -> Jv {
    Jv::obj(vec![
        ("suite", Jv::Str(report.suite.clone())),
        ("passed", Jv::Bool(report.passed)),
        (
            "checks",
            Jv::Arr(
                report
                    .checks
                    .iter()
                    .map(|c| {
                        Jv::obj(vec![
                            ("name", Jv::Str(c.name.clone())),
                            (
                                "kind",
                                Jv::Str(
                                    match c.kind {
                                        CheckKind::MaxError => "max_error",
                                        CheckKind::MinMargin => "min_margin",
                                    }
                                    .to_string(),
                                ),
                            ),
                            ("worst", Jv::Num(c.worst)),
                            ("tolerance", Jv::Num(c.tolerance)),
                            ("passed", Jv::Bool(c.passed)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

fn run_verify(config: Option<PathBuf>, out_dir: Option<PathBuf>) -> Result<ExitCode, String> {
    let cfg: VerifyConfig = match &config {
        Some(path) => serde_json::from_str(&read_file(path)?)
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => VerifyConfig::default(),
    };
    let defaults = SuiteParams::default();
    let mut params = SuiteParams {
        dims: cfg.dims.unwrap_or(defaults.dims),
        trials: cfg.trials.unwrap_or(defaults.trials),
        mono_trials: cfg.mono_trials.unwrap_or(defaults.mono_trials),
        seed: cfg.seed.unwrap_or(defaults.seed),
        step: cfg.step.unwrap_or(defaults.step),
        tolerances: cfg.tolerances.unwrap_or_default(),
    };
    if params.dims.is_empty() || params.dims.iter().any(|&n| !(2..=8).contains(&n)) {
        return Err(format!(
            "dims must be a nonempty subset of 2..=8, got {:?}",
            params.dims
        ));
    }
    if params.trials == 0 || params.mono_trials == 0 {
        return Err("trials must be at least 1".into());
    }
    if let Ok(seed_text) = std::env::var("QIG_SEED") {
        params.seed = seed_text.parse().map_err(|e| format!("QIG_SEED: {e}"))?;
    }
    let dir = out_dir
        .or_else(|| cfg.output_dir.map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));

    let reports = run_all(&params).map_err(|e| e.to_string())?;
    let all_passed = reports.iter().all(|r| r.passed);

    let doc = Jv::obj(vec![
        (
            "config",
            Jv::obj(vec![
                (
                    "dims",
                    Jv::Arr(params.dims.iter().map(|&n| Jv::Int(n as i64)).collect()),
                ),
                ("trials", Jv::Int(params.trials as i64)),
                ("mono_trials", Jv::Int(params.mono_trials as i64)),
                ("seed", Jv::Int(params.seed as i64)),
                ("step", Jv::Num(params.step)),
                (
                    "tolerances",
                    Jv::Obj(
                        params
                            .tolerances
                            .iter()
                            .map(|(k, v)| (k.clone(), Jv::Num(*v)))
                            .collect(),
                    ),
                ),
            ]),
        ),
        ("all_passed", Jv::Bool(all_passed)),
        ("suites", Jv::Arr(reports.iter().map(suite_to_jv).collect())),
    ]);
    write_file(&dir.join("report.json"), &doc.render())?;
    for r in &reports {
        let mut csv = Csv::new(&["check", "kind", "worst", "tolerance", "passed"]);
        for c in &r.checks {
            csv.row(&[
                c.name.clone(),
                match c.kind {
                    CheckKind::MaxError => "max_error".into(),
                    CheckKind::MinMargin => "min_margin".into(),
                },
                fmt_f64(c.worst),
                fmt_f64(c.tolerance),
                c.passed.to_string(),
            ]);
        }
        write_file(&dir.join(format!("suite-{}.csv", r.suite)), &csv.render())?;
    }
    for r in &reports {
        println!("{:28} {}", r.suite, if r.passed { "pass" } else { "FAIL" });
    }
    println!(
        "verify: {} ({} suites) -> {}",
        if all_passed { "pass" } else { "FAIL" },
        reports.len(),
        dir.join("report.json").display()
    );
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
