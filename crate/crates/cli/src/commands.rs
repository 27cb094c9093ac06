use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use designwalk::design::{format_incidence, validate_design_with_budget};
use designwalk::dynamics::{compare, success_curve, CurveOptions};
use designwalk::spectral::{spectral_decomposition, spectrum_check, verify_identities, TAU_ALG};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{write_csv, write_json, Format, Meta};
use crate::source::{DesignSource, Experiment, Family, GammaPolicy, MarkedArgs};
use crate::{Cli, Command, SimArgs};

pub enum Outcome {
    Success,
    VerificationFailed,
}

struct Global<'a> {
    out: Option<&'a Path>,
    format: Option<Format>,
    jobs: usize,
    seed: u64,
}

impl Global<'_> {
    fn format_or(&self, default: Format, allowed: &[Format], command: &str) -> Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            bail!("{command} does not support --format {}", format!("{f:?}").to_lowercase());
        }
        Ok(f)
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let g = Global {
        out: cli.out.as_deref(),
        format: cli.format,
        jobs: cli.jobs,
        seed: cli.seed,
    };
    match cli.command {
        Command::Generate { family, param } => generate(&g, family, param),
        Command::Validate {
            design,
            t,
            lambda,
            budget,
        } => validate(&g, &design.design, t, lambda, budget),
        Command::Spectrum { design } => spectrum(&g, &design.design),
        Command::Predict { design, marked } => predict(&g, &design.design, &marked),
        Command::Simulate {
            design,
            marked,
            sim,
            per_vertex,
        } => simulate(&g, &design.design, &marked, &sim, per_vertex),
        Command::Compare { design, marked, sim } => compare_cmd(&g, &design.design, &marked, &sim),
        Command::Sweep {
            family,
            params,
            marked,
            sim,
        } => sweep(&g, family, &params, &marked, &sim),
    }
}

fn generate(g: &Global, family: Family, param: u64) -> Result<Outcome> {
    let source = DesignSource::from_family(family, param);
    let inc = source.load()?;
    let p = inc.params();
    let summary = format!(
        "{source}: v={} b={} r={} k={} t={} lambda={} lambda_i={:?}",
        p.v, p.b, p.r, p.k, p.t, p.lambda, p.lambda_i
    );
    match g.out {
        Some(path) => {
            std::fs::write(path, format_incidence(&inc))
                .with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{}", format_incidence(&inc));
            eprintln!("{summary}");
        }
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct ValidateResult {
    passed: bool,
    design_passed: bool,
    first_failure: Option<String>,
    validation: designwalk::design::ValidationReport,
    residuals: BTreeMap<String, f64>,
    breached: Vec<String>,
    tolerance: f64,
}

fn validate(
    g: &Global,
    source: &DesignSource,
    t: Option<u32>,
    lambda: Option<u64>,
    budget: u128,
) -> Result<Outcome> {
    g.format_or(Format::Json, &[Format::Json], "validate")?;
    let inc = source.load()?;
    let t = t.unwrap_or(inc.params().t);
    let lambda = lambda.unwrap_or(inc.params().lambda);
    let validation = validate_design_with_budget(&inc, t, lambda, budget)?;
    let identities = verify_identities(&inc)?;
    let residuals = identities
        .all()
        .into_iter()
        .map(|r| (r.name, r.max_abs))
        .collect();
    let breached: Vec<String> = identities.breaches(TAU_ALG).into_iter().map(|r| r.name).collect();
    let passed = validation.passed && breached.is_empty();
    let result = ValidateResult {
        passed,
        design_passed: validation.passed,
        first_failure: validation.first_failure(),
        validation,
        residuals,
        breached: breached.clone(),
        tolerance: TAU_ALG,
    };
    let meta = Meta::new("validate").with_design(&source.to_string(), &inc);
    write_json(g.out, &meta, &result)?;
    if passed {
        eprintln!("{source}: design and identities verified");
        return Ok(Outcome::Success);
    }
    if let Some(f) = &result.first_failure {
        eprintln!("{source}: design check failed: {f}");
    }
    for name in &breached {
        eprintln!("{source}: identity violated: {name}");
    }
    Ok(Outcome::VerificationFailed)
}

#[derive(Serialize)]
struct SpectrumResult {
    eigenvalues: [f64; 4],
    multiplicities: [usize; 4],
    residuals: BTreeMap<String, f64>,
    numerical_max_error: f64,
    numerical_tolerance: f64,
}

fn spectrum(g: &Global, source: &DesignSource) -> Result<Outcome> {
    g.format_or(Format::Json, &[Format::Json], "spectrum")?;
    let inc = source.load()?;
    let dec = spectral_decomposition(&inc)?;
    let report = verify_identities(&inc)?;
    let check = spectrum_check(&inc)?;
    let result = SpectrumResult {
        eigenvalues: dec.eigenvalues(),
        multiplicities: dec.multiplicities(),
        residuals: report.all().into_iter().map(|r| (r.name, r.max_abs)).collect(),
        numerical_max_error: check.max_error,
        numerical_tolerance: check.tolerance,
    };
    write_json(g.out, &Meta::new("spectrum").with_design(&source.to_string(), &inc), &result)?;
    if report.max_residual() <= TAU_ALG && check.passed() {
        Ok(Outcome::Success)
    } else {
        Ok(Outcome::VerificationFailed)
    }
}

#[derive(Serialize)]
struct PredictResult<'a> {
    marked: &'a designwalk::marking::MarkedConfig,
    prediction: &'a designwalk::predictor::SearchPrediction,
}

fn predict(g: &Global, source: &DesignSource, marked: &MarkedArgs) -> Result<Outcome> {
    g.format_or(Format::Json, &[Format::Json], "predict")?;
    let exp = Experiment::new(source, marked, g.seed)?;
    let Some(prediction) = &exp.prediction else {
        bail!(
            "no closed-form prediction for {}: {}",
            exp.config.kind.label(),
            exp.prediction_error.unwrap_or_default()
        );
    };
    let meta = Meta::new("predict").with_design(&source.to_string(), &exp.inc);
    write_json(
        g.out,
        &meta,
        &PredictResult {
            marked: &exp.config,
            prediction,
        },
    )?;
    Ok(Outcome::Success)
}

fn window(sim: &SimArgs, t_pred: Option<f64>) -> Result<f64> {
    match (sim.tmax, t_pred) {
        (Some(t), _) => Ok(t),
        (None, Some(t)) => Ok(2.0 * t),
        (None, None) => bail!("no predicted optimal time for this marked set; pass --tmax"),
    }
}

fn simulate(
    g: &Global,
    source: &DesignSource,
    marked: &MarkedArgs,
    sim: &SimArgs,
    per_vertex: bool,
) -> Result<Outcome> {
    let format = g.format_or(Format::Csv, &[Format::Csv, Format::Json], "simulate")?;
    let exp = Experiment::new(source, marked, g.seed)?;
    let (gamma, t_pred, tier) = exp.gamma(sim.gamma)?;
    let opts = CurveOptions {
        t_max: window(sim, t_pred)?,
        samples: sim.samples,
        per_vertex,
    };
    let res = success_curve(&exp.graph, gamma, &exp.config.vertices, opts)?;
    let meta = Meta::new("simulate")
        .with_design(&source.to_string(), &exp.inc)
        .with_gamma_tier(&format!("{tier}, gamma = {gamma}"));
    if format == Format::Json {
        write_json(g.out, &meta, &res)?;
        return Ok(Outcome::Success);
    }
    let mut header = vec!["t".to_string(), "p_total".to_string()];
    if per_vertex {
        header.extend(exp.config.vertices.iter().map(|w| format!("p_w{w}")));
    }
    let rows: Vec<Vec<f64>> = (0..res.t_grid.len())
        .map(|i| {
            let mut row = vec![res.t_grid[i], res.p_curve[i]];
            if let Some(pv) = &res.per_vertex {
                row.extend(pv.iter().map(|c| c[i]));
            }
            row
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut meta = meta;
    meta.command = format!(
        "simulate ({}; peak t = {}, p = {})",
        exp.config.kind.label(),
        res.t_peak,
        res.p_peak
    );
    write_csv(g.out, &meta, &header, &rows)?;
    Ok(Outcome::Success)
}

fn compare_cmd(g: &Global, source: &DesignSource, marked: &MarkedArgs, sim: &SimArgs) -> Result<Outcome> {
    g.format_or(Format::Json, &[Format::Json], "compare")?;
    let exp = Experiment::new(source, marked, g.seed)?;
    let (gamma, t_pred, tier) = exp.gamma(sim.gamma)?;
    let Some(pred) = &exp.prediction else {
        bail!(
            "no closed-form prediction to compare against: {}",
            exp.prediction_error.unwrap_or_default()
        );
    };
    let opts = CurveOptions {
        t_max: window(sim, t_pred)?,
        samples: sim.samples,
        per_vertex: false,
    };
    let emp = success_curve(&exp.graph, gamma, &exp.config.vertices, opts)?;
    let report = compare(pred, &emp);
    let meta = Meta::new("compare")
        .with_design(&source.to_string(), &exp.inc)
        .with_gamma_tier(tier);
    write_json(g.out, &meta, &report)?;
    Ok(Outcome::Success)
}

#[derive(Debug, Default, Serialize)]
struct SweepRow {
    family: String,
    param: u64,
    v: Option<u64>,
    k: Option<u64>,
    case: Option<String>,
    gamma: Option<f64>,
    t_opt_finite_v: Option<f64>,
    p_succ_finite_v: Option<f64>,
    t_opt_leading: Option<f64>,
    p_succ_leading: Option<f64>,
    t_peak: Option<f64>,
    p_peak: Option<f64>,
    t_rel_err_finite_v: Option<f64>,
    p_rel_err_finite_v: Option<f64>,
    t_rel_err_leading: Option<f64>,
    p_rel_err_leading: Option<f64>,
    error: Option<String>,
}

const SWEEP_HEADER: [&str; 17] = [
    "family",
    "param",
    "v",
    "k",
    "case",
    "gamma",
    "t_opt_finite_v",
    "p_succ_finite_v",
    "t_opt_leading",
    "p_succ_leading",
    "t_peak",
    "p_peak",
    "t_rel_err_finite_v",
    "p_rel_err_finite_v",
    "t_rel_err_leading",
    "p_rel_err_leading",
    "error",
];

fn sweep_row(family: Family, param: u64, marked: &MarkedArgs, sim: &SimArgs, seed: u64) -> SweepRow {
    let mut row = SweepRow {
        family: format!("{family:?}").to_lowercase(),
        param,
        ..Default::default()
    };
    let run = |row: &mut SweepRow| -> Result<()> {
        let exp = Experiment::new(&DesignSource::from_family(family, param), marked, seed)?;
        row.v = Some(exp.inc.params().v);
        row.k = Some(exp.inc.params().k);
        row.case = Some(exp.config.kind.label());
        let (gamma, t_pred, _) = exp.gamma(sim.gamma)?;
        row.gamma = Some(gamma);
        let opts = CurveOptions {
            t_max: window(sim, t_pred)?,
            samples: sim.samples,
            per_vertex: false,
        };
        let emp = success_curve(&exp.graph, gamma, &exp.config.vertices, opts)?;
        row.t_peak = Some(emp.t_peak);
        row.p_peak = Some(emp.p_peak);
        if let Some(pred) = &exp.prediction {
            let rep = compare(pred, &emp);
            if let Some(f) = rep.tier("finite_v") {
                row.t_opt_finite_v = Some(f.t_opt);
                row.p_succ_finite_v = f.p_succ;
                row.t_rel_err_finite_v = Some(f.t_rel_error);
                row.p_rel_err_finite_v = f.p_rel_error;
            }
            if let Some(l) = rep.tier("leading") {
                row.t_opt_leading = Some(l.t_opt);
                row.p_succ_leading = l.p_succ;
                row.t_rel_err_leading = Some(l.t_rel_error);
                row.p_rel_err_leading = l.p_rel_error;
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut row) {
        row.error = Some(format!("{e:#}"));
    }
    row
}

fn sweep(g: &Global, family: Family, params: &[u64], marked: &MarkedArgs, sim: &SimArgs) -> Result<Outcome> {
    let format = g.format_or(Format::Csv, &[Format::Csv, Format::Json], "sweep")?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.jobs)
        .build()
        .context("starting worker pool")?;
    // `collect` on an indexed parallel iterator keeps input order.
    let rows: Vec<SweepRow> = pool.install(|| {
        params
            .par_iter()
            .map(|&p| sweep_row(family, p, marked, sim, g.seed))
            .collect()
    });
    let tier = match sim.gamma {
        GammaPolicy::Auto => "row-sum (auto)".to_string(),
        other => other.to_string(),
    };
    let meta = Meta::new(&format!("sweep {family:?} ({})", marked.describe()).to_lowercase())
        .with_gamma_tier(&tier);
    match format {
        Format::Csv => write_csv(g.out, &meta, &SWEEP_HEADER, &rows)?,
        Format::Json => write_json(g.out, &meta, &rows)?,
    }
    Ok(Outcome::Success)
}
