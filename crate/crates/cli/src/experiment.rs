//! Batch experiments: a generator template swept over `(n, k, eps)` points
//! and seeds, one CSV row per instance.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tourney_core::density::{parse_density, to_f64, Density};
use tourney_core::generate::{Family, GeneratorSpec};
use tourney_core::triads::count_directed_triangles;
use tourney_core::{find_dk, Mode, PipelineConfig, Stage};

use crate::args::ExperimentArgs;
use crate::error::{CliError, CliResult, EXIT_OK};

pub const CSV_HEADER: &str =
    "n,k,eps,mode,seed,found,fail_stage,alpha,b_prime,b_dprime,triangles,c_prime,ms";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EpsValue {
    Text(String),
    Number(f64),
}

impl EpsValue {
    pub fn density(&self) -> CliResult<Density> {
        let text = match self {
            EpsValue::Text(s) => s.clone(),
            EpsValue::Number(x) => x.to_string(),
        };
        parse_density(&text).map_err(|e| CliError::Usage(format!("bad eps {text:?}: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepPoint {
    /// Generator size; ignored by families whose size comes from the
    /// template.
    #[serde(default)]
    pub n: Option<usize>,
    pub k: usize,
    pub eps: EpsValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Seeds {
    List(Vec<u64>),
    Count(usize),
}

impl Seeds {
    pub fn list(&self) -> Vec<u64> {
        match self {
            Seeds::List(v) => v.clone(),
            Seeds::Count(c) => (0..*c as u64).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Generator template. Missing `n` is taken from the sweep point, and
    /// for eps-random a missing `eps` too; the row seed replaces `seed`.
    pub family: GeneratorSpec,
    pub sweep: Vec<SweepPoint>,
    pub seeds: Seeds,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Per-run wall-clock budget in seconds.
    #[serde(default = "default_budget")]
    pub budget: f64,
    /// Fill the `ms` column. Off by default so reruns are byte-identical.
    #[serde(default)]
    pub timing: bool,
    /// Search tunables; `seed`, `mode` and the budget are set per row.
    #[serde(default)]
    pub pipeline: PipelineConfig,
}

fn default_budget() -> f64 {
    600.0
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let cfg: ExperimentConfig = match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => toml::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
            _ => serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.sweep.is_empty() {
            return Err(CliError::Usage("sweep is empty".into()));
        }
        let seeds = self.seeds.list();
        if seeds.is_empty() {
            return Err(CliError::Usage("no seeds".into()));
        }
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != seeds.len() {
            return Err(CliError::Usage("seeds must be distinct".into()));
        }
        if !(self.budget > 0.0 && self.budget.is_finite()) {
            return Err(CliError::Usage("budget must be positive".into()));
        }
        for p in &self.sweep {
            if *p.eps.density()?.numer() == 0 {
                return Err(CliError::Usage("sweep eps must be positive".into()));
            }
        }
        Ok(())
    }

    /// Rows in output order: sweep points outermost, then seeds.
    pub fn jobs(&self) -> Vec<(SweepPoint, u64)> {
        let seeds = self.seeds.list();
        self.sweep
            .iter()
            .flat_map(|p| seeds.iter().map(move |&s| (p.clone(), s)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub n: usize,
    pub k: usize,
    pub eps: String,
    pub mode: String,
    pub seed: u64,
    pub found: bool,
    pub fail_stage: String,
    pub alpha: String,
    pub b_prime: usize,
    pub b_dprime: Option<usize>,
    pub triangles: u64,
    pub c_prime: Option<String>,
    pub ms: Option<u128>,
}

pub fn run_row(cfg: &ExperimentConfig, point: &SweepPoint, seed: u64) -> CliResult<Row> {
    let eps = point.eps.density()?;
    let mut spec = cfg.family.clone();
    spec.seed = seed;
    spec.n = spec.n.or(point.n);
    if spec.family == Family::EpsRandom && spec.eps.is_none() {
        spec.eps = Some(to_f64(eps));
    }
    let t = spec.generate()?;
    let n = t.n();

    let mut pc = cfg.pipeline.clone().with_seed(seed).with_mode(cfg.mode);
    pc.time_budget_ms = Some((cfg.budget * 1000.0).ceil() as u64);
    let start = Instant::now();
    let report = find_dk(&t, point.k, eps, &pc)?;
    let ms = start.elapsed().as_millis();

    let triangles = count_directed_triangles(&t);
    let top = &report.levels[0];
    let c_prime = (top.backward > 0).then(|| {
        let a = to_f64(top.alpha);
        format!("{:.6}", triangles as f64 / (a * a * (n as f64).powi(3)))
    });
    let fail_stage = match report.fail_stage {
        _ if report.found() => String::new(),
        Some(Stage::Budget) => "timeout".into(),
        Some(s) => s.to_string(),
        None => String::new(),
    };
    Ok(Row {
        n,
        k: point.k,
        eps: eps.to_string(),
        mode: cfg.mode.to_string(),
        seed,
        found: report.found(),
        fail_stage,
        alpha: format!("{:.9}", to_f64(top.alpha)),
        b_prime: top.long,
        b_dprime: report.triangle_rich,
        triangles,
        c_prime,
        ms: cfg.timing.then_some(ms),
    })
}

/// Runs every row, up to `jobs` at a time, and returns them in config order.
pub fn run_experiment(cfg: &ExperimentConfig, jobs: Option<usize>) -> CliResult<Vec<Row>> {
    cfg.validate()?;
    let work = cfg.jobs();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| work.par_iter().map(|(p, s)| run_row(cfg, p, *s)).collect())
}

pub fn rows_to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn cmd_experiment(args: &ExperimentArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = ExperimentConfig::load(&args.config)?;
    if args.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let rows = run_experiment(&cfg, args.jobs)?;
    let csv = rows_to_csv(&rows);
    let path = args.out.as_deref().or(cfg.output.as_deref());
    crate::commands::write_output(path, &csv, out)?;
    Ok(EXIT_OK)
}
