use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use tourney_core::density::{parse_density, Density};
use tourney_core::generate::GeneratorSpec;
use tourney_core::ordering::{
    analyze_ordering, exact_min_backward, local_search_ordering, EXACT_MAX_N,
};
use tourney_core::triads::{count_directed_triangles, triangle_constant};
use tourney_core::{find_dk, parse_tournament, serialize_tournament, PipelineConfig, Tournament};

use crate::args::{AnalyzeArgs, FindDkArgs, GenArgs};
use crate::error::{CliError, CliResult, EXIT_NEGATIVE, EXIT_OK};

pub fn read_tournament(path: &Path) -> CliResult<Tournament> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_tournament(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub(crate) fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

pub(crate) fn density_arg(s: &str) -> CliResult<Density> {
    parse_density(s).map_err(|e| CliError::Usage(format!("bad density {s:?}: {e}")))
}

pub(crate) fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> CliResult<i32> {
    let spec = GeneratorSpec {
        family: args.family.into(),
        n: args.n,
        k: args.k,
        m: args.m,
        eps: args.eps,
        min_length: args.min_length,
        seed: args.seed,
    };
    let t = spec.generate()?;
    write_output(args.out.as_deref(), &serialize_tournament(&t), out)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    /// Backward edges of the local-search ordering.
    pub backward: usize,
    /// Minimum over all orderings, when `n` is small enough to compute it.
    pub exact_backward: Option<usize>,
    pub alpha: String,
    pub alpha_f64: f64,
    pub long_edges: usize,
    pub triangles: u64,
    pub eps: Option<String>,
    /// `triangles / (eps^2 n^3)`.
    pub c_prime: Option<f64>,
}

pub fn analyze(t: &Tournament, eps: Option<Density>, seed: u64) -> AnalyzeReport {
    let order = local_search_ordering(t, seed);
    let a = analyze_ordering(t, &order).expect("local search yields a permutation");
    let exact =
        (t.n() <= EXACT_MAX_N).then(|| exact_min_backward(t).expect("within limit").backward);
    let triangles = count_directed_triangles(t);
    AnalyzeReport {
        n: t.n(),
        backward: a.backward.len(),
        exact_backward: exact,
        alpha: a.alpha().to_string(),
        alpha_f64: a.alpha_f64(),
        long_edges: a.long_edges.len(),
        triangles,
        eps: eps.map(|e| e.to_string()),
        c_prime: eps.map(|e| triangle_constant(triangles, t.n(), e).value()),
    }
}

pub fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> CliResult<i32> {
    let t = read_tournament(&args.input)?;
    let eps = args.eps.as_deref().map(density_arg).transpose()?;
    if eps.is_some_and(|e| *e.numer() == 0) {
        return Err(CliError::Usage("eps must be positive".into()));
    }
    write_output(None, &to_json(&analyze(&t, eps, args.seed)), out)?;
    Ok(EXIT_OK)
}

pub fn cmd_find_dk(args: &FindDkArgs, out: &mut dyn Write) -> CliResult<i32> {
    let t = read_tournament(&args.input)?;
    let eps = density_arg(&args.eps)?;
    let mut cfg = PipelineConfig::default()
        .with_seed(args.seed)
        .with_mode(args.mode.into());
    if let Some(r) = args.stage_retries {
        cfg.stage_retries = r;
    }
    cfg.time_budget_ms = args.budget_ms;
    let report = find_dk(&t, args.k, eps, &cfg)?;
    write_output(args.out.as_deref(), &to_json(&report), out)?;
    Ok(if report.found() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}
