//! The density-increment search for `D_k`.
//!
//! Starting from the whole tournament, order it, measure the backward edges
//! and ask the dichotomy for a certificate. A dense window is a smaller
//! tournament twice as far from transitive, so the search descends into it.
//! Once the descent stops, levels are tried deepest first: with long edges
//! and `alpha <= 2^-16` the triangle-rich edges feed the embedding pipeline
//! with `beta = alpha / 8`, `gamma = 1/64`; otherwise the pipeline runs in
//! adaptive mode on the edges in the most triangles, with `gamma` the
//! smallest count kept. Tiny inputs finally fall back
//! to exhaustive search.

use serde::{Deserialize, Serialize};

use crate::density::{edge_density, Density};
use crate::dk::{
    brute_force_contains_dk, check_dk_embedding, DkEmbedding, BRUTE_FORCE_MAX_K, BRUTE_FORCE_MAX_N,
};
use crate::embed::config::{Mode, PipelineConfig};
use crate::embed::pipeline::{self, Deadline, EmbeddingTrace, ImbalancedOutcome, RoundFailure};
use crate::error::{invalid, Error, Result, Stage};
use crate::ordering::{
    analyze_ordering, local_search_ordering, long_or_boost, Dichotomy, OrderingAnalysis,
};
use crate::rng;
use crate::tournament::Tournament;
use crate::triads::extract_triangle_rich;

/// Which search produced an embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Triangle-rich long edges with the proof's densities.
    TriangleRich,
    /// Adaptive pipeline on measured triangle counts.
    Fallback,
    /// Exhaustive search on a tiny tournament.
    BruteForce,
}

/// One step of the descent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub depth: usize,
    pub n: usize,
    pub eps: Density,
    pub alpha: Density,
    pub backward: usize,
    pub long: usize,
    pub outcome: Dichotomy,
}

/// One pipeline invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub depth: usize,
    pub route: Route,
    pub edges: usize,
    pub beta: Option<Density>,
    pub gamma: Option<Density>,
    pub found: bool,
    /// Set when the route could not start.
    pub skipped: Option<String>,
    pub failures: Vec<RoundFailure>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FindDkReport {
    pub k: usize,
    pub eps: Density,
    pub mode: Mode,
    pub seed: u64,
    /// In the ids of the input tournament; always verified.
    pub embedding: Option<DkEmbedding>,
    pub route: Option<Route>,
    /// Pipeline witness chain, relabelled to the input ids.
    pub trace: Option<EmbeddingTrace>,
    pub levels: Vec<Level>,
    pub attempts: Vec<Attempt>,
    pub fail_stage: Option<Stage>,
    /// `|B''|` of the top-level ordering, when the extraction's hypotheses
    /// hold there.
    pub triangle_rich: Option<usize>,
}

impl FindDkReport {
    pub fn found(&self) -> bool {
        self.embedding.is_some()
    }
}

struct Frame {
    t: Tournament,
    /// Input id of each vertex of `t`.
    map: Vec<usize>,
    analysis: OrderingAnalysis,
}

/// Searches `t` for a copy of `D_k`, treating `t` as `eps`-far from
/// transitive.
///
/// Any returned embedding has been checked against the definition; a `None`
/// embedding carries the stage at which the last attempt stopped.
pub fn find_dk(
    t: &Tournament,
    k: usize,
    eps: Density,
    cfg: &PipelineConfig,
) -> Result<FindDkReport> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    if *eps.numer() == 0 {
        return Err(invalid("eps must be positive"));
    }
    let deadline = Deadline::new(cfg.time_budget_ms);
    let mut report = FindDkReport {
        k,
        eps,
        mode: cfg.mode,
        seed: cfg.seed,
        embedding: None,
        route: None,
        trace: None,
        levels: Vec::new(),
        attempts: Vec::new(),
        fail_stage: None,
        triangle_rich: None,
    };

    // Descend while the dichotomy hands back a dense window.
    let mut frames: Vec<Frame> = Vec::new();
    let mut cur = t.clone();
    let mut map: Vec<usize> = (0..t.n()).collect();
    let mut eps_i = eps;
    loop {
        let depth = frames.len();
        let analysis = best_ordering(
            &cur,
            rng::derive_seed(cfg.seed, "order", depth as u64),
            cfg.order_restarts,
        )?;
        let dich = long_or_boost(&cur, &analysis, eps_i)?;
        report.levels.push(Level {
            depth,
            n: cur.n(),
            eps: eps_i,
            alpha: analysis.alpha(),
            backward: analysis.backward.len(),
            long: analysis.long_edges.len(),
            outcome: dich.outcome.clone(),
        });
        let window = match dich.outcome {
            Dichotomy::DenseWindow { start, width, .. } if width >= 3 * k => Some((start, width)),
            _ => None,
        };
        let next = window.map(|(start, width)| analysis.order[start..start + width].to_vec());
        frames.push(Frame {
            t: cur.clone(),
            map: map.clone(),
            analysis,
        });
        match next {
            Some(sub) => {
                cur = cur.induced(&sub)?;
                map = sub.iter().map(|&v| map[v]).collect();
                eps_i *= 2;
            }
            None => break,
        }
    }

    report.triangle_rich = match extract_triangle_rich(&frames[0].t, &frames[0].analysis) {
        Ok(set) => Some(set.edges.len()),
        Err(Error::HypothesisViolated(_)) => None,
        Err(e) => return Err(e),
    };

    let small_alpha = Density::new(1, 1 << 16);
    for (depth, frame) in frames.iter().enumerate().rev() {
        if deadline.expired() {
            report.fail_stage = Some(Stage::Budget);
            break;
        }
        let level = &report.levels[depth];
        let long = matches!(level.outcome, Dichotomy::LongEdges { .. });
        if long && level.alpha <= small_alpha {
            if let Some(found) = triangle_rich_route(frame, depth, k, cfg, &deadline, &mut report)?
            {
                finish(t, frame, found, Route::TriangleRich, &mut report)?;
                return Ok(report);
            }
        }
        if let Some(found) = fallback_route(frame, depth, k, cfg, &deadline, &mut report)? {
            finish(t, frame, found, Route::Fallback, &mut report)?;
            return Ok(report);
        }
    }

    if cfg.brute_force_fallback && t.n() <= BRUTE_FORCE_MAX_N && k <= BRUTE_FORCE_MAX_K {
        if let Some(emb) = brute_force_contains_dk(t, k)? {
            debug_assert!(check_dk_embedding(t, &emb)?);
            report.embedding = Some(emb);
            report.route = Some(Route::BruteForce);
            report.fail_stage = None;
            return Ok(report);
        }
    }
    if report.fail_stage.is_none() {
        report.fail_stage = report
            .attempts
            .iter()
            .rev()
            .find_map(|a| a.failures.last().map(|f| f.stage))
            .or(Some(Stage::Ordering));
    }
    Ok(report)
}

fn triangle_rich_route(
    frame: &Frame,
    depth: usize,
    k: usize,
    cfg: &PipelineConfig,
    deadline: &Deadline,
    report: &mut FindDkReport,
) -> Result<Option<EmbeddingTrace>> {
    let t = &frame.t;
    let a = &frame.analysis;
    let mut attempt = Attempt {
        depth,
        route: Route::TriangleRich,
        edges: 0,
        beta: None,
        gamma: None,
        found: false,
        skipped: None,
        failures: Vec::new(),
    };
    let set = match extract_triangle_rich(t, a) {
        Ok(set) => set,
        Err(Error::HypothesisViolated(why)) => {
            attempt.skipped = Some(why);
            report.attempts.push(attempt);
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let edges = set.directed_edges(&a.order);
    let beta = a.alpha() / 8;
    let gamma = Density::new(1, 64);
    attempt.edges = edges.len();
    attempt.beta = Some(beta);
    attempt.gamma = Some(gamma);
    let out = pipeline::run(t, &edges, beta, gamma, k, cfg, Some(&a.order), deadline)?;
    Ok(record(attempt, out, report))
}

/// Lowest-count local search ordering over `restarts` seeds (first wins ties).
fn best_ordering(t: &Tournament, seed: u64, restarts: usize) -> Result<OrderingAnalysis> {
    let mut best: Option<OrderingAnalysis> = None;
    for r in 0..restarts.max(1) {
        let order = local_search_ordering(t, rng::derive_seed(seed, "restart", r as u64));
        let a = analyze_ordering(t, &order)?;
        if best
            .as_ref()
            .is_none_or(|b| a.backward.len() < b.backward.len())
        {
            best = Some(a);
        }
    }
    Ok(best.expect("at least one run"))
}

/// The `q`-quantile of `counts` (0 when empty).
fn quantile(mut counts: Vec<usize>, q: f64) -> usize {
    if counts.is_empty() {
        return 0;
    }
    counts.sort_unstable();
    let i = ((counts.len() - 1) as f64 * q.clamp(0.0, 1.0)).floor() as usize;
    counts[i]
}

/// The adaptive pipeline on the edges whose triangle count reaches the
/// configured quantile.
fn fallback_route(
    frame: &Frame,
    depth: usize,
    k: usize,
    cfg: &PipelineConfig,
    deadline: &Deadline,
    report: &mut FindDkReport,
) -> Result<Option<EmbeddingTrace>> {
    let t = &frame.t;
    let a = &frame.analysis;
    let n = t.n();
    let counted: Vec<((usize, usize), usize)> = t
        .edges()
        .map(|(u, v)| ((u, v), t.completers(u, v)))
        .filter(|&(_, c)| c > 0)
        .collect();
    let floor = quantile(
        counted.iter().map(|&(_, c)| c).collect(),
        cfg.adaptive.edge_quantile,
    );
    let edges: Vec<(usize, usize)> = counted
        .iter()
        .filter(|&&(_, c)| c >= floor)
        .map(|&(e, _)| e)
        .collect();
    let min_count = floor;
    let mut attempt = Attempt {
        depth,
        route: Route::Fallback,
        edges: edges.len(),
        beta: None,
        gamma: None,
        found: false,
        skipped: None,
        failures: Vec::new(),
    };
    if edges.is_empty() || n < 3 * k {
        attempt.skipped = Some(if edges.is_empty() {
            "no edge lies in a triangle".into()
        } else {
            format!("{n} vertices cannot hold D_{k}")
        });
        report.attempts.push(attempt);
        return Ok(None);
    }
    let beta = edge_density(edges.len(), n).min(Density::from_integer(1));
    let gamma = Density::new(min_count as u64, n as u64);
    attempt.beta = Some(beta);
    attempt.gamma = Some(gamma);
    let adaptive = cfg.clone().with_mode(Mode::Adaptive);
    let out = pipeline::run(
        t,
        &edges,
        beta,
        gamma,
        k,
        &adaptive,
        Some(&a.order),
        deadline,
    )?;
    Ok(record(attempt, out, report))
}

fn record(
    mut attempt: Attempt,
    out: ImbalancedOutcome,
    report: &mut FindDkReport,
) -> Option<EmbeddingTrace> {
    attempt.found = out.trace.is_some();
    attempt.failures = out.failures;
    report.attempts.push(attempt);
    out.trace
}

fn finish(
    t: &Tournament,
    frame: &Frame,
    trace: EmbeddingTrace,
    route: Route,
    report: &mut FindDkReport,
) -> Result<()> {
    let trace = trace.relabel(&frame.map);
    if !check_dk_embedding(t, &trace.result)? {
        return Err(invalid("relabelled embedding failed verification"));
    }
    report.embedding = Some(trace.result.clone());
    report.trace = Some(trace);
    report.route = Some(route);
    report.fail_stage = None;
    Ok(())
}
