//! The embedding pipeline for edge sets whose members each lie in many
//! directed triangles.
//!
//! Stages, in order: tripartition and good edges; dependent random choice on
//! the good-edge bipartite graph; a transitive set `S1` in the survivors; a
//! transitive set `S2` in the common neighbourhood of `S1`; a matching
//! between them; a complete bipartite subgraph between matching edges and
//! `V3` in the triangle-completion graph; a transitive set `S3` there. Any
//! result is checked against the definition of `D_k` before it is returned.

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

use crate::bits::BitSet;
use crate::density::{ceil_mul, to_f64, Density};
use crate::dk::{check_dk_embedding, DkEmbedding};
use crate::embed::bipartite::BipartiteGraph;
use crate::embed::config::{Mode, PipelineConfig};
use crate::embed::drc::{dependent_random_choice, dependent_random_choice_unchecked, DrcParams};
use crate::embed::kst::{greedy_matching, kst_extract};
use crate::embed::partition::{
    good_edges, random_tripartition, split_thirds, triangle_seeded_tripartition, Parts,
    Tripartition,
};
use crate::embed::transitive::erdos_moser;
use crate::error::{invalid, Error, Result, Stage};
use crate::rng;
use crate::tournament::Tournament;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetryCounts {
    pub partitions_evaluated: usize,
    /// Zero-based round that produced the trace.
    pub round: usize,
    pub drc_attempts: usize,
    pub kst_attempts: usize,
    pub kst_exhaustive: bool,
}

/// The witness chain of one successful pipeline run. Vertex ids refer to the
/// tournament the trace was produced for (see [`EmbeddingTrace::relabel`]).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingTrace {
    pub mode: Mode,
    pub k: usize,
    pub params: DrcParams,
    /// Required size of `w3`.
    pub target: usize,
    pub partition: Tripartition,
    /// `V2` vertices sampled by dependent random choice.
    pub drc_samples: Vec<usize>,
    pub w1: Vec<usize>,
    /// Transitive order.
    pub s1: Vec<usize>,
    /// Transitive order.
    pub s2: Vec<usize>,
    /// `(s1[i], s2[i])` for `i < d`.
    pub matching: Vec<(usize, usize)>,
    /// Indices into `matching` completely joined to `w3`.
    pub selected: Vec<usize>,
    pub w3: Vec<usize>,
    /// Transitive order.
    pub s3: Vec<usize>,
    pub result: DkEmbedding,
    pub retries: RetryCounts,
}

impl EmbeddingTrace {
    pub fn relabel(&self, map: &[usize]) -> EmbeddingTrace {
        let f = |v: &[usize]| v.iter().map(|&x| map[x]).collect::<Vec<_>>();
        EmbeddingTrace {
            mode: self.mode,
            k: self.k,
            params: self.params.clone(),
            target: self.target,
            partition: self.partition.relabel(map),
            drc_samples: f(&self.drc_samples),
            w1: f(&self.w1),
            s1: f(&self.s1),
            s2: f(&self.s2),
            matching: self
                .matching
                .iter()
                .map(|&(a, b)| (map[a], map[b]))
                .collect(),
            selected: self.selected.clone(),
            w3: f(&self.w3),
            s3: f(&self.s3),
            result: self.result.relabel(map),
            retries: self.retries.clone(),
        }
    }
}

/// Why one pipeline round stopped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundFailure {
    pub round: usize,
    pub stage: Stage,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImbalancedOutcome {
    pub trace: Option<EmbeddingTrace>,
    pub failures: Vec<RoundFailure>,
    pub partitions_evaluated: usize,
    /// Largest good-edge count over the evaluated partitions.
    pub best_good: usize,
}

impl ImbalancedOutcome {
    /// Stage at which the last round stopped, if no trace was produced.
    pub fn fail_stage(&self) -> Option<Stage> {
        if self.trace.is_some() {
            None
        } else {
            self.failures.last().map(|f| f.stage)
        }
    }
}

/// Wall-clock limit shared by the stages of one search.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    pub(crate) fn new(limit_ms: Option<u64>) -> Self {
        Self {
            start: Instant::now(),
            limit: limit_ms.map(Duration::from_millis),
        }
    }

    pub(crate) fn expired(&self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() > l)
    }
}

/// Stage parameters for one call.
#[derive(Clone, Debug)]
struct Plan {
    params: DrcParams,
    target: usize,
}

fn plan(n: usize, k: usize, beta: Density, gamma: Density, cfg: &PipelineConfig) -> Plan {
    match cfg.mode {
        Mode::Paper => {
            // d = ceil(3k / gamma), l = 4d.
            let d = ((3 * k as u128) * u128::from(*gamma.denom()))
                .div_ceil(u128::from(*gamma.numer())) as usize;
            let l = 4 * d;
            let third = (n / 3) as f64;
            let sqrt_n = (n as f64).sqrt().ceil() as usize;
            Plan {
                params: DrcParams {
                    d,
                    l,
                    beta,
                    gamma,
                    neighborhood_floor: third.powf(1.0 - d as f64 / l as f64).ceil() as usize,
                    min_set_size: sqrt_n,
                },
                target: sqrt_n,
            }
        }
        Mode::Adaptive => {
            let a = &cfg.adaptive;
            let d = k.max((a.d_factor * k as f64).ceil() as usize);
            Plan {
                params: DrcParams {
                    d,
                    l: a.l.max(1),
                    beta,
                    gamma,
                    neighborhood_floor: a.neighborhood_floor,
                    min_set_size: d,
                },
                target: k,
            }
        }
    }
}

/// Searches for `D_k` using edges that each lie in at least `gamma n`
/// directed triangles, `|edges| >= beta n^2`.
///
/// Partitions are drawn at random; adaptive mode also grows some around
/// directed triangles through sampled input edges. Rounds walk the
/// partitions with the most good edges first.
///
/// Returns no trace when every round fails; the failures say where. Errors
/// are reserved for invalid arguments.
pub fn find_dk_imbalanced(
    t: &Tournament,
    edges: &[(usize, usize)],
    beta: Density,
    gamma: Density,
    k: usize,
    cfg: &PipelineConfig,
) -> Result<ImbalancedOutcome> {
    run(
        t,
        edges,
        beta,
        gamma,
        k,
        cfg,
        None,
        &Deadline::new(cfg.time_budget_ms),
    )
}

/// As [`find_dk_imbalanced`], additionally offering partitions that take
/// consecutive thirds of cyclic shifts of `order` (first third as `V2`,
/// middle as `V3`, last as `V1`) alongside the random ones. With backward
/// edges as input this puts tails in `V1` and heads in `V2`. Only adaptive
/// mode uses the hint.
pub fn find_dk_imbalanced_with_order(
    t: &Tournament,
    edges: &[(usize, usize)],
    beta: Density,
    gamma: Density,
    k: usize,
    cfg: &PipelineConfig,
    order: &[usize],
) -> Result<ImbalancedOutcome> {
    run(
        t,
        edges,
        beta,
        gamma,
        k,
        cfg,
        Some(order),
        &Deadline::new(cfg.time_budget_ms),
    )
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn run(
    t: &Tournament,
    edges: &[(usize, usize)],
    beta: Density,
    gamma: Density,
    k: usize,
    cfg: &PipelineConfig,
    order: Option<&[usize]>,
    deadline: &Deadline,
) -> Result<ImbalancedOutcome> {
    let n = t.n();
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    if n < 3 {
        return Err(invalid(format!("need at least 3 vertices, got {n}")));
    }
    for (name, x) in [("beta", beta), ("gamma", gamma)] {
        if *x.numer() == 0 || x > Density::from_integer(1) {
            return Err(invalid(format!("{name} = {x} is outside (0, 1]")));
        }
    }
    let mut outcome = ImbalancedOutcome {
        trace: None,
        failures: Vec::new(),
        partitions_evaluated: 0,
        best_good: 0,
    };
    if edges.is_empty() {
        outcome.failures.push(RoundFailure {
            round: 0,
            stage: Stage::Partition,
            reason: "edge set is empty".into(),
        });
        return Ok(outcome);
    }
    if 3 * k > n {
        outcome.failures.push(RoundFailure {
            round: 0,
            stage: Stage::Partition,
            reason: format!("D_{k} needs {} vertices, have {n}", 3 * k),
        });
        return Ok(outcome);
    }
    let plan = plan(n, k, beta, gamma, cfg);

    // Evaluate candidate partitions, then walk them best first.
    let mut ranked: Vec<Tripartition> = Vec::new();
    if let (Some(order), Mode::Adaptive) = (order, cfg.mode) {
        for shift in shift_offsets(order.len(), cfg.adaptive.shifts) {
            let rotated: Vec<usize> = order[shift..]
                .iter()
                .chain(&order[..shift])
                .copied()
                .collect();
            let thirds = split_thirds(&rotated);
            let parts = Parts {
                v1: thirds.v3,
                v2: thirds.v1,
                v3: thirds.v2,
            };
            ranked.push(good_edges(t, edges, &parts, gamma)?);
        }
    }
    if cfg.mode == Mode::Adaptive {
        for r in 0..cfg.adaptive.triangle_seeds {
            let mut rng = rng::stream(cfg.seed, "triangle-seed", r as u64);
            let (x, y) = edges[rng.random_range(0..edges.len())];
            let zs: Vec<usize> = (0..n).filter(|&z| t.beats(y, z) && t.beats(z, x)).collect();
            if zs.is_empty() {
                continue;
            }
            let z = zs[rng.random_range(0..zs.len())];
            let parts = triangle_seeded_tripartition(t, (x, y, z), rng.random())?;
            ranked.push(good_edges(t, edges, &parts, gamma)?);
        }
    }
    let good_target = ceil_mul(beta, (n * n) as u64).div_ceil(27) as usize;
    for r in 0..cfg.partition_retries.max(1) {
        let parts = random_tripartition(t, rng::derive_seed(cfg.seed, "partition", r as u64))?;
        let tri = good_edges(t, edges, &parts, gamma)?;
        let enough = tri.good_count() >= good_target;
        ranked.push(tri);
        if enough && cfg.mode == Mode::Paper {
            break;
        }
    }
    outcome.partitions_evaluated = ranked.len();
    let counts: Vec<usize> = ranked.iter().map(Tripartition::good_count).collect();
    let mut idx: Vec<usize> = (0..ranked.len()).collect();
    idx.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
    outcome.best_good = counts[idx[0]];
    if outcome.best_good == 0 {
        outcome.failures.push(RoundFailure {
            round: 0,
            stage: Stage::Partition,
            reason: format!("no good edges in {} partitions", ranked.len()),
        });
        return Ok(outcome);
    }
    let usable: Vec<usize> = idx.into_iter().filter(|&i| counts[i] > 0).collect();

    for round in 0..cfg.stage_retries.max(1) {
        if deadline.expired() {
            outcome.failures.push(RoundFailure {
                round,
                stage: Stage::Budget,
                reason: "time budget exhausted".into(),
            });
            break;
        }
        let tri = &ranked[usable[round % usable.len()]];
        match attempt(t, tri, &plan, k, cfg, round) {
            Ok(mut trace) => {
                trace.retries.partitions_evaluated = ranked.len();
                outcome.trace = Some(trace);
                return Ok(outcome);
            }
            Err(Error::StageFailure { stage, reason }) => outcome.failures.push(RoundFailure {
                round,
                stage,
                reason,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(outcome)
}

/// All offsets when `n <= count`, otherwise `count` evenly spaced ones.
fn shift_offsets(n: usize, count: usize) -> Vec<usize> {
    if n <= count {
        (0..n).collect()
    } else {
        (0..count).map(|i| i * n / count).collect()
    }
}

fn stage_err(stage: Stage, reason: String) -> Error {
    Error::StageFailure { stage, reason }
}

/// One round on a fixed tripartition.
fn attempt(
    t: &Tournament,
    tri: &Tripartition,
    plan: &Plan,
    k: usize,
    cfg: &PipelineConfig,
    round: usize,
) -> Result<EmbeddingTrace> {
    let n = t.n();
    let parts = &tri.parts;
    let d = plan.params.d;
    let mut pos1 = vec![usize::MAX; n];
    let mut pos2 = vec![usize::MAX; n];
    for (i, &v) in parts.v1.iter().enumerate() {
        pos1[v] = i;
    }
    for (i, &v) in parts.v2.iter().enumerate() {
        pos2[v] = i;
    }
    let mut h = BipartiteGraph::new(parts.v1.clone(), parts.v2.clone());
    for e in tri.good() {
        h.add_edge(pos1[e.tail], pos2[e.head]);
    }

    let drc_seed = rng::derive_seed(cfg.seed, "drc-round", round as u64);
    let drc = match cfg.mode {
        Mode::Paper => dependent_random_choice(
            &h,
            &plan.params,
            drc_seed,
            cfg.drc_retries.max(1),
            cfg.drc_spot_checks,
        )?,
        Mode::Adaptive => dependent_random_choice_unchecked(
            &h,
            &plan.params,
            drc_seed,
            cfg.drc_retries.max(1),
            cfg.drc_spot_checks,
        )?,
    };
    let w1: Vec<usize> = drc.set.iter().map(|&a| parts.v1[a]).collect();

    let pool1 = erdos_moser(t, &w1);
    if pool1.len() < d {
        return Err(stage_err(
            Stage::FirstTransitive,
            format!(
                "transitive set of {} in W1 (|W1| = {}), need {d}",
                pool1.len(),
                w1.len()
            ),
        ));
    }
    let pool1_idx: Vec<usize> = pool1.iter().map(|&v| pos1[v]).collect();
    let chosen1 = match cfg.mode {
        Mode::Paper => pool1_idx[..d].to_vec(),
        Mode::Adaptive => pick_by_common_neighbourhood(&h, &pool1_idx, d),
    };
    let s1: Vec<usize> = chosen1.iter().map(|&a| parts.v1[a]).collect();

    let common: Vec<usize> = h
        .common_right(&chosen1)
        .iter()
        .map(|b| parts.v2[b])
        .collect();
    let pool2 = erdos_moser(t, &common);
    if pool2.len() < d {
        return Err(stage_err(
            Stage::SecondTransitive,
            format!(
                "transitive set of {} in the common neighbourhood ({} vertices), need {d}",
                pool2.len(),
                common.len()
            ),
        ));
    }
    let s2 = pool2[..d].to_vec();
    let matching = greedy_matching(&s1, &s2, d)?;

    // Matching edge i is joined to z in V3 when y_i -> z -> x_i.
    let v3 = parts.v3.clone();
    let g = BipartiteGraph::from_fn((0..d).collect(), v3.clone(), |i, b| {
        let (x, y) = matching[i];
        let z = v3[b];
        t.beats(y, z) && t.beats(z, x)
    });
    let kst = kst_extract(
        &g,
        k,
        plan.target,
        rng::derive_seed(cfg.seed, "kst-round", round as u64),
        cfg.kst_retries,
        cfg.kst_exhaustive_max_d,
    )?;
    let w3: Vec<usize> = kst.columns.iter().map(|&b| v3[b]).collect();
    let s3 = erdos_moser(t, &w3);
    if s3.len() < k {
        return Err(stage_err(
            Stage::ThirdTransitive,
            format!(
                "transitive set of {} in W3 (|W3| = {}), need {k}",
                s3.len(),
                w3.len()
            ),
        ));
    }

    let result = DkEmbedding::new(
        kst.rows.iter().map(|&i| matching[i].0).collect(),
        kst.rows.iter().map(|&i| matching[i].1).collect(),
        s3[..k].to_vec(),
    );
    if !check_dk_embedding(t, &result)? {
        return Err(stage_err(
            Stage::Assembly,
            "assembled classes do not form D_k".into(),
        ));
    }
    Ok(EmbeddingTrace {
        mode: cfg.mode,
        k,
        params: plan.params.clone(),
        target: plan.target,
        partition: tri.clone(),
        drc_samples: drc.samples.iter().map(|&b| parts.v2[b]).collect(),
        w1,
        s1,
        s2,
        matching,
        selected: kst.rows.clone(),
        w3,
        s3,
        result,
        retries: RetryCounts {
            partitions_evaluated: 0,
            round,
            drc_attempts: drc.attempts,
            kst_attempts: kst.attempts,
            kst_exhaustive: kst.exhaustive,
        },
    })
}

/// Greedily picks `d` members of `pool` keeping the common right-side
/// neighbourhood as large as possible; returns them in `pool` order.
fn pick_by_common_neighbourhood(h: &BipartiteGraph, pool: &[usize], d: usize) -> Vec<usize> {
    let mut current = BitSet::full(h.right.len());
    let mut taken = vec![false; pool.len()];
    for _ in 0..d {
        let (best, _) = pool
            .iter()
            .enumerate()
            .filter(|(i, _)| !taken[*i])
            .map(|(i, &a)| (i, h.row(a).intersection_count(&current)))
            .fold((usize::MAX, 0), |acc, (i, c)| {
                if acc.0 == usize::MAX || c > acc.1 {
                    (i, c)
                } else {
                    acc
                }
            });
        taken[best] = true;
        current.intersect_with(h.row(pool[best]));
    }
    pool.iter()
        .zip(&taken)
        .filter(|(_, &t)| t)
        .map(|(&a, _)| a)
        .collect()
}

/// A failed clause of a trace re-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceViolation {
    pub clause: String,
    pub detail: String,
}

/// Re-verifies every invariant of `trace` against `t` from scratch.
pub fn verify_trace(t: &Tournament, trace: &EmbeddingTrace) -> Result<Option<TraceViolation>> {
    let n = t.n();
    let bad = |clause: &str, detail: String| {
        Ok(Some(TraceViolation {
            clause: clause.into(),
            detail,
        }))
    };
    let parts = &trace.partition.parts;
    let all = [
        &parts.v1,
        &parts.v2,
        &parts.v3,
        &trace.w1,
        &trace.s1,
        &trace.s2,
        &trace.w3,
        &trace.s3,
        &trace.drc_samples,
    ];
    if let Some(v) = all.iter().flat_map(|s| s.iter()).find(|&&v| v >= n) {
        return Err(invalid(format!("vertex {v} out of range (n = {n})")));
    }
    if parts.v1.len() != parts.v2.len() || parts.v2.len() != parts.v3.len() {
        return bad("partition sizes", "classes differ in size".into());
    }
    let mut member = vec![None; n];
    for (c, p) in [&parts.v1, &parts.v2, &parts.v3].into_iter().enumerate() {
        for &v in p {
            if member[v].replace(c).is_some() {
                return bad("partition disjoint", format!("vertex {v} appears twice"));
            }
        }
    }
    let v3 = BitSet::from_indices(n, parts.v3.iter().copied());
    for e in &trace.partition.candidates {
        if member[e.tail] != Some(0) || member[e.head] != Some(1) {
            return bad(
                "good edge sides",
                format!("{}->{} does not run V1->V2", e.tail, e.head),
            );
        }
        if !t.beats(e.tail, e.head) {
            return bad(
                "good edge exists",
                format!("{}->{} is not an edge", e.tail, e.head),
            );
        }
        let q = crate::embed::partition::q3_count(t, e.tail, e.head, &v3);
        if q != e.q3 {
            return bad(
                "Q3 recount",
                format!("{}->{}: stored {}, recounted {q}", e.tail, e.head, e.q3),
            );
        }
    }
    let good: std::collections::HashSet<(usize, usize)> =
        trace.partition.good().map(|e| (e.tail, e.head)).collect();
    let in_set = |sub: &[usize], sup: &[usize]| sub.iter().all(|v| sup.contains(v));
    if !in_set(&trace.w1, &parts.v1) {
        return bad("W1 in V1", "W1 leaves V1".into());
    }
    if !in_set(&trace.s1, &trace.w1) {
        return bad("S1 in W1", "S1 leaves W1".into());
    }
    if !in_set(&trace.s2, &parts.v2) {
        return bad("S2 in V2", "S2 leaves V2".into());
    }
    if !in_set(&trace.w3, &parts.v3) {
        return bad("W3 in V3", "W3 leaves V3".into());
    }
    if !in_set(&trace.s3, &trace.w3) {
        return bad("S3 in W3", "S3 leaves W3".into());
    }
    for (name, s) in [("S1", &trace.s1), ("S2", &trace.s2), ("S3", &trace.s3)] {
        if !crate::embed::transitive::is_transitive_in_order(t, s) {
            return bad(
                &format!("{name} transitive"),
                format!("{name} is not transitive in order"),
            );
        }
    }
    for &(x, y) in &trace.matching {
        if !good.contains(&(x, y)) {
            return bad("matching in E_good", format!("{x}->{y} is not a good edge"));
        }
        if !trace.s1.contains(&x) || !trace.s2.contains(&y) {
            return bad("matching in S1 x S2", format!("{x}->{y} leaves S1 x S2"));
        }
    }
    if trace.selected.iter().any(|&i| i >= trace.matching.len()) {
        return bad("selected edges", "index beyond the matching".into());
    }
    for &z in &trace.w3 {
        for &i in &trace.selected {
            let (x, y) = trace.matching[i];
            if !(t.beats(y, z) && t.beats(z, x)) {
                return bad("W3 complete", format!("{z} does not complete {x}->{y}"));
            }
        }
    }
    let r = &trace.result;
    let u1: Vec<usize> = trace
        .selected
        .iter()
        .map(|&i| trace.matching[i].0)
        .collect();
    let u2: Vec<usize> = trace
        .selected
        .iter()
        .map(|&i| trace.matching[i].1)
        .collect();
    if r.u1 != u1 || r.u2 != u2 {
        return bad(
            "U1 U2 from matching",
            "classes differ from the selected matching edges".into(),
        );
    }
    if !in_set(&r.u3, &trace.s3) {
        return bad("U3 in S3", "U3 leaves S3".into());
    }
    if let Some(v) = crate::dk::find_dk_violation(t, r)? {
        return bad(&v.clause(), v.to_string());
    }
    Ok(None)
}

/// Density `gamma` such that every edge of `counts` lies in at least
/// `gamma n` triangles: `min(counts) / n`.
pub fn measured_gamma(counts: &[usize], n: usize) -> Option<Density> {
    let min = counts.iter().copied().min()?;
    (min > 0).then(|| Density::new(min as u64, n as u64))
}

/// Human-readable summary of the planned parameters.
pub fn describe_params(p: &DrcParams) -> String {
    format!(
        "d={} l={} beta={:.3e} gamma={:.3e} floor={} min_set={}",
        p.d,
        p.l,
        to_f64(p.beta),
        to_f64(p.gamma),
        p.neighborhood_floor,
        p.min_set_size
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_dk;
    use num_rational::Ratio;

    fn class_edges(k: usize) -> Vec<(usize, usize)> {
        (0..k)
            .flat_map(|a| (k..2 * k).map(move |b| (a, b)))
            .collect()
    }

    #[test]
    fn d6_class_edges_give_d2() {
        let t = gen_dk(6).unwrap();
        let edges = class_edges(6);
        let cfg = PipelineConfig::default().with_seed(3);
        let out = find_dk_imbalanced(&t, &edges, Ratio::new(36, 324), Ratio::new(1, 18), 2, &cfg)
            .unwrap();
        let trace = out.trace.expect("embedding");
        assert!(check_dk_embedding(&t, &trace.result).unwrap());
        assert_eq!(verify_trace(&t, &trace).unwrap(), None);
    }

    #[test]
    fn empty_edges_fail_immediately() {
        let t = gen_dk(3).unwrap();
        let out = find_dk_imbalanced(
            &t,
            &[],
            Ratio::new(1, 9),
            Ratio::new(1, 64),
            1,
            &PipelineConfig::default(),
        )
        .unwrap();
        assert!(out.trace.is_none());
        assert_eq!(out.fail_stage(), Some(Stage::Partition));
    }

    #[test]
    fn full_scale_mode_reports_failure_at_desk_scale() {
        let t = gen_dk(6).unwrap();
        let cfg = PipelineConfig::default().with_mode(Mode::Paper);
        let out = find_dk_imbalanced(
            &t,
            &class_edges(6),
            Ratio::new(1, 9),
            Ratio::new(1, 64),
            2,
            &cfg,
        )
        .unwrap();
        assert!(out.trace.is_none());
        assert!(!out.failures.is_empty());
    }

    #[test]
    fn tampered_trace_is_caught() {
        let t = gen_dk(6).unwrap();
        let cfg = PipelineConfig::default().with_seed(3);
        let out = find_dk_imbalanced(
            &t,
            &class_edges(6),
            Ratio::new(1, 9),
            Ratio::new(1, 18),
            2,
            &cfg,
        )
        .unwrap();
        let mut trace = out.trace.unwrap();
        // Replace a U3 vertex with a V1-class vertex.
        trace.result.u3[0] = trace.result.u1[0];
        let v = verify_trace(&t, &trace).unwrap().expect("violation");
        assert!(!v.clause.is_empty());
    }

    #[test]
    fn invalid_arguments() {
        let t = gen_dk(2).unwrap();
        let cfg = PipelineConfig::default();
        assert!(
            find_dk_imbalanced(&t, &[(0, 2)], Ratio::new(1, 9), Ratio::new(1, 9), 0, &cfg).is_err()
        );
        assert!(
            find_dk_imbalanced(&t, &[(0, 2)], Ratio::new(0, 9), Ratio::new(1, 9), 1, &cfg).is_err()
        );
        assert!(
            find_dk_imbalanced(&t, &[(0, 2)], Ratio::new(1, 9), Ratio::new(2, 1), 1, &cfg).is_err()
        );
    }

    #[test]
    fn full_scale_parameters() {
        let cfg = PipelineConfig::default().with_mode(Mode::Paper);
        let p = plan(3000, 2, Ratio::new(1, 100), Ratio::new(1, 64), &cfg);
        assert_eq!(p.params.d, 384);
        assert_eq!(p.params.l, 1536);
        assert_eq!(
            p.params.neighborhood_floor,
            (1000f64).powf(0.75).ceil() as usize
        );
        assert_eq!(p.target, 55);
    }
}
