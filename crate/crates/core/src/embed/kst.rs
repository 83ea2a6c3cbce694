//! Matching and complete-bipartite extraction.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::embed::bipartite::BipartiteGraph;
use crate::error::{invalid, Error, Result, Stage};
use crate::rng;

/// Pairs the `i`-th vertex of `s1` with the `i`-th vertex of `s2` for
/// `i < d`. All `s1 x s2` edges are assumed to point from `s1` to `s2`.
pub fn greedy_matching(s1: &[usize], s2: &[usize], d: usize) -> Result<Vec<(usize, usize)>> {
    if s1.len() < d || s2.len() < d {
        return Err(Error::StageFailure {
            stage: Stage::Matching,
            reason: format!(
                "need {d} vertices per side, have {} and {}",
                s1.len(),
                s2.len()
            ),
        });
    }
    Ok(s1.iter().copied().zip(s2.iter().copied()).take(d).collect())
}

/// `k` left rows completely joined to `right` columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KstWitness {
    /// Left indices, ascending.
    pub rows: Vec<usize>,
    /// Right indices adjacent to every chosen row, ascending.
    pub columns: Vec<usize>,
    /// Greedy attempts made (0 if only the exhaustive scan succeeded).
    pub attempts: usize,
    pub exhaustive: bool,
}

/// Finds `k` left vertices of `g` with at least `target` common neighbours.
///
/// The first attempt is greedy: `k` rounds, each taking the row with the
/// most neighbours among the surviving columns (lowest index on ties) and
/// intersecting. Further attempts start from a random row that alone reaches
/// the target and break ties at random. If every attempt falls short and the
/// left side has at most `exhaustive_max_d` rows, all `k`-subsets are
/// scanned by grouping columns on their neighbourhood bitmask.
pub fn kst_extract(
    g: &BipartiteGraph,
    k: usize,
    target: usize,
    seed: u64,
    max_retries: usize,
    exhaustive_max_d: usize,
) -> Result<KstWitness> {
    let d = g.left.len();
    if k == 0 || k > d {
        return Err(invalid(format!("need 1 <= k <= d, got k = {k}, d = {d}")));
    }
    if target == 0 {
        return Err(invalid("target must be at least 1"));
    }
    for attempt in 0..max_retries.max(1) {
        let mut rng = (attempt > 0).then(|| rng::stream(seed, "kst", attempt as u64));
        let (mut rows, surviving) = greedy_rows(g, k, target, rng.as_mut());
        if surviving.count() >= target {
            rows.sort_unstable();
            return Ok(KstWitness {
                rows,
                columns: surviving.to_vec(),
                attempts: attempt + 1,
                exhaustive: false,
            });
        }
    }
    if d <= exhaustive_max_d {
        if let Some(mask) = exhaustive_rows(g, k, target) {
            let rows: Vec<usize> = (0..d).filter(|&a| mask >> a & 1 == 1).collect();
            let columns = g.common_right(&rows).to_vec();
            return Ok(KstWitness {
                rows,
                columns,
                attempts: max_retries.max(1),
                exhaustive: true,
            });
        }
    }
    Err(Error::StageFailure {
        stage: Stage::Bipartite,
        reason: format!("no {k} rows share {target} common columns"),
    })
}

fn greedy_rows(
    g: &BipartiteGraph,
    k: usize,
    target: usize,
    mut rng: Option<&mut rng::Rng>,
) -> (Vec<usize>, BitSet) {
    let d = g.left.len();
    let mut surviving = BitSet::full(g.right.len());
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; d];
    if let Some(rng) = rng.as_deref_mut() {
        let starts: Vec<usize> = (0..d).filter(|&a| g.row(a).count() >= target).collect();
        if !starts.is_empty() {
            let a = starts[rng.random_range(0..starts.len())];
            used[a] = true;
            chosen.push(a);
            surviving.intersect_with(g.row(a));
        }
    }
    while chosen.len() < k {
        let scores: Vec<(usize, usize)> = (0..d)
            .filter(|&a| !used[a])
            .map(|a| (a, g.row(a).intersection_count(&surviving)))
            .collect();
        let top = scores.iter().map(|&(_, s)| s).max().expect("k <= d");
        let tied: Vec<usize> = scores
            .iter()
            .filter(|&&(_, s)| s == top)
            .map(|&(a, _)| a)
            .collect();
        let a = match rng.as_deref_mut() {
            Some(r) => tied[r.random_range(0..tied.len())],
            None => tied[0],
        };
        used[a] = true;
        chosen.push(a);
        surviving.intersect_with(g.row(a));
    }
    (chosen, surviving)
}

/// Lowest `k`-subset mask (as an integer) whose rows share at least
/// `target` columns, via superset sums over column neighbourhood masks.
fn exhaustive_rows(g: &BipartiteGraph, k: usize, target: usize) -> Option<u32> {
    let d = g.left.len();
    debug_assert!(d <= 32);
    let size = 1usize << d;
    let mut sums = vec![0u32; size];
    for b in 0..g.right.len() {
        let mask = (0..d)
            .filter(|&a| g.has_edge(a, b))
            .fold(0usize, |m, a| m | 1 << a);
        sums[mask] += 1;
    }
    for bit in 0..d {
        for s in 0..size {
            if s >> bit & 1 == 0 {
                sums[s] += sums[s | 1 << bit];
            }
        }
    }
    (0..size)
        .filter(|s| s.count_ones() as usize == k)
        .find(|&s| sums[s] as usize >= target)
        .map(|s| s as u32)
}
