//! Dependent random choice.
//!
//! Sample `l` right-side vertices with replacement and keep the left-side
//! vertices adjacent to all of them. Small sets of the survivors tend to
//! have large common neighbourhoods, since a set with a small common
//! neighbourhood is unlikely to contain every sample in it.

use rand::seq::index;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::embed::bipartite::BipartiteGraph;
use crate::error::{invalid, Error, Result, Stage};
use crate::rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrcParams {
    /// Size of the subsets that must have large common neighbourhoods.
    pub d: usize,
    /// Number of samples.
    pub l: usize,
    pub beta: Density,
    pub gamma: Density,
    /// Common neighbourhood every spot-checked `d`-set must reach.
    pub neighborhood_floor: usize,
    /// Minimum size of the returned set.
    pub min_set_size: usize,
}

impl DrcParams {
    fn validate(&self) -> Result<()> {
        if self.d == 0 || self.l < self.d {
            return Err(invalid(format!(
                "need l >= d >= 1, got d = {}, l = {}",
                self.d, self.l
            )));
        }
        for (name, x) in [("beta", self.beta), ("gamma", self.gamma)] {
            if *x.numer() == 0 || x > Density::from_integer(1) {
                return Err(invalid(format!("{name} = {x} is outside (0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrcOutcome {
    /// Accepted left-side indices, ascending.
    pub set: Vec<usize>,
    /// The sampled right-side indices of the accepted attempt.
    pub samples: Vec<usize>,
    /// Attempts used, including the accepted one.
    pub attempts: usize,
    /// `d`-subsets verified by the spot check.
    pub spot_checked: usize,
}

/// Runs dependent random choice on `h`, retrying with fresh samples until the
/// survivor set reaches `min_set_size` and a spot check of up to
/// `spot_checks` random `d`-subsets (all of them, if there are fewer) finds
/// every one with at least `neighborhood_floor` common neighbours.
///
/// Requires `|A| = |B|`, `1 <= d <= l` and densities in `(0, 1]`. The
/// adaptive pipeline samples fewer than `d` vertices and goes through
/// [`dependent_random_choice_unchecked`].
pub fn dependent_random_choice(
    h: &BipartiteGraph,
    params: &DrcParams,
    seed: u64,
    max_retries: usize,
    spot_checks: usize,
) -> Result<DrcOutcome> {
    params.validate()?;
    if h.left.len() != h.right.len() {
        return Err(invalid(format!(
            "sides differ: |A| = {}, |B| = {}",
            h.left.len(),
            h.right.len()
        )));
    }
    dependent_random_choice_unchecked(h, params, seed, max_retries, spot_checks)
}

/// [`dependent_random_choice`] without the parameter and side-size checks.
pub fn dependent_random_choice_unchecked(
    h: &BipartiteGraph,
    params: &DrcParams,
    seed: u64,
    max_retries: usize,
    spot_checks: usize,
) -> Result<DrcOutcome> {
    if max_retries == 0 {
        return Err(invalid("max_retries must be at least 1"));
    }
    let (a, b) = (h.left.len(), h.right.len());
    let fail = |reason: String| Error::StageFailure {
        stage: Stage::DependentRandomChoice,
        reason,
    };
    if a == 0 || b == 0 {
        return Err(fail("empty side".into()));
    }
    let mut best = 0;
    for attempt in 0..max_retries {
        let mut rng = rng::stream(seed, "drc", attempt as u64);
        let samples: Vec<usize> = (0..params.l).map(|_| rng.random_range(0..b)).collect();
        let set = h.common_left(&samples);
        best = best.max(set.len());
        if set.len() < params.min_set_size {
            continue;
        }
        if let Some(checked) = spot_check(h, &set, params, spot_checks, &mut rng) {
            return Ok(DrcOutcome {
                set,
                samples,
                attempts: attempt + 1,
                spot_checked: checked,
            });
        }
    }
    Err(fail(format!(
        "no acceptable set in {max_retries} attempts (largest {best}, need {})",
        params.min_set_size
    )))
}

/// Returns the number of subsets checked, or `None` if one falls short.
fn spot_check(
    h: &BipartiteGraph,
    set: &[usize],
    params: &DrcParams,
    spot_checks: usize,
    rng: &mut rng::Rng,
) -> Option<usize> {
    let d = params.d;
    if set.len() < d {
        return Some(0);
    }
    let ok = |sub: &[usize]| h.common_right(sub).count() >= params.neighborhood_floor;
    if binomial_at_most(set.len(), d, spot_checks as u128) {
        let mut checked = 0;
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let sub: Vec<usize> = idx.iter().map(|&i| set[i]).collect();
            if !ok(&sub) {
                return None;
            }
            checked += 1;
            if !next_combination(&mut idx, set.len()) {
                return Some(checked);
            }
        }
    }
    for _ in 0..spot_checks {
        let sub: Vec<usize> = index::sample(rng, set.len(), d)
            .into_iter()
            .map(|i| set[i])
            .collect();
        if !ok(&sub) {
            return None;
        }
    }
    Some(spot_checks)
}

/// `C(n, k) <= cap` without overflow.
pub(crate) fn binomial_at_most(n: usize, k: usize, cap: u128) -> bool {
    if k > n {
        return true;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c > cap {
            return false;
        }
    }
    true
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; returns `false` after the last one.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
