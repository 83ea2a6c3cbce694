//! Generator families.
//!
//! All generators are deterministic functions of their parameters and seed.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rng;
use crate::tournament::Tournament;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Transitive,
    Dk,
    CyclicBlowup,
    EpsRandom,
    PlantedLong,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Transitive,
        Family::Dk,
        Family::CyclicBlowup,
        Family::EpsRandom,
        Family::PlantedLong,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Transitive => "transitive",
            Family::Dk => "dk",
            Family::CyclicBlowup => "cyclic-blowup",
            Family::EpsRandom => "eps-random",
            Family::PlantedLong => "planted-long",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown family {s:?}")))
    }
}

/// A generator family plus its parameters. Which parameters are required
/// depends on the family; [`GeneratorSpec::generate`] validates them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_length: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            n: None,
            k: None,
            m: None,
            eps: None,
            min_length: None,
            seed: 0,
        }
    }

    pub fn generate(&self) -> Result<Tournament> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| invalid(format!("family {} requires --{name}", self.family)))
        };
        match self.family {
            Family::Transitive => gen_transitive(need(self.n, "n")?),
            Family::Dk => gen_dk(need(self.k, "k")?),
            Family::CyclicBlowup => {
                gen_cyclic_blowup(need(self.n, "n")?, need(self.k, "k")?, self.seed)
            }
            Family::EpsRandom => {
                let eps = self
                    .eps
                    .ok_or_else(|| invalid("family eps-random requires --eps"))?;
                gen_eps_random(need(self.n, "n")?, eps, self.seed)
            }
            Family::PlantedLong => gen_planted_long(
                need(self.n, "n")?,
                need(self.m, "m")?,
                need(self.min_length, "min-length")?,
                self.seed,
            ),
        }
    }
}

fn require_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(invalid(format!("{what} must be at least 1")));
    }
    Ok(())
}

/// The transitive tournament with `u -> v` iff `u < v`.
pub fn gen_transitive(n: usize) -> Result<Tournament> {
    require_positive(n, "n")?;
    Ok(Tournament::from_fn(n, |_, _| true))
}

/// `D_k` with classes `{0..k}`, `{k..2k}`, `{2k..3k}`, each transitive in
/// index order, and class edges `V1 -> V2 -> V3 -> V1`.
pub fn gen_dk(k: usize) -> Result<Tournament> {
    require_positive(k, "k")?;
    Ok(Tournament::from_fn(3 * k, |u, v| dk_beats(k, u, v)))
}

/// Orientation of `D_s` for local indices `u < v`.
fn dk_beats(s: usize, u: usize, v: usize) -> bool {
    let (cu, cv) = (u / s, v / s);
    if cu == cv {
        true
    } else {
        // u < v, so either cv = cu + 1 (forward) or (cu, cv) = (0, 2).
        cv == cu + 1
    }
}

/// `k` consecutive copies of `D_{n/3k}` with every cross-block edge directed
/// from the earlier block to the later one.
///
/// The construction is deterministic; the seed is accepted for uniformity
/// with the other families.
pub fn gen_cyclic_blowup(n: usize, k: usize, _seed: u64) -> Result<Tournament> {
    require_positive(n, "n")?;
    require_positive(k, "k")?;
    if !n.is_multiple_of(3 * k) {
        return Err(invalid(format!("3k = {} does not divide n = {n}", 3 * k)));
    }
    let block = n / k;
    let s = block / 3;
    Ok(Tournament::from_fn(n, |u, v| {
        let (bu, bv) = (u / block, v / block);
        if bu != bv {
            true
        } else {
            dk_beats(s, u % block, v % block)
        }
    }))
}

/// The transitive tournament with every edge independently reversed with
/// probability `eps`.
pub fn gen_eps_random(n: usize, eps: f64, seed: u64) -> Result<Tournament> {
    require_positive(n, "n")?;
    if !(0.0..=1.0).contains(&eps) {
        return Err(invalid(format!("eps = {eps} is outside [0, 1]")));
    }
    let mut rng = rng::stream(seed, "gen-eps-random", 0);
    Ok(Tournament::from_fn(n, |_, _| !rng.random_bool(eps)))
}

/// Number of pairs `i < j < n` with `j - i >= min_length`.
pub fn eligible_pairs(n: usize, min_length: usize) -> usize {
    let l = min_length.max(1);
    if l >= n {
        return 0;
    }
    (n - l) * (n - l + 1) / 2
}

/// The transitive tournament with exactly `m` reversed edges, each joining
/// vertices at index distance at least `min_length`, drawn uniformly without
/// replacement from the eligible pairs.
pub fn gen_planted_long(n: usize, m: usize, min_length: usize, seed: u64) -> Result<Tournament> {
    require_positive(n, "n")?;
    if min_length >= n {
        return Err(invalid(format!(
            "min_length = {min_length} must be below n = {n}"
        )));
    }
    let eligible = eligible_pairs(n, min_length);
    if m > eligible {
        return Err(invalid(format!(
            "cannot plant {m} edges: only {eligible} pairs have length >= {min_length}"
        )));
    }
    let l = min_length.max(1);
    let mut rng = rng::stream(seed, "gen-planted-long", 0);
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut taken: HashSet<(usize, usize)> = HashSet::with_capacity(m);

    let mut attempts = 0usize;
    while chosen.len() < m && attempts < 100 * m {
        attempts += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let (i, j) = (a.min(b), a.max(b));
        if j - i >= l && taken.insert((i, j)) {
            chosen.push((i, j));
        }
    }
    if chosen.len() < m {
        let rest: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + l..n).map(move |j| (i, j)))
            .filter(|p| !taken.contains(p))
            .collect();
        let need = m - chosen.len();
        for idx in index::sample(&mut rng, rest.len(), need).into_iter() {
            chosen.push(rest[idx]);
        }
    }

    let mut t = gen_transitive(n)?;
    for (i, j) in chosen {
        t.flip(i, j);
    }
    Ok(t)
}
