//! `D_k` embeddings: the certificate type, its checker and an exhaustive
//! search oracle for small tournaments.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::tournament::Tournament;

/// Largest `n` accepted by [`brute_force_contains_dk`].
pub const BRUTE_FORCE_MAX_N: usize = 15;
/// Largest `k` accepted by [`brute_force_contains_dk`].
pub const BRUTE_FORCE_MAX_K: usize = 3;

/// Three ordered classes claimed to induce `D_k`. Within each class every
/// edge must point forward along the listed order; class edges must run
/// `u1 -> u2 -> u3 -> u1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DkEmbedding {
    pub k: usize,
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
    pub u3: Vec<usize>,
}

impl DkEmbedding {
    pub fn new(u1: Vec<usize>, u2: Vec<usize>, u3: Vec<usize>) -> Self {
        Self {
            k: u1.len(),
            u1,
            u2,
            u3,
        }
    }

    pub fn classes(&self) -> [&[usize]; 3] {
        [&self.u1, &self.u2, &self.u3]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.u1.iter().chain(&self.u2).chain(&self.u3).copied()
    }

    /// Maps every vertex id through `map`.
    pub fn relabel(&self, map: &[usize]) -> Self {
        let f = |c: &[usize]| c.iter().map(|&v| map[v]).collect();
        Self {
            k: self.k,
            u1: f(&self.u1),
            u2: f(&self.u2),
            u3: f(&self.u3),
        }
    }
}

/// The first clause of the `D_k` definition an embedding violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "kebab-case")]
pub enum DkViolation {
    ClassSize {
        class: usize,
        len: usize,
        k: usize,
    },
    DuplicateVertex {
        vertex: usize,
    },
    NotTransitive {
        class: usize,
        earlier: usize,
        later: usize,
    },
    CrossEdge {
        from_class: usize,
        to_class: usize,
        tail: usize,
        head: usize,
    },
}

impl DkViolation {
    /// Short name of the violated clause.
    pub fn clause(&self) -> String {
        match self {
            DkViolation::ClassSize { class, .. } => format!("U{} size", class + 1),
            DkViolation::DuplicateVertex { .. } => "distinct vertices".into(),
            DkViolation::NotTransitive { class, .. } => format!("U{} transitive", class + 1),
            DkViolation::CrossEdge {
                from_class,
                to_class,
                ..
            } => {
                format!("U{}->U{}", from_class + 1, to_class + 1)
            }
        }
    }
}

impl fmt::Display for DkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DkViolation::ClassSize { class, len, k } => {
                write!(f, "U{} has {len} vertices, expected {k}", class + 1)
            }
            DkViolation::DuplicateVertex { vertex } => write!(f, "vertex {vertex} used twice"),
            DkViolation::NotTransitive {
                class,
                earlier,
                later,
            } => write!(
                f,
                "U{}: edge {later}->{earlier} points backward along the class order",
                class + 1
            ),
            DkViolation::CrossEdge {
                from_class,
                to_class,
                tail,
                head,
            } => write!(
                f,
                "U{}->U{}: edge between {tail} and {head} is directed {head}->{tail}",
                from_class + 1,
                to_class + 1
            ),
        }
    }
}

/// Finds the first violated clause, or `None` if `emb` is a valid `D_k`.
///
/// Out-of-range vertex ids are an error rather than a violation.
pub fn find_dk_violation(t: &Tournament, emb: &DkEmbedding) -> Result<Option<DkViolation>> {
    if let Some(v) = emb.vertices().find(|&v| v >= t.n()) {
        return Err(invalid(format!("vertex {v} out of range (n = {})", t.n())));
    }
    for (c, class) in emb.classes().into_iter().enumerate() {
        if class.len() != emb.k {
            return Ok(Some(DkViolation::ClassSize {
                class: c,
                len: class.len(),
                k: emb.k,
            }));
        }
    }
    let mut seen = vec![false; t.n()];
    for v in emb.vertices() {
        if seen[v] {
            return Ok(Some(DkViolation::DuplicateVertex { vertex: v }));
        }
        seen[v] = true;
    }
    for (c, class) in emb.classes().into_iter().enumerate() {
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                if !t.beats(a, b) {
                    return Ok(Some(DkViolation::NotTransitive {
                        class: c,
                        earlier: a,
                        later: b,
                    }));
                }
            }
        }
    }
    let classes = emb.classes();
    for from in 0..3 {
        let to = (from + 1) % 3;
        for &a in classes[from] {
            for &b in classes[to] {
                if !t.beats(a, b) {
                    return Ok(Some(DkViolation::CrossEdge {
                        from_class: from,
                        to_class: to,
                        tail: a,
                        head: b,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `true` iff `emb` induces `D_k` in `t`.
pub fn check_dk_embedding(t: &Tournament, emb: &DkEmbedding) -> Result<bool> {
    Ok(find_dk_violation(t, emb)?.is_none())
}

/// Exhaustive search for `D_k`, for `n <= 15` and `k <= 3`.
///
/// Candidate classes are transitive `k`-subsets enumerated in lexicographic
/// order; the first embedding found is returned.
pub fn brute_force_contains_dk(t: &Tournament, k: usize) -> Result<Option<DkEmbedding>> {
    if t.n() > BRUTE_FORCE_MAX_N {
        return Err(Error::SizeLimit {
            what: "n",
            got: t.n(),
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    if k > BRUTE_FORCE_MAX_K {
        return Err(Error::SizeLimit {
            what: "k",
            got: k,
            limit: BRUTE_FORCE_MAX_K,
        });
    }
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let n = t.n();
    if 3 * k > n {
        return Ok(None);
    }
    let out: Vec<u32> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| t.beats(u, v))
                .fold(0u32, |m, v| m | 1 << v)
        })
        .collect();
    let all = (1u32 << n) - 1;
    let inn: Vec<u32> = (0..n).map(|u| all & !out[u] & !(1 << u)).collect();

    let common = |mask: u32, rows: &[u32]| -> u32 { bits(mask).fold(all, |acc, v| acc & rows[v]) };

    let classes: Vec<(u32, Vec<usize>)> = combinations(n, k)
        .filter_map(|mask| transitive_order(mask, &out).map(|ord| (mask, ord)))
        .collect();

    for (m1, ord1) in &classes {
        let c2 = common(*m1, &out);
        let c3 = common(*m1, &inn);
        if (c2.count_ones() as usize) < k || (c3.count_ones() as usize) < k {
            continue;
        }
        for (m2, ord2) in classes.iter().filter(|(m, _)| m & !c2 == 0) {
            let c3b = c3 & common(*m2, &out);
            if let Some((_, ord3)) = classes.iter().find(|(m, _)| m & !c3b == 0) {
                return Ok(Some(DkEmbedding::new(
                    ord1.clone(),
                    ord2.clone(),
                    ord3.clone(),
                )));
            }
        }
    }
    Ok(None)
}

fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let t = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(t)
    })
}

/// The vertices of `mask` in transitive order, if the induced subtournament
/// is transitive.
fn transitive_order(mask: u32, out: &[u32]) -> Option<Vec<usize>> {
    let size = mask.count_ones() as usize;
    let mut by_score: Vec<Option<usize>> = vec![None; size];
    for v in bits(mask) {
        let s = (out[v] & mask).count_ones() as usize;
        if by_score[s].replace(v).is_some() {
            return None;
        }
    }
    Some(by_score.into_iter().rev().map(|v| v.unwrap()).collect())
}

/// `k`-subsets of `0..n` as masks, in lexicographic order of their sorted
/// element lists.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mask = idx.iter().fold(0u32, |m, &i| m | 1 << i);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    })
}
