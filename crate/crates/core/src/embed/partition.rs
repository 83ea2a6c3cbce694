use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::bits::{and_count, BitSet};
use crate::density::{ceil_mul, Density};
use crate::error::{invalid, Result};
use crate::rng;
use crate::tournament::Tournament;

/// Three disjoint vertex classes of equal size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parts {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub v3: Vec<usize>,
}

impl Parts {
    pub fn size(&self) -> usize {
        self.v1.len()
    }

    /// Class index (0, 1, 2) of every vertex, `None` for excluded vertices.
    pub fn membership(&self, n: usize) -> Vec<Option<u8>> {
        let mut m = vec![None; n];
        for (c, part) in [&self.v1, &self.v2, &self.v3].into_iter().enumerate() {
            for &v in part {
                m[v] = Some(c as u8);
            }
        }
        m
    }

    pub fn relabel(&self, map: &[usize]) -> Parts {
        let f = |p: &[usize]| p.iter().map(|&v| map[v]).collect();
        Parts {
            v1: f(&self.v1),
            v2: f(&self.v2),
            v3: f(&self.v3),
        }
    }
}

/// A uniformly random equipartition into classes of size `floor(n/3)`; up to
/// two leftover vertices are excluded.
pub fn random_tripartition(t: &Tournament, seed: u64) -> Result<Parts> {
    let n = t.n();
    if n < 3 {
        return Err(invalid(format!("need at least 3 vertices, got {n}")));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng::seeded(seed));
    Ok(split_thirds(&perm))
}

/// An equipartition built around the directed triangle `x -> y -> z -> x`.
///
/// With `x`, `y`, `z` in `V1`, `V2`, `V3`, a vertex `v` fits `V1` when
/// `v -> y` and `z -> v`, `V2` when `x -> v` and `v -> z`, and `V3` when
/// `y -> v` and `v -> x`; at most one of these holds. Each class keeps its
/// seed and a random selection of its fitting vertices, then is topped up to
/// `floor(n/3)` from the rest at random.
pub fn triangle_seeded_tripartition(
    t: &Tournament,
    (x, y, z): (usize, usize, usize),
    seed: u64,
) -> Result<Parts> {
    let n = t.n();
    if n < 3 {
        return Err(invalid(format!("need at least 3 vertices, got {n}")));
    }
    if x.max(y).max(z) >= n || !(t.beats(x, y) && t.beats(y, z) && t.beats(z, x)) {
        return Err(invalid(format!(
            "{x} -> {y} -> {z} -> {x} is not a directed triangle"
        )));
    }
    let mut rng = rng::seeded(seed);
    let mut perm: Vec<usize> = (0..n).filter(|&v| v != x && v != y && v != z).collect();
    perm.shuffle(&mut rng);
    let s = n / 3;
    let mut classes = [vec![x], vec![y], vec![z]];
    let mut rest = Vec::new();
    for v in perm {
        let fit = if t.beats(v, y) && t.beats(z, v) {
            Some(0)
        } else if t.beats(x, v) && t.beats(v, z) {
            Some(1)
        } else if t.beats(y, v) && t.beats(v, x) {
            Some(2)
        } else {
            None
        };
        match fit {
            Some(c) if classes[c].len() < s => classes[c].push(v),
            _ => rest.push(v),
        }
    }
    let mut rest = rest.into_iter();
    for c in &mut classes {
        c.extend(rest.by_ref().take(s - c.len()));
    }
    let [v1, v2, v3] = classes;
    Ok(Parts { v1, v2, v3 })
}

/// Classes from consecutive thirds of `perm`.
pub(crate) fn split_thirds(perm: &[usize]) -> Parts {
    let s = perm.len() / 3;
    Parts {
        v1: perm[..s].to_vec(),
        v2: perm[s..2 * s].to_vec(),
        v3: perm[2 * s..3 * s].to_vec(),
    }
}

/// An edge `tail -> head` from `V1` to `V2` with its `Q3` count: the number
/// of `z` in `V3` forming a directed triangle `head -> z -> tail`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScoredEdge {
    pub tail: usize,
    pub head: usize,
    pub q3: usize,
}

/// A tripartition with the `Q3` count of every candidate edge and the good
/// edges among them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tripartition {
    pub parts: Parts,
    /// Minimum `Q3` of a good edge, `ceil(gamma n / 3)`.
    pub threshold: usize,
    /// Every input edge running from `V1` to `V2`.
    pub candidates: Vec<ScoredEdge>,
}

impl Tripartition {
    pub fn good(&self) -> impl Iterator<Item = &ScoredEdge> + '_ {
        self.candidates
            .iter()
            .filter(move |e| e.q3 >= self.threshold)
    }

    pub fn good_count(&self) -> usize {
        self.good().count()
    }

    pub fn relabel(&self, map: &[usize]) -> Tripartition {
        Tripartition {
            parts: self.parts.relabel(map),
            threshold: self.threshold,
            candidates: self
                .candidates
                .iter()
                .map(|e| ScoredEdge {
                    tail: map[e.tail],
                    head: map[e.head],
                    q3: e.q3,
                })
                .collect(),
        }
    }
}

/// Scores every edge of `edges` running from `V1` to `V2` by its `Q3` count;
/// good edges are those with `Q3 >= ceil(gamma n / 3)`.
///
/// Edges are given as `(tail, head)` and must be edges of `t`.
pub fn good_edges(
    t: &Tournament,
    edges: &[(usize, usize)],
    parts: &Parts,
    gamma: Density,
) -> Result<Tripartition> {
    let n = t.n();
    let membership = parts.membership(n);
    let v3 = BitSet::from_indices(n, parts.v3.iter().copied());
    let mut candidates = Vec::new();
    for &(tail, head) in edges {
        if tail >= n || head >= n || tail == head || !t.beats(tail, head) {
            return Err(invalid(format!("{tail}->{head} is not an edge")));
        }
        if membership[tail] != Some(0) || membership[head] != Some(1) {
            continue;
        }
        candidates.push(ScoredEdge {
            tail,
            head,
            q3: q3_count(t, tail, head, &v3),
        });
    }
    Ok(Tripartition {
        parts: parts.clone(),
        threshold: ceil_mul(gamma, n as u64).div_ceil(3) as usize,
        candidates,
    })
}

/// `|{z in v3 : head -> z -> tail}|`.
pub(crate) fn q3_count(t: &Tournament, tail: usize, head: usize, v3: &BitSet) -> usize {
    let head_out = t.out_words(head);
    let tail_out = t.out_words(tail);
    let masked: Vec<u64> = head_out.iter().zip(tail_out).map(|(h, t)| h & !t).collect();
    and_count(&masked, v3.words())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_dk, gen_transitive};
    use num_rational::Ratio;

    #[test]
    fn sizes_and_remainder() {
        let t = gen_transitive(9).unwrap();
        let p = random_tripartition(&t, 1).unwrap();
        assert_eq!((p.v1.len(), p.v2.len(), p.v3.len()), (3, 3, 3));
        let mut all: Vec<_> = p.v1.iter().chain(&p.v2).chain(&p.v3).copied().collect();
        all.sort();
        assert_eq!(all, (0..9).collect::<Vec<_>>());

        let t = gen_transitive(10).unwrap();
        let p = random_tripartition(&t, 1).unwrap();
        assert_eq!(p.size(), 3);
        assert_eq!(p.membership(10).iter().filter(|m| m.is_none()).count(), 1);
        assert!(random_tripartition(&gen_transitive(2).unwrap(), 0).is_err());
    }

    #[test]
    fn triangle_seeds_recover_dk_classes() {
        let t = gen_dk(4).unwrap();
        let p = triangle_seeded_tripartition(&t, (0, 4, 8), 3).unwrap();
        let sorted = |v: &[usize]| {
            let mut v = v.to_vec();
            v.sort();
            v
        };
        assert_eq!(sorted(&p.v1), vec![0, 1, 2, 3]);
        assert_eq!(sorted(&p.v2), vec![4, 5, 6, 7]);
        assert_eq!(sorted(&p.v3), vec![8, 9, 10, 11]);
        assert!(triangle_seeded_tripartition(&t, (0, 8, 4), 3).is_err());

        let t = gen_transitive(10).unwrap();
        assert!(triangle_seeded_tripartition(&t, (0, 1, 2), 0).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let t = gen_transitive(30).unwrap();
        assert_eq!(
            random_tripartition(&t, 5).unwrap(),
            random_tripartition(&t, 5).unwrap()
        );
        assert_ne!(
            random_tripartition(&t, 5).unwrap(),
            random_tripartition(&t, 6).unwrap()
        );
    }

    #[test]
    fn d3_class_edges_all_good() {
        let t = gen_dk(3).unwrap();
        let parts = Parts {
            v1: vec![0, 1, 2],
            v2: vec![3, 4, 5],
            v3: vec![6, 7, 8],
        };
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let tri = good_edges(&t, &edges, &parts, Ratio::new(1, 64)).unwrap();
        assert_eq!(tri.threshold, 1);
        assert_eq!(tri.good_count(), 9);
        assert!(tri.candidates.iter().all(|e| e.q3 == 3));
    }

    #[test]
    fn empty_and_transitive_give_nothing() {
        let t = gen_transitive(9).unwrap();
        let parts = Parts {
            v1: vec![0, 1, 2],
            v2: vec![3, 4, 5],
            v3: vec![6, 7, 8],
        };
        let tri = good_edges(&t, &[], &parts, Ratio::new(1, 64)).unwrap();
        assert_eq!(tri.good_count(), 0);
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let tri = good_edges(&t, &edges, &parts, Ratio::new(1, 64)).unwrap();
        assert_eq!(tri.candidates.len(), 9);
        assert_eq!(tri.good_count(), 0);
        assert!(good_edges(&t, &[(3, 0)], &parts, Ratio::new(1, 64)).is_err());
    }
}
