//! Directed triangles: global and per-edge counts, the triangle-rich subset
//! of long backward edges, and the empirical triangle constant.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::error::{invalid, Error, Result};
use crate::ordering::{check_prop21, BackwardEdge, OrderingAnalysis};
use crate::tournament::Tournament;

/// Number of cyclically oriented triples.
///
/// Each directed triangle is counted once per edge as
/// `|N+(head) ∩ N-(tail)|`, hence the division by three.
pub fn count_directed_triangles(t: &Tournament) -> u64 {
    let n = t.n();
    let sum: u64 = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut s = 0u64;
            for (_, v) in row_edges(t, u) {
                s += t.completers(u, v) as u64;
            }
            s
        })
        .sum();
    debug_assert_eq!(sum % 3, 0);
    sum / 3
}

fn row_edges(t: &Tournament, u: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    let row = t.out_words(u);
    row.iter().enumerate().flat_map(move |(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some((u, wi * 64 + b))
        })
    })
}

/// Number of directed triangles through the edge `u -> v`, i.e. of `x` with
/// `v -> x -> u`.
pub fn edge_triangle_count(t: &Tournament, u: usize, v: usize) -> Result<usize> {
    if u >= t.n() || v >= t.n() || u == v || !t.beats(u, v) {
        return Err(invalid(format!("{u}->{v} is not an edge")));
    }
    Ok(t.completers(u, v))
}

/// Long backward edges whose endpoints have small backward degree, with the
/// number of directed triangles through each.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleRichSet {
    /// The selected edges, a subset of the parent's long edges.
    pub edges: Vec<BackwardEdge>,
    /// Triangle count of `edges[i]`.
    pub per_edge_count: Vec<usize>,
    pub alpha: Density,
    /// `|B|`; the degree threshold is `4 sqrt(|B|)` (= `4 alpha^(1/2) n`).
    pub backward_count: usize,
    /// `|B'|`.
    pub long_count: usize,
    /// Vertices whose backward in-degree reaches the threshold.
    pub s_minus: usize,
    /// Vertices whose backward out-degree reaches the threshold.
    pub s_plus: usize,
}

impl TriangleRichSet {
    pub fn threshold(&self) -> f64 {
        4.0 * (self.backward_count as f64).sqrt()
    }

    pub fn min_count(&self) -> Option<usize> {
        self.per_edge_count.iter().copied().min()
    }

    /// Edges as directed vertex pairs `(tail, head)`.
    pub fn directed_edges(&self, order: &[usize]) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| e.directed(order)).collect()
    }
}

/// `deg <= 4 sqrt(b)`, decided as `deg^2 <= 16 b`.
#[inline]
fn within_threshold(deg: usize, b: usize) -> bool {
    (deg as u128).pow(2) <= 16 * b as u128
}

/// Builds the degree-filtered subset of long backward edges and counts
/// triangles through each member, without checking any hypothesis.
///
/// An edge `order[j] -> order[i]` is kept when the backward in-degree of
/// `order[i]` or the backward out-degree of `order[j]` is at most
/// `4 sqrt(|B|)`.
pub fn triangle_rich_unchecked(t: &Tournament, analysis: &OrderingAnalysis) -> TriangleRichSet {
    let n = analysis.n;
    let b = analysis.backward.len();
    let mut in_b = vec![0usize; n];
    let mut out_b = vec![0usize; n];
    for e in &analysis.backward {
        let (tail, head) = e.directed(&analysis.order);
        out_b[tail] += 1;
        in_b[head] += 1;
    }
    let heavy = |d: usize| d > 0 && (d as u128).pow(2) >= 16 * b as u128;
    let s_minus = in_b.iter().filter(|&&d| heavy(d)).count();
    let s_plus = out_b.iter().filter(|&&d| heavy(d)).count();
    let edges: Vec<BackwardEdge> = analysis
        .long_edges
        .iter()
        .copied()
        .filter(|e| {
            let (tail, head) = e.directed(&analysis.order);
            within_threshold(in_b[head], b) || within_threshold(out_b[tail], b)
        })
        .collect();
    let per_edge_count = edges
        .par_iter()
        .map(|e| {
            let (tail, head) = e.directed(&analysis.order);
            t.completers(tail, head)
        })
        .collect();
    TriangleRichSet {
        edges,
        per_edge_count,
        alpha: analysis.alpha(),
        backward_count: b,
        long_count: analysis.long_edges.len(),
        s_minus,
        s_plus,
    }
}

/// Selects at least half of the long backward edges such that each lies in
/// at least `floor(n/64)` directed triangles.
///
/// Requires `alpha <= 2^-16`, `4 |B'| >= |B|` and a locally optimal
/// ordering; a failed requirement is reported as
/// [`Error::HypothesisViolated`] naming the inequality.
pub fn extract_triangle_rich(
    t: &Tournament,
    analysis: &OrderingAnalysis,
) -> Result<TriangleRichSet> {
    if analysis.n != t.n() {
        return Err(invalid("analysis does not belong to this tournament"));
    }
    let n = analysis.n;
    let b = analysis.backward.len();
    if (b as u128) << 16 > (n as u128).pow(2) {
        return Err(Error::HypothesisViolated(format!(
            "alpha <= 2^-16 fails: |B| = {b}, n^2 = {}",
            n * n
        )));
    }
    if !analysis.long_edges_dominate() {
        return Err(Error::HypothesisViolated(format!(
            "|B'| >= alpha n^2 / 4 fails: |B'| = {}, |B| = {b}",
            analysis.long_edges.len()
        )));
    }
    let report = check_prop21(t, &analysis.order);
    if !report.passed() {
        return Err(Error::HypothesisViolated(format!(
            "ordering is not locally optimal ({} degree violations)",
            report.violation_count
        )));
    }
    let set = triangle_rich_unchecked(t, analysis);
    if 2 * set.edges.len() < set.long_count {
        return Err(Error::HypothesisViolated(format!(
            "2|B''| >= |B'| fails: |B''| = {}, |B'| = {}",
            set.edges.len(),
            set.long_count
        )));
    }
    if let Some(min) = set.min_count() {
        if min < n / 64 {
            return Err(Error::HypothesisViolated(format!(
                "edge in only {min} triangles, below n/64 = {}",
                n / 64
            )));
        }
    }
    Ok(set)
}

/// `triangles / (eps^2 n^3)`, kept as an exact fraction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleConstant {
    pub triangles: u64,
    pub n: usize,
    pub eps: Density,
    pub numer: u128,
    pub denom: u128,
}

impl TriangleConstant {
    pub fn value(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

pub fn measure_triangle_constant(t: &Tournament, eps: Density) -> Result<TriangleConstant> {
    if *eps.numer() == 0 {
        return Err(invalid("eps must be positive"));
    }
    Ok(triangle_constant(count_directed_triangles(t), t.n(), eps))
}

/// The ratio for an already computed triangle count.
pub fn triangle_constant(triangles: u64, n: usize, eps: Density) -> TriangleConstant {
    let (p, q) = (u128::from(*eps.numer()), u128::from(*eps.denom()));
    let nn = n as u128;
    let mut numer = u128::from(triangles) * q * q;
    let mut denom = (p * p * nn * nn * nn).max(1);
    let g = gcd(numer, denom);
    if g > 1 {
        numer /= g;
        denom /= g;
    }
    TriangleConstant {
        triangles,
        n,
        eps,
        numer,
        denom,
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_cyclic_blowup, gen_dk, gen_transitive};
    use num_rational::Ratio;

    #[test]
    fn small_counts() {
        assert_eq!(count_directed_triangles(&gen_transitive(10).unwrap()), 0);
        assert_eq!(count_directed_triangles(&gen_dk(1).unwrap()), 1);
        assert_eq!(count_directed_triangles(&gen_dk(3).unwrap()), 27);
    }

    #[test]
    fn per_edge_counts() {
        let c3 = gen_dk(1).unwrap();
        assert_eq!(edge_triangle_count(&c3, 0, 1).unwrap(), 1);
        assert!(edge_triangle_count(&c3, 1, 0).is_err());
        let t = gen_transitive(5).unwrap();
        assert_eq!(edge_triangle_count(&t, 0, 1).unwrap(), 0);
        // In D_3 an edge V3 -> V1 is completed by every vertex of V2.
        let d3 = gen_dk(3).unwrap();
        for a in 6..9 {
            for b in 0..3 {
                assert_eq!(edge_triangle_count(&d3, a, b).unwrap(), 3);
            }
        }
    }

    #[test]
    fn constant_of_blowups_is_three() {
        for (n, k) in [(18, 2), (36, 4), (9, 1)] {
            let t = gen_cyclic_blowup(n, k, 0).unwrap();
            let c = measure_triangle_constant(&t, Ratio::new(1, 9 * k as u64)).unwrap();
            assert_eq!((c.numer, c.denom), (3, 1), "n={n} k={k}");
        }
        let c = measure_triangle_constant(&gen_dk(5).unwrap(), Ratio::new(1, 9)).unwrap();
        assert_eq!(c.value(), 3.0);
        assert!(measure_triangle_constant(&gen_dk(1).unwrap(), Ratio::from_integer(0)).is_err());
    }
}
