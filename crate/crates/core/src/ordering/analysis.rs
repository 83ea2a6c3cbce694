use serde::{Deserialize, Serialize};

use crate::density::{edge_density, Density};
use crate::error::{invalid, Result};
use crate::tournament::{is_permutation, Tournament};

/// A backward edge between positions `i < j`; the edge is directed
/// `order[j] -> order[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BackwardEdge {
    pub i: usize,
    pub j: usize,
}

impl BackwardEdge {
    #[inline]
    pub fn length(self) -> usize {
        self.j - self.i
    }

    /// The edge as a directed vertex pair `(tail, head)`.
    #[inline]
    pub fn directed(self, order: &[usize]) -> (usize, usize) {
        (order[self.j], order[self.i])
    }
}

/// An ordering together with its backward edges and the long ones among
/// them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingAnalysis {
    pub n: usize,
    pub order: Vec<usize>,
    /// Sorted by `(i, j)`.
    pub backward: Vec<BackwardEdge>,
    /// `ceil(n / 16)`.
    pub long_threshold: usize,
    /// Backward edges with length at least `long_threshold`, same order.
    pub long_edges: Vec<BackwardEdge>,
}

impl OrderingAnalysis {
    /// `|B| / n^2`, exact.
    pub fn alpha(&self) -> Density {
        edge_density(self.backward.len(), self.n)
    }

    pub fn alpha_f64(&self) -> f64 {
        crate::density::to_f64(self.alpha())
    }

    /// `4 |B'| >= |B|`.
    pub fn long_edges_dominate(&self) -> bool {
        4 * self.long_edges.len() >= self.backward.len()
    }
}

pub fn long_threshold(n: usize) -> usize {
    n.div_ceil(16)
}

/// Lists every backward edge of `t` under `order`.
pub fn analyze_ordering(t: &Tournament, order: &[usize]) -> Result<OrderingAnalysis> {
    let n = t.n();
    if order.len() != n || !is_permutation(order) {
        return Err(invalid("order is not a permutation of the vertices"));
    }
    let threshold = long_threshold(n);
    let mut backward = Vec::new();
    for i in 0..n {
        let vi = order[i];
        for (j, &vj) in order.iter().enumerate().skip(i + 1) {
            if t.beats(vj, vi) {
                backward.push(BackwardEdge { i, j });
            }
        }
    }
    let long_edges = backward
        .iter()
        .copied()
        .filter(|e| e.length() >= threshold)
        .collect();
    Ok(OrderingAnalysis {
        n,
        order: order.to_vec(),
        backward,
        long_threshold: threshold,
        long_edges,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prop21Bullet {
    /// `d+ of order[i] into positions i+1..=j` is below `(j-i)/2`.
    OutDegree,
    /// `d- of order[j] from positions i..j` is below `(j-i)/2`.
    InDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop21Violation {
    pub i: usize,
    pub j: usize,
    pub bullet: Prop21Bullet,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop21Report {
    pub pairs_checked: usize,
    pub violation_count: usize,
    /// At most [`Prop21Report::STORED`] violations, in scan order.
    pub violations: Vec<Prop21Violation>,
}

impl Prop21Report {
    pub const STORED: usize = 1000;

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Checks both interval degree conditions of a locally optimal ordering for
/// every pair of positions `i < j`:
///
/// - `order[i]` beats at least half of positions `i+1..=j`;
/// - `order[j]` is beaten by at least half of positions `i..j`.
///
/// Each sweep keeps a running degree, so the whole check is `O(n^2)`.
pub fn check_prop21(t: &Tournament, order: &[usize]) -> Prop21Report {
    let n = order.len();
    let mut report = Prop21Report {
        pairs_checked: n * n.saturating_sub(1) / 2,
        violation_count: 0,
        violations: Vec::new(),
    };
    let record = |v: Prop21Violation, report: &mut Prop21Report| {
        report.violation_count += 1;
        if report.violations.len() < Prop21Report::STORED {
            report.violations.push(v);
        }
    };
    for i in 0..n {
        let mut deg = 0;
        for j in i + 1..n {
            deg += usize::from(t.beats(order[i], order[j]));
            if 2 * deg < j - i {
                record(
                    Prop21Violation {
                        i,
                        j,
                        bullet: Prop21Bullet::OutDegree,
                        degree: deg,
                    },
                    &mut report,
                );
            }
        }
    }
    for j in 0..n {
        let mut deg = 0;
        for i in (0..j).rev() {
            deg += usize::from(t.beats(order[i], order[j]));
            if 2 * deg < j - i {
                record(
                    Prop21Violation {
                        i,
                        j,
                        bullet: Prop21Bullet::InDegree,
                        degree: deg,
                    },
                    &mut report,
                );
            }
        }
    }
    report
}
