use serde::{Deserialize, Serialize};

use crate::density::{count_at_least, Density};
use crate::error::{invalid, Result};
use crate::ordering::analysis::{check_prop21, OrderingAnalysis};
use crate::tournament::Tournament;

/// Outcome of splitting an ordering into "many long backward edges" or "a
/// window that is twice as dense".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum Dichotomy {
    /// `4 |B'| >= |B|`; the long edges are `analysis.long_edges`.
    LongEdges {
        long_count: usize,
        backward_count: usize,
    },
    /// Positions `start..start + width` hold at least `2 eps width^2`
    /// backward edges.
    DenseWindow {
        start: usize,
        width: usize,
        backward_count: usize,
    },
    /// Neither certificate could be produced.
    NoCertificate { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyResult {
    pub eps: Density,
    #[serde(flatten)]
    pub outcome: Dichotomy,
}

impl DichotomyResult {
    pub fn is_certificate(&self) -> bool {
        !matches!(self.outcome, Dichotomy::NoCertificate { .. })
    }
}

/// Either certifies that the long backward edges make up a quarter of all
/// backward edges, or finds a window of `floor(n/8)` consecutive positions
/// containing at least `2 eps floor(n/8)^2` backward edges.
///
/// The prefix and suffix windows are tried first; otherwise every window
/// start is scanned and the densest window wins, lowest start on ties.
/// Inputs that do not meet the hypotheses (`alpha < eps`, an ordering that
/// is not locally optimal, `n < 16` when the long edges fall short, or no
/// window dense enough) yield [`Dichotomy::NoCertificate`].
pub fn long_or_boost(
    t: &Tournament,
    analysis: &OrderingAnalysis,
    eps: Density,
) -> Result<DichotomyResult> {
    if analysis.n != t.n() {
        return Err(invalid("analysis does not belong to this tournament"));
    }
    let n = analysis.n;
    let none = |reason: String| {
        Ok(DichotomyResult {
            eps,
            outcome: Dichotomy::NoCertificate { reason },
        })
    };
    if *eps.numer() == 0 {
        return none("eps must be positive".into());
    }
    if analysis.alpha() < eps {
        return none(format!(
            "backward density {}/{} is below eps = {eps}",
            analysis.backward.len(),
            n * n
        ));
    }
    if !check_prop21(t, &analysis.order).passed() {
        return none("ordering is not locally optimal".into());
    }
    if analysis.long_edges_dominate() {
        return Ok(DichotomyResult {
            eps,
            outcome: Dichotomy::LongEdges {
                long_count: analysis.long_edges.len(),
                backward_count: analysis.backward.len(),
            },
        });
    }
    if n < 16 {
        return none(format!("long edges fall short and n = {n} < 16"));
    }

    let width = n / 8;
    let counts = window_counts(analysis, width);
    let dense = |c: usize| count_at_least(c as u64, 2, eps, (width * width) as u64);
    let last = n - width;
    let window = |start: usize| Dichotomy::DenseWindow {
        start,
        width,
        backward_count: counts[start],
    };
    if dense(counts[0]) {
        return Ok(DichotomyResult {
            eps,
            outcome: window(0),
        });
    }
    if dense(counts[last]) {
        return Ok(DichotomyResult {
            eps,
            outcome: window(last),
        });
    }
    let best = (0..=last)
        .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)))
        .expect("at least one window");
    if dense(counts[best]) {
        Ok(DichotomyResult {
            eps,
            outcome: window(best),
        })
    } else {
        none(format!(
            "densest window at {best} has {} backward edges, below 2 eps {width}^2",
            counts[best]
        ))
    }
}

/// Backward-edge counts of every window `start..start + width`, via a
/// difference array over window starts.
fn window_counts(analysis: &OrderingAnalysis, width: usize) -> Vec<usize> {
    let n = analysis.n;
    let last = n - width;
    let mut diff = vec![0i64; last + 2];
    for e in &analysis.backward {
        if e.length() >= width {
            continue;
        }
        // Windows containing both i and j start in j+1-width ..= i.
        let lo = (e.j + 1).saturating_sub(width);
        let hi = e.i.min(last);
        if lo <= hi {
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
    }
    let mut out = Vec::with_capacity(last + 1);
    let mut acc = 0i64;
    for d in &diff[..=last] {
        acc += d;
        out.push(acc as usize);
    }
    out
}

/// Backward edges among positions `start..start + width`, recounted from
/// the tournament.
pub fn count_backward_in_window(
    t: &Tournament,
    order: &[usize],
    start: usize,
    width: usize,
) -> usize {
    let w = &order[start..start + width];
    let mut c = 0;
    for j in 0..w.len() {
        for i in 0..j {
            if t.beats(w[j], w[i]) {
                c += 1;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_cyclic_blowup, gen_dk, gen_transitive};
    use crate::ordering::analysis::analyze_ordering;
    use num_rational::Ratio;

    #[test]
    fn d4_block_order_is_long() {
        let t = gen_dk(4).unwrap();
        let a = analyze_ordering(&t, &(0..12).collect::<Vec<_>>()).unwrap();
        let r = long_or_boost(&t, &a, Ratio::new(1, 9)).unwrap();
        assert_eq!(
            r.outcome,
            Dichotomy::LongEdges {
                long_count: 16,
                backward_count: 16
            }
        );
    }

    #[test]
    fn transitive_has_no_certificate() {
        let t = gen_transitive(40).unwrap();
        let a = analyze_ordering(&t, &(0..40).collect::<Vec<_>>()).unwrap();
        let r = long_or_boost(&t, &a, Ratio::new(1, 100)).unwrap();
        assert!(!r.is_certificate());
    }

    #[test]
    fn blowup_certificate_recounts() {
        let t = gen_cyclic_blowup(48, 2, 0).unwrap();
        let a = analyze_ordering(&t, &(0..48).collect::<Vec<_>>()).unwrap();
        let eps = Ratio::new(1, 18);
        let r = long_or_boost(&t, &a, eps).unwrap();
        match r.outcome {
            Dichotomy::LongEdges {
                long_count,
                backward_count,
            } => {
                assert!(4 * long_count >= backward_count)
            }
            Dichotomy::DenseWindow {
                start,
                width,
                backward_count,
            } => {
                assert_eq!(
                    count_backward_in_window(&t, &a.order, start, width),
                    backward_count
                );
                assert!(count_at_least(
                    backward_count as u64,
                    2,
                    eps,
                    (width * width) as u64
                ));
            }
            Dichotomy::NoCertificate { reason } => panic!("{reason}"),
        }
    }

    #[test]
    fn short_edges_force_a_window() {
        // Many 3-cycles on consecutive triples: every backward edge has
        // length 2, far below n/16 for n = 96.
        let n = 96;
        let t = gen_cyclic_blowup(n, n / 3, 0).unwrap();
        let a = analyze_ordering(&t, &(0..n).collect::<Vec<_>>()).unwrap();
        assert_eq!(a.backward.len(), 32);
        assert!(a.long_edges.is_empty());
        // alpha = 32/9216; ask for eps = 1/300 <= alpha.
        let eps = Ratio::new(1, 300);
        let r = long_or_boost(&t, &a, eps).unwrap();
        match r.outcome {
            Dichotomy::DenseWindow {
                start,
                width,
                backward_count,
            } => {
                assert_eq!(width, 12);
                assert_eq!(start, 0);
                assert_eq!(backward_count, 4);
                assert_eq!(count_backward_in_window(&t, &a.order, start, width), 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn window_counts_match_recount() {
        let t = gen_cyclic_blowup(60, 4, 0).unwrap();
        let order: Vec<usize> = (0..60).collect();
        let a = analyze_ordering(&t, &order).unwrap();
        for width in [1, 5, 7, 15, 60] {
            let c = window_counts(&a, width);
            for (s, &cnt) in c.iter().enumerate() {
                assert_eq!(
                    cnt,
                    count_backward_in_window(&t, &order, s, width),
                    "w={width} s={s}"
                );
            }
        }
    }
}
