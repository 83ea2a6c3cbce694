use rand::Rng as _;

use crate::rng;
use crate::tournament::Tournament;

/// An ordering in which no single vertex can be moved to another position to
/// reduce the number of backward edges.
///
/// The start order sorts vertices by out-degree, highest first, with ties
/// broken by a seeded random key. Each sweep then visits vertices by id,
/// lowest first, and moves the visited vertex to the position that reduces
/// the backward count the most (leftmost position among equals). Sweeps
/// repeat until one makes no move. The count strictly decreases with every
/// move, so the loop terminates.
pub fn local_search_ordering(t: &Tournament, seed: u64) -> Vec<usize> {
    let n = t.n();
    let mut rng = rng::stream(seed, "local-search", 0);
    let mut keyed: Vec<(usize, u64, usize)> = (0..n)
        .map(|v| (t.out_degree(v), rng.random::<u64>(), v))
        .collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let order: Vec<usize> = keyed.into_iter().map(|(_, _, v)| v).collect();
    relocate_to_fixpoint(t, order)
}

/// Runs the relocation sweeps from an arbitrary start order.
pub fn relocate_to_fixpoint(t: &Tournament, mut order: Vec<usize>) -> Vec<usize> {
    let n = t.n();
    debug_assert_eq!(order.len(), n);
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    loop {
        let mut moved = false;
        for v in 0..n {
            let p = pos[v];
            let (mut best, mut target) = (0i64, p);
            // Moving v left past order[q..p]: each w that v beats stops being
            // a backward edge, each w that beats v becomes one.
            let mut delta = 0i64;
            for q in (0..p).rev() {
                delta += if t.beats(order[q], v) { 1 } else { -1 };
                if delta < 0 && delta <= best {
                    best = delta;
                    target = q;
                }
            }
            let mut delta = 0i64;
            for q in p + 1..n {
                delta += if t.beats(v, order[q]) { 1 } else { -1 };
                if delta < best {
                    best = delta;
                    target = q;
                }
            }
            if target != p {
                order.remove(p);
                order.insert(target, v);
                let (lo, hi) = (p.min(target), p.max(target));
                for (q, &w) in order.iter().enumerate().take(hi + 1).skip(lo) {
                    pos[w] = q;
                }
                moved = true;
            }
        }
        if !moved {
            return order;
        }
    }
}

/// `true` iff no single-vertex relocation reduces the backward count.
pub fn is_relocation_stable(t: &Tournament, order: &[usize]) -> bool {
    let n = order.len();
    for p in 0..n {
        let v = order[p];
        let mut delta = 0i64;
        for q in (0..p).rev() {
            delta += if t.beats(order[q], v) { 1 } else { -1 };
            if delta < 0 {
                return false;
            }
        }
        let mut delta = 0i64;
        for &w in &order[p + 1..] {
            delta += if t.beats(v, w) { 1 } else { -1 };
            if delta < 0 {
                return false;
            }
        }
    }
    true
}
