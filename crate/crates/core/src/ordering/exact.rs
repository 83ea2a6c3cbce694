use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// Largest `n` accepted by [`exact_min_backward`].
pub const EXACT_MAX_N: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactOrdering {
    pub order: Vec<usize>,
    pub backward: usize,
}

/// Minimum number of backward edges over all orderings (the minimum feedback
/// arc set of a tournament), by dynamic programming over vertex subsets.
///
/// `best[S]` is the fewest backward edges among orderings of `S` placed as a
/// prefix; appending `v` after `S` adds one backward edge for every member
/// of `S` that `v` beats.
pub fn exact_min_backward(t: &Tournament) -> Result<ExactOrdering> {
    let n = t.n();
    if n > EXACT_MAX_N {
        return Err(Error::SizeLimit {
            what: "n",
            got: n,
            limit: EXACT_MAX_N,
        });
    }
    if n == 0 {
        return Ok(ExactOrdering {
            order: vec![],
            backward: 0,
        });
    }
    let out: Vec<u32> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| t.beats(u, v))
                .fold(0u32, |m, v| m | 1 << v)
        })
        .collect();
    let states = 1usize << n;
    let mut best = vec![u16::MAX; states];
    let mut last = vec![0u8; states];
    best[0] = 0;
    for s in 0..states {
        let base = best[s];
        let s32 = s as u32;
        let mut free = !s32 & (states as u32 - 1);
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            let next = s | 1 << v;
            let cost = base + (out[v] & s32).count_ones() as u16;
            if cost < best[next] {
                best[next] = cost;
                last[next] = v as u8;
            }
        }
    }
    let full = states - 1;
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok(ExactOrdering {
        order,
        backward: best[full] as usize,
    })
}

/// Backward edges of `t` under `order`, counted directly.
pub fn count_backward(t: &Tournament, order: &[usize]) -> usize {
    let mut count = 0;
    for j in 0..order.len() {
        for i in 0..j {
            if t.beats(order[j], order[i]) {
                count += 1;
            }
        }
    }
    count
}
