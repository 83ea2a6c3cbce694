use crate::bits::{and_count, BitSet};
use crate::tournament::Tournament;

/// Greedy transitive subtournament of `set`.
///
/// Repeatedly takes a vertex of maximum out-degree inside the remaining set
/// (lowest id on ties) and continues inside its out-neighbourhood. Each step
/// keeps at least half of the other remaining vertices, so the result has at
/// least `floor(log2 |set|) + 1` vertices. The vertices are listed in
/// transitive order: each beats all that follow it.
pub fn erdos_moser(t: &Tournament, set: &[usize]) -> Vec<usize> {
    let mut current = BitSet::from_indices(t.n(), set.iter().copied());
    let mut chain = Vec::new();
    while !current.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for v in current.iter() {
            let deg = and_count(t.out_words(v), current.words());
            if best.is_none_or(|(_, d)| deg > d) {
                best = Some((v, deg));
            }
        }
        let (v, _) = best.expect("nonempty");
        chain.push(v);
        current.intersect_words(t.out_words(v));
    }
    chain
}

/// `true` iff every vertex of `list` beats every vertex listed after it.
pub fn is_transitive_in_order(t: &Tournament, list: &[usize]) -> bool {
    list.iter()
        .enumerate()
        .all(|(i, &a)| list[i + 1..].iter().all(|&b| a != b && t.beats(a, b)))
}

/// `floor(log2 s) + 1` for `s >= 1`.
pub fn erdos_moser_bound(s: usize) -> usize {
    if s == 0 {
        0
    } else {
        s.ilog2() as usize + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_dk, gen_eps_random, gen_transitive};

    #[test]
    fn transitive_input_is_returned_whole() {
        let t = gen_transitive(8).unwrap();
        assert_eq!(
            erdos_moser(&t, &(0..8).collect::<Vec<_>>()),
            (0..8).collect::<Vec<_>>()
        );
    }

    #[test]
    fn three_cycle_gives_an_edge() {
        let t = gen_dk(1).unwrap();
        let s = erdos_moser(&t, &[0, 1, 2]);
        assert_eq!(s.len(), 2);
        assert!(is_transitive_in_order(&t, &s));
    }

    #[test]
    fn meets_the_log_bound() {
        for seed in 0..10 {
            let t = gen_eps_random(300, 0.5, seed).unwrap();
            let set: Vec<usize> = (0..300).step_by(2).collect();
            let s = erdos_moser(&t, &set);
            assert!(s.len() >= erdos_moser_bound(set.len()));
            assert!(is_transitive_in_order(&t, &s));
            assert!(s.iter().all(|v| v % 2 == 0));
        }
        assert_eq!(erdos_moser_bound(1024), 11);
        assert_eq!(erdos_moser_bound(1), 1);
        assert!(erdos_moser(&gen_transitive(3).unwrap(), &[]).is_empty());
    }
}
