//! The [`Tournament`] type and its canonical text format.
//!
//! The text format is a header line holding `n` followed by `n` rows of `n`
//! characters in `{0,1}`; character `v` of row `u` is `1` iff the edge is
//! directed `u -> v`. Every line, including the last, ends with `\n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{and_not_count, words_for, BitSet};
use crate::error::{invalid, Error, FormatErrorKind, Result};

/// A complete oriented graph on vertices `0..n`, stored as out-neighbourhood
/// bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from an orientation rule `beats(u, v)` evaluated
    /// for `u < v`.
    pub fn from_fn(n: usize, mut beats: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if beats(u, v) {
                    t.set(u, v);
                } else {
                    t.set(v, u);
                }
            }
        }
        t
    }

    /// Builds a tournament from a full adjacency matrix, validating both
    /// tournament invariants.
    pub fn from_matrix(adj: &[Vec<bool>]) -> Result<Self> {
        let n = adj.len();
        for (u, row) in adj.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!(
                    "row {u} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let mut t = Self::empty(n);
        for u in 0..n {
            if adj[u][u] {
                return Err(invalid(format!("self-loop at {u}")));
            }
            for v in u + 1..n {
                match (adj[u][v], adj[v][u]) {
                    (true, false) => t.set(u, v),
                    (false, true) => t.set(v, u),
                    _ => {
                        return Err(invalid(format!(
                            "pair ({u},{v}) is not oriented exactly once"
                        )))
                    }
                }
            }
        }
        Ok(t)
    }

    fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Self {
            n,
            stride,
            rows: vec![0; n * stride],
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn clear(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / 64] &= !(1 << (v % 64));
    }

    /// Reverses the edge between `u` and `v`.
    pub(crate) fn flip(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        if self.beats(u, v) {
            self.clear(u, v);
            self.set(v, u);
        } else {
            self.clear(v, u);
            self.set(u, v);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `true` iff the edge between `u` and `v` is directed `u -> v`.
    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    /// Out-neighbourhood of `v` as raw words.
    #[inline]
    pub fn out_words(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub fn out_set(&self, v: usize) -> BitSet {
        BitSet::from_words(self.n, self.out_words(v).to_vec())
    }

    /// In-neighbourhood of `v`: every other vertex that is not beaten by `v`.
    pub fn in_set(&self, v: usize) -> BitSet {
        let mut words: Vec<u64> = self.out_words(v).iter().map(|w| !w).collect();
        words[v / 64] &= !(1 << (v % 64));
        BitSet::from_words(self.n, words)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_words(v)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.n - 1 - self.out_degree(v)
    }

    /// Number of `x` with `v -> x` and `x -> u`; for an edge `u -> v` this is
    /// the number of directed triangles through it.
    #[inline]
    pub(crate) fn completers(&self, u: usize, v: usize) -> usize {
        // out(v) never contains u when u -> v, and never contains v itself.
        and_not_count(self.out_words(v), self.out_words(u))
    }

    /// The subtournament induced on `vertices`, relabelled `0..len` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Tournament> {
        let mut seen = BitSet::new(self.n);
        for &v in vertices {
            if v >= self.n {
                return Err(invalid(format!("vertex {v} out of range (n = {})", self.n)));
            }
            if seen.contains(v) {
                return Err(invalid(format!("vertex {v} listed twice")));
            }
            seen.insert(v);
        }
        Ok(Tournament::from_fn(vertices.len(), |a, b| {
            self.beats(vertices[a], vertices[b])
        }))
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tournament> {
        if perm.len() != self.n || !is_permutation(perm) {
            return Err(invalid("relabelling is not a permutation"));
        }
        let mut inv = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        Ok(Tournament::from_fn(self.n, |a, b| {
            self.beats(inv[a], inv[b])
        }))
    }

    /// Checks both tournament invariants over all pairs.
    pub fn validate(&self) -> Result<()> {
        for u in 0..self.n {
            if self.beats(u, u) {
                return Err(invalid(format!("self-loop at {u}")));
            }
            for v in u + 1..self.n {
                if self.beats(u, v) == self.beats(v, u) {
                    return Err(invalid(format!(
                        "pair ({u},{v}) is not oriented exactly once"
                    )));
                }
            }
            let tail = self.n % 64;
            if tail != 0 && self.out_words(u)[self.stride - 1] >> tail != 0 {
                return Err(invalid(format!("row {u} has bits beyond n")));
            }
        }
        Ok(())
    }

    /// Directed edges `(u, v)` meaning `u -> v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let row = self.out_words(u);
            row.iter().enumerate().flat_map(move |(wi, &w)| {
                let mut w = w;
                std::iter::from_fn(move || {
                    if w == 0 {
                        return None;
                    }
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((u, wi * 64 + t))
                })
            })
        })
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity((self.n + 1) * (self.n + 1) + 8);
        s.push_str(&self.n.to_string());
        s.push('\n');
        for u in 0..self.n {
            for v in 0..self.n {
                s.push(if self.beats(u, v) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses the canonical text form. A missing final newline is accepted;
    /// any other deviation is an error.
    pub fn parse(text: &str) -> Result<Tournament> {
        let fmt_err = |line: usize, kind| Error::Format { line, kind };
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or("");
        let n: usize = header
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| fmt_err(1, FormatErrorKind::Header))?;
        let mut rows: Vec<&str> = lines.collect();
        if rows.last() == Some(&"") {
            rows.pop();
        }
        if rows.len() != n {
            return Err(fmt_err(
                rows.len().min(n) + 2,
                FormatErrorKind::RowCount {
                    expected: n,
                    found: rows.len(),
                },
            ));
        }
        let mut t = Self::empty(n);
        for (u, row) in rows.iter().enumerate() {
            let line = u + 2;
            if row.len() != n {
                return Err(fmt_err(
                    line,
                    FormatErrorKind::Ragged {
                        expected: n,
                        found: row.chars().count(),
                    },
                ));
            }
            for (v, c) in row.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' if u == v => return Err(fmt_err(line, FormatErrorKind::SelfLoop)),
                    b'1' => t.set(u, v),
                    other => return Err(fmt_err(line, FormatErrorKind::BadChar(other as char))),
                }
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if t.beats(u, v) == t.beats(v, u) {
                    return Err(fmt_err(u + 2, FormatErrorKind::NotATournament));
                }
            }
        }
        Ok(t)
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={})", self.n)?;
        if self.n <= 16 {
            for u in 0..self.n {
                write!(f, "\n  ")?;
                for v in 0..self.n {
                    f.write_str(if self.beats(u, v) { "1" } else { "0" })?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Tournament {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Tournament {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Tournament::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn parse_tournament(text: &str) -> Result<Tournament> {
    Tournament::parse(text)
}

pub fn serialize_tournament(t: &Tournament) -> String {
    t.to_text()
}

pub(crate) fn is_permutation(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    for &v in order {
        if v >= order.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycle_from_text() {
        let t = Tournament::parse("3\n010\n001\n100\n").unwrap();
        assert!(t.beats(0, 1) && t.beats(1, 2) && t.beats(2, 0));
        assert_eq!(t.to_text(), "3\n010\n001\n100\n");
    }

    #[test]
    fn missing_final_newline_is_accepted() {
        let t = Tournament::parse("2\n01\n00").unwrap();
        assert_eq!(t.to_text(), "2\n01\n00\n");
    }

    #[test]
    fn self_loop_rejected() {
        let err = Tournament::parse("3\n110\n001\n100\n").unwrap_err();
        assert_eq!(err.to_string(), "format error at line 2: self-loop");
    }

    #[test]
    fn both_or_neither_direction_rejected() {
        let err = Tournament::parse("3\n011\n001\n110\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Format {
                kind: FormatErrorKind::NotATournament,
                ..
            }
        ));
        let err = Tournament::parse("2\n00\n00\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Format {
                kind: FormatErrorKind::NotATournament,
                ..
            }
        ));
    }

    #[test]
    fn ragged_and_malformed_rejected() {
        assert!(matches!(
            Tournament::parse("3\n01\n001\n100\n").unwrap_err(),
            Error::Format {
                line: 2,
                kind: FormatErrorKind::Ragged { .. }
            }
        ));
        assert!(matches!(
            Tournament::parse("3\n010\n001\n").unwrap_err(),
            Error::Format {
                kind: FormatErrorKind::RowCount { .. },
                ..
            }
        ));
        assert!(matches!(
            Tournament::parse("x\n").unwrap_err(),
            Error::Format {
                kind: FormatErrorKind::Header,
                ..
            }
        ));
        assert!(matches!(
            Tournament::parse("2\n0a\n00\n").unwrap_err(),
            Error::Format {
                kind: FormatErrorKind::BadChar('a'),
                ..
            }
        ));
        assert!(matches!(
            Tournament::parse("3\n010 \n001\n100\n").unwrap_err(),
            Error::Format {
                kind: FormatErrorKind::Ragged { .. },
                ..
            }
        ));
    }

    #[test]
    fn induced_relabels_in_order() {
        let t = Tournament::parse("3\n010\n001\n100\n").unwrap();
        let s = t.induced(&[2, 0]).unwrap();
        assert!(s.beats(0, 1));
        assert!(t.induced(&[0, 0]).is_err());
        assert!(t.induced(&[3]).is_err());
    }

    #[test]
    fn edges_and_neighbourhoods() {
        let t = Tournament::from_fn(70, |u, v| (u + v) % 3 != 0);
        t.validate().unwrap();
        assert_eq!(t.edges().count(), 70 * 69 / 2);
        for v in [0, 63, 64, 69] {
            assert_eq!(t.out_set(v).count() + t.in_set(v).count(), 69);
            assert!(!t.in_set(v).contains(v));
        }
    }
}
