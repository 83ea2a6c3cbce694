use crate::bits::BitSet;

/// A bipartite graph between `left` and `right`, stored as one bit row over
/// right-side indices per left-side index. The vertex lists carry tournament
/// ids; adjacency is addressed by position in those lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    rows: Vec<BitSet>,
}

impl BipartiteGraph {
    pub fn new(left: Vec<usize>, right: Vec<usize>) -> Self {
        let rows = vec![BitSet::new(right.len()); left.len()];
        Self { left, right, rows }
    }

    pub fn from_fn(
        left: Vec<usize>,
        right: Vec<usize>,
        mut adj: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        let mut g = Self::new(left, right);
        for a in 0..g.left.len() {
            for b in 0..g.right.len() {
                if adj(a, b) {
                    g.rows[a].insert(b);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn row(&self, a: usize) -> &BitSet {
        &self.rows[a]
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    /// Right-side indices adjacent to every left index in `set`.
    pub fn common_right(&self, set: &[usize]) -> BitSet {
        let mut acc = BitSet::full(self.right.len());
        for &a in set {
            acc.intersect_with(&self.rows[a]);
        }
        acc
    }

    /// Left-side indices adjacent to every right index in `set`.
    pub fn common_left(&self, set: &[usize]) -> Vec<usize> {
        (0..self.left.len())
            .filter(|&a| set.iter().all(|&b| self.rows[a].contains(b)))
            .collect()
    }
}
