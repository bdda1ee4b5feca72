//! Bipartite matching by augmenting paths, with Hall-violator extraction.

const NONE: usize = usize::MAX;

/// Maximum matching between `left` items and `right` items, where
/// `adj[i]` lists the right items acceptable to left item `i`.
///
/// Left items are processed in index order and candidates in list order,
/// so the result is deterministic.
#[derive(Clone, Debug)]
pub struct Matching {
    pub left_to_right: Vec<usize>,
    pub right_to_left: Vec<usize>,
    size: usize,
}

impl Matching {
    pub fn compute(adj: &[Vec<usize>], right_count: usize) -> Self {
        let mut m = Matching {
            left_to_right: vec![NONE; adj.len()],
            right_to_left: vec![NONE; right_count],
            size: 0,
        };
        let mut seen = vec![0u32; right_count];
        for i in 0..adj.len() {
            let stamp = i as u32 + 1;
            if m.augment(adj, i, &mut seen, stamp) {
                m.size += 1;
            }
        }
        m
    }

    /// Takes a free candidate if there is one, else searches for an
    /// augmenting path.
    fn augment(&mut self, adj: &[Vec<usize>], i: usize, seen: &mut [u32], stamp: u32) -> bool {
        if let Some(&j) = adj[i].iter().find(|&&j| self.right_to_left[j] == NONE) {
            self.left_to_right[i] = j;
            self.right_to_left[j] = i;
            return true;
        }
        for &j in &adj[i] {
            if seen[j] == stamp {
                continue;
            }
            seen[j] = stamp;
            let owner = self.right_to_left[j];
            if owner == NONE || self.augment(adj, owner, seen, stamp) {
                self.left_to_right[i] = j;
                self.right_to_left[j] = i;
                return true;
            }
        }
        false
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn saturates_left(&self) -> bool {
        self.size == self.left_to_right.len()
    }

    pub fn partner_of_left(&self, i: usize) -> Option<usize> {
        (self.left_to_right[i] != NONE).then_some(self.left_to_right[i])
    }

    /// When the left side is not saturated: a left set `S` with
    /// `|N(S)| < |S|`, namely everything reachable by alternating paths
    /// from the first unmatched left item. Sorted ascending.
    pub fn hall_violator(&self, adj: &[Vec<usize>]) -> Option<Vec<usize>> {
        let start = (0..adj.len()).find(|&i| self.left_to_right[i] == NONE)?;
        let mut in_s = vec![false; adj.len()];
        let mut seen_right = vec![false; self.right_to_left.len()];
        let mut stack = vec![start];
        in_s[start] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if seen_right[j] {
                    continue;
                }
                seen_right[j] = true;
                let owner = self.right_to_left[j];
                debug_assert_ne!(owner, NONE, "unmatched right vertex reachable: matching not maximum");
                if owner != NONE && !in_s[owner] {
                    in_s[owner] = true;
                    stack.push(owner);
                }
            }
        }
        Some((0..adj.len()).filter(|&i| in_s[i]).collect())
    }
}
