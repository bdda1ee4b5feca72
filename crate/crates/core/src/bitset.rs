//! Edge sets as bitsets over the `C(n, r)` possible r-subsets, for `n <= 16`.
//!
//! Positions follow the colexicographic rank of the sorted edge, so the
//! r-subsets of `0..m` occupy exactly the first `C(m, r)` positions.

use crate::binom::binom;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

pub const MAX_BITSET_VERTICES: usize = 16;

/// Colex rank of a sorted r-subset.
pub fn colex_rank(sorted: &[Vertex]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| binom(u64::from(v), i as u64 + 1) as usize)
        .sum()
}

/// Inverse of [`colex_rank`].
pub fn colex_unrank(mut rank: usize, r: usize) -> Vec<Vertex> {
    let mut out = vec![0; r];
    for i in (0..r).rev() {
        let mut v = i as u64;
        while binom(v + 1, i as u64 + 1) as usize <= rank {
            v += 1;
        }
        rank -= binom(v, i as u64 + 1) as usize;
        out[i] = v as Vertex;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeBitset {
    n: usize,
    r: usize,
    words: Vec<u64>,
}

impl EdgeBitset {
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        if n > MAX_BITSET_VERTICES {
            return Err(Error::Domain(format!("bitset representation needs n <= 16, got {n}")));
        }
        let bits = binom(n as u64, r as u64) as usize;
        Ok(EdgeBitset {
            n,
            r,
            words: vec![0; bits.div_ceil(64)],
        })
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self> {
        let mut b = Self::empty(h.n(), h.r())?;
        for e in h.edges() {
            b.insert(e.vertices());
        }
        Ok(b)
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        let edges = self.iter_ranks().map(|i| colex_unrank(i, self.r));
        Hypergraph::new(self.n, self.r, edges).expect("bitset edges are valid")
    }

    pub fn insert(&mut self, sorted: &[Vertex]) {
        let i = colex_rank(sorted);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, sorted: &[Vertex]) -> bool {
        let i = colex_rank(sorted);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }

    pub fn is_subset_of(&self, other: &EdgeBitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    #[test]
    fn rank_is_a_bijection() {
        for r in 1..5 {
            let ranks: Vec<usize> = (0..9u32).combinations(r).map(|c| colex_rank(&c)).sorted().collect();
            assert_eq!(ranks, (0..binom(9, r as u64) as usize).collect::<Vec<_>>());
            for c in (0..9u32).combinations(r) {
                assert_eq!(colex_unrank(colex_rank(&c), r), c);
            }
        }
    }

    #[test]
    fn refuses_large_n() {
        assert!(EdgeBitset::empty(17, 3).is_err());
    }

    proptest! {
        #[test]
        fn dual_representation_agrees(n in 3usize..=16, r in 2usize..4, seed in any::<u64>()) {
            let r = r.min(n);
            let edges: Vec<Vec<u32>> = (0..n as u32)
                .combinations(r)
                .enumerate()
                .filter(|(i, _)| (seed.rotate_left(*i as u32 % 64) ^ (*i as u64 * 0x9e37)) % 3 == 0)
                .map(|(_, e)| e)
                .collect();
            let h = Hypergraph::new(n, r, edges).unwrap();
            let b = EdgeBitset::from_hypergraph(&h).unwrap();
            prop_assert_eq!(b.len(), h.len());
            for e in h.edges() {
                prop_assert!(b.contains(e.vertices()));
            }
            prop_assert_eq!(b.to_hypergraph(), h);
        }
    }
}
