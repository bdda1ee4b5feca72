//! Canonical forms of small set systems given as vertex bitmasks.
//!
//! `canonical_form` runs colour refinement with individualization and keeps
//! the smallest leaf code; `brute_canonical` minimizes over all permutations.
//! Both are isomorphism invariants; they need not produce the same code.

use itertools::Itertools;

pub type Mask = u16;

/// Largest vertex count a mask family may use.
pub const MAX_MASK_VERTICES: usize = 16;

pub fn relabel_masks(masks: &[Mask], perm: &[usize]) -> Vec<Mask> {
    let mut out: Vec<Mask> = masks
        .iter()
        .map(|&m| {
            let mut x = 0;
            let mut rest = m;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                x |= 1 << perm[v];
                rest &= rest - 1;
            }
            x
        })
        .collect();
    out.sort_unstable();
    out
}

/// Stable colour refinement on the vertex set, refining `colors` in place.
/// Colours are ranks `0..c`. Returns the number of colours.
fn refine(n: usize, masks: &[Mask], colors: &mut [u32]) -> usize {
    let mut count = colors.iter().unique().count();
    loop {
        let mut sigs: Vec<(u32, Vec<u64>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut desc: Vec<u64> = masks
                .iter()
                .filter(|&&m| m >> v & 1 == 1)
                .map(|&m| {
                    let mut others: Vec<u32> = (0..n).filter(|&u| u != v && m >> u & 1 == 1).map(|u| colors[u]).collect();
                    others.sort_unstable();
                    others.iter().fold(m.count_ones() as u64, |acc, &c| acc << 5 | (c as u64 + 1))
                })
                .collect();
            desc.sort_unstable();
            sigs.push((colors[v], desc));
        }
        let ranked: Vec<&(u32, Vec<u64>)> = sigs.iter().sorted().dedup().collect();
        for v in 0..n {
            colors[v] = ranked.binary_search(&&sigs[v]).unwrap() as u32;
        }
        let next = ranked.len();
        if next == count {
            return count;
        }
        count = next;
    }
}

fn swap_is_automorphism(masks: &[Mask], sorted: &[Mask], u: usize, v: usize) -> bool {
    let mut swapped: Vec<Mask> = masks
        .iter()
        .map(|&m| {
            let (bu, bv) = (m >> u & 1, m >> v & 1);
            (m & !(1 << u) & !(1 << v)) | bu << v | bv << u
        })
        .collect();
    swapped.sort_unstable();
    swapped == sorted
}

struct Search<'a> {
    n: usize,
    masks: &'a [Mask],
    sorted: Vec<Mask>,
    best: Option<Vec<Mask>>,
}

impl Search<'_> {
    fn descend(&mut self, mut colors: Vec<u32>) {
        let count = refine(self.n, self.masks, &mut colors);
        if count == self.n {
            let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
            let code = relabel_masks(self.masks, &perm);
            if self.best.as_ref().map_or(true, |b| code < *b) {
                self.best = Some(code);
            }
            return;
        }
        let target = (0..count as u32)
            .find(|&c| colors.iter().filter(|&&x| x == c).count() > 1)
            .unwrap();
        let cell: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| swap_is_automorphism(self.masks, &self.sorted, u, v)) {
                continue;
            }
            tried.push(v);
            let child: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(x, &c)| 2 * c + u32::from(c == target && x != v))
                .collect();
            self.descend(child);
        }
    }
}

/// Canonical code of the set system: sorted relabeled masks.
pub fn canonical_form(n: usize, masks: &[Mask]) -> Vec<Mask> {
    canonical_with_colors(n, masks, vec![0; n])
}

/// Canonical code respecting an initial vertex colouring.
pub fn canonical_with_colors(n: usize, masks: &[Mask], colors: Vec<u32>) -> Vec<Mask> {
    assert!(n <= MAX_MASK_VERTICES);
    if n == 0 {
        return masks.to_vec();
    }
    let mut sorted = masks.to_vec();
    sorted.sort_unstable();
    let mut s = Search {
        n,
        masks,
        sorted,
        best: None,
    };
    s.descend(colors);
    s.best.unwrap()
}

/// Minimum code over all `n!` relabelings. Intended for `n <= 8`.
pub fn brute_canonical(n: usize, masks: &[Mask]) -> Vec<Mask> {
    (0..n)
        .permutations(n)
        .map(|perm| relabel_masks(masks, &perm))
        .min()
        .unwrap_or_else(|| masks.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_family(rng: &mut ChaCha8Rng, n: usize) -> Vec<Mask> {
        let r = rng.gen_range(2..=3.min(n));
        let all: Vec<Mask> = (0..n).combinations(r).map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let size = rng.gen_range(0..=all.len());
        let mut f: Vec<Mask> = all.choose_multiple(rng, size).copied().collect();
        f.sort_unstable();
        f
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let n = rng.gen_range(3..=12);
            let f = random_family(&mut rng, n);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let g = relabel_masks(&f, &perm);
            assert_eq!(canonical_form(n, &f), canonical_form(n, &g));
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // Path P4 versus star K_{1,3}.
        let path = [0b0011, 0b0110, 0b1100];
        let star = [0b0011, 0b0101, 0b1001];
        assert_ne!(canonical_form(4, &path), canonical_form(4, &star));
        // C6 versus two triangles.
        let c6: Vec<Mask> = (0..6).map(|i| 1 << i | 1 << ((i + 1) % 6)).collect();
        let tt = [0b000011, 0b000110, 0b000101, 0b011000, 0b110000, 0b101000];
        assert_ne!(canonical_form(6, &c6), canonical_form(6, &tt));
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let n = rng.gen_range(3..=7);
            let f = random_family(&mut rng, n);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let g = relabel_masks(&f, &perm);
            let h = random_family(&mut rng, n);
            assert_eq!(brute_canonical(n, &f), brute_canonical(n, &g));
            let same_fast = canonical_form(n, &f) == canonical_form(n, &h);
            let same_brute = brute_canonical(n, &f) == brute_canonical(n, &h);
            assert_eq!(same_fast, same_brute);
        }
    }
}
