//! Systems of distinct representative pairs (SDRPs).
//!
//! A pair set `P` of the 2-shadow is an SDRP exactly when the edges meeting
//! `P` in a pair number `|P|` and can be matched to `P` bijectively. The
//! residual is everything else.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{parse_hypergraph, serialize_hypergraph};
use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::matching::Matching;

/// Exhaustive certification and subset enumeration run up to this size.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certification {
    /// Maximum size confirmed by exhaustive search.
    Exhaustive,
    /// Instance too large to certify; the result is Hall-stable only.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sdrp {
    pub pairs: Vec<(Vertex, Vertex)>,
    pub representatives: Vec<Edge>,
    pub residual: Hypergraph,
    pub certification: Certification,
}

impl Sdrp {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn representative_map(&self) -> BTreeMap<(Vertex, Vertex), Edge> {
        self.pairs.iter().copied().zip(self.representatives.iter().cloned()).collect()
    }

    /// Checks the defining invariants against `h`.
    pub fn verify(&self, h: &Hypergraph) -> std::result::Result<(), String> {
        if self.pairs.len() != self.representatives.len() {
            return Err("pair and representative counts differ".into());
        }
        if self.pairs.iter().unique().count() != self.pairs.len() {
            return Err("repeated pair".into());
        }
        if self.representatives.iter().unique().count() != self.representatives.len() {
            return Err("repeated representative".into());
        }
        for (&(x, y), f) in self.pairs.iter().zip(&self.representatives) {
            if !h.contains(f) {
                return Err(format!("representative {f} not in hypergraph"));
            }
            if !f.contains_pair(x, y) {
                return Err(format!("pair {x} {y} not inside its representative {f}"));
            }
        }
        let mut expected: Vec<&Edge> = h.edges().iter().filter(|e| !self.representatives.contains(e)).collect();
        expected.sort();
        if expected != self.residual.edges().iter().collect::<Vec<_>>() {
            return Err("residual is not the complement of the representatives".into());
        }
        for &(x, y) in &self.pairs {
            if let Some(e) = self.residual.edges().iter().find(|e| e.contains_pair(x, y)) {
                return Err(format!("pair {x} {y} lies in residual edge {e}"));
            }
        }
        Ok(())
    }
}

/// Result of the strict Hall check on a residual: every nonempty pair set
/// `S` of its shadow must meet more than `|S|` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HallCheck {
    Holds,
    Violated(Vec<(Vertex, Vertex)>),
}

impl HallCheck {
    pub fn holds(&self) -> bool {
        matches!(self, HallCheck::Holds)
    }
}

/// Shadow pairs in lexicographic order with the indices of edges containing each.
fn pair_incidence(edges: &[Edge]) -> (Vec<(Vertex, Vertex)>, Vec<Vec<usize>>) {
    let mut map: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        for p in e.pairs() {
            map.entry(p).or_default().push(i);
        }
    }
    map.into_iter().unzip()
}

pub fn hall_check(residual: &Hypergraph) -> HallCheck {
    let (pairs, adj) = pair_incidence(residual.edges());
    let violator = if pairs.len() <= EXHAUSTIVE_LIMIT && residual.len() <= 128 {
        hall_exhaustive(&adj)
    } else {
        hall_by_deletion(&adj, residual.len())
    };
    match violator {
        None => HallCheck::Holds,
        Some(s) => HallCheck::Violated(s.into_iter().map(|i| pairs[i]).collect()),
    }
}

/// Smallest violating subset (then lexicographically first), by enumeration.
fn hall_exhaustive(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let masks: Vec<u128> = adj.iter().map(|l| l.iter().fold(0u128, |m, &e| m | 1 << e)).collect();
    let b = adj.len();
    for size in 1..=b {
        for s in (0..b).combinations(size) {
            let nbrs = s.iter().fold(0u128, |m, &i| m | masks[i]);
            if nbrs.count_ones() as usize <= size {
                return Some(s);
            }
        }
    }
    None
}

/// Strict Hall holds iff the pairs can be matched into the edges after
/// deleting any single edge.
fn hall_by_deletion(adj: &[Vec<usize>], edge_count: usize) -> Option<Vec<usize>> {
    for f in 0..edge_count {
        let reduced: Vec<Vec<usize>> = adj.iter().map(|l| l.iter().copied().filter(|&e| e != f).collect()).collect();
        let m = Matching::compute(&reduced, edge_count);
        if let Some(s) = m.hall_violator(&reduced) {
            return Some(s);
        }
    }
    None
}

fn neighbourhood(adj: &[Vec<usize>], s: &[usize]) -> Vec<usize> {
    s.iter().flat_map(|&i| adj[i].iter().copied()).sorted().dedup().collect()
}

/// A maximum SDRP: [`augment_sdrp`], certified and if needed replaced by
/// [`brute_force_max_sdrp`] on small instances.
pub fn max_sdrp(h: &Hypergraph) -> Sdrp {
    let mut out = augment_sdrp(h);
    if h.len() <= EXHAUSTIVE_LIMIT || h.shadow_graph().len() <= EXHAUSTIVE_LIMIT {
        let best = brute_force_max_sdrp(h);
        if best.size() > out.size() {
            warn!("augmentation stopped at {} below the maximum {}", out.size(), best.size());
            out = best;
        }
        out.certification = Certification::Exhaustive;
    } else {
        warn!("SDRP of size {} not certified maximum (instance too large)", out.size());
    }
    assert!(hall_check(&out.residual).holds(), "residual of a maximal SDRP violates the Hall condition");
    out
}

/// Grows an SDRP by absorbing Hall violators of the residual until the
/// residual satisfies the strict Hall condition.
pub fn augment_sdrp(h: &Hypergraph) -> Sdrp {
    let mut reps: BTreeMap<(Vertex, Vertex), Edge> = BTreeMap::new();
    loop {
        let residual = residual_of(h, &reps);
        let HallCheck::Violated(start) = hall_check(&residual) else {
            break;
        };
        let (pairs, adj) = pair_incidence(residual.edges());
        let index: BTreeMap<(Vertex, Vertex), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut s: Vec<usize> = start.iter().map(|p| index[p]).collect();
        loop {
            // Drop pairs from the end until |N(S)| = |S|; the deficit moves by at most one per step.
            while neighbourhood(&adj, &s).len() < s.len() {
                s.pop();
            }
            let nbrs = neighbourhood(&adj, &s);
            debug_assert_eq!(nbrs.len(), s.len());
            let local: Vec<Vec<usize>> = s
                .iter()
                .map(|&i| adj[i].iter().map(|e| nbrs.binary_search(e).unwrap()).collect())
                .collect();
            let m = Matching::compute(&local, nbrs.len());
            match m.hall_violator(&local) {
                None => {
                    for (k, &i) in s.iter().enumerate() {
                        let e = residual.edges()[nbrs[m.partner_of_left(k).unwrap()]].clone();
                        reps.insert(pairs[i], e);
                    }
                    break;
                }
                Some(t) => s = t.into_iter().map(|k| s[k]).collect(),
            }
        }
    }
    build(h, &reps, Certification::Unverified)
}

fn residual_of(h: &Hypergraph, reps: &BTreeMap<(Vertex, Vertex), Edge>) -> Hypergraph {
    let used: std::collections::BTreeSet<&Edge> = reps.values().collect();
    Hypergraph::new(h.n(), h.r(), h.edges().iter().filter(|e| !used.contains(e)).map(|e| e.vertices().to_vec()))
        .expect("subset of a valid hypergraph")
}

fn build(h: &Hypergraph, reps: &BTreeMap<(Vertex, Vertex), Edge>, certification: Certification) -> Sdrp {
    Sdrp {
        pairs: reps.keys().copied().collect(),
        representatives: reps.values().cloned().collect(),
        residual: residual_of(h, reps),
        certification,
    }
}

/// A maximum SDRP by enumeration over representative edge sets or pair
/// sets, whichever is smaller. Ties go to the first set found in
/// size-then-lexicographic order.
pub fn brute_force_max_sdrp(h: &Hypergraph) -> Sdrp {
    let (pairs, adj) = pair_incidence(h.edges());
    let edges = h.edges();
    // Pairs contained only in edges from a given set.
    let best = if edges.len() <= pairs.len() {
        (0..=edges.len()).rev().find_map(|size| {
            (0..edges.len()).combinations(size).find_map(|rset| {
                let allowed: Vec<usize> = (0..pairs.len()).filter(|&p| adj[p].iter().all(|e| rset.contains(e))).collect();
                let left: Vec<Vec<usize>> = rset
                    .iter()
                    .map(|&e| (0..allowed.len()).filter(|&k| adj[allowed[k]].contains(&e)).collect())
                    .collect();
                let m = Matching::compute(&left, allowed.len());
                m.saturates_left().then(|| {
                    rset.iter()
                        .enumerate()
                        .map(|(i, &e)| (pairs[allowed[m.partner_of_left(i).unwrap()]], edges[e].clone()))
                        .collect::<BTreeMap<_, _>>()
                })
            })
        })
    } else {
        (0..=pairs.len()).rev().find_map(|size| {
            (0..pairs.len()).combinations(size).find_map(|pset| {
                let nbrs = neighbourhood(&adj, &pset);
                if nbrs.len() != pset.len() {
                    return None;
                }
                let local: Vec<Vec<usize>> =
                    pset.iter().map(|&p| adj[p].iter().map(|e| nbrs.binary_search(e).unwrap()).collect()).collect();
                let m = Matching::compute(&local, nbrs.len());
                m.saturates_left().then(|| {
                    pset.iter()
                        .enumerate()
                        .map(|(k, &p)| (pairs[p], edges[nbrs[m.partner_of_left(k).unwrap()]].clone()))
                        .collect::<BTreeMap<_, _>>()
                })
            })
        })
    };
    build(h, &best.unwrap_or_default(), Certification::Exhaustive)
}

pub fn serialize_sdrp(s: &Sdrp) -> String {
    let mut out = String::new();
    for (&(x, y), f) in s.pairs.iter().zip(&s.representatives) {
        writeln!(out, "{x} {y} -> {f}").unwrap();
    }
    out.push_str("RESIDUAL\n");
    out.push_str(&serialize_hypergraph(&s.residual));
    out
}

pub fn parse_sdrp(text: &str) -> Result<Sdrp> {
    let bad = |m: String| Error::Domain(format!("sdrp: {m}"));
    let (head, tail) = text.split_once("RESIDUAL").ok_or_else(|| bad("missing RESIDUAL section".into()))?;
    let residual = parse_hypergraph(tail).map_err(|e| bad(e.to_string()))?;
    let mut pairs = Vec::new();
    let mut representatives = Vec::new();
    for line in head.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| bad(format!("malformed line {line:?}")))?;
        let nums = |s: &str| -> Result<Vec<Vertex>> {
            s.split_whitespace().map(|t| t.parse().map_err(|_| bad(format!("bad vertex {t:?}")))).collect()
        };
        let xy = nums(lhs)?;
        if xy.len() != 2 || xy[0] == xy[1] {
            return Err(bad(format!("expected a pair in {line:?}")));
        }
        pairs.push((xy[0].min(xy[1]), xy[0].max(xy[1])));
        representatives.push(Edge::new(nums(rhs)?)?);
    }
    Ok(Sdrp {
        pairs,
        representatives,
        residual,
        certification: Certification::Unverified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[[u32; 3]]) -> Hypergraph {
        Hypergraph::new(n, 3, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn single_edge() {
        let h = hg(3, &[[0, 1, 2]]);
        let s = max_sdrp(&h);
        assert_eq!(s.size(), 1);
        assert!(s.residual.is_empty());
        assert!(s.verify(&h).is_ok());
    }

    #[test]
    fn complete_graphs() {
        for (n, expect) in [(4, 4), (5, 10)] {
            let h = Hypergraph::complete(n, 3);
            let s = max_sdrp(&h);
            assert_eq!(s.size(), expect);
            assert!(s.residual.is_empty());
            assert_eq!(s.certification, Certification::Exhaustive);
            assert!(s.verify(&h).is_ok());
        }
    }

    #[test]
    fn hall_examples() {
        assert!(hall_check(&Hypergraph::empty(4, 3)).holds());
        assert_eq!(hall_check(&hg(3, &[[0, 1, 2]])), HallCheck::Violated(vec![(0, 1)]));
        let r = hg(4, &[[0, 1, 3], [0, 2, 3]]);
        match hall_check(&r) {
            HallCheck::Violated(s) => {
                let hit = r.edges().iter().filter(|e| s.iter().any(|&(a, b)| e.contains_pair(a, b))).count();
                assert!(hit <= s.len());
            }
            HallCheck::Holds => panic!("expected a violation"),
        }
    }

    #[test]
    fn exhaustive_and_deletion_forms_agree() {
        for mask in 0u32..1024 {
            let edges: Vec<Vec<u32>> = (0..5u32)
                .combinations(3)
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e)
                .collect();
            let h = Hypergraph::new(5, 3, edges).unwrap();
            let (_, adj) = pair_incidence(h.edges());
            assert_eq!(hall_exhaustive(&adj).is_some(), hall_by_deletion(&adj, h.len()).is_some(), "{mask}");
        }
    }

    #[test]
    fn augmentation_matches_brute_force_on_five_vertices() {
        for mask in 0u32..1024 {
            let edges: Vec<Vec<u32>> = (0..5u32)
                .combinations(3)
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e)
                .collect();
            let h = Hypergraph::new(5, 3, edges).unwrap();
            let a = augment_sdrp(&h);
            assert!(a.verify(&h).is_ok());
            assert_eq!(a.size(), brute_force_max_sdrp(&h).size(), "{mask}");
        }
    }

    #[test]
    fn round_trip() {
        let h = hg(5, &[[0, 1, 2], [0, 1, 3], [2, 3, 4]]);
        let s = max_sdrp(&h);
        let text = serialize_sdrp(&s);
        let back = parse_sdrp(&text).unwrap();
        assert_eq!(back.pairs, s.pairs);
        assert_eq!(back.representatives, s.representatives);
        assert_eq!(back.residual, s.residual);
        assert_eq!(h.len(), s.size() + s.residual.len());
    }
}
