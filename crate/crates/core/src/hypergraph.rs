//! Core value types: uniform hypergraphs, simple graphs, mixed (2,r)
//! hypergraphs and families of p-sets, plus shadows.
//!
//! Vertices are `0..n`. Edges are stored in sorted vertex order and edge
//! lists are kept sorted and duplicate free, so equality of two values is
//! equality of their canonical representations.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::binom::binom;
use crate::error::{Error, Result};

pub type Vertex = u32;

/// A set of vertices kept in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(Vec<Vertex>);

impl Edge {
    /// Sorts the vertices; duplicates are rejected.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge {
                edge: vertices,
                reason: "repeated vertex".into(),
            });
        }
        Ok(Edge(vertices))
    }

    pub fn pair(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "pair needs two distinct vertices");
        Edge(vec![a.min(b), a.max(b)])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn contains_pair(&self, a: Vertex, b: Vertex) -> bool {
        self.contains(a) && self.contains(b)
    }

    pub fn is_subset_of(&self, other: &Edge) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    /// All 2-subsets as ordered `(min, max)` tuples.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.0.iter().copied().tuple_combinations()
    }
}

impl From<Edge> for Vec<Vertex> {
    fn from(e: Edge) -> Self {
        e.0
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

fn check_vertices(n: usize, edge: &Edge) -> Result<()> {
    if let Some(&v) = edge.vertices().iter().find(|&&v| v as usize >= n) {
        return Err(Error::InvalidEdge {
            edge: edge.0.clone(),
            reason: format!("vertex {v} out of range 0..{n}"),
        });
    }
    Ok(())
}

/// An r-uniform hypergraph on the vertex set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Edge>,
}

impl Hypergraph {
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        if r < 2 {
            return Err(Error::Domain(format!("uniformity r = {r} must be at least 2")));
        }
        let mut out = Vec::new();
        for e in edges {
            let edge = Edge::new(e.into())?;
            if edge.len() != r {
                return Err(Error::InvalidEdge {
                    edge: edge.0,
                    reason: format!("expected {r} vertices"),
                });
            }
            check_vertices(n, &edge)?;
            out.push(edge);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0.clone()));
        }
        Ok(Hypergraph { n, r, edges: out })
    }

    /// Like [`Hypergraph::new`] but silently merges duplicate edges.
    pub fn from_edges_dedup<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        let set: BTreeSet<Vec<Vertex>> = edges
            .into_iter()
            .map(|e| {
                let mut v = e.into();
                v.sort_unstable();
                v
            })
            .collect();
        Self::new(n, r, set)
    }

    pub fn empty(n: usize, r: usize) -> Self {
        Hypergraph { n, r, edges: Vec::new() }
    }

    /// The complete r-graph on the given vertices, inside a host of `n` vertices.
    pub fn complete_on(n: usize, r: usize, vertices: &[Vertex]) -> Result<Self> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        Self::new(n, r, vs.into_iter().combinations(r))
    }

    pub fn complete(n: usize, r: usize) -> Self {
        let vs: Vec<Vertex> = (0..n as Vertex).collect();
        Self::complete_on(n, r, &vs).expect("complete hypergraph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn index_of(&self, edge: &Edge) -> Option<usize> {
        self.edges.binary_search(edge).ok()
    }

    pub fn contains(&self, edge: &Edge) -> bool {
        self.index_of(edge).is_some()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Union of two hypergraphs on the same vertex count and uniformity.
    pub fn union(&self, other: &Hypergraph) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::Domain("union of different uniformities".into()));
        }
        let n = self.n.max(other.n);
        Self::from_edges_dedup(
            n,
            self.r,
            self.edges.iter().chain(other.edges.iter()).map(|e| e.0.clone()),
        )
    }

    /// The same edges on a larger (or equal) vertex set.
    pub fn with_vertex_count(&self, n: usize) -> Result<Self> {
        Self::new(n, self.r, self.edges.iter().map(|e| e.0.clone()))
    }

    /// Edges entirely inside `vertices`.
    pub fn induced(&self, vertices: &[Vertex]) -> Hypergraph {
        let keep: BTreeSet<Vertex> = vertices.iter().copied().collect();
        Hypergraph {
            n: self.n,
            r: self.r,
            edges: self
                .edges
                .iter()
                .filter(|e| e.vertices().iter().all(|v| keep.contains(v)))
                .cloned()
                .collect(),
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Hypergraph> {
        Self::new(
            self.n,
            self.r,
            self.edges
                .iter()
                .map(|e| e.vertices().iter().map(|&v| perm[v as usize]).collect::<Vec<_>>()),
        )
    }

    /// The p-shadow: every p-set contained in at least one edge.
    pub fn shadow(&self, p: usize) -> Result<EdgeSetFamily> {
        shadow(self, p)
    }

    /// The 2-shadow as a simple graph.
    pub fn shadow_graph(&self) -> Graph {
        let pairs: BTreeSet<(Vertex, Vertex)> = self.edges.iter().flat_map(|e| e.pairs()).collect();
        Graph {
            n: self.n,
            edges: pairs.into_iter().collect(),
        }
    }
}

/// A simple graph on `0..n`, edges stored as sorted `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Rejects loops, out-of-range endpoints and repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidEdge {
                    edge: vec![a, b],
                    reason: "loop".into(),
                });
            }
            let e = (a.min(b), a.max(b));
            if e.1 as usize >= n {
                return Err(Error::InvalidEdge {
                    edge: vec![e.0, e.1],
                    reason: format!("vertex out of range 0..{n}"),
                });
            }
            out.push(e);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(vec![w[0].0, w[0].1]));
        }
        Ok(Graph { n, edges: out })
    }

    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let set: BTreeSet<(Vertex, Vertex)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        Self::new(n, set)
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let n32 = n as Vertex;
        Graph {
            n,
            edges: (0..n32).tuple_combinations().collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let n32 = n as Vertex;
        Self::new(n, (0..n32).map(|i| (i, (i + 1) % n32))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        let n32 = n as Vertex;
        Self::new(n, (1..n32).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg
    }

    /// Same graph as a 2-uniform hypergraph.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            n: self.n,
            r: 2,
            edges: self.edges.iter().map(|&(a, b)| Edge(vec![a, b])).collect(),
        }
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self> {
        if h.r() != 2 {
            return Err(Error::Domain(format!("expected a 2-uniform hypergraph, got r = {}", h.r())));
        }
        Self::new(h.n(), h.edges().iter().map(|e| (e.vertices()[0], e.vertices()[1])))
    }

    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        Graph::new(
            self.n,
            self.edges.iter().map(|&(a, b)| (perm[a as usize], perm[b as usize])),
        )
        .expect("relabeling preserves simplicity")
    }

    /// Subgraph induced on the vertices where `keep` is true (labels kept).
    pub fn induced(&self, keep: &[bool]) -> Graph {
        Graph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|&(a, b)| keep[a as usize] && keep[b as usize])
                .collect(),
        }
    }

    /// Graph union (both on the larger vertex count).
    pub fn union(&self, other: &Graph) -> Graph {
        Graph::from_edges_dedup(
            self.n.max(other.n),
            self.edges.iter().chain(other.edges.iter()).copied(),
        )
        .expect("union of simple graphs is simple")
    }
}

/// A (2,r) mixed hypergraph: a graph `A` and an r-graph `B` on a common
/// vertex set, with no pair of `A` inside an edge of `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedHypergraph {
    pairs: Graph,
    hyper: Hypergraph,
}

impl MixedHypergraph {
    pub fn new(pairs: Graph, hyper: Hypergraph) -> Result<Self> {
        if pairs.n() != hyper.n() {
            return Err(Error::Domain(format!(
                "pair part has {} vertices, hyperedge part {}",
                pairs.n(),
                hyper.n()
            )));
        }
        for e in hyper.edges() {
            if let Some(&(a, b)) = pairs.edges().iter().find(|&&(a, b)| e.contains_pair(a, b)) {
                return Err(Error::NotSperner {
                    pair: (a, b),
                    edge: e.vertices().to_vec(),
                });
            }
        }
        Ok(MixedHypergraph { pairs, hyper })
    }

    pub fn n(&self) -> usize {
        self.pairs.n()
    }

    pub fn r(&self) -> usize {
        self.hyper.r()
    }

    pub fn pair_edges(&self) -> &Graph {
        &self.pairs
    }

    pub fn hyper_edges(&self) -> &Hypergraph {
        &self.hyper
    }

    /// `|A| + |B|`.
    pub fn size(&self) -> usize {
        self.pairs.len() + self.hyper.len()
    }

    /// The graph `A ∪ ∂₂B`.
    pub fn shadow_graph(&self) -> Graph {
        self.pairs.union(&self.hyper.shadow_graph())
    }

    /// Independent check that `A` and `∂₂B` are disjoint.
    pub fn pair_part_disjoint_from_shadow(&self) -> bool {
        let b = self.hyper.shadow_graph();
        self.pairs.edges().iter().all(|&(x, y)| !b.has_edge(x, y))
    }
}

/// A family of distinct p-element vertex sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSetFamily {
    p: usize,
    members: Vec<Edge>,
}

impl EdgeSetFamily {
    pub fn new(p: usize, members: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut members: Vec<Edge> = members.into_iter().collect();
        if let Some(e) = members.iter().find(|e| e.len() != p) {
            return Err(Error::InvalidEdge {
                edge: e.vertices().to_vec(),
                reason: format!("expected {p} vertices"),
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(EdgeSetFamily { p, members })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn members(&self) -> &[Edge] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.members.binary_search(e).is_ok()
    }

    /// The family viewed as a p-uniform hypergraph on `n` vertices.
    pub fn to_hypergraph(&self, n: usize) -> Result<Hypergraph> {
        Hypergraph::new(n, self.p, self.members.iter().map(|e| e.vertices().to_vec()))
    }
}

/// Every p-subset contained in some edge of `h`; for `p = r` the edge set itself.
pub fn shadow(h: &Hypergraph, p: usize) -> Result<EdgeSetFamily> {
    if p < 1 || p > h.r() {
        return Err(Error::ShadowSizeOutOfRange { p, r: h.r() });
    }
    let set: BTreeSet<Edge> = h
        .edges()
        .iter()
        .flat_map(|e| e.vertices().iter().copied().combinations(p).map(Edge))
        .collect();
    Ok(EdgeSetFamily {
        p,
        members: set.into_iter().collect(),
    })
}

/// Pairs of `0..w` that lie in no edge of `h`.
pub fn complement_shadow2(h: &Hypergraph, w: usize) -> EdgeSetFamily {
    let sh = h.shadow_graph();
    let w32 = w as Vertex;
    EdgeSetFamily {
        p: 2,
        members: (0..w32)
            .tuple_combinations()
            .filter(|&(a, b)| !sh.has_edge(a, b))
            .map(|(a, b)| Edge(vec![a, b]))
            .collect(),
    }
}

/// Number of pairs of a `w`-set, as a convenience for shadow identities.
pub fn pair_count(w: usize) -> u128 {
    binom(w as u64, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(n: usize, r: usize) -> Hypergraph {
        Hypergraph::complete(n, r)
    }

    #[test]
    fn shadow_of_complete_is_clique() {
        let s = shadow(&k(5, 3), 2).unwrap();
        assert_eq!(s.len(), 10);
    }

    #[test]
    fn shadow_of_single_edge() {
        let h = Hypergraph::new(3, 3, [vec![0, 1, 2]]).unwrap();
        let s = shadow(&h, 2).unwrap();
        let got: Vec<Vec<u32>> = s.members().iter().map(|e| e.vertices().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn shadow_p_equals_r_is_edge_set() {
        let h = Hypergraph::new(6, 3, [vec![0, 1, 2], vec![3, 4, 5], vec![1, 2, 4]]).unwrap();
        let s = shadow(&h, 3).unwrap();
        assert_eq!(s.members(), h.edges());
    }

    #[test]
    fn shadow_range_errors() {
        let h = k(4, 3);
        assert!(matches!(shadow(&h, 0), Err(Error::ShadowSizeOutOfRange { .. })));
        assert!(matches!(shadow(&h, 4), Err(Error::ShadowSizeOutOfRange { .. })));
    }

    #[test]
    fn complement_shadow_examples() {
        assert!(complement_shadow2(&k(5, 3), 5).is_empty());
        assert_eq!(complement_shadow2(&Hypergraph::empty(4, 3), 4).len(), 6);
        let single = Hypergraph::new(6, 3, [vec![0, 1, 2]]).unwrap();
        assert_eq!(complement_shadow2(&single, 6).len(), 12);
    }

    #[test]
    fn invalid_edges_rejected() {
        assert!(matches!(
            Hypergraph::new(4, 3, [vec![0, 1, 2], vec![2, 1, 0]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(Hypergraph::new(4, 3, [vec![0, 1, 4]]).is_err());
        assert!(Hypergraph::new(4, 3, [vec![0, 1]]).is_err());
        assert!(Hypergraph::new(4, 3, [vec![0, 1, 1]]).is_err());
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn mixed_requires_sperner() {
        let b = Hypergraph::new(5, 3, [vec![0, 1, 2]]).unwrap();
        let bad = Graph::new(5, [(0, 1)]).unwrap();
        assert!(matches!(MixedHypergraph::new(bad, b.clone()), Err(Error::NotSperner { .. })));
        let ok = Graph::new(5, [(3, 4), (2, 3)]).unwrap();
        let m = MixedHypergraph::new(ok, b).unwrap();
        assert!(m.pair_part_disjoint_from_shadow());
        assert_eq!(m.size(), 3);
        assert_eq!(m.shadow_graph().len(), 5);
    }

    fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
        (3usize..9, 2usize..5).prop_flat_map(|(n, r)| {
            let r = r.min(n);
            let all: Vec<Vec<u32>> = (0..n as u32).combinations(r).collect();
            let len = all.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
                let edges: Vec<Vec<u32>> =
                    all.iter().zip(&mask).filter(|(_, &b)| b).map(|(e, _)| e.clone()).collect();
                Hypergraph::new(n, r, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn shadow_of_shadow(h in arb_hypergraph()) {
            for q in 2..=h.r() {
                let hq = shadow(&h, q).unwrap().to_hypergraph(h.n()).unwrap();
                for p in 1..=q {
                    prop_assert_eq!(shadow(&hq, p).unwrap(), shadow(&h, p).unwrap());
                }
            }
        }

        #[test]
        fn shadow_plus_complement_is_all_pairs(h in arb_hypergraph()) {
            let w = h.n();
            let total = shadow(&h, 2).unwrap().len() + complement_shadow2(&h, w).len();
            prop_assert_eq!(total as u128, pair_count(w));
        }
    }
}
