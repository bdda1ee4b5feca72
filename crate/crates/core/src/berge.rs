//! Berge cycles and paths: witness checking, exact longest search, and
//! lifting shadow-graph cycles back to Berge cycles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphalg::biconnected_components;
use crate::hypergraph::{Edge, Graph, Hypergraph, MixedHypergraph, Vertex};
use crate::matching::Matching;

/// Exact search refuses larger instances unless forced.
pub const MAX_EXACT_VERTICES: usize = 24;
pub const MAX_EXACT_EDGES: usize = 64;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    Cycle,
    Path,
}

/// An ordered Berge cycle or path: `base[i]` and `base[i + 1]` (cyclically
/// for a cycle) lie in `edges[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeWitness {
    pub kind: WitnessKind,
    pub base: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl BergeWitness {
    pub fn length(&self) -> usize {
        self.edges.len()
    }

    /// The `i`-th consecutive base pair (0-based).
    fn base_pair(&self, i: usize) -> (Vertex, Vertex) {
        let next = if i + 1 == self.base.len() { 0 } else { i + 1 };
        (self.base[i], self.base[next])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCheck {
    Valid,
    Invalid(String),
}

impl WitnessCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, WitnessCheck::Valid)
    }
}

pub fn verify_witness(h: &Hypergraph, w: &BergeWitness) -> Result<WitnessCheck> {
    verify_witness_in(h.edges(), w)
}

pub fn verify_witness_mixed(m: &MixedHypergraph, w: &BergeWitness) -> Result<WitnessCheck> {
    verify_witness_in(&mixed_edges(m), w)
}

/// Checks `w` against an arbitrary edge list (edges may have mixed sizes).
pub fn verify_witness_in(edges: &[Edge], w: &BergeWitness) -> Result<WitnessCheck> {
    let present: BTreeSet<&Edge> = edges.iter().collect();
    if let Some(e) = w.edges.iter().find(|e| !present.contains(e)) {
        return Err(Error::DanglingEdge(e.vertices().to_vec()));
    }
    let l = w.edges.len();
    let expected_base = match w.kind {
        WitnessKind::Cycle => l,
        WitnessKind::Path => l + 1,
    };
    if w.base.len() != expected_base {
        return Ok(WitnessCheck::Invalid(format!(
            "expected {expected_base} base vertices for {l} edges, found {}",
            w.base.len()
        )));
    }
    let min_len = match w.kind {
        WitnessKind::Cycle => 2,
        WitnessKind::Path => 1,
    };
    if l < min_len {
        return Ok(WitnessCheck::Invalid(format!("length {l} below minimum {min_len}")));
    }
    if w.base.iter().collect::<BTreeSet<_>>().len() != w.base.len() {
        return Ok(WitnessCheck::Invalid("duplicate base vertex".into()));
    }
    if w.edges.iter().collect::<BTreeSet<_>>().len() != l {
        return Ok(WitnessCheck::Invalid("duplicate witness edge".into()));
    }
    for (i, e) in w.edges.iter().enumerate() {
        let (a, b) = w.base_pair(i);
        if !e.contains_pair(a, b) {
            return Ok(WitnessCheck::Invalid(format!("containment fails at position {}", i + 1)));
        }
    }
    Ok(WitnessCheck::Valid)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_seconds: f64) -> Result<Self> {
        if max_nodes == 0 {
            return Err(Error::InvalidBudget("max_nodes must be positive".into()));
        }
        if !(max_seconds > 0.0) {
            return Err(Error::InvalidBudget("max_seconds must be positive".into()));
        }
        Ok(SearchBudget {
            max_nodes,
            max_seconds,
        })
    }

    pub fn unlimited() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_seconds: f64::INFINITY,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 200_000_000,
            max_seconds: 120.0,
        }
    }
}

/// Node and wall-clock accounting shared across one search.
pub(crate) struct Meter {
    pub nodes: u64,
    max_nodes: u64,
    start: Instant,
    limit: Option<Duration>,
    pub exhausted: bool,
}

impl Meter {
    pub fn new(b: &SearchBudget) -> Self {
        Meter {
            nodes: 0,
            max_nodes: b.max_nodes,
            start: Instant::now(),
            limit: b.max_seconds.is_finite().then(|| Duration::from_secs_f64(b.max_seconds)),
            exhausted: false,
        }
    }

    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
        } else if self.nodes % 4096 == 0 {
            if let Some(limit) = self.limit {
                if self.start.elapsed() > limit {
                    self.exhausted = true;
                }
            }
        }
        !self.exhausted
    }
}

/// Result of an exact search. When `complete` is false the budget ran out
/// and `witness` is only a lower bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LongestResult {
    pub witness: Option<BergeWitness>,
    pub complete: bool,
    pub nodes: u64,
}

impl LongestResult {
    pub fn length(&self) -> usize {
        self.witness.as_ref().map_or(0, BergeWitness::length)
    }
}

pub fn longest_berge(h: &Hypergraph, kind: WitnessKind, budget: &SearchBudget) -> Result<LongestResult> {
    longest_berge_in(h.n(), h.edges(), kind, budget, false)
}

pub fn longest_berge_mixed(
    m: &MixedHypergraph,
    kind: WitnessKind,
    budget: &SearchBudget,
    force: bool,
) -> Result<LongestResult> {
    longest_berge_in(m.n(), &mixed_edges(m), kind, budget, force)
}

pub(crate) fn mixed_edges(m: &MixedHypergraph) -> Vec<Edge> {
    let mut edges: Vec<Edge> = m.pair_edges().edges().iter().map(|&(a, b)| Edge::pair(a, b)).collect();
    edges.extend(m.hyper_edges().edges().iter().cloned());
    edges
}

/// Exact longest Berge cycle or path over an arbitrary edge list.
///
/// Among maximum witnesses the lexicographically smallest base sequence is
/// returned. Cycles are searched inside single blocks of the vertex-edge
/// incidence graph, which is where every Berge cycle lives.
pub fn longest_berge_in(
    n: usize,
    edges: &[Edge],
    kind: WitnessKind,
    budget: &SearchBudget,
    force: bool,
) -> Result<LongestResult> {
    if !force && (n > MAX_EXACT_VERTICES || edges.len() > MAX_EXACT_EDGES) {
        return Err(Error::InstanceTooLarge(format!(
            "n = {n}, |E| = {} (limits {MAX_EXACT_VERTICES} vertices, {MAX_EXACT_EDGES} edges)",
            edges.len()
        )));
    }
    let mut meter = Meter::new(budget);
    let witness = match kind {
        WitnessKind::Cycle => longest_cycle_blocks(n, edges, &mut meter),
        WitnessKind::Path => {
            let verts: Vec<Vertex> = (0..n as Vertex).collect();
            let local: Vec<usize> = (0..edges.len()).collect();
            BlockSearch::new(&verts, edges, &local, WitnessKind::Path).run(0, &mut meter)
        }
    };
    Ok(LongestResult {
        witness,
        complete: !meter.exhausted,
        nodes: meter.nodes,
    })
}

fn longest_cycle_blocks(n: usize, edges: &[Edge], meter: &mut Meter) -> Option<BergeWitness> {
    let mut adj = vec![Vec::new(); n + edges.len()];
    for (i, e) in edges.iter().enumerate() {
        for &v in e.vertices() {
            adj[v as usize].push(n + i);
            adj[n + i].push(v as usize);
        }
    }
    let mut best: Option<BergeWitness> = None;
    for block in biconnected_components(&adj) {
        let verts: Vec<Vertex> = block.iter().filter(|&&x| x < n).map(|&x| x as Vertex).collect();
        let block_edges: Vec<usize> = block.iter().filter(|&&x| x >= n).map(|&x| x - n).collect();
        if block_edges.len() < 2 {
            continue;
        }
        let best_len = best.as_ref().map_or(0, BergeWitness::length);
        let mut search = BlockSearch::new(&verts, edges, &block_edges, WitnessKind::Cycle);
        if search.upper_bound() < best_len.max(2) {
            continue;
        }
        // Searching for length >= best_len lets ties compete on lex order.
        if let Some(w) = search.run(best_len.max(2) - 1, meter) {
            let better = match &best {
                None => true,
                Some(b) => w.length() > b.length() || (w.length() == b.length() && w.base < b.base),
            };
            if better {
                best = Some(w);
            }
        }
        if meter.exhausted {
            break;
        }
    }
    best
}

/// DFS over base-vertex sequences on local ids with an incrementally
/// maintained matching from consecutive pairs ("slots") to distinct edges.
struct BlockSearch<'a> {
    verts: Vec<Vertex>,
    edges: &'a [Edge],
    edge_ids: Vec<usize>,
    kind: WitnessKind,
    nv: usize,
    cands: Vec<Vec<usize>>,
    nbrs: Vec<Vec<usize>>,
    eligible: Vec<bool>,
    edge_owner: Vec<usize>,
    slot_edge: Vec<usize>,
    slot_pair: Vec<(usize, usize)>,
    seen: Vec<u64>,
    stamp: u64,
    seq: Vec<usize>,
    in_seq: Vec<bool>,
    avail: usize,
    best_len: usize,
    best: Option<(Vec<usize>, Vec<usize>)>,
    first_only: bool,
}

impl<'a> BlockSearch<'a> {
    fn new(verts: &[Vertex], edges: &'a [Edge], edge_ids: &[usize], kind: WitnessKind) -> Self {
        let nv = verts.len();
        let local: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut cands = vec![Vec::new(); nv * nv];
        let mut degree = vec![0usize; nv];
        for (li, &ei) in edge_ids.iter().enumerate() {
            let inside: Vec<usize> = edges[ei].vertices().iter().filter_map(|v| local.get(v).copied()).collect();
            if inside.len() >= 2 {
                for &a in &inside {
                    degree[a] += 1;
                }
            }
            for (x, &a) in inside.iter().enumerate() {
                for &b in &inside[x + 1..] {
                    cands[a * nv + b].push(li);
                    cands[b * nv + a].push(li);
                }
            }
        }
        let min_degree = if kind == WitnessKind::Cycle { 2 } else { 1 };
        let eligible: Vec<bool> = degree.iter().map(|&d| d >= min_degree).collect();
        let nbrs = (0..nv)
            .map(|a| {
                (0..nv)
                    .filter(|&b| b != a && eligible[b] && !cands[a * nv + b].is_empty())
                    .collect()
            })
            .collect();
        BlockSearch {
            verts: verts.to_vec(),
            edges,
            edge_ids: edge_ids.to_vec(),
            kind,
            nv,
            cands,
            nbrs,
            eligible,
            edge_owner: vec![NONE; edge_ids.len()],
            slot_edge: Vec::new(),
            slot_pair: Vec::new(),
            seen: vec![0; edge_ids.len()],
            stamp: 0,
            seq: Vec::new(),
            in_seq: vec![false; nv],
            avail: 0,
            best_len: 0,
            best: None,
            first_only: false,
        }
    }

    fn upper_bound(&self) -> usize {
        let v = self.eligible.iter().filter(|&&e| e).count();
        match self.kind {
            WitnessKind::Cycle => v.min(self.edge_ids.len()),
            WitnessKind::Path => v.saturating_sub(1).min(self.edge_ids.len()),
        }
    }

    fn augment(&mut self, s: usize) -> bool {
        let (a, b) = self.slot_pair[s];
        let list = &self.cands[a * self.nv + b];
        if let Some(&e) = list.iter().find(|&&e| self.edge_owner[e] == NONE) {
            self.edge_owner[e] = s;
            self.slot_edge[s] = e;
            return true;
        }
        for idx in 0..self.cands[a * self.nv + b].len() {
            let e = self.cands[a * self.nv + b][idx];
            if self.seen[e] == self.stamp {
                continue;
            }
            self.seen[e] = self.stamp;
            let owner = self.edge_owner[e];
            if owner == NONE || self.augment(owner) {
                self.edge_owner[e] = s;
                self.slot_edge[s] = e;
                return true;
            }
        }
        false
    }

    fn push_slot(&mut self, a: usize, b: usize) -> bool {
        let s = self.slot_pair.len();
        self.slot_pair.push((a, b));
        self.slot_edge.push(NONE);
        self.stamp += 1;
        if self.augment(s) {
            true
        } else {
            self.slot_pair.pop();
            self.slot_edge.pop();
            false
        }
    }

    fn pop_slot(&mut self) {
        let e = self.slot_edge.pop().expect("slot stack underflow");
        self.slot_pair.pop();
        self.edge_owner[e] = NONE;
    }

    /// Returns the best witness strictly longer than `threshold`.
    fn run(&mut self, threshold: usize, meter: &mut Meter) -> Option<BergeWitness> {
        self.best_len = threshold;
        for start in 0..self.nv {
            if !self.eligible[start] || self.upper_bound() <= self.best_len {
                continue;
            }
            self.avail = match self.kind {
                WitnessKind::Cycle => (start + 1..self.nv).filter(|&v| self.eligible[v]).count(),
                WitnessKind::Path => self.eligible.iter().filter(|&&e| e).count() - 1,
            };
            self.seq.push(start);
            self.in_seq[start] = true;
            self.extend(meter);
            self.in_seq[start] = false;
            self.seq.pop();
            if meter.exhausted {
                break;
            }
        }
        let (seq, slots) = self.best.take()?;
        let base = seq.iter().map(|&i| self.verts[i]).collect();
        let edges = slots.iter().map(|&e| self.edges[self.edge_ids[e]].clone()).collect();
        Some(BergeWitness {
            kind: self.kind,
            base,
            edges,
        })
    }

    fn record(&mut self, len: usize) {
        self.best_len = if self.first_only { usize::MAX } else { len };
        self.best = Some((self.seq.clone(), self.slot_edge.clone()));
    }

    fn extend(&mut self, meter: &mut Meter) {
        if !meter.tick() {
            return;
        }
        let len = self.seq.len();
        let start = self.seq[0];
        let last = self.seq[len - 1];
        let cycle = self.kind == WitnessKind::Cycle;
        if cycle {
            if len >= 2 && len > self.best_len && !self.cands[last * self.nv + start].is_empty() && self.push_slot(last, start) {
                self.record(len);
                self.pop_slot();
            }
            if (len + self.avail).min(self.edge_ids.len()) <= self.best_len {
                return;
            }
        } else {
            if len - 1 > self.best_len {
                self.record(len - 1);
            }
            if (len - 1 + self.avail).min(self.edge_ids.len()) <= self.best_len {
                return;
            }
        }
        for i in 0..self.nbrs[last].len() {
            let next = self.nbrs[last][i];
            if self.in_seq[next] || (cycle && next < start) {
                continue;
            }
            if !self.push_slot(last, next) {
                continue;
            }
            self.seq.push(next);
            self.in_seq[next] = true;
            self.avail -= 1;
            self.extend(meter);
            self.avail += 1;
            self.in_seq[next] = false;
            self.seq.pop();
            self.pop_slot();
            if meter.exhausted {
                return;
            }
            let bound = if cycle { len + 1 + self.avail } else { len + self.avail };
            if bound.min(self.edge_ids.len()) <= self.best_len {
                return;
            }
        }
    }
}

/// Some Berge cycle of length at least `min_len`, if one exists. Stops at
/// the first hit. `complete` is false when the budget ran out first.
pub fn berge_cycle_at_least(
    n: usize,
    edges: &[Edge],
    min_len: usize,
    budget: &SearchBudget,
) -> (Option<BergeWitness>, bool) {
    let mut adj = vec![Vec::new(); n + edges.len()];
    for (i, e) in edges.iter().enumerate() {
        for &v in e.vertices() {
            adj[v as usize].push(n + i);
            adj[n + i].push(v as usize);
        }
    }
    let mut meter = Meter::new(budget);
    for block in biconnected_components(&adj) {
        let verts: Vec<Vertex> = block.iter().filter(|&&x| x < n).map(|&x| x as Vertex).collect();
        let block_edges: Vec<usize> = block.iter().filter(|&&x| x >= n).map(|&x| x - n).collect();
        if block_edges.len() < min_len.max(2) {
            continue;
        }
        let mut search = BlockSearch::new(&verts, edges, &block_edges, WitnessKind::Cycle);
        search.first_only = true;
        if search.upper_bound() < min_len.max(2) {
            continue;
        }
        if let Some(w) = search.run(min_len.max(2) - 1, &mut meter) {
            return (Some(w), true);
        }
        if meter.exhausted {
            return (None, false);
        }
    }
    (None, true)
}

/// Longest cycle of a simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCycleResult {
    pub length: usize,
    pub cycle: Vec<Vertex>,
    pub complete: bool,
    pub nodes: u64,
}

/// Exact longest cycle by DFS inside each block, with a reachability bound.
/// Returns length 0 for forests. Blocks larger than 64 vertices are refused.
pub fn longest_graph_cycle(g: &Graph, budget: &SearchBudget) -> Result<GraphCycleResult> {
    let adj: Vec<Vec<usize>> = g
        .adjacency()
        .into_iter()
        .map(|l| l.into_iter().map(|v| v as usize).collect())
        .collect();
    let mut meter = Meter::new(budget);
    let mut best: (usize, Vec<Vertex>) = (0, Vec::new());
    for block in biconnected_components(&adj) {
        if block.len() < 3 {
            continue;
        }
        if block.len() > 64 {
            return Err(Error::InstanceTooLarge(format!("block with {} vertices", block.len())));
        }
        if block.len() < best.0 {
            continue;
        }
        let pos: BTreeMap<usize, usize> = block.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let masks: Vec<u64> = block
            .iter()
            .map(|&v| adj[v].iter().filter_map(|u| pos.get(u)).fold(0u64, |m, &i| m | 1 << i))
            .collect();
        let mut dfs = MaskCycle {
            adj: &masks,
            best_len: best.0.max(3) - 1,
            best: None,
            seq: Vec::new(),
        };
        for start in 0..block.len() {
            if block.len() - start <= dfs.best_len {
                break;
            }
            dfs.seq.push(start);
            dfs.extend(1 << start, &mut meter);
            dfs.seq.pop();
            if meter.exhausted {
                break;
            }
        }
        if let Some(seq) = dfs.best {
            let cyc: Vec<Vertex> = seq.iter().map(|&i| block[i] as Vertex).collect();
            if cyc.len() > best.0 || (cyc.len() == best.0 && cyc < best.1) {
                best = (cyc.len(), cyc);
            }
        }
        if meter.exhausted {
            break;
        }
    }
    Ok(GraphCycleResult {
        length: best.0,
        cycle: best.1,
        complete: !meter.exhausted,
        nodes: meter.nodes,
    })
}

struct MaskCycle<'a> {
    adj: &'a [u64],
    best_len: usize,
    best: Option<Vec<usize>>,
    seq: Vec<usize>,
}

impl MaskCycle<'_> {
    fn extend(&mut self, used: u64, meter: &mut Meter) {
        if !meter.tick() {
            return;
        }
        let start = self.seq[0];
        let last = *self.seq.last().unwrap();
        let len = self.seq.len();
        if len >= 3 && len > self.best_len && self.adj[last] >> start & 1 == 1 {
            self.best_len = len;
            self.best = Some(self.seq.clone());
        }
        // Vertices above `start` still reachable from `last` avoiding the path.
        let allowed = !used & !((1u64 << start << 1).wrapping_sub(1)) | 1 << start;
        let mut reach = self.adj[last] & allowed;
        let mut frontier = reach;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & allowed & !reach;
            reach |= new;
            frontier |= new;
        }
        if reach >> start & 1 == 0 {
            return;
        }
        let bound = len + (reach & !(1 << start)).count_ones() as usize;
        if bound <= self.best_len {
            return;
        }
        let mut nexts = self.adj[last] & allowed & !(1 << start);
        while nexts != 0 {
            let v = nexts.trailing_zeros() as usize;
            nexts &= nexts - 1;
            self.seq.push(v);
            self.extend(used | 1 << v, meter);
            self.seq.pop();
            if meter.exhausted {
                return;
            }
        }
    }
}

/// Maps a cycle of the graph `A ∪ ∂₂ℬ` to a Berge cycle on the same base
/// vertices: pair edges of `m` go to their representatives in `sdrp`, the
/// remaining consecutive pairs are matched to distinct edges of `ℬ`.
pub fn lift_to_berge(
    m: &MixedHypergraph,
    sdrp: &BTreeMap<(Vertex, Vertex), Edge>,
    cycle: &[Vertex],
) -> Result<BergeWitness> {
    let l = cycle.len();
    if l < 3 || cycle.iter().collect::<BTreeSet<_>>().len() != l {
        return Err(Error::Domain("cycle must have at least 3 distinct vertices".into()));
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..l)
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % l]);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut chosen: Vec<Option<Edge>> = vec![None; l];
    let mut b_slots = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if m.pair_edges().has_edge(a, b) {
            let rep = sdrp
                .get(&(a, b))
                .ok_or_else(|| Error::Domain(format!("pair {a} {b} has no representative")))?;
            chosen[i] = Some(rep.clone());
        } else {
            b_slots.push(i);
        }
    }
    // Deterministic scan order by sorted pair.
    b_slots.sort_by_key(|&i| (pairs[i], i));
    let residual = m.hyper_edges().edges();
    let adj: Vec<Vec<usize>> = b_slots
        .iter()
        .map(|&i| {
            let (a, b) = pairs[i];
            (0..residual.len()).filter(|&e| residual[e].contains_pair(a, b)).collect()
        })
        .collect();
    let matching = Matching::compute(&adj, residual.len());
    if let Some(bad) = matching.hall_violator(&adj) {
        return Err(Error::HallViolated {
            pairs: bad.iter().map(|&s| pairs[b_slots[s]]).collect(),
        });
    }
    for (s, &i) in b_slots.iter().enumerate() {
        chosen[i] = Some(residual[matching.partner_of_left(s).unwrap()].clone());
    }
    let w = BergeWitness {
        kind: WitnessKind::Cycle,
        base: cycle.to_vec(),
        edges: chosen.into_iter().map(Option::unwrap).collect(),
    };
    if w.edges.iter().collect::<BTreeSet<_>>().len() != l {
        return Err(Error::Domain("representatives collide with residual edges".into()));
    }
    Ok(w)
}

impl fmt::Display for BergeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_witness(self))
    }
}

pub fn serialize_witness(w: &BergeWitness) -> String {
    let tag = match w.kind {
        WitnessKind::Cycle => "CYCLE",
        WitnessKind::Path => "PATH",
    };
    let mut out = format!("{tag} {}\n", w.length());
    let base: Vec<String> = w.base.iter().map(u32::to_string).collect();
    out.push_str(&base.join(" "));
    out.push('\n');
    for e in &w.edges {
        writeln!(out, "{e}").unwrap();
    }
    out
}

pub fn parse_witness(text: &str) -> Result<BergeWitness> {
    let bad = |msg: &str| Error::Domain(format!("witness: {msg}"));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| bad("empty input"))?;
    let mut h = header.split_whitespace();
    let kind = match h.next() {
        Some("CYCLE") => WitnessKind::Cycle,
        Some("PATH") => WitnessKind::Path,
        _ => return Err(bad("header must be CYCLE or PATH")),
    };
    let len: usize = h.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("missing length"))?;
    let nums = |l: &str| -> Result<Vec<Vertex>> {
        l.split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(&format!("bad vertex {t:?}"))))
            .collect()
    };
    let base = nums(lines.next().ok_or_else(|| bad("missing base vertices"))?)?;
    let edges = lines.map(|l| Edge::new(nums(l)?)).collect::<Result<Vec<_>>>()?;
    if edges.len() != len {
        return Err(bad(&format!("header says {len} edges, found {}", edges.len())));
    }
    Ok(BergeWitness { kind, base, edges })
}
