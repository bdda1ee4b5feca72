//! Exhaustive and randomized verification at small scale.

pub mod canon;
pub mod engine;
pub mod hunt;
pub mod report;
pub mod scan;

use log::info;
use serde::{Deserialize, Serialize};

use crate::berge::{longest_berge, longest_graph_cycle, SearchBudget, WitnessKind};
use crate::binom::binom;
use crate::error::{Error, Result};
use crate::extremal::{build_construction63, build_extremal, build_graph_clique_chain, ConstructionSpec, ExtremalParams};
use crate::hypergraph::{Graph, Hypergraph, MixedHypergraph, Vertex};
use canon::{Mask, MAX_MASK_VERTICES};
use engine::{Enumerator, Mode, SharedMeter};

/// Largest `n` for the exhaustive graph search.
pub const MAX_GRAPH_SEARCH_VERTICES: usize = 9;

/// The hypergraph search refuses instances with more than `C(11, 3)`
/// candidate edges unless forced.
pub const MAX_CANDIDATE_EDGES: u128 = 165;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub budget: SearchBudget,
    pub threads: usize,
    pub force: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: SearchBudget::unlimited(),
            threads: 1,
            force: false,
        }
    }
}

/// Exact maximum together with all maximizing families up to isomorphism.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult<F> {
    pub value: usize,
    pub extremal: Vec<F>,
    pub nodes_expanded: u64,
    pub exact: bool,
}

#[cfg(test)]
fn to_masks(edges: impl IntoIterator<Item = Vec<Vertex>>) -> Vec<Mask> {
    edges.into_iter().map(|e| e.iter().fold(0, |m, &v| m | 1 << v)).collect()
}

fn from_mask(m: Mask) -> Vec<Vertex> {
    (0..16).filter(|&v| m >> v & 1 == 1).collect()
}

fn mask_hypergraph(n: usize, r: usize, fam: &[Mask]) -> Hypergraph {
    Hypergraph::new(n, r, fam.iter().map(|&m| from_mask(m))).expect("enumerated family is valid")
}

fn mask_mixed(n: usize, r: usize, fam: &[Mask]) -> MixedHypergraph {
    let pairs = fam.iter().filter(|m| m.count_ones() == 2).map(|&m| {
        let v = from_mask(m);
        (v[0], v[1])
    });
    let hyper = fam.iter().filter(|m| m.count_ones() as usize == r && r > 2).map(|&m| from_mask(m));
    MixedHypergraph::new(Graph::new(n, pairs).unwrap(), Hypergraph::new(n, r, hyper).unwrap()).unwrap()
}

struct Outcome {
    value: usize,
    best: Vec<Vec<Mask>>,
    nodes: u64,
    exact: bool,
}

fn run(mode: Mode, n: usize, k: usize, lower: usize, config: &SearchConfig) -> Outcome {
    let meter = SharedMeter::new(&config.budget);
    let mut en = Enumerator::new(mode, k, config.threads, &meter);
    let all = en.dense(n, lower as i64);
    let value = all.iter().map(Vec::len).max().unwrap_or(0).max(lower);
    let best: Vec<Vec<Mask>> = all.into_iter().filter(|f| f.len() == value).collect();
    info!("search {mode:?} n = {n} k = {k}: value {value}, {} extremal, {} nodes", best.len(), meter.nodes());
    Outcome {
        value,
        best,
        nodes: meter.nodes(),
        exact: !meter.exhausted(),
    }
}

/// `EG(n, k)`: most edges in an n-vertex graph with no cycle of length `>= k`.
pub fn exact_eg_graph(n: usize, k: usize, config: &SearchConfig) -> Result<SearchResult<Graph>> {
    if n > MAX_GRAPH_SEARCH_VERTICES {
        return Err(Error::InstanceTooLarge(format!("graph search needs n <= {MAX_GRAPH_SEARCH_VERTICES} (got {n})")));
    }
    if k < 4 || n == 0 {
        return Err(Error::Domain(format!("graph search needs k >= 4 and n >= 1 (got n = {n}, k = {k})")));
    }
    let lower = build_graph_clique_chain(n, k)?;
    let check = longest_graph_cycle(&lower, &SearchBudget::unlimited())?;
    let lower_size = if check.length < k { lower.len() } else { 0 };
    let out = run(Mode::Uniform(2), n, k, lower_size, config);
    let extremal = out
        .best
        .iter()
        .map(|f| Graph::new(n, to_pairs(f)).unwrap())
        .collect::<Vec<_>>();
    for g in &extremal {
        assert!(longest_graph_cycle(g, &SearchBudget::unlimited())?.length < k, "listed graph has a long cycle");
    }
    Ok(SearchResult {
        value: out.value,
        extremal,
        nodes_expanded: out.nodes,
        exact: out.exact,
    })
}

fn to_pairs(fam: &[Mask]) -> Vec<(Vertex, Vertex)> {
    fam.iter()
        .map(|&m| {
            let v = from_mask(m);
            (v[0], v[1])
        })
        .collect()
}

fn check_hyper_size(n: usize, r: usize, force: bool) -> Result<()> {
    if n > MAX_MASK_VERTICES {
        return Err(Error::InstanceTooLarge(format!("search needs n <= {MAX_MASK_VERTICES}")));
    }
    if !force && binom(n as u64, r as u64) > MAX_CANDIDATE_EDGES {
        return Err(Error::InstanceTooLarge(format!(
            "C({n},{r}) candidate edges exceed {MAX_CANDIDATE_EDGES}; pass force to run anyway"
        )));
    }
    Ok(())
}

fn free_lower_bound(h: Hypergraph, k: usize) -> Option<Hypergraph> {
    let res = longest_berge(&h, WitnessKind::Cycle, &SearchBudget::unlimited()).ok()?;
    (res.complete && res.length() < k).then_some(h)
}

/// The best verified-free construction available for `(n, k, r)`.
fn hyper_lower_bound(n: usize, k: usize, r: usize) -> usize {
    let clique = (k - 1).min(n);
    let fallback = binom(clique as u64, r as u64) as usize;
    let built = ExtremalParams::new(n, k, r)
        .ok()
        .filter(|q| n >= k && q.in_extended_range())
        .and_then(|q| build_extremal(&q).ok())
        .and_then(|h| free_lower_bound(h, k));
    built.map_or(fallback, |h| h.len().max(fallback))
}

/// `EG_r(n, k)`: most edges of an n-vertex r-graph without a Berge cycle of
/// length `>= k`.
pub fn exact_eg_hypergraph(n: usize, k: usize, r: usize, config: &SearchConfig) -> Result<SearchResult<Hypergraph>> {
    if r < 3 || k < 3 || n == 0 {
        return Err(Error::Domain(format!("hypergraph search needs r >= 3, k >= 3, n >= 1 (got r = {r}, k = {k})")));
    }
    check_hyper_size(n, r, config.force)?;
    let lower = hyper_lower_bound(n, k, r);
    let out = run(Mode::Uniform(r), n, k, lower, config);
    let extremal: Vec<Hypergraph> = out.best.iter().map(|f| mask_hypergraph(n, r, f)).collect();
    for h in &extremal {
        let res = longest_berge(h, WitnessKind::Cycle, &SearchBudget::unlimited())?;
        assert!(res.length() < k, "listed hypergraph has a long Berge cycle");
    }
    Ok(SearchResult {
        value: out.value,
        extremal,
        nodes_expanded: out.nodes,
        exact: out.exact,
    })
}

/// `m_r(n, k)`: most members of a mixed family of pairs and r-sets whose
/// 2-shadow has no cycle of length `>= k`.
pub fn exact_mixed(n: usize, k: usize, r: usize, config: &SearchConfig) -> Result<SearchResult<MixedHypergraph>> {
    if r < 3 || k < 3 || n == 0 {
        return Err(Error::Domain(format!("mixed search needs r >= 3, k >= 3, n >= 1 (got r = {r}, k = {k})")));
    }
    check_hyper_size(n, r, config.force)?;
    // A Berge-free r-graph can still have a long shadow cycle, so only
    // shadow-checked families serve as lower bounds here.
    let mut lower = binom((k - 1).min(n) as u64, r as u64) as usize;
    if let Ok(q) = ExtremalParams::new(n, k, r) {
        if n >= k && q.in_extended_range() {
            if let Ok(m) = build_construction63(&q, &ConstructionSpec::default_c63(&q)) {
                if longest_graph_cycle(&m.shadow_graph(), &SearchBudget::unlimited())?.length < k {
                    lower = lower.max(m.size());
                }
            }
        }
    }
    let out = run(Mode::Mixed(r), n, k, lower, config);
    let extremal: Vec<MixedHypergraph> = out.best.iter().map(|f| mask_mixed(n, r, f)).collect();
    for m in &extremal {
        assert!(longest_graph_cycle(&m.shadow_graph(), &SearchBudget::unlimited())?.length < k);
    }
    Ok(SearchResult {
        value: out.value,
        extremal,
        nodes_expanded: out.nodes,
        exact: out.exact,
    })
}

/// Every n-vertex graph without a cycle of length `>= k` and with at least
/// `min_edges` edges, up to isomorphism.
pub fn free_graphs(n: usize, k: usize, min_edges: usize, config: &SearchConfig) -> Result<(Vec<Graph>, bool)> {
    if n > MAX_MASK_VERTICES || k < 3 {
        return Err(Error::Domain(format!("free graph enumeration needs n <= 16, k >= 3 (got n = {n}, k = {k})")));
    }
    let meter = SharedMeter::new(&config.budget);
    let mut en = Enumerator::new(Mode::Uniform(2), k, config.threads, &meter);
    let graphs = en.dense(n, min_edges as i64).iter().map(|f| Graph::new(n, to_pairs(f)).unwrap()).collect();
    Ok((graphs, !meter.exhausted()))
}
