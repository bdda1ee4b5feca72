//! Structural graph tools: blocks, cores, Kopylov sets, hamilton-connectivity,
//! the shadow inequality and the fractional Kruskal–Katona bound.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::berge::{longest_graph_cycle, SearchBudget};
use crate::binom::{binom, binom_real};
use crate::error::{Error, Result};
use crate::graphalg::biconnected_components;
use crate::hypergraph::{complement_shadow2, Graph, Hypergraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<Vertex>>,
    pub block_edges: Vec<Vec<(Vertex, Vertex)>>,
    pub cut_vertices: Vec<Vertex>,
}

/// Block decomposition, blocks sorted by smallest vertex.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    let adj: Vec<Vec<usize>> = g
        .adjacency()
        .into_iter()
        .map(|l| l.into_iter().map(|v| v as usize).collect())
        .collect();
    let blocks: Vec<Vec<Vertex>> = biconnected_components(&adj)
        .into_iter()
        .map(|b| b.into_iter().map(|v| v as Vertex).collect())
        .collect();
    let mut block_edges = vec![Vec::new(); blocks.len()];
    for &(a, b) in g.edges() {
        // Two blocks share at most one vertex, so the owner is unique.
        let i = blocks
            .iter()
            .position(|bl| bl.binary_search(&a).is_ok() && bl.binary_search(&b).is_ok())
            .expect("every edge lies in a block");
        block_edges[i].push((a, b));
    }
    let mut count = vec![0usize; g.n()];
    for b in &blocks {
        for &v in b {
            count[v as usize] += 1;
        }
    }
    let cut_vertices = (0..g.n()).filter(|&v| count[v] > 1).map(|v| v as Vertex).collect();
    BlockDecomposition {
        blocks,
        block_edges,
        cut_vertices,
    }
}

pub fn is_two_connected(g: &Graph) -> bool {
    let d = blocks(g);
    g.n() >= 3 && d.blocks.len() == 1 && d.blocks[0].len() == g.n()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreResult {
    pub surviving: Vec<Vertex>,
    /// `(vertex, degree at removal)` in removal order.
    pub removal_order: Vec<(Vertex, usize)>,
}

/// The `(alpha + 1)`-core: repeatedly delete a vertex of degree `<= alpha`,
/// always the smallest eligible id.
pub fn core(g: &Graph, alpha: usize) -> CoreResult {
    let order: Vec<Vertex> = (0..g.n() as Vertex).collect();
    core_with_priority(g, alpha, &order)
}

/// As [`core`], but among eligible vertices the one earliest in `priority`
/// is removed first. The surviving set does not depend on `priority`.
pub fn core_with_priority(g: &Graph, alpha: usize, priority: &[Vertex]) -> CoreResult {
    let adj = g.adjacency();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = vec![true; g.n()];
    let mut removal_order = Vec::new();
    loop {
        let Some(&v) = priority.iter().find(|&&v| alive[v as usize] && deg[v as usize] <= alpha) else {
            break;
        };
        alive[v as usize] = false;
        removal_order.push((v, deg[v as usize]));
        for &u in &adj[v as usize] {
            if alive[u as usize] {
                deg[u as usize] -= 1;
            }
        }
    }
    CoreResult {
        surviving: (0..g.n()).filter(|&v| alive[v]).map(|v| v as Vertex).collect(),
        removal_order,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KopylovSet {
    pub s: usize,
    pub set: Vec<Vertex>,
}

/// Scans `s` from `k - 2` down to `k - floor((k-1)/2)` for an `s` whose
/// `(k - s)`-disintegration leaves at most `s` vertices. The surviving set is
/// padded with the last-removed vertices up to size `s`.
///
/// `Ok(None)` on a valid input would contradict the theory and is logged.
pub fn find_kopylov_set(g: &Graph, k: usize) -> Result<Option<KopylovSet>> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    if g.n() < k {
        return Err(Error::TooFewVertices { n: g.n(), k });
    }
    let lc = longest_graph_cycle(g, &SearchBudget::unlimited())?;
    if lc.length >= k {
        return Err(Error::ContainsLongCycle {
            length: lc.length,
            cycle: lc.cycle,
        });
    }
    let t = (k - 1) / 2;
    for s in (k - t..=k - 2).rev() {
        let c = core(g, k - s);
        if c.surviving.len() <= s {
            let mut set = c.surviving;
            let pad = s - set.len();
            set.extend(c.removal_order.iter().rev().take(pad).map(|&(v, _)| v));
            set.sort_unstable();
            return Ok(Some(KopylovSet { s, set }));
        }
    }
    warn!("no Kopylov set found for a valid input with n = {}, k = {k}", g.n());
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonReport {
    pub hamilton_connected: bool,
    /// `K_{n-1}` plus one vertex of degree 2.
    pub exception_shape: bool,
}

pub const MAX_HAMILTON_VERTICES: usize = 12;

/// Exhaustive: `reach[mask][end]` holds the start vertices of Hamilton paths
/// of `mask` ending at `end`.
pub fn is_hamilton_connected(g: &Graph, force: bool) -> Result<HamiltonReport> {
    let n = g.n();
    if n > MAX_HAMILTON_VERTICES && !(force && n <= 20) {
        return Err(Error::InstanceTooLarge(format!("hamilton-connectivity with n = {n}")));
    }
    let exception_shape = is_exception_shape(g);
    if n <= 1 {
        return Ok(HamiltonReport {
            hamilton_connected: true,
            exception_shape,
        });
    }
    let adj: Vec<u32> = g.adjacency().iter().map(|l| l.iter().fold(0, |m, &u| m | 1 << u)).collect();
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; (full + 1) * n];
    for v in 0..n {
        reach[(1 << v) * n + v] = 1 << v;
    }
    for mask in 1..=full {
        for end in 0..n {
            let starts = reach[mask * n + end];
            if starts == 0 {
                continue;
            }
            let mut nexts = adj[end] & !(mask as u32);
            while nexts != 0 {
                let u = nexts.trailing_zeros() as usize;
                nexts &= nexts - 1;
                reach[(mask | 1 << u) * n + u] |= starts;
            }
        }
    }
    let hamilton_connected = (0..n).all(|t| {
        let others = (full as u32) & !(1 << t);
        reach[full * n + t] & others == others
    });
    Ok(HamiltonReport {
        hamilton_connected,
        exception_shape,
    })
}

fn is_exception_shape(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let deg = g.degrees();
    (0..n).any(|v| {
        deg[v] == 2 && {
            let rest = g.len() - 2;
            rest == binom((n - 1) as u64, 2) as usize
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Equality {
    Strict,
    CompleteHypergraph,
    CompleteComplement,
    /// Equality attained by neither extremal shape.
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowInequality {
    pub lhs: u128,
    pub bound: u128,
    pub holds: bool,
    pub equality: Equality,
}

/// `|H| + |complement of the 2-shadow on [0, w)|` against `C(w, 2)` for
/// `w <= r + 2` and `C(w, r)` for `w >= r + 2`.
pub fn shadow_inequality_check(h: &Hypergraph, w: usize) -> Result<ShadowInequality> {
    if w < 2 {
        return Err(Error::Domain(format!("w = {w} < 2")));
    }
    if let Some(e) = h.edges().iter().find(|e| e.vertices().iter().any(|&v| v as usize >= w)) {
        return Err(Error::Domain(format!("edge {e} leaves [0, {w})")));
    }
    let r = h.r();
    let lhs = h.len() as u128 + complement_shadow2(h, w).len() as u128;
    let bound = if w <= r + 2 {
        binom(w as u64, 2)
    } else {
        binom(w as u64, r as u64)
    };
    let equality = if lhs != bound {
        Equality::Strict
    } else if w >= r + 2 && h.len() as u128 == binom(w as u64, r as u64) {
        Equality::CompleteHypergraph
    } else if h.is_empty() {
        Equality::CompleteComplement
    } else {
        Equality::Unclassified
    };
    Ok(ShadowInequality {
        lhs,
        bound,
        holds: lhs <= bound,
        equality,
    })
}

/// `C(x, 2)` where `x >= r - 1` solves `C(x, r) = b`.
pub fn kk_fractional_bound(b: u64, r: u32) -> f64 {
    if b == 0 {
        return 0.0;
    }
    let target = b as f64;
    let mut lo = f64::from(r) - 1.0;
    let mut hi = f64::from(r).max(2.0);
    while binom_real(hi, r) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if binom_real(mid, r) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    if (x - x.round()).abs() < 1e-7 {
        x = x.round();
    }
    x * (x - 1.0) / 2.0
}
