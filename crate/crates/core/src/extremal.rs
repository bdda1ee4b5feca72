//! Bound functions, extremal constructions and their recognition.
//!
//! Throughout, `n = (k - 2) p + m` with `p = floor((n - 1) / (k - 2))` and
//! `1 <= m <= k - 2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use itertools::Itertools;
use log::warn;
use serde::{Deserialize, Serialize};

use crate::binom::binom;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Graph, Hypergraph, MixedHypergraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub p: usize,
    pub m: usize,
    pub t: usize,
}

impl ExtremalParams {
    pub fn new(n: usize, k: usize, r: usize) -> Result<Self> {
        if k < 3 || n < 1 || r < 2 {
            return Err(Error::Domain(format!("need n >= 1, k >= 3, r >= 2 (got n = {n}, k = {k}, r = {r})")));
        }
        let p = (n - 1) / (k - 2);
        Ok(ExtremalParams {
            n,
            k,
            r,
            p,
            m: n - (k - 2) * p,
            t: (k - 1) / 2,
        })
    }

    /// `r >= 3` and `k >= r + 4`: the range where the exact theorems apply.
    pub fn in_theorem_range(&self) -> bool {
        self.r >= 3 && self.k >= self.r + 4
    }

    pub fn in_extended_range(&self) -> bool {
        self.r >= 3 && self.k >= self.r + 3
    }
}

fn c(n: usize, k: usize) -> u128 {
    binom(n as u64, k as u64)
}

/// Maximum edges of an n-vertex graph without cycles of length `>= k`.
pub fn eval_f_graph(n: usize, k: usize) -> Result<u128> {
    let q = ExtremalParams::new(n, k, 2)?;
    Ok(q.p as u128 * c(k - 1, 2) + c(q.m, 2))
}

fn hyper_params(n: usize, k: usize, r: usize) -> Result<ExtremalParams> {
    let q = ExtremalParams::new(n, k, r)?;
    if !q.in_extended_range() {
        return Err(Error::Domain(format!("need r >= 3 and k >= r + 3 (got k = {k}, r = {r})")));
    }
    if k == r + 3 {
        warn!("k = r + 3 lies outside the range k >= r + 4 of the exact result");
    }
    Ok(q)
}

pub fn eval_fr(n: usize, k: usize, r: usize) -> Result<u128> {
    let q = hyper_params(n, k, r)?;
    let tail = if q.m <= r { q.m as u128 - 1 } else { c(q.m, r) };
    Ok(q.p as u128 * c(k - 1, r) + tail)
}

pub fn eval_fr_plus(n: usize, k: usize, r: usize) -> Result<u128> {
    let q = hyper_params(n, k, r)?;
    let tail = if q.m <= r + 1 { c(q.m, 2) } else { c(q.m, r) };
    Ok(q.p as u128 * c(k - 1, r) + tail)
}

pub fn eval_ur(n: usize, k: usize, r: usize, s: usize) -> Result<u128> {
    let t = (k.saturating_sub(1)) / 2;
    if s >= k || k - s < 2 || k - s > t || n < s {
        return Err(Error::Domain(format!(
            "s = {s} outside k - t <= s <= k - 2 (k = {k}, t = {t}) or n < s"
        )));
    }
    Ok(c(s, 2).max(c(s, r)) + (n - s) as u128 * ((k - s) as u128).max(c(k - s, r - 1)))
}

/// `H_{n,k,a}`: `A = [0, a)`, `C = [a, k - a)`, `B = [k - a, n)`; a clique on
/// `A ∪ C` plus all `A`–`B` pairs.
pub fn build_hnka(n: usize, k: usize, a: usize) -> Result<Graph> {
    if k < 4 || n < k || a < 1 || 2 * a >= k {
        return Err(Error::Domain(format!(
            "H(n,k,a) needs k >= 4, n >= k, 1 <= a < k/2 (got n = {n}, k = {k}, a = {a})"
        )));
    }
    let (a, ka, n) = (a as Vertex, (k - a) as Vertex, n as Vertex);
    let clique = (0..ka).tuple_combinations();
    let cross = (0..a).flat_map(|x| (ka..n).map(move |y| (x, y)));
    Graph::new(n as usize, clique.chain(cross))
}

/// Graph clique tree: `p` chained `K_{k-1}` and one `K_m`.
pub fn build_graph_clique_chain(n: usize, k: usize) -> Result<Graph> {
    let q = ExtremalParams::new(n, k, 2)?;
    let edges = chain_layout(&q, true).into_iter().flat_map(|b| b.into_iter().tuple_combinations());
    Graph::from_edges_dedup(n, edges)
}

/// Block `i` starts at the highest vertex of block `i - 1`. With
/// `with_m_block`, a final block of size `m` is appended when `m >= 2`.
pub fn chain_layout(q: &ExtremalParams, with_m_block: bool) -> Vec<Vec<Vertex>> {
    let step = q.k - 2;
    let mut blocks: Vec<Vec<Vertex>> = (0..q.p)
        .map(|i| ((i * step) as Vertex..(i * step + q.k - 1) as Vertex).collect())
        .collect();
    if with_m_block && q.m >= 2 {
        blocks.push(((q.p * step) as Vertex..(q.p * step + q.m) as Vertex).collect());
    }
    blocks
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstructionKind {
    C41,
    C42,
    C63,
    Hnka,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockKind {
    Graph,
    Hyper,
}

/// One tree edge `{alpha, alpha'}` of the blow-up construction (`C42`) and its blow-up sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blowup {
    pub alpha: usize,
    pub a: Vec<Vertex>,
    pub alpha2: usize,
    pub a2: Vec<Vertex>,
}

/// Layout of a construction. Components are indexed by smallest vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: Option<ConstructionKind>,
    pub blocks: Vec<Vec<Vertex>>,
    pub tree: Vec<(usize, usize)>,
    pub blowups: Vec<Blowup>,
    pub kinds: BTreeMap<usize, BlockKind>,
    pub hnka: Option<(usize, usize, usize)>,
}

impl ConstructionSpec {
    pub fn default_c41(q: &ExtremalParams) -> Self {
        ConstructionSpec {
            kind: Some(ConstructionKind::C41),
            blocks: chain_layout(q, true),
            ..Default::default()
        }
    }

    /// Chained `(k-1)`-blocks, the last `m - 1` vertices as singleton
    /// components, each joined to the chain by an edge `A ∪ {v}` with `A`
    /// the first `r - 1` vertices of the first block.
    pub fn default_c42(q: &ExtremalParams) -> Self {
        let blocks = chain_layout(q, false);
        let mut spec = ConstructionSpec {
            kind: Some(ConstructionKind::C42),
            blocks,
            ..Default::default()
        };
        if q.p == 0 {
            return spec;
        }
        let first = (q.n - q.m + 1) as Vertex;
        for (i, v) in (first..q.n as Vertex).enumerate() {
            let alpha2 = i + 1;
            spec.tree.push((0, alpha2));
            spec.blowups.push(Blowup {
                alpha: 0,
                a: spec.blocks[0][..q.r - 1].to_vec(),
                alpha2,
                a2: vec![v],
            });
        }
        spec
    }

    /// Chain with each block taking its larger option.
    pub fn default_c63(q: &ExtremalParams) -> Self {
        let blocks = chain_layout(q, true);
        let kinds = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let kind = if b.len() >= q.r && c(b.len(), q.r) >= c(b.len(), 2) {
                    BlockKind::Hyper
                } else {
                    BlockKind::Graph
                };
                (i, kind)
            })
            .collect();
        ConstructionSpec {
            kind: Some(ConstructionKind::C63),
            blocks,
            kinds,
            ..Default::default()
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::Spec(format!("line {line}: {msg}"));
        let mut spec = ConstructionSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let mut toks = l.split_whitespace();
            let head = toks.next().unwrap();
            let rest: Vec<&str> = toks.collect();
            let nums = |ts: &[&str]| -> Result<Vec<usize>> {
                ts.iter().map(|t| t.parse().map_err(|_| bad(line, &format!("bad number {t:?}")))).collect()
            };
            match head {
                "TYPE" => {
                    spec.kind = Some(match rest.as_slice() {
                        ["C41"] => ConstructionKind::C41,
                        ["C42"] => ConstructionKind::C42,
                        ["C63"] => ConstructionKind::C63,
                        ["HNKA"] => ConstructionKind::Hnka,
                        _ => return Err(bad(line, "TYPE must be C41, C42, C63 or HNKA")),
                    })
                }
                "BLOCK" => spec.blocks.push(nums(&rest)?.into_iter().map(|v| v as Vertex).collect()),
                "TREE" => match nums(&rest)?.as_slice() {
                    &[a, b] => spec.tree.push((a, b)),
                    _ => return Err(bad(line, "TREE takes two component indices")),
                },
                "BLOWUP" => {
                    let mut sides: Vec<(usize, Vec<Vertex>)> = Vec::new();
                    for t in rest {
                        if let Some((alpha, v)) = t.split_once(':') {
                            let alpha = alpha.parse().map_err(|_| bad(line, &format!("bad component {alpha:?}")))?;
                            sides.push((alpha, Vec::new()));
                            if !v.is_empty() {
                                sides.last_mut().unwrap().1.push(v.parse().map_err(|_| bad(line, "bad vertex"))?);
                            }
                        } else {
                            let side = sides.last_mut().ok_or_else(|| bad(line, "vertex before any α: prefix"))?;
                            side.1.push(t.parse().map_err(|_| bad(line, &format!("bad vertex {t:?}")))?);
                        }
                    }
                    let [(alpha, a), (alpha2, a2)]: [(usize, Vec<Vertex>); 2] =
                        sides.try_into().map_err(|_| bad(line, "BLOWUP needs exactly two sides α:v… α′:v…"))?;
                    spec.blowups.push(Blowup { alpha, a, alpha2, a2 });
                }
                "KIND" => match rest.as_slice() {
                    [i, kind] => {
                        let i = nums(&[i])?[0];
                        let kind = match *kind {
                            "graph" => BlockKind::Graph,
                            "hyper" => BlockKind::Hyper,
                            _ => return Err(bad(line, "KIND takes graph or hyper")),
                        };
                        spec.kinds.insert(i, kind);
                    }
                    _ => return Err(bad(line, "KIND i graph|hyper")),
                },
                "HNKA" => match nums(&rest)?.as_slice() {
                    &[n, k, a] => spec.hnka = Some((n, k, a)),
                    _ => return Err(bad(line, "HNKA n k a")),
                },
                other => return Err(bad(line, &format!("unknown directive {other:?}"))),
            }
        }
        Ok(spec)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if let Some(kind) = self.kind {
            writeln!(out, "TYPE {kind:?}").unwrap();
        }
        if let Some((n, k, a)) = self.hnka {
            writeln!(out, "HNKA {n} {k} {a}").unwrap();
        }
        for b in &self.blocks {
            writeln!(out, "BLOCK {}", b.iter().join(" ")).unwrap();
        }
        for (a, b) in &self.tree {
            writeln!(out, "TREE {a} {b}").unwrap();
        }
        for bl in &self.blowups {
            writeln!(out, "BLOWUP {}:{} {}:{}", bl.alpha, bl.a.iter().join(" "), bl.alpha2, bl.a2.iter().join(" ")).unwrap();
        }
        for (i, kind) in &self.kinds {
            let name = match kind {
                BlockKind::Graph => "graph",
                BlockKind::Hyper => "hyper",
            };
            writeln!(out, "KIND {i} {name}").unwrap();
        }
        out
    }
}

fn check_block_vertices(q: &ExtremalParams, blocks: &[Vec<Vertex>]) -> Result<()> {
    for (i, b) in blocks.iter().enumerate() {
        if b.iter().any(|&v| v as usize >= q.n) {
            return Err(Error::Spec(format!("block {i} has a vertex outside [0, {})", q.n)));
        }
        if b.iter().unique().count() != b.len() {
            return Err(Error::Spec(format!("block {i} repeats a vertex")));
        }
    }
    Ok(())
}

/// Checks `|(V_1 ∪ … ∪ V_{i-1}) ∩ V_i| <= 1` (or `== 1` when `exact`).
fn check_running_intersection(blocks: &[Vec<Vertex>], exact: bool) -> Result<()> {
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    for (i, b) in blocks.iter().enumerate() {
        if i > 0 {
            let common = b.iter().filter(|v| seen.contains(v)).count();
            if common > 1 || (exact && common != 1) {
                return Err(Error::Spec(format!(
                    "block {i} meets the earlier blocks in {common} vertices (must be {})",
                    if exact { "exactly 1" } else { "at most 1" }
                )));
            }
        }
        seen.extend(b.iter().copied());
    }
    Ok(())
}

fn expect_block_sizes(q: &ExtremalParams, blocks: &[Vec<Vertex>], with_m: bool) -> Result<()> {
    let big = blocks.iter().filter(|b| b.len() == q.k - 1).count();
    let want_m = with_m && q.m >= 2;
    let small = blocks.iter().filter(|b| b.len() == q.m && b.len() != q.k - 1).count();
    let ok = big == q.p && blocks.len() == q.p + usize::from(want_m) && (!want_m || small == 1 || q.m == q.k - 1);
    if !ok {
        return Err(Error::Spec(format!(
            "expected {} blocks of size {}{} (got sizes {:?})",
            q.p,
            q.k - 1,
            if want_m { format!(" and one of size {}", q.m) } else { String::new() },
            blocks.iter().map(Vec::len).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

fn union_is_all(q: &ExtremalParams, blocks: &[Vec<Vertex>]) -> Result<()> {
    let covered: BTreeSet<Vertex> = blocks.iter().flatten().copied().collect();
    if covered.len() != q.n {
        return Err(Error::Spec(format!("blocks cover {} of {} vertices", covered.len(), q.n)));
    }
    Ok(())
}

/// Complete r-graphs on a clique tree of `p` blocks of size `k - 1` and one
/// of size `m`. Requires `m >= r + 1`, or `m = 1` (no `m`-block).
pub fn build_construction41(q: &ExtremalParams, layout: Option<&[Vec<Vertex>]>) -> Result<Hypergraph> {
    if q.m <= q.r && q.m != 1 {
        return Err(Error::Domain(format!("m = {} <= r = {}: use the blow-up construction (c42)", q.m, q.r)));
    }
    let default;
    let blocks = match layout {
        Some(b) => b,
        None => {
            default = chain_layout(q, true);
            &default
        }
    };
    check_block_vertices(q, blocks)?;
    expect_block_sizes(q, blocks, true)?;
    check_running_intersection(blocks, true)?;
    union_is_all(q, blocks)?;
    let edges = blocks.iter().flat_map(|b| b.iter().copied().combinations(q.r));
    Hypergraph::new(q.n, q.r, edges)
}

/// Components of the graph whose cliques are the blocks, ordered by
/// smallest vertex.
pub fn block_components(n: usize, blocks: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); n];
    for b in blocks {
        for w in b.windows(2) {
            adj[w[0] as usize].push(w[1] as usize);
            adj[w[1] as usize].push(w[0] as usize);
        }
    }
    crate::graphalg::connected_components(&adj)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as Vertex).collect())
        .collect()
}

fn is_tree(m: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() + 1 != m {
        return false;
    }
    let mut adj = vec![Vec::new(); m];
    for &(a, b) in edges {
        if a >= m || b >= m || a == b {
            return false;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    crate::graphalg::connected_components(&adj).len() == 1
}

pub fn build_construction42(q: &ExtremalParams, spec: &ConstructionSpec) -> Result<Hypergraph> {
    if q.m > q.r {
        return Err(Error::Domain(format!("m = {} > r = {}: use the clique-tree construction (c41)", q.m, q.r)));
    }
    let blocks = &spec.blocks;
    check_block_vertices(q, blocks)?;
    expect_block_sizes(q, blocks, false)?;
    check_running_intersection(blocks, false)?;
    let comps = block_components(q.n, blocks);
    if comps.len() != q.m {
        return Err(Error::Spec(format!("blocks leave {} components, expected m = {}", comps.len(), q.m)));
    }
    let comp_of: Vec<usize> = {
        let mut v = vec![0; q.n];
        for (i, cmp) in comps.iter().enumerate() {
            for &x in cmp {
                v[x as usize] = i;
            }
        }
        v
    };
    if !is_tree(q.m, &spec.tree) {
        return Err(Error::Spec(format!("TREE edges {:?} do not form a tree on {} components", spec.tree, q.m)));
    }
    for &(a, b) in &spec.tree {
        let size = comps[a].len() + comps[b].len();
        if size < q.r {
            return Err(Error::Spec(format!("tree edge {a} {b}: |C_α|+|C_α′| = {size} < r = {}", q.r)));
        }
    }
    if spec.blowups.len() != spec.tree.len() {
        return Err(Error::Spec(format!("{} tree edges but {} BLOWUP lines", spec.tree.len(), spec.blowups.len())));
    }
    let mut cut_edges = Vec::new();
    for (i, bl) in spec.blowups.iter().enumerate() {
        let (a, b) = (bl.alpha.min(bl.alpha2), bl.alpha.max(bl.alpha2));
        if !spec.tree.iter().any(|&(x, y)| (x.min(y), x.max(y)) == (a, b)) {
            return Err(Error::Spec(format!("BLOWUP {i} joins {} and {}, which is not a tree edge", bl.alpha, bl.alpha2)));
        }
        if bl.a.len() + bl.a2.len() != q.r || bl.a.is_empty() || bl.a2.is_empty() {
            return Err(Error::Spec(format!("BLOWUP {i}: need nonempty A, A′ with |A|+|A′| = r")));
        }
        for (alpha, side) in [(bl.alpha, &bl.a), (bl.alpha2, &bl.a2)] {
            if side.iter().any(|&v| v as usize >= q.n || comp_of[v as usize] != alpha) {
                return Err(Error::Spec(format!("BLOWUP {i}: set {side:?} is not inside component {alpha}")));
            }
            if comps[alpha].len() > 1 && !blocks.iter().any(|b| side.iter().all(|v| b.contains(v))) {
                return Err(Error::Spec(format!("BLOWUP {i}: set {side:?} is not inside a single block")));
            }
        }
        cut_edges.push(bl.a.iter().chain(&bl.a2).copied().collect::<Vec<_>>());
    }
    let edges = blocks
        .iter()
        .flat_map(|b| b.iter().copied().combinations(q.r))
        .chain(cut_edges);
    Hypergraph::new(q.n, q.r, edges)
}

pub fn build_construction63(q: &ExtremalParams, spec: &ConstructionSpec) -> Result<MixedHypergraph> {
    let blocks = &spec.blocks;
    check_block_vertices(q, blocks)?;
    expect_block_sizes(q, blocks, true)?;
    check_running_intersection(blocks, q.m == 1)?;
    if q.m == 1 {
        union_is_all(q, blocks)?;
    }
    let mut pairs = Vec::new();
    let mut hyper = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let kind = *spec.kinds.get(&i).unwrap_or(&BlockKind::Hyper);
        match kind {
            BlockKind::Hyper if b.len() < q.r => {
                return Err(Error::Spec(format!("block {i} has {} < r vertices and must be a graph clique", b.len())))
            }
            BlockKind::Hyper => hyper.extend(b.iter().copied().combinations(q.r)),
            BlockKind::Graph => pairs.extend(b.iter().copied().tuple_combinations::<(_, _)>()),
        }
    }
    MixedHypergraph::new(Graph::new(q.n, pairs)?, Hypergraph::new(q.n, q.r, hyper)?)
}

/// Builds whichever construction the spec names, returning it as an edge
/// list (pairs first for mixed families).
pub fn build_from_spec(q: &ExtremalParams, spec: &ConstructionSpec) -> Result<BuiltConstruction> {
    match spec.kind {
        Some(ConstructionKind::C41) => Ok(BuiltConstruction::Hyper(build_construction41(q, Some(&spec.blocks))?)),
        Some(ConstructionKind::C42) => Ok(BuiltConstruction::Hyper(build_construction42(q, spec)?)),
        Some(ConstructionKind::C63) => Ok(BuiltConstruction::Mixed(build_construction63(q, spec)?)),
        Some(ConstructionKind::Hnka) => {
            let (n, k, a) = spec.hnka.ok_or_else(|| Error::Spec("HNKA line missing".into()))?;
            Ok(BuiltConstruction::Graph(build_hnka(n, k, a)?))
        }
        None => Err(Error::Spec("construction TYPE not given".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltConstruction {
    Graph(Graph),
    Hyper(Hypergraph),
    Mixed(MixedHypergraph),
}

/// The extremal construction for `(n, k, r)`: clique tree (`C41`) when `m >= r + 1`, else blow-up (`C42`).
pub fn build_extremal(q: &ExtremalParams) -> Result<Hypergraph> {
    if q.m >= q.r + 1 {
        build_construction41(q, None)
    } else {
        build_construction42(q, &ConstructionSpec::default_c42(q))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Construction41,
    Construction42,
    Neither,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionEvidence {
    pub blocks: Vec<Vec<Vertex>>,
    pub block_sizes: Vec<usize>,
    pub components: Vec<Vec<Vertex>>,
    pub cut_edges: Vec<Edge>,
    pub signatures: Vec<Vec<usize>>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionResult {
    pub verdict: Verdict,
    pub evidence: RecognitionEvidence,
}

/// Largest clique enumeration this recognizer attempts inside one maximal clique.
const MAX_SUBSETS: u128 = 200_000;

/// All `(k-1)`-sets spanning a complete r-graph in `h`.
pub fn complete_blocks(h: &Hypergraph, size: usize) -> Option<Vec<Vec<Vertex>>> {
    let r = h.r();
    if size < r {
        return Some(Vec::new());
    }
    let threshold = c(size - 2, r - 2) as usize;
    let mut codeg: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for e in h.edges() {
        for p in e.pairs() {
            *codeg.entry(p).or_default() += 1;
        }
    }
    let mut adj = vec![BTreeSet::new(); h.n()];
    for (&(a, b), &d) in &codeg {
        if d >= threshold {
            adj[a as usize].insert(b as usize);
            adj[b as usize].insert(a as usize);
        }
    }
    let mut found = BTreeSet::new();
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..h.n()).collect(), BTreeSet::new(), &mut cliques);
    for q in cliques.into_iter().filter(|q| q.len() >= size) {
        if c(q.len(), size) > MAX_SUBSETS {
            return None;
        }
        for s in q.iter().copied().combinations(size) {
            let s: Vec<Vertex> = s.into_iter().map(|v| v as Vertex).collect();
            if s.iter().copied().combinations(r).all(|e| h.contains(&Edge::new(e).unwrap())) {
                found.insert(s);
            }
        }
    }
    Some(found.into_iter().collect())
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    current: Vec<usize>,
    mut cand: BTreeSet<usize>,
    mut excl: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cand.is_empty() && excl.is_empty() {
        if current.len() >= 2 {
            out.push(current);
        }
        return;
    }
    let pivot = *cand.iter().chain(excl.iter()).max_by_key(|&&u| adj[u].intersection(&cand).count()).unwrap();
    let todo: Vec<usize> = cand.iter().copied().filter(|v| !adj[pivot].contains(v)).collect();
    for v in todo {
        let mut next = current.clone();
        next.push(v);
        let c2 = cand.intersection(&adj[v]).copied().collect();
        let e2 = excl.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, next, c2, e2, out);
        cand.remove(&v);
        excl.insert(v);
    }
}

/// Decides whether `h` has the structure of the clique-tree construction (`C41`, `m >= r + 1`)
/// or the blow-up construction (`C42`, `m <= r`) for cycle bound `k`, up to relabeling.
pub fn recognize_extremal(h: &Hypergraph, k: usize) -> RecognitionResult {
    let mut ev = RecognitionEvidence::default();
    let neither = |mut ev: RecognitionEvidence, why: String| {
        ev.notes.push(why);
        RecognitionResult {
            verdict: Verdict::Neither,
            evidence: ev,
        }
    };
    let q = match ExtremalParams::new(h.n(), k, h.r()) {
        Ok(q) if k >= 4 => q,
        _ => return neither(ev, format!("parameters n = {}, k = {k} out of range", h.n())),
    };
    let r = q.r;
    let Some(blocks) = complete_blocks(h, k - 1) else {
        return neither(ev, "too many candidate cliques".into());
    };
    ev.block_sizes = blocks.iter().map(Vec::len).collect();
    ev.blocks = blocks.clone();
    if blocks.len() != q.p {
        return neither(ev, format!("found {} complete {}-blocks, expected p = {}", blocks.len(), k - 1, q.p));
    }
    if blocks.iter().tuple_combinations().any(|(a, b)| a.iter().filter(|v| b.contains(v)).count() > 1) {
        return neither(ev, "two complete blocks share more than one vertex".into());
    }
    let block_edges: BTreeSet<Edge> = blocks
        .iter()
        .flat_map(|b| b.iter().copied().combinations(r))
        .map(|e| Edge::new(e).unwrap())
        .collect();
    let rest: Vec<Edge> = h.edges().iter().filter(|e| !block_edges.contains(e)).cloned().collect();

    if q.m >= r + 1 {
        let m_block: Vec<Vertex> = rest.iter().flat_map(|e| e.vertices().iter().copied()).sorted().dedup().collect();
        ev.cut_edges = rest.clone();
        if m_block.len() != q.m || rest.len() as u128 != c(q.m, r) {
            return neither(ev, format!("edges outside the blocks do not form a complete K_{}^({r})", q.m));
        }
        let mut all = blocks.clone();
        all.push(m_block.clone());
        ev.block_sizes.push(q.m);
        ev.blocks = all.clone();
        if let Err(e) = order_as_clique_tree(&all).and_then(|ordered| {
            check_running_intersection(&ordered, true)?;
            union_is_all(&q, &ordered)
        }) {
            return neither(ev, format!("blocks are not a clique tree: {e}"));
        }
        if q.m == r + 1 {
            let comps = block_components(q.n, &blocks);
            let hit = comps.iter().filter(|c| c.iter().any(|v| m_block.contains(v))).count();
            ev.notes.push(format!(
                "m = r + 1: the K_{}^({r}) block meets {hit} components of the (k-1)-block forest",
                q.m
            ));
        }
        ev.cut_edges.clear();
        return RecognitionResult {
            verdict: Verdict::Construction41,
            evidence: ev,
        };
    }

    let comps = block_components(q.n, &blocks);
    ev.components = comps.clone();
    if comps.len() != q.m {
        return neither(ev, format!("{} components, expected m = {}", comps.len(), q.m));
    }
    ev.cut_edges = rest.clone();
    if rest.len() != q.m - 1 {
        return neither(ev, format!("{} cut edges, expected m - 1 = {}", rest.len(), q.m - 1));
    }
    let comp_of: BTreeMap<Vertex, usize> =
        comps.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&v| (v, i))).collect();
    let mut tree = Vec::new();
    for f in &rest {
        let phi: Vec<usize> = f.vertices().iter().map(|v| comp_of[v]).sorted().dedup().collect();
        ev.signatures.push(phi.clone());
        if phi.len() != 2 {
            return neither(ev, format!("cut edge {f} meets {} components, expected 2", phi.len()));
        }
        for &alpha in &phi {
            let part: Vec<Vertex> = f.vertices().iter().copied().filter(|v| comp_of[v] == alpha).collect();
            if comps[alpha].len() > 1 && !blocks.iter().any(|b| part.iter().all(|v| b.contains(v))) {
                return neither(ev, format!("cut edge {f}: part in component {alpha} is not inside one block"));
            }
        }
        tree.push((phi[0], phi[1]));
    }
    if !is_tree(q.m, &tree) {
        return neither(ev, "component signatures do not form a tree".into());
    }
    if q.m == 1 {
        ev.notes.push("m = 1: the clique-tree and blow-up constructions coincide (clique tree, no cut edges)".into());
    }
    RecognitionResult {
        verdict: Verdict::Construction42,
        evidence: ev,
    }
}

/// Orders blocks so each meets the union of the previous ones, greedily.
fn order_as_clique_tree(blocks: &[Vec<Vertex>]) -> Result<Vec<Vec<Vertex>>> {
    let mut left: Vec<Vec<Vertex>> = blocks.to_vec();
    let mut ordered = vec![left.remove(0)];
    let mut seen: BTreeSet<Vertex> = ordered[0].iter().copied().collect();
    while !left.is_empty() {
        let i = left
            .iter()
            .position(|b| b.iter().filter(|v| seen.contains(v)).count() == 1)
            .ok_or_else(|| Error::Spec("no block attaches at exactly one vertex".into()))?;
        let b = left.remove(i);
        seen.extend(b.iter().copied());
        ordered.push(b);
    }
    Ok(ordered)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, k: usize, r: usize) -> ExtremalParams {
        ExtremalParams::new(n, k, r).unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(eval_f_graph(9, 5).unwrap(), 15);
        assert_eq!(eval_f_graph(5, 6).unwrap(), 10);
        assert_eq!(eval_f_graph(5, 4).unwrap(), 6);
        assert_eq!(eval_fr(11, 7, 3).unwrap(), 40);
        assert_eq!(eval_fr(12, 9, 3).unwrap(), 66);
        assert_eq!(eval_fr(17, 7, 3).unwrap(), 61);
        assert_eq!(eval_fr_plus(17, 7, 3).unwrap(), 61);
        assert_eq!(eval_fr_plus(18, 7, 3).unwrap(), 63);
        assert_eq!(eval_fr(18, 7, 3).unwrap(), 62);
        assert_eq!(eval_fr_plus(19, 7, 3).unwrap(), 66);
        assert_eq!(eval_fr(19, 7, 3).unwrap(), 64);
        assert_eq!(eval_ur(10, 7, 3, 5).unwrap(), 20);
        assert_eq!(eval_ur(7, 7, 3, 5).unwrap(), 14);
        assert_eq!(eval_ur(7, 7, 3, 4).unwrap(), 15);
        assert!(eval_ur(7, 7, 3, 6).is_err());
        assert!(eval_ur(7, 7, 3, 3).is_err());
        assert!(eval_fr(10, 5, 3).is_err());
        assert!(eval_fr(10, 7, 2).is_err());
    }

    #[test]
    fn hnka_examples() {
        assert_eq!(build_hnka(14, 11, 3).unwrap().len(), 46);
        assert_eq!(build_hnka(6, 6, 1).unwrap().len(), 11);
        assert!(build_hnka(14, 11, 6).is_err());
    }

    #[test]
    fn construction41_examples() {
        let h = build_construction41(&q(12, 9, 3), None).unwrap();
        assert_eq!(h.len(), 66);
        let h = build_construction41(&q(11, 7, 3), None).unwrap();
        assert_eq!(h.len(), 40);
        let bad = vec![(0..6).collect::<Vec<u32>>(), vec![4, 5, 6, 7, 8, 9]];
        assert!(build_construction41(&q(11, 7, 3), Some(&bad)).is_err());
        assert!(build_construction41(&q(17, 7, 3), None).is_err());
    }

    #[test]
    fn construction42_examples() {
        let p = q(17, 7, 3);
        let spec = ConstructionSpec::default_c42(&p);
        let h = build_construction42(&p, &spec).unwrap();
        assert_eq!(h.len(), 61);
        let p11 = q(11, 7, 3);
        assert_eq!(build_construction42(&p11, &ConstructionSpec::default_c42(&p11)).unwrap().len(), 40);

        // (9, 8, 3): p = 1, m = 3; two singleton components joined directly.
        let p9 = q(9, 8, 3);
        let mut spec = ConstructionSpec::default_c42(&p9);
        spec.tree = vec![(0, 1), (1, 2)];
        spec.blowups[1] = Blowup {
            alpha: 1,
            a: vec![7],
            alpha2: 2,
            a2: vec![8],
        };
        let err = build_construction42(&p9, &spec).unwrap_err().to_string();
        assert!(err.contains("= 2 < r"), "{err}");
    }

    #[test]
    fn construction63_examples() {
        let p = q(18, 7, 3);
        let m = build_construction63(&p, &ConstructionSpec::default_c63(&p)).unwrap();
        assert_eq!(m.size(), 63);
        assert_eq!(m.pair_edges().len(), 3);
        let p = q(11, 7, 3);
        let m = build_construction63(&p, &ConstructionSpec::default_c63(&p)).unwrap();
        assert_eq!((m.size(), m.pair_edges().len()), (40, 0));
        let p = q(17, 7, 3);
        let mut spec = ConstructionSpec::default_c63(&p);
        assert_eq!(spec.blocks.last().unwrap().len(), 2);
        spec.kinds.insert(spec.blocks.len() - 1, BlockKind::Hyper);
        assert!(build_construction63(&p, &spec).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let p = q(17, 7, 3);
        let spec = ConstructionSpec::default_c42(&p);
        let text = spec.serialize();
        assert!(text.contains("BLOWUP 0:0 1 1:16"), "{text}");
        assert_eq!(ConstructionSpec::parse(&text).unwrap(), spec);
        let s63 = ConstructionSpec::default_c63(&q(18, 7, 3));
        assert_eq!(ConstructionSpec::parse(&s63.serialize()).unwrap(), s63);
    }

    #[test]
    fn recognition_examples() {
        let p = q(12, 9, 3);
        let h = build_construction41(&p, None).unwrap();
        assert_eq!(recognize_extremal(&h, 9).verdict, Verdict::Construction41);

        let p = q(17, 7, 3);
        let h = build_construction42(&p, &ConstructionSpec::default_c42(&p)).unwrap();
        let res = recognize_extremal(&h, 7);
        assert_eq!(res.verdict, Verdict::Construction42);
        assert_eq!(res.evidence.cut_edges.len(), 1);
        assert_eq!(res.evidence.signatures, vec![vec![0, 1]]);

        assert_eq!(recognize_extremal(&Hypergraph::complete(7, 3), 7).verdict, Verdict::Neither);

        let p = q(11, 7, 3);
        let res = recognize_extremal(&build_extremal(&p).unwrap(), 7);
        assert_eq!(res.verdict, Verdict::Construction42);
        assert!(res.evidence.notes[0].starts_with("m = 1"));
    }

    #[test]
    fn recognition_is_label_free() {
        let p = q(9, 7, 3);
        let h = build_extremal(&p).unwrap();
        let perm: Vec<Vertex> = vec![4, 8, 0, 2, 7, 1, 3, 6, 5];
        let g = h.relabel(&perm).unwrap();
        assert_eq!(recognize_extremal(&g, 7).verdict, Verdict::Construction41);
    }

    #[test]
    fn builders_match_formulas() {
        for r in 3..=5 {
            for k in r + 4..=r + 10 {
                for n in k..=60 {
                    let p = q(n, k, r);
                    assert_eq!(build_extremal(&p).unwrap().len() as u128, eval_fr(n, k, r).unwrap());
                    let m = build_construction63(&p, &ConstructionSpec::default_c63(&p)).unwrap();
                    assert_eq!(m.size() as u128, eval_fr_plus(n, k, r).unwrap());
                }
            }
        }
    }
}
