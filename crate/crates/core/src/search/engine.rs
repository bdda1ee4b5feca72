//! Isomorph-free enumeration of cycle-free families by vertex augmentation.
//!
//! Removing a minimum-degree vertex from a free family with `N` members on
//! `n` vertices leaves a free family with at least `ceil(N (n - r) / n)`
//! members, where `r` bounds the member size. So every free family with at
//! least `T` members extends one with at least that many on `n - 1`
//! vertices by a new vertex of minimum degree.

use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use itertools::Itertools;

use super::canon::{canonical_form, Mask};
use crate::berge::SearchBudget;

/// Which families are enumerated and what "free" means.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// r-uniform families without a Berge cycle of length `>= k`
    /// (`r = 2`: graphs without a cycle of length `>= k`).
    Uniform(usize),
    /// Sperner families of pairs and r-sets whose 2-shadow has no cycle of
    /// length `>= k`.
    Mixed(usize),
}

impl Mode {
    pub fn max_size(self) -> usize {
        match self {
            Mode::Uniform(r) | Mode::Mixed(r) => r,
        }
    }
}

pub(crate) struct SharedMeter {
    nodes: AtomicU64,
    exhausted: AtomicBool,
    max_nodes: u64,
    start: Instant,
    limit: Option<Duration>,
}

impl SharedMeter {
    pub fn new(b: &SearchBudget) -> Self {
        SharedMeter {
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            max_nodes: b.max_nodes,
            start: Instant::now(),
            limit: b.max_seconds.is_finite().then(|| Duration::from_secs_f64(b.max_seconds)),
        }
    }

    pub fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max_nodes {
            self.exhausted.store(true, Ordering::Relaxed);
        } else if n % 4096 == 0 {
            if let Some(limit) = self.limit {
                if self.start.elapsed() > limit {
                    self.exhausted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.exhausted()
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

fn bits(m: Mask) -> impl Iterator<Item = usize> {
    let mut rest = m;
    std::iter::from_fn(move || {
        (rest != 0).then(|| {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            v
        })
    })
}

fn pair_mask(a: usize, b: usize) -> Mask {
    1 << a | 1 << b
}

/// Vertices reachable from `from` through `allowed`.
fn reach(adj: &[Mask], from: usize, allowed: Mask) -> Mask {
    let mut seen: Mask = 1 << from;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= allowed & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Is there an `a`–`b` path with at least `min_len` edges?
pub fn graph_path_at_least(adj: &[Mask], a: usize, b: usize, min_len: usize) -> bool {
    fn go(adj: &[Mask], cur: usize, b: usize, visited: Mask, len: usize, min_len: usize, all: Mask) -> bool {
        for w in bits(adj[cur] & !visited) {
            if w == b {
                if len + 1 >= min_len {
                    return true;
                }
                continue;
            }
            let vis = visited | 1 << w;
            let r = reach(adj, w, all & !vis | 1 << b);
            if r >> b & 1 == 0 || len + r.count_ones() as usize <= min_len - 1 {
                continue;
            }
            if go(adj, w, b, vis, len + 1, min_len, all) {
                return true;
            }
        }
        false
    }
    if min_len == 0 {
        return true;
    }
    let all: Mask = adj.iter().enumerate().fold(0, |m, (v, &x)| if x != 0 { m | 1 << v } else { m });
    go(adj, a, b, 1 << a, 0, min_len, all)
}

/// Berge path search with an incremental matching of consecutive pairs to
/// distinct members.
struct BergePaths<'a> {
    edges: &'a [Mask],
    incident: Vec<Vec<usize>>,
    adj: Vec<Mask>,
    owner: Vec<usize>,
    pairs: Vec<Mask>,
    pair_edge: Vec<usize>,
    seen: Vec<bool>,
}

const NONE: usize = usize::MAX;

impl<'a> BergePaths<'a> {
    fn new(n: usize, edges: &'a [Mask]) -> Self {
        let mut incident = vec![Vec::new(); n];
        let mut adj = vec![0; n];
        for (i, &e) in edges.iter().enumerate() {
            for v in bits(e) {
                incident[v].push(i);
                adj[v] |= e & !(1 << v);
            }
        }
        BergePaths {
            edges,
            incident,
            adj,
            owner: vec![NONE; edges.len()],
            pairs: Vec::new(),
            pair_edge: Vec::new(),
            seen: vec![false; edges.len()],
        }
    }

    fn try_assign(&mut self, pair: usize) -> bool {
        let p = self.pairs[pair];
        let lo = p.trailing_zeros() as usize;
        for idx in 0..self.incident[lo].len() {
            let e = self.incident[lo][idx];
            if self.edges[e] & p == p && !self.seen[e] {
                self.seen[e] = true;
                if self.owner[e] == NONE || self.try_assign(self.owner[e]) {
                    self.owner[e] = pair;
                    self.pair_edge[pair] = e;
                    return true;
                }
            }
        }
        false
    }

    fn push_pair(&mut self, p: Mask) -> bool {
        let idx = self.pairs.len();
        self.pairs.push(p);
        self.pair_edge.push(NONE);
        let lo = p.trailing_zeros() as usize;
        for &e in &self.incident[lo] {
            if self.edges[e] & p == p && self.owner[e] == NONE {
                self.owner[e] = idx;
                self.pair_edge[idx] = e;
                return true;
            }
        }
        self.seen.iter_mut().for_each(|s| *s = false);
        if self.try_assign(idx) {
            return true;
        }
        self.pairs.pop();
        self.pair_edge.pop();
        false
    }

    fn pop_pair(&mut self) {
        let e = self.pair_edge.pop().unwrap();
        self.owner[e] = NONE;
        self.pairs.pop();
    }

    fn path_at_least(&mut self, a: usize, b: usize, min_len: usize) -> bool {
        if min_len == 0 {
            return true;
        }
        if self.edges.len() < min_len || self.incident[a].is_empty() || self.incident[b].is_empty() {
            return false;
        }
        let eligible: Mask = (0..self.adj.len()).fold(0, |m, v| if self.incident[v].len() >= 2 { m | 1 << v } else { m });
        self.go(a, b, 1 << a, 0, min_len, eligible)
    }

    fn go(&mut self, cur: usize, b: usize, visited: Mask, len: usize, min_len: usize, eligible: Mask) -> bool {
        for w in bits(self.adj[cur] & !visited) {
            if w == b {
                if len + 1 >= min_len && self.push_pair(pair_mask(cur, b)) {
                    self.pop_pair();
                    return true;
                }
                continue;
            }
            if eligible >> w & 1 == 0 {
                continue;
            }
            let vis = visited | 1 << w;
            let r = reach(&self.adj, w, eligible & !vis | 1 << b);
            if r >> b & 1 == 0 || len + (r.count_ones() as usize) < min_len {
                continue;
            }
            if !self.push_pair(pair_mask(cur, w)) {
                continue;
            }
            let found = self.go(w, b, vis, len + 1, min_len, eligible);
            self.pop_pair();
            if found {
                return true;
            }
        }
        false
    }
}

/// Is there a Berge path from `a` to `b` of length at least `min_len`?
pub fn berge_path_at_least(n: usize, edges: &[Mask], a: usize, b: usize, min_len: usize) -> bool {
    BergePaths::new(n, edges).path_at_least(a, b, min_len)
}

fn shadow_adj(n: usize, family: &[Mask]) -> Vec<Mask> {
    let mut adj = vec![0; n];
    for &e in family {
        for v in bits(e) {
            adj[v] |= e & !(1 << v);
        }
    }
    adj
}

/// Can `c` join the free family `family` while keeping it free (and
/// Sperner, in mixed mode)?
pub fn is_addable(mode: Mode, n: usize, k: usize, family: &[Mask], c: Mask) -> bool {
    if family.contains(&c) {
        return false;
    }
    match mode {
        Mode::Uniform(2) => {
            let (a, b) = (c.trailing_zeros() as usize, 15 - c.leading_zeros() as usize);
            !graph_path_at_least(&shadow_adj(n, family), a, b, k - 1)
        }
        Mode::Uniform(_) => {
            let mut bp = BergePaths::new(n, family);
            let vs: Vec<usize> = bits(c).collect();
            !vs.iter().tuple_combinations().any(|(&a, &b)| bp.path_at_least(a, b, k - 1))
        }
        Mode::Mixed(_) => {
            let is_pair = c.count_ones() == 2;
            let sperner_ok = family.iter().all(|&f| {
                let f_pair = f.count_ones() == 2;
                match (is_pair, f_pair) {
                    (true, false) => f & c != c,
                    (false, true) => c & f != f,
                    _ => true,
                }
            });
            if !sperner_ok {
                return false;
            }
            let mut adj = shadow_adj(n, family);
            let vs: Vec<usize> = bits(c).collect();
            let new: Vec<(usize, usize)> =
                vs.iter().tuple_combinations().filter(|&(&a, &b)| adj[a] >> b & 1 == 0).map(|(&a, &b)| (a, b)).collect();
            for &(a, b) in &new {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
            new.iter().all(|&(a, b)| {
                adj[a] &= !(1 << b);
                adj[b] &= !(1 << a);
                let long = graph_path_at_least(&adj, a, b, k - 1);
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
                !long
            })
        }
    }
}

/// Members that may contain the new vertex `v = n - 1`.
fn link_candidates(mode: Mode, n: usize) -> Vec<Mask> {
    let v = n - 1;
    let sets = |size: usize| -> Vec<Mask> {
        (0..v).combinations(size - 1).map(|s| s.iter().fold(1 << v, |m, &u| m | 1 << u)).collect()
    };
    match mode {
        Mode::Uniform(r) => sets(r),
        Mode::Mixed(r) => {
            let mut c = sets(2);
            if r > 2 {
                c.extend(sets(r));
            }
            c
        }
    }
}

/// Enumerates all free families up to isomorphism, with a size threshold.
pub struct Enumerator<'m> {
    pub mode: Mode,
    pub k: usize,
    pub threads: usize,
    meter: &'m SharedMeter,
    cache: HashMap<(usize, i64), Vec<Vec<Mask>>>,
}

impl<'m> Enumerator<'m> {
    pub(crate) fn new(mode: Mode, k: usize, threads: usize, meter: &'m SharedMeter) -> Self {
        Enumerator {
            mode,
            k,
            threads: threads.max(1),
            meter,
            cache: HashMap::new(),
        }
    }

    /// Canonical codes of every free family on `n` vertices with at least
    /// `t` members, sorted. Incomplete when the meter runs out.
    pub fn dense(&mut self, n: usize, t: i64) -> Vec<Vec<Mask>> {
        let t = t.max(0);
        if let Some(hit) = self.cache.get(&(n, t)) {
            return hit.clone();
        }
        let out = if n == 0 {
            if t == 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        } else {
            let r = self.mode.max_size() as i64;
            let nn = n as i64;
            let t_prev = if nn > r { (t * (nn - r) + nn - 1) / nn } else { 0 };
            let base = self.dense(n - 1, t_prev);
            self.extend_all(n, &base, t)
        };
        self.cache.insert((n, t), out.clone());
        out
    }

    fn extend_all(&self, n: usize, base: &[Vec<Mask>], t: i64) -> Vec<Vec<Mask>> {
        let cands = link_candidates(self.mode, n);
        let found = Mutex::new(BTreeSet::new());
        let chunk = base.len().div_ceil(self.threads).max(1);
        std::thread::scope(|s| {
            for part in base.chunks(chunk) {
                let (cands, found) = (&cands, &found);
                s.spawn(move || {
                    let mut local = BTreeSet::new();
                    for h in part {
                        if self.meter.exhausted() {
                            break;
                        }
                        self.extend_one(n, h, t, cands, &mut local);
                    }
                    found.lock().unwrap().append(&mut local);
                });
            }
        });
        found.into_inner().unwrap().into_iter().collect()
    }

    fn extend_one(&self, n: usize, base: &[Mask], t: i64, cands: &[Mask], out: &mut BTreeSet<Vec<Mask>>) {
        let r = self.mode.max_size();
        let lo = (t - base.len() as i64).max(0) as usize;
        let hi = if n > r { r * base.len() / (n - r) } else { usize::MAX };
        if lo > hi {
            return;
        }
        let avail: Vec<Mask> = cands.iter().copied().filter(|&c| is_addable(self.mode, n, self.k, base, c)).collect();
        if avail.len() < lo {
            return;
        }
        let mut fam = base.to_vec();
        self.link_dfs(n, &mut fam, 0, &avail, lo, hi, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn link_dfs(
        &self,
        n: usize,
        fam: &mut Vec<Mask>,
        chosen: usize,
        avail: &[Mask],
        lo: usize,
        hi: usize,
        out: &mut BTreeSet<Vec<Mask>>,
    ) {
        if !self.meter.tick() {
            return;
        }
        if chosen >= lo && self.new_vertex_has_min_degree(n, fam, chosen) {
            out.insert(canonical_form(n, fam));
        }
        if chosen == hi {
            return;
        }
        for (i, &c) in avail.iter().enumerate() {
            if chosen + (avail.len() - i) < lo {
                break;
            }
            fam.push(c);
            let rest = &avail[i + 1..];
            let next: Vec<Mask> = if chosen + 1 + rest.len() >= lo {
                rest.iter().copied().filter(|&d| is_addable(self.mode, n, self.k, fam, d)).collect()
            } else {
                Vec::new()
            };
            if chosen + 1 + next.len() >= lo {
                self.link_dfs(n, fam, chosen + 1, &next, lo, hi, out);
            }
            fam.pop();
        }
    }

    fn new_vertex_has_min_degree(&self, n: usize, fam: &[Mask], d: usize) -> bool {
        let mut deg = vec![0usize; n];
        for &e in fam {
            for v in bits(e) {
                deg[v] += 1;
            }
        }
        deg[..n - 1].iter().all(|&x| x >= d)
    }
}
