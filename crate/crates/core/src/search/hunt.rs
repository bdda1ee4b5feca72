//! Seeded random search for counterexamples to the upper bounds.

use std::sync::Mutex;
use std::time::Instant;

use itertools::Itertools;
use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::report::{ClaimSummary, ScanReport, Violation};
use crate::berge::{berge_cycle_at_least, longest_graph_cycle, verify_witness, SearchBudget};
use crate::binom::binom;
use crate::error::{Error, Result};
use crate::extremal::{eval_fr, eval_fr_plus};
use crate::format::{serialize_hypergraph, serialize_mixed};
use crate::hypergraph::{Edge, Graph, Hypergraph, MixedHypergraph, Vertex};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntConfig {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub trials: u64,
    pub seed: u64,
    pub mixed: bool,
    pub threads: usize,
    /// Budget for each individual cycle search.
    pub budget: SearchBudget,
}

enum Trial {
    Holds,
    Undecided,
    Counterexample(Violation),
}

/// Trial `i` draws from its own ChaCha stream, so results do not depend on
/// how trials are spread over threads.
fn trial_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Uniform r-graph on `[n]` with exactly `size` edges.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, r: usize, size: usize) -> Hypergraph {
    let all: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(r).collect();
    let picked = index::sample(rng, all.len(), size);
    Hypergraph::new(n, r, picked.into_iter().map(|i| all[i].clone())).expect("distinct edges")
}

/// Mixed family with `size` members: pairs and r-sets are visited in a
/// random order and kept whenever the Sperner condition allows.
pub fn random_mixed(rng: &mut ChaCha8Rng, n: usize, r: usize, size: usize) -> MixedHypergraph {
    let mut pool: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(2).collect();
    pool.extend((0..n as Vertex).combinations(r));
    pool.shuffle(rng);
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut hyper: Vec<Edge> = Vec::new();
    for s in pool {
        if pairs.len() + hyper.len() == size {
            break;
        }
        let e = Edge::new(s).unwrap();
        if e.len() == 2 {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            if !hyper.iter().any(|h| h.contains_pair(a, b)) {
                pairs.push((a, b));
            }
        } else if !pairs.iter().any(|&(a, b)| e.contains_pair(a, b)) {
            hyper.push(e);
        }
    }
    let hyper: Vec<Vec<Vertex>> = hyper.into_iter().map(Vec::from).collect();
    MixedHypergraph::new(Graph::new(n, pairs).unwrap(), Hypergraph::new(n, r, hyper).unwrap()).unwrap()
}

fn run_uniform(cfg: &HuntConfig, size: usize, i: u64) -> Trial {
    let mut rng = trial_rng(cfg.seed, i);
    let h = random_hypergraph(&mut rng, cfg.n, cfg.r, size);
    match berge_cycle_at_least(cfg.n, h.edges(), cfg.k, &cfg.budget) {
        (Some(w), _) => {
            assert!(verify_witness(&h, &w).map(|c| c.is_valid()).unwrap_or(false), "search returned an invalid witness");
            Trial::Holds
        }
        (None, false) => Trial::Undecided,
        (None, true) => Trial::Counterexample(Violation {
            claim: "berge-cycle".into(),
            params: format!("n={} k={} r={} seed={} trial={i}", cfg.n, cfg.k, cfg.r, cfg.seed),
            lhs: format!("e(H)={size}"),
            rhs: "no Berge cycle of length >= k".into(),
            certificate: Some(serialize_hypergraph(&h)),
        }),
    }
}

fn run_mixed(cfg: &HuntConfig, size: usize, i: u64) -> Trial {
    let mut rng = trial_rng(cfg.seed, i);
    let m = random_mixed(&mut rng, cfg.n, cfg.r, size);
    if m.size() < size {
        return Trial::Undecided;
    }
    let shadow = m.shadow_graph();
    match longest_graph_cycle(&shadow, &cfg.budget) {
        Ok(res) if res.length >= cfg.k => {
            let closed = res.cycle.iter().circular_tuple_windows().all(|(&a, &b)| shadow.has_edge(a, b));
            assert!(closed && res.cycle.iter().all_unique(), "search returned an invalid shadow cycle");
            Trial::Holds
        }
        Ok(res) if res.complete => Trial::Counterexample(Violation {
            claim: "shadow-cycle".into(),
            params: format!("n={} k={} r={} seed={} trial={i}", cfg.n, cfg.k, cfg.r, cfg.seed),
            lhs: format!("|M|={size}"),
            rhs: format!("longest shadow cycle {}", res.length),
            certificate: Some(serialize_mixed(&m)),
        }),
        _ => Trial::Undecided,
    }
}

/// Samples families with one member more than the extremal bound and checks
/// each contains the promised long cycle.
pub fn random_hunt(cfg: &HuntConfig) -> Result<ScanReport> {
    if cfg.trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let started = Instant::now();
    let bound = if cfg.mixed { eval_fr_plus(cfg.n, cfg.k, cfg.r)? } else { eval_fr(cfg.n, cfg.k, cfg.r)? };
    let size = bound as usize + 1;
    let room = binom(cfg.n as u64, cfg.r as u64) + if cfg.mixed { binom(cfg.n as u64, 2) } else { 0 };
    if size as u128 > room {
        return Err(Error::Domain(format!("bound + 1 = {size} exceeds the {room} available members")));
    }
    let claim = if cfg.mixed { "shadow-cycle" } else { "berge-cycle" };
    let mut report = ScanReport::new(format!(
        "n={} k={} r={} trials={} seed={} mode={} size={size}",
        cfg.n,
        cfg.k,
        cfg.r,
        cfg.trials,
        cfg.seed,
        if cfg.mixed { "mixed" } else { "uniform" }
    ));
    let threads = cfg.threads.max(1) as u64;
    let outcomes = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for t in 0..threads {
            let outcomes = &outcomes;
            s.spawn(move || {
                let mut local = Vec::new();
                let mut i = t;
                while i < cfg.trials {
                    let res = if cfg.mixed { run_mixed(cfg, size, i) } else { run_uniform(cfg, size, i) };
                    local.push((i, res));
                    i += threads;
                }
                outcomes.lock().unwrap().extend(local);
            });
        }
    });
    let mut outcomes = outcomes.into_inner().unwrap();
    outcomes.sort_by_key(|(i, _)| *i);
    let mut summary = ClaimSummary {
        claim: claim.into(),
        ..Default::default()
    };
    for (_, o) in outcomes {
        match o {
            Trial::Holds => summary.checked += 1,
            Trial::Undecided => report.undecided += 1,
            Trial::Counterexample(v) => {
                summary.checked += 1;
                summary.violations += 1;
                report.violations.push(v);
            }
        }
    }
    report.checked = summary.checked;
    report.claims.push(summary);
    if cfg.mixed {
        report.notes.push("mixed families drawn by Sperner-filtered random order, not uniformly".into());
    }
    report.elapsed = started.elapsed();
    Ok(report)
}
