//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All tolerances are exact (0).

use std::collections::BTreeMap;
use std::time::Instant;

use berge_core::berge::{berge_cycle_at_least, lift_to_berge, longest_graph_cycle, verify_witness};
use berge_core::berge::{SearchBudget, WitnessKind};
use berge_core::binom::binom;
use berge_core::extremal::{
    build_construction63, build_extremal, build_hnka, eval_f_graph, eval_fr, eval_fr_plus, recognize_extremal,
    ConstructionSpec, ExtremalParams, Verdict,
};
use berge_core::sdrp::{hall_check, max_sdrp};
use berge_core::search::canon;
use berge_core::search::hunt::{random_hunt, HuntConfig};
use berge_core::search::scan::{inequality_scan, Claim, ScanGrid};
use berge_core::search::{exact_eg_graph, exact_eg_hypergraph, exact_mixed, free_graphs, SearchConfig};
use berge_core::structure::{
    core, core_with_priority, find_kopylov_set, is_hamilton_connected, is_two_connected, shadow_inequality_check,
    Equality,
};
use berge_core::{Graph, Hypergraph, MixedHypergraph, Vertex};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn config() -> SearchConfig {
    SearchConfig {
        threads: threads(),
        ..SearchConfig::default()
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph_exactness() -> Outcome {
    let mut checked = 0;
    for n in 4..=9 {
        for k in 4..=n {
            let res = exact_eg_graph(n, k, &config()).map_err(|e| e.to_string())?;
            let f = eval_f_graph(n, k).unwrap() as usize;
            ensure(res.exact && res.value == f, || format!("EG({n},{k}) = {} (exact {}), formula {f}", res.value, res.exact))?;
            checked += 1;
        }
    }
    let res = exact_eg_graph(9, 5, &config()).map_err(|e| e.to_string())?;
    let target = build_hnka(9, 5, 2).unwrap();
    let iso = res.extremal.iter().any(|g| isomorphic(g, &target));
    ensure(iso, || "extremal list for (9,5) lacks H_{9,5,2}".into())?;
    Ok(format!("{checked} (n,k) pairs equal f(n,k); (9,5) list of {} contains H_9,5,2", res.extremal.len()))
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let code = |g: &Graph| {
        let masks: Vec<canon::Mask> = g.edges().iter().map(|&(u, v)| 1 << u | 1 << v).collect();
        canon::canonical_form(g.n(), &masks)
    };
    a.n() == b.n() && code(a) == code(b)
}

fn hypergraph_exactness() -> Outcome {
    let mut lines = Vec::new();
    for n in 7..=11 {
        let t = Instant::now();
        let res = exact_eg_hypergraph(n, 7, 3, &config()).map_err(|e| e.to_string())?;
        if !res.exact {
            lines.push(format!("n={n} budget exhausted (excluded)"));
            continue;
        }
        let f = eval_fr(n, 7, 3).unwrap() as usize;
        ensure(res.value == f, || format!("EG_3({n},7) = {} but f_r = {f}", res.value))?;
        for h in &res.extremal {
            let rec = recognize_extremal(h, 7);
            ensure(rec.verdict != Verdict::Neither, || {
                format!("n={n}: extremal instance not recognized: {:?}", rec.evidence.notes)
            })?;
        }
        lines.push(format!("n={n}: {f} ({} extremal, {:.1?})", res.extremal.len(), t.elapsed()));
    }
    for n in 7..=9 {
        let eg = exact_eg_hypergraph(n, 7, 3, &config()).unwrap().value;
        let mr = exact_mixed(n, 7, 3, &config()).map_err(|e| e.to_string())?;
        ensure(mr.exact && eg <= mr.value, || format!("n={n}: EG_r = {eg} > m_r = {}", mr.value))?;
        lines.push(format!("m_3({n},7)={}", mr.value));
    }
    Ok(lines.join("; "))
}

fn construction_agreement() -> Outcome {
    let exact = SearchBudget::unlimited();
    let (mut builds, mut exact_checks) = (0, 0);
    for r in 3..=5 {
        for k in r + 4..=r + 10 {
            for n in k..=200 {
                let q = ExtremalParams::new(n, k, r).unwrap();
                let h = build_extremal(&q).map_err(|e| format!("{n},{k},{r}: {e}"))?;
                let f = eval_fr(n, k, r).unwrap() as usize;
                ensure(h.len() == f, || format!("({n},{k},{r}): built {} edges, f_r = {f}", h.len()))?;
                let m = build_construction63(&q, &ConstructionSpec::default_c63(&q)).map_err(|e| e.to_string())?;
                let fp = eval_fr_plus(n, k, r).unwrap() as usize;
                ensure(m.size() == fp, || format!("({n},{k},{r}): mixed build {} members, f_r+ = {fp}", m.size()))?;
                let (cycle, complete) = berge_cycle_at_least(n, h.edges(), k, &exact);
                ensure(cycle.is_none() && complete, || format!("({n},{k},{r}): Berge cycle of length >= k"))?;
                if n <= 15 {
                    let l = berge_core::berge::longest_berge_in(n, h.edges(), WitnessKind::Cycle, &exact, true)
                        .map_err(|e| e.to_string())?;
                    ensure(l.complete && l.length() < k, || format!("({n},{k},{r}): longest Berge cycle {}", l.length()))?;
                    let s = longest_graph_cycle(&m.shadow_graph(), &exact).map_err(|e| e.to_string())?;
                    ensure(s.complete && s.length < k, || format!("({n},{k},{r}): shadow cycle {}", s.length))?;
                    exact_checks += 1;
                }
                builds += 1;
            }
        }
    }
    Ok(format!("{builds} parameter triples match f_r and f_r+; {exact_checks} exact cycle checks with n <= 15"))
}

fn inequality_suite() -> Outcome {
    let rep = inequality_scan(&Claim::ALL, &ScanGrid::default());
    ensure(rep.holds(), || format!("{} violations, first {:?}", rep.violations.len(), rep.violations.first()))?;
    Ok(format!("{} checks over {} claims, 0 violations", rep.checked, rep.claims.len()))
}

fn hunts() -> Outcome {
    let mut parts = Vec::new();
    for (n, k, r) in [(10, 7, 3), (12, 7, 3), (12, 8, 4)] {
        for mixed in [false, true] {
            let cfg = HuntConfig {
                n,
                k,
                r,
                trials: 10_000,
                seed: 42,
                mixed,
                threads: threads(),
                budget: SearchBudget::default(),
            };
            let rep = random_hunt(&cfg).map_err(|e| e.to_string())?;
            let tag = format!("({n},{k},{r}{})", if mixed { " mixed" } else { "" });
            ensure(rep.holds(), || format!("{tag}: {} counterexamples", rep.violations.len()))?;
            parts.push(format!("{tag} {} checked/{} undecided", rep.checked, rep.undecided));
        }
    }
    Ok(parts.join("; "))
}

fn kopylov_sweep() -> Result<String, String> {
    let mut count = 0;
    for k in [5, 6] {
        for n in k..=9 {
            let (graphs, complete) = free_graphs(n, k, n, &config()).map_err(|e| e.to_string())?;
            ensure(complete, || "enumeration incomplete".into())?;
            for g in graphs.iter().filter(|g| is_two_connected(g)) {
                let ks = find_kopylov_set(g, k).map_err(|e| e.to_string())?;
                ensure(ks.is_some(), || format!("no Kopylov set for n={n} k={k}: {:?}", g.edges()))?;
                count += 1;
            }
        }
    }
    Ok(format!("Kopylov sets on {count} 2-connected graphs"))
}

fn hall_holds(h: &Hypergraph) -> Result<(), String> {
    let s = max_sdrp(h);
    ensure(hall_check(&s.residual).holds(), || format!("Hall fails on residual of {:?}", h.edges()))?;
    s.verify(h)
}

fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Hypergraph {
    let p: f64 = rng.gen_range(0.05..0.9);
    let edges: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(r).filter(|_| rng.gen_bool(p)).collect();
    Hypergraph::new(n, r, edges).unwrap()
}

fn hall_sweep() -> Result<String, String> {
    let mut count = 0;
    for r in 3..=4 {
        for n in r..=5 {
            let all: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(r).collect();
            for bits in 0u32..1 << all.len() {
                let edges = (0..all.len()).filter(|i| bits >> i & 1 == 1).map(|i| all[i].clone());
                hall_holds(&Hypergraph::new(n, r, edges).unwrap())?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for _ in 0..10_000 {
        let n = rng.gen_range(4..=9);
        let r = rng.gen_range(3..=4.min(n - 1));
        hall_holds(&random_hypergraph(&mut rng, n, r))?;
    }
    Ok(format!("Hall on {count} exhaustive + 10000 random residuals"))
}

fn lift_sweep() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut done = 0;
    let exact = SearchBudget::unlimited();
    while done < 1000 {
        let n = rng.gen_range(4..=10);
        let h = random_hypergraph(&mut rng, n, 3);
        let s = max_sdrp(&h);
        let a = Graph::new(n, s.pairs.clone()).map_err(|e| e.to_string())?;
        let m = MixedHypergraph::new(a, s.residual.clone()).map_err(|e| e.to_string())?;
        let keep: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.8)).collect();
        let g = m.shadow_graph();
        let sub = Graph::new(n, g.edges().iter().copied().filter(|&(u, v)| keep[u as usize] && keep[v as usize])).unwrap();
        let cyc = longest_graph_cycle(&sub, &exact).map_err(|e| e.to_string())?;
        if cyc.length < 3 {
            continue;
        }
        let reps: BTreeMap<_, _> = s.representative_map();
        let w = lift_to_berge(&m, &reps, &cyc.cycle).map_err(|e| format!("lift failed: {e}"))?;
        ensure(w.base == cyc.cycle, || "lift changed the base vertices".into())?;
        ensure(verify_witness(&h, &w).map_err(|e| e.to_string())?.is_valid(), || "lifted witness invalid".into())?;
        done += 1;
    }
    Ok("1000 lifts verified".into())
}

fn shadow_inequality_sweep() -> Result<String, String> {
    let mut count = 0u64;
    for w in 3..=6 {
        let all: Vec<Vec<Vertex>> = (0..w as Vertex).combinations(3).collect();
        let complete = all.len();
        for bits in 0u32..1 << complete {
            let edges = (0..complete).filter(|i| bits >> i & 1 == 1).map(|i| all[i].clone());
            let h = Hypergraph::new(w, 3, edges).unwrap();
            let c = shadow_inequality_check(&h, w).map_err(|e| e.to_string())?;
            ensure(c.holds, || format!("violated on {:?}", h.edges()))?;
            let equal = c.lhs == c.bound;
            let predicted = (h.len() == complete && w >= 5) || (h.is_empty() && w <= 5);
            ensure(equal == predicted && c.equality != Equality::Unclassified, || {
                format!("equality misclassified for w={w}: {:?}", h.edges())
            })?;
            count += 1;
        }
    }
    Ok(format!("shadow inequality on {count} 3-graphs"))
}

/// Independent check by trying every vertex order.
fn brute_hamilton_connected(g: &Graph) -> bool {
    let n = g.n() as Vertex;
    (0..n).tuple_combinations().all(|(x, y)| {
        (0..n).permutations(n as usize).any(|p| {
            p[0] == x && p[n as usize - 1] == y && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
        })
    })
}

fn hamilton_sweep() -> Result<String, String> {
    let (mut count, mut exceptions) = (0, 0);
    let mut counterexamples = Vec::new();
    for n in 4..=8 {
        let threshold = binom(n as u64 - 1, 2) as usize + 2;
        let (graphs, complete) = free_graphs(n, n + 1, threshold, &config()).map_err(|e| e.to_string())?;
        ensure(complete, || "enumeration incomplete".into())?;
        for g in graphs.iter().filter(|g| g.degrees().iter().all(|&d| d >= 2)) {
            let rep = is_hamilton_connected(g, false).map_err(|e| e.to_string())?;
            ensure(rep.hamilton_connected == brute_hamilton_connected(g), || {
                format!("hamilton-connectivity wrong on {:?}", g.edges())
            })?;
            if rep.exception_shape {
                ensure(!rep.hamilton_connected, || format!("exception shape is hamilton-connected: {:?}", g.edges()))?;
                exceptions += 1;
            } else if !rep.hamilton_connected {
                counterexamples.push(format!("n={n} e={} edges {:?}", g.len(), g.edges()));
            }
            count += 1;
        }
    }
    ensure(exceptions == 5, || format!("expected one exception shape per n, found {exceptions}"))?;
    ensure(counterexamples.is_empty(), || {
        format!(
            "Hamilton lemma: {} graph(s) with delta >= 2 and e >= C(n-1,2)+2 are neither hamilton-connected \
             nor of the exception shape: {}",
            counterexamples.len(),
            counterexamples.join(", ")
        )
    })?;
    Ok(format!("Hamilton lemma on {count} graphs ({exceptions} exception shapes)"))
}

fn core_sweep() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    for _ in 0..50 {
        let n = rng.gen_range(5..=14);
        let p: f64 = rng.gen_range(0.1..0.7);
        let edges: Vec<(Vertex, Vertex)> =
            (0..n as Vertex).tuple_combinations().filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::new(n, edges).unwrap();
        let alpha = rng.gen_range(1..=4);
        let reference = core(&g, alpha).surviving;
        for _ in 0..100 {
            let mut order: Vec<Vertex> = (0..n as Vertex).collect();
            order.shuffle(&mut rng);
            ensure(core_with_priority(&g, alpha, &order).surviving == reference, || {
                format!("core depends on order for {:?}", g.edges())
            })?;
        }
    }
    Ok("core order-independent on 50 graphs x 100 orders".into())
}

/// Runs every sub-check even after a failure so the report is complete.
fn proof_tools() -> Outcome {
    let results = [
        kopylov_sweep(),
        hall_sweep(),
        lift_sweep(),
        shadow_inequality_sweep(),
        hamilton_sweep(),
        core_sweep(),
    ];
    let failures: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    let passes: Vec<&String> = results.iter().filter_map(|r| r.as_ref().ok()).collect();
    let passes = passes.iter().map(|s| s.as_str()).join("; ");
    if failures.is_empty() {
        Ok(passes)
    } else {
        Err(format!("{} | passing: {passes}", failures.iter().map(|s| s.as_str()).join(" | ")))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("1 graph-case exactness", graph_exactness),
        ("2 hypergraph-case exactness", hypergraph_exactness),
        ("3 construction/formula agreement", construction_agreement),
        ("4 inequality suite", inequality_suite),
        ("5 theorem property hunts", hunts),
        ("6 proof-tool invariants", proof_tools),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("PASS criterion {name} [{:.1?}]: {detail}", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} [{:.1?}]: {why}", t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
