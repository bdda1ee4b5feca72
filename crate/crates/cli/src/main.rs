//! `berge`: command-line front end for the Berge cycle toolkit.
//!
//! Exit codes: 0 success or claim holds, 1 claim violated, 2 usage or input
//! error, 3 search budget exhausted.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use berge_core::berge::{longest_berge_in, serialize_witness, verify_witness, SearchBudget, WitnessKind};
use berge_core::extremal::{
    build_construction41, build_construction42, build_construction63, build_from_spec, build_hnka, eval_f_graph,
    eval_fr, eval_fr_plus, eval_ur, recognize_extremal, BuiltConstruction, ConstructionSpec,
    ExtremalParams,
};
use berge_core::format::{parse_hypergraph, serialize_graph, serialize_hypergraph, serialize_mixed};
use berge_core::sdrp::{hall_check, max_sdrp, serialize_sdrp, Certification};
use berge_core::search::hunt::{random_hunt, HuntConfig};
use berge_core::search::report::ScanReport;
use berge_core::search::scan::{inequality_scan, Claim, ScanGrid};
use berge_core::search::{exact_eg_graph, exact_eg_hypergraph, exact_mixed, SearchConfig, SearchResult};
use berge_core::structure::{blocks, core, find_kopylov_set};
use berge_core::{Graph, Hypergraph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde_json::{json, Map, Value};

/// Inclusive integer range: `7`, `7..30`, `7..=30` or `..300`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct RangeArg {
    lo: Option<usize>,
    hi: usize,
}

impl FromStr for RangeArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad number {x:?} in range {s:?}"));
        match s.split_once("..") {
            None => {
                let v = num(s)?;
                Ok(RangeArg { lo: Some(v), hi: v })
            }
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                let lo = if a.is_empty() { None } else { Some(num(a)?) };
                let hi = num(b)?;
                if lo.is_some_and(|l| l > hi) {
                    return Err(format!("empty range {s:?}"));
                }
                Ok(RangeArg { lo, hi })
            }
        }
    }
}

impl RangeArg {
    fn single(self, flag: &str) -> Result<usize, Failure> {
        match self.lo {
            Some(lo) if lo == self.hi => Ok(lo),
            _ => Err(usage(format!("--{flag} takes a single value here"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    C41,
    C42,
    C63,
    Hnka,
    Chain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Graph,
    Hyper,
    Mixed,
}

#[derive(Parser, Debug)]
#[command(name = "berge", version, about = "Berge cycles, extremal constructions and desk-scale verification")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// Uniformity (single value or range for `table` and `scan`).
    #[arg(long, global = true)]
    r: Option<RangeArg>,
    /// Forbidden cycle length bound.
    #[arg(long, global = true)]
    k: Option<RangeArg>,
    /// Vertex count.
    #[arg(long, global = true)]
    n: Option<RangeArg>,
    /// Core size parameter for u_r columns.
    #[arg(long, global = true)]
    s: Option<RangeArg>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Lift the size caps of the exact searches.
    #[arg(long, global = true)]
    force: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tabulate f, f_r, f_r+ and u_r.
    Table,
    /// Build an extremal construction.
    Construct {
        #[arg(long = "type", value_enum)]
        kind: Option<Kind>,
        /// Parameter a of H(n,k,a).
        #[arg(long)]
        a: Option<usize>,
        /// Construction spec file (BLOCK/TREE/BLOWUP/KIND lines).
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Print the default spec instead of the edges.
        #[arg(long)]
        emit_spec: bool,
    },
    /// Longest Berge cycle, blocks and recognizer verdict of a hypergraph.
    Verify { file: PathBuf },
    /// Maximum shadow-distinct representative pair set.
    Sdrp { file: PathBuf },
    /// (alpha+1)-core of a graph.
    Core {
        #[arg(long)]
        alpha: usize,
        file: PathBuf,
    },
    /// Block decomposition of a graph (or of a hypergraph's 2-shadow).
    Blocks { file: PathBuf },
    /// Kopylov set of a 2-connected graph without long cycles.
    Kopylov { file: PathBuf },
    /// Random counterexample hunt one above the extremal bound.
    Hunt {
        /// Sample mixed families and test their 2-shadow.
        #[arg(long)]
        mixed: bool,
    },
    /// Exhaustive check of the binomial inequalities over a grid.
    Scan {
        /// Comma-separated claim names (default: all).
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
        /// Also evaluate k = r + 3, reporting failures as notes.
        #[arg(long)]
        include_k_r3: bool,
    },
    /// Exact extremal number by exhaustive enumeration.
    Search {
        #[arg(long, value_enum, default_value_t = SearchMode::Hyper)]
        mode: SearchMode,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<berge_core::Error> for Failure {
    fn from(e: berge_core::Error) -> Self {
        usage(e.to_string())
    }
}

/// What a command produced: its text output and exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    info!("configuration: {cli:?}");
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.opts.out {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let o = &cli.opts;
    match &cli.cmd {
        Cmd::Table => table(o),
        Cmd::Construct { kind, a, spec, emit_spec } => construct(o, *kind, *a, spec.as_ref(), *emit_spec),
        Cmd::Verify { file } => verify(o, file),
        Cmd::Sdrp { file } => sdrp(o, file),
        Cmd::Core { alpha, file } => core_cmd(o, *alpha, file),
        Cmd::Blocks { file } => blocks_cmd(o, file),
        Cmd::Kopylov { file } => kopylov(o, file),
        Cmd::Hunt { mixed } => hunt(o, *mixed),
        Cmd::Scan { claims, include_k_r3 } => scan(o, claims, *include_k_r3),
        Cmd::Search { mode } => search(o, *mode),
    }
}

fn need(arg: Option<RangeArg>, flag: &str) -> Result<usize, Failure> {
    arg.ok_or_else(|| usage(format!("--{flag} is required")))?.single(flag)
}

fn budget(o: &Opts) -> Result<SearchBudget, Failure> {
    let d = SearchBudget::default();
    Ok(SearchBudget::new(o.budget_nodes.unwrap_or(d.max_nodes), o.budget_seconds.unwrap_or(d.max_seconds))?)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_hypergraph(path: &PathBuf) -> Result<Hypergraph, Failure> {
    parse_hypergraph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &PathBuf) -> Result<Graph, Failure> {
    let h = read_hypergraph(path)?;
    if h.r() == 2 {
        Ok(Graph::from_hypergraph(&h)?)
    } else {
        Ok(h.shadow_graph())
    }
}

/// Renders `key value` records as TSV lines or as one JSON object.
fn records(o: &Opts, rows: Vec<(&str, Value)>) -> String {
    match o.format {
        Format::Tsv => {
            let mut s = String::new();
            for (k, v) in rows {
                let v = match v {
                    Value::String(x) => x,
                    other => other.to_string(),
                };
                writeln!(s, "{k}\t{v}").unwrap();
            }
            s
        }
        Format::Json => {
            let map: Map<String, Value> = rows.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            serde_json::to_string_pretty(&Value::Object(map)).unwrap() + "\n"
        }
    }
}

fn opt_num(v: berge_core::Result<u128>) -> Value {
    v.map_or(Value::Null, |x| json!(x as u64))
}

fn table(o: &Opts) -> Result<Output, Failure> {
    let rr = o.r.unwrap_or(RangeArg { lo: Some(3), hi: 3 });
    let kr = o.k.ok_or_else(|| usage("--k is required"))?;
    let nr = o.n.ok_or_else(|| usage("--n is required"))?;
    let mut rows: Vec<Value> = Vec::new();
    for r in rr.lo.unwrap_or(2)..=rr.hi {
        for k in kr.lo.unwrap_or(4)..=kr.hi {
            let t = (k - 1) / 2;
            let s_values: Vec<usize> = match o.s {
                Some(s) => (s.lo.unwrap_or(k - t)..=s.hi).collect(),
                None => (k.saturating_sub(t)..=k.saturating_sub(2)).collect(),
            };
            for n in nr.lo.unwrap_or(k).max(1)..=nr.hi {
                let q = ExtremalParams::new(n, k, r)?;
                let ur: Vec<Value> = s_values.iter().map(|&s| opt_num(eval_ur(n, k, r, s))).collect();
                rows.push(json!({
                    "n": n, "k": k, "r": r, "p": q.p, "m": q.m,
                    "f": opt_num(eval_f_graph(n, k)),
                    "f_r": opt_num(eval_fr(n, k, r)),
                    "f_r_plus": opt_num(eval_fr_plus(n, k, r)),
                    "eg_small_n": if n < k { json!(berge_core::binom::binom(n as u64, r as u64) as u64) } else { Value::Null },
                    "s": s_values,
                    "u_r": ur,
                }));
            }
        }
    }
    let text = match o.format {
        Format::Json => serde_json::to_string_pretty(&rows).unwrap() + "\n",
        Format::Tsv => {
            let cell = |v: &Value| if v.is_null() { "NA".to_string() } else { v.to_string() };
            let mut s = String::from("n\tk\tr\tp\tm\tf\tf_r\tf_r_plus\teg_small_n\tu_r\n");
            for row in &rows {
                let ur = row["s"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .zip(row["u_r"].as_array().unwrap())
                    .map(|(s, u)| format!("{s}:{}", cell(u)))
                    .collect::<Vec<_>>()
                    .join(",");
                let f = ["n", "k", "r", "p", "m", "f", "f_r", "f_r_plus", "eg_small_n"].map(|c| cell(&row[c]));
                writeln!(s, "{}\t{}", f.join("\t"), if ur.is_empty() { "NA".into() } else { ur }).unwrap();
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn construct(o: &Opts, kind: Option<Kind>, a: Option<usize>, spec_path: Option<&PathBuf>, emit_spec: bool) -> Result<Output, Failure> {
    let n = need(o.n, "n")?;
    let k = need(o.k, "k")?;
    if let Some(path) = spec_path {
        let spec = ConstructionSpec::parse(&read(path)?)?;
        let r = o.r.map_or(Ok(3), |x| x.single("r"))?;
        let q = ExtremalParams::new(n, k, r)?;
        return Ok(Output::ok(render_built(build_from_spec(&q, &spec)?)));
    }
    let kind = kind.ok_or_else(|| usage("--type or --spec is required"))?;
    let text = match kind {
        Kind::Hnka => serialize_graph(&build_hnka(n, k, a.ok_or_else(|| usage("--a is required for hnka"))?)?),
        Kind::Chain => serialize_graph(&berge_core::extremal::build_graph_clique_chain(n, k)?),
        _ => {
            let r = need(o.r, "r")?;
            let q = ExtremalParams::new(n, k, r)?;
            let spec = match kind {
                Kind::C41 => ConstructionSpec::default_c41(&q),
                Kind::C42 => ConstructionSpec::default_c42(&q),
                _ => ConstructionSpec::default_c63(&q),
            };
            if emit_spec {
                spec.serialize()
            } else {
                match kind {
                    Kind::C41 => serialize_hypergraph(&build_construction41(&q, None)?),
                    Kind::C42 => serialize_hypergraph(&build_construction42(&q, &spec)?),
                    _ => serialize_mixed(&build_construction63(&q, &spec)?),
                }
            }
        }
    };
    Ok(Output::ok(text))
}

fn render_built(b: BuiltConstruction) -> String {
    match b {
        BuiltConstruction::Graph(g) => serialize_graph(&g),
        BuiltConstruction::Hyper(h) => serialize_hypergraph(&h),
        BuiltConstruction::Mixed(m) => serialize_mixed(&m),
    }
}

fn verify(o: &Opts, file: &PathBuf) -> Result<Output, Failure> {
    let h = read_hypergraph(file)?;
    let k = need(o.k, "k")?;
    let res = longest_berge_in(h.n(), h.edges(), WitnessKind::Cycle, &budget(o)?, o.force)?;
    let len = res.length();
    let bd = blocks(&h.shadow_graph());
    let sizes: Vec<usize> = bd.blocks.iter().map(Vec::len).collect();
    let mut rows: Vec<(&str, Value)> = vec![
        ("n", json!(h.n())),
        ("r", json!(h.r())),
        ("edges", json!(h.len())),
        ("k", json!(k)),
        ("longest_berge_cycle", json!(len)),
        ("search_complete", json!(res.complete)),
        ("shadow_block_sizes", json!(sizes)),
        ("cut_vertices", json!(bd.cut_vertices)),
    ];
    if h.r() >= 3 {
        let rec = recognize_extremal(&h, k);
        rows.push(("verdict", json!(format!("{:?}", rec.verdict))));
        if !rec.evidence.notes.is_empty() {
            rows.push(("verdict_notes", json!(rec.evidence.notes.join("; "))));
        }
        if let Ok(f) = eval_fr(h.n(), k, h.r()) {
            rows.push(("f_r", json!(f as u64)));
            rows.push(("distance_from_f_r", json!(f as i64 - h.len() as i64)));
        }
    }
    let (status, code) = if len >= k {
        ("long cycle", 1)
    } else if !res.complete {
        ("undecided", 3)
    } else {
        ("free", 0)
    };
    rows.push(("status", json!(status)));
    let certificate = match res.witness.as_ref().filter(|_| len >= k) {
        Some(w) => {
            if !verify_witness(&h, w)?.is_valid() {
                return Err(usage("internal error: certificate failed verification"));
            }
            Some(serialize_witness(w))
        }
        None => None,
    };
    let text = match (o.format, certificate) {
        (Format::Json, Some(c)) => {
            rows.push(("certificate", json!(c)));
            records(o, rows)
        }
        (Format::Tsv, Some(c)) => records(o, rows) + "certificate\n" + &c,
        (_, None) => records(o, rows),
    };
    Ok(Output { text, code })
}

fn sdrp(o: &Opts, file: &PathBuf) -> Result<Output, Failure> {
    let h = read_hypergraph(file)?;
    let s = max_sdrp(&h);
    let hall = hall_check(&s.residual).holds();
    let cert = match s.certification {
        Certification::Exhaustive => "exhaustive",
        Certification::Unverified => "unverified",
    };
    let text = match o.format {
        Format::Tsv => format!("size\t{}\ncertification\t{cert}\nstrict_hall\t{hall}\n{}", s.size(), serialize_sdrp(&s)),
        Format::Json => records(
            o,
            vec![
                ("size", json!(s.size())),
                ("certification", json!(cert)),
                ("strict_hall", json!(hall)),
                ("sdrp", json!(serialize_sdrp(&s))),
            ],
        ),
    };
    Ok(Output {
        text,
        code: if hall { 0 } else { 1 },
    })
}

fn core_cmd(o: &Opts, alpha: usize, file: &PathBuf) -> Result<Output, Failure> {
    let g = read_graph(file)?;
    let c = core(&g, alpha);
    let order: Vec<String> = c.removal_order.iter().map(|(v, d)| format!("{v}:{d}")).collect();
    Ok(Output::ok(records(
        o,
        vec![("surviving", json!(join(&c.surviving))), ("removal_order", json!(order.join(" ")))],
    )))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn blocks_cmd(o: &Opts, file: &PathBuf) -> Result<Output, Failure> {
    let g = read_graph(file)?;
    let bd = blocks(&g);
    let list: Vec<String> = bd.blocks.iter().map(|b| join(b)).collect();
    let text = match o.format {
        Format::Tsv => {
            let mut s = format!("cut_vertices\t{}\n", join(&bd.cut_vertices));
            for b in &list {
                writeln!(s, "block\t{b}").unwrap();
            }
            s
        }
        Format::Json => records(o, vec![("cut_vertices", json!(bd.cut_vertices)), ("blocks", json!(bd.blocks))]),
    };
    Ok(Output::ok(text))
}

fn kopylov(o: &Opts, file: &PathBuf) -> Result<Output, Failure> {
    let g = read_graph(file)?;
    let k = need(o.k, "k")?;
    match find_kopylov_set(&g, k)? {
        Some(ks) => Ok(Output::ok(records(o, vec![("s", json!(ks.s)), ("set", json!(join(&ks.set)))]))),
        None => Ok(Output {
            text: records(o, vec![("status", json!("no Kopylov set found"))]),
            code: 1,
        }),
    }
}

fn report_output(o: &Opts, rep: &ScanReport) -> Output {
    let text = match o.format {
        Format::Tsv => rep.to_tsv(),
        Format::Json => rep.to_json(),
    };
    let code = if !rep.holds() {
        1
    } else if rep.undecided > 0 {
        3
    } else {
        0
    };
    Output { text, code }
}

fn hunt(o: &Opts, mixed: bool) -> Result<Output, Failure> {
    let cfg = HuntConfig {
        n: need(o.n, "n")?,
        k: need(o.k, "k")?,
        r: need(o.r, "r")?,
        trials: o.trials,
        seed: o.seed,
        mixed,
        threads: o.threads,
        budget: budget(o)?,
    };
    let rep = random_hunt(&cfg)?;
    info!("hunt finished in {:.2?}", rep.elapsed);
    if o.format == Format::Tsv {
        for v in &rep.violations {
            eprintln!("counterexample {}:\n{}", v.params, v.certificate.as_deref().unwrap_or(""));
        }
    }
    Ok(report_output(o, &rep))
}

fn scan(o: &Opts, claims: &[String], include_k_r3: bool) -> Result<Output, Failure> {
    let claims: Vec<Claim> = if claims.is_empty() {
        Claim::ALL.to_vec()
    } else {
        claims.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
    };
    let d = ScanGrid::default();
    let range = |a: Option<RangeArg>, def: (usize, usize)| a.map_or(def, |x| (x.lo.unwrap_or(def.0), x.hi));
    let grid = ScanGrid {
        r: range(o.r, d.r),
        k: range(o.k, d.k),
        n_max: o.n.map_or(d.n_max, |x| x.hi),
        include_k_r3,
    };
    let rep = inequality_scan(&claims, &grid);
    info!("scan finished in {:.2?}", rep.elapsed);
    Ok(report_output(o, &rep))
}

fn search_text<F>(o: &Opts, res: &SearchResult<F>, render: impl Fn(&F) -> String) -> String {
    match o.format {
        Format::Tsv => {
            let mut s = format!(
                "value\t{}\nexact\t{}\nnodes\t{}\nextremal\t{}\n",
                res.value,
                res.exact,
                res.nodes_expanded,
                res.extremal.len()
            );
            for (i, f) in res.extremal.iter().enumerate() {
                writeln!(s, "# extremal {}", i + 1).unwrap();
                s.push_str(&render(f));
            }
            s
        }
        Format::Json => records(
            o,
            vec![
                ("value", json!(res.value)),
                ("exact", json!(res.exact)),
                ("nodes", json!(res.nodes_expanded)),
                ("extremal", json!(res.extremal.iter().map(&render).collect::<Vec<_>>())),
            ],
        ),
    }
}

fn search(o: &Opts, mode: SearchMode) -> Result<Output, Failure> {
    let n = need(o.n, "n")?;
    let k = need(o.k, "k")?;
    let cfg = SearchConfig {
        budget: budget(o)?,
        threads: o.threads,
        force: o.force,
    };
    let (text, exact) = match mode {
        SearchMode::Graph => {
            let res = exact_eg_graph(n, k, &cfg)?;
            (search_text(o, &res, serialize_graph), res.exact)
        }
        SearchMode::Hyper => {
            let res = exact_eg_hypergraph(n, k, need(o.r, "r")?, &cfg)?;
            (search_text(o, &res, serialize_hypergraph), res.exact)
        }
        SearchMode::Mixed => {
            let res = exact_mixed(n, k, need(o.r, "r")?, &cfg)?;
            (search_text(o, &res, serialize_mixed), res.exact)
        }
    };
    Ok(Output {
        text,
        code: if exact { 0 } else { 3 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!("7".parse::<RangeArg>().unwrap(), RangeArg { lo: Some(7), hi: 7 });
        assert_eq!("7..30".parse::<RangeArg>().unwrap(), RangeArg { lo: Some(7), hi: 30 });
        assert_eq!("7..=30".parse::<RangeArg>().unwrap(), RangeArg { lo: Some(7), hi: 30 });
        assert_eq!("..300".parse::<RangeArg>().unwrap(), RangeArg { lo: None, hi: 300 });
        assert!("9..3".parse::<RangeArg>().is_err());
        assert!("x".parse::<RangeArg>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
