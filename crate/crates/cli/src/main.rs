use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use planar_turan::enumerate::{self, Constraints};
use planar_turan::extremal::{self, Budget, ExtremalResult, Method, Options, Report, Status};
use planar_turan::family::{self, ConstructionSpec};
use planar_turan::graph6::{decode, encode_graph6};
use planar_turan::pattern::Pattern;
use planar_turan::{planar, Error, Graph};

#[derive(Parser, Debug)]
#[command(name = "pturan", version, about = "Planar Turan numbers: constructions, exact search, verification")]
struct Cli {
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// cap on search work, in pattern-matcher nodes
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// print a plain-text rendering instead of JSON
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named construction, print it as graph6 and check its contract
    Construct(ConstructArgs),
    /// Test graphs for a pattern, printing a witness embedding if found
    Check(CheckArgs),
    /// Compute ex_P(n, H) exactly
    Ex(ExArgs),
    /// Enumerate graphs up to isomorphism as graph6, canonical order
    Enumerate(EnumerateArgs),
    /// Verify a registered theorem over a range of n
    Verify(VerifyArgs),
    /// Scan a conjecture for counterexamples
    Scan(ScanArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// witness id for `--family witness`
    #[arg(long)]
    id: Option<String>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// graph6/sparse6 string or a file of them, one per line (default: stdin)
    #[arg(long)]
    host: Option<String>,
    #[arg(long)]
    pattern: String,
    /// exit 1 unless every host is pattern-free
    #[arg(long)]
    expect_free: bool,
}

#[derive(Args, Debug)]
struct ExArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    pattern: String,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Filter,
    TriBb,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Filter => Method::Filter,
            MethodArg::TriBb => Method::TriBb,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Class {
    Graphs,
    Triangulations,
    Cubic,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    class: Class,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    min_degree: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    regular: Option<usize>,
    #[arg(long)]
    min_edges: Option<usize>,
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long)]
    planar: bool,
    #[arg(long)]
    connected: bool,
    /// keep only graphs free of a pattern, written `<pattern>-free`
    #[arg(long)]
    then_filter: Option<String>,
    /// print only the number of classes
    #[arg(long)]
    count: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long, default_value_t = 0)]
    from: usize,
    #[arg(long, default_value_t = 0)]
    to: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// largest n settled by exact search; above it, constructions certify
    #[arg(long, default_value_t = 10)]
    exact_limit: usize,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    conjecture: String,
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    #[arg(long)]
    k_from: Option<usize>,
    #[arg(long)]
    k_to: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Pass => 0,
        Status::Fail => EXIT_FAIL,
        Status::Budget => EXIT_BUDGET,
    }
}

fn exit_for_error(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::InvalidParameter(_) | Error::TooLarge { .. } | Error::Parse { .. } | Error::UnknownId(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    tool_version: &'static str,
    command: String,
    #[serde(flatten)]
    body: T,
}

fn emit_json<T: Serialize>(body: T) -> io::Result<()> {
    let doc = Envelope { tool_version: env!("CARGO_PKG_VERSION"), command: command_echo(), body };
    let text = serde_json::to_string_pretty(&doc).map_err(io::Error::other)?;
    writeln!(io::stdout().lock(), "{text}")
}

fn render_report(report: &Report) -> String {
    let mut out = String::new();
    for item in &report.items {
        let params: Vec<String> = item.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!(
            "{:<6} {} {} expected={} computed={} [{}] {}ms",
            format!("{:?}", item.status).to_uppercase(),
            item.id,
            params.join(","),
            item.expected.as_deref().unwrap_or("-"),
            item.computed.as_deref().unwrap_or("-"),
            item.method,
            item.runtime_ms,
        ));
        if let Some(note) = &item.note {
            out.push_str(&format!("  ({note})"));
        }
        out.push('\n');
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out.push_str(&format!("overall: {:?}{}\n", report.status(), if report.partial { " (partial)" } else { "" }));
    out
}

fn emit_report(mut report: Report, plain: bool) -> io::Result<u8> {
    report.tool_version = env!("CARGO_PKG_VERSION").to_string();
    report.command = command_echo();
    if plain {
        write!(io::stdout().lock(), "{}", render_report(&report))?;
    } else {
        let text = serde_json::to_string_pretty(&report).map_err(io::Error::other)?;
        writeln!(io::stdout().lock(), "{text}")?;
    }
    Ok(exit_for(report.status()))
}

fn read_hosts(host: Option<&str>) -> Result<Vec<Graph>, Error> {
    let lines: Vec<String> = match host {
        Some(h) if Path::new(h).is_file() => fs::read_to_string(h)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {h}: {e}")))?
            .lines()
            .map(str::to_string)
            .collect(),
        Some(h) => vec![h.to_string()],
        None => io::stdin()
            .lock()
            .lines()
            .collect::<io::Result<_>>()
            .map_err(|e| Error::InvalidParameter(format!("cannot read stdin: {e}")))?,
    };
    lines.iter().map(|l| l.trim()).filter(|l| !l.is_empty()).map(decode).collect()
}

#[derive(Serialize)]
struct ConstructOut {
    family: String,
    graph6: String,
    vertices: usize,
    edges: usize,
    contract: family::Contract,
    violations: Vec<String>,
}

fn run_construct(a: ConstructArgs, plain: bool) -> Result<u8, Error> {
    let spec = ConstructionSpec { family: a.family, n: a.n, k: a.k, l: a.l, r: a.r, m: a.m, s: a.s, id: a.id };
    let c = family::construct(&spec)?;
    let violations = c.violations()?;
    let g6 = encode_graph6(&c.graph);
    let code = if violations.is_empty() { 0 } else { EXIT_FAIL };
    if plain {
        println!("{g6}");
        eprintln!(
            "{spec}: {} vertices, {} edges, contract {}",
            c.graph.n(),
            c.graph.edge_count(),
            if violations.is_empty() { "holds".to_string() } else { format!("violated: {}", violations.join("; ")) }
        );
    } else {
        let out = ConstructOut {
            family: spec.to_string(),
            graph6: g6,
            vertices: c.graph.n(),
            edges: c.graph.edge_count(),
            contract: c.contract,
            violations,
        };
        emit_json(out).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    Ok(code)
}

#[derive(Serialize)]
struct CheckItem {
    host: String,
    vertices: usize,
    edges: usize,
    planar: bool,
    free: bool,
    /// image of each pattern vertex, when not free
    witness: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct CheckOut {
    pattern: String,
    results: Vec<CheckItem>,
}

fn run_check(a: CheckArgs, budget: &Budget, plain: bool) -> Result<u8, Error> {
    let p = Pattern::parse(&a.pattern)?;
    let mut results = Vec::new();
    for g in read_hosts(a.host.as_deref())? {
        let witness = budget.find(&g, &p)?;
        results.push(CheckItem {
            host: encode_graph6(&g),
            vertices: g.n(),
            edges: g.edge_count(),
            planar: planar::is_planar(&g),
            free: witness.is_none(),
            witness,
        });
    }
    let all_free = results.iter().all(|r| r.free);
    if plain {
        for r in &results {
            match &r.witness {
                None => println!("{} free=true", r.host),
                Some(w) => println!("{} free=false witness={w:?}", r.host),
            }
        }
    } else {
        emit_json(CheckOut { pattern: p.source().to_string(), results })
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    Ok(if a.expect_free && !all_free { EXIT_FAIL } else { 0 })
}

fn run_ex(a: ExArgs, budget: &Budget, plain: bool) -> Result<u8, Error> {
    let p = Pattern::parse(&a.pattern)?;
    let r: ExtremalResult = extremal::ex(a.n, &p, a.method.map(Method::from), budget)?;
    let problems = extremal::validate_result(&r, &p)?;
    if plain {
        println!("ex_P({}, {}) = {} [{}]", r.n, r.pattern, r.value, r.method.name());
        for w in &r.witnesses {
            println!("{w}");
        }
        for p in &problems {
            eprintln!("witness check: {p}");
        }
    } else {
        emit_json(&r).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    Ok(if problems.is_empty() { 0 } else { EXIT_FAIL })
}

fn run_enumerate(a: EnumerateArgs, budget: &Budget) -> Result<u8, Error> {
    let filter = a
        .then_filter
        .as_deref()
        .map(|f| {
            let body = f
                .strip_suffix("-free")
                .ok_or_else(|| Error::InvalidParameter(format!("--then-filter expects `<pattern>-free`, got `{f}`")))?;
            Pattern::parse(body)
        })
        .transpose()?;
    let graphs = match a.class {
        Class::Triangulations => enumerate::enumerate_triangulations(a.n)?,
        Class::Graphs | Class::Cubic => {
            let regular = if a.class == Class::Cubic { Some(3) } else { a.regular };
            let c = Constraints {
                min_degree: a.min_degree,
                max_degree: a.max_degree,
                regular,
                min_edges: a.min_edges,
                max_edges: a.max_edges,
                planar: a.planar,
                connected: a.connected,
                ..Constraints::new(a.n)
            };
            enumerate::enumerate_graphs(&c)?
        }
    };
    let mut kept = Vec::with_capacity(graphs.len());
    for g in graphs {
        let keep = match &filter {
            None => true,
            Some(p) => budget.find(&g, p)?.is_none(),
        };
        if keep {
            kept.push(encode_graph6(&g));
        }
    }
    let mut out = io::stdout().lock();
    let io_err = |e: io::Error| Error::InvalidParameter(e.to_string());
    if a.count {
        writeln!(out, "{}", kept.len()).map_err(io_err)?;
    } else {
        for g6 in &kept {
            writeln!(out, "{g6}").map_err(io_err)?;
        }
    }
    Ok(0)
}

fn run_verify(a: VerifyArgs, budget: &Budget, plain: bool) -> Result<u8, Error> {
    let opts = Options { method: a.method.map(Method::from), budget, exact_limit: a.exact_limit, k: a.k, t: a.t };
    let report = if a.theorem == "lemma88" {
        extremal::verify_theorem("lemma88", 8, 8, &opts)?
    } else {
        if a.from == 0 || a.to == 0 {
            return Err(Error::InvalidParameter("verify needs --from and --to".into()));
        }
        extremal::verify_theorem(&a.theorem, a.from, a.to, &opts)?
    };
    emit_report(report, plain).map_err(|e| Error::InvalidParameter(e.to_string()))
}

fn run_scan(a: ScanArgs, budget: &Budget, plain: bool) -> Result<u8, Error> {
    let opts = Options { method: a.method.map(Method::from), ..Options::new(budget) };
    let k_range = match (a.k_from, a.k_to) {
        (None, None) => None,
        (lo, hi) => Some((lo.unwrap_or(3), hi.unwrap_or(usize::MAX))),
    };
    let report = extremal::scan_conjecture(&a.conjecture, a.from, a.to, k_range, &opts)?;
    emit_report(report, plain).map_err(|e| Error::InvalidParameter(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    }
    let budget = cli.budget.map_or_else(Budget::unlimited, Budget::new);
    let result = match cli.command {
        Command::Construct(a) => run_construct(a, cli.plain),
        Command::Check(a) => run_check(a, &budget, cli.plain),
        Command::Ex(a) => run_ex(a, &budget, cli.plain),
        Command::Enumerate(a) => run_enumerate(a, &budget),
        Command::Verify(a) => run_verify(a, &budget, cli.plain),
        Command::Scan(a) => run_scan(a, &budget, cli.plain),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for_error(&e))
        }
    }
}
