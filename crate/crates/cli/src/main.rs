use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use frobcode::code::{build_code, LinearCode};
use frobcode::codefile::parse_code_file;
use frobcode::dual::dual_pipeline;
use frobcode::graph::{equivalence_check, SrgParams};
use frobcode::report::{code_report, graph_report, ring_report, Report};
use frobcode::ring::DEFAULT_ORDER_CAP;
use frobcode::search::{search, SearchMode, SearchSpec};
use frobcode::verify::{verify_ring, VerifyOptions};
use frobcode::{build_ring_with_cap, Error, RingSpec, WeightTable};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for failed mathematics, 2 for bad input.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                Error::Character(_)
                | Error::Axiom(_)
                | Error::NonConstantRemainder { .. }
                | Error::Inconsistent(_)
                | Error::NonInteger { .. },
            ) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Homogeneous weights and two-weight codes over finite Frobenius rings.
#[derive(Parser, Debug)]
#[command(name = "frobcode", version)]
struct Cli {
    /// Enumeration cap for codes and ambient spaces.
    #[arg(long, global = true, env = "FROBCODE_CAP", default_value_t = frobcode::code::DEFAULT_ENUM_CAP)]
    cap: usize,

    /// Largest ring order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,

    /// Write the JSON report here (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,

    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ring summary, weight table and zero set.
    Ring {
        spec: String,
        /// Replace the character by k times the structural one.
        #[arg(long, value_name = "K")]
        character_scale: Option<u32>,
    },
    /// Weight table, one element per line.
    Weights { spec: String },
    /// Run the identity suite on a ring.
    Verify(VerifyArgs),
    /// Weight distribution, modularity and two-weight profile of a code file.
    Analyze { file: PathBuf },
    /// The coset graph of a two-weight code.
    Graph {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Print measured and predicted parameters.
        #[arg(long)]
        cert: bool,
    },
    /// The dual two-weight code and its certificates.
    Dual { file: PathBuf },
    /// Search for modular codes, e.g. `search GF(3) k=2 n_max=4`.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    spec: String,
    /// Exhaustive wherever the budget allows (default).
    #[arg(long, conflicts_with = "sample")]
    full: bool,
    /// Sample N cases per check instead.
    #[arg(long, value_name = "N")]
    sample: Option<usize>,
    /// Add `DELTA/denominator` to the weight of element ELEM before checking.
    #[arg(long, hide = true, value_name = "ELEM[:DELTA]")]
    inject_fault: Option<String>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    spec: String,
    /// `k=<int>` and `n_max=<int>`.
    #[arg(value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Index-1 codes only.
    #[arg(long)]
    index1: bool,
    /// Largest multiplicity of a single point.
    #[arg(long, value_name = "M")]
    mult_cap: Option<usize>,
    /// Drop candidates with equal column multisets.
    #[arg(long)]
    dedupe: bool,
}

struct Ctx {
    cap: usize,
    order_cap: usize,
    seed: u64,
}

impl Ctx {
    fn weights(&self, spec: &str) -> Result<Arc<WeightTable>> {
        let spec: RingSpec = spec.parse()?;
        let ring = build_ring_with_cap(&spec, self.order_cap)?;
        Ok(Arc::new(WeightTable::new(Arc::new(ring))?))
    }

    fn code(&self, path: &Path) -> Result<LinearCode> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file = parse_code_file(&text, self.order_cap)?;
        let wt = Arc::new(WeightTable::new(Arc::new(file.ring))?);
        Ok(build_code(&wt, &file.rows, self.cap)?)
    }
}

fn tuple(p: &Option<SrgParams>) -> String {
    match p {
        Some(p) => format!("({}, {}, {}, {})", p.n, p.k, p.lambda, p.mu),
        None => "none".to_string(),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn json(rep: &Report) -> String {
    serde_json::to_string_pretty(rep).expect("reports serialize") + "\n"
}

fn cmd_ring(ctx: &Ctx, spec: &str, scale: Option<u32>) -> Result<(Report, String)> {
    let wt = match scale {
        None => ctx.weights(spec)?,
        Some(k) => {
            let parsed: RingSpec = spec.parse()?;
            let ring = build_ring_with_cap(&parsed, ctx.order_cap)?;
            let ch = ring.character().scaled(k);
            Arc::new(WeightTable::new(Arc::new(ring.with_character(ch)?))?)
        }
    };
    let r = ring_report(&wt);
    let mut out = String::new();
    let _ = writeln!(out, "ring {}", r.spec);
    let _ = writeln!(
        out,
        "order {}, units {}, exponent {}, {}",
        r.order,
        r.units,
        r.exponent,
        if r.commutative { "commutative" } else { "noncommutative" }
    );
    let _ = writeln!(out, "S0 = {{{}}}", r.s0.join(", "));
    let _ = writeln!(out, "zero set: {}", verdict(r.zero_set));
    let _ = writeln!(out, "coset sums: {}", verdict(r.coset_sums));
    let _ = writeln!(out, "weights:");
    for e in &r.weights {
        let _ = writeln!(out, "  {}  {}", e.element, e.weight);
    }
    let mut rep = Report::new("ring");
    rep.ring = Some(r);
    Ok((rep, out))
}

fn cmd_weights(ctx: &Ctx, spec: &str) -> Result<(Report, String)> {
    let (rep, _) = cmd_ring(ctx, spec, None)?;
    let mut out = String::new();
    for e in &rep.ring.as_ref().expect("ring section").weights {
        let _ = writeln!(out, "{} {}", e.element, e.weight);
    }
    let mut rep = rep;
    rep.command = "weights".into();
    Ok((rep, out))
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Result<(Report, String)> {
    let wt = ctx.weights(&args.spec)?;
    let wt = match &args.inject_fault {
        None => wt,
        Some(f) => {
            let (elem, delta) = match f.split_once(':') {
                Some((e, d)) => (e, d.parse::<i64>().map_err(|_| CliError::Usage(format!("bad fault delta `{d}`")))?),
                None => (f.as_str(), 1),
            };
            let x = wt.ring().parse_elem(elem).map_err(CliError::Usage)?;
            Arc::new(wt.with_fault(x, delta))
        }
    };
    let opts = VerifyOptions {
        full: args.sample.is_none(),
        samples: args.sample.unwrap_or(VerifyOptions::default().samples),
        seed: ctx.seed,
        ..VerifyOptions::default()
    };
    let v = verify_ring(&wt, &opts)?;
    let mut out = String::new();
    let _ = writeln!(out, "verify {} (order {}, {} units)", v.ring, v.order, v.units);
    for c in &v.checks {
        let mode = if c.cases == 0 && c.note.is_some() {
            "skipped"
        } else if c.cases == 0 {
            "vacuous"
        } else if c.exhaustive {
            "exhaustive"
        } else {
            "sampled"
        };
        let _ = writeln!(out, "{} {} [{} cases, {mode}]", verdict(c.passed), c.name, c.cases);
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "    witness: {w}");
        }
        if let Some(n) = &c.note {
            let _ = writeln!(out, "    note: {n}");
        }
    }
    let mut rep = Report::new("verify");
    rep.verify = Some(v);
    Ok((rep, out))
}

fn cmd_analyze(ctx: &Ctx, file: &Path) -> Result<(Report, String)> {
    let code = ctx.code(file)?;
    let mut rep = Report::new("analyze");
    rep.code = Some(code_report(&code, ctx.seed)?);
    let out = json(&rep.clone().settle());
    Ok((rep, out))
}

fn cmd_graph(ctx: &Ctx, file: &Path, dot: Option<&Path>, cert: bool) -> Result<(Report, String)> {
    let code = ctx.code(file)?;
    let (g, text) = graph_report(&code)?;
    if let Some(path) = dot {
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    let mut out = String::new();
    let _ = writeln!(out, "vertices {}, edges {}", g.vertices, g.edges);
    if cert {
        let _ = writeln!(out, "measured  {}", tuple(&g.measured));
        let _ = writeln!(out, "predicted {}", tuple(&g.predicted));
        if let Some(e) = &g.predicted_error {
            let _ = writeln!(out, "prediction error: {e}");
        }
        let trivial = g.measured.as_ref().map(|m| m.trivial).unwrap_or(false);
        let _ = writeln!(out, "trivial {trivial}");
        if let Some(c) = g.coclique {
            let _ = writeln!(out, "coclique structure: {}", verdict(c));
        }
        let _ = writeln!(out, "{}", verdict(g.passed()));
    }
    let mut rep = Report::new("graph");
    rep.graph = Some(g);
    if code.zero_class().len() == 1 && frobcode::code::modular_index(&code).is_some() {
        rep.equivalence = Some(equivalence_check(&code)?);
    }
    Ok((rep, out))
}

fn cmd_dual(ctx: &Ctx, file: &Path) -> Result<(Report, String)> {
    let code = ctx.code(file)?;
    let mut rep = Report::new("dual");
    rep.dual = Some(dual_pipeline(&code, ctx.cap, ctx.seed)?);
    let out = json(&rep.clone().settle());
    Ok((rep, out))
}

fn search_spec(ctx: &Ctx, args: &SearchArgs) -> Result<SearchSpec> {
    let (mut k, mut n_max, mut mult_cap) = (2usize, 4usize, args.mult_cap);
    for p in &args.params {
        let (key, value) = p
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected KEY=VALUE, got `{p}`")))?;
        let v: usize = value
            .parse()
            .map_err(|_| CliError::Usage(format!("`{key}` needs a non-negative integer, got `{value}`")))?;
        match key {
            "k" => k = v,
            "n" | "n_max" => n_max = v,
            "mult_cap" => mult_cap = Some(v),
            _ => return Err(CliError::Usage(format!("unknown search parameter `{key}`"))),
        }
    }
    if k == 0 || n_max == 0 {
        return Err(CliError::Usage("k and n_max must be positive".into()));
    }
    Ok(SearchSpec {
        k,
        n_max,
        mode: if args.index1 {
            SearchMode::Index1
        } else {
            SearchMode::Grid {
                mult_cap: mult_cap.unwrap_or(n_max),
            }
        },
        dedupe: args.dedupe,
        seed: ctx.seed,
        cap: ctx.cap,
    })
}

fn cmd_search(ctx: &Ctx, args: &SearchArgs) -> Result<(Report, String)> {
    let wt = ctx.weights(&args.spec)?;
    let spec = search_spec(ctx, args)?;
    let s = search(&wt, &spec)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "search {} k={} n_max={}: {} points, {} candidates, {} two-weight ({} nontrivial), {} other modular",
        s.ring,
        s.k,
        s.n_max,
        s.points,
        s.candidates,
        s.hits.len(),
        s.nontrivial_hits,
        s.misses.len()
    );
    for h in &s.hits {
        let p = &h.profile;
        let index = p.index.as_ref().map(|r| r.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{} n={} r={index} w=({}, {}) b=({}, {}) srg measured {} predicted {}{}{}",
            verdict(h.passed()),
            h.n,
            p.w1,
            p.w2,
            p.b1,
            p.b2,
            tuple(&h.measured_srg),
            tuple(&h.predicted_srg),
            if p.trivial_graph() { " trivial" } else { "" },
            match &h.dual {
                Some(d) => format!(" dual ({}, {}) {}", d.w1, d.w2, verdict(d.passed())),
                None => String::new(),
            }
        );
        let _ = writeln!(out, "    columns {}", h.columns.join(" "));
    }
    for m in &s.misses {
        if !m.passed() {
            let _ = writeln!(out, "FAIL non-two-weight code {}", m.columns.join(" "));
        }
    }
    let _ = writeln!(out, "{}", verdict(s.passed()));
    let mut rep = Report::new("search");
    rep.search = Some(s);
    Ok((rep, out))
}

fn run(cli: &Cli) -> Result<Report> {
    let ctx = Ctx {
        cap: cli.cap,
        order_cap: cli.order_cap,
        seed: cli.seed,
    };
    let start = Instant::now();
    let (rep, out) = match &cli.command {
        Command::Ring { spec, character_scale } => cmd_ring(&ctx, spec, *character_scale)?,
        Command::Weights { spec } => cmd_weights(&ctx, spec)?,
        Command::Verify(args) => cmd_verify(&ctx, args)?,
        Command::Analyze { file } => cmd_analyze(&ctx, file)?,
        Command::Graph { file, dot, cert } => cmd_graph(&ctx, file, dot.as_deref(), *cert)?,
        Command::Dual { file } => cmd_dual(&ctx, file)?,
        Command::Search(args) => cmd_search(&ctx, args)?,
    };
    let mut rep = rep.settle();
    if cli.timing {
        rep.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    match cli.json.as_deref() {
        Some(p) if p == Path::new("-") => print!("{}", json(&rep)),
        Some(p) => {
            std::fs::write(p, json(&rep)).map_err(|source| CliError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            print!("{out}");
        }
        None => print!("{out}"),
    }
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.sequential {
        frobcode::exec::set_mode(frobcode::exec::Mode::Sequential);
    }
    match run(&cli) {
        Ok(rep) if rep.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
