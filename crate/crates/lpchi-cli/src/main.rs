//! `lpchi`: construct Praeger–Xu and coset graphs, validate and classify
//! locally-`L(p,χ)` pairs, and run the census of exceptional pairs.
//!
//! Exit codes: 0 success, 1 domain rejection or failed check, 2 usage,
//! parse or I/O error.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use lpchi::census::{self, search::Ambient, RowSet, RowStatus};
use lpchi::classify::{arithmetic_lemma_suite, bound_check, dispatch, gv_star_structure};
use lpchi::constructions::{make, GroupSpec};
use lpchi::graphcore::{make_pair_natural, Graph, PairContext};
use lpchi::perm::{parse_generator_file, write_generator_file};
use lpchi::px::{px_graph, px_pair, px_report, vpx_digraph, PxParams};
use lpchi::{Budget, Error, PermGroup};

use output::{render, Format};

#[derive(Parser)]
#[command(name = "lpchi", version, about = "Locally-L(p,chi) pairs: Praeger-Xu graphs, coset graphs, classification and census")]
struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest group order enumerated element by element.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_enumeration: Option<u64>,
    /// Largest vertex count for automorphism and isomorphism searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_automorphism: Option<u64>,
    /// Largest coset-action degree.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_coset_degree: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build PX(p,r,s) and report its parameters, or emit the graph or group.
    Px(PxArgs),
    /// Coset action of a group on a subgroup, suborbits and the orbital pair.
    CosetGraph(CosetArgs),
    /// Validate a pair from files and run the classification dispatch.
    Classify(PairArgs),
    /// Census of exceptional pairs.
    Census {
        #[command(subcommand)]
        command: CensusCommand,
    },
    /// Checks: arithmetic lemmas, pair validation, golden census files.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// The constants e(p) and c(p).
    Constants {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum PxEmit {
    Report,
    Graph,
    Digraph,
    /// `H = C_p wr D_r` as permutations of the vertices.
    Group,
}

#[derive(Args)]
struct PxArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    #[arg(long, value_enum, default_value_t = PxEmit::Report)]
    emit: PxEmit,
    /// Write emitted files here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CosetArgs {
    /// Group spec such as `psl2(7)` or `wreath(sym(3),sym(2))`.
    #[arg(long, conflicts_with = "group_file")]
    group: Option<String>,
    /// Generator file of the ambient group.
    #[arg(long)]
    group_file: Option<PathBuf>,
    /// Generator file of the subgroup H (same degree as the group).
    #[arg(long, conflicts_with = "search")]
    subgroup: Option<PathBuf>,
    /// Required |H| when searching.
    #[arg(long)]
    subgroup_order: Option<u64>,
    /// Search for H of the given order.
    #[arg(long, requires = "subgroup_order")]
    search: bool,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    chi: u32,
    /// Write the coset graph here.
    #[arg(long)]
    emit_graph: Option<PathBuf>,
    /// Write the group, acting on the cosets, here.
    #[arg(long)]
    emit_group: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Generator file of a group acting on the vertices.
    #[arg(long)]
    group: PathBuf,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    chi: u32,
}

#[derive(Subcommand)]
enum CensusCommand {
    /// Run census rows.
    Run {
        #[arg(long, default_value = "table5")]
        rows: RowSet,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the skip list here.
        #[arg(long)]
        skips: Option<PathBuf>,
        /// Worker threads; defaults to the number of processors.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run the arithmetic lemma suite.
    Arithmetic,
    /// Validate a pair from files.
    Pair(PairArgs),
    /// Regenerate the census and compare with golden files.
    Golden {
        #[arg(long, default_value = "golden/v1")]
        dir: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    doc: serde_json::Value,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut doc = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
        if let Error::Rejected(r) = &e {
            doc["error"]["rejection"] = serde_json::to_value(r).expect("rejection serialises");
        }
        Failure { code: if e.is_domain() { 1 } else { 2 }, doc, message: e.to_string() }
    }
}

/// Successful output, with exit code 1 when a check failed.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

type CmdResult = Result<Output, Failure>;

fn budget(cli: &Cli, base: Budget) -> Budget {
    Budget {
        enumeration: cli.budget_enumeration.unwrap_or(base.enumeration),
        automorphism_vertices: cli.budget_automorphism.map_or(base.automorphism_vertices, |x| x as usize),
        coset_degree: cli.budget_coset_degree.map_or(base.coset_degree, |x| x as usize),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_pair(args: &PairArgs) -> Result<PairContext, Error> {
    let graph = Graph::parse(&read(&args.graph)?)?;
    let (degree, gens) = parse_generator_file(&read(&args.group)?)?;
    make_pair_natural(graph, PermGroup::new(degree, gens)?, args.p, args.chi)
}

#[derive(Serialize)]
struct PairSummary {
    vertices: usize,
    edges: usize,
    p: u64,
    chi: u32,
    group_order: String,
    gv_order: String,
    gv_star_order: String,
    t: u32,
    vertex_transitive: bool,
    edge_transitive: bool,
    arc_transitive: bool,
    bound: lpchi::classify::BoundCheck,
}

fn summary(ctx: &PairContext) -> PairSummary {
    let tr = ctx.transitivity();
    PairSummary {
        vertices: ctx.vertex_count(),
        edges: ctx.graph().edge_count(),
        p: ctx.p(),
        chi: ctx.chi(),
        group_order: ctx.group().order().to_string(),
        gv_order: ctx.gv().order().to_string(),
        gv_star_order: ctx.gv_star().order().to_string(),
        t: ctx.t(),
        vertex_transitive: tr.vertex(),
        edge_transitive: tr.edge(),
        arc_transitive: tr.arc(),
        bound: bound_check(ctx),
    }
}

fn cmd_px(cli: &Cli, a: &PxArgs) -> CmdResult {
    let params = PxParams::new(a.p, a.r, a.s)?;
    let text = match a.emit {
        PxEmit::Report => return Ok(Output::ok(render(&px_report(params)?, cli.format))),
        PxEmit::Graph => px_graph(params).to_text(),
        PxEmit::Digraph => vpx_digraph(params).to_text(),
        PxEmit::Group => {
            let ctx = px_pair(params)?;
            write_generator_file(ctx.vertex_count(), ctx.vertex_generators())
        }
    };
    match &a.out {
        Some(path) => {
            write(path, &text)?;
            Ok(Output::ok(render(&json!({"written": path.display().to_string()}), cli.format)))
        }
        None => Ok(Output::ok(text)),
    }
}

#[derive(Serialize)]
struct CosetReport {
    group_order: String,
    subgroup_order: String,
    subgroup_generators: Vec<String>,
    candidates: Option<usize>,
    degree: usize,
    suborbits: Vec<census::Suborbit>,
    choice: Option<census::SuborbitChoice>,
    pair: Option<PairSummary>,
}

fn cmd_coset(cli: &Cli, a: &CosetArgs) -> CmdResult {
    let b = budget(cli, Budget::default());
    let group = match (&a.group, &a.group_file) {
        (Some(spec), _) => make(&GroupSpec::parse(spec)?)?,
        (None, Some(path)) => {
            let (d, gens) = parse_generator_file(&read(path)?)?;
            PermGroup::new(d, gens)?
        }
        (None, None) => return Err(Error::InvalidParams("one of --group or --group-file is required".into()).into()),
    };
    let (h, witness, candidates) = if a.search {
        let order = a.subgroup_order.expect("required by clap");
        let out = census::search_witness(&Ambient::new("group", group.clone()), a.p, a.chi, order, &b)?;
        match out.witness {
            Some(w) => (w.subgroup.clone(), Some(w), Some(out.candidates)),
            None => {
                let doc = json!({"error": {"kind": "no_witness", "message": format!("no subgroup of order {order} gives a pair"), "candidates": out.candidates, "examined": out.examined}});
                return Err(Failure { code: 1, message: doc["error"]["message"].as_str().unwrap_or_default().to_string(), doc });
            }
        }
    } else {
        let Some(path) = &a.subgroup else {
            return Err(Error::InvalidParams("one of --subgroup or --search is required".into()).into());
        };
        let (d, gens) = parse_generator_file(&read(path)?)?;
        if d != group.degree() {
            return Err(Error::DegreeMismatch { left: group.degree(), right: d }.into());
        }
        let h = group.subgroup(gens)?;
        if let Some(o) = a.subgroup_order {
            if h.order_u64() != Some(o) {
                return Err(Error::InvalidParams(format!("subgroup has order {}, expected {o}", h.order())).into());
            }
        }
        let w = census::search::witness_for(&group, &h, a.p, a.chi, &b)?;
        (h, w, None)
    };
    let (degree, suborbits) = match &witness {
        Some(w) => (w.space.degree(), w.suborbits.clone()),
        None => {
            let spec = census::CosetSpec::new(group.clone(), h.clone())?;
            let (space, _) = census::coset_action(&spec, b.coset_degree)?;
            (space.degree(), census::suborbits(&space)?)
        }
    };
    if let Some(w) = &witness {
        if let Some(path) = &a.emit_graph {
            write(path, &w.pair.graph().to_text())?;
        }
        if let Some(path) = &a.emit_group {
            write(path, &write_generator_file(w.pair.vertex_count(), w.pair.vertex_generators()))?;
        }
    }
    let report = CosetReport {
        group_order: group.order().to_string(),
        subgroup_order: h.order().to_string(),
        subgroup_generators: h.generators().iter().map(|x| x.to_string()).collect(),
        candidates,
        degree,
        suborbits,
        choice: witness.as_ref().map(|w| w.choice),
        pair: witness.as_ref().map(|w| summary(&w.pair)),
    };
    Ok(Output { text: render(&report, cli.format), failed: witness.is_none() })
}

fn cmd_classify(cli: &Cli, a: &PairArgs) -> CmdResult {
    let b = budget(cli, Budget::default());
    let ctx = load_pair(a)?;
    Ok(Output::ok(render(&dispatch(&ctx, &b)?, cli.format)))
}

fn pool(workers: Option<u64>) -> Result<rayon::ThreadPool, Error> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n as usize);
    }
    builder.build().map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))
}

fn census_text(report: &census::CensusReport) -> String {
    let mut out = String::new();
    for r in &report.rows {
        let status = match &r.status {
            RowStatus::Verified => "verified".to_string(),
            RowStatus::Skipped { reason } => format!("skipped ({reason})"),
            RowStatus::Failed { reason } => format!("FAILED ({reason})"),
        };
        out.push_str(&format!("{:<28} p={:<2} chi={} |V|={:<6} |G_v|={:<4} {}\n", r.label, r.p, r.chi, r.vertices, r.gv_order, status));
    }
    let s = &report.summary;
    out.push_str(&format!("verified {} skipped {} failed {}\n", s.verified, s.skipped, s.failed));
    out
}

fn cmd_census(cli: &Cli, c: &CensusCommand) -> CmdResult {
    let CensusCommand::Run { rows, json, skips, workers } = c;
    let b = budget(cli, Budget::census());
    let selected = census::rows(*rows);
    let report = pool(*workers)?.install(|| census::run_census(&selected, rows.name(), &b));
    if let Some(path) = json {
        write(path, &census::golden_json(&report))?;
    }
    if let Some(path) = skips {
        write(path, &census::golden_json(&report.skips()))?;
    }
    let text = match cli.format {
        Format::Json => census::golden_json(&report),
        Format::Text => census_text(&report),
    };
    Ok(Output { text, failed: report.summary.failed > 0 })
}

#[derive(Serialize)]
struct GoldenCheck {
    file: String,
    matches: bool,
}

fn cmd_verify(cli: &Cli, c: &VerifyCommand) -> CmdResult {
    match c {
        VerifyCommand::Arithmetic => {
            let r = arithmetic_lemma_suite()?;
            Ok(Output { failed: !r.all_ok(), text: render(&r, cli.format) })
        }
        VerifyCommand::Pair(a) => {
            let b = budget(cli, Budget::default());
            let ctx = load_pair(a)?;
            let doc = json!({"pair": summary(&ctx), "battery": gv_star_structure(&ctx, &b)?});
            Ok(Output::ok(render(&doc, cli.format)))
        }
        VerifyCommand::Golden { dir, workers } => {
            let b = budget(cli, Budget::census());
            let pool = pool(*workers)?;
            let mut checks = Vec::new();
            let mut all_skips = Vec::new();
            for set in [RowSet::Table5, RowSet::Table1Small] {
                let report = pool.install(|| census::run_census(&census::rows(set), set.name(), &b));
                all_skips.extend(report.skips());
                let file = dir.join(format!("{}.json", set.name()));
                checks.push(GoldenCheck { matches: read(&file)? == census::golden_json(&report), file: file.display().to_string() });
            }
            let file = dir.join("skips.json");
            checks.push(GoldenCheck { matches: read(&file)? == census::golden_json(&all_skips), file: file.display().to_string() });
            let failed = checks.iter().any(|c| !c.matches);
            Ok(Output { failed, text: render(&json!({"checks": checks}), cli.format) })
        }
    }
}

fn cmd_constants(cli: &Cli, p: u64) -> CmdResult {
    Ok(Output::ok(render(&lpchi::arith::constants(p)?, cli.format)))
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Px(a) => cmd_px(cli, a),
        Command::CosetGraph(a) => cmd_coset(cli, a),
        Command::Classify(a) => cmd_classify(cli, a),
        Command::Census { command } => cmd_census(cli, command),
        Command::Verify { command } => cmd_verify(cli, command),
        Command::Constants { p } => cmd_constants(cli, *p),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(u8::from(out.failed))
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if cli.format == Format::Json {
                print!("{}", output::json_document(&f.doc));
            }
            ExitCode::from(f.code)
        }
    }
}
