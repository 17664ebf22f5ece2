use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sieu_core::backend::CorpusIndex;
use sieu_core::bundled;
use sieu_core::eval::{evaluate, parse_score_table, summarize, JudgmentSet, RunFile};
use sieu_core::{server, Config, Engine, EngineError, SearchResponse};

/// Ontology-driven semantic search for the university domain.
#[derive(Debug, Parser)]
#[command(name = "sieu", version, arg_required_else_help = true)]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Ontology file; repeat to merge several. Replaces the configured ontologies.
    #[arg(long, global = true, value_name = "FILE")]
    ontology: Vec<PathBuf>,

    /// Log more (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full pipeline for a query.
    Search(SearchArgs),
    /// Print expansions and refined queries as JSON.
    Expand(ExpandArgs),
    /// Compare two run files against relevance judgments.
    Eval(EvalArgs),
    /// Build a corpus index from a manifest.
    Index(IndexArgs),
    /// Serve the HTTP API.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(required = true, num_args = 1..)]
    query: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Results requested per refined query.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1000))]
    k: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4096))]
    q_max: Option<u64>,
    /// Append the ranked urls to a run file (`qid<TAB>rank<TAB>url`).
    #[arg(long, value_name = "FILE")]
    run_out: Option<PathBuf>,
    /// Query id written to the run file.
    #[arg(long, default_value = "q1")]
    query_id: String,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[arg(required = true, num_args = 1..)]
    query: Vec<String>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=4096))]
    q_max: Option<u64>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_name = "FILE", requires_all = ["run_b", "judgments"], conflicts_with = "scores")]
    run_a: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "run_a")]
    run_b: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "run_a")]
    judgments: Option<PathBuf>,
    /// Per-query score table (`query<TAB><system>_precision<TAB><system>_recall...`)
    /// instead of run files.
    #[arg(long, value_name = "FILE", required_unless_present = "run_a")]
    scores: Option<PathBuf>,
    #[arg(long, value_name = "OUT")]
    csv: Option<PathBuf>,
    #[arg(long, value_name = "OUT")]
    plot_data: Option<PathBuf>,
    /// Queries per system in the plot data.
    #[arg(long, default_value_t = 10)]
    plot_queries: usize,
}

#[derive(Debug, Args)]
struct IndexArgs {
    /// Corpus manifest; defaults to the configured or bundled one.
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
    #[arg(long, value_name = "OUT")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long)]
    bind: Option<String>,
    #[arg(long)]
    port: Option<u16>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e.downcast_ref::<EngineError>() {
                Some(EngineError::EmptyQuery) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

type Fallible<T = ()> = Result<T, Box<dyn std::error::Error>>;

fn load_config(cli: &Cli) -> Fallible<Config> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path)?.0,
        None => Config::default(),
    };
    if !cli.ontology.is_empty() {
        config.paths.ontology = cli.ontology.clone();
    }
    Ok(config)
}

fn engine(config: &Config) -> Fallible<Engine> {
    config.validate()?;
    Ok(Engine::from_config(config)?)
}

fn write_file(path: &Path, text: &str) -> Fallible {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn read_file(path: &Path) -> Fallible<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn run(cli: Cli) -> Fallible {
    let mut config = load_config(&cli)?;
    match cli.command {
        Command::Search(args) => {
            if let Some(q) = args.q_max {
                config.pipeline.q_max = q as usize;
            }
            let engine = engine(&config)?;
            let response = engine.search(&args.query.join(" "), args.k.map(|k| k as usize))?;
            if let Some(path) = &args.run_out {
                append_run(path, &args.query_id, &response)?;
            }
            match args.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&response)?),
                Format::Text => print!("{}", render_text(&response)),
            }
        }
        Command::Expand(args) => {
            if let Some(q) = args.q_max {
                config.pipeline.q_max = q as usize;
            }
            let expanded = engine(&config)?.expand(&args.query.join(" "))?;
            let queries: Vec<_> = expanded
                .refined_queries
                .iter()
                .map(|q| json!({"id": q.id, "terms": q.terms, "prior": q.prior}))
                .collect();
            let out = json!({"terms": expanded.expansions, "queries": queries});
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Eval(args) => {
            let rows = match (&args.scores, &args.run_a, &args.run_b, &args.judgments) {
                (Some(table), ..) => parse_score_table(&read_file(table)?)?,
                (None, Some(a), Some(b), Some(j)) => {
                    let run_a = RunFile::parse(&system_name(a), &read_file(a)?)?;
                    let run_b = RunFile::parse(&system_name(b), &read_file(b)?)?;
                    let judgments = JudgmentSet::parse(&read_file(j)?)?;
                    evaluate(&run_a, &run_b, &judgments)?
                }
                _ => return Err("eval needs --scores, or --run-a, --run-b and --judgments".into()),
            };
            let report = summarize(rows)?;
            if let Some(path) = &args.csv {
                write_file(path, &report.to_csv())?;
            }
            if let Some(path) = &args.plot_data {
                write_file(
                    path,
                    &serde_json::to_string_pretty(&report.plot_series(args.plot_queries))?,
                )?;
            }
            println!("system\tqueries\tprecision\trecall");
            for a in &report.averages {
                println!("{}\t{}\t{:.4}\t{:.4}", a.system, a.queries, a.precision, a.recall);
            }
        }
        Command::Index(args) => {
            let manifest = args
                .manifest
                .or(config.paths.corpus_manifest)
                .unwrap_or_else(bundled::corpus_manifest);
            let index = CorpusIndex::from_manifest(&manifest)?;
            write_file(&args.out, &index.to_json())?;
            println!("indexed {} documents into {}", index.len(), args.out.display());
        }
        Command::Serve(args) => {
            if let Some(bind) = args.bind {
                config.service.bind = bind;
            }
            if let Some(port) = args.port {
                config.service.port = port;
            }
            let engine = engine(&config)?;
            let addr = format!("{}:{}", config.service.bind, config.service.port);
            server::serve(engine, &addr, &config.service.cors_origins, |bound| {
                println!("listening on http://{bound}");
                let _ = std::io::stdout().flush();
            })?;
        }
    }
    Ok(())
}

fn system_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "run".into())
}

fn append_run(path: &Path, qid: &str, response: &SearchResponse) -> Fallible {
    let mut run = RunFile::new("sieu");
    for r in &response.results {
        run.push(qid, &r.url);
    }
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    file.write_all(run.to_tsv().as_bytes())?;
    Ok(())
}

fn render_text(r: &SearchResponse) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "query: {}", r.query);
    let _ = writeln!(out, "content terms: {}", r.analysis.content_terms.join(", "));
    if !r.analysis.anchor_terms.is_empty() {
        let _ = writeln!(out, "anchors: {}", r.analysis.anchor_terms.join(", "));
    }
    let keywords: Vec<&str> = r.keywords.keywords().collect();
    let _ = writeln!(out, "domain keywords: {}", keywords.join(", "));
    let _ = writeln!(out, "\nrefined queries ({}):", r.refined_queries.len());
    for q in &r.refined_queries {
        let _ = writeln!(out, "  [{:>2}] {:.3}  {}", q.id, q.prior, q.text());
    }
    let _ = writeln!(out, "\nresults ({}):", r.results.len());
    for res in &r.results {
        let _ = writeln!(out, "{:>3}. {:.3}  {}", res.final_rank, res.total, res.title);
        let _ = writeln!(out, "      {}", res.url);
        if !res.snippet.is_empty() {
            let _ = writeln!(out, "      {}", res.snippet);
        }
    }
    for f in &r.failures {
        let _ = writeln!(out, "failed: {f}");
    }
    let t = &r.timings;
    let _ = writeln!(
        out,
        "\ntimings (ms): analyze {:.2}, expand {:.2}, refine {:.2}, search {:.2}, rank {:.2}, total {:.2}",
        t.analyze_ms, t.expand_ms, t.refine_ms, t.search_ms, t.rank_ms, t.total_ms
    );
    out
}
