use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use khovanov::checks::{self, Subject};
use khovanov::compute::{apply_arrows, compute, parse_range, Computed};
use khovanov::core::coeff::SpecVariant;
use khovanov::core::complex::build_complex;
use khovanov::core::diagram::{parse_pd, Diagram};
use khovanov::corpus;
use khovanov::report::{render_blocks, to_json, BlocksJson, ComplexJson, TableJson, VerifyReport};
use khovanov::{bundled_corpus, Failure, DEFAULT_MAX_CROSSINGS, THREADS_ENV};
use rayon::prelude::*;

/// Generalized, even, odd and unified Khovanov homology of links.
#[derive(Parser)]
#[command(name = "khovanov", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a homology table.
    Compute(ComputeArgs),
    /// Run verification checks on a diagram or a corpus directory.
    Verify(VerifyArgs),
    /// Manage a corpus of PD files.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Inline PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long)]
    pd: Option<String>,
    /// Path to a PD file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Limits {
    /// Refuse diagrams with more crossings than this.
    #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
    /// Flip crossing arrows, one 0/1 character per crossing.
    #[arg(long)]
    arrows: Option<String>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    limits: Limits,
    /// even, odd, unified, mod2, negated or generalized.
    #[arg(long, default_value = "even")]
    variant: String,
    /// Splitting-degree depth range `a..b` for the generalized variant.
    #[arg(long, allow_hyphen_values = true)]
    blocks: Option<String>,
    /// Emit JSON instead of a text table.
    #[arg(long)]
    json: bool,
    /// Emit the generalized complex as JSON instead of homology.
    #[arg(long)]
    dump_complex: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with_all = ["file", "corpus"])]
    pd: Option<String>,
    #[arg(long, conflicts_with = "corpus")]
    file: Option<PathBuf>,
    /// Verify every entry of a corpus directory.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[command(flatten)]
    limits: Limits,
    /// Comma-separated checks: relations, dsquared, euler, mod2, negated,
    /// duality, decomposition, invariance, or `all`.
    #[arg(long, default_value = "all")]
    checks: String,
    /// Seed for randomized gauges; pass/fail does not depend on it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List entry names in order.
    List {
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Validate a file and copy it into the corpus.
    Add {
        file: PathBuf,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Recompute every fixture.
    Validate {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn load_source(pd: Option<&str>, file: Option<&PathBuf>) -> Result<(String, Diagram), Failure> {
    match (pd, file) {
        (Some(text), None) => Ok(("input".into(), parse_pd(text)?)),
        (None, Some(path)) => {
            let e = corpus::load_file(path)?;
            Ok((e.name, e.diagram))
        }
        _ => Err(Failure::Input("give exactly one of --pd and --file".into())),
    }
}

fn prepare(d: Diagram, limits: &Limits) -> Result<Diagram, Failure> {
    if d.len() > limits.max_crossings {
        return Err(Failure::Input(format!(
            "diagram has {} crossings, above the limit of {}; raise it with --max-crossings",
            d.len(),
            limits.max_crossings
        )));
    }
    if limits.max_crossings > DEFAULT_MAX_CROSSINGS && d.len() > DEFAULT_MAX_CROSSINGS {
        eprintln!("warning: {} crossings; memory use grows like 2^n", d.len());
    }
    match &limits.arrows {
        Some(bits) => apply_arrows(&d, bits),
        None => Ok(d),
    }
}

fn cmd_compute(args: &ComputeArgs, out: &mut String) -> Result<(), Failure> {
    let (_, d) = load_source(args.source.pd.as_deref(), args.source.file.as_ref())?;
    let d = prepare(d, &args.limits)?;
    let variant: SpecVariant = args.variant.parse()?;
    let blocks = args.blocks.as_deref().map(parse_range).transpose()?;
    let c = build_complex(&d)?;
    if args.dump_complex {
        out.push_str(&to_json(&ComplexJson::from(&c)));
        return Ok(());
    }
    match compute(&c, variant, blocks)? {
        Computed::Table(t) if args.json => out.push_str(&to_json(&TableJson::from(&t))),
        Computed::Table(t) => out.push_str(&t.to_string()),
        Computed::Blocks(b) if args.json => out.push_str(&to_json(&BlocksJson::new(&b))),
        Computed::Blocks(b) => out.push_str(&render_blocks(&b)),
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, out: &mut String) -> Result<(), Failure> {
    let checks = checks::parse_checks(&args.checks)?;
    let subjects = match &args.corpus {
        Some(dir) => checks::subjects(&corpus::load_dir(dir)?),
        None => {
            let (name, d) = load_source(args.pd.as_deref(), args.file.as_ref())?;
            vec![Subject { name, diagram: d, presentations: Vec::new() }]
        }
    };
    let subjects: Vec<Subject> = subjects
        .into_iter()
        .map(|s| Ok(Subject { diagram: prepare(s.diagram.clone(), &args.limits)?, ..s }))
        .collect::<Result<_, Failure>>()?;
    let reports = subjects.par_iter().map(|s| checks::run(s, &checks, args.seed)).collect();
    let report = VerifyReport::new(reports);
    if args.json {
        out.push_str(&to_json(&report));
    } else {
        out.push_str(&report.render());
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".into()))
    }
}

fn cmd_corpus(action: &CorpusAction, out: &mut String) -> Result<(), Failure> {
    let dir = |d: &Option<PathBuf>| d.clone().unwrap_or_else(bundled_corpus);
    match action {
        CorpusAction::List { corpus } => {
            for e in corpus::load_dir(&dir(corpus))? {
                let _ = writeln!(out, "{}\t{}\t{}", e.name, e.diagram.len(), e.meta("description").unwrap_or(""));
            }
            Ok(())
        }
        CorpusAction::Add { file, corpus } => {
            let target = corpus::add(&dir(corpus), file)?;
            let _ = writeln!(out, "added {}", target.display());
            Ok(())
        }
        CorpusAction::Validate { corpus, json } => {
            let results = corpus::validate(&corpus::load_dir(&dir(corpus))?);
            let failed = results.iter().filter(|r| !r.mismatches.is_empty()).count();
            if *json {
                let value: Vec<serde_json::Value> = results
                    .iter()
                    .map(|r| serde_json::json!({"name": r.name, "pass": r.mismatches.is_empty(), "mismatches": r.mismatches}))
                    .collect();
                out.push_str(&to_json(&value));
            } else {
                for r in &results {
                    if r.mismatches.is_empty() {
                        let _ = writeln!(out, "pass  {}", r.name);
                    }
                    for m in &r.mismatches {
                        let _ = writeln!(out, "FAIL  {}  {m}", r.name);
                    }
                }
            }
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("{failed} corpus entries do not match their fixtures")))
            }
        }
    }
}

fn init_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| Failure::Input(format!("{THREADS_ENV} must be a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = init_threads().and_then(|()| match &cli.command {
        Command::Compute(args) => cmd_compute(args, &mut out),
        Command::Verify(args) => cmd_verify(args, &mut out),
        Command::Corpus { action } => cmd_corpus(action, &mut out),
    });
    if !out.is_empty() && !out.ends_with('\n') {
        out.push('\n');
    }
    match io::stdout().lock().write_all(out.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
        _ => {}
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
