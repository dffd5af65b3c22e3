use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use tourndyn::Tournament;
use tourndyn_harness::bench::bench;
use tourndyn_harness::gen::{generate_for, GenKind};
use tourndyn_harness::run::{run, write_csv, write_json, BenchRecord, RunOptions};
use tourndyn_harness::stream::{StructureKind, UpdateStream};
use tourndyn_harness::verify::verify;

#[derive(Parser)]
#[command(name = "tourndyn", version, about = "Dynamic feedback arc/vertex set structures for tournaments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct Input {
    /// Update stream file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Tournament file; defaults to the stream path with extension `.tour`.
    #[arg(long)]
    tournament: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance and a promise-keeping stream.
    Gen {
        #[arg(long, default_value = "transitive-plus")]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        budget: usize,
        #[arg(long, default_value_t = 100)]
        ops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Structure named in the stream header; defaults by kind.
        #[arg(long)]
        structure: Option<String>,
        /// Output stream path; the tournament goes next to it as `.tour`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay a stream and write per-op records.
    Run {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Write 0 for wall time so output is byte-identical across runs.
        #[arg(long)]
        no_time: bool,
    },
    /// Replay a stream against the exact oracles.
    Verify {
        #[command(flatten)]
        input: Input,
    },
    /// Replay a stream several times and report per-op medians.
    Bench {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn tour_path(stream: &Path) -> PathBuf {
    stream.with_extension("tour")
}

fn load(input: &Input) -> Result<(Tournament, UpdateStream)> {
    let text = fs::read_to_string(&input.input).with_context(|| format!("reading {}", input.input.display()))?;
    let stream = UpdateStream::parse(&text).with_context(|| format!("parsing {}", input.input.display()))?;
    let tpath = input.tournament.clone().unwrap_or_else(|| tour_path(&input.input));
    let ttext = fs::read_to_string(&tpath).with_context(|| format!("reading {}", tpath.display()))?;
    let t = Tournament::parse(&ttext).with_context(|| format!("parsing {}", tpath.display()))?;
    Ok((t, stream))
}

fn emit(records: &[BenchRecord], out: Option<&Path>, format: Format) -> Result<()> {
    let mut w: Box<dyn Write> = match out {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(records, &mut w)?,
        Format::Json => write_json(records, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Gen {
            kind,
            n,
            budget,
            ops,
            seed,
            structure,
            out,
        } => {
            let kind: GenKind = kind.parse()?;
            let structure: StructureKind = match structure {
                Some(s) => s.parse()?,
                None => kind.default_structure(),
            };
            let (t, stream) = generate_for(kind, structure, n, budget, ops, seed)?;
            fs::write(&out, stream.to_text()).with_context(|| format!("writing {}", out.display()))?;
            let tp = tour_path(&out);
            fs::write(&tp, t.to_text()).with_context(|| format!("writing {}", tp.display()))?;
        }
        Cmd::Run {
            input,
            out,
            format,
            no_time,
        } => {
            let (t, stream) = load(&input)?;
            let mut opts = RunOptions::from_env();
            opts.timing = !no_time;
            let records = run(&t, &stream, opts)?;
            emit(&records, out.as_deref(), format)?;
        }
        Cmd::Verify { input } => {
            let (t, stream) = load(&input)?;
            let report = verify(&t, &stream)?;
            if let Some(v) = report.violations.first() {
                eprintln!("violation at op {}: {}", v.op, v.message);
                eprintln!("reproduction (seed {}):", stream.header.seed);
                eprint!("{}", v.reproduction.to_text());
                bail!("verification failed");
            }
            println!("ok: {} ops, {} queries, 0 violations", report.ops, report.queries);
        }
        Cmd::Bench {
            input,
            repeat,
            out,
            format,
        } => {
            let (t, stream) = load(&input)?;
            let records = bench(&t, &stream, repeat)?;
            emit(&records, out.as_deref(), format)?;
        }
    }
    Ok(())
}
