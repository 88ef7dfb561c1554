use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use permcanon::bench::{self, BenchRecord};
use permcanon::canon::{CanonOptions, DEFAULT_MEM_LIMIT};
use permcanon::group::schreier_sims;
use permcanon::io::{CanonRequest, CanonResponse, SgsJson};
use permcanon::tensor::{canonicalize_expression, Registry};
use permcanon::ExtendedImages;
use serde_json::json;

#[derive(Parser)]
#[command(name = "permcanon", version, about = "Index canonicalization of tensor monomials")]
struct Cli {
    /// Memory budget of the canonicalizer's candidate table, in bytes.
    #[arg(long, global = true, env = "PERMCANON_MEM_LIMIT", default_value_t = DEFAULT_MEM_LIMIT)]
    mem_limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonicalize an expression or a JSON request (read from stdin when neither flag is given).
    Canon {
        #[arg(long, conflicts_with = "json")]
        expr: Option<String>,
        /// JSON request file (`-` for stdin).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Head and vector-space registry (JSON).
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Strong generating set of `{genset, base?}`.
    Sgs {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Order of the group of `{genset, base?}`.
    Order {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Membership of `perm` in the group of `{genset, base?, perm}`.
    Member {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a benchmark family and write CSV.
    Bench {
        #[arg(value_enum)]
        experiment: Experiment,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, default_value_t = 20)]
        per_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    Chain,
    Riemann,
    Cycle,
}

fn read_input(path: Option<&Path>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            File::open(p)
                .with_context(|| format!("cannot open {}", p.display()))?
                .read_to_string(&mut text)?;
        }
        _ => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    if text.trim().is_empty() {
        bail!("empty input; pass --expr, --json FILE or data on stdin");
    }
    Ok(text)
}

fn group_input(path: Option<&Path>) -> Result<(SgsJson, serde_json::Value)> {
    let text = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).context("malformed JSON")?;
    let group: SgsJson = serde_json::from_value(value.clone()).context("malformed group")?;
    Ok((group, value))
}

fn run(cli: Cli) -> Result<()> {
    let opts = CanonOptions {
        mem_limit_bytes: cli.mem_limit,
    };
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Canon { expr, json, config } => {
            let registry = match &config {
                Some(p) => Registry::from_json(&read_input(Some(p))?)?,
                None => Registry::default(),
            };
            let text = match (&expr, &json) {
                (Some(e), _) => e.clone(),
                (None, j) => read_input(j.as_deref())?,
            };
            if expr.is_none() && (json.is_some() || text.trim_start().starts_with('{')) {
                let req: CanonRequest = serde_json::from_str(&text).context("malformed request")?;
                let (out, _) = req.run(&opts)?;
                writeln!(stdout, "{}", serde_json::to_string(&CanonResponse::from(&out))?)?;
            } else {
                if text.trim().is_empty() {
                    bail!("empty expression");
                }
                writeln!(stdout, "{}", canonicalize_expression(text.trim(), &registry, &opts)?)?;
            }
        }
        Command::Sgs { json } => {
            let (g, _) = group_input(json.as_deref())?;
            let sgs = schreier_sims(&g.base, &g.generating_set()?)?;
            writeln!(stdout, "{}", serde_json::to_string(&SgsJson::from_sgs(&sgs))?)?;
        }
        Command::Order { json } => {
            let (g, _) = group_input(json.as_deref())?;
            let sgs = schreier_sims(&g.base, &g.generating_set()?)?;
            writeln!(stdout, "{}", json!({ "order": sgs.order() }))?;
        }
        Command::Member { json } => {
            let (g, value) = group_input(json.as_deref())?;
            let perm: ExtendedImages = serde_json::from_value(
                value.get("perm").cloned().context("missing perm")?,
            )
            .context("malformed perm")?;
            let sgs = schreier_sims(&g.base, &g.generating_set()?)?;
            let member = sgs.contains(&perm.decode()?)?;
            writeln!(stdout, "{}", json!({ "member": member }))?;
        }
        Command::Bench {
            experiment,
            nmax,
            per_n,
            seed,
            out,
        } => {
            let records: Vec<BenchRecord> = match experiment {
                Experiment::Chain => bench::bench_antisymmetric_chain(nmax, per_n, &opts)?,
                Experiment::Riemann => bench::bench_random_riemann(nmax, per_n, seed, &opts)?,
                Experiment::Cycle => bench::bench_hard_cycle(nmax, &opts)?,
            };
            match out {
                Some(p) => bench::write_csv(
                    &records,
                    BufWriter::new(
                        File::create(&p).with_context(|| format!("cannot create {}", p.display()))?,
                    ),
                )?,
                None => bench::write_csv(&records, &mut stdout)?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
