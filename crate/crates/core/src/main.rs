use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use mis_synth::constructions::mersenne_forest;
use mis_synth::format::{parse_any, to_dimacs, to_json};
use mis_synth::oracle::Oracle;
use mis_synth::pattern::BinaryPattern;
use mis_synth::search::{find_covering_families, for_each_vertex_count, MAX_SEARCH_VERTICES};
use mis_synth::synth::{vertex_report, RealizationResult, Synthesizer};
use mis_synth::{BigCount, Error};

#[derive(Parser)]
#[command(name = "mis-synth", version, about = "Bipartite graphs with a prescribed number of maximal independent sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dimacs,
    /// Graph, ledger and vertex certificate as one JSON object.
    Result,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph with exactly n maximal independent sets.
    Realize {
        /// Target count, decimal or `0b`-prefixed binary.
        #[arg(long, conflicts_with = "pattern", required_unless_present = "pattern")]
        n: Option<String>,
        /// Binary pattern such as `101^3,01^5`.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the output here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Count the result with the oracle.
        #[arg(long)]
        verify: bool,
        /// With --verify, fall back to ledger replay when the oracle cannot cope.
        #[arg(long, requires = "verify")]
        force_ledger_only: bool,
        /// Print the vertex report on stderr.
        #[arg(long)]
        report: bool,
        /// Search for a smaller realization instead of the greedy one.
        #[arg(long, conflicts_with = "pattern")]
        compact: bool,
    },
    /// Count the maximal independent sets of a graph file (JSON or DIMACS).
    Verify {
        file: PathBuf,
        /// Also count all independent sets.
        #[arg(long)]
        count_is: bool,
    },
    /// Enumerate marked gadgets as JSON lines.
    SearchGadgets {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, default_value_t = MAX_SEARCH_VERTICES)]
        max_part: usize,
        /// Print covering families found among the gadgets, best first.
        #[arg(long)]
        emit_families: bool,
        /// Largest acceptable coverage threshold for emitted families.
        #[arg(long, default_value_t = 52)]
        n0_max: u64,
    },
    /// Forest of stars with 2^(2^t) − 1 independent sets.
    Mersenne {
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Realize every n in a range and check ledger counts and budgets.
    #[command(hide = true)]
    Batch {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        compact: bool,
    },
}

enum Failure {
    Parse(String),
    Mismatch(String),
    OracleCap(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Json(_) => Failure::Parse(e.to_string()),
            Error::OracleTooLarge(_) | Error::EnumerationCap(_) => Failure::OracleCap(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn parse_count(s: &str) -> Result<BigCount, Failure> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0b") {
        Some(bits) => BigCount::parse_bytes(bits.as_bytes(), 2),
        None => BigCount::parse_bytes(s.as_bytes(), 10),
    };
    match parsed {
        Some(n) if n > BigCount::from(0u32) => Ok(n),
        Some(_) => Err(Failure::Parse("n must be at least 1".into())),
        None => Err(Failure::Parse(format!("`{s}` is not a decimal or 0b-binary integer"))),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render_result(r: &RealizationResult, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => to_json(&r.graph) + "\n",
        Format::Dimacs => to_dimacs(&r.graph),
        Format::Result => serde_json::to_string(r).map_err(Error::from)? + "\n",
    })
}

fn verify_result(r: &RealizationResult, force_ledger_only: bool) -> Result<(), Failure> {
    let oracle = Oracle::default();
    match oracle.count_mis(&r.graph) {
        Ok(c) if c == r.target => {
            eprintln!("verified: {c}");
            Ok(())
        }
        Ok(c) => Err(Failure::Mismatch(format!("oracle counts {c}, target is {}", r.target))),
        Err(Error::OracleTooLarge(why)) if force_ledger_only => {
            r.replay(&oracle).map_err(|e| Failure::Mismatch(e.to_string()))?;
            eprintln!("verified (ledger only, {why}): {}", r.target);
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Realize { n, pattern, format, out, verify, force_ledger_only, report, compact } => {
            let synth = Synthesizer::new()?;
            let result = match (n, pattern) {
                (Some(n), _) => {
                    let n = parse_count(&n)?;
                    if compact {
                        synth.realize_compact(&n)?
                    } else {
                        synth.realize(&n)?
                    }
                }
                (None, Some(p)) => {
                    let p: BinaryPattern = p.parse()?;
                    synth.realize_pattern(&p)?
                }
                (None, None) => unreachable!("clap requires --n or --pattern"),
            };
            emit(&render_result(&result, format)?, &out)?;
            if verify {
                verify_result(&result, force_ledger_only)?;
            }
            if report {
                eprint!("{}", vertex_report(&result));
            }
        }
        Command::Verify { file, count_is } => {
            let text = fs::read_to_string(&file)?;
            let g = parse_any(&text)?;
            let oracle = Oracle::default();
            println!("mis: {}", oracle.count_mis(&g)?);
            if count_is {
                println!("is: {}", oracle.count_is(&g)?);
            }
        }
        Command::SearchGadgets { max_vertices, max_part, emit_families, n0_max } => {
            if max_vertices > MAX_SEARCH_VERTICES {
                return Err(Failure::Parse(format!(
                    "--max-vertices must be at most {MAX_SEARCH_VERTICES}"
                )));
            }
            let mut pool = Vec::new();
            let stdout = io::stdout();
            for_each_vertex_count(max_vertices, max_part, |v, gadgets| {
                let mut lock = stdout.lock();
                for g in &gadgets {
                    let line = serde_json::to_string(&g.to_json())?;
                    writeln!(lock, "{line}").map_err(|e| Error::InvalidArgument(e.to_string()))?;
                }
                eprintln!("{v} vertices: {} gadgets", gadgets.len());
                if emit_families {
                    pool.extend(gadgets);
                }
                Ok(())
            })?;
            if emit_families && !pool.is_empty() {
                for fam in find_covering_families(&pool, n0_max)? {
                    eprintln!("family: gamma {:.6}, n0 {}, {} members", fam.gamma(), fam.n0(), fam.members().len());
                    println!("{}", serde_json::to_string(&fam.to_json()).map_err(Error::from)?);
                }
            }
        }
        Command::Mersenne { t, format } => {
            let g = mersenne_forest(t)?;
            let is = Oracle::default().count_is(&g)?;
            let expected = (BigCount::from(1u32) << (1usize << t)) - 1u32;
            if is != expected {
                return Err(Failure::Mismatch(format!("forest has {is} independent sets, expected {expected}")));
            }
            let text = match format {
                Format::Dimacs => to_dimacs(&g),
                _ => to_json(&g) + "\n",
            };
            emit(&text, &None)?;
            eprintln!("is: {is}");
            eprintln!("vertices: {}", g.vertex_count());
        }
        Command::Batch { from, to, compact } => {
            if from == 0 || from > to {
                return Err(Failure::Parse("batch needs 1 <= from <= to".into()));
            }
            let synth = Synthesizer::new()?;
            let bad: Vec<String> = (from..=to)
                .into_par_iter()
                .filter_map(|n| {
                    let n = BigCount::from(n);
                    let r = if compact { synth.realize_compact(&n) } else { synth.realize(&n) };
                    match r {
                        Ok(r) if r.ledger_count() != Some(&n) => Some(format!("{n}: ledger mismatch")),
                        Ok(r) if r.vertex_count() as f64 > r.certificate.budget => {
                            Some(format!("{n}: {} vertices over budget {:.2}", r.vertex_count(), r.certificate.budget))
                        }
                        Ok(_) => None,
                        Err(e) => Some(format!("{n}: {e}")),
                    }
                })
                .collect();
            for line in &bad {
                eprintln!("{line}");
            }
            println!("checked {} values, {} failures", to - from + 1, bad.len());
            if !bad.is_empty() {
                return Err(Failure::Mismatch(format!("{} failures", bad.len())));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Parse(m) => (2, m),
                Failure::Mismatch(m) => (3, m),
                Failure::OracleCap(m) => (4, m),
                Failure::Other(m) => (1, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
