use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use knotcheck::input::{read_certificate, read_diagram};
use knotcheck::parallel::{bracket_oracle_jobs, report_jobs};
use knotcheck::scenario::{run, Scenario};
use knotcheck::{EXIT_FAILURE, EXIT_UNKNOWN, EXIT_VERIFIED};
use knotcheck_core::certify::{certify_unknot, replay, Outcome, SearchLimits};
use knotcheck_core::invariants::{chiral_by_jones, detect_mirror_pair, knot_signature};
use knotcheck_core::{bracket_fast, canonical_code, connected_sum, emit_pd, jones, signature, torus_knot};

/// Exact knot-diagram checks: PD codes, Jones polynomial, signature,
/// unknot certificates and unknotting bounds.
///
/// Diagram arguments are PD text (`PD[X(1,4,2,5),...]`), `-` for stdin, or
/// a file path.
#[derive(Parser)]
#[command(name = "knotcheck", version)]
struct Cli {
    /// Worker threads for the exhaustive bracket and change-set search.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Limits {
    /// Largest intermediate crossing count [default: input + 3].
    #[arg(long)]
    max_crossings: Option<usize>,
    /// Largest number of distinct diagrams visited.
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: usize,
    /// Also insert kinks during the search.
    #[arg(long)]
    allow_r1up: bool,
}

impl Limits {
    fn resolve(&self) -> SearchLimits {
        SearchLimits { max_crossings: self.max_crossings, max_nodes: self.max_nodes, allow_r1up: self.allow_r1up }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a code and print it with arcs renumbered.
    Parse {
        pd: String,
        /// Print the canonical code instead.
        #[arg(long)]
        canonical: bool,
    },
    /// Jones polynomial in t.
    Jones { pd: String },
    /// Kauffman bracket in A.
    Bracket {
        pd: String,
        /// Use the exhaustive state sum.
        #[arg(long)]
        oracle: bool,
    },
    Writhe { pd: String },
    /// Knot signature; `--matrix` also prints the Goeritz data.
    Signature {
        pd: String,
        #[arg(long)]
        matrix: bool,
    },
    Mirror { pd: String },
    /// Connected sum, cutting arc `--arc1` of the first and `--arc2` of the
    /// second diagram.
    Sum {
        pd1: String,
        pd2: String,
        #[arg(long, default_value_t = 1)]
        arc1: u32,
        #[arg(long, default_value_t = 1)]
        arc2: u32,
    },
    /// Standard diagram of the (2, n) torus knot.
    Torus {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Search for a Reidemeister certificate that the diagram is unknotted.
    Certify {
        pd: String,
        #[command(flatten)]
        limits: Limits,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file against a diagram.
    Replay { pd: String, certificate: String },
    /// Bounds on the unknotting number using at most K crossing changes.
    Unknotting {
        #[arg(short)]
        k: usize,
        pd: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Compare two diagrams by their Jones polynomials.
    Chirality { pd1: String, pd2: String },
    /// Run a scenario file.
    Scenario {
        file: PathBuf,
        /// Directory for certificate files.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_FAILURE as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let mut out = std::io::stdout().lock();
    let jobs = cli.jobs.max(1);
    match cli.command {
        Command::Parse { pd, canonical } => {
            let d = read_diagram(&pd)?;
            writeln!(out, "{}", if canonical { canonical_code(&d) } else { emit_pd(&d) })?;
        }
        Command::Jones { pd } => writeln!(out, "{}", jones(&read_diagram(&pd)?)?)?,
        Command::Bracket { pd, oracle } => {
            let d = read_diagram(&pd)?;
            let b = if oracle { bracket_oracle_jobs(&d, jobs)? } else { bracket_fast(&d)? };
            writeln!(out, "{}", b.render("A"))?;
        }
        Command::Writhe { pd } => writeln!(out, "{}", read_diagram(&pd)?.writhe())?,
        Command::Signature { pd, matrix } => {
            let d = read_diagram(&pd)?;
            if matrix && d.crossing_count() > 0 {
                let g = signature(&d)?;
                writeln!(out, "faces: {:?} (anchor {})", g.white_faces, g.anchor)?;
                for row in &g.matrix {
                    writeln!(out, "  {row:?}")?;
                }
                writeln!(out, "sig(G) = {}, mu = {}", g.matrix_signature, g.mu)?;
            }
            writeln!(out, "{}", knot_signature(&d)?)?;
        }
        Command::Mirror { pd } => writeln!(out, "{}", emit_pd(&read_diagram(&pd)?.mirror()))?,
        Command::Sum { pd1, pd2, arc1, arc2 } => {
            let s = connected_sum(&read_diagram(&pd1)?, arc1, &read_diagram(&pd2)?, arc2)?;
            writeln!(out, "{}", emit_pd(&s))?;
        }
        Command::Torus { n } => writeln!(out, "{}", emit_pd(&torus_knot(n)?))?,
        Command::Certify { pd, limits, out: path } => {
            let d = read_diagram(&pd)?;
            match certify_unknot(&d, &limits.resolve()) {
                Outcome::Certified(cert) => {
                    match path {
                        Some(p) => {
                            fs::write(&p, cert.to_string()).with_context(|| format!("writing {}", p.display()))?;
                            writeln!(out, "certified: {} moves written to {}", cert.moves.len(), p.display())?;
                        }
                        None => write!(out, "{cert}")?,
                    }
                    return Ok(EXIT_VERIFIED);
                }
                Outcome::Unknown(reason) => {
                    writeln!(out, "unknown: {reason}")?;
                    return Ok(EXIT_UNKNOWN);
                }
            }
        }
        Command::Replay { pd, certificate } => {
            let d = read_diagram(&pd)?;
            let cert = read_certificate(&certificate)?;
            let ok = replay(&d, &cert);
            writeln!(out, "{}", if ok { "valid" } else { "invalid" })?;
            return Ok(if ok { EXIT_VERIFIED } else { EXIT_FAILURE });
        }
        Command::Unknotting { k, pd, limits } => {
            let d = read_diagram(&pd)?;
            let r = report_jobs(&d, k, &limits.resolve(), jobs)?;
            write!(out, "{r}")?;
            if let Some(w) = &r.upper {
                write!(out, "{}", w.certificate)?;
            }
        }
        Command::Chirality { pd1, pd2 } => {
            let (d1, d2) = (read_diagram(&pd1)?, read_diagram(&pd2)?);
            writeln!(out, "{}", detect_mirror_pair(&d1, &d2)?)?;
            writeln!(out, "chiral_by_jones: {} {}", chiral_by_jones(&d1)?, chiral_by_jones(&d2)?)?;
        }
        Command::Scenario { file, out_dir } => {
            let s = Scenario::load(&file)?;
            let r = run(&s, out_dir.as_deref())?;
            write!(out, "{}", r.text)?;
            return Ok(r.exit);
        }
    }
    Ok(EXIT_VERIFIED)
}
