//! Command-line front end: enumeration, bijection application, generating
//! functions and theorem verification with stable machine-readable output.
//!
//! Exit codes: 0 success/verified, 1 verification mismatch (reports are
//! still emitted), 2 invalid input.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use partlab::classes::{self, ClassSpec, EkThreshold, Family};
use partlab::partition::Partition;
use partlab::verify::{self, TheoremId};
use partlab::{bijections, qseries, Error};

#[derive(Parser)]
#[command(name = "partlab", version, about = "Partition classes, bijections and q-series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the document to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdArg {
    Proof,
    Literal,
}

impl From<ThresholdArg> for EkThreshold {
    fn from(t: ThresholdArg) -> Self {
        match t {
            ThresholdArg::Proof => EkThreshold::Proof,
            ThresholdArg::Literal => EkThreshold::Literal,
        }
    }
}

#[derive(Args)]
struct ClassArgs {
    /// Class name: Ak, Bk, Bpk, Ck, D or Ek.
    #[arg(long = "class")]
    class: String,
    /// Modulus k (ignored for class D).
    #[arg(long, default_value_t = 2)]
    k: u64,
    /// Threshold variant for class Ek.
    #[arg(long = "ek-threshold", value_enum, default_value = "proof")]
    ek_threshold: ThresholdArg,
}

impl ClassArgs {
    fn spec(&self) -> Result<ClassSpec, Error> {
        let family = Family::from_cli_name(&self.class)?;
        Ok(ClassSpec::new(family, self.k)?.with_threshold(self.ek_threshold.into()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count class members for n or an inclusive range lo..hi.
    Count {
        #[command(flatten)]
        class: ClassArgs,
        /// Single n or inclusive range "lo..hi".
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List all class members of weight n, lexicographically decreasing.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        n: u64,
        /// Exponent notation (e.g. 1^5) instead of expanded parts.
        #[arg(long)]
        compact: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply a bijection to one partition.
    Map {
        /// psi, psi-inv, phi, phi-inv, glaisher or glaisher-inv.
        #[arg(long)]
        bijection: String,
        #[arg(long, default_value_t = 2)]
        k: u64,
        /// Comma-separated parts, exponent notation allowed.
        #[arg(long)]
        partition: String,
        /// Emit the full JSON trace instead of just the image.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        compact: bool,
    },
    /// Emit generating-function coefficients c_0..c_N.
    Gf {
        /// Series name: A, B, Bprime or C.
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 2)]
        k: u64,
        /// Truncation order N.
        #[arg(long, default_value_t = 50)]
        order: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Verify a theorem by exhaustive enumeration and bijection sweeps.
    Verify {
        /// thm1.1, thm1.2, thm1.3, thm1.4, corollary-k2 or
        /// ek-threshold-experiment.
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 2)]
        k: u64,
        #[arg(long = "n-max", default_value_t = 30)]
        n_max: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn parse_range(input: &str) -> Result<(u64, u64), Error> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad number \"{s}\"")))
    };
    match input.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
            if lo > hi {
                return Err(Error::Parse(format!("empty range \"{input}\"")));
            }
            Ok((lo, hi))
        }
        None => {
            let n = parse_one(input)?;
            Ok((n, n))
        }
    }
}

/// Build the output document; the exit code is 1 for a verification
/// mismatch, 0 otherwise.
fn run(command: &Command) -> Result<(String, u8), Error> {
    match command {
        Command::Count { class, n, format } => {
            let spec = class.spec()?;
            let (lo, hi) = parse_range(n)?;
            let rows: Vec<(u64, u64)> = (lo..=hi)
                .map(|n| Ok((n, classes::count(&spec, n)?)))
                .collect::<Result<_, Error>>()?;
            let doc = match format {
                Format::Text => rows
                    .iter()
                    .map(|(n, c)| format!("#{}({n}) = {c}\n", spec.label()))
                    .collect(),
                Format::Csv => {
                    let mut s = String::from("n,count\n");
                    for (n, c) in &rows {
                        s.push_str(&format!("{n},{c}\n"));
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(n, c)| serde_json::json!({"n": n, "count": c}))
                        .collect();
                    let v = serde_json::json!({
                        "class": spec.label(),
                        "rows": rows,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
                }
            };
            Ok((doc, 0))
        }
        Command::Enumerate {
            class,
            n,
            compact,
            format,
        } => {
            let spec = class.spec()?;
            let members = classes::enumerate(&spec, *n)?;
            let render = |p: &Partition| {
                if *compact {
                    p.compact_string()
                } else {
                    p.canonical_string()
                }
            };
            let doc = match format {
                Format::Json => {
                    let items: Vec<String> = members.iter().map(render).collect();
                    format!("{}\n", serde_json::to_string_pretty(&items).unwrap())
                }
                _ => {
                    let mut s = String::new();
                    for p in &members {
                        s.push_str(&render(p));
                        s.push('\n');
                    }
                    s
                }
            };
            Ok((doc, 0))
        }
        Command::Map {
            bijection,
            k,
            partition,
            trace,
            compact,
        } => {
            let input = Partition::parse(partition, false)?;
            let traced = match bijection.as_str() {
                "psi" => bijections::psi_traced(&input, *k)?,
                "psi-inv" => bijections::psi_inv_traced(&input, *k)?,
                "phi" => bijections::phi_traced(&input, *k)?,
                "phi-inv" => bijections::phi_inv_traced(&input, *k)?,
                "glaisher" => bijections::glaisher_to_regular_traced(&input, *k)?,
                "glaisher-inv" => bijections::glaisher_to_distinct_traced(&input, *k)?,
                other => return Err(Error::UnknownSelector(other.to_string())),
            };
            let doc = if *trace {
                format!("{}\n", serde_json::to_string_pretty(&traced).unwrap())
            } else if *compact {
                format!("{}\n", traced.output.compact_string())
            } else {
                format!("{}\n", traced.output.canonical_string())
            };
            Ok((doc, 0))
        }
        Command::Gf {
            series,
            k,
            order,
            format,
        } => {
            if *k < 2 {
                return Err(Error::InvalidModulus(*k));
            }
            let s = match series.as_str() {
                "A" => qseries::gf_a(*k, *order),
                "B" => qseries::gf_b(*k, *order),
                "Bprime" => qseries::gf_bprime(*k, *order),
                "C" => qseries::gf_c(*k, *order),
                other => return Err(Error::UnknownSelector(other.to_string())),
            };
            let doc = match format {
                Format::Json => {
                    let items: Vec<String> =
                        s.coeffs().iter().map(|c| c.to_string()).collect();
                    format!("{}\n", serde_json::to_string_pretty(&items).unwrap())
                }
                _ => {
                    let mut out = String::new();
                    for (n, c) in s.coeffs().iter().enumerate() {
                        out.push_str(&format!("{n},{c}\n"));
                    }
                    out
                }
            };
            Ok((doc, 0))
        }
        Command::Verify {
            theorem,
            k,
            n_max,
            format,
        } => {
            let report = if theorem == "ek-threshold-experiment" {
                verify::ek_threshold_experiment(*k, *n_max)?
            } else {
                verify::verify_theorem(TheoremId::from_wire_name(theorem)?, *k, *n_max)?
            };
            let doc = match format {
                Format::Csv => report.to_csv(),
                _ => format!("{}\n", report.to_json()),
            };
            let code = if report.pass() { 0 } else { 1 };
            Ok((doc, code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((doc, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &doc).map_err(|e| e.to_string()),
                None => std::io::stdout()
                    .write_all(doc.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
