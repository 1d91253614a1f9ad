use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use corank::classmass::{Family, FieldFamily};
use corank::report::{self, Format};
use corank::Error;

#[derive(Parser)]
#[command(
    name = "corank",
    version,
    about = "Class numbers, masses and genus bounds for Clifford-cyclotomic groups"
)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Plain,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Plain => Format::Plain,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Charsums,
    Masses,
    Graphs,
    Gates,
}

#[derive(Subcommand)]
enum Command {
    /// Relative class number h⁻ of a CM field.
    Hminus {
        /// pow2, 3pow2, sqrt3, sqrtp or sqrtuplus.
        #[arg(long)]
        family: String,
        #[arg(long, conflicts_with = "table")]
        s: Option<u32>,
        /// All rows of the family's table (pow2: s = 4..9, 3pow2: s = 3..8).
        #[arg(long)]
        table: bool,
        /// Rows for s in a..b (inclusive); implies table output.
        #[arg(long, value_parser = parse_range, conflicts_with = "s")]
        s_range: Option<RangeInclusive<u32>>,
        #[arg(long, value_enum, default_value = "plain")]
        format: FormatArg,
    },
    /// Eichler mass and Euler characteristics for n = 2^s or 3·2^s.
    Mass {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Genus bound rows with verdicts.
    Bounds {
        /// pow2 or 3pow2.
        #[arg(long)]
        family: String,
        /// Range a..b of s (inclusive).
        #[arg(long, value_parser = parse_range)]
        s_range: Option<RangeInclusive<u32>>,
        #[arg(long, conflicts_with = "s_range")]
        s: Option<u32>,
        #[arg(long, value_enum, default_value = "plain")]
        format: FormatArg,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest s for the character-sum suite.
        #[arg(long, default_value_t = 9)]
        s_max: u32,
        /// Modulus for the gate suite.
        #[arg(long, default_value_t = 8)]
        n: u64,
        /// Number of random word pairs for the gate suite.
        #[arg(long, default_value_t = 200)]
        words: usize,
        /// Number of random actions for the mass and graph suites.
        #[arg(long)]
        actions: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: FormatArg,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {a:?}"))?;
    let b: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn bound_family(name: &str) -> corank::Result<Family> {
    match name {
        "pow2" => Ok(Family::Pow2),
        "3pow2" => Ok(Family::ThreePow2),
        _ => Err(Error::InvalidArgument(format!(
            "bounds need family pow2 or 3pow2, got {name}"
        ))),
    }
}

fn default_table(family: &str) -> corank::Result<RangeInclusive<u32>> {
    match family {
        "pow2" => Ok(4..=9),
        "3pow2" => Ok(3..=8),
        _ => Err(Error::InvalidArgument(format!(
            "no default table for {family}; pass --s-range"
        ))),
    }
}

/// Output text and whether every check passed.
fn run(command: Command) -> corank::Result<(String, bool)> {
    match command {
        Command::Hminus {
            family,
            s,
            table,
            s_range,
            format,
        } => {
            let range = match (s, table, s_range) {
                (_, _, Some(r)) => Some(r),
                (_, true, None) => Some(default_table(&family)?),
                (Some(_), false, None) => None,
                (None, false, None) => {
                    return Err(Error::InvalidArgument(
                        "pass --s, --table or --s-range".into(),
                    ))
                }
            };
            if let Some(range) = range {
                let rows = report::hminus_table(&family, range)?;
                return Ok((report::format_table(&family, &rows, format.into()), true));
            }
            let fam = FieldFamily::from_cli(&family, s.expect("checked above"))?;
            let rec = report::hminus_record(fam)?;
            let text = match Format::from(format) {
                Format::Json => rec.to_json() + "\n",
                Format::Csv => format!(
                    "s,h_minus\n{},{}\n",
                    fam.s(),
                    rec.outputs["h_minus"].as_str().unwrap_or("")
                ),
                Format::Plain => format!("{}\n", rec.outputs["h_minus"].as_str().unwrap_or("")),
            };
            Ok((text, true))
        }
        Command::Mass { n, format } => {
            let rec = report::mass_record(n)?;
            let ok = rec.verdicts.values().all(|v| v == "holds");
            let text = match Format::from(format) {
                Format::Json => rec.to_json() + "\n",
                Format::Csv => {
                    let keys: Vec<&String> = rec.outputs.keys().collect();
                    let vals: Vec<&str> = rec
                        .outputs
                        .values()
                        .map(|v| v.as_str().unwrap_or(""))
                        .collect();
                    format!(
                        "n,{}\n{n},{}\n",
                        keys.iter()
                            .map(|k| k.as_str())
                            .collect::<Vec<_>>()
                            .join(","),
                        vals.join(",")
                    )
                }
                Format::Plain => rec
                    .outputs
                    .iter()
                    .map(|(k, v)| format!("{k} = {}\n", v.as_str().unwrap_or("")))
                    .collect(),
            };
            Ok((text, ok))
        }
        Command::Bounds {
            family,
            s_range,
            s,
            format,
        } => {
            let fam = bound_family(&family)?;
            let range = match (s_range, s) {
                (Some(r), _) => r,
                (None, Some(s)) => s..=s,
                (None, None) => return Err(Error::InvalidArgument("pass --s or --s-range".into())),
            };
            let rows = report::bound_rows(fam, range)?;
            Ok((
                report::format_bounds(&rows, format.into()),
                !report::any_failure(&rows),
            ))
        }
        Command::Verify {
            suite,
            seed,
            s_max,
            n,
            words,
            actions,
            format,
        } => {
            let outcome = match suite {
                Suite::Charsums => report::verify_charsums(s_max)?,
                Suite::Masses => report::verify_masses(seed, actions.unwrap_or(200), 96)?,
                Suite::Graphs => report::verify_graphs(seed, actions.unwrap_or(100))?,
                Suite::Gates => report::verify_gates(n, words, seed)?,
            };
            let text = match Format::from(format) {
                Format::Json => {
                    serde_json::to_string_pretty(&outcome).expect("outcomes serialize") + "\n"
                }
                _ => outcome.summary(),
            };
            Ok((text, outcome.ok()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, ok) = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::InvalidArgument(_) => 2,
                Error::InternalInconsistency(_) => 3,
                Error::Undecided(_) => 1,
            });
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
