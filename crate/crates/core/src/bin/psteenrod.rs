use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use psteenrod::error::{Error, Result};
use psteenrod::io::{emit_complex, emit_cochain, parse_cochain_file, parse_complex_file};
use psteenrod::output;
use psteenrod::persistence::{barcode_of, persistence_triples, Endpoint};
use psteenrod::rank_invariant::{RankInvariant, RankQuery};
use psteenrod::rips::{parse_points_csv, rips_filtration, RipsConfig};
use psteenrod::selfcheck;
use psteenrod::steenrod::stsq;

#[derive(Parser)]
#[command(name = "psteenrod", version, about = "Persistent cohomology and Steenrod squares over F2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the barcode of a filtered complex.
    Barcode {
        complex: PathBuf,
        #[arg(long)]
        json: bool,
        /// Write an SVG rendering to this path.
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// Compute a representative of Sq^k of a cochain.
    Stsq {
        complex: PathBuf,
        cochain: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        /// Degree of the cochain; required when the cochain file is empty.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the Steenrod rank invariant rho(k, d, i, j).
    Rankinv {
        complex: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'd')]
        d: usize,
        /// Left stage, or -inf.
        #[arg(short = 'i', allow_hyphen_values = true, value_parser = parse_endpoint,
              required_unless_present = "table", conflicts_with = "table")]
        i: Option<Endpoint>,
        #[arg(short = 'j', required_unless_present = "table", conflicts_with = "table")]
        j: Option<usize>,
        /// Sweep every window i <= j.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build a Vietoris-Rips filtration from a CSV point cloud.
    Rips {
        points: PathBuf,
        #[arg(long)]
        threshold: f64,
        #[arg(long = "max-dim")]
        max_dim: usize,
        #[arg(long, value_name = "COMPLEX")]
        out: PathBuf,
    },
    /// Run the oracle agreement suites on a complex.
    Selfcheck {
        complex: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_endpoint(s: &str) -> std::result::Result<Endpoint, String> {
    if s == "-inf" {
        return Ok(Endpoint::NegInf);
    }
    s.parse::<usize>()
        .map(Endpoint::Stage)
        .map_err(|_| format!("expected a stage number or -inf, found {s:?}"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Returns `Ok(false)` when a self-check ran but failed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Barcode { complex, json, svg } => {
            let x = parse_complex_file(&read(&complex)?)?;
            let barcode = barcode_of(&persistence_triples(&x)?);
            if let Some(path) = &svg {
                write(path, &output::barcode_svg(&barcode, x.len()))?;
            }
            if json {
                print!("{}", output::barcode_json(&barcode));
            } else if svg.is_none() {
                print!("{}", output::barcode_text(&barcode));
            }
        }
        Command::Stsq {
            complex,
            cochain,
            k,
            degree,
            json,
        } => {
            let x = parse_complex_file(&read(&complex)?)?;
            let alpha = parse_cochain_file(&read(&cochain)?, &x, degree)?;
            let square = stsq(k, &alpha, &x)?;
            if json {
                print!("{}", output::cochain_json(&square));
            } else {
                print!("{}", emit_cochain(&square));
            }
        }
        Command::Rankinv {
            complex,
            k,
            d,
            i,
            j,
            table,
            json,
        } => {
            let x = parse_complex_file(&read(&complex)?)?;
            if !table {
                let (i, j) = (i.expect("clap enforces -i"), j.expect("clap enforces -j"));
                RankQuery::new(k, d, i, j).validate(x.len())?;
            }
            let z = persistence_triples(&x)?;
            let engine = RankInvariant::new(&x, &z, k, d)?;
            if table {
                let t = engine.table()?;
                if json {
                    print!("{}", output::rank_table_json(&t));
                } else {
                    print!("{}", output::rank_table_csv(&t));
                }
            } else {
                let (i, j) = (i.expect("clap enforces -i"), j.expect("clap enforces -j"));
                let rank = engine.eval(i, j)?;
                if json {
                    print!("{}", output::rank_json(k, d, i, j, rank));
                } else {
                    println!("{rank}");
                }
            }
        }
        Command::Rips {
            points,
            threshold,
            max_dim,
            out,
        } => {
            let cloud = parse_points_csv(&read(&points)?)?;
            let x = rips_filtration(&cloud, &RipsConfig::new(threshold, max_dim)?)?;
            write(&out, &emit_complex(&x))?;
        }
        Command::Selfcheck { complex, seed } => {
            let x = parse_complex_file(&read(&complex)?)?;
            let results = selfcheck::run(&x, seed)?;
            for r in &results {
                println!("{}", r.line());
            }
            return Ok(selfcheck::all_passed(&results));
        }
    }
    Ok(true)
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
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error[SelfCheckFailed]: at least one check failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
