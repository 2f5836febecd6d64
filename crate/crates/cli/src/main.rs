use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use geobound_cli::{build, parse_genus_range, search, suite, suite_genera, InputError, Modulo};
use geobound_core::colouring::Family;

#[derive(Parser)]
#[command(name = "geobound", version, about = "Hyperbolic surfaces and 3-manifolds from Z2-colourings of polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceFamily {
    Am,
    Wiman,
    Kulkarni,
}

impl From<SurfaceFamily> for Family {
    fn from(f: SurfaceFamily) -> Family {
        match f {
            SurfaceFamily::Am => Family::Am,
            SurfaceFamily::Wiman => Family::Wiman,
            SurfaceFamily::Kulkarni => Family::Kulkarni,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Orientation {
    Rev,
    Pres,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuloArg {
    None,
    C,
    D,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite for every genus in a range, one JSON report per line.
    Verify {
        #[arg(long, value_enum)]
        family: SurfaceFamily,
        /// A genus `G` or an inclusive range `A..B`.
        #[arg(long)]
        genus: String,
        /// Worker threads; GEOBOUND_JOBS takes precedence.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Add per-check wall-clock times to the reports.
        #[arg(long)]
        timings: bool,
    },
    /// Realize a colouring and write its polytope, colouring and complex as JSON.
    Build {
        /// `polygon:M` or `loebell:M`.
        #[arg(long)]
        polytope: String,
        /// `FAMILY:G` or a colouring JSON file.
        #[arg(long)]
        colouring: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// List the free involutions of a family surface.
    Search {
        #[arg(long, value_enum)]
        family: SurfaceFamily,
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value = "rev")]
        orientation: Orientation,
        #[arg(long, value_enum, default_value = "none")]
        modulo: ModuloArg,
    },
}

fn jobs(flag: usize) -> Result<usize, InputError> {
    match std::env::var("GEOBOUND_JOBS") {
        Ok(v) => v.trim().parse().map_err(|_| InputError(format!("GEOBOUND_JOBS must be a number, got `{v}`"))),
        Err(_) => Ok(flag),
    }
}

fn verify(family: Family, genus: &str, jobs: usize, timings: bool) -> Result<bool, InputError> {
    let genera = suite_genera(family, parse_genus_range(genus)?)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| InputError(e.to_string()))?;
    // collect keeps input order, so output does not depend on the job count
    let reports: Vec<_> = pool.install(|| genera.par_iter().map(|&g| suite::run(family, g, timings)).collect());
    let mut ok = true;
    for r in &reports {
        println!("{}", r.to_json_line());
        ok &= r.passed();
    }
    Ok(ok)
}

fn fail_input(e: &dyn std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Verify { family, genus, jobs: j, timings } => {
            match jobs(j).and_then(|j| verify(family.into(), &genus, j, timings)) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(e) => fail_input(&e),
            }
        }
        Command::Build { polytope, colouring, out } => match build(&polytope, &colouring, &out) {
            Ok(summary) => {
                println!("{summary}");
                ExitCode::SUCCESS
            }
            Err(e) if e.is::<InputError>() => fail_input(&e),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Search { family, genus, orientation, modulo } => {
            let sign = match orientation {
                Orientation::Rev => -1,
                Orientation::Pres => 1,
            };
            let modulo = match modulo {
                ModuloArg::None => Modulo::None,
                ModuloArg::C => Modulo::C,
                ModuloArg::D => Modulo::D,
            };
            match search(family.into(), genus, sign, modulo) {
                Ok(found) => {
                    for f in &found {
                        println!("{f}");
                    }
                    eprintln!("{} involution(s)", found.len());
                    ExitCode::SUCCESS
                }
                Err(e) => fail_input(&e),
            }
        }
    }
}
