use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use splitcircle::cli::{self, CommandInfo, GenKind, RunReport, Status};
use splitcircle::geometry::{Point, Rational};

#[derive(Parser)]
#[command(name = "splitcircle", version, about = "Census of point-splitting circles with exact arithmetic")]
struct Cli {
    /// Report format; csv applies to the census table only.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Omit the timestamp so repeated runs are byte-identical.
    #[arg(long, global = true)]
    reproducible: bool,
    /// Output path: the point file for `gen`, the report otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    #[value(alias = "section3")]
    Recursive,
    Degenerate,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 7)]
        count: usize,
        #[arg(long, default_value_t = 1000)]
        bound: i64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        interior: usize,
    },
    /// Census every circle and compare against the predicted counts.
    Census { input: PathBuf },
    /// Point-splitting circles through each pair of points.
    Pairs { input: PathBuf },
    /// Check the counting identities on seeded random sets and the recursive construction.
    Verify {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Count distinct point-splitting circles of a set with concyclic points.
    Degenerate { input: PathBuf },
    /// Move one point along a segment and log every boundary crossing.
    Deform {
        input: PathBuf,
        #[arg(long)]
        moving: usize,
        #[arg(long, allow_hyphen_values = true)]
        target_x: Rational,
        #[arg(long, allow_hyphen_values = true)]
        target_y: Rational,
        /// Perturb the target (seeded by --seed) when the path is degenerate.
        #[arg(long)]
        jitter: bool,
    },
}

fn configure_threads() {
    let threads = std::env::var("SPLITCIRCLE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_input<F>(info: CommandInfo, input: &Path, run: F) -> RunReport
where
    F: FnOnce(&splitcircle::PointSet) -> splitcircle::Result<(Status, serde_json::Value)>,
{
    match cli::read_point_file(input) {
        Ok((set, digest)) => RunReport::new(info, Some(digest), run(&set)),
        Err(e) => RunReport::new(info, None, Err(e)),
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    configure_threads();
    let seed = args.seed;

    let report = match &args.command {
        Command::Gen { kind, count, bound, n, interior } => {
            let (name, gen_kind) = match kind {
                Kind::Random => ("random", GenKind::Random { count: *count, bound: *bound }),
                Kind::Recursive => ("recursive", GenKind::Recursive { n: *n }),
                Kind::Degenerate => ("degenerate", GenKind::Degenerate { interior: *interior }),
            };
            let info = CommandInfo::new("gen").arg("kind", name).arg("seed", seed);
            let info = match gen_kind {
                GenKind::Random { count, bound } => info.arg("count", count).arg("bound", bound),
                GenKind::Recursive { n } => info.arg("n", n),
                GenKind::Degenerate { interior } => info.arg("interior", interior),
            };
            match cli::generate(gen_kind, seed) {
                Ok((set, sidecar)) => match &args.out {
                    Some(path) => match std::fs::write(path, set.to_text()) {
                        Ok(()) => RunReport::new(info, None, Ok((Status::Pass, sidecar))),
                        Err(e) => RunReport::new(info, None, Err(e.into())),
                    },
                    None => {
                        print!("{}", set.to_text());
                        eprintln!("{sidecar}");
                        return ExitCode::SUCCESS;
                    }
                },
                Err(e) => RunReport::new(info, None, Err(e)),
            }
        }
        Command::Census { input } => {
            let info = CommandInfo::new("census").arg("input", input.display());
            if args.format == Format::Csv {
                let outcome = cli::read_point_file(input).and_then(|(set, _)| cli::census_csv(&set));
                return match outcome {
                    Ok((status, csv)) => match emit(&csv, args.out.as_ref()) {
                        Ok(()) => ExitCode::from(status.exit_code() as u8),
                        Err(e) => {
                            eprintln!("error: {e}");
                            ExitCode::from(2)
                        }
                    },
                    Err(e) => {
                        eprintln!("error: {e}");
                        ExitCode::from(2)
                    }
                };
            }
            with_input(info, input, cli::census_result)
        }
        Command::Pairs { input } => {
            let info = CommandInfo::new("pairs").arg("input", input.display());
            with_input(info, input, cli::pairs_result)
        }
        Command::Verify { n_max, trials } => {
            let info = CommandInfo::new("verify")
                .arg("n_max", n_max)
                .arg("trials", trials)
                .arg("seed", seed);
            RunReport::new(info, None, cli::verify_result(*n_max, *trials, seed))
        }
        Command::Degenerate { input } => {
            let info = CommandInfo::new("degenerate").arg("input", input.display());
            with_input(info, input, cli::degenerate_result)
        }
        Command::Deform { input, moving, target_x, target_y, jitter } => {
            let target = Point::new(target_x.clone(), target_y.clone());
            let info = CommandInfo::new("deform")
                .arg("input", input.display())
                .arg("moving", moving)
                .arg("target", &target)
                .arg("jitter", jitter)
                .arg("seed", seed);
            let jitter = jitter.then_some(seed);
            with_input(info, input, |set| cli::deform_result(set, *moving, &target, jitter))
        }
    };

    let report = report.with_timestamp(args.reproducible);
    let out = if matches!(args.command, Command::Gen { .. }) { None } else { args.out.as_ref() };
    if let Err(e) = emit(&report.to_json(), out) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.status.exit_code() as u8)
}
