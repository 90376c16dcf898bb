//! Thin command-line wrapper over the library: `verify`, `sweep`,
//! `export-locus` and `golden`.

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chyp::cli::{parse_theta, run, Command, OutputFormat, RunConfig};
use chyp::group::Word;
use chyp::optim::{MinMode, OptimConfig};

#[derive(Parser)]
#[command(
    name = "chyp",
    about = "Dirichlet-domain verification for a family of complex hyperbolic reflection groups",
    long_about = "Builds the one-parameter family of reflection-group representations on \
                  complex hyperbolic 3-space (theta in [5pi/6, pi]), parameterizes the \
                  bisector intersections bounding the partial Dirichlet domain, and checks \
                  the combinatorics the Poincare polyhedron argument needs.\n\n\
                  Angles are accepted in radians or as fractions of pi (e.g. '5pi/6').\n\
                  CSV locus export columns are fixed: the chart angles (r,s or r,s,t) \
                  followed by re/im pairs of the ambient coordinates.\n\
                  CHYP_THREADS caps the worker count."
)]
struct CliArgs {
    #[command(subcommand)]
    command: CliCommand,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Grid points per angle for 2-torus scans (minimum 64).
    #[arg(long, global = true, default_value_t = 720)]
    grid: usize,
    /// Grid points per angle for 3-torus scans (minimum 64).
    #[arg(long, global = true, default_value_t = 256)]
    grid3: usize,
    /// Theta samples for sweeps.
    #[arg(long, global = true, default_value_t = 200)]
    theta_steps: usize,
    /// Minimization mode: numeric or certified.
    #[arg(long, global = true, default_value = "numeric")]
    mode: String,
    /// Output format: json or text (export-locus always writes CSV).
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Write the artifact to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Full verification report at one theta.
    Verify {
        /// Moduli parameter, radians or a fraction of pi (e.g. 5pi/6).
        #[arg(long)]
        theta: String,
    },
    /// Per-theta objective minima across an interval, plus the emptiness
    /// transition bracket for B12 ^ B34.
    Sweep {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// CSV sample of the ideal boundary (zero locus) of a pair intersection.
    ExportLocus {
        /// Pair of words, comma separated (e.g. A1,A3 or A1,A1A2).
        #[arg(long)]
        pair: String,
        #[arg(long)]
        theta: String,
        /// Slices per angle.
        #[arg(long, default_value_t = 512)]
        steps: usize,
    },
    /// Regression of the reference table of minima and extrema.
    Golden,
}

fn build_config(args: &CliArgs) -> chyp::Result<RunConfig> {
    let optim = OptimConfig {
        grid_2d: args.common.grid,
        grid_3d: args.common.grid3,
        theta_steps: args.common.theta_steps,
        refine_tol: 1e-10,
    };
    let mode = match args.common.mode.as_str() {
        "numeric" => MinMode::Numeric,
        "certified" => MinMode::Certified,
        other => {
            return Err(chyp::ChypError::InvalidConfig(format!("unknown mode '{other}'")));
        }
    };
    let format = match args.common.format.as_str() {
        "json" => OutputFormat::Json,
        "text" => OutputFormat::Text,
        "csv" => OutputFormat::Csv,
        other => {
            return Err(chyp::ChypError::InvalidConfig(format!("unknown format '{other}'")));
        }
    };
    let command = match &args.command {
        CliCommand::Verify { theta } => Command::Verify { theta: parse_theta(theta)? },
        CliCommand::Sweep { from, to, steps } => {
            Command::Sweep { from: parse_theta(from)?, to: parse_theta(to)?, steps: *steps }
        }
        CliCommand::ExportLocus { pair, theta, steps } => {
            let mut words = pair.split(',').map(Word::parse);
            let w1 = words
                .next()
                .flatten()
                .ok_or_else(|| chyp::ChypError::InvalidConfig(format!("bad pair '{pair}'")))?;
            let w2 = words
                .next()
                .flatten()
                .ok_or_else(|| chyp::ChypError::InvalidConfig(format!("bad pair '{pair}'")))?;
            Command::ExportLocus { pair: (w1, w2), theta: parse_theta(theta)?, steps: *steps }
        }
        CliCommand::Golden => Command::Golden,
    };
    Ok(RunConfig { command, optim, mode, format })
}

fn main() -> ExitCode {
    let args = CliArgs::parse();
    let config = match build_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match &args.common.output {
        Some(path) => {
            let mut file = match File::create(path) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: cannot open {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            run(&config, &mut file)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            let r = run(&config, &mut lock);
            let _ = lock.flush();
            r
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
