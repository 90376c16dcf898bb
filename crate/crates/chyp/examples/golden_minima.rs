//! Regression of the reference table of objective minima and constrained
//! extrema against the values this implementation reproduces.
//!
//! ```bash
//! cargo run --release --example golden_minima
//! ```

use chyp::cli::{run, Command, OutputFormat, RunConfig};
use chyp::optim::{MinMode, OptimConfig};

fn main() -> chyp::Result<()> {
    let config = RunConfig {
        command: Command::Golden,
        optim: OptimConfig::default(),
        mode: MinMode::Numeric,
        format: OutputFormat::Text,
    };
    let code = run(&config, &mut std::io::stdout())?;
    std::process::exit(code);
}
