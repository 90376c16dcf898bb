//! Full Dirichlet-domain verification at one value of the moduli parameter.
//!
//! ```bash
//! cargo run --release --example verify_theta -- 5pi/6
//! cargo run --release --example verify_theta -- 0.9pi
//! ```

use chyp::cli::{parse_theta, run, Command, OutputFormat, RunConfig};
use chyp::optim::{MinMode, OptimConfig};

fn main() -> chyp::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "5pi/6".to_string());
    let theta = parse_theta(&arg)?;
    let config = RunConfig {
        command: Command::Verify { theta },
        optim: OptimConfig::default(),
        mode: MinMode::Numeric,
        format: OutputFormat::Text,
    };
    let code = run(&config, &mut std::io::stdout())?;
    std::process::exit(code);
}
