//! CSV export of the ideal boundary (zero locus) of a bisector-pair
//! intersection, for external plotting.
//!
//! ```bash
//! cargo run --release --example export_locus -- A1,A3 5pi/6 > locus.csv
//! cargo run --release --example export_locus -- A1,A4^-1 0.9pi > giraud.csv
//! ```

use chyp::cli::{parse_theta, run, Command, OutputFormat, RunConfig};
use chyp::group::Word;
use chyp::optim::{MinMode, OptimConfig};

fn main() -> chyp::Result<()> {
    let pair_arg = std::env::args().nth(1).unwrap_or_else(|| "A1,A3".to_string());
    let theta_arg = std::env::args().nth(2).unwrap_or_else(|| "5pi/6".to_string());
    let mut words = pair_arg.split(',').map(Word::parse);
    let w1 = words.next().flatten().expect("first word, e.g. A1");
    let w2 = words.next().flatten().expect("second word, e.g. A3");
    let config = RunConfig {
        command: Command::ExportLocus {
            pair: (w1, w2),
            theta: parse_theta(&theta_arg)?,
            steps: 512,
        },
        optim: OptimConfig::default(),
        mode: MinMode::Numeric,
        format: OutputFormat::Csv,
    };
    run(&config, &mut std::io::stdout())?;
    Ok(())
}
