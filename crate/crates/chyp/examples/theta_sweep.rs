//! Sweep of the emptiness objectives across the moduli interval, with the
//! bisection bracket for the parameter where `B12 ^ B34` becomes empty.
//!
//! ```bash
//! cargo run --release --example theta_sweep -- 60
//! ```

use chyp::cli::run_sweep;
use chyp::group::{theta_hi, theta_lo};
use chyp::optim::OptimConfig;

fn main() -> chyp::Result<()> {
    let steps: usize =
        std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let cfg = OptimConfig::default();
    let report = run_sweep(theta_lo(), theta_hi(), steps, &cfg)?;
    println!("{:<12}{:>14}{:>14}{:>14}{:>14}{:>14}", "theta", "B12^B23", "h(B12^B32)", "h(B12^B43)", "h(B12^B24)", "B12^B34");
    for row in &report.rows {
        println!(
            "{:<12.8}{:>14.6}{:>14.6}{:>14.6}{:>14.6}{:>14.6}",
            row.theta, row.min_b12_b23, row.h_b12_b32, row.h_b12_b43, row.h_b12_b24, row.min_b12_b34
        );
    }
    println!(
        "\nall emptiness objectives positive: {}",
        report.rows.iter().all(|r| r.min_b12_b23 > 0.0
            && r.h_b12_b32 > 0.0
            && r.h_b12_b43 > 0.0
            && r.h_b12_b24 > 0.0)
    );
    println!(
        "B12 ^ B34 transition bracket: ({:.6}, {:.6})",
        report.transition_bracket.0, report.transition_bracket.1
    );
    Ok(())
}
