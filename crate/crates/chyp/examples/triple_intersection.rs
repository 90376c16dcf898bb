//! The three-phase chart of the triple intersection `B12 ^ B13 ^ B14`: its
//! factored norm, the interior witness, and a sample of the zero locus
//! (whose topology -- conjecturally a 2-sphere -- is exported, not decided).
//!
//! ```bash
//! cargo run --release --example triple_intersection -- 0.86pi
//! ```

use chyp::chart::triple_chart;
use chyp::cli::parse_theta;
use chyp::group::{build_group, Word};

fn main() -> chyp::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "0.9pi".to_string());
    let theta = parse_theta(&arg)?;
    let g = build_group(theta)?;
    let chart = triple_chart(
        g.center(),
        g.lift(Word::A(1)),
        g.lift(Word::A1A2),
        g.lift(Word::AInv(4)),
    )?;

    let co = theta.cos();
    let prefactor = 16.0 * co.powi(3) + 8.0 * co * co - 4.0 * co - 2.0;
    let witness = chart.norm_at(&[-std::f64::consts::PI, 0.0, std::f64::consts::PI]);
    println!("theta = {theta:.10}");
    println!("norm factor (16c^3 + 8c^2 - 4c - 2) = {prefactor:.10}");
    println!("<V,V> at the witness (-pi, 0, pi)  = {witness:.10}");
    println!("witness lies inside hyperbolic space: {}", witness < 0.0);

    let pts = chart.zero_locus(48);
    println!("\nzero-locus sample: {} points on a 48x48 slice grid", pts.len());
    if let Some((angles, v)) = pts.first() {
        println!("first point: angles = {angles:?}");
        println!("             |<V,V>| = {:.3e}", v.norm_h().abs());
    }
    println!("(export the full set with the export-locus command for plotting)");
    Ok(())
}
