//! Positivity certificate for an emptiness objective: the exact
//! trigonometric expansion gives a Lipschitz bound, which turns a positive
//! grid minimum into a bound valid on the whole torus.
//!
//! ```bash
//! cargo run --release --example certified_minimum
//! ```

use chyp::chart::giraud_chart;
use chyp::group::{build_group, theta_lo, Word};
use chyp::optim::{expand, global_min, MinMode, OptimConfig};

fn main() -> chyp::Result<()> {
    let g = build_group(theta_lo())?.reduce_to_pu21()?;
    let cfg = OptimConfig::default();

    for (name, w) in [
        ("B12 ^ B23", Word::A(2)),
        ("B12 ^ B32", Word::AInv(2)),
        ("B12 ^ B43", Word::AInv(3)),
        ("B12 ^ B24", Word::A2A3),
    ] {
        let chart = giraud_chart(g.center(), g.lift(Word::A(1)), g.lift(w))?;
        let poly = expand(&chart);
        let f = |x: &[f64]| chart.norm_at(x);
        let result = global_min(&f, 2, MinMode::Certified, Some(&poly), &cfg)?;
        let cert = result.certificate.expect("certified mode records a certificate");
        println!(
            "{name}: refined min {:.6}, grid step {:.5}, Lipschitz {:.3}, lower bound {:.6} -> {}",
            result.value,
            cert.grid_step,
            cert.lipschitz,
            cert.lower_bound,
            if result.certifies_positive() {
                "EMPTY (certified)"
            } else {
                "uncertified"
            }
        );
    }
    Ok(())
}
