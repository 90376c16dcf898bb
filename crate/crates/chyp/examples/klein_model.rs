//! The real degeneration at `theta = pi`: Klein-model matrices and the orbit
//! of the center under the ten words, all with exact rational / sqrt(3)
//! entries.
//!
//! ```bash
//! cargo run --release --example klein_model
//! ```

use chyp::group::{build_group, theta_hi, Word};

fn main() -> chyp::Result<()> {
    let ambient = build_group(theta_hi())?;
    let klein = ambient.klein_model()?;

    println!("Klein model of the right-endpoint representation (H = diag(1,1,1,-1))\n");
    println!("I_k,1 =");
    let i1 = klein.generator(1);
    for row in 0..4 {
        let entries: Vec<String> =
            (0..4).map(|col| format!("{:>9.5}", i1[(row, col)].re)).collect();
        println!("  [{}]", entries.join(" "));
    }
    println!("\nJ_k =");
    let j = klein.symmetry();
    for row in 0..4 {
        let entries: Vec<String> =
            (0..4).map(|col| format!("{:>9.5}", j[(row, col)].re)).collect();
        println!("  [{}]", entries.join(" "));
    }

    println!("\ncenter p0 = {:?}", real_coords(klein.center()));
    println!("\norbit of p0 under the ten words:");
    for w in Word::all() {
        let (i, jj) = w.bisector();
        println!("  p{i}{jj} = {:?}   ({w})", real_coords(klein.lift(w)));
    }
    Ok(())
}

fn real_coords(v: &chyp::herm::HVec) -> Vec<f64> {
    v.coords().iter().map(|z| (z.re * 1e12).round() / 1e12).collect()
}
