//! Isometry classification of the generators and the domain words across the
//! moduli interval: reflections are special elliptic, the `A_k` are unipotent
//! parabolic (the cusp condition), the order-two words and `J` are elliptic.
//!
//! ```bash
//! cargo run --release --example classify_words
//! ```

use chyp::group::{build_group, classify, theta_hi, theta_lo, Word};

fn main() -> chyp::Result<()> {
    for k in 0..4 {
        let theta = theta_lo() + (theta_hi() - theta_lo()) * k as f64 / 3.0;
        let g = build_group(theta)?;
        println!("theta = {theta:.8}");
        let cls = classify(g.symmetry(), g.form())?;
        println!("  J     -> {:?} (regular: {})", cls.kind, cls.regular);
        let cls = classify(g.generator(1), g.form())?;
        println!(
            "  I1    -> {:?} (special elliptic: {})",
            cls.kind,
            cls.is_special_elliptic()
        );
        for w in [Word::A(1), Word::A1A2] {
            let m = g.word_matrix(w);
            let cls = classify(&m, g.form())?;
            println!(
                "  {w:<5} -> {:?} (unipotent: {}, regular: {})",
                cls.kind, cls.unipotent, cls.regular
            );
        }
    }
    Ok(())
}
