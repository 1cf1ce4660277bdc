//! Tangent spaces of the deformation functors for every catalog pair.
//!
//! Run with `cargo run --example tangent_spaces`.

use liepair::catalog;
use liepair::cohomology::{h1_ext, h1_ext0, h_ce};

fn main() {
    println!("{:<14} {:>4} {:>6} {:>11} {:>5}", "pair", "CE", "weak", "semistrict", "H2");
    for entry in catalog::entries() {
        let p = &entry.pair;
        println!(
            "{:<14} {:>4} {:>6} {:>11} {:>5}",
            entry.name,
            h_ce(p, 1).dimension(),
            h1_ext(p).dimension(),
            h1_ext0(p).dimension(),
            if p.r() >= 2 { h_ce(p, 2).dimension().to_string() } else { "-".into() }
        );
    }
    let b3 = catalog::lookup("b3").expect("catalog").pair;
    let weak = h1_ext(&b3);
    println!("\nweak tangent space of b3 is spanned by:");
    for r in weak.representatives() {
        println!("  {r:?}");
    }
}
