//! Maurer-Cartan elements: checking, order-by-order extension and
//! obstructions.
//!
//! Run with `cargo run --example maurer_cartan`.

use liepair::catalog::{self, scalars};
use liepair::deform::std_check;
use liepair::mc::{differential_matrix, is_mc, mc_extend, mc_residual, Extension, MCElement};
use liepair::sample::Sampler;
use liepair::{ArtinAlgebra, OmegaElement, Result};

fn main() -> Result<()> {
    let t3 = ArtinAlgebra::t_power(3)?;
    let pair = catalog::lookup("b3")?.pair;

    // First-order deformations are cocycles; try to extend each basis cocycle.
    for (i, v) in differential_matrix(&pair, 1).nullspace().into_iter().enumerate() {
        let c = OmegaElement::from_data(&pair, 1, v)?;
        let xi = MCElement::elementary(&c, &t3, &scalars(&[0, 1, 0]))?;
        print!("cocycle {i}: residual {:?}; ", mc_residual(&xi));
        match mc_extend(&xi, 2)? {
            Extension::Extended(e) => println!("extends, MC = {}", is_mc(&e)),
            Extension::Obstructed(o) => println!("obstructed at order {} with class {:?}", o.order, o.class),
        }
    }

    let mut s = Sampler::new(9);
    let xi = s.mc_element(&pair, &t3);
    println!("random MC element over t^3: {xi:?}");
    println!("MC = {}, standard deformation = {}", is_mc(&xi), std_check(&xi));
    let bad = s.candidate(&pair, &t3);
    println!("random cochain: MC = {}, standard deformation = {}", is_mc(&bad), std_check(&bad));
    Ok(())
}
