//! Exponentials of nilpotent derivations acting on standard deformations.
//!
//! Run with `cargo run --example small_automorphisms`.

use liepair::catalog;
use liepair::coeff::format_scalar;
use liepair::deform::{act_on_sd, exp_derivation, i_xi, induced_bracket, log_automorphism, standard_realization};
use liepair::mc::{gauge_act, GaugeMode};
use liepair::sample::Sampler;
use liepair::{ArtinAlgebra, Result};

fn main() -> Result<()> {
    let pair = catalog::lookup("sl2_borel")?.pair;
    let alg = ArtinAlgebra::square_zero(2)?;
    let mut s = Sampler::new(31);
    let xi = s.mc_element(&pair, &alg);
    let delta = s.gauge(&pair, &alg, GaugeMode::Weak);

    let p = exp_derivation(&delta);
    println!("exp(delta) = {:?}", p.map());
    println!("log(exp(delta)) = delta: {}", log_automorphism(&p)? == delta);

    let by_automorphism = act_on_sd(&p, &xi)?;
    let by_gauge = gauge_act(&delta, &xi)?;
    println!("P |> xi = {by_automorphism:?}");
    println!("agrees with the gauge action: {}", by_automorphism.same_element(&by_gauge));

    // The image of a standard deformation, precomposed with anything
    // invertible, realizes the same element.
    let twisted = p.map().compose(&i_xi(&xi))?;
    let realized = standard_realization(&pair, &twisted)?;
    println!("realization of P o I_xi equals P |> xi: {}", realized.same_element(&by_automorphism));

    let bracket = induced_bracket(&xi)?;
    let text: Vec<Vec<String>> = bracket.entry(0, 1).iter().map(|row| row.iter().map(format_scalar).collect()).collect();
    println!("deformed bracket [a0, a1] = {text:?}");
    println!("Jacobi violation: {:?}", bracket.jacobi_violation());
    Ok(())
}
