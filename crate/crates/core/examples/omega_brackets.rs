//! Cochains and the brackets of the cubic L-infinity algebra.
//!
//! Run with `cargo run --example omega_brackets`.

use liepair::catalog;
use liepair::liealg::derivation_space;
use liepair::omega::{cubic_term, d_ce, ext_b1, ext_b2, ext_b2_der, ext_b3, quadratic_term};
use liepair::sample::Sampler;
use liepair::Result;

fn main() -> Result<()> {
    let mut s = Sampler::new(2024);
    let pair = catalog::lookup("b3_toral")?.pair;
    let xi = s.omega(&pair, 1);
    println!("xi          = {xi:?}");
    println!("d xi        = {:?}", d_ce(&xi));
    println!("d d xi      = {:?}", d_ce(&d_ce(&xi)));
    println!("Q(xi)       = {:?}", quadratic_term(&xi)?);
    println!("C(xi)       = {:?}", cubic_term(&xi)?);

    let ders = derivation_space(pair.lie());
    let (d1, d2) = (&ders[0], &ders[ders.len() - 1]);
    println!("[d1]_1      = {:?}", ext_b1(&pair, d1));
    println!("[d1, xi]_2  = {:?}", ext_b2(d1, &xi));

    // The derivation action is a Lie action only up to ternary terms.
    let x = s.omega(&pair, 2);
    let defect = ext_b2(&ext_b2_der(d1, d2), &x)
        .sub(&ext_b2(d1, &ext_b2(d2, &x)))?
        .add(&ext_b2(d2, &ext_b2(d1, &x)))?;
    let correction = ext_b3(d1, &ext_b1(&pair, d2), &x)?.sub(&ext_b3(d2, &ext_b1(&pair, d1), &x)?)?;
    println!("action defect on a 2-cochain = {defect:?}");
    println!("ternary correction matches: {}", defect == correction);
    Ok(())
}
