//! Lie pairs from the catalog and from matrices; derivations and the Bott
//! connection.
//!
//! Run with `cargo run --example lie_pairs`.

use liepair::catalog;
use liepair::coeff::int;
use liepair::liealg::{derivation_space, inner_derivation_space, within_span};
use liepair::{LieAlgebra, LiePair, Matrix, Result};

fn main() -> Result<()> {
    for entry in catalog::entries() {
        let p = &entry.pair;
        let der = derivation_space(p.lie());
        let inner = inner_derivation_space(p.lie());
        println!(
            "{:<13} n={} r={} matched={:<5} dim Der={} dim IDer={} all inner={}",
            entry.name,
            p.n(),
            p.r(),
            p.is_matched(),
            der.len(),
            inner.len(),
            within_span(&inner, &der)
        );
    }

    // so(3) from rotation generators, with the rotations about the z axis.
    let gen = |a: (usize, usize)| {
        let mut m = Matrix::zeros(3, 3);
        m.set(a.0, a.1, int(-1));
        m.set(a.1, a.0, int(1));
        m
    };
    let so3 = LieAlgebra::from_matrices(
        ["lz", "lx", "ly"].map(String::from).to_vec(),
        &[gen((0, 1)), gen((1, 2)), gen((2, 0))],
    )?;
    let pair = LiePair::named("so3_axis", so3, 1)?;
    println!("so3_axis: Bott connection of lz on span(lx, ly):\n{:?}", pair.nabla(0));

    // A complement that is not a subalgebra is rejected.
    let sl2 = catalog::sl2();
    match LiePair::new(LieAlgebra::from_matrices(
        ["e", "f", "h"].map(String::from).to_vec(),
        &{
            let m = catalog::sl2_matrices();
            [m[1].clone(), m[2].clone(), m[0].clone()]
        },
    )?, 2) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("span(e, f) in sl2: {e}"),
    }
    println!("sl2 center: {:?}", sl2.center());
    Ok(())
}
