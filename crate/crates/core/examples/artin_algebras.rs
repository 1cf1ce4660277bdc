//! Coefficient algebras: built-ins, a custom table, validation and units.
//!
//! Run with `cargo run --example artin_algebras`.

use liepair::coeff::{int, validate_artin, ArtinMorphism};
use liepair::{ArtinAlgebra, Result};

fn main() -> Result<()> {
    for name in ["dual", "t^4", "m2x2"] {
        let alg = ArtinAlgebra::builtin(name)?;
        println!(
            "{name}: dim {}, basis {:?}, m^{} is the last nonzero power, layers {:?}",
            alg.dim(),
            alg.labels(),
            alg.nilpotency(),
            alg.layers()
        );
    }

    // K[x, y] / (x^2, y^2): basis 1, x, y, xy.
    let mut table = vec![vec![vec![int(0); 4]; 4]; 4];
    let mut set = |i: usize, j: usize, k: usize| {
        table[i][j][k] = int(1);
        table[j][i][k] = int(1);
    };
    set(0, 0, 0);
    set(0, 1, 1);
    set(0, 2, 2);
    set(0, 3, 3);
    set(1, 2, 3);
    let labels = ["1", "x", "y", "xy"].map(String::from).to_vec();
    let alg = ArtinAlgebra::from_table("exterior-like", labels, table.clone())?;
    println!("custom algebra: nilpotency {}, layer 2 = {:?}", alg.nilpotency(), alg.layer(2));

    let u = alg.element(vec![int(2), int(1), int(-1), int(3)])?;
    let inv = u.invert_unit()?;
    println!("({u:?})^-1 = {inv:?}; product {:?}", &u * &inv);

    // Breaking commutativity is reported with a witness.
    let mut broken = table;
    broken[1][2][3] = int(2);
    let report = validate_artin(&broken);
    println!("broken table: {:?}", report.first_violation());

    let ev = ArtinMorphism::evaluation(alg.clone());
    println!("ev(u) = {:?}", ev.apply(&u)?);
    let truncate = ArtinMorphism::by_labels(ArtinAlgebra::t_power(4)?, ArtinAlgebra::t_power(2)?)?;
    println!("truncation t^4 -> t^2:\n{:?}", truncate.matrix());
    Ok(())
}
