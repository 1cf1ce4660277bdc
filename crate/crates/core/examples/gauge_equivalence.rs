//! Gauge action by derivations and deciding equivalence in the three modes.
//!
//! Run with `cargo run --example gauge_equivalence`.

use liepair::catalog::{self, scalars};
use liepair::cohomology::h1_ext;
use liepair::deform::{equiv_decide, Decision};
use liepair::mc::{gauge_act, gauge_solve, GaugeMode, MCElement};
use liepair::sample::Sampler;
use liepair::{ArtinAlgebra, Result};

fn main() -> Result<()> {
    let pair = catalog::lookup("b3")?.pair;
    let t3 = ArtinAlgebra::t_power(3)?;
    let mut s = Sampler::new(5);
    let xi = s.mc_element(&pair, &t3);
    let delta = s.gauge(&pair, &t3, GaugeMode::Weak);
    let eta = gauge_act(&delta, &xi)?;
    println!("xi  = {xi:?}\neta = {eta:?}");
    match equiv_decide(&xi, &eta, GaugeMode::Weak)? {
        Decision::Equivalent(w) => println!("weak witness found: {:?}", w.delta.components()),
        other => println!("{other:?}"),
    }

    // Over the dual numbers distinct classes of H1 are never equivalent.
    let dual = ArtinAlgebra::dual();
    let reps = h1_ext(&pair);
    let t = scalars(&[0, 1]);
    let a = MCElement::elementary(&reps.representatives()[0], &dual, &t)?.verify()?;
    let b = MCElement::elementary(&reps.representatives()[1], &dual, &t)?.verify()?;
    for mode in [GaugeMode::Weak, GaugeMode::Semistrict, GaugeMode::Matched] {
        println!("{} mode, distinct classes: {:?}", mode.name(), gauge_solve(&a, &b, mode)?);
    }
    Ok(())
}
