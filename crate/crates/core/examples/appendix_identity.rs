//! The relation between the iterated derivation maps and the Getzler
//! recursion, order by order over `K[t]/(t^5)`.
//!
//! Run with `cargo run --example appendix_identity`.

use liepair::catalog;
use liepair::deform::{appendix_violation, xy_sequences};
use liepair::mc::{getzler_e, GaugeMode};
use liepair::sample::Sampler;
use liepair::{ArtinAlgebra, Result};

fn main() -> Result<()> {
    let t5 = ArtinAlgebra::t_power(5)?;
    let mut s = Sampler::new(77);
    for name in ["b3", "sl2_borel", "aff1"] {
        let pair = catalog::lookup(name)?.pair;
        let xi = s.mc_element(&pair, &t5);
        let delta = s.gauge(&pair, &t5, GaugeMode::Weak);
        let (xs, ys) = xy_sequences(&delta, &xi, 4)?;
        let es = getzler_e(&delta, &xi, 4)?;
        let nonzero = |v: &[bool]| v.iter().filter(|&&b| !b).count();
        println!(
            "{name}: nonzero x^k {}, y^k {}, e^k {}; first failing k = {:?}",
            nonzero(&xs.iter().map(|x| x.is_zero()).collect::<Vec<_>>()),
            nonzero(&ys.iter().map(|y| y.is_zero()).collect::<Vec<_>>()),
            nonzero(&es.iter().map(|e| e.is_zero()).collect::<Vec<_>>()),
            appendix_violation(&delta, &xi, 4)?
        );
    }
    Ok(())
}
