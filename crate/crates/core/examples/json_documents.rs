//! Reading and writing the JSON documents used by the command line.
//!
//! Run with `cargo run --example json_documents`.

use liepair::catalog;
use liepair::cohomology::h1_ext;
use liepair::io::{to_json, AlgebraDoc, CohomologyDoc, GaugeDoc, LieDoc, MCDoc};
use liepair::mc::GaugeMode;
use liepair::sample::Sampler;
use liepair::{ArtinAlgebra, Result};

fn main() -> Result<()> {
    let pair = catalog::lookup("aff1")?.pair;
    println!("pair document:\n{}", to_json(&LieDoc::from_pair(&pair)));
    println!("algebra document:\n{}", to_json(&AlgebraDoc::from_algebra(&ArtinAlgebra::dual())));

    let t3 = ArtinAlgebra::t_power(3)?;
    let mut s = Sampler::new(4);
    let xi = s.mc_element(&catalog::lookup("b3")?.pair, &t3);
    let text = to_json(&MCDoc::from_element(&xi));
    let back: MCDoc = serde_json::from_str(&text)?;
    println!("element round trip exact: {}", back.to_element()?.same_element(&xi));

    let delta = s.gauge(&pair, &t3, GaugeMode::Weak);
    println!("gauge parameter:\n{}", to_json(&GaugeDoc::from_parameter(&delta)));
    println!("report:\n{}", to_json(&CohomologyDoc::from_report(&h1_ext(&pair))));
    Ok(())
}
