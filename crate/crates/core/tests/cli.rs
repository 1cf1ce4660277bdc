use std::path::{Path, PathBuf};

use liepair::cli::{run, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use liepair::io::{to_json, GaugeDoc, MCDoc};
use liepair::mc::{is_mc, GaugeMode, GaugeParameter, MCElement};
use liepair::sample::Sampler;
use liepair::{catalog, cohomology, ArtinAlgebra};
use serde_json::Value;

fn liepair(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("liepair").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn element_file(dir: &Path, name: &str, xi: &MCElement) -> String {
    write(dir, name, &to_json(&MCDoc::from_element(xi))).display().to_string()
}

#[test]
fn tangent_dimensions() {
    for (pair, functor, dim) in [("b3", "ce", 3), ("b3", "weak", 2), ("b3", "semistrict", 3), ("abelian_4_2", "ce", 4)] {
        let (code, out, _) = liepair(&["--pair", pair, "tangent", functor]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(json(&out)["dimension"], dim, "{pair} {functor}");
    }
    let (code, out, _) = liepair(&["tangent", "ce", "--pair", "b3", "--format", "table"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("CE of b3 in degree 1: dimension 3"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(liepair(&["--pair", "nope", "tangent", "ce"]).0, EXIT_INPUT);
    assert_eq!(liepair(&["tangent", "ce"]).0, EXIT_INPUT);
    assert_eq!(liepair(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(liepair(&["mc", "check", "/definitely/not/here.json"]).0, EXIT_INPUT);
    let bad = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(liepair(&["mc", "check", bad.to_str().unwrap()]).0, EXIT_INPUT);
    let not_lie = write(
        dir.path(),
        "pair.json",
        r#"{"dim":3,"basis":["x","y","z"],"brackets":[{"i":0,"j":1,"k":1,"coeff":"1"},{"i":0,"j":2,"k":0,"coeff":"1"},{"i":1,"j":2,"k":0,"coeff":"1"}],"subalgebra_rank":1}"#,
    );
    let (code, _, err) = liepair(&["--pair", not_lie.to_str().unwrap(), "tangent", "ce"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("invalid Lie algebra"), "{err}");
    let (code, out, _) = liepair(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("tangent"));
}

#[test]
fn pair_documents_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = liepair(&["catalog", "--pair", "aff1"]);
    assert_eq!(code, EXIT_OK);
    let path = write(dir.path(), "aff1.json", &out);
    let (code, out, _) = liepair(&["--pair", path.to_str().unwrap(), "tangent", "ce"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["dimension"], 1);
}

#[test]
fn random_elements_are_reproducible_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--pair", "b3", "--algebra", "t^3", "--seed", "11", "mc", "random"];
    let (code, first, _) = liepair(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(liepair(&args).1, first);
    let path = write(dir.path(), "xi.json", &first);
    let (code, out, _) = liepair(&["mc", "check", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["maurer_cartan"], true);
    let (code, _, _) = liepair(&["--pair", "sl2_borel", "mc", "check", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn check_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let pair = catalog::lookup("b3").unwrap().pair;
    let dual = ArtinAlgebra::dual();
    let zero = element_file(dir.path(), "zero.json", &MCElement::zero(&pair, &dual));
    assert_eq!(liepair(&["mc", "check", &zero]).0, EXIT_OK);

    let mut s = Sampler::new(3);
    let c = s.cocycle(&pair);
    let xi = MCElement::elementary(&c, &dual, &catalog::scalars(&[0, 1])).unwrap();
    let path = element_file(dir.path(), "cocycle.json", &xi);
    assert_eq!(liepair(&["mc", "check", &path]).0, EXIT_OK);

    let t3 = ArtinAlgebra::t_power(3).unwrap();
    let bad = (0..).map(|_| s.candidate(&pair, &t3)).find(|x| !is_mc(x)).unwrap();
    let path = element_file(dir.path(), "bad.json", &bad);
    let (code, out, _) = liepair(&["mc", "check", &path]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(json(&out)["maurer_cartan"], false);
    assert!(!json(&out)["residual"].as_array().unwrap().is_empty());
}

#[test]
fn extension_to_full_order() {
    let dir = tempfile::tempdir().unwrap();
    let t3 = ArtinAlgebra::t_power(3).unwrap();
    let mut s = Sampler::new(8);
    for name in ["b3", "sl2_cartan", "heis3_center"] {
        let pair = catalog::lookup(name).unwrap().pair;
        let c = s.cocycle(&pair);
        let xi = MCElement::elementary(&c, &t3, &catalog::scalars(&[0, 1, 0])).unwrap();
        let path = element_file(dir.path(), "first_order.json", &xi);
        let (code, out, _) = liepair(&["mc", "extend", &path]);
        assert_eq!(code, EXIT_OK);
        let doc = json(&out);
        match doc["status"].as_str().unwrap() {
            "extended" => {
                assert_eq!(doc["maurer_cartan"], true);
                let path = write(dir.path(), "extended.json", &doc["element"].to_string());
                assert_eq!(liepair(&["mc", "check", path.to_str().unwrap()]).0, EXIT_OK);
            }
            "obstructed" => assert_eq!(doc["order"], 2),
            other => panic!("{other}"),
        }
    }
}

#[test]
fn gauge_act_and_solve() {
    let dir = tempfile::tempdir().unwrap();
    let pair = catalog::lookup("b3").unwrap().pair;
    let t3 = ArtinAlgebra::t_power(3).unwrap();
    let mut s = Sampler::new(21);
    let xi = s.mc_element(&pair, &t3);
    let xi_path = element_file(dir.path(), "xi.json", &xi);

    let zero = GaugeParameter::zero(&pair, &t3, GaugeMode::Weak);
    let zero_path = write(dir.path(), "zero.json", &to_json(&GaugeDoc::from_parameter(&zero)));
    let (code, out, _) = liepair(&["gauge", "act", zero_path.to_str().unwrap(), &xi_path]);
    assert_eq!(code, EXIT_OK);
    let echoed: MCDoc = serde_json::from_str(&out).unwrap();
    assert!(echoed.to_element().unwrap().same_element(&xi));

    let delta = s.gauge(&pair, &t3, GaugeMode::Weak);
    let delta_path = write(dir.path(), "delta.json", &to_json(&GaugeDoc::from_parameter(&delta)));
    let (code, out, _) = liepair(&["gauge", "act", delta_path.to_str().unwrap(), &xi_path]);
    assert_eq!(code, EXIT_OK);
    let eta_path = write(dir.path(), "eta.json", &out);
    let (code, out, _) = liepair(&["gauge", "solve", &xi_path, eta_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let doc = json(&out);
    assert_eq!(doc["verdict"], "equivalent");
    let witness: GaugeDoc = serde_json::from_value(doc["parameter"].clone()).unwrap();
    let image = liepair::mc::gauge_act(&witness.to_parameter().unwrap(), &xi).unwrap();
    let eta: MCDoc = serde_json::from_str(&std::fs::read_to_string(&eta_path).unwrap()).unwrap();
    assert!(image.same_element(&eta.to_element().unwrap()));
}

#[test]
fn distinct_classes_are_not_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    let pair = catalog::lookup("b3").unwrap().pair;
    let dual = ArtinAlgebra::dual();
    let report = cohomology::h1_ext(&pair);
    let t = catalog::scalars(&[0, 1]);
    let reps = report.representatives();
    let a = MCElement::elementary(&reps[0], &dual, &t).unwrap();
    let b = MCElement::elementary(&reps[1], &dual, &t).unwrap();
    let (pa, pb) = (element_file(dir.path(), "a.json", &a), element_file(dir.path(), "b.json", &b));
    let (code, out, _) = liepair(&["gauge", "solve", &pa, &pb]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(json(&out)["verdict"], "not-equivalent");
    let (code, _, _) = liepair(&["gauge", "solve", &pa, &pa, "--mode", "semistrict"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn verify_appendix_suite() {
    let (code, out, _) = liepair(&["verify", "appendix", "--seed", "42"]);
    assert_eq!(code, EXIT_OK);
    let doc = json(&out);
    let check = &doc["checks"][0];
    assert!(check["instances"].as_u64().unwrap() > 0);
    assert!(check["property"].as_str().unwrap().contains("k <= 4"));
    assert_eq!(liepair(&["verify", "nothing"]).0, EXIT_INPUT);
}

#[test]
fn catalog_lists_entries() {
    let (code, out, _) = liepair(&["catalog"]);
    assert_eq!(code, EXIT_OK);
    let names: Vec<String> = json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names, catalog::NAMES);
}
