use std::sync::Arc;

use liepair::coeff::{format_scalar, parse_scalar, rat, ArtinMorphism, Scalar};
use liepair::deform::{exp_derivation, log_automorphism, std_check, SmallAutomorphism};
use liepair::linalg::Matrix;
use liepair::mc::{gauge_act, is_mc, mc_push, GaugeMode};
use liepair::omega::{b2_deg1, b3_deg1};
use liepair::sample::Sampler;
use liepair::{catalog, ArtinAlgebra, ArtinElement, LiePair};
use num_traits::Zero;
use proptest::prelude::*;

fn algebra_names() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("dual"), Just("t^3"), Just("t^4"), Just("m2x2"), Just("m2x3")]
}

fn pair_names() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(catalog::NAMES.to_vec())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn element(alg: &Arc<ArtinAlgebra>, coeffs: &[Scalar]) -> ArtinElement {
    alg.element(coeffs[..alg.dim()].to_vec()).unwrap()
}

fn pair(name: &str) -> Arc<LiePair> {
    catalog::lookup(name).unwrap().pair
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalars_round_trip_through_text(x in scalar()) {
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }

    #[test]
    fn evaluation_is_multiplicative(name in algebra_names(), a in prop::collection::vec(scalar(), 6), b in prop::collection::vec(scalar(), 6)) {
        let alg = ArtinAlgebra::builtin(name).unwrap();
        let (x, y) = (element(&alg, &a), element(&alg, &b));
        prop_assert_eq!((&x * &y).ev(), x.ev() * y.ev());
        prop_assert_eq!((&x + &y).ev(), x.ev() + y.ev());
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn units_invert(name in algebra_names(), a in prop::collection::vec(scalar(), 6)) {
        let alg = ArtinAlgebra::builtin(name).unwrap();
        let x = element(&alg, &a);
        match x.invert_unit() {
            Ok(inv) => prop_assert_eq!(&inv * &x, alg.one()),
            Err(_) => prop_assert!(x.ev().is_zero()),
        }
    }

    #[test]
    fn truncation_is_a_morphism(a in prop::collection::vec(scalar(), 4), b in prop::collection::vec(scalar(), 4)) {
        let (src, dst) = (ArtinAlgebra::t_power(4).unwrap(), ArtinAlgebra::t_power(3).unwrap());
        let theta = ArtinMorphism::by_labels(src.clone(), dst).unwrap();
        let (x, y) = (element(&src, &a), element(&src, &b));
        prop_assert_eq!(theta.apply(&(&x * &y)).unwrap(), &theta.apply(&x).unwrap() * &theta.apply(&y).unwrap());
    }

    #[test]
    fn degree_one_brackets_are_symmetric(name in pair_names(), seed in any::<u64>()) {
        let p = pair(name);
        let mut s = Sampler::new(seed);
        let (x, y, z) = (s.omega(&p, 1), s.omega(&p, 1), s.omega(&p, 1));
        prop_assert_eq!(b2_deg1(&x, &y).unwrap(), b2_deg1(&y, &x).unwrap());
        let xyz = b3_deg1(&x, &y, &z).unwrap();
        prop_assert_eq!(&xyz, &b3_deg1(&y, &z, &x).unwrap());
        prop_assert_eq!(&xyz, &b3_deg1(&z, &y, &x).unwrap());
    }

    #[test]
    fn maurer_cartan_survives_truncation(name in pair_names(), seed in any::<u64>()) {
        let p = pair(name);
        let (src, dst) = (ArtinAlgebra::t_power(4).unwrap(), ArtinAlgebra::t_power(2).unwrap());
        let xi = Sampler::new(seed).mc_element(&p, &src);
        let theta = ArtinMorphism::by_labels(src, dst).unwrap();
        let pushed = mc_push(&theta, &xi).unwrap();
        prop_assert!(is_mc(&pushed));
    }

    #[test]
    fn exponentials_are_small_automorphisms(name in pair_names(), alg in algebra_names(), seed in any::<u64>()) {
        let p = pair(name);
        let alg = ArtinAlgebra::builtin(alg).unwrap();
        let delta = Sampler::new(seed).gauge(&p, &alg, GaugeMode::Weak);
        let e = exp_derivation(&delta);
        prop_assert!(SmallAutomorphism::new(&p, e.map().clone()).is_ok());
        prop_assert_eq!(log_automorphism(&e).unwrap(), delta);
    }

    #[test]
    fn gauge_orbits_stay_in_the_solution_set(name in pair_names(), seed in any::<u64>()) {
        let p = pair(name);
        let alg = ArtinAlgebra::t_power(3).unwrap();
        let mut s = Sampler::new(seed);
        let xi = s.mc_element(&p, &alg);
        let moved = gauge_act(&s.gauge(&p, &alg, GaugeMode::Semistrict), &xi).unwrap();
        prop_assert!(is_mc(&moved) && std_check(&moved));
    }

    #[test]
    fn inverses_of_invertible_matrices(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 4)) {
        let m = Matrix::from_fn(4, 4, |i, j| rat(rows[i][j], 1));
        match m.inverse() {
            Some(inv) => prop_assert_eq!(&m * &inv, Matrix::identity(4)),
            None => prop_assert!(m.rank() < 4),
        }
    }
}
