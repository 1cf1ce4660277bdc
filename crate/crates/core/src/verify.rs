//! Seeded property campaigns behind `liepair verify`.
//!
//! Each suite runs a fixed list of checks over the catalog. A check counts
//! its instances and keeps the first failing one as a witness.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::catalog::{self, CatalogEntry};
use crate::coeff::{validate_artin, ArtinAlgebra};
use crate::cohomology::{h1_ext, h1_ext0, h_ce};
use crate::deform::{
    act_on_sd, appendix_violation, exp_derivation, induced_bracket, log_automorphism, std_check,
};
use crate::error::{Error, Result};
use crate::liealg::{derivation_space, inner_derivation, inner_derivation_space, within_span};
use crate::mc::{gauge_act, is_mc, GaugeMode, MCElement};
use crate::omega::{
    b2_deg1, b3_deg1, blocks, cubic_term, d_ce, ext_b1, ext_b2, ext_b2_der, ext_b3, quadratic_term,
    OmegaElement,
};
use crate::sample::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Brackets,
    GaugeBridge,
    Appendix,
    Cohomology,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Axioms,
        Suite::Brackets,
        Suite::GaugeBridge,
        Suite::Appendix,
        Suite::Cohomology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Brackets => "brackets",
            Suite::GaugeBridge => "gauge-bridge",
            Suite::Appendix => "appendix",
            Suite::Cohomology => "cohomology",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one property over all its instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub module: &'static str,
    pub property: String,
    pub instances: usize,
    pub failures: usize,
    /// Description of the first failing instance.
    pub witness: Option<String>,
}

impl Check {
    fn new(module: &'static str, property: impl Into<String>) -> Self {
        Self {
            module,
            property: property.into(),
            instances: 0,
            failures: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    /// Errors count as failures, with the error as witness.
    fn record_result(&mut self, outcome: Result<bool>, witness: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.record(ok, witness),
            Err(e) => {
                let w = witness();
                self.record(false, || format!("{w}: {e}"));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Runs a suite; `All` runs every suite in order with the same seed.
pub fn run(suite: Suite, seed: u64) -> VerifyReport {
    let mut s = Sampler::new(seed);
    let checks = match suite {
        Suite::Axioms => axioms(&mut s),
        Suite::Brackets => brackets(&mut s),
        Suite::GaugeBridge => gauge_bridge(&mut s),
        Suite::Appendix => appendix(&mut s),
        Suite::Cohomology => cohomology(&mut s),
        Suite::All => Suite::EACH.iter().flat_map(|&x| run(x, seed).checks).collect(),
    };
    VerifyReport { suite, seed, checks }
}

fn algebra(name: &str) -> Arc<ArtinAlgebra> {
    ArtinAlgebra::builtin(name).expect("built-in algebra")
}

fn axioms(s: &mut Sampler) -> Vec<Check> {
    let builtins = [("dual", 1), ("t^3", 2), ("t^4", 3), ("t^5", 4), ("m2x2", 1), ("m2x3", 1)];
    let mut valid = Check::new("coeff", "built-in algebras satisfy the local Artinian axioms");
    for (name, n) in builtins {
        let alg = algebra(name);
        let report = validate_artin(alg.table());
        valid.record(report.passed() && report.nilpotency == Some(n), || {
            format!("{name}: {:?}", report.first_violation())
        });
    }

    let mut ev = Check::new("coeff", "evaluation is an algebra morphism");
    let mut inv = Check::new("coeff", "elements with nonzero evaluation are invertible");
    for name in ["t^4", "m2x2", "m2x3"] {
        let alg = algebra(name);
        for _ in 0..20 {
            let (a, b) = (s.element(&alg), s.element(&alg));
            ev.record((&a * &b).ev() == a.ev() * b.ev() && (&a + &b).ev() == a.ev() + b.ev(), || {
                format!("{name}: {a:?}, {b:?}")
            });
            if !a.ev().is_zero() {
                inv.record_result(a.invert_unit().map(|x| &x * &a == alg.one()), || format!("{name}: {a:?}"));
            }
        }
    }

    let mut lie = Check::new("liealg", "catalog pairs are Lie algebras with a closed subalgebra");
    let mut leibniz = Check::new("liealg", "derivation basis satisfies the Leibniz rule and contains inner ones");
    for entry in catalog::entries() {
        let l = entry.pair.lie();
        lie.record(crate::liealg::validate_lie(l.constants()).is_valid(), || entry.name.clone());
        let der = derivation_space(l);
        let ok = der.iter().all(|d| l.leibniz_violation(d.matrix()).is_none())
            && within_span(&der, &inner_derivation_space(l));
        leibniz.record(ok, || entry.name.clone());
    }

    let mut rigid = Check::new("liealg", "all derivations of sl2 are inner");
    let sl2 = catalog::lookup("sl2_borel").expect("catalog").pair;
    rigid.record(
        within_span(&inner_derivation_space(sl2.lie()), &derivation_space(sl2.lie())),
        || "sl2_borel".into(),
    );

    let mut explog = Check::new("deform", "log(exp(delta)) = delta and exp(log(P)) = P");
    for entry in catalog::entries() {
        for name in ["t^3", "m2x2"] {
            let alg = algebra(name);
            for _ in 0..3 {
                let delta = s.gauge(&entry.pair, &alg, GaugeMode::Weak);
                let p = exp_derivation(&delta);
                let outcome = log_automorphism(&p).map(|back| {
                    back == delta && exp_derivation(&back) == p
                });
                explog.record_result(outcome, || format!("{} over {name}: {delta:?}", entry.name));
            }
        }
    }
    vec![valid, ev, inv, lie, leibniz, rigid, explog]
}

fn action_defect(d1: &crate::liealg::Derivation, d2: &crate::liealg::Derivation, x: &OmegaElement) -> Result<OmegaElement> {
    let lhs = ext_b2(&ext_b2_der(d1, d2), x);
    let nested = ext_b2(d1, &ext_b2(d2, x)).sub(&ext_b2(d2, &ext_b2(d1, x)))?;
    lhs.sub(&nested)
}

fn brackets(s: &mut Sampler) -> Vec<Check> {
    let mut dsq = Check::new("omega", "d_ce squares to zero");
    let mut cocycle = Check::new("omega", "unary bracket of a derivation is a cocycle");
    let mut jacobi2 = Check::new("omega", "d[delta, X] = [[delta], X] + [delta, dX] on degree 1");
    let mut strict = Check::new("omega", "derivations preserving the subalgebra act by a Lie action");
    let mut corrected = Check::new(
        "omega",
        "[[d1,d2],X] - [d1,[d2,X]] + [d2,[d1,X]] = [d1,[d2],X] - [d2,[d1],X]",
    );
    let mut polar = Check::new("omega", "diagonals of the degree-1 brackets are 2Q and 6C");
    let mut matched = Check::new("omega", "ternary brackets vanish on matched pairs");
    let mut std_iff = Check::new("mc", "standard deformation iff Maurer-Cartan over t^3");
    let mut induced = Check::new("deform", "induced bracket of a Maurer-Cartan element satisfies Jacobi");

    let t3 = algebra("t^3");
    for entry in catalog::entries() {
        let p = &entry.pair;
        let name = &entry.name;
        for k in 0..=p.r() {
            let x = s.omega(p, k);
            dsq.record(d_ce(&d_ce(&x)).is_zero(), || format!("{name}: {x:?}"));
        }
        let ders = derivation_space(p.lie());
        for (i, d) in ders.iter().enumerate() {
            cocycle.record(d_ce(&ext_b1(p, d)).is_zero(), || format!("{name}: derivation {i}"));
            let x = s.omega(p, 1);
            let outcome = b2_deg1(&ext_b1(p, d), &x)
                .and_then(|t| t.add(&ext_b2(d, &d_ce(&x))))
                .map(|rhs| rhs == d_ce(&ext_b2(d, &x)));
            jacobi2.record_result(outcome, || format!("{name}: derivation {i}, {x:?}"));
        }
        let preserving: Vec<_> = ders.iter().filter(|d| blocks(p, d).2.is_zero()).collect();
        for k in 1..=p.r().min(3) {
            for _ in 0..4 {
                let x = s.omega(p, k);
                let (d1, d2) = (&ders[s.index(ders.len())], &ders[s.index(ders.len())]);
                let outcome = action_defect(d1, d2, &x).and_then(|defect| {
                    let rhs = ext_b3(d1, &ext_b1(p, d2), &x)?.sub(&ext_b3(d2, &ext_b1(p, d1), &x)?)?;
                    Ok(defect == rhs)
                });
                corrected.record_result(outcome, || format!("{name}: degree {k}, {x:?}"));
                if !preserving.is_empty() {
                    let e1 = preserving[s.index(preserving.len())];
                    let e2 = preserving[s.index(preserving.len())];
                    strict.record_result(action_defect(e1, e2, &x).map(|d| d.is_zero()), || {
                        format!("{name}: degree {k}, {x:?}")
                    });
                }
            }
        }
        for _ in 0..5 {
            let xi = s.omega(p, 1);
            let outcome = (|| {
                let two = b2_deg1(&xi, &xi)? == quadratic_term(&xi)?.scale(&crate::coeff::int(2));
                let six = b3_deg1(&xi, &xi, &xi)? == cubic_term(&xi)?.scale(&crate::coeff::int(6));
                Ok(two && six)
            })();
            polar.record_result(outcome, || format!("{name}: {xi:?}"));
            if p.is_matched() {
                let b: Vec<_> = (0..p.q()).map(|_| s.scalar()).collect();
                let ad = inner_derivation(p.lie(), &p.split(&b));
                let y = s.omega(p, 1);
                let outcome = (|| {
                    Ok(b3_deg1(&xi, &xi, &xi)?.is_zero() && ext_b3(&ad, &xi, &y)?.is_zero())
                })();
                matched.record_result(outcome, || format!("{name}: {xi:?}, b = {b:?}"));
            }
        }
        for i in 0..8 {
            let xi = if i % 2 == 0 { s.mc_element(p, &t3) } else { s.candidate(p, &t3) };
            std_iff.record(std_check(&xi) == is_mc(&xi), || format!("{name}: {xi:?}"));
            if i % 2 == 0 {
                induced.record_result(
                    induced_bracket(&xi).map(|b| b.jacobi_violation().is_none()),
                    || format!("{name}: {xi:?}"),
                );
            }
        }
    }
    vec![dsq, cocycle, jacobi2, strict, corrected, polar, matched, std_iff, induced]
}

fn gauge_bridge(s: &mut Sampler) -> Vec<Check> {
    let mut bridge = Check::new("deform", "act_on_sd(exp(delta), xi) = gauge_act(delta, xi)");
    let mut square = Check::new("mc", "gauge action is trivial for delta = 0");
    for entry in catalog::entries() {
        let p = &entry.pair;
        for name in ["dual", "t^3", "t^4", "m2x2"] {
            let alg = algebra(name);
            for _ in 0..2 {
                let xi = s.mc_element(p, &alg);
                let delta = s.gauge(p, &alg, GaugeMode::Weak);
                let outcome = (|| {
                    let a = gauge_act(&delta, &xi)?;
                    let b = act_on_sd(&exp_derivation(&delta), &xi)?;
                    Ok(a.same_element(&b))
                })();
                bridge.record_result(outcome, || format!("{} over {name}: xi {xi:?}, delta {delta:?}", entry.name));
            }
            let xi = s.mc_element(p, &alg);
            let zero = crate::mc::GaugeParameter::zero(p, &alg, GaugeMode::Weak);
            square.record_result(gauge_act(&zero, &xi).map(|x| x.same_element(&xi)), || {
                format!("{} over {name}", entry.name)
            });
        }
    }
    vec![bridge, square]
}

/// Largest order checked by the appendix suite.
pub const APPENDIX_ORDER: usize = 4;

fn appendix(s: &mut Sampler) -> Vec<Check> {
    let mut check = Check::new(
        "deform",
        format!("y^k = -sum C(k,p) e^p o x^(k-p) for k <= {APPENDIX_ORDER} over t^5"),
    );
    let alg = algebra("t^5");
    for name in ["b3", "sl2_borel", "aff1"] {
        let p = catalog::lookup(name).expect("catalog").pair;
        for _ in 0..4 {
            let xi = s.mc_element(&p, &alg);
            let delta = s.gauge(&p, &alg, GaugeMode::Weak);
            check.record_result(
                appendix_violation(&delta, &xi, APPENDIX_ORDER).map(|v| v.is_none()),
                || format!("{name}: xi {xi:?}, delta {delta:?}"),
            );
        }
    }
    vec![check]
}

fn tangent_pair(s: &mut Sampler, p: &Arc<crate::liealg::LiePair>, mode: GaugeMode) -> (OmegaElement, OmegaElement) {
    let c = s.cocycle(p);
    let d = if s.coin(0.5) {
        let delta = s.derivation(p, mode);
        c.add(&ext_b1(p, &delta)).expect("same pair")
    } else {
        s.cocycle(p)
    };
    (c, d)
}

/// Agreement of gauge equivalence over the dual numbers with equality of
/// first cohomology classes, on `count` random cocycle pairs.
pub fn tangent_consistency(s: &mut Sampler, entry: &CatalogEntry, mode: GaugeMode, count: usize) -> Check {
    let report = match mode {
        GaugeMode::Semistrict => h1_ext0(&entry.pair),
        _ => h1_ext(&entry.pair),
    };
    let mut check = Check::new(
        "cohomology",
        format!("{} equivalence over dual numbers matches {} classes", mode.name(), report.complex()),
    );
    let dual = ArtinAlgebra::dual();
    let t = crate::catalog::scalars(&[0, 1]);
    for _ in 0..count {
        let (x, y) = tangent_pair(s, &entry.pair, mode);
        let outcome = (|| {
            let xi = MCElement::elementary(&x, &dual, &t)?.verify()?;
            let eta = MCElement::elementary(&y, &dual, &t)?.verify()?;
            let decided = match crate::deform::equiv_decide(&xi, &eta, mode)? {
                crate::deform::Decision::Equivalent(_) => true,
                crate::deform::Decision::NotEquivalent => false,
                crate::deform::Decision::Unknown { order } => {
                    return Err(Error::InternalInconsistency(format!("undecided at order {order}")))
                }
            };
            Ok(decided == report.same_class(&x, &y)?)
        })();
        check.record_result(outcome, || format!("{}: {x:?} vs {y:?}", entry.name));
    }
    check
}

fn cohomology(s: &mut Sampler) -> Vec<Check> {
    let mut golden = Check::new("cohomology", "known tangent dimensions");
    let mut chain = Check::new("cohomology", "dim H1(ext) <= dim H1(ext0) = dim H1_CE");
    let mut reps = Check::new("cohomology", "representatives are cocycles");
    let mut sl2 = Check::new("cohomology", "H1(ext) = H1(ext0) on sl2_borel");
    let mut tangent = Vec::new();
    for entry in catalog::entries() {
        let p = &entry.pair;
        let (ce, weak, semi) = (h_ce(p, 1), h1_ext(p), h1_ext0(p));
        if let Some(g) = entry.golden {
            let got = (ce.dimension(), weak.dimension(), semi.dimension());
            golden.record(got == (g.ce, g.weak, g.semistrict), || format!("{}: {got:?} vs {g:?}", entry.name));
        }
        chain.record(
            weak.dimension() <= semi.dimension() && semi.dimension() == ce.dimension(),
            || format!("{}: {} {} {}", entry.name, weak.dimension(), semi.dimension(), ce.dimension()),
        );
        for k in 0..=p.r() {
            let r = h_ce(p, k);
            reps.record(r.representatives().iter().all(|x| d_ce(x).is_zero()), || {
                format!("{} degree {k}", entry.name)
            });
        }
        for r in [&weak, &semi] {
            reps.record(r.representatives().iter().all(|x| d_ce(x).is_zero()), || {
                format!("{} {}", entry.name, r.complex())
            });
        }
        if entry.name == "sl2_borel" {
            sl2.record(weak.dimension() == semi.dimension(), || format!("{} vs {}", weak.dimension(), semi.dimension()));
        }
        tangent.push(tangent_consistency(s, &entry, GaugeMode::Weak, 10));
        tangent.push(tangent_consistency(s, &entry, GaugeMode::Semistrict, 10));
    }
    let mut out = vec![golden, chain, reps, sl2];
    out.extend(merge(tangent));
    out
}

/// Merges checks with the same property, summing counts.
fn merge(checks: Vec<Check>) -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    for c in checks {
        match out.iter_mut().find(|o| o.property == c.property) {
            Some(o) => {
                o.instances += c.instances;
                o.failures += c.failures;
                if o.witness.is_none() {
                    o.witness = c.witness;
                }
            }
            None => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(Suite::parse(suite.name()).unwrap(), suite);
        }
        assert!(Suite::parse("everything").is_err());
    }

    #[test]
    fn axioms_pass() {
        let report = run(Suite::Axioms, 1);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.checks.iter().all(|c| c.instances > 0));
    }

    #[test]
    fn failures_keep_first_witness() {
        let mut c = Check::new("m", "p");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        assert_eq!((c.instances, c.failures, c.witness.as_deref()), (3, 2, Some("first")));
    }
}
