//! Maurer-Cartan elements with coefficients in the maximal ideal of a local
//! Artinian algebra, the gauge action of nilpotent derivations, and
//! order-by-order solvers along the `m`-adic filtration.
//!
//! Cochains with coefficients are stored as one [`OmegaElement`] per basis
//! vector of the coefficient algebra; brackets extend by multiplying the
//! coefficients through the algebra table.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff::{int, rat, ArtinAlgebra, ArtinMorphism, Scalar};
use crate::cohomology::{h_ce, CohomologyReport};
use crate::error::{Error, Result};
use crate::liealg::{combine, derivation_space, inner_derivation_space, within_span, Derivation, LiePair};
use crate::linalg::Matrix;
use crate::omega::{self, binomial, OmegaElement};

/// Nonzero structure constants `(alpha, beta, gamma, c)` of the algebra.
fn products(alg: &ArtinAlgebra) -> Vec<(usize, usize, usize, Scalar)> {
    let n = alg.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for (g, c) in alg.structure(a, b).iter().enumerate() {
                if !c.is_zero() {
                    out.push((a, b, g, c.clone()));
                }
            }
        }
    }
    out
}

/// Coefficients of `m_a * m_b * m_e` for all triples, as a flat list.
fn triple_products(alg: &ArtinAlgebra) -> Vec<(usize, usize, usize, usize, Scalar)> {
    let n = alg.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = alg.structure(a, b);
            for e in 0..n {
                let mut prod = vec![Scalar::zero(); n];
                for (g, c) in ab.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (h, d) in alg.structure(g, e).iter().enumerate() {
                        if !d.is_zero() {
                            prod[h] += c * d;
                        }
                    }
                }
                for (h, c) in prod.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.push((a, b, e, h, c));
                    }
                }
            }
        }
    }
    out
}

/// A cochain of fixed degree with coefficients in an Artinian algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct AOmega {
    pair: Arc<LiePair>,
    alg: Arc<ArtinAlgebra>,
    degree: usize,
    comps: Vec<OmegaElement>,
}

impl fmt::Debug for AOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (label, c) in self.alg.labels().iter().zip(&self.comps) {
            if !c.is_zero() {
                m.entry(label, c);
            }
        }
        m.finish()
    }
}

impl AOmega {
    pub fn zero(pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>, degree: usize) -> Self {
        Self {
            pair: Arc::clone(pair),
            alg: Arc::clone(alg),
            degree,
            comps: vec![OmegaElement::zero(pair, degree); alg.dim()],
        }
    }

    pub fn from_components(pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>, comps: Vec<OmegaElement>) -> Result<Self> {
        if comps.len() != alg.dim() {
            return Err(Error::Shape(format!(
                "{} components for a {}-dimensional algebra",
                comps.len(),
                alg.dim()
            )));
        }
        let degree = comps[0].degree();
        for c in &comps {
            if c.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: c.degree(),
                });
            }
            if !(Arc::ptr_eq(c.pair(), pair) || **c.pair() == **pair) {
                return Err(Error::PairMismatch);
            }
        }
        Ok(Self {
            pair: Arc::clone(pair),
            alg: Arc::clone(alg),
            degree,
            comps,
        })
    }

    /// `x (x) m` for a single cochain and algebra element.
    pub fn elementary(x: &OmegaElement, alg: &Arc<ArtinAlgebra>, coeffs: &[Scalar]) -> Self {
        let comps = coeffs.iter().map(|c| x.scale(c)).collect();
        Self {
            pair: Arc::clone(x.pair()),
            alg: Arc::clone(alg),
            degree: x.degree(),
            comps,
        }
    }

    pub fn pair(&self) -> &Arc<LiePair> {
        &self.pair
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.alg
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[OmegaElement] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &OmegaElement {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(OmegaElement::is_zero)
    }

    fn check_same(&self, other: &AOmega) -> Result<()> {
        if !self.alg.same_as(&other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &AOmega) -> Result<AOmega> {
        self.check_same(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(Self { comps, ..self.clone() })
    }

    pub fn sub(&self, other: &AOmega) -> Result<AOmega> {
        self.check_same(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(Self { comps, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> AOmega {
        Self {
            comps: self.comps.iter().map(|x| x.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub(crate) fn axpy(&mut self, c: &Scalar, other: &AOmega) {
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            a.axpy(c, b);
        }
    }

    /// Components along the filtration-adapted basis of the algebra.
    pub fn adapted_components(&self) -> Vec<OmegaElement> {
        let n = self.alg.dim();
        let change: Vec<Vec<Scalar>> = (0..n).map(|a| self.alg.to_adapted(&unit_row(n, a))).collect();
        (0..n)
            .map(|u| {
                let mut out = OmegaElement::zero(&self.pair, self.degree);
                for (a, c) in self.comps.iter().enumerate() {
                    out.axpy(&change[a][u], c);
                }
                out
            })
            .collect()
    }

    /// Whether every coefficient lies in `m^k`.
    pub fn in_power(&self, k: usize) -> bool {
        let layers = self.alg.layers();
        self.adapted_components()
            .iter()
            .zip(layers)
            .all(|(c, &l)| l >= k || c.is_zero())
    }

    /// Components of layer `k` (adapted basis index and cochain).
    pub fn layer_components(&self, k: usize) -> Vec<(usize, OmegaElement)> {
        let layers = self.alg.layers().to_vec();
        self.adapted_components()
            .into_iter()
            .enumerate()
            .filter(|(u, _)| layers[*u] == k)
            .collect()
    }

    /// Image under `id (x) theta`.
    pub fn push(&self, theta: &ArtinMorphism) -> Result<AOmega> {
        if !theta.source().same_as(&self.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let target = theta.target();
        let mut comps = vec![OmegaElement::zero(&self.pair, self.degree); target.dim()];
        let m = theta.matrix();
        for (g, out) in comps.iter_mut().enumerate() {
            for (a, c) in self.comps.iter().enumerate() {
                out.axpy(m.get(g, a), c);
            }
        }
        Ok(Self {
            pair: Arc::clone(&self.pair),
            alg: Arc::clone(target),
            degree: self.degree,
            comps,
        })
    }
}

fn unit_row(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Differential applied coefficientwise.
pub fn d_ext(x: &AOmega) -> AOmega {
    AOmega {
        comps: x.comps.iter().map(omega::d_ce).collect(),
        degree: x.degree + 1,
        ..x.clone()
    }
}

fn bilinear(
    alg: &ArtinAlgebra,
    out: &mut [OmegaElement],
    left_zero: impl Fn(usize) -> bool,
    right_zero: impl Fn(usize) -> bool,
    mut f: impl FnMut(usize, usize) -> Result<OmegaElement>,
) -> Result<()> {
    for (a, b, g, c) in products(alg) {
        if left_zero(a) || right_zero(b) {
            continue;
        }
        out[g].axpy(&c, &f(a, b)?);
    }
    Ok(())
}

/// `[xi, eta]_2` with coefficients.
pub fn b2_ext(xi: &AOmega, eta: &AOmega) -> Result<AOmega> {
    let mut out = AOmega::zero(&xi.pair, &xi.alg, 2);
    bilinear(
        &xi.alg,
        &mut out.comps,
        |a| xi.comps[a].is_zero(),
        |b| eta.comps[b].is_zero(),
        |a, b| omega::b2_deg1(&xi.comps[a], &eta.comps[b]),
    )?;
    Ok(out)
}

/// `[xi, eta, zeta]_3` with coefficients.
pub fn b3_ext(xi: &AOmega, eta: &AOmega, zeta: &AOmega) -> Result<AOmega> {
    let mut out = AOmega::zero(&xi.pair, &xi.alg, 2);
    for (a, b, e, h, c) in triple_products(&xi.alg) {
        if xi.comps[a].is_zero() || eta.comps[b].is_zero() || zeta.comps[e].is_zero() {
            continue;
        }
        out.comps[h].axpy(&c, &omega::b3_deg1(&xi.comps[a], &eta.comps[b], &zeta.comps[e])?);
    }
    Ok(out)
}

/// Which derivations a gauge parameter may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaugeMode {
    /// All derivations.
    Weak,
    /// Inner derivations.
    Semistrict,
    /// `ad` of complement vectors.
    Matched,
}

impl GaugeMode {
    pub fn name(self) -> &'static str {
        match self {
            GaugeMode::Weak => "weak",
            GaugeMode::Semistrict => "semistrict",
            GaugeMode::Matched => "matched",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(GaugeMode::Weak),
            "semistrict" => Ok(GaugeMode::Semistrict),
            "matched" => Ok(GaugeMode::Matched),
            _ => Err(Error::Parse(format!("unknown gauge mode `{s}`"))),
        }
    }

    /// Spanning set of admissible derivations.
    pub fn basis(self, pair: &LiePair) -> Vec<Derivation> {
        match self {
            GaugeMode::Weak => derivation_space(pair.lie()),
            GaugeMode::Semistrict => inner_derivation_space(pair.lie()),
            GaugeMode::Matched => pair.complement_derivations(),
        }
    }
}

/// A derivation with coefficients in the maximal ideal, one matrix per
/// algebra basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeParameter {
    pair: Arc<LiePair>,
    alg: Arc<ArtinAlgebra>,
    mode: GaugeMode,
    comps: Vec<Derivation>,
}

impl GaugeParameter {
    pub fn new(pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>, mode: GaugeMode, comps: Vec<Derivation>) -> Result<Self> {
        if comps.len() != alg.dim() {
            return Err(Error::InvalidGauge(format!(
                "{} components for a {}-dimensional algebra",
                comps.len(),
                alg.dim()
            )));
        }
        if !comps[0].is_zero() {
            return Err(Error::NotInMaximalIdeal);
        }
        for d in &comps {
            if d.matrix().rows() != pair.n() || d.matrix().cols() != pair.n() {
                return Err(Error::Shape("derivation matrix has the wrong size".into()));
            }
            if let Some((i, j)) = pair.lie().leibniz_violation(d.matrix()) {
                return Err(Error::NotADerivation(i, j));
            }
        }
        if mode != GaugeMode::Weak && !within_span(&mode.basis(pair), &comps) {
            return Err(Error::InvalidGauge(format!(
                "components are not admissible in {} mode",
                mode.name()
            )));
        }
        Ok(Self {
            pair: Arc::clone(pair),
            alg: Arc::clone(alg),
            mode,
            comps,
        })
    }

    pub fn zero(pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>, mode: GaugeMode) -> Self {
        Self {
            pair: Arc::clone(pair),
            alg: Arc::clone(alg),
            mode,
            comps: vec![Derivation::zero(pair.n()); alg.dim()],
        }
    }

    /// `d (x) m` for an admissible derivation and an element `m` of the
    /// maximal ideal.
    pub fn elementary(
        pair: &Arc<LiePair>,
        alg: &Arc<ArtinAlgebra>,
        mode: GaugeMode,
        d: &Derivation,
        coeffs: &[Scalar],
    ) -> Result<Self> {
        let comps = coeffs.iter().map(|c| d.scale(c)).collect();
        Self::new(pair, alg, mode, comps)
    }

    pub fn pair(&self) -> &Arc<LiePair> {
        &self.pair
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.alg
    }

    pub fn mode(&self) -> GaugeMode {
        self.mode
    }

    pub fn components(&self) -> &[Derivation] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Derivation::is_zero)
    }

    pub(crate) fn add_unchecked(&self, other: &GaugeParameter) -> GaugeParameter {
        Self {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
            ..self.clone()
        }
    }

    pub(crate) fn from_parts(pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>, mode: GaugeMode, comps: Vec<Derivation>) -> Self {
        Self {
            pair: Arc::clone(pair),
            alg: Arc::clone(alg),
            mode,
            comps,
        }
    }

    /// Image under `id (x) theta`.
    pub fn push(&self, theta: &ArtinMorphism) -> Result<GaugeParameter> {
        if !theta.source().same_as(&self.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let target = theta.target();
        let n = self.pair.n();
        let m = theta.matrix();
        let comps = (0..target.dim())
            .map(|g| {
                let coeffs: Vec<Scalar> = (0..self.alg.dim()).map(|a| m.get(g, a).clone()).collect();
                combine(&self.comps, &coeffs, n)
            })
            .collect();
        Ok(Self::from_parts(&self.pair, target, self.mode, comps))
    }
}

/// A degree-1 cochain with coefficients in the maximal ideal; a candidate
/// Maurer-Cartan element, flagged once the equation has been checked.
#[derive(Clone, PartialEq, Eq)]
pub struct MCElement {
    inner: AOmega,
    verified: bool,
}

impl fmt::Debug for MCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MCElement(verified: {}, {:?})", self.verified, self.inner)
    }
}

impl MCElement {
    pub fn new(pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>, comps: Vec<OmegaElement>) -> Result<Self> {
        let inner = AOmega::from_components(pair, alg, comps)?;
        Self::from_omega(inner)
    }

    pub fn from_omega(inner: AOmega) -> Result<Self> {
        if inner.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: inner.degree,
            });
        }
        if !inner.comps[0].is_zero() {
            return Err(Error::NotInMaximalIdeal);
        }
        Ok(Self { inner, verified: false })
    }

    pub fn zero(pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>) -> Self {
        Self {
            inner: AOmega::zero(pair, alg, 1),
            verified: true,
        }
    }

    /// `x (x) m` with `m` in the maximal ideal.
    pub fn elementary(x: &OmegaElement, alg: &Arc<ArtinAlgebra>, coeffs: &[Scalar]) -> Result<Self> {
        Self::from_omega(AOmega::elementary(x, alg, coeffs))
    }

    /// Checks the Maurer-Cartan equation and sets the flag.
    pub fn verify(mut self) -> Result<Self> {
        if !self.verified {
            if !mc_residual(&self).is_zero() {
                return Err(Error::NotMaurerCartan);
            }
            self.verified = true;
        }
        Ok(self)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn omega(&self) -> &AOmega {
        &self.inner
    }

    pub fn pair(&self) -> &Arc<LiePair> {
        &self.inner.pair
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.inner.alg
    }

    pub fn components(&self) -> &[OmegaElement] {
        &self.inner.comps
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Same underlying cochain, ignoring the verification flag.
    pub fn same_element(&self, other: &MCElement) -> bool {
        self.inner == other.inner
    }

    fn require_verified(&self) -> Result<()> {
        if self.verified || is_mc(self) {
            Ok(())
        } else {
            Err(Error::NotMaurerCartan)
        }
    }
}

/// `d xi + 1/2 [xi, xi]_2 + 1/6 [xi, xi, xi]_3`.
pub fn mc_residual(xi: &MCElement) -> AOmega {
    let x = &xi.inner;
    let mut out = d_ext(x);
    out.axpy(&rat(1, 2), &b2_ext(x, x).expect("degree 1"));
    out.axpy(&rat(1, 6), &b3_ext(x, x, x).expect("degree 1"));
    out
}

pub fn is_mc(xi: &MCElement) -> bool {
    mc_residual(xi).is_zero()
}

/// Whether the residual lies in `m^k`.
pub fn is_mc_mod(xi: &MCElement, k: usize) -> bool {
    mc_residual(xi).in_power(k)
}

/// `[delta]_1` with coefficients.
pub fn ext_b1_ext(delta: &GaugeParameter) -> AOmega {
    let comps = delta.comps.iter().map(|d| omega::ext_b1(&delta.pair, d)).collect();
    AOmega {
        pair: Arc::clone(&delta.pair),
        alg: Arc::clone(&delta.alg),
        degree: 1,
        comps,
    }
}

/// `[delta, X]_2` with coefficients.
pub fn ext_b2_ext(delta: &GaugeParameter, x: &AOmega) -> Result<AOmega> {
    let mut out = AOmega::zero(&x.pair, &x.alg, x.degree);
    bilinear(
        &x.alg,
        &mut out.comps,
        |a| delta.comps[a].is_zero(),
        |b| x.comps[b].is_zero(),
        |a, b| Ok(omega::ext_b2(&delta.comps[a], &x.comps[b])),
    )?;
    Ok(out)
}

/// `[delta, X, Y]_3` with coefficients.
pub fn ext_b3_ext(delta: &GaugeParameter, x: &AOmega, y: &AOmega) -> Result<AOmega> {
    let mut out = AOmega::zero(&x.pair, &x.alg, x.degree + y.degree - 1);
    for (a, b, e, h, c) in triple_products(&x.alg) {
        if delta.comps[a].is_zero() || x.comps[b].is_zero() || y.comps[e].is_zero() {
            continue;
        }
        out.comps[h].axpy(&c, &omega::ext_b3(&delta.comps[a], &x.comps[b], &y.comps[e])?);
    }
    Ok(out)
}

fn check_compatible(delta: &GaugeParameter, xi: &MCElement) -> Result<()> {
    if !delta.alg.same_as(xi.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if !(Arc::ptr_eq(&delta.pair, xi.pair()) || delta.pair == *xi.pair()) {
        return Err(Error::PairMismatch);
    }
    Ok(())
}

/// The sequence `e^0, ..., e^kmax` of the gauge recursion.
pub fn getzler_e(delta: &GaugeParameter, xi: &MCElement, kmax: usize) -> Result<Vec<AOmega>> {
    check_compatible(delta, xi)?;
    xi.require_verified()?;
    let x = &xi.inner;
    let mut e = vec![x.scale(&int(-1))];
    if kmax == 0 {
        return Ok(e);
    }
    let mut e1 = ext_b1_ext(delta);
    e1.axpy(&int(-1), &ext_b2_ext(delta, x)?);
    e1.axpy(&rat(1, 2), &ext_b3_ext(delta, x, x)?);
    e.push(e1);
    for k in 1..kmax {
        let mut next = ext_b2_ext(delta, &e[k])?;
        next.axpy(&int(-1), &ext_b3_ext(delta, x, &e[k])?);
        for k1 in 1..k {
            let c = Scalar::from_integer(binomial(k, k1).into()) * rat(1, 2);
            next.axpy(&c, &ext_b3_ext(delta, &e[k1], &e[k - k1])?);
        }
        e.push(next);
    }
    Ok(e)
}

fn factorial(k: usize) -> Scalar {
    Scalar::from_integer((1..=k).product::<usize>().into())
}

/// `xi - sum_k e^k / k!`, checked to be Maurer-Cartan.
pub fn gauge_act(delta: &GaugeParameter, xi: &MCElement) -> Result<MCElement> {
    let out = gauge_act_unchecked(delta, xi)?;
    if !is_mc(&out) {
        return Err(Error::InternalInconsistency(
            "gauge action produced a non Maurer-Cartan element".into(),
        ));
    }
    Ok(MCElement { verified: true, ..out })
}

fn gauge_act_unchecked(delta: &GaugeParameter, xi: &MCElement) -> Result<MCElement> {
    let n = xi.algebra().nilpotency();
    let e = getzler_e(delta, xi, n)?;
    let mut out = xi.inner.clone();
    for (k, ek) in e.iter().enumerate().skip(1) {
        out.axpy(&-factorial(k).recip(), ek);
    }
    MCElement::from_omega(out)
}

/// Result of [`gauge_solve`].
#[derive(Clone, Debug)]
pub enum GaugeOutcome {
    /// A parameter carrying the first element to the second.
    Equivalent(GaugeParameter),
    /// The first-order system has no solution; the elements are not gauge
    /// equivalent.
    NotEquivalent,
    /// The order-`k` system had no solution for the lower-order choices made.
    NotFoundAtOrder(usize),
}

/// Layer-`k` adapted components of `x`, concatenated.
fn layer_vector(x: &AOmega, k: usize) -> Vec<Scalar> {
    x.layer_components(k).into_iter().flat_map(|(_, c)| c.into_data()).collect()
}

/// `d (x) m_u` as a parameter, `m_u` an adapted basis vector.
fn along(pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>, mode: GaugeMode, d: &Derivation, u: usize) -> GaugeParameter {
    let comps = alg.adapted_vector(u).iter().map(|c| d.scale(c)).collect();
    GaugeParameter::from_parts(pair, alg, mode, comps)
}

/// Searches for `delta` in the given mode with `gauge_act(delta, xi) = eta`,
/// one layer of the `m`-adic filtration at a time.
///
/// At order `k` the unknowns are the layer-`k` part of `delta` together with
/// a correction at layer `k - 1` inside the kernel of the unary bracket. The
/// order-`k` residual is affine in both, so each step is a linear solve.
/// Choices made at layers below `k - 1` are never revisited.
pub fn gauge_solve(xi: &MCElement, eta: &MCElement, mode: GaugeMode) -> Result<GaugeOutcome> {
    if !xi.algebra().same_as(eta.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if xi.pair() != eta.pair() {
        return Err(Error::PairMismatch);
    }
    xi.require_verified()?;
    eta.require_verified()?;
    let pair = xi.pair();
    let alg = xi.algebra();
    let basis = mode.basis(pair);
    let unary: Vec<Vec<Scalar>> = basis.iter().map(|d| omega::ext_b1(pair, d).into_data()).collect();
    let stabilizer: Vec<Derivation> = if unary.is_empty() {
        Vec::new()
    } else {
        Matrix::from_columns(&unary, pair.r() * pair.q())
            .nullspace()
            .iter()
            .map(|c| combine(&basis, c, pair.n()))
            .collect()
    };
    let block = pair.r() * pair.q();
    let mut delta = GaugeParameter::zero(pair, alg, mode);
    for k in 1..=alg.nilpotency() {
        let current = gauge_act_unchecked(&delta, xi)?;
        let residual = eta.inner.sub(&current.inner)?;
        if !residual.in_power(k) {
            return Err(Error::InternalInconsistency(format!(
                "gauge residual not in m^{k} after solving lower orders"
            )));
        }
        let target = layer_vector(&residual, k);
        if target.iter().all(Zero::is_zero) {
            continue;
        }
        let here = alg.layer(k);
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        let mut moves: Vec<GaugeParameter> = Vec::new();
        // Adding D (x) m_u changes the action by -ext_b1(D) (x) m_u at this order.
        for (slot, &u) in here.iter().enumerate() {
            for (d, col) in basis.iter().zip(&unary) {
                let mut c = vec![Scalar::zero(); target.len()];
                for (i, x) in col.iter().enumerate() {
                    c[slot * block + i] = -x;
                }
                columns.push(c);
                moves.push(along(pair, alg, mode, d, u));
            }
        }
        if k >= 2 {
            for u in alg.layer(k - 1) {
                for d in &stabilizer {
                    let mv = along(pair, alg, mode, d, u);
                    let moved = gauge_act_unchecked(&delta.add_unchecked(&mv), xi)?;
                    let change = moved.inner.sub(&current.inner)?;
                    columns.push(layer_vector(&change, k));
                    moves.push(mv);
                }
            }
        }
        let Some(coeffs) = crate::linalg::express_in_span(&columns, &target) else {
            return Ok(if k == 1 {
                GaugeOutcome::NotEquivalent
            } else {
                GaugeOutcome::NotFoundAtOrder(k)
            });
        };
        let n_alg = alg.dim();
        let mut step = vec![Derivation::zero(pair.n()); n_alg];
        for (c, mv) in coeffs.iter().zip(&moves) {
            if c.is_zero() {
                continue;
            }
            for (s, d) in step.iter_mut().zip(&mv.comps) {
                *s = s.add(&d.scale(c));
            }
        }
        delta = delta.add_unchecked(&GaugeParameter::from_parts(pair, alg, mode, step));
    }
    let result = gauge_act(&delta, xi)?;
    if result.inner != eta.inner {
        return Ok(GaugeOutcome::NotFoundAtOrder(alg.nilpotency() + 1));
    }
    Ok(GaugeOutcome::Equivalent(delta))
}

/// The class of a non-exact order-`k` residual component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionClass {
    /// Filtration layer of the residual.
    pub order: usize,
    /// Adapted basis index of the algebra direction that is obstructed.
    pub direction: usize,
    /// The residual component, a 2-cocycle.
    pub cocycle: OmegaElement,
    /// Coordinates of its class on the representatives of the second
    /// cohomology.
    pub class: Vec<Scalar>,
}

/// Result of [`mc_extend`].
#[derive(Clone, Debug)]
pub enum Extension {
    /// A corrected element, Maurer-Cartan modulo `m^(k+1)`.
    Extended(MCElement),
    Obstructed(ObstructionClass),
}

/// Given `xi` Maurer-Cartan modulo `m^k`, corrects its layer-`k` part so the
/// equation holds modulo `m^(k+1)`, or reports the obstruction.
pub fn mc_extend(xi: &MCElement, k: usize) -> Result<Extension> {
    if k == 0 {
        return Err(Error::InvalidGauge("extension order starts at 1".into()));
    }
    let residual = mc_residual(xi);
    if !residual.in_power(k) {
        return Err(Error::NotMaurerCartanModulo(k));
    }
    let pair = xi.pair();
    let alg = xi.algebra();
    let d1 = differential_matrix(pair, 1);
    let mut h2: Option<CohomologyReport> = None;
    let mut out = xi.inner.clone();
    for (u, r) in residual.layer_components(k) {
        if r.is_zero() {
            continue;
        }
        let target: Vec<Scalar> = r.data().iter().map(|x| -x).collect();
        match d1.solve(&target) {
            Some(c) => {
                let c = OmegaElement::from_data(pair, 1, c)?;
                let m_u = alg.adapted_vector(u);
                out.axpy(&Scalar::one(), &AOmega::elementary(&c, alg, &m_u));
            }
            None => {
                let report = h2.get_or_insert_with(|| h_ce(pair, 2));
                let class = report.class_coords(&r)?;
                return Ok(Extension::Obstructed(ObstructionClass {
                    order: k,
                    direction: u,
                    cocycle: r,
                    class,
                }));
            }
        }
    }
    let extended = MCElement::from_omega(out)?;
    if !is_mc_mod(&extended, k + 1) {
        return Err(Error::InternalInconsistency(format!(
            "extension is not Maurer-Cartan modulo m^{}",
            k + 1
        )));
    }
    Ok(Extension::Extended(extended))
}

/// Matrix of `d_ce: Omega^k -> Omega^(k+1)` on the standard bases.
pub fn differential_matrix(pair: &Arc<LiePair>, k: usize) -> Matrix {
    let dim = binomial(pair.r(), k) * pair.q();
    let rows = binomial(pair.r(), k + 1) * pair.q();
    let cols: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| {
            let mut data = vec![Scalar::zero(); dim];
            data[i] = Scalar::one();
            omega::d_ce(&OmegaElement::from_data(pair, k, data).expect("shape")).into_data()
        })
        .collect();
    Matrix::from_columns(&cols, rows)
}

/// Image of a Maurer-Cartan element under `id (x) theta`.
pub fn mc_push(theta: &ArtinMorphism, xi: &MCElement) -> Result<MCElement> {
    let pushed = MCElement::from_omega(xi.inner.push(theta)?)?;
    if xi.verified {
        // Morphisms preserve the equation; re-check as a guard.
        return pushed.verify().map_err(|_| {
            Error::InternalInconsistency("pushforward of a Maurer-Cartan element failed the equation".into())
        });
    }
    Ok(pushed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::liealg::inner_derivation;
    use crate::sample::Sampler;

    fn pair(name: &str) -> Arc<LiePair> {
        catalog::lookup(name).unwrap().pair
    }

    fn t_coeff(alg: &ArtinAlgebra, power: usize) -> Vec<Scalar> {
        let label = if power == 1 { "t".to_string() } else { format!("t^{power}") };
        let i = alg.labels().iter().position(|l| *l == label).unwrap();
        unit_row(alg.dim(), i)
    }

    #[test]
    fn zero_is_mc() {
        let p = pair("b3");
        let xi = MCElement::new(&p, &ArtinAlgebra::dual(), vec![OmegaElement::zero(&p, 1); 2]).unwrap();
        assert!(is_mc(&xi));
    }

    #[test]
    fn unit_component_rejected() {
        let p = pair("aff1");
        let x = OmegaElement::from_entries(&p, 1, &[(vec![0], 0, int(1))]).unwrap();
        let dual = ArtinAlgebra::dual();
        assert!(matches!(
            MCElement::elementary(&x, &dual, &[int(1), int(0)]),
            Err(Error::NotInMaximalIdeal)
        ));
    }

    #[test]
    fn dual_numbers_residual_is_differential() {
        let p = pair("b3_toral");
        let dual = ArtinAlgebra::dual();
        let x = OmegaElement::from_entries(&p, 1, &[(vec![0], 0, int(1)), (vec![3], 1, int(2))]).unwrap();
        let xi = MCElement::elementary(&x, &dual, &t_coeff(&dual, 1)).unwrap();
        let res = mc_residual(&xi);
        assert_eq!(res.component(1), &omega::d_ce(&x));
        assert!(res.component(0).is_zero());
    }

    #[test]
    fn cocycle_over_dual_numbers_is_mc_and_non_cocycle_is_not() {
        let p = pair("b3");
        let dual = ArtinAlgebra::dual();
        let d1 = differential_matrix(&p, 1);
        let z = d1.nullspace();
        assert!(!z.is_empty());
        let c = OmegaElement::from_data(&p, 1, z[0].clone()).unwrap();
        let xi = MCElement::elementary(&c, &dual, &t_coeff(&dual, 1)).unwrap();
        assert!(is_mc(&xi));
        let col = (0..d1.cols()).find(|&j| d1.column(j).iter().any(|x| !x.is_zero())).unwrap();
        let mut data = vec![int(0); d1.cols()];
        data[col] = int(1);
        let bad = OmegaElement::from_data(&p, 1, data).unwrap();
        assert!(!is_mc(&MCElement::elementary(&bad, &dual, &t_coeff(&dual, 1)).unwrap()));
    }

    #[test]
    fn second_order_residual_of_cocycle() {
        let p = pair("b3");
        let t3 = ArtinAlgebra::t_power(3).unwrap();
        let z = differential_matrix(&p, 1).nullspace();
        for v in z {
            let c = OmegaElement::from_data(&p, 1, v).unwrap();
            let xi = MCElement::elementary(&c, &t3, &t_coeff(&t3, 1)).unwrap();
            let res = mc_residual(&xi);
            let half = omega::b2_deg1(&c, &c).unwrap().scale(&rat(1, 2));
            assert!(res.component(1).is_zero());
            assert_eq!(res.component(2), &half);
        }
    }

    #[test]
    fn zero_parameter_acts_trivially() {
        let p = pair("sl2_borel");
        let t3 = ArtinAlgebra::t_power(3).unwrap();
        let mut s = Sampler::new(5);
        let xi = s.mc_element(&p, &t3);
        let delta = GaugeParameter::zero(&p, &t3, GaugeMode::Weak);
        let e = getzler_e(&delta, &xi, 3).unwrap();
        assert!(e[1..].iter().all(AOmega::is_zero));
        assert!(gauge_act(&delta, &xi).unwrap().same_element(&xi));
    }

    #[test]
    fn square_zero_action_is_linear() {
        let p = pair("b3");
        let alg = ArtinAlgebra::square_zero(2).unwrap();
        let mut s = Sampler::new(11);
        for _ in 0..5 {
            let xi = s.mc_element(&p, &alg);
            let delta = s.gauge(&p, &alg, GaugeMode::Weak);
            let acted = gauge_act(&delta, &xi).unwrap();
            let expected = xi.omega().sub(&ext_b1_ext(&delta)).unwrap();
            assert_eq!(acted.omega(), &expected);
            let e = getzler_e(&delta, &xi, 3).unwrap();
            assert!(e[2].is_zero() && e[3].is_zero());
        }
    }

    #[test]
    fn getzler_terms_respect_filtration() {
        let p = pair("b3_toral");
        let alg = ArtinAlgebra::t_power(4).unwrap();
        let mut s = Sampler::new(3);
        let xi = s.mc_element(&p, &alg);
        let delta = s.gauge(&p, &alg, GaugeMode::Weak);
        let e = getzler_e(&delta, &xi, 4).unwrap();
        for (k, ek) in e.iter().enumerate().skip(1) {
            assert!(ek.in_power(k), "e^{k}");
        }
        assert!(e[4].is_zero());
    }

    #[test]
    fn gauge_solve_round_trip() {
        let mut s = Sampler::new(21);
        for name in ["b3", "sl2_borel", "heis3_center"] {
            let p = pair(name);
            let alg = ArtinAlgebra::t_power(3).unwrap();
            let xi = s.mc_element(&p, &alg);
            for mode in [GaugeMode::Weak, GaugeMode::Semistrict] {
                let delta0 = s.gauge(&p, &alg, mode);
                let eta = gauge_act(&delta0, &xi).unwrap();
                match gauge_solve(&xi, &eta, mode).unwrap() {
                    GaugeOutcome::Equivalent(d) => {
                        assert!(gauge_act(&d, &xi).unwrap().same_element(&eta));
                    }
                    other => panic!("{name} {mode:?}: {other:?}"),
                }
            }
            match gauge_solve(&xi, &xi, GaugeMode::Weak).unwrap() {
                GaugeOutcome::Equivalent(d) => assert!(d.is_zero()),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn distinct_tangent_classes_are_not_equivalent() {
        let p = pair("b3");
        let dual = ArtinAlgebra::dual();
        let report = crate::cohomology::h1_ext(&p);
        assert_eq!(report.dimension(), 2);
        let x = MCElement::elementary(&report.representatives()[0], &dual, &t_coeff(&dual, 1)).unwrap();
        let y = MCElement::elementary(&report.representatives()[1], &dual, &t_coeff(&dual, 1)).unwrap();
        assert!(matches!(gauge_solve(&x, &y, GaugeMode::Weak).unwrap(), GaugeOutcome::NotEquivalent));
    }

    #[test]
    fn extension_on_abelian_pair_needs_no_correction() {
        let p = pair("abelian_4_2");
        let t3 = ArtinAlgebra::t_power(3).unwrap();
        let x = OmegaElement::from_entries(&p, 1, &[(vec![0], 1, int(1))]).unwrap();
        let xi = MCElement::elementary(&x, &t3, &t_coeff(&t3, 1)).unwrap();
        match mc_extend(&xi, 2).unwrap() {
            Extension::Extended(e) => assert!(e.same_element(&xi)),
            Extension::Obstructed(o) => panic!("{o:?}"),
        }
    }

    #[test]
    fn extension_on_b3() {
        let p = pair("b3");
        let t3 = ArtinAlgebra::t_power(3).unwrap();
        for v in differential_matrix(&p, 1).nullspace() {
            let c = OmegaElement::from_data(&p, 1, v).unwrap();
            let xi = MCElement::elementary(&c, &t3, &t_coeff(&t3, 1)).unwrap();
            match mc_extend(&xi, 2).unwrap() {
                Extension::Extended(e) => assert!(is_mc(&e)),
                Extension::Obstructed(o) => {
                    assert_eq!(o.order, 2);
                    assert!(o.class.iter().any(|x| !x.is_zero()));
                    assert!(omega::d_ce(&o.cocycle).is_zero());
                }
            }
        }
    }

    #[test]
    fn pushforward_truncates() {
        let p = pair("sl2_borel");
        let t3 = ArtinAlgebra::t_power(3).unwrap();
        let dual = ArtinAlgebra::dual();
        let theta = ArtinMorphism::by_labels(Arc::clone(&t3), Arc::clone(&dual)).unwrap();
        let mut s = Sampler::new(8);
        let xi = s.mc_element(&p, &t3);
        let pushed = mc_push(&theta, &xi).unwrap();
        assert_eq!(pushed.components()[1], xi.components()[1]);
        let id = ArtinMorphism::identity(Arc::clone(&t3));
        assert!(mc_push(&id, &xi).unwrap().same_element(&xi));
    }

    #[test]
    fn mode_constraints() {
        let p = pair("sl2_borel");
        let dual = ArtinAlgebra::dual();
        let ad_h = inner_derivation(p.lie(), &p.lie().basis_vector(0));
        assert!(GaugeParameter::elementary(&p, &dual, GaugeMode::Matched, &ad_h, &[int(0), int(1)]).is_err());
        assert!(GaugeParameter::elementary(&p, &dual, GaugeMode::Semistrict, &ad_h, &[int(0), int(1)]).is_ok());
        assert!(matches!(
            GaugeParameter::elementary(&p, &dual, GaugeMode::Weak, &ad_h, &[int(1), int(0)]),
            Err(Error::NotInMaximalIdeal)
        ));
    }
}
