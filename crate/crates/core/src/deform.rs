//! The realization side: linear maps with coefficients in an Artinian
//! algebra, the standard inclusion of a cochain, small automorphisms of
//! `l (x) A` and their action on standard deformations.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff::{int, rat, ArtinAlgebra, Scalar};
use crate::error::{Error, Result};
use crate::liealg::{Derivation, LieAlgebra, LiePair};
use crate::linalg::Matrix;
use crate::mc::{gauge_solve, getzler_e, AOmega, GaugeMode, GaugeOutcome, GaugeParameter, MCElement};
use crate::omega::{binomial, OmegaElement};

/// A vector with coefficients: one scalar vector per algebra basis vector.
pub type AVector = Vec<Vec<Scalar>>;

/// `sum_alpha M_alpha (x) m_alpha`.
#[derive(Clone, PartialEq, Eq)]
pub struct ALinearMap {
    alg: Arc<ArtinAlgebra>,
    rows: usize,
    cols: usize,
    comps: Vec<Matrix>,
}

impl fmt::Debug for ALinearMap {
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

impl ALinearMap {
    pub fn zero(alg: &Arc<ArtinAlgebra>, rows: usize, cols: usize) -> Self {
        Self {
            alg: Arc::clone(alg),
            rows,
            cols,
            comps: vec![Matrix::zeros(rows, cols); alg.dim()],
        }
    }

    /// `m (x) 1`.
    pub fn constant(alg: &Arc<ArtinAlgebra>, m: Matrix) -> Self {
        let mut out = Self::zero(alg, m.rows(), m.cols());
        out.comps[0] = m;
        out
    }

    pub fn identity(alg: &Arc<ArtinAlgebra>, n: usize) -> Self {
        Self::constant(alg, Matrix::identity(n))
    }

    pub fn from_components(alg: &Arc<ArtinAlgebra>, comps: Vec<Matrix>) -> Result<Self> {
        if comps.len() != alg.dim() {
            return Err(Error::Shape(format!(
                "{} components for a {}-dimensional algebra",
                comps.len(),
                alg.dim()
            )));
        }
        let (rows, cols) = (comps[0].rows(), comps[0].cols());
        if comps.iter().any(|m| m.rows() != rows || m.cols() != cols) {
            return Err(Error::Shape("components have different shapes".into()));
        }
        Ok(Self {
            alg: Arc::clone(alg),
            rows,
            cols,
            comps,
        })
    }

    /// The degree-1 cochain with coefficients viewed as a map `a -> B`.
    pub fn from_omega(x: &AOmega) -> Self {
        let comps = x.components().iter().map(OmegaElement::as_matrix).collect();
        Self::from_components(x.algebra(), comps).expect("shape")
    }

    /// Inverse of [`Self::from_omega`] for a `q x r` map.
    pub fn to_omega(&self, pair: &Arc<LiePair>) -> Result<AOmega> {
        let comps = self
            .comps
            .iter()
            .map(|m| OmegaElement::from_matrix(pair, m))
            .collect::<Result<Vec<_>>>()?;
        AOmega::from_components(pair, &self.alg, comps)
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.alg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    /// The map modulo the maximal ideal.
    pub fn center(&self) -> &Matrix {
        &self.comps[0]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    fn check(&self, other: &ALinearMap) -> Result<()> {
        if !self.alg.same_as(&other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// `self o other`.
    pub fn compose(&self, other: &ALinearMap) -> Result<ALinearMap> {
        self.check(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(&self.alg, self.rows, other.cols);
        let n = self.alg.dim();
        for a in 0..n {
            if self.comps[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if other.comps[b].is_zero() {
                    continue;
                }
                let prod = &self.comps[a] * &other.comps[b];
                for (g, c) in self.alg.structure(a, b).iter().enumerate() {
                    if !c.is_zero() {
                        out.comps[g] = &out.comps[g] + &prod.scale(c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ALinearMap) -> Result<ALinearMap> {
        self.check(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        Self::from_components(&self.alg, comps)
    }

    pub fn sub(&self, other: &ALinearMap) -> Result<ALinearMap> {
        self.check(other)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
        Self::from_components(&self.alg, comps)
    }

    pub fn scale(&self, c: &Scalar) -> ALinearMap {
        Self {
            comps: self.comps.iter().map(|m| m.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ALinearMap {
        Self {
            alg: Arc::clone(&self.alg),
            rows,
            cols,
            comps: self.comps.iter().map(|m| m.block(r0, c0, rows, cols)).collect(),
        }
    }

    /// Inverse through the center: `(M0 (1 - n))^-1 = sum n^k M0^-1` with `n`
    /// nilpotent.
    pub fn inverse(&self) -> Result<ALinearMap> {
        let c_inv = self
            .center()
            .inverse()
            .ok_or_else(|| Error::InvalidGauge("center is not invertible".into()))?;
        let c_inv = Self::constant(&self.alg, c_inv);
        // self = M0 (1 + nil), nil = M0^-1 (self - M0)
        let mut tail = self.clone();
        tail.comps[0] = Matrix::zeros(self.rows, self.cols);
        let nil = c_inv.compose(&tail)?.scale(&int(-1));
        let mut sum = Self::identity(&self.alg, self.rows);
        let mut power = Self::identity(&self.alg, self.rows);
        for _ in 0..self.alg.nilpotency() {
            power = power.compose(&nil)?;
            sum = sum.add(&power)?;
        }
        sum.compose(&c_inv)
    }

    /// `k`-th power of a square map.
    pub fn power(&self, k: usize) -> Result<ALinearMap> {
        let mut out = Self::identity(&self.alg, self.rows);
        for _ in 0..k {
            out = out.compose(self)?;
        }
        Ok(out)
    }

    /// Image of the `j`-th standard basis vector (tensored with `1`).
    pub fn column(&self, j: usize) -> AVector {
        self.comps.iter().map(|m| m.column(j)).collect()
    }

    pub fn apply(&self, v: &AVector) -> AVector {
        let n = self.alg.dim();
        let mut out = vec![vec![Scalar::zero(); self.rows]; n];
        for a in 0..n {
            if self.comps[a].is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if vb.iter().all(Zero::is_zero) {
                    continue;
                }
                let w = self.comps[a].mul_vec(vb);
                for (g, c) in self.alg.structure(a, b).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, x) in out[g].iter_mut().zip(&w) {
                        *o += c * x;
                    }
                }
            }
        }
        out
    }
}

/// The bracket of `l (x) A`.
pub fn bracket_ext(lie: &LieAlgebra, alg: &ArtinAlgebra, u: &AVector, v: &AVector) -> AVector {
    let n = alg.dim();
    let mut out = vec![vec![Scalar::zero(); lie.dim()]; n];
    for (a, ua) in u.iter().enumerate() {
        if ua.iter().all(Zero::is_zero) {
            continue;
        }
        for (b, vb) in v.iter().enumerate() {
            if vb.iter().all(Zero::is_zero) {
                continue;
            }
            let w = lie.bracket(ua, vb);
            for (g, c) in alg.structure(a, b).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out[g].iter_mut().zip(&w) {
                    *o += c * x;
                }
            }
        }
    }
    out
}

fn project(v: &AVector, from: usize, len: usize) -> AVector {
    v.iter().map(|x| x[from..from + len].to_vec()).collect()
}

/// `I_xi = i + j o xi` as an `n x r` map.
pub fn i_xi(xi: &MCElement) -> ALinearMap {
    let pair = xi.pair();
    let (r, n) = (pair.r(), pair.n());
    let comps = xi
        .components()
        .iter()
        .enumerate()
        .map(|(a, x)| {
            let m = x.as_matrix();
            Matrix::from_fn(n, r, |i, j| {
                if i < r {
                    if a == 0 && i == j {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                } else {
                    m.get(i - r, j).clone()
                }
            })
        })
        .collect();
    ALinearMap::from_components(xi.algebra(), comps).expect("shape")
}

/// First subalgebra basis pair on which the image of `I_xi` fails to be
/// closed, i.e. `I_xi(pr_A[I a1, I a2]) != [I a1, I a2]`.
pub fn std_violation(xi: &MCElement) -> Option<(usize, usize)> {
    let pair = xi.pair();
    let alg = xi.algebra();
    let inc = i_xi(xi);
    let cols: Vec<AVector> = (0..pair.r()).map(|a| inc.column(a)).collect();
    for a1 in 0..pair.r() {
        for a2 in a1 + 1..pair.r() {
            let w = bracket_ext(pair.lie(), alg, &cols[a1], &cols[a2]);
            if inc.apply(&project(&w, 0, pair.r())) != w {
                return Some((a1, a2));
            }
        }
    }
    None
}

/// Whether `I_xi` satisfies the standard-deformation equation.
pub fn std_check(xi: &MCElement) -> bool {
    std_violation(xi).is_none()
}

/// Bracket table on `a (x) A`: entry `[i][j]` is `[a_i, a_j]` as an
/// `A`-vector of subalgebra coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedBracket {
    alg: Arc<ArtinAlgebra>,
    table: Vec<Vec<AVector>>,
}

impl InducedBracket {
    pub fn entry(&self, i: usize, j: usize) -> &AVector {
        &self.table[i][j]
    }

    pub fn bracket(&self, u: &AVector, v: &AVector) -> AVector {
        let r = self.table.len();
        let n = self.alg.dim();
        let mut out = vec![vec![Scalar::zero(); r]; n];
        for (a, ua) in u.iter().enumerate() {
            for (b, vb) in v.iter().enumerate() {
                let ab = self.alg.structure(a, b);
                if ab.iter().all(Zero::is_zero) {
                    continue;
                }
                for (i, x) in ua.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in vb.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let xy = x * y;
                        // (x m_a)(y m_b) [a_i, a_j] = xy m_a m_b sum_g T_g m_g
                        for (g, tg) in self.table[i][j].iter().enumerate() {
                            if tg.iter().all(Zero::is_zero) {
                                continue;
                            }
                            for (h, c) in ab.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let coeff = &xy * c;
                                for (e, d) in self.alg.structure(h, g).iter().enumerate() {
                                    if d.is_zero() {
                                        continue;
                                    }
                                    let f = &coeff * d;
                                    for (o, t) in out[e].iter_mut().zip(tg) {
                                        *o += &f * t;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> AVector {
        let r = self.table.len();
        let mut v = vec![vec![Scalar::zero(); r]; self.alg.dim()];
        v[0][i] = Scalar::one();
        v
    }

    /// First basis triple violating the Jacobi identity over `A`.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let r = self.table.len();
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.bracket(&x, &self.table[j][k]);
                    let t2 = self.bracket(&y, &self.table[k][i]);
                    let t3 = self.bracket(&z, &self.table[i][j]);
                    let zero = t1
                        .iter()
                        .zip(&t2)
                        .zip(&t3)
                        .all(|((a, b), c)| a.iter().zip(b).zip(c).all(|((p, q), s)| (p + q + s).is_zero()));
                    if !zero {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// `[a1, a2]^xi = pr_A[I_xi a1, I_xi a2]` without checking the deformation
/// equation.
pub fn induced_bracket_raw(xi: &MCElement) -> InducedBracket {
    let pair = xi.pair();
    let alg = xi.algebra();
    let inc = i_xi(xi);
    let cols: Vec<AVector> = (0..pair.r()).map(|a| inc.column(a)).collect();
    let table = (0..pair.r())
        .map(|a1| {
            (0..pair.r())
                .map(|a2| project(&bracket_ext(pair.lie(), alg, &cols[a1], &cols[a2]), 0, pair.r()))
                .collect()
        })
        .collect();
    InducedBracket {
        alg: Arc::clone(alg),
        table,
    }
}

/// The deformed bracket on `a (x) A`; only defined for standard deformations.
pub fn induced_bracket(xi: &MCElement) -> Result<InducedBracket> {
    if !std_check(xi) {
        return Err(Error::NotMaurerCartan);
    }
    Ok(induced_bracket_raw(xi))
}

/// Bracket-preserving map of `l (x) A` with identity center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallAutomorphism {
    pair: Arc<LiePair>,
    map: ALinearMap,
}

impl SmallAutomorphism {
    pub fn new(pair: &Arc<LiePair>, map: ALinearMap) -> Result<Self> {
        let n = pair.n();
        if map.rows != n || map.cols != n {
            return Err(Error::Shape("automorphism must be n x n".into()));
        }
        if *map.center() != Matrix::identity(n) {
            return Err(Error::CenterMismatch);
        }
        let lie = pair.lie();
        let cols: Vec<AVector> = (0..n).map(|i| map.column(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let mut br: AVector = vec![vec![Scalar::zero(); n]; map.alg.dim()];
                br[0] = lie.structure(i, j).to_vec();
                if map.apply(&br) != bracket_ext(lie, &map.alg, &cols[i], &cols[j]) {
                    return Err(Error::NotBracketPreserving(i, j));
                }
            }
        }
        Ok(Self {
            pair: Arc::clone(pair),
            map,
        })
    }

    pub fn identity(pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>) -> Self {
        Self {
            pair: Arc::clone(pair),
            map: ALinearMap::identity(alg, pair.n()),
        }
    }

    pub fn map(&self) -> &ALinearMap {
        &self.map
    }

    pub fn pair(&self) -> &Arc<LiePair> {
        &self.pair
    }

    /// `self o other`.
    pub fn compose(&self, other: &SmallAutomorphism) -> Result<SmallAutomorphism> {
        Ok(Self {
            pair: Arc::clone(&self.pair),
            map: self.map.compose(&other.map)?,
        })
    }
}

fn derivation_map(delta: &GaugeParameter) -> ALinearMap {
    let comps = delta.components().iter().map(|d| d.matrix().clone()).collect();
    ALinearMap::from_components(delta.algebra(), comps).expect("shape")
}

/// `exp(delta) = sum delta^k / k!`, a finite sum.
pub fn exp_derivation(delta: &GaugeParameter) -> SmallAutomorphism {
    let alg = delta.algebra();
    let d = derivation_map(delta);
    let mut sum = ALinearMap::identity(alg, d.rows);
    let mut term = ALinearMap::identity(alg, d.rows);
    for k in 1..=alg.nilpotency() {
        term = term.compose(&d).expect("same algebra").scale(&rat(1, k as i64));
        sum = sum.add(&term).expect("same algebra");
    }
    SmallAutomorphism {
        pair: Arc::clone(delta.pair()),
        map: sum,
    }
}

/// `log(P) = sum (-1)^(k+1) (P - 1)^k / k`, returned as a weak-mode parameter.
pub fn log_automorphism(p: &SmallAutomorphism) -> Result<GaugeParameter> {
    let alg = p.map.algebra();
    let n = p.map.rows;
    if *p.map.center() != Matrix::identity(n) {
        return Err(Error::CenterMismatch);
    }
    let x = p.map.sub(&ALinearMap::identity(alg, n))?;
    let mut sum = ALinearMap::zero(alg, n, n);
    let mut power = ALinearMap::identity(alg, n);
    for k in 1..=alg.nilpotency() {
        power = power.compose(&x)?;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        sum = sum.add(&power.scale(&rat(sign, k as i64)))?;
    }
    let comps = sum
        .comps
        .into_iter()
        .map(|m| Derivation::new(p.pair.lie(), m))
        .collect::<Result<Vec<_>>>()?;
    GaugeParameter::new(&p.pair, alg, GaugeMode::Weak, comps)
}

/// `P |> xi = pr_B P I_xi (pr_A P I_xi)^-1`.
pub fn act_on_sd(p: &SmallAutomorphism, xi: &MCElement) -> Result<MCElement> {
    if !p.map.algebra().same_as(xi.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if p.pair != *xi.pair() {
        return Err(Error::PairMismatch);
    }
    if !std_check(xi) {
        return Err(Error::NotMaurerCartan);
    }
    let pair = xi.pair();
    let (r, q) = (pair.r(), pair.q());
    let inc = i_xi(xi);
    let moved = p.map.compose(&inc)?;
    let p_xi = moved.block(0, 0, r, r);
    let p_xi_inv = p_xi.inverse()?;
    let eta_map = moved.block(r, 0, q, r).compose(&p_xi_inv)?;
    let eta = MCElement::from_omega(eta_map.to_omega(pair)?)?;
    // I_eta o P_xi = P o I_xi
    if i_xi(&eta).compose(&p_xi)? != moved {
        return Err(Error::InternalInconsistency("action square does not commute".into()));
    }
    if !std_check(&eta) {
        return Err(Error::InternalInconsistency(
            "action produced a non-standard deformation".into(),
        ));
    }
    eta.verify()
}

/// `xi = iota_B o iota_A^-1` for an injective map `I` with center `i` whose
/// image is closed under the bracket.
pub fn standard_realization(pair: &Arc<LiePair>, map: &ALinearMap) -> Result<MCElement> {
    let (r, q, n) = (pair.r(), pair.q(), pair.n());
    if map.rows != n || map.cols != r {
        return Err(Error::Shape("realization must be n x r".into()));
    }
    let inclusion = Matrix::from_fn(n, r, |i, j| if i == j { Scalar::one() } else { Scalar::zero() });
    if *map.center() != inclusion {
        return Err(Error::CenterMismatch);
    }
    let iota_a = map.block(0, 0, r, r);
    let iota_b = map.block(r, 0, q, r);
    let xi_map = iota_b.compose(&iota_a.inverse()?)?;
    let xi = MCElement::from_omega(xi_map.to_omega(pair)?)?;
    if let Some((i, j)) = std_violation(&xi) {
        return Err(Error::NotBracketPreserving(i, j));
    }
    xi.verify()
}

/// `x^k = pr_A delta^k I_xi` and `y^k = pr_B delta^k I_xi` for `k <= kmax`.
pub fn xy_sequences(delta: &GaugeParameter, xi: &MCElement, kmax: usize) -> Result<(Vec<ALinearMap>, Vec<ALinearMap>)> {
    let pair = xi.pair();
    let (r, q) = (pair.r(), pair.q());
    let d = derivation_map(delta);
    let mut current = i_xi(xi);
    let mut xs = Vec::with_capacity(kmax + 1);
    let mut ys = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        if k > 0 {
            current = d.compose(&current)?;
        }
        xs.push(current.block(0, 0, r, r));
        ys.push(current.block(r, 0, q, r));
    }
    Ok((xs, ys))
}

/// Checks `y^k = -sum_p C(k, p) e^p o x^(k-p)` for every `k <= kmax`,
/// returning the first failing `k`.
pub fn appendix_violation(delta: &GaugeParameter, xi: &MCElement, kmax: usize) -> Result<Option<usize>> {
    let (xs, ys) = xy_sequences(delta, xi, kmax)?;
    let es: Vec<ALinearMap> = getzler_e(delta, xi, kmax)?.iter().map(ALinearMap::from_omega).collect();
    for k in 0..=kmax {
        let mut rhs = ALinearMap::zero(xi.algebra(), xi.pair().q(), xi.pair().r());
        for p in 0..=k {
            let c = Scalar::from_integer(binomial(k, p).into());
            rhs = rhs.sub(&es[p].compose(&xs[k - p])?.scale(&c))?;
        }
        if rhs != ys[k] {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

pub fn appendix_check(delta: &GaugeParameter, xi: &MCElement, kmax: usize) -> Result<bool> {
    Ok(appendix_violation(delta, xi, kmax)?.is_none())
}

/// A verified equivalence: `exp(delta) |> xi = eta`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub delta: GaugeParameter,
    pub automorphism: SmallAutomorphism,
}

#[derive(Clone, Debug)]
pub enum Decision {
    Equivalent(Witness),
    NotEquivalent,
    /// The search stopped at the given order without a verdict.
    Unknown { order: usize },
}

/// Decides whether two Maurer-Cartan elements are related by a small
/// automorphism of the given kind.
pub fn equiv_decide(xi: &MCElement, eta: &MCElement, mode: GaugeMode) -> Result<Decision> {
    match gauge_solve(xi, eta, mode)? {
        GaugeOutcome::Equivalent(delta) => {
            let automorphism = exp_derivation(&delta);
            let image = act_on_sd(&automorphism, xi)?;
            if !image.same_element(eta) {
                return Err(Error::InternalInconsistency("gauge witness failed to verify".into()));
            }
            Ok(Decision::Equivalent(Witness { delta, automorphism }))
        }
        GaugeOutcome::NotEquivalent => Ok(Decision::NotEquivalent),
        GaugeOutcome::NotFoundAtOrder(order) => Ok(Decision::Unknown { order }),
    }
}
