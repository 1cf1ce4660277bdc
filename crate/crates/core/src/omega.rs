//! Cochains `Omega^k = Hom(Lambda^k a, B)` of a Lie pair and the bracket
//! operations defined on them.
//!
//! Elements are dense tensors indexed by strictly increasing tuples of
//! subalgebra indices (lexicographic order) and quotient coordinates.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::liealg::{Derivation, LiePair};
use crate::linalg::Matrix;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All strictly increasing `k`-tuples from `0..r`, in lexicographic order.
pub fn increasing_tuples(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(r, k));
    go(0, r, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Position of an increasing tuple in [`increasing_tuples`].
pub fn tuple_rank(tuple: &[usize], r: usize) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut next = 0;
    for (i, &c) in tuple.iter().enumerate() {
        for j in next..c {
            rank += binomial(r - 1 - j, k - 1 - i);
        }
        next = c + 1;
    }
    rank
}

/// Sorts `idx` in place and returns the sign of the sorting permutation, or
/// `None` when an index repeats.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(negative)
}

/// `(p, m - p)` shuffles of `0..m`: the first `p` entries and the rest are
/// each increasing. Yields the permutation and whether its sign is negative.
pub fn shuffles(m: usize, p: usize) -> Vec<(Vec<usize>, bool)> {
    increasing_tuples(m, p)
        .into_iter()
        .map(|head| {
            let tail: Vec<usize> = (0..m).filter(|i| !head.contains(i)).collect();
            let inversions: usize = head
                .iter()
                .map(|&h| tail.iter().filter(|&&t| t < h).count())
                .sum();
            let mut perm = head;
            perm.extend(tail);
            (perm, inversions % 2 == 1)
        })
        .collect()
}

/// Element of `Omega^k`.
#[derive(Clone)]
pub struct OmegaElement {
    pair: Arc<LiePair>,
    degree: usize,
    /// `data[t * q + b]` is the `b`-th quotient coordinate on tuple `t`.
    data: Vec<Scalar>,
}

impl PartialEq for OmegaElement {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.data == other.data
            && (Arc::ptr_eq(&self.pair, &other.pair) || self.pair == other.pair)
    }
}

impl Eq for OmegaElement {}

impl fmt::Debug for OmegaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Omega^{}{{", self.degree)?;
        let q = self.pair.q();
        let tuples = increasing_tuples(self.pair.r(), self.degree);
        let mut first = true;
        for (t, tuple) in tuples.iter().enumerate() {
            for b in 0..q {
                let c = &self.data[t * q + b];
                if !c.is_zero() {
                    if !first {
                        write!(f, ", ")?;
                    }
                    first = false;
                    write!(f, "{tuple:?}->{b}: {c}")?;
                }
            }
        }
        write!(f, "}}")
    }
}

impl OmegaElement {
    pub fn zero(pair: &Arc<LiePair>, degree: usize) -> Self {
        let len = binomial(pair.r(), degree) * pair.q();
        Self {
            pair: Arc::clone(pair),
            degree,
            data: vec![Scalar::zero(); len],
        }
    }

    pub fn from_data(pair: &Arc<LiePair>, degree: usize, data: Vec<Scalar>) -> Result<Self> {
        let len = binomial(pair.r(), degree) * pair.q();
        if data.len() != len {
            return Err(Error::Shape(format!(
                "Omega^{degree} needs {len} coefficients, got {}",
                data.len()
            )));
        }
        Ok(Self {
            pair: Arc::clone(pair),
            degree,
            data,
        })
    }

    /// Builds from sparse `(indices, b, coeff)` records. Indices need not be
    /// sorted; repeated indices are rejected.
    pub fn from_entries(pair: &Arc<LiePair>, degree: usize, entries: &[(Vec<usize>, usize, Scalar)]) -> Result<Self> {
        let mut x = Self::zero(pair, degree);
        for (idx, b, c) in entries {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: idx.len(),
                });
            }
            if *b >= pair.q() || idx.iter().any(|&i| i >= pair.r()) {
                return Err(Error::Shape(format!("entry {idx:?} -> {b} is out of range")));
            }
            let mut sorted = idx.clone();
            let negative = sort_with_sign(&mut sorted)
                .ok_or_else(|| Error::Shape(format!("repeated index in {idx:?}")))?;
            let pos = tuple_rank(&sorted, pair.r()) * pair.q() + b;
            if negative {
                x.data[pos] -= c;
            } else {
                x.data[pos] += c;
            }
        }
        Ok(x)
    }

    /// Degree-1 element from its `q x r` matrix.
    pub fn from_matrix(pair: &Arc<LiePair>, m: &Matrix) -> Result<Self> {
        if m.rows() != pair.q() || m.cols() != pair.r() {
            return Err(Error::Shape("degree-1 matrix must be q x r".into()));
        }
        let q = pair.q();
        let data = (0..pair.r() * q).map(|i| m.get(i % q, i / q).clone()).collect();
        Self::from_data(pair, 1, data)
    }

    /// Degree-0 element, a vector of `B`.
    pub fn from_quotient(pair: &Arc<LiePair>, b: Vec<Scalar>) -> Result<Self> {
        Self::from_data(pair, 0, b)
    }

    pub fn pair(&self) -> &Arc<LiePair> {
        &self.pair
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero `(indices, b, coeff)` records.
    pub fn entries(&self) -> Vec<(Vec<usize>, usize, Scalar)> {
        let q = self.pair.q();
        let mut out = Vec::new();
        for (t, tuple) in increasing_tuples(self.pair.r(), self.degree).into_iter().enumerate() {
            for b in 0..q {
                let c = &self.data[t * q + b];
                if !c.is_zero() {
                    out.push((tuple.clone(), b, c.clone()));
                }
            }
        }
        out
    }

    /// `q x r` matrix of a degree-1 element.
    pub fn as_matrix(&self) -> Matrix {
        assert_eq!(self.degree, 1, "as_matrix needs degree 1");
        let q = self.pair.q();
        Matrix::from_fn(q, self.pair.r(), |b, a| self.data[a * q + b].clone())
    }

    /// Value on subalgebra basis vectors `idx` (any order), as a `B`-vector.
    pub fn value(&self, idx: &[usize]) -> Vec<Scalar> {
        let q = self.pair.q();
        let mut sorted = idx.to_vec();
        let Some(negative) = sort_with_sign(&mut sorted) else {
            return vec![Scalar::zero(); q];
        };
        let t = tuple_rank(&sorted, self.pair.r());
        let slice = &self.data[t * q..(t + 1) * q];
        if negative {
            slice.iter().map(|x| -x).collect()
        } else {
            slice.to_vec()
        }
    }

    /// Value with a general subalgebra vector `v` in the first slot and basis
    /// vectors `rest` in the others.
    pub fn value_first(&self, v: &[Scalar], rest: &[usize]) -> Vec<Scalar> {
        let q = self.pair.q();
        let mut out = vec![Scalar::zero(); q];
        let mut idx = Vec::with_capacity(rest.len() + 1);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() || rest.contains(&c) {
                continue;
            }
            idx.clear();
            idx.push(c);
            idx.extend_from_slice(rest);
            for (o, y) in out.iter_mut().zip(self.value(&idx)) {
                *o += x * y;
            }
        }
        out
    }

    fn check_same(&self, other: &OmegaElement) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        if !(Arc::ptr_eq(&self.pair, &other.pair) || self.pair == other.pair) {
            return Err(Error::PairMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &OmegaElement) -> Result<OmegaElement> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { data, ..self.clone() })
    }

    pub fn sub(&self, other: &OmegaElement) -> Result<OmegaElement> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { data, ..self.clone() })
    }

    /// `self += c * other`, for elements already known to be compatible.
    pub(crate) fn axpy(&mut self, c: &Scalar, other: &OmegaElement) {
        debug_assert_eq!(self.degree, other.degree);
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> OmegaElement {
        Self {
            data: self.data.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> OmegaElement {
        Self {
            data: self.data.iter().map(|x| -x).collect(),
            ..self.clone()
        }
    }

    fn from_values(pair: &Arc<LiePair>, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<Scalar>) -> Self {
        let mut data = Vec::with_capacity(binomial(pair.r(), degree) * pair.q());
        for tuple in increasing_tuples(pair.r(), degree) {
            data.extend(f(&tuple));
        }
        Self {
            pair: Arc::clone(pair),
            degree,
            data,
        }
    }
}

fn add_into(acc: &mut [Scalar], v: &[Scalar], negative: bool) {
    for (a, x) in acc.iter_mut().zip(v) {
        if x.is_zero() {
            continue;
        }
        if negative {
            *a -= x;
        } else {
            *a += x;
        }
    }
}

fn require_degree(x: &OmegaElement, expected: usize) -> Result<()> {
    if x.degree != expected {
        return Err(Error::DegreeMismatch {
            expected,
            found: x.degree,
        });
    }
    Ok(())
}

fn require_pair(a: &OmegaElement, b: &OmegaElement) -> Result<()> {
    if Arc::ptr_eq(&a.pair, &b.pair) || a.pair == b.pair {
        Ok(())
    } else {
        Err(Error::PairMismatch)
    }
}

/// Chevalley-Eilenberg differential of the Bott representation.
pub fn d_ce(x: &OmegaElement) -> OmegaElement {
    let pair = x.pair();
    let r = pair.r();
    let lie = pair.lie();
    OmegaElement::from_values(pair, x.degree + 1, |tuple| {
        let mut acc = vec![Scalar::zero(); pair.q()];
        let mut rest = Vec::with_capacity(tuple.len());
        for i in 0..tuple.len() {
            rest.clear();
            rest.extend(tuple.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &a)| a));
            let v = pair.nabla(tuple[i]).mul_vec(&x.value(&rest));
            add_into(&mut acc, &v, i % 2 == 1);
        }
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                let br = &lie.structure(tuple[i], tuple[j])[..r];
                if br.iter().all(Zero::is_zero) {
                    continue;
                }
                rest.clear();
                rest.extend(
                    tuple
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != i && p != j)
                        .map(|(_, &a)| a),
                );
                let v = x.value_first(br, &rest);
                add_into(&mut acc, &v, (i + j) % 2 == 1);
            }
        }
        acc
    })
}

/// `j(xi(a))` in ambient coordinates, for `xi` of degree 1.
fn lift(pair: &LiePair, xi: &OmegaElement, a: usize) -> Vec<Scalar> {
    pair.split(&xi.value(&[a]))
}

/// `Q(xi) = pr_B[j xi a1, j xi a2] - xi(pr_A[j xi a1, a2]) - xi(pr_A[a1, j xi a2])`,
/// half the binary bracket of `xi` with itself.
pub fn quadratic_term(xi: &OmegaElement) -> Result<OmegaElement> {
    require_degree(xi, 1)?;
    let pair = xi.pair();
    let lie = pair.lie();
    let lifts: Vec<Vec<Scalar>> = (0..pair.r()).map(|a| lift(pair, xi, a)).collect();
    Ok(OmegaElement::from_values(pair, 2, |t| {
        let (a1, a2) = (t[0], t[1]);
        let mut acc = pair.pr_b(&lie.bracket(&lifts[a1], &lifts[a2])).to_vec();
        let u = lie.bracket(&lifts[a1], &lie.basis_vector(a2));
        add_into(&mut acc, &xi.value_first(pair.pr_a(&u), &[]), true);
        let u = lie.bracket(&lie.basis_vector(a1), &lifts[a2]);
        add_into(&mut acc, &xi.value_first(pair.pr_a(&u), &[]), true);
        acc
    }))
}

/// `C(xi) = -xi(pr_A[j xi a1, j xi a2])`, a sixth of the ternary bracket of
/// `xi` with itself.
pub fn cubic_term(xi: &OmegaElement) -> Result<OmegaElement> {
    require_degree(xi, 1)?;
    let pair = xi.pair();
    let lie = pair.lie();
    let lifts: Vec<Vec<Scalar>> = (0..pair.r()).map(|a| lift(pair, xi, a)).collect();
    Ok(OmegaElement::from_values(pair, 2, |t| {
        let u = lie.bracket(&lifts[t[0]], &lifts[t[1]]);
        xi.value_first(pair.pr_a(&u), &[]).into_iter().map(|x| -x).collect()
    }))
}

/// Binary bracket on degree-1 cochains, the symmetric bilinear form whose
/// diagonal is `2 Q(xi)`.
pub fn b2_deg1(xi: &OmegaElement, eta: &OmegaElement) -> Result<OmegaElement> {
    require_degree(xi, 1)?;
    require_degree(eta, 1)?;
    require_pair(xi, eta)?;
    let pair = xi.pair();
    let lie = pair.lie();
    let r = pair.r();
    let lx: Vec<Vec<Scalar>> = (0..r).map(|a| lift(pair, xi, a)).collect();
    let ly: Vec<Vec<Scalar>> = (0..r).map(|a| lift(pair, eta, a)).collect();
    Ok(OmegaElement::from_values(pair, 2, |t| {
        let (a1, a2) = (t[0], t[1]);
        let (e1, e2) = (lie.basis_vector(a1), lie.basis_vector(a2));
        let mut acc = pair.pr_b(&lie.bracket(&lx[a1], &ly[a2])).to_vec();
        add_into(&mut acc, pair.pr_b(&lie.bracket(&ly[a1], &lx[a2])), false);
        for (u, v) in [(xi, &ly), (eta, &lx)] {
            let w = lie.bracket(&v[a1], &e2);
            add_into(&mut acc, &u.value_first(pair.pr_a(&w), &[]), true);
            let w = lie.bracket(&e1, &v[a2]);
            add_into(&mut acc, &u.value_first(pair.pr_a(&w), &[]), true);
        }
        acc
    }))
}

/// Ternary bracket on degree-1 cochains, symmetric trilinear with diagonal
/// `6 C(xi)`.
pub fn b3_deg1(xi: &OmegaElement, eta: &OmegaElement, zeta: &OmegaElement) -> Result<OmegaElement> {
    for x in [xi, eta, zeta] {
        require_degree(x, 1)?;
        require_pair(xi, x)?;
    }
    let pair = xi.pair();
    let lie = pair.lie();
    let r = pair.r();
    let args = [xi, eta, zeta];
    let lifts: Vec<Vec<Vec<Scalar>>> = args
        .iter()
        .map(|x| (0..r).map(|a| lift(pair, x, a)).collect())
        .collect();
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    Ok(OmegaElement::from_values(pair, 2, |t| {
        let mut acc = vec![Scalar::zero(); pair.q()];
        for [u, v, w] in PERMS {
            let br = lie.bracket(&lifts[v][t[0]], &lifts[w][t[1]]);
            add_into(&mut acc, &args[u].value_first(pair.pr_a(&br), &[]), true);
        }
        acc
    }))
}

/// Unary bracket of a derivation: `a -> -pr_B(delta(a))`.
pub fn ext_b1(pair: &Arc<LiePair>, delta: &Derivation) -> OmegaElement {
    let (r, q) = (pair.r(), pair.q());
    let d = delta.matrix();
    let data = (0..r * q).map(|i| -d.get(r + i % q, i / q).clone()).collect();
    OmegaElement {
        pair: Arc::clone(pair),
        degree: 1,
        data,
    }
}

/// Blocks of a derivation in the adapted basis: `(pr_A d i, pr_A d j,
/// pr_B d i, pr_B d j)`.
pub fn blocks(pair: &LiePair, delta: &Derivation) -> (Matrix, Matrix, Matrix, Matrix) {
    let (r, q) = (pair.r(), pair.q());
    let d = delta.matrix();
    (d.block(0, 0, r, r), d.block(0, r, r, q), d.block(r, 0, q, r), d.block(r, r, q, q))
}

/// Action of a derivation on cochains:
/// `(pr_B d j)(X(a_1..a_k)) - sum_j X(.., pr_A d(a_j), ..)`.
pub fn ext_b2(delta: &Derivation, x: &OmegaElement) -> OmegaElement {
    let pair = x.pair();
    let (daa, _, _, dbb) = blocks(pair, delta);
    let k = x.degree;
    OmegaElement::from_values(pair, k, |tuple| {
        let mut acc = dbb.mul_vec(&x.value(tuple));
        let mut rest = Vec::with_capacity(k);
        for j in 0..k {
            // Move slot j to the front: sign (-1)^j.
            rest.clear();
            rest.extend(tuple.iter().enumerate().filter(|&(p, _)| p != j).map(|(_, &a)| a));
            let v = x.value_first(&daa.column(tuple[j]), &rest);
            add_into(&mut acc, &v, j % 2 == 0);
        }
        acc
    })
}

/// Binary bracket of two derivations: the commutator.
pub fn ext_b2_der(d1: &Derivation, d2: &Derivation) -> Derivation {
    d1.commutator(d2)
}

/// Ternary bracket `[delta, X, Y]` with `X` of degree `p`, `Y` of degree
/// `q`, built from the two shuffle sums with `P = pr_A delta j`.
pub fn ext_b3(delta: &Derivation, x: &OmegaElement, y: &OmegaElement) -> Result<OmegaElement> {
    require_pair(x, y)?;
    let (p, qd) = (x.degree, y.degree);
    if p == 0 || qd == 0 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: 0,
        });
    }
    let pair = x.pair();
    let m = p + qd - 1;
    let (_, dab, _, _) = blocks(pair, delta);
    if m > pair.r() || dab.is_zero() {
        return Ok(OmegaElement::zero(pair, m));
    }
    let sh1 = shuffles(m, p);
    let sh2 = shuffles(m, p - 1);
    let first_negative = p % 2 == 0;
    Ok(OmegaElement::from_values(pair, m, |tuple| {
        let mut acc = vec![Scalar::zero(); pair.q()];
        for (perm, neg) in &sh1 {
            let head: Vec<usize> = perm[..p].iter().map(|&i| tuple[i]).collect();
            let rest: Vec<usize> = perm[p..].iter().map(|&i| tuple[i]).collect();
            let v = dab.mul_vec(&x.value(&head));
            add_into(&mut acc, &y.value_first(&v, &rest), *neg != first_negative);
        }
        for (perm, neg) in &sh2 {
            let rest: Vec<usize> = perm[..p - 1].iter().map(|&i| tuple[i]).collect();
            let tail: Vec<usize> = perm[p - 1..].iter().map(|&i| tuple[i]).collect();
            let v = dab.mul_vec(&y.value(&tail));
            add_into(&mut acc, &x.value_first(&v, &rest), *neg);
        }
        acc
    }))
}

/// Degree-0 piece of the extended algebra: a derivation and a quotient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HZero {
    pub derivation: Derivation,
    pub quotient: OmegaElement,
}

impl HZero {
    pub fn new(derivation: Derivation, quotient: OmegaElement) -> Result<Self> {
        require_degree(&quotient, 0)?;
        let n = quotient.pair().n();
        if derivation.matrix().rows() != n {
            return Err(Error::PairMismatch);
        }
        Ok(Self { derivation, quotient })
    }

    /// Unary bracket into degree 1: `[delta]_1 + d_ce(b)`.
    pub fn differential(&self) -> OmegaElement {
        let pair = self.quotient.pair();
        let mut out = ext_b1(pair, &self.derivation);
        out.axpy(&Scalar::one(), &d_ce(&self.quotient));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coeff::int;
    use crate::liealg::{inner_derivation, LieAlgebra};

    fn pair(name: &str) -> Arc<LiePair> {
        catalog::lookup(name).unwrap().pair
    }

    fn elementary(p: &Arc<LiePair>, a: usize, b: usize) -> OmegaElement {
        OmegaElement::from_entries(p, 1, &[(vec![a], b, int(1))]).unwrap()
    }

    #[test]
    fn tuple_ranks_match_enumeration() {
        for r in 0..6 {
            for k in 0..=r {
                for (i, t) in increasing_tuples(r, k).iter().enumerate() {
                    assert_eq!(tuple_rank(t, r), i);
                }
            }
        }
    }

    #[test]
    fn sorting_signs() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut v), Some(false));
        let mut v = vec![1, 0, 2];
        assert_eq!(sort_with_sign(&mut v), Some(true));
        let mut v = vec![1, 2, 1];
        assert_eq!(sort_with_sign(&mut v), None);
    }

    #[test]
    fn shuffle_counts_and_signs() {
        let s = shuffles(3, 1);
        assert_eq!(s.len(), 3);
        assert_eq!(s[1], (vec![1, 0, 2], true));
        assert_eq!(shuffles(4, 2).len(), 6);
    }

    #[test]
    fn antisymmetric_storage() {
        let p = pair("b3");
        let x = OmegaElement::from_entries(&p, 2, &[(vec![2, 0], 1, int(5))]).unwrap();
        assert_eq!(x.value(&[0, 2]), vec![int(0), int(-5), int(0)]);
        assert_eq!(x.value(&[2, 0]), vec![int(0), int(5), int(0)]);
        assert!(x.value(&[1, 1]).iter().all(Zero::is_zero));
    }

    #[test]
    fn differential_squares_to_zero() {
        for entry in catalog::entries() {
            let p = &entry.pair;
            for k in 0..p.r() {
                for t in 0..binomial(p.r(), k) * p.q() {
                    let mut data = vec![Scalar::zero(); binomial(p.r(), k) * p.q()];
                    data[t] = int(1);
                    let x = OmegaElement::from_data(p, k, data).unwrap();
                    assert!(d_ce(&d_ce(&x)).is_zero(), "{} degree {k}", entry.name);
                }
            }
        }
    }

    #[test]
    fn b3_class_of_e22_is_closed() {
        let p = pair("b3");
        let b = OmegaElement::from_quotient(&p, vec![int(1), int(0), int(0)]).unwrap();
        assert!(d_ce(&b).is_zero());
    }

    #[test]
    fn aff1_degree_zero_differential_vanishes() {
        let p = pair("aff1");
        let b = OmegaElement::from_quotient(&p, vec![int(1)]).unwrap();
        assert!(d_ce(&b).is_zero());
    }

    #[test]
    fn differential_on_degree_one_matches_closed_formula() {
        let p = pair("b3_toral");
        let lie = p.lie();
        let xi = OmegaElement::from_entries(&p, 1, &[(vec![3], 0, int(2)), (vec![1], 1, int(-1))]).unwrap();
        let d = d_ce(&xi);
        for a1 in 0..p.r() {
            for a2 in 0..p.r() {
                let mut expected = p.nabla(a1).mul_vec(&xi.value(&[a2]));
                add_into(&mut expected, &p.nabla(a2).mul_vec(&xi.value(&[a1])), true);
                let br = lie.structure(a1, a2);
                add_into(&mut expected, &xi.value_first(&br[..p.r()], &[]), true);
                assert_eq!(d.value(&[a1, a2]), expected);
            }
        }
    }

    #[test]
    fn polarization_matches_diagonal() {
        let p = pair("b3");
        let xi = elementary(&p, 1, 1);
        let two_q = quadratic_term(&xi).unwrap().scale(&int(2));
        assert_eq!(b2_deg1(&xi, &xi).unwrap(), two_q);
        let eta = OmegaElement::from_entries(&p, 1, &[(vec![0], 2, int(1)), (vec![2], 0, int(3))]).unwrap();
        let sum = xi.add(&eta).unwrap();
        let polar = quadratic_term(&sum)
            .unwrap()
            .sub(&quadratic_term(&xi).unwrap())
            .unwrap()
            .sub(&quadratic_term(&eta).unwrap())
            .unwrap();
        assert_eq!(b2_deg1(&xi, &eta).unwrap(), polar);
        assert_eq!(b2_deg1(&eta, &xi).unwrap(), polar);
    }

    #[test]
    fn cubic_diagonal_and_symmetry() {
        let p = pair("b3_toral");
        let xi = OmegaElement::from_entries(
            &p,
            1,
            &[(vec![0], 0, int(1)), (vec![1], 1, int(1)), (vec![3], 0, int(1))],
        )
        .unwrap();
        let six_c = cubic_term(&xi).unwrap().scale(&int(6));
        assert_eq!(b3_deg1(&xi, &xi, &xi).unwrap(), six_c);
        assert!(!six_c.is_zero());
        let eta = elementary(&p, 2, 1);
        let zeta = elementary(&p, 3, 0);
        let a = b3_deg1(&xi, &eta, &zeta).unwrap();
        assert_eq!(a, b3_deg1(&zeta, &xi, &eta).unwrap());
        assert_eq!(a, b3_deg1(&eta, &zeta, &xi).unwrap());
        let z = OmegaElement::zero(&p, 1);
        assert!(b3_deg1(&xi, &eta, &z).unwrap().is_zero());
    }

    #[test]
    fn cubic_vanishes_on_matched_pairs() {
        for name in ["sl2_borel", "aff1", "b3"] {
            let p = pair(name);
            for a in 0..p.r() {
                for b in 0..p.q() {
                    let xi = elementary(&p, a, b);
                    assert!(cubic_term(&xi).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn unary_bracket_examples() {
        let b3 = pair("b3");
        let ad = inner_derivation(b3.lie(), &b3.lie().basis_vector(0));
        assert!(ext_b1(&b3, &ad).is_zero());

        let borel = pair("sl2_borel");
        let ad_f = inner_derivation(borel.lie(), &borel.lie().basis_vector(2));
        // [f, h] = 2f and [f, e] = -h.
        let x = ext_b1(&borel, &ad_f);
        assert_eq!(x.value(&[0]), vec![int(-2)]);
        assert_eq!(x.value(&[1]), vec![int(0)]);
    }

    #[test]
    fn unary_bracket_lands_in_cocycles() {
        for entry in catalog::entries() {
            for d in crate::liealg::derivation_space(entry.pair.lie()) {
                assert!(d_ce(&ext_b1(&entry.pair, &d)).is_zero(), "{}", entry.name);
            }
        }
    }

    #[test]
    fn scaling_derivation_on_abelian_pair() {
        let p = LiePair::new(LieAlgebra::abelian(4), 2).unwrap();
        let id = Derivation::new(p.lie(), Matrix::identity(4)).unwrap();
        let x = OmegaElement::from_entries(&p, 2, &[(vec![0, 1], 1, int(3))]).unwrap();
        assert_eq!(ext_b2(&id, &x), x.scale(&int(-1)));
        let y = elementary(&p, 1, 0);
        assert!(ext_b2(&id, &y).is_zero());
        assert!(ext_b2(&Derivation::zero(4), &x).is_zero());
    }

    #[test]
    fn adjoint_property_on_sl2() {
        let sl2 = catalog::sl2();
        for i in 0..3 {
            for j in 0..3 {
                let (u, v) = (sl2.basis_vector(i), sl2.basis_vector(j));
                let lhs = ext_b2_der(&inner_derivation(&sl2, &u), &inner_derivation(&sl2, &v));
                assert_eq!(lhs, inner_derivation(&sl2, &sl2.bracket(&u, &v)));
            }
        }
    }

    #[test]
    fn ternary_degree_one_formula() {
        let p = pair("b3_toral");
        let ad = inner_derivation(p.lie(), &p.lie().basis_vector(5));
        let (_, dab, _, _) = blocks(&p, &ad);
        assert!(!dab.is_zero());
        let xi = elementary(&p, 0, 0);
        let eta = OmegaElement::from_entries(&p, 1, &[(vec![3], 1, int(1)), (vec![0], 1, int(2))]).unwrap();
        let z = ext_b3(&ad, &xi, &eta).unwrap();
        assert_eq!(z, ext_b3(&ad, &eta, &xi).unwrap());
        for a in 0..p.r() {
            let mut expected = eta.value_first(&dab.mul_vec(&xi.value(&[a])), &[]);
            add_into(&mut expected, &xi.value_first(&dab.mul_vec(&eta.value(&[a])), &[]), false);
            assert_eq!(z.value(&[a]), expected);
        }
    }

    #[test]
    fn ternary_vanishes_for_complement_derivations_of_matched_pairs() {
        for name in ["sl2_borel", "aff1", "b3"] {
            let p = pair(name);
            for d in p.complement_derivations() {
                let (_, dab, _, _) = blocks(&p, &d);
                assert!(dab.is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn binary_jacobi_with_derivation() {
        // d[delta, X] = [[delta]_1, X] + [delta, dX] for X of degree 1.
        let mut s = crate::sample::Sampler::new(17);
        for entry in catalog::entries() {
            let p = &entry.pair;
            for d in crate::liealg::derivation_space(p.lie()) {
                let x = s.omega(p, 1);
                let lhs = d_ce(&ext_b2(&d, &x));
                let rhs = b2_deg1(&ext_b1(p, &d), &x).unwrap().add(&ext_b2(&d, &d_ce(&x))).unwrap();
                assert_eq!(lhs, rhs, "{}", entry.name);
            }
        }
    }

    fn action_defect(d1: &Derivation, d2: &Derivation, x: &OmegaElement) -> OmegaElement {
        let lhs = ext_b2(&ext_b2_der(d1, d2), x);
        let nested = ext_b2(d1, &ext_b2(d2, x)).sub(&ext_b2(d2, &ext_b2(d1, x))).unwrap();
        lhs.sub(&nested).unwrap()
    }

    #[test]
    fn derivation_action_law() {
        let mut s = crate::sample::Sampler::new(18);
        for entry in catalog::entries() {
            let p = &entry.pair;
            let ders = crate::liealg::derivation_space(p.lie());
            let preserving: Vec<&Derivation> = ders.iter().filter(|d| blocks(p, d).2.is_zero()).collect();
            for k in 1..=p.r().min(3) {
                for _ in 0..6 {
                    let x = s.omega(p, k);
                    let (d1, d2) = (&ders[s.index(ders.len())], &ders[s.index(ders.len())]);
                    let correction = ext_b3(d1, &ext_b1(p, d2), &x)
                        .unwrap()
                        .sub(&ext_b3(d2, &ext_b1(p, d1), &x).unwrap())
                        .unwrap();
                    assert_eq!(action_defect(d1, d2, &x), correction, "{} degree {k}", entry.name);
                    if !preserving.is_empty() {
                        let e1 = preserving[s.index(preserving.len())];
                        let e2 = preserving[s.index(preserving.len())];
                        assert!(action_defect(e1, e2, &x).is_zero(), "{} degree {k}", entry.name);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_errors() {
        let p = pair("aff1");
        let b = OmegaElement::zero(&p, 0);
        assert!(matches!(quadratic_term(&b), Err(Error::DegreeMismatch { .. })));
        let xi = OmegaElement::zero(&p, 1);
        assert!(ext_b3(&Derivation::zero(2), &xi, &xi).unwrap().degree() == 1);
        let overflow = ext_b3(&Derivation::zero(2), &xi, &OmegaElement::zero(&p, 1)).unwrap();
        assert!(overflow.is_zero());
    }
}
