//! Lie algebras given by structure constants, derivations, and Lie pairs in
//! an adapted basis.
//!
//! A [`LiePair`] fixes the convention that the first `r` basis vectors of the
//! ambient algebra span the subalgebra and the remaining `q = n - r` vectors
//! span the chosen complement; the complement *is* the splitting `B -> L`.
//! Projections onto the subalgebra and the quotient are then coordinate
//! projections.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::linalg::{row_basis, span_rank, Matrix};

/// Outcome of [`validate_lie`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieValidation {
    Valid,
    Shape,
    /// `f[i][j] != -f[j][i]`.
    Antisymmetry(usize, usize),
    /// Jacobi identity fails on basis triple.
    Jacobi(usize, usize, usize),
}

impl LieValidation {
    pub fn is_valid(&self) -> bool {
        matches!(self, LieValidation::Valid)
    }
}

fn bracket_with(f: &[Vec<Vec<Scalar>>], u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let n = u.len();
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in u.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in v.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x * y;
            for (k, c) in f[i][j].iter().enumerate() {
                if !c.is_zero() {
                    out[k] += &xy * c;
                }
            }
        }
    }
    out
}

/// Checks antisymmetry and the Jacobi identity on every basis triple.
pub fn validate_lie(f: &[Vec<Vec<Scalar>>]) -> LieValidation {
    let n = f.len();
    if !f.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n)) {
        return LieValidation::Shape;
    }
    for i in 0..n {
        for j in i..n {
            let ok = f[i][j].iter().zip(&f[j][i]).all(|(a, b)| (a + b).is_zero());
            if !ok {
                return LieValidation::Antisymmetry(i, j);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let e = |x: usize| {
                    let mut v = vec![Scalar::zero(); n];
                    v[x] = Scalar::one();
                    v
                };
                let (ei, ej, ek) = (e(i), e(j), e(k));
                let t1 = bracket_with(f, &ei, &f[j][k]);
                let t2 = bracket_with(f, &ej, &f[k][i]);
                let t3 = bracket_with(f, &ek, &f[i][j]);
                if !(0..n).all(|c| (&t1[c] + &t2[c] + &t3[c]).is_zero()) {
                    return LieValidation::Jacobi(i, j, k);
                }
            }
        }
    }
    LieValidation::Valid
}

/// Finite-dimensional Lie algebra over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    consts: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebra {
    pub fn from_constants(labels: Vec<String>, consts: Vec<Vec<Vec<Scalar>>>) -> Result<Arc<Self>> {
        if labels.len() != consts.len() {
            return Err(Error::InvalidLie(format!(
                "{} labels for dimension {}",
                labels.len(),
                consts.len()
            )));
        }
        match validate_lie(&consts) {
            LieValidation::Valid => Ok(Arc::new(Self { labels, consts })),
            other => Err(Error::InvalidLie(format!("{other:?}"))),
        }
    }

    /// Builds constants from `[b_i, b_j] = sum coeff * b_k` records with
    /// `i < j`; the antisymmetric half is implied.
    pub fn from_sparse(labels: Vec<String>, brackets: &[(usize, usize, usize, Scalar)]) -> Result<Arc<Self>> {
        let n = labels.len();
        let mut consts = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, j, k, c) in brackets {
            let (i, j, k) = (*i, *j, *k);
            if i >= j || j >= n || k >= n {
                return Err(Error::InvalidLie(format!(
                    "bracket record ({i}, {j}, {k}) needs i < j < {n} and k < {n}"
                )));
            }
            consts[i][j][k] += c;
            consts[j][i][k] -= c;
        }
        Self::from_constants(labels, consts)
    }

    pub fn abelian(n: usize) -> Arc<Self> {
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        Self::from_constants(labels, vec![vec![vec![Scalar::zero(); n]; n]; n]).expect("abelian")
    }

    /// The Lie algebra spanned by the given matrices, assumed closed under
    /// commutator. Structure constants are solved from the commutators.
    pub fn from_matrices(labels: Vec<String>, mats: &[Matrix]) -> Result<Arc<Self>> {
        let flat: Vec<Vec<Scalar>> = mats.iter().map(|m| m.data().to_vec()).collect();
        let len = flat.first().map_or(0, Vec::len);
        if span_rank(&flat, len) != mats.len() {
            return Err(Error::InvalidLie("matrices are linearly dependent".into()));
        }
        let n = mats.len();
        let mut consts = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = mats[i].commutator(&mats[j]);
                let coeffs = crate::linalg::express_in_span(&flat, c.data())
                    .ok_or_else(|| Error::InvalidLie(format!("[{i}, {j}] leaves the span")))?;
                consts[i][j] = coeffs;
            }
        }
        Self::from_constants(labels, consts)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.consts
    }

    /// Coordinates of `[b_i, b_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        &self.consts[i][j]
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        bracket_with(&self.consts, u, v)
    }

    /// Matrix of `ad_u = [u, -]`.
    pub fn ad(&self, u: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.consts[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        *m.entry_mut(k, j) += x * c;
                    }
                }
            }
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// First basis pair on which `d` fails the Leibniz rule, if any.
    pub fn leibniz_violation(&self, d: &Matrix) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            let di = d.column(i);
            for j in i + 1..n {
                let dj = d.column(j);
                let lhs = d.mul_vec(self.structure(i, j));
                let mut rhs = self.bracket(&di, &self.basis_vector(j));
                for (r, x) in rhs.iter_mut().zip(self.bracket(&self.basis_vector(i), &dj)) {
                    *r += x;
                }
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Center as an echelonized basis.
    pub fn center(&self) -> Vec<Vec<Scalar>> {
        // u is central iff ad_u = 0, a linear condition in u.
        let n = self.dim();
        let rows: Vec<Vec<Scalar>> = (0..n)
            .flat_map(|j| (0..n).map(move |k| (j, k)))
            .map(|(j, k)| (0..n).map(|i| self.consts[i][j][k].clone()).collect())
            .collect();
        Matrix::from_rows(&rows, n).nullspace()
    }
}

/// A derivation of a Lie algebra, stored as its matrix on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation(Matrix);

impl Derivation {
    pub fn new(lie: &LieAlgebra, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != lie.dim() || matrix.cols() != lie.dim() {
            return Err(Error::Shape("derivation matrix has the wrong size".into()));
        }
        match lie.leibniz_violation(&matrix) {
            Some((i, j)) => Err(Error::NotADerivation(i, j)),
            None => Ok(Self(matrix)),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self(Matrix::zeros(n, n))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation(&self.0 + &other.0)
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        Derivation(self.0.scale(c))
    }

    /// The commutator, again a derivation.
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        Derivation(self.0.commutator(&other.0))
    }
}

/// Linear combination `sum c_i * basis_i` of derivations.
pub fn combine(basis: &[Derivation], coeffs: &[Scalar], n: usize) -> Derivation {
    let mut m = Matrix::zeros(n, n);
    for (d, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            m = &m + &d.0.scale(c);
        }
    }
    Derivation(m)
}

/// Basis of `Der(l)`: nullspace of the Leibniz system in the `n^2` matrix
/// entries, echelonized so the output is reproducible.
pub fn derivation_space(lie: &LieAlgebra) -> Vec<Derivation> {
    let n = lie.dim();
    let nn = n * n;
    // Unknown D[k][l] sits at column k * n + l.
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for out in 0..n {
                let mut row = vec![Scalar::zero(); nn];
                // (D [b_i, b_j])_out = sum_k D[out][k] f[i][j][k]
                for (k, c) in lie.structure(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        row[out * n + k] += c;
                    }
                }
                // ([D b_i, b_j])_out = sum_k D[k][i] f[k][j][out]
                for k in 0..n {
                    let c = &lie.structure(k, j)[out];
                    if !c.is_zero() {
                        row[k * n + i] -= c;
                    }
                    let c = &lie.structure(i, k)[out];
                    if !c.is_zero() {
                        row[k * n + j] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..nn)
            .map(|c| {
                let mut v = vec![Scalar::zero(); nn];
                v[c] = Scalar::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(&rows, nn).nullspace()
    };
    row_basis(&kernel, nn)
        .into_iter()
        .map(|v| Derivation(Matrix::from_fn(n, n, |a, b| v[a * n + b].clone())))
        .collect()
}

pub fn inner_derivation(lie: &LieAlgebra, u: &[Scalar]) -> Derivation {
    Derivation(lie.ad(u))
}

/// Echelonized basis of `IDer(l) = { ad_u }`.
pub fn inner_derivation_space(lie: &LieAlgebra) -> Vec<Derivation> {
    let n = lie.dim();
    let flat: Vec<Vec<Scalar>> = (0..n)
        .map(|i| lie.ad(&lie.basis_vector(i)).data().to_vec())
        .collect();
    row_basis(&flat, n * n)
        .into_iter()
        .map(|v| Derivation(Matrix::from_fn(n, n, |a, b| v[a * n + b].clone())))
        .collect()
}

/// Whether every derivation in `ders` lies in the span of `basis`.
pub fn within_span(basis: &[Derivation], ders: &[Derivation]) -> bool {
    let Some(first) = basis.first().or(ders.first()) else {
        return true;
    };
    let len = first.0.data().len();
    let mut rows: Vec<Vec<Scalar>> = basis.iter().map(|d| d.0.data().to_vec()).collect();
    let base = span_rank(&rows, len);
    rows.extend(ders.iter().map(|d| d.0.data().to_vec()));
    span_rank(&rows, len) == base
}

/// A Lie algebra with a subalgebra spanned by its first `rank` basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePair {
    name: String,
    lie: Arc<LieAlgebra>,
    rank: usize,
    /// `nabla[a]` is the `q x q` matrix of `b -> pr_B [a, j(b)]`.
    nabla: Vec<Matrix>,
}

impl LiePair {
    pub fn new(lie: Arc<LieAlgebra>, rank: usize) -> Result<Arc<Self>> {
        Self::named("custom", lie, rank)
    }

    pub fn named(name: impl Into<String>, lie: Arc<LieAlgebra>, rank: usize) -> Result<Arc<Self>> {
        let n = lie.dim();
        if rank == 0 || rank >= n {
            return Err(Error::InvalidRank { rank, dim: n });
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if lie.structure(i, j)[rank..].iter().any(|c| !c.is_zero()) {
                    return Err(Error::NotASubalgebra(i, j));
                }
            }
        }
        let q = n - rank;
        let nabla = (0..rank)
            .map(|a| Matrix::from_fn(q, q, |row, b| lie.structure(a, rank + b)[rank + row].clone()))
            .collect();
        Ok(Arc::new(Self {
            name: name.into(),
            lie,
            rank,
            nabla,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lie(&self) -> &Arc<LieAlgebra> {
        &self.lie
    }

    /// Dimension of the ambient Lie algebra.
    pub fn n(&self) -> usize {
        self.lie.dim()
    }

    /// Dimension of the subalgebra.
    pub fn r(&self) -> usize {
        self.rank
    }

    /// Dimension of the quotient `B = l / a`.
    pub fn q(&self) -> usize {
        self.lie.dim() - self.rank
    }

    /// Bott connection matrix of subalgebra basis vector `a`.
    pub fn nabla(&self, a: usize) -> &Matrix {
        &self.nabla[a]
    }

    /// `i`: subalgebra coordinates into ambient coordinates.
    pub fn include(&self, a: &[Scalar]) -> Vec<Scalar> {
        let mut v = a.to_vec();
        v.resize(self.n(), Scalar::zero());
        v
    }

    /// `j`: quotient coordinates into ambient coordinates via the complement.
    pub fn split(&self, b: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.rank];
        v.extend(b.iter().cloned());
        v
    }

    pub fn pr_a<'a>(&self, v: &'a [Scalar]) -> &'a [Scalar] {
        &v[..self.rank]
    }

    pub fn pr_b<'a>(&self, v: &'a [Scalar]) -> &'a [Scalar] {
        &v[self.rank..]
    }

    /// Whether the complement spanned by the last `q` basis vectors is a
    /// subalgebra, making the pair matched.
    pub fn is_matched(&self) -> bool {
        let (n, r) = (self.n(), self.rank);
        (r..n).all(|i| (i + 1..n).all(|j| self.lie.structure(i, j)[..r].iter().all(Zero::is_zero)))
    }

    /// Derivations `ad_{j(b)}` for the quotient basis.
    pub fn complement_derivations(&self) -> Vec<Derivation> {
        (self.rank..self.n())
            .map(|i| Derivation(self.lie.ad(&self.lie.basis_vector(i))))
            .collect()
    }
}
