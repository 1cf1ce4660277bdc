//! Exact scalars and local Artinian coefficient algebras.
//!
//! An [`ArtinAlgebra`] is given by a multiplication table on a basis whose
//! element 0 is the unit; the remaining basis vectors span the maximal ideal
//! `m`. Validation checks the commutative-algebra axioms exactly and computes
//! the powers `m ⊃ m^2 ⊃ ... ⊃ m^N ⊃ m^(N+1) = 0`. From those it derives a
//! filtration-adapted basis, which the order-by-order solvers in
//! [`crate::mc`] use to split coefficients into layers `m^k / m^(k+1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{row_basis, span_rank, Matrix};

/// Exact rational scalar; the ground field is realized as Q.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"-p"` or `"p/q"` into a reduced rational.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: `{s}`"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Scalar::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Scalar::new(p, q))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// Axioms checked by [`validate_artin`], in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArtinAxiom {
    Shape,
    Unital,
    Commutative,
    Associative,
    IdealClosed,
    Nilpotent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: ArtinAxiom,
    pub passed: bool,
    /// Basis indices exhibiting the first failure; for nilpotency, the
    /// power `k` at which `m^k` stopped shrinking and its dimension.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinValidation {
    pub checks: Vec<AxiomCheck>,
    /// Largest `N` with `m^N != 0` (so `m^(N+1) = 0`), on success.
    pub nilpotency: Option<usize>,
}

impl ArtinValidation {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_violation(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

type Table = Vec<Vec<Vec<Scalar>>>;

fn check(axiom: ArtinAxiom, witness: Option<Vec<usize>>) -> AxiomCheck {
    AxiomCheck {
        axiom,
        passed: witness.is_none(),
        witness,
    }
}

fn table_product(table: &Table, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len();
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x * y;
            for (k, c) in table[i][j].iter().enumerate() {
                if !c.is_zero() {
                    out[k] += &xy * c;
                }
            }
        }
    }
    out
}

fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Echelon bases of `m, m^2, ...` up to the first zero power. `Err` carries
/// the power at which the chain stabilized away from zero.
fn ideal_powers(table: &Table) -> std::result::Result<Vec<Vec<Vec<Scalar>>>, (usize, usize)> {
    let n = table.len();
    let ideal: Vec<Vec<Scalar>> = (1..n).map(|i| unit_vector(n, i)).collect();
    let mut powers = Vec::new();
    let mut current = row_basis(&ideal, n);
    while !current.is_empty() {
        let mut products = Vec::new();
        for x in &current {
            for y in &ideal {
                let p = table_product(table, x, y);
                if !p.iter().all(Zero::is_zero) {
                    products.push(p);
                }
            }
        }
        let next = row_basis(&products, n);
        if next.len() == current.len() {
            return Err((powers.len() + 1, current.len()));
        }
        powers.push(current);
        current = next;
    }
    Ok(powers)
}

/// Checks a raw multiplication table `table[i][j][k]` (basis 0 is the unit)
/// against every axiom and reports each outcome; never panics.
pub fn validate_artin(table: &[Vec<Vec<Scalar>>]) -> ArtinValidation {
    let n = table.len();
    let shape_ok = n >= 1
        && table
            .iter()
            .all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
    if !shape_ok {
        return ArtinValidation {
            checks: vec![check(ArtinAxiom::Shape, Some(vec![n]))],
            nilpotency: None,
        };
    }
    let table: Table = table.to_vec();
    let mut checks = vec![check(ArtinAxiom::Shape, None)];

    let unital = (0..n).find(|&i| {
        let e = unit_vector(n, i);
        table[0][i] != e || table[i][0] != e
    });
    checks.push(check(ArtinAxiom::Unital, unital.map(|i| vec![0, i])));

    let mut comm = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            if table[i][j] != table[j][i] {
                comm = Some(vec![i, j]);
                break 'outer;
            }
        }
    }
    checks.push(check(ArtinAxiom::Commutative, comm));

    let mut assoc = None;
    'assoc: for i in 0..n {
        for j in 0..n {
            let ij = &table[i][j];
            for k in 0..n {
                let left = table_product(&table, ij, &unit_vector(n, k));
                let right = table_product(&table, &unit_vector(n, i), &table[j][k]);
                if left != right {
                    assoc = Some(vec![i, j, k]);
                    break 'assoc;
                }
            }
        }
    }
    checks.push(check(ArtinAxiom::Associative, assoc));

    let mut ideal = None;
    'ideal: for i in 1..n {
        for j in 1..n {
            if !table[i][j][0].is_zero() {
                ideal = Some(vec![i, j]);
                break 'ideal;
            }
        }
    }
    checks.push(check(ArtinAxiom::IdealClosed, ideal));

    let (nil, nilpotency) = match ideal_powers(&table) {
        Ok(powers) => (None, Some(powers.len())),
        Err((k, dim)) => (Some(vec![k, dim]), None),
    };
    checks.push(check(ArtinAxiom::Nilpotent, nil));

    let all_ok = checks.iter().all(|c| c.passed);
    ArtinValidation {
        checks,
        nilpotency: if all_ok { nilpotency } else { None },
    }
}

/// Finite-dimensional local commutative unital algebra over Q.
#[derive(Clone, PartialEq, Eq)]
pub struct ArtinAlgebra {
    name: String,
    labels: Vec<String>,
    table: Table,
    nilpotency: usize,
    adic_degree: Vec<usize>,
    /// Columns: filtration-adapted basis in original coordinates.
    adapted: Matrix,
    adapted_inv: Matrix,
    /// Layer `k` of each adapted basis vector (`m^k \ m^(k+1)`); 0 for the unit.
    layers: Vec<usize>,
}

impl fmt::Debug for ArtinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArtinAlgebra")
            .field("name", &self.name)
            .field("basis", &self.labels)
            .field("nilpotency", &self.nilpotency)
            .finish()
    }
}

impl ArtinAlgebra {
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Arc<Self>> {
        let report = validate_artin(&table);
        if let Some(v) = report.first_violation() {
            return Err(Error::InvalidAlgebra(format!(
                "{:?} fails (witness {:?})",
                v.axiom, v.witness
            )));
        }
        let n = table.len();
        if labels.len() != n {
            return Err(Error::InvalidAlgebra(format!(
                "{} labels for a {n}-dimensional table",
                labels.len()
            )));
        }
        let powers = ideal_powers(&table).expect("validated");
        let nilpotency = powers.len();

        let adic_degree = (0..n)
            .map(|i| {
                if i == 0 {
                    return 0;
                }
                let e = unit_vector(n, i);
                powers
                    .iter()
                    .rposition(|p| {
                        let mut rows = p.clone();
                        rows.push(e.clone());
                        span_rank(&rows, n) == p.len()
                    })
                    .map_or(0, |k| k + 1)
            })
            .collect();

        // Extend a basis of m^N to m^(N-1), ..., m, then add the unit.
        let mut chosen: Vec<Vec<Scalar>> = Vec::new();
        let mut per_layer: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nilpotency + 1];
        for k in (1..=nilpotency).rev() {
            for v in &powers[k - 1] {
                let mut trial = chosen.clone();
                trial.push(v.clone());
                if span_rank(&trial, n) > chosen.len() {
                    chosen = trial;
                    per_layer[k].push(v.clone());
                }
            }
        }
        let mut columns = vec![unit_vector(n, 0)];
        let mut layers = vec![0];
        for (k, vs) in per_layer.iter().enumerate().skip(1) {
            for v in vs {
                columns.push(v.clone());
                layers.push(k);
            }
        }
        let adapted = Matrix::from_columns(&columns, n);
        let adapted_inv = adapted
            .inverse()
            .ok_or_else(|| Error::InternalInconsistency("adapted basis is singular".into()))?;

        Ok(Arc::new(Self {
            name: name.into(),
            labels,
            table,
            nilpotency,
            adic_degree,
            adapted,
            adapted_inv,
            layers,
        }))
    }

    /// `K[t_1..t_vars] / (t_1..t_vars)^degree` on the degree-lex monomial basis.
    pub fn truncated(vars: usize, degree: usize) -> Result<Arc<Self>> {
        if vars == 0 {
            return Err(Error::InvalidAlgebra("at least one variable is required".into()));
        }
        if degree < 2 {
            return Err(Error::InvalidAlgebra(format!(
                "truncation degree {degree} gives no thickening (need >= 2)"
            )));
        }
        let mut monomials: Vec<Vec<usize>> = Vec::new();
        for total in 0..degree {
            let mut layer = Vec::new();
            compositions(total, vars, &mut Vec::new(), &mut layer);
            monomials.extend(layer);
        }
        let n = monomials.len();
        let label = |e: &[usize]| -> String {
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| {
                    let var = if vars == 1 {
                        "t".to_string()
                    } else {
                        format!("t{}", v + 1)
                    };
                    if p == 1 {
                        var
                    } else {
                        format!("{var}^{p}")
                    }
                })
                .collect();
            if factors.is_empty() {
                "1".into()
            } else {
                factors.join("*")
            }
        };
        let labels = monomials.iter().map(|m| label(m)).collect();
        let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                let prod: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(k) = monomials.iter().position(|m| *m == prod) {
                    table[i][j][k] = Scalar::one();
                }
            }
        }
        let name = if vars == 1 {
            if degree == 2 {
                "dual".to_string()
            } else {
                format!("t^{degree}")
            }
        } else if degree == 2 {
            format!("m2x{vars}")
        } else {
            format!("trunc_{vars}_{degree}")
        };
        Self::from_table(name, labels, table)
    }

    /// The dual numbers `K[t]/(t^2)`.
    pub fn dual() -> Arc<Self> {
        Self::truncated(1, 2).expect("dual numbers")
    }

    /// `K[t]/(t^k)`.
    pub fn t_power(k: usize) -> Result<Arc<Self>> {
        Self::truncated(1, k)
    }

    /// `r` variables with all pairwise products zero.
    pub fn square_zero(r: usize) -> Result<Arc<Self>> {
        Self::truncated(r, 2)
    }

    /// The ground field itself, `m = 0`.
    pub fn ground() -> Arc<Self> {
        Self::from_table("ground", vec!["1".into()], vec![vec![vec![Scalar::one()]]])
            .expect("ground field")
    }

    /// Resolves `dual`, `t^k`, `m2xr` and `ground`.
    pub fn builtin(name: &str) -> Result<Arc<Self>> {
        let bad = || Error::Parse(format!("unknown built-in algebra `{name}`"));
        match name {
            "dual" => Ok(Self::dual()),
            "ground" => Ok(Self::ground()),
            _ => {
                if let Some(k) = name.strip_prefix("t^") {
                    Self::t_power(k.parse().map_err(|_| bad())?)
                } else if let Some(r) = name.strip_prefix("m2x") {
                    Self::square_zero(r.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    /// Largest `N` with `m^N != 0`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    /// For each basis vector, the largest `k` with the vector in `m^k`.
    pub fn adic_degrees(&self) -> &[usize] {
        &self.adic_degree
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    /// Coefficients of `basis_i * basis_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn mul_coeffs(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        table_product(&self.table, a, b)
    }

    /// Adapted-basis coordinates of an element given in original coordinates.
    pub fn to_adapted(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        self.adapted_inv.mul_vec(coeffs)
    }

    /// Original coordinates of adapted basis vector `u`.
    pub fn adapted_vector(&self, u: usize) -> Vec<Scalar> {
        self.adapted.column(u)
    }

    /// Adapted basis indices spanning `m^k` modulo `m^(k+1)`.
    pub fn layer(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&u| self.layers[u] == k).collect()
    }

    /// Layer of each adapted basis vector.
    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    /// Whether coefficient vector `coeffs` lies in `m^k`.
    pub fn in_power(&self, coeffs: &[Scalar], k: usize) -> bool {
        self.to_adapted(coeffs)
            .iter()
            .zip(&self.layers)
            .all(|(c, &l)| l >= k || c.is_zero())
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Scalar>) -> Result<ArtinElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::Shape(format!(
                "{} coefficients for a {}-dimensional algebra",
                coeffs.len(),
                self.dim()
            )));
        }
        Ok(ArtinElement {
            alg: Arc::clone(self),
            coeffs,
        })
    }

    pub fn zero(self: &Arc<Self>) -> ArtinElement {
        ArtinElement {
            alg: Arc::clone(self),
            coeffs: vec![Scalar::zero(); self.dim()],
        }
    }

    pub fn one(self: &Arc<Self>) -> ArtinElement {
        self.basis_element(0)
    }

    pub fn basis_element(self: &Arc<Self>, i: usize) -> ArtinElement {
        ArtinElement {
            alg: Arc::clone(self),
            coeffs: unit_vector(self.dim(), i),
        }
    }

    pub fn scalar(self: &Arc<Self>, c: Scalar) -> ArtinElement {
        let mut coeffs = vec![Scalar::zero(); self.dim()];
        coeffs[0] = c;
        ArtinElement {
            alg: Arc::clone(self),
            coeffs,
        }
    }

    pub fn same_as(&self, other: &ArtinAlgebra) -> bool {
        std::ptr::eq(self, other) || self.table == other.table
    }
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Element of an [`ArtinAlgebra`] in basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct ArtinElement {
    alg: Arc<ArtinAlgebra>,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for ArtinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(self.alg.labels())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{c}*{l}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl ArtinElement {
    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// The evaluation map `A -> A/m = K`: the unit coefficient.
    pub fn ev(&self) -> Scalar {
        self.coeffs[0].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> ArtinElement {
        ArtinElement {
            alg: Arc::clone(&self.alg),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Inverse via the finite Neumann series `(c + n)^-1 = c^-1 sum (-n/c)^k`.
    pub fn invert_unit(&self) -> Result<ArtinElement> {
        let c = self.ev();
        if c.is_zero() {
            return Err(Error::NotAUnit);
        }
        let c_inv = c.recip();
        let mut nil = self.clone();
        nil.coeffs[0] = Scalar::zero();
        let step = nil.scale(&-c_inv.clone());
        let mut term = self.alg.one();
        let mut sum = self.alg.one();
        for _ in 0..self.alg.nilpotency() {
            term = &term * &step;
            sum = &sum + &term;
        }
        Ok(sum.scale(&c_inv))
    }

    fn assert_same(&self, other: &ArtinElement) {
        assert!(
            self.alg.same_as(&other.alg),
            "arithmetic between different coefficient algebras"
        );
    }
}

impl Add for &ArtinElement {
    type Output = ArtinElement;

    fn add(self, rhs: &ArtinElement) -> ArtinElement {
        self.assert_same(rhs);
        ArtinElement {
            alg: Arc::clone(&self.alg),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ArtinElement {
    type Output = ArtinElement;

    fn sub(self, rhs: &ArtinElement) -> ArtinElement {
        self.assert_same(rhs);
        ArtinElement {
            alg: Arc::clone(&self.alg),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ArtinElement {
    type Output = ArtinElement;

    fn mul(self, rhs: &ArtinElement) -> ArtinElement {
        self.assert_same(rhs);
        ArtinElement {
            alg: Arc::clone(&self.alg),
            coeffs: self.alg.mul_coeffs(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl Neg for &ArtinElement {
    type Output = ArtinElement;

    fn neg(self) -> ArtinElement {
        ArtinElement {
            alg: Arc::clone(&self.alg),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// Unital algebra morphism between local Artinian algebras; `matrix` has
/// one column per source basis vector.
#[derive(Clone, Debug)]
pub struct ArtinMorphism {
    source: Arc<ArtinAlgebra>,
    target: Arc<ArtinAlgebra>,
    matrix: Matrix,
}

impl ArtinMorphism {
    pub fn new(source: Arc<ArtinAlgebra>, target: Arc<ArtinAlgebra>, matrix: Matrix) -> Result<Self> {
        let (n, m) = (source.dim(), target.dim());
        if matrix.rows() != m || matrix.cols() != n {
            return Err(Error::Shape(format!(
                "morphism matrix is {}x{}, expected {m}x{n}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.column(0) != unit_vector(m, 0) {
            return Err(Error::InvalidMorphism("unit is not sent to unit".into()));
        }
        for i in 1..n {
            if !matrix.get(0, i).is_zero() {
                return Err(Error::InvalidMorphism(format!(
                    "basis vector {i} of the maximal ideal leaves the maximal ideal"
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = matrix.mul_vec(source.structure(i, j));
                let rhs = target.mul_coeffs(&matrix.column(i), &matrix.column(j));
                if lhs != rhs {
                    return Err(Error::InvalidMorphism(format!(
                        "not multiplicative on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(alg: Arc<ArtinAlgebra>) -> Self {
        let n = alg.dim();
        Self {
            source: Arc::clone(&alg),
            target: alg,
            matrix: Matrix::identity(n),
        }
    }

    /// The evaluation map as a morphism onto the ground field.
    pub fn evaluation(alg: Arc<ArtinAlgebra>) -> Self {
        let n = alg.dim();
        let matrix = Matrix::from_fn(1, n, |_, j| if j == 0 { Scalar::one() } else { Scalar::zero() });
        Self::new(alg, ArtinAlgebra::ground(), matrix).expect("evaluation is a morphism")
    }

    /// Sends each basis vector to the target basis vector with the same label,
    /// or to zero when the label is absent (e.g. `K[t]/(t^3) -> K[t]/(t^2)`).
    pub fn by_labels(source: Arc<ArtinAlgebra>, target: Arc<ArtinAlgebra>) -> Result<Self> {
        let matrix = Matrix::from_fn(target.dim(), source.dim(), |i, j| {
            if target.labels()[i] == source.labels()[j] {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        Self::new(source, target, matrix)
    }

    pub fn source(&self) -> &Arc<ArtinAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ArtinAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Image of a coefficient vector of the source algebra.
    pub fn apply_coeffs(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(coeffs)
    }

    pub fn apply(&self, a: &ArtinElement) -> Result<ArtinElement> {
        if !a.algebra().same_as(&self.source) {
            return Err(Error::AlgebraMismatch);
        }
        self.target.element(self.apply_coeffs(a.coeffs()))
    }
}
