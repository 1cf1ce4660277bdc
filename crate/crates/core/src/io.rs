//! JSON documents for algebras, pairs, cochains, Maurer-Cartan elements,
//! gauge parameters, automorphisms and cohomology reports.
//!
//! Scalars are always strings (`"3"`, `"-1/2"`) so documents round-trip
//! exactly. Algebras and pairs inside larger documents may be given either
//! by name (a built-in algebra or catalog entry) or inline.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::coeff::{format_scalar, parse_scalar, ArtinAlgebra, Scalar};
use crate::cohomology::CohomologyReport;
use crate::deform::{ALinearMap, SmallAutomorphism};
use crate::error::{Error, Result};
use crate::liealg::{Derivation, LieAlgebra, LiePair};
use crate::linalg::Matrix;
use crate::mc::{GaugeMode, GaugeParameter, MCElement};
use crate::omega::OmegaElement;

fn scalars(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(format_scalar).collect()
}

fn parse_all(xs: &[String]) -> Result<Vec<Scalar>> {
    xs.iter().map(|s| parse_scalar(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    /// `table[i][j]` is the product of basis vectors `i` and `j`.
    pub table: Vec<Vec<Vec<String>>>,
}

impl AlgebraDoc {
    pub fn from_algebra(alg: &ArtinAlgebra) -> Self {
        Self {
            name: Some(alg.name().to_string()),
            dim: alg.dim(),
            basis: alg.labels().to_vec(),
            table: alg
                .table()
                .iter()
                .map(|row| row.iter().map(|v| scalars(v)).collect())
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<Arc<ArtinAlgebra>> {
        if self.basis.len() != self.dim || self.table.len() != self.dim {
            return Err(Error::Parse(format!(
                "algebra of dim {} has {} labels and {} table rows",
                self.dim,
                self.basis.len(),
                self.table.len()
            )));
        }
        let mut table = Vec::with_capacity(self.dim);
        for row in &self.table {
            if row.len() != self.dim || row.iter().any(|v| v.len() != self.dim) {
                return Err(Error::Parse("algebra table is not n x n x n".into()));
            }
            table.push(row.iter().map(|v| parse_all(v)).collect::<Result<Vec<_>>>()?);
        }
        let name = self.name.clone().unwrap_or_else(|| "custom".into());
        ArtinAlgebra::from_table(name, self.basis.clone(), table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

/// A Lie algebra, or a pair when `subalgebra_rank` is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra_rank: Option<usize>,
}

impl LieDoc {
    pub fn from_lie(lie: &LieAlgebra) -> Self {
        let n = lie.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in lie.structure(i, j).iter().enumerate() {
                    if !num_traits::Zero::is_zero(c) {
                        brackets.push(BracketDoc {
                            i,
                            j,
                            k,
                            coeff: format_scalar(c),
                        });
                    }
                }
            }
        }
        Self {
            name: None,
            dim: n,
            basis: lie.labels().to_vec(),
            brackets,
            subalgebra_rank: None,
        }
    }

    pub fn from_pair(pair: &LiePair) -> Self {
        Self {
            name: Some(pair.name().to_string()),
            subalgebra_rank: Some(pair.r()),
            ..Self::from_lie(pair.lie())
        }
    }

    pub fn to_lie(&self) -> Result<Arc<LieAlgebra>> {
        if self.basis.len() != self.dim {
            return Err(Error::Parse(format!(
                "Lie algebra of dim {} has {} labels",
                self.dim,
                self.basis.len()
            )));
        }
        let records = self
            .brackets
            .iter()
            .map(|b| Ok((b.i, b.j, b.k, parse_scalar(&b.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::from_sparse(self.basis.clone(), &records)
    }

    pub fn to_pair(&self) -> Result<Arc<LiePair>> {
        let rank = self
            .subalgebra_rank
            .ok_or_else(|| Error::Parse("pair document needs `subalgebra_rank`".into()))?;
        let name = self.name.clone().unwrap_or_else(|| "custom".into());
        LiePair::named(name, self.to_lie()?, rank)
    }
}

/// An algebra given by built-in name or inline table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Named(String),
    Inline(AlgebraDoc),
}

impl AlgebraRef {
    /// Uses the name when it resolves to the same algebra.
    pub fn of(alg: &ArtinAlgebra) -> Self {
        match ArtinAlgebra::builtin(alg.name()) {
            Ok(b) if b.same_as(alg) => Self::Named(alg.name().to_string()),
            _ => Self::Inline(AlgebraDoc::from_algebra(alg)),
        }
    }

    pub fn resolve(&self) -> Result<Arc<ArtinAlgebra>> {
        match self {
            Self::Named(name) => ArtinAlgebra::builtin(name),
            Self::Inline(doc) => doc.to_algebra(),
        }
    }
}

/// A pair given by catalog name or inline document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairRef {
    Named(String),
    Inline(LieDoc),
}

impl PairRef {
    pub fn of(pair: &LiePair) -> Self {
        match catalog::lookup(pair.name()) {
            Ok(e) if *e.pair == *pair => Self::Named(pair.name().to_string()),
            _ => Self::Inline(LieDoc::from_pair(pair)),
        }
    }

    pub fn resolve(&self) -> Result<Arc<LiePair>> {
        match self {
            Self::Named(name) => Ok(catalog::lookup(name)?.pair),
            Self::Inline(doc) => doc.to_pair(),
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

fn looks_like_path(reference: &str) -> bool {
    reference.ends_with(".json") || reference.contains('/') || Path::new(reference).is_file()
}

/// Resolves a built-in algebra name or a path to an algebra document.
pub fn load_algebra(reference: &str) -> Result<Arc<ArtinAlgebra>> {
    if !reference.ends_with(".json") {
        if let Ok(alg) = ArtinAlgebra::builtin(reference) {
            return Ok(alg);
        }
    }
    if looks_like_path(reference) {
        read_json::<AlgebraDoc>(Path::new(reference))?.to_algebra()
    } else {
        ArtinAlgebra::builtin(reference)
    }
}

/// Resolves a catalog name or a path to a pair document.
pub fn load_pair(reference: &str) -> Result<Arc<LiePair>> {
    if looks_like_path(reference) {
        read_json::<LieDoc>(Path::new(reference))?.to_pair()
    } else {
        Ok(catalog::lookup(reference)?.pair)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaEntryDoc {
    pub indices: Vec<usize>,
    pub b_index: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaDoc {
    pub degree: usize,
    pub entries: Vec<OmegaEntryDoc>,
}

impl OmegaDoc {
    pub fn from_omega(x: &OmegaElement) -> Self {
        Self {
            degree: x.degree(),
            entries: x
                .entries()
                .into_iter()
                .map(|(indices, b_index, c)| OmegaEntryDoc {
                    indices,
                    b_index,
                    coeff: format_scalar(&c),
                })
                .collect(),
        }
    }

    pub fn to_omega(&self, pair: &Arc<LiePair>) -> Result<OmegaElement> {
        let entries = self
            .entries
            .iter()
            .map(|e| Ok((e.indices.clone(), e.b_index, parse_scalar(&e.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        OmegaElement::from_entries(pair, self.degree, &entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaComponentDoc {
    pub m_index: usize,
    pub omega: OmegaDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixComponentDoc {
    pub m_index: usize,
    pub matrix: Vec<Vec<String>>,
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| scalars(m.row(i))).collect()
}

fn parse_matrix(rows: &[Vec<String>], n: usize) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("expected a {n} x {n} matrix")));
    }
    let parsed = rows.iter().map(|r| parse_all(r)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(&parsed, n))
}

fn check_m_index(alg: &ArtinAlgebra, idx: usize) -> Result<()> {
    if idx == 0 || idx >= alg.dim() {
        return Err(Error::Parse(format!(
            "m_index {idx} must name a maximal-ideal basis vector (1..{})",
            alg.dim()
        )));
    }
    Ok(())
}

/// A degree-1 cochain with coefficients in the maximal ideal. Parsing does
/// not check the Maurer-Cartan equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCDoc {
    pub algebra: AlgebraRef,
    pub pair: PairRef,
    pub components: Vec<OmegaComponentDoc>,
}

impl MCDoc {
    pub fn from_element(xi: &MCElement) -> Self {
        Self {
            algebra: AlgebraRef::of(xi.algebra()),
            pair: PairRef::of(xi.pair()),
            components: xi
                .components()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m_index, c)| OmegaComponentDoc {
                    m_index,
                    omega: OmegaDoc::from_omega(c),
                })
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<MCElement> {
        let alg = self.algebra.resolve()?;
        let pair = self.pair.resolve()?;
        let mut comps = vec![OmegaElement::zero(&pair, 1); alg.dim()];
        for c in &self.components {
            check_m_index(&alg, c.m_index)?;
            let x = c.omega.to_omega(&pair)?;
            if x.degree() != 1 {
                return Err(Error::DegreeMismatch {
                    expected: 1,
                    found: x.degree(),
                });
            }
            comps[c.m_index] = comps[c.m_index].add(&x)?;
        }
        MCElement::new(&pair, &alg, comps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeDoc {
    pub algebra: AlgebraRef,
    pub pair: PairRef,
    pub mode: String,
    pub components: Vec<MatrixComponentDoc>,
}

impl GaugeDoc {
    pub fn from_parameter(delta: &GaugeParameter) -> Self {
        Self {
            algebra: AlgebraRef::of(delta.algebra()),
            pair: PairRef::of(delta.pair()),
            mode: delta.mode().name().to_string(),
            components: delta
                .components()
                .iter()
                .enumerate()
                .filter(|(_, d)| !d.is_zero())
                .map(|(m_index, d)| MatrixComponentDoc {
                    m_index,
                    matrix: matrix_rows(d.matrix()),
                })
                .collect(),
        }
    }

    pub fn to_parameter(&self) -> Result<GaugeParameter> {
        let alg = self.algebra.resolve()?;
        let pair = self.pair.resolve()?;
        let mode = GaugeMode::parse(&self.mode)?;
        let n = pair.n();
        let mut comps = vec![Derivation::zero(n); alg.dim()];
        for c in &self.components {
            check_m_index(&alg, c.m_index)?;
            let d = Derivation::new(pair.lie(), parse_matrix(&c.matrix, n)?)?;
            comps[c.m_index] = comps[c.m_index].add(&d);
        }
        GaugeParameter::new(&pair, &alg, mode, comps)
    }
}

/// A small automorphism; the identity center is implied and only the
/// maximal-ideal components are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismDoc {
    pub algebra: AlgebraRef,
    pub pair: PairRef,
    pub components: Vec<MatrixComponentDoc>,
}

impl AutomorphismDoc {
    pub fn from_automorphism(p: &SmallAutomorphism) -> Self {
        let map = p.map();
        Self {
            algebra: AlgebraRef::of(map.algebra()),
            pair: PairRef::of(p.pair()),
            components: map
                .components()
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, m)| !m.is_zero())
                .map(|(m_index, m)| MatrixComponentDoc {
                    m_index,
                    matrix: matrix_rows(m),
                })
                .collect(),
        }
    }

    pub fn to_automorphism(&self) -> Result<SmallAutomorphism> {
        let alg = self.algebra.resolve()?;
        let pair = self.pair.resolve()?;
        let n = pair.n();
        let mut comps = vec![Matrix::zeros(n, n); alg.dim()];
        comps[0] = Matrix::identity(n);
        for c in &self.components {
            check_m_index(&alg, c.m_index)?;
            comps[c.m_index] = &comps[c.m_index] + &parse_matrix(&c.matrix, n)?;
        }
        SmallAutomorphism::new(&pair, ALinearMap::from_components(&alg, comps)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDoc {
    pub pair: String,
    pub complex: String,
    pub degree: usize,
    pub dimension: usize,
    pub kernel_dimension: usize,
    pub image_dimension: usize,
    pub representatives: Vec<OmegaDoc>,
    pub image_basis: Vec<OmegaDoc>,
}

impl CohomologyDoc {
    pub fn from_report(report: &CohomologyReport) -> Self {
        Self {
            pair: report.pair_name().to_string(),
            complex: report.complex().to_string(),
            degree: report.degree(),
            dimension: report.dimension(),
            kernel_dimension: report.kernel_dimension(),
            image_dimension: report.image_dimension(),
            representatives: report.representatives().iter().map(OmegaDoc::from_omega).collect(),
            image_basis: report.image_basis().iter().map(OmegaDoc::from_omega).collect(),
        }
    }
}
