//! Built-in Lie pairs.

use std::sync::Arc;

use crate::coeff::{int, Scalar};
use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, LiePair};
use crate::linalg::Matrix;

/// Known tangent-space dimensions of an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Golden {
    pub ce: usize,
    pub weak: usize,
    pub semistrict: usize,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub pair: Arc<LiePair>,
    pub note: &'static str,
    pub golden: Option<Golden>,
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m.set(i, j, int(1));
    m
}

fn labelled(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

/// `h, e, f` as 2x2 matrices.
pub fn sl2_matrices() -> Vec<Matrix> {
    let mut h = Matrix::zeros(2, 2);
    h.set(0, 0, int(1));
    h.set(1, 1, int(-1));
    vec![h, unit(2, 0, 1), unit(2, 1, 0)]
}

/// `sl(2)` on the basis `h, e, f`.
pub fn sl2() -> Arc<LieAlgebra> {
    LieAlgebra::from_matrices(labelled(&["h", "e", "f"]), &sl2_matrices()).expect("sl2")
}

/// Upper triangular 3x3 matrices, basis given by `(row, col)` positions.
fn upper_triangular(order: &[(usize, usize)]) -> Arc<LieAlgebra> {
    let labels = order.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let mats: Vec<Matrix> = order.iter().map(|&(i, j)| unit(3, i, j)).collect();
    LieAlgebra::from_matrices(labels, &mats).expect("upper triangular")
}

/// Heisenberg algebra on `z, x, y` with `[x, y] = z`.
pub fn heisenberg() -> Arc<LieAlgebra> {
    LieAlgebra::from_sparse(labelled(&["z", "x", "y"]), &[(1, 2, 0, int(1))]).expect("heisenberg")
}

fn abelian_pair(n: usize, r: usize) -> Result<Arc<LiePair>> {
    LiePair::named(format!("abelian_{n}_{r}"), LieAlgebra::abelian(n), r)
}

fn entry(name: &str, pair: Result<Arc<LiePair>>, note: &'static str, golden: Option<Golden>) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        pair: pair.expect("catalog pairs validate"),
        note,
        golden,
    }
}

/// Resolves a catalog name, including any `abelian_n_r`.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let e = match name {
        "b3" => entry(
            name,
            LiePair::named(
                name,
                upper_triangular(&[(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]),
                3,
            ),
            "upper triangular 3x3 matrices; subalgebra spanned by the first row",
            Some(Golden {
                ce: 3,
                weak: 2,
                semistrict: 3,
            }),
        ),
        "b3_toral" => entry(
            name,
            LiePair::named(
                name,
                upper_triangular(&[(0, 0), (1, 1), (2, 2), (0, 2), (0, 1), (1, 2)]),
                4,
            ),
            "upper triangular 3x3 matrices; subalgebra = diagonal plus e13, not matched",
            None,
        ),
        "sl2_borel" => entry(
            name,
            LiePair::named(name, sl2(), 2),
            "sl(2) with the Borel subalgebra span(h, e)",
            None,
        ),
        "sl2_cartan" => entry(
            name,
            LiePair::named(name, sl2(), 1),
            "sl(2) with the Cartan subalgebra span(h), not matched",
            None,
        ),
        "aff1" => entry(
            name,
            LiePair::named(
                name,
                LieAlgebra::from_sparse(labelled(&["y", "x"]), &[(0, 1, 0, int(-1))]).expect("aff1"),
                1,
            ),
            "affine line algebra [x, y] = y with subalgebra span(y)",
            None,
        ),
        "heis3_center" => entry(
            name,
            LiePair::named(name, heisenberg(), 1),
            "Heisenberg algebra with its center, not matched",
            None,
        ),
        _ => {
            let parsed = name.strip_prefix("abelian_").and_then(|rest| {
                let (n, r) = rest.split_once('_')?;
                Some((n.parse::<usize>().ok()?, r.parse::<usize>().ok()?))
            });
            let Some((n, r)) = parsed else {
                return Err(Error::UnknownCatalogEntry(name.to_string()));
            };
            let pair = abelian_pair(n, r)?;
            CatalogEntry {
                name: name.to_string(),
                pair,
                note: "abelian Lie algebra, all differentials vanish",
                golden: Some(Golden {
                    ce: r * (n - r),
                    weak: 0,
                    semistrict: r * (n - r),
                }),
            }
        }
    };
    Ok(e)
}

pub const NAMES: [&str; 8] = [
    "b3",
    "b3_toral",
    "sl2_borel",
    "sl2_cartan",
    "aff1",
    "heis3_center",
    "abelian_4_2",
    "abelian_3_1",
];

/// The fixed list of entries used by test campaigns.
pub fn entries() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| lookup(n).expect("catalog")).collect()
}

/// Scalars helper for building custom tables in examples and tests.
pub fn scalars(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| int(x)).collect()
}
