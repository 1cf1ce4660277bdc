//! Cohomology of the cochain complex and of the extended complexes whose
//! degree-0 part includes derivations.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::liealg::{derivation_space, inner_derivation_space, Derivation, LiePair};
use crate::linalg::{express_in_span, span_rank, Matrix};
use crate::mc::differential_matrix;
use crate::omega::{binomial, ext_b1, OmegaElement};

/// Which complex a report describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complex {
    /// `Hom(Lambda a, B)` with the Chevalley-Eilenberg differential.
    Ce,
    /// Degree 0 enlarged by all derivations.
    Ext,
    /// Degree 0 enlarged by inner derivations.
    Ext0,
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complex::Ce => "CE",
            Complex::Ext => "H_ext",
            Complex::Ext0 => "H0_ext",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pair: String,
    complex: Complex,
    degree: usize,
    kernel_dim: usize,
    representatives: Vec<OmegaElement>,
    image_basis: Vec<OmegaElement>,
}

impl CohomologyReport {
    pub fn pair_name(&self) -> &str {
        &self.pair
    }

    pub fn complex(&self) -> Complex {
        self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    pub fn kernel_dimension(&self) -> usize {
        self.kernel_dim
    }

    pub fn image_dimension(&self) -> usize {
        self.image_basis.len()
    }

    /// Cocycles whose classes form a basis of the cohomology.
    pub fn representatives(&self) -> &[OmegaElement] {
        &self.representatives
    }

    pub fn image_basis(&self) -> &[OmegaElement] {
        &self.image_basis
    }

    /// Coordinates of the class of a cocycle on [`Self::representatives`].
    pub fn class_coords(&self, x: &OmegaElement) -> Result<Vec<Scalar>> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        let mut vectors: Vec<Vec<Scalar>> = self.representatives.iter().map(|v| v.data().to_vec()).collect();
        vectors.extend(self.image_basis.iter().map(|v| v.data().to_vec()));
        let coeffs = express_in_span(&vectors, x.data())
            .ok_or_else(|| Error::Shape("element is not a cocycle".into()))?;
        Ok(coeffs[..self.representatives.len()].to_vec())
    }

    /// Whether two cocycles define the same class.
    pub fn same_class(&self, x: &OmegaElement, y: &OmegaElement) -> Result<bool> {
        let cx = self.class_coords(x)?;
        let cy = self.class_coords(y)?;
        Ok(cx == cy)
    }
}

fn build(pair: &Arc<LiePair>, complex: Complex, degree: usize, kernel: Vec<Vec<Scalar>>, image: Vec<Vec<Scalar>>) -> CohomologyReport {
    let len = binomial(pair.r(), degree) * pair.q();
    let image_rows = crate::linalg::row_basis(&image, len);
    let mut spanned = image_rows.clone();
    let mut reps = Vec::new();
    for v in &kernel {
        spanned.push(v.clone());
        if span_rank(&spanned, len) > reps.len() + image_rows.len() {
            reps.push(v.clone());
        } else {
            spanned.pop();
        }
    }
    let wrap = |v: Vec<Scalar>| OmegaElement::from_data(pair, degree, v).expect("shape");
    CohomologyReport {
        pair: pair.name().to_string(),
        complex,
        degree,
        kernel_dim: kernel.len(),
        representatives: reps.into_iter().map(wrap).collect(),
        image_basis: image_rows.into_iter().map(wrap).collect(),
    }
}

fn kernel(pair: &Arc<LiePair>, k: usize) -> Vec<Vec<Scalar>> {
    let d = differential_matrix(pair, k);
    if d.rows() == 0 {
        let dim = d.cols();
        return (0..dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = num_traits::One::one();
                v
            })
            .collect();
    }
    d.nullspace()
}

fn columns(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

/// `H^k` of the Chevalley-Eilenberg complex of the quotient module.
pub fn h_ce(pair: &Arc<LiePair>, k: usize) -> CohomologyReport {
    let image = if k == 0 {
        Vec::new()
    } else {
        columns(&differential_matrix(pair, k - 1))
    };
    build(pair, Complex::Ce, k, kernel(pair, k), image)
}

fn h1_with(pair: &Arc<LiePair>, complex: Complex, ders: &[Derivation]) -> CohomologyReport {
    let mut image = columns(&differential_matrix(pair, 0));
    image.extend(ders.iter().map(|d| ext_b1(pair, d).into_data()));
    build(pair, complex, 1, kernel(pair, 1), image)
}

/// First cohomology with all derivations in degree 0.
pub fn h1_ext(pair: &Arc<LiePair>) -> CohomologyReport {
    h1_with(pair, Complex::Ext, &derivation_space(pair.lie()))
}

/// First cohomology with inner derivations in degree 0.
pub fn h1_ext0(pair: &Arc<LiePair>) -> CohomologyReport {
    h1_with(pair, Complex::Ext0, &inner_derivation_space(pair.lie()))
}
