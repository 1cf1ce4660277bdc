#![allow(clippy::needless_range_loop)]
//! Exact infinitesimal deformation theory of Lie algebra pairs over local
//! Artinian algebras.
//!
//! A Lie pair is a finite-dimensional Lie algebra `l` together with a
//! subalgebra `a`. Deformations of `a` inside `l` over a local Artinian
//! algebra `K + m` are encoded by Maurer-Cartan elements of a cubic
//! L-infinity algebra built on the cochains `Hom(Lambda a, l/a)`, and
//! isomorphisms between them by the exponentials of nilpotent derivations.
//! Everything is computed over the rationals with exact arithmetic.

pub mod catalog;
pub mod cli;
pub mod coeff;
pub mod cohomology;
pub mod deform;
pub mod error;
pub mod io;
pub mod liealg;
pub mod linalg;
pub mod mc;
pub mod omega;
pub mod sample;
pub mod verify;

pub use coeff::{ArtinAlgebra, ArtinElement, ArtinMorphism, Scalar};
pub use error::{Error, Result};
pub use liealg::{Derivation, LieAlgebra, LiePair};
pub use linalg::Matrix;
pub use omega::OmegaElement;
