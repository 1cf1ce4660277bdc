//! Seeded random instances for test campaigns and the command line.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{int, ArtinAlgebra, ArtinElement, Scalar};
use crate::liealg::{combine, Derivation, LiePair};
use crate::mc::{differential_matrix, mc_extend, Extension, GaugeMode, GaugeParameter, MCElement};
use crate::omega::{binomial, OmegaElement};

/// Deterministic generator of small exact instances.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Integer in `-2..=2`, zero about half the time.
    pub fn scalar(&mut self) -> Scalar {
        if self.rng.gen_bool(0.5) {
            Scalar::zero()
        } else {
            let v: i64 = self.rng.gen_range(1..=2);
            int(if self.rng.gen_bool(0.5) { v } else { -v })
        }
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn vector(&mut self, len: usize) -> Vec<Scalar> {
        (0..len).map(|_| self.scalar()).collect()
    }

    fn combination(&mut self, basis: &[Vec<Scalar>], len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for b in basis {
            let c = self.scalar();
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += &c * x;
            }
        }
        out
    }

    /// Random element of the algebra; a unit about half the time.
    pub fn element(&mut self, alg: &Arc<ArtinAlgebra>) -> ArtinElement {
        alg.element(self.vector(alg.dim())).expect("shape")
    }

    pub fn omega(&mut self, pair: &Arc<LiePair>, degree: usize) -> OmegaElement {
        let len = binomial(pair.r(), degree) * pair.q();
        OmegaElement::from_data(pair, degree, self.vector(len)).expect("shape")
    }

    /// Random element of the kernel of `d_ce` on degree 1.
    pub fn cocycle(&mut self, pair: &Arc<LiePair>) -> OmegaElement {
        let z = differential_matrix(pair, 1).nullspace();
        let len = pair.r() * pair.q();
        OmegaElement::from_data(pair, 1, self.combination(&z, len)).expect("shape")
    }

    pub fn derivation(&mut self, pair: &LiePair, mode: GaugeMode) -> Derivation {
        let basis = mode.basis(pair);
        let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| self.scalar()).collect();
        combine(&basis, &coeffs, pair.n())
    }

    /// Derivations along each maximal-ideal basis vector, some left zero.
    pub fn gauge(&mut self, pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>, mode: GaugeMode) -> GaugeParameter {
        let mut comps = vec![Derivation::zero(pair.n())];
        for _ in 1..alg.dim() {
            comps.push(self.derivation(pair, mode));
        }
        GaugeParameter::new(pair, alg, mode, comps).expect("admissible by construction")
    }

    /// Arbitrary degree-1 cochain with coefficients in the maximal ideal.
    pub fn candidate(&mut self, pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>) -> MCElement {
        let mut comps = vec![OmegaElement::zero(pair, 1)];
        for _ in 1..alg.dim() {
            comps.push(self.omega(pair, 1));
        }
        MCElement::new(pair, alg, comps).expect("shape")
    }

    /// Maurer-Cartan element built layer by layer: random cocycles in each
    /// layer followed by the correction solving the equation to that order.
    /// Obstructed attempts are redrawn.
    pub fn mc_element(&mut self, pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>) -> MCElement {
        for _ in 0..50 {
            if let Some(xi) = self.try_mc(pair, alg) {
                return xi;
            }
        }
        MCElement::zero(pair, alg)
    }

    fn try_mc(&mut self, pair: &Arc<LiePair>, alg: &Arc<ArtinAlgebra>) -> Option<MCElement> {
        let mut xi = MCElement::zero(pair, alg);
        for k in 1..=alg.nilpotency() {
            let mut comps = xi.components().to_vec();
            for u in alg.layer(k) {
                let c = self.cocycle(pair);
                for (alpha, m) in alg.adapted_vector(u).iter().enumerate() {
                    comps[alpha].axpy(m, &c);
                }
            }
            let grown = MCElement::new(pair, alg, comps).ok()?;
            match mc_extend(&grown, k).ok()? {
                Extension::Extended(next) => xi = next,
                Extension::Obstructed(_) => return None,
            }
        }
        xi.verify().ok()
    }
}
