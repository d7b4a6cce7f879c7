//! The production pipeline: cycle lattice, virtual Betti numbers,
//! generalized weights, weight polynomials and spectra.

use num_bigint::BigInt;

use crate::error::{input, structural, Result};
use crate::input::Problem;
use crate::lattice::{BettiTable, CycleLattice};
use crate::spectra::{
    generalized_weights, phi_from_polys, weight_poly_betti, SpectrumTable, WeightPolynomial,
};
use crate::{DEFAULT_CODEWORD_CAP, DEFAULT_SUBSPACE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Evaluate spectra at `Q^r`.
    pub r: u32,
    pub subspace_cap: u64,
    pub codeword_cap: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            r: 1,
            subspace_cap: DEFAULT_SUBSPACE_CAP,
            codeword_cap: DEFAULT_CODEWORD_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    /// `Q = q^m`.
    pub big_q: BigInt,
    pub lattice: CycleLattice,
    pub betti: BettiTable,
    /// `d_1..d_k`, agreed on by the conullity, Betti and flat methods.
    pub weights: Vec<usize>,
    /// `P_s` for `s = 0..=n`.
    pub polys: Vec<WeightPolynomial>,
    pub spectrum: SpectrumTable,
    /// `φ^{(l)}_s`, indexed `[l][s]`.
    pub phi: Vec<Vec<BigInt>>,
}

pub fn analyze(pr: &Problem, opts: &Options) -> Result<Analysis> {
    if opts.r == 0 {
        return input("r must be at least 1");
    }
    let m = &pr.matroid;
    let big_q = BigInt::from(pr.q()).pow(pr.m as u32);
    let lattice = CycleLattice::build(m, opts.subspace_cap)?;
    let betti = lattice.virtual_betti_table()?;
    let weights = generalized_weights(m, &betti, opts.subspace_cap)?;
    let polys: Vec<WeightPolynomial> = (0..=m.n()).map(|s| weight_poly_betti(&betti, s)).collect();
    let spectrum = SpectrumTable::from_polys(&polys, m.full_rank(), &big_q, opts.r)?;
    if spectrum.weights != weights {
        return structural(format!(
            "weights from polynomial degrees {:?} differ from {:?}",
            spectrum.weights, weights
        ));
    }
    let phi = phi_from_polys(&polys, betti.levels());
    Ok(Analysis {
        big_q,
        lattice,
        betti,
        weights,
        polys,
        spectrum,
        phi,
    })
}
