//! Haar sampling on `SO(m)` and `Sp(2n)`, numerical evaluation of trace
//! products, Weyl characters and `Φ_{n,f}`, and reproducible Monte Carlo
//! estimators.

mod estimate;
mod sample;
mod spectrum;
mod weyl;

use serde::{Deserialize, Serialize};

pub use estimate::{
    estimate, estimate_batch, estimate_fn, estimate_ratio, MCEstimate, McConfig, Observable, RatioEstimate,
};
pub use sample::{sample, GroupMatrix, HaarSample};
pub use spectrum::{half_spectrum, pfaffian, HalfSpectrum};
pub use weyl::{eval_orthogonal_character, eval_weyl_character, SignedWeight};

use crate::error::{Error, Result};

/// Every numerical tolerance used by sampling, spectra and estimation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// `‖g g* - I‖_max`, and `‖g gᵗ - I‖_max` for SO.
    pub unitarity: f64,
    /// `|det g - 1|` for SO.
    pub determinant: f64,
    /// `‖g J gᵗ - J‖_max` for Sp.
    pub symplectic: f64,
    /// Imaginary residual of `tr(g^i)`.
    pub trace_imaginary: f64,
    /// Conjugate-pair matching residual of the spectrum.
    pub pairing: f64,
    /// Smallest admissible `|Weyl denominator|`.
    pub weyl_denominator: f64,
    /// Fraction of degenerate samples that aborts an estimate.
    pub max_degenerate_fraction: f64,
    pub min_samples: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitarity: 1e-10,
            determinant: 1e-8,
            symplectic: 1e-10,
            trace_imaginary: 1e-8,
            pairing: 1e-6,
            weyl_denominator: 1e-12,
            max_degenerate_fraction: 0.01,
            min_samples: 100,
        }
    }
}

/// Run `f` on a dedicated pool of `threads` workers (0 = available parallelism).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}
