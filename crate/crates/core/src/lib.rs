//! Exact and Monte Carlo averages over the compact classical groups
//! `Sp(2n)`, `SO(2n)` and `SO(2n+1)`.
//!
//! Stable-range moments `E_G[p_λ]` and character-twisted moments
//! `E_G[χ_γ p_λ]` are computed exactly from symmetric-group characters and
//! Littlewood-Richardson coefficients. The [`haar`] module samples the groups
//! to check them numerically.

pub mod error;
pub mod expansion;
pub mod expectation;
pub mod fourier;
pub mod group;
pub mod haar;
pub mod lr;
pub mod matching;
pub mod partition;
pub mod query;
pub mod scalar;
pub mod symgroup;
pub mod szego;

pub use error::{Error, Result};
pub use expansion::SchurExpansion;
pub use fourier::FourierData;
pub use group::{Family, GroupSpec, Rank};
pub use partition::Partition;
pub use scalar::Scalar;
