//! Cavity-modified master equation for a coherently driven V-type
//! three-level atom coupled to a strongly damped cavity mode.
//!
//! All frequencies and rates are expressed in units of the spontaneous
//! decay rate γ and measured relative to the laser frequency (rotating
//! frame). The crate is organised bottom-up:
//!
//! * [`linalg`] – dense complex linear algebra and quadrature,
//! * [`superop`] – the (single) vectorization convention for superoperators,
//! * [`model`] – parameters, dressed scalars, the S operator and Liouvillians,
//! * [`steady`] – steady states and detuning sweeps of the bare populations,
//! * [`dressed`] – dressed basis, secular rates and rate-equation populations,
//! * [`spectra`] – resonance fluorescence and probe absorption spectra.

pub mod dressed;
pub mod error;
pub mod grid;
pub mod linalg;
pub mod model;
pub mod spectra;
pub mod steady;
pub mod superop;

pub use dressed::Gamma5Variant;
pub use error::{Error, Result};
pub use model::{BetaVariant, SOperatorSource, SystemParams};

pub use num_complex::Complex64 as C64;
