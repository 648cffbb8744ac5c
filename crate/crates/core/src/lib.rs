//! Bound states of the one-dimensional triangular potential well
//!
//! ```text
//! V(x) = -V0 (1 - |x|/L)   for |x| < L,      V(x) = 0 otherwise
//! ```
//!
//! Inside the well the Schrödinger equation is Airy's equation in
//! `z = z0 + v0^{1/3} |x| / L`, outside it is a decaying exponential.
//! Matching value and slope at `x = L`, with the parity condition at the
//! origin, gives a transcendental equation in `z0` whose roots are the
//! levels. Energies are reported both dimensionless,
//! `epsilon = E / (hbar^2 / (2 m L^2))`, and in the caller's units.
//!
//! All numerical code is generic over [`real::Real`] (`f32` or `f64`);
//! the aliases below name the `f64` instantiations.
//!
//! ```
//! use triwell::{spectrum::{find_bound_states, DEFAULT_TOL}, WellSpec64};
//!
//! let well = WellSpec64::new(10.0, 1.0).unwrap();
//! let spectrum = find_bound_states(&well, DEFAULT_TOL).unwrap();
//! assert_eq!(spectrum.len(), 2);
//! assert!((spectrum.states[0].epsilon + 12.5029801).abs() < 1e-7);
//! ```
//!
//! [`oracle`] re-derives the spectrum by finite differences without using
//! any Airy function, and [`limits`] follows the narrow-well limit onto
//! the delta-function well.

pub mod cli;
pub mod error;
pub mod limits;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod real;
pub mod specfun;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::Parity;

pub type AiryQuad64 = specfun::AiryQuad<f64>;
pub type WellSpec64 = model::WellSpec<f64>;
pub type BoundState64 = model::BoundState<f64>;
pub type Spectrum64 = spectrum::Spectrum<f64>;
pub type SweepRow64 = spectrum::SweepRow<f64>;
pub type MatchingResidual64 = spectrum::MatchingResidual<f64>;
pub type WaveCoefficients64 = wavefunction::WaveCoefficients<f64>;
pub type TridiagonalHamiltonian64 = oracle::TridiagonalHamiltonian<f64>;
pub type DeltaFamily64 = limits::DeltaFamily<f64>;
pub type DeltaLimitCase64 = limits::DeltaLimitCase<f64>;
pub type DeltaLimitReport64 = limits::DeltaLimitReport<f64>;
pub type ScalingTable64 = limits::ScalingTable<f64>;
