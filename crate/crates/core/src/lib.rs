//! Flux-quantized Sommerfeld atom.
//!
//! Closed elliptic orbits that satisfy the Bohr-Sommerfeld-Wilson rule
//! enclose an integer number of flux quanta `h/e`. An additional magnetic
//! flux through the orbit (external field, nuclear moment, electron moment)
//! therefore shifts the orbit energy. This crate computes the orbit geometry,
//! the flux from each source, the resulting shifts, and the standard
//! quantum-mechanical baselines they are compared against.
//!
//! All quantities are SI internally. Conversion happens only at the output
//! boundary via [`constants::convert_energy`].

pub mod constants;
pub mod coupling;
pub mod effects_simple;
pub mod energy;
mod error;
pub mod flux;
pub mod half;
pub mod orbits;
pub mod quadrature;
pub mod reference;
pub mod spectroscopy;

pub use constants::{convert_energy, load_constants, EnergyUnit, PhysicalConstants};
pub use energy::{EnergyShift, ShiftOrder};
pub use error::{Error, Result};
pub use flux::{FluxSource, FluxValue};
pub use half::Half;
pub use orbits::{OrbitGeometry, QuantumNumbers};
pub use reference::{ExperimentalValue, NuclearSpecies};
pub use spectroscopy::Level;
