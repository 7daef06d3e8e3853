//! Spectral graph toolkit for Hückel and free-electron models of conjugated
//! oligomers and polymers.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the usual double-precision choice.

pub mod analysis;
pub mod eigen;
pub mod error;
pub mod femodel;
pub mod floquet;
pub mod graph;
pub mod hmo;
pub mod scalar;

pub use analysis::{band_widths, counting_convergence, counting_function, gap_sweep, polymer_bands, CountingFunction, GapSeries};
pub use eigen::{eig_generalized, eig_hermitian, eig_symmetric, Multiplet, Spectrum, SpectrumKind};
pub use error::{Error, Result};
pub use femodel::{fe_exceptional_multiplicity, fe_filling, fe_gap, fe_levels, fe_oracle_discretized, LevelOrigin, MetricSpectrum};
pub use floquet::{band_edges, band_structure, bloch_matrix, fe_band_structure, polymer_gap, xi_decomposition, Band, BandStructure, BlochMatrix, Model};
pub use graph::{build_oligomer, catalog, catalog_entry, parse_monomer, serialize_monomer, ModelConstants, MonomerSpec, OligomerGraph};
pub use hmo::{hmo_filling, hmo_gap, hmo_levels, OrbitalFilling};
pub use scalar::Real;

pub type Spectrum64 = Spectrum<f64>;
pub type MetricSpectrum64 = MetricSpectrum<f64>;
pub type BandStructure64 = BandStructure<f64>;
pub type CountingFunction64 = CountingFunction<f64>;
pub type GapSeries64 = GapSeries<f64>;
pub type ModelConstants64 = ModelConstants<f64>;
pub type OrbitalFilling64 = OrbitalFilling<f64>;
