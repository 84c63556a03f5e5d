//! Composition operators `C_φ f = f ∘ φ` on Orlicz spaces over atomic
//! dissipative systems: hyperbolicity classification with numeric `(K, t)`
//! certificates, bounded-distortion checks, the weighted-shift factor and
//! constructive shadowing of pseudo-orbits.

pub mod classify;
pub mod cli;
pub mod norms;
pub mod operator;
pub mod optim;
pub mod shadow;
pub mod space;
pub mod young;

pub use classify::{
    certify, classify, distortion, rn_conditions, spectral_bounds, AnalysisParams, Classification, DistortionReport,
    HyperbolicClass, HyperbolicityCertificate, Mode, RateTable, RateTables, RnClass,
};
pub use norms::{indicator_norm, luxemburg, modular, orlicz_norm, Cell, SimpleFunction};
pub use space::{DissipativeSystem, Generator, InvalidConfig, SystemSpec};
pub use young::{YoungError, YoungFunction, YoungSpec};
