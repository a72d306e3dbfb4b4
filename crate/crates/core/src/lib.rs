//! Analytic cavity-QED model of a whispering-gallery-mode microcavity loaded
//! with a metal nanosphere and coupled to dipole emitters.
//!
//! The crate is organised bottom-up:
//!
//! * [`materials`]: Drude permittivity, Clausius–Mossotti factor, plasmon resonance.
//! * [`cavity`]: bare cavity decay, bare vacuum Rabi coupling, emitter decay.
//! * [`hybrid`]: nanoparticle-induced coupling enhancement, mode mixing and losses.
//! * [`spectra`]: steady-state taper transmission and dip extraction.
//! * [`sweeps`]: cooperativity maps and detuning optimisation.
//! * [`dynamics`]: one-axis twisting in the symmetric Dicke subspace.
//! * [`config`]: scenario documents with explicit units, reports and digests.
//!
//! All internal quantities are SI with angular frequencies in rad/s.

// `!(x > 0.0)` is used on purpose so that NaN fails positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cavity;
pub mod cli;
pub mod config;
pub mod constants;
pub mod dynamics;
mod error;
pub mod hybrid;
pub mod materials;
pub mod optimize;
pub mod output;
pub mod spectra;
pub mod sweeps;
pub mod units;

pub use error::{Error, Result};

pub use cavity::{CavityConfig, EmitterConfig};
pub use config::{derive_all, load_config, RunReport, SystemConfig};
pub use hybrid::{HybridParams, NanoGeometry};
pub use materials::{DrudeMetal, Medium};
pub use num_complex::Complex64;
