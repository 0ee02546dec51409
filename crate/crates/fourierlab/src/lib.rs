//! Numerical harmonic analysis.
//!
//! The library is organized around periodic signals and their Fourier
//! coefficients (`periodic`), the classical summation kernels and methods
//! (`kernels`, `summation`), a factorized discrete Fourier transform with
//! operation counting (`transforms`), special functions (`special`),
//! signal-processing applications (`signal_apps`), spectral PDE solvers
//! (`pde`), and integral-geometry / stochastic estimators (`geo`).

pub mod error;
pub mod geo;
pub mod io;
pub mod kernels;
pub mod pde;
pub mod periodic;
pub mod quad;
pub mod signal_apps;
pub mod special;
pub mod summation;
pub mod transforms;

pub use error::{Error, Result};
pub use periodic::{CoefficientTable, PeriodicSignal, TrigCoefficientTable, Waveform};
