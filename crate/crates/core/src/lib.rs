//! Conjugate-model engine for comparing Bayesian model-choice criteria.
//!
//! Everything here is pure computation over one-dimensional conjugate
//! families: likelihoods, posterior updates, seeded sampling, marginal
//! likelihoods (closed form and by quadrature), posterior summaries of the
//! likelihood, joint pseudo-prior posteriors and the asymptotic checks that
//! go with them. The crate is `no_std` and only needs `alloc`; file formats
//! and the command line live in the `modelchoice` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod aitkin;
pub mod asymptotics;
mod error;
pub mod improper;
pub mod joint;
pub mod math;
pub mod model;
pub mod quadrature;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use model::{DataSet, Distribution, Family, ModelSpec, ParamDraws, PriorSpec, Source};
