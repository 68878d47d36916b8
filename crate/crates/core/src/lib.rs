//! Exact symbolic engine for the deformed operator algebra of the
//! `d`-dimensional Dunkl-Coulomb problem.
//!
//! * [`coeff`]: Gaussian-rational polynomials in `mu_i`, `E`, `alpha`.
//! * [`algebra`]: normal-ordered operators in `x_i`, `r^k`, `D_i`, `R_i`.
//! * [`generators`]: the named operators of the model and the `so(d+1,2)` map.
//! * [`funcspace`]: exact action on test functions, an independent oracle.
//! * [`verify`]: the identity catalog and its reports.
//! * [`cli`]: expression language and command-line front end.

pub mod algebra;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod funcspace;
pub mod generators;
pub mod verify;

pub use algebra::{Format, NormalMonomial, Operator};
pub use coeff::{Bindings, GaussianRational, Param, Scalar};
pub use error::{Error, Result};
pub use generators::{GeneratorId, Model, ModelConfig};

/// Version string written into verification reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
