//! Interpolation differences of `|y|^s`-type functions by entire functions of
//! exponential type 1, and their asymptotic link to `Φ(±1, s, v)`, `ζ(s)`,
//! `β(s)` and Dirichlet `L(s, χ)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: complex gamma, semi-infinite quadrature, alternating-series
//!   acceleration and Richardson extrapolation.
//! * [`special`]: Lerch `Φ(±1, s, v)`, Hurwitz and Riemann zeta, Dirichlet beta.
//! * [`characters`]: Dirichlet characters, Gauss sums, exceptional sets.
//! * [`interpolation`]: `f_{k,s,v}`, the interpolating entire function
//!   `g_{k,s,v}` (series and integral-identity paths), the integral `F_{k,s,v}`.
//! * [`lfunctions`]: `L(s, χ)`, the pair `φ_{s,q}`, `γ_{s,q}`, the integral `F*`
//!   and the starred variants for `q = 3, 4`.
//! * [`analysis`]: limit extraction, decay-rate fits and the `L_p` zero probe.
//!
//! All functions are pure; configuration is passed explicitly via
//! [`EvalConfig`].

pub mod analysis;
pub mod characters;
mod error;
pub mod interpolation;
pub mod lfunctions;
pub mod numerics;
pub mod special;

pub use error::{Error, Result};
pub use numerics::{ComplexScalar, EvalConfig};
