//! Holomorphic linking numbers of degree-zero divisors on the Riemann sphere
//! and on elliptic curves `C/(Z + Z tau)`, together with the special functions
//! they reduce to (Jacobi theta, Weierstrass `p`, modular lambda), the exact
//! Hodge diamond of the crepant resolution `X_tau` of a `(Z/2)^2` torus
//! quotient, and the ABC Massey value on `X_tau` computed through the
//! linking-number reduction chain.
//!
//! Normalization: a Green primitive `T` of a divisor `Z` satisfies
//! `i ddbar T = delta_Z`. On a curve, `(1/pi) log|f|` is such a primitive for
//! `div(f)`, which fixes every prefactor used in [`linking`] and [`massey`].

pub mod error;
pub mod hodge;
pub mod linking;
pub mod massey;
pub mod special;
pub mod tau;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use tau::Tau;
