//! The ABC Massey value `int_{D1} <D2, D3, D4>_ABC` on `X_tau`.
//!
//! The divisors `D_i` on `X_tau` enter only through the reduction chain
//!
//! ```text
//! int_{D1} <D2, D3, D4> = 8 * int_{E0 - E1} <E0 + E1, E2 + E3, E2 - E3>   (on X~)
//!                       = 8 * <N0 - N1, N2 - N3>_M                          (blow-up)
//!                       = 8 * <[0] - [1/2], [tau/2] - [(1+tau)/2]>_{C_tau}  (adjunction)
//! ```
//!
//! The 8 is `(1/2) * 2^4`: the degree-2 quotient `X~ -> X` contributes `1/2`
//! and `pi^*[E_l] = 2[E_l]` on each of the four classes contributes `2`.
//! With the curve-level value `(1/2pi) log|1 - lambda|` this gives
//! `(4/pi) log|1 - lambda(tau)|`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linking::{linking_elliptic, Curve, Divisor};
use crate::special::{lambda_inversion_forms, modular_lambda, InversionForms};
use crate::tau::Tau;

/// `(1/2) * 2^4` from pulling back along the quotient `X~ -> X`.
pub const CHAIN_FACTOR: f64 = 8.0;

/// Default threshold for calling the value nonzero.
pub const DEFAULT_NONVANISHING_TOL: f64 = 1e-6;

/// `(4/pi) log|1 - lambda(tau)|`.
pub fn massey_value_closed_form(tau: Tau) -> Result<f64> {
    let lambda = modular_lambda(tau)?;
    closed_form_from_lambda(lambda)
}

fn closed_form_from_lambda(lambda: Complex64) -> Result<f64> {
    let modulus = (1.0 - lambda).norm();
    if modulus == 0.0 {
        return Err(Error::Divergence(format!(
            "lambda(tau) = {lambda} equals 1; log|1 - lambda| is -inf"
        )));
    }
    Ok(CHAIN_FACTOR / (2.0 * PI) * modulus.ln())
}

/// The half-period divisors `[0] - [1/2]` and `[tau/2] - [(1+tau)/2]` on `C_tau`.
pub fn half_period_divisors(tau: Tau) -> Result<(Divisor, Divisor)> {
    let curve = Curve::Elliptic(tau);
    let t = tau.value();
    Ok((
        Divisor::difference(curve, Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0))?,
        Divisor::difference(curve, t / 2.0, (t + 1.0) / 2.0)?,
    ))
}

/// `8 * <[0] - [1/2], [tau/2] - [(1+tau)/2]>` by the Arakelov-Green path.
pub fn massey_value_via_linking(tau: Tau) -> Result<f64> {
    let (z, w) = half_period_divisors(tau)?;
    Ok(CHAIN_FACTOR * linking_elliptic(&z, &w)?.value)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MasseyReport {
    pub tau: Tau,
    pub lambda_at_tau: Complex64,
    /// `-inf` when `lambda(tau) = 1`; see `divergent`.
    pub value_closed_form: f64,
    pub value_via_linking: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub nonvanishing: bool,
    pub divergent: bool,
    /// `lambda(1/tau)` and `lambda(-1/tau)` against `1 - lambda(tau)`.
    pub inversion: InversionForms,
}

pub fn massey_report(tau: Tau, tolerance: f64) -> Result<MasseyReport> {
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(Error::Validation(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let lambda = modular_lambda(tau)?;
    let inversion = lambda_inversion_forms(tau)?;
    let (closed, divergent) = match closed_form_from_lambda(lambda) {
        Ok(v) => (v, false),
        Err(Error::Divergence(_)) => (f64::NEG_INFINITY, true),
        Err(e) => return Err(e),
    };
    let via_linking = if divergent {
        f64::NEG_INFINITY
    } else {
        massey_value_via_linking(tau)?
    };
    let residual = if divergent { 0.0 } else { (closed - via_linking).abs() };
    Ok(MasseyReport {
        tau,
        lambda_at_tau: lambda,
        value_closed_form: closed,
        value_via_linking: via_linking,
        residual,
        tolerance,
        nonvanishing: closed.abs() > tolerance,
        divergent,
        inversion,
    })
}

/// Bisection for `|1 - lambda(re + i im)| = 1` on `re in [re_lo, re_hi]` at
/// fixed `im`; the endpoints must bracket a sign change of `log|1 - lambda|`.
pub fn locate_vanishing_crossing(im: f64, re_lo: f64, re_hi: f64, re_tol: f64) -> Result<Tau> {
    let f = |re: f64| -> Result<f64> {
        let lambda = modular_lambda(Tau::from_parts(re, im)?)?;
        Ok((1.0 - lambda).norm().ln())
    };
    let (mut lo, mut hi) = (re_lo, re_hi);
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Tau::from_parts(lo, im);
    }
    if f_hi == 0.0 {
        return Tau::from_parts(hi, im);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Validation(format!(
            "no sign change of log|1 - lambda| between Re tau = {re_lo} and {re_hi} at Im tau = {im}"
        )));
    }
    while hi - lo > re_tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Tau::from_parts(mid, im);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Tau::from_parts(0.5 * (lo + hi), im)
}
