//! Jacobi theta functions, the Weierstrass `p` function of `Z + Z tau`, and the
//! modular lambda function.
//!
//! Theta functions use the unit-period argument convention:
//!
//! ```text
//! theta1(z) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z)
//! theta2(z) = 2 sum_{n>=0}        q^{(n+1/2)^2} cos((2n+1) pi z)
//! theta3(z) = 1 + 2 sum_{n>=1}        q^{n^2}  cos(2 n pi z)
//! theta4(z) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2}  cos(2 n pi z)
//! ```
//!
//! with `q = exp(i pi tau)`, so `theta1(z + 1) = -theta1(z)` and the zeros of
//! `theta1` are exactly the lattice `Z + Z tau`.
//!
//! The lambda function is pinned to `lambda = theta2^4 / theta3^4` (thetanulls)
//! and every evaluation checks it against `(e3 - e2) / (e1 - e2)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tau::Tau;

/// Relative size of the first omitted series term.
pub const SERIES_REL_TOL: f64 = 1e-18;

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// Agreement required between the theta quotient and the half-period quotient
/// for lambda, relative to `max(1, |lambda|)`.
pub const LAMBDA_PIN_TOL: f64 = 1e-9;

/// Points closer than this to the lattice are treated as poles.
const POLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    One,
    Two,
    Three,
    Four,
}

impl TryFrom<u8> for ThetaKind {
    type Error = Error;

    fn try_from(kind: u8) -> Result<Self> {
        match kind {
            1 => Ok(ThetaKind::One),
            2 => Ok(ThetaKind::Two),
            3 => Ok(ThetaKind::Three),
            4 => Ok(ThetaKind::Four),
            other => Err(Error::Validation(format!("theta kind must be 1..=4, got {other}"))),
        }
    }
}

/// Jacobi theta function `theta_kind(z | tau)` by adaptive q-series summation.
///
/// Summation stops once the index is past the peak of
/// `|q|^{k^2} e^{2 pi k |Im z|}` and the bound on the next term drops below
/// `SERIES_REL_TOL * (1 + |partial sum|)`.
pub fn theta(kind: ThetaKind, z: Complex64, tau: Tau) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Validation(format!("theta argument {z} is not finite")));
    }
    let (half_integer, initial) = match kind {
        ThetaKind::One | ThetaKind::Two => (true, Complex64::new(0.0, 0.0)),
        ThetaKind::Three | ThetaKind::Four => (false, Complex64::new(1.0, 0.0)),
    };
    let alternating = matches!(kind, ThetaKind::One | ThetaKind::Four);
    let ipi_tau = Complex64::i() * PI * tau.value();
    let decay = PI * tau.im();
    let growth = 2.0 * PI * z.im.abs();
    let peak = z.im.abs() / tau.im();

    let mut sum = initial;
    for idx in 0..MAX_SERIES_TERMS {
        let n = if half_integer { idx } else { idx + 1 };
        let k = if half_integer { n as f64 + 0.5 } else { n as f64 };
        let bound = 2.0 * (growth * k - decay * k * k).exp();
        if k > peak && bound < SERIES_REL_TOL * (1.0 + sum.norm()) {
            return Ok(sum);
        }
        let weight = (ipi_tau * (k * k)).exp() * 2.0;
        let arg = z * (2.0 * PI * k);
        let trig = match kind {
            ThetaKind::One => arg.sin(),
            _ => arg.cos(),
        };
        let term = weight * trig;
        if alternating && n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    Err(Error::Convergence {
        terms: MAX_SERIES_TERMS,
    })
}

/// Thetanulls `theta2(0), theta3(0), theta4(0)`.
#[derive(Debug, Clone, Copy)]
pub struct ThetaNulls {
    pub t2: Complex64,
    pub t3: Complex64,
    pub t4: Complex64,
}

impl ThetaNulls {
    pub fn new(tau: Tau) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        Ok(ThetaNulls {
            t2: theta(ThetaKind::Two, zero, tau)?,
            t3: theta(ThetaKind::Three, zero, tau)?,
            t4: theta(ThetaKind::Four, zero, tau)?,
        })
    }
}

/// `p` at the half-periods: `e1 = p(1/2)`, `e2 = p(tau/2)`, `e3 = p((1+tau)/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPeriodValues {
    pub e1: Complex64,
    pub e2: Complex64,
    pub e3: Complex64,
}

impl HalfPeriodValues {
    pub fn sum(&self) -> Complex64 {
        self.e1 + self.e2 + self.e3
    }

    pub fn max_norm(&self) -> f64 {
        self.e1.norm().max(self.e2.norm()).max(self.e3.norm())
    }

    /// Value at half-lattice point index `1..=3` (`a1 = 1/2`, `a2 = tau/2`,
    /// `a3 = (1+tau)/2`).
    pub fn get(&self, index: usize) -> Option<Complex64> {
        match index {
            1 => Some(self.e1),
            2 => Some(self.e2),
            3 => Some(self.e3),
            _ => None,
        }
    }
}

/// Half-period values from the thetanull closed forms
/// `e1 = pi^2/3 (t3^4 + t4^4)`, `e2 = -pi^2/3 (t2^4 + t3^4)`,
/// `e3 = pi^2/3 (t2^4 - t4^4)`.
pub fn half_period_values(tau: Tau) -> Result<HalfPeriodValues> {
    let nulls = ThetaNulls::new(tau)?;
    Ok(half_periods_from_nulls(&nulls))
}

fn half_periods_from_nulls(nulls: &ThetaNulls) -> HalfPeriodValues {
    let c = PI * PI / 3.0;
    let t2 = nulls.t2.powi(4);
    let t3 = nulls.t3.powi(4);
    let t4 = nulls.t4.powi(4);
    HalfPeriodValues {
        e1: (t3 + t4) * c,
        e2: -(t2 + t3) * c,
        e3: (t2 - t4) * c,
    }
}

/// Weierstrass `p(z)` for `Z + Z tau` through
/// `p(z) = (pi t2 t3 theta4(z) / theta1(z))^2 - pi^2/3 (t2^4 + t3^4)`.
pub fn weierstrass_p(z: Complex64, tau: Tau) -> Result<Complex64> {
    if tau.lattice_distance(z) < POLE_TOL {
        return Err(Error::Pole { point: z });
    }
    let u = tau.reduce_centered(z);
    let nulls = ThetaNulls::new(tau)?;
    let t1 = theta(ThetaKind::One, u, tau)?;
    let t4z = theta(ThetaKind::Four, u, tau)?;
    let ratio = nulls.t2 * nulls.t3 * t4z / t1 * PI;
    Ok(ratio * ratio - (nulls.t2.powi(4) + nulls.t3.powi(4)) * (PI * PI / 3.0))
}

/// Weierstrass `p(z)` by direct lattice summation
/// `1/z^2 + sum' [1/(z-w)^2 - 1/w^2]` over `w = m + n tau` with `|w| <= radius`.
///
/// Terms are added in `+w/-w` pairs, which makes the result bitwise even in
/// `z`. A disk cuts off the `w^-4` tail by angular cancellation; the residual
/// truncation error decays faster than `1/radius^2` (about `1e-9` at radius
/// 400 for `|z| <= 1`), whereas a square cutoff would leave `~|z|^2/radius^2`.
pub fn lattice_sum_p(z: Complex64, tau: Tau, radius: u32) -> Result<Complex64> {
    if radius < 10 {
        return Err(Error::Validation(format!("lattice radius must be >= 10, got {radius}")));
    }
    if tau.lattice_distance(z) < POLE_TOL {
        return Err(Error::Pole { point: z });
    }
    let r = radius as f64;
    let r2 = r * r;
    let t = tau.value();
    let rows = (r / t.im).floor() as i64;

    let pair = |w: Complex64| {
        let w2inv = (w * w).inv();
        let a = (z - w) * (z - w);
        let b = (z + w) * (z + w);
        (a.inv() - w2inv) + (b.inv() - w2inv)
    };

    let mut acc = NeumaierSum::default();
    for n in 0..=rows {
        let y = n as f64 * t.im;
        let half_width = (r2 - y * y).max(0.0).sqrt();
        let centre = -(n as f64) * t.re;
        let m_lo = if n == 0 { 1 } else { (centre - half_width).ceil() as i64 };
        let m_hi = (centre + half_width).floor() as i64;
        for m in m_lo..=m_hi {
            let w = Complex64::new(m as f64, 0.0) + t * n as f64;
            if w.norm_sqr() <= r2 {
                acc.add(pair(w));
            }
        }
    }
    Ok((z * z).inv() + acc.total())
}

#[derive(Default)]
struct NeumaierSum {
    sum: Complex64,
    comp: Complex64,
}

impl NeumaierSum {
    fn add(&mut self, x: Complex64) {
        let re = neumaier_step(self.sum.re, x.re, &mut self.comp.re);
        let im = neumaier_step(self.sum.im, x.im, &mut self.comp.im);
        self.sum = Complex64::new(re, im);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier_step(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}

/// Modular lambda `theta2^4 / theta3^4`, checked against the half-period
/// quotient `(e3 - e2) / (e1 - e2)`.
pub fn modular_lambda(tau: Tau) -> Result<Complex64> {
    let nulls = ThetaNulls::new(tau)?;
    let lambda = (nulls.t2 / nulls.t3).powi(4);
    let e = half_periods_from_nulls(&nulls);
    let via_periods = (e.e3 - e.e2) / (e.e1 - e.e2);
    let gap = (lambda - via_periods).norm();
    if gap.is_nan() || gap > LAMBDA_PIN_TOL * lambda.norm().max(1.0) {
        return Err(Error::Internal(format!(
            "lambda convention check failed at tau = {tau}: theta quotient {lambda}, half-period quotient {via_periods}"
        )));
    }
    Ok(lambda)
}

/// `(e3 - e1) / (e2 - e1)`, which equals `1 - lambda(tau)`.
pub fn lambda_complement_ratio(tau: Tau) -> Result<Complex64> {
    let e = half_period_values(tau)?;
    let denom = e.e2 - e.e1;
    if denom.norm() == 0.0 {
        return Err(Error::Internal(format!("e1 = e2 at tau = {tau}")));
    }
    Ok((e.e3 - e.e1) / denom)
}

/// Lambda evaluated at the two candidate inversions of `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionForms {
    /// `1 - lambda(tau)`.
    pub complement: Complex64,
    /// `lambda(-1/tau)`; `None` when `-1/tau` falls below the supported strip.
    pub at_negative_inverse: Option<Complex64>,
    /// `lambda(1/tau)`; `1/tau` lies in the lower half-plane whenever
    /// `Im tau > 0`, so this is `None` for every valid `tau`.
    pub at_inverse: Option<Complex64>,
}

impl InversionForms {
    pub fn negative_inverse_residual(&self) -> Option<f64> {
        self.at_negative_inverse.map(|v| (v - self.complement).norm())
    }

    pub fn inverse_residual(&self) -> Option<f64> {
        self.at_inverse.map(|v| (v - self.complement).norm())
    }
}

pub fn lambda_inversion_forms(tau: Tau) -> Result<InversionForms> {
    let complement = Complex64::new(1.0, 0.0) - modular_lambda(tau)?;
    let one = Complex64::new(1.0, 0.0);
    let eval = |t: Complex64| Tau::new(t).ok().and_then(|t| modular_lambda(t).ok());
    Ok(InversionForms {
        complement,
        at_negative_inverse: eval(-one / tau.value()),
        at_inverse: eval(one / tau.value()),
    })
}
