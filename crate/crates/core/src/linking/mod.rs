//! Holomorphic linking numbers of degree-zero divisors on curves.
//!
//! With the primitive normalization `i ddbar T = delta_Z`, the function
//! `(1/pi) log|f|` is a primitive of `div(f)`. This fixes both closed forms:
//!
//! * sphere: `<Z, W> = (1/pi) sum_{Q in W} b_Q sum_{P in Z} a_P log|Q - P|`,
//!   the cross-ratio formula `<P - Q, R - S> = (1/pi) log|(P,Q,R,S)|`;
//! * `C_tau`: `p - e_j` has divisor `2[a_j] - 2[0]`, so linking against a
//!   difference of half-periods carries `1/(2 pi)`.
//!
//! On `C_tau` the value itself always comes from the double sum of
//! [`green::arakelov_green`] over the two divisors.

pub mod divisor;
pub mod green;
pub mod maps;

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

pub use divisor::{Curve, Divisor, Point};
pub use green::{arakelov_green, ArakelovKernel, GreenKernel, PerturbedKernel};
pub use maps::{pullback, pushforward, CurveMap};

use crate::error::{Error, Result};
use crate::special::{half_period_values, weierstrass_p, HalfPeriodValues};
use crate::tau::Tau;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkingMethod {
    CrossRatio,
    HalfPeriodClosedForm,
    ArakelovGreen,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkingResult {
    pub value: f64,
    pub method: LinkingMethod,
    /// Disagreement with the second evaluation path, or 0 when only one ran.
    pub residual: f64,
    /// The second path's value, when it ran.
    pub cross_check: Option<f64>,
}

fn check_pair(z: &Divisor, w: &Divisor) -> Result<()> {
    if !z.curve().same_as(w.curve()) {
        return Err(Error::CurveMismatch);
    }
    z.require_degree_zero()?;
    w.require_degree_zero()?;
    if let Some(p) = z.first_overlap(w) {
        return Err(Error::Overlap {
            point: p.as_finite().unwrap_or(Complex64::new(f64::INFINITY, 0.0)),
        });
    }
    Ok(())
}

/// Sum pair contributions in sorted order so that the total does not depend
/// on which divisor came first.
fn symmetric_sum(mut parts: Vec<f64>) -> f64 {
    parts.sort_by(f64::total_cmp);
    parts.into_iter().sum()
}

fn ordered(p: Complex64, q: Complex64) -> (Complex64, Complex64) {
    let key = |z: Complex64| (z.re.to_bits() as i64, z.im.to_bits() as i64);
    match key(p).cmp(&key(q)) {
        Ordering::Greater => (q, p),
        _ => (p, q),
    }
}

/// Linking number on the Riemann sphere by the cross-ratio formula.
///
/// Factors involving the infinity marker are dropped: `log|Q - R|` grows like
/// `log|R|` as `R -> inf`, and the growth cancels because the other divisor
/// has degree zero.
pub fn linking_sphere(z: &Divisor, w: &Divisor) -> Result<LinkingResult> {
    if *z.curve() != Curve::Sphere || *w.curve() != Curve::Sphere {
        return Err(Error::CurveMismatch);
    }
    check_pair(z, w)?;
    let mut parts = Vec::with_capacity(z.terms().len() * w.terms().len());
    for (p, a) in z.terms() {
        for (q, b) in w.terms() {
            if let (Point::Finite(p), Point::Finite(q)) = (p, q) {
                parts.push((a * b) as f64 * (q - p).norm().ln());
            }
        }
    }
    Ok(LinkingResult {
        value: symmetric_sum(parts) / PI,
        method: LinkingMethod::CrossRatio,
        residual: 0.0,
        cross_check: None,
    })
}

/// Degree-zero double sum `sum a_P b_Q k(P, Q)` for a symmetric kernel.
pub fn pair_with_kernel<K: GreenKernel>(z: &Divisor, w: &Divisor, kernel: &K) -> Result<f64> {
    check_pair(z, w)?;
    let mut parts = Vec::with_capacity(z.terms().len() * w.terms().len());
    for (p, a) in z.terms() {
        for (q, b) in w.terms() {
            let (Point::Finite(p), Point::Finite(q)) = (p, q) else {
                return Err(Error::Validation("kernel pairing needs finite points".into()));
            };
            let (x, y) = ordered(*p, *q);
            parts.push((a * b) as f64 * kernel.pair(x, y)?);
        }
    }
    Ok(symmetric_sum(parts))
}

/// Linking number on `C_tau` via the Arakelov-Green double sum. When either
/// divisor is a multiple of a difference of two half-lattice points, the
/// Weierstrass closed form is evaluated as well and its disagreement is
/// reported as the residual.
pub fn linking_elliptic(z: &Divisor, w: &Divisor) -> Result<LinkingResult> {
    let Curve::Elliptic(tau) = *z.curve() else {
        return Err(Error::CurveMismatch);
    };
    if !matches!(w.curve(), Curve::Elliptic(_)) {
        return Err(Error::CurveMismatch);
    }
    let value = pair_with_kernel(z, w, &ArakelovKernel { tau })?;
    let cross_check = match half_period_closed_form(z, w, tau)? {
        Some(v) => Some(v),
        None => half_period_closed_form(w, z, tau)?,
    };
    Ok(LinkingResult {
        value,
        method: LinkingMethod::ArakelovGreen,
        residual: cross_check.map_or(0.0, |c| (c - value).abs()),
        cross_check,
    })
}

/// Dispatch on the curve of `z`.
pub fn linking(z: &Divisor, w: &Divisor) -> Result<LinkingResult> {
    match z.curve() {
        Curve::Sphere => linking_sphere(z, w),
        Curve::Elliptic(_) => linking_elliptic(z, w),
    }
}

/// Index `0..=3` of a half-lattice point `0, 1/2, tau/2, (1+tau)/2`, for a
/// point already reduced to the unit parallelogram.
pub fn half_lattice_index(u: Complex64, tau: Tau) -> Option<usize> {
    let (s, t) = tau.lattice_coords(u);
    let bit = |x: f64| {
        if x.abs() < 1e-12 {
            Some(0)
        } else if (x - 0.5).abs() < 1e-12 {
            Some(1)
        } else {
            None
        }
    };
    Some(bit(s)? + 2 * bit(t)?)
}

/// Closed form for `z = k([a_i] - [a_j])` with half-lattice points `a_i, a_j`:
/// `F = (p - e_i)/(p - e_j)` (with `p - e_0` read as 1) has divisor `2([a_i] - [a_j])`,
/// so `<z, w> = (k / 2 pi) sum_Q b_Q log|F(Q)|`.
fn half_period_closed_form(z: &Divisor, w: &Divisor, tau: Tau) -> Result<Option<f64>> {
    let [(p, a), (q, b)] = z.terms() else {
        return Ok(None);
    };
    let (Some(p), Some(q)) = (p.as_finite(), q.as_finite()) else {
        return Ok(None);
    };
    let (Some(i), Some(j)) = (half_lattice_index(p, tau), half_lattice_index(q, tau)) else {
        return Ok(None);
    };
    if *a != -*b {
        return Ok(None);
    }
    let e = half_period_values(tau)?;
    let p_at = |point: Complex64| -> Result<PValue> {
        match half_lattice_index(point, tau) {
            Some(0) => Ok(PValue::Pole),
            Some(k) => Ok(PValue::Finite(half_value(&e, k))),
            None => Ok(PValue::Finite(weierstrass_p(point, tau)?)),
        }
    };
    let mut parts = Vec::with_capacity(w.terms().len());
    for (point, mult) in w.terms() {
        let point = point.as_finite().expect("elliptic divisors have finite points");
        let log_f = match p_at(point)? {
            // F(0) = 1 when neither a_i nor a_j is 0; disjointness rules out the rest
            PValue::Pole => 0.0,
            PValue::Finite(pv) => {
                let num = if i == 0 {
                    0.0
                } else {
                    (pv - half_value(&e, i)).norm().ln()
                };
                let den = if j == 0 {
                    0.0
                } else {
                    (pv - half_value(&e, j)).norm().ln()
                };
                num - den
            }
        };
        parts.push(*mult as f64 * log_f);
    }
    Ok(Some(*a as f64 * symmetric_sum(parts) / (2.0 * PI)))
}

enum PValue {
    Pole,
    Finite(Complex64),
}

fn half_value(e: &HalfPeriodValues, k: usize) -> Complex64 {
    e.get(k).expect("half-lattice index 1..=3")
}

/// Both sides of `<Z, p^* W> = <p_* Z, W>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjunctionCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

pub fn check_adjunction(map: CurveMap, z: &Divisor, w: &Divisor) -> Result<AdjunctionCheck> {
    let lhs = linking(z, &pullback(w, map)?)?.value;
    let rhs = linking(&pushforward(z, map)?, w)?.value;
    Ok(AdjunctionCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}
