//! The modulus `tau` of the lattice `Z + Z tau` and lattice-coordinate helpers.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest accepted imaginary part. No reduction to a fundamental domain is
/// performed, so accuracy degrades as `tau` approaches the real axis.
pub const MIN_IM_TAU: f64 = 0.05;

/// A point of the upper half-plane with `Im tau >= MIN_IM_TAU`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tau(Complex64);

impl Tau {
    pub fn new(value: Complex64) -> Result<Self> {
        if !value.re.is_finite() || !value.im.is_finite() || value.im < MIN_IM_TAU {
            return Err(Error::Domain {
                tau: value,
                min_im: MIN_IM_TAU,
            });
        }
        let tau = Tau(value);
        debug_assert!(tau.nome().norm() < 1.0 - 1e-12);
        Ok(tau)
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    /// `tau = i`, the square lattice.
    pub fn i() -> Self {
        Tau(Complex64::new(0.0, 1.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    /// Nome `q = exp(i pi tau)`.
    pub fn nome(self) -> Complex64 {
        (Complex64::i() * PI * self.0).exp()
    }

    /// `tau + shift` for real `shift`.
    pub fn shifted(self, shift: f64) -> Self {
        Tau(self.0 + shift)
    }

    /// Coordinates `(s, t)` of `u = s + t tau` in the lattice basis `(1, tau)`.
    pub fn lattice_coords(self, u: Complex64) -> (f64, f64) {
        let t = u.im / self.0.im;
        let s = u.re - t * self.0.re;
        (s, t)
    }

    pub fn from_lattice_coords(self, s: f64, t: f64) -> Complex64 {
        Complex64::new(s, 0.0) + self.0 * t
    }

    /// Representative of `u` with both lattice coordinates in `[-1/2, 1/2)`.
    pub fn reduce_centered(self, u: Complex64) -> Complex64 {
        let (s, t) = self.lattice_coords(u);
        let s = s - (s + 0.5).floor();
        let t = t - (t + 0.5).floor();
        self.from_lattice_coords(s, t)
    }

    /// Representative of `u` with both lattice coordinates in `[0, 1)`.
    ///
    /// Coordinates within `snap` of a multiple of `1/2` are snapped onto it, so
    /// half-periods entered with rounding noise get an exact representative.
    pub fn reduce_unit(self, u: Complex64, snap: f64) -> Complex64 {
        let (s, t) = self.lattice_coords(u);
        let fold = |x: f64| {
            let mut x = x - x.floor();
            let half = (2.0 * x).round() / 2.0;
            if (x - half).abs() <= snap {
                x = half;
            }
            if x >= 1.0 {
                x -= 1.0;
            }
            x
        };
        self.from_lattice_coords(fold(s), fold(t))
    }

    /// Distance from `u` to the nearest lattice point.
    pub fn lattice_distance(self, u: Complex64) -> f64 {
        let c = self.reduce_centered(u);
        let mut best = c.norm();
        for m in -1..=1 {
            for n in -1..=1 {
                let d = (c + self.from_lattice_coords(m as f64, n as f64)).norm();
                best = best.min(d);
            }
        }
        best
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
