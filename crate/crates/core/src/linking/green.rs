//! Green primitives on `C_tau`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{theta, ThetaKind};
use crate::tau::Tau;

const POLE_TOL: f64 = 1e-12;

/// Arakelov-Green function
/// `g(u) = (1/pi) [log|theta1(u)| - pi (Im u)^2 / Im tau]`, additive constant 0.
///
/// `g` is doubly periodic, even, and `i ddbar g = delta_0 - dx dy / Im tau`,
/// so `x -> sum_P a_P g(x - P)` is a Green primitive of any degree-zero
/// divisor `sum_P a_P [P]`.
pub fn arakelov_green(u: Complex64, tau: Tau) -> Result<f64> {
    if tau.lattice_distance(u) < POLE_TOL {
        return Err(Error::Pole { point: u });
    }
    let u = tau.reduce_centered(u);
    let t1 = theta(ThetaKind::One, u, tau)?;
    Ok((t1.norm().ln() - PI * u.im * u.im / tau.im()) / PI)
}

/// A symmetric two-point kernel whose degree-zero double sums compute the
/// linking number.
pub trait GreenKernel {
    fn pair(&self, p: Complex64, q: Complex64) -> Result<f64>;
}

#[derive(Debug, Clone, Copy)]
pub struct ArakelovKernel {
    pub tau: Tau,
}

impl GreenKernel for ArakelovKernel {
    fn pair(&self, p: Complex64, q: Complex64) -> Result<f64> {
        arakelov_green(p - q, self.tau)
    }
}

/// `inner(p, q) + constant + phi(p) + phi(q)` with the lattice-periodic
/// `phi(u) = amplitude * cos(2 pi s(u))`, `s` the first coordinate of `u` in
/// the `(1, tau)` basis.
///
/// Changing the metric on `O(Z)` changes the Green function exactly by such
/// terms; on degree-zero divisors they contribute nothing.
#[derive(Debug, Clone, Copy)]
pub struct PerturbedKernel<K> {
    pub inner: K,
    pub tau: Tau,
    pub constant: f64,
    pub amplitude: f64,
}

impl<K: GreenKernel> PerturbedKernel<K> {
    fn phi(&self, u: Complex64) -> f64 {
        let (s, _) = self.tau.lattice_coords(u);
        self.amplitude * (2.0 * PI * s).cos()
    }
}

impl<K: GreenKernel> GreenKernel for PerturbedKernel<K> {
    fn pair(&self, p: Complex64, q: Complex64) -> Result<f64> {
        Ok(self.inner.pair(p, q)? + self.constant + self.phi(p) + self.phi(q))
    }
}

/// Five-point finite-difference Laplacian `d^2/dx^2 + d^2/dy^2` at `u`.
pub fn five_point_laplacian<F>(f: F, u: Complex64, step: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<f64>,
{
    let dx = Complex64::new(step, 0.0);
    let dy = Complex64::new(0.0, step);
    let centre = f(u)?;
    let sum = f(u + dx)? + f(u - dx)? + f(u + dy)? + f(u - dy)?;
    Ok((sum - 4.0 * centre) / (step * step))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn even_and_periodic() {
        let tau = Tau::from_parts(0.35, 0.9).unwrap();
        let u = c(0.17, 0.28);
        let g = arakelov_green(u, tau).unwrap();
        assert!((arakelov_green(-u, tau).unwrap() - g).abs() < 1e-14);
        assert!((arakelov_green(u + 1.0, tau).unwrap() - g).abs() < 1e-10);
        assert!((arakelov_green(u + tau.value(), tau).unwrap() - g).abs() < 1e-10);
    }

    #[test]
    fn periodicity_holds_without_reduction() {
        // The quasi-periodicity factor of theta1 cancels against the quadratic
        // term; check it on the raw formula, not only through the reduction.
        let tau = Tau::from_parts(-0.3, 1.4).unwrap();
        let raw = |u: Complex64| {
            let t1 = theta(ThetaKind::One, u, tau).unwrap();
            (t1.norm().ln() - PI * u.im * u.im / tau.im()) / PI
        };
        let u = c(0.21, 0.33);
        assert!((raw(u) - raw(u + tau.value())).abs() < 1e-12);
        assert!((raw(u) - raw(u + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn pole_on_lattice() {
        let tau = Tau::i();
        assert!(matches!(arakelov_green(c(1.0, -2.0), tau), Err(Error::Pole { .. })));
    }

    #[test]
    fn logarithmic_singularity() {
        let tau = Tau::i();
        let r = 1e-4;
        let g = arakelov_green(c(r, 0.0), tau).unwrap();
        // theta1(u) ~ theta1'(0) u = 2 pi eta^3 u near 0, so g - log(r)/pi is bounded
        let g2 = arakelov_green(c(r / 10.0, 0.0), tau).unwrap();
        assert!(((g - g2) - 10f64.ln() / PI).abs() < 1e-6);
    }

    #[test]
    fn laplacian_of_quadratic_is_exact() {
        let lap = five_point_laplacian(|u| Ok(u.re * u.re + 3.0 * u.im * u.im), c(0.2, 0.7), 1e-3).unwrap();
        assert!((lap - 8.0).abs() < 1e-6);
    }
}
