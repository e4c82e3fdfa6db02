//! The finite catalog of curve maps used to exercise functoriality.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::divisor::{Curve, Divisor, Point};
use crate::error::{Error, Result};

/// Exponents supported by [`CurveMap::Power`].
pub const SUPPORTED_POWERS: [u32; 2] = [2, 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveMap {
    /// Identity on any curve.
    Identity,
    /// `z -> z^n` on the sphere, `n` in [`SUPPORTED_POWERS`]. Critical values
    /// are `0` and `inf`.
    Power(u32),
    /// `u -> u + c` on `C_tau`.
    Translation(Complex64),
}

impl fmt::Display for CurveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveMap::Identity => write!(f, "identity"),
            CurveMap::Power(n) => write!(f, "z -> z^{n}"),
            CurveMap::Translation(c) => write!(f, "u -> u + {c}"),
        }
    }
}

impl CurveMap {
    /// Check that the map is in the catalog and acts on `curve`.
    pub fn check_source(&self, curve: &Curve) -> Result<()> {
        match (self, curve) {
            (CurveMap::Identity, _) => Ok(()),
            (CurveMap::Power(n), Curve::Sphere) if SUPPORTED_POWERS.contains(n) => Ok(()),
            (CurveMap::Power(n), Curve::Sphere) => Err(Error::Capability(format!(
                "z -> z^{n}: only exponents {SUPPORTED_POWERS:?} are supported"
            ))),
            (CurveMap::Translation(c), Curve::Elliptic(_)) if c.re.is_finite() && c.im.is_finite() => Ok(()),
            (map, curve) => Err(Error::Capability(format!("{map} is not defined on {curve}"))),
        }
    }

    fn image(&self, point: Point) -> Point {
        match (self, point) {
            (CurveMap::Identity, p) => p,
            (_, Point::Infinity) => Point::Infinity,
            (CurveMap::Power(n), Point::Finite(z)) => Point::Finite(z.powu(*n)),
            (CurveMap::Translation(c), Point::Finite(z)) => Point::Finite(z + c),
        }
    }

    fn preimages(&self, point: Point) -> Result<Vec<Point>> {
        match (self, point) {
            (CurveMap::Identity, p) => Ok(vec![p]),
            (CurveMap::Power(_), Point::Infinity) => Err(Error::Branch {
                point: Complex64::new(f64::INFINITY, 0.0),
            }),
            (CurveMap::Power(n), Point::Finite(z)) => {
                if z.norm() == 0.0 {
                    return Err(Error::Branch { point: z });
                }
                let (r, arg) = z.to_polar();
                let radius = r.powf(1.0 / *n as f64);
                Ok((0..*n)
                    .map(|k| {
                        let angle = (arg + 2.0 * PI * k as f64) / *n as f64;
                        Point::Finite(Complex64::from_polar(radius, angle))
                    })
                    .collect())
            }
            (CurveMap::Translation(_), Point::Infinity) => unreachable!("no infinity on C_tau"),
            (CurveMap::Translation(c), Point::Finite(z)) => Ok(vec![Point::Finite(z - c)]),
        }
    }
}

/// `f_*(sum a_P [P]) = sum a_P [f(P)]`, merging coincident images.
pub fn pushforward(d: &Divisor, map: CurveMap) -> Result<Divisor> {
    map.check_source(d.curve())?;
    Divisor::new(*d.curve(), d.terms().iter().map(|(p, m)| (map.image(*p), *m)))
}

/// `f^*(sum b_Q [Q]) = sum b_Q sum_{f(P) = Q} [P]`: every preimage gets
/// multiplicity `b_Q`, which needs every `Q` to avoid the branch values.
pub fn pullback(d: &Divisor, map: CurveMap) -> Result<Divisor> {
    map.check_source(d.curve())?;
    let mut terms = Vec::new();
    for (q, m) in d.terms() {
        for p in map.preimages(*q)? {
            terms.push((p, *m));
        }
    }
    Divisor::new(*d.curve(), terms)
}
