use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tau::Tau;

/// Snapping tolerance when reducing elliptic points to the unit parallelogram.
pub const HALF_PERIOD_SNAP: f64 = 1e-12;

/// Two points closer than this are considered the same point.
pub const COINCIDENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curve {
    Sphere,
    Elliptic(Tau),
}

impl Curve {
    pub fn tau(&self) -> Option<Tau> {
        match self {
            Curve::Sphere => None,
            Curve::Elliptic(tau) => Some(*tau),
        }
    }

    /// Same curve, with moduli compared to `1e-12`.
    pub fn same_as(&self, other: &Curve) -> bool {
        match (self, other) {
            (Curve::Sphere, Curve::Sphere) => true,
            (Curve::Elliptic(a), Curve::Elliptic(b)) => (a.value() - b.value()).norm() <= 1e-12,
            _ => false,
        }
    }

    /// Distance between two points on this curve. For elliptic curves this is
    /// the flat torus distance; `Infinity` is at distance 0 from itself and
    /// infinitely far from any finite point.
    pub fn distance(&self, a: Point, b: Point) -> f64 {
        match (a, b) {
            (Point::Infinity, Point::Infinity) => 0.0,
            (Point::Infinity, _) | (_, Point::Infinity) => f64::INFINITY,
            (Point::Finite(a), Point::Finite(b)) => match self {
                Curve::Sphere => (a - b).norm(),
                Curve::Elliptic(tau) => tau.lattice_distance(a - b),
            },
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Sphere => write!(f, "sphere"),
            Curve::Elliptic(tau) => write!(f, "C_tau, tau = {tau}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

impl Point {
    pub fn finite(re: f64, im: f64) -> Self {
        Point::Finite(Complex64::new(re, im))
    }

    pub fn as_finite(self) -> Option<Complex64> {
        match self {
            Point::Finite(z) => Some(z),
            Point::Infinity => None,
        }
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::Finite(z)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(z) => write!(f, "{z}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

/// A finite formal sum of points with nonzero integer multiplicities.
///
/// Construction merges coincident points and drops zero multiplicities. On an
/// elliptic curve every point is stored as its representative in the unit
/// parallelogram of the `(1, tau)` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Divisor {
    curve: Curve,
    terms: Vec<(Point, i64)>,
}

impl Divisor {
    pub fn new<I, P>(curve: Curve, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (P, i64)>,
        P: Into<Point>,
    {
        let mut merged: Vec<(Point, i64)> = Vec::new();
        for (point, mult) in terms {
            let point = canonical_point(&curve, point.into())?;
            match merged
                .iter_mut()
                .find(|(p, _)| curve.distance(*p, point) < COINCIDENCE_TOL)
            {
                Some((_, m)) => *m += mult,
                None => merged.push((point, mult)),
            }
        }
        merged.retain(|(_, m)| *m != 0);
        Ok(Divisor { curve, terms: merged })
    }

    pub fn zero(curve: Curve) -> Self {
        Divisor {
            curve,
            terms: Vec::new(),
        }
    }

    /// `[p] - [q]`.
    pub fn difference(curve: Curve, p: impl Into<Point>, q: impl Into<Point>) -> Result<Self> {
        Self::new(curve, [(p.into(), 1), (q.into(), -1)])
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn terms(&self) -> &[(Point, i64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(_, m)| m).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = Point> + '_ {
        self.terms.iter().map(|(p, _)| *p)
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        if !self.curve.same_as(&other.curve) {
            return Err(Error::CurveMismatch);
        }
        Divisor::new(self.curve, self.terms.iter().chain(other.terms.iter()).copied())
    }

    pub fn negate(&self) -> Divisor {
        Divisor {
            curve: self.curve,
            terms: self.terms.iter().map(|(p, m)| (*p, -m)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero(self.curve);
        }
        Divisor {
            curve: self.curve,
            terms: self.terms.iter().map(|(p, m)| (*p, m * k)).collect(),
        }
    }

    /// Translate every finite point by `c`; infinity stays fixed.
    pub fn translate(&self, c: Complex64) -> Result<Divisor> {
        Divisor::new(
            self.curve,
            self.terms.iter().map(|(p, m)| match p {
                Point::Finite(z) => (Point::Finite(z + c), *m),
                Point::Infinity => (Point::Infinity, *m),
            }),
        )
    }

    /// First pair of points, one from each divisor, closer than
    /// `COINCIDENCE_TOL`.
    pub fn first_overlap(&self, other: &Divisor) -> Option<Point> {
        self.support()
            .find(|p| other.support().any(|q| self.curve.distance(*p, q) < COINCIDENCE_TOL))
    }

    pub(crate) fn require_degree_zero(&self) -> Result<()> {
        match self.degree() {
            0 => Ok(()),
            degree => Err(Error::Homology { degree }),
        }
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.terms.iter().enumerate() {
            let sign = if *m < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let abs = m.unsigned_abs();
            if i > 0 {
                write!(f, " ")?;
            }
            if abs == 1 {
                write!(f, "{sign}[{p}]")?;
            } else {
                write!(f, "{sign}{abs}[{p}]")?;
            }
        }
        Ok(())
    }
}

fn canonical_point(curve: &Curve, point: Point) -> Result<Point> {
    match (curve, point) {
        (_, Point::Finite(z)) if !(z.re.is_finite() && z.im.is_finite()) => Err(Error::Validation(format!(
            "divisor point {z} is not finite; use the infinity marker on the sphere"
        ))),
        (Curve::Sphere, p) => Ok(p),
        (Curve::Elliptic(_), Point::Infinity) => Err(Error::Validation(
            "the infinity marker is only allowed on the sphere".into(),
        )),
        (Curve::Elliptic(tau), Point::Finite(z)) => Ok(Point::Finite(tau.reduce_unit(z, HALF_PERIOD_SNAP))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Divisor::zero(Curve::Sphere).degree(), 0);
        let d = Divisor::new(Curve::Sphere, [(Point::finite(0.0, 0.0), 1), (Point::Infinity, -1)]).unwrap();
        assert_eq!(d.degree(), 0);
        let d = Divisor::new(Curve::Sphere, [(c(0.0, 0.0), 2), (c(0.5, 0.0), -1)]).unwrap();
        assert_eq!(d.degree(), 1);
    }

    #[test]
    fn merges_and_drops_zero() {
        let d = Divisor::new(
            Curve::Sphere,
            [
                (c(1.0, 0.0), 2),
                (c(1.0, 0.0), -2),
                (c(2.0, 0.0), 3),
                (c(2.0 + 1e-12, 0.0), 1),
            ],
        )
        .unwrap();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[0].1, 4);
    }

    #[test]
    fn elliptic_points_are_reduced_and_merged_across_the_lattice() {
        let tau = Tau::from_parts(0.2, 1.1).unwrap();
        let curve = Curve::Elliptic(tau);
        let p = c(0.3, 0.2);
        let d = Divisor::new(curve, [(p, 1), (p + 1.0 - tau.value() * 2.0, 1)]).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[0].1, 2);
        let (s, t) = tau.lattice_coords(d.terms()[0].0.as_finite().unwrap());
        assert!((0.0..1.0).contains(&s) && (0.0..1.0).contains(&t));
    }

    #[test]
    fn near_boundary_points_merge_through_wraparound() {
        let curve = Curve::Elliptic(Tau::i());
        let d = Divisor::new(curve, [(c(1e-11, 0.0), 1), (c(-1e-11, 0.0), 1)]).unwrap();
        assert_eq!(d.terms().len(), 1);
    }

    #[test]
    fn infinity_rejected_on_elliptic_curve() {
        let curve = Curve::Elliptic(Tau::i());
        assert!(matches!(
            Divisor::new(curve, [(Point::Infinity, 1)]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn non_finite_points_rejected() {
        assert!(Divisor::new(Curve::Sphere, [(c(f64::INFINITY, 0.0), 1)]).is_err());
    }

    #[test]
    fn add_requires_same_curve() {
        let a = Divisor::difference(Curve::Sphere, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let b = Divisor::difference(Curve::Elliptic(Tau::i()), c(0.1, 0.0), c(0.2, 0.0)).unwrap();
        assert_eq!(a.add(&b), Err(Error::CurveMismatch));
        let sum = a.add(&a.negate()).unwrap();
        assert!(sum.is_empty());
    }

    #[test]
    fn display() {
        let d = Divisor::new(Curve::Sphere, [(Point::finite(0.0, 0.0), 2), (Point::Infinity, -2)]).unwrap();
        assert_eq!(d.to_string(), "2[0+0i] -2[inf]");
    }
}
