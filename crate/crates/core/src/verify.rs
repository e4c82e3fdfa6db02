//! Seeded property suites over every module. Each suite reports its worst
//! residual against its threshold; the summary text is a pure function of the
//! seed and the tolerances.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hodge::{hodge_diamond_x, invariant_dims, invariant_dims_by_enumeration, GroupAction, Signs, IDENTITY};
use crate::linking::green::five_point_laplacian;
use crate::linking::{
    arakelov_green, check_adjunction, linking_elliptic, linking_sphere, pair_with_kernel, ArakelovKernel, Curve,
    CurveMap, Divisor, PerturbedKernel,
};
use crate::massey::{
    locate_vanishing_crossing, massey_report, massey_value_closed_form, massey_value_via_linking,
    DEFAULT_NONVANISHING_TOL,
};
use crate::special::{half_period_values, lambda_complement_ratio, lattice_sum_p, modular_lambda, weierstrass_p};
use crate::tau::Tau;
use crate::tolerance::Tolerances;

/// Sampling box for `tau`: `Re in [-1, 1]`, `Im in [0.3, 3]`.
pub const TAU_RE_RANGE: (f64, f64) = (-1.0, 1.0);
pub const TAU_IM_RANGE: (f64, f64) = (0.3, 3.0);

pub fn sample_tau<R: Rng>(rng: &mut R) -> Tau {
    let re = rng.gen_range(TAU_RE_RANGE.0..TAU_RE_RANGE.1);
    let im = rng.gen_range(TAU_IM_RANGE.0..TAU_IM_RANGE.1);
    Tau::from_parts(re, im).expect("sampling box lies inside the supported strip")
}

/// A seeded generator for suite number `index`.
pub fn suite_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index))
}

fn sample_disc<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

/// Point of `C_tau` at lattice distance at least `margin` from every point in `avoid`.
fn sample_torus_point<R: Rng>(rng: &mut R, tau: Tau, avoid: &[Complex64], margin: f64) -> Complex64 {
    loop {
        let u = tau.from_lattice_coords(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        if avoid.iter().all(|a| tau.lattice_distance(u - a) >= margin) {
            return u;
        }
    }
}

fn sample_plane_point<R: Rng>(rng: &mut R, avoid: &[Complex64], margin: f64) -> Complex64 {
    loop {
        let u = sample_disc(rng, 3.0);
        if avoid.iter().all(|a| (u - a).norm() >= margin) {
            return u;
        }
    }
}

/// Four well-separated points on `C_tau`.
fn torus_quadruple<R: Rng>(rng: &mut R, tau: Tau) -> [Complex64; 4] {
    let mut pts: Vec<Complex64> = Vec::new();
    for _ in 0..4 {
        let p = sample_torus_point(rng, tau, &pts, 0.05);
        pts.push(p);
    }
    [pts[0], pts[1], pts[2], pts[3]]
}

#[derive(Debug, Clone, PartialEq)]
pub enum Threshold {
    /// Pass iff `worst <= value`.
    AtMost(f64),
    /// Pass iff `worst == 0`.
    Exact,
    /// Pass iff `worst > value`.
    Above(f64),
    /// Pass iff `worst >= value` (counts).
    AtLeast(f64),
}

impl Threshold {
    fn accepts(&self, worst: f64) -> bool {
        match self {
            Threshold::AtMost(t) => worst <= *t,
            Threshold::Exact => worst == 0.0,
            Threshold::Above(t) => worst > *t,
            Threshold::AtLeast(t) => worst >= *t,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub worst: f64,
    pub threshold: Threshold,
    pub samples: usize,
    pub passed: bool,
    /// Set when the suite could not run.
    pub error: Option<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str, worst: f64, threshold: Threshold, samples: usize) -> Self {
        let passed = worst.is_finite() && threshold.accepts(worst);
        SuiteOutcome {
            name,
            worst,
            threshold,
            samples,
            passed,
            error: None,
        }
    }

    fn failed(name: &'static str, threshold: Threshold, err: crate::Error) -> Self {
        SuiteOutcome {
            name,
            worst: f64::NAN,
            threshold,
            samples: 0,
            passed: false,
            error: Some(err.to_string()),
        }
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let bound = match &self.threshold {
            Threshold::AtMost(t) => format!("<= {t:.3e}"),
            Threshold::Exact => "== 0".to_string(),
            Threshold::Above(t) => format!("> {t:.3e}"),
            Threshold::AtLeast(t) => format!(">= {t}"),
        };
        match &self.error {
            Some(e) => format!("{status}  {:<34} error: {e}", self.name),
            None => format!(
                "{status}  {:<34} worst={:<11.4e} {:<13} n={}",
                self.name, self.worst, bound, self.samples
            ),
        }
    }
}

fn run(name: &'static str, threshold: Threshold, body: impl FnOnce() -> Result<(f64, usize)>) -> SuiteOutcome {
    match body() {
        Ok((worst, samples)) => SuiteOutcome::new(name, worst, threshold, samples),
        Err(e) => SuiteOutcome::failed(name, threshold, e),
    }
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(items: I) -> Result<(f64, usize)> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for item in items {
        worst = worst.max(item?);
        n += 1;
    }
    Ok((worst, n))
}

/// Finite-difference Laplacian of `arakelov_green` on the `grid x grid`
/// lattice-coordinate grid with spacing `1/grid`, skipping points closer than
/// `exclusion` to the lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplacianProfile {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub samples: usize,
}

impl LaplacianProfile {
    /// `(max - min) / |mean|`.
    pub fn relative_spread(&self) -> f64 {
        (self.max - self.min) / self.mean.abs()
    }

    /// Expected value `-2 / Im tau`, i.e. `i ddbar g = -dx dy / Im tau`.
    pub fn expected(tau: Tau) -> f64 {
        -2.0 / tau.im()
    }
}

/// Stencil step for [`green_laplacian_profile`]; small enough that the
/// `step^2 / r^4` truncation error of the log singularity stays below `1e-4`
/// relative at `r = 3/64`.
pub const LAPLACIAN_STEP: f64 = 1.5e-5;

pub fn green_laplacian_profile(tau: Tau, grid: usize, exclusion: f64, step: f64) -> Result<LaplacianProfile> {
    let h = 1.0 / grid as f64;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut samples = 0;
    for i in 0..grid {
        for j in 0..grid {
            let u = tau.from_lattice_coords(i as f64 * h, j as f64 * h);
            if tau.lattice_distance(u) < exclusion {
                continue;
            }
            let lap = five_point_laplacian(|v| arakelov_green(v, tau), u, step)?;
            min = min.min(lap);
            max = max.max(lap);
            sum += lap;
            samples += 1;
        }
    }
    Ok(LaplacianProfile {
        mean: sum / samples as f64,
        min,
        max,
        samples,
    })
}

/// All subgroups of the conjugation-compatible diagonal group `(Z/2)^3`.
pub fn all_diagonal_subgroups() -> Vec<GroupAction> {
    let elements: Vec<Signs> = (0u8..8)
        .map(|bits| {
            let s = |k: u8| if bits & (1 << k) != 0 { -1 } else { 1 };
            [s(0), s(1), s(2), s(0), s(1), s(2)]
        })
        .collect();
    (0u16..256)
        .filter_map(|mask| {
            let subset: Vec<Signs> = (0..8).filter(|k| mask & (1 << k) != 0).map(|k| elements[k]).collect();
            if !subset.contains(&IDENTITY) {
                return None;
            }
            GroupAction::new(subset).ok()
        })
        .collect()
}

pub fn run_all(seed: u64, tol: &Tolerances) -> Vec<SuiteOutcome> {
    let mut out = Vec::new();
    let mut index = 0u64;
    let mut rng = || {
        index += 1;
        suite_rng(seed, index)
    };

    // special functions
    let mut r = rng();
    out.push(run(
        "special.half_period_sum",
        Threshold::AtMost(tol.half_period_sum),
        || {
            max_over((0..100).map(|_| {
                let e = half_period_values(sample_tau(&mut r))?;
                Ok(e.sum().norm() / e.max_norm())
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "special.p_theta_vs_lattice_sum",
        Threshold::AtMost(tol.lattice_oracle),
        || {
            max_over((0..20).map(|_| {
                let tau = sample_tau(&mut r);
                let z = loop {
                    let z = tau.from_lattice_coords(r.gen_range(-0.45..0.45), r.gen_range(-0.45..0.45));
                    if tau.lattice_distance(z) >= 0.1 {
                        break z;
                    }
                };
                Ok((weierstrass_p(z, tau)? - lattice_sum_p(z, tau, 400)?).norm())
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "special.lambda_periodicity",
        Threshold::AtMost(tol.lambda_identity),
        || {
            max_over((0..100).map(|_| {
                let tau = sample_tau(&mut r);
                let l = modular_lambda(tau)?;
                let by_two = (modular_lambda(tau.shifted(2.0))? - l).norm();
                let by_one = (modular_lambda(tau.shifted(1.0))? - l / (l - 1.0)).norm();
                Ok(by_two.max(by_one))
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "special.lambda_complement",
        Threshold::AtMost(tol.lambda_identity),
        || {
            max_over((0..100).map(|_| {
                let tau = sample_tau(&mut r);
                Ok((lambda_complement_ratio(tau)? - (1.0 - modular_lambda(tau)?)).norm())
            }))
        },
    ));

    let mut r = rng();
    out.push(run("special.lambda_nonzero", Threshold::Above(0.0), || {
        let mut smallest = f64::INFINITY;
        for _ in 0..100 {
            let l = modular_lambda(sample_tau(&mut r))?;
            smallest = smallest.min(l.norm()).min((1.0 - l).norm());
        }
        Ok((smallest, 100))
    }));

    // sphere linking
    let mut r = rng();
    out.push(run("linking.sphere_symmetry", Threshold::Exact, || {
        max_over((0..50).map(|_| {
            let (z, w) = sphere_pair(&mut r)?;
            Ok((linking_sphere(&z, &w)?.value - linking_sphere(&w, &z)?.value).abs())
        }))
    }));

    let mut r = rng();
    out.push(run(
        "linking.sphere_cross_ratio",
        Threshold::AtMost(tol.cross_ratio),
        || {
            max_over((0..50).map(|_| {
                let [p, q, rr, s] = plane_quadruple(&mut r);
                let z = Divisor::difference(Curve::Sphere, p, q)?;
                let w = Divisor::difference(Curve::Sphere, rr, s)?;
                let cross = ((rr - p) * (s - q)) / ((rr - q) * (s - p));
                Ok((linking_sphere(&z, &w)?.value - cross.norm().ln() / PI).abs())
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "linking.sphere_bilinearity",
        Threshold::AtMost(tol.bilinearity),
        || {
            max_over((0..50).map(|_| {
                let pts: Vec<Complex64> = (0..6).fold(Vec::new(), |mut acc, _| {
                    let p = sample_plane_point(&mut r, &acc, 0.05);
                    acc.push(p);
                    acc
                });
                let z1 = Divisor::difference(Curve::Sphere, pts[0], pts[1])?;
                let z2 = Divisor::difference(Curve::Sphere, pts[2], pts[3])?;
                let w = Divisor::difference(Curve::Sphere, pts[4], pts[5])?;
                let lhs = linking_sphere(&z1.add(&z2)?, &w)?.value;
                let rhs = linking_sphere(&z1, &w)?.value + linking_sphere(&z2, &w)?.value;
                Ok((lhs - rhs).abs())
            }))
        },
    ));

    // elliptic linking
    let mut r = rng();
    out.push(run("linking.elliptic_symmetry", Threshold::Exact, || {
        max_over((0..50).map(|_| {
            let (z, w) = torus_pair(&mut r)?;
            Ok((linking_elliptic(&z, &w)?.value - linking_elliptic(&w, &z)?.value).abs())
        }))
    }));

    let mut r = rng();
    out.push(run(
        "linking.elliptic_bilinearity",
        Threshold::AtMost(tol.bilinearity),
        || {
            max_over((0..50).map(|_| {
                let tau = sample_tau(&mut r);
                let a = torus_quadruple(&mut r, tau);
                let b = sample_torus_point(&mut r, tau, &a, 0.05);
                let c = sample_torus_point(&mut r, tau, &[a[0], a[1], a[2], a[3], b], 0.05);
                let curve = Curve::Elliptic(tau);
                let z1 = Divisor::difference(curve, a[0], a[1])?;
                let z2 = Divisor::difference(curve, b, c)?;
                let w = Divisor::difference(curve, a[2], a[3])?;
                let lhs = linking_elliptic(&z1.add(&z2)?, &w)?.value;
                let rhs = linking_elliptic(&z1, &w)?.value + linking_elliptic(&z2, &w)?.value;
                Ok((lhs - rhs).abs())
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "linking.elliptic_translation",
        Threshold::AtMost(tol.translation),
        || {
            max_over((0..50).map(|_| {
                let (z, w) = torus_pair(&mut r)?;
                let tau = z.curve().tau().expect("elliptic");
                let shift = tau.from_lattice_coords(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
                let moved = linking_elliptic(&z.translate(shift)?, &w.translate(shift)?)?.value;
                Ok((moved - linking_elliptic(&z, &w)?.value).abs())
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "linking.half_period_oracle",
        Threshold::AtMost(tol.oracle_agreement),
        || {
            max_over((0..50).map(|_| {
                let tau = sample_tau(&mut r);
                let (z, w) = crate::massey::half_period_divisors(tau)?;
                let res = linking_elliptic(&z, &w)?;
                Ok(match res.cross_check {
                    Some(_) => res.residual,
                    None => f64::INFINITY,
                })
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "linking.adjunction_square",
        Threshold::AtMost(tol.adjunction),
        || {
            max_over((0..50).map(|_| {
                let (z, w) = adjunction_instance(&mut r)?;
                Ok(check_adjunction(CurveMap::Power(2), &z, &w)?.residual)
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "linking.flexibility_constant",
        Threshold::AtMost(tol.flexibility_constant),
        || {
            max_over((0..50).map(|_| {
                let (z, w) = torus_pair(&mut r)?;
                let tau = z.curve().tau().expect("elliptic");
                let base = ArakelovKernel { tau };
                let shifted = PerturbedKernel {
                    inner: base,
                    tau,
                    constant: r.gen_range(-5.0..5.0),
                    amplitude: 0.0,
                };
                Ok((pair_with_kernel(&z, &w, &shifted)? - pair_with_kernel(&z, &w, &base)?).abs())
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "linking.flexibility_smooth",
        Threshold::AtMost(tol.flexibility_smooth),
        || {
            max_over((0..50).map(|_| {
                let (z, w) = torus_pair(&mut r)?;
                let tau = z.curve().tau().expect("elliptic");
                let base = ArakelovKernel { tau };
                let bumped = PerturbedKernel {
                    inner: base,
                    tau,
                    constant: 0.0,
                    amplitude: r.gen_range(0.1..0.5),
                };
                Ok((pair_with_kernel(&z, &w, &bumped)? - pair_with_kernel(&z, &w, &base)?).abs())
            }))
        },
    ));

    let mut r = rng();
    out.push(run(
        "linking.green_laplacian_spread",
        Threshold::AtMost(tol.laplacian_spread),
        || {
            let mut worst = 0.0f64;
            let mut n = 0;
            for tau in [Tau::i(), sample_tau(&mut r)] {
                let profile = green_laplacian_profile(tau, 64, 3.0 / 64.0, LAPLACIAN_STEP)?;
                let off_target = (profile.mean - LaplacianProfile::expected(tau)).abs() / profile.mean.abs();
                worst = worst.max(profile.relative_spread()).max(off_target);
                n += profile.samples;
            }
            Ok((worst, n))
        },
    ));

    // hodge
    out.push(run("hodge.trace_vs_enumeration", Threshold::Exact, || {
        let groups = all_diagonal_subgroups();
        let mismatches = groups
            .iter()
            .filter(|g| {
                invariant_dims(g) != invariant_dims_by_enumeration(g) || !invariant_dims(g).is_hodge_symmetric()
            })
            .count();
        Ok((mismatches as f64, groups.len()))
    }));

    out.push(run("hodge.diamond_x", Threshold::Exact, || {
        let x = hodge_diamond_x();
        let expected = [[1, 0, 0, 1], [0, 19, 19, 0], [0, 19, 19, 0], [1, 0, 0, 1]];
        let wrong = (0..4)
            .flat_map(|p| (0..4).map(move |q| (p, q)))
            .filter(|&(p, q)| x.get(p, q) != expected[p][q])
            .count();
        let broken = usize::from(!x.is_hodge_symmetric()) + usize::from(!x.is_serre_symmetric());
        Ok(((wrong + broken) as f64, 16))
    }));

    // massey
    let mut r = rng();
    out.push(run(
        "massey.chain_agreement",
        Threshold::AtMost(tol.massey_chain),
        || {
            max_over((0..50).map(|_| {
                let tau = sample_tau(&mut r);
                Ok((massey_value_closed_form(tau)? - massey_value_via_linking(tau)?).abs())
            }))
        },
    ));

    let mut r = rng();
    out.push(run("massey.period_two", Threshold::AtMost(tol.massey_period), || {
        max_over((0..50).map(|_| {
            let tau = sample_tau(&mut r);
            Ok((massey_value_closed_form(tau.shifted(2.0))? - massey_value_closed_form(tau)?).abs())
        }))
    }));

    let mut r = rng();
    out.push(run("massey.nonvanishing_count", Threshold::AtLeast(49.0), || {
        let mut count = 0;
        for _ in 0..50 {
            if massey_report(sample_tau(&mut r), DEFAULT_NONVANISHING_TOL)?.nonvanishing {
                count += 1;
            }
        }
        Ok((count as f64, 50))
    }));

    out.push(run("massey.vanishing_crossing", Threshold::Exact, || {
        let tau = locate_vanishing_crossing(1.0, 0.0, 1.0, 1e-12)?;
        let at_root = massey_report(tau, DEFAULT_NONVANISHING_TOL)?;
        let left = massey_report(Tau::from_parts(0.0, 1.0)?, DEFAULT_NONVANISHING_TOL)?;
        let flips = !at_root.nonvanishing && left.nonvanishing;
        Ok((if flips { 0.0 } else { 1.0 }, 1))
    }));

    out
}

fn plane_quadruple<R: Rng>(rng: &mut R) -> [Complex64; 4] {
    let mut pts = Vec::new();
    for _ in 0..4 {
        let p = sample_plane_point(rng, &pts, 0.05);
        pts.push(p);
    }
    [pts[0], pts[1], pts[2], pts[3]]
}

fn sphere_pair<R: Rng>(rng: &mut R) -> Result<(Divisor, Divisor)> {
    let [p, q, r, s] = plane_quadruple(rng);
    Ok((
        Divisor::difference(Curve::Sphere, p, q)?,
        Divisor::difference(Curve::Sphere, r, s)?,
    ))
}

fn torus_pair<R: Rng>(rng: &mut R) -> Result<(Divisor, Divisor)> {
    let tau = sample_tau(rng);
    let [p, q, r, s] = torus_quadruple(rng, tau);
    let curve = Curve::Elliptic(tau);
    Ok((Divisor::difference(curve, p, q)?, Divisor::difference(curve, r, s)?))
}

/// `z = [P1] - [P2]`, `w = [Q1] - [Q2]` on the sphere with the images of `z`
/// under `z -> z^2` well away from `w`, and `w` away from the branch value 0.
pub fn adjunction_instance<R: Rng>(rng: &mut R) -> Result<(Divisor, Divisor)> {
    loop {
        let p1 = sample_disc(rng, 2.0);
        let p2 = sample_disc(rng, 2.0);
        let q1 = sample_disc(rng, 4.0);
        let q2 = sample_disc(rng, 4.0);
        let images = [p1 * p1, p2 * p2];
        let separated = (p1 - p2).norm() > 0.05
            && (p1 + p2).norm() > 0.05
            && (q1 - q2).norm() > 0.05
            && q1.norm() > 0.05
            && q2.norm() > 0.05
            && images.iter().all(|i| (i - q1).norm() > 0.05 && (i - q2).norm() > 0.05);
        if separated {
            return Ok((
                Divisor::difference(Curve::Sphere, p1, p2)?,
                Divisor::difference(Curve::Sphere, q1, q2)?,
            ));
        }
    }
}

pub fn summary(outcomes: &[SuiteOutcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        let _ = writeln!(s, "{}", o.line());
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(s, "{passed}/{} suites passed", outcomes.len());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_subgroups_of_z2_cubed() {
        let groups = all_diagonal_subgroups();
        // 1 trivial + 7 of order 2 + 7 of order 4 + 1 whole group
        assert_eq!(groups.len(), 16);
        let orders: Vec<usize> = groups.iter().map(|g| g.order()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 7);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 7);
    }

    #[test]
    fn threshold_semantics() {
        assert!(Threshold::AtMost(1.0).accepts(1.0));
        assert!(!Threshold::Exact.accepts(1e-300));
        assert!(!Threshold::Above(0.0).accepts(0.0));
        assert!(Threshold::AtLeast(49.0).accepts(50.0));
        assert!(!SuiteOutcome::new("x", f64::NAN, Threshold::AtMost(1.0), 1).passed);
    }
}
