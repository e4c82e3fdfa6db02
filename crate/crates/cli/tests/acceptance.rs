//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};

use holink_core::hodge::{invariant_dims, GroupAction};
use holink_core::linking::arakelov_green;
use holink_core::linking::{
    check_adjunction, green::five_point_laplacian, linking_sphere, pair_with_kernel, ArakelovKernel, Curve, CurveMap,
    Divisor, PerturbedKernel,
};
use holink_core::massey::{
    half_period_divisors, locate_vanishing_crossing, massey_report, massey_value_closed_form, massey_value_via_linking,
};
use holink_core::special::{lambda_complement_ratio, lattice_sum_p, modular_lambda, weierstrass_p};
use holink_core::verify::{adjunction_instance, sample_tau, suite_rng, LAPLACIAN_STEP};
use holink_core::{Complex64, Tau};
use rand::Rng;

const SEED: u64 = 20_240_917;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn fifty_taus() -> Vec<Tau> {
    let mut rng = suite_rng(SEED, 1);
    (0..50).map(|_| sample_tau(&mut rng)).collect()
}

fn holink(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_holink"))
        .args(args)
        .env_remove("HOLINK_TOL")
        .output()
        .map_err(err)?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn hodge_diamond() -> Check {
    let (stdout, code) = holink(&["hodge"])?;
    let text = String::from_utf8(stdout).map_err(err)?;
    let json = text.lines().last().ok_or("no output")?;
    let doc: serde_json::Value = serde_json::from_str(json).map_err(err)?;
    let matrix: Vec<Vec<u64>> = serde_json::from_value(doc["hodge"].clone()).map_err(err)?;
    let expected = vec![
        vec![1, 0, 0, 1],
        vec![0, 19, 19, 0],
        vec![0, 19, 19, 0],
        vec![1, 0, 0, 1],
    ];
    ensure(
        code == 0 && matrix == expected,
        format!("exit={code} h^{{p,q}}={matrix:?}"),
    )
}

fn orbifold_table() -> Check {
    let dims = invariant_dims(&GroupAction::iota_kappa());
    let listed = [
        (0, 0, 1),
        (1, 1, 3),
        (3, 0, 1),
        (2, 1, 3),
        (1, 2, 3),
        (0, 3, 1),
        (2, 2, 3),
        (3, 3, 1),
    ];
    let mut wrong = Vec::new();
    for p in 0..4 {
        for q in 0..4 {
            let want = listed.iter().find(|e| e.0 == p && e.1 == q).map_or(0, |e| e.2);
            if dims.get(p, q) != want {
                wrong.push((p, q, dims.get(p, q), want));
            }
        }
    }
    ensure(wrong.is_empty(), format!("mismatches={wrong:?}"))
}

fn main_identity() -> Check {
    let mut worst = 0.0f64;
    for tau in fifty_taus() {
        let lhs = lambda_complement_ratio(tau).map_err(err)?;
        let rhs = 1.0 - modular_lambda(tau).map_err(err)?;
        worst = worst.max((lhs - rhs).norm());
    }
    ensure(worst < 1e-9, format!("worst={worst:.3e} < 1e-9 n=50"))
}

fn massey_chain() -> Check {
    let mut worst = 0.0f64;
    for tau in fifty_taus() {
        let a = massey_value_closed_form(tau).map_err(err)?;
        let b = massey_value_via_linking(tau).map_err(err)?;
        worst = worst.max((a - b).abs());
    }
    let target = 4.0 / PI * 0.5f64.ln();
    let at_i = [
        massey_value_closed_form(Tau::i()).map_err(err)?,
        massey_value_via_linking(Tau::i()).map_err(err)?,
    ];
    let off_i = at_i.iter().map(|v| (v - target).abs()).fold(0.0, f64::max);
    ensure(
        worst < 1e-8 && off_i < 1e-8,
        format!(
            "worst={worst:.3e} < 1e-8 n=50; at tau=i {:.12} off={off_i:.1e}",
            at_i[0]
        ),
    )
}

fn nonvanishing() -> Check {
    let mut nonzero = 0;
    for tau in fifty_taus() {
        if massey_report(tau, 1e-6).map_err(err)?.nonvanishing {
            nonzero += 1;
        }
    }
    let crossing = locate_vanishing_crossing(1.0, 0.0, 1.0, 1e-12).map_err(err)?;
    let at_crossing = massey_report(crossing, 1e-6).map_err(err)?;
    let at_i = massey_report(Tau::i(), 1e-6).map_err(err)?;
    ensure(
        nonzero >= 49 && !at_crossing.nonvanishing && at_i.nonvanishing,
        format!(
            "{nonzero}/50 nonzero; crossing tau={} value={:.2e} flag={} (tau=i flag={})",
            crossing, at_crossing.value_closed_form, at_crossing.nonvanishing, at_i.nonvanishing
        ),
    )
}

fn sphere_linking() -> Check {
    let mut rng = suite_rng(SEED, 2);
    let mut worst = 0.0f64;
    let mut asymmetric = 0;
    let mut n = 0;
    while n < 50 {
        let pts: [Complex64; 4] =
            std::array::from_fn(|_| Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
        let min_gap = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .map(|(i, j)| (pts[i] - pts[j]).norm())
            .fold(f64::INFINITY, f64::min);
        if min_gap < 0.05 {
            continue;
        }
        let [p, q, r, s] = pts;
        let z = Divisor::difference(Curve::Sphere, p, q).map_err(err)?;
        let w = Divisor::difference(Curve::Sphere, r, s).map_err(err)?;
        let zw = linking_sphere(&z, &w).map_err(err)?.value;
        let wz = linking_sphere(&w, &z).map_err(err)?.value;
        if zw.to_bits() != wz.to_bits() {
            asymmetric += 1;
        }
        let cross = ((r - p) * (s - q)) / ((r - q) * (s - p));
        worst = worst.max((zw - cross.norm().ln() / PI).abs());
        n += 1;
    }
    ensure(
        asymmetric == 0 && worst < 1e-12,
        format!("asymmetric={asymmetric} worst={worst:.3e} < 1e-12 n=50"),
    )
}

fn adjunction() -> Check {
    let mut rng = suite_rng(SEED, 3);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (z, w) = adjunction_instance(&mut rng).map_err(err)?;
        worst = worst.max(check_adjunction(CurveMap::Power(2), &z, &w).map_err(err)?.residual);
    }
    ensure(worst < 1e-10, format!("worst={worst:.3e} < 1e-10 n=50 (z -> z^2)"))
}

fn p_oracle() -> Check {
    let mut rng = suite_rng(SEED, 4);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let tau = sample_tau(&mut rng);
        let z = loop {
            let z = tau.from_lattice_coords(rng.gen_range(-0.45..0.45), rng.gen_range(-0.45..0.45));
            if tau.lattice_distance(z) >= 0.1 {
                break z;
            }
        };
        let gap = weierstrass_p(z, tau).map_err(err)? - lattice_sum_p(z, tau, 400).map_err(err)?;
        worst = worst.max(gap.norm());
    }
    let lambda_i = modular_lambda(Tau::i()).map_err(err)?;
    let off = (lambda_i - 0.5).norm();
    ensure(
        worst < 1e-6 && off < 1e-12,
        format!("worst={worst:.3e} < 1e-6 n=20; |lambda(i) - 1/2|={off:.1e}"),
    )
}

fn green_function() -> Check {
    let mut rng = suite_rng(SEED, 5);
    let grid = 64;
    let h = 1.0 / grid as f64;
    let mut worst_spread = 0.0f64;
    for tau in [Tau::i(), sample_tau(&mut rng)] {
        let (mut lo, mut hi, mut sum, mut n) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0);
        for i in 0..grid {
            for j in 0..grid {
                let u = tau.from_lattice_coords(i as f64 * h, j as f64 * h);
                if tau.lattice_distance(u) < 3.0 * h {
                    continue;
                }
                let lap = five_point_laplacian(|v| arakelov_green(v, tau), u, LAPLACIAN_STEP).map_err(err)?;
                lo = lo.min(lap);
                hi = hi.max(lap);
                sum += lap;
                n += 1;
            }
        }
        let mean = sum / n as f64;
        worst_spread = worst_spread.max((hi - lo) / mean.abs());
    }
    let mut worst_shift = 0.0f64;
    for tau in fifty_taus().into_iter().take(10) {
        let (z, w) = half_period_divisors(tau).map_err(err)?;
        let base = ArakelovKernel { tau };
        let shifted = PerturbedKernel {
            inner: base,
            tau,
            constant: rng.gen_range(-5.0..5.0),
            amplitude: 0.0,
        };
        let gap = pair_with_kernel(&z, &w, &shifted).map_err(err)? - pair_with_kernel(&z, &w, &base).map_err(err)?;
        worst_shift = worst_shift.max(gap.abs());
    }
    ensure(
        worst_spread < 1e-4 && worst_shift < 1e-13,
        format!("laplacian spread={worst_spread:.3e} < 1e-4; constant shift={worst_shift:.1e} < 1e-13"),
    )
}

fn verify_determinism() -> Check {
    let (a, code_a) = holink(&["verify", "--seed", "42"])?;
    let (b, code_b) = holink(&["verify", "--seed", "42"])?;
    let last = String::from_utf8_lossy(&a)
        .lines()
        .last()
        .unwrap_or_default()
        .to_string();
    ensure(
        a == b && code_a == 0 && code_b == 0,
        format!("identical={} exit={code_a},{code_b} \"{last}\"", a == b),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("hodge diamond exactness", hodge_diamond),
        ("orbifold invariant table", orbifold_table),
        ("wp-quotient = 1 - lambda", main_identity),
        ("massey chain agreement", massey_chain),
        ("nonvanishing + crossing", nonvanishing),
        ("sphere linking closed form", sphere_linking),
        ("adjunction under z^2", adjunction),
        ("wp oracle and lambda(i)", p_oracle),
        ("green function laplacian", green_function),
        ("verify determinism", verify_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let (status, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{status} {:>2}. {name:<28} {detail}", k + 1);
    }
    println!(
        "{}/{} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
