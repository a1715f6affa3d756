//! Named verification suites: deterministic re-checks of the closed forms
//! against the generic curvature route, the finite-difference oracle, the
//! classification verdicts against traced numerics, and the degree-one
//! superquadric against the spheroid result.

use std::f64::consts::TAU;
use std::process::ExitCode;

use biharm_core::curvature::{gauss_curvature, geodesic_curvature_sq};
use biharm_core::numfmt::fmt_f64;
use biharm_core::quadrics::{
    candidate_cut, center_curve_point, classify, k1_sq_center_closed_form,
    k1_sq_center_parametrized, k1_sq_paraboloid_closed_form, NoneReason, Verdict,
};
use biharm_core::revolution::solve_superquadric_parallel;
use biharm_core::tracer::{fd_geodesic_curvature_sq, trace};
use biharm_core::{Error, SurfaceSpec, Vec3};

use crate::json::{array, Obj};
use crate::CliResult;

struct Check {
    name: String,
    pass: bool,
    value: String,
    expect: &'static str,
}

impl Check {
    fn num(name: impl Into<String>, pass: bool, value: f64, expect: &'static str) -> Check {
        Check {
            name: name.into(),
            pass,
            value: fmt_f64(value),
            expect,
        }
    }

    fn count(name: impl Into<String>, pass: bool, value: usize, expect: &'static str) -> Check {
        Check {
            name: name.into(),
            pass,
            value: value.to_string(),
            expect,
        }
    }
}

pub fn run(scenario: &str) -> CliResult<ExitCode> {
    let checks = match scenario {
        "formula-crosscheck" => formula_crosscheck()?,
        "fd-oracle" => fd_oracle()?,
        "classification-grid" => classification_grid()?,
        "n1-consistency" => n1_consistency()?,
        other => {
            return Err(Error::Parse {
                message: format!(
                    "unknown scenario '{other}' (expected formula-crosscheck, fd-oracle, \
                     classification-grid, or n1-consistency)"
                ),
            }
            .into())
        }
    };

    let all_pass = checks.iter().all(|c| c.pass);
    let rendered = checks.iter().map(|c| {
        Obj::new()
            .text("name", &c.name)
            .flag("pass", c.pass)
            .raw("value", c.value.clone())
            .text("expect", c.expect)
            .render()
    });
    let doc = Obj::new()
        .text("scenario", scenario)
        .raw("checks", array(rendered))
        .flag("pass", all_pass)
        .render();
    println!("{doc}");
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn center_quadric(a: f64, b: f64, c: f64, xi: f64, zeta: f64) -> SurfaceSpec {
    SurfaceSpec::QuadricCenter { a, b, c, xi, zeta }
}

fn field(value: Option<f64>, what: &'static str) -> CliResult<f64> {
    value.ok_or_else(|| {
        Error::Domain {
            detail: format!("classification is missing {what}"),
        }
        .into()
    })
}

fn formula_crosscheck() -> CliResult<Vec<Check>> {
    let mut worst_center = 0.0f64;
    for (a, b) in [(1.2f64, 1.0), (1.0, 0.9), (1.1, 0.8), (1.0, 1.0)] {
        for c in [1.5, 2.0] {
            let q = center_quadric(a, b, c, 1.0, 1.0);
            for frac in [0.3, 0.6] {
                let d_sq = 1.0 / (c * c) + frac * (1.0 / (a * a) - 1.0 / (c * c));
                let d = d_sq.sqrt();
                let cut = candidate_cut(&q, d)?;
                for u in [0.4, 1.1, 2.3, 3.0] {
                    let p = center_curve_point(a, b, c, d, u)?;
                    let trig = k1_sq_center_parametrized(a, b, c, d, u)?;
                    let closed = k1_sq_center_closed_form(a, b, c, d, p)?;
                    let generic = geodesic_curvature_sq(&q, &cut, p)?;
                    worst_center = worst_center
                        .max(rel_dev(trig, closed))
                        .max(rel_dev(closed, generic))
                        .max(rel_dev(trig, generic));
                }
            }
        }
    }

    let mut worst_parab = 0.0f64;
    for (a, b, e_sq) in [(1.0f64, 1.0, 2.0f64), (2.0, 1.0, 2.0), (1.3, 0.9, 3.0)] {
        let e = e_sq.sqrt();
        let q = SurfaceSpec::QuadricParaboloid { a, b, eta: 1.0 };
        let cut = SurfaceSpec::CandidateCylinder { a, b, e };
        for t in [0.3f64, 1.2, 2.6, 4.4] {
            let x = a * a * (e_sq - 1.0).sqrt() * t.cos();
            let y = b * b * (e_sq - 1.0).sqrt() * t.sin();
            let z = (x * x / (a * a) + y * y / (b * b)) / 2.0;
            let p = Vec3::new(x, y, z);
            let closed = k1_sq_paraboloid_closed_form(a, b, e, p)?;
            let generic = geodesic_curvature_sq(&q, &cut, p)?;
            worst_parab = worst_parab.max(rel_dev(closed, generic));
        }
    }

    Ok(vec![
        Check::num(
            "central quadric k1^2: parametrized, closed, generic routes",
            worst_center <= 1e-8,
            worst_center,
            "pairwise relative deviation <= 1e-8",
        ),
        Check::num(
            "paraboloid k1^2: closed vs generic route",
            worst_parab <= 1e-8,
            worst_parab,
            "relative deviation <= 1e-8",
        ),
    ])
}

fn fd_error(f: &SurfaceSpec, g: &SurfaceSpec, seed: Vec3, step: f64) -> CliResult<f64> {
    let curve = trace(f, g, seed, step, 40)?;
    let fd = fd_geodesic_curvature_sq(f, &curve, 20)?;
    let exact = geodesic_curvature_sq(f, g, curve.samples[20].point)?;
    Ok((fd - exact).abs())
}

fn fd_oracle() -> CliResult<Vec<Check>> {
    let coarse = 1.6e-2;
    let fine = 8e-3;
    let mut checks = Vec::new();

    let mut family =
        |name: &'static str, f: &SurfaceSpec, g: &SurfaceSpec, seed: Vec3| -> CliResult<()> {
            let err_coarse = fd_error(f, g, seed, coarse)?;
            let err_fine = fd_error(f, g, seed, fine)?;
            let bound =
                (err_coarse / (10.0 * coarse * coarse)).max(err_fine / (10.0 * fine * fine));
            let ratio = err_coarse / err_fine;
            checks.push(Check::num(
                format!("{name}: fd error within 10 step^2"),
                bound < 1.0,
                bound,
                "error / (10 step^2) < 1",
            ));
            checks.push(Check::num(
                format!("{name}: error ratio when halving the step"),
                (3.0..=5.0).contains(&ratio),
                ratio,
                "in [3, 5]",
            ));
            Ok(())
        };

    let sphere = center_quadric(1.0, 1.0, 1.0, 1.0, 1.0);
    let plane = SurfaceSpec::PlaneZ { d: 0.6 };
    family("sphere/plane", &sphere, &plane, Vec3::new(0.8, 0.0, 0.6))?;

    let spheroid = center_quadric(1.0, 1.0, 2.0, 1.0, 1.0);
    let cls = classify(&spheroid)?;
    let d = field(cls.d_sq, "d_sq")?.sqrt();
    let seed = Vec3::new(
        field(cls.circle_radius_sq, "circle_radius_sq")?.sqrt(),
        0.0,
        field(cls.circle_height_sq, "circle_height_sq")?.sqrt(),
    );
    let cut = candidate_cut(&spheroid, d)?;
    family("spheroid/candidate", &spheroid, &cut, seed)?;

    Ok(checks)
}

struct Probe {
    max_gap: f64,
    min_gap: f64,
    k1_spread: f64,
}

fn probe_curve(
    f: &SurfaceSpec,
    g: &SurfaceSpec,
    seed: Vec3,
    step: f64,
    steps: usize,
) -> CliResult<Probe> {
    let curve = trace(f, g, seed, step, steps)?;
    let mut max_gap = 0.0f64;
    let mut min_gap = f64::MAX;
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for sample in &curve.samples {
        let k1 = geodesic_curvature_sq(f, g, sample.point)?;
        let gap = (k1 - gauss_curvature(f, sample.point)?).abs();
        max_gap = max_gap.max(gap);
        min_gap = min_gap.min(gap);
        lo = lo.min(k1);
        hi = hi.max(k1);
    }
    Ok(Probe {
        max_gap,
        min_gap,
        k1_spread: hi - lo,
    })
}

// Seed on the y = 0 section of a center quadric cut by the candidate
// surface: solves the 2x2 linear system in (x^2, z^2).
fn section_seed(a: f64, c: f64, d: f64, two_sheet: bool) -> Vec3 {
    if two_sheet {
        let z_sq = c.powi(4) * (a * a * d * d - 1.0) / (a * a + c * c);
        let x_sq = a * a * (1.0 + z_sq / (c * c));
        Vec3::new(x_sq.sqrt(), 0.0, z_sq.sqrt())
    } else {
        let z_sq = c.powi(4) * (a * a * d * d - 1.0) / (a * a - c * c);
        let x_sq = a.powi(4) * (1.0 - c * c * d * d) / (a * a - c * c);
        Vec3::new(x_sq.sqrt(), 0.0, z_sq.sqrt())
    }
}

fn classification_grid() -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    let mut combos = 0usize;

    let mut worst = 0.0f64;
    let mut verdicts = true;
    for a in [0.5f64, 1.0, 2.0] {
        let q = center_quadric(a, a, a, 1.0, 1.0);
        let cls = classify(&q)?;
        verdicts &= cls.verdict == Verdict::ExistsSphere;
        let radius = field(cls.circle_radius_sq, "circle_radius_sq")?.sqrt();
        let height = field(cls.circle_height_sq, "circle_height_sq")?.sqrt();
        let plane = SurfaceSpec::PlaneZ { d: height };
        let seed = Vec3::new(radius, 0.0, height);
        let probe = probe_curve(&q, &plane, seed, radius / 50.0, 400)?;
        worst = worst.max(probe.max_gap).max(probe.k1_spread);
        combos += 1;
    }
    checks.push(Check::num(
        "spheres (3): verdict and traced biharmonic circle",
        verdicts && worst < 1e-7,
        worst,
        "max |k1^2 - K| and k1^2 spread < 1e-7",
    ));

    let mut worst = 0.0f64;
    let mut worst_d = 0.0f64;
    let mut verdicts = true;
    for a in [0.5f64, 1.0, 2.0] {
        for c in [0.3f64, 1.7, 4.0] {
            let q = center_quadric(a, a, c, 1.0, 1.0);
            let cls = classify(&q)?;
            verdicts &= cls.verdict == Verdict::ExistsSpheroid;
            let d_sq = field(cls.d_sq, "d_sq")?;
            worst_d = worst_d.max((d_sq - 1.0 / (a * c)).abs());
            let seed = Vec3::new(
                field(cls.circle_radius_sq, "circle_radius_sq")?.sqrt(),
                0.0,
                field(cls.circle_height_sq, "circle_height_sq")?.sqrt(),
            );
            let cut = candidate_cut(&q, d_sq.sqrt())?;
            let probe = probe_curve(&q, &cut, seed, seed.x / 50.0, 400)?;
            worst = worst.max(probe.max_gap).max(probe.k1_spread);
            combos += 1;
        }
    }
    checks.push(Check::num(
        "spheroids (9): cut level d^2 = 1/(ac)",
        verdicts && worst_d <= 1e-12,
        worst_d,
        "|d_sq - 1/(ac)| <= 1e-12",
    ));
    checks.push(Check::num(
        "spheroids (9): traced biharmonic circle",
        worst < 1e-7,
        worst,
        "max |k1^2 - K| and k1^2 spread < 1e-7",
    ));

    let mut least_spread = f64::MAX;
    let mut verdicts = true;
    for (a, b) in [(1.2f64, 1.0), (1.5, 0.8), (2.0, 1.0)] {
        for c in [0.5f64, 2.5] {
            let q = center_quadric(a, b, c, 1.0, 1.0);
            let cls = classify(&q)?;
            verdicts &=
                cls.verdict == Verdict::None && cls.reason == Some(NoneReason::NonConstantK1);
            for frac in [0.35, 0.65] {
                let d_sq = 1.0 / (a * a) + frac * (1.0 / (c * c) - 1.0 / (a * a));
                let d = d_sq.sqrt();
                let seed = section_seed(a, c, d, false);
                let cut = candidate_cut(&q, d)?;
                let probe = probe_curve(&q, &cut, seed, 0.01 * a.max(c), 300)?;
                least_spread = least_spread.min(probe.k1_spread);
                combos += 1;
            }
        }
    }
    checks.push(Check::num(
        "triaxial ellipsoids (12): k1^2 varies along the candidate curve",
        verdicts && least_spread > 1e-7,
        least_spread,
        "k1^2 spread > 1e-7",
    ));

    let mut most_gauss = f64::MIN;
    let mut verdicts = true;
    let mut saddle = |q: &SurfaceSpec, a: f64, b: f64, c: f64, xi: f64| -> CliResult<()> {
        for i in 0..10 {
            for j in 0..5 {
                let t = TAU * (i as f64 + 0.5) / 10.0;
                let s = -1.0 + 2.0 * (j as f64 + 0.5) / 5.0;
                let ring = (1.0 + s * s).sqrt();
                let p = if xi > 0.0 {
                    Vec3::new(a * ring * t.cos(), b * ring * t.sin(), c * s)
                } else {
                    Vec3::new(a * ring * t.cos(), b * s, c * ring * t.sin())
                };
                most_gauss = most_gauss.max(gauss_curvature(q, p)?);
            }
        }
        Ok(())
    };
    for a in [1.0f64, 1.5] {
        for b in [0.8f64, 1.2] {
            for c in [1.0f64, 2.0] {
                let q = center_quadric(a, b, c, 1.0, -1.0);
                let cls = classify(&q)?;
                verdicts &= cls.reason == Some(NoneReason::NegativeCurvature);
                saddle(&q, a, b, c, 1.0)?;
                combos += 1;
            }
        }
    }
    for (a, b, c) in [(1.1f64, 0.9, 1.3), (0.9, 1.2, 0.7)] {
        let q = center_quadric(a, b, c, -1.0, 1.0);
        let cls = classify(&q)?;
        verdicts &= cls.reason == Some(NoneReason::NegativeCurvature);
        saddle(&q, a, b, c, -1.0)?;
        combos += 1;
    }
    checks.push(Check::num(
        "one-sheet hyperboloids (10): Gaussian curvature stays negative",
        verdicts && most_gauss < 0.0,
        most_gauss,
        "max K < 0",
    ));

    let mut most_gauss = f64::MIN;
    let mut verdicts = true;
    for a in [1.0f64, 2.0] {
        for b in [1.0f64, 0.7] {
            let q = SurfaceSpec::QuadricParaboloid { a, b, eta: -1.0 };
            let cls = classify(&q)?;
            verdicts &= cls.reason == Some(NoneReason::NegativeCurvature);
            for i in 0..10 {
                for j in 0..5 {
                    let x = -2.0 + 4.0 * (i as f64 + 0.5) / 10.0;
                    let y = -2.0 + 4.0 * (j as f64 + 0.5) / 5.0;
                    let z = (x * x / (a * a) - y * y / (b * b)) / 2.0;
                    most_gauss = most_gauss.max(gauss_curvature(&q, Vec3::new(x, y, z))?);
                }
            }
            combos += 1;
        }
    }
    checks.push(Check::num(
        "hyperbolic paraboloids (4): Gaussian curvature stays negative",
        verdicts && most_gauss < 0.0,
        most_gauss,
        "max K < 0",
    ));

    let mut worst_spread = 0.0f64;
    let mut least_gap = f64::MAX;
    let mut verdicts = true;
    for a in [0.7f64, 1.0, 1.6] {
        for e_sq in [2.0f64, 3.0] {
            let q = SurfaceSpec::QuadricParaboloid { a, b: a, eta: 1.0 };
            let cls = classify(&q)?;
            verdicts &= cls.reason == Some(NoneReason::ResidualNeverZero);
            let e = e_sq.sqrt();
            let cut = SurfaceSpec::CandidateCylinder { a, b: a, e };
            let radius = a * a * (e_sq - 1.0).sqrt();
            let seed = Vec3::new(radius, 0.0, a * a * (e_sq - 1.0) / 2.0);
            let probe = probe_curve(&q, &cut, seed, radius / 60.0, 450)?;
            worst_spread = worst_spread.max(probe.k1_spread);
            least_gap = least_gap.min(probe.min_gap);
            combos += 1;
        }
    }
    checks.push(Check::num(
        "round paraboloids (6): k1^2 constant along the candidate circle",
        verdicts && worst_spread < 1e-7,
        worst_spread,
        "k1^2 spread < 1e-7",
    ));
    checks.push(Check::num(
        "round paraboloids (6): curvature gap bounded away from zero",
        least_gap > 1e-7,
        least_gap,
        "min |k1^2 - K| > 1e-7",
    ));

    let mut least_spread = f64::MAX;
    let mut verdicts = true;
    for (a, b, e_sq) in [(2.0f64, 1.0, 2.0f64), (1.3, 0.9, 3.0)] {
        let q = SurfaceSpec::QuadricParaboloid { a, b, eta: 1.0 };
        let cls = classify(&q)?;
        verdicts &= cls.reason == Some(NoneReason::NonConstantK1);
        let e = e_sq.sqrt();
        let cut = SurfaceSpec::CandidateCylinder { a, b, e };
        let radius = a * a * (e_sq - 1.0).sqrt();
        let seed = Vec3::new(radius, 0.0, a * a * (e_sq - 1.0) / 2.0);
        let probe = probe_curve(&q, &cut, seed, radius / 60.0, 450)?;
        least_spread = least_spread.min(probe.k1_spread);
        combos += 1;
    }
    checks.push(Check::num(
        "offset paraboloids (2): k1^2 varies along the candidate circle",
        verdicts && least_spread > 1e-7,
        least_spread,
        "k1^2 spread > 1e-7",
    ));

    let mut worst_spread = 0.0f64;
    let mut least_gap = f64::MAX;
    let mut verdicts = true;
    for (a, c, d) in [(1.0f64, 0.9, 1.3), (1.5, 0.8, 0.9)] {
        let q = center_quadric(a, c, c, -1.0, -1.0);
        let cls = classify(&q)?;
        verdicts &= cls.reason == Some(NoneReason::ResidualNeverZero);
        let seed = section_seed(a, c, d, true);
        let cut = candidate_cut(&q, d)?;
        let probe = probe_curve(&q, &cut, seed, 0.01 * a.max(c), 300)?;
        worst_spread = worst_spread.max(probe.k1_spread);
        least_gap = least_gap.min(probe.min_gap);
        combos += 1;
    }
    checks.push(Check::num(
        "two-sheet hyperboloids of revolution (2): k1^2 constant",
        verdicts && worst_spread < 1e-7,
        worst_spread,
        "k1^2 spread < 1e-7",
    ));
    checks.push(Check::num(
        "two-sheet hyperboloids of revolution (2): gap never closes",
        least_gap > 1e-7,
        least_gap,
        "min |k1^2 - K| > 1e-7",
    ));

    let mut least_spread = f64::MAX;
    let mut verdicts = true;
    for (a, b, c, d) in [(1.0f64, 0.8, 1.2, 1.3), (1.2, 1.0, 0.7, 1.1)] {
        let q = center_quadric(a, b, c, -1.0, -1.0);
        let cls = classify(&q)?;
        verdicts &= cls.reason == Some(NoneReason::NonConstantK1);
        let seed = section_seed(a, c, d, true);
        let cut = candidate_cut(&q, d)?;
        let probe = probe_curve(&q, &cut, seed, 0.01 * a.max(c), 300)?;
        least_spread = least_spread.min(probe.k1_spread);
        combos += 1;
    }
    checks.push(Check::num(
        "two-sheet hyperboloids, distinct axes (2): k1^2 varies",
        verdicts && least_spread > 1e-7,
        least_spread,
        "k1^2 spread > 1e-7",
    ));

    checks.push(Check::count(
        "parameter combinations exercised",
        combos >= 50,
        combos,
        ">= 50",
    ));
    Ok(checks)
}

fn n1_consistency() -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for c in [0.5f64, 1.0, 2.0, 5.0] {
        let sol = solve_superquadric_parallel(1, c)?;
        let cls = classify(&center_quadric(1.0, 1.0, c, 1.0, 1.0))?;
        let height_sq = field(cls.circle_height_sq, "circle_height_sq")?;
        let diff = (sol.d0 * sol.d0 - height_sq).abs();
        checks.push(Check::num(
            format!("degree-one superquadric vs spheroid classification, c = {c}"),
            diff <= 1e-10,
            diff,
            "|d0^2 - circle_height_sq| <= 1e-10",
        ));
    }
    Ok(checks)
}
