//! Predictor-corrector tracing of the intersection curve {F=0, G=0} and a
//! finite-difference geodesic-curvature oracle that never touches the
//! closed-form curvature formulas.

use crate::config::TOL;
use crate::curvature;
use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::numfmt::fmt_f64;
use crate::surface::SurfaceSpec;

/// One traced point with its arclength coordinate and surface residuals.
#[derive(Debug, Clone, Copy)]
pub struct TraceSample {
    pub point: Vec3,
    pub arclength: f64,
    pub residual_f: f64,
    pub residual_g: f64,
}

/// A polyline on the intersection curve, stepped at (nearly) constant
/// arclength spacing. `closed` marks traces that returned to their start.
#[derive(Debug, Clone)]
pub struct CurveTrace {
    pub samples: Vec<TraceSample>,
    pub step: f64,
    pub closed: bool,
}

/// Mean and worst absolute deviation of a sampled quantity, the numerical
/// stand-in for "is this constant along the curve".
#[derive(Debug, Clone, Copy)]
pub struct ConstancyReport {
    pub mean: f64,
    pub max_abs_dev: f64,
    pub sample_count: usize,
}

/// Newton-projects a guess onto {F=0, G=0}, moving only within the span of
/// the two gradients, until both |F| and |G| drop below 1e-12. An input
/// already on the curve is returned unchanged.
pub fn project_to_curve(f: &SurfaceSpec, g: &SurfaceSpec, guess: Vec3) -> Result<Vec3> {
    const MAX_ITER: u32 = 50;
    let mut p = guess;
    let mut rf = f.evaluate(p)?;
    let mut rg = g.evaluate(p)?;
    for _ in 0..MAX_ITER {
        if rf.abs() < TOL.projection && rg.abs() < TOL.projection {
            return Ok(p);
        }
        let gf = f.gradient(p)?;
        let gg = g.gradient(p)?;
        let a11 = gf.norm_sq();
        let a22 = gg.norm_sq();
        if a11.sqrt() < TOL.degenerate_gradient || a22.sqrt() < TOL.degenerate_gradient {
            return Err(Error::DegenerateGradient {
                norm: a11.min(a22).sqrt(),
                limit: TOL.degenerate_gradient,
            });
        }
        let a12 = gf.dot(gg);
        let det = a11 * a22 - a12 * a12;
        let sin_sq = det / (a11 * a22);
        if sin_sq < TOL.tangency_sin_sq {
            return Err(Error::Tangency {
                sin_sq,
                limit: TOL.tangency_sin_sq,
            });
        }
        let alpha = (-rf * a22 + rg * a12) / det;
        let beta = (-rg * a11 + rf * a12) / det;
        p = p + gf * alpha + gg * beta;
        rf = f.evaluate(p)?;
        rg = g.evaluate(p)?;
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITER,
        residual_f: rf.abs(),
        residual_g: rg.abs(),
    })
}

fn unit_tangent(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3) -> Result<Vec3> {
    let gf = f.gradient(p)?;
    let gg = g.gradient(p)?;
    let cross = gf.cross(gg);
    let sin_sq = cross.norm_sq() / (gf.norm_sq() * gg.norm_sq());
    if sin_sq < TOL.tangency_sin_sq {
        return Err(Error::Tangency {
            sin_sq,
            limit: TOL.tangency_sin_sq,
        });
    }
    cross.normalized()
}

fn trace_sample(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3, arclength: f64) -> Result<TraceSample> {
    Ok(TraceSample {
        point: p,
        arclength,
        residual_f: f.evaluate(p)?.abs(),
        residual_g: g.evaluate(p)?.abs(),
    })
}

// Chord substeps per stored sample. Summing several short chords makes the
// recorded arclength an O(step^3)-accurate arc estimate, which the
// finite-difference stencil needs; a single chord of the full step would
// systematically undershoot the arc by step^2 k^2 / 24.
const SUBSTEPS: usize = 4;

fn advance_chord(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3, chord: f64) -> Result<Vec3> {
    let tangent = unit_tangent(f, g, p)?;
    let corrected = project_to_curve(f, g, p + tangent * chord)?;
    // Re-aim along the actual chord so the spacing is the requested length,
    // then correct once more.
    let dir = corrected - p;
    let len = dir.norm();
    if len > 0.0 {
        project_to_curve(f, g, p + dir * (chord / len))
    } else {
        Ok(corrected)
    }
}

/// Traces the intersection curve from a projectable start. Each stored
/// sample is reached by four equal chord substeps (predictor along
/// grad F x grad G, Newton corrector, one re-aiming pass), so consecutive
/// samples are one arclength step apart. Stops on closure (back within
/// step/2 of the start after at least three steps) or after max_steps.
pub fn trace(
    f: &SurfaceSpec,
    g: &SurfaceSpec,
    start: Vec3,
    step: f64,
    max_steps: usize,
) -> Result<CurveTrace> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Domain {
            detail: format!("trace step must be positive, got {step}"),
        });
    }
    let origin = project_to_curve(f, g, start).map_err(|e| Error::TraceStep {
        index: 0,
        source: Box::new(e),
    })?;
    let mut samples = vec![trace_sample(f, g, origin, 0.0)?];
    let mut p = origin;
    let mut arclength = 0.0;
    let mut closed = false;

    for index in 1..=max_steps {
        let fail = |e: Error| Error::TraceStep {
            index,
            source: Box::new(e),
        };
        let mut next = p;
        let mut advanced = 0.0;
        for _ in 0..SUBSTEPS {
            let q = advance_chord(f, g, next, step / SUBSTEPS as f64).map_err(fail)?;
            advanced += (q - next).norm();
            next = q;
        }
        // A point landing back within half a step of the start closes the
        // loop; it is dropped rather than stored so that sample order equals
        // cyclic curve order and the seam gap stays at least step/2.
        if index >= 3 && (next - origin).norm() < step / 2.0 {
            closed = true;
            break;
        }
        arclength += advanced;
        samples.push(trace_sample(f, g, next, arclength)?);
        p = next;
    }
    Ok(CurveTrace {
        samples,
        step,
        closed,
    })
}

fn neighbor_indices(trace: &CurveTrace, index: usize) -> Result<(usize, usize)> {
    let n = trace.samples.len();
    if index >= n || n < 3 {
        return Err(Error::BoundaryIndex { index, len: n });
    }
    if trace.closed {
        return Ok(((index + n - 1) % n, (index + 1) % n));
    }
    if index == 0 || index + 1 == n {
        return Err(Error::BoundaryIndex { index, len: n });
    }
    Ok((index - 1, index + 1))
}

/// Squared geodesic curvature at a trace sample from pure finite
/// differences: the three-point second derivative of position with respect
/// to arclength, with the component along the surface normal removed.
/// Spacings come from the stored arclength (the wrap gap of a closed trace
/// falls back to its chord). Nothing here uses the Hessian-based closed
/// forms, so this is an independent oracle for them.
pub fn fd_geodesic_curvature_sq(f: &SurfaceSpec, trace: &CurveTrace, index: usize) -> Result<f64> {
    let (im, ip) = neighbor_indices(trace, index)?;
    let p0 = trace.samples[index].point;
    let pm = trace.samples[im].point;
    let pp = trace.samples[ip].point;
    let s0 = trace.samples[index].arclength;
    let hm = if im < index {
        s0 - trace.samples[im].arclength
    } else {
        (p0 - pm).norm()
    };
    let hp = if ip > index {
        trace.samples[ip].arclength - s0
    } else {
        (pp - p0).norm()
    };
    // Three-point second derivative for possibly unequal spacing; reduces
    // to (pm - 2 p0 + pp)/h^2 when hm == hp == h.
    let accel = (pm * hp + pp * hm - p0 * (hm + hp)) * (2.0 / (hm * hp * (hm + hp)));
    let normal = f.gradient(p0)?.normalized()?;
    let tangential = accel - normal * accel.dot(normal);
    Ok(tangential.norm_sq())
}

/// Mean and max absolute deviation of a list of at least three values.
pub fn constancy_report(values: &[f64]) -> Result<ConstancyReport> {
    if values.len() < 3 {
        return Err(Error::TooFewSamples {
            count: values.len(),
        });
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let max_abs_dev = values
        .iter()
        .map(|v| (v - mean).abs())
        .fold(0.0f64, f64::max);
    Ok(ConstancyReport {
        mean,
        max_abs_dev,
        sample_count: values.len(),
    })
}

/// CSV export of a trace: arclength, coordinates, the algebraic k1^2, its
/// finite-difference estimate (empty-neighbor cells print as nan), and the
/// Gaussian curvature of the F-surface.
pub fn trace_csv(f: &SurfaceSpec, g: &SurfaceSpec, trace: &CurveTrace) -> Result<String> {
    let mut out = String::from("s,x,y,z,k1_sq_algebraic,k1_sq_fd,K\n");
    for (index, sample) in trace.samples.iter().enumerate() {
        let p = sample.point;
        let k1_alg = curvature::geodesic_curvature_sq(f, g, p)?;
        let gauss = curvature::gauss_curvature(f, p)?;
        let k1_fd = match fd_geodesic_curvature_sq(f, trace, index) {
            Ok(v) => fmt_f64(v),
            Err(Error::BoundaryIndex { .. }) => "nan".to_string(),
            Err(e) => return Err(e),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_f64(sample.arclength),
            fmt_f64(p.x),
            fmt_f64(p.y),
            fmt_f64(p.z),
            fmt_f64(k1_alg),
            k1_fd,
            fmt_f64(gauss),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Poly3;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    fn sphere() -> SurfaceSpec {
        SurfaceSpec::Polynomial(Poly3::parse("x^2+y^2+z^2-1").unwrap())
    }

    fn plane(d: f64) -> SurfaceSpec {
        SurfaceSpec::PlaneZ { d }
    }

    fn spheroid_pair() -> (SurfaceSpec, SurfaceSpec) {
        (
            SurfaceSpec::QuadricCenter {
                a: 1.0,
                b: 1.0,
                c: 2.0,
                xi: 1.0,
                zeta: 1.0,
            },
            SurfaceSpec::CandidateEllipsoid {
                a: 1.0,
                b: 1.0,
                c: 2.0,
                d: 0.5f64.sqrt(),
            },
        )
    }

    #[test]
    fn projection_lands_on_the_latitude_circle() {
        let p = project_to_curve(&sphere(), &plane(0.5), Vec3::new(1.0, 0.0, 0.5)).unwrap();
        assert!(close(p.x, 0.75f64.sqrt(), 1e-10));
        assert!(p.y.abs() < 1e-12);
        assert!(close(p.z, 0.5, 1e-12));
    }

    #[test]
    fn projection_returns_on_curve_points_unchanged() {
        let exact = Vec3::new(0.75f64.sqrt(), 0.0, 0.5);
        let p = project_to_curve(&sphere(), &plane(0.5), exact).unwrap();
        assert_eq!(p, exact);
    }

    #[test]
    fn projection_reaches_the_biharmonic_circle() {
        let (f, g) = spheroid_pair();
        let p = project_to_curve(&f, &g, Vec3::new(0.6, 0.0, 1.6)).unwrap();
        assert!(close(p.x * p.x + p.y * p.y, 1.0 / 3.0, 1e-10));
        assert!(close(p.z * p.z, 8.0 / 3.0, 1e-10));
    }

    #[test]
    fn projection_rejects_parallel_gradients() {
        let res = project_to_curve(&sphere(), &sphere(), Vec3::new(0.9, 0.1, 0.2));
        assert!(matches!(res, Err(Error::Tangency { .. })));
    }

    #[test]
    fn equator_trace_closes_with_the_right_circumference() {
        let t = trace(&sphere(), &plane(0.0), Vec3::new(1.0, 0.0, 0.0), 2e-3, 4000).unwrap();
        assert!(t.closed);
        let total = t.samples.last().unwrap().arclength;
        assert!(
            (total - std::f64::consts::TAU).abs() < 0.01 * std::f64::consts::TAU,
            "arclength {total}"
        );
        for s in &t.samples {
            assert!(s.residual_f < 1e-10 && s.residual_g < 1e-10);
        }
    }

    #[test]
    fn trace_spacing_is_nearly_uniform() {
        let t = trace(&sphere(), &plane(0.3), Vec3::new(1.0, 0.0, 0.3), 5e-3, 3000).unwrap();
        for pair in t.samples.windows(2) {
            let gap = (pair[1].point - pair[0].point).norm();
            assert!((gap - t.step).abs() < 0.2 * t.step, "gap {gap}");
        }
    }

    #[test]
    fn biharmonic_circle_trace_stays_at_constant_radius() {
        let (f, g) = spheroid_pair();
        let t = trace(&f, &g, Vec3::new(0.6, 0.0, 1.6), 5e-3, 2000).unwrap();
        assert!(t.closed);
        let radii: Vec<f64> = t
            .samples
            .iter()
            .map(|s| s.point.x * s.point.x + s.point.y * s.point.y)
            .collect();
        let report = constancy_report(&radii).unwrap();
        assert!(close(report.mean, 1.0 / 3.0, 1e-9));
        assert!(report.max_abs_dev < 1e-9);
    }

    #[test]
    fn zero_step_is_rejected() {
        let res = trace(&sphere(), &plane(0.0), Vec3::new(1.0, 0.0, 0.0), 0.0, 10);
        assert!(matches!(res, Err(Error::Domain { .. })));
    }

    #[test]
    fn fd_matches_algebraic_curvature_on_the_biharmonic_latitude() {
        let d = 1.0 / 2.0f64.sqrt();
        let r = (1.0 - d * d).sqrt();
        let t = trace(&sphere(), &plane(d), Vec3::new(r, 0.0, d), 1e-3, 80).unwrap();
        let k1 = fd_geodesic_curvature_sq(&sphere(), &t, 40).unwrap();
        assert!((k1 - 1.0).abs() < 1e-4, "fd k1^2 = {k1}");
    }

    #[test]
    fn fd_sees_a_geodesic_on_the_equator() {
        let t = trace(&sphere(), &plane(0.0), Vec3::new(1.0, 0.0, 0.0), 1e-3, 60).unwrap();
        let k1 = fd_geodesic_curvature_sq(&sphere(), &t, 30).unwrap();
        assert!(k1 < 1e-6, "fd k1^2 = {k1}");
    }

    #[test]
    fn fd_rejects_endpoints_of_open_traces() {
        let t = trace(&sphere(), &plane(0.0), Vec3::new(1.0, 0.0, 0.0), 1e-3, 10).unwrap();
        assert!(!t.closed);
        assert!(matches!(
            fd_geodesic_curvature_sq(&sphere(), &t, 0),
            Err(Error::BoundaryIndex { .. })
        ));
        let last = t.samples.len() - 1;
        assert!(matches!(
            fd_geodesic_curvature_sq(&sphere(), &t, last),
            Err(Error::BoundaryIndex { .. })
        ));
    }

    #[test]
    fn fd_wraps_around_closed_traces() {
        let t = trace(&sphere(), &plane(0.0), Vec3::new(1.0, 0.0, 0.0), 2e-3, 4000).unwrap();
        assert!(t.closed);
        let k1 = fd_geodesic_curvature_sq(&sphere(), &t, 0).unwrap();
        assert!(k1 < 1e-4, "fd k1^2 at seam = {k1}");
    }

    #[test]
    fn constancy_report_basics() {
        let r = constancy_report(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(r.mean, 1.0);
        assert_eq!(r.max_abs_dev, 0.0);
        let r = constancy_report(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(r.mean, 2.0);
        assert_eq!(r.max_abs_dev, 1.0);
        assert!(matches!(
            constancy_report(&[1.0, 2.0]),
            Err(Error::TooFewSamples { count: 2 })
        ));
    }

    #[test]
    fn csv_export_shape_and_endpoint_cells() {
        let d = 1.0 / 2.0f64.sqrt();
        let r = (1.0 - d * d).sqrt();
        let t = trace(&sphere(), &plane(d), Vec3::new(r, 0.0, d), 1e-2, 5).unwrap();
        let csv = trace_csv(&sphere(), &plane(d), &t).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "s,x,y,z,k1_sq_algebraic,k1_sq_fd,K");
        assert_eq!(lines.len(), t.samples.len() + 1);
        let first: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(first[5], "nan");
        let interior: Vec<&str> = lines[2].split(',').collect();
        let fd: f64 = interior[5].parse().unwrap();
        assert!((fd - 1.0).abs() < 1e-2);
        let k_col: f64 = interior[6].parse().unwrap();
        assert!(close(k_col, 1.0, 1e-9));
    }
}
