//! Biharmonic parallels of surfaces of revolution: the superquadric family
//! z^(2n)/c^2 + (x^2+y^2)^n = 1 and profile graphs z = f(rho), including
//! the explicit profile whose parallels are all biharmonic.

use crate::error::{Error, Result};
use crate::numfmt::fmt_f64;
use crate::surface::{Profile, SurfaceSpec};

/// Root of the parallel-biharmonicity equation for a superquadric, with the
/// bracket it was isolated in and every sign-change bracket seen during the
/// scan (the existence argument does not promise uniqueness).
#[derive(Debug, Clone)]
pub struct ParallelSolveResult {
    pub d0: f64,
    pub bracket: (f64, f64),
    pub residual_at_root: f64,
    pub iterations: u32,
    pub all_brackets: Vec<(f64, f64)>,
}

fn check_superquadric(n: u32, c: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain {
            detail: "superquadric exponent n must be at least 1".into(),
        });
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain {
            detail: format!("superquadric height c must be positive, got {c}"),
        });
    }
    Ok(())
}

/// Largest admissible parallel height: the surface reaches z = c^(1/n).
pub fn superquadric_height_limit(n: u32, c: f64) -> Result<f64> {
    check_superquadric(n, c)?;
    Ok(c.powf(1.0 / n as f64))
}

fn check_height(n: u32, c: f64, d: f64, strict_lower: bool) -> Result<f64> {
    let limit = superquadric_height_limit(n, c)?;
    let lower_ok = if strict_lower { d > 0.0 } else { d >= 0.0 };
    if !(lower_ok && d < limit) {
        return Err(Error::Domain {
            detail: format!(
                "parallel height d = {d} outside {}0, {limit}) for n = {n}, c = {c}",
                if strict_lower { "(" } else { "[" }
            ),
        });
    }
    Ok(limit)
}

/// Squared radius of the parallel at height z = d:
/// x^2 + y^2 = (1 - d^(2n)/c^2)^(1/n).
pub fn superquadric_parallel_radius_sq(n: u32, c: f64, d: f64) -> Result<f64> {
    check_height(n, c, d, false)?;
    Ok((1.0 - d.powi(2 * n as i32) / (c * c)).powf(1.0 / n as f64))
}

/// (K, k1^2) of the parallel at height d, from the closed forms
/// K  = c^4 (2n-1) A^(2n) d^(2n+2) (c^2 A^n + d^(2n)) / (c^4 d^2 A^(2n) + A d^(4n))^2,
/// k1^2 = c^4 A^(2n) d^(4n) / ((c^2 - d^(2n))^2 (c^4 d^2 A^(2n) + A d^(4n))),
/// where A is the squared parallel radius.
pub fn superquadric_parallel_curvatures(n: u32, c: f64, d: f64) -> Result<(f64, f64)> {
    check_height(n, c, d, true)?;
    let a = superquadric_parallel_radius_sq(n, c, d)?;
    let nf = n as f64;
    let ni = n as i32;
    let c2 = c * c;
    let c4 = c2 * c2;
    let d2n = d.powi(2 * ni);
    let a2n = a.powi(2 * ni);
    let an = a.powi(ni);
    let shared = c4 * d * d * a2n + a * d.powi(4 * ni);
    let gauss =
        c4 * (2.0 * nf - 1.0) * a2n * d.powi(2 * ni + 2) * (c2 * an + d2n) / (shared * shared);
    let k1_sq = c4 * a2n * d.powi(4 * ni) / ((c2 - d2n) * (c2 - d2n) * shared);
    Ok((gauss, k1_sq))
}

/// Left-hand side of the biharmonicity equation for the parallel at height
/// d: 2 c^4 (1-n) d^(2n) + d^(6n-2) (1 - d^(2n)/c^2)^((1-2n)/n) minus
/// c^6 (2n-1) (1 - d^(2n)/c^2). Negative at d = 0, divergent to positive
/// infinity as d approaches c^(1/n), so a root d0 always exists between.
pub fn superquadric_parallel_residual(n: u32, c: f64, d: f64) -> Result<f64> {
    check_height(n, c, d, false)?;
    let nf = n as f64;
    let ni = n as i32;
    let c2 = c * c;
    let c4 = c2 * c2;
    let w = 1.0 - d.powi(2 * ni) / c2;
    Ok(
        2.0 * c4 * (1.0 - nf) * d.powi(2 * ni) + d.powi(6 * ni - 2) * w.powf((1.0 - 2.0 * nf) / nf)
            - c2 * c4 * (2.0 * nf - 1.0) * w,
    )
}

/// Finds the biharmonic parallel height d0 by scanning [0, c^(1/n)) at 1024
/// uniform samples for a sign change and bisecting the first bracket to
/// 1e-12 in d (continuing, if needed, until the residual is small relative
/// to the bracket's left endpoint).
pub fn solve_superquadric_parallel(n: u32, c: f64) -> Result<ParallelSolveResult> {
    let limit = superquadric_height_limit(n, c)?;
    let hi_edge = limit * (1.0 - 1e-9);
    const SCAN: usize = 1024;

    let mut all_brackets = Vec::new();
    let mut prev_d = 0.0;
    let mut prev_r = superquadric_parallel_residual(n, c, 0.0)?;
    for i in 1..=SCAN {
        let d = hi_edge * i as f64 / SCAN as f64;
        let r = superquadric_parallel_residual(n, c, d)?;
        if prev_r == 0.0 || prev_r.signum() != r.signum() {
            all_brackets.push((prev_d, d));
        }
        prev_d = d;
        prev_r = r;
    }
    let Some(&(b_lo, b_hi)) = all_brackets.first() else {
        return Err(Error::BracketNotFound {
            lo: 0.0,
            hi: hi_edge,
            samples: SCAN,
            res_lo: superquadric_parallel_residual(n, c, 0.0)?,
            res_hi: prev_r,
        });
    };

    let scale = superquadric_parallel_residual(n, c, b_lo)?.abs().max(1.0);
    let (mut lo, mut hi) = (b_lo, b_hi);
    let mut r_lo = superquadric_parallel_residual(n, c, lo)?;
    let mut mid = 0.5 * (lo + hi);
    let mut r_mid = superquadric_parallel_residual(n, c, mid)?;
    let mut iterations = 0u32;
    while iterations < 200 {
        iterations += 1;
        mid = 0.5 * (lo + hi);
        r_mid = superquadric_parallel_residual(n, c, mid)?;
        if r_mid == 0.0 {
            break;
        }
        if r_lo.signum() == r_mid.signum() {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 && r_mid.abs() <= 1e-10 * scale {
            break;
        }
        if hi - lo < f64::EPSILON * mid.abs() {
            break;
        }
    }
    Ok(ParallelSolveResult {
        d0: mid,
        bracket: (b_lo, b_hi),
        residual_at_root: r_mid,
        iterations,
        all_brackets,
    })
}

fn check_rho(rho: f64) -> Result<()> {
    if rho <= 0.0 {
        return Err(Error::AxisPoint { rho });
    }
    Ok(())
}

fn checked_slopes(profile: &Profile, rho: f64) -> Result<(f64, f64)> {
    check_rho(rho)?;
    let fp = profile.df(rho);
    let fpp = profile.ddf(rho);
    if !fp.is_finite() || !fpp.is_finite() {
        return Err(Error::Domain {
            detail: format!("profile derivatives are not finite at rho = {rho}"),
        });
    }
    Ok((fp, fpp))
}

/// (K, k1^2) of the parallel at radius rho on the graph z = f(rho):
/// K = f' f'' / (rho (f'^2 + 1)^2), k1^2 = 1 / (rho^2 (f'^2 + 1)).
pub fn graph_parallel_curvatures(profile: &Profile, rho: f64) -> Result<(f64, f64)> {
    let (fp, fpp) = checked_slopes(profile, rho)?;
    let w = fp * fp + 1.0;
    Ok((fp * fpp / (rho * w * w), 1.0 / (rho * rho * w)))
}

/// Biharmonicity defect of the parallel at rho:
/// f'(rho)^2 - rho f'(rho) f''(rho) + 1, zero exactly when the parallel is
/// proper biharmonic.
pub fn graph_parallel_residual(profile: &Profile, rho: f64) -> Result<f64> {
    let (fp, fpp) = checked_slopes(profile, rho)?;
    Ok(fp * fp - rho * fp * fpp + 1.0)
}

/// Residual of the all-parallels ODE f'^2 - rho f' f'' + 1 = 0 for an
/// arbitrary candidate profile (same expression as
/// [`graph_parallel_residual`], exposed under the equation's name).
pub fn ode_residual(profile: &Profile, rho: f64) -> Result<f64> {
    graph_parallel_residual(profile, rho)
}

/// The profile whose parallels are all proper biharmonic:
/// f(rho) = (rho sqrt(e^(2c1) rho^2 - 1)
///           - e^(-c1) ln(2 e^(c1) (sqrt(e^(2c1) rho^2 - 1) + e^(c1) rho)))/2
///          + c2,
/// defined for rho >= e^(-c1), with f' = sqrt(e^(2c1) rho^2 - 1) and
/// f'' = e^(2c1) rho / f'. Rounding-level negatives of the radicand at the
/// domain edge are treated as zero; genuinely out-of-domain inputs yield NaN.
pub fn biharmonic_profile(c1: f64, c2: f64) -> Profile {
    let e2c1 = (2.0 * c1).exp();
    let ec1 = c1.exp();
    let emc1 = (-c1).exp();
    let radicand = move |rho: f64| {
        let q = e2c1 * rho * rho - 1.0;
        if q < 0.0 && q >= -1e-12 * (e2c1 * rho * rho).max(1.0) {
            0.0
        } else {
            q
        }
    };
    Profile::new(
        move |rho| {
            let s = radicand(rho).sqrt();
            0.5 * (rho * s - emc1 * (2.0 * ec1 * (s + ec1 * rho)).ln()) + c2
        },
        move |rho| radicand(rho).sqrt(),
        move |rho| e2c1 * rho / radicand(rho).sqrt(),
    )
}

/// A revolution-graph surface built from the all-parallels-biharmonic
/// profile with integration constants c1, c2.
#[derive(Debug, Clone, Copy)]
pub struct ProfileSpec {
    pub c1: f64,
    pub c2: f64,
}

impl ProfileSpec {
    /// Smallest radius in the domain of definition, e^(-c1).
    pub fn min_rho(&self) -> f64 {
        (-self.c1).exp()
    }

    pub fn profile(&self) -> Profile {
        biharmonic_profile(self.c1, self.c2)
    }

    pub fn surface(&self) -> SurfaceSpec {
        SurfaceSpec::RevolutionGraph {
            profile: self.profile(),
        }
    }

    fn check_domain(&self, rho: f64) -> Result<f64> {
        check_rho(rho)?;
        let w = (2.0 * self.c1).exp() * rho * rho;
        if w < 1.0 - 1e-12 {
            return Err(Error::Domain {
                detail: format!(
                    "rho = {rho} is below the profile domain edge e^(-c1) = {}",
                    self.min_rho()
                ),
            });
        }
        Ok(w)
    }

    /// (K, k1^2) of the parallel at rho. The product f' f'' equals
    /// e^(2c1) rho identically for this profile, which keeps K finite at the
    /// domain edge where f'' alone diverges.
    pub fn parallel_curvatures(&self, rho: f64) -> Result<(f64, f64)> {
        self.check_domain(rho)?;
        let fp = self.profile().df(rho);
        let fp_sq_plus_1 = fp * fp + 1.0;
        let slope_product = (2.0 * self.c1).exp() * rho;
        Ok((
            slope_product / (rho * fp_sq_plus_1 * fp_sq_plus_1),
            1.0 / (rho * rho * fp_sq_plus_1),
        ))
    }

    /// ODE residual at rho with the same edge-safe product substitution:
    /// f'^2 - e^(2c1) rho^2 + 1.
    pub fn parallel_residual(&self, rho: f64) -> Result<f64> {
        let w = self.check_domain(rho)?;
        let fp = self.profile().df(rho);
        Ok(fp * fp - w + 1.0)
    }
}

/// CSV table of the profile and its parallel data over [rho_min, rho_max]
/// with `samples` evenly spaced rows:
/// rho,f,fprime,K,k1_sq,residual.
pub fn profile_csv(
    spec: &ProfileSpec,
    rho_min: f64,
    rho_max: f64,
    samples: usize,
) -> Result<String> {
    if samples < 2 {
        return Err(Error::TooFewSamples { count: samples });
    }
    if !(rho_min.is_finite() && rho_max.is_finite()) || rho_min > rho_max {
        return Err(Error::Domain {
            detail: format!("invalid radius range [{rho_min}, {rho_max}]"),
        });
    }
    spec.check_domain(rho_min)?;
    let profile = spec.profile();
    let mut out = String::from("rho,f,fprime,K,k1_sq,residual\n");
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let rho = rho_min + t * (rho_max - rho_min);
        let (gauss, k1_sq) = spec.parallel_curvatures(rho)?;
        let residual = spec.parallel_residual(rho)?;
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_f64(rho),
            fmt_f64(profile.f(rho)),
            fmt_f64(profile.df(rho)),
            fmt_f64(gauss),
            fmt_f64(k1_sq),
            fmt_f64(residual),
        ));
    }
    Ok(out)
}
