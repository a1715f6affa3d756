//! Curvature of an implicit surface and of the intersection curve of two
//! implicit surfaces, computed at a point without parametrizing the curve.

use crate::config::TOL;
use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::surface::SurfaceSpec;

/// Every curvature quantity of the intersection curve {F=0, G=0} at a point.
///
/// `k1_sq` is the squared geodesic curvature of the curve viewed inside the
/// F-surface, so the argument order (F, G) matters; `k_sq` is the squared
/// curvature of the curve as a space curve and satisfies
/// k_sq = k1_sq + kn_f^2.
#[derive(Debug, Clone, Copy)]
pub struct CurvatureSample {
    pub point: Vec3,
    pub tangent: Vec3,
    pub gauss_f: f64,
    pub kn_f: f64,
    pub kn_g: f64,
    pub cos_theta: f64,
    pub k_sq: f64,
    pub k1_sq: f64,
    pub alpha: f64,
    pub beta: f64,
}

fn checked_gradient(s: &SurfaceSpec, p: Vec3) -> Result<(Vec3, f64)> {
    let g = s.gradient(p)?;
    let n = g.norm();
    if n < TOL.degenerate_gradient {
        return Err(Error::DegenerateGradient {
            norm: n,
            limit: TOL.degenerate_gradient,
        });
    }
    Ok((g, n))
}

/// Shared state for the two-surface operations: gradients, unit tangent,
/// gradient angle, and both normal curvatures at one point.
struct PairContext {
    tangent: Vec3,
    cos_theta: f64,
    sin_sq: f64,
    kn_f: f64,
    kn_g: f64,
    grad_f_norm: f64,
}

fn pair_context(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3) -> Result<PairContext> {
    f.check_on_surface(p, TOL.membership, "F")?;
    g.check_on_surface(p, TOL.membership, "G")?;
    let (gf, nf) = checked_gradient(f, p)?;
    let (gg, ng) = checked_gradient(g, p)?;

    let cos_theta = gf.dot(gg) / (nf * ng);
    let cross = gf.cross(gg);
    let sin_sq = cross.norm_sq() / (nf * nf * ng * ng);
    if sin_sq < TOL.tangency_sin_sq {
        return Err(Error::Tangency {
            sin_sq,
            limit: TOL.tangency_sin_sq,
        });
    }
    let tangent = cross.normalized()?;

    let hf = f.hessian(p)?;
    let hg = g.hessian(p)?;
    let kn_f = -hf.quadratic_form(tangent) / nf;
    let kn_g = -hg.quadratic_form(tangent) / ng;
    Ok(PairContext {
        tangent,
        cos_theta,
        sin_sq,
        kn_f,
        kn_g,
        grad_f_norm: nf,
    })
}

/// Gaussian curvature of the surface {F=0} at p, via the cofactor matrix of
/// the Hessian: K = (grad F) C_HF (grad F)^T / |grad F|^4.
pub fn gauss_curvature(f: &SurfaceSpec, p: Vec3) -> Result<f64> {
    f.check_on_surface(p, TOL.membership, "F")?;
    let (g, n) = checked_gradient(f, p)?;
    let cof = f.hessian(p)?.cofactor();
    Ok(cof.quadratic_form(g) / (n * n * n * n))
}

/// Normal curvature of the surface {F=0} at p in the unit tangent direction
/// t: -t HF t^T / |grad F|, with the normal taken as grad F / |grad F|.
pub fn normal_curvature(f: &SurfaceSpec, p: Vec3, t: Vec3) -> Result<f64> {
    f.check_on_surface(p, TOL.membership, "F")?;
    let (g, n) = checked_gradient(f, p)?;
    if (t.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain {
            detail: format!("direction must be unit length, |t| = {}", t.norm()),
        });
    }
    let obliqueness = t.dot(g).abs() / n;
    if obliqueness > TOL.tangent_orthogonality {
        return Err(Error::NotTangent {
            obliqueness,
            tol: TOL.tangent_orthogonality,
        });
    }
    Ok(-f.hessian(p)?.quadratic_form(t) / n)
}

/// Unit tangent of the intersection curve at p, oriented along
/// grad F x grad G.
pub fn intersection_tangent(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3) -> Result<Vec3> {
    Ok(pair_context(f, g, p)?.tangent)
}

/// (cos theta, sin^2 theta) of the angle between the two gradients at p.
/// Errors when the surfaces are tangent (sin^2 theta below threshold).
pub fn gradient_angle(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3) -> Result<(f64, f64)> {
    let (gf, nf) = checked_gradient(f, p)?;
    let (gg, ng) = checked_gradient(g, p)?;
    let cos_theta = gf.dot(gg) / (nf * ng);
    let sin_sq = gf.cross(gg).norm_sq() / (nf * nf * ng * ng);
    if sin_sq < TOL.tangency_sin_sq {
        return Err(Error::Tangency {
            sin_sq,
            limit: TOL.tangency_sin_sq,
        });
    }
    Ok((cos_theta, sin_sq))
}

/// Squared curvature of the intersection curve as a space curve:
/// k^2 = (kn_f^2 + kn_g^2 - 2 kn_f kn_g cos theta) / sin^2 theta.
pub fn intersection_curvature_sq(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3) -> Result<f64> {
    let ctx = pair_context(f, g, p)?;
    Ok(
        (ctx.kn_f * ctx.kn_f + ctx.kn_g * ctx.kn_g - 2.0 * ctx.kn_f * ctx.kn_g * ctx.cos_theta)
            / ctx.sin_sq,
    )
}

/// Coefficients (alpha, beta) of the curve acceleration in the basis of the
/// two unit normals: gamma'' = alpha n_F + beta n_G.
pub fn decompose_acceleration(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3) -> Result<(f64, f64)> {
    let ctx = pair_context(f, g, p)?;
    let alpha = (ctx.kn_f - ctx.kn_g * ctx.cos_theta) / ctx.sin_sq;
    let beta = (ctx.kn_g - ctx.kn_f * ctx.cos_theta) / ctx.sin_sq;
    Ok((alpha, beta))
}

/// Squared geodesic curvature of the intersection curve viewed as a curve in
/// the F-surface: k1^2 = (cos theta kn_f - kn_g)^2 / sin^2 theta.
pub fn geodesic_curvature_sq(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3) -> Result<f64> {
    let ctx = pair_context(f, g, p)?;
    let num = ctx.cos_theta * ctx.kn_f - ctx.kn_g;
    Ok(num * num / ctx.sin_sq)
}

/// Computes every curvature quantity of the intersection curve at p in one
/// pass over the shared gradient/Hessian data.
pub fn curvature_sample(f: &SurfaceSpec, g: &SurfaceSpec, p: Vec3) -> Result<CurvatureSample> {
    let ctx = pair_context(f, g, p)?;
    let cof = f.hessian(p)?.cofactor();
    let grad_f = f.gradient(p)?;
    let n4 = ctx.grad_f_norm.powi(4);
    let gauss_f = cof.quadratic_form(grad_f) / n4;

    let k_sq = (ctx.kn_f * ctx.kn_f + ctx.kn_g * ctx.kn_g
        - 2.0 * ctx.kn_f * ctx.kn_g * ctx.cos_theta)
        / ctx.sin_sq;
    let k1_num = ctx.cos_theta * ctx.kn_f - ctx.kn_g;
    let k1_sq = k1_num * k1_num / ctx.sin_sq;
    let alpha = (ctx.kn_f - ctx.kn_g * ctx.cos_theta) / ctx.sin_sq;
    let beta = (ctx.kn_g - ctx.kn_f * ctx.cos_theta) / ctx.sin_sq;
    Ok(CurvatureSample {
        point: p,
        tangent: ctx.tangent,
        gauss_f,
        kn_f: ctx.kn_f,
        kn_g: ctx.kn_g,
        cos_theta: ctx.cos_theta,
        k_sq,
        k1_sq,
        alpha,
        beta,
    })
}
