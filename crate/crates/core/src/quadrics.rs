//! Quadric surfaces: closed-form Gaussian curvature, the candidate cuts on
//! which that curvature is constant, classification of which quadrics carry
//! a proper biharmonic curve, and the explicit squared-geodesic-curvature
//! formulas used to cross-check the generic curvature machinery.

use crate::config::TOL;
use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::numfmt::fmt_f64;
use crate::surface::SurfaceSpec;

/// Outcome of the existence test for proper biharmonic curves on a quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ExistsSphere,
    ExistsSpheroid,
    None,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ExistsSphere => "ExistsSphere",
            Verdict::ExistsSpheroid => "ExistsSpheroid",
            Verdict::None => "None",
        }
    }
}

/// Why no proper biharmonic curve exists, when the verdict is None.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoneReason {
    /// The Gaussian curvature is negative, so k1^2 = K has no solution.
    NegativeCurvature,
    /// k1 is non-constant along every candidate curve (a != b).
    NonConstantK1,
    /// k1 is constant but k1^2 - K never vanishes on an admissible cut.
    ResidualNeverZero,
}

impl NoneReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NoneReason::NegativeCurvature => "NegativeCurvature",
            NoneReason::NonConstantK1 => "NonConstantK1",
            NoneReason::ResidualNeverZero => "ResidualNeverZero",
        }
    }
}

/// Classification result, with the geometry of the biharmonic circles when
/// they exist: the cut parameter d^2 (spheroid case only) and the squared
/// height and radius of the circle(s) x^2 + y^2 = radius^2, z^2 = height^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiharmonicClassification {
    pub verdict: Verdict,
    pub d_sq: Option<f64>,
    pub circle_height_sq: Option<f64>,
    pub circle_radius_sq: Option<f64>,
    pub reason: Option<NoneReason>,
}

impl BiharmonicClassification {
    /// Serializes as a single JSON object with fixed field order:
    /// verdict, d_sq, circle_height_sq, circle_radius_sq, reason.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        out.push_str(&format!("\"verdict\":\"{}\"", self.verdict.as_str()));
        if let Some(d_sq) = self.d_sq {
            out.push_str(&format!(",\"d_sq\":{}", fmt_f64(d_sq)));
        }
        if let Some(h) = self.circle_height_sq {
            out.push_str(&format!(",\"circle_height_sq\":{}", fmt_f64(h)));
        }
        if let Some(r) = self.circle_radius_sq {
            out.push_str(&format!(",\"circle_radius_sq\":{}", fmt_f64(r)));
        }
        if let Some(reason) = self.reason {
            out.push_str(&format!(",\"reason\":\"{}\"", reason.as_str()));
        }
        out.push('}');
        out
    }
}

/// The four polynomial constants of the trigonometric form of k1^2 along
/// the candidate curve of a central quadric (see
/// [`k1_sq_center_parametrized`]).
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(non_snake_case)]
pub struct ProofConstants {
    pub A: f64,
    pub B: f64,
    pub C: f64,
    pub D: f64,
}

/// Evaluates the four constants as polynomials in a, b, c and d.
pub fn proof_constants(a: f64, b: f64, c: f64, d: f64) -> ProofConstants {
    let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
    let (a4, b4, d4) = (a2 * a2, b2 * b2, d2 * d2);
    #[allow(non_snake_case)]
    let A = -8.0 * a4 * b4 * d4 + 8.0 * a4 * b2 * d2 + 3.0 * a4 * c2 * d2 - 3.0 * a4
        + 8.0 * a2 * b4 * d2
        - 6.0 * a2 * b2 * c2 * d2
        - 2.0 * a2 * b2
        + 3.0 * b4 * c2 * d2
        - 3.0 * b4;
    #[allow(non_snake_case)]
    let B = a4 * (2.0 * b2 * d2 - 1.0) - 2.0 * a2 * b4 * d2 + b4;
    #[allow(non_snake_case)]
    let C = -4.0 * a4 * b2 * d2 + a4 * c2 * d2 + 3.0 * a4
        - 4.0 * a2 * b4 * d2
        - 2.0 * a2 * b2 * c2 * d2
        + 2.0 * a2 * b2
        + b4 * c2 * d2
        + 3.0 * b4;
    #[allow(non_snake_case)]
    let D = a4 * (b2 * d2 - 1.0) - a2 * b4 * d2 + b4;
    ProofConstants { A, B, C, D }
}

fn require_positive(value: f64, name: &str) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::Domain {
            detail: format!("parameter {name} must be positive and finite, got {value}"),
        });
    }
    Ok(())
}

/// Gaussian curvature of a quadric by its closed form: for a central
/// quadric xi*zeta / (a^2 b^2 c^2 (x^2/a^4 + y^2/b^4 + z^2/c^4)^2), for a
/// paraboloid eta / (a^2 b^2 (x^2/a^4 + y^2/b^4 + 1)^2).
pub fn gauss_curvature_closed_form(q: &SurfaceSpec, p: Vec3) -> Result<f64> {
    q.check_on_surface(p, TOL.membership, "F")?;
    match q {
        SurfaceSpec::QuadricCenter { a, b, c, xi, zeta } => {
            let s4 = p.x * p.x / a.powi(4) + p.y * p.y / b.powi(4) + p.z * p.z / c.powi(4);
            Ok(xi * zeta / (a * a * b * b * c * c * s4 * s4))
        }
        SurfaceSpec::QuadricParaboloid { a, b, eta } => {
            let s = p.x * p.x / a.powi(4) + p.y * p.y / b.powi(4) + 1.0;
            Ok(eta / (a * a * b * b * s * s))
        }
        other => Err(Error::UnsupportedSurface {
            expected: "quadric-center or paraboloid",
            found: other.kind_name(),
        }),
    }
}

/// The auxiliary surface on which the quadric's Gaussian curvature equals a
/// constant: an ellipsoid-shaped cut at level d for central quadrics (K =
/// xi*zeta/(a^2 b^2 c^2 d^4) there), a cylinder at level e for paraboloids
/// (K = eta/(a^2 b^2 e^4)).
pub fn candidate_cut(q: &SurfaceSpec, level: f64) -> Result<SurfaceSpec> {
    if !level.is_finite() {
        return Err(Error::InadmissibleLevel {
            detail: format!("level must be finite, got {level}"),
        });
    }
    match q {
        SurfaceSpec::QuadricCenter { a, b, c, .. } => {
            if level == 0.0 {
                return Err(Error::InadmissibleLevel {
                    detail: "d = 0 collapses the cut to a single point".into(),
                });
            }
            Ok(SurfaceSpec::CandidateEllipsoid {
                a: *a,
                b: *b,
                c: *c,
                d: level,
            })
        }
        SurfaceSpec::QuadricParaboloid { a, b, .. } => {
            if level * level <= 1.0 {
                return Err(Error::InadmissibleLevel {
                    detail: format!(
                        "cylinder level requires e^2 > 1, got e^2 = {}",
                        level * level
                    ),
                });
            }
            Ok(SurfaceSpec::CandidateCylinder {
                a: *a,
                b: *b,
                e: level,
            })
        }
        other => Err(Error::UnsupportedSurface {
            expected: "quadric-center or paraboloid",
            found: other.kind_name(),
        }),
    }
}

/// Decides whether a quadric admits a proper biharmonic curve.
///
/// Central quadrics admit one exactly when xi = zeta = 1 and a = b: circles
/// of squared radius a^2/2 on the sphere, and on a spheroid the circles cut
/// out by the level d^2 = 1/(ac), at squared radius a^3/(a+c) and squared
/// height c^3/(a+c). Paraboloids never do. Parameter equalities (a = b and
/// so on) are exact floating-point comparisons.
pub fn classify(q: &SurfaceSpec) -> Result<BiharmonicClassification> {
    let none = |reason: NoneReason| BiharmonicClassification {
        verdict: Verdict::None,
        d_sq: None,
        circle_height_sq: None,
        circle_radius_sq: None,
        reason: Some(reason),
    };
    match q {
        SurfaceSpec::QuadricCenter { a, b, c, xi, zeta } => {
            if xi * zeta < 0.0 {
                return Ok(none(NoneReason::NegativeCurvature));
            }
            if *xi == 1.0 {
                // Ellipsoid branch.
                if a != b {
                    return Ok(none(NoneReason::NonConstantK1));
                }
                if a == c {
                    return Ok(BiharmonicClassification {
                        verdict: Verdict::ExistsSphere,
                        d_sq: None,
                        circle_height_sq: Some(a * a / 2.0),
                        circle_radius_sq: Some(a * a / 2.0),
                        reason: None,
                    });
                }
                Ok(BiharmonicClassification {
                    verdict: Verdict::ExistsSpheroid,
                    d_sq: Some(1.0 / (a * c)),
                    circle_height_sq: Some(c * c * c / (a + c)),
                    circle_radius_sq: Some(a * a * a / (a + c)),
                    reason: None,
                })
            } else {
                // Two-sheet branch (xi = zeta = -1), rotational about x.
                if b != c {
                    Ok(none(NoneReason::NonConstantK1))
                } else {
                    Ok(none(NoneReason::ResidualNeverZero))
                }
            }
        }
        SurfaceSpec::QuadricParaboloid { a, b, eta } => {
            if *eta < 0.0 {
                Ok(none(NoneReason::NegativeCurvature))
            } else if a != b {
                Ok(none(NoneReason::NonConstantK1))
            } else {
                Ok(none(NoneReason::ResidualNeverZero))
            }
        }
        other => Err(Error::UnsupportedSurface {
            expected: "quadric-center or paraboloid",
            found: other.kind_name(),
        }),
    }
}

/// The value of k1^2 - K along the candidate circle of an a = b spheroid:
/// (1 - a^2 c^2 d^4) / (a^4 c^2 d^4 (c^2 d^2 - 1)). Zero exactly at the
/// biharmonic level d^2 = 1/(ac). Requires the regime c^2 d^2 > 1 in which
/// the displayed denominator is positive.
pub fn spheroid_residual(a: f64, c: f64, d: f64) -> Result<f64> {
    require_positive(a, "a")?;
    require_positive(c, "c")?;
    let d2 = d * d;
    if c * c * d2 <= 1.0 {
        return Err(Error::RealCurveCondition {
            detail: format!("requires c^2 d^2 > 1, got {}", c * c * d2),
        });
    }
    let d4 = d2 * d2;
    Ok((1.0 - a * a * c * c * d4) / (a.powi(4) * c * c * d4 * (c * c * d2 - 1.0)))
}

/// The value of k1^2 - K along the candidate curve of a two-sheet
/// hyperboloid with b = c (rotational about x):
/// (a^2 c^2 d^4 + 1) / (a^2 c^4 d^4 (a^2 d^2 - 1)). Strictly positive for
/// every admissible d (a^2 d^2 > 1), which is why no such quadric carries a
/// proper biharmonic curve.
pub fn two_sheet_residual(a: f64, c: f64, d: f64) -> Result<f64> {
    require_positive(a, "a")?;
    require_positive(c, "c")?;
    let d2 = d * d;
    if a * a * d2 <= 1.0 {
        return Err(Error::RealCurveCondition {
            detail: format!("requires a^2 d^2 > 1, got {}", a * a * d2),
        });
    }
    let d4 = d2 * d2;
    Ok((a * a * c * c * d4 + 1.0) / (a * a * c.powi(4) * d4 * (a * a * d2 - 1.0)))
}

/// k1^2 on the intersection of the ellipsoid (xi = zeta = 1) with its
/// candidate cut at level d, evaluated from the rational closed form
/// (d^2 l4 - s6 l6)^2 / (d^2 l8^2 (d^2 s8 - s6^2)) where
/// l_n = a^n y^2 z^2 (b^2-c^2)^2 + b^n x^2 z^2 (a^2-c^2)^2
///     + c^n x^2 y^2 (a^2-b^2)^2 and s_n = x^2/a^n + y^2/b^n + z^2/c^n.
pub fn k1_sq_center_closed_form(a: f64, b: f64, c: f64, d: f64, p: Vec3) -> Result<f64> {
    require_positive(a, "a")?;
    require_positive(b, "b")?;
    require_positive(c, "c")?;
    let quadric = SurfaceSpec::QuadricCenter {
        a,
        b,
        c,
        xi: 1.0,
        zeta: 1.0,
    };
    let cut = SurfaceSpec::CandidateEllipsoid { a, b, c, d };
    quadric.check_on_surface(p, TOL.membership, "F")?;
    cut.check_on_surface(p, TOL.membership, "G")?;

    let (x2, y2, z2) = (p.x * p.x, p.y * p.y, p.z * p.z);
    let (bc, ac, ab) = (b * b - c * c, a * a - c * c, a * a - b * b);
    let lambda = |n: i32| {
        a.powi(n) * y2 * z2 * bc * bc
            + b.powi(n) * x2 * z2 * ac * ac
            + c.powi(n) * x2 * y2 * ab * ab
    };
    let (l4, l6, l8) = (lambda(4), lambda(6), lambda(8));
    let s6 = x2 / a.powi(6) + y2 / b.powi(6) + z2 / c.powi(6);
    let s8 = x2 / a.powi(8) + y2 / b.powi(8) + z2 / c.powi(8);
    let d2 = d * d;

    let num = d2 * l4 - s6 * l6;
    let den = d2 * l8 * l8 * (d2 * s8 - s6 * s6);
    if den.abs() < 1e-300 {
        return Err(Error::ZeroDenominator {
            detail: "k1^2 closed form is indeterminate here (the point sees no axis asymmetry)",
        });
    }
    Ok(num * num / den)
}

/// The point gamma(u) of the trigonometric parametrization of the candidate
/// curve: x = r1 cos u, y = r2 sin u, z = c sqrt(1 - x^2/a^2 - y^2/b^2) with
/// r1^2 = a^4 (1 - c^2 d^2)/(a^2 - c^2), r2^2 = b^4 (1 - c^2 d^2)/(b^2 - c^2).
/// Errors when any of the three squared quantities is negative, i.e. when
/// the printed square roots would be imaginary for these parameters.
pub fn center_curve_point(a: f64, b: f64, c: f64, d: f64, u: f64) -> Result<Vec3> {
    require_positive(a, "a")?;
    require_positive(b, "b")?;
    require_positive(c, "c")?;
    if a == c || b == c {
        return Err(Error::RegimeViolation {
            detail: "parametrization requires a != c and b != c".into(),
        });
    }
    let w = 1.0 - c * c * d * d;
    let r1_sq = a.powi(4) * w / (a * a - c * c);
    let r2_sq = b.powi(4) * w / (b * b - c * c);
    if r1_sq < 0.0 || r2_sq < 0.0 {
        return Err(Error::RegimeViolation {
            detail: format!(
                "imaginary radius: r1^2 = {r1_sq}, r2^2 = {r2_sq}; \
                 the curve is not real for these parameters"
            ),
        });
    }
    let x = r1_sq.sqrt() * u.cos();
    let y = r2_sq.sqrt() * u.sin();
    let q = 1.0 - x * x / (a * a) - y * y / (b * b);
    if q < 0.0 {
        return Err(Error::RegimeViolation {
            detail: format!("imaginary height: z^2/c^2 = {q}"),
        });
    }
    Ok(Vec3::new(x, y, c * q.sqrt()))
}

/// k1^2 along the candidate curve of a central quadric in its trigonometric
/// form: 8 (A + 4(c^2 d^2 - 1) B cos 2u + (a^2-b^2)^2 (c^2 d^2 - 1) cos 4u)^2
/// divided by d^2 (c^2 d^2 - 1) times the cube of
/// (C + 4 D cos 2u - (a^2-b^2)^2 (c^2 d^2 - 1) cos 4u), with A, B, C, D from
/// [`proof_constants`]. Evaluated as a function of u for any a >= b with
/// c^2 d^2 > 1; use [`center_curve_point`] to test whether the curve itself
/// is real.
pub fn k1_sq_center_parametrized(a: f64, b: f64, c: f64, d: f64, u: f64) -> Result<f64> {
    require_positive(a, "a")?;
    require_positive(b, "b")?;
    require_positive(c, "c")?;
    if a < b {
        return Err(Error::RegimeViolation {
            detail: format!("requires a >= b, got a = {a}, b = {b}"),
        });
    }
    let g = c * c * d * d - 1.0;
    if g <= 0.0 {
        return Err(Error::RegimeViolation {
            detail: format!("requires c^2 d^2 > 1, got {}", c * c * d * d),
        });
    }
    let k = proof_constants(a, b, c, d);
    let ab2 = a * a - b * b;
    let quartic = ab2 * ab2 * g;
    let cos2u = (2.0 * u).cos();
    let cos4u = (4.0 * u).cos();
    let num = k.A + 4.0 * g * k.B * cos2u + quartic * cos4u;
    let den_base = k.C + 4.0 * k.D * cos2u - quartic * cos4u;
    let den = d * d * g * den_base.powi(3);
    if den.abs() < 1e-300 {
        return Err(Error::ZeroDenominator {
            detail: "trigonometric k1^2 denominator vanished",
        });
    }
    Ok(8.0 * num * num / den)
}

/// k1^2 on the intersection of a paraboloid (eta = 1) with its candidate
/// cylinder at level e: (l6^2 - a^6 b^6 e^2 l4)^2 /
/// (e^2 (l8 + x^2 y^2 (a^2-b^2)^2)^2 (a^4 b^4 e^2 l8 - l6^2)) with
/// l_n = b^n x^2 + a^n y^2.
pub fn k1_sq_paraboloid_closed_form(a: f64, b: f64, e: f64, p: Vec3) -> Result<f64> {
    require_positive(a, "a")?;
    require_positive(b, "b")?;
    if e * e <= 1.0 {
        return Err(Error::RegimeViolation {
            detail: format!("requires e^2 > 1, got {}", e * e),
        });
    }
    let paraboloid = SurfaceSpec::QuadricParaboloid { a, b, eta: 1.0 };
    let cylinder = SurfaceSpec::CandidateCylinder { a, b, e };
    paraboloid.check_on_surface(p, TOL.membership, "F")?;
    cylinder.check_on_surface(p, TOL.membership, "G")?;

    let (x2, y2) = (p.x * p.x, p.y * p.y);
    let lambda = |n: i32| b.powi(n) * x2 + a.powi(n) * y2;
    let (l4, l6, l8) = (lambda(4), lambda(6), lambda(8));
    let e2 = e * e;
    let a6b6 = a.powi(6) * b.powi(6);
    let a4b4 = a.powi(4) * b.powi(4);
    let ab2 = a * a - b * b;

    let num = l6 * l6 - a6b6 * e2 * l4;
    let mixed = l8 + x2 * y2 * ab2 * ab2;
    let den = e2 * mixed * mixed * (a4b4 * e2 * l8 - l6 * l6);
    if den.abs() < 1e-300 {
        return Err(Error::ZeroDenominator {
            detail: "paraboloid k1^2 denominator vanished",
        });
    }
    Ok(num * num / den)
}

/// The two distinguished points of the paraboloid candidate curve (its
/// intersections with the coordinate planes x = 0 and y = 0) together with
/// the closed-form k1^2 at each. A proper biharmonic curve would need
/// k1^2 constant, so k1_sq_p1 != k1_sq_p2 rules it out when a != b.
#[derive(Debug, Clone, Copy)]
pub struct ObstructionPoints {
    pub p1: Vec3,
    pub p2: Vec3,
    pub k1_sq_p1: f64,
    pub k1_sq_p2: f64,
}

pub fn paraboloid_obstruction_points(a: f64, b: f64, e: f64) -> Result<ObstructionPoints> {
    require_positive(a, "a")?;
    require_positive(b, "b")?;
    let e2 = e * e;
    if e2 <= 1.0 {
        return Err(Error::RegimeViolation {
            detail: format!("requires e^2 > 1, got {e2}"),
        });
    }
    let m = e2 - 1.0;
    let (a2, b2) = (a * a, b * b);
    let p1 = Vec3::new(0.0, b2 * m.sqrt(), b2 * m / 2.0);
    let p2 = Vec3::new(a2 * m.sqrt(), 0.0, a2 * m / 2.0);
    let n1 = b2 * e2 - a2 * m;
    let n2 = a2 * e2 - b2 * m;
    Ok(ObstructionPoints {
        p1,
        p2,
        k1_sq_p1: n1 * n1 / (a2.powi(4) * e2 * m),
        k1_sq_p2: n2 * n2 / (b2.powi(4) * e2 * m),
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::curvature;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    fn spheroid(a: f64, c: f64) -> SurfaceSpec {
        SurfaceSpec::QuadricCenter {
            a,
            b: a,
            c,
            xi: 1.0,
            zeta: 1.0,
        }
    }

    #[test]
    fn proof_constants_match_hand_evaluated_polynomials() {
        let k = proof_constants(1.2, 1.0, 0.5, 1.5f64.sqrt());
        assert!(close(k.A, -7.0446, 1e-12));
        assert!(close(k.B, 0.8272, 1e-12));
        assert!(close(k.C, -8.9082, 1e-12));
        assert!(close(k.D, -0.1232, 1e-12));

        let k = proof_constants(2.0, 1.5, 3.0, 0.2f64.sqrt());
        assert!(close(k.A, -0.57, 1e-12));
        assert!(close(k.B, -4.6375, 1e-12));
        assert!(close(k.C, 41.7, 1e-12));
        assert!(close(k.D, -7.7875, 1e-12));
    }

    #[test]
    fn sphere_curvature_is_inverse_square_radius() {
        for r in [0.5, 1.0, 3.0] {
            let s = SurfaceSpec::QuadricCenter {
                a: r,
                b: r,
                c: r,
                xi: 1.0,
                zeta: 1.0,
            };
            let p = Vec3::new(0.0, 0.0, r);
            let k = gauss_curvature_closed_form(&s, p).unwrap();
            assert!(close(k, 1.0 / (r * r), 1e-12));
        }
    }

    #[test]
    fn spheroid_pole_closed_form_matches_generic() {
        let s = spheroid(1.0, 2.0);
        let p = Vec3::new(0.0, 0.0, 2.0);
        let closed = gauss_curvature_closed_form(&s, p).unwrap();
        assert!(close(closed, 4.0, 1e-12));
        let generic = curvature::gauss_curvature(&s, p).unwrap();
        assert!(close(closed, generic, 1e-10));
    }

    #[test]
    fn mixed_signs_give_negative_curvature() {
        let s = SurfaceSpec::QuadricCenter {
            a: 1.0,
            b: 1.5,
            c: 2.0,
            xi: 1.0,
            zeta: -1.0,
        };
        // One-sheet hyperboloid point with y = 0: x^2 - z^2/4 = 1.
        let p = Vec3::new(1.25, 0.0, 1.5);
        assert!(s.evaluate(p).unwrap().abs() < 1e-12);
        assert!(gauss_curvature_closed_form(&s, p).unwrap() < 0.0);
    }

    #[test]
    fn curvature_is_constant_on_the_candidate_cut() {
        // Prolate spheroid a=1, c=2, level d^2 = 0.6: the intersection has
        // x^2+y^2 = 7/15, z^2 = 32/15 (solve the 2x2 system in those two
        // unknowns), and K there must be 1/(a^4 c^2 d^4).
        let d = 0.6f64.sqrt();
        let s = spheroid(1.0, 2.0);
        let cut = candidate_cut(&s, d).unwrap();
        let r = (7.0f64 / 15.0).sqrt();
        let z = (32.0f64 / 15.0).sqrt();
        for angle in [0.0f64, 0.9, 2.4] {
            let p = Vec3::new(r * angle.cos(), r * angle.sin(), z);
            assert!(cut.evaluate(p).unwrap().abs() < 1e-13);
            let k = gauss_curvature_closed_form(&s, p).unwrap();
            assert!(close(k, 1.0 / (4.0 * 0.36), 1e-12));
        }
    }

    #[test]
    fn paraboloid_cut_curvature_constant() {
        let q = SurfaceSpec::QuadricParaboloid {
            a: 2.0,
            b: 1.0,
            eta: 1.0,
        };
        let e = 2.0f64.sqrt();
        let cut = candidate_cut(&q, e).unwrap();
        for t in [0.0f64, 0.6, 2.0] {
            let x = 4.0 * t.cos();
            let y = t.sin();
            let z = (x * x / 4.0 + y * y) / 2.0;
            let p = Vec3::new(x, y, z);
            assert!(q.evaluate(p).unwrap().abs() < 1e-12);
            assert!(cut.evaluate(p).unwrap().abs() < 1e-12);
            let k = gauss_curvature_closed_form(&q, p).unwrap();
            assert!(close(k, 1.0 / 16.0, 1e-12));
        }
    }

    #[test]
    fn degenerate_cut_levels_are_rejected() {
        let q = SurfaceSpec::QuadricParaboloid {
            a: 1.0,
            b: 1.0,
            eta: 1.0,
        };
        assert!(matches!(
            candidate_cut(&q, 1.0),
            Err(Error::InadmissibleLevel { .. })
        ));
        assert!(matches!(
            candidate_cut(&spheroid(1.0, 2.0), 0.0),
            Err(Error::InadmissibleLevel { .. })
        ));
        assert!(matches!(
            candidate_cut(&SurfaceSpec::PlaneZ { d: 0.0 }, 1.5),
            Err(Error::UnsupportedSurface { .. })
        ));
    }

    #[test]
    fn sphere_classification() {
        let r = classify(&spheroid(1.0, 1.0)).unwrap();
        assert_eq!(r.verdict, Verdict::ExistsSphere);
        assert_eq!(r.circle_radius_sq, Some(0.5));
        assert_eq!(r.circle_height_sq, Some(0.5));
        assert_eq!(r.d_sq, None);
        assert_eq!(r.reason, None);
    }

    #[test]
    fn spheroid_classification_both_orientations() {
        let r = classify(&spheroid(1.0, 2.0)).unwrap();
        assert_eq!(r.verdict, Verdict::ExistsSpheroid);
        assert!(close(r.d_sq.unwrap(), 0.5, 1e-15));
        assert!(close(r.circle_height_sq.unwrap(), 8.0 / 3.0, 1e-15));
        assert!(close(r.circle_radius_sq.unwrap(), 1.0 / 3.0, 1e-15));

        let r = classify(&spheroid(2.0, 0.3)).unwrap();
        assert_eq!(r.verdict, Verdict::ExistsSpheroid);
        assert!(close(r.d_sq.unwrap(), 1.0 / 0.6, 1e-15));
        assert!(close(r.circle_height_sq.unwrap(), 0.027 / 2.3, 1e-14));
        assert!(close(r.circle_radius_sq.unwrap(), 8.0 / 2.3, 1e-14));
    }

    #[test]
    fn none_branches_carry_the_right_reason() {
        let one_sheet = SurfaceSpec::QuadricCenter {
            a: 1.0,
            b: 1.0,
            c: 2.0,
            xi: 1.0,
            zeta: -1.0,
        };
        assert_eq!(
            classify(&one_sheet).unwrap().reason,
            Some(NoneReason::NegativeCurvature)
        );

        let triaxial = SurfaceSpec::QuadricCenter {
            a: 1.2,
            b: 1.0,
            c: 0.5,
            xi: 1.0,
            zeta: 1.0,
        };
        assert_eq!(
            classify(&triaxial).unwrap().reason,
            Some(NoneReason::NonConstantK1)
        );

        let two_sheet_round = SurfaceSpec::QuadricCenter {
            a: 1.4,
            b: 0.75,
            c: 0.75,
            xi: -1.0,
            zeta: -1.0,
        };
        assert_eq!(
            classify(&two_sheet_round).unwrap().reason,
            Some(NoneReason::ResidualNeverZero)
        );

        let two_sheet_skew = SurfaceSpec::QuadricCenter {
            a: 1.4,
            b: 0.7,
            c: 0.9,
            xi: -1.0,
            zeta: -1.0,
        };
        assert_eq!(
            classify(&two_sheet_skew).unwrap().reason,
            Some(NoneReason::NonConstantK1)
        );

        let round_paraboloid = SurfaceSpec::QuadricParaboloid {
            a: 1.0,
            b: 1.0,
            eta: 1.0,
        };
        assert_eq!(
            classify(&round_paraboloid).unwrap().reason,
            Some(NoneReason::ResidualNeverZero)
        );

        let skew_paraboloid = SurfaceSpec::QuadricParaboloid {
            a: 1.0,
            b: 2.0,
            eta: 1.0,
        };
        assert_eq!(
            classify(&skew_paraboloid).unwrap().reason,
            Some(NoneReason::NonConstantK1)
        );

        let saddle = SurfaceSpec::QuadricParaboloid {
            a: 1.0,
            b: 1.0,
            eta: -1.0,
        };
        assert_eq!(
            classify(&saddle).unwrap().reason,
            Some(NoneReason::NegativeCurvature)
        );
    }

    #[test]
    fn classification_json_shape() {
        let r = classify(&spheroid(1.0, 2.0)).unwrap();
        let json = r.to_json();
        assert!(json.starts_with("{\"verdict\":\"ExistsSpheroid\",\"d_sq\":5.0000000000000000e-1"));
        assert!(json.contains("\"circle_height_sq\":"));
        assert!(json.ends_with("}"));

        let r = classify(&SurfaceSpec::QuadricParaboloid {
            a: 1.0,
            b: 2.0,
            eta: 1.0,
        })
        .unwrap();
        assert_eq!(
            r.to_json(),
            "{\"verdict\":\"None\",\"reason\":\"NonConstantK1\"}"
        );
    }

    #[test]
    fn spheroid_residual_vanishes_exactly_at_the_biharmonic_level() {
        let r = spheroid_residual(1.0, 2.0, 0.5f64.sqrt()).unwrap();
        assert!(r.abs() < 1e-15);
    }

    #[test]
    fn spheroid_residual_off_level_value() {
        let r = spheroid_residual(1.0, 2.0, 0.6f64.sqrt()).unwrap();
        assert!(close(r, -55.0 / 252.0, 1e-13));
        assert!(matches!(
            spheroid_residual(1.0, 2.0, 0.4),
            Err(Error::RealCurveCondition { .. })
        ));
    }

    #[test]
    fn two_sheet_residual_frozen_values_and_positivity() {
        let r = two_sheet_residual(1.4, 0.75, (2.0f64 / 3.0).sqrt()).unwrap();
        assert!(close(r, 59600.0 / 3381.0, 1e-12));
        let r = two_sheet_residual(1.4, 0.75, 2.0f64.sqrt()).unwrap();
        assert!(close(r, 216400.0 / 289737.0, 1e-12));
        for i in 0..100 {
            let d2 = 1.0 / (1.4 * 1.4) + 0.05 * (i as f64 + 1.0);
            let r = two_sheet_residual(1.4, 0.75, d2.sqrt()).unwrap();
            assert!(r > 0.0, "d2 = {d2}");
        }
        assert!(matches!(
            two_sheet_residual(1.4, 0.75, 0.5),
            Err(Error::RealCurveCondition { .. })
        ));
    }

    #[test]
    fn center_closed_form_on_the_biharmonic_circle() {
        let p = Vec3::new((1.0f64 / 3.0).sqrt(), 0.0, (8.0f64 / 3.0).sqrt());
        let k1 = k1_sq_center_closed_form(1.0, 1.0, 2.0, 0.5f64.sqrt(), p).unwrap();
        assert!(close(k1, 1.0, 1e-12));
    }

    #[test]
    fn center_closed_form_is_rotation_invariant_when_a_equals_b() {
        let d = 0.6f64.sqrt();
        let r = (7.0f64 / 15.0).sqrt();
        let z = (32.0f64 / 15.0).sqrt();
        let k0 = k1_sq_center_closed_form(1.0, 1.0, 2.0, d, Vec3::new(r, 0.0, z)).unwrap();
        for angle in [0.7f64, 1.9, 4.4] {
            let p = Vec3::new(r * angle.cos(), r * angle.sin(), z);
            let k = k1_sq_center_closed_form(1.0, 1.0, 2.0, d, p).unwrap();
            assert!(close(k, k0, 1e-12));
        }
    }

    #[test]
    fn center_closed_form_rejects_off_curve_points() {
        let res = k1_sq_center_closed_form(1.0, 1.0, 2.0, 0.5f64.sqrt(), Vec3::new(1.0, 0.0, 0.0));
        assert!(matches!(res, Err(Error::OffSurface { .. })));
    }

    #[test]
    fn parametrized_point_frozen_coordinates() {
        let (a, b, c, d) = (1.2, 1.0, 2.0, 0.4f64.sqrt());
        let p = center_curve_point(a, b, c, d, 0.7).unwrap();
        assert!(close(p.x, 0.5331997896893420081686, 1e-14));
        assert!(close(p.y, 0.2881029081942351829725, 1e-14));
        assert!(close(p.z, 1.696543260781296358240, 1e-14));
        // The point lies on both surfaces.
        let f = SurfaceSpec::QuadricCenter {
            a,
            b,
            c,
            xi: 1.0,
            zeta: 1.0,
        };
        let g = SurfaceSpec::CandidateEllipsoid { a, b, c, d };
        assert!(f.evaluate(p).unwrap().abs() < 1e-14);
        assert!(g.evaluate(p).unwrap().abs() < 1e-14);
    }

    #[test]
    fn parametrized_k1_frozen_value_and_closed_form_agreement() {
        let (a, b, c, d) = (1.2, 1.0, 2.0, 0.4f64.sqrt());
        let k1 = k1_sq_center_parametrized(a, b, c, d, 0.7).unwrap();
        assert!(close(k1, 1.117084678569664354806, 1e-13));
        let p = center_curve_point(a, b, c, d, 0.7).unwrap();
        let k1_closed = k1_sq_center_closed_form(a, b, c, d, p).unwrap();
        assert!(close(k1, k1_closed, 1e-12));
    }

    #[test]
    fn parametrized_k1_constant_when_a_equals_b() {
        // Formal constancy holds even where the curve itself is imaginary.
        let (a, b, c, d) = (1.0, 1.0, 0.5, 8.0f64.sqrt());
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..64 {
            let u = i as f64 * std::f64::consts::TAU / 64.0;
            let k1 = k1_sq_center_parametrized(a, b, c, d, u).unwrap();
            lo = lo.min(k1);
            hi = hi.max(k1);
        }
        assert!(hi - lo < 1e-10, "spread {}", hi - lo);
        // And the constant matches (1 - a^2 d^2)/(a^4 d^2 (c^2 d^2 - 1)).
        assert!(close(lo, (1.0 - 8.0) / (8.0 * (0.25 * 8.0 - 1.0)), 1e-12));
    }

    #[test]
    fn parametrized_k1_oscillates_when_a_differs_from_b() {
        let (a, b, c, d) = (1.2, 1.0, 0.5, 8.0f64.sqrt());
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..64 {
            let u = i as f64 * std::f64::consts::TAU / 64.0;
            let k1 = k1_sq_center_parametrized(a, b, c, d, u).unwrap();
            lo = lo.min(k1);
            hi = hi.max(k1);
        }
        assert!(hi - lo > 1e-3, "spread {}", hi - lo);
    }

    #[test]
    fn parametrized_k1_is_even_in_the_half_period() {
        let (a, b, c, d) = (1.2, 1.0, 2.0, 0.4f64.sqrt());
        let at_zero = k1_sq_center_parametrized(a, b, c, d, 0.0).unwrap();
        let at_pi = k1_sq_center_parametrized(a, b, c, d, std::f64::consts::PI).unwrap();
        assert!(close(at_zero, at_pi, 1e-12));
    }

    #[test]
    fn parametrization_flags_imaginary_radii() {
        // In the c-smallest regime the printed radicals are imaginary.
        let res = center_curve_point(1.2, 1.0, 0.5, 8.0f64.sqrt(), 0.3);
        assert!(matches!(res, Err(Error::RegimeViolation { .. })));
        // The regime checks on the formula itself.
        assert!(matches!(
            k1_sq_center_parametrized(1.0, 1.2, 2.0, 0.4f64.sqrt(), 0.0),
            Err(Error::RegimeViolation { .. })
        ));
        assert!(matches!(
            k1_sq_center_parametrized(1.2, 1.0, 2.0, 0.1, 0.0),
            Err(Error::RegimeViolation { .. })
        ));
    }

    #[test]
    fn paraboloid_closed_form_round_case() {
        let e = 2.0f64.sqrt();
        for t in [0.0f64, 1.2, 3.9] {
            let p = Vec3::new(t.cos(), t.sin(), 0.5);
            let k1 = k1_sq_paraboloid_closed_form(1.0, 1.0, e, p).unwrap();
            assert!(close(k1, 0.5, 1e-12));
        }
    }

    #[test]
    fn paraboloid_closed_form_frozen_value() {
        let p = Vec3::new(
            3.301342459638713188964,
            0.5646424733950353572009,
            1.521768315857505183229,
        );
        let k1 = k1_sq_paraboloid_closed_form(2.0, 1.0, 2.0f64.sqrt(), p).unwrap();
        assert!(close(k1, 0.01879370870928012290830, 1e-12));
    }

    #[test]
    fn obstruction_points_and_values() {
        let o = paraboloid_obstruction_points(2.0, 1.0, 2.0f64.sqrt()).unwrap();
        assert!(close(o.k1_sq_p1, 1.0 / 128.0, 1e-14));
        assert!(close(o.k1_sq_p2, 24.5, 1e-14));

        let q = SurfaceSpec::QuadricParaboloid {
            a: 2.0,
            b: 1.0,
            eta: 1.0,
        };
        let cyl = SurfaceSpec::CandidateCylinder {
            a: 2.0,
            b: 1.0,
            e: 2.0f64.sqrt(),
        };
        for p in [o.p1, o.p2] {
            assert!(q.evaluate(p).unwrap().abs() < 1e-14);
            assert!(cyl.evaluate(p).unwrap().abs() < 1e-14);
        }

        // The closed form reproduces the same two values.
        let k1 = k1_sq_paraboloid_closed_form(2.0, 1.0, 2.0f64.sqrt(), o.p1).unwrap();
        assert!(close(k1, o.k1_sq_p1, 1e-12));
        let k2 = k1_sq_paraboloid_closed_form(2.0, 1.0, 2.0f64.sqrt(), o.p2).unwrap();
        assert!(close(k2, o.k1_sq_p2, 1e-12));

        let sym = paraboloid_obstruction_points(1.3, 1.3, 1.7).unwrap();
        assert!(close(sym.k1_sq_p1, sym.k1_sq_p2, 1e-14));

        assert!(matches!(
            paraboloid_obstruction_points(1.0, 1.0, 0.9),
            Err(Error::RegimeViolation { .. })
        ));
    }
}
