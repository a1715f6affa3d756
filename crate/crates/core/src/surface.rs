//! Implicit surface families with exact analytic value, gradient, and Hessian.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{Mat3, Vec3};

/// Default cap on the total degree of a trivariate polynomial.
pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// One monomial coeff * x^px * y^py * z^pz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub px: u32,
    pub py: u32,
    pub pz: u32,
}

impl Term {
    pub const fn new(coeff: f64, px: u32, py: u32, pz: u32) -> Term {
        Term { coeff, px, py, pz }
    }

    fn degree(&self) -> u32 {
        self.px + self.py + self.pz
    }

    fn eval(&self, p: Vec3) -> f64 {
        self.coeff * p.x.powi(self.px as i32) * p.y.powi(self.py as i32) * p.z.powi(self.pz as i32)
    }

    /// Formal derivative along axis 0 (x), 1 (y), or 2 (z). None when the
    /// term is constant in that variable.
    fn derive(&self, axis: usize) -> Option<Term> {
        let (e, dx, dy, dz) = match axis {
            0 => (self.px, 1, 0, 0),
            1 => (self.py, 0, 1, 0),
            _ => (self.pz, 0, 0, 1),
        };
        if e == 0 {
            return None;
        }
        Some(Term {
            coeff: self.coeff * e as f64,
            px: self.px - dx,
            py: self.py - dy,
            pz: self.pz - dz,
        })
    }
}

fn derive_terms(terms: &[Term], axis: usize) -> Vec<Term> {
    terms.iter().filter_map(|t| t.derive(axis)).collect()
}

fn eval_terms(terms: &[Term], p: Vec3) -> f64 {
    terms.iter().map(|t| t.eval(p)).sum()
}

/// A trivariate polynomial with precomputed formal first and second
/// derivatives, so gradient and Hessian are exact (no numerical
/// differentiation).
#[derive(Debug, Clone)]
pub struct Poly3 {
    terms: Vec<Term>,
    grad: [Vec<Term>; 3],
    // Upper triangle of the Hessian: xx, xy, xz, yy, yz, zz.
    hess: [Vec<Term>; 6],
    cap: u32,
}

impl Poly3 {
    /// Builds a polynomial from raw terms, merging duplicates and enforcing
    /// the total-degree cap.
    pub fn from_terms(raw: Vec<Term>, cap: u32) -> Result<Poly3> {
        let mut terms: Vec<Term> = Vec::new();
        for t in raw {
            if !t.coeff.is_finite() {
                return Err(Error::Parse {
                    message: format!("non-finite coefficient {:?}", t.coeff),
                });
            }
            if t.degree() > cap {
                return Err(Error::DegreeCap {
                    degree: t.degree(),
                    cap,
                });
            }
            match terms
                .iter_mut()
                .find(|u| u.px == t.px && u.py == t.py && u.pz == t.pz)
            {
                Some(u) => u.coeff += t.coeff,
                None => terms.push(t),
            }
        }
        terms.retain(|t| t.coeff != 0.0);
        terms.sort_by_key(|t| std::cmp::Reverse((t.px, t.py, t.pz)));

        let grad = [
            derive_terms(&terms, 0),
            derive_terms(&terms, 1),
            derive_terms(&terms, 2),
        ];
        let hess = [
            derive_terms(&grad[0], 0),
            derive_terms(&grad[0], 1),
            derive_terms(&grad[0], 2),
            derive_terms(&grad[1], 1),
            derive_terms(&grad[1], 2),
            derive_terms(&grad[2], 2),
        ];
        Ok(Poly3 {
            terms,
            grad,
            hess,
            cap,
        })
    }

    /// Parses monomial-sum syntax with the default degree cap, e.g.
    /// "x^2+y^2+z^2-1", "2.5x^2y - 3*x*y*z + 0.5".
    pub fn parse(src: &str) -> Result<Poly3> {
        Poly3::parse_with_cap(src, DEFAULT_DEGREE_CAP)
    }

    /// Parses monomial-sum syntax: terms joined by + or -, each an optional
    /// decimal coefficient followed by factors x, y, z with optional ^integer
    /// exponents; '*' between factors is optional, whitespace is ignored.
    pub fn parse_with_cap(src: &str, cap: u32) -> Result<Poly3> {
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0usize;
        let mut terms = Vec::new();
        let err = |message: String| Error::Parse { message };

        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };

        skip_ws(&mut i);
        if i == chars.len() {
            return Err(err("empty polynomial".into()));
        }
        while i < chars.len() {
            let mut sign = 1.0;
            skip_ws(&mut i);
            if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -1.0;
                }
                i += 1;
                skip_ws(&mut i);
            }
            if i == chars.len() {
                return Err(err("dangling sign at end of polynomial".into()));
            }

            let mut coeff = sign;
            let mut px = 0u32;
            let mut py = 0u32;
            let mut pz = 0u32;
            let mut saw_factor = false;

            // Optional leading numeric coefficient.
            if chars[i].is_ascii_digit() || chars[i] == '.' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let value: f64 = text
                    .parse()
                    .map_err(|_| err(format!("bad number '{text}' at position {start}")))?;
                coeff *= value;
                saw_factor = true;
            }

            // Variable factors.
            loop {
                skip_ws(&mut i);
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                    skip_ws(&mut i);
                }
                if i == chars.len() {
                    break;
                }
                let var = chars[i];
                if var != 'x' && var != 'y' && var != 'z' {
                    break;
                }
                i += 1;
                let mut exp = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(err(format!(
                            "expected integer exponent after '^' at position {start}"
                        )));
                    }
                    let text: String = chars[start..i].iter().collect();
                    exp = text
                        .parse()
                        .map_err(|_| err(format!("bad exponent '{text}'")))?;
                }
                match var {
                    'x' => px += exp,
                    'y' => py += exp,
                    _ => pz += exp,
                }
                saw_factor = true;
            }

            if !saw_factor {
                return Err(err(format!(
                    "unexpected character '{}' at position {i}",
                    chars[i]
                )));
            }
            terms.push(Term::new(coeff, px, py, pz));

            skip_ws(&mut i);
            if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                return Err(err(format!(
                    "expected '+' or '-' before '{}' at position {i}",
                    chars[i]
                )));
            }
        }
        Poly3::from_terms(terms, cap)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    pub fn degree_cap(&self) -> u32 {
        self.cap
    }

    pub fn evaluate(&self, p: Vec3) -> f64 {
        eval_terms(&self.terms, p)
    }

    pub fn gradient(&self, p: Vec3) -> Vec3 {
        Vec3::new(
            eval_terms(&self.grad[0], p),
            eval_terms(&self.grad[1], p),
            eval_terms(&self.grad[2], p),
        )
    }

    pub fn hessian(&self, p: Vec3) -> Mat3 {
        Mat3::symmetric(
            eval_terms(&self.hess[0], p),
            eval_terms(&self.hess[1], p),
            eval_terms(&self.hess[2], p),
            eval_terms(&self.hess[3], p),
            eval_terms(&self.hess[4], p),
            eval_terms(&self.hess[5], p),
        )
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A profile function f(rho) for a surface of revolution z = f(rho),
/// supplied together with its first and second derivatives.
#[derive(Clone)]
pub struct Profile {
    f: ScalarFn,
    df: ScalarFn,
    ddf: ScalarFn,
}

impl Profile {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        ddf: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Profile {
        Profile {
            f: Arc::new(f),
            df: Arc::new(df),
            ddf: Arc::new(ddf),
        }
    }

    pub fn f(&self, rho: f64) -> f64 {
        (self.f)(rho)
    }

    pub fn df(&self, rho: f64) -> f64 {
        (self.df)(rho)
    }

    pub fn ddf(&self, rho: f64) -> f64 {
        (self.ddf)(rho)
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Profile { .. }")
    }
}

/// An implicit surface F(x, y, z) = 0 from one of the supported families.
///
/// Every variant returns the exact analytic gradient and Hessian of its
/// value function; the Hessian is built symmetrically, so entry (i, j)
/// equals entry (j, i) bit for bit.
#[derive(Debug, Clone)]
pub enum SurfaceSpec {
    /// x^2/a^2 + xi y^2/b^2 + zeta z^2/c^2 - 1 with xi, zeta in {-1, +1}.
    QuadricCenter {
        a: f64,
        b: f64,
        c: f64,
        xi: f64,
        zeta: f64,
    },
    /// x^2/a^2 + eta y^2/b^2 - 2z with eta in {-1, +1}.
    QuadricParaboloid { a: f64, b: f64, eta: f64 },
    /// x^2/a^4 + y^2/b^4 + z^2/c^4 - d^2.
    CandidateEllipsoid { a: f64, b: f64, c: f64, d: f64 },
    /// x^2/a^4 + y^2/b^4 - e^2 + 1.
    CandidateCylinder { a: f64, b: f64, e: f64 },
    /// z^(2n)/c^2 + (x^2 + y^2)^n - 1 with integer n >= 1.
    SuperquadricRevolution { n: u32, c: f64 },
    /// z - d.
    PlaneZ { d: f64 },
    /// z - f(sqrt(x^2 + y^2)); defined away from the axis x = y = 0.
    RevolutionGraph { profile: Profile },
    /// A general trivariate polynomial.
    Polynomial(Poly3),
}

impl SurfaceSpec {
    /// Short family name, used in error messages and diagnostics.
    pub fn kind_name(&self) -> &'static str {
        match self {
            SurfaceSpec::QuadricCenter { .. } => "quadric-center",
            SurfaceSpec::QuadricParaboloid { .. } => "paraboloid",
            SurfaceSpec::CandidateEllipsoid { .. } => "candidate-ellipsoid",
            SurfaceSpec::CandidateCylinder { .. } => "candidate-cylinder",
            SurfaceSpec::SuperquadricRevolution { .. } => "superquadric",
            SurfaceSpec::PlaneZ { .. } => "plane",
            SurfaceSpec::RevolutionGraph { .. } => "revolution-graph",
            SurfaceSpec::Polynomial(_) => "poly",
        }
    }

    fn rho_checked(p: Vec3) -> Result<f64> {
        let rho = p.x.hypot(p.y);
        if rho == 0.0 {
            return Err(Error::AxisPoint { rho });
        }
        Ok(rho)
    }

    /// F(p).
    pub fn evaluate(&self, p: Vec3) -> Result<f64> {
        match self {
            SurfaceSpec::QuadricCenter { a, b, c, xi, zeta } => Ok(p.x * p.x / (a * a)
                + xi * p.y * p.y / (b * b)
                + zeta * p.z * p.z / (c * c)
                - 1.0),
            SurfaceSpec::QuadricParaboloid { a, b, eta } => {
                Ok(p.x * p.x / (a * a) + eta * p.y * p.y / (b * b) - 2.0 * p.z)
            }
            SurfaceSpec::CandidateEllipsoid { a, b, c, d } => {
                Ok(p.x * p.x / a.powi(4) + p.y * p.y / b.powi(4) + p.z * p.z / c.powi(4) - d * d)
            }
            SurfaceSpec::CandidateCylinder { a, b, e } => {
                Ok(p.x * p.x / a.powi(4) + p.y * p.y / b.powi(4) - e * e + 1.0)
            }
            SurfaceSpec::SuperquadricRevolution { n, c } => {
                let r2 = p.x * p.x + p.y * p.y;
                Ok(p.z.powi(2 * *n as i32) / (c * c) + r2.powi(*n as i32) - 1.0)
            }
            SurfaceSpec::PlaneZ { d } => Ok(p.z - d),
            SurfaceSpec::RevolutionGraph { profile } => {
                let rho = Self::rho_checked(p)?;
                Ok(p.z - profile.f(rho))
            }
            SurfaceSpec::Polynomial(poly) => Ok(poly.evaluate(p)),
        }
    }

    /// grad F(p), exact per family.
    pub fn gradient(&self, p: Vec3) -> Result<Vec3> {
        match self {
            SurfaceSpec::QuadricCenter { a, b, c, xi, zeta } => Ok(Vec3::new(
                2.0 * p.x / (a * a),
                2.0 * xi * p.y / (b * b),
                2.0 * zeta * p.z / (c * c),
            )),
            SurfaceSpec::QuadricParaboloid { a, b, eta } => Ok(Vec3::new(
                2.0 * p.x / (a * a),
                2.0 * eta * p.y / (b * b),
                -2.0,
            )),
            SurfaceSpec::CandidateEllipsoid { a, b, c, .. } => Ok(Vec3::new(
                2.0 * p.x / a.powi(4),
                2.0 * p.y / b.powi(4),
                2.0 * p.z / c.powi(4),
            )),
            SurfaceSpec::CandidateCylinder { a, b, .. } => {
                Ok(Vec3::new(2.0 * p.x / a.powi(4), 2.0 * p.y / b.powi(4), 0.0))
            }
            SurfaceSpec::SuperquadricRevolution { n, c } => {
                let nf = *n as f64;
                let r2 = p.x * p.x + p.y * p.y;
                let r2n1 = r2.powi(*n as i32 - 1);
                Ok(Vec3::new(
                    2.0 * nf * p.x * r2n1,
                    2.0 * nf * p.y * r2n1,
                    2.0 * nf * p.z.powi(2 * *n as i32 - 1) / (c * c),
                ))
            }
            SurfaceSpec::PlaneZ { .. } => Ok(Vec3::new(0.0, 0.0, 1.0)),
            SurfaceSpec::RevolutionGraph { profile } => {
                let rho = Self::rho_checked(p)?;
                let fp = profile.df(rho);
                Ok(Vec3::new(-fp * p.x / rho, -fp * p.y / rho, 1.0))
            }
            SurfaceSpec::Polynomial(poly) => Ok(poly.gradient(p)),
        }
    }

    /// Hessian of F at p, exact and exactly symmetric.
    pub fn hessian(&self, p: Vec3) -> Result<Mat3> {
        match self {
            SurfaceSpec::QuadricCenter { a, b, c, xi, zeta } => Ok(Mat3::diag(
                2.0 / (a * a),
                2.0 * xi / (b * b),
                2.0 * zeta / (c * c),
            )),
            SurfaceSpec::QuadricParaboloid { a, b, eta } => {
                Ok(Mat3::diag(2.0 / (a * a), 2.0 * eta / (b * b), 0.0))
            }
            SurfaceSpec::CandidateEllipsoid { a, b, c, .. } => Ok(Mat3::diag(
                2.0 / a.powi(4),
                2.0 / b.powi(4),
                2.0 / c.powi(4),
            )),
            SurfaceSpec::CandidateCylinder { a, b, .. } => {
                Ok(Mat3::diag(2.0 / a.powi(4), 2.0 / b.powi(4), 0.0))
            }
            SurfaceSpec::SuperquadricRevolution { n, c } => {
                let nf = *n as f64;
                let r2 = p.x * p.x + p.y * p.y;
                let r2n1 = r2.powi(*n as i32 - 1);
                // The r2^(n-2) factor only appears for n >= 2; skipping it at
                // n = 1 avoids 0 * inf at the axis.
                let (xx_extra, xy, yy_extra) = if *n >= 2 {
                    let r2n2 = r2.powi(*n as i32 - 2);
                    let k = 4.0 * nf * (nf - 1.0) * r2n2;
                    (k * p.x * p.x, k * p.x * p.y, k * p.y * p.y)
                } else {
                    (0.0, 0.0, 0.0)
                };
                Ok(Mat3::symmetric(
                    2.0 * nf * r2n1 + xx_extra,
                    xy,
                    0.0,
                    2.0 * nf * r2n1 + yy_extra,
                    0.0,
                    2.0 * nf * (2.0 * nf - 1.0) * p.z.powi(2 * *n as i32 - 2) / (c * c),
                ))
            }
            SurfaceSpec::PlaneZ { .. } => Ok(Mat3::ZERO),
            SurfaceSpec::RevolutionGraph { profile } => {
                let rho = Self::rho_checked(p)?;
                let fp = profile.df(rho);
                let fpp = profile.ddf(rho);
                let rho2 = rho * rho;
                let rho3 = rho2 * rho;
                Ok(Mat3::symmetric(
                    -(fpp * p.x * p.x / rho2 + fp * p.y * p.y / rho3),
                    p.x * p.y * (fp - fpp * rho) / rho3,
                    0.0,
                    -(fpp * p.y * p.y / rho2 + fp * p.x * p.x / rho3),
                    0.0,
                    0.0,
                ))
            }
            SurfaceSpec::Polynomial(poly) => Ok(poly.hessian(p)),
        }
    }

    /// Checks |F(p)| < tol, naming the surface in the error.
    pub fn check_on_surface(&self, p: Vec3, tol: f64, surface: &'static str) -> Result<()> {
        let v = self.evaluate(p)?;
        if v.abs() >= tol {
            return Err(Error::OffSurface {
                surface,
                residual: v.abs(),
                tol,
            });
        }
        Ok(())
    }
}
