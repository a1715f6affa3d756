//! Plain-text surface specifications: a family name followed by key=value
//! tokens, e.g. `quadric-center a=1 b=1 c=2 xi=1 zeta=1` or
//! `poly "x^2+y^2+z^2-1"`.

use crate::error::{Error, Result};
use crate::revolution;
use crate::surface::{Poly3, SurfaceSpec};

fn parse_err(message: String) -> Error {
    Error::Parse { message }
}

/// Key=value argument list with consumption tracking, so unknown or
/// duplicate keys are reported instead of silently ignored.
pub struct KvArgs {
    pairs: Vec<(String, String)>,
}

impl KvArgs {
    pub fn new(tokens: &[&str]) -> Result<KvArgs> {
        let mut pairs = Vec::new();
        for tok in tokens {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected key=value, got '{tok}'")))?;
            if key.is_empty() || value.is_empty() {
                return Err(parse_err(format!("expected key=value, got '{tok}'")));
            }
            if pairs.iter().any(|(k, _)| k == key) {
                return Err(parse_err(format!("duplicate key '{key}'")));
            }
            pairs.push((key.to_string(), value.to_string()));
        }
        Ok(KvArgs { pairs })
    }

    pub fn take(&mut self, key: &str) -> Result<String> {
        match self.pairs.iter().position(|(k, _)| k == key) {
            Some(i) => Ok(self.pairs.remove(i).1),
            None => Err(parse_err(format!("missing key '{key}'"))),
        }
    }

    pub fn take_real(&mut self, key: &str) -> Result<f64> {
        let text = self.take(key)?;
        let v: f64 = text
            .parse()
            .map_err(|_| parse_err(format!("bad number '{text}' for key '{key}'")))?;
        if !v.is_finite() {
            return Err(parse_err(format!("non-finite value for key '{key}'")));
        }
        Ok(v)
    }

    pub fn take_positive(&mut self, key: &str) -> Result<f64> {
        let v = self.take_real(key)?;
        if v <= 0.0 {
            return Err(parse_err(format!("key '{key}' must be positive, got {v}")));
        }
        Ok(v)
    }

    pub fn take_sign(&mut self, key: &str) -> Result<f64> {
        let v = self.take_real(key)?;
        if v != 1.0 && v != -1.0 {
            return Err(parse_err(format!("key '{key}' must be +1 or -1, got {v}")));
        }
        Ok(v)
    }

    pub fn take_positive_int(&mut self, key: &str) -> Result<u32> {
        let text = self.take(key)?;
        let v: u32 = text
            .parse()
            .map_err(|_| parse_err(format!("bad integer '{text}' for key '{key}'")))?;
        if v == 0 {
            return Err(parse_err(format!("key '{key}' must be at least 1")));
        }
        Ok(v)
    }

    pub fn finish(self) -> Result<()> {
        if let Some((key, _)) = self.pairs.first() {
            return Err(parse_err(format!("unknown key '{key}'")));
        }
        Ok(())
    }
}

/// Parses one surface specification from whitespace-separated tokens.
///
/// Families: `quadric-center a b c xi zeta`, `paraboloid a b eta`,
/// `candidate-ellipsoid a b c d`, `candidate-cylinder a b e`,
/// `superquadric n c`, `plane d`, `revolution-profile c1 c2`, and
/// `poly <monomial sum>` (the rest of the input, quotes optional).
pub fn parse_surface(input: &str) -> Result<SurfaceSpec> {
    let tokens: Vec<&str> = input.split_whitespace().collect();
    let Some((&family, rest)) = tokens.split_first() else {
        return Err(parse_err("empty surface specification".into()));
    };

    if family == "poly" {
        let source = rest.join(" ");
        let source = source.trim().trim_matches('"').trim_matches('\'');
        if source.is_empty() {
            return Err(parse_err("poly requires a polynomial expression".into()));
        }
        return Ok(SurfaceSpec::Polynomial(Poly3::parse(source)?));
    }

    let mut args = KvArgs::new(rest)?;
    let spec = match family {
        "quadric-center" => SurfaceSpec::QuadricCenter {
            a: args.take_positive("a")?,
            b: args.take_positive("b")?,
            c: args.take_positive("c")?,
            xi: args.take_sign("xi")?,
            zeta: args.take_sign("zeta")?,
        },
        "paraboloid" => SurfaceSpec::QuadricParaboloid {
            a: args.take_positive("a")?,
            b: args.take_positive("b")?,
            eta: args.take_sign("eta")?,
        },
        "candidate-ellipsoid" => SurfaceSpec::CandidateEllipsoid {
            a: args.take_positive("a")?,
            b: args.take_positive("b")?,
            c: args.take_positive("c")?,
            d: args.take_real("d")?,
        },
        "candidate-cylinder" => SurfaceSpec::CandidateCylinder {
            a: args.take_positive("a")?,
            b: args.take_positive("b")?,
            e: args.take_real("e")?,
        },
        "superquadric" => SurfaceSpec::SuperquadricRevolution {
            n: args.take_positive_int("n")?,
            c: args.take_positive("c")?,
        },
        "plane" => SurfaceSpec::PlaneZ {
            d: args.take_real("d")?,
        },
        "revolution-profile" => {
            let c1 = args.take_real("c1")?;
            let c2 = args.take_real("c2")?;
            SurfaceSpec::RevolutionGraph {
                profile: revolution::biharmonic_profile(c1, c2),
            }
        }
        other => {
            return Err(parse_err(format!(
                "unknown surface family '{other}' (expected quadric-center, paraboloid, \
                 candidate-ellipsoid, candidate-cylinder, superquadric, plane, \
                 revolution-profile, or poly)"
            )))
        }
    };
    args.finish()?;
    Ok(spec)
}
