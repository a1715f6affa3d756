//! Command implementations: argument interpretation, core calls, and JSON
//! or CSV emission.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use biharm_core::curvature::{
    curvature_sample, gauss_curvature, geodesic_curvature_sq, CurvatureSample,
};
use biharm_core::parse::{parse_surface, KvArgs};
use biharm_core::quadrics;
use biharm_core::revolution::{profile_csv, solve_superquadric_parallel, ProfileSpec};
use biharm_core::tracer::{constancy_report, trace, trace_csv};
use biharm_core::{Error, Vec3};

use crate::json::{self, Obj};
use crate::{CliError, CliResult};

pub fn parse_point(text: &str) -> CliResult<Vec3> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            message: format!("expected a point as x,y,z, got '{text}'"),
        }
        .into());
    }
    let mut coords = [0.0f64; 3];
    for (slot, part) in coords.iter_mut().zip(&parts) {
        let text = part.trim();
        let v: f64 = text.parse().map_err(|_| Error::Parse {
            message: format!("bad coordinate '{text}'"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                message: format!("non-finite coordinate '{text}'"),
            }
            .into());
        }
        *slot = v;
    }
    Ok(Vec3::new(coords[0], coords[1], coords[2]))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn classify(spec: &str) -> CliResult<ExitCode> {
    let surface = parse_surface(spec)?;
    let result = quadrics::classify(&surface)?;
    println!("{}", result.to_json());
    Ok(ExitCode::SUCCESS)
}

fn sample_json(s: &CurvatureSample) -> String {
    Obj::new()
        .vec3("point", s.point)
        .vec3("tangent", s.tangent)
        .num("gauss_f", s.gauss_f)
        .num("kn_f", s.kn_f)
        .num("kn_g", s.kn_g)
        .num("cos_theta", s.cos_theta)
        .num("k_sq", s.k_sq)
        .num("k1_sq", s.k1_sq)
        .num("alpha", s.alpha)
        .num("beta", s.beta)
        .render()
}

pub fn curvature(point: &str, second: Option<&str>, spec: &str) -> CliResult<ExitCode> {
    let p = parse_point(point)?;
    let f = parse_surface(spec)?;
    let doc = match second {
        None => Obj::new().num("K", gauss_curvature(&f, p)?).render(),
        Some(second) => {
            let g = parse_surface(second)?;
            sample_json(&curvature_sample(&f, &g, p)?)
        }
    };
    println!("{doc}");
    Ok(ExitCode::SUCCESS)
}

pub fn trace_curve(
    f_spec: &str,
    g_spec: &str,
    start: &str,
    step: f64,
    max_steps: usize,
    csv: Option<&Path>,
) -> CliResult<ExitCode> {
    let f = parse_surface(f_spec)?;
    let g = parse_surface(g_spec)?;
    let seed = parse_point(start)?;
    let curve = trace(&f, &g, seed, step, max_steps)?;

    let mut k1_values = Vec::with_capacity(curve.samples.len());
    let mut max_residual = 0.0f64;
    for sample in &curve.samples {
        let k1_sq = geodesic_curvature_sq(&f, &g, sample.point)?;
        let gauss = gauss_curvature(&f, sample.point)?;
        k1_values.push(k1_sq);
        max_residual = max_residual.max((k1_sq - gauss).abs());
    }
    let report = constancy_report(&k1_values)?;

    if let Some(path) = csv {
        write_file(path, &trace_csv(&f, &g, &curve)?)?;
    }

    let constancy = Obj::new()
        .num("mean", report.mean)
        .num("max_abs_dev", report.max_abs_dev)
        .int("sample_count", report.sample_count)
        .render();
    let doc = Obj::new()
        .flag("closed", curve.closed)
        .int("samples", curve.samples.len())
        .raw("k1_constancy", constancy)
        .num("max_biharmonic_residual", max_residual)
        .render();
    println!("{doc}");
    Ok(ExitCode::SUCCESS)
}

pub fn solve_parallel(args: &[String]) -> CliResult<ExitCode> {
    let tokens: Vec<&str> = args.iter().map(String::as_str).collect();
    let mut kv = KvArgs::new(&tokens)?;
    let n = kv.take_positive_int("n")?;
    let c = kv.take_positive("c")?;
    kv.finish()?;

    let sol = solve_superquadric_parallel(n, c)?;
    let brackets = sol.all_brackets.iter().map(|&(lo, hi)| json::pair(lo, hi));
    let doc = Obj::new()
        .num("d0", sol.d0)
        .num("residual_at_root", sol.residual_at_root)
        .raw("bracket", json::pair(sol.bracket.0, sol.bracket.1))
        .raw("all_brackets", json::array(brackets))
        .render();
    println!("{doc}");
    Ok(ExitCode::SUCCESS)
}

pub fn profile(args: &[String], csv: Option<&Path>) -> CliResult<ExitCode> {
    let tokens: Vec<&str> = args.iter().map(String::as_str).collect();
    let mut kv = KvArgs::new(&tokens)?;
    let c1 = kv.take_real("c1")?;
    let c2 = kv.take_real("c2")?;
    let rho_min = kv.take_real("rho-min")?;
    let rho_max = kv.take_real("rho-max")?;
    let samples = kv.take_positive_int("samples")? as usize;
    kv.finish()?;

    let spec = ProfileSpec { c1, c2 };
    let table = profile_csv(&spec, rho_min, rho_max, samples)?;
    if let Some(path) = csv {
        write_file(path, &table)?;
    }

    let mut max_residual = 0.0f64;
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let rho = rho_min + t * (rho_max - rho_min);
        max_residual = max_residual.max(spec.parallel_residual(rho)?.abs());
    }
    println!(
        "{}",
        Obj::new().num("max_ode_residual", max_residual).render()
    );
    Ok(ExitCode::SUCCESS)
}
