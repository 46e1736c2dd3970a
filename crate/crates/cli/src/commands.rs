use std::path::Path;

use akl_core::certify::{self, Certificate, Faults};
use akl_core::connection::{geodesic as integrate, Connection2D, ConnectionSpec};
use akl_core::family::{classify_holonomy, killing_basis, make_connection, normalize_delta, FamilyParams, GroupElement, Regime};
use akl_core::killing::{classify_connection, BasePoint, DEFAULT_MAX_ORDER};
use akl_core::models::verify_models;
use akl_core::par::Exec;
use akl_core::Error;
use serde_json::json;

use crate::output::{fmt_float, to_json};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Domain(Error),
    #[error("certificate failed: {0}")]
    Certificate(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Certificate(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Invalid(_) => CliError::Parse(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Writes to stdout; a closed pipe ends output quietly.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn read_spec(path: &Path) -> Result<ConnectionSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn parse_pair(s: &str, what: &str) -> Result<[f64; 2]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::Parse(format!("{what} `{s}`: {e}")))?;
    <[f64; 2]>::try_from(v).map_err(|_| CliError::Parse(format!("{what}: expected two comma-separated numbers, got `{s}`")))
}

pub fn classify(path: &Path, point: Option<&str>, digits: usize) -> Result<()> {
    let spec = read_spec(path)?;
    let c = spec.to_connection()?;
    let point = point
        .or(spec.base_point.as_deref())
        .ok_or_else(|| CliError::Parse("no base point: pass --point or set base_point".into()))?;
    let p = BasePoint::parse(point)?;
    c.check_regular_at(&p.x0, &p.y0)?;
    let report = classify_connection(&c, &p, DEFAULT_MAX_ORDER)?;
    emit(&to_json(&report, digits));
    eprintln!("{}: dim {} at {}", report.label, report.dim, report.point);
    Ok(())
}

pub fn family(params: &str, digits: usize) -> Result<()> {
    let p = FamilyParams::parse(params)?;
    let c = make_connection(&p);
    let t = c.curvature();
    let strs = |v: &[akl_core::algebra::RationalFunction2; 2]| [v[0].to_string(), v[1].to_string()];
    // the closed-form basis lives in the δ = 0 coordinates
    let (p0, shift) = normalize_delta(&p);
    let basis = if p.is_admissible() {
        Some(killing_basis(&p0)?.iter().map(|w| w.expression()).collect::<Vec<_>>())
    } else {
        None
    };
    let report = json!({
        "params": p,
        "connection": c.to_spec(),
        "torsion": strs(&t.torsion),
        "curvature": { "R(dx,dy)dx": strs(&t.curvature_dx), "R(dx,dy)dy": strs(&t.curvature_dy) },
        "curvature_bracket": p.curvature_bracket().to_string(),
        "flat": t.is_flat(),
        "torsion_free": c.is_torsion_free(),
        "admissible": p.is_admissible(),
        "regime": Regime::of(&p),
        "killing_basis": basis,
        "basis_coordinates": format!("(x, y) -> (x + q(y), y), q = {shift}"),
    });
    emit(&to_json(&report, digits));
    Ok(())
}

fn elements(params: &str, g1: &str, g2: Option<&str>) -> Result<(FamilyParams, Regime, GroupElement, Option<GroupElement>)> {
    let p = FamilyParams::parse(params)?;
    let r = Regime::of(&p);
    let a = GroupElement::parse(&r, g1)?;
    let b = g2.map(|s| GroupElement::parse(&r, s)).transpose()?;
    Ok((p, r, a, b))
}

pub fn holonomy(params: &str, g1: &str, g2: &str, digits: usize) -> Result<()> {
    let (p, _, a, b) = elements(params, g1, Some(g2))?;
    let verdict = classify_holonomy(&p, &a, &b.expect("second element"))?;
    emit(&to_json(&verdict, digits));
    Ok(())
}

pub fn group(params: &str, g1: &str, g2: Option<&str>, point: Option<&str>, digits: usize) -> Result<()> {
    let (p, r, a, b) = elements(params, g1, g2)?;
    let mut report = json!({
        "regime": r,
        "g1": a,
        "psi": a.psi(),
        "inverse": a.inverse(),
        "isometry_residual": akl_core::connection::pullback_residual(
            &make_connection(&p),
            &a.as_map(),
            &akl_core::family::sample_grid(5),
        )?,
    });
    if let Some(b) = &b {
        report["g2"] = json!(b);
        report["product"] = json!(a.multiply(b)?);
        report["commutes"] = json!(a.commutes(b)?);
    }
    if let Some(pt) = point {
        report["action"] = json!(a.act(parse_pair(pt, "point")?));
    }
    emit(&to_json(&report, digits));
    Ok(())
}

pub fn models_verify(as_json: bool, digits: usize) -> Result<()> {
    let rows = verify_models()?;
    if as_json {
        emit(&to_json(&rows, digits));
    } else {
        let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        let mut out = format!("{:<width$}  {:>24}  {:>9}  result\n", "check", "measured", "tolerance");
        for r in &rows {
            out += &format!(
                "{:<width$}  {:>24}  {:>9}  {}\n",
                r.name,
                fmt_float(r.measured, digits),
                format!("{:e}", r.tolerance),
                if r.passed { "PASS" } else { "FAIL" }
            );
        }
        emit(&out);
    }
    let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Certificate(failed.join(", ")))
    }
}

pub fn geodesic(path: &Path, p0: &str, v0: &str, t_end: f64, n: usize, digits: usize) -> Result<()> {
    let c: Connection2D = read_spec(path)?.to_connection()?;
    let rows = integrate(&c, parse_pair(p0, "p0")?, parse_pair(v0, "v0")?, t_end, n)?;
    let mut out = String::from("t,x,y,vx,vy\n");
    for s in rows {
        let f = |v: f64| fmt_float(v, digits);
        out.push_str(&format!("{},{},{},{},{}\n", f(s.t), f(s.x), f(s.y), f(s.vx), f(s.vy)));
    }
    emit(&out);
    Ok(())
}

fn print_certificates(certs: &[Certificate]) -> Result<()> {
    let out: String = certs
        .iter()
        .map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect();
    emit(&out);
    let failed: Vec<&str> = certs.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Certificate(failed.join(", ")))
    }
}

pub fn verify(case6_only: bool, sequential: bool, faults: &Faults) -> Result<()> {
    let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
    if case6_only {
        return print_certificates(&[certify::case6(faults)]);
    }
    print_certificates(&certify::run_all(exec, faults))
}
