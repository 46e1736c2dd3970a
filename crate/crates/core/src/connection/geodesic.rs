use super::{ChristoffelF64, Connection2D};
use crate::error::{Error, Result};

/// One row of a geodesic trajectory.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct GeodesicSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

/// Integrates `ẍ^k + Γ^k_ij ẋ^i ẋ^j = 0` with `n` classical RK4 steps on
/// `[0, t_end]`. Only the symmetric part of the connection enters.
pub fn geodesic(
    c: &Connection2D,
    p0: [f64; 2],
    v0: [f64; 2],
    t_end: f64,
    n: usize,
) -> Result<Vec<GeodesicSample>> {
    if n == 0 {
        return Err(Error::Invalid("geodesic needs at least one step".into()));
    }
    let mut sym = c.clone();
    sym.u = Default::default();
    sym.v = Default::default();
    let gamma = ChristoffelF64::new(&sym);
    let h = t_end / n as f64;

    let rhs = |s: [f64; 4]| -> Option<[f64; 4]> {
        let g = gamma.eval(s[0], s[1]).ok()?;
        let v = [s[2], s[3]];
        let mut acc = [0.0; 2];
        for (k, a) in acc.iter_mut().enumerate() {
            let mut q = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    q += g[k][i][j] * v[i] * v[j];
                }
            }
            *a = -q;
        }
        let out = [v[0], v[1], acc[0], acc[1]];
        out.iter().all(|z| z.is_finite()).then_some(out)
    };

    let mut state = [p0[0], p0[1], v0[0], v0[1]];
    let row = |t: f64, s: [f64; 4]| GeodesicSample {
        t,
        x: s[0],
        y: s[1],
        vx: s[2],
        vy: s[3],
    };
    let mut out = Vec::with_capacity(n + 1);
    out.push(row(0.0, state));
    for step in 0..n {
        let t = step as f64 * t_end / n as f64;
        let pole = || Error::GeodesicPole { step, t };
        let add = |s: [f64; 4], k: [f64; 4], w: f64| {
            let mut r = s;
            for i in 0..4 {
                r[i] += w * k[i];
            }
            r
        };
        let k1 = rhs(state).ok_or_else(pole)?;
        let k2 = rhs(add(state, k1, h / 2.0)).ok_or_else(pole)?;
        let k3 = rhs(add(state, k2, h / 2.0)).ok_or_else(pole)?;
        let k4 = rhs(add(state, k3, h)).ok_or_else(pole)?;
        for i in 0..4 {
            state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !state.iter().all(|z| z.is_finite()) {
            return Err(pole());
        }
        out.push(row((step + 1) as f64 * t_end / n as f64, state));
    }
    Ok(out)
}
