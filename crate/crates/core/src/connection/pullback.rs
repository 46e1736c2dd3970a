use std::fmt;
use std::sync::Arc;

use super::{ChristoffelF64, Connection2D};
use crate::error::{Error, Result};

type Forward = Arc<dyn Fn([f64; 2]) -> [f64; 2] + Send + Sync>;
type Jacobian = Arc<dyn Fn([f64; 2]) -> [[f64; 2]; 2] + Send + Sync>;

/// A smooth planar map with an analytic Jacobian `J[i][j] = ∂φ^i/∂x^j`.
#[derive(Clone)]
pub struct NumericMap {
    pub tag: String,
    forward: Forward,
    jacobian: Jacobian,
}

impl fmt::Debug for NumericMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericMap")
            .field("tag", &self.tag)
            .finish_non_exhaustive()
    }
}

impl NumericMap {
    pub fn new<F, J>(tag: impl Into<String>, forward: F, jacobian: J) -> Self
    where
        F: Fn([f64; 2]) -> [f64; 2] + Send + Sync + 'static,
        J: Fn([f64; 2]) -> [[f64; 2]; 2] + Send + Sync + 'static,
    {
        Self {
            tag: tag.into(),
            forward: Arc::new(forward),
            jacobian: Arc::new(jacobian),
        }
    }

    pub fn identity() -> Self {
        Self::new("identity", |p| p, |_| [[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        (self.forward)(p)
    }

    pub fn jacobian(&self, p: [f64; 2]) -> [[f64; 2]; 2] {
        (self.jacobian)(p)
    }

    /// Largest relative mismatch between the Jacobian and a central
    /// difference of the forward map over the samples.
    pub fn jacobian_fd_error(&self, samples: &[[f64; 2]]) -> f64 {
        let h = 1e-6;
        let mut worst: f64 = 0.0;
        for &p in samples {
            let j = self.jacobian(p);
            let scale = j.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
            for col in 0..2 {
                let mut a = p;
                let mut b = p;
                a[col] += h;
                b[col] -= h;
                let (fa, fb) = (self.apply(a), self.apply(b));
                for row in 0..2 {
                    let fd = (fa[row] - fb[row]) / (2.0 * h);
                    worst = worst.max((fd - j[row][col]).abs() / scale);
                }
            }
        }
        worst
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &NumericMap) -> NumericMap {
        let (f, g) = (self.clone(), other.clone());
        let (f2, g2) = (self.clone(), other.clone());
        NumericMap::new(
            format!("{}∘{}", self.tag, other.tag),
            move |p| f.apply(g.apply(p)),
            move |p| {
                let q = g2.apply(p);
                let (a, b) = (f2.jacobian(q), g2.jacobian(p));
                let mut m = [[0.0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                    }
                }
                m
            },
        )
    }
}

const FD_STEP: f64 = 1e-6;

/// Maximum absolute difference between the Christoffel symbols of `c` and
/// those of `φ^*c`, over the sample points.
pub fn pullback_residual(c: &Connection2D, m: &NumericMap, samples: &[[f64; 2]]) -> Result<f64> {
    let gamma = ChristoffelF64::new(c);
    let mut worst: f64 = 0.0;
    for &p in samples {
        worst = worst.max(residual_at(&gamma, m, p)?);
    }
    Ok(worst)
}

fn residual_at(gamma: &ChristoffelF64, m: &NumericMap, p: [f64; 2]) -> Result<f64> {
    let j = m.jacobian(p);
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if det.is_nan() || det.abs() <= 1e-14 {
        return Err(Error::SingularJacobian {
            tag: m.tag.clone(),
            x: p[0],
            y: p[1],
        });
    }
    let inv = [
        [j[1][1] / det, -j[0][1] / det],
        [-j[1][0] / det, j[0][0] / det],
    ];
    // hess[m][i][j] = ∂i ∂j φ^m, from the Jacobian by central differences
    let mut dj = [[[0.0; 2]; 2]; 2];
    for (i, dji) in dj.iter_mut().enumerate() {
        let mut a = p;
        let mut b = p;
        a[i] += FD_STEP;
        b[i] -= FD_STEP;
        let (ja, jb) = (m.jacobian(a), m.jacobian(b));
        for r in 0..2 {
            for col in 0..2 {
                dji[r][col] = (ja[r][col] - jb[r][col]) / (2.0 * FD_STEP);
            }
        }
    }
    let mut hess = [[[0.0; 2]; 2]; 2];
    for (r, hr) in hess.iter_mut().enumerate() {
        for i in 0..2 {
            for k in 0..2 {
                hr[i][k] = 0.5 * (dj[i][r][k] + dj[k][r][i]);
            }
        }
    }

    let q = m.apply(p);
    let g_image = gamma.eval(q[0], q[1])?;
    let g_here = gamma.eval(p[0], p[1])?;

    let mut worst: f64 = 0.0;
    for k in 0..2 {
        for i in 0..2 {
            for jj in 0..2 {
                let mut pulled = 0.0;
                for r in 0..2 {
                    let mut inner = hess[r][i][jj];
                    for a in 0..2 {
                        for b in 0..2 {
                            inner += g_image[r][a][b] * j[a][i] * j[b][jj];
                        }
                    }
                    pulled += inv[k][r] * inner;
                }
                worst = worst.max((pulled - g_here[k][i][jj]).abs());
            }
        }
    }
    Ok(worst)
}
