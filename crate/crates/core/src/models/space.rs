use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{mat_vec, Mat2};

/// The three homogeneous spaces of `SL(2,R)` with one-dimensional stabilizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModelSpace {
    /// `R² \ {0}` with the linear action.
    PuncturedPlane,
    /// `RP¹ × RP¹` minus the diagonal, in the chart `(x, y) ↦ ([x:1], [y:1])`.
    DiagonalComplement,
    /// Upper half-plane `x + iy`, `y > 0`, with Möbius transformations.
    HalfPlane,
}

impl ModelSpace {
    pub const ALL: [ModelSpace; 3] = [
        Self::PuncturedPlane,
        Self::DiagonalComplement,
        Self::HalfPlane,
    ];

    pub fn contains(&self, p: [f64; 2]) -> bool {
        let inside = match self {
            Self::PuncturedPlane => p != [0.0, 0.0],
            Self::DiagonalComplement => p[0] != p[1],
            Self::HalfPlane => p[1] > 0.0,
        };
        inside && p.iter().all(|v| v.is_finite())
    }

    pub fn act(&self, m: &Mat2, p: [f64; 2]) -> Result<[f64; 2]> {
        if !self.contains(p) {
            return Err(Error::OutsideModel(format!(
                "({}, {}) in {self}",
                p[0], p[1]
            )));
        }
        match self {
            Self::PuncturedPlane => Ok(mat_vec(m, p)),
            Self::DiagonalComplement => {
                let f = |x: f64| {
                    let den = m[1][0] * x + m[1][1];
                    let scale = (m[1][0] * x)
                        .abs()
                        .max(m[1][1].abs())
                        .max(f64::MIN_POSITIVE);
                    if den.abs() <= 1e-12 * scale {
                        Err(Error::ChartEscape(format!("({}, {})", p[0], p[1])))
                    } else {
                        Ok((m[0][0] * x + m[0][1]) / den)
                    }
                };
                Ok([f(p[0])?, f(p[1])?])
            }
            Self::HalfPlane => {
                let z = Complex64::new(p[0], p[1]);
                let w = (z * m[0][0] + m[0][1]) / (z * m[1][0] + m[1][1]);
                Ok([w.re, w.im])
            }
        }
    }
}

/// `m · p` on the given space.
pub fn model_act(space: ModelSpace, m: &Mat2, p: [f64; 2]) -> Result<[f64; 2]> {
    space.act(m, p)
}

impl fmt::Display for ModelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PuncturedPlane => "PuncturedPlane",
            Self::DiagonalComplement => "DiagonalComplement",
            Self::HalfPlane => "HalfPlane",
        })
    }
}

impl FromStr for ModelSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("unknown model space `{s}`"),
            })
    }
}
