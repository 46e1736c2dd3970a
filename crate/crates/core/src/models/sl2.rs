use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Mat2;

/// The three conjugacy classes of one-parameter subgroups of `SL(2,R)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sl2Kind {
    Semisimple,
    Orthogonal,
    Unipotent,
}

impl Sl2Kind {
    pub const ALL: [Sl2Kind; 3] = [Self::Semisimple, Self::Orthogonal, Self::Unipotent];
}

impl fmt::Display for Sl2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Semisimple => "semisimple",
            Self::Orthogonal => "orthogonal",
            Self::Unipotent => "unipotent",
        })
    }
}

impl FromStr for Sl2Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "semisimple" => Ok(Self::Semisimple),
            "orthogonal" => Ok(Self::Orthogonal),
            "unipotent" => Ok(Self::Unipotent),
            other => Err(Error::Parse {
                offset: 0,
                message: format!("unknown subgroup `{other}`"),
            }),
        }
    }
}

/// `diag(e^t, e^-t)`, the rotation `[[cos t, sin t], [-sin t, cos t]]`, or `[[1, t], [0, 1]]`.
pub fn sl2_flow(kind: Sl2Kind, t: f64) -> Mat2 {
    match kind {
        Sl2Kind::Semisimple => [[t.exp(), 0.0], [0.0, (-t).exp()]],
        Sl2Kind::Orthogonal => {
            let (s, c) = t.sin_cos();
            [[c, s], [-s, c]]
        }
        Sl2Kind::Unipotent => [[1.0, t], [0.0, 1.0]],
    }
}

/// The conjugate unipotent subgroup `[[1, 0], [t, 1]]`, which fixes the first coordinate.
pub fn unipotent_lower(t: f64) -> Mat2 {
    [[1.0, 0.0], [t, 1.0]]
}

pub fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    (0..4)
        .map(|i| (a[i / 2][i % 2] - b[i / 2][i % 2]).abs())
        .fold(0.0, f64::max)
}
