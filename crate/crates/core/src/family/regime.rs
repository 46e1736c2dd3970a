use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::params::FamilyParams;
use super::profile::{ExpTerm, Profile};
use crate::algebra::rational::{format_rational, sqrt_exact, to_f64};
use crate::algebra::{frac, rat, Rational};

pub type Mat2 = [[f64; 2]; 2];

/// A root of `ξ² + αξ + β`, exact when it is rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub exact: Option<Rational>,
    pub value: f64,
}

impl Root {
    fn exact(q: Rational) -> Self {
        Self {
            value: to_f64(&q),
            exact: Some(q),
        }
    }

    fn approx(value: f64) -> Self {
        Self { exact: None, value }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => f.write_str(&format_rational(q)),
            None => write!(f, "{}", self.value),
        }
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum RegimeKind {
    /// `a1 > a2`.
    RealDistinct {
        a1: Root,
        a2: Root,
    },
    /// Roots `a ± ib` with `b > 0`.
    ComplexPair {
        a: Root,
        b: Root,
    },
    RealDouble {
        a: Root,
    },
}

/// Solution regime of `h'' + αh' + βh = 0`, with the basis `Z1, Z2` of the
/// solution space it fixes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Regime {
    #[serde(serialize_with = "ser_rat")]
    pub delta: Rational,
    pub kind: RegimeKind,
}

fn ser_rat<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

impl Regime {
    pub fn of(p: &FamilyParams) -> Self {
        Self::from_coefficients(&p.alpha, &p.beta)
    }

    pub fn from_coefficients(alpha: &Rational, beta: &Rational) -> Self {
        let delta = alpha * alpha - rat(4) * beta;
        let half = frac(1, 2);
        let minus_half_alpha = -alpha * &half;
        let kind = if delta.is_zero() {
            RegimeKind::RealDouble {
                a: Root::exact(minus_half_alpha),
            }
        } else {
            let root = |q: &Rational| match sqrt_exact(q) {
                Some(r) => Root::exact(r * &half),
                None => Root::approx(to_f64(q).sqrt() / 2.0),
            };
            let r = root(&delta.abs());
            if delta.is_positive() {
                let shift = |sign: f64| match &r.exact {
                    Some(e) => Root::exact(if sign > 0.0 {
                        &minus_half_alpha + e
                    } else {
                        &minus_half_alpha - e
                    }),
                    None => Root::approx(to_f64(&minus_half_alpha) + sign * r.value),
                };
                RegimeKind::RealDistinct {
                    a1: shift(1.0),
                    a2: shift(-1.0),
                }
            } else {
                RegimeKind::ComplexPair {
                    a: Root::exact(minus_half_alpha),
                    b: r,
                }
            }
        };
        Self { delta, kind }
    }

    /// `Ψ_h`, the action of `h = (s, t)` on K-coordinates.
    pub fn psi(&self, h: [f64; 2]) -> Mat2 {
        let [s, t] = h;
        match &self.kind {
            RegimeKind::RealDistinct { a1, a2 } => [
                [(s - a1.value * t).exp(), 0.0],
                [0.0, (s - a2.value * t).exp()],
            ],
            RegimeKind::ComplexPair { a, b } => {
                let e = (s - a.value * t).exp();
                let (sn, cs) = (b.value * t).sin_cos();
                [[e * cs, -e * sn], [e * sn, e * cs]]
            }
            RegimeKind::RealDouble { a } => {
                let e = (s - a.value * t).exp();
                [[e, -t * e], [0.0, e]]
            }
        }
    }

    /// Matrix of `d/dy` on K-coordinates: `(uZ1 + vZ2)' = u'Z1 + v'Z2` with
    /// `(u', v') = D (u, v)`.
    pub fn derivative_matrix(&self) -> Mat2 {
        match &self.kind {
            RegimeKind::RealDistinct { a1, a2 } => [[a1.value, 0.0], [0.0, a2.value]],
            RegimeKind::ComplexPair { a, b } => [[a.value, b.value], [-b.value, a.value]],
            RegimeKind::RealDouble { a } => [[a.value, 1.0], [0.0, a.value]],
        }
    }

    /// Exact `D`, when every root is rational.
    pub fn derivative_matrix_exact(&self) -> Option<[[Rational; 2]; 2]> {
        let z = Rational::zero;
        Some(match &self.kind {
            RegimeKind::RealDistinct { a1, a2 } => {
                [[a1.exact.clone()?, z()], [z(), a2.exact.clone()?]]
            }
            RegimeKind::ComplexPair { a, b } => {
                let (a, b) = (a.exact.clone()?, b.exact.clone()?);
                [[a.clone(), b.clone()], [-b, a]]
            }
            RegimeKind::RealDouble { a } => [[a.exact.clone()?, rat(1)], [z(), a.exact.clone()?]],
        })
    }

    /// `(Z1(0), Z2(0))`.
    pub fn values_at_zero(&self) -> [Rational; 2] {
        match &self.kind {
            RegimeKind::RealDistinct { .. } => [rat(1), rat(1)],
            _ => [rat(1), rat(0)],
        }
    }

    /// `Z1` or `Z2` (index 0 or 1) as a sum of exponential terms.
    pub fn basis_profile(&self, i: usize) -> Profile {
        let one = Complex64::new(1.0, 0.0);
        let term = |c: Complex64, p: u32, z: Complex64| Profile::new(vec![ExpTerm { c, p, z }]);
        match (&self.kind, i) {
            (RegimeKind::RealDistinct { a1, .. }, 0) => term(one, 0, a1.value.into()),
            (RegimeKind::RealDistinct { a2, .. }, 1) => term(one, 0, a2.value.into()),
            (RegimeKind::ComplexPair { a, b }, 0) => term(one, 0, Complex64::new(a.value, b.value)),
            (RegimeKind::ComplexPair { a, b }, 1) => term(
                Complex64::new(0.0, -1.0),
                0,
                Complex64::new(a.value, b.value),
            ),
            (RegimeKind::RealDouble { a }, 0) => term(one, 0, a.value.into()),
            (RegimeKind::RealDouble { a }, 1) => term(one, 1, a.value.into()),
            _ => panic!("basis index {i} out of range"),
        }
    }

    /// Profile `u Z1 + v Z2`.
    pub fn profile(&self, k: [f64; 2]) -> Profile {
        self.basis_profile(0)
            .scale(k[0])
            .add(&self.basis_profile(1).scale(k[1]))
    }

    /// Closed-form names of `Z1` and `Z2`.
    pub fn basis_names(&self) -> [String; 2] {
        let arg = |a: &Root| match a.exact.as_ref() {
            Some(q) if q.is_one() => "y".to_string(),
            Some(q) if (-q).is_one() => "-y".to_string(),
            _ => format!("{a}*y"),
        };
        let exp = |a: &Root| {
            if a.exact.as_ref().is_some_and(Zero::is_zero) {
                None
            } else {
                Some(format!("exp({})", arg(a)))
            }
        };
        let times = |f: String, e: Option<String>| match e {
            Some(e) => format!("{f}*{e}"),
            None => f,
        };
        match &self.kind {
            RegimeKind::RealDistinct { a1, a2 } => [
                exp(a1).unwrap_or_else(|| "1".into()),
                exp(a2).unwrap_or_else(|| "1".into()),
            ],
            RegimeKind::ComplexPair { a, b } => [
                times(format!("cos({})", arg(b)), exp(a)),
                times(format!("sin({})", arg(b)), exp(a)),
            ],
            RegimeKind::RealDouble { a } => [
                exp(a).unwrap_or_else(|| "1".into()),
                times("y".into(), exp(a)),
            ],
        }
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            RegimeKind::RealDistinct { .. } => "RealDistinct",
            RegimeKind::ComplexPair { .. } => "ComplexPair",
            RegimeKind::RealDouble { .. } => "RealDouble",
        }
    }
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

pub fn mat_vec(a: &Mat2, v: [f64; 2]) -> [f64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

pub fn one_minus(a: &Mat2) -> Mat2 {
    [[1.0 - a[0][0], -a[0][1]], [-a[1][0], 1.0 - a[1][1]]]
}

pub fn det(a: &Mat2) -> f64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn solve2(a: &Mat2, b: [f64; 2]) -> Option<[f64; 2]> {
    let d = det(a);
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if d.abs() <= 1e-12 * scale.max(1.0).powi(2) {
        return None;
    }
    Some([
        (b[0] * a[1][1] - b[1] * a[0][1]) / d,
        (a[0][0] * b[1] - a[1][0] * b[0]) / d,
    ])
}
