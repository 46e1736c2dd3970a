//! Affine connections on a two-dimensional chart.
//!
//! A connection is stored through the eight coefficient functions
//!
//! ```text
//! ∇_∂x ∂x = A ∂x + B ∂y
//! ∇_∂x ∂y = (C + U/2) ∂x + (D + V/2) ∂y
//! ∇_∂y ∂x = (C - U/2) ∂x + (D - V/2) ∂y
//! ∇_∂y ∂y = E ∂x + F ∂y
//! ```
//!
//! so that `(C, D)` is the symmetric part and `(U, V)` the torsion.

mod geodesic;
mod pullback;

pub use geodesic::{geodesic, GeodesicSample};
pub use pullback::{pullback_residual, NumericMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{frac, Rational, RationalFunction2, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Connection2D {
    pub a: RationalFunction2,
    pub b: RationalFunction2,
    pub c: RationalFunction2,
    pub d: RationalFunction2,
    pub e: RationalFunction2,
    pub f: RationalFunction2,
    pub u: RationalFunction2,
    pub v: RationalFunction2,
}

/// Christoffel symbols `gamma[k][i][j]`: the `∂k` component of `∇_∂i ∂j`
/// (index 0 is `x`, 1 is `y`). Not assumed symmetric in `i, j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Christoffel {
    pub gamma: [[[RationalFunction2; 2]; 2]; 2],
}

/// Torsion `T(∂x,∂y)` and the two curvature vectors `R(∂x,∂y)∂x`,
/// `R(∂x,∂y)∂y`, each as `(∂x, ∂y)` components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub torsion: [RationalFunction2; 2],
    pub curvature_dx: [RationalFunction2; 2],
    pub curvature_dy: [RationalFunction2; 2],
}

impl TensorReport {
    pub fn is_flat(&self) -> bool {
        self.curvature_dx
            .iter()
            .chain(&self.curvature_dy)
            .all(RationalFunction2::is_zero)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(RationalFunction2::is_zero)
    }
}

impl Connection2D {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Coefficients in the order `A, B, C, D, E, F, U, V`.
    pub fn coefficients(&self) -> [&RationalFunction2; 8] {
        [
            &self.a, &self.b, &self.c, &self.d, &self.e, &self.f, &self.u, &self.v,
        ]
    }

    pub fn from_coefficients(k: [RationalFunction2; 8]) -> Self {
        let [a, b, c, d, e, f, u, v] = k;
        Self {
            a,
            b,
            c,
            d,
            e,
            f,
            u,
            v,
        }
    }

    /// Parses the eight coefficients from strings in the rational-function grammar.
    pub fn parse(coeffs: [&str; 8]) -> Result<Self> {
        let mut out: Vec<RationalFunction2> = Vec::with_capacity(8);
        for s in coeffs {
            out.push(s.parse()?);
        }
        Ok(Self::from_coefficients(
            out.try_into().expect("eight coefficients"),
        ))
    }

    pub fn to_christoffel(&self) -> Christoffel {
        let half = frac(1, 2);
        let hu = self.u.scale(&half);
        let hv = self.v.scale(&half);
        Christoffel {
            gamma: [
                [
                    [self.a.clone(), &self.c + &hu],
                    [&self.c - &hu, self.e.clone()],
                ],
                [
                    [self.b.clone(), &self.d + &hv],
                    [&self.d - &hv, self.f.clone()],
                ],
            ],
        }
    }

    pub fn from_christoffel(ch: &Christoffel) -> Self {
        let g = &ch.gamma;
        let half = frac(1, 2);
        Self {
            a: g[0][0][0].clone(),
            b: g[1][0][0].clone(),
            c: (&g[0][0][1] + &g[0][1][0]).scale(&half),
            d: (&g[1][0][1] + &g[1][1][0]).scale(&half),
            e: g[0][1][1].clone(),
            f: g[1][1][1].clone(),
            u: &g[0][0][1] - &g[0][1][0],
            v: &g[1][0][1] - &g[1][1][0],
        }
    }

    /// Components of `T(∂x,∂y)`.
    pub fn torsion(&self) -> [RationalFunction2; 2] {
        [self.u.clone(), self.v.clone()]
    }

    pub fn curvature(&self) -> TensorReport {
        let g = self.to_christoffel().gamma;
        // R(∂0,∂1)∂j = Σ_l [∂0 Γ^l_1j - ∂1 Γ^l_0j + Γ^k_1j Γ^l_0k - Γ^k_0j Γ^l_1k] ∂l
        let component = |l: usize, j: usize| {
            let mut r = &g[l][1][j].partial(Var::X) - &g[l][0][j].partial(Var::Y);
            for k in 0..2 {
                r = &r + &(&g[k][1][j] * &g[l][0][k]);
                r = &r - &(&g[k][0][j] * &g[l][1][k]);
            }
            r
        };
        TensorReport {
            torsion: self.torsion(),
            curvature_dx: [component(0, 0), component(1, 0)],
            curvature_dy: [component(0, 1), component(1, 1)],
        }
    }

    pub fn is_flat(&self) -> bool {
        self.curvature().is_flat()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Returns a pole error if some coefficient is undefined at the point.
    pub fn check_regular_at(&self, x: &Rational, y: &Rational) -> Result<()> {
        for k in self.coefficients() {
            k.eval(x, y)?;
        }
        Ok(())
    }

    pub fn to_spec(&self) -> ConnectionSpec {
        let s = |f: &RationalFunction2| f.to_string();
        ConnectionSpec {
            a: s(&self.a),
            b: s(&self.b),
            c: s(&self.c),
            d: s(&self.d),
            e: s(&self.e),
            f: s(&self.f),
            u: s(&self.u),
            v: s(&self.v),
            base_point: None,
        }
    }
}

/// JSON connection file: the eight coefficients as strings plus an optional
/// base point `"x0,y0"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionSpec {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "D")]
    pub d: String,
    #[serde(rename = "E")]
    pub e: String,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "U")]
    pub u: String,
    #[serde(rename = "V")]
    pub v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<String>,
}

impl ConnectionSpec {
    pub fn to_connection(&self) -> Result<Connection2D> {
        Connection2D::parse([
            &self.a, &self.b, &self.c, &self.d, &self.e, &self.f, &self.u, &self.v,
        ])
    }
}

/// Parses `"x0,y0"` into exact rationals.
pub fn parse_point(s: &str) -> Result<(Rational, Rational)> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| Error::Invalid(format!("expected `x0,y0`, got `{s}`")))?;
    Ok((
        crate::algebra::rational::parse_rational(x)?,
        crate::algebra::rational::parse_rational(y)?,
    ))
}

/// Float evaluation of the Christoffel symbols, compiled once.
#[derive(Clone, Debug)]
pub struct ChristoffelF64 {
    entries: Vec<(usize, usize, usize, CompiledRf)>,
    dens: Vec<String>,
}

#[derive(Clone, Debug)]
struct CompiledRf {
    num: Vec<(i32, i32, f64)>,
    den: Vec<(i32, i32, f64)>,
}

impl CompiledRf {
    fn new(f: &RationalFunction2) -> Self {
        let compile = |p: &crate::algebra::Poly2| {
            p.terms()
                .map(|(&(i, j), c)| (i as i32, j as i32, crate::algebra::rational::to_f64(c)))
                .collect()
        };
        Self {
            num: compile(f.num()),
            den: compile(f.den()),
        }
    }

    fn poly(terms: &[(i32, i32, f64)], x: f64, y: f64) -> f64 {
        terms
            .iter()
            .map(|&(i, j, c)| c * x.powi(i) * y.powi(j))
            .sum()
    }

    fn eval(&self, x: f64, y: f64) -> Option<f64> {
        let d = Self::poly(&self.den, x, y);
        let v = Self::poly(&self.num, x, y) / d;
        (d.abs() > 1e-300 && v.is_finite()).then_some(v)
    }
}

impl ChristoffelF64 {
    pub fn new(c: &Connection2D) -> Self {
        let g = c.to_christoffel().gamma;
        let mut entries = Vec::new();
        let mut dens = Vec::new();
        for (k, gk) in g.iter().enumerate() {
            for (i, gki) in gk.iter().enumerate() {
                for (j, f) in gki.iter().enumerate() {
                    entries.push((k, i, j, CompiledRf::new(f)));
                    dens.push(f.den().to_string());
                }
            }
        }
        Self { entries, dens }
    }

    /// `gamma[k][i][j]` at `(x, y)`, or a pole error.
    pub fn eval(&self, x: f64, y: f64) -> Result<[[[f64; 2]; 2]; 2]> {
        let mut out = [[[0.0; 2]; 2]; 2];
        for (n, (k, i, j, f)) in self.entries.iter().enumerate() {
            out[*k][*i][*j] = f.eval(x, y).ok_or_else(|| Error::Pole {
                denominator: self.dens[n].clone(),
                x: x.to_string(),
                y: y.to_string(),
            })?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn rf(s: &str) -> RationalFunction2 {
        s.parse().unwrap()
    }

    #[test]
    fn christoffel_layout() {
        let zero = Connection2D::zero().to_christoffel();
        assert!(zero
            .gamma
            .iter()
            .flatten()
            .flatten()
            .all(RationalFunction2::is_zero));

        let mut c = Connection2D::zero();
        c.u = RationalFunction2::int(2);
        let g = c.to_christoffel().gamma;
        assert_eq!(g[0][0][1], RationalFunction2::int(1));
        assert_eq!(g[0][1][0], RationalFunction2::int(-1));

        let mut fam = Connection2D::zero();
        fam.e = rf("x");
        let g = fam.to_christoffel().gamma;
        assert_eq!(g[0][1][1], rf("x"));
        let nonzero = g
            .iter()
            .flatten()
            .flatten()
            .filter(|f| !f.is_zero())
            .count();
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn round_trip() {
        let c =
            Connection2D::parse(["x", "y^2", "1/y", "x*y", "3", "-x", "x+y", "1/(1+x^2)"]).unwrap();
        assert_eq!(Connection2D::from_christoffel(&c.to_christoffel()), c);
    }

    #[test]
    fn torsion_components() {
        assert!(Connection2D::zero()
            .torsion()
            .iter()
            .all(RationalFunction2::is_zero));
        let mut c = Connection2D::zero();
        c.u = rf("x");
        c.v = rf("y");
        assert_eq!(c.torsion(), [rf("x"), rf("y")]);
        assert!(!c.is_torsion_free());
    }

    #[test]
    fn zero_connection_is_flat() {
        let z = Connection2D::zero();
        assert!(z.is_flat());
        assert!(z.is_torsion_free());
    }

    #[test]
    fn pole_check() {
        let c = Connection2D::parse(["0", "1/y", "0", "0", "0", "0", "0", "0"]).unwrap();
        assert!(c.check_regular_at(&rat(0), &rat(1)).is_ok());
        assert!(c.check_regular_at(&rat(0), &rat(0)).is_err());
    }

    #[test]
    fn spec_file_round_trip() {
        let c = Connection2D::parse(["0", "1/y", "-1/y", "0", "0", "-1/y", "0", "0"]).unwrap();
        let json = serde_json::to_string(&c.to_spec()).unwrap();
        let back: ConnectionSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_connection().unwrap(), c);
        assert!(json.contains("\"A\""));
    }

    #[test]
    fn point_parsing() {
        assert_eq!(
            parse_point("1/2, -3").unwrap(),
            (crate::algebra::frac(1, 2), rat(-3))
        );
        assert!(parse_point("1").is_err());
    }
}
