use serde::ser::SerializeStruct;
use serde::Serialize;

use super::fmt_num;
use super::params::FamilyParams;
use super::profile::Profile;
use super::regime::{mat_vec, Regime};
use crate::algebra::Rational;
use crate::connection::NumericMap;
use crate::error::{Error, Result};
use crate::killing::KillingJet;

/// A Killing field `(λx + h(y)) ∂x + μ ∂y` of a family connection, where
/// `h = u Z1 + v Z2` has K-coordinates `fiber = (u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyField {
    pub lambda: f64,
    pub mu: f64,
    pub fiber: [f64; 2],
    pub regime: Regime,
}

impl FamilyField {
    pub fn new(regime: &Regime, lambda: f64, mu: f64, fiber: [f64; 2]) -> Self {
        Self {
            lambda,
            mu,
            fiber,
            regime: regime.clone(),
        }
    }

    /// `x ∂x`
    pub fn x_field(regime: &Regime) -> Self {
        Self::new(regime, 1.0, 0.0, [0.0, 0.0])
    }

    /// `∂y`
    pub fn y_field(regime: &Regime) -> Self {
        Self::new(regime, 0.0, 1.0, [0.0, 0.0])
    }

    /// `Z1 ∂x` (`i = 0`) or `Z2 ∂x` (`i = 1`).
    pub fn z_field(regime: &Regime, i: usize) -> Self {
        let mut fiber = [0.0, 0.0];
        fiber[i] = 1.0;
        Self::new(regime, 0.0, 0.0, fiber)
    }

    pub fn profile(&self) -> Profile {
        self.regime.profile(self.fiber)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(
            &self.regime,
            k * self.lambda,
            k * self.mu,
            self.fiber.map(|f| k * f),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            &self.regime,
            self.lambda + o.lambda,
            self.mu + o.mu,
            [self.fiber[0] + o.fiber[0], self.fiber[1] + o.fiber[1]],
        )
    }

    /// Max-norm distance between the parameters of two fields.
    pub fn distance_to(&self, o: &Self) -> f64 {
        [
            self.lambda - o.lambda,
            self.mu - o.mu,
            self.fiber[0] - o.fiber[0],
            self.fiber[1] - o.fiber[1],
        ]
        .iter()
        .fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn eval(&self, p: [f64; 2]) -> [f64; 2] {
        [self.lambda * p[0] + self.profile().eval(p[1]), self.mu]
    }

    /// `J[i][j] = ∂j W^i`.
    pub fn jacobian(&self, p: [f64; 2]) -> [[f64; 2]; 2] {
        [
            [self.lambda, self.profile().derivative().eval(p[1])],
            [0.0, 0.0],
        ]
    }

    /// Closed-form bracket:
    /// `[W1, W2] = (λ2 h1 - λ1 h2 + μ1 h2' - μ2 h1') ∂x`.
    pub fn bracket(&self, o: &Self) -> Self {
        let d = self.regime.derivative_matrix();
        let (dk1, dk2) = (mat_vec(&d, self.fiber), mat_vec(&d, o.fiber));
        let fiber = [0, 1].map(|i| {
            o.lambda * self.fiber[i] - self.lambda * o.fiber[i] + self.mu * dk2[i] - o.mu * dk1[i]
        });
        Self::new(&self.regime, 0.0, 0.0, fiber)
    }

    /// `J2 v1 - J1 v2` at `p`, evaluated numerically.
    pub fn numeric_bracket(&self, o: &Self, p: [f64; 2]) -> [f64; 2] {
        let (v1, v2) = (self.eval(p), o.eval(p));
        let (j1, j2) = (self.jacobian(p), o.jacobian(p));
        let (a, b) = (mat_vec(&j2, v1), mat_vec(&j1, v2));
        [a[0] - b[0], a[1] - b[1]]
    }

    /// Image of the field under `(x, y) ↦ (x + k(y), y)`.
    pub fn push_by_k(&self, k: [f64; 2]) -> Self {
        let dk = mat_vec(&self.regime.derivative_matrix(), k);
        let fiber = [0, 1].map(|i| self.fiber[i] - self.lambda * k[i] + self.mu * dk[i]);
        Self::new(&self.regime, self.lambda, self.mu, fiber)
    }

    /// Time-`τ` flow of the field, in closed form.
    pub fn flow_point(&self, p: [f64; 2], tau: f64) -> [f64; 2] {
        let integral = self
            .profile()
            .flow_integral(p[1], self.mu, self.lambda, tau);
        [
            (self.lambda * tau).exp() * (p[0] + integral),
            p[1] + self.mu * tau,
        ]
    }

    pub fn flow(&self, tau: f64) -> NumericMap {
        let (w, w2) = (self.clone(), self.clone());
        let dh = self.profile().derivative();
        NumericMap::new(
            format!("flow[{}; {tau}]", self.expression()),
            move |p| w.flow_point(p, tau),
            move |p| {
                let e = (w2.lambda * tau).exp();
                [
                    [e, e * dh.flow_integral(p[1], w2.mu, w2.lambda, tau)],
                    [0.0, 1.0],
                ]
            },
        )
    }

    /// Exact 1-jet at `(x0, 0)`, available when the roots are rational.
    pub fn exact_jet(&self, x0: &Rational) -> Option<KillingJet> {
        let q =
            |v: f64| Rational::from_float(v).filter(|r| crate::algebra::rational::to_f64(r) == v);
        let (lambda, mu) = (q(self.lambda)?, q(self.mu)?);
        let fiber = [q(self.fiber[0])?, q(self.fiber[1])?];
        let d = self.regime.derivative_matrix_exact()?;
        let z0 = self.regime.values_at_zero();
        let dk = [0, 1].map(|i| &d[i][0] * &fiber[0] + &d[i][1] * &fiber[1]);
        let h0 = &z0[0] * &fiber[0] + &z0[1] * &fiber[1];
        let h1 = &z0[0] * &dk[0] + &z0[1] * &dk[1];
        let zero = Rational::from_integer(0.into());
        Some(KillingJet {
            a: &lambda * x0 + h0,
            b: mu,
            a_x: lambda,
            a_y: h1,
            b_x: zero.clone(),
            b_y: zero,
        })
    }

    /// `h(y)` in closed form.
    pub fn profile_expression(&self) -> String {
        let names = self.regime.basis_names();
        let mut parts = Vec::new();
        for (c, name) in self.fiber.iter().zip(names.iter()) {
            if *c != 0.0 {
                parts.push(scaled_term(*c, name));
            }
        }
        join_terms(&parts)
    }

    /// `∂x` component in closed form.
    pub fn dx_expression(&self) -> String {
        let mut parts = Vec::new();
        if self.lambda != 0.0 {
            parts.push(scaled_term(self.lambda, "x"));
        }
        let h = self.profile_expression();
        if h != "0" {
            parts.push(h);
        }
        join_terms(&parts)
    }

    pub fn expression(&self) -> String {
        let dx = self.dx_expression();
        let mut parts = Vec::new();
        if dx != "0" {
            parts.push(match dx.as_str() {
                "1" => "∂x".to_string(),
                "-1" => "-∂x".to_string(),
                _ if dx.contains(" + ") || dx.contains(" - ") => format!("({dx})∂x"),
                _ => format!("{dx}∂x"),
            });
        }
        if self.mu != 0.0 {
            parts.push(match self.mu {
                1.0 => "∂y".to_string(),
                -1.0 => "-∂y".to_string(),
                m => format!("{}∂y", fmt_num(m)),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            join_terms(&parts)
        }
    }
}

fn scaled_term(c: f64, name: &str) -> String {
    match (c, name) {
        (c, "1") => fmt_num(c),
        (1.0, n) => n.to_string(),
        (-1.0, n) => format!("-{n}"),
        (c, n) => format!("{}*{n}", fmt_num(c)),
    }
}

fn join_terms(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl Serialize for FamilyField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FamilyField", 6)?;
        st.serialize_field("expression", &self.expression())?;
        st.serialize_field("dx", &self.dx_expression())?;
        st.serialize_field("dy", &fmt_num(self.mu))?;
        st.serialize_field("lambda", &self.lambda)?;
        st.serialize_field("mu", &self.mu)?;
        st.serialize_field("fiber", &self.fiber)?;
        st.end()
    }
}

/// `{x∂x, ∂y, Z1∂x, Z2∂x}` for an admissible member with `δ = 0`.
pub fn killing_basis(p: &FamilyParams) -> Result<[FamilyField; 4]> {
    if !p.is_admissible() {
        return Err(Error::Inadmissible);
    }
    if !num_traits::Zero::is_zero(&p.delta) {
        return Err(Error::Invalid(
            "killing_basis expects δ = 0; normalize first".into(),
        ));
    }
    let r = Regime::of(p);
    Ok([
        FamilyField::x_field(&r),
        FamilyField::y_field(&r),
        FamilyField::z_field(&r, 0),
        FamilyField::z_field(&r, 1),
    ])
}
