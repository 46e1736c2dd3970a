use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::rational::{format_rational, parse_rational, to_f64};
use crate::algebra::{frac, rat, Poly2, Rational, RationalFunction2};
use crate::connection::Connection2D;
use crate::error::{Error, Result};

/// Parameters `(α, β, γ, υ, δ)` of the four-dimensional family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub upsilon: Rational,
    pub delta: Rational,
}

impl FamilyParams {
    pub fn new(
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
        upsilon: Rational,
        delta: Rational,
    ) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            upsilon,
            delta,
        }
    }

    pub fn ints(alpha: i64, beta: i64, gamma: i64, upsilon: i64, delta: i64) -> Self {
        Self::new(rat(alpha), rat(beta), rat(gamma), rat(upsilon), rat(delta))
    }

    /// Parses `a,b,g,u[,d]`; a missing `δ` is zero.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(Error::Invalid(format!(
                "expected 4 or 5 comma-separated parameters, got `{s}`"
            )));
        }
        let mut v = parts
            .into_iter()
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if v.len() == 4 {
            v.push(Rational::zero());
        }
        let [alpha, beta, gamma, upsilon, delta]: [Rational; 5] =
            v.try_into().expect("five parameters");
        Ok(Self::new(alpha, beta, gamma, upsilon, delta))
    }

    /// `β + (γ + υ)(γ + υ - α)`, the coefficient of the curvature.
    pub fn curvature_bracket(&self) -> Rational {
        let gu = &self.gamma + &self.upsilon;
        &self.beta + &gu * (&gu - &self.alpha)
    }

    /// Torsion and curvature do not both vanish.
    pub fn is_admissible(&self) -> bool {
        !(self.upsilon.is_zero() && self.curvature_bracket().is_zero())
    }

    /// `Δ = α² - 4β`.
    pub fn discriminant(&self) -> Rational {
        &self.alpha * &self.alpha - rat(4) * &self.beta
    }

    pub fn with_delta(&self, delta: Rational) -> Self {
        Self {
            delta,
            ..self.clone()
        }
    }

    pub fn as_f64(&self) -> [f64; 5] {
        [
            &self.alpha,
            &self.beta,
            &self.gamma,
            &self.upsilon,
            &self.delta,
        ]
        .map(to_f64)
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = [
            &self.alpha,
            &self.beta,
            &self.gamma,
            &self.upsilon,
            &self.delta,
        ]
        .map(format_rational);
        write!(f, "{}", v.join(","))
    }
}

impl Serialize for FamilyParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FamilyParams", 5)?;
        st.serialize_field("alpha", &format_rational(&self.alpha))?;
        st.serialize_field("beta", &format_rational(&self.beta))?;
        st.serialize_field("gamma", &format_rational(&self.gamma))?;
        st.serialize_field("upsilon", &format_rational(&self.upsilon))?;
        st.serialize_field("delta", &format_rational(&self.delta))?;
        st.end()
    }
}

pub fn make_connection(p: &FamilyParams) -> Connection2D {
    let k = |q: &Rational| RationalFunction2::constant(q.clone());
    let e = Poly2::from_terms([((1, 0), p.beta.clone()), ((0, 0), p.delta.clone())]);
    Connection2D {
        c: k(&p.gamma),
        f: k(&(rat(2) * &p.gamma - &p.alpha)),
        e: RationalFunction2::from_poly(e),
        u: k(&(rat(2) * &p.upsilon)),
        ..Connection2D::zero()
    }
}

/// The function `q(y)` of the coordinate change `(x, y) ↦ (x + q(y), y)` that
/// removes `δ`; it solves `q'' + α q' + β q + δ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaShift {
    Zero,
    Constant(Rational),
    /// `c·y`
    Linear(Rational),
    /// `c·y²`
    Quadratic(Rational),
}

impl DeltaShift {
    pub fn eval(&self, y: f64) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Constant(c) => to_f64(c),
            Self::Linear(c) => to_f64(c) * y,
            Self::Quadratic(c) => to_f64(c) * y * y,
        }
    }

    pub fn derivative(&self, y: f64) -> f64 {
        match self {
            Self::Zero | Self::Constant(_) => 0.0,
            Self::Linear(c) => to_f64(c),
            Self::Quadratic(c) => 2.0 * to_f64(c) * y,
        }
    }

    pub fn as_poly(&self) -> RationalFunction2 {
        let p = match self {
            Self::Zero => Poly2::zero(),
            Self::Constant(c) => Poly2::constant(c.clone()),
            Self::Linear(c) => Poly2::monomial(c.clone(), 0, 1),
            Self::Quadratic(c) => Poly2::monomial(c.clone(), 0, 2),
        };
        RationalFunction2::from_poly(p)
    }
}

impl fmt::Display for DeltaShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => f.write_str("0"),
            other => write!(f, "{}", other.as_poly()),
        }
    }
}

pub fn normalize_delta(p: &FamilyParams) -> (FamilyParams, DeltaShift) {
    let out = p.with_delta(Rational::zero());
    if p.delta.is_zero() {
        return (out, DeltaShift::Zero);
    }
    let shift = if !p.beta.is_zero() {
        DeltaShift::Constant(-&p.delta / &p.beta)
    } else if !p.alpha.is_zero() {
        DeltaShift::Linear(-&p.delta / &p.alpha)
    } else {
        DeltaShift::Quadratic(-&p.delta * frac(1, 2))
    };
    (out, shift)
}

/// `(α, β, γ, υ) ↦ (μα, μ²β, μγ, μυ)`; `δ` is carried as `μ²δ`.
pub fn rescale(p: &FamilyParams, mu: &Rational) -> Result<FamilyParams> {
    if mu.is_zero() {
        return Err(Error::ZeroRescale);
    }
    let mu2 = mu * mu;
    Ok(FamilyParams::new(
        mu * &p.alpha,
        &mu2 * &p.beta,
        mu * &p.gamma,
        mu * &p.upsilon,
        &mu2 * &p.delta,
    ))
}
