use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::aff::AffElement;
use super::sl2::{sl2_flow, unipotent_lower, Sl2Kind};
use super::space::ModelSpace;
use crate::error::{Error, Result};

pub const ORBIT_TOL: f64 = 1e-9;
pub const GRADIENT_FLOOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SubmersionDomain {
    Model(ModelSpace),
    /// `Aff⁺(R)` with coordinates `(a, b)`, acted on by left translations.
    Aff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HolonomyKind {
    Sl2(Sl2Kind),
    /// The subgroup `{(λ, 0)}`.
    AffDilation,
    /// The subgroup `{(1, b)}`.
    AffTranslation,
}

impl fmt::Display for SubmersionDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Model(m) => write!(f, "{m}"),
            Self::Aff => f.write_str("Aff"),
        }
    }
}

impl fmt::Display for HolonomyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sl2(k) => write!(f, "{k}"),
            Self::AffDilation => f.write_str("dilation"),
            Self::AffTranslation => f.write_str("translation"),
        }
    }
}

/// A closed-form function constant on the orbits of a one-parameter holonomy group.
#[derive(Clone, Copy, Debug)]
pub struct Submersion {
    pub domain: SubmersionDomain,
    pub holonomy: HolonomyKind,
    pub formula: &'static str,
    value: fn([f64; 2]) -> f64,
    gradient: fn([f64; 2]) -> [f64; 2],
}

impl Submersion {
    pub fn name(&self) -> String {
        format!("{}/{}", self.domain, self.holonomy)
    }

    pub fn eval(&self, p: [f64; 2]) -> f64 {
        (self.value)(p)
    }

    pub fn gradient(&self, p: [f64; 2]) -> [f64; 2] {
        (self.gradient)(p)
    }

    /// Image of `p` under the time-`t` element of the holonomy group.
    pub fn orbit(&self, t: f64, p: [f64; 2]) -> Result<[f64; 2]> {
        match (self.domain, self.holonomy) {
            (
                SubmersionDomain::Model(ModelSpace::PuncturedPlane),
                HolonomyKind::Sl2(Sl2Kind::Unipotent),
            ) => ModelSpace::PuncturedPlane.act(&unipotent_lower(t), p),
            (SubmersionDomain::Model(m), HolonomyKind::Sl2(k)) => m.act(&sl2_flow(k, t), p),
            (SubmersionDomain::Aff, kind) => {
                let g = match kind {
                    HolonomyKind::AffDilation => AffElement::new(t.exp(), 0.0)?,
                    _ => AffElement::new(1.0, t)?,
                };
                Ok(g.multiply(&AffElement::new(p[0], p[1])?).as_point())
            }
            _ => Err(Error::UnsupportedPair(self.name())),
        }
    }

    /// Whether `p` stays a safe distance away from the singular set.
    fn well_inside(&self, p: [f64; 2]) -> bool {
        let bounded = p.iter().all(|v| v.abs() <= 10.0);
        let ok = match (self.domain, self.holonomy) {
            (SubmersionDomain::Model(ModelSpace::PuncturedPlane), _) => p[0].hypot(p[1]) > 0.25,
            (SubmersionDomain::Model(ModelSpace::DiagonalComplement), h) => {
                (p[0] - p[1]).abs() > 0.25
                    && (h != HolonomyKind::Sl2(Sl2Kind::Semisimple) || p[1].abs() > 0.25)
            }
            (SubmersionDomain::Model(ModelSpace::HalfPlane), _) => p[1] > 0.25,
            (SubmersionDomain::Aff, _) => p[0] > 0.25,
        };
        bounded && ok
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> [f64; 2] {
        match self.domain {
            SubmersionDomain::Aff => [rng.random_range(0.25..4.0), rng.random_range(-2.0..2.0)],
            _ => [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
        }
    }
}

/// The known invariant submersion for a holonomy type on a model.
pub fn invariant_submersion(
    domain: SubmersionDomain,
    holonomy: HolonomyKind,
) -> Result<Submersion> {
    use HolonomyKind::*;
    use SubmersionDomain::*;
    let s = |formula, value, gradient| {
        Ok(Submersion {
            domain,
            holonomy,
            formula,
            value,
            gradient,
        })
    };
    match (domain, holonomy) {
        (Model(ModelSpace::PuncturedPlane), Sl2(Sl2Kind::Semisimple)) => {
            s("x*y", |p| p[0] * p[1], |p| [p[1], p[0]])
        }
        (Model(ModelSpace::PuncturedPlane), Sl2(Sl2Kind::Orthogonal)) => s(
            "x^2 + y^2",
            |p| p[0] * p[0] + p[1] * p[1],
            |p| [2.0 * p[0], 2.0 * p[1]],
        ),
        (Model(ModelSpace::PuncturedPlane), Sl2(Sl2Kind::Unipotent)) => {
            s("x", |p| p[0], |_| [1.0, 0.0])
        }
        (Model(ModelSpace::DiagonalComplement), Sl2(Sl2Kind::Semisimple)) => s(
            "x/y",
            |p| p[0] / p[1],
            |p| [1.0 / p[1], -p[0] / (p[1] * p[1])],
        ),
        (Model(ModelSpace::DiagonalComplement), Sl2(Sl2Kind::Orthogonal)) => s(
            "(1 + x*y)/(x - y)",
            |p| (1.0 + p[0] * p[1]) / (p[0] - p[1]),
            |p| {
                let d = p[0] - p[1];
                let n = 1.0 + p[0] * p[1];
                [(p[1] * d - n) / (d * d), (p[0] * d + n) / (d * d)]
            },
        ),
        (Model(ModelSpace::DiagonalComplement), Sl2(Sl2Kind::Unipotent)) => s(
            "1/(x - y)",
            |p| 1.0 / (p[0] - p[1]),
            |p| {
                let d2 = (p[0] - p[1]).powi(2);
                [-1.0 / d2, 1.0 / d2]
            },
        ),
        (Aff, AffDilation) => s(
            "b/a",
            |p| p[1] / p[0],
            |p| [-p[1] / (p[0] * p[0]), 1.0 / p[0]],
        ),
        (Aff, AffTranslation) => s("a", |p| p[0], |_| [1.0, 0.0]),
        _ => Err(Error::UnsupportedPair(format!("{domain}/{holonomy}"))),
    }
}

/// The eight invariant submersions.
pub fn all_submersions() -> Vec<Submersion> {
    let mut out = Vec::new();
    for m in [ModelSpace::PuncturedPlane, ModelSpace::DiagonalComplement] {
        for k in Sl2Kind::ALL {
            out.push(
                invariant_submersion(SubmersionDomain::Model(m), HolonomyKind::Sl2(k))
                    .expect("listed pair"),
            );
        }
    }
    for h in [HolonomyKind::AffDilation, HolonomyKind::AffTranslation] {
        out.push(invariant_submersion(SubmersionDomain::Aff, h).expect("listed pair"));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubmersionCheck {
    pub name: String,
    pub formula: String,
    pub samples: usize,
    /// Max `|f(g·p) - f(p)|` over sampled `(p, t)`.
    pub orbit_defect: f64,
    /// Min gradient norm at the sampled points.
    pub min_gradient: f64,
    pub passed: bool,
}

/// Samples `n` points and flow times, rejecting pairs that approach the singular set.
pub fn check_submersion(s: &Submersion, n: usize, seed: u64) -> Result<SubmersionCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut defect, mut grad) = (0.0f64, f64::INFINITY);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < n {
        attempts += 1;
        if attempts > 1000 * n.max(1) {
            return Err(Error::Invalid(format!("could not sample {}", s.name())));
        }
        let p = s.random_point(&mut rng);
        let t = rng.random_range(-1.0..1.0);
        if !s.well_inside(p) {
            continue;
        }
        let q = match s.orbit(t, p) {
            Ok(q) if s.well_inside(q) => q,
            Ok(_) | Err(Error::ChartEscape(_)) => continue,
            Err(e) => return Err(e),
        };
        accepted += 1;
        defect = defect.max((s.eval(q) - s.eval(p)).abs());
        let g = s.gradient(p);
        grad = grad.min(g[0].hypot(g[1]));
    }
    Ok(SubmersionCheck {
        name: s.name(),
        formula: s.formula.into(),
        samples: n,
        orbit_defect: defect,
        min_gradient: grad,
        passed: defect < ORBIT_TOL && grad > GRADIENT_FLOOR,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(m: ModelSpace, k: Sl2Kind) -> Submersion {
        invariant_submersion(SubmersionDomain::Model(m), HolonomyKind::Sl2(k)).unwrap()
    }

    #[test]
    fn examples() {
        let f = sub(ModelSpace::PuncturedPlane, Sl2Kind::Semisimple);
        let e = std::f64::consts::E;
        let q = f.orbit(1.0, [1.0, 1.0]).unwrap();
        assert!((q[0] - e).abs() < 1e-15 && (q[1] - 1.0 / e).abs() < 1e-15);
        assert!((f.eval(q) - 1.0).abs() < 1e-15);
        let g = sub(ModelSpace::DiagonalComplement, Sl2Kind::Unipotent);
        assert_eq!(g.orbit(0.5, [1.0, 3.0]).unwrap(), [1.5, 3.5]);
        assert_eq!(g.eval([1.5, 3.5]), g.eval([1.0, 3.0]));
    }

    #[test]
    fn all_eight_pass() {
        let all = all_submersions();
        assert_eq!(all.len(), 8);
        for (i, s) in all.iter().enumerate() {
            let c = check_submersion(s, 50, i as u64).unwrap();
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let h = 1e-6;
        for s in all_submersions() {
            let p = match s.domain {
                SubmersionDomain::Aff => [1.3, -0.4],
                _ => [0.9, -0.6],
            };
            let g = s.gradient(p);
            for i in 0..2 {
                let (mut a, mut b) = (p, p);
                a[i] += h;
                b[i] -= h;
                let fd = (s.eval(a) - s.eval(b)) / (2.0 * h);
                assert!((fd - g[i]).abs() < 1e-6, "{} {i}", s.name());
            }
        }
    }

    #[test]
    fn unsupported_pairs() {
        let e = invariant_submersion(
            SubmersionDomain::Model(ModelSpace::HalfPlane),
            HolonomyKind::Sl2(Sl2Kind::Unipotent),
        );
        assert!(matches!(e, Err(Error::UnsupportedPair(_))));
        assert!(invariant_submersion(
            SubmersionDomain::Aff,
            HolonomyKind::Sl2(Sl2Kind::Orthogonal)
        )
        .is_err());
    }

    #[test]
    fn upper_unipotent_moves_x() {
        // x is invariant only under the subgroup fixing the first coordinate
        let f = sub(ModelSpace::PuncturedPlane, Sl2Kind::Unipotent);
        let q = ModelSpace::PuncturedPlane
            .act(&sl2_flow(Sl2Kind::Unipotent, 1.0), [0.0, 1.0])
            .unwrap();
        assert_ne!(f.eval(q), 0.0);
        assert_eq!(f.eval(f.orbit(1.0, [0.0, 1.0]).unwrap()), 0.0);
    }
}
