//! Homogeneous models: one-parameter subgroups of `SL(2,R)` and their
//! invariant submersions, the hyperbolic and round Levi-Civita connections,
//! and the group `Aff⁺(R)`.

mod aff;
mod metric;
mod sl2;
mod space;
mod submersion;

pub use aff::{aff_commutes, aff_multiply, AffElement, AFF_TOL};
pub use metric::{hyperbolic_connection, sphere_connection};
pub use sl2::{max_abs_diff, sl2_flow, unipotent_lower, Sl2Kind};
pub use space::{model_act, ModelSpace};
pub use submersion::{
    all_submersions, check_submersion, invariant_submersion, HolonomyKind, Submersion,
    SubmersionCheck, SubmersionDomain, GRADIENT_FLOOR, ORBIT_TOL,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::family::{det, mat_mul};
use crate::killing::{classify_connection, AlgebraLabel, BasePoint, DEFAULT_MAX_ORDER};

/// One row of the models table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelCheck {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ModelCheck {
    fn below(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            passed: measured < tolerance,
        }
    }
}

fn random_sl2(rng: &mut ChaCha8Rng) -> [[f64; 2]; 2] {
    let mut m = [[1.0, 0.0], [0.0, 1.0]];
    for k in Sl2Kind::ALL {
        m = mat_mul(&m, &sl2_flow(k, rng.random_range(-0.5..0.5)));
    }
    m
}

/// Flow and determinant identities for the three subgroups.
pub fn check_flows(samples: usize, seed: u64) -> Vec<ModelCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Sl2Kind::ALL
        .into_iter()
        .flat_map(|k| {
            let (mut flow, mut det1) = (0.0f64, 0.0f64);
            for _ in 0..samples {
                let (t, s) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                let lhs = sl2_flow(k, t + s);
                flow = flow.max(max_abs_diff(
                    &lhs,
                    &mat_mul(&sl2_flow(k, t), &sl2_flow(k, s)),
                ));
                det1 = det1.max((det(&lhs) - 1.0).abs());
            }
            [
                ModelCheck::below(format!("sl2 {k} flow property"), flow, 1e-10),
                ModelCheck::below(format!("sl2 {k} determinant"), det1, 1e-12),
            ]
        })
        .collect()
}

/// `(m1 m2)·p = m1·(m2·p)` on each model, skipping chart escapes.
pub fn check_actions(samples: usize, seed: u64) -> Vec<ModelCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ModelSpace::ALL
        .into_iter()
        .map(|space| {
            let mut worst = 0.0f64;
            let mut done = 0;
            while done < samples {
                let (m1, m2) = (random_sl2(&mut rng), random_sl2(&mut rng));
                let mut p: [f64; 2] = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
                if space == ModelSpace::HalfPlane {
                    p[1] = p[1].abs() + 0.1;
                }
                let (Ok(a), Ok(b)) = (
                    space.act(&mat_mul(&m1, &m2), p),
                    space.act(&m2, p).and_then(|q| space.act(&m1, q)),
                ) else {
                    continue;
                };
                if a.iter().chain(&b).any(|v| v.abs() > 1e3) {
                    continue;
                }
                done += 1;
                let scale = 1.0f64.max(a[0].abs()).max(a[1].abs());
                worst = worst.max((a[0] - b[0]).abs().max((a[1] - b[1]).abs()) / scale);
            }
            ModelCheck::below(format!("{space} action axiom"), worst, 1e-10)
        })
        .collect()
}

/// Associativity, inverses and the commutation predicate for `Aff⁺(R)`.
pub fn check_aff(samples: usize, seed: u64) -> Vec<ModelCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        AffElement::new(rng.random_range(0.2..3.0), rng.random_range(-2.0..2.0)).expect("a > 0")
    };
    let (mut assoc, mut inv, mut disagree) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..samples {
        let (g, h, k) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        assoc = assoc.max(
            g.multiply(&h)
                .multiply(&k)
                .distance(&g.multiply(&h.multiply(&k))),
        );
        inv = inv.max(g.multiply(&g.inverse()).distance(&AffElement::identity()));
        // half the pairs are built to commute: (a2, b2) with b2 = b1 (a2 - 1)/(a1 - 1)
        let h = if i % 2 == 0 && (g.a - 1.0).abs() > 0.1 {
            AffElement::new(h.a, g.b * (h.a - 1.0) / (g.a - 1.0)).expect("a > 0")
        } else {
            h
        };
        let direct = g.multiply(&h).distance(&h.multiply(&g)) < AFF_TOL * 10.0;
        if direct != aff_commutes(&g, &h) {
            disagree += 1.0;
        }
    }
    vec![
        ModelCheck::below("Aff associativity", assoc, 1e-10),
        ModelCheck::below("Aff inverse", inv, 1e-10),
        ModelCheck::below("Aff commutation predicate disagreements", disagree, 0.5),
    ]
}

/// Killing dimension and label of the hyperbolic and round connections.
pub fn check_metrics() -> Result<Vec<ModelCheck>> {
    let cases = [
        (
            "hyperbolic",
            hyperbolic_connection(),
            BasePoint::ints(0, 1),
            AlgebraLabel::SL2,
        ),
        (
            "sphere",
            sphere_connection(),
            BasePoint::ints(0, 0),
            AlgebraLabel::SO3,
        ),
    ];
    let mut out = Vec::new();
    for (name, c, p, label) in cases {
        let r = classify_connection(&c, &p, DEFAULT_MAX_ORDER)?;
        let ok = r.dim == 3 && r.label == label && c.is_torsion_free();
        out.push(ModelCheck {
            name: format!("{name} connection is {label} of dimension 3"),
            measured: r.dim as f64,
            tolerance: 0.0,
            passed: ok,
        });
    }
    Ok(out)
}

/// Every model check, in a fixed order.
pub fn verify_models() -> Result<Vec<ModelCheck>> {
    let mut out = check_flows(200, 1);
    out.extend(check_actions(200, 2));
    out.extend(check_aff(200, 3));
    for (i, s) in all_submersions().iter().enumerate() {
        let c = check_submersion(s, 50, 100 + i as u64)?;
        out.push(ModelCheck {
            name: format!("f0 = {} invariant on {}", c.formula, c.name),
            measured: c.orbit_defect,
            tolerance: ORBIT_TOL,
            passed: c.passed,
        });
    }
    out.extend(check_metrics()?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_passes() {
        let all = verify_models().unwrap();
        assert!(all.len() >= 20);
        for c in &all {
            assert!(c.passed, "{c:?}");
        }
    }
}
