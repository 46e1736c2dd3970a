//! Case analysis for a pair of commuting holonomy generators in `H ⋉ K`.

use serde::Serialize;

use super::field::FamilyField;
use super::fmt_num;
use super::group::{GroupElement, GROUP_TOL};
use super::params::{make_connection, FamilyParams};
use super::regime::{det, one_minus, Regime, RegimeKind};
use super::sigma::sample_grid;
use crate::connection::pullback_residual;
use crate::error::Result;

pub const FLOW_EPS: f64 = 1e-3;
pub const KILLING_FLOW_TOL: f64 = 1e-5;
pub const COMMUTATOR_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HolonomyBranch {
    NotCommuting,
    BothInH,
    SubmersionY,
    DeltaPositiveSubcase1,
    DeltaPositiveSubcase2,
    DeltaNegative,
    DeltaZero,
}

/// The curve `x = P(y)` on which two fields become dependent.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegeneracyCurve {
    pub equation: String,
    /// `P` in K-coordinates.
    pub fiber: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome")]
pub enum HolonomyOutcome {
    CommutingFields {
        fields: [FamilyField; 2],
        degeneracy_curve: Option<DegeneracyCurve>,
    },
    ObstructedSubmersionY,
    ObstructedDeltaNegative,
    NotCommuting,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldChecks {
    /// Max pullback residual of the time-ε flows.
    pub killing_flow_residual: f64,
    /// Max norm of the numeric bracket at the samples.
    pub commutator: f64,
    /// Max defect of `g_* W = W` over both generators.
    pub holonomy_invariance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolonomyVerdict {
    pub branch: HolonomyBranch,
    #[serde(flatten)]
    pub outcome: HolonomyOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<FieldChecks>,
}

fn near(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= GROUP_TOL * scale.max(1.0)
}

/// A `q` conjugating both generators into `H`: available when some
/// `1 - Ψ_{h_i}` is invertible, or trivially when both K-parts vanish.
fn conjugator_into_h(g1: &GroupElement, g2: &GroupElement) -> Option<[f64; 2]> {
    for g in [g1, g2] {
        let m = one_minus(&g.psi());
        let scale = m.iter().flatten().fold(1.0f64, |a, v| a.max(v.abs()));
        if det(&m).abs() > GROUP_TOL * scale * scale {
            return g.canonical_q();
        }
    }
    let tiny = |g: &GroupElement| g.k.iter().all(|v| v.abs() <= GROUP_TOL);
    (tiny(g1) && tiny(g2)).then_some([0.0, 0.0])
}

/// `x = -(h1 μ2 - h2 μ1) / (λ1 μ2 - λ2 μ1)` when the denominator is nonzero.
pub fn degeneracy_curve(w1: &FamilyField, w2: &FamilyField) -> Option<DegeneracyCurve> {
    let den = w1.lambda * w2.mu - w2.lambda * w1.mu;
    if den.abs() < 1e-12 {
        return None;
    }
    let fiber = [0, 1].map(|i| -(w1.fiber[i] * w2.mu - w2.fiber[i] * w1.mu) / den);
    let p = FamilyField::new(&w1.regime, 0.0, 0.0, fiber).profile_expression();
    Some(DegeneracyCurve {
        equation: format!("x = {p}"),
        fiber,
    })
}

pub fn check_fields(
    p: &FamilyParams,
    fields: &[FamilyField; 2],
    gens: &[&GroupElement],
) -> Result<FieldChecks> {
    let c = make_connection(&p.with_delta(num_traits::Zero::zero()));
    let samples = sample_grid(5);
    let mut flow = 0.0f64;
    for w in fields {
        flow = flow.max(pullback_residual(&c, &w.flow(FLOW_EPS), &samples)?);
    }
    let mut comm = 0.0f64;
    let mut inv = 0.0f64;
    for &pt in &samples {
        let b = fields[0].numeric_bracket(&fields[1], pt);
        comm = comm.max(b[0].abs()).max(b[1].abs());
        for g in gens {
            let j = g.jacobian(pt);
            for w in fields {
                let v = w.eval(pt);
                let pushed = [
                    j[0][0] * v[0] + j[0][1] * v[1],
                    j[1][0] * v[0] + j[1][1] * v[1],
                ];
                let at = w.eval(g.act(pt));
                let scale = 1.0f64.max(at[0].abs()).max(at[1].abs());
                inv = inv
                    .max((pushed[0] - at[0]).abs() / scale)
                    .max((pushed[1] - at[1]).abs() / scale);
            }
        }
    }
    Ok(FieldChecks {
        killing_flow_residual: flow,
        commutator: comm,
        holonomy_invariance: inv,
        passed: flow < KILLING_FLOW_TOL && comm < COMMUTATOR_TOL && inv < 1e-8,
    })
}

fn commuting(
    p: &FamilyParams,
    branch: HolonomyBranch,
    fields: [FamilyField; 2],
    gens: [&GroupElement; 2],
    note: Option<String>,
) -> Result<HolonomyVerdict> {
    let checks = check_fields(p, &fields, &gens)?;
    let degeneracy_curve = degeneracy_curve(&fields[0], &fields[1]);
    Ok(HolonomyVerdict {
        branch,
        outcome: HolonomyOutcome::CommutingFields {
            fields,
            degeneracy_curve,
        },
        note,
        checks: Some(checks),
    })
}

fn obstructed(branch: HolonomyBranch, outcome: HolonomyOutcome, note: &str) -> HolonomyVerdict {
    HolonomyVerdict {
        branch,
        outcome,
        note: Some(note.to_string()),
        checks: None,
    }
}

/// Pushes fields found after conjugating by `(0, q)` back to the original chart.
fn unconjugate(fields: [FamilyField; 2], q: [f64; 2]) -> [FamilyField; 2] {
    fields.map(|w| w.push_by_k([-q[0], -q[1]]))
}

fn both_in_h(
    p: &FamilyParams,
    r: &Regime,
    g1: &GroupElement,
    g2: &GroupElement,
    q: [f64; 2],
) -> Result<HolonomyVerdict> {
    let fields = unconjugate([FamilyField::x_field(r), FamilyField::y_field(r)], q);
    let note = format!(
        "generators conjugate into H by (0, q) with q = ({}, {})",
        fmt_num(q[0]),
        fmt_num(q[1])
    );
    commuting(p, HolonomyBranch::BothInH, fields, [g1, g2], Some(note))
}

/// Classifies the holonomy generated by `g1`, `g2` for the family member
/// `p` (in the coordinates where `δ = 0`).
pub fn classify_holonomy(
    p: &FamilyParams,
    g1: &GroupElement,
    g2: &GroupElement,
) -> Result<HolonomyVerdict> {
    let r = Regime::of(p);
    let g1 = &GroupElement::new(&r, g1.h, g1.k);
    let g2 = &GroupElement::new(&r, g2.h, g2.k);
    if !g1.commutes(g2)? {
        return Ok(HolonomyVerdict {
            branch: HolonomyBranch::NotCommuting,
            outcome: HolonomyOutcome::NotCommuting,
            note: None,
            checks: None,
        });
    }
    if let Some(q) = conjugator_into_h(g1, g2) {
        return both_in_h(p, &r, g1, g2, q);
    }
    if near(g1.h[1], 0.0, 1.0) && near(g2.h[1], 0.0, 1.0) {
        return Ok(obstructed(
            HolonomyBranch::SubmersionY,
            HolonomyOutcome::ObstructedSubmersionY,
            "holonomy preserves y, which descends to a submersion onto the real line",
        ));
    }
    match &r.kind {
        RegimeKind::ComplexPair { .. } => Ok(obstructed(
            HolonomyBranch::DeltaNegative,
            HolonomyOutcome::ObstructedDeltaNegative,
            "generators outside H have h = (2πma/b, 2πm/b); up to a finite cover no compact model exists",
        )),
        RegimeKind::RealDistinct { a1, a2 } => delta_positive(p, &r, g1, g2, a1.value, a2.value),
        RegimeKind::RealDouble { a } => delta_zero(p, &r, g1, g2, a.value),
    }
}

fn delta_positive(
    p: &FamilyParams,
    r: &Regime,
    g1: &GroupElement,
    g2: &GroupElement,
    a1: f64,
    a2: f64,
) -> Result<HolonomyVerdict> {
    let (e1, e2) = if near(g1.h[1], 0.0, 1.0) {
        (g2, g1)
    } else {
        (g1, g2)
    };
    let [s1, t1] = e1.h;
    let scale = 1.0f64.max(s1.abs()).max(t1.abs());
    // Label the roots so that s1 = b1 t1.
    let swap = if near(s1, a1 * t1, scale) {
        false
    } else if near(s1, a2 * t1, scale) {
        true
    } else {
        // 1 - Ψ_{h1} is invertible: both generators conjugate into H.
        let q = e1.canonical_q().expect("invertible 1 - Ψ");
        return both_in_h(p, r, g1, g2, q);
    };
    let (b1, b2) = if swap { (a2, a1) } else { (a1, a2) };
    let sw = |v: [f64; 2]| if swap { [v[1], v[0]] } else { v };
    let (k1, k2) = (sw(e1.k), sw(e2.k));

    // Conjugate so that the second K-coordinate of e1 vanishes.
    let qv = -k1[1] / (1.0 - ((b1 - b2) * t1).exp());
    let q = [0.0, qv];
    let conj = |h: [f64; 2], k: [f64; 2]| {
        let d = [(h[0] - b1 * h[1]).exp(), (h[0] - b2 * h[1]).exp()];
        [k[0] + (1.0 - d[0]) * q[0], k[1] + (1.0 - d[1]) * q[1]]
    };
    let k2c = conj(e2.h, k2);
    let [s2, t2] = e2.h;
    let scale2 = 1.0f64.max(s2.abs()).max(t2.abs());

    // Fields in swapped K-coordinates; `z1` is the exponential for b1.
    let field = |lambda: f64, mu: f64, fiber: [f64; 2]| FamilyField::new(r, lambda, mu, sw(fiber));
    let (fields, branch, note) = if near(s2, b1 * t2, scale2) {
        (
            [field(b1, 1.0, [0.0, 0.0]), field(0.0, 0.0, [1.0, 0.0])],
            HolonomyBranch::DeltaPositiveSubcase1,
            "holonomy lies in the image of Φ(ξ, ζ) = ((a1ξ, ξ), (ζ, 0))".to_string(),
        )
    } else if near(s2, b2 * t2, scale2) && !near(t2, 0.0, 1.0) {
        let c = k2c[0] * (b1 - b2) / (1.0 - ((b2 - b1) * t2).exp());
        (
            [field(b1, 1.0, [0.0, 0.0]), field(b2, 1.0, [c, 0.0])],
            HolonomyBranch::DeltaPositiveSubcase2,
            format!(
                "c = {}; in the conjugated chart the fields degenerate on (a1 - a2) x = c e^(a1 y)",
                fmt_num(c)
            ),
        )
    } else {
        let q = e2.canonical_q().expect("invertible 1 - Ψ");
        return both_in_h(p, r, g1, g2, q);
    };
    let fields = unconjugate(fields, sw(q));
    commuting(p, branch, fields, [g1, g2], Some(note))
}

fn delta_zero(
    p: &FamilyParams,
    r: &Regime,
    g1: &GroupElement,
    g2: &GroupElement,
    a: f64,
) -> Result<HolonomyVerdict> {
    let e1 = if near(g1.h[1], 0.0, 1.0) { g2 } else { g1 };
    let c = e1.k[1] / e1.h[1];
    let fields = [
        FamilyField::z_field(r, 0),
        FamilyField::new(r, a, 1.0, [0.0, c]),
    ];
    let note = format!(
        "holonomy lies in the image of Φ_c(ξ, ζ) = ((aξ, ξ), (ζ - cξ²/2, cξ)) with c = {}",
        fmt_num(c)
    );
    commuting(p, HolonomyBranch::DeltaZero, fields, [g1, g2], Some(note))
}
