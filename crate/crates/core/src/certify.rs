//! The aggregated certificate suite behind `akl verify`.
//!
//! Each certificate is a deterministic, self-contained check. [`Faults`]
//! lets tests inject known defects to confirm the suite notices them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::linalg::same_span;
use crate::algebra::{frac, rat, PolyS, Rational, RationalFunction2};
use crate::connection::{geodesic, pullback_residual, Connection2D};
use crate::error::Result;
use crate::family::{
    classify_holonomy, killing_basis, make_connection, mat_mul, sample_grid, sigma_test,
    FamilyField, FamilyParams, GroupElement, HolonomyBranch, HolonomyOutcome, Mat2, Regime,
    GROUP_TOL, ISOMETRY_TOL,
};
use crate::killing::{
    case6_certificate, classify_connection, expected_case6_determinant, AlgebraLabel, BasePoint,
    KillingJet, DEFAULT_MAX_ORDER,
};
use crate::models::{hyperbolic_connection, sphere_connection, verify_models};
use crate::par::{self, Exec};

/// Defects that can be switched on to exercise the suite.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Faults {
    /// Replace `Ψ_h` by `-Ψ_h` in the representation check.
    pub flip_psi_sign: bool,
    /// Compare the case-6 determinant against this polynomial instead.
    pub case6_target: Option<PolyS>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Certificate {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self::new(name, passed, detail),
            Err(e) => Self::new(name, false, format!("error: {e}")),
        }
    }
}

pub const GROUP_SAMPLES: usize = 200;

/// Representative `(α, β)` for `Δ > 0`, `Δ < 0` and `Δ = 0`.
pub const REGIMES: [(i64, i64); 3] = [(3, 2), (1, 3), (2, 1)];

pub fn case6(faults: &Faults) -> Certificate {
    let target = faults
        .case6_target
        .clone()
        .unwrap_or_else(expected_case6_determinant);
    let c = case6_certificate(&target);
    let detail = match &c.lambda {
        Some(l) => format!(
            "det = {} = {} · ({}); zero connection unique at s = 1: {}",
            c.determinant, l, target, c.unique_at_s1
        ),
        None => format!(
            "det = {} is not a nonzero multiple of {}",
            c.determinant, target
        ),
    };
    Certificate::new("case6-determinant", c.passed, detail)
}

/// Parameter grid of the family dimension certificate.
pub fn dimension_grid() -> Vec<FamilyParams> {
    let mut out = Vec::new();
    for a in [-3, 0, 3] {
        for b in [0, 2, -4] {
            for g in [-1, 0, 1] {
                for u in [0, 1] {
                    out.push(FamilyParams::ints(a, b, g, u, 0));
                }
            }
        }
    }
    out
}

/// Whether the Killing jets of `killing_basis(p)` are exact at rational points.
pub fn has_rational_roots(p: &FamilyParams) -> bool {
    Regime::of(p).derivative_matrix_exact().is_some()
}

/// Outcome for one family member at one base point.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionCase {
    pub params: FamilyParams,
    pub point: BasePoint,
    pub dim: usize,
    pub label: AlgebraLabel,
    pub passed: bool,
}

pub fn dimension_case(p: &FamilyParams, point: &BasePoint) -> Result<DimensionCase> {
    let c = make_connection(p);
    let r = classify_connection(&c, point, DEFAULT_MAX_ORDER)?;
    let passed = if p.is_admissible() {
        let basis = killing_basis(p)?;
        let jets: Option<Vec<Vec<Rational>>> = basis
            .iter()
            .map(|w| w.exact_jet(&point.x0).map(|j| j.to_vec()))
            .collect();
        let got: Vec<Vec<Rational>> = r.basis.iter().map(KillingJet::to_vec).collect();
        r.dim == 4
            && r.label == AlgebraLabel::Dim4Case
            && jets.is_some_and(|j| same_span(&got, &j, 6))
    } else {
        r.dim == 6 && r.label == AlgebraLabel::FlatTorsionFree
    };
    Ok(DimensionCase {
        params: p.clone(),
        point: point.clone(),
        dim: r.dim,
        label: r.label,
        passed,
    })
}

pub fn family_dimension(exec: Exec) -> Certificate {
    let points = [BasePoint::ints(0, 0), BasePoint::ints(1, 0)];
    let cases: Vec<(FamilyParams, BasePoint)> = dimension_grid()
        .into_iter()
        .filter(has_rational_roots)
        .flat_map(|p| points.iter().map(move |q| (p.clone(), q.clone())))
        .collect();
    let results = par::map(exec, &cases, |(p, q)| dimension_case(p, q));
    let mut failed = Vec::new();
    for (r, (p, q)) in results.iter().zip(&cases) {
        match r {
            Ok(c) if c.passed => {}
            Ok(c) => failed.push(format!("({p}) at {q}: dim {} {}", c.dim, c.label)),
            Err(e) => failed.push(format!("({p}) at {q}: {e}")),
        }
    }
    let detail = format!(
        "{} cases, {} failed {}",
        cases.len(),
        failed.len(),
        failed.join("; ")
    );
    Certificate::new("family-dimension", failed.is_empty(), detail.trim_end())
}

/// The 4×4×4 grid over `(α, γ, υ)` at `β = 2`.
pub fn sigma_grid() -> Vec<FamilyParams> {
    let alphas = [rat(-1), rat(0), rat(1), rat(2)];
    let gammas = [frac(-1, 2), rat(0), frac(1, 2), rat(1)];
    let upsilons = [rat(0), frac(1, 2), rat(1), rat(-1)];
    let mut out = Vec::new();
    for a in &alphas {
        for g in &gammas {
            for u in &upsilons {
                out.push(FamilyParams::new(
                    a.clone(),
                    rat(2),
                    g.clone(),
                    u.clone(),
                    rat(0),
                ));
            }
        }
    }
    out
}

pub fn sigma_criterion(exec: Exec) -> Certificate {
    let grid = sigma_grid();
    let results = par::map(exec, &grid, sigma_test);
    let mut wrong = Vec::new();
    let (mut on_max, mut off_min) = (0.0f64, f64::INFINITY);
    for (p, r) in grid.iter().zip(results) {
        let on_slice = p.alpha == rat(2) * &p.gamma && p.upsilon == rat(0);
        match r {
            Ok(r) => {
                if on_slice {
                    on_max = on_max.max(r.residual);
                } else {
                    off_min = off_min.min(r.residual);
                }
                if r.is_isometry != on_slice || (!on_slice && r.residual < 0.1) {
                    wrong.push(format!("({p}) residual {:e}", r.residual));
                }
            }
            Err(e) => wrong.push(format!("({p}): {e}")),
        }
    }
    let detail = format!(
        "{} parameters; max on-slice residual {:e}, min off-slice residual {:e}{}",
        grid.len(),
        on_max,
        off_min,
        if wrong.is_empty() {
            String::new()
        } else {
            format!("; wrong: {}", wrong.join(", "))
        }
    );
    Certificate::new("sigma-criterion", wrong.is_empty(), detail)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.random_range(-9..=9), rng.random_range(1..=5))
}

pub fn curvature_formula(seed: u64) -> Certificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..20 {
        let q: Vec<Rational> = (0..5).map(|_| random_rational(&mut rng)).collect();
        let p = FamilyParams::new(
            q[0].clone(),
            q[1].clone(),
            q[2].clone(),
            q[3].clone(),
            q[4].clone(),
        );
        let t = make_connection(&p).curvature();
        let gu = &p.gamma + &p.upsilon;
        let expected = &p.beta + &gu * &(&gu - &p.alpha);
        let ok = t.curvature_dx.iter().all(RationalFunction2::is_zero)
            && t.curvature_dy[0] == RationalFunction2::constant(expected)
            && t.curvature_dy[1].is_zero();
        if !ok {
            bad.push(p.to_string());
        }
    }
    Certificate::new(
        "curvature-formula",
        bad.is_empty(),
        format!("20 random parameter tuples; mismatches: {}", bad.len()),
    )
}

fn regime_params(alpha: i64, beta: i64) -> FamilyParams {
    FamilyParams::ints(alpha, beta, 1, 1, 0)
}

fn random_element(r: &Regime, rng: &mut ChaCha8Rng) -> GroupElement {
    let mut d = || rng.random_range(-1.0..1.0);
    GroupElement::new(r, [d(), d()], [d(), d()])
}

fn mat_gap(a: &Mat2, b: &Mat2) -> f64 {
    crate::models::max_abs_diff(a, b)
}

/// Sampled defects of the group identities in one regime.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GroupDefects {
    pub representation: f64,
    pub associativity: f64,
    pub left_action: f64,
    pub commutation_disagreements: usize,
    pub isometry_residual: f64,
}

pub fn group_defects(
    alpha: i64,
    beta: i64,
    samples: usize,
    seed: u64,
    faults: &Faults,
) -> Result<GroupDefects> {
    let p = regime_params(alpha, beta);
    let r = Regime::of(&p);
    let c = make_connection(&p);
    let grid = sample_grid(5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sign = if faults.flip_psi_sign { -1.0 } else { 1.0 };
    let psi = |h: [f64; 2]| r.psi(h).map(|row| row.map(|v| sign * v));
    let mut d = GroupDefects::default();
    for i in 0..samples {
        let (g1, g2, g3) = (
            random_element(&r, &mut rng),
            random_element(&r, &mut rng),
            random_element(&r, &mut rng),
        );
        let sum = [g1.h[0] + g2.h[0], g1.h[1] + g2.h[1]];
        d.representation = d
            .representation
            .max(mat_gap(&psi(sum), &mat_mul(&psi(g1.h), &psi(g2.h))));

        let lhs = g1.multiply(&g2)?.multiply(&g3)?;
        let rhs = g1.multiply(&g2.multiply(&g3)?)?;
        d.associativity = d.associativity.max(lhs.distance(&rhs));

        let pt = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let (a, b) = (g1.multiply(&g2)?.act(pt), g1.act(g2.act(pt)));
        d.left_action = d
            .left_action
            .max((a[0] - b[0]).abs().max((a[1] - b[1]).abs()));

        // every other pair is made to commute by conjugating two elements of H
        let (c1, c2) = if i % 2 == 0 {
            let q = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            (
                GroupElement::new(&r, g1.h, [0.0; 2]).conjugate_by_k(q),
                GroupElement::new(&r, g2.h, [0.0; 2]).conjugate_by_k(q),
            )
        } else {
            (g1.clone(), g2.clone())
        };
        let numeric = [[0.0, 0.0], [1.0, -0.5], [-0.7, 0.8]].iter().all(|&x| {
            let (u, v) = (c1.act(c2.act(x)), c2.act(c1.act(x)));
            (u[0] - v[0]).abs().max((u[1] - v[1]).abs()) < 1e3 * GROUP_TOL
        });
        if numeric != c1.commutes(&c2)? {
            d.commutation_disagreements += 1;
        }

        d.isometry_residual = d
            .isometry_residual
            .max(pullback_residual(&c, &g1.as_map(), &grid)?);
    }
    Ok(d)
}

/// The five group certificates, over all three regimes.
pub fn group_certificates(exec: Exec, faults: &Faults) -> Vec<Certificate> {
    let results = par::map(exec, &REGIMES, |&(a, b)| {
        group_defects(a, b, GROUP_SAMPLES, 7 + a as u64, faults)
    });
    let mut worst = GroupDefects::default();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(d) => {
                worst.representation = worst.representation.max(d.representation);
                worst.associativity = worst.associativity.max(d.associativity);
                worst.left_action = worst.left_action.max(d.left_action);
                worst.commutation_disagreements += d.commutation_disagreements;
                worst.isometry_residual = worst.isometry_residual.max(d.isometry_residual);
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let ok = errors.is_empty();
    let n = format!("{GROUP_SAMPLES} samples per regime");
    vec![
        Certificate::new(
            "psi-representation",
            ok && worst.representation < GROUP_TOL,
            format!("{n}; max defect {:e}", worst.representation),
        ),
        Certificate::new(
            "semidirect-associativity",
            ok && worst.associativity < GROUP_TOL,
            format!("{n}; max defect {:e}", worst.associativity),
        ),
        Certificate::new(
            "left-action",
            ok && worst.left_action < GROUP_TOL,
            format!("{n}; max defect {:e}", worst.left_action),
        ),
        Certificate::new(
            "commutation-criterion",
            ok && worst.commutation_disagreements == 0,
            format!("{n}; disagreements {}", worst.commutation_disagreements),
        ),
        Certificate::new(
            "group-isometries",
            ok && worst.isometry_residual < ISOMETRY_TOL,
            format!(
                "{n}; max pullback residual {:e}{}",
                worst.isometry_residual,
                errors.join("; ")
            ),
        ),
    ]
}

/// A generator pair reaching each holonomy branch.
pub fn holonomy_inputs() -> Vec<(HolonomyBranch, FamilyParams, GroupElement, GroupElement)> {
    let mut out = Vec::new();

    let p = FamilyParams::ints(0, 1, 0, 0, 0);
    let r = Regime::of(&p);
    out.push((
        HolonomyBranch::BothInH,
        p.clone(),
        GroupElement::identity(&r),
        GroupElement::identity(&r),
    ));
    out.push((
        HolonomyBranch::SubmersionY,
        p.clone(),
        GroupElement::new(&r, [0.0, 0.0], [1.0, 0.0]),
        GroupElement::new(&r, [0.0, 0.0], [0.0, 1.0]),
    ));
    out.push((
        HolonomyBranch::DeltaNegative,
        p,
        GroupElement::new(&r, [0.0, 2.0 * std::f64::consts::PI], [1.0, 0.0]),
        GroupElement::new(&r, [0.0, 0.0], [0.0, 1.0]),
    ));

    let p = FamilyParams::ints(3, 2, 1, 0, 0);
    let r = Regime::of(&p);
    let (x, y, z1) = (
        FamilyField::x_field(&r),
        FamilyField::y_field(&r),
        FamilyField::z_field(&r, 0),
    );
    let w1 = x.scale(-1.0).add(&y);
    let g1 = GroupElement::from_flow(&w1, 1.0);
    let sub1 = GroupElement::from_flow(&z1, 1.0);
    let sub2 = GroupElement::from_flow(&x.scale(-2.0).add(&y).add(&z1), 1.0);
    out.push((
        HolonomyBranch::DeltaPositiveSubcase1,
        p.clone(),
        g1.clone(),
        sub1,
    ));
    out.push((HolonomyBranch::DeltaPositiveSubcase2, p.clone(), g1, sub2));
    let q = [0.5, -0.25];
    out.push((
        HolonomyBranch::BothInH,
        p,
        GroupElement::new(&r, [0.3, 0.5], [0.0; 2]).conjugate_by_k(q),
        GroupElement::new(&r, [-0.2, 1.5], [0.0; 2]).conjugate_by_k(q),
    ));

    let p = FamilyParams::ints(0, 0, 1, 0, 0);
    let r = Regime::of(&p);
    out.push((
        HolonomyBranch::DeltaZero,
        p,
        GroupElement::new(&r, [0.0, 1.0], [0.0, 1.0]),
        GroupElement::new(&r, [0.0, 2.0], [0.0, 2.0]),
    ));
    out
}

pub fn holonomy_branches(exec: Exec) -> Certificate {
    let inputs = holonomy_inputs();
    let results = par::map(exec, &inputs, |(_, p, g1, g2)| classify_holonomy(p, g1, g2));
    let mut bad = Vec::new();
    for ((want, ..), v) in inputs.iter().zip(results) {
        match v {
            Ok(v) => {
                let checks_ok = match &v.outcome {
                    HolonomyOutcome::CommutingFields { .. } => {
                        v.checks.as_ref().is_some_and(|c| c.passed)
                    }
                    _ => true,
                };
                if v.branch != *want || !checks_ok {
                    bad.push(format!(
                        "expected {want:?}, got {:?} (checks {:?})",
                        v.branch, v.checks
                    ));
                }
            }
            Err(e) => bad.push(format!("{want:?}: {e}")),
        }
    }
    Certificate::new(
        "holonomy-branches",
        bad.is_empty(),
        format!(
            "{} constructed inputs{}",
            inputs.len(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("; {}", bad.join("; "))
            }
        ),
    )
}

pub fn cross_models(exec: Exec) -> Certificate {
    let cases = [
        (
            "hyperbolic",
            hyperbolic_connection(),
            BasePoint::ints(0, 1),
            3,
            AlgebraLabel::SL2,
        ),
        (
            "sphere",
            sphere_connection(),
            BasePoint::ints(0, 0),
            3,
            AlgebraLabel::SO3,
        ),
        (
            "zero",
            Connection2D::zero(),
            BasePoint::ints(0, 0),
            6,
            AlgebraLabel::FlatTorsionFree,
        ),
    ];
    let results = par::map(exec, &cases, |(_, c, p, ..)| {
        classify_connection(c, p, DEFAULT_MAX_ORDER)
    });
    let mut parts = Vec::new();
    let mut ok = true;
    for ((name, c, _, dim, label), r) in cases.iter().zip(results) {
        match r {
            Ok(r) => {
                ok &= r.dim == *dim && r.label == *label && c.is_torsion_free();
                parts.push(format!("{name}: dim {} {}", r.dim, r.label));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    Certificate::new("cross-model-classification", ok, parts.join(", "))
}

pub fn invariant_submersions() -> Certificate {
    Certificate::from_result(
        "models",
        verify_models().map(|rows| {
            let failed: Vec<String> = rows
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.name.clone())
                .collect();
            (
                failed.is_empty(),
                format!("{} checks; failed: [{}]", rows.len(), failed.join(", ")),
            )
        }),
    )
}

/// Max position error of the geodesic from `(1, 0)` with velocity `(0, 1)`
/// on `family(0,1,0,0,0)`, whose exact `x`-coordinate is `cos t`.
pub fn geodesic_error(n: usize) -> Result<f64> {
    let c = make_connection(&FamilyParams::ints(0, 1, 0, 0, 0));
    let t_end = 2.0;
    let samples = geodesic(&c, [1.0, 0.0], [0.0, 1.0], t_end, n)?;
    Ok(samples
        .iter()
        .map(|s| (s.x - s.t.cos()).abs().max((s.y - s.t).abs()))
        .fold(0.0, f64::max))
}

pub fn geodesic_convergence() -> Certificate {
    Certificate::from_result(
        "geodesic-convergence",
        (|| {
            let (e1, e2) = (geodesic_error(20)?, geodesic_error(40)?);
            let ratio = e1 / e2;
            Ok((
                (12.0..=20.0).contains(&ratio),
                format!("errors {e1:e}, {e2:e}; ratio {ratio:.3}"),
            ))
        })(),
    )
}

/// Runs every certificate. Output order is fixed.
pub fn run_all(exec: Exec, faults: &Faults) -> Vec<Certificate> {
    let mut out = vec![
        case6(faults),
        family_dimension(exec),
        sigma_criterion(exec),
        curvature_formula(11),
    ];
    out.extend(group_certificates(exec, faults));
    out.push(holonomy_branches(exec));
    out.push(cross_models(exec));
    out.push(invariant_submersions());
    out.push(geodesic_convergence());
    out
}
