//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed; the process
//! exits nonzero if any criterion fails.

use std::time::Instant;

use akl_core::algebra::linalg::{rank, same_span};
use akl_core::algebra::{frac, rat, PolyS, Rational, RationalFunction2, Var};
use akl_core::connection::{geodesic, pullback_residual, Connection2D};
use akl_core::family::{
    classify_holonomy, killing_basis, make_connection, mat_mul, sample_grid, sigma_test, FamilyField, FamilyParams,
    GroupElement, HolonomyBranch, HolonomyOutcome, Mat2, Regime, COMMUTATOR_TOL, KILLING_FLOW_TOL,
};
use akl_core::killing::{case6_certificate, classify_connection, AlgebraLabel, BasePoint, KillingJet, DEFAULT_MAX_ORDER};
use akl_core::models::{
    hyperbolic_connection, invariant_submersion, sphere_connection, HolonomyKind, ModelSpace, Sl2Kind,
    SubmersionDomain,
};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

// ---------------------------------------------------------------- helpers

fn det_rational(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    det
}

fn close2(a: [f64; 2], b: [f64; 2], tol: f64) -> bool {
    (a[0] - b[0]).abs() <= tol && (a[1] - b[1]).abs() <= tol
}

// ---------------------------------------------------------------- AC1

/// Row `(k, i, j)` of `L_X ∇ = 0` at a zero of the linear field with
/// Jacobian `[[s, 1], [-1, s]]`, in the unknowns `Γ^a_bc` (index `4a + 2b + c`).
fn case6_oracle_matrix(s: &Rational) -> Vec<Vec<Rational>> {
    let jac = [[s.clone(), rat(1)], [rat(-1), s.clone()]];
    let idx = |a: usize, b: usize, c: usize| 4 * a + 2 * b + c;
    let mut rows = Vec::new();
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                let mut row = vec![Rational::zero(); 8];
                for m in 0..2 {
                    row[idx(m, i, j)] -= jac[k][m].clone();
                    row[idx(k, m, j)] += jac[m][i].clone();
                    row[idx(k, i, m)] += jac[m][j].clone();
                }
                rows.push(row);
            }
        }
    }
    rows
}

fn ac1() -> Outcome {
    let target = |s: &Rational| (s * s + rat(9)) * (s * s + rat(1)).pow(3);
    let lambda = det_rational(case6_oracle_matrix(&rat(0))) / target(&rat(0));
    // both sides have degree ≤ 8 in s, so 17 sample points decide equality
    let agrees = (-8..=8).all(|n| {
        let s = rat(n);
        det_rational(case6_oracle_matrix(&s)) == &lambda * target(&s)
    });
    let unique = rank(&case6_oracle_matrix(&rat(1)), 8) == 8;
    let lib = case6_certificate(&PolyS::from_i64(&[9, 0, 28, 0, 30, 0, 12, 0, 1]));
    let expanded = &PolyS::from_i64(&[9, 0, 1]) * &PolyS::from_i64(&[1, 0, 1]).pow(3);
    let lib_ok = lib.passed && lib.target == expanded;
    outcome(
        !lambda.is_zero() && agrees && unique && lib_ok,
        format!(
            "oracle λ = {lambda}, matches on 17 points: {agrees}; library det {} with λ = {}; unique at s=1: {unique}",
            lib.determinant,
            lib.lambda.map(|l| l.to_string()).unwrap_or_else(|| "none".into())
        ),
    )
}

// ---------------------------------------------------------------- AC2

fn family_connection_oracle(p: &FamilyParams) -> Connection2D {
    let (a, b, g, u, d) = (&p.alpha, &p.beta, &p.gamma, &p.upsilon, &p.delta);
    let e = format!("({b})*x + ({d})");
    let f = format!("{}", rat(2) * g - a);
    let (c, uu) = (g.to_string(), (rat(2) * u).to_string());
    Connection2D::parse(["0", "0", &c, "0", &e, &f, &uu, "0"]).unwrap()
}

/// Value and y-derivative at `y = 0` spanning the two profile functions.
/// Distinct roots `a ± r` and the pairs `e^{ay}cos, e^{ay}sin` or `e^{ay}, ye^{ay}`
/// all span the same 1-jets as `(1, a)` and `(0, 1)` with `a = -α/2`.
fn profile_jets(p: &FamilyParams) -> [[Rational; 2]; 2] {
    [[rat(1), -&p.alpha / rat(2)], [rat(0), rat(1)]]
}

fn expected_jets(p: &FamilyParams, x0: &Rational) -> Vec<Vec<Rational>> {
    let z = profile_jets(p);
    let z0 = Rational::zero;
    let mut out = vec![
        vec![x0.clone(), z0(), rat(1), z0(), z0(), z0()],
        vec![z0(), rat(1), z0(), z0(), z0(), z0()],
    ];
    for [v, d] in z {
        out.push(vec![v, z0(), z0(), d, z0(), z0()]);
    }
    out
}

fn ac2() -> Outcome {
    let mut checked = (0, 0);
    let mut failures = Vec::new();
    for a in [-3, 0, 3] {
        for b in [0, 2, -4] {
            for g in [-1, 0, 1] {
                for u in [0, 1] {
                    let p = FamilyParams::ints(a, b, g, u, 0);
                    let c = make_connection(&p);
                    if c != family_connection_oracle(&p) {
                        failures.push(format!("connection ({p})"));
                    }
                    let gu = &p.gamma + &p.upsilon;
                    let admissible = !p.upsilon.is_zero() || !(&p.beta + &gu * (&gu - &p.alpha)).is_zero();
                    for x0 in [0, 1] {
                        let point = BasePoint::ints(x0, 0);
                        let r = classify_connection(&c, &point, DEFAULT_MAX_ORDER).unwrap();
                        let ok = if admissible {
                            checked.0 += 1;
                            let got: Vec<Vec<Rational>> = r.basis.iter().map(KillingJet::to_vec).collect();
                            let want = expected_jets(&p, &rat(x0));
                            // closed-form fields have exact jets only for rational roots
                            let lib: Option<Vec<Vec<Rational>>> = killing_basis(&p)
                                .unwrap()
                                .iter()
                                .map(|w| w.exact_jet(&rat(x0)).map(|j| j.to_vec()))
                                .collect();
                            r.dim == 4
                                && r.label == AlgebraLabel::Dim4Case
                                && same_span(&got, &want, 6)
                                && lib.is_none_or(|l| same_span(&l, &want, 6))
                        } else {
                            checked.1 += 1;
                            r.dim == 6 && r.label == AlgebraLabel::FlatTorsionFree
                        };
                        if !ok {
                            failures.push(format!("({p}) at ({x0},0): dim {} {}", r.dim, r.label));
                        }
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} admissible and {} inadmissible runs; failures: {:?}", checked.0, checked.1, failures),
    )
}

// ---------------------------------------------------------------- AC3

fn ac3() -> Outcome {
    let alphas = [rat(-1), rat(0), rat(1), rat(2)];
    let gammas = [frac(-1, 2), rat(0), frac(1, 2), rat(1)];
    let upsilons = [rat(0), frac(1, 2), rat(1), rat(-1)];
    let (mut on_max, mut off_min, mut wrong, mut on_count) = (0.0f64, f64::INFINITY, 0, 0);
    for a in &alphas {
        for g in &gammas {
            for u in &upsilons {
                let p = FamilyParams::new(a.clone(), rat(2), g.clone(), u.clone(), rat(0));
                let slice = *a == rat(2) * g && u.is_zero();
                let r = sigma_test(&p).unwrap();
                if slice {
                    on_count += 1;
                    on_max = on_max.max(r.residual);
                } else {
                    off_min = off_min.min(r.residual);
                }
                if r.is_isometry != slice || (slice && r.residual >= 1e-4) || (!slice && r.residual < 1e-1) {
                    wrong += 1;
                }
            }
        }
    }
    outcome(
        wrong == 0 && on_count > 0,
        format!("64 parameters, {on_count} on the slice; max on-slice residual {on_max:.3e}, min off-slice {off_min:.3e}"),
    )
}

// ---------------------------------------------------------------- AC4

/// `R(∂x,∂y)∂j` from the Christoffel symbols.
fn curvature_oracle(c: &Connection2D, j: usize) -> [RationalFunction2; 2] {
    let g = c.to_christoffel().gamma;
    std::array::from_fn(|l| {
        let mut r = &g[l][1][j].partial(Var::X) - &g[l][0][j].partial(Var::Y);
        for k in 0..2 {
            r = &r + &(&g[k][1][j] * &g[l][0][k]);
            r = &r - &(&g[k][0][j] * &g[l][1][k]);
        }
        r
    })
}

fn ac4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    for _ in 0..20 {
        let mut q = || frac(rng.random_range(-12..=12), rng.random_range(1..=7));
        let p = FamilyParams::new(q(), q(), q(), q(), q());
        let c = make_connection(&p);
        let gu = &p.gamma + &p.upsilon;
        let k = RationalFunction2::constant(&p.beta + &gu * (&gu - &p.alpha));
        let t = c.curvature();
        let zero = RationalFunction2::zero();
        let ok = curvature_oracle(&c, 0) == [zero.clone(), zero.clone()]
            && curvature_oracle(&c, 1) == [k.clone(), zero.clone()]
            && t.curvature_dx == [zero.clone(), zero.clone()]
            && t.curvature_dy == [k, zero];
        if !ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("20 random rational tuples, {bad} mismatches"))
}

// ---------------------------------------------------------------- AC5

/// `e^{-tD}` by scaled Taylor series and repeated squaring.
fn expm_neg(d: &Mat2, t: f64) -> Mat2 {
    let k = 10;
    let h = -t / f64::from(1 << k);
    let a = [[d[0][0] * h, d[0][1] * h], [d[1][0] * h, d[1][1] * h]];
    let mut sum = [[1.0, 0.0], [0.0, 1.0]];
    let mut term = sum;
    for n in 1..20 {
        term = mat_mul(&term, &a);
        term = term.map(|r| r.map(|v| v / n as f64));
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..k {
        sum = mat_mul(&sum, &sum);
    }
    sum
}

fn ac5() -> Outcome {
    const N: usize = 200;
    let tol = 1e-9;
    let mut lines = Vec::new();
    let mut ok = true;
    for (alpha, beta, name) in [(3, 2, "Δ>0"), (1, 3, "Δ<0"), (2, 1, "Δ=0")] {
        let p = FamilyParams::ints(alpha, beta, 1, 1, 0);
        let r = Regime::of(&p);
        let d = r.derivative_matrix();
        let c = make_connection(&p);
        let grid = sample_grid(5);
        let mut rng = ChaCha8Rng::seed_from_u64(50 + alpha as u64);
        let el = |rng: &mut ChaCha8Rng| {
            let mut v = || rng.random_range(-1.0..1.0);
            GroupElement::new(&r, [v(), v()], [v(), v()])
        };
        let (mut rep, mut oracle, mut assoc, mut act, mut disagree, mut iso) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0, 0.0f64);
        for i in 0..N {
            let (g1, g2, g3) = (el(&mut rng), el(&mut rng), el(&mut rng));
            let s = [g1.h[0] + g2.h[0], g1.h[1] + g2.h[1]];
            let (lhs, rhs) = (r.psi(s), mat_mul(&r.psi(g1.h), &r.psi(g2.h)));
            rep = rep.max((0..4).map(|k| (lhs[k / 2][k % 2] - rhs[k / 2][k % 2]).abs()).fold(0.0, f64::max));
            let e = expm_neg(&d, g1.h[1]);
            let psi = r.psi(g1.h);
            let es = g1.h[0].exp();
            oracle = oracle.max((0..4).map(|k| (psi[k / 2][k % 2] - es * e[k / 2][k % 2]).abs()).fold(0.0, f64::max));

            let a = g1.multiply(&g2).unwrap().multiply(&g3).unwrap();
            let b = g1.multiply(&g2.multiply(&g3).unwrap()).unwrap();
            assoc = assoc.max(a.distance(&b));

            let x = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let (u, v) = (g1.multiply(&g2).unwrap().act(x), g1.act(g2.act(x)));
            act = act.max((u[0] - v[0]).abs().max((u[1] - v[1]).abs()));

            // half of the pairs commute by construction: conjugates of H by one q
            let (c1, c2) = if i % 2 == 0 {
                let q = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
                let lift = |g: &GroupElement| {
                    let m = r.psi(g.h);
                    let k = [(1.0 - m[0][0]) * q[0] - m[0][1] * q[1], -m[1][0] * q[0] + (1.0 - m[1][1]) * q[1]];
                    GroupElement::new(&r, g.h, k)
                };
                (lift(&g1), lift(&g2))
            } else {
                (g1.clone(), g2.clone())
            };
            let numeric = [[0.0, 0.0], [0.5, -0.5], [-1.0, 0.3]]
                .iter()
                .all(|&x| close2(c1.act(c2.act(x)), c2.act(c1.act(x)), 1e-7));
            if numeric != c1.commutes(&c2).unwrap() {
                disagree += 1;
            }
            iso = iso.max(pullback_residual(&c, &g1.as_map(), &grid).unwrap());
        }
        let pass = rep < tol && oracle < tol && assoc < tol && act < tol && disagree == 0 && iso < 1e-4;
        ok &= pass;
        lines.push(format!(
            "{name}: rep {rep:.1e} expm {oracle:.1e} assoc {assoc:.1e} action {act:.1e} comb-disagree {disagree} isometry {iso:.1e}"
        ));
    }
    outcome(ok, format!("{N} samples per regime; {}", lines.join("; ")))
}

// ---------------------------------------------------------------- AC6

fn ac6() -> Outcome {
    let mut cases: Vec<(&str, HolonomyBranch, FamilyParams, GroupElement, GroupElement)> = Vec::new();

    let p = FamilyParams::ints(0, 1, 0, 0, 0);
    let r = Regime::of(&p);
    cases.push(("both-in-H", HolonomyBranch::BothInH, p.clone(), GroupElement::identity(&r), GroupElement::identity(&r)));
    cases.push((
        "I_F0 obstruction",
        HolonomyBranch::SubmersionY,
        p.clone(),
        GroupElement::new(&r, [0.0, 0.0], [1.0, 0.0]),
        GroupElement::new(&r, [0.0, 0.0], [0.0, 1.0]),
    ));
    cases.push((
        "Δ<0 obstruction",
        HolonomyBranch::DeltaNegative,
        p,
        GroupElement::new(&r, [0.0, 2.0 * std::f64::consts::PI], [0.5, -1.0]),
        GroupElement::new(&r, [0.0, 0.0], [1.0, 1.0]),
    ));

    let p = FamilyParams::ints(3, 2, 1, 0, 0);
    let r = Regime::of(&p);
    let (x, y) = (FamilyField::x_field(&r), FamilyField::y_field(&r));
    let z1 = FamilyField::z_field(&r, 0);
    let w1 = x.scale(-1.0).add(&y);
    let w2 = x.scale(-2.0).add(&y).add(&z1);
    cases.push((
        "Δ>0 subcase 1",
        HolonomyBranch::DeltaPositiveSubcase1,
        p.clone(),
        GroupElement::from_flow(&w1, 1.0),
        GroupElement::from_flow(&z1.scale(0.7).add(&w1.scale(0.5)), 1.0),
    ));
    cases.push((
        "Δ>0 subcase 2",
        HolonomyBranch::DeltaPositiveSubcase2,
        p.clone(),
        GroupElement::from_flow(&w1, 1.0),
        GroupElement::from_flow(&w2, 1.0),
    ));

    let p0 = FamilyParams::ints(0, 0, 1, 0, 0);
    let r0 = Regime::of(&p0);
    cases.push((
        "Δ=0 via Φ_c",
        HolonomyBranch::DeltaZero,
        p0,
        GroupElement::new(&r0, [0.0, 1.0], [0.0, 1.0]),
        GroupElement::new(&r0, [0.0, 2.0], [0.0, 2.0]),
    ));

    let mut notes = Vec::new();
    let mut ok = true;
    for (name, want, p, g1, g2) in &cases {
        let v = classify_holonomy(p, g1, g2).unwrap();
        let mut pass = v.branch == *want;
        if let HolonomyOutcome::CommutingFields { fields, degeneracy_curve } = &v.outcome {
            let c = v.checks.as_ref().unwrap();
            pass &= c.killing_flow_residual < KILLING_FLOW_TOL && c.commutator < COMMUTATOR_TOL;
            match want {
                HolonomyBranch::DeltaPositiveSubcase2 => {
                    // (a1 - a2) x = c e^{a1 y} with a1 = -1, a2 = -2, c = 1
                    let curve = degeneracy_curve.as_ref();
                    pass &= curve.is_some_and(|k| (k.fiber[0] - 1.0).abs() < 1e-9 && k.fiber[1].abs() < 1e-9);
                    pass &= fields[0].distance_to(&w1) < 1e-9 && fields[1].distance_to(&w2) < 1e-9;
                }
                HolonomyBranch::DeltaZero => {
                    pass &= fields[0].expression() == "∂x" && fields[1].expression() == "y∂x + ∂y";
                }
                HolonomyBranch::BothInH => {
                    pass &= fields[0].expression() == "x∂x" && fields[1].expression() == "∂y";
                }
                _ => {}
            }
            notes.push(format!("{name}: {:?} flow {:.1e} comm {:.1e}", v.branch, c.killing_flow_residual, c.commutator));
        } else {
            notes.push(format!("{name}: {:?}", v.branch));
        }
        ok &= pass;
    }
    outcome(ok, notes.join("; "))
}

// ---------------------------------------------------------------- AC7

fn levi_civita_conformal(phi: &str) -> [[[RationalFunction2; 2]; 2]; 2] {
    let phi: RationalFunction2 = phi.parse().unwrap();
    let var = |i: usize| if i == 0 { Var::X } else { Var::Y };
    let g = |i: usize, j: usize| if i == j { phi.clone() } else { RationalFunction2::zero() };
    let inv = RationalFunction2::one().checked_div(&phi).unwrap();
    std::array::from_fn(|k| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let s = &(&g(j, k).partial(var(i)) + &g(i, k).partial(var(j))) - &g(i, j).partial(var(k));
                (&inv * &s).scale(&frac(1, 2))
            })
        })
    })
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("hyperbolic", hyperbolic_connection(), Some("1/y^2"), BasePoint::ints(0, 1), 3, AlgebraLabel::SL2),
        ("sphere", sphere_connection(), Some("4/(1 + x^2 + y^2)^2"), BasePoint::ints(0, 0), 3, AlgebraLabel::SO3),
        ("zero", Connection2D::zero(), None, BasePoint::ints(0, 0), 6, AlgebraLabel::FlatTorsionFree),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, c, metric, p, dim, label) in cases {
        if let Some(phi) = metric {
            ok &= c.to_christoffel().gamma == levi_civita_conformal(phi);
        }
        ok &= c.torsion().iter().all(RationalFunction2::is_zero);
        let r = classify_connection(&c, &p, DEFAULT_MAX_ORDER).unwrap();
        ok &= r.dim == dim && r.label == label;
        notes.push(format!("{name}: dim {} {}", r.dim, r.label));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs <= 30.0;
    outcome(ok, format!("{} in {secs:.2}s", notes.join(", ")))
}

// ---------------------------------------------------------------- AC8

type F = fn([f64; 2]) -> f64;
type Flow = fn(f64, [f64; 2]) -> Option<[f64; 2]>;

fn mobius(m: [[f64; 2]; 2], x: f64) -> Option<f64> {
    let d = m[1][0] * x + m[1][1];
    (d.abs() > 1e-9).then(|| (m[0][0] * x + m[0][1]) / d)
}

fn ac8() -> Outcome {
    let table: [(SubmersionDomain, HolonomyKind, F, Flow); 8] = [
        (
            SubmersionDomain::Model(ModelSpace::PuncturedPlane),
            HolonomyKind::Sl2(Sl2Kind::Semisimple),
            |p| p[0] * p[1],
            |t, p| Some([t.exp() * p[0], (-t).exp() * p[1]]),
        ),
        (
            SubmersionDomain::Model(ModelSpace::PuncturedPlane),
            HolonomyKind::Sl2(Sl2Kind::Orthogonal),
            |p| p[0] * p[0] + p[1] * p[1],
            |t, p| Some([t.cos() * p[0] + t.sin() * p[1], -t.sin() * p[0] + t.cos() * p[1]]),
        ),
        (
            SubmersionDomain::Model(ModelSpace::PuncturedPlane),
            HolonomyKind::Sl2(Sl2Kind::Unipotent),
            |p| p[0],
            |t, p| Some([p[0], t * p[0] + p[1]]),
        ),
        (
            SubmersionDomain::Model(ModelSpace::DiagonalComplement),
            HolonomyKind::Sl2(Sl2Kind::Semisimple),
            |p| p[0] / p[1],
            |t, p| Some([(2.0 * t).exp() * p[0], (2.0 * t).exp() * p[1]]),
        ),
        (
            SubmersionDomain::Model(ModelSpace::DiagonalComplement),
            HolonomyKind::Sl2(Sl2Kind::Orthogonal),
            |p| (1.0 + p[0] * p[1]) / (p[0] - p[1]),
            |t, p| {
                let m = [[t.cos(), t.sin()], [-t.sin(), t.cos()]];
                Some([mobius(m, p[0])?, mobius(m, p[1])?])
            },
        ),
        (
            SubmersionDomain::Model(ModelSpace::DiagonalComplement),
            HolonomyKind::Sl2(Sl2Kind::Unipotent),
            |p| 1.0 / (p[0] - p[1]),
            |t, p| Some([p[0] + t, p[1] + t]),
        ),
        (SubmersionDomain::Aff, HolonomyKind::AffDilation, |p| p[1] / p[0], |t, p| Some([t.exp() * p[0], t.exp() * p[1]])),
        (SubmersionDomain::Aff, HolonomyKind::AffTranslation, |p| p[0], |t, p| Some([p[0], p[1] + t])),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (idx, (dom, kind, f, flow)) in table.iter().enumerate() {
        let lib = invariant_submersion(*dom, *kind).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(80 + idx as u64);
        let (mut defect, mut grad, mut lib_gap, mut n) = (0.0f64, f64::INFINITY, 0.0f64, 0);
        let safe = |p: [f64; 2]| match dom {
            SubmersionDomain::Aff => p[0] > 0.25 && p.iter().all(|v| v.abs() < 10.0),
            _ => {
                p.iter().all(|v| v.abs() < 10.0)
                    && p[0].hypot(p[1]) > 0.25
                    && (!matches!(dom, SubmersionDomain::Model(ModelSpace::DiagonalComplement))
                        || ((p[0] - p[1]).abs() > 0.25 && p[1].abs() > 0.25))
            }
        };
        while n < 50 {
            let p = match dom {
                SubmersionDomain::Aff => [rng.random_range(0.3..3.0), rng.random_range(-2.0..2.0)],
                _ => [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
            };
            let t = rng.random_range(-1.0..1.0);
            let Some(q) = flow(t, p).filter(|q| safe(p) && safe(*q)) else {
                continue;
            };
            n += 1;
            defect = defect.max((f(q) - f(p)).abs());
            if let Ok(lq) = lib.orbit(t, p) {
                lib_gap = lib_gap.max((lq[0] - q[0]).abs().max((lq[1] - q[1]).abs()));
            }
            lib_gap = lib_gap.max((lib.eval(p) - f(p)).abs());
            let h = 1e-6;
            let gx = (f([p[0] + h, p[1]]) - f([p[0] - h, p[1]])) / (2.0 * h);
            let gy = (f([p[0], p[1] + h]) - f([p[0], p[1] - h])) / (2.0 * h);
            grad = grad.min(gx.hypot(gy));
        }
        let pass = defect < 1e-9 && grad > 1e-6 && lib_gap < 1e-9;
        ok &= pass;
        notes.push(format!("{}={}: {defect:.1e}", lib.name(), lib.formula));
    }
    outcome(ok, format!("50 samples each; {}", notes.join(", ")))
}

// ---------------------------------------------------------------- AC9

fn ac9() -> Outcome {
    let c = make_connection(&FamilyParams::ints(0, 1, 0, 0, 0));
    let err = |n: usize| {
        geodesic(&c, [1.0, 0.0], [0.0, 1.0], 2.0, n)
            .unwrap()
            .iter()
            .map(|s| (s.x - s.t.cos()).abs().max((s.y - s.t).abs()))
            .fold(0.0, f64::max)
    };
    let (e1, e2) = (err(20), err(40));
    let ratio = e1 / e2;
    outcome((12.0..=20.0).contains(&ratio), format!("errors {e1:.3e} (n=20), {e2:.3e} (n=40), ratio {ratio:.2}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 case-6 determinant", ac1),
        ("AC2 family dimension", ac2),
        ("AC3 sigma criterion", ac3),
        ("AC4 curvature formula", ac4),
        ("AC5 group and action", ac5),
        ("AC6 holonomy verdicts", ac6),
        ("AC7 cross-model classification", ac7),
        ("AC8 invariant submersions", ac8),
        ("AC9 geodesic convergence", ac9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let o = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        if !o.passed {
            failed += 1;
        }
        println!(
            "{} {name} [{:.2}s] {}",
            if o.passed { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
