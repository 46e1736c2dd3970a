//! Jet prolongation of the Killing system at a point.
//!
//! The unknown field is expanded in normalized Taylor coefficients
//! `a = Σ ta(i,j) X^i Y^j` around the base point, each coefficient a linear
//! form in the 1-jet. Order by order, every second-order relation that
//! reaches a coefficient yields a candidate for it; disagreeing candidates
//! and the Taylor coefficients of the torsion pair become linear constraints.

use num_traits::{One, Zero};
use serde::Serialize;

use super::system::{assemble, KillingSystem, A, AX, AY, B, BX, BY};
use crate::algebra::linalg::{nullspace, rank, solve_in_span};
use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::{rat, Rational, RationalFunction2, Taylor2, Var};
use crate::connection::Connection2D;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoint {
    pub x0: Rational,
    pub y0: Rational,
}

impl BasePoint {
    pub fn new(x0: Rational, y0: Rational) -> Self {
        Self { x0, y0 }
    }

    pub fn ints(x0: i64, y0: i64) -> Self {
        Self::new(rat(x0), rat(y0))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (x0, y0) = crate::connection::parse_point(s)?;
        Ok(Self { x0, y0 })
    }
}

impl std::fmt::Display for BasePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{},{}",
            format_rational(&self.x0),
            format_rational(&self.y0)
        )
    }
}

/// The 1-jet `(a, b, a_x, a_y, b_x, b_y)` of a vector field at a point.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KillingJet {
    pub a: Rational,
    pub b: Rational,
    pub a_x: Rational,
    pub a_y: Rational,
    pub b_x: Rational,
    pub b_y: Rational,
}

impl KillingJet {
    pub fn from_vec(v: &[Rational]) -> Self {
        assert_eq!(v.len(), 6, "a jet has six entries");
        Self {
            a: v[A].clone(),
            b: v[B].clone(),
            a_x: v[AX].clone(),
            a_y: v[AY].clone(),
            b_x: v[BX].clone(),
            b_y: v[BY].clone(),
        }
    }

    pub fn from_i64(v: [i64; 6]) -> Self {
        Self::from_vec(&v.map(rat))
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        vec![
            self.a.clone(),
            self.b.clone(),
            self.a_x.clone(),
            self.a_y.clone(),
            self.b_x.clone(),
            self.b_y.clone(),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.to_vec().iter().all(Zero::is_zero)
    }

    /// Exact 1-jet of `a ∂x + b ∂y` at `p`.
    pub fn of_field(a: &RationalFunction2, b: &RationalFunction2, p: &BasePoint) -> Result<Self> {
        let ev = |f: &RationalFunction2| f.eval(&p.x0, &p.y0);
        Ok(Self {
            a: ev(a)?,
            b: ev(b)?,
            a_x: ev(&a.partial(Var::X))?,
            a_y: ev(&a.partial(Var::Y))?,
            b_x: ev(&b.partial(Var::X))?,
            b_y: ev(&b.partial(Var::Y))?,
        })
    }

    pub fn value(&self) -> [Rational; 2] {
        [self.a.clone(), self.b.clone()]
    }
}

impl Serialize for KillingJet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(6))?;
        for (name, q) in super::system::JET_NAMES.iter().zip(self.to_vec()) {
            m.serialize_entry(name, &format_rational(&q))?;
        }
        m.end()
    }
}

impl std::str::FromStr for KillingJet {
    type Err = Error;

    /// Six comma-separated rationals.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 6 {
            return Err(Error::Invalid(format!(
                "a jet needs 6 entries, got {}",
                parts.len()
            )));
        }
        let v = parts
            .into_iter()
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vec(&v))
    }
}

type LinForm = Vec<Rational>;

fn zero_form() -> LinForm {
    vec![Rational::zero(); 6]
}

fn unit_form(k: usize) -> LinForm {
    let mut f = zero_form();
    f[k] = Rational::one();
    f
}

fn axpy(acc: &mut LinForm, c: &Rational, f: &LinForm) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(f) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

fn scaled(f: &LinForm, c: &Rational) -> LinForm {
    f.iter().map(|x| x * c).collect()
}

fn dot(f: &LinForm, v: &[Rational]) -> Rational {
    f.iter()
        .zip(v)
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// Taylor coefficients of the unknown field as linear forms in the 1-jet.
struct FieldSeries {
    ta: Vec<Vec<LinForm>>,
    tb: Vec<Vec<LinForm>>,
}

impl FieldSeries {
    fn new(order: usize) -> Self {
        let grid = || {
            (0..=order)
                .map(|i| vec![zero_form(); order - i + 1])
                .collect::<Vec<_>>()
        };
        let mut s = Self {
            ta: grid(),
            tb: grid(),
        };
        s.ta[0][0] = unit_form(A);
        s.tb[0][0] = unit_form(B);
        if order >= 1 {
            s.ta[1][0] = unit_form(AX);
            s.ta[0][1] = unit_form(AY);
            s.tb[1][0] = unit_form(BX);
            s.tb[0][1] = unit_form(BY);
        }
        s
    }

    /// Taylor coefficient `(m, n)` of the jet variable `var`.
    fn var_coeff(&self, var: usize, m: usize, n: usize) -> LinForm {
        let k = |i: usize| Rational::from_integer((i as i64).into());
        match var {
            A => self.ta[m][n].clone(),
            B => self.tb[m][n].clone(),
            AX => scaled(&self.ta[m + 1][n], &k(m + 1)),
            AY => scaled(&self.ta[m][n + 1], &k(n + 1)),
            BX => scaled(&self.tb[m + 1][n], &k(m + 1)),
            BY => scaled(&self.tb[m][n + 1], &k(n + 1)),
            _ => unreachable!("jet index out of range"),
        }
    }
}

/// Taylor expansions of one row's six coefficient functions.
type RowSeries = Vec<Taylor2>;

fn expand_row(row: &[RationalFunction2; 6], p: &BasePoint, order: usize) -> Result<RowSeries> {
    row.iter()
        .map(|f| Taylor2::expand(f, &p.x0, &p.y0, order))
        .collect()
}

/// Taylor coefficient `(m, n)` of `Σ_var coeff_var * var`.
fn row_coeff(row: &RowSeries, field: &FieldSeries, m: usize, n: usize) -> LinForm {
    let mut acc = zero_form();
    for (var, t) in row.iter().enumerate() {
        for p in 0..=m {
            for q in 0..=n {
                let c = t.coeff(p, q);
                if !c.is_zero() {
                    axpy(&mut acc, c, &field.var_coeff(var, m - p, n - q));
                }
            }
        }
    }
    acc
}

/// Solved Killing jet space at a point.
#[derive(Clone, Debug)]
pub struct KillingSolution {
    pub point: BasePoint,
    pub basis: Vec<KillingJet>,
    pub stabilized: bool,
    /// Constraint rank after each prolongation order, starting at order 1.
    pub ranks: Vec<usize>,
    /// All collected constraints, as rows over the 1-jet.
    pub constraints: Vec<Vec<Rational>>,
    // second-derivative forms: a_xx, a_xy, a_yy, b_xx, b_xy, b_yy
    second: [LinForm; 6],
}

impl KillingSolution {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(KillingJet::to_vec).collect()
    }

    /// Coordinates of `j` in the solved basis, or an error if it lies outside.
    pub fn coordinates(&self, j: &KillingJet) -> Result<Vec<Rational>> {
        if j.is_zero() {
            return Ok(vec![Rational::zero(); self.dim()]);
        }
        solve_in_span(&self.basis_vectors(), &j.to_vec()).ok_or(Error::OutsideSolvedSpace)
    }

    pub fn contains(&self, j: &KillingJet) -> bool {
        self.coordinates(j).is_ok()
    }

    /// Second derivatives `[[a_xx, a_xy, a_yy], [b_xx, b_xy, b_yy]]` of the
    /// Killing field with 1-jet `j` at the base point.
    pub fn second_derivatives(&self, j: &KillingJet) -> [[Rational; 3]; 2] {
        let v = j.to_vec();
        let d = |k: usize| dot(&self.second[k], &v);
        [[d(0), d(1), d(2)], [d(3), d(4), d(5)]]
    }

    /// Jet at the base point of the vector-field bracket of the two Killing
    /// fields with jets `j1` and `j2`.
    pub fn bracket(&self, j1: &KillingJet, j2: &KillingJet) -> Result<KillingJet> {
        self.coordinates(j1)?;
        self.coordinates(j2)?;
        let out = raw_bracket(
            j1,
            &self.second_derivatives(j1),
            j2,
            &self.second_derivatives(j2),
        );
        if !self.contains(&out) {
            return Err(Error::NotBracketClosed);
        }
        Ok(out)
    }
}

fn jac(j: &KillingJet) -> [[Rational; 2]; 2] {
    [
        [j.a_x.clone(), j.a_y.clone()],
        [j.b_x.clone(), j.b_y.clone()],
    ]
}

/// Hessian `h[k][i][l] = ∂i ∂l X^k` from the packed second derivatives.
fn hessian(s: &[[Rational; 3]; 2]) -> [[[Rational; 2]; 2]; 2] {
    s.clone().map(|[xx, xy, yy]| [[xx, xy.clone()], [xy, yy]])
}

fn raw_bracket(
    j1: &KillingJet,
    s1: &[[Rational; 3]; 2],
    j2: &KillingJet,
    s2: &[[Rational; 3]; 2],
) -> KillingJet {
    let (v1, v2) = (j1.value(), j2.value());
    let (d1, d2) = (jac(j1), jac(j2));
    let (h1, h2) = (hessian(s1), hessian(s2));
    // Z^k = X1^i ∂i X2^k - X2^i ∂i X1^k
    let mut val = [Rational::zero(), Rational::zero()];
    // dz[k][l] = ∂l Z^k
    let mut dz = [
        [Rational::zero(), Rational::zero()],
        [Rational::zero(), Rational::zero()],
    ];
    for k in 0..2 {
        for i in 0..2 {
            val[k] += &v1[i] * &d2[k][i] - &v2[i] * &d1[k][i];
            for l in 0..2 {
                dz[k][l] += &d1[i][l] * &d2[k][i] + &v1[i] * &h2[k][i][l];
                dz[k][l] -= &d2[i][l] * &d1[k][i] + &v2[i] * &h1[k][i][l];
            }
        }
    }
    let [a, b] = val;
    let [[a_x, a_y], [b_x, b_y]] = dz;
    KillingJet {
        a,
        b,
        a_x,
        a_y,
        b_x,
        b_y,
    }
}

/// Solves the Killing system of `c` at `p`, prolonging up to `max_order`.
pub fn solve(c: &Connection2D, p: &BasePoint, max_order: usize) -> Result<KillingSolution> {
    solve_system(&assemble(c), c, p, max_order)
}

pub fn solve_system(
    sys: &KillingSystem,
    c: &Connection2D,
    p: &BasePoint,
    max_order: usize,
) -> Result<KillingSolution> {
    c.check_regular_at(&p.x0, &p.y0)?;
    let max_order = max_order.max(2);
    let second = sys
        .second
        .iter()
        .map(|r| expand_row(r, p, max_order))
        .collect::<Result<Vec<_>>>()?;
    let torsion = sys
        .constraints
        .iter()
        .map(|r| expand_row(r, p, max_order))
        .collect::<Result<Vec<_>>>()?;

    let mut field = FieldSeries::new(max_order);
    let mut constraints: Vec<LinForm> = Vec::new();
    let mut ranks = Vec::new();
    let mut stabilized = false;

    for k in 1..=max_order {
        if k >= 2 {
            let mut new_a = Vec::new();
            let mut new_b = Vec::new();
            for i in 0..=k {
                let j = k - i;
                for (comp, out) in [(0usize, &mut new_a), (1usize, &mut new_b)] {
                    let mut cands: Vec<LinForm> = Vec::new();
                    let q = |n: usize| Rational::from_integer((n as i64).into());
                    if i >= 2 {
                        let f = row_coeff(&second[comp], &field, i - 2, j);
                        cands.push(scaled(&f, &(q(1) / q(i * (i - 1)))));
                    }
                    if i >= 1 && j >= 1 {
                        let f = row_coeff(&second[2 + comp], &field, i - 1, j - 1);
                        cands.push(scaled(&f, &(q(1) / q(i * j))));
                    }
                    if j >= 2 {
                        let f = row_coeff(&second[4 + comp], &field, i, j - 2);
                        cands.push(scaled(&f, &(q(1) / q(j * (j - 1)))));
                    }
                    let first = cands[0].clone();
                    for other in &cands[1..] {
                        let diff: LinForm = other.iter().zip(&first).map(|(x, y)| x - y).collect();
                        if diff.iter().any(|x| !x.is_zero()) {
                            constraints.push(diff);
                        }
                    }
                    out.push((i, j, first));
                }
            }
            for (i, j, f) in new_a {
                field.ta[i][j] = f;
            }
            for (i, j, f) in new_b {
                field.tb[i][j] = f;
            }
        }
        for m in 0..k {
            let n = k - 1 - m;
            for t in &torsion {
                let f = row_coeff(t, &field, m, n);
                if f.iter().any(|x| !x.is_zero()) {
                    constraints.push(f);
                }
            }
        }
        let r = rank(&constraints, 6);
        ranks.push(r);
        let len = ranks.len();
        if r == 6 || (k >= 3 && ranks[len - 2] == r && ranks[len - 3] == r) {
            stabilized = true;
            break;
        }
    }

    let basis = nullspace(&constraints, 6)
        .iter()
        .map(|v| KillingJet::from_vec(v))
        .collect();
    let two = rat(2);
    let second_forms = [
        scaled(&field.ta[2][0], &two),
        field.ta[1][1].clone(),
        scaled(&field.ta[0][2], &two),
        scaled(&field.tb[2][0], &two),
        field.tb[1][1].clone(),
        scaled(&field.tb[0][2], &two),
    ];
    Ok(KillingSolution {
        point: p.clone(),
        basis,
        stabilized,
        ranks,
        constraints,
        second: second_forms,
    })
}
