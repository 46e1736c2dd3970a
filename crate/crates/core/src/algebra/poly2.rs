//! Sparse bivariate polynomials in `x`, `y` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, rat, to_f64, Rational};
use super::unipoly::UniPoly;
use super::zgcd;
use num_bigint::BigInt;
use num_integer::Integer;

/// Coordinate variable of the chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Map from exponent pairs `(i, j)` (monomial `x^i y^j`) to nonzero coefficients.
///
/// Keys sort lexicographically, so the last entry is the leading term for the
/// lex order with `x > y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::X { i } else { j })
            .max()
    }

    /// Coefficient of the lex-leading monomial.
    pub fn leading(&self) -> Rational {
        self.terms
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn partial(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::X if i > 0 => Some(((i - 1, j), c * rat(i as i64))),
            Var::Y if j > 0 => Some(((i, j - 1), c * rat(j as i64))),
            _ => None,
        }))
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        // Horner in x over Horner-in-y coefficients.
        let rows = self.to_y_coeffs();
        rows.iter()
            .rev()
            .fold(Rational::zero(), |acc, row| acc * x + row.eval(y))
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| to_f64(c) * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    /// Taylor re-centering: returns `q(X, Y) = p(x0 + X, y0 + Y)`.
    pub fn shift(&self, x0: &Rational, y0: &Rational) -> Self {
        let px = UniPoly::from_coeffs(vec![x0.clone(), Rational::one()]);
        let py = UniPoly::from_coeffs(vec![y0.clone(), Rational::one()]);
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let ex = px.pow(i);
            let ey = py.pow(j);
            for (a, ca) in ex.coeffs().iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (b, cb) in ey.coeffs().iter().enumerate() {
                    out.add_term((a as u32, b as u32), c * ca * cb);
                }
            }
        }
        out
    }

    /// View as a polynomial in `x` with coefficients in `Q[y]`.
    pub fn to_y_coeffs(&self) -> Vec<UniPoly> {
        let Some(dx) = self.degree_in(Var::X) else {
            return Vec::new();
        };
        let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); dx as usize + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[i as usize];
            if row.len() <= j as usize {
                row.resize(j as usize + 1, Rational::zero());
            }
            row[j as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_y_coeffs(rows: &[UniPoly]) -> Self {
        Self::from_terms(rows.iter().enumerate().flat_map(|(i, row)| {
            row.coeffs()
                .iter()
                .enumerate()
                .map(move |(j, c)| ((i as u32, j as u32), c.clone()))
        }))
    }

    /// Greatest common divisor, normalized so the lex-leading coefficient is 1.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        if self.is_constant() || other.is_constant() || coprime_mod_p(self, other) {
            return Self::one();
        }
        Self::from_z_rows(&zgcd::gcd2(&self.to_z_rows(), &other.to_z_rows())).normalized()
    }

    /// Integer multiple of `self` as `x`-coefficient rows in `Z[y]`.
    fn to_z_rows(&self) -> Vec<zgcd::ZPoly> {
        let l = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let dx = self.degree_in(Var::X).unwrap_or(0) as usize;
        let mut rows = vec![Vec::new(); dx + 1];
        for (&(i, j), c) in &self.terms {
            let row: &mut Vec<BigInt> = &mut rows[i as usize];
            if row.len() <= j as usize {
                row.resize(j as usize + 1, BigInt::zero());
            }
            row[j as usize] = c.numer() * (&l / c.denom());
        }
        rows
    }

    fn from_z_rows(rows: &[zgcd::ZPoly]) -> Self {
        Self::from_terms(rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, c)| ((i as u32, j as u32), Rational::from_integer(c.clone())))
        }))
    }

    fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let drows = d.to_y_coeffs();
        let dd = drows.len() - 1;
        let dlc = drows[dd].clone();
        let mut r = self.to_y_coeffs();
        let mut q: Vec<UniPoly> = vec![UniPoly::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().exact_div(&dlc)?;
            for (j, row) in drows.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * row);
            }
            q[k] = c;
            while r.last().is_some_and(UniPoly::is_zero) {
                r.pop();
            }
        }
        r.is_empty().then(|| Self::from_y_coeffs(&q))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    fn fmt_term(c: &Rational, i: u32, j: u32) -> String {
        let mut mono = Vec::new();
        match i {
            0 => {}
            1 => mono.push("x".to_string()),
            _ => mono.push(format!("x^{i}")),
        }
        match j {
            0 => {}
            1 => mono.push("y".to_string()),
            _ => mono.push(format!("y^{j}")),
        }
        if mono.is_empty() {
            format_rational(c)
        } else if c.is_one() {
            mono.join("*")
        } else {
            format!("{}*{}", format_rational(c), mono.join("*"))
        }
    }
}

const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
    let m = num_bigint::BigInt::from(p);
    let to_u = |v: &num_bigint::BigInt| -> u64 {
        let r = ((v % &m) + &m) % &m;
        r.try_into().expect("reduced below p")
    };
    let d = to_u(q.denom());
    (d != 0).then(|| mul_mod(to_u(q.numer()), pow_mod(d, p - 2, p), p))
}

/// Image of `f` in `F_p[v]` after substituting `other = t`, low degree first.
fn image_mod(f: &Poly2, v: Var, t: u64, p: u64) -> Option<Vec<u64>> {
    let deg = f.degree_in(v)? as usize;
    let mut out = vec![0u64; deg + 1];
    for (&(i, j), c) in &f.terms {
        let (k, e) = if v == Var::X { (i, j) } else { (j, i) };
        let term = mul_mod(rational_mod(c, p)?, pow_mod(t, e as u64, p), p);
        out[k as usize] = (out[k as usize] + term) % p;
    }
    Some(out)
}

fn trim_mod(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Degree of `gcd(a, b)` in `F_p[v]`; both inputs nonzero.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (k, &bk) in b.iter().enumerate() {
                a[shift + k] = (a[shift + k] + p - mul_mod(f, bk, p)) % p;
            }
            trim_mod(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sufficient test for `gcd(f, g) = 1`: in each variable some modular
/// image, taken where neither leading coefficient vanishes, has a trivial gcd.
fn coprime_mod_p(f: &Poly2, g: &Poly2) -> bool {
    [Var::X, Var::Y].into_iter().all(|v| {
        let (df, dg) = (f.degree_in(v).unwrap_or(0), g.degree_in(v).unwrap_or(0));
        if df == 0 || dg == 0 {
            return true;
        }
        PRIMES.iter().flat_map(|&p| [3u64, 17, 101].map(move |t| (p, t))).any(|(p, t)| {
            match (image_mod(f, v, t, p), image_mod(g, v, t, p)) {
                (Some(a), Some(b)) if a[df as usize] != 0 && b[dg as usize] != 0 => gcd_degree_mod(a, b, p) == 0,
                _ => false,
            }
        })
    })
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest total degree first reads naturally.
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| {
            let (ka, kb) = (a.0, b.0);
            (kb.0 + kb.1, kb.0).cmp(&(ka.0 + ka.1, ka.0))
        });
        for (n, (&(i, j), c)) in keys.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            f.write_str(&Self::fmt_term(&mag, i, j))?;
        }
        Ok(())
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&rat(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((u32, u32), i64)]) -> Poly2 {
        Poly2::from_terms(terms.iter().map(|&(k, c)| (k, rat(c))))
    }

    #[test]
    fn gcd_of_products() {
        let x = Poly2::x();
        let y = Poly2::y();
        let f = &(&x - &y) * &(&x + &Poly2::one()); // (x-y)(x+1)
        let g = &(&x - &y) * &(&y + &Poly2::one()); // (x-y)(y+1)
        assert_eq!(f.gcd(&g), &x - &y);
        let h = &(&(&x * &y) + &Poly2::one()) * &(&y - &Poly2::one());
        assert_eq!(h.gcd(&(&y - &Poly2::one())), &y - &Poly2::one());
        assert_eq!(x.gcd(&y), Poly2::one());
    }

    #[test]
    fn gcd_pure_y_content() {
        // y^2 * (x + 1) and y * x
        let f = p(&[((1, 2), 1), ((0, 2), 1)]);
        let g = p(&[((1, 1), 1)]);
        assert_eq!(f.gcd(&g), Poly2::y());
    }

    #[test]
    fn exact_division() {
        let x = Poly2::x();
        let y = Poly2::y();
        let f = &(&x * &x) - &(&y * &y);
        assert_eq!(f.exact_div(&(&x - &y)), Some(&x + &y));
        assert_eq!(f.exact_div(&(&x + &Poly2::one())), None);
    }

    #[test]
    fn shift_recenters() {
        let f = p(&[((2, 0), 1), ((0, 1), 1)]); // x^2 + y
        let g = f.shift(&rat(1), &rat(2));
        // (1+X)^2 + 2 + Y = 3 + 2X + X^2 + Y
        assert_eq!(g, p(&[((0, 0), 3), ((1, 0), 2), ((2, 0), 1), ((0, 1), 1)]));
    }

    #[test]
    fn display_order() {
        let f = p(&[((2, 0), 1), ((0, 1), -3), ((0, 0), 2)]);
        assert_eq!(f.to_string(), "x^2 - 3*y + 2");
    }
}
