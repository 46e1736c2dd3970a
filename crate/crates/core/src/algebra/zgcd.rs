//! Polynomial gcd over the integers by primitive pseudo-remainder sequences.
//!
//! Bivariate polynomials are held as `x`-coefficient rows of dense `Z[y]`
//! polynomials (lowest degree first).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type ZPoly = Vec<BigInt>;

fn trim(a: &mut ZPoly) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    trim(&mut out);
    out
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn div_scalar(a: &ZPoly, c: &BigInt) -> ZPoly {
    a.iter().map(|v| v / c).collect()
}

/// Primitive part with a positive leading coefficient.
fn primitive(a: &ZPoly) -> ZPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    div_scalar(a, &c)
}

/// Exact quotient in `Z[y]`, or `None`.
fn exact_div(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut r = a.clone();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let (c, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let k = r.len() - b.len();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        trim(&mut r);
        if r.is_empty() {
            return Some(q);
        }
    }
    None
}

fn prem1(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let k = r.len() - b.len();
        for v in r.iter_mut() {
            *v *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &lr * bj;
        }
        trim(&mut r);
    }
    r
}

/// Gcd in `Z[y]` with positive leading coefficient.
pub fn gcd1(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return primitive_signed(&b);
    }
    if b.is_empty() {
        return primitive_signed(&a);
    }
    let c = content(&a).gcd(&content(&b));
    let (mut f, mut g) = (primitive(&a), primitive(&b));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = primitive(&prem1(&f, &g));
        f = g;
        g = r;
    }
    f.iter().map(|v| v * &c).collect()
}

fn primitive_signed(a: &ZPoly) -> ZPoly {
    if a.last().is_some_and(Signed::is_negative) {
        a.iter().map(|v| -v).collect()
    } else {
        a.clone()
    }
}

type Rows = Vec<ZPoly>;

fn trim_rows(a: &mut Rows) {
    while a.last().is_some_and(Vec::is_empty) {
        a.pop();
    }
}

fn rows_content(a: &Rows) -> ZPoly {
    a.iter().fold(Vec::new(), |g, r| gcd1(&g, r))
}

fn rows_primitive(a: &Rows) -> Rows {
    let c = rows_content(a);
    let mut out: Rows = a.iter().map(|r| exact_div(r, &c).expect("content divides")).collect();
    if out.last().and_then(|r| r.last()).is_some_and(Signed::is_negative) {
        for r in out.iter_mut() {
            for v in r.iter_mut() {
                *v = -&*v;
            }
        }
    }
    out
}

fn prem2(a: &Rows, b: &Rows) -> Rows {
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let k = r.len() - b.len();
        for row in r.iter_mut() {
            *row = mul(row, &lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = sub(&r[k + j], &mul(&lr, bj));
        }
        trim_rows(&mut r);
    }
    r
}

/// Gcd in `Z[y][x]`, up to sign.
pub fn gcd2(a: &Rows, b: &Rows) -> Rows {
    let c = gcd1(&rows_content(a), &rows_content(b));
    let (mut f, mut g) = (rows_primitive(a), rows_primitive(b));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let mut r = prem2(&f, &g);
        trim_rows(&mut r);
        let r = if r.is_empty() { r } else { rows_primitive(&r) };
        f = g;
        g = r;
    }
    f.iter().map(|row| mul(row, &c)).collect()
}
