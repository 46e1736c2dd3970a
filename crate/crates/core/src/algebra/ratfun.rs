//! Bivariate rational functions in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::poly2::{Poly2, Var};
use super::rational::{format_rational, rat, Rational};
use crate::error::{Error, Result};

/// Quotient `num / den` of bivariate polynomials.
///
/// Always canonical: `gcd(num, den) = 1` and the lex-leading coefficient of
/// `den` equals 1, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction2 {
    num: Poly2,
    den: Poly2,
}

impl Default for RationalFunction2 {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction2 {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly2, den: Poly2) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides numerator"),
                    den.exact_div(&g).expect("gcd divides denominator"),
                )
            }
        };
        Self::canonical_reduced(num, den)
    }

    /// Normalizes a fraction already in lowest terms.
    fn canonical_reduced(num: Poly2, den: Poly2) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading().recip();
        Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Poly2::zero(),
            den: Poly2::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly2::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly2::x())
    }

    pub fn y() -> Self {
        Self::from_poly(Poly2::y())
    }

    pub fn from_poly(p: Poly2) -> Self {
        Self {
            num: p,
            den: Poly2::one(),
        }
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let c = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(c / d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn partial(&self, v: Var) -> Self {
        if self.den.is_constant() {
            return Self::canonical(self.num.partial(v), self.den.clone());
        }
        // (n/d)' = (n' d - n d') / d^2
        let top = &(&self.num.partial(v) * &self.den) - &(&self.num * &self.den.partial(v));
        Self::canonical(top, &self.den * &self.den)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Result<Rational> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: self.den.to_string(),
                x: format_rational(x),
                y: format_rational(y),
            });
        }
        Ok(self.num.eval(x, y) / d)
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.num.eval_f64(x, y) / self.den.eval_f64(x, y)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

impl fmt::Display for RationalFunction2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly2| {
            if p.terms().count() > 1 || p.to_string().contains('/') {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.as_constant().is_some_and(|d| d.is_one()) {
            return write!(f, "{}", self.num);
        }
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl FromStr for RationalFunction2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_rational_function(s)
    }
}

impl Add for &RationalFunction2 {
    type Output = RationalFunction2;
    fn add(self, rhs: &RationalFunction2) -> RationalFunction2 {
        if self.den == rhs.den {
            return RationalFunction2::canonical(&self.num + &rhs.num, self.den.clone());
        }
        // over the lcm of the denominators; only `g` can share factors with the sum
        let g = self.den.gcd(&rhs.den);
        let (d1, d2) = (
            self.den.exact_div(&g).expect("gcd divides"),
            rhs.den.exact_div(&g).expect("gcd divides"),
        );
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        let den = &(&d1 * &d2) * &g;
        if num.is_zero() {
            return RationalFunction2::zero();
        }
        let h = num.gcd(&g);
        if h.is_constant() {
            RationalFunction2::canonical_reduced(num, den)
        } else {
            RationalFunction2::canonical_reduced(
                num.exact_div(&h).expect("gcd divides"),
                den.exact_div(&h).expect("gcd divides"),
            )
        }
    }
}

impl Sub for &RationalFunction2 {
    type Output = RationalFunction2;
    fn sub(self, rhs: &RationalFunction2) -> RationalFunction2 {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction2 {
    type Output = RationalFunction2;
    fn mul(self, rhs: &RationalFunction2) -> RationalFunction2 {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction2::zero();
        }
        // cross-cancel; the inputs are already in lowest terms
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let q = |a: &Poly2, g: &Poly2| a.exact_div(g).expect("gcd divides");
        RationalFunction2::canonical_reduced(
            &q(&self.num, &g1) * &q(&rhs.num, &g2),
            &q(&self.den, &g2) * &q(&rhs.den, &g1),
        )
    }
}

impl Neg for &RationalFunction2 {
    type Output = RationalFunction2;
    fn neg(self) -> RationalFunction2 {
        RationalFunction2 {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction2 {
    type Output = RationalFunction2;
    fn neg(self) -> RationalFunction2 {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction2 {
            type Output = RationalFunction2;
            fn $m(self, rhs: RationalFunction2) -> RationalFunction2 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
