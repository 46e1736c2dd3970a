//! Truncated Taylor expansions of rational functions at a rational point.
//!
//! Coefficients are normalized: entry `(i, j)` is `∂x^i ∂y^j f(p) / (i! j!)`.

use num_traits::Zero;

use super::poly2::Poly2;
use super::ratfun::RationalFunction2;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Taylor2 {
    order: usize,
    // coeffs[i][j] with i + j <= order
    coeffs: Vec<Vec<Rational>>,
}

impl Taylor2 {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: (0..=order)
                .map(|i| vec![Rational::zero(); order - i + 1])
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.coeffs[i][j]
    }

    fn from_poly(p: &Poly2, order: usize) -> Self {
        let mut t = Self::zero(order);
        for (&(i, j), c) in p.terms() {
            let (i, j) = (i as usize, j as usize);
            if i + j <= order {
                t.coeffs[i][j] = c.clone();
            }
        }
        t
    }

    /// Expansion of `f` around `(x0, y0)` through total degree `order`.
    pub fn expand(
        f: &RationalFunction2,
        x0: &Rational,
        y0: &Rational,
        order: usize,
    ) -> Result<Self> {
        let num = Self::from_poly(&f.num().shift(x0, y0), order);
        if f.den().is_constant() {
            let d = f.den().as_constant().expect("constant denominator");
            let mut t = num;
            for row in t.coeffs.iter_mut() {
                for c in row.iter_mut() {
                    *c /= &d;
                }
            }
            return Ok(t);
        }
        let den = Self::from_poly(&f.den().shift(x0, y0), order);
        let d00 = den.coeffs[0][0].clone();
        if d00.is_zero() {
            return Err(Error::Pole {
                denominator: f.den().to_string(),
                x: format_rational(x0),
                y: format_rational(y0),
            });
        }
        // Solve S * D = N degree by degree.
        let mut s = Self::zero(order);
        for total in 0..=order {
            for i in 0..=total {
                let j = total - i;
                let mut acc = num.coeffs[i][j].clone();
                for a in 0..=i {
                    for b in 0..=j {
                        if (a, b) == (0, 0) {
                            continue;
                        }
                        let dab = &den.coeffs[a][b];
                        if !dab.is_zero() {
                            acc -= dab * &s.coeffs[i - a][j - b];
                        }
                    }
                }
                s.coeffs[i][j] = acc / &d00;
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};

    #[test]
    fn geometric_series() {
        let f: RationalFunction2 = "1/(1-x-y)".parse().unwrap();
        let t = Taylor2::expand(&f, &rat(0), &rat(0), 4).unwrap();
        // 1/(1-u) with u = x + y: coefficient of x^i y^j is binomial(i+j, i).
        assert_eq!(t.coeff(2, 1), &rat(3));
        assert_eq!(t.coeff(2, 2), &rat(6));
    }

    #[test]
    fn shifted_point() {
        let f: RationalFunction2 = "1/y".parse().unwrap();
        let t = Taylor2::expand(&f, &rat(5), &rat(2), 3).unwrap();
        // 1/(2+Y) = 1/2 - Y/4 + Y^2/8 - ...
        assert_eq!(t.coeff(0, 0), &frac(1, 2));
        assert_eq!(t.coeff(0, 1), &frac(-1, 4));
        assert_eq!(t.coeff(0, 3), &frac(-1, 16));
        assert_eq!(t.coeff(1, 0), &rat(0));
    }

    #[test]
    fn pole_detected() {
        let f: RationalFunction2 = "x/y".parse().unwrap();
        assert!(matches!(
            Taylor2::expand(&f, &rat(1), &rat(0), 2),
            Err(Error::Pole { .. })
        ));
    }
}
