use serde::Serialize;

use crate::error::{Error, Result};

pub const AFF_TOL: f64 = 1e-10;

/// `x ↦ a x + b` with `a > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AffElement {
    pub a: f64,
    pub b: f64,
}

impl AffElement {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a > 0.0 && b.is_finite() && a.is_finite() {
            Ok(Self { a, b })
        } else {
            Err(Error::Invalid(format!(
                "affine element needs a > 0, got ({a}, {b})"
            )))
        }
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0 }
    }

    /// `(a1 a2, a1 b2 + b1)`, composition of affine maps.
    pub fn multiply(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a,
            b: self.a * o.b + self.b,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: 1.0 / self.a,
            b: -self.b / self.a,
        }
    }

    pub fn distance(&self, o: &Self) -> f64 {
        (self.a - o.a).abs().max((self.b - o.b).abs())
    }

    pub fn as_point(&self) -> [f64; 2] {
        [self.a, self.b]
    }
}

pub fn aff_multiply(e1: &AffElement, e2: &AffElement) -> AffElement {
    e1.multiply(e2)
}

/// `b2 (a1 - 1) = b1 (a2 - 1)`.
pub fn aff_commutes(e1: &AffElement, e2: &AffElement) -> bool {
    let l = e2.b * (e1.a - 1.0);
    let r = e1.b * (e2.a - 1.0);
    (l - r).abs() <= AFF_TOL * 1.0f64.max(l.abs()).max(r.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: f64, b: f64) -> AffElement {
        AffElement::new(a, b).unwrap()
    }

    #[test]
    fn examples() {
        let g = e(3.0, 5.0);
        assert_eq!(g.multiply(&AffElement::identity()), g);
        assert_eq!(AffElement::identity().multiply(&g), g);
        assert_eq!(aff_multiply(&e(2.0, 0.0), &g), e(6.0, 10.0));
        assert_eq!(aff_multiply(&g, &e(2.0, 0.0)), e(6.0, 5.0));
        assert!(!aff_commutes(&e(2.0, 0.0), &g));
        assert!(aff_commutes(&e(1.0, 2.0), &e(1.0, -7.5)));
        assert!(AffElement::new(0.0, 1.0).is_err());
    }

    #[test]
    fn inverse_and_action() {
        let g = e(0.25, -3.0);
        assert!(g.multiply(&g.inverse()).distance(&AffElement::identity()) < 1e-15);
        assert!(g.inverse().multiply(&g).distance(&AffElement::identity()) < 1e-15);
        // the product composes the maps x ↦ a x + b
        let h = e(4.0, 1.5);
        let gh = g.multiply(&h);
        let x = 0.7;
        assert!((gh.a * x + gh.b - (g.a * (h.a * x + h.b) + g.b)).abs() < 1e-15);
    }
}
