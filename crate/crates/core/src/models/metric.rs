use crate::connection::Connection2D;

fn conn(k: [&str; 8]) -> Connection2D {
    Connection2D::parse(k).expect("well-formed constant expressions")
}

/// Levi-Civita connection of `(dx² + dy²) / y²` on the upper half-plane.
pub fn hyperbolic_connection() -> Connection2D {
    conn(["0", "1/y", "-1/y", "0", "0", "-1/y", "0", "0"])
}

/// Levi-Civita connection of `4 (dx² + dy²) / (1 + x² + y²)²` in the stereographic chart.
pub fn sphere_connection() -> Connection2D {
    let w = "(1 + x^2 + y^2)";
    let f = |n: &str| format!("{n}/{w}");
    let (a, b, c) = (f("-2*x"), f("2*y"), f("-2*y"));
    let (d, e, ff) = (f("-2*x"), f("2*x"), f("-2*y"));
    conn([&a, &b, &c, &d, &e, &ff, "0", "0"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, RationalFunction2};

    #[test]
    fn torsion_free() {
        for c in [hyperbolic_connection(), sphere_connection()] {
            assert!(c.is_torsion_free());
            assert!(!c.is_flat());
        }
    }

    #[test]
    fn sphere_vanishes_at_origin() {
        let c = sphere_connection();
        for k in c.coefficients() {
            assert_eq!(k.eval(&rat(0), &rat(0)).unwrap(), rat(0));
        }
        assert_eq!(c.u, RationalFunction2::zero());
    }
}
