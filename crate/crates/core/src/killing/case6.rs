//! Constant-coefficient connections preserved by `∂x`, `∂y` and the spiral
//! field `(s x + y) ∂x + (s y - x) ∂y`.

use num_traits::Zero;
use serde::Serialize;

use super::system::{assemble, AX, AY, BX, BY};
use crate::algebra::linalg::nullspace;
use crate::algebra::rational::format_rational;
use crate::algebra::{rat, PolyS, Rational, RationalFunction2};
use crate::connection::Connection2D;
use crate::error::{Error, Result};

/// `(s^2 + 9)(s^2 + 1)^3`.
pub fn expected_case6_determinant() -> PolyS {
    let p9 = PolyS::from_i64(&[9, 0, 1]);
    let p1 = PolyS::from_i64(&[1, 0, 1]);
    &p9 * &p1.pow(3)
}

fn unit_connection(m: usize) -> Connection2D {
    let mut k: [RationalFunction2; 8] = Default::default();
    k[m] = RationalFunction2::one();
    Connection2D::from_coefficients(k)
}

/// The 8×8 matrix over `Q[s]`: rows are the six second-order relations and
/// the torsion pair, columns the coefficients `A, B, C, D, E, F, U, V`.
pub fn case6_matrix() -> Vec<Vec<PolyS>> {
    let s = PolyS::var();
    let mut jet = vec![PolyS::zero(); 6];
    jet[AX] = s.clone();
    jet[AY] = PolyS::one();
    jet[BX] = PolyS::from_i64(&[-1]);
    jet[BY] = s;

    let mut m = vec![vec![PolyS::zero(); 8]; 8];
    for col in 0..8 {
        let sys = assemble(&unit_connection(col));
        let rows = sys
            .second
            .iter()
            .map(|r| (r, true))
            .chain(sys.constraints.iter().map(|r| (r, false)));
        for (r, (row, negate)) in rows.enumerate() {
            let mut acc = PolyS::zero();
            for (coeff, v) in row.iter().zip(&jet) {
                let q = coeff.as_constant().expect("constant coefficients");
                if !q.is_zero() {
                    acc = &acc + &v.scale(&q);
                }
            }
            // The field has vanishing second derivatives, so each relation
            // reads 0 = rhs; negate for the conventional sign.
            m[r][col] = if negate { -&acc } else { acc };
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case6Certificate {
    #[serde(serialize_with = "ser_poly")]
    pub determinant: PolyS,
    #[serde(serialize_with = "ser_poly")]
    pub target: PolyS,
    /// `det / target`, when that quotient is a nonzero constant.
    #[serde(serialize_with = "ser_opt_rat")]
    pub lambda: Option<Rational>,
    pub unique_at_s1: bool,
    pub passed: bool,
}

fn ser_poly<S: serde::Serializer>(p: &PolyS, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_opt_rat<S: serde::Serializer>(
    q: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&format_rational(q)),
        None => s.serialize_none(),
    }
}

/// Checks the determinant against `target` up to a nonzero constant and
/// checks that at `s = 1` only the zero connection solves the system.
pub fn case6_certificate(target: &PolyS) -> Case6Certificate {
    let m = case6_matrix();
    let det = crate::algebra::det_polys(&m);
    let lambda = if target.is_zero() {
        None
    } else {
        det.exact_div(target)
            .filter(|q| q.is_constant() && !q.is_zero())
            .map(|q| q.coeff(0))
    };
    let at_one: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|p| p.eval(&rat(1))).collect())
        .collect();
    let unique_at_s1 = nullspace(&at_one, 8).is_empty();
    Case6Certificate {
        passed: lambda.is_some() && unique_at_s1,
        determinant: det,
        target: target.clone(),
        lambda,
        unique_at_s1,
    }
}

/// Returns the determinant, or an error when the certificate fails.
pub fn verify_case6() -> Result<PolyS> {
    let cert = case6_certificate(&expected_case6_determinant());
    if cert.passed {
        Ok(cert.determinant)
    } else {
        Err(Error::CertificateFailed(format!(
            "case-6 determinant {} is not a nonzero multiple of {}",
            cert.determinant, cert.target
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_rows() {
        let m = case6_matrix();
        let p = |c: &[i64]| PolyS::from_i64(c);
        // sA - B - 2C
        assert_eq!(m[0][0], p(&[0, 1]));
        assert_eq!(m[0][1], p(&[-1]));
        assert_eq!(m[0][2], p(&[-2]));
        // torsion rows: -V + sU and sV + U
        assert_eq!(m[6][6], p(&[0, 1]));
        assert_eq!(m[6][7], p(&[-1]));
        assert_eq!(m[7][6], p(&[1]));
        assert_eq!(m[7][7], p(&[0, 1]));
    }

    #[test]
    fn determinant_certificate() {
        let det = verify_case6().unwrap();
        assert_eq!(det.degree(), Some(8));
        assert!(!det.eval(&rat(0)).is_zero());
    }

    #[test]
    fn wrong_target_fails() {
        let wrong = &PolyS::from_i64(&[4, 0, 1]) * &PolyS::from_i64(&[1, 0, 1]).pow(3);
        let cert = case6_certificate(&wrong);
        assert!(!cert.passed);
        assert!(cert.lambda.is_none());
    }
}
