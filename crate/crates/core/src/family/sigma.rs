use serde::Serialize;

use super::params::{make_connection, normalize_delta, FamilyParams};
use crate::algebra::rational::to_f64;
use crate::connection::{pullback_residual, NumericMap};
use crate::error::Result;

pub const ISOMETRY_TOL: f64 = 1e-4;

/// `σ(x, y) = (-e^{αy} x, -y)`.
pub fn sigma_map(alpha: f64) -> NumericMap {
    NumericMap::new(
        format!("sigma[alpha={alpha}]"),
        move |p| [-(alpha * p[1]).exp() * p[0], -p[1]],
        move |p| {
            let e = (alpha * p[1]).exp();
            [[-e, -alpha * e * p[0]], [0.0, -1.0]]
        },
    )
}

/// `n × n` grid on `[-1, 1]²`.
pub fn sample_grid(n: usize) -> Vec<[f64; 2]> {
    let c = |i: usize| -1.0 + 2.0 * i as f64 / (n - 1) as f64;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| [c(i), c(j)]))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaReport {
    pub is_isometry: bool,
    pub residual: f64,
}

/// Whether `σ` is an isometry of the (δ-normalized) family connection.
pub fn sigma_test(p: &FamilyParams) -> Result<SigmaReport> {
    let (q, _) = normalize_delta(p);
    let c = make_connection(&q);
    let residual = pullback_residual(&c, &sigma_map(to_f64(&q.alpha)), &sample_grid(5))?;
    Ok(SigmaReport {
        is_isometry: residual < ISOMETRY_TOL,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(
            sigma_test(&FamilyParams::ints(2, 1, 1, 0, 0))
                .unwrap()
                .is_isometry
        );
        assert!(
            sigma_test(&FamilyParams::ints(0, 1, 0, 0, 0))
                .unwrap()
                .is_isometry
        );
        let off = sigma_test(&FamilyParams::ints(0, 1, 1, 0, 0)).unwrap();
        assert!(!off.is_isometry && off.residual > 0.1);
        assert!(
            !sigma_test(&FamilyParams::ints(2, 1, 1, 1, 0))
                .unwrap()
                .is_isometry
        );
    }

    #[test]
    fn involution() {
        let s = sigma_map(0.7);
        let p = [0.3, -0.8];
        let q = s.apply(s.apply(p));
        assert!((q[0] - p[0]).abs() < 1e-15 && (q[1] - p[1]).abs() < 1e-15);
        assert!(s.jacobian_fd_error(&sample_grid(3)) < 1e-6);
    }
}
