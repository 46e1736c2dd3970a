use serde::ser::SerializeStruct;
use serde::Serialize;

use super::field::FamilyField;
use super::regime::{mat_vec, one_minus, solve2, Regime};
use crate::connection::NumericMap;
use crate::error::{Error, Result};

/// Tolerance for group identities.
pub const GROUP_TOL: f64 = 1e-9;

/// An element `(h, k)` of `H ⋉ K`, `h = (s, t)`, `k = (u, v)`.
///
/// It acts by `(x, y) ↦ (x e^s, y + t)` followed by `(x, y) ↦ (x + k(y), y)`
/// with `k(y) = u Z1(y) + v Z2(y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub h: [f64; 2],
    pub k: [f64; 2],
    pub regime: Regime,
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GroupElement", 2)?;
        st.serialize_field("h", &self.h)?;
        st.serialize_field("k", &self.k)?;
        st.end()
    }
}

impl GroupElement {
    pub fn new(regime: &Regime, h: [f64; 2], k: [f64; 2]) -> Self {
        Self {
            h,
            k,
            regime: regime.clone(),
        }
    }

    pub fn identity(regime: &Regime) -> Self {
        Self::new(regime, [0.0; 2], [0.0; 2])
    }

    /// Parses `s,t,u,v`.
    pub fn parse(regime: &Regime, text: &str) -> Result<Self> {
        let v: Vec<f64> = text
            .split(',')
            .map(|p| {
                p.trim().parse::<f64>().map_err(|e| Error::Parse {
                    offset: 0,
                    message: format!("`{p}`: {e}"),
                })
            })
            .collect::<Result<_>>()?;
        if v.len() != 4 {
            return Err(Error::Invalid(format!("expected s,t,u,v, got `{text}`")));
        }
        Ok(Self::new(regime, [v[0], v[1]], [v[2], v[3]]))
    }

    pub fn psi(&self) -> [[f64; 2]; 2] {
        self.regime.psi(self.h)
    }

    fn same_regime(&self, o: &Self) -> Result<()> {
        if self.regime == o.regime {
            Ok(())
        } else {
            Err(Error::RegimeMismatch)
        }
    }

    /// `(h1 + h2, Ψ_{h1} k2 + k1)`.
    pub fn multiply(&self, o: &Self) -> Result<Self> {
        self.same_regime(o)?;
        let pk = mat_vec(&self.psi(), o.k);
        Ok(Self::new(
            &self.regime,
            [self.h[0] + o.h[0], self.h[1] + o.h[1]],
            [pk[0] + self.k[0], pk[1] + self.k[1]],
        ))
    }

    /// `(-h, -Ψ_{-h} k)`.
    pub fn inverse(&self) -> Self {
        let neg_h = [-self.h[0], -self.h[1]];
        let pk = mat_vec(&self.regime.psi(neg_h), self.k);
        Self::new(&self.regime, neg_h, [-pk[0], -pk[1]])
    }

    pub fn act(&self, p: [f64; 2]) -> [f64; 2] {
        let y = p[1] + self.h[1];
        [
            p[0] * self.h[0].exp() + self.regime.profile(self.k).eval(y),
            y,
        ]
    }

    pub fn jacobian(&self, p: [f64; 2]) -> [[f64; 2]; 2] {
        let y = p[1] + self.h[1];
        [
            [
                self.h[0].exp(),
                self.regime.profile(self.k).derivative().eval(y),
            ],
            [0.0, 1.0],
        ]
    }

    pub fn as_map(&self) -> NumericMap {
        let (a, b) = (self.clone(), self.clone());
        NumericMap::new(
            format!("g[{},{},{},{}]", self.h[0], self.h[1], self.k[0], self.k[1]),
            move |p| a.act(p),
            move |p| b.jacobian(p),
        )
    }

    /// Max-norm distance between the coordinates of two elements.
    pub fn distance(&self, o: &Self) -> f64 {
        (0..2)
            .map(|i| (self.h[i] - o.h[i]).abs().max((self.k[i] - o.k[i]).abs()))
            .fold(0.0, f64::max)
    }

    /// Residual of `(1 - Ψ_{h1}) k2 = (1 - Ψ_{h2}) k1`.
    pub fn commutation_defect(&self, o: &Self) -> Result<f64> {
        self.same_regime(o)?;
        let l = mat_vec(&one_minus(&self.psi()), o.k);
        let r = mat_vec(&one_minus(&o.psi()), self.k);
        Ok((l[0] - r[0]).abs().max((l[1] - r[1]).abs()))
    }

    pub fn commutes(&self, o: &Self) -> Result<bool> {
        let scale = 1.0f64.max(self.k.iter().chain(&o.k).fold(0.0, |m, v| m.max(v.abs())));
        Ok(self.commutation_defect(o)? < GROUP_TOL * scale)
    }

    /// `(0, q) · g · (0, -q) = (h, (1 - Ψ_h) q + k)`.
    pub fn conjugate_by_k(&self, q: [f64; 2]) -> Self {
        let a = mat_vec(&one_minus(&self.psi()), q);
        Self::new(&self.regime, self.h, [a[0] + self.k[0], a[1] + self.k[1]])
    }

    /// `q = -(1 - Ψ_h)^{-1} k`, which conjugates `g` into `H`.
    pub fn canonical_q(&self) -> Option<[f64; 2]> {
        solve2(&one_minus(&self.psi()), [-self.k[0], -self.k[1]])
    }

    /// The time-`τ` flow of a Killing field as a group element.
    pub fn from_flow(w: &FamilyField, tau: f64) -> Self {
        let r = &w.regime;
        let h = [w.lambda * tau, w.mu * tau];
        // k(Y) = e^{λτ} ∫ e^{-λσ} h_W(Y - μτ + μσ) dσ; match k(0) and k'(0).
        let e = (w.lambda * tau).exp();
        let y0 = -w.mu * tau;
        let prof = w.profile();
        let k0 = e * prof.flow_integral(y0, w.mu, w.lambda, tau);
        let k1 = e * prof.derivative().flow_integral(y0, w.mu, w.lambda, tau);
        let z0 = r
            .values_at_zero()
            .map(|q| crate::algebra::rational::to_f64(&q));
        let d = r.derivative_matrix();
        // k'(0) = z0 · D (u, v)
        let row2 = [
            z0[0] * d[0][0] + z0[1] * d[1][0],
            z0[0] * d[0][1] + z0[1] * d[1][1],
        ];
        let k = solve2(&[z0, row2], [k0, k1]).expect("Z1, Z2 independent at 0");
        Self::new(r, h, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn regime(alpha: i64, beta: i64) -> Regime {
        Regime::from_coefficients(&rat(alpha), &rat(beta))
    }

    #[test]
    fn identity_and_inverse() {
        let r = regime(1, 3);
        let g = GroupElement::new(&r, [0.4, -1.2], [0.3, 2.0]);
        let e = GroupElement::identity(&r);
        assert!(g.multiply(&e).unwrap().distance(&g) < 1e-15);
        assert!(g.multiply(&g.inverse()).unwrap().distance(&e) < 1e-10);
        assert!(g.inverse().multiply(&g).unwrap().distance(&e) < 1e-10);
    }

    #[test]
    fn action_examples() {
        let r = regime(3, 2);
        let g = GroupElement::new(&r, [2f64.ln(), 3.0], [0.0, 0.0]);
        let q = g.act([1.0, 0.0]);
        assert!((q[0] - 2.0).abs() < 1e-15 && q[1] == 3.0);
        let g = GroupElement::new(&r, [0.0, 0.0], [1.0, 0.0]);
        assert_eq!(g.act([0.0, 0.0]), [1.0, 0.0]);
    }

    #[test]
    fn left_action() {
        for r in [regime(3, 2), regime(1, 3), regime(2, 1)] {
            let g1 = GroupElement::new(&r, [0.3, 0.5], [1.0, -0.4]);
            let g2 = GroupElement::new(&r, [-0.7, 0.2], [0.2, 0.9]);
            let p = [0.4, -0.3];
            let a = g1.multiply(&g2).unwrap().act(p);
            let b = g1.act(g2.act(p));
            assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn commutation_examples() {
        let r = regime(3, 2);
        let g = GroupElement::new(&r, [0.3, 0.5], [1.0, -0.4]);
        assert!(g.commutes(&g).unwrap());
        let h1 = GroupElement::new(&r, [0.3, 0.5], [0.0, 0.0]);
        let h2 = GroupElement::new(&r, [-1.3, 2.5], [0.0, 0.0]);
        assert!(h1.commutes(&h2).unwrap());
        let g1 = GroupElement::new(&r, [0.0, 1.0], [0.0, 0.0]);
        let g2 = GroupElement::new(&r, [0.0, 0.0], [0.0, 1.0]);
        assert!(!g1.commutes(&g2).unwrap());
        let other = GroupElement::identity(&regime(0, 1));
        assert_eq!(g1.commutes(&other), Err(Error::RegimeMismatch));
        assert_eq!(g1.multiply(&other), Err(Error::RegimeMismatch));
    }

    #[test]
    fn conjugation_into_h() {
        let r = regime(1, 3);
        let g = GroupElement::new(&r, [0.3, 0.5], [1.0, -0.4]);
        assert_eq!(g.conjugate_by_k([0.0, 0.0]), g);
        let q = g.canonical_q().unwrap();
        let c = g.conjugate_by_k(q);
        assert!(c.k[0].abs() < 1e-10 && c.k[1].abs() < 1e-10);
        // agrees with the group product (0,q) g (0,-q)
        let cq = GroupElement::new(&r, [0.0, 0.0], q);
        let prod = cq.multiply(&g).unwrap().multiply(&cq.inverse()).unwrap();
        assert!(prod.distance(&c) < 1e-10);
    }

    #[test]
    fn flows_are_group_elements() {
        for r in [regime(3, 2), regime(1, 3), regime(2, 1)] {
            let w = FamilyField::new(&r, -0.4, 0.9, [0.5, -1.2]);
            let g = GroupElement::from_flow(&w, 0.8);
            for p in [[0.0, 0.0], [1.0, -0.5], [-0.3, 1.4]] {
                let (a, b) = (g.act(p), w.flow_point(p, 0.8));
                assert!(
                    (a[0] - b[0]).abs() < 1e-10 && (a[1] - b[1]).abs() < 1e-12,
                    "{a:?} {b:?}"
                );
            }
        }
    }
}
