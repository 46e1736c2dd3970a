//! Real functions of `y` written as `Re Σ c y^p e^{zy}`.

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpTerm {
    pub c: Complex64,
    pub p: u32,
    pub z: Complex64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Profile {
    terms: Vec<ExpTerm>,
}

impl Profile {
    pub fn new(terms: Vec<ExpTerm>) -> Self {
        Self { terms }.normalized()
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    /// Merges terms with equal `(p, z)` and drops zero coefficients.
    fn normalized(mut self) -> Self {
        let mut out: Vec<ExpTerm> = Vec::new();
        for t in self.terms.drain(..) {
            match out.iter_mut().find(|o| o.p == t.p && o.z == t.z) {
                Some(o) => o.c += t.c,
                None => out.push(t),
            }
        }
        out.retain(|t| t.c != Complex64::new(0.0, 0.0));
        Self { terms: out }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|t| ExpTerm { c: t.c * k, ..*t })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).copied().collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            out.push(ExpTerm { c: t.c * t.z, ..*t });
            if t.p > 0 {
                out.push(ExpTerm {
                    c: t.c * t.p as f64,
                    p: t.p - 1,
                    z: t.z,
                });
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| (t.c * y.powi(t.p as i32) * (t.z * y).exp()).re)
            .sum()
    }

    /// Largest coefficient difference after merging like terms; `0` means the
    /// two profiles agree term by term.
    pub fn distance(&self, other: &Self) -> f64 {
        self.add(&other.scale(-1.0))
            .terms
            .iter()
            .map(|t| t.c.norm())
            .fold(0.0, f64::max)
    }

    /// `∫_0^τ e^{-λσ} h(y0 + μσ) dσ`.
    pub fn flow_integral(&self, y0: f64, mu: f64, lambda: f64, tau: f64) -> f64 {
        let mut total = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let w = t.z * mu - lambda;
            let e = moments(w, tau, t.p);
            // (y0 + μσ)^p expanded binomially
            let mut acc = Complex64::new(0.0, 0.0);
            let mut binom = 1.0;
            for j in 0..=t.p {
                acc += binom * y0.powi((t.p - j) as i32) * mu.powi(j as i32) * e[j as usize];
                binom = binom * (t.p - j) as f64 / (j + 1) as f64;
            }
            total += t.c * (t.z * y0).exp() * acc;
        }
        total.re
    }
}

/// `E_j = ∫_0^τ σ^j e^{wσ} dσ` for `j = 0..=p`.
fn moments(w: Complex64, tau: f64, p: u32) -> Vec<Complex64> {
    let wt = w * tau;
    let mut e = Vec::with_capacity(p as usize + 1);
    if wt.norm() < 0.5 {
        for j in 0..=p {
            // τ^{j+1} Σ (wτ)^n / (n! (n + j + 1))
            let mut term = Complex64::new(1.0, 0.0);
            let mut sum = Complex64::new(0.0, 0.0);
            for n in 0..40u32 {
                if n > 0 {
                    term = term * wt / n as f64;
                }
                sum += term / (n + j + 1) as f64;
            }
            e.push(sum * tau.powi(j as i32 + 1));
        }
    } else {
        let ewt = wt.exp();
        e.push((ewt - 1.0) / w);
        for j in 1..=p {
            let prev = e[j as usize - 1];
            e.push((tau.powi(j as i32) * ewt - prev * j as f64) / w);
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(c: f64, p: u32, z: f64) -> ExpTerm {
        ExpTerm {
            c: c.into(),
            p,
            z: z.into(),
        }
    }

    #[test]
    fn trig_profiles() {
        let cos = Profile::new(vec![ExpTerm {
            c: 1.0.into(),
            p: 0,
            z: Complex64::new(0.5, 2.0),
        }]);
        let sin = Profile::new(vec![ExpTerm {
            c: Complex64::new(0.0, -1.0),
            p: 0,
            z: Complex64::new(0.5, 2.0),
        }]);
        let y = 0.7f64;
        assert!((cos.eval(y) - (0.5 * y).exp() * (2.0 * y).cos()).abs() < 1e-14);
        assert!((sin.eval(y) - (0.5 * y).exp() * (2.0 * y).sin()).abs() < 1e-14);
        // (e^{ay} cos by)' = a cos - b sin
        let d = cos.derivative();
        let expected = cos.scale(0.5).add(&sin.scale(-2.0));
        assert!(d.distance(&expected) < 1e-15);
    }

    #[test]
    fn polynomial_factor() {
        let h = Profile::new(vec![real(1.0, 1, -1.0)]);
        let d = h.derivative();
        assert!((d.eval(2.0) - (1.0 - 2.0) * (-2.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn integrals_match_quadrature() {
        let h = Profile::new(vec![
            real(1.0, 1, -1.0),
            ExpTerm {
                c: 1.0.into(),
                p: 0,
                z: Complex64::new(0.3, 1.5),
            },
        ]);
        for &(y0, mu, lambda, tau) in &[
            (0.2, 1.0, 0.5, 0.8),
            (-1.0, 0.3, -2.0, 1e-3),
            (0.5, 2.0, 0.0, 3.0),
        ] {
            let n = 20000;
            let dt = tau / n as f64;
            let f = |s: f64| (-lambda * s).exp() * h.eval(y0 + mu * s);
            let mut quad = f(0.0) + f(tau);
            for i in 1..n {
                quad += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * dt);
            }
            quad *= dt / 3.0;
            let exact = h.flow_integral(y0, mu, lambda, tau);
            assert!((exact - quad).abs() < 1e-10, "{exact} vs {quad}");
        }
    }

    #[test]
    fn merging() {
        let p = Profile::new(vec![real(1.0, 0, 2.0), real(-1.0, 0, 2.0)]);
        assert!(p.terms().is_empty());
    }
}
