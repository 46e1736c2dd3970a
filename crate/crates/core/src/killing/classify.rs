use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::prolong::{solve, BasePoint, KillingJet, KillingSolution};
use crate::algebra::linalg::{rank, rref, solve_in_span, symmetric_inertia};
use crate::algebra::rational::format_rational;
use crate::algebra::Rational;
use crate::connection::Connection2D;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraLabel {
    FlatTorsionFree,
    Dim4Case,
    SL2,
    SO3,
    Affine2,
    Abelian2,
    LowRank(usize),
    Other(usize),
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FlatTorsionFree => f.write_str("FlatTorsionFree"),
            Self::Dim4Case => f.write_str("Dim4Case"),
            Self::SL2 => f.write_str("SL2"),
            Self::SO3 => f.write_str("SO3"),
            Self::Affine2 => f.write_str("Affine2"),
            Self::Abelian2 => f.write_str("Abelian2"),
            Self::LowRank(d) => write!(f, "LowRank({d})"),
            Self::Other(d) => write!(f, "Other({d})"),
        }
    }
}

/// `c[i][j][k]` is the `e_k` coordinate of `[e_i, e_j]`.
pub type StructureConstants = Vec<Vec<Vec<Rational>>>;

#[derive(Clone, Debug)]
pub struct AlgebraReport {
    pub point: BasePoint,
    pub dim: usize,
    pub basis: Vec<KillingJet>,
    pub structure_constants: StructureConstants,
    pub label: AlgebraLabel,
    pub homogeneous_at_point: bool,
    pub flat: bool,
    pub torsion_free: bool,
    pub stabilized: bool,
    pub ranks: Vec<usize>,
}

impl Serialize for AlgebraReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let sc: Vec<Vec<Vec<String>>> = self
            .structure_constants
            .iter()
            .map(|m| {
                m.iter()
                    .map(|r| r.iter().map(format_rational).collect())
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("AlgebraReport", 11)?;
        st.serialize_field("point", &self.point.to_string())?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("dimension_kind", "jet-solution dimension at point")?;
        st.serialize_field("label", &self.label.to_string())?;
        st.serialize_field("homogeneous_at_point", &self.homogeneous_at_point)?;
        st.serialize_field("flat", &self.flat)?;
        st.serialize_field("torsion_free", &self.torsion_free)?;
        st.serialize_field("stabilized", &self.stabilized)?;
        st.serialize_field("ranks", &self.ranks)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("structure_constants", &sc)?;
        st.end()
    }
}

/// Structure constants of the solved algebra in its jet basis.
pub fn structure_constants(sol: &KillingSolution) -> Result<StructureConstants> {
    let d = sol.dim();
    let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
    for i in 0..d {
        for j in (i + 1)..d {
            let z = sol.bracket(&sol.basis[i], &sol.basis[j])?;
            let coords = sol.coordinates(&z).map_err(|_| Error::NotBracketClosed)?;
            for k in 0..d {
                c[j][i][k] = -coords[k].clone();
                c[i][j][k] = coords[k].clone();
            }
        }
    }
    Ok(c)
}

/// `[u, v]` for coordinate vectors `u`, `v`.
pub fn bracket_coords(c: &StructureConstants, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let d = c.len();
    let mut out = vec![Rational::zero(); d];
    for i in 0..d {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..d {
            if v[j].is_zero() {
                continue;
            }
            let w = &u[i] * &v[j];
            for k in 0..d {
                out[k] += &w * &c[i][j][k];
            }
        }
    }
    out
}

pub fn is_antisymmetric(c: &StructureConstants) -> bool {
    let d = c.len();
    (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| c[i][j][k] == -c[j][i][k].clone())))
}

pub fn satisfies_jacobi(c: &StructureConstants) -> bool {
    let d = c.len();
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); d];
        v[i] = Rational::one();
        v
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (ei, ej, ek) = (unit(i), unit(j), unit(k));
                let t1 = bracket_coords(c, &bracket_coords(c, &ei, &ej), &ek);
                let t2 = bracket_coords(c, &bracket_coords(c, &ej, &ek), &ei);
                let t3 = bracket_coords(c, &bracket_coords(c, &ek, &ei), &ej);
                if (0..d).any(|n| !(&t1[n] + &t2[n] + &t3[n]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

/// `K_ij = tr(ad e_i ∘ ad e_j)`.
pub fn killing_form(c: &StructureConstants) -> Vec<Vec<Rational>> {
    let d = c.len();
    let mut kf = vec![vec![Rational::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut t = Rational::zero();
            for k in 0..d {
                for m in 0..d {
                    // (ad e_i)^k_m = c[i][m][k]
                    t += &c[i][m][k] * &c[j][k][m];
                }
            }
            kf[i][j] = t;
        }
    }
    kf
}

/// Whether the algebra has a 2-dim abelian derived algebra on which the
/// adjoint action spans a 2-dim space of operators containing the identity.
pub fn is_dim4_case(c: &StructureConstants) -> bool {
    let d = c.len();
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            brackets.push(c[i][j].clone());
        }
    }
    let (reduced, pivots) = rref(&brackets, d);
    if pivots.len() != 2 {
        return false;
    }
    let derived: Vec<Vec<Rational>> = reduced.into_iter().take(2).collect();
    if bracket_coords(c, &derived[0], &derived[1])
        .iter()
        .any(|x| !x.is_zero())
    {
        return false;
    }
    let mut ads = Vec::new();
    for i in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[i] = Rational::one();
        let mut m = Vec::with_capacity(4);
        for v in &derived {
            let Some(coords) = solve_in_span(&derived, &bracket_coords(c, &e, v)) else {
                return false;
            };
            m.extend(coords);
        }
        ads.push(m);
    }
    let identity = vec![
        Rational::one(),
        Rational::zero(),
        Rational::zero(),
        Rational::one(),
    ];
    rank(&ads, 4) == 2 && solve_in_span(&ads, &identity).is_some()
}

pub fn is_abelian(c: &StructureConstants) -> bool {
    c.iter().flatten().flatten().all(Zero::is_zero)
}

/// True iff the values `(a, b)` of the jets span the plane.
pub fn is_homogeneous(basis: &[KillingJet]) -> bool {
    let values: Vec<Vec<Rational>> = basis.iter().map(|j| j.value().to_vec()).collect();
    rank(&values, 2) == 2
}

pub fn classify_algebra(sol: &KillingSolution, c: &Connection2D) -> Result<AlgebraReport> {
    let sc = structure_constants(sol)?;
    if !is_antisymmetric(&sc) || !satisfies_jacobi(&sc) {
        return Err(Error::NotBracketClosed);
    }
    let dim = sol.dim();
    let report = c.curvature();
    let (flat, torsion_free) = (report.is_flat(), report.is_torsion_free());
    let label = match dim {
        6 if flat && torsion_free => AlgebraLabel::FlatTorsionFree,
        4 if is_dim4_case(&sc) => AlgebraLabel::Dim4Case,
        3 => {
            let (pos, neg, zero) = symmetric_inertia(&killing_form(&sc));
            match (pos, neg, zero) {
                (0, 3, 0) => AlgebraLabel::SO3,
                (_, _, 0) => AlgebraLabel::SL2,
                _ => AlgebraLabel::Other(3),
            }
        }
        2 if is_abelian(&sc) => AlgebraLabel::Abelian2,
        2 => AlgebraLabel::Affine2,
        0 | 1 => AlgebraLabel::LowRank(dim),
        d => AlgebraLabel::Other(d),
    };
    Ok(AlgebraReport {
        point: sol.point.clone(),
        dim,
        homogeneous_at_point: is_homogeneous(&sol.basis),
        basis: sol.basis.clone(),
        structure_constants: sc,
        label,
        flat,
        torsion_free,
        stabilized: sol.stabilized,
        ranks: sol.ranks.clone(),
    })
}

pub fn classify_connection(
    c: &Connection2D,
    p: &BasePoint,
    max_order: usize,
) -> Result<AlgebraReport> {
    classify_algebra(&solve(c, p, max_order)?, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::killing::DEFAULT_MAX_ORDER;

    fn conn(k: [&str; 8]) -> Connection2D {
        Connection2D::parse(k).unwrap()
    }

    #[test]
    fn zero_connection_label() {
        let r = classify_connection(
            &Connection2D::zero(),
            &BasePoint::ints(0, 0),
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        assert_eq!(r.label, AlgebraLabel::FlatTorsionFree);
        assert!(r.homogeneous_at_point);
    }

    #[test]
    fn family_label() {
        let c = conn(["0", "0", "0", "0", "x", "0", "0", "0"]);
        let r = classify_connection(&c, &BasePoint::ints(0, 0), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!((r.dim, r.label), (4, AlgebraLabel::Dim4Case));
        assert!(r.homogeneous_at_point && !r.flat && r.torsion_free);
    }

    #[test]
    fn hyperbolic_is_sl2() {
        let c = conn(["0", "1/y", "-1/y", "0", "0", "-1/y", "0", "0"]);
        let r = classify_connection(&c, &BasePoint::ints(0, 1), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!((r.dim, r.label), (3, AlgebraLabel::SL2));
    }

    #[test]
    fn label_strings() {
        assert_eq!(AlgebraLabel::LowRank(1).to_string(), "LowRank(1)");
        assert_eq!(AlgebraLabel::SO3.to_string(), "SO3");
    }

    #[test]
    fn two_dimensional_algebras() {
        // [e0, e1] = e1
        let mut c = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        c[0][1][1] = Rational::one();
        c[1][0][1] = -Rational::one();
        assert!(is_antisymmetric(&c) && satisfies_jacobi(&c) && !is_abelian(&c));
    }

    #[test]
    fn killing_form_of_so3() {
        // [e_i, e_j] = ε_ijk e_k
        let mut c = vec![vec![vec![Rational::zero(); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = Rational::one();
            c[j][i][k] = -Rational::one();
        }
        assert!(satisfies_jacobi(&c));
        assert_eq!(symmetric_inertia(&killing_form(&c)), (0, 3, 0));
        assert!(!is_dim4_case(&c));
    }
}
