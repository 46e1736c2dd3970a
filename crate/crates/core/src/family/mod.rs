//! The four-parameter family of connections with a four-dimensional Killing
//! algebra, its isometry group `H ⋉ K` and the holonomy case analysis.

mod field;
mod group;
mod holonomy;
mod params;
mod profile;
mod regime;
mod sigma;

pub use field::{killing_basis, FamilyField};
pub use group::{GroupElement, GROUP_TOL};
pub use holonomy::{
    check_fields, classify_holonomy, degeneracy_curve, DegeneracyCurve, FieldChecks,
    HolonomyBranch, HolonomyOutcome, HolonomyVerdict, COMMUTATOR_TOL, FLOW_EPS, KILLING_FLOW_TOL,
};
pub use params::{make_connection, normalize_delta, rescale, DeltaShift, FamilyParams};
pub use profile::{ExpTerm, Profile};
pub use regime::{det, mat_mul, mat_vec, one_minus, solve2, Mat2, Regime, RegimeKind, Root};
pub use sigma::{sample_grid, sigma_map, sigma_test, SigmaReport, ISOMETRY_TOL};

/// Shortest round-trip rendering, with integers printed without a fraction.
pub(crate) fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}
