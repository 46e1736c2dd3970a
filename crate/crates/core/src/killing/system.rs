use crate::algebra::{RationalFunction2, Var};
use crate::connection::Connection2D;

/// Index of each jet unknown in a linear form.
pub const A: usize = 0;
pub const B: usize = 1;
pub const AX: usize = 2;
pub const AY: usize = 3;
pub const BX: usize = 4;
pub const BY: usize = 5;

pub const JET_NAMES: [&str; 6] = ["a", "b", "a_x", "a_y", "b_x", "b_y"];

/// Rows of [`KillingSystem::second`], in this order.
pub const SECOND_NAMES: [&str; 6] = ["a_xx", "b_xx", "a_xy", "b_xy", "a_yy", "b_yy"];

/// A linear combination of the jet unknowns with function coefficients.
pub type LinRow = [RationalFunction2; 6];

/// The Killing equations of a connection for `X = a ∂x + b ∂y`.
///
/// `second[r]` expresses the second derivative named `SECOND_NAMES[r]` as a
/// combination of `(a, b, a_x, a_y, b_x, b_y)`; each `constraints[r]` is a
/// combination that must vanish (preservation of torsion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingSystem {
    pub second: [LinRow; 6],
    pub constraints: [LinRow; 2],
}

fn row(entries: [RationalFunction2; 6]) -> LinRow {
    entries
}

pub fn assemble(c: &Connection2D) -> KillingSystem {
    let z = RationalFunction2::zero;
    let two = |f: &RationalFunction2| f.scale(&crate::algebra::rat(2));
    let px = |f: &RationalFunction2| f.partial(Var::X);
    let py = |f: &RationalFunction2| f.partial(Var::Y);
    let (a, b, cc, d, e, f, u, v) = (&c.a, &c.b, &c.c, &c.d, &c.e, &c.f, &c.u, &c.v);

    let a_xx = row([-px(a), -py(a), -a.clone(), b.clone(), -two(cc), z()]);
    let b_xx = row([-px(b), -py(b), -two(b), z(), a - &two(d), b.clone()]);
    let a_xy = row([-px(cc), -py(cc), z(), d - a, -e.clone(), -cc.clone()]);
    let b_xy = row([-px(d), -py(d), -d.clone(), -b.clone(), cc - f, z()]);
    let a_yy = row([-px(e), -py(e), e.clone(), f - &two(cc), z(), -two(e)]);
    let b_yy = row([-px(f), -py(f), z(), -two(d), e.clone(), -f.clone()]);

    let t1 = row([px(u), py(u), z(), -v.clone(), z(), u.clone()]);
    let t2 = row([px(v), py(v), v.clone(), z(), -u.clone(), z()]);

    KillingSystem {
        second: [a_xx, b_xx, a_xy, b_xy, a_yy, b_yy],
        constraints: [t1, t2],
    }
}

impl KillingSystem {
    /// Every coefficient function appearing in the system.
    pub fn coefficients(&self) -> impl Iterator<Item = &RationalFunction2> {
        self.second.iter().chain(&self.constraints).flatten()
    }
}
