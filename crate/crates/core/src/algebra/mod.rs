//! Exact arithmetic: rationals, univariate and bivariate polynomials,
//! rational functions, Taylor expansions and linear algebra.

pub mod linalg;
pub mod parse;
pub mod poly2;
pub mod ratfun;
pub mod rational;
pub mod taylor;
pub mod unipoly;
mod zgcd;

pub use linalg::{det_polys, nullspace, rank, Matrix};
pub use poly2::{Poly2, Var};
pub use ratfun::RationalFunction2;
pub use rational::{frac, rat, Rational};
pub use taylor::Taylor2;
pub use unipoly::{PolyS, UniPoly};

use crate::error::Result;

/// Arithmetic operation selector for [`rf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rf_arith(
    f: &RationalFunction2,
    g: &RationalFunction2,
    op: ArithOp,
) -> Result<RationalFunction2> {
    Ok(match op {
        ArithOp::Add => f + g,
        ArithOp::Sub => f - g,
        ArithOp::Mul => f * g,
        ArithOp::Div => f.checked_div(g)?,
    })
}

pub fn rf_partial(f: &RationalFunction2, var: Var) -> RationalFunction2 {
    f.partial(var)
}

pub fn rf_eval(f: &RationalFunction2, x: &Rational, y: &Rational) -> Result<Rational> {
    f.eval(x, y)
}

/// Determinant of a square matrix with entries in `Q[s]`.
pub fn det_poly_s(m: &[Vec<PolyS>]) -> PolyS {
    det_polys(m)
}
