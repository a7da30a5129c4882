//! Exact scalars: the field Q(cL, cM, hL, hM) and its specializations.

mod gcd;
mod parse;
mod poly;
mod scalar;

pub use gcd::gcd;
pub use parse::parse_scalar;
pub use poly::{Monomial, Poly, Var};
pub use scalar::{looks_negative, Assignment, Scalar};

use num_rational::BigRational;

/// Builds an assignment from optional rational values for cL, cM, hL, hM.
pub fn assignment(
    cl: Option<BigRational>,
    cm: Option<BigRational>,
    hl: Option<BigRational>,
    hm: Option<BigRational>,
) -> Assignment {
    [cl, cm, hl, hm]
}

/// `n/d` as a big rational.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
