//! Rational functions in cL, cM, hL, hM kept in lowest terms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::gcd::gcd;
use super::poly::{Poly, Var};
use crate::error::{Error, Result};

/// Element of Q(cL, cM, hL, hM) as `num / den` with coprime integer
/// polynomials and a positive leading coefficient in `den`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

/// Partial assignment of rational values to the four variables.
pub type Assignment = [Option<BigRational>; 4];

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_poly(Poly::constant(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::from_poly(Poly::constant(n))
    }

    /// `n / d`; panics if `d == 0`.
    pub fn rational(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar::from_ratio(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Scalar {
            num: Poly::constant(r.numer().clone()),
            den: Poly::constant(r.denom().clone()),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(Poly::var(v))
    }

    pub fn c_l() -> Self {
        Scalar::var(Var::CL)
    }

    pub fn c_m() -> Self {
        Scalar::var(Var::CM)
    }

    pub fn h_l() -> Self {
        Scalar::var(Var::HL)
    }

    pub fn h_m() -> Self {
        Scalar::var(Var::HM)
    }

    /// Reduces `num / den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading_coeff_sign() < 0 {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Value as a rational number when no variable occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn is_constant(&self) -> bool {
        self.num.as_constant().is_some() && self.den.as_constant().is_some()
    }

    pub fn mul_ratio(&self, r: &BigRational) -> Scalar {
        if r.is_zero() || self.is_zero() {
            return Scalar::zero();
        }
        Self::normalize(self.num.scale(r.numer()), self.den.scale(r.denom()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &o.inv_unchecked())
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Scalar {
        let (mut n, mut d) = (self.den.clone(), self.num.clone());
        if d.leading_coeff_sign() < 0 {
            n = n.neg();
            d = d.neg();
        }
        Scalar { num: n, den: d }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Substitutes rationals for some variables. Fails if the denominator
    /// vanishes under the assignment.
    pub fn specialize(&self, assign: &Assignment) -> Result<Scalar> {
        let (n, ln) = self.num.substitute(assign);
        let (d, ld) = self.den.substitute(assign);
        if d.is_zero() {
            return Err(Error::SpecializationPole(self.to_string()));
        }
        Ok(Self::normalize(n.scale(&ld), d.scale(&ln)))
    }

    /// Substitutes scalars for variables (total substitution by rational
    /// functions). Used when a value is computed at a symbolic weight and
    /// re-read at a special one.
    pub fn substitute(&self, values: &[Scalar; 4]) -> Result<Scalar> {
        let eval = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let mut t = Scalar::from_bigint(c.clone());
                for v in Var::ALL {
                    let e = m.exp(v);
                    if e > 0 {
                        t = &t * &values[v.index()].pow(e);
                    }
                }
                acc = &acc + &t;
            }
            acc
        };
        let d = eval(&self.den);
        if d.is_zero() {
            return Err(Error::SpecializationPole(self.to_string()));
        }
        eval(&self.num).checked_div(&d)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::normalize(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return Scalar::normalize(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        if o.den.is_one() {
            return Scalar::normalize(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): (a d' + c b') / (b' d' g)
        let g = gcd(&self.den, &o.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let n = self.num.mul(&d1).add(&o.num.mul(&b1));
        Scalar::normalize(n, b1.mul(&o.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.num),
                den: Poly::one(),
            };
        }
        // cross cancellation keeps intermediate sizes down
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = o.den.div_exact(&g1).expect("gcd divides");
        let c = o.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        let (mut num, mut den) = (a.mul(&c), b.mul(&d));
        if den.leading_coeff_sign() < 0 {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.len() > 1
}

fn is_bare_monomial(p: &Poly) -> bool {
    p.len() == 1 && p.terms()[0].1.is_one()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let d = &self.den;
        if d.as_constant().is_some() || is_bare_monomial(d) {
            write!(f, "/{d}")
        } else {
            write!(f, "/({d})")
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    num: String,
    den: String,
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr {
            num: self.num.to_string(),
            den: self.den.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ScalarRepr::deserialize(d)?;
        let n: Scalar = r.num.parse().map_err(serde::de::Error::custom)?;
        let den: Scalar = r.den.parse().map_err(serde::de::Error::custom)?;
        n.checked_div(&den).map_err(serde::de::Error::custom)
    }
}

/// Sign helper for rendering sums: true if the leading numerator
/// coefficient is negative.
pub fn looks_negative(s: &Scalar) -> bool {
    s.numer().leading().is_some_and(|(_, c)| c.is_negative())
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn canonical_display() {
        assert_eq!(s("(87-6*cL)/cM^2").to_string(), "(-6*cL+87)/cM^2");
        assert_eq!(s("3/(2*cM)").to_string(), "3/(2*cM)");
        assert_eq!(s("-cL/8").to_string(), "-cL/8");
        assert_eq!(s("4/(cM+8*hM)").to_string(), "4/(cM+8*hM)");
        assert_eq!(s("6/cM").to_string(), "6/cM");
    }

    #[test]
    fn cancellation() {
        let a = s("(cL^2-1)/(cL+1)");
        assert_eq!(a, s("cL-1"));
        let b = s("(2*cM*hL)/(4*cM^2)");
        assert_eq!(b, s("hL/(2*cM)"));
        assert_eq!(s("1/(1-cM)"), s("-1/(cM-1)"));
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            s("cM").checked_div(&Scalar::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!("1/(cM-cM)".parse::<Scalar>().is_err());
    }

    #[test]
    fn specialization() {
        let a = s("(87-6*cL)/cM^2");
        let mut asg: Assignment = Default::default();
        asg[Var::CL.index()] = Some(BigRational::from_integer(7.into()));
        asg[Var::CM.index()] = Some(BigRational::new(1.into(), 2.into()));
        assert_eq!(a.specialize(&asg).unwrap(), Scalar::from_int(180));
        let pole = s("1/(cM-2)");
        asg[Var::CM.index()] = Some(BigRational::from_integer(2.into()));
        assert!(matches!(
            pole.specialize(&asg),
            Err(Error::SpecializationPole(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let a = s("(87-6*cL)/cM^2");
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"num":"-6*cL+87","den":"cM^2"}"#);
        let b: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(a, b);
    }
}
