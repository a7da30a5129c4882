//! Sparse integer polynomials in the four weight parameters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One of the four indeterminates of the scalar field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    CL,
    CM,
    HL,
    HM,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::CL, Var::CM, Var::HL, Var::HM];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::CL => "cL",
            Var::CM => "cM",
            Var::HL => "hL",
            Var::HM => "hM",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }

    fn shift(self) -> u32 {
        48 - 16 * self.index() as u32
    }
}

/// Exponent vector packed as four 16 bit fields, `cL` in the high bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(v: Var) -> Self {
        Monomial(1u64 << v.shift())
    }

    pub fn from_exps(e: [u32; 4]) -> Self {
        let mut m = 0u64;
        for v in Var::ALL {
            debug_assert!(e[v.index()] < 1 << 16);
            m |= (e[v.index()] as u64) << v.shift();
        }
        Monomial(m)
    }

    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> v.shift()) & 0xffff) as u32
    }

    pub fn exps(self) -> [u32; 4] {
        Var::ALL.map(|v| self.exp(v))
    }

    pub fn degree(self) -> u32 {
        Var::ALL.iter().map(|&v| self.exp(v)).sum()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn mul(self, o: Monomial) -> Monomial {
        Monomial(self.0 + o.0)
    }

    pub fn divides(self, o: Monomial) -> bool {
        Var::ALL.iter().all(|&v| self.exp(v) <= o.exp(v))
    }

    /// Quotient `self / o`; caller guarantees divisibility.
    pub fn div(self, o: Monomial) -> Monomial {
        debug_assert!(o.divides(self));
        Monomial(self.0 - o.0)
    }

    pub fn gcd(self, o: Monomial) -> Monomial {
        Monomial::from_exps(Var::ALL.map(|v| self.exp(v).min(o.exp(v))))
    }

    pub fn without(self, v: Var) -> Monomial {
        Monomial(self.0 & !(0xffffu64 << v.shift()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with integer coefficients, terms kept strictly decreasing
/// in graded lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Poly {
            terms: vec![(Monomial::var(v), BigInt::one())],
        }
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut v: Vec<(Monomial, BigInt)> = it.into_iter().collect();
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff_sign(&self) -> i32 {
        match self.terms.first() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn mul_term(&self, m: Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(Monomial::ONE, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                *acc.entry(ma.mul(*mb)).or_default() += ca * cb;
            }
        }
        Poly {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Nonnegative gcd of all coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, tc)| (*m, tc / c)).collect(),
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |g, (m, _)| g.gcd(*m))
    }

    /// Exact division; `None` if `d` does not divide `self` in Z[x].
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((m.div(*dm), q));
            }
            return Some(Poly { terms: out });
        }
        let (dm, dc) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            if !dm.divides(rm) {
                return None;
            }
            let (q, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = rm.div(dm);
            rem = rem.sub(&d.mul_term(qm, &q));
            quot.push((qm, q));
        }
        Some(Poly { terms: quot })
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    /// Coefficients with respect to `v`, index = power of `v`.
    pub fn to_univariate(&self, v: Var) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_univariate(v: Var, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            let vk = Monomial::from_exps({
                let mut e = [0; 4];
                e[v.index()] = k as u32;
                e
            });
            for (m, c) in &p.terms {
                terms.push((m.mul(vk), c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Substitutes rationals for the assigned variables. Returns the result
    /// scaled to integer coefficients together with the positive scale.
    pub fn substitute(&self, assign: &[Option<BigRational>; 4]) -> (Poly, BigInt) {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = BigRational::from_integer(c.clone());
            let mut rest = [0u32; 4];
            for v in Var::ALL {
                let e = m.exp(v);
                match &assign[v.index()] {
                    Some(val) if e > 0 => coeff *= num_traits::pow(val.clone(), e as usize),
                    _ => rest[v.index()] = e,
                }
            }
            *acc.entry(Monomial::from_exps(rest))
                .or_insert_with(BigRational::zero) += coeff;
        }
        let mut l = BigInt::one();
        for c in acc.values() {
            l = l.lcm(c.denom());
        }
        let terms = acc
            .into_iter()
            .map(|(m, c)| (m, (c * BigRational::from_integer(l.clone())).to_integer()));
        (Poly::from_terms(terms), l)
    }
}

fn fmt_monomial(m: Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", v.name())?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                fmt_monomial(*m, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[([u32; 4], i64)]) -> Poly {
        Poly::from_terms(
            terms
                .iter()
                .map(|(e, c)| (Monomial::from_exps(*e), BigInt::from(*c))),
        )
    }

    #[test]
    fn order_is_graded() {
        let cl = Monomial::var(Var::CL);
        let cm2 = Monomial::from_exps([0, 2, 0, 0]);
        assert!(cm2 > cl);
        assert!(cl > Monomial::var(Var::CM));
        assert!(Monomial::var(Var::HL) > Monomial::var(Var::HM));
    }

    #[test]
    fn mul_and_div_roundtrip() {
        let a = p(&[([1, 0, 0, 0], 2), ([0, 1, 0, 0], -3), ([0, 0, 0, 0], 5)]);
        let b = p(&[([0, 1, 1, 0], 1), ([0, 0, 0, 0], -7)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(ab.div_exact(&a), Some(b));
        assert_eq!(a.div_exact(&Poly::var(Var::HM)), None);
    }

    #[test]
    fn display() {
        let a = p(&[([1, 0, 0, 0], -6), ([0, 0, 0, 0], 87)]);
        assert_eq!(a.to_string(), "-6*cL+87");
        assert_eq!(p(&[([0, 2, 0, 0], 1)]).to_string(), "cM^2");
    }

    #[test]
    fn univariate_roundtrip() {
        let a = p(&[([1, 2, 0, 0], 4), ([0, 1, 3, 0], -1), ([2, 0, 0, 1], 9)]);
        for v in Var::ALL {
            assert_eq!(Poly::from_univariate(v, &a.to_univariate(v)), a);
        }
    }
}
