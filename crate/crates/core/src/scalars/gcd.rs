//! Multivariate gcd over Z by recursive primitive remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::poly::{Poly, Var};

/// Greatest common divisor in Z[cL, cM, hL, hM], normalized to a positive
/// leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    normalize(raw_gcd(a, b))
}

fn normalize(g: Poly) -> Poly {
    if g.leading_coeff_sign() < 0 {
        g.neg()
    } else {
        g
    }
}

fn raw_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a == b {
        return a.clone();
    }
    if a.len() == 1 || b.len() == 1 {
        let (t, o) = if a.len() == 1 { (a, b) } else { (b, a) };
        let (m, c) = &t.terms()[0];
        let ic = c.gcd(&o.content());
        let im = m.gcd(o.monomial_content());
        return Poly::term(im, ic);
    }
    let ca = a.content();
    let cb = b.content();
    let ic = ca.gcd(&cb);
    let a = a.div_scalar_exact(&ca);
    let b = b.div_scalar_exact(&cb);

    // A variable occurring in only one argument can be split off through the
    // content in that variable.
    for v in Var::ALL {
        let ia = a.contains_var(v);
        let ib = b.contains_var(v);
        if ia != ib {
            let (with, without) = if ia { (&a, &b) } else { (&b, &a) };
            let mut g = without.clone();
            for c in with.to_univariate(v) {
                if c.is_zero() {
                    continue;
                }
                g = raw_gcd(&g, &c);
                if g.as_constant().is_some() {
                    break;
                }
            }
            return normalize(g).scale(&ic);
        }
    }
    let Some(v) = Var::ALL.into_iter().find(|&v| a.contains_var(v)) else {
        return Poly::constant(ic);
    };
    let g = univariate_gcd(&a.to_univariate(v), &b.to_univariate(v));
    normalize(Poly::from_univariate(v, &g)).scale(&ic)
}

fn content_of(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = raw_gcd(&g, c);
        if g.as_constant()
            .is_some_and(|k| k.is_one() || k == -BigInt::one())
        {
            return Poly::one();
        }
    }
    normalize(g)
}

fn divide_all(coeffs: &[Poly], d: &Poly) -> Vec<Poly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
}

fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let mut steps = r.len() - b.len() + 1;
    while !r.is_empty() && r.len() >= b.len() {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&lcr.mul(bc));
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lcb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn univariate_gcd(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let ca = content_of(a);
    let cb = content_of(b);
    let cont = raw_gcd(&ca, &cb);
    let mut x = divide_all(a, &ca);
    let mut y = divide_all(b, &cb);
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![Poly::one()];
            break;
        }
        let r = prem(&x, &y);
        x = y;
        if r.is_empty() {
            y = Vec::new();
        } else {
            let c = content_of(&r);
            y = divide_all(&r, &c);
        }
    }
    x.into_iter().map(|c| c.mul(&cont)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::poly::Monomial;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }
    fn k(c: i64) -> Poly {
        Poly::constant(BigInt::from(c))
    }

    #[test]
    fn simple_cases() {
        assert_eq!(gcd(&k(6), &k(-4)), k(2));
        assert!(gcd(&Poly::zero(), &Poly::zero()).is_zero());
        let cm = v(Var::CM);
        assert_eq!(gcd(&cm.mul(&k(4)), &k(6)), k(2));
        assert_eq!(gcd(&cm.pow(3), &cm.pow(2).mul(&v(Var::CL))), cm.pow(2));
    }

    #[test]
    fn common_factor_recovered() {
        let f = v(Var::CL)
            .add(&v(Var::HL).scale(&BigInt::from(3)))
            .sub(&k(2));
        let g1 = v(Var::CM).mul(&v(Var::CM)).add(&v(Var::HM));
        let g2 = v(Var::CL).sub(&v(Var::CM).scale(&BigInt::from(5)));
        let a = f.mul(&g1).scale(&BigInt::from(6));
        let b = f.mul(&g2).scale(&BigInt::from(-4));
        assert_eq!(gcd(&a, &b), f.scale(&BigInt::from(2)));
    }

    #[test]
    fn coprime_gives_constant() {
        let a = v(Var::CL).add(&k(1));
        let b = v(Var::CL).sub(&k(1));
        assert_eq!(gcd(&a, &b), k(1));
        let c = Poly::term(Monomial::from_exps([1, 1, 0, 0]), BigInt::one()).add(&k(1));
        assert_eq!(gcd(&c, &v(Var::HL).add(&k(3))), k(1));
    }
}
