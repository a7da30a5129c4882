//! The N=1 BMS superalgebra and its even part W(2,2).
//!
//! Modes are stored doubled so that `Q[-1/2]` has `mode2 == -1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    L,
    M,
    Q,
    CL,
    CM,
}

/// Which algebra a module is built over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum AlgebraMode {
    #[default]
    Full,
    W22,
}

impl FromStr for AlgebraMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(AlgebraMode::Full),
            "w22" => Ok(AlgebraMode::W22),
            _ => Err(Error::InvalidParameter(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GenKind,
    pub mode2: i32,
}

impl Generator {
    pub fn l(m: i32) -> Self {
        Generator {
            kind: GenKind::L,
            mode2: 2 * m,
        }
    }

    pub fn m(m: i32) -> Self {
        Generator {
            kind: GenKind::M,
            mode2: 2 * m,
        }
    }

    /// `Q_{r}` with `r = mode2 / 2`; `mode2` must be odd.
    pub fn q2(mode2: i32) -> Self {
        assert!(mode2 % 2 != 0, "Q modes are half-odd");
        Generator {
            kind: GenKind::Q,
            mode2,
        }
    }

    pub fn c_l() -> Self {
        Generator {
            kind: GenKind::CL,
            mode2: 0,
        }
    }

    pub fn c_m() -> Self {
        Generator {
            kind: GenKind::CM,
            mode2: 0,
        }
    }

    pub fn is_odd(self) -> bool {
        self.kind == GenKind::Q
    }

    pub fn is_central(self) -> bool {
        matches!(self.kind, GenKind::CL | GenKind::CM)
    }

    pub fn in_mode(self, mode: AlgebraMode) -> bool {
        mode == AlgebraMode::Full || self.kind != GenKind::Q
    }

    /// Integer mode for L and M.
    pub fn mode(self) -> i32 {
        self.mode2 / 2
    }
}

/// Sparse linear combination `sum coeff * generator`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    pub terms: BTreeMap<Generator, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, g: Generator, c: Scalar) {
        let e = self.terms.entry(g).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn coeff(&self, g: Generator) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_default()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "({c}) {g}")?;
            }
        }
        Ok(())
    }
}

pub type Q64 = Ratio<i64>;

/// Bracket with small rational coefficients, at most a generator plus a
/// central term.
pub fn bracket_raw(x: Generator, y: Generator) -> Vec<(Generator, Q64)> {
    use GenKind::*;
    if x.is_central() || y.is_central() {
        return Vec::new();
    }
    let half = |n: i64| Q64::new(n, 2);
    let mut out = Vec::with_capacity(2);
    match (x.kind, y.kind) {
        (L, L) | (L, M) | (M, L) => {
            let (sign, a, b) = if x.kind == M { (-1, y, x) } else { (1, x, y) };
            let m = a.mode() as i64;
            let n = b.mode() as i64;
            let target = if x.kind == L && y.kind == L { L } else { M };
            if m != n {
                out.push((
                    Generator {
                        kind: target,
                        mode2: a.mode2 + b.mode2,
                    },
                    Q64::from(sign * (m - n)),
                ));
            }
            if m + n == 0 && m * m * m - m != 0 {
                let c = if target == L {
                    Generator::c_l()
                } else {
                    Generator::c_m()
                };
                out.push((c, Q64::new(sign * (m * m * m - m), 12)));
            }
        }
        (L, Q) | (Q, L) => {
            let (sign, a, b) = if x.kind == Q { (-1, y, x) } else { (1, x, y) };
            // (m/2 - r) with r = mode2/2, in halves
            let coeff = half(a.mode() as i64 - b.mode2 as i64) * sign;
            if coeff != Q64::from(0) {
                out.push((Generator::q2(a.mode2 + b.mode2), coeff));
            }
        }
        (Q, Q) => {
            let s = x.mode2 + y.mode2;
            out.push((Generator { kind: M, mode2: s }, Q64::from(2)));
            if s == 0 {
                // (1/3)(r^2 - 1/4) with r = x.mode2 / 2
                let r2 = x.mode2 as i64;
                let c = Q64::new(r2 * r2 - 1, 12);
                if c != Q64::from(0) {
                    out.push((Generator::c_m(), c));
                }
            }
        }
        _ => {}
    }
    out
}

/// Super bracket `[x, y]` in the full algebra.
pub fn bracket(x: Generator, y: Generator) -> AlgebraElement {
    let mut e = AlgebraElement::zero();
    for (g, c) in bracket_raw(x, y) {
        e.add_term(g, Scalar::rational(*c.numer(), *c.denom()));
    }
    e
}

/// `(-1)^{|x||y|}`.
pub fn super_sign(x: Generator, y: Generator) -> i64 {
    if x.is_odd() && y.is_odd() {
        -1
    } else {
        1
    }
}

fn fmt_half(mode2: i32) -> String {
    if mode2 % 2 == 0 {
        (mode2 / 2).to_string()
    } else {
        format!("{mode2}/2")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::L => write!(f, "L[{}]", fmt_half(self.mode2)),
            GenKind::M => write!(f, "M[{}]", fmt_half(self.mode2)),
            GenKind::Q => write!(f, "Q[{}]", fmt_half(self.mode2)),
            GenKind::CL => write!(f, "cL"),
            GenKind::CM => write!(f, "cM"),
        }
    }
}

/// Parses `3/2`, `-1/2` or an integer into a doubled mode.
pub fn parse_mode2(s: &str) -> Result<i32> {
    let bad = || Error::Parse {
        input: s.to_string(),
        reason: "expected an integer or a half-integer n/2".into(),
    };
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        if d.trim() != "2" {
            return Err(bad());
        }
        let n: i32 = n.trim().parse().map_err(|_| bad())?;
        if n % 2 == 0 {
            return Err(bad());
        }
        Ok(n)
    } else {
        let n: i32 = s.parse().map_err(|_| bad())?;
        Ok(2 * n)
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "cL" => return Ok(Generator::c_l()),
            "cM" => return Ok(Generator::c_m()),
            _ => {}
        }
        let bad = |why: &str| Error::Parse {
            input: s.to_string(),
            reason: why.to_string(),
        };
        let (head, rest) = s.split_at(1.min(s.len()));
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected X[mode]"))?;
        let mode2 = parse_mode2(inner)?;
        let kind = match head {
            "L" => GenKind::L,
            "M" => GenKind::M,
            "Q" => GenKind::Q,
            _ => return Err(bad("unknown generator")),
        };
        let odd = mode2 % 2 != 0;
        if odd != (kind == GenKind::Q) {
            return Err(bad("L and M take integer modes, Q half-integer modes"));
        }
        Ok(Generator { kind, mode2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Generator {
        s.parse().unwrap()
    }

    #[test]
    fn text_roundtrip() {
        for s in ["L[-3]", "M[2]", "Q[-1/2]", "Q[5/2]", "cL", "cM", "L[0]"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert!("Q[1]".parse::<Generator>().is_err());
        assert!("L[1/2]".parse::<Generator>().is_err());
        assert!("X[1]".parse::<Generator>().is_err());
    }

    #[test]
    fn sample_brackets() {
        // [L_2, L_-2] = 4 L_0 + cL/2
        let b = bracket(g("L[2]"), g("L[-2]"));
        assert_eq!(b.coeff(g("L[0]")), Scalar::from_int(4));
        assert_eq!(b.coeff(Generator::c_l()), Scalar::rational(1, 2));
        // [Q_1/2, Q_-1/2] = 2 M_0
        let b = bracket(g("Q[1/2]"), g("Q[-1/2]"));
        assert_eq!(b.coeff(g("M[0]")), Scalar::from_int(2));
        assert_eq!(b.coeff(Generator::c_m()), Scalar::zero());
        // [Q_3/2, Q_-3/2] = 2 M_0 + 2/3 cM
        let b = bracket(g("Q[3/2]"), g("Q[-3/2]"));
        assert_eq!(b.coeff(Generator::c_m()), Scalar::rational(2, 3));
        // [L_2, Q_1/2] = (1 - 1/2) Q_5/2
        assert_eq!(
            bracket(g("L[2]"), g("Q[1/2]")).coeff(g("Q[5/2]")),
            Scalar::rational(1, 2)
        );
        // the set {L_1, Q_1/2} does not reach Q_3/2
        assert!(bracket(g("L[1]"), g("Q[1/2]")).is_zero());
        assert!(bracket(g("M[1]"), g("Q[-1/2]")).is_zero());
        assert_eq!(
            bracket(g("M[-1]"), g("L[1]")).coeff(g("M[0]")),
            Scalar::from_int(-2)
        );
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(parse_mode2("-3/2").unwrap(), -3);
        assert_eq!(parse_mode2("4").unwrap(), 8);
        assert!(parse_mode2("2/2").is_err());
        assert!(parse_mode2("1/3").is_err());
    }
}
