//! Homogeneous vectors: finite combinations of PBW monomials at one level.
//!
//! The same type represents elements `u` of `U(g_-)` and vectors `u·1` of a
//! Verma module; the module structure is supplied by [`crate::verma`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pbw::PbwMonomial;
use crate::scalars::{looks_negative, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    level2: i32,
    coeffs: BTreeMap<PbwMonomial, Scalar>,
}

impl ModuleVector {
    pub fn zero(level2: i32) -> Self {
        ModuleVector {
            level2,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn vacuum() -> Self {
        ModuleVector::monomial(PbwMonomial::vacuum(), Scalar::one())
    }

    pub fn monomial(m: PbwMonomial, c: Scalar) -> Self {
        let mut v = ModuleVector::zero(m.level2());
        v.add_term(m, c);
        v
    }

    /// Builds from terms; all monomials must sit at `level2`.
    pub fn from_terms<I>(level2: i32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PbwMonomial, Scalar)>,
    {
        let mut v = ModuleVector::zero(level2);
        for (m, c) in terms {
            if m.level2() != level2 {
                return Err(Error::LevelMismatch {
                    expected: level2,
                    found: m.level2(),
                });
            }
            v.add_term(m, c);
        }
        Ok(v)
    }

    pub fn level2(&self) -> i32 {
        self.level2
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PbwMonomial, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Scalar) {
        debug_assert_eq!(m.level2(), self.level2);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * o`.
    pub fn axpy(&mut self, c: &Scalar, o: &ModuleVector) {
        if c.is_zero() || o.is_zero() {
            return;
        }
        for (m, oc) in &o.coeffs {
            self.add_term(m.clone(), c * oc);
        }
    }

    pub fn add(&self, o: &ModuleVector) -> Result<ModuleVector> {
        self.check_level(o)?;
        let mut r = self.clone();
        r.axpy(&Scalar::one(), o);
        Ok(r)
    }

    pub fn sub(&self, o: &ModuleVector) -> Result<ModuleVector> {
        self.check_level(o)?;
        let mut r = self.clone();
        r.axpy(&Scalar::from_int(-1), o);
        Ok(r)
    }

    pub fn scale(&self, c: &Scalar) -> ModuleVector {
        if c.is_zero() {
            return ModuleVector::zero(self.level2);
        }
        ModuleVector {
            level2: self.level2,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    fn check_level(&self, o: &ModuleVector) -> Result<()> {
        if self.level2 != o.level2 && !self.is_zero() && !o.is_zero() {
            return Err(Error::LevelMismatch {
                expected: self.level2,
                found: o.level2,
            });
        }
        Ok(())
    }

    /// The highest monomial in the total order.
    pub fn highest_term(&self) -> Result<&PbwMonomial> {
        self.coeffs.keys().next_back().ok_or(Error::ZeroVector)
    }

    pub fn leading(&self) -> Result<(&PbwMonomial, &Scalar)> {
        self.coeffs.iter().next_back().ok_or(Error::ZeroVector)
    }

    /// Divides by the coefficient of the highest term.
    pub fn normalized(&self) -> Result<ModuleVector> {
        let (_, c) = self.leading()?;
        Ok(self.scale(&c.inv()?))
    }

    /// Maximum of `ℓ_L`, `ℓ_Q`, `ℓ_M` and total degree over the support.
    pub fn stats(&self) -> Result<VectorStats> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut s = VectorStats::default();
        for m in self.coeffs.keys() {
            s.ell_l = s.ell_l.max(m.ell_l());
            s.ell_q = s.ell_q.max(m.ell_q());
            s.ell_m = s.ell_m.max(m.ell_m());
            s.deg = s.deg.max(m.deg());
        }
        Ok(s)
    }

    /// Formal derivative with respect to `Q_{-i+1/2}` (super-Leibniz rule).
    pub fn q_derivative(&self, i: u32) -> ModuleVector {
        let mut out = ModuleVector::zero(self.level2 - (2 * i as i32 - 1));
        for (m, c) in &self.coeffs {
            if let Some(pos) = m.q.0.iter().position(|&k| k == i) {
                let mut q = m.q.0.clone();
                q.remove(pos);
                let nm = PbwMonomial::new(m.m.clone(), crate::pbw::StrictPartition(q), m.l.clone());
                let c = if pos % 2 == 1 { -c } else { c.clone() };
                out.add_term(nm, c);
            }
        }
        out
    }

    pub fn map_coeffs<F: Fn(&Scalar) -> Result<Scalar>>(&self, f: F) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero(self.level2);
        for (m, c) in &self.coeffs {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// True if no monomial uses a Q factor.
    pub fn is_even_only(&self) -> bool {
        self.coeffs.keys().all(|m| m.q.is_empty())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(VectorRepr::from(self)).expect("vector serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let r: VectorRepr = serde_json::from_value(v.clone()).map_err(|e| Error::Parse {
            input: v.to_string(),
            reason: e.to_string(),
        })?;
        r.try_into()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VectorStats {
    pub ell_l: usize,
    pub ell_q: usize,
    pub ell_m: usize,
    pub deg: usize,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    m: Vec<i32>,
    q: Vec<i32>,
    l: Vec<i32>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    level2: i32,
    terms: Vec<TermRepr>,
}

impl From<&ModuleVector> for VectorRepr {
    fn from(v: &ModuleVector) -> Self {
        VectorRepr {
            level2: v.level2,
            terms: v
                .coeffs
                .iter()
                .rev()
                .map(|(m, c)| TermRepr {
                    m: m.m.0.iter().map(|&k| -(k as i32)).collect(),
                    q: m.q.0.iter().map(|&k| 1 - 2 * k as i32).collect(),
                    l: m.l.0.iter().map(|&k| -(k as i32)).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<VectorRepr> for ModuleVector {
    type Error = Error;
    fn try_from(r: VectorRepr) -> Result<Self> {
        let bad = |why: &str| Error::Parse {
            input: "vector json".into(),
            reason: why.into(),
        };
        let mut terms = Vec::new();
        for t in r.terms {
            let neg = |xs: &[i32]| -> Result<Vec<u32>> {
                xs.iter()
                    .map(|&x| {
                        if x < 0 {
                            Ok((-x) as u32)
                        } else {
                            Err(bad("modes must be negative"))
                        }
                    })
                    .collect()
            };
            let q: Vec<u32> =
                t.q.iter()
                    .map(|&x| {
                        if x < 0 && x % 2 != 0 {
                            Ok(((1 - x) / 2) as u32)
                        } else {
                            Err(bad("Q modes are negative odd doubled integers"))
                        }
                    })
                    .collect::<Result<_>>()?;
            let q = crate::pbw::StrictPartition::new(q).ok_or_else(|| bad("repeated Q factor"))?;
            let m = PbwMonomial::new(
                crate::pbw::Partition::new(neg(&t.m)?),
                q,
                crate::pbw::Partition::new(neg(&t.l)?),
            );
            terms.push((m, t.coeff));
        }
        ModuleVector::from_terms(r.level2, terms)
    }
}

impl fmt::Display for ModuleVector {
    /// Terms from the highest down, e.g. `M[-2] + (6/cM) M[-1]^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = looks_negative(c);
            let a = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a.is_one() {
                write!(f, "{m}")?;
            } else if m.is_vacuum() {
                write!(f, "({a})")?;
            } else {
                write!(f, "({a}) {m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ModuleVector {
    type Err = Error;
    /// Inverse of `Display`: `[-](coeff) monomial` terms joined by ` + ` / ` - `.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse {
            input: s.to_string(),
            reason: why.to_string(),
        };
        let src = s.trim();
        if src == "0" {
            return Ok(ModuleVector::zero(0));
        }
        // split at top-level + / - signs
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut bracket = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for ch in src.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '[' => bracket += 1,
                ']' => bracket -= 1,
                _ => {}
            }
            if depth == 0 && bracket == 0 && (ch == '+' || ch == '-') {
                if !cur.trim().is_empty() {
                    pieces.push((neg, cur.trim().to_string()));
                }
                cur.clear();
                neg = ch == '-';
                continue;
            }
            cur.push(ch);
        }
        if !cur.trim().is_empty() {
            pieces.push((neg, cur.trim().to_string()));
        }
        if pieces.is_empty() {
            return Err(bad("empty vector"));
        }
        let mut terms = Vec::new();
        for (neg, p) in pieces {
            let (coeff, mono) = if let Some(rest) = p.strip_prefix('(') {
                let mut d = 1;
                let mut end = None;
                for (i, ch) in rest.char_indices() {
                    match ch {
                        '(' => d += 1,
                        ')' => {
                            d -= 1;
                            if d == 0 {
                                end = Some(i);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let end = end.ok_or_else(|| bad("unbalanced parentheses"))?;
                let c: Scalar = rest[..end].parse()?;
                let m = rest[end + 1..].trim();
                (c, if m.is_empty() { "1" } else { m }.to_string())
            } else {
                (Scalar::one(), p.clone())
            };
            let m: PbwMonomial = mono.parse()?;
            terms.push((m, if neg { -coeff } else { coeff }));
        }
        let level2 = terms[0].0.level2();
        ModuleVector::from_terms(level2, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ModuleVector {
        s.parse().unwrap()
    }

    #[test]
    fn display_roundtrip() {
        let s = "L[-2] + (12/cM) M[-1]L[-1] - (6/cM) Q[-3/2]Q[-1/2] - ((6*cL-87)/cM^2) M[-1]^2";
        let x = v(s);
        assert_eq!(x.len(), 4);
        assert_eq!(x.to_string(), s);
        assert_eq!(v(&x.to_string()), x);
    }

    #[test]
    fn highest_terms() {
        assert_eq!(
            v("L[-1]^2 + (6/cM) M[-2]")
                .highest_term()
                .unwrap()
                .to_string(),
            "L[-1]^2"
        );
        assert_eq!(
            v("(6/cM) M[-1]^2 + M[-2]")
                .highest_term()
                .unwrap()
                .to_string(),
            "M[-2]"
        );
        assert_eq!(
            v("(5) Q[-1/2]").highest_term().unwrap().to_string(),
            "Q[-1/2]"
        );
        assert!(matches!(
            ModuleVector::zero(2).highest_term(),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn derivative_signs() {
        let x = v("Q[-3/2]Q[-1/2]");
        assert_eq!(x.q_derivative(2), v("Q[-1/2]"));
        assert_eq!(x.q_derivative(1), v("-Q[-3/2]"));
        assert!(v("M[-1]L[-1]").q_derivative(1).is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let x = v("M[-2] + (6/cM) M[-1]^2");
        let j = x.to_json();
        assert_eq!(j["level2"], 4);
        assert_eq!(j["terms"][0]["m"], serde_json::json!([-2]));
        assert_eq!(ModuleVector::from_json(&j).unwrap(), x);
    }

    #[test]
    fn level_mismatch() {
        assert!(matches!(
            v("M[-1]").add(&v("M[-2]")),
            Err(Error::LevelMismatch { .. })
        ));
        assert!("M[-1] + M[-2]".parse::<ModuleVector>().is_err());
    }
}
