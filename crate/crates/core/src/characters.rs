//! Characters: truncated q-series for Verma modules and irreducible
//! quotients, and graded dimensions computed by echelonization.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactla::SubspaceBasis;
use crate::liealg::AlgebraMode;
use crate::par;
use crate::pbw::level_basis;
use crate::singular::{build_r, build_s};
use crate::subsingular::{build_t_pr, h_pr_mode, QuotientContext};
use crate::vector::ModuleVector;
use crate::verma::{positive_generators, VermaConfig, VermaModule};
use crate::Scalar;

/// `q^{offset} Σ coeffs[n] q^{n/2}`, with every doubled level up to `cutoff2`
/// present (zeros included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub offset: Scalar,
    pub coeffs: BTreeMap<i32, i64>,
    pub cutoff2: i32,
}

impl QSeries {
    pub fn from_coeffs(offset: Scalar, cutoff2: i32, mut f: impl FnMut(i32) -> i64) -> Self {
        QSeries {
            offset,
            coeffs: (0..=cutoff2).map(|n| (n, f(n))).collect(),
            cutoff2,
        }
    }

    pub fn coeff(&self, level2: i32) -> i64 {
        self.coeffs.get(&level2).copied().unwrap_or(0)
    }

    /// Product truncated at the smaller cutoff; offsets add.
    pub fn mul(&self, o: &QSeries) -> QSeries {
        let cut = self.cutoff2.min(o.cutoff2);
        let mut out = vec![0i64; cut as usize + 1];
        for (&a, &x) in &self.coeffs {
            if x == 0 {
                continue;
            }
            for (&b, &y) in &o.coeffs {
                if a + b <= cut {
                    out[(a + b) as usize] += x * y;
                }
            }
        }
        QSeries::from_coeffs(&self.offset + &o.offset, cut, |n| out[n as usize])
    }

    /// Multiplies by `1 + c q^{shift2/2}`.
    pub fn mul_binomial(&self, c: i64, shift2: i32) -> QSeries {
        QSeries::from_coeffs(self.offset.clone(), self.cutoff2, |n| {
            self.coeff(n)
                + if n >= shift2 {
                    c * self.coeff(n - shift2)
                } else {
                    0
                }
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        json!({ "offset": self.offset.to_string(), "coeffs": coeffs, "cutoff2": self.cutoff2 })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: v.to_string(),
            reason: reason.into(),
        };
        let offset: Scalar = v["offset"]
            .as_str()
            .ok_or_else(|| bad("missing offset"))?
            .parse()?;
        let obj = v["coeffs"]
            .as_object()
            .ok_or_else(|| bad("missing coeffs"))?;
        let mut coeffs = BTreeMap::new();
        for (k, x) in obj {
            let k: i32 = k.parse().map_err(|_| bad("level key is not an integer"))?;
            coeffs.insert(
                k,
                x.as_i64()
                    .ok_or_else(|| bad("coefficient is not an integer"))?,
            );
        }
        let cutoff2 = match v.get("cutoff2") {
            Some(c) => c.as_i64().ok_or_else(|| bad("cutoff2 is not an integer"))? as i32,
            None => coeffs.keys().next_back().copied().unwrap_or(0),
        };
        Ok(QSeries {
            offset,
            coeffs,
            cutoff2,
        })
    }
}

fn q_power(n: i32) -> String {
    match n {
        2 => "q".into(),
        _ if n % 2 == 0 => format!("q^{}", n / 2),
        _ => format!("q^{{{n}/2}}"),
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{{{}}} * (", self.offset)?;
        let mut first = true;
        for (&n, &c) in &self.coeffs {
            if c == 0 {
                continue;
            }
            let (neg, a) = (c < 0, c.unsigned_abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                _ => {}
            }
            first = false;
            match (n, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "{}", q_power(n))?,
                _ => write!(f, "{a} {}", q_power(n))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + ...)")
    }
}

/// Number of partitions of `n`.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut a = vec![0u64; n + 1];
    a[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            a[m] += a[m - k];
        }
    }
    a[n]
}

/// `Π_k (1 + q^{k-1/2}) / (1 - q^k)^2` up to `cutoff2`, without the `q^{hL}`
/// prefactor; the W(2,2) version drops the odd factor.
pub fn verma_series(cutoff2: i32, mode: AlgebraMode) -> QSeries {
    let n = cutoff2.max(0) as usize;
    let mut a = vec![0i64; n + 1];
    a[0] = 1;
    for k in (2..=n).step_by(2) {
        for _ in 0..2 {
            for m in k..=n {
                a[m] += a[m - k];
            }
        }
    }
    if mode == AlgebraMode::Full {
        for k in (1..=n).step_by(2) {
            for m in (k..=n).rev() {
                a[m] += a[m - k];
            }
        }
    }
    QSeries::from_coeffs(Scalar::h_l(), cutoff2, |i| a[i as usize])
}

/// Character of the full Verma module.
pub fn verma_character(cutoff2: i32) -> QSeries {
    verma_series(cutoff2, AlgebraMode::Full)
}

/// Character of the irreducible quotient when `φ(p) = 0`: the Verma series
/// times `(1 - q^{p/2})(1 + ½(1+(-1)^p) q^{p/2})`, and by `(1 - q^{rp})` when
/// `hL = h_{p,r}`. In W(2,2) mode the first factor is `(1 - q^p)`.
pub fn irreducible_character_mode(
    p: u32,
    r: Option<u32>,
    cutoff2: i32,
    mode: AlgebraMode,
) -> QSeries {
    let p2 = p as i32;
    let mut s = verma_series(cutoff2, mode);
    if mode == AlgebraMode::Full && p % 2 == 1 {
        s = s.mul_binomial(-1, p2);
    } else {
        s = s.mul_binomial(-1, 2 * p2);
    }
    if let Some(r) = r {
        s = s.mul_binomial(-1, 2 * p2 * r as i32);
    }
    s
}

pub fn irreducible_character(p: u32, r: Option<u32>, cutoff2: i32) -> QSeries {
    irreducible_character_mode(p, r, cutoff2, AlgebraMode::Full)
}

/// Per-level components of the smallest subspace containing `seeds` that is
/// stable under `g_+` and `M_0`.
fn positive_closure(
    vm: &VermaModule,
    seeds: &[ModuleVector],
) -> Result<BTreeMap<i32, SubspaceBasis>> {
    let mut comps: BTreeMap<i32, SubspaceBasis> = BTreeMap::new();
    let mut queue: Vec<ModuleVector> = Vec::new();
    let push = |comps: &mut BTreeMap<i32, SubspaceBasis>,
                queue: &mut Vec<ModuleVector>,
                v: ModuleVector| {
        if v.is_zero() {
            return;
        }
        let c = comps
            .entry(v.level2())
            .or_insert_with(|| SubspaceBasis::new(v.level2()));
        if c.insert(&v) {
            queue.push(v);
        }
    };
    for s in seeds {
        push(&mut comps, &mut queue, s.clone());
    }
    let gens = positive_generators(vm.mode());
    while let Some(v) = queue.pop() {
        let mut imgs = vec![vm.m0_shifted(&v)?];
        for &g in &gens {
            imgs.push(vm.act(g, &v)?);
        }
        for w in imgs {
            push(&mut comps, &mut queue, w);
        }
    }
    Ok(comps)
}

/// Dimensions of `U(g)·seeds` at every doubled level up to `cutoff2`.
pub fn submodule_dims(
    vm: &VermaModule,
    seeds: &[ModuleVector],
    cutoff2: i32,
) -> Result<Vec<usize>> {
    let closure = positive_closure(vm, seeds)?;
    let levels: Vec<i32> = (0..=cutoff2).collect();
    par::try_map(&levels, |&n| {
        let mut span = SubspaceBasis::new(n);
        for (&m, comp) in closure.range(..=n) {
            let words = level_basis(n - m, vm.mode());
            for k in comp.basis() {
                for b in words.iter() {
                    span.insert(&vm.act_word(&b.word(), &k)?);
                }
            }
        }
        Ok(span.dim())
    })
}

/// `dim V_n - dim J_n` where `J = U(g)·seeds`.
pub fn graded_dims_of_quotient(
    vm: &VermaModule,
    seeds: &[ModuleVector],
    cutoff2: i32,
) -> Result<QSeries> {
    let dims = submodule_dims(vm, seeds, cutoff2)?;
    let v = verma_series(cutoff2, vm.mode());
    Ok(QSeries::from_coeffs(
        vm.config().h_l.clone(),
        cutoff2,
        |n| v.coeff(n) - dims[n as usize] as i64,
    ))
}

fn rational_scalar(r: &BigRational) -> Scalar {
    Scalar::from_ratio(r)
}

/// Graded dimensions of `V / J` at the specialization `cL`, `cM`, `hL`,
/// where `J` is generated by `S·1` or `R·1` (typical `hL`) or by
/// `T_{p,r}·1` (when `hL = h_{p,r}`).
pub fn computed_graded_dims(
    p: u32,
    mode: AlgebraMode,
    c_l: &BigRational,
    c_m: &BigRational,
    h_l: &BigRational,
    cutoff2: i32,
) -> Result<QSeries> {
    let (cl, cm, hl) = (
        rational_scalar(c_l),
        rational_scalar(c_m),
        rational_scalar(h_l),
    );
    let cfg = VermaConfig::reducible_at(p, mode, cl.clone(), cm, hl.clone())?;
    let atypical = atypical_index(p, mode, &cl, &hl, cutoff2);
    let seed = match atypical {
        Some(r) => build_t_pr(p, r, &QuotientContext::from_config(cfg.clone())?)?,
        None if mode == AlgebraMode::Full && p % 2 == 1 => build_r(p, &cfg)?,
        None => build_s(p, &cfg)?,
    };
    let vm = VermaModule::new(cfg)?;
    graded_dims_of_quotient(&vm, &[seed], cutoff2)
}

/// The `r` with `hL = h_{p,r}`, if any `r` with `rp` within reach of the
/// cutoff matches.
pub fn atypical_index(
    p: u32,
    mode: AlgebraMode,
    c_l: &Scalar,
    h_l: &Scalar,
    cutoff2: i32,
) -> Option<u32> {
    let max_r = (cutoff2.max(0) as u32) / (2 * p) + 1;
    (1..=max_r).find(|&r| &h_pr_mode(p, r, mode, c_l) == h_l)
}

/// Seeded draw of a rational `hL` off the atypical locus `h_{p,r}` for
/// `r ≤ cutoff2 / (2p) + 1`.
pub fn draw_generic_hl(
    rng: &mut ChaCha8Rng,
    p: u32,
    mode: AlgebraMode,
    c_l: &BigRational,
    cutoff2: i32,
) -> BigRational {
    let cl = rational_scalar(c_l);
    loop {
        let num: i64 = rng.gen_range(-200..=200);
        let den: i64 = rng.gen_range(1..=17);
        let h = BigRational::new(num.into(), den.into());
        if atypical_index(p, mode, &cl, &rational_scalar(&h), cutoff2 + 2 * p as i32).is_none() {
            return h;
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// For `p = 1` and generic `hL`: the graded dimensions of
/// `⟨R^k·1⟩ / ⟨R^{k+1}·1⟩` next to the expected
/// `q^{k/2}(1 - q^{1/2})` times the Verma series.
pub fn telescoping_layer(k: u32, vm: &VermaModule, cutoff2: i32) -> Result<(QSeries, QSeries)> {
    let r = build_r(1, vm.config())?;
    let mut pow = ModuleVector::vacuum();
    for _ in 0..k {
        pow = vm.apply_element(&r, &pow)?;
    }
    let next = vm.apply_element(&r, &pow)?;
    let a = submodule_dims(vm, &[pow], cutoff2)?;
    let b = submodule_dims(vm, &[next], cutoff2)?;
    let h = vm.config().h_l.clone();
    let got = QSeries::from_coeffs(h.clone(), cutoff2, |n| {
        a[n as usize] as i64 - b[n as usize] as i64
    });
    let v = verma_series(cutoff2, AlgebraMode::Full).mul_binomial(-1, 1);
    let want = QSeries::from_coeffs(h, cutoff2, |n| {
        if n >= k as i32 {
            v.coeff(n - k as i32)
        } else {
            0
        }
    });
    Ok((got, want))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::basis_sizes;

    #[test]
    fn partitions() {
        assert_eq!(partition_count(0), 1);
        assert_eq!(partition_count(4), 5);
        assert_eq!(partition_count(7), 15);
    }

    #[test]
    fn verma_matches_basis_counts() {
        let v = verma_character(16);
        assert_eq!(v.coeff(0), 1);
        assert_eq!(v.coeff(2), 2);
        assert_eq!(v.coeff(3), 3);
        let sizes = basis_sizes(16, AlgebraMode::Full);
        for n in 0..=16 {
            assert_eq!(v.coeff(n) as u64, sizes[n as usize]);
        }
        let w = verma_series(8, AlgebraMode::W22);
        assert_eq!(w.coeff(8), level_basis(8, AlgebraMode::W22).len() as i64);
    }

    #[test]
    fn irreducible_formulas() {
        let c = irreducible_character(2, None, 8);
        assert_eq!(c.coeff(4), 5);
        assert_eq!(c.coeff(2), 2);
        assert_eq!(irreducible_character(1, None, 4).coeff(1), 0);
        assert_eq!(irreducible_character(1, Some(1), 4).coeff(2), 0);
    }

    #[test]
    fn display_and_json() {
        let c = irreducible_character(2, None, 4);
        assert_eq!(
            c.to_string(),
            "q^{hL} * (1 + q^{1/2} + 2 q + 3 q^{3/2} + 5 q^2 + ...)"
        );
        assert_eq!(QSeries::from_json(&c.to_json()).unwrap(), c);
        let d = QSeries::from_coeffs(Scalar::zero(), 2, |n| if n == 1 { -2 } else { 0 });
        assert_eq!(d.to_string(), "q^{0} * (-2 q^{1/2} + ...)");
    }

    #[test]
    fn p1_generic_kills_half_level() {
        let two = BigRational::from_integer(2.into());
        let seven = BigRational::from_integer(7.into());
        let h = BigRational::new(3.into(), 7.into());
        let s = computed_graded_dims(1, AlgebraMode::Full, &seven, &two, &h, 4).unwrap();
        assert_eq!(s.coeff(1), 0);
        assert_eq!(s, {
            let mut f = irreducible_character(1, None, 4);
            f.offset = Scalar::from_ratio(&h);
            f
        });
    }
}
