//! Partitions, PBW monomials `M_{-λ} Q_{-μ+1/2} L_{-ν} 1` and the total
//! order used to read off highest terms.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::liealg::{AlgebraMode, GenKind, Generator};

/// Compares two non-increasing part lists in the natural order: weight
/// first, then lexicographically.
pub fn natural_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let wa: u32 = a.iter().sum();
    let wb: u32 = b.iter().sum();
    wa.cmp(&wb).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, k: u32) -> bool {
        self.0.contains(&k)
    }
}

impl Ord for Partition {
    fn cmp(&self, o: &Self) -> Ordering {
        natural_cmp(&self.0, &o.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Strictly decreasing parts; part `k` stands for `Q_{-k+1/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct StrictPartition(pub Vec<u32>);

impl StrictPartition {
    /// Sorts the parts; `None` if a part repeats or is zero.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.windows(2).any(|w| w[0] == w[1]) || parts.contains(&0) {
            return None;
        }
        Some(StrictPartition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ (2 μ_i - 1)`.
    pub fn level2(&self) -> i32 {
        self.0.iter().map(|&k| 2 * k as i32 - 1).sum()
    }
}

impl Ord for StrictPartition {
    fn cmp(&self, o: &Self) -> Ordering {
        natural_cmp(&self.0, &o.0)
    }
}

impl PartialOrd for StrictPartition {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// `M_{-λ} Q_{-μ+1/2} L_{-ν} 1`. Factors within each block are ordered by
/// increasing mode, i.e. the largest part first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwMonomial {
    pub m: Partition,
    pub q: StrictPartition,
    pub l: Partition,
    level2: i32,
}

impl PbwMonomial {
    pub fn new(m: Partition, q: StrictPartition, l: Partition) -> Self {
        let level2 = 2 * m.weight() as i32 + q.level2() + 2 * l.weight() as i32;
        PbwMonomial { m, q, l, level2 }
    }

    /// From raw part lists; panics on a repeated Q part.
    pub fn from_parts(m: &[u32], q: &[u32], l: &[u32]) -> Self {
        PbwMonomial::new(
            Partition::new(m.to_vec()),
            StrictPartition::new(q.to_vec()).expect("strict Q parts"),
            Partition::new(l.to_vec()),
        )
    }

    pub fn vacuum() -> Self {
        PbwMonomial::new(
            Partition::default(),
            StrictPartition::default(),
            Partition::default(),
        )
    }

    pub fn is_vacuum(&self) -> bool {
        self.level2 == 0
    }

    pub fn level2(&self) -> i32 {
        self.level2
    }

    pub fn parity(&self) -> usize {
        self.q.len() % 2
    }

    pub fn ell_l(&self) -> usize {
        self.l.len()
    }

    pub fn ell_q(&self) -> usize {
        self.q.len()
    }

    pub fn ell_m(&self) -> usize {
        self.m.len()
    }

    /// Total number of factors.
    pub fn deg(&self) -> usize {
        self.m.len() + self.q.len() + self.l.len()
    }

    /// The factors as generators in word order.
    pub fn word(&self) -> Vec<Generator> {
        let mut w = Vec::with_capacity(self.deg());
        w.extend(self.m.0.iter().map(|&k| Generator::m(-(k as i32))));
        w.extend(self.q.0.iter().map(|&k| Generator::q2(-(2 * k as i32) + 1)));
        w.extend(self.l.0.iter().map(|&k| Generator::l(-(k as i32))));
        w
    }

    /// Whether `M_{-k}` is a factor.
    pub fn has_m(&self, k: u32) -> bool {
        self.m.contains(k)
    }

    /// Whether `Q_{-k+1/2}` is a factor.
    pub fn has_q(&self, k: u32) -> bool {
        self.q.0.contains(&k)
    }
}

impl Ord for PbwMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.level2
            .cmp(&o.level2)
            .then_with(|| self.l.weight().cmp(&o.l.weight()))
            .then_with(|| self.l.len().cmp(&o.l.len()))
            .then_with(|| self.l.cmp(&o.l))
            .then_with(|| self.q.cmp(&o.q))
            .then_with(|| self.m.cmp(&o.m))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn fmt_block(f: &mut fmt::Formatter<'_>, gens: &[Generator]) -> fmt::Result {
    let mut i = 0;
    while i < gens.len() {
        let mut j = i;
        while j < gens.len() && gens[j] == gens[i] {
            j += 1;
        }
        write!(f, "{}", gens[i])?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vacuum() {
            return write!(f, "1");
        }
        fmt_block(f, &self.word())
    }
}

impl FromStr for PbwMonomial {
    type Err = Error;
    /// Parses `M[-2]M[-1]^2Q[-3/2]L[-1]` (canonical order required) or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let src = s;
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "1" {
            return Ok(PbwMonomial::vacuum());
        }
        let bad = |why: &str| Error::Parse {
            input: src.to_string(),
            reason: why.to_string(),
        };
        let mut word = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let close = rest.find(']').ok_or_else(|| bad("missing `]`"))?;
            let g: Generator = rest[..=close].parse()?;
            rest = &rest[close + 1..];
            let mut times = 1usize;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                times = r[..end].parse().map_err(|_| bad("bad exponent"))?;
                rest = &r[end..];
            }
            if g.mode2 >= 0 {
                return Err(bad("monomials use negative modes only"));
            }
            word.extend(std::iter::repeat_n(g, times));
        }
        let rank = |g: &Generator| match g.kind {
            GenKind::M => 0,
            GenKind::Q => 1,
            _ => 2,
        };
        let canonical = word
            .windows(2)
            .all(|w| (rank(&w[0]), w[0].mode2) <= (rank(&w[1]), w[1].mode2));
        if !canonical {
            return Err(bad(
                "factors must be in PBW order M, Q, L with increasing modes",
            ));
        }
        let mut m = Vec::new();
        let mut q = Vec::new();
        let mut l = Vec::new();
        for g in word {
            match g.kind {
                GenKind::M => m.push((-g.mode2 / 2) as u32),
                GenKind::Q => q.push(((1 - g.mode2) / 2) as u32),
                GenKind::L => l.push((-g.mode2 / 2) as u32),
                _ => return Err(bad("central elements are not PBW factors")),
            }
        }
        let q = StrictPartition::new(q).ok_or_else(|| bad("Q factors must be distinct"))?;
        Ok(PbwMonomial::new(Partition::new(m), q, Partition::new(l)))
    }
}

/// All partitions of `n` with parts at most `max`, in reverse lex order.
pub fn partitions_bounded(n: u32, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    rec(n, max, &mut cur, &mut out);
    out
}

pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    partitions_bounded(n, n)
}

/// Strict partitions `μ` with `Σ(2μ_i - 1) = n2`.
pub fn strict_partitions_level2(n2: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n2: u32, below: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n2 == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..below).rev() {
            let w = 2 * k - 1;
            if w <= n2 {
                cur.push(k);
                rec(n2 - w, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n2, n2 / 2 + 2, &mut cur, &mut out);
    out
}

type BasisCache = RwLock<HashMap<(i32, AlgebraMode), Arc<Vec<PbwMonomial>>>>;

fn cache() -> &'static BasisCache {
    static C: std::sync::OnceLock<BasisCache> = std::sync::OnceLock::new();
    C.get_or_init(Default::default)
}

/// The basis `B_n` (`n = level2 / 2`) sorted descending by the total order.
pub fn level_basis(level2: i32, mode: AlgebraMode) -> Arc<Vec<PbwMonomial>> {
    if let Some(b) = cache().read().get(&(level2, mode)) {
        return b.clone();
    }
    let mut out = Vec::new();
    if level2 >= 0 {
        let n2 = level2 as u32;
        for lw in 0..=n2 / 2 {
            for qw in 0..=(n2 - 2 * lw) {
                if mode == AlgebraMode::W22 && qw > 0 {
                    break;
                }
                let rest = n2 - 2 * lw - qw;
                if !rest.is_multiple_of(2) {
                    continue;
                }
                let mw = rest / 2;
                let qs = strict_partitions_level2(qw);
                if qs.is_empty() {
                    continue;
                }
                let ls = partitions(lw);
                let ms = partitions(mw);
                for l in &ls {
                    for q in &qs {
                        for m in &ms {
                            out.push(PbwMonomial::new(
                                Partition(m.clone()),
                                StrictPartition(q.clone()),
                                Partition(l.clone()),
                            ));
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    let arc = Arc::new(out);
    cache().write().insert((level2, mode), arc.clone());
    arc
}

/// `q`-expansion coefficient of `∏(1+q^{k-1/2})/(1-q^k)^2` (full) or
/// `∏ 1/(1-q^k)^2` (w22) at every doubled level up to `max2`.
pub fn basis_sizes(max2: i32, mode: AlgebraMode) -> Vec<u64> {
    let n = max2.max(0) as usize;
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    // two independent bosonic towers at integer levels
    for _ in 0..2 {
        for k in (2..=n).step_by(2) {
            for i in k..=n {
                c[i] += c[i - k];
            }
        }
    }
    if mode == AlgebraMode::Full {
        for k in (1..=n).step_by(2) {
            for i in (k..=n).rev() {
                c[i] += c[i - k];
            }
        }
    }
    c
}
