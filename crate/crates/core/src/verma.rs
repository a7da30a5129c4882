//! Verma modules `V(cL, cM, hL, hM)` and the action of generators on PBW
//! monomials.
//!
//! Products are straightened into the order `M ≺ Q ≺ L` with increasing
//! modes inside each block. Left multiplication by negative modes does not
//! depend on the highest weight and is memoized globally; the action of
//! nonnegative modes is memoized per module.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::liealg::{bracket, bracket_raw, super_sign, AlgebraMode, GenKind, Generator};
use crate::par;
use crate::pbw::{Partition, PbwMonomial, StrictPartition};
use crate::scalars::Scalar;
use crate::vector::ModuleVector;

/// Highest weight data together with the algebra mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaConfig {
    pub c_l: Scalar,
    pub c_m: Scalar,
    pub h_l: Scalar,
    pub h_m: Scalar,
    /// The `p` with `φ(p) = 0`, when the weight was built that way.
    pub p: Option<u32>,
    pub mode: AlgebraMode,
}

impl VermaConfig {
    /// Fully symbolic weight.
    pub fn generic(mode: AlgebraMode) -> Self {
        VermaConfig {
            c_l: Scalar::c_l(),
            c_m: Scalar::c_m(),
            h_l: Scalar::h_l(),
            h_m: Scalar::h_m(),
            p: None,
            mode,
        }
    }

    /// `hM = -(p²-1) cM / 24` with symbolic `cL`, `cM`, `hL`.
    pub fn reducible(p: u32, mode: AlgebraMode) -> Result<Self> {
        Self::reducible_at(p, mode, Scalar::c_l(), Scalar::c_m(), Scalar::h_l())
    }

    /// As [`VermaConfig::reducible`] with the given central charges and `hL`.
    pub fn reducible_at(
        p: u32,
        mode: AlgebraMode,
        c_l: Scalar,
        c_m: Scalar,
        h_l: Scalar,
    ) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter("p must be positive".into()));
        }
        if c_m.is_zero() {
            return Err(Error::VanishingCentralCharge);
        }
        let p = p as i64;
        let h_m = c_m.mul_ratio(&BigRational::new((-(p * p - 1)).into(), 24.into()));
        Ok(VermaConfig {
            c_l,
            c_m,
            h_l,
            h_m,
            p: Some(p as u32),
            mode,
        })
    }

    pub fn with_h_l(mut self, h_l: Scalar) -> Self {
        self.h_l = h_l;
        self
    }

    /// `φ(n) = 2hM + (n²-1) cM / 12`.
    pub fn phi(&self, n: i64) -> Scalar {
        let t = self
            .c_m
            .mul_ratio(&BigRational::new((n * n - 1).into(), 12.into()));
        &(&self.h_m + &self.h_m) + &t
    }

    pub fn p_checked(&self) -> Result<u32> {
        let p = self
            .p
            .ok_or_else(|| Error::InvalidParameter("configuration carries no p".into()))?;
        if self.c_m.is_zero() {
            return Err(Error::VanishingCentralCharge);
        }
        if !self.phi(p as i64).is_zero() {
            return Err(Error::NotReducible(p));
        }
        Ok(p)
    }

    fn central(&self, g: Generator) -> Scalar {
        match g.kind {
            GenKind::CL => self.c_l.clone(),
            GenKind::CM => self.c_m.clone(),
            _ => unreachable!("not central"),
        }
    }
}

/// Sends a vector to a canonical representative modulo a subspace.
pub trait Reducer: Sync {
    fn reduce(&self, v: &ModuleVector) -> Result<ModuleVector>;
}

/// Generators of `g_+` used for singularity tests.
///
/// In the full algebra `{L_1, L_2, Q_{1/2}, Q_{3/2}}`: here `M_1 = Q_{1/2}²`
/// and `M_2 = [Q_{1/2}, Q_{3/2}]/2`. The pair `L_1, Q_{1/2}` alone misses
/// `Q_{3/2}` because `[L_1, Q_{1/2}] = 0`.
pub fn positive_generators(mode: AlgebraMode) -> Vec<Generator> {
    match mode {
        AlgebraMode::Full => vec![
            Generator::l(1),
            Generator::l(2),
            Generator::q2(1),
            Generator::q2(3),
        ],
        AlgebraMode::W22 => vec![
            Generator::l(1),
            Generator::l(2),
            Generator::m(1),
            Generator::m(2),
        ],
    }
}

/// Further positive generators for redundancy spot checks.
pub fn redundant_generators(mode: AlgebraMode) -> Vec<Generator> {
    match mode {
        AlgebraMode::Full => vec![
            Generator::l(3),
            Generator::m(1),
            Generator::m(2),
            Generator::q2(3),
            Generator::q2(5),
        ],
        AlgebraMode::W22 => vec![Generator::l(3), Generator::m(3)],
    }
}

type RatVec = Vec<(PbwMonomial, BigRational)>;
type LmulCache = RwLock<HashMap<(Generator, PbwMonomial), Arc<RatVec>>>;

fn lmul_cache() -> &'static LmulCache {
    static C: OnceLock<LmulCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn key(g: Generator) -> (u8, i32) {
    let r = match g.kind {
        GenKind::M => 0,
        GenKind::Q => 1,
        _ => 2,
    };
    (r, g.mode2)
}

fn split_first(m: &PbwMonomial) -> Option<(Generator, PbwMonomial)> {
    if let Some((&k, rest)) = m.m.0.split_first() {
        let mm = PbwMonomial::new(Partition(rest.to_vec()), m.q.clone(), m.l.clone());
        return Some((Generator::m(-(k as i32)), mm));
    }
    if let Some((&k, rest)) = m.q.0.split_first() {
        let mm = PbwMonomial::new(
            Partition::default(),
            StrictPartition(rest.to_vec()),
            m.l.clone(),
        );
        return Some((Generator::q2(1 - 2 * k as i32), mm));
    }
    if let Some((&k, rest)) = m.l.0.split_first() {
        let mm = PbwMonomial::new(
            Partition::default(),
            StrictPartition::default(),
            Partition(rest.to_vec()),
        );
        return Some((Generator::l(-(k as i32)), mm));
    }
    None
}

/// `g · m` when `g` sorts before the first factor of `m`.
fn prepend(g: Generator, m: &PbwMonomial) -> PbwMonomial {
    let mut mm = m.m.0.clone();
    let mut q = m.q.0.clone();
    let mut l = m.l.0.clone();
    match g.kind {
        GenKind::M => mm.insert(0, (-g.mode2 / 2) as u32),
        GenKind::Q => q.insert(0, ((1 - g.mode2) / 2) as u32),
        GenKind::L => l.insert(0, (-g.mode2 / 2) as u32),
        _ => unreachable!(),
    }
    PbwMonomial::new(Partition(mm), StrictPartition(q), Partition(l))
}

fn accumulate(acc: &mut BTreeMap<PbwMonomial, BigRational>, m: &PbwMonomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(m) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                acc.remove(m);
            }
        }
        None => {
            acc.insert(m.clone(), c);
        }
    }
}

fn q64(c: crate::liealg::Q64) -> BigRational {
    BigRational::new((*c.numer()).into(), (*c.denom()).into())
}

/// `g · m · 1` for a negative mode `g`, as a rational combination of PBW
/// monomials. Independent of the highest weight.
pub fn lmul(g: Generator, m: &PbwMonomial) -> Arc<RatVec> {
    debug_assert!(g.mode2 < 0 && !g.is_central());
    if let Some(r) = lmul_cache().read().get(&(g, m.clone())) {
        return r.clone();
    }
    let res: RatVec = match split_first(m) {
        None => vec![(prepend(g, m), BigRational::one())],
        Some((x, rest)) => {
            let (kg, kx) = (key(g), key(x));
            if kg < kx || (kg == kx && !g.is_odd()) {
                vec![(prepend(g, m), BigRational::one())]
            } else if g == x {
                // Q_r Q_r = M_{2r}
                lmul(
                    Generator {
                        kind: GenKind::M,
                        mode2: 2 * g.mode2,
                    },
                    &rest,
                )
                .as_ref()
                .clone()
            } else {
                let sign = BigRational::from_integer(super_sign(g, x).into());
                let mut acc = BTreeMap::new();
                for (t, c) in lmul(g, &rest).iter() {
                    for (t2, c2) in lmul(x, t).iter() {
                        accumulate(&mut acc, t2, &sign * c * c2);
                    }
                }
                for (h, c) in bracket_raw(g, x) {
                    let c = q64(c);
                    for (t, c2) in lmul(h, &rest).iter() {
                        accumulate(&mut acc, t, &c * c2);
                    }
                }
                acc.into_iter().rev().collect()
            }
        }
    };
    let arc = Arc::new(res);
    lmul_cache().write().insert((g, m.clone()), arc.clone());
    arc
}

/// A Verma module with memoized generator action.
pub struct VermaModule {
    cfg: VermaConfig,
    act_cache: RwLock<HashMap<(Generator, PbwMonomial), Arc<ModuleVector>>>,
}

impl std::fmt::Debug for VermaModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VermaModule")
            .field("cfg", &self.cfg)
            .finish()
    }
}

/// Terms above which a vector action is split across threads.
const PAR_THRESHOLD: usize = 24;

impl VermaModule {
    pub fn new(cfg: VermaConfig) -> Result<Self> {
        if cfg.c_m.is_zero() {
            return Err(Error::VanishingCentralCharge);
        }
        Ok(VermaModule {
            cfg,
            act_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &VermaConfig {
        &self.cfg
    }

    pub fn mode(&self) -> AlgebraMode {
        self.cfg.mode
    }

    fn check_gen(&self, g: Generator) -> Result<()> {
        if g.in_mode(self.cfg.mode) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{g} is not in W(2,2)")))
        }
    }

    fn act_mono(&self, g: Generator, m: &PbwMonomial) -> Arc<ModuleVector> {
        debug_assert!(g.mode2 >= 0 || g.is_central());
        if let Some(r) = self.act_cache.read().get(&(g, m.clone())) {
            return r.clone();
        }
        let res = self.act_mono_uncached(g, m);
        let arc = Arc::new(res);
        self.act_cache.write().insert((g, m.clone()), arc.clone());
        arc
    }

    fn act_mono_uncached(&self, g: Generator, m: &PbwMonomial) -> ModuleVector {
        if g.is_central() {
            return ModuleVector::monomial(m.clone(), self.cfg.central(g));
        }
        let out_level = m.level2() - g.mode2;
        if g.kind == GenKind::L && g.mode2 == 0 {
            let h = &self.cfg.h_l + &Scalar::rational(m.level2() as i64, 2);
            return ModuleVector::monomial(m.clone(), h);
        }
        let Some((x, rest)) = split_first(m) else {
            if g.kind == GenKind::M && g.mode2 == 0 {
                return ModuleVector::monomial(m.clone(), self.cfg.h_m.clone());
            }
            return ModuleVector::zero(out_level);
        };
        let mut acc = ModuleVector::zero(out_level);
        for (h, c) in bracket_raw(g, x) {
            let c = Scalar::rational(*c.numer(), *c.denom());
            if h.is_central() {
                acc.axpy(
                    &(&c * &self.cfg.central(h)),
                    &ModuleVector::monomial(rest.clone(), Scalar::one()),
                );
            } else if h.mode2 < 0 {
                for (t, c2) in lmul(h, &rest).iter() {
                    acc.add_term(t.clone(), c.mul_ratio(c2));
                }
            } else {
                acc.axpy(&c, &self.act_mono(h, &rest));
            }
        }
        let sign = super_sign(g, x);
        let inner = self.act_mono(g, &rest);
        for (t, c) in inner.terms() {
            let c = if sign < 0 { -c } else { c.clone() };
            for (t2, c2) in lmul(x, t).iter() {
                acc.add_term(t2.clone(), c.mul_ratio(c2));
            }
        }
        acc
    }

    fn apply_one(&self, g: Generator, m: &PbwMonomial, c: &Scalar) -> ModuleVector {
        if g.mode2 < 0 && !g.is_central() {
            let mut out = ModuleVector::zero(m.level2() - g.mode2);
            for (t, c2) in lmul(g, m).iter() {
                out.add_term(t.clone(), c.mul_ratio(c2));
            }
            out
        } else {
            self.act_mono(g, m).scale(c)
        }
    }

    /// `g · v`.
    pub fn act(&self, g: Generator, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_gen(g)?;
        let level = if g.is_central() {
            v.level2()
        } else {
            v.level2() - g.mode2
        };
        let terms: Vec<(&PbwMonomial, &Scalar)> = v.terms().collect();
        let parts: Vec<ModuleVector> = if terms.len() >= PAR_THRESHOLD {
            par::map(&terms, |(m, c)| self.apply_one(g, m, c))
        } else {
            terms.iter().map(|(m, c)| self.apply_one(g, m, c)).collect()
        };
        let mut out = ModuleVector::zero(level);
        for p in &parts {
            out.axpy(&Scalar::one(), p);
        }
        Ok(out)
    }

    /// Applies a word of generators, rightmost first.
    pub fn act_word(&self, word: &[Generator], v: &ModuleVector) -> Result<ModuleVector> {
        let mut cur = v.clone();
        for &g in word.iter().rev() {
            cur = self.act(g, &cur)?;
        }
        Ok(cur)
    }

    /// `u · v` for `u ∈ U(g_-)` given in PBW form.
    pub fn apply_element(&self, u: &ModuleVector, v: &ModuleVector) -> Result<ModuleVector> {
        let terms: Vec<(&PbwMonomial, &Scalar)> = u.terms().collect();
        let parts = par::try_map(&terms, |(m, c)| {
            Ok::<_, Error>(self.act_word(&m.word(), v)?.scale(c))
        })?;
        let mut out = ModuleVector::zero(u.level2() + v.level2());
        for p in &parts {
            out.axpy(&Scalar::one(), p);
        }
        Ok(out)
    }

    /// `(M_0 - hM) v`.
    pub fn m0_shifted(&self, v: &ModuleVector) -> Result<ModuleVector> {
        let mv = self.act(Generator::m(0), v)?;
        let mut out = mv;
        out.axpy(&-&self.cfg.h_m, v);
        Ok(out)
    }

    /// Images of `v` under `M_0 - hM` and the positive generators, each
    /// optionally reduced.
    pub fn annihilator_images(
        &self,
        v: &ModuleVector,
        gens: &[Generator],
        modulo: Option<&dyn Reducer>,
    ) -> Result<Vec<(String, ModuleVector)>> {
        let mut jobs: Vec<Option<Generator>> = vec![None];
        jobs.extend(gens.iter().copied().map(Some));
        par::try_map(&jobs, |g| {
            let (name, img) = match g {
                None => ("M[0]-hM".to_string(), self.m0_shifted(v)?),
                Some(g) => (g.to_string(), self.act(*g, v)?),
            };
            let img = match modulo {
                Some(r) => r.reduce(&img)?,
                None => img,
            };
            Ok((name, img))
        })
    }

    /// Whether `v` is annihilated by `g_+` and by `M_0 - hM`, optionally
    /// modulo a submodule.
    pub fn is_singular(&self, v: &ModuleVector, modulo: Option<&dyn Reducer>) -> Result<bool> {
        let imgs = self.annihilator_images(v, &positive_generators(self.cfg.mode), modulo)?;
        Ok(imgs.iter().all(|(_, w)| w.is_zero()))
    }

    /// Same test against the redundant generator list.
    pub fn is_singular_redundant(
        &self,
        v: &ModuleVector,
        modulo: Option<&dyn Reducer>,
    ) -> Result<bool> {
        let imgs = self.annihilator_images(v, &redundant_generators(self.cfg.mode), modulo)?;
        Ok(imgs.iter().all(|(_, w)| w.is_zero()))
    }

    /// `x(y v) - (-1)^{|x||y|} y(x v) - [x, y] v`; zero for a representation.
    pub fn bracket_defect(
        &self,
        x: Generator,
        y: Generator,
        v: &ModuleVector,
    ) -> Result<ModuleVector> {
        let xy = self.act(x, &self.act(y, v)?)?;
        let yx = self.act(y, &self.act(x, v)?)?;
        let mut out = xy;
        out.axpy(&Scalar::from_int(-super_sign(x, y)), &yx);
        for (g, c) in bracket(x, y).terms {
            out.axpy(&-&c, &self.act(g, v)?);
        }
        Ok(out)
    }

    /// Number of memoized monomial actions, for diagnostics.
    pub fn cache_size(&self) -> usize {
        self.act_cache.read().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ModuleVector {
        s.parse().unwrap()
    }

    fn generic() -> VermaModule {
        VermaModule::new(VermaConfig::generic(AlgebraMode::Full)).unwrap()
    }

    #[test]
    fn straightening_basics() {
        let vm = generic();
        // L_{-1} M_{-1} 1 = M_{-1} L_{-1} 1 + [L_{-1}, M_{-1}] 1 = M_{-1}L_{-1} + 0
        let r = vm.act(Generator::l(-1), &v("M[-1]")).unwrap();
        assert_eq!(r, v("M[-1]L[-1]"));
        // L_{-1} M_{-2}: [L_{-1}, M_{-2}] = M_{-3}
        let r = vm.act(Generator::l(-1), &v("M[-2]")).unwrap();
        assert_eq!(r, v("M[-2]L[-1] + M[-3]"));
        // Q_{-1/2} Q_{-1/2} = M_{-1}
        let r = vm.act(Generator::q2(-1), &v("Q[-1/2]")).unwrap();
        assert_eq!(r, v("M[-1]"));
        // Q_{-1/2} Q_{-3/2} = -Q_{-3/2}Q_{-1/2} + 2 M_{-2}
        let r = vm.act(Generator::q2(-1), &v("Q[-3/2]")).unwrap();
        assert_eq!(r, v("-Q[-3/2]Q[-1/2] + (2) M[-2]"));
    }

    #[test]
    fn zero_and_positive_modes() {
        let vm = generic();
        let one = ModuleVector::vacuum();
        assert_eq!(
            vm.act(Generator::l(0), &one).unwrap(),
            one.scale(&Scalar::h_l())
        );
        assert_eq!(
            vm.act(Generator::m(0), &one).unwrap(),
            one.scale(&Scalar::h_m())
        );
        assert!(vm.act(Generator::l(1), &one).unwrap().is_zero());
        // L_1 L_{-1} 1 = 2 hL
        let r = vm.act(Generator::l(1), &v("L[-1]")).unwrap();
        assert_eq!(r, one.scale(&"2*hL".parse().unwrap()));
        // L_2 L_{-2} 1 = 4 hL + cL/2
        let r = vm.act(Generator::l(2), &v("L[-2]")).unwrap();
        assert_eq!(r, one.scale(&"4*hL+cL/2".parse().unwrap()));
        // Q_{1/2} Q_{-1/2} 1 = 2 hM
        let r = vm.act(Generator::q2(1), &v("Q[-1/2]")).unwrap();
        assert_eq!(r, one.scale(&"2*hM".parse().unwrap()));
        // L_0 acts by hL + level
        let r = vm.act(Generator::l(0), &v("Q[-3/2]")).unwrap();
        assert_eq!(r, v("Q[-3/2]").scale(&"hL+3/2".parse().unwrap()));
    }

    #[test]
    fn w22_rejects_odd_generators() {
        let vm = VermaModule::new(VermaConfig::generic(AlgebraMode::W22)).unwrap();
        assert!(vm.act(Generator::q2(1), &ModuleVector::vacuum()).is_err());
    }

    #[test]
    fn s_for_p1_and_p2_are_singular() {
        let vm = VermaModule::new(VermaConfig::reducible(1, AlgebraMode::Full).unwrap()).unwrap();
        assert!(vm.is_singular(&v("M[-1]"), None).unwrap());
        assert!(!vm.is_singular(&v("L[-1]"), None).unwrap());
        let vm = VermaModule::new(VermaConfig::reducible(2, AlgebraMode::Full).unwrap()).unwrap();
        let s = v("M[-2] + (6/cM) M[-1]^2");
        assert!(vm.is_singular(&s, None).unwrap());
        assert!(vm.is_singular_redundant(&s, None).unwrap());
    }

    #[test]
    fn vanishing_cm_rejected() {
        let cfg = VermaConfig::reducible_at(
            2,
            AlgebraMode::Full,
            Scalar::c_l(),
            Scalar::zero(),
            Scalar::h_l(),
        );
        assert!(matches!(cfg, Err(Error::VanishingCentralCharge)));
    }
}
