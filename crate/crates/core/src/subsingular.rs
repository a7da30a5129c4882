//! Subsingular vectors: the atypical weights `h_{p,r}`, the submodule `J'`
//! generated by singular vectors, and the vectors `T` and `T_{p,r}` that
//! become singular in `V / J'`.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::exactla::{kernel, Echelon, SparseVec, SubspaceBasis};
use crate::liealg::{AlgebraMode, Generator};
use crate::par;
use crate::pbw::{level_basis, partitions, Partition, PbwMonomial, StrictPartition};
use crate::scalars::{gcd, Poly, Scalar, Var};
use crate::singular::{annihilator_stages, build_r, build_s};
use crate::vector::ModuleVector;
use crate::verma::{positive_generators, Reducer, VermaConfig, VermaModule};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `h_{p,r}` as a function of the given `cL`.
pub fn h_pr_at(p: u32, r: u32, c_l: &Scalar) -> Scalar {
    let (p, r) = (p as i64, r as i64);
    let lin = c_l.mul_ratio(&ratio(-(p * p - 1), 24));
    let even = if p % 2 == 0 { 2 } else { 0 };
    let konst = ratio((41 * p + 5) * (p - 1), 48) + ratio((1 - r) * p, 2) - ratio(even * p, 8);
    &lin + &Scalar::from_ratio(&konst)
}

/// `h_{p,r} = -(p²-1)cL/24 + (41p+5)(p-1)/48 + (1-r)p/2 - (1+(-1)^p)p/8`.
pub fn h_pr(p: u32, r: u32) -> Scalar {
    h_pr_at(p, r, &Scalar::c_l())
}

/// The W(2,2) locus `h'_{p,r}` as a function of the given `cL`.
pub fn h_pr_w22_at(p: u32, r: u32, c_l: &Scalar) -> Scalar {
    let (p, r) = (p as i64, r as i64);
    let lin = c_l.mul_ratio(&ratio(-(p * p - 1), 24));
    let konst = ratio((13 * p + 1) * (p - 1), 12) + ratio((1 - r) * p, 2);
    &lin + &Scalar::from_ratio(&konst)
}

/// `h'_{p,r} = -(p²-1)cL/24 + (13p+1)(p-1)/12 + (1-r)p/2`.
pub fn h_pr_w22(p: u32, r: u32) -> Scalar {
    h_pr_w22_at(p, r, &Scalar::c_l())
}

/// The atypical weight for a mode.
pub fn h_pr_mode(p: u32, r: u32, mode: AlgebraMode, c_l: &Scalar) -> Scalar {
    match mode {
        AlgebraMode::Full => h_pr_at(p, r, c_l),
        AlgebraMode::W22 => h_pr_w22_at(p, r, c_l),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtypicalWeight {
    pub p: u32,
    pub r: u32,
    pub hpr: Scalar,
}

impl AtypicalWeight {
    pub fn new(p: u32, r: u32) -> Self {
        AtypicalWeight {
            p,
            r,
            hpr: h_pr(p, r),
        }
    }
}

/// Coefficients forced on `T_{p,r}`: `l_k` of `M_{-k} L_{-(p-k)}` and `n_k`
/// of `Q_{-(p-k)-1/2} Q_{-k+1/2}`.
pub fn necessity_coefficients(p: u32, r: u32, c_m: &Scalar) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    if c_m.is_zero() {
        return Err(Error::VanishingCentralCharge);
    }
    let (pi, ri) = (p as i64, r as i64);
    let l = (1..pi)
        .map(|k| Scalar::from_int(12 * ri).checked_div(&c_m.mul_ratio(&ratio(k * (pi - k), 1))))
        .collect::<Result<Vec<_>>>()?;
    let n = (1..=pi / 2)
        .map(|k| Scalar::from_int(-6 * ri).checked_div(&c_m.mul_ratio(&ratio(pi - 2 * k + 1, 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok((l, n))
}

/// Level components of `J'`, the submodule generated by `S·1` (even `p`,
/// and W(2,2)) or `R·1` (odd `p`), built lazily per level.
pub struct QuotientContext {
    vm: Arc<VermaModule>,
    p: u32,
    generator: ModuleVector,
    levels: RwLock<HashMap<i32, Arc<SubspaceBasis>>>,
}

impl std::fmt::Debug for QuotientContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientContext")
            .field("p", &self.p)
            .field("generator", &self.generator.to_string())
            .finish()
    }
}

impl QuotientContext {
    pub fn new(vm: Arc<VermaModule>) -> Result<Self> {
        let p = vm.config().p_checked()?;
        let generator = if p % 2 == 1 && vm.mode() == AlgebraMode::Full {
            build_r(p, vm.config())?
        } else {
            build_s(p, vm.config())?
        };
        Ok(QuotientContext {
            vm,
            p,
            generator,
            levels: RwLock::new(HashMap::new()),
        })
    }

    pub fn from_config(cfg: VermaConfig) -> Result<Self> {
        Self::new(Arc::new(VermaModule::new(cfg)?))
    }

    pub fn module(&self) -> &VermaModule {
        &self.vm
    }

    pub fn module_arc(&self) -> Arc<VermaModule> {
        self.vm.clone()
    }

    pub fn config(&self) -> &VermaConfig {
        self.vm.config()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `S·1` or `R·1`.
    pub fn generator(&self) -> &ModuleVector {
        &self.generator
    }

    /// Span of `b·G·1` over the PBW monomials `b` of complementary level.
    pub fn component(&self, level2: i32) -> Result<Arc<SubspaceBasis>> {
        if let Some(c) = self.levels.read().get(&level2) {
            return Ok(c.clone());
        }
        let rest = level2 - self.generator.level2();
        let vecs: Vec<ModuleVector> = if rest < 0 {
            Vec::new()
        } else {
            let words = level_basis(rest, self.vm.mode());
            par::try_map(&words, |b| self.vm.act_word(&b.word(), &self.generator))?
        };
        let arc = Arc::new(SubspaceBasis::span(level2, &vecs));
        self.levels.write().insert(level2, arc.clone());
        Ok(arc)
    }

    /// Whether `m` lies in the quotient basis: no `M_{-p}`, and for odd `p`
    /// in the full algebra no `Q_{-p/2}`.
    pub fn in_quotient_basis(&self, m: &PbwMonomial) -> bool {
        if m.has_m(self.p) {
            return false;
        }
        !(self.p % 2 == 1 && self.vm.mode() == AlgebraMode::Full && m.has_q(self.p.div_ceil(2)))
    }

    pub fn quotient_basis(&self, level2: i32) -> Vec<PbwMonomial> {
        level_basis(level2, self.vm.mode())
            .iter()
            .filter(|m| self.in_quotient_basis(m))
            .cloned()
            .collect()
    }
}

impl Reducer for QuotientContext {
    fn reduce(&self, v: &ModuleVector) -> Result<ModuleVector> {
        if v.is_zero() {
            return Ok(v.clone());
        }
        Ok(self.component(v.level2())?.reduce_vec(v))
    }
}

fn m_only(parts: &[u32]) -> PbwMonomial {
    PbwMonomial::new(
        Partition::new(parts.to_vec()),
        StrictPartition::default(),
        Partition::default(),
    )
}

/// `L_{-p} + Σ_{i=1}^{p-1} g_{p-i}(M) L_{-i}` with the recursion
/// `g_i = k_i M_{-i} + k_i Σ_{j<i} (1 - j/(2p-i)) g_j M_{-(i-j)}`,
/// `k_i = 12 / (i(p-i) cM)`.
pub fn t_fixed_part(p: u32, c_m: &Scalar) -> Result<ModuleVector> {
    let pi = p as i64;
    let mut g: Vec<Vec<(Vec<u32>, Scalar)>> = vec![Vec::new()];
    for i in 1..pi {
        let ki = Scalar::from_int(12).checked_div(&c_m.mul_ratio(&ratio(i * (pi - i), 1)))?;
        let mut gi = vec![(vec![i as u32], ki.clone())];
        for j in 1..i {
            let w = &ki * &Scalar::from_ratio(&(ratio(1, 1) - ratio(j, 2 * pi - i)));
            for (parts, c) in &g[j as usize] {
                let mut np = parts.clone();
                np.push((i - j) as u32);
                gi.push((np, &w * c));
            }
        }
        g.push(gi);
    }
    let mut out = ModuleVector::zero(2 * p as i32);
    out.add_term(
        PbwMonomial::new(
            Partition::default(),
            StrictPartition::default(),
            Partition(vec![p]),
        ),
        Scalar::one(),
    );
    for i in 1..p {
        for (parts, c) in &g[(p - i) as usize] {
            let m = PbwMonomial::new(
                Partition::new(parts.clone()),
                StrictPartition::default(),
                Partition(vec![i]),
            );
            out.add_term(m, c.clone());
        }
    }
    Ok(out)
}

/// Kernel of the annihilator maps modulo `J'` on the span of `domain`.
fn quotient_kernel(
    level2: i32,
    domain: &[ModuleVector],
    ctx: &QuotientContext,
) -> Result<SubspaceBasis> {
    let (s1, s2) = annihilator_stages(ctx.module(), Some(ctx));
    kernel(level2, domain, &[s1.as_ref(), s2.as_ref()])
}

fn unique_solution(space: SubspaceBasis) -> Result<ModuleVector> {
    match space.dim() {
        1 => Ok(space.basis().remove(0)),
        0 => Err(Error::Inconsistent(
            "no vector of the ansatz is singular modulo J'".into(),
        )),
        d => Err(Error::NonUniqueSolution { dim: d }),
    }
}

/// Unknown monomials of `u_p`: quotient basis monomials at level `p` free
/// of `L` factors.
fn t_unknowns(p: u32, ctx: &QuotientContext) -> Vec<ModuleVector> {
    ctx.quotient_basis(2 * p as i32)
        .into_iter()
        .filter(|m| m.ell_l() == 0)
        .map(|m| ModuleVector::monomial(m, Scalar::one()))
        .collect()
}

/// `T·1` at `hL = h_{p,1}`: the fixed `L`-part from the recursion plus the
/// `u_p(M, Q)` part solved from singularity modulo `J'`.
pub fn build_t(p: u32, ctx: &QuotientContext) -> Result<ModuleVector> {
    let cfg = ctx.config();
    let expected = h_pr_mode(p, 1, cfg.mode, &cfg.c_l);
    if cfg.h_l != expected {
        return Err(Error::InvalidParameter(format!(
            "T needs hL = {expected}, configuration has {}",
            cfg.h_l
        )));
    }
    let mut domain = vec![t_fixed_part(p, &cfg.c_m)?];
    domain.extend(t_unknowns(p, ctx));
    unique_solution(quotient_kernel(2 * p as i32, &domain, ctx)?)
}

/// Singular-modulo-`J'` vectors in the span of all quotient monomials at
/// level `p`; used to cross-check [`build_t`] without the ansatz.
pub fn t_by_full_kernel(p: u32, ctx: &QuotientContext) -> Result<SubspaceBasis> {
    subsingular_space(2 * p as i32, ctx)
}

/// Context at `hL = h_{p,1}` (or `h'_{p,1}`) with the central charges of `cfg`.
pub fn t_context(p: u32, cfg: &VermaConfig) -> Result<QuotientContext> {
    let h = h_pr_mode(p, 1, cfg.mode, &cfg.c_l);
    let c = VermaConfig::reducible_at(p, cfg.mode, cfg.c_l.clone(), cfg.c_m.clone(), h)?;
    QuotientContext::from_config(c)
}

/// The element `T ∈ U(g_-)` for the central charges of `cfg`.
pub fn t_element(p: u32, cfg: &VermaConfig) -> Result<ModuleVector> {
    build_t(p, &t_context(p, cfg)?)
}

/// `T^j·1` for `j = 0..=r` in the module of `vm`.
pub fn t_powers(t: &ModuleVector, r: u32, vm: &VermaModule) -> Result<Vec<ModuleVector>> {
    let mut out = vec![ModuleVector::vacuum()];
    for j in 1..=r as usize {
        let next = vm.apply_element(t, &out[j - 1])?;
        out.push(next);
    }
    Ok(out)
}

/// M-monomials of weight `w` without the part `p`.
fn m_monomials_avoiding(w: u32, p: u32) -> Vec<PbwMonomial> {
    partitions(w)
        .into_iter()
        .filter(|l| !l.contains(&p))
        .map(|l| m_only(&l))
        .collect()
}

/// Domain of the `T_{p,r}` ansatz: `T^r·1` followed by `v·T^{r-i}·1` for
/// every M-monomial `v` of weight `ip` avoiding `M_{-p}`.
fn t_pr_domain(p: u32, r: u32, t: &ModuleVector, vm: &VermaModule) -> Result<Vec<ModuleVector>> {
    let pow = t_powers(t, r, vm)?;
    let mut domain = vec![pow[r as usize].clone()];
    let mut jobs = Vec::new();
    for i in 1..=r {
        for v in m_monomials_avoiding(i * p, p) {
            jobs.push((v, (r - i) as usize));
        }
    }
    let extra = par::try_map(&jobs, |(v, j)| vm.act_word(&v.word(), &pow[*j]))?;
    domain.extend(extra);
    Ok(domain)
}

/// `T_{p,r}·1 = (T^r + v_1 T^{r-1} + ... + v_r)·1` at `hL = h_{p,r}`.
pub fn build_t_pr(p: u32, r: u32, ctx: &QuotientContext) -> Result<ModuleVector> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be ≥ 1".into()));
    }
    let cfg = ctx.config();
    let expected = h_pr_mode(p, r, cfg.mode, &cfg.c_l);
    if cfg.h_l != expected {
        return Err(Error::InvalidParameter(format!(
            "T_{{{p},{r}}} needs hL = {expected}, configuration has {}",
            cfg.h_l
        )));
    }
    if r == 1 {
        return build_t(p, ctx);
    }
    let t = t_element(p, cfg)?;
    let domain = t_pr_domain(p, r, &t, ctx.module())?;
    unique_solution(quotient_kernel((2 * p * r) as i32, &domain, ctx)?)
}

/// Kernel of `M_0 - hM` and `g_+` on the quotient basis at one level,
/// computed modulo `J'`.
pub fn subsingular_space(level2: i32, ctx: &QuotientContext) -> Result<SubspaceBasis> {
    let domain: Vec<ModuleVector> = ctx
        .quotient_basis(level2)
        .into_iter()
        .map(|m| ModuleVector::monomial(m, Scalar::one()))
        .collect();
    quotient_kernel(level2, &domain, ctx)
}

/// Obstruction to solving the `T_{p,r}` ansatz with symbolic `hL`: the gcd
/// of the numerators left after eliminating the unknowns. The ansatz is
/// solvable exactly at the roots of this polynomial in `hL`.
pub fn necessity_polynomial(p: u32, r: u32, mode: AlgebraMode) -> Result<Poly> {
    let ctx = QuotientContext::from_config(VermaConfig::reducible(p, mode)?)?;
    let vm = ctx.module();
    let domain = if r == 1 {
        let mut d = vec![t_fixed_part(p, &vm.config().c_m)?];
        d.extend(t_unknowns(p, &ctx));
        d
    } else {
        let t = t_element(p, vm.config())?;
        t_pr_domain(p, r, &t, vm)?
    };
    let gens = positive_generators(mode);
    let images = par::try_map(&domain, |v| {
        let mut s: SparseVec<(usize, PbwMonomial)> = SparseVec::new();
        let mut imgs = vec![ctx.reduce(&vm.m0_shifted(v)?)?];
        for &g in &gens {
            imgs.push(ctx.reduce(&vm.act(g, v)?)?);
        }
        for (i, w) in imgs.iter().enumerate() {
            for (m, c) in w.terms() {
                s.insert((i, m.clone()), c.clone());
            }
        }
        Ok::<_, Error>(s)
    })?;
    let mut ech = Echelon::new();
    for (j, img) in images.iter().enumerate().skip(1) {
        ech.insert(img.clone(), j);
    }
    let residual = ech.reduce(&images[0]);
    let mut g = Poly::zero();
    for c in residual.values() {
        g = gcd(&g, c.numer());
    }
    Ok(g)
}

/// The root in `hL` of a polynomial linear in `hL`, if it is linear.
pub fn linear_root_in_hl(poly: &Poly) -> Option<Scalar> {
    if poly.degree_in(Var::HL) != 1 {
        return None;
    }
    let coeffs = poly.to_univariate(Var::HL);
    let a = Scalar::from_poly(coeffs[1].clone());
    let b = Scalar::from_poly(coeffs[0].clone());
    (-b).checked_div(&a).ok()
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// `M_{(r-1)p} T_{p,r}·1 = r! p^r S·1 (+ hM T·1 when r = 1)`, exactly in `V`.
pub fn m_action_identity(
    p: u32,
    r: u32,
    ctx: &QuotientContext,
    tpr: &ModuleVector,
) -> Result<CheckResult> {
    let vm = ctx.module();
    let k = (r - 1) * p;
    let lhs = vm.act(Generator::m(k as i32), tpr)?;
    let coeff = factorial(r) * (p as i64).pow(r);
    let mut rhs = build_s(p, vm.config())?.scale(&Scalar::from_int(coeff));
    if r == 1 {
        rhs.axpy(&vm.config().h_m, tpr);
    }
    let diff = lhs.sub(&rhs)?;
    Ok(CheckResult {
        name: format!("M[{k}] T_{{{p},{r}}} = {coeff} S"),
        pass: diff.is_zero(),
        detail: if diff.is_zero() {
            String::new()
        } else {
            format!("difference {diff}")
        },
    })
}

/// `Q_{(r-1)p+p/2} T_{p,r}·1 = r! p^r R·1` for odd `p`, exactly in `V`.
pub fn q_action_identity(
    p: u32,
    r: u32,
    ctx: &QuotientContext,
    tpr: &ModuleVector,
) -> Result<CheckResult> {
    let vm = ctx.module();
    let mode2 = (2 * (r - 1) * p + p) as i32;
    let g = Generator::q2(mode2);
    let lhs = vm.act(g, tpr)?;
    let coeff = factorial(r) * (p as i64).pow(r);
    let rhs = build_r(p, vm.config())?.scale(&Scalar::from_int(coeff));
    let diff = lhs.sub(&rhs)?;
    Ok(CheckResult {
        name: format!("{g} T_{{{p},{r}}} = {coeff} R"),
        pass: diff.is_zero(),
        detail: if diff.is_zero() {
            String::new()
        } else {
            format!("difference {diff}")
        },
    })
}

/// `L_p^k T^k·1 = (2p)^k k! Π_{i=1}^k (hL - h_{p,i})·1` with symbolic `hL`.
pub fn pairing_identity(p: u32, k: u32, mode: AlgebraMode) -> Result<CheckResult> {
    let cfg = VermaConfig::reducible(p, mode)?;
    let vm = VermaModule::new(cfg.clone())?;
    let t = t_element(p, &cfg)?;
    let pow = t_powers(&t, k, &vm)?;
    let word = vec![Generator::l(p as i32); k as usize];
    let lhs = vm.act_word(&word, &pow[k as usize])?;
    let mut c = Scalar::from_int((2 * p as i64).pow(k) * factorial(k));
    for i in 1..=k {
        c = &c * &(&cfg.h_l - &h_pr_mode(p, i, mode, &cfg.c_l));
    }
    let rhs = ModuleVector::vacuum().scale(&c);
    let diff = lhs.sub(&rhs)?;
    Ok(CheckResult {
        name: format!("L[{p}]^{k} T^{k} (p={p})"),
        pass: diff.is_zero(),
        detail: if diff.is_zero() {
            String::new()
        } else {
            format!("lhs {lhs}, rhs {rhs}")
        },
    })
}

/// `S T^i·1 ∈ J'` for even `p` and symbolic `hL`.
pub fn s_t_vanishing(p: u32, i: u32) -> Result<CheckResult> {
    let cfg = VermaConfig::reducible(p, AlgebraMode::Full)?;
    let ctx = QuotientContext::from_config(cfg.clone())?;
    let vm = ctx.module();
    let t = t_element(p, &cfg)?;
    let pow = t_powers(&t, i, vm)?;
    let s = build_s(p, &cfg)?;
    let v = vm.apply_element(&s, &pow[i as usize])?;
    let red = ctx.reduce(&v)?;
    Ok(CheckResult {
        name: format!("S T^{i} in J' (p={p})"),
        pass: red.is_zero(),
        detail: if red.is_zero() {
            String::new()
        } else {
            format!("residue {red}")
        },
    })
}

/// `M_0 T·1 - hM T·1 = p S·1`, exactly in `V`.
pub fn m0_eigen_identity(p: u32, ctx: &QuotientContext, t: &ModuleVector) -> Result<CheckResult> {
    let vm = ctx.module();
    let lhs = vm.m0_shifted(t)?;
    let rhs = build_s(p, vm.config())?.scale(&Scalar::from_int(p as i64));
    let diff = lhs.sub(&rhs)?;
    Ok(CheckResult {
        name: format!("[M0,T] = {p} S"),
        pass: diff.is_zero(),
        detail: if diff.is_zero() {
            String::new()
        } else {
            format!("difference {diff}")
        },
    })
}

/// Identities tying `T_{p,r}` to `S`, `R` and the pairing with `L_p`.
pub fn composition_checks(p: u32, r: u32, ctx: &QuotientContext) -> Result<Vec<CheckResult>> {
    let tpr = build_t_pr(p, r, ctx)?;
    let mut out = vec![m_action_identity(p, r, ctx, &tpr)?];
    if p % 2 == 1 && ctx.module().mode() == AlgebraMode::Full {
        out.push(q_action_identity(p, r, ctx, &tpr)?);
    }
    if r == 1 {
        out.push(m0_eigen_identity(p, ctx, &tpr)?);
    }
    for k in 1..=r {
        out.push(pairing_identity(p, k, ctx.module().mode())?);
    }
    if p.is_multiple_of(2) && ctx.module().mode() == AlgebraMode::Full {
        out.push(s_t_vanishing(p, 1)?);
    }
    Ok(out)
}

/// Context at `hL = h_{p,r}` with symbolic central charges.
pub fn atypical_context(p: u32, r: u32, mode: AlgebraMode) -> Result<QuotientContext> {
    let h = h_pr_mode(p, r, mode, &Scalar::c_l());
    QuotientContext::from_config(VermaConfig::reducible(p, mode)?.with_h_l(h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ModuleVector {
        s.parse().unwrap()
    }
    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn atypical_weights() {
        assert_eq!(h_pr(2, 1), sc("-cL/8+21/16"));
        assert_eq!(h_pr(2, 2), sc("-cL/8+5/16"));
        for r in 1..5 {
            assert_eq!(h_pr(1, r), Scalar::rational(1 - r as i64, 2));
            assert_eq!(h_pr_w22(1, r), Scalar::rational(1 - r as i64, 2));
        }
        assert_eq!(h_pr(4, 1), sc("-5*cL/8+153/16"));
        assert_eq!(h_pr(5, 1), sc("-cL+35/2"));
        assert_eq!(h_pr_w22(2, 1), sc("-cL/8+27/12"));
        assert_eq!(h_pr_w22(3, 2), sc("-cL/3+80/12-3/2"));
    }

    #[test]
    fn forced_coefficients() {
        let (l, n) = necessity_coefficients(2, 1, &Scalar::c_m()).unwrap();
        assert_eq!(l, vec![sc("12/cM")]);
        assert_eq!(n, vec![sc("-6/cM")]);
        let (l, _) = necessity_coefficients(4, 1, &Scalar::c_m()).unwrap();
        assert_eq!(l[1], sc("3/cM"));
        let (l, n) = necessity_coefficients(1, 1, &Scalar::c_m()).unwrap();
        assert!(l.is_empty() && n.is_empty());
    }

    #[test]
    fn quotient_components() {
        let ctx =
            QuotientContext::from_config(VermaConfig::reducible(1, AlgebraMode::Full).unwrap())
                .unwrap();
        assert_eq!(ctx.component(1).unwrap().basis(), vec![v("Q[-1/2]")]);
        assert_eq!(ctx.component(2).unwrap().basis(), vec![v("M[-1]")]);
        assert_eq!(ctx.quotient_basis(2), vec!["L[-1]".parse().unwrap()]);
        let ctx =
            QuotientContext::from_config(VermaConfig::reducible(2, AlgebraMode::Full).unwrap())
                .unwrap();
        assert_eq!(ctx.component(4).unwrap().dim(), 1);
        assert_eq!(ctx.quotient_basis(4).len(), 5);
    }

    #[test]
    fn t_small() {
        let ctx = atypical_context(1, 1, AlgebraMode::Full).unwrap();
        assert_eq!(build_t(1, &ctx).unwrap(), v("L[-1]"));
        let ctx = atypical_context(2, 1, AlgebraMode::Full).unwrap();
        let t = build_t(2, &ctx).unwrap();
        assert_eq!(
            t,
            v("L[-2] + (12/cM) M[-1]L[-1] - (6/cM) Q[-3/2]Q[-1/2] - ((6*cL-87)/cM^2) M[-1]^2")
        );
    }

    #[test]
    fn t_needs_the_atypical_weight() {
        let ctx =
            QuotientContext::from_config(VermaConfig::reducible(2, AlgebraMode::Full).unwrap())
                .unwrap();
        assert!(matches!(build_t(2, &ctx), Err(Error::InvalidParameter(_))));
    }
}
