//! Singular vectors: the closed forms `S` and `R`, their powers and a
//! kernel search at a single level.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactla::{kernel, kernel_relations, SparseVec, Stage, SubspaceBasis};
use crate::liealg::{AlgebraMode, Generator};
use crate::pbw::{level_basis, partitions, Partition, PbwMonomial, StrictPartition};
use crate::scalars::Scalar;
use crate::vector::ModuleVector;
use crate::verma::{positive_generators, Reducer, VermaConfig, VermaModule};

/// `φ(p) = 2hM + (p²-1) cM / 12` at the weight of `cfg`.
pub fn phi(p: u32, cfg: &VermaConfig) -> Scalar {
    cfg.phi(p as i64)
}

/// Least `p ≤ max_p` with `φ(p) = 0`, i.e. the first reducibility level.
/// `None` means the Verma module has no such `p` up to `max_p`.
pub fn is_irreducible(cfg: &VermaConfig, max_p: u32) -> Option<u32> {
    (1..=max_p).find(|&p| phi(p, cfg).is_zero())
}

fn m_monomial(parts: &[u32]) -> PbwMonomial {
    PbwMonomial::new(
        Partition::new(parts.to_vec()),
        StrictPartition::default(),
        Partition::default(),
    )
}

fn distinct_permutations(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next_permutation over the multiset
    loop {
        let n = sorted.len();
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| sorted[i] < sorted[i + 1])
        else {
            break;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| sorted[j] > sorted[i])
            .expect("exists");
        sorted.swap(i, j);
        sorted[i + 1..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// Coefficient `s_λ` of `M_{-λ}` in `S`, averaged over the distinct orderings
/// of the parts of `λ`.
pub fn s_coefficient(p: u32, lambda: &[u32], cfg: &VermaConfig) -> Result<Scalar> {
    let len = lambda.len();
    if len <= 1 {
        return Ok(Scalar::one());
    }
    let mut total = Scalar::zero();
    for mu in distinct_permutations(lambda) {
        let mut prod = Scalar::from_int(if (len - 1).is_multiple_of(2) { 1 } else { -1 });
        let mut before: i64 = 0;
        for &part in mu.iter().take(len - 1) {
            let part = part as i64;
            let after = before + part;
            let rem = p as i64 - after;
            let num = Scalar::from_int(2 * (p as i64 - before) - part);
            let den = &Scalar::from_int(rem) * &cfg.phi(rem);
            prod = &prod * &num.checked_div(&den)?;
            before = after;
        }
        total = &total + &prod;
    }
    Ok(total.mul_ratio(&BigRational::new(1.into(), (len as i64).into())))
}

/// `S·1` from the closed coefficient formula, normalized to `M_{-p}`.
pub fn build_s(p: u32, cfg: &VermaConfig) -> Result<ModuleVector> {
    cfg.p_checked_for(p)?;
    let mut out = ModuleVector::zero(2 * p as i32);
    for lam in partitions(p) {
        out.add_term(m_monomial(&lam), s_coefficient(p, &lam, cfg)?);
    }
    Ok(out)
}

/// `S·1` solved from `L_ν u = 0` for all partitions `ν ⊢ p` with `u` in
/// `U(M_-)_p`; used to cross-check [`build_s`].
pub fn solve_s(p: u32, vm: &VermaModule) -> Result<ModuleVector> {
    vm.config().p_checked_for(p)?;
    let lams = partitions(p);
    let nus = partitions(p);
    let images: Vec<SparseVec<usize>> = lams
        .iter()
        .map(|lam| {
            let v = ModuleVector::monomial(m_monomial(lam), Scalar::one());
            let mut img = SparseVec::new();
            for (i, nu) in nus.iter().enumerate() {
                let word: Vec<Generator> = nu.iter().map(|&k| Generator::l(k as i32)).collect();
                let w = vm.act_word(&word, &v)?;
                let c = w.coeff(&PbwMonomial::vacuum());
                if !c.is_zero() {
                    img.insert(i, c);
                }
            }
            Ok(img)
        })
        .collect::<Result<_>>()?;
    let rels = kernel_relations(images);
    if rels.len() != 1 {
        return Err(Error::NonUniqueSolution { dim: rels.len() });
    }
    let mut out = ModuleVector::zero(2 * p as i32);
    for (j, c) in &rels[0] {
        out.add_term(m_monomial(&lams[*j]), c.clone());
    }
    out.normalized()
}

/// `R·1 = Q_{-p/2} + Σ f_i(M) Q_{-p/2+i}` for odd `p`.
pub fn build_r(p: u32, cfg: &VermaConfig) -> Result<ModuleVector> {
    if p.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("R needs odd p, got {p}")));
    }
    if cfg.mode == AlgebraMode::W22 {
        return Err(Error::InvalidParameter("R does not exist in W(2,2)".into()));
    }
    cfg.p_checked_for(p)?;
    let half = (p - 1) / 2;
    // f[i] as lists of (M parts, coeff)
    let mut f: Vec<Vec<(Vec<u32>, Scalar)>> = vec![Vec::new()];
    for i in 1..=half {
        let ci = Scalar::from_int(6)
            .checked_div(&(&Scalar::from_int((i * (p - i)) as i64) * &cfg.c_m))?;
        let mut fi: Vec<(Vec<u32>, Scalar)> = vec![(vec![i], ci.clone())];
        for j in 1..i {
            for (parts, c) in &f[j as usize] {
                let mut np = parts.clone();
                np.push(i - j);
                fi.push((np, &ci * c));
            }
        }
        f.push(fi);
    }
    let mut out = ModuleVector::zero(p as i32);
    let q_top = p.div_ceil(2);
    out.add_term(
        PbwMonomial::new(
            Partition::default(),
            StrictPartition(vec![q_top]),
            Partition::default(),
        ),
        Scalar::one(),
    );
    for i in 1..=half {
        for (parts, c) in &f[i as usize] {
            let m = PbwMonomial::new(
                Partition::new(parts.clone()),
                StrictPartition(vec![q_top - i]),
                Partition::default(),
            );
            out.add_term(m, c.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerOp {
    S,
    R,
}

/// `S^k·1` or `R^k·1` by repeated left multiplication.
pub fn power_vector(op: PowerOp, k: u32, p: u32, vm: &VermaModule) -> Result<ModuleVector> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be ≥ 1".into()));
    }
    let g = match op {
        PowerOp::S => build_s(p, vm.config())?,
        PowerOp::R => build_r(p, vm.config())?,
    };
    let mut v = g.clone();
    for _ in 1..k {
        v = vm.apply_element(&g, &v)?;
    }
    Ok(v)
}

/// The singular vector predicted at a level: `S^k·1` at level `kp`, and for
/// odd `p` in the full algebra `R^k·1` at level `kp/2`.
pub fn predicted_singular(level2: i32, p: u32, vm: &VermaModule) -> Result<Option<ModuleVector>> {
    let p2 = p as i32;
    if level2 <= 0 {
        return Ok(None);
    }
    if vm.mode() == AlgebraMode::Full && p % 2 == 1 {
        if level2 % p2 == 0 {
            return power_vector(PowerOp::R, (level2 / p2) as u32, p, vm).map(Some);
        }
        return Ok(None);
    }
    if level2 % (2 * p2) == 0 {
        return power_vector(PowerOp::S, (level2 / (2 * p2)) as u32, p, vm).map(Some);
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct SingularReport {
    pub level2: i32,
    pub space: SubspaceBasis,
    pub matches_closed_form: bool,
}

/// Images used in singularity searches: first `M_0 - hM`, then `g_+`.
pub fn annihilator_stages<'a>(
    vm: &'a VermaModule,
    modulo: Option<&'a dyn Reducer>,
) -> (Box<Stage<'a>>, Box<Stage<'a>>) {
    let red = move |w: ModuleVector| -> Result<ModuleVector> {
        match modulo {
            Some(r) => r.reduce(&w),
            None => Ok(w),
        }
    };
    let gens = positive_generators(vm.mode());
    let s1 = Box::new(move |v: &ModuleVector| -> Result<Vec<ModuleVector>> {
        Ok(vec![red(vm.m0_shifted(v)?)?])
    });
    let s2 = Box::new(move |v: &ModuleVector| -> Result<Vec<ModuleVector>> {
        gens.iter().map(|&g| red(vm.act(g, v)?)).collect()
    });
    (s1, s2)
}

/// Kernel of `M_0 - hM` and `g_+` on the whole level basis.
pub fn singular_space(level2: i32, vm: &VermaModule) -> Result<SingularReport> {
    let p = vm.config().p_checked()?;
    let domain: Vec<ModuleVector> = level_basis(level2, vm.mode())
        .iter()
        .map(|m| ModuleVector::monomial(m.clone(), Scalar::one()))
        .collect();
    let (s1, s2) = annihilator_stages(vm, None);
    let space = kernel(level2, &domain, &[s1.as_ref(), s2.as_ref()])?;
    let predicted = predicted_singular(level2, p, vm)?;
    let expected = match &predicted {
        Some(v) => SubspaceBasis::span(level2, std::slice::from_ref(v)),
        None => SubspaceBasis::new(level2),
    };
    let matches_closed_form = space.same_span(&expected);
    Ok(SingularReport {
        level2,
        space,
        matches_closed_form,
    })
}

impl VermaConfig {
    /// Checks that the weight is reducible at the given `p` and `cM ≠ 0`.
    pub fn p_checked_for(&self, p: u32) -> Result<()> {
        if p == 0 {
            return Err(Error::InvalidParameter("p must be positive".into()));
        }
        if self.c_m.is_zero() {
            return Err(Error::VanishingCentralCharge);
        }
        if !self.phi(p as i64).is_zero() {
            return Err(Error::NotReducible(p));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ModuleVector {
        s.parse().unwrap()
    }

    fn cfg(p: u32) -> VermaConfig {
        VermaConfig::reducible(p, AlgebraMode::Full).unwrap()
    }

    #[test]
    fn phi_values() {
        assert_eq!(
            phi(1, &VermaConfig::generic(AlgebraMode::Full)),
            "2*hM".parse().unwrap()
        );
        assert!(phi(2, &cfg(2)).is_zero());
        assert!(phi(3, &cfg(3)).is_zero());
        assert_eq!(cfg(3).h_m, "-cM/3".parse().unwrap());
    }

    #[test]
    fn irreducibility() {
        assert_eq!(is_irreducible(&cfg(2), 10), Some(2));
        let mut c = VermaConfig::generic(AlgebraMode::Full);
        c.h_m = Scalar::one();
        c.c_m = Scalar::zero();
        assert_eq!(is_irreducible(&c, 10), None);
        c.h_m = Scalar::zero();
        c.c_m = Scalar::c_m();
        assert_eq!(is_irreducible(&c, 10), Some(1));
    }

    #[test]
    fn small_s_and_r() {
        assert_eq!(build_s(1, &cfg(1)).unwrap(), v("M[-1]"));
        assert_eq!(build_s(2, &cfg(2)).unwrap(), v("M[-2] + (6/cM) M[-1]^2"));
        assert_eq!(
            build_s(3, &cfg(3)).unwrap(),
            v("M[-3] + (6/cM) M[-2]M[-1] + (9/cM^2) M[-1]^3")
        );
        assert_eq!(build_r(1, &cfg(1)).unwrap(), v("Q[-1/2]"));
        assert_eq!(
            build_r(3, &cfg(3)).unwrap(),
            v("Q[-3/2] + (3/cM) M[-1]Q[-1/2]")
        );
        assert!(build_r(2, &cfg(2)).is_err());
        assert!(build_s(2, &cfg(3)).is_err());
    }

    #[test]
    fn closed_form_agrees_with_linear_solve() {
        for p in 1..=6 {
            let vm = VermaModule::new(cfg(p)).unwrap();
            assert_eq!(
                build_s(p, vm.config()).unwrap(),
                solve_s(p, &vm).unwrap(),
                "p = {p}"
            );
        }
    }

    #[test]
    fn permutations_of_multiset() {
        assert_eq!(distinct_permutations(&[2, 1, 1]).len(), 3);
        assert_eq!(distinct_permutations(&[1, 1]).len(), 1);
    }
}
