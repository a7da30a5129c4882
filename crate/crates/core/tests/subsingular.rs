use bms_core::liealg::AlgebraMode;
use bms_core::pbw::{level_basis, Partition, PbwMonomial, StrictPartition};
use bms_core::subsingular::*;
use bms_core::verma::VermaConfig;
use bms_core::Scalar;

#[test]
fn quotient_basis_is_complement_of_pivots() {
    for p in 1..=4u32 {
        let ctx =
            QuotientContext::from_config(VermaConfig::reducible(p, AlgebraMode::Full).unwrap())
                .unwrap();
        for n in 0..=(3 * p as i32).min(8) {
            let comp = ctx.component(n).unwrap();
            let q = ctx.quotient_basis(n);
            for m in level_basis(n, AlgebraMode::Full).iter() {
                assert_eq!(comp.is_pivot(m), !q.contains(m), "p={p} level2={n} {m}");
            }
        }
    }
}

#[test]
fn full_quotient_kernel_is_spanned_by_t() {
    for p in 1..=4u32 {
        let ctx = atypical_context(p, 1, AlgebraMode::Full).unwrap();
        let t = build_t(p, &ctx).unwrap();
        let k = t_by_full_kernel(p, &ctx).unwrap();
        assert_eq!(k.dim(), 1, "p={p}");
        assert!(k.contains(&t));
    }
}

fn mono(m: &[u32], q: &[u32], l: &[u32]) -> PbwMonomial {
    PbwMonomial::new(
        Partition(m.to_vec()),
        StrictPartition(q.to_vec()),
        Partition(l.to_vec()),
    )
}

#[test]
fn forced_coefficients_appear_in_t() {
    for p in 1..=5u32 {
        let ctx = atypical_context(p, 1, AlgebraMode::Full).unwrap();
        let t = build_t(p, &ctx).unwrap();
        let (l, n) = necessity_coefficients(p, 1, &Scalar::c_m()).unwrap();
        for k in 1..p {
            assert_eq!(
                t.coeff(&mono(&[k], &[], &[p - k])),
                l[(k - 1) as usize],
                "p={p} l_{k}"
            );
        }
        for k in 1..=p / 2 {
            assert_eq!(
                t.coeff(&mono(&[], &[p - k + 1, k], &[])),
                n[(k - 1) as usize],
                "p={p} n_{k}"
            );
        }
    }
}

#[test]
fn fixed_part_matches_t() {
    for p in 1..=5u32 {
        let ctx = atypical_context(p, 1, AlgebraMode::Full).unwrap();
        let t = build_t(p, &ctx).unwrap();
        let f = t_fixed_part(p, &Scalar::c_m()).unwrap();
        for (m, c) in f.terms() {
            assert_eq!(&t.coeff(m), c, "p={p} {m}");
        }
        // T has no M[-p], and for odd p no Q[-p/2]
        assert!(t.terms().all(|(m, _)| ctx.in_quotient_basis(m)));
    }
}

#[test]
fn composition_identities() {
    for (p, r) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)] {
        let ctx = atypical_context(p, r, AlgebraMode::Full).unwrap();
        for c in composition_checks(p, r, &ctx).unwrap() {
            assert!(c.pass, "({p},{r}) {}: {}", c.name, c.detail);
        }
    }
}

#[test]
fn necessity_has_single_root() {
    for (p, r) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
        let g = necessity_polynomial(p, r, AlgebraMode::Full).unwrap();
        assert_eq!(
            linear_root_in_hl(&g),
            Some(h_pr(p, r)),
            "({p},{r}) obstruction {g}"
        );
    }
    for (p, r) in [(1, 1), (2, 1)] {
        let g = necessity_polynomial(p, r, AlgebraMode::W22).unwrap();
        assert_eq!(
            linear_root_in_hl(&g),
            Some(h_pr_w22(p, r)),
            "w22 ({p},{r}) obstruction {g}"
        );
    }
}

#[test]
fn s_times_t_powers_lie_in_j_prime() {
    for i in 1..=2 {
        let c = s_t_vanishing(2, i).unwrap();
        assert!(c.pass, "{}", c.detail);
    }
}

#[test]
fn pairing_identity_w22() {
    for (p, k) in [(1, 1), (2, 1), (1, 2)] {
        let c = pairing_identity(p, k, AlgebraMode::W22).unwrap();
        assert!(c.pass, "{}", c.detail);
    }
}

#[test]
fn t_off_the_locus_is_rejected() {
    let cfg = VermaConfig::reducible(2, AlgebraMode::Full)
        .unwrap()
        .with_h_l(Scalar::zero());
    let ctx = QuotientContext::from_config(cfg).unwrap();
    assert!(build_t(2, &ctx).is_err());
    assert!(build_t_pr(2, 0, &ctx).is_err());
    let ctx = atypical_context(2, 1, AlgebraMode::Full).unwrap();
    assert_eq!(subsingular_space(4, &ctx).unwrap().dim(), 1);
}
