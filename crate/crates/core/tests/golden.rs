use bms_core::liealg::AlgebraMode;
use bms_core::liealg::Generator;
use bms_core::singular::{build_r, build_s, power_vector, PowerOp};
use bms_core::subsingular::{atypical_context, build_t, build_t_pr, t_powers};
use bms_core::vector::ModuleVector;
use bms_core::verma::{Reducer, VermaConfig, VermaModule};

fn v(s: &str) -> ModuleVector {
    s.parse().unwrap()
}

fn cfg(p: u32) -> VermaConfig {
    VermaConfig::reducible(p, AlgebraMode::Full).unwrap()
}

#[test]
fn s_examples() {
    assert_eq!(build_s(1, &cfg(1)).unwrap(), v("M[-1]"));
    assert_eq!(build_s(2, &cfg(2)).unwrap(), v("M[-2] + (6/cM) M[-1]^2"));
    assert_eq!(
        build_s(3, &cfg(3)).unwrap(),
        v("M[-3] + (6/cM) M[-2]M[-1] + (9/cM^2) M[-1]^3")
    );
    assert_eq!(
        build_s(4, &cfg(4)).unwrap(),
        v("M[-4] + (4/cM) M[-3]M[-1] + (3/(2*cM)) M[-2]^2 + (10/cM^2) M[-2]M[-1]^2 + (6/cM^3) M[-1]^4")
    );
}

#[test]
fn r_examples() {
    assert_eq!(build_r(1, &cfg(1)).unwrap(), v("Q[-1/2]"));
    assert_eq!(
        build_r(3, &cfg(3)).unwrap(),
        v("Q[-3/2] + (3/cM) M[-1]Q[-1/2]")
    );
    assert_eq!(
        build_r(5, &cfg(5)).unwrap(),
        v("Q[-5/2] + (3/(2*cM)) M[-1]Q[-3/2] + (1/cM) M[-2]Q[-1/2] + (3/(2*cM^2)) M[-1]^2Q[-1/2]")
    );
}

#[test]
fn r_squared_is_s() {
    for p in [1, 3, 5, 7] {
        let vm = VermaModule::new(cfg(p)).unwrap();
        let r2 = power_vector(PowerOp::R, 2, p, &vm).unwrap();
        assert_eq!(r2, build_s(p, &cfg(p)).unwrap(), "p = {p}");
    }
}

const T2: &str = "L[-2] + (12/cM) M[-1]L[-1] - (6/cM) Q[-3/2]Q[-1/2] + ((87-6*cL)/cM^2) M[-1]^2";

const T4: &str = "L[-4] + (4/cM) M[-1]L[-3] + (3/cM) M[-2]L[-2] + (10/cM^2) M[-1]^2L[-2] \
    + (4/cM) M[-3]L[-1] + (20/cM^2) M[-2]M[-1]L[-1] + (24/cM^3) M[-1]^3L[-1] \
    - (2/cM) Q[-7/2]Q[-1/2] - (6/cM) Q[-5/2]Q[-3/2] - (16/cM^2) M[-1]Q[-5/2]Q[-1/2] \
    + (6/cM^2) M[-2]Q[-3/2]Q[-1/2] - (12/cM^3) M[-1]^2Q[-3/2]Q[-1/2] \
    + ((66-4*cL)/cM^2) M[-3]M[-1] + ((51/4-3*cL/2)/cM^2) M[-2]^2 \
    + ((342-20*cL)/cM^3) M[-2]M[-1]^2 + ((321-18*cL)/cM^4) M[-1]^4";

const T5: &str = "L[-5] + (3/cM) M[-1]L[-4] + (2/cM) M[-2]L[-3] + (21/(4*cM^2)) M[-1]^2L[-3] \
    + (2/cM) M[-3]L[-2] + (8/cM^2) M[-2]M[-1]L[-2] + (15/(2*cM^3)) M[-1]^3L[-2] \
    + (3/cM) M[-4]L[-1] + (21/(2*cM^2)) M[-3]M[-1]L[-1] + (4/cM^2) M[-2]^2L[-1] \
    + (45/(2*cM^3)) M[-2]M[-1]^2L[-1] + (45/(4*cM^4)) M[-1]^4L[-1] \
    - (3/(2*cM)) Q[-9/2]Q[-1/2] - (3/cM) Q[-7/2]Q[-3/2] - (27/(4*cM^2)) M[-1]Q[-7/2]Q[-1/2] \
    + (3/(2*cM^2)) M[-3]Q[-3/2]Q[-1/2] - (3/cM^3) M[-2]M[-1]Q[-3/2]Q[-1/2] \
    + (9/(4*cM^4)) M[-1]^3Q[-3/2]Q[-1/2] \
    + ((105/2-3*cL)/cM^2) M[-4]M[-1] + ((31-2*cL)/cM^2) M[-3]M[-2] \
    + ((369/2-21*cL/2)/cM^3) M[-3]M[-1]^2 + ((148-8*cL)/cM^3) M[-2]^2M[-1] \
    + ((1653/4-45*cL/2)/cM^4) M[-2]M[-1]^3 + ((675/4-9*cL)/cM^5) M[-1]^5";

#[test]
fn t_examples() {
    for (p, want) in [(2, T2), (4, T4), (5, T5)] {
        let ctx = atypical_context(p, 1, AlgebraMode::Full).unwrap();
        assert_eq!(build_t(p, &ctx).unwrap(), v(want), "p = {p}");
    }
}

#[test]
fn t_pr_examples() {
    let cases = [
        (2, "L[-1]^2 + (6/cM) M[-2]"),
        (3, "L[-1]^3 + (24/cM) M[-2]L[-1] + (12/cM) M[-3]"),
        (
            4,
            "L[-1]^4 + (60/cM) M[-2]L[-1]^2 + (60/cM) M[-3]L[-1] + (36/cM) M[-4] + (324/cM^2) M[-2]^2",
        ),
    ];
    for (r, want) in cases {
        let ctx = atypical_context(1, r, AlgebraMode::Full).unwrap();
        assert_eq!(build_t_pr(1, r, &ctx).unwrap(), v(want), "r = {r}");
    }
}

// A variant of T_{1,4} with 108/cM^2 on M[-2]^2 is not singular
// modulo J': L_2 leaves -(216/cM) M[-2].
#[test]
fn t14_variant_is_not_subsingular() {
    let ctx = atypical_context(1, 4, AlgebraMode::Full).unwrap();
    let variant = v(
        "L[-1]^4 + (60/cM) M[-2]L[-1]^2 + (60/cM) M[-3]L[-1] + (36/cM) M[-4] + (108/cM^2) M[-2]^2",
    );
    let img = ctx
        .reduce(&ctx.module().act(Generator::l(2), &variant).unwrap())
        .unwrap();
    assert_eq!(img, v("-(216/cM) M[-2]"));
    let ours = build_t_pr(1, 4, &ctx).unwrap();
    assert!(ctx.module().is_singular(&ours, Some(&ctx)).unwrap());
}

#[test]
fn t22_minus_t_squared() {
    let ctx = atypical_context(2, 2, AlgebraMode::Full).unwrap();
    let t22 = build_t_pr(2, 2, &ctx).unwrap();
    let t = v(T2);
    let t2 = t_powers(&t, 2, ctx.module()).unwrap().pop().unwrap();
    let diff = t22.sub(&t2).unwrap();
    assert_eq!(
        diff,
        v("(6/cM) M[-4] + (216/cM^2) M[-3]M[-1] - (5184/cM^4) M[-1]^4")
    );
}
