//! Named verification suites. Each item is an independent check; items run
//! in parallel and are reported sorted by name.

use bms_core::characters::{
    computed_graded_dims, draw_generic_hl, irreducible_character_mode, seeded_rng,
    telescoping_layer, verma_series,
};
use bms_core::liealg::{AlgebraMode, Generator};
use bms_core::pbw::{basis_sizes, level_basis};
use bms_core::singular::{build_r, build_s, power_vector, singular_space, solve_s, PowerOp};
use bms_core::subsingular::{
    atypical_context, build_t, build_t_pr, composition_checks, h_pr, h_pr_mode, h_pr_w22,
    linear_root_in_hl, necessity_polynomial, s_t_vanishing, t_powers,
};
use bms_core::vector::ModuleVector;
use bms_core::verma::{VermaConfig, VermaModule};
use bms_core::{par, Error, Scalar};
use clap::ValueEnum;
use num_rational::BigRational;
use rand::Rng;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    PaperExamples,
    Properties,
    Characters,
    Composition,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::PaperExamples => "paper-examples",
            Suite::Properties => "properties",
            Suite::Characters => "characters",
            Suite::Composition => "composition",
        }
    }
}

pub struct Item {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

type Check = Box<dyn Fn() -> Result<(bool, String), Error> + Send + Sync>;

fn item(
    name: impl Into<String>,
    f: impl Fn() -> Result<(bool, String), Error> + Send + Sync + 'static,
) -> (String, Check) {
    (name.into(), Box::new(f))
}

fn v(s: &str) -> ModuleVector {
    s.parse().expect("golden vector")
}

fn sc(s: &str) -> Scalar {
    s.parse().expect("golden scalar")
}

fn eq_vec(got: ModuleVector, want: &str) -> (bool, String) {
    let w = v(want);
    if got == w {
        (true, String::new())
    } else {
        (false, format!("got {got}"))
    }
}

fn cfg(p: u32, mode: AlgebraMode) -> VermaConfig {
    VermaConfig::reducible(p, mode).expect("p ≥ 1")
}

pub fn run(suite: Suite, max_level2: i32, seed: u64) -> Vec<Item> {
    let checks = match suite {
        Suite::PaperExamples => paper_examples(),
        Suite::Properties => properties(max_level2, seed),
        Suite::Characters => characters(max_level2, seed),
        Suite::Composition => composition(),
    };
    let mut out: Vec<Item> = par::map(&checks, |(name, f)| {
        let (pass, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        Item {
            name: name.clone(),
            pass,
            detail,
        }
    });
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

const S_EXAMPLES: [(u32, &str); 3] = [
    (1, "M[-1]"),
    (2, "M[-2] + (6/cM) M[-1]^2"),
    (3, "M[-3] + (6/cM) M[-2]M[-1] + (9/cM^2) M[-1]^3"),
];

const R_EXAMPLES: [(u32, &str); 3] = [
    (1, "Q[-1/2]"),
    (3, "Q[-3/2] + (3/cM) M[-1]Q[-1/2]"),
    (
        5,
        "Q[-5/2] + (3/(2*cM)) M[-1]Q[-3/2] + (1/cM) M[-2]Q[-1/2] + (3/(2*cM^2)) M[-1]^2Q[-1/2]",
    ),
];

const T_EXAMPLES: [(u32, &str); 3] = [
    (
        2,
        "L[-2] + (12/cM) M[-1]L[-1] - (6/cM) Q[-3/2]Q[-1/2] + ((87-6*cL)/cM^2) M[-1]^2",
    ),
    (
        4,
        "L[-4] + (4/cM) M[-1]L[-3] + (3/cM) M[-2]L[-2] + (10/cM^2) M[-1]^2L[-2] \
         + (4/cM) M[-3]L[-1] + (20/cM^2) M[-2]M[-1]L[-1] + (24/cM^3) M[-1]^3L[-1] \
         - (2/cM) Q[-7/2]Q[-1/2] - (6/cM) Q[-5/2]Q[-3/2] - (16/cM^2) M[-1]Q[-5/2]Q[-1/2] \
         + (6/cM^2) M[-2]Q[-3/2]Q[-1/2] - (12/cM^3) M[-1]^2Q[-3/2]Q[-1/2] \
         + ((66-4*cL)/cM^2) M[-3]M[-1] + ((51/4-3*cL/2)/cM^2) M[-2]^2 \
         + ((342-20*cL)/cM^3) M[-2]M[-1]^2 + ((321-18*cL)/cM^4) M[-1]^4",
    ),
    (
        5,
        "L[-5] + (3/cM) M[-1]L[-4] + (2/cM) M[-2]L[-3] + (21/(4*cM^2)) M[-1]^2L[-3] \
         + (2/cM) M[-3]L[-2] + (8/cM^2) M[-2]M[-1]L[-2] + (15/(2*cM^3)) M[-1]^3L[-2] \
         + (3/cM) M[-4]L[-1] + (21/(2*cM^2)) M[-3]M[-1]L[-1] + (4/cM^2) M[-2]^2L[-1] \
         + (45/(2*cM^3)) M[-2]M[-1]^2L[-1] + (45/(4*cM^4)) M[-1]^4L[-1] \
         - (3/(2*cM)) Q[-9/2]Q[-1/2] - (3/cM) Q[-7/2]Q[-3/2] - (27/(4*cM^2)) M[-1]Q[-7/2]Q[-1/2] \
         + (3/(2*cM^2)) M[-3]Q[-3/2]Q[-1/2] - (3/cM^3) M[-2]M[-1]Q[-3/2]Q[-1/2] \
         + (9/(4*cM^4)) M[-1]^3Q[-3/2]Q[-1/2] \
         + ((105/2-3*cL)/cM^2) M[-4]M[-1] + ((31-2*cL)/cM^2) M[-3]M[-2] \
         + ((369/2-21*cL/2)/cM^3) M[-3]M[-1]^2 + ((148-8*cL)/cM^3) M[-2]^2M[-1] \
         + ((1653/4-45*cL/2)/cM^4) M[-2]M[-1]^3 + ((675/4-9*cL)/cM^5) M[-1]^5",
    ),
];

// T_{1,4} carries 324/cM^2 on M[-2]^2; the variant with 108/cM^2 is not
// annihilated by L_2 modulo J'.
const T1R_EXAMPLES: [(u32, &str); 3] = [
    (2, "L[-1]^2 + (6/cM) M[-2]"),
    (3, "L[-1]^3 + (24/cM) M[-2]L[-1] + (12/cM) M[-3]"),
    (
        4,
        "L[-1]^4 + (60/cM) M[-2]L[-1]^2 + (60/cM) M[-3]L[-1] + (36/cM) M[-4] + (324/cM^2) M[-2]^2",
    ),
];

fn paper_examples() -> Vec<(String, Check)> {
    let mut out = Vec::new();
    for (p, want) in S_EXAMPLES {
        out.push(item(format!("S p={p}"), move || {
            Ok(eq_vec(build_s(p, &cfg(p, AlgebraMode::Full))?, want))
        }));
    }
    for (p, want) in R_EXAMPLES {
        out.push(item(format!("R p={p}"), move || {
            Ok(eq_vec(build_r(p, &cfg(p, AlgebraMode::Full))?, want))
        }));
    }
    for (p, want) in T_EXAMPLES {
        out.push(item(format!("T p={p}"), move || {
            Ok(eq_vec(
                build_t(p, &atypical_context(p, 1, AlgebraMode::Full)?)?,
                want,
            ))
        }));
    }
    for (r, want) in T1R_EXAMPLES {
        out.push(item(format!("T_{{1,{r}}}"), move || {
            Ok(eq_vec(
                build_t_pr(1, r, &atypical_context(1, r, AlgebraMode::Full)?)?,
                want,
            ))
        }));
    }
    out.push(item("T_{2,2} - T^2", || {
        let ctx = atypical_context(2, 2, AlgebraMode::Full)?;
        let t22 = build_t_pr(2, 2, &ctx)?;
        let t2 = t_powers(&v(T_EXAMPLES[0].1), 2, ctx.module())?
            .pop()
            .expect("two powers");
        Ok(eq_vec(
            t22.sub(&t2)?,
            "(6/cM) M[-4] + (216/cM^2) M[-3]M[-1] - (5184/cM^4) M[-1]^4",
        ))
    }));
    out.push(item("h_{p,r} values", || {
        let mut ok = h_pr(2, 1) == sc("-cL/8+21/16") && h_pr(2, 2) == sc("-cL/8+5/16");
        for r in 1..=6 {
            ok &= h_pr(1, r) == Scalar::rational(1 - r as i64, 2);
        }
        Ok((ok, String::new()))
    }));
    out.push(item("singular dims p=2", || {
        let vm = VermaModule::new(cfg(2, AlgebraMode::Full))?;
        let dims = (1..=8)
            .map(|l| singular_space(l, &vm).map(|s| s.space.dim()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((dims == [0, 0, 0, 1, 0, 0, 0, 1], format!("{dims:?}")))
    }));
    out
}

fn random_generator<R: Rng>(rng: &mut R, mode: AlgebraMode) -> Generator {
    loop {
        let kind = rng.gen_range(0..3);
        let g = match kind {
            0 => Generator::l(rng.gen_range(-3..=3)),
            1 => Generator::m(rng.gen_range(-3..=3)),
            _ => Generator::q2(2 * rng.gen_range(-3..=2) + 1),
        };
        if g.in_mode(mode) {
            return g;
        }
    }
}

fn properties(max_level2: i32, seed: u64) -> Vec<(String, Check)> {
    let mut out = Vec::new();
    out.push(item("super-Jacobi via action", move || {
        let vm = VermaModule::new(VermaConfig::generic(AlgebraMode::Full))?;
        let mut rng = seeded_rng(seed);
        for _ in 0..200 {
            let x = random_generator(&mut rng, AlgebraMode::Full);
            let y = random_generator(&mut rng, AlgebraMode::Full);
            let level2 = rng.gen_range(0..=6);
            let basis = level_basis(level2, AlgebraMode::Full);
            let m = basis[rng.gen_range(0..basis.len())].clone();
            let d = vm.bracket_defect(x, y, &ModuleVector::monomial(m.clone(), Scalar::one()))?;
            if !d.is_zero() {
                return Ok((false, format!("{x}, {y} on {m}: {d}")));
            }
        }
        Ok((true, String::new()))
    }));
    out.push(item("basis counts vs character", move || {
        let mut ok = true;
        for mode in [AlgebraMode::Full, AlgebraMode::W22] {
            let sizes = basis_sizes(max_level2, mode);
            let ch = verma_series(max_level2, mode);
            for n in 0..=max_level2 {
                let b = level_basis(n, mode).len();
                ok &= b as u64 == sizes[n as usize] && b as i64 == ch.coeff(n);
            }
        }
        Ok((ok, String::new()))
    }));
    out.push(item("order axioms", move || {
        for n in 0..=max_level2.min(10) {
            let b = level_basis(n, AlgebraMode::Full);
            for x in b.iter() {
                for y in b.iter() {
                    if x.cmp(y) != y.cmp(x).reverse() || (x.cmp(y).is_eq() != (x == y)) {
                        return Ok((false, format!("{x} vs {y}")));
                    }
                    for z in b.iter() {
                        if x > y && y > z && x <= z {
                            return Ok((false, format!("{x} > {y} > {z}")));
                        }
                    }
                }
            }
            if !b.windows(2).all(|w| w[0] > w[1]) {
                return Ok((
                    false,
                    format!("basis at level2 {n} not strictly decreasing"),
                ));
            }
        }
        Ok((true, String::new()))
    }));
    out.push(item("redundant annihilators", move || {
        for p in 1..=3u32 {
            for mode in [AlgebraMode::Full, AlgebraMode::W22] {
                let vm = VermaModule::new(cfg(p, mode))?;
                for n in 1..=max_level2 {
                    if let Some(s) = bms_core::singular::predicted_singular(n, p, &vm)? {
                        if !vm.is_singular(&s, None)? || !vm.is_singular_redundant(&s, None)? {
                            return Ok((false, format!("p={p} level2={n} {mode:?}")));
                        }
                    }
                }
            }
        }
        Ok((true, String::new()))
    }));
    for p in [1u32, 3, 5, 7] {
        out.push(item(format!("R^2 = S p={p}"), move || {
            let vm = VermaModule::new(cfg(p, AlgebraMode::Full))?;
            let r2 = power_vector(PowerOp::R, 2, p, &vm)?;
            Ok((r2 == build_s(p, vm.config())?, String::new()))
        }));
    }
    for p in 1..=5u32 {
        out.push(item(format!("closed-form S vs solve p={p}"), move || {
            let vm = VermaModule::new(cfg(p, AlgebraMode::Full))?;
            Ok((build_s(p, vm.config())? == solve_s(p, &vm)?, String::new()))
        }));
    }
    out
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn compare_character(
    p: u32,
    r: Option<u32>,
    mode: AlgebraMode,
    h: &BigRational,
    cutoff2: i32,
) -> Result<(bool, String), Error> {
    let got = computed_graded_dims(p, mode, &rat(7), &rat(2), h, cutoff2)?;
    let want = irreducible_character_mode(p, r, cutoff2, mode);
    Ok((
        got.coeffs == want.coeffs,
        format!("hL = {h}, computed {got}"),
    ))
}

fn characters(max_level2: i32, seed: u64) -> Vec<(String, Check)> {
    let mut out = Vec::new();
    for mode in [AlgebraMode::Full, AlgebraMode::W22] {
        let tag = if mode == AlgebraMode::Full {
            "full"
        } else {
            "w22"
        };
        for p in [1u32, 2] {
            for draw in 0..3u64 {
                out.push(item(
                    format!("{tag} typical p={p} draw {draw}"),
                    move || {
                        let mut rng = seeded_rng(seed.wrapping_add(1000 * p as u64 + draw));
                        let h = draw_generic_hl(&mut rng, p, mode, &rat(7), max_level2);
                        let (ok, d) = compare_character(p, None, mode, &h, max_level2)?;
                        Ok((ok, if ok { String::new() } else { d }))
                    },
                ));
            }
        }
        for (p, r) in [(1u32, 1u32), (1, 2), (2, 1)] {
            out.push(item(format!("{tag} atypical (p,r)=({p},{r})"), move || {
                let cutoff2 = (2 * (r * p + p) as i32).min(max_level2.max(2 * p as i32));
                let h = h_pr_mode(p, r, mode, &Scalar::from_int(7))
                    .as_rational()
                    .expect("rational");
                let (ok, d) = compare_character(p, Some(r), mode, &h, cutoff2)?;
                Ok((ok, if ok { String::new() } else { d }))
            }));
        }
    }
    for k in 0..=3u32 {
        out.push(item(format!("telescoping p=1 k={k}"), move || {
            let mut rng = seeded_rng(seed.wrapping_add(77));
            let h = draw_generic_hl(&mut rng, 1, AlgebraMode::Full, &rat(7), max_level2);
            let c = VermaConfig::reducible_at(
                1,
                AlgebraMode::Full,
                Scalar::from_int(7),
                Scalar::from_int(2),
                Scalar::from_ratio(&h),
            )?;
            let (got, want) = telescoping_layer(k, &VermaModule::new(c)?, max_level2)?;
            Ok((got.coeffs == want.coeffs, format!("computed {got}")))
        }));
    }
    out
}

fn composition() -> Vec<(String, Check)> {
    let mut out = Vec::new();
    for (p, r) in [(1u32, 1u32), (1, 2), (2, 1), (2, 2), (3, 1)] {
        out.push(item(format!("identities (p,r)=({p},{r})"), move || {
            let checks = composition_checks(p, r, &atypical_context(p, r, AlgebraMode::Full)?)?;
            let bad: Vec<String> = checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name.clone())
                .collect();
            Ok((bad.is_empty(), bad.join("; ")))
        }));
        out.push(item(format!("necessity (p,r)=({p},{r})"), move || {
            let g = necessity_polynomial(p, r, AlgebraMode::Full)?;
            let root = linear_root_in_hl(&g);
            Ok((root == Some(h_pr(p, r)), format!("obstruction {g}")))
        }));
    }
    out.push(item("S T^2 in J' p=2", || {
        let c = s_t_vanishing(2, 2)?;
        Ok((c.pass, c.detail))
    }));
    out.push(item("w22 T p=2", || {
        let ctx = atypical_context(2, 1, AlgebraMode::W22)?;
        let t = build_t(2, &ctx)?;
        let wrong = VermaConfig::reducible(2, AlgebraMode::W22)?.with_h_l(h_pr(2, 1));
        let rejected = build_t(
            2,
            &bms_core::subsingular::QuotientContext::from_config(wrong)?,
        )
        .is_err();
        Ok((
            t.is_even_only() && rejected && ctx.config().h_l == h_pr_w22(2, 1),
            format!("{t}"),
        ))
    }));
    out
}
