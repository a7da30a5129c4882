use bms_core::liealg::{AlgebraMode, Generator};
use bms_core::pbw::level_basis;
use bms_core::vector::ModuleVector;
use bms_core::verma::{VermaConfig, VermaModule};
use bms_core::Scalar;
use proptest::prelude::*;

fn small_scalar() -> impl Strategy<Value = Scalar> {
    let atom = prop_oneof![
        (-9i64..=9).prop_map(Scalar::from_int),
        Just(Scalar::c_l()),
        Just(Scalar::c_m()),
        Just(Scalar::h_l()),
        Just(Scalar::h_m()),
    ];
    (atom.clone(), atom.clone(), atom, 1i64..=5).prop_map(|(a, b, c, d)| {
        let num = &(&a * &b) + &c;
        num.checked_div(&(&Scalar::c_m() + &Scalar::from_int(d)))
            .unwrap()
    })
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (-3i32..=3).prop_map(Generator::l),
        (-3i32..=3).prop_map(Generator::m),
        (-3i32..=2).prop_map(|k| Generator::q2(2 * k + 1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in small_scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn action_is_a_representation(x in generator(), y in generator(), level2 in 0i32..=6, pick in 0usize..1000) {
        let vm = VermaModule::new(VermaConfig::generic(AlgebraMode::Full)).unwrap();
        let b = level_basis(level2, AlgebraMode::Full);
        let m = b[pick % b.len()].clone();
        let d = vm.bracket_defect(x, y, &ModuleVector::monomial(m, Scalar::one())).unwrap();
        prop_assert!(d.is_zero());
    }

    #[test]
    fn order_is_total(level2 in 0i32..=10, i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let b = level_basis(level2, AlgebraMode::Full);
        let (x, y, z) = (&b[i % b.len()], &b[j % b.len()], &b[k % b.len()]);
        prop_assert_eq!(x.cmp(y), y.cmp(x).reverse());
        prop_assert_eq!(x.cmp(y).is_eq(), x == y);
        if x > y && y > z {
            prop_assert!(x > z);
        }
    }

    #[test]
    fn vector_round_trips(level2 in 1i32..=6, cs in proptest::collection::vec(small_scalar(), 1..4)) {
        let b = level_basis(level2, AlgebraMode::Full);
        let mut w = ModuleVector::zero(level2);
        for (m, c) in b.iter().zip(cs) {
            w.add_term(m.clone(), c);
        }
        prop_assert_eq!(ModuleVector::from_json(&w.to_json()).unwrap(), w.clone());
        if !w.is_zero() {
            let back: ModuleVector = w.to_string().parse().unwrap();
            prop_assert_eq!(back, w);
        }
    }
}
