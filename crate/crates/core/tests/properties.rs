use proptest::prelude::*;

use mutcalc::bbw::{bbw_factor, FactorWeight, HomFactor};
use mutcalc::kmut::{mutate_left, mutate_right, KClass};
use mutcalc::replay::{bundled, Scenario};
use mutcalc::varieties::{build_variety, Variety};
use mutcalc::weights::{tensor_rank2, weyl_dim, Weight};

fn ambient() -> &'static dyn Variety {
    static V: std::sync::OnceLock<Box<dyn Variety>> = std::sync::OnceLock::new();
    V.get_or_init(|| build_variety("Gr24xP3", 1).unwrap()).as_ref()
}

fn dominant(len: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #[test]
    fn dualize_is_an_involution(v in prop::collection::vec(-9i64..=9, 0..6)) {
        let w = Weight::new(v);
        prop_assert_eq!(w.dualize().dualize(), w);
    }

    #[test]
    fn dualize_preserves_dimension(v in dominant(4, -5, 5)) {
        let w = Weight::new(v);
        prop_assert_eq!(weyl_dim(&w).unwrap(), weyl_dim(&w.dualize()).unwrap());
    }

    #[test]
    fn rank2_tensor_is_commutative_and_multiplicative(a in dominant(2, -4, 4), b in dominant(2, -4, 4)) {
        let (a, b) = (Weight::new(a), Weight::new(b));
        let ab = tensor_rank2(&a, &b).unwrap();
        prop_assert_eq!(&ab, &tensor_rank2(&b, &a).unwrap());
        prop_assert_eq!(ab.dim().unwrap(), weyl_dim(&a).unwrap() * weyl_dim(&b).unwrap());
    }

    #[test]
    fn bbw_on_gr24_is_concentrated(sub in dominant(2, -5, 5), quo in dominant(2, -5, 5)) {
        let f = HomFactor::gr24("Gr(2,4)");
        let h = bbw_factor(&f, &FactorWeight::new(sub, quo)).unwrap();
        prop_assert!(h.dims().len() <= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn left_then_right_mutation_is_identity_on_the_orthogonal(i in 0usize..24, j in 0usize..24, k in -3i64..=3) {
        let lat = ambient().lattice();
        let (lo, hi) = (i.min(j), i.max(j));
        prop_assume!(lo != hi);
        let e = KClass::unit(24, lo);
        let f = KClass::unit(24, hi).scale(k);
        let back = mutate_right(lat, &e, &mutate_left(lat, &e, &f).unwrap()).unwrap();
        prop_assert!(back.same(&f));
    }
}

#[test]
fn scenario_json_round_trip() {
    for name in ["A", "B", "C", "D"] {
        let sc = Scenario::parse(bundled(name).unwrap().text).unwrap();
        assert_eq!(Scenario::load(&sc.to_json()).unwrap(), sc);
    }
}
