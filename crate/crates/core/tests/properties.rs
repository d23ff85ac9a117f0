use proptest::prelude::*;

use regulus::oracle::{multipartition_counts, RegularityProfile};
use regulus::series::euler_e;
use regulus::suite::profile_coefficients;
use regulus::{ModSeries, ZSeries, Zmod, ZZ};

fn zseries(max_order: usize) -> impl Strategy<Value = ZSeries> {
    prop::collection::vec(-50i64..50, 1..=max_order + 1)
        .prop_map(|v| ZSeries::from_i64s(ZZ::new(), &v))
}

fn mseries(m: u64, order: usize) -> impl Strategy<Value = ModSeries> {
    prop::collection::vec(0i64..m as i64, order + 1)
        .prop_map(move |v| ModSeries::from_i64s(Zmod::new(m).unwrap(), &v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_over_z(a in zseries(24), b in zseries(24), c in zseries(24)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.mul(&a).unwrap());
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, ab.add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.sub(&a).unwrap(), ZSeries::zero(ZZ::new(), a.order()));
    }

    #[test]
    fn ring_axioms_mod_m((a, b, c) in prop::sample::select(vec![2u64, 3, 10, 35, 55])
        .prop_flat_map(|m| (mseries(m, 30), mseries(m, 30), mseries(m, 30)))) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.mul(&a).unwrap());
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, ab.add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(tail in prop::collection::vec(-20i64..20, 0..40), sign in prop::bool::ANY) {
        let mut v = vec![if sign { 1 } else { -1 }];
        v.extend(tail);
        let a = ZSeries::from_i64s(ZZ::new(), &v);
        let inv = a.invert().unwrap();
        let one = ZSeries::one(ZZ::new(), a.order());
        prop_assert_eq!(a.mul(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.mul(&a).unwrap(), one);
    }

    #[test]
    fn inverse_mod_prime(v in prop::collection::vec(0i64..7, 1..40)) {
        let ring = Zmod::new(7).unwrap();
        let a = ModSeries::from_i64s(ring, &v);
        match a.invert() {
            Ok(inv) => prop_assert_eq!(inv.mul(&a).unwrap(), ModSeries::one(ring, a.order())),
            Err(_) => prop_assert_eq!(v[0], 0),
        }
    }

    #[test]
    fn euler_dilation(k in 1usize..8, m in 1usize..6, order in 1usize..60) {
        let ring = ZZ::new();
        let dilated = euler_e(&ring, m, order).dilate(k);
        prop_assert_eq!(euler_e(&ring, k * m, dilated.order()), dilated);
    }

    #[test]
    fn progressions_reassemble(s in zseries(80), step in 1usize..9) {
        let order = s.order();
        let mut acc = ZSeries::zero(ZZ::new(), order);
        for r in 0..step.min(order + 1) {
            let part = s.extract_progression(step, r).unwrap().dilate(step).shift(r).truncate(order);
            acc = acc.add(&part).unwrap();
        }
        prop_assert_eq!(acc, s);
    }

    #[test]
    fn oracle_permutation_invariance(mut ells in prop::collection::vec(2u32..9, 1..5), rot in 0usize..4) {
        let a = multipartition_counts(&RegularityProfile::new(ells.clone()).unwrap(), 40).unwrap();
        let len = ells.len();
        ells.rotate_left(rot % len);
        ells.reverse();
        let b = multipartition_counts(&RegularityProfile::new(ells).unwrap(), 40).unwrap();
        prop_assert_eq!(a.values, b.values);
    }

    #[test]
    fn series_matches_oracle(ells in prop::collection::vec(2u32..12, 1..6)) {
        let profile = RegularityProfile::new(ells).unwrap();
        let oracle = multipartition_counts(&profile, 60).unwrap();
        prop_assert_eq!(profile_coefficients(&profile, 60).unwrap(), oracle.values);
    }
}
