use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use corank::classmass::Family;
use corank::cyclo::CycNum;
use corank::gates::{element_predicate, is_order_unit, ElementKind, OrderKind, Quaternion};
use corank::graph::{
    enumerate_group, random_action, verify_mass_multiplicativity, RandomTreeParams,
};
use corank::interval::Interval;
use corank::report::{
    bound_record, bound_rows, gate_pair_failures, mass_record, subgroup_mass_failures,
    tree_action_failures, ReportRecord,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn contains(i: &Interval, q: &BigRational) -> bool {
    &i.lo().to_rational() <= q && q <= &i.hi().to_rational()
}

fn cyc(m: u64) -> impl Strategy<Value = CycNum> {
    proptest::collection::vec(-5i64..6, 0..(m as usize)).prop_map(move |v| CycNum::from_i64s(m, &v))
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn word() -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('H'), Just('T'), Just('t')], 0..12)
        .prop_map(|v| v.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interval_arithmetic_encloses(a in rational(), b in rational(), prec in 16u64..200) {
        let (ia, ib) = (Interval::from_rational(&a, prec), Interval::from_rational(&b, prec));
        prop_assert!(contains(&ia, &a));
        prop_assert!(contains(&ia.add(&ib), &(&a + &b)));
        prop_assert!(contains(&ia.sub(&ib), &(&a - &b)));
        prop_assert!(contains(&ia.mul(&ib), &(&a * &b)));
        if b != BigRational::from_integer(0.into()) {
            prop_assert!(contains(&ia.div(&ib), &(&a / &b)));
        }
    }

    #[test]
    fn exp_ln_consistent(p in -300i64..300) {
        let x = BigRational::new(p.into(), 100.into());
        let ix = Interval::from_rational(&x, 128);
        prop_assert!(contains(&ix.exp().ln(), &x));
        let one = ix.exp().mul(&ix.neg().exp());
        prop_assert!(contains(&one, &BigRational::from_integer(1.into())));
    }

    #[test]
    fn cyclotomic_ring_laws((x, y, z) in prop_oneof![Just(8u64), Just(12), Just(16), Just(24)].prop_flat_map(|m| (cyc(m), cyc(m), cyc(m)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).abs_norm(), x.abs_norm() * y.abs_norm());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn set_action_mass_multiplicativity(n in 2usize..7, g1 in perm(6), g2 in perm(6), pick in any::<prop::sample::Index>()) {
        let restrict = |p: &Vec<usize>| -> Vec<usize> {
            // keep the permutation's action on the first n points when it preserves them
            let q: Vec<usize> = p.iter().copied().take(n).collect();
            if q.iter().all(|&x| x < n) { q } else { (0..n).collect() }
        };
        let gens = vec![restrict(&g1), restrict(&g2)];
        let elements = enumerate_group(n, &gens).unwrap();
        let h = vec![pick.get(&elements).clone()];
        prop_assert!(verify_mass_multiplicativity(n, &gens, &h).unwrap());
    }

    #[test]
    fn tree_action_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_action(&mut rng, RandomTreeParams::default());
        let bad = tree_action_failures(&a).unwrap();
        prop_assert!(bad.is_empty(), "{:?}", bad);
        let bad = subgroup_mass_failures(&mut rng, &a).unwrap();
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn gate_identities(w1 in word(), w2 in word(), n in prop_oneof![Just(8u64), Just(16), Just(24)]) {
        let bad = gate_pair_failures(&w1, &w2, n).unwrap();
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

}

/// Random quaternions with coordinates (a + b·r)/2^e, r = √2 or 1 + √3;
/// returns (units of the standard maximal order, ramifying units).
fn random_unit_search(n: u64, samples: usize, seed: u64) -> (usize, usize) {
    use rand::Rng;
    let r = corank::gates::alpha(n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut units, mut ramifying) = (0, 0);
    for _ in 0..samples {
        let halve = rng.gen_bool(0.5);
        let c: Vec<CycNum> = (0..4)
            .map(|_| {
                let x = &CycNum::integer(n, rng.gen_range(-2..=2))
                    + &r.scale(&BigRational::from_integer(rng.gen_range(-2..=2).into()));
                if halve {
                    x.scale(&BigRational::new(1.into(), 2.into()))
                } else {
                    x
                }
            })
            .collect();
        let q = Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()).unwrap();
        if q.norm().is_zero() || !is_order_unit(&q, OrderKind::Mtilde).unwrap() {
            continue;
        }
        units += 1;
        ramifying += element_predicate(&q, ElementKind::Ramifying).unwrap() as usize;
    }
    (units, ramifying)
}

#[test]
fn no_ramifying_units_for_powers_of_two() {
    for n in [8u64, 16, 32] {
        let (units, ramifying) = random_unit_search(n, 20_000, n);
        assert!(units > 50, "n={n}: only {units} units sampled");
        assert_eq!(ramifying, 0, "n={n}");
    }
}

#[test]
fn random_search_finds_ramifying_units_at_twelve() {
    let (units, ramifying) = random_unit_search(12, 20_000, 12);
    assert!(
        units > 50 && ramifying > 0,
        "{units} units, {ramifying} ramifying"
    );
}

#[test]
fn ramifying_units_exist_at_twelve() {
    let g = corank::gates::embed_cm(&(&CycNum::one(12) + &CycNum::zeta(12)));
    assert!(element_predicate(&g, ElementKind::Ramifying).unwrap());
    // 2 + √3 = ((1 + √3)/√2)² once √2 is in the real subfield
    let g24 = corank::gates::embed_cm(&(&CycNum::one(24) + &CycNum::zeta_pow(24, 2)));
    assert!(!element_predicate(&g24, ElementKind::Ramifying).unwrap());
}

#[test]
fn mass_records_roundtrip() {
    for n in [8u64, 12, 16, 24, 32, 48] {
        let r = mass_record(n).unwrap();
        let back = ReportRecord::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        for (k, v) in &r.outputs {
            let q = back.rational(k).unwrap();
            assert_eq!(corank::util::fmt_rational(&q), v.as_str().unwrap());
        }
    }
}

#[test]
fn bound_records_roundtrip() {
    for row in bound_rows(Family::ThreePow2, 3..=4).unwrap() {
        let r = bound_record(&row);
        assert_eq!(ReportRecord::from_json(&r.to_json()).unwrap(), r);
    }
}

#[test]
fn mass_is_positive_and_small_cases_exact() {
    let r = mass_record(16).unwrap();
    assert!(r.rational("M").unwrap() > BigRational::from_integer(BigInt::from(0)));
}
