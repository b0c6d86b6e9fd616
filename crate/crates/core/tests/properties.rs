use proptest::prelude::*;

use cyclic_wonderful::exact::{format_rational, parse_rational, ratio, Rational};
use cyclic_wonderful::lattice::{chain_intersect, ArrangementSpec, Chain, DecoratedSubset};
use cyclic_wonderful::normal::in_delta;
use cyclic_wonderful::sample::{Lcg, INCREMENT, MULTIPLIER};
use cyclic_wonderful::tropical::{combinatorial_type, curve_from_point, embed, in_support};

fn spec_strategy() -> impl Strategy<Value = ArrangementSpec> {
    (2u32..=4, 1usize..=3).prop_map(|(r, n)| ArrangementSpec::new(r, n).unwrap())
}

fn subset(spec: &ArrangementSpec) -> impl Strategy<Value = DecoratedSubset> {
    let r = spec.r();
    proptest::collection::vec(proptest::option::of(0..r), spec.n()).prop_map(|slots| {
        let entries = slots
            .into_iter()
            .enumerate()
            .filter_map(|(k, a)| a.map(|a| (k + 1, a)))
            .collect();
        DecoratedSubset::new(entries).unwrap()
    })
}

fn spec_and_subsets() -> impl Strategy<Value = (ArrangementSpec, DecoratedSubset, DecoratedSubset, DecoratedSubset)> {
    spec_strategy().prop_flat_map(|s| {
        let (a, b, c) = (subset(&s), subset(&s), subset(&s));
        (Just(s), a, b, c)
    })
}

proptest! {
    #[test]
    fn leq_is_a_partial_order((_, a, b, c) in spec_and_subsets()) {
        prop_assert!(a.leq(&a));
        if a.leq(&b) && b.leq(&a) {
            prop_assert_eq!(&a, &b);
        }
        if a.leq(&b) && b.leq(&c) {
            prop_assert!(a.leq(&c));
        }
    }

    #[test]
    fn join_is_least_upper_bound((_, a, b, c) in spec_and_subsets()) {
        prop_assert_eq!(a.join(&b), b.join(&a));
        match a.join(&b) {
            Some(j) => {
                prop_assert!(a.leq(&j) && b.leq(&j));
                if a.leq(&c) && b.leq(&c) {
                    prop_assert!(j.leq(&c));
                }
            }
            None => prop_assert!(!(a.leq(&c) && b.leq(&c))),
        }
    }

    #[test]
    fn subset_text_round_trip((_, a, _, _) in spec_and_subsets()) {
        let back: DecoratedSubset = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn chain_intersection_laws(s in spec_strategy(), seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let (a, b) = (rng.chain(&s), rng.chain(&s));
        prop_assert_eq!(chain_intersect(&a, &a), a.clone());
        prop_assert_eq!(chain_intersect(&a, &b), chain_intersect(&b, &a));
        let m = chain_intersect(&a, &b);
        prop_assert_eq!(chain_intersect(&m, &a), m.clone());
        prop_assert_eq!(chain_intersect(&a, &Chain::empty()), Chain::empty());
        let back: Chain = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn tropical_round_trip_and_scaling(s in spec_strategy(), seed in any::<u64>(), num in 1i64..20, den in 1i64..20) {
        let mut rng = Lcg::new(seed);
        let c = rng.curve(&s, 5);
        let p = embed(&c, &s);
        prop_assert!(in_support(&p, &s));
        prop_assert_eq!(curve_from_point(&p, &s), Some(c.clone()));
        let lambda = ratio(num, den);
        prop_assert_eq!(combinatorial_type(&c.scaled(&lambda), &s), combinatorial_type(&c, &s));
    }

    #[test]
    fn delta_region_is_star_shaped(s in spec_strategy(), seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let p = embed(&rng.curve(&s, s.n() as u32 + 1), &s);
        prop_assert!(in_delta(&vec![Rational::from_integer(0.into()); s.dim()], &s));
        if in_delta(&p, &s) {
            let half: Vec<Rational> = p.iter().map(|x| x * ratio(1, 2)).collect();
            prop_assert!(in_delta(&half, &s));
        }
        let q = rng.rational_point(&s, 3, 3);
        if !in_support(&q, &s) {
            prop_assert!(!in_delta(&q, &s));
        }
    }

    #[test]
    fn rational_text_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let x = ratio(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn lcg_follows_its_recurrence(seed in any::<u64>(), bound in 1u32..1000) {
        let mut rng = Lcg::new(seed);
        let state = seed.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        prop_assert_eq!(rng.next_u32(), (state >> 32) as u32);
        let again = Lcg::new(seed).below(bound);
        prop_assert_eq!(again, Lcg::new(seed).next_u32() % bound);
        prop_assert!(rng.below(bound) < bound);
    }
}

#[test]
fn lcg_seed_zero_stream() {
    let mut rng = Lcg::new(0);
    let first: Vec<u32> = (0..3).map(|_| rng.next_u32()).collect();
    let mut x = 0u64;
    let expected: Vec<u32> = (0..3)
        .map(|_| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (x >> 32) as u32
        })
        .collect();
    assert_eq!(first, expected);
}
