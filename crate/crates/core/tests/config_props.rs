mod common;

use common::{binomial, naive_configurations, random_space};
use proptest::prelude::*;
use realiz_core::generators::Lcg;
use realiz_core::rational::ratio;
use realiz_core::{
    count_configurations, enumerate_configurations, enumerate_configurations_with_cap, Error,
    KSpec, SiteSpace,
};

proptest! {
    #[test]
    fn enumeration_matches_naive_filter(seed in any::<u64>(), n in 1usize..=4, q in 0u32..=4, kind in 0u8..4) {
        let mut rng = Lcg::new(seed);
        let space = random_space(&mut rng, n);
        let kspec = match kind {
            0 => KSpec::AtMostQ { q },
            1 => KSpec::ExactlyQ { q },
            2 => KSpec::Simple { q },
            _ => KSpec::HardCore { d: ratio(rng.range(1, 5), 2), q },
        };
        let got = enumerate_configurations(&space, &kspec).unwrap();
        prop_assert!(got.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(&got, &naive_configurations(&space, &kspec));
        prop_assert_eq!(count_configurations(&space, &kspec).unwrap(), got.len() as u128);
        prop_assert!(got.iter().all(|c| kspec.contains(&space, c)));
    }

    #[test]
    fn exactly_q_is_the_mass_q_slice(n in 1usize..=4, q in 0u32..=4) {
        let space = SiteSpace::anonymous(n).unwrap();
        let exact = enumerate_configurations(&space, &KSpec::ExactlyQ { q }).unwrap();
        let sliced: Vec<_> = enumerate_configurations(&space, &KSpec::AtMostQ { q })
            .unwrap()
            .into_iter()
            .filter(|c| c.total_mass() == u64::from(q))
            .collect();
        prop_assert_eq!(exact, sliced);
    }

    #[test]
    fn hardcore_within_simple_within_at_most(seed in any::<u64>(), n in 1usize..=4, q in 0u32..=3) {
        let mut rng = Lcg::new(seed);
        let space = random_space(&mut rng, n);
        let d = ratio(rng.range(1, 5), 2);
        let hard = enumerate_configurations(&space, &KSpec::HardCore { d, q }).unwrap();
        let simple = enumerate_configurations(&space, &KSpec::Simple { q }).unwrap();
        let free = enumerate_configurations(&space, &KSpec::AtMostQ { q }).unwrap();
        prop_assert!(hard.iter().all(|c| simple.contains(c)));
        prop_assert!(simple.iter().all(|c| free.contains(c)));
    }
}

#[test]
fn at_most_q_count_is_binomial() {
    for n in 1..=6usize {
        let space = SiteSpace::anonymous(n).unwrap();
        for q in 0..=5u32 {
            let expected = binomial((n as u64) + u64::from(q), u64::from(q));
            assert_eq!(count_configurations(&space, &KSpec::AtMostQ { q }).unwrap(), expected);
            assert_eq!(
                enumerate_configurations(&space, &KSpec::AtMostQ { q }).unwrap().len() as u128,
                expected
            );
        }
    }
}

#[test]
fn two_sites_at_most_three_has_ten_configurations() {
    let space = SiteSpace::anonymous(2).unwrap();
    let all = enumerate_configurations(&space, &KSpec::AtMostQ { q: 3 }).unwrap();
    assert_eq!(all.len(), 10);
    assert_eq!(all[0].counts, vec![0, 0]);
    assert_eq!(all[9].counts, vec![3, 0]);
}

#[test]
fn cap_is_enforced_before_enumeration() {
    let space = SiteSpace::anonymous(6).unwrap();
    let err = enumerate_configurations_with_cap(&space, &KSpec::AtMostQ { q: 5 }, 100).unwrap_err();
    assert_eq!(err, Error::CapExceeded { predicted: 462, cap: 100 });
}
