mod common;

use common::{cube_of_weighted_mass, direct_moments, direct_quadratic, random_gamma};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use realiz_core::generators::{random_measure, Lcg};
use realiz_core::poly::ratio_bound;
use realiz_core::rational::{int, ratio};
use realiz_core::{
    enumerate_configurations, power_moments, Configuration, KSpec, MomentFunctional, MomentTensor,
    Polynomial, Rational, SiteSpace,
};

fn random_polynomial(rng: &mut Lcg, n: usize, degree: usize) -> Polynomial {
    let levels = (0..=degree)
        .map(|j| {
            if j == 0 {
                MomentTensor::scalar_in(rng.rational(-4, 4, 3), n)
            } else {
                let entries = (0..n.pow(j as u32)).map(|_| rng.rational(-4, 4, 3)).collect();
                MomentTensor::from_entries(j, n, entries).unwrap()
            }
        })
        .collect();
    Polynomial::new(n, levels).unwrap()
}

proptest! {
    #[test]
    fn product_law(seed in any::<u64>(), n in 1usize..=3, dp in 0usize..=3, counts in prop::collection::vec(0u32..=4, 3)) {
        let mut rng = Lcg::new(seed);
        let dq = (rng.below(4) as usize).min(3 - dp);
        let p = random_polynomial(&mut rng, n, dp);
        let q = random_polynomial(&mut rng, n, dq);
        let eta = Configuration::new(counts[..n].to_vec());
        let pq = p.multiply(&q).unwrap();
        prop_assert!(pq.degree() <= dp + dq);
        prop_assert_eq!(pq.evaluate(&eta).unwrap(), p.evaluate(&eta).unwrap() * q.evaluate(&eta).unwrap());
        prop_assert_eq!(q.multiply(&p).unwrap(), pq);
    }

    #[test]
    fn functional_of_measure_integrates(seed in any::<u64>(), n in 1usize..=3, q in 0u32..=3, degree in 0usize..=3) {
        let space = SiteSpace::anonymous(n).unwrap();
        let mu = random_measure(&space, &KSpec::AtMostQ { q }, seed).unwrap();
        let l = MomentFunctional::new(power_moments(&mu, 3).unwrap()).unwrap();
        let mut rng = Lcg::new(seed ^ 0x9e37);
        let p = random_polynomial(&mut rng, n, degree);
        let direct = mu.support().iter().fold(Rational::zero(), |acc, (c, w)| acc + w * p.evaluate(c).unwrap());
        prop_assert_eq!(l.apply(&p).unwrap(), direct);
        let (l0, l1, l2) = direct_moments(n, mu.support());
        prop_assert_eq!(l.ell0(), &l0);
        prop_assert_eq!(l.ell1().entries(), l1.as_slice());
        let l2 = l2.concat();
        prop_assert_eq!(l.ell2().entries(), l2.as_slice());
    }

    #[test]
    fn ratio_bound_dominates(seed in any::<u64>(), n in 1usize..=3, degree in 0usize..=2) {
        let mut rng = Lcg::new(seed);
        let b = random_polynomial(&mut rng, n, degree);
        let gamma = random_gamma(&mut rng, n);
        let lambda = ratio_bound(&b, &gamma).unwrap();
        let space = SiteSpace::anonymous(n).unwrap();
        let f0 = b.coefficient(0).unwrap().entries()[0].clone();
        let f1 = b.coefficient(1).unwrap().entries().to_vec();
        let f2 = b.coefficient(2).unwrap().entries().to_vec();
        for eta in enumerate_configurations(&space, &KSpec::AtMostQ { q: 6 }).unwrap() {
            let v = direct_quadratic(&f0, &f1, &f2, &eta.counts);
            prop_assert_eq!(&v, &b.evaluate(&eta).unwrap());
            prop_assert!(v.abs() <= &lambda * (int(1) + cube_of_weighted_mass(&gamma, &eta.counts)));
        }
    }
}

#[test]
fn degree_four_products_are_rejected() {
    let p = Polynomial::quadratic(int(0), vec![int(1)], vec![vec![int(1)]]).unwrap();
    assert!(p.multiply(&p).is_err());
}

#[test]
fn quadratic_functional_cannot_pair_with_cubic() {
    let l = MomentFunctional::quadratic(int(1), vec![int(1)], vec![vec![int(2)]]).unwrap();
    let cubic = Polynomial::new(
        1,
        vec![
            MomentTensor::scalar_in(int(0), 1),
            MomentTensor::vector(vec![int(0)]),
            MomentTensor::from_entries(2, 1, vec![int(0)]).unwrap(),
            MomentTensor::from_entries(3, 1, vec![int(1)]).unwrap(),
        ],
    )
    .unwrap();
    assert!(l.apply(&cubic).is_err());
}

/// For every pair of distinct configurations there is a quadratic that
/// vanishes on one and is positive on the other: `|k - a|²`.
#[test]
fn quadratics_separate_configurations() {
    for n in 1..=3usize {
        let space = SiteSpace::anonymous(n).unwrap();
        let all = enumerate_configurations(&space, &KSpec::AtMostQ { q: 3 }).unwrap();
        for a in &all {
            let ka: Vec<Rational> = a.counts.iter().map(|&c| int(i64::from(c))).collect();
            let f0 = ka.iter().fold(Rational::zero(), |acc, v| acc + v * v);
            let f1: Vec<Rational> = ka.iter().map(|v| v * int(-2)).collect();
            let f2: Vec<Vec<Rational>> = (0..n)
                .map(|x| (0..n).map(|y| if x == y { int(1) } else { int(0) }).collect())
                .collect();
            let p = Polynomial::quadratic(f0, f1, f2).unwrap();
            for b in &all {
                let v = p.evaluate(b).unwrap();
                assert_eq!(v.is_zero(), a == b, "{a} vs {b}");
                assert!(!v.is_negative());
            }
        }
    }
}

#[test]
fn single_site_ratio_bound_example() {
    let b = Polynomial::quadratic(int(0), vec![int(0)], vec![vec![int(1)]]).unwrap();
    assert_eq!(ratio_bound(&b, &[int(1)]).unwrap(), int(1));
    let best = (0..=10)
        .map(|k| ratio(k * k, 1 + k * k * k))
        .max()
        .unwrap();
    assert_eq!(best, ratio(1, 2));
}
