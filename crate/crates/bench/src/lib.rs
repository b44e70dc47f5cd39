//! Fixed workloads shared by the benchmarks.

use realiz_core::generators::{instance_from_measure, random_measure, Lcg};
use realiz_core::lp::{LinearProgram, RowSense};
use realiz_core::rational::int;
use realiz_core::{KSpec, MomentFunctional, RealizabilityInstance, SiteSpace};

/// Sites on a line with unit spacing.
pub fn line(n: usize) -> SiteSpace {
    let distances = (0..n)
        .map(|i| (0..n).map(|j| int(i.abs_diff(j) as i64)).collect())
        .collect();
    SiteSpace::with_distances((0..n).map(|i| format!("s{i}")).collect(), distances).unwrap()
}

/// Moments of a seeded random measure on `AtMostQ(q)`, so a measure exists.
pub fn realizable(n: usize, q: u32, seed: u64) -> RealizabilityInstance {
    let space = line(n);
    let kspec = KSpec::AtMostQ { q };
    let mu = random_measure(&space, &kspec, seed).unwrap();
    instance_from_measure(&mu, &space, &kspec, Some(vec![int(1); n])).unwrap()
}

/// A functional with a negative variance, so only a certificate exists.
pub fn unrealizable(n: usize, q: u32) -> RealizabilityInstance {
    let ell1 = vec![int(1); n];
    let ell2 = (0..n)
        .map(|x| (0..n).map(|y| if x == y { int(0) } else { int(1) }).collect())
        .collect();
    let l = MomentFunctional::quadratic(int(1), ell1, ell2).unwrap();
    RealizabilityInstance::new(line(n), KSpec::AtMostQ { q }, l).unwrap()
}

/// Dense random system `A x = b` of the given shape.
pub fn random_lp(rows: usize, cols: usize, seed: u64) -> LinearProgram {
    let mut rng = Lcg::new(seed);
    let a = (0..rows)
        .map(|_| (0..cols).map(|_| rng.rational(-4, 4, 3)).collect())
        .collect();
    let b = (0..rows).map(|_| rng.rational(0, 4, 3)).collect();
    LinearProgram::new(a, b, vec![RowSense::Eq; rows]).unwrap()
}
