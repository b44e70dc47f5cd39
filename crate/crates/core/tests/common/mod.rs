//! Brute-force oracles shared by the integration suites. None of these call
//! into the code paths they are used to check.

#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use realiz_core::generators::Lcg;
use realiz_core::lp::RowSense;
use realiz_core::rational::{int, ratio};
use realiz_core::{Configuration, KSpec, Rational, SiteSpace};

/// Every vector in `[0, Q]^n`, in odometer order, filtered by a direct
/// reading of the admissibility rules.
pub fn naive_configurations(space: &SiteSpace, kspec: &KSpec) -> Vec<Configuration> {
    let n = space.len();
    let q = kspec.cap();
    let mut out = Vec::new();
    let mut counts = vec![0u32; n];
    loop {
        if naive_admissible(space, kspec, &counts) {
            out.push(Configuration::new(counts.clone()));
        }
        let Some(pos) = (0..n).rev().find(|&i| counts[i] < q) else {
            break;
        };
        counts[pos] += 1;
        for c in counts[pos + 1..].iter_mut() {
            *c = 0;
        }
    }
    out
}

pub fn naive_admissible(space: &SiteSpace, kspec: &KSpec, counts: &[u32]) -> bool {
    let mass: u32 = counts.iter().sum();
    match kspec {
        KSpec::AtMostQ { q } => mass <= *q,
        KSpec::ExactlyQ { q } => mass == *q,
        KSpec::Simple { q } => mass <= *q && counts.iter().all(|&c| c <= 1),
        KSpec::HardCore { d, q } => {
            // Expand into individual particles and compare every pair.
            let particles: Vec<usize> = counts
                .iter()
                .enumerate()
                .flat_map(|(s, &c)| std::iter::repeat_n(s, c as usize))
                .collect();
            let dist = space.distances().expect("hard-core needs distances");
            mass <= *q
                && (0..particles.len()).all(|i| {
                    (i + 1..particles.len()).all(|j| dist[particles[i]][particles[j]] > *d)
                })
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// `η^{⊙n}` by labelling every particle and enumerating ordered tuples of
/// pairwise distinct particles. Returns row-major entries.
pub fn labeled_factorial_power(counts: &[u32], order: usize) -> Vec<i64> {
    let dim = counts.len();
    let particles: Vec<usize> = counts
        .iter()
        .enumerate()
        .flat_map(|(s, &c)| std::iter::repeat_n(s, c as usize))
        .collect();
    let mut out = vec![0i64; dim.pow(order as u32)];
    let mut chosen = Vec::with_capacity(order);
    fn rec(particles: &[usize], order: usize, dim: usize, chosen: &mut Vec<usize>, out: &mut [i64]) {
        if chosen.len() == order {
            let offset = chosen.iter().fold(0, |acc, &p| acc * dim + particles[p]);
            out[offset] += 1;
            return;
        }
        for p in 0..particles.len() {
            if !chosen.contains(&p) {
                chosen.push(p);
                rec(particles, order, dim, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(&particles, order, dim, &mut chosen, &mut out);
    out
}

/// `η^{⊗n}` entries by direct product.
pub fn direct_tensor_power(counts: &[u32], order: usize) -> Vec<i64> {
    let dim = counts.len();
    (0..dim.pow(order as u32))
        .map(|mut offset| {
            let mut v = 1i64;
            for _ in 0..order {
                v *= i64::from(counts[offset % dim]);
                offset /= dim;
            }
            v
        })
        .collect()
}

/// `(ℓ₀, ℓ₁, ℓ₂)` of a weighted support by direct summation.
pub fn direct_moments(
    dim: usize,
    support: &[(Configuration, Rational)],
) -> (Rational, Vec<Rational>, Vec<Vec<Rational>>) {
    let mut l0 = Rational::zero();
    let mut l1 = vec![Rational::zero(); dim];
    let mut l2 = vec![vec![Rational::zero(); dim]; dim];
    for (c, w) in support {
        l0 += w;
        for x in 0..dim {
            l1[x] += w * int(i64::from(c.counts[x]));
            for y in 0..dim {
                l2[x][y] += w * int(i64::from(c.counts[x] * c.counts[y]));
            }
        }
    }
    (l0, l1, l2)
}

/// `f₀ + Σ f₁ k + Σ f₂ k k` with explicit loops.
pub fn direct_quadratic(f0: &Rational, f1: &[Rational], f2: &[Rational], counts: &[u32]) -> Rational {
    let n = counts.len();
    let k: Vec<Rational> = counts.iter().map(|&c| int(i64::from(c))).collect();
    let mut v = f0.clone();
    for x in 0..n {
        v += &f1[x] * &k[x];
        for y in 0..n {
            v += &f2[x * n + y] * &k[x] * &k[y];
        }
    }
    v
}

pub fn cube_of_weighted_mass(gamma: &[Rational], counts: &[u32]) -> Rational {
    let t = gamma
        .iter()
        .zip(counts)
        .fold(Rational::zero(), |acc, (g, &c)| acc + g * int(i64::from(c)));
    &t * &t * &t
}

fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    // Gaussian elimination on an m×k system; None if the columns are
    // dependent or the system is inconsistent.
    let m = a.len();
    let k = if m == 0 { 0 } else { a[0].len() };
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let p = (row..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip();
        for j in 0..k {
            a[row][j] = &a[row][j] * &inv;
        }
        b[row] = &b[row] * &inv;
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..k {
                    let t = &f * &a[row][j];
                    a[r][j] -= t;
                }
                let t = &f * &b[row];
                b[r] -= t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if (row..m).any(|r| !b[r].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| b[c].clone()).collect())
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        subsets(n, k, i + 1, cur, visit);
        cur.pop();
    }
}

/// Result of vertex enumeration: `None` when infeasible, otherwise a basic
/// feasible point and the smallest objective over all vertices.
pub struct VertexOracle {
    pub x: Vec<Rational>,
    pub min_objective: Option<Rational>,
}

/// Enumerates every basic solution of `{A x (=,≤) b, x ≥ 0}` (slacks added
/// for ≤ rows). A nonempty polyhedron in the nonnegative orthant has a
/// vertex, so this decides feasibility; with a bounded objective the minimum
/// is attained at a vertex.
pub fn brute_force_lp(
    a: &[Vec<Rational>],
    b: &[Rational],
    senses: &[RowSense],
    objective: Option<&[Rational]>,
) -> Option<VertexOracle> {
    let m = a.len();
    let n = a[0].len();
    let slack_rows: Vec<usize> = (0..m).filter(|&i| senses[i] == RowSense::Le).collect();
    let total = n + slack_rows.len();
    let column = |j: usize| -> Vec<Rational> {
        if j < n {
            (0..m).map(|i| a[i][j].clone()).collect()
        } else {
            let r = slack_rows[j - n];
            (0..m).map(|i| if i == r { Rational::one() } else { Rational::zero() }).collect()
        }
    };
    let mut best: Option<VertexOracle> = None;
    for k in 0..=m.min(total) {
        let mut cur = Vec::new();
        subsets(total, k, 0, &mut cur, &mut |s| {
            let mat: Vec<Vec<Rational>> = (0..m)
                .map(|i| s.iter().map(|&j| column(j)[i].clone()).collect())
                .collect();
            let z = if k == 0 {
                if b.iter().all(Zero::is_zero) {
                    Some(vec![])
                } else {
                    None
                }
            } else {
                solve_square(mat, b.to_vec())
            };
            let Some(z) = z else { return };
            if z.iter().any(Signed::is_negative) {
                return;
            }
            let mut x = vec![Rational::zero(); n];
            for (&j, v) in s.iter().zip(&z) {
                if j < n {
                    x[j] = v.clone();
                }
            }
            let value = objective.map(|c| {
                c.iter().zip(&x).fold(Rational::zero(), |acc, (ci, xi)| acc + ci * xi)
            });
            let improve = match (&best, &value) {
                (None, _) => true,
                (Some(bst), Some(v)) => bst.min_objective.as_ref().is_some_and(|b| v < b),
                _ => false,
            };
            if improve {
                best = Some(VertexOracle {
                    x,
                    min_objective: value,
                });
            }
        });
    }
    best
}

/// Independent Farkas check: `yᵀA ≥ 0`, `yᵀb < 0`, `y ≥ 0` on ≤ rows.
pub fn farkas_holds(a: &[Vec<Rational>], b: &[Rational], senses: &[RowSense], y: &[Rational]) -> bool {
    let n = a[0].len();
    let sign_ok = senses
        .iter()
        .zip(y)
        .all(|(s, yi)| *s == RowSense::Eq || !yi.is_negative());
    let cols_ok = (0..n).all(|j| {
        let v = (0..a.len()).fold(Rational::zero(), |acc, i| acc + &y[i] * &a[i][j]);
        !v.is_negative()
    });
    let yb = y.iter().zip(b).fold(Rational::zero(), |acc, (yi, bi)| acc + yi * bi);
    sign_ok && cols_ok && yb.is_negative()
}

pub fn random_space(rng: &mut Lcg, n: usize) -> SiteSpace {
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = int(rng.range(1, 3));
            d[i][j] = v.clone();
            d[j][i] = v;
        }
    }
    SiteSpace::with_distances((0..n).map(|i| format!("s{i}")).collect(), d).unwrap()
}

pub fn random_kspec(rng: &mut Lcg, max_q: u32) -> KSpec {
    let q = rng.below(max_q + 1);
    match rng.below(4) {
        0 => KSpec::AtMostQ { q },
        1 => KSpec::ExactlyQ { q },
        2 => KSpec::Simple { q },
        _ => KSpec::HardCore {
            d: ratio(rng.range(1, 5), 2),
            q,
        },
    }
}

pub fn random_gamma(rng: &mut Lcg, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rng.rational(1, 4, 3)).collect()
}
