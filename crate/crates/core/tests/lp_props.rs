mod common;

use common::{brute_force_lp, farkas_holds};
use num_traits::Signed;
use proptest::prelude::*;
use realiz_core::generators::Lcg;
use realiz_core::lp::{solve, solve_with, LinearProgram, LpOutcome, RowSense, SolveOptions};
use realiz_core::rational::int;
use realiz_core::{Error, Rational};

fn random_lp(rng: &mut Lcg, m: usize, n: usize) -> (Vec<Vec<Rational>>, Vec<Rational>, Vec<RowSense>) {
    let a = (0..m).map(|_| (0..n).map(|_| rng.rational(-3, 3, 2)).collect()).collect();
    let b = (0..m).map(|_| rng.rational(-3, 3, 2)).collect();
    let senses = (0..m).map(|_| if rng.coin() { RowSense::Le } else { RowSense::Eq }).collect();
    (a, b, senses)
}

proptest! {
    #[test]
    fn outcome_agrees_with_vertex_enumeration(seed in any::<u64>(), m in 1usize..=4, n in 1usize..=5) {
        let mut rng = Lcg::new(seed);
        let (a, b, senses) = random_lp(&mut rng, m, n);
        let c: Vec<Rational> = (0..n).map(|_| rng.rational(0, 4, 1)).collect();
        let lp = LinearProgram::new(a.clone(), b.clone(), senses.clone()).unwrap().with_objective(c.clone()).unwrap();
        let oracle = brute_force_lp(&a, &b, &senses, Some(&c));
        match solve(&lp).unwrap() {
            LpOutcome::Feasible { x, objective } => {
                prop_assert!(lp.check_feasible(&x).is_ok());
                let oracle = oracle.expect("oracle infeasible");
                // Nonnegative costs keep the minimum bounded.
                prop_assert_eq!(objective, oracle.min_objective);
            }
            LpOutcome::Infeasible { y } => {
                prop_assert!(oracle.is_none());
                prop_assert!(farkas_holds(&a, &b, &senses, &y));
                prop_assert!(y.iter().zip(&senses).all(|(v, s)| *s == RowSense::Eq || !v.is_negative()));
            }
        }
    }
}

#[test]
fn simple_infeasible_system() {
    let lp = LinearProgram::equalities(vec![vec![int(1), int(1)]], vec![int(-1)]).unwrap();
    let LpOutcome::Infeasible { y } = solve(&lp).unwrap() else {
        panic!("x + y = -1 with x, y >= 0 is infeasible");
    };
    assert!(y[0].is_positive());
}

#[test]
fn unbounded_objective_is_reported() {
    let lp = LinearProgram::new(vec![vec![int(1), int(-1)]], vec![int(0)], vec![RowSense::Eq])
        .unwrap()
        .with_objective(vec![int(-1), int(0)])
        .unwrap();
    assert_eq!(solve(&lp).unwrap_err(), Error::Unbounded);
}

#[test]
fn size_cap_is_enforced() {
    let lp = LinearProgram::equalities(vec![vec![int(1); 50]; 20], vec![int(1); 20]).unwrap();
    let options = SolveOptions { max_cells: 100, ..SolveOptions::default() };
    assert!(matches!(solve_with(&lp, &options), Err(Error::LpTooLarge { .. })));
}
