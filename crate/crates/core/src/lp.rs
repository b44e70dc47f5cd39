//! Exact rational linear programming with Farkas certificates.
//!
//! Problems have the form
//!
//! ```text
//!     A x (= or ≤) b,   x ≥ 0,   optionally minimize c·x
//! ```
//!
//! and are solved with a dense two-phase simplex using Bland's rule. When the
//! feasible set is empty the solver returns a Farkas vector `y` in the
//! original row space with
//!
//! ```text
//!     yᵀA ≥ 0 (componentwise),   yᵀb < 0,   y_i ≥ 0 on every ≤ row.
//! ```
//!
//! Any feasible `x` would give `0 ≤ yᵀAx ≤ yᵀb < 0`, so `y` is a proof of
//! infeasibility. Both outcomes are re-checked before they are returned.
//!
//! With [`SolveOptions::trace`] set, every tableau is written to the `log`
//! facade at debug level. The dump is one line per row,
//! `<basic var> | <entries…> | <rhs>`, followed by the reduced-cost row
//! `obj | <entries…> | <-objective>`. Columns are named `x<j>` for
//! variables, `s<i>` for the slack of row `i` and `a<i>` for its artificial.

use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Eq,
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    senses: Vec<RowSense>,
    objective: Option<Vec<Rational>>,
}

impl LinearProgram {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>, senses: Vec<RowSense>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::DimensionMismatch(
                "a linear program needs at least one row".into(),
            ));
        }
        let n = a[0].len();
        if let Some(i) = a.iter().position(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} columns, expected {n}",
                a[i].len()
            )));
        }
        if b.len() != a.len() || senses.len() != a.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but {} right-hand sides and {} senses",
                a.len(),
                b.len(),
                senses.len()
            )));
        }
        Ok(Self {
            a,
            b,
            senses,
            objective: None,
        })
    }

    /// Equality-constrained program `A x = b, x ≥ 0`.
    pub fn equalities(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self> {
        let senses = vec![RowSense::Eq; a.len()];
        Self::new(a, b, senses)
    }

    pub fn with_objective(mut self, c: Vec<Rational>) -> Result<Self> {
        if c.len() != self.cols() {
            return Err(Error::DimensionMismatch(format!(
                "objective has {} entries, expected {}",
                c.len(),
                self.cols()
            )));
        }
        self.objective = Some(c);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.a[0].len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.b
    }

    pub fn senses(&self) -> &[RowSense] {
        &self.senses
    }

    pub fn objective(&self) -> Option<&[Rational]> {
        self.objective.as_deref()
    }

    /// Checks `x ≥ 0` and every row exactly; the error names the first
    /// violated condition.
    pub fn check_feasible(&self, x: &[Rational]) -> std::result::Result<(), String> {
        if x.len() != self.cols() {
            return Err(format!("solution has {} entries, expected {}", x.len(), self.cols()));
        }
        if let Some(j) = x.iter().position(Signed::is_negative) {
            return Err(format!("x[{j}] = {} is negative", x[j]));
        }
        for (i, row) in self.a.iter().enumerate() {
            let lhs = dot(row, x);
            let ok = match self.senses[i] {
                RowSense::Eq => lhs == self.b[i],
                RowSense::Le => lhs <= self.b[i],
            };
            if !ok {
                return Err(format!("row {i}: lhs {lhs} vs rhs {}", self.b[i]));
            }
        }
        Ok(())
    }

    /// Checks the Farkas conditions for `y`.
    pub fn check_farkas(&self, y: &[Rational]) -> std::result::Result<(), String> {
        if y.len() != self.rows() {
            return Err(format!("certificate has {} entries, expected {}", y.len(), self.rows()));
        }
        for (i, sense) in self.senses.iter().enumerate() {
            if *sense == RowSense::Le && y[i].is_negative() {
                return Err(format!("y[{i}] = {} is negative on a ≤ row", y[i]));
            }
        }
        for j in 0..self.cols() {
            let v = self
                .a
                .iter()
                .zip(y)
                .fold(Rational::zero(), |acc, (row, yi)| acc + &row[j] * yi);
            if v.is_negative() {
                return Err(format!("(yᵀA)[{j}] = {v} is negative"));
            }
        }
        let yb = dot(y, &self.b);
        if !yb.is_negative() {
            return Err(format!("yᵀb = {yb} is not negative"));
        }
        Ok(())
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (u, v)| acc + u * v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible {
        x: Vec<Rational>,
        objective: Option<Rational>,
    },
    Infeasible {
        y: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible { .. })
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Upper bound on tableau cells `rows · (cols + slacks + rows)`.
    pub max_cells: usize,
    pub pivot_limit: usize,
    pub trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            max_cells: 4_000_000,
            pivot_limit: 200_000,
            trace: false,
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    solve_with(lp, &SolveOptions::default())
}

pub fn solve_with(lp: &LinearProgram, options: &SolveOptions) -> Result<LpOutcome> {
    let m = lp.rows();
    let n = lp.cols();
    let slack_rows: Vec<usize> = (0..m).filter(|&i| lp.senses[i] == RowSense::Le).collect();
    let width = n + slack_rows.len() + m;
    if m.saturating_mul(width) > options.max_cells {
        return Err(Error::LpTooLarge {
            rows: m,
            cols: n,
            cap: options.max_cells,
        });
    }

    let mut tableau = Tableau::phase_one(lp, &slack_rows);
    let mut pivots = 0usize;
    tableau.run(&tableau.all_columns(), options, &mut pivots)?;

    let infeasibility = -tableau.obj[width].clone();
    if infeasibility.is_positive() {
        let y: Vec<Rational> = (0..m)
            .map(|i| {
                let u = Rational::one() - &tableau.obj[tableau.artificial(i)];
                -u * &tableau.sign[i]
            })
            .collect();
        lp.check_farkas(&y)
            .map_err(|e| Error::Internal(format!("Farkas certificate rejected: {e}")))?;
        return Ok(LpOutcome::Infeasible { y });
    }

    tableau.evict_artificials(options);
    let columns = tableau.structural_columns();
    let objective = match &lp.objective {
        Some(c) => {
            tableau.set_costs(c);
            tableau.run(&columns, options, &mut pivots)?;
            true
        }
        None => false,
    };

    let mut x = vec![Rational::zero(); n];
    for (r, &var) in tableau.basis.iter().enumerate() {
        if var < n {
            x[var] = tableau.rows[r][width].clone();
        }
    }
    lp.check_feasible(&x)
        .map_err(|e| Error::Internal(format!("primal solution rejected: {e}")))?;
    let value = objective.then(|| dot(lp.objective.as_deref().unwrap_or_default(), &x));
    Ok(LpOutcome::Feasible {
        x,
        objective: value,
    })
}

struct Tableau {
    n: usize,
    slack_rows: Vec<usize>,
    sign: Vec<Rational>,
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn phase_one(lp: &LinearProgram, slack_rows: &[usize]) -> Self {
        let m = lp.rows();
        let n = lp.cols();
        let width = n + slack_rows.len() + m;
        let sign: Vec<Rational> = lp
            .b
            .iter()
            .map(|b| if b.is_negative() { -Rational::one() } else { Rational::one() })
            .collect();
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = vec![Rational::zero(); width + 1];
            for j in 0..n {
                row[j] = &lp.a[i][j] * &sign[i];
            }
            if let Some(k) = slack_rows.iter().position(|&r| r == i) {
                row[n + k] = sign[i].clone();
            }
            row[n + slack_rows.len() + i] = Rational::one();
            row[width] = &lp.b[i] * &sign[i];
            rows.push(row);
        }
        let mut obj = vec![Rational::zero(); width + 1];
        for row in &rows {
            for j in 0..n + slack_rows.len() {
                obj[j] -= &row[j];
            }
            obj[width] -= &row[width];
        }
        Self {
            n,
            slack_rows: slack_rows.to_vec(),
            sign,
            basis: (0..m).map(|i| n + slack_rows.len() + i).collect(),
            rows,
            obj,
        }
    }

    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn artificial(&self, row: usize) -> usize {
        self.n + self.slack_rows.len() + row
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.n + self.slack_rows.len()
    }

    fn all_columns(&self) -> Vec<usize> {
        (0..self.width()).collect()
    }

    fn structural_columns(&self) -> Vec<usize> {
        (0..self.n + self.slack_rows.len()).collect()
    }

    fn column_name(&self, col: usize) -> String {
        if col < self.n {
            format!("x{col}")
        } else if col < self.n + self.slack_rows.len() {
            format!("s{}", self.slack_rows[col - self.n])
        } else {
            format!("a{}", col - self.n - self.slack_rows.len())
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.width();
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..=width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &nz {
                self.obj[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index improving column, ties in the ratio test go
    /// to the lowest-index basic variable.
    fn run(&mut self, columns: &[usize], options: &SolveOptions, pivots: &mut usize) -> Result<()> {
        let width = self.width();
        loop {
            if options.trace {
                log::debug!("simplex tableau after {} pivots\n{}", *pivots, self);
            }
            let Some(&c) = columns.iter().find(|&&j| self.obj[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Err(Error::Unbounded);
            };
            *pivots += 1;
            if *pivots > options.pivot_limit {
                return Err(Error::PivotLimit(options.pivot_limit));
            }
            self.pivot(r, c);
        }
    }

    /// Pivots zero-valued artificials out of the basis where a structural
    /// column allows it. Rows where none does are redundant and keep their
    /// artificial at zero.
    fn evict_artificials(&mut self, options: &SolveOptions) {
        for r in 0..self.rows.len() {
            if !self.is_artificial(self.basis[r]) {
                continue;
            }
            if let Some(c) = (0..self.n + self.slack_rows.len()).find(|&j| !self.rows[r][j].is_zero()) {
                self.pivot(r, c);
                if options.trace {
                    log::debug!("evicted artificial from row {r}\n{}", self);
                }
            }
        }
    }

    fn set_costs(&mut self, c: &[Rational]) {
        let width = self.width();
        let cost = |j: usize| if j < self.n { c[j].clone() } else { Rational::zero() };
        let mut obj: Vec<Rational> = (0..width).map(cost).collect();
        obj.push(Rational::zero());
        for (r, &var) in self.basis.iter().enumerate() {
            let cb = cost(var);
            if cb.is_zero() {
                continue;
            }
            for (j, v) in obj.iter_mut().enumerate() {
                *v -= &cb * &self.rows[r][j];
            }
        }
        self.obj = obj;
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.width();
        let header: Vec<String> = (0..width).map(|j| self.column_name(j)).collect();
        writeln!(f, "basis | {} | rhs", header.join(" "))?;
        for (r, row) in self.rows.iter().enumerate() {
            let entries: Vec<String> = row[..width].iter().map(ToString::to_string).collect();
            writeln!(
                f,
                "{} | {} | {}",
                self.column_name(self.basis[r]),
                entries.join(" "),
                row[width]
            )?;
        }
        let entries: Vec<String> = self.obj[..width].iter().map(ToString::to_string).collect();
        write!(f, "obj | {} | {}", entries.join(" "), self.obj[width])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn simplex_feasible() {
        let lp = LinearProgram::equalities(vec![ints(&[1, 1])], ints(&[1])).unwrap();
        let out = solve(&lp).unwrap();
        let LpOutcome::Feasible { x, objective } = out else {
            panic!("expected feasible")
        };
        assert!(lp.check_feasible(&x).is_ok());
        assert_eq!(objective, None);
    }

    #[test]
    fn negative_rhs_is_infeasible() {
        let lp = LinearProgram::equalities(vec![ints(&[1])], ints(&[-1])).unwrap();
        assert_eq!(solve(&lp).unwrap(), LpOutcome::Infeasible { y: ints(&[1]) });
    }

    #[test]
    fn inconsistent_pair() {
        // x₁ + x₂ = 1 and x₁ − x₂ = 3 force x₂ = −1.
        let lp =
            LinearProgram::equalities(vec![ints(&[1, 1]), ints(&[1, -1])], ints(&[1, 3])).unwrap();
        let LpOutcome::Infeasible { y } = solve(&lp).unwrap() else {
            panic!("expected infeasible")
        };
        assert!(lp.check_farkas(&y).is_ok());
    }

    #[test]
    fn le_rows_and_certificate_sign() {
        // x₀ = 2, x₀ ≤ 1.
        let lp = LinearProgram::new(
            vec![ints(&[1]), ints(&[1])],
            ints(&[2, 1]),
            vec![RowSense::Eq, RowSense::Le],
        )
        .unwrap();
        let LpOutcome::Infeasible { y } = solve(&lp).unwrap() else {
            panic!("expected infeasible")
        };
        assert!(!y[1].is_negative());
        assert!(lp.check_farkas(&y).is_ok());
    }

    #[test]
    fn optimization() {
        // min x₀ + 2x₁ s.t. x₀ + x₁ = 1, x₀ ≤ 1/3.
        let lp = LinearProgram::new(
            vec![ints(&[1, 1]), ints(&[1, 0])],
            vec![int(1), ratio(1, 3)],
            vec![RowSense::Eq, RowSense::Le],
        )
        .unwrap()
        .with_objective(ints(&[1, 2]))
        .unwrap();
        let LpOutcome::Feasible { x, objective } = solve(&lp).unwrap() else {
            panic!("expected feasible")
        };
        assert_eq!(x, vec![ratio(1, 3), ratio(2, 3)]);
        assert_eq!(objective, Some(ratio(5, 3)));
    }

    #[test]
    fn unbounded() {
        let lp = LinearProgram::equalities(vec![ints(&[1, -1])], ints(&[0]))
            .unwrap()
            .with_objective(ints(&[-1, 0]))
            .unwrap();
        assert_eq!(solve(&lp), Err(Error::Unbounded));
    }

    #[test]
    fn redundant_and_zero_rows() {
        let lp = LinearProgram::equalities(
            vec![ints(&[1, 1]), ints(&[1, 1]), ints(&[0, 0])],
            ints(&[2, 2, 0]),
        )
        .unwrap()
        .with_objective(ints(&[1, 3]))
        .unwrap();
        let LpOutcome::Feasible { x, objective } = solve(&lp).unwrap() else {
            panic!("expected feasible")
        };
        assert_eq!(x, ints(&[2, 0]));
        assert_eq!(objective, Some(int(2)));
    }

    #[test]
    fn size_cap() {
        let lp = LinearProgram::equalities(vec![ints(&[1; 10])], ints(&[1])).unwrap();
        let options = SolveOptions {
            max_cells: 5,
            ..SolveOptions::default()
        };
        assert!(matches!(solve_with(&lp, &options), Err(Error::LpTooLarge { .. })));
    }

    #[test]
    fn pivot_limit() {
        let lp = LinearProgram::equalities(vec![ints(&[1, 1]), ints(&[1, -1])], ints(&[2, 0]))
            .unwrap();
        let options = SolveOptions {
            pivot_limit: 0,
            ..SolveOptions::default()
        };
        assert_eq!(solve_with(&lp, &options), Err(Error::PivotLimit(0)));
    }

    #[test]
    fn malformed_programs() {
        assert!(LinearProgram::equalities(vec![], vec![]).is_err());
        assert!(LinearProgram::equalities(vec![ints(&[1]), ints(&[1, 2])], ints(&[1, 1])).is_err());
        assert!(LinearProgram::equalities(vec![ints(&[1])], ints(&[1, 1])).is_err());
        let lp = LinearProgram::equalities(vec![ints(&[1])], ints(&[1])).unwrap();
        assert!(lp.with_objective(ints(&[1, 1])).is_err());
    }
}
