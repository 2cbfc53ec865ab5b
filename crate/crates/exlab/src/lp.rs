//! Exact linear programming over the rationals.
//!
//! A small dense two-phase simplex, used to maximize a linear objective
//! subject to `coeffs · x <= rhs` rows, `x >= 0`, and optional per-variable
//! upper bounds. Everything is `BigRational`: pivots never round, so the
//! optimum, the witness, and the dual multipliers are exact. Bland's rule
//! guarantees termination. The instances here are tiny (at most a few
//! hundred rows), so no effort is spent on sparsity or factorization.
//!
//! Every optimum comes with dual multipliers, and
//! [`verify_certificate`] checks a claimed optimum against the weak-duality
//! argument without trusting any solver internals.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// One row `coeffs · x <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> LinearConstraint {
        LinearConstraint { coeffs, rhs }
    }
}

/// Result of [`maximize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn into_optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// An exact optimum: the value, a primal witness attaining it, and one
/// dual multiplier per explicit constraint row.
///
/// Multipliers for the implicit upper bounds are not carried; certificate
/// checking reconstructs the cheapest valid ones (see [`verify_certificate`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub witness: Vec<Rational>,
    pub constraint_duals: Vec<Rational>,
}

/// Maximizes `objective · x` subject to the constraint rows, `x >= 0`, and
/// `x[i] <= ub` for each `Some(ub)` in `upper_bounds`.
///
/// `upper_bounds` must have one entry per variable; `None` leaves the
/// variable unbounded above. Infeasibility and unboundedness are reported
/// as their own outcomes.
pub fn maximize(
    objective: &[Rational],
    constraints: &[LinearConstraint],
    upper_bounds: &[Option<Rational>],
) -> LpOutcome {
    assert_eq!(
        objective.len(),
        upper_bounds.len(),
        "one upper bound entry per variable"
    );
    let n = objective.len();

    // Explicit rows first, then one box row per bounded variable.
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for c in constraints {
        assert_eq!(c.coeffs.len(), n, "constraint arity mismatch");
        rows.push((c.coeffs.clone(), c.rhs.clone()));
    }
    for (i, ub) in upper_bounds.iter().enumerate() {
        if let Some(ub) = ub {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[i] = Rational::one();
            rows.push((coeffs, ub.clone()));
        }
    }

    let mut tableau = Tableau::new(n, &rows);
    if !tableau.phase_one() {
        return LpOutcome::Infeasible;
    }
    if !tableau.phase_two(objective) {
        return LpOutcome::Unbounded;
    }

    let witness = tableau.witness();
    let duals = tableau.duals();
    LpOutcome::Optimal(LpSolution {
        value: tableau.objective_value(),
        witness,
        constraint_duals: duals[..constraints.len()].to_vec(),
    })
}

/// Checks a claimed optimum by weak duality, independently of the solver.
///
/// Verifies that the witness is feasible and attains `value`, that the
/// constraint multipliers are nonnegative, and that the multipliers
/// certify `value` as an upper bound: with `u_i = max(0, c_i - (A^T y)_i)`
/// charged to the upper bound of variable `i`, it must hold that
/// `y · rhs + u · ub = value`. Any feasible point then satisfies
/// `c · x <= y · rhs + u · ub`, so equality pins the optimum exactly.
pub fn verify_certificate(
    objective: &[Rational],
    constraints: &[LinearConstraint],
    upper_bounds: &[Option<Rational>],
    solution: &LpSolution,
) -> Result<(), String> {
    let n = objective.len();
    let w = &solution.witness;
    let y = &solution.constraint_duals;
    if w.len() != n {
        return Err(format!("witness has {} entries, expected {n}", w.len()));
    }
    if y.len() != constraints.len() {
        return Err(format!(
            "certificate has {} multipliers, expected {}",
            y.len(),
            constraints.len()
        ));
    }
    for (i, wi) in w.iter().enumerate() {
        if wi.is_negative() {
            return Err(format!("witness[{i}] = {wi} is negative"));
        }
        if let Some(ub) = &upper_bounds[i] {
            if wi > ub {
                return Err(format!("witness[{i}] = {wi} exceeds its upper bound {ub}"));
            }
        }
    }
    for (j, c) in constraints.iter().enumerate() {
        let lhs: Rational = dot(&c.coeffs, w);
        if lhs > c.rhs {
            return Err(format!(
                "witness violates constraint {j}: {lhs} > {}",
                c.rhs
            ));
        }
        if y[j].is_negative() {
            return Err(format!("multiplier {j} = {} is negative", y[j]));
        }
    }
    let attained = dot(objective, w);
    if attained != solution.value {
        return Err(format!(
            "witness attains {attained}, certificate claims {}",
            solution.value
        ));
    }

    let mut dual_total: Rational = constraints.iter().zip(y).map(|(c, yj)| yj * &c.rhs).sum();
    for i in 0..n {
        let covered: Rational = constraints
            .iter()
            .zip(y)
            .map(|(c, yj)| yj * &c.coeffs[i])
            .sum();
        let residual = &objective[i] - &covered;
        if residual.is_positive() {
            match &upper_bounds[i] {
                Some(ub) => dual_total += residual * ub,
                None => {
                    return Err(format!(
                        "variable {i} is undercovered by {residual} and has no upper bound"
                    ))
                }
            }
        }
    }
    if dual_total != solution.value {
        return Err(format!(
            "dual value {dual_total} does not match claimed optimum {}",
            solution.value
        ));
    }
    Ok(())
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense simplex tableau in equality form. Columns are laid out as
/// `n` structural variables, `m` slacks, then one artificial per row that
/// needed one, then the right-hand side.
struct Tableau {
    n: usize,
    m: usize,
    cols: usize,
    slack_start: usize,
    artificial_start: usize,
    rows: Vec<Vec<Rational>>,
    /// Reduced-cost row; its last entry is the current objective value.
    objective_row: Vec<Rational>,
    /// Basic variable (column index) of each row.
    basis: Vec<usize>,
}

impl Tableau {
    fn new(n: usize, constraint_rows: &[(Vec<Rational>, Rational)]) -> Tableau {
        let m = constraint_rows.len();
        let slack_start = n;
        let artificial_start = n + m;
        let needs_artificial: Vec<bool> = constraint_rows
            .iter()
            .map(|(_, rhs)| rhs.is_negative())
            .collect();
        let n_artificial = needs_artificial.iter().filter(|&&b| b).count();
        let cols = n + m + n_artificial + 1;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_artificial = artificial_start;
        for (i, (coeffs, rhs)) in constraint_rows.iter().enumerate() {
            let mut row = vec![Rational::zero(); cols];
            // `coeffs · x + s = rhs`; negate the equality when rhs < 0 so
            // the basic solution starts nonnegative, which flips the slack
            // to -1 and requires an artificial basic variable.
            let flip = needs_artificial[i];
            for (j, a) in coeffs.iter().enumerate() {
                row[j] = if flip { -a } else { a.clone() };
            }
            row[slack_start + i] = if flip {
                -Rational::one()
            } else {
                Rational::one()
            };
            row[cols - 1] = if flip { -rhs } else { rhs.clone() };
            if flip {
                row[next_artificial] = Rational::one();
                basis.push(next_artificial);
                next_artificial += 1;
            } else {
                basis.push(slack_start + i);
            }
            rows.push(row);
        }

        Tableau {
            n,
            m,
            cols,
            slack_start,
            artificial_start,
            rows,
            objective_row: vec![Rational::zero(); cols],
            basis,
        }
    }

    /// Minimizes the artificial total. Returns false when the program is
    /// infeasible. No-op when no artificials were needed.
    fn phase_one(&mut self) -> bool {
        if self.artificial_start == self.cols - 1 {
            return true;
        }
        // Maximize -(sum of artificials): reduced costs start as
        // +1 on artificial columns minus the sum of their basic rows.
        let mut obj = vec![Rational::zero(); self.cols];
        for cost in &mut obj[self.artificial_start..self.cols - 1] {
            *cost = Rational::one();
        }
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= self.artificial_start {
                for (cost, coeff) in obj.iter_mut().zip(&self.rows[i]) {
                    *cost -= coeff;
                }
            }
        }
        self.objective_row = obj;
        let bounded = self.run_simplex(self.cols - 1);
        assert!(bounded, "phase one objective is bounded by construction");
        if self.objective_row[self.cols - 1].is_negative() {
            return false;
        }
        // Drive any artificial still basic (at value zero) out of the
        // basis; rows with no eligible pivot are redundant and stay inert.
        for i in 0..self.m {
            if self.basis[i] >= self.artificial_start {
                if let Some(j) = (0..self.artificial_start).find(|&j| !self.rows[i][j].is_zero()) {
                    self.pivot(i, j);
                }
            }
        }
        true
    }

    /// Optimizes the real objective. Returns false when unbounded.
    fn phase_two(&mut self, objective: &[Rational]) -> bool {
        let mut obj = vec![Rational::zero(); self.cols];
        for (j, c) in objective.iter().enumerate() {
            obj[j] = -c.clone();
        }
        self.objective_row = obj;
        for i in 0..self.m {
            let b = self.basis[i];
            if !self.objective_row[b].is_zero() {
                let factor = self.objective_row[b].clone();
                for j in 0..self.cols {
                    let v = &self.objective_row[j] - &factor * &self.rows[i][j];
                    self.objective_row[j] = v;
                }
            }
        }
        // Artificials are never allowed back into the basis.
        self.run_simplex(self.artificial_start)
    }

    /// Bland's rule: entering column is the lowest index with a negative
    /// reduced cost, leaving row breaks ratio ties by lowest basic index.
    /// Returns false if an entering column proves the program unbounded.
    fn run_simplex(&mut self, allowed_cols: usize) -> bool {
        loop {
            let entering = (0..allowed_cols).find(|&j| self.objective_row[j].is_negative());
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                if self.rows[i][col].is_positive() {
                    let ratio = &self.rows[i][self.cols - 1] / &self.rows[i][col];
                    let better = match &leaving {
                        None => true,
                        Some((r, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        assert!(!pivot.is_zero(), "pivot on zero entry");
        for j in 0..self.cols {
            let v = &self.rows[row][j] / &pivot;
            self.rows[row][j] = v;
        }
        for i in 0..self.m {
            if i != row && !self.rows[i][col].is_zero() {
                let factor = self.rows[i][col].clone();
                for j in 0..self.cols {
                    let v = &self.rows[i][j] - &factor * &self.rows[row][j];
                    self.rows[i][j] = v;
                }
            }
        }
        if !self.objective_row[col].is_zero() {
            let factor = self.objective_row[col].clone();
            for j in 0..self.cols {
                let v = &self.objective_row[j] - &factor * &self.rows[row][j];
                self.objective_row[j] = v;
            }
        }
        self.basis[row] = col;
    }

    fn objective_value(&self) -> Rational {
        self.objective_row[self.cols - 1].clone()
    }

    fn witness(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.rows[i][self.cols - 1].clone();
            }
        }
        x
    }

    /// Dual multipliers of the `<=` rows, read off the slack columns of
    /// the reduced-cost row. The sign convention works out the same for
    /// rows that were negated during setup.
    fn duals(&self) -> Vec<Rational> {
        (0..self.m)
            .map(|i| self.objective_row[self.slack_start + i].clone())
            .collect()
    }
}
