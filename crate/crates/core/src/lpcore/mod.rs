//! Continuous linear programs with bounded variables.
//!
//! [`solve_lp`] runs a two-phase primal simplex on the bounded-variable form
//! with an explicit dense basis inverse. Duals and reduced costs are reported
//! for optimal solves; infeasible solves carry a phase-one certificate.

mod lp_format;
mod simplex;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use lp_format::write_lp_format;

use crate::math::abs;

/// Column handle into a [`LinearProgram`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

/// Row handle into a [`LinearProgram`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row(pub usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

impl Row {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Variable {
    pub lower: f64,
    pub upper: f64,
    pub cost: f64,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<(Var, f64)>,
    pub sense: Sense,
    pub rhs: f64,
    pub name: String,
}

/// `min c.x + offset` subject to rows and variable bounds.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearProgram {
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    offset: f64,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("variable {0} has lower bound above upper bound")]
    CrossedBounds(usize),
    #[error("row {row} references undeclared variable {var}")]
    UnknownVariable { row: usize, var: usize },
    #[error("non-finite data in {0}")]
    NonFinite(&'static str),
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, lower: f64, upper: f64, cost: f64) -> Var {
        self.add_named_var(String::new(), lower, upper, cost)
    }

    pub fn add_named_var(&mut self, name: impl Into<String>, lower: f64, upper: f64, cost: f64) -> Var {
        self.variables.push(Variable { lower, upper, cost, name: name.into() });
        Var(self.variables.len() - 1)
    }

    pub fn add_row(&mut self, coeffs: Vec<(Var, f64)>, sense: Sense, rhs: f64) -> Row {
        self.add_named_row(String::new(), coeffs, sense, rhs)
    }

    pub fn add_named_row(
        &mut self,
        name: impl Into<String>,
        coeffs: Vec<(Var, f64)>,
        sense: Sense,
        rhs: f64,
    ) -> Row {
        self.constraints.push(Constraint { coeffs, sense, rhs, name: name.into() });
        Row(self.constraints.len() - 1)
    }

    pub fn set_bounds(&mut self, var: Var, lower: f64, upper: f64) {
        let v = &mut self.variables[var.0];
        v.lower = lower;
        v.upper = upper;
    }

    pub fn set_cost(&mut self, var: Var, cost: f64) {
        self.variables[var.0].cost = cost;
    }

    pub fn bounds(&self, var: Var) -> (f64, f64) {
        let v = &self.variables[var.0];
        (v.lower, v.upper)
    }

    pub fn cost(&self, var: Var) -> f64 {
        self.variables[var.0].cost
    }

    pub fn objective_offset(&self) -> f64 {
        self.offset
    }

    pub fn set_objective_offset(&mut self, offset: f64) {
        self.offset = offset;
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_rows(&self) -> usize {
        self.constraints.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constraint(&self, row: Row) -> &Constraint {
        &self.constraints[row.0]
    }

    pub fn validate(&self) -> Result<(), LpError> {
        for (j, v) in self.variables.iter().enumerate() {
            if v.lower.is_nan() || v.upper.is_nan() || !v.cost.is_finite() {
                return Err(LpError::NonFinite("variable"));
            }
            if v.lower > v.upper || v.lower == f64::INFINITY || v.upper == f64::NEG_INFINITY {
                return Err(LpError::CrossedBounds(j));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if !c.rhs.is_finite() {
                return Err(LpError::NonFinite("rhs"));
            }
            for &(v, a) in &c.coeffs {
                if v.0 >= self.variables.len() {
                    return Err(LpError::UnknownVariable { row: i, var: v.0 });
                }
                if !a.is_finite() {
                    return Err(LpError::NonFinite("coefficient"));
                }
            }
        }
        if !self.offset.is_finite() {
            return Err(LpError::NonFinite("offset"));
        }
        Ok(())
    }

    /// Objective value at `x`, including the constant offset.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.offset + self.variables.iter().zip(x).map(|(v, xi)| v.cost * xi).sum::<f64>()
    }

    pub fn row_activity(&self, row: Row, x: &[f64]) -> f64 {
        self.constraints[row.0].coeffs.iter().map(|&(v, a)| a * x[v.0]).sum()
    }

    /// Largest violation of any row or bound at `x`, each scaled by
    /// `1 + |rhs|` (rows) or `1 + |bound|` (bounds).
    pub fn max_scaled_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (j, v) in self.variables.iter().enumerate() {
            if x[j] < v.lower {
                worst = worst.max((v.lower - x[j]) / (1.0 + abs(v.lower)));
            }
            if x[j] > v.upper {
                worst = worst.max((x[j] - v.upper) / (1.0 + abs(v.upper)));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            let act = self.row_activity(Row(i), x);
            let viol = match c.sense {
                Sense::Le => act - c.rhs,
                Sense::Ge => c.rhs - act,
                Sense::Eq => abs(act - c.rhs),
            };
            if viol > 0.0 {
                worst = worst.max(viol / (1.0 + abs(c.rhs)));
            }
        }
        worst
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LpOptions {
    /// Primal feasibility tolerance, relative to `1 + |rhs|`.
    pub feas_tol: f64,
    /// Reduced-cost tolerance.
    pub opt_tol: f64,
    /// Smallest pivot element accepted in the ratio test.
    pub pivot_tol: f64,
    /// Pivots between full refactorisations of the basis inverse.
    pub refactor_interval: usize,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub degenerate_limit: usize,
    /// Hard cap on simplex iterations; `None` picks a size-based default.
    pub max_iterations: Option<usize>,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            feas_tol: 1e-7,
            opt_tol: 1e-7,
            pivot_tol: 1e-9,
            refactor_interval: 100,
            degenerate_limit: 50,
            max_iterations: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// The pivoting broke down numerically; distinct from infeasibility.
    NumericFailure,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
            LpStatus::NumericFailure => "numeric-failure",
        })
    }
}

/// Evidence for an infeasible LP: the positive phase-one optimum, the rows
/// whose artificial variables could not be driven to zero, and the phase-one
/// row prices (a Farkas-style combination of the rows).
#[derive(Clone, Debug, PartialEq)]
pub struct InfeasibilityCertificate {
    pub phase_one_objective: f64,
    pub rows: Vec<Row>,
    pub row_prices: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<f64>,
    /// Row prices `y` with reduced costs `d = c - A^T y`. For a minimisation
    /// `<=` rows have `y <= 0` and `>=` rows `y >= 0`.
    pub duals: Vec<f64>,
    pub reduced_costs: Vec<f64>,
    /// Objective including the constant offset. Meaningful when optimal.
    pub objective: f64,
    pub iterations: usize,
    pub certificate: Option<InfeasibilityCertificate>,
    pub message: Option<&'static str>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn value(&self, var: Var) -> f64 {
        self.primal[var.0]
    }

    pub fn dual(&self, row: Row) -> f64 {
        self.duals[row.0]
    }
}

/// Solves `lp` to optimality or proves it infeasible or unbounded.
pub fn solve_lp(lp: &LinearProgram, opts: &LpOptions) -> Result<LpSolution, LpError> {
    lp.validate()?;
    Ok(simplex::solve(lp, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn opt() -> LpOptions {
        LpOptions::default()
    }

    #[test]
    fn bound_active_optimum() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(0.0, 2.0, -1.0);
        let s = solve_lp(&lp, &opt()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value(x), 2.0);
        assert_eq!(s.objective, -2.0);
    }

    #[test]
    fn textbook_covering_row() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(0.0, f64::INFINITY, 1.0);
        let y = lp.add_var(0.0, f64::INFINITY, 1.0);
        let r = lp.add_row(vec![(x, 1.0), (y, 1.0)], Sense::Ge, 1.0);
        let s = solve_lp(&lp, &opt()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 1.0).abs() < 1e-12);
        assert!((s.dual(r) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(f64::NEG_INFINITY, f64::INFINITY, 0.0);
        lp.add_row(vec![(x, 1.0)], Sense::Ge, 1.0);
        lp.add_row(vec![(x, 1.0)], Sense::Le, 0.0);
        let s = solve_lp(&lp, &opt()).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        let cert = s.certificate.unwrap();
        assert!(cert.phase_one_objective > 0.5);
        assert!(!cert.rows.is_empty());
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(0.0, f64::INFINITY, -1.0);
        let y = lp.add_var(0.0, f64::INFINITY, 0.0);
        lp.add_row(vec![(x, 1.0), (y, -1.0)], Sense::Le, 1.0);
        let s = solve_lp(&lp, &opt()).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn empty_rows_presolved() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(0.0, 1.0, 1.0);
        lp.add_row(vec![], Sense::Le, 5.0);
        lp.add_row(vec![(x, 0.0)], Sense::Ge, -1.0);
        let s = solve_lp(&lp, &opt()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        lp.add_row(vec![], Sense::Ge, 3.0);
        let s = solve_lp(&lp, &opt()).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        assert_eq!(s.certificate.unwrap().rows, vec![Row(2)]);
    }

    #[test]
    fn free_singleton_chain_recovered() {
        // a radial chain: f1 = 2 (t0 - t1), f2 = 5 (t1 - t2), t0 fixed at 0
        let mut lp = LinearProgram::new();
        let f1 = lp.add_var(-10.0, 10.0, 0.0);
        let f2 = lp.add_var(-10.0, 10.0, 0.0);
        let g = lp.add_var(0.0, 100.0, 3.0);
        let t0 = lp.add_var(0.0, 0.0, 0.0);
        let t1 = lp.add_var(f64::NEG_INFINITY, f64::INFINITY, 0.0);
        let t2 = lp.add_var(f64::NEG_INFINITY, f64::INFINITY, 0.0);
        lp.add_row(vec![(g, 1.0), (f1, -1.0)], Sense::Eq, 0.0);
        lp.add_row(vec![(f1, 1.0), (f2, -1.0)], Sense::Eq, 3.0);
        lp.add_row(vec![(f2, 1.0)], Sense::Eq, 4.0);
        let k1 = lp.add_row(vec![(f1, 1.0), (t0, -2.0), (t1, 2.0)], Sense::Eq, 0.0);
        let k2 = lp.add_row(vec![(f2, 1.0), (t1, -5.0), (t2, 5.0)], Sense::Eq, 0.0);
        let s = solve_lp(&lp, &opt()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value(g) - 7.0).abs() < 1e-12);
        assert!((s.value(t1) + 3.5).abs() < 1e-12);
        assert!((s.value(t2) + 4.3).abs() < 1e-12);
        assert_eq!((s.dual(k1), s.dual(k2)), (0.0, 0.0));
        assert_eq!(s.reduced_costs[t2.index()], 0.0);
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x - y  s.t. x + y = 4, x - y >= -2, y <= 10 (free x)
        let mut lp = LinearProgram::new();
        let x = lp.add_var(f64::NEG_INFINITY, f64::INFINITY, 1.0);
        let y = lp.add_var(f64::NEG_INFINITY, 10.0, -1.0);
        lp.add_row(vec![(x, 1.0), (y, 1.0)], Sense::Eq, 4.0);
        lp.add_row(vec![(x, 1.0), (y, -1.0)], Sense::Ge, -2.0);
        let s = solve_lp(&lp, &opt()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value(x) - 1.0).abs() < 1e-9);
        assert!((s.value(y) - 3.0).abs() < 1e-9);
        assert!((s.objective + 2.0).abs() < 1e-9);
    }

    #[test]
    fn offset_and_fixed_variables() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(3.0, 3.0, 2.0);
        let y = lp.add_var(0.0, f64::INFINITY, 1.0);
        lp.add_row(vec![(x, 1.0), (y, 1.0)], Sense::Ge, 5.0);
        lp.set_objective_offset(10.0);
        let s = solve_lp(&lp, &opt()).unwrap();
        assert!((s.objective - 18.0).abs() < 1e-12);
        assert_eq!(s.value(x), 3.0);
    }

    #[test]
    fn invalid_input_rejected() {
        let mut lp = LinearProgram::new();
        lp.add_var(1.0, 0.0, 0.0);
        assert_eq!(solve_lp(&lp, &opt()), Err(LpError::CrossedBounds(0)));
        let mut lp = LinearProgram::new();
        lp.add_row(vec![(Var(3), 1.0)], Sense::Le, 1.0);
        assert!(matches!(solve_lp(&lp, &opt()), Err(LpError::UnknownVariable { .. })));
    }
}
