//! Random feasible, bounded LPs and a KKT checker driven by the reported duals.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tepkit_core::lpcore::{LinearProgram, LpSolution, Sense};

pub fn random_feasible_lp(seed: u64) -> LinearProgram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=12);
    let m = rng.gen_range(1..=10);
    let mut lp = LinearProgram::new();
    let mut x0 = Vec::with_capacity(n);
    let mut vars = Vec::with_capacity(n);
    for _ in 0..n {
        let l: f64 = rng.gen_range(-5.0..0.0);
        let u: f64 = rng.gen_range(1.0..10.0);
        x0.push(rng.gen_range(l..u));
        vars.push(lp.add_var(l, u, rng.gen_range(-5.0..5.0)));
    }
    for _ in 0..m {
        let mut entries = Vec::new();
        let mut act = 0.0;
        for (j, &v) in vars.iter().enumerate() {
            if rng.gen_bool(0.6) {
                let a: f64 = rng.gen_range(-5.0..5.0);
                act += a * x0[j];
                entries.push((v, a));
            }
        }
        let sense = match rng.gen_range(0..3) {
            0 => Sense::Le,
            1 => Sense::Ge,
            _ => Sense::Eq,
        };
        let rhs = match sense {
            Sense::Le => act + rng.gen_range(0.0..2.0),
            Sense::Ge => act - rng.gen_range(0.0..2.0),
            Sense::Eq => act,
        };
        lp.add_row(entries, sense, rhs);
    }
    lp
}

pub struct KktReport {
    pub primal_violation: f64,
    pub dual_violation: f64,
    pub complementarity: f64,
    pub duality_gap: f64,
}

/// Checks primal/dual feasibility, complementary slackness and strong
/// duality using only the problem data and the reported primal and duals.
pub fn kkt(lp: &LinearProgram, sol: &LpSolution) -> KktReport {
    let x = &sol.primal;
    let y = &sol.duals;
    let n = lp.num_vars();
    let mut d = vec![0.0; n];
    for (j, v) in lp.variables().iter().enumerate() {
        d[j] = v.cost;
    }
    let mut dual_violation: f64 = 0.0;
    let mut complementarity: f64 = 0.0;
    let mut dual_obj = lp.objective_offset();
    for (i, c) in lp.constraints().iter().enumerate() {
        for &(v, a) in &c.coeffs {
            d[v.0] -= y[i] * a;
        }
        match c.sense {
            Sense::Le => dual_violation = dual_violation.max(y[i]),
            Sense::Ge => dual_violation = dual_violation.max(-y[i]),
            Sense::Eq => {}
        }
        let act: f64 = c.coeffs.iter().map(|&(v, a)| a * x[v.0]).sum();
        complementarity = complementarity.max((y[i] * (c.rhs - act)).abs());
        dual_obj += y[i] * c.rhs;
    }
    for (j, v) in lp.variables().iter().enumerate() {
        let dj = d[j];
        if dj > 0.0 {
            if v.lower.is_finite() {
                dual_obj += dj * v.lower;
            } else {
                dual_violation = dual_violation.max(dj);
            }
            complementarity = complementarity.max((dj * (x[j] - v.lower)).abs());
        } else if dj < 0.0 {
            if v.upper.is_finite() {
                dual_obj += dj * v.upper;
            } else {
                dual_violation = dual_violation.max(-dj);
            }
            complementarity = complementarity.max((dj * (v.upper - x[j])).abs());
        }
    }
    let primal_obj = lp.evaluate(x);
    KktReport {
        primal_violation: lp.max_scaled_violation(x),
        dual_violation,
        complementarity,
        duality_gap: (primal_obj - dual_obj).abs() / (1.0 + primal_obj.abs()),
    }
}
