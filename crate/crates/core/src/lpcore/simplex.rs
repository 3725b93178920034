//! Bounded-variable primal simplex with an explicit dense basis inverse.
//!
//! Every kept row `i` gets a slack `s_i` so that `A x + s = b`, with slack
//! bounds `[0, inf)` for `<=`, `(-inf, 0]` for `>=` and `[0, 0]` for `=`.
//! Rows whose slack cannot absorb the initial residual get an artificial
//! column; phase one minimises the sum of artificials.

use alloc::vec;
use alloc::vec::Vec;

use super::{InfeasibilityCertificate, LinearProgram, LpOptions, LpSolution, LpStatus, Row, Sense};
use crate::math::abs;

const INF: f64 = f64::INFINITY;
/// Step length below which a pivot counts as degenerate.
const DEGENERATE_STEP: f64 = 1e-11;
/// Bound relaxation of the first Harris pass.
const HARRIS_DELTA: f64 = 1e-9;
/// Smallest pivot accepted when refactorising.
const SINGULAR_TOL: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Basic,
    AtLower,
    AtUpper,
    /// Free nonbasic variable sitting at zero.
    Free,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
    Failure(&'static str),
}

/// Repeatedly removes rows holding the only remaining entry of a free,
/// costless column. Such a row can always be met by moving that column, so it
/// never binds and its price is zero. Returns `(row, column)` pairs in
/// elimination order; the columns are recovered in reverse after the solve.
fn eliminate_free_singletons(
    lp: &LinearProgram,
    row_entries: &[Vec<(usize, f64)>],
    kept: &mut Vec<usize>,
) -> Vec<(usize, usize)> {
    let n = lp.num_vars();
    let free: Vec<bool> =
        lp.variables().iter().map(|v| v.lower == -INF && v.upper == INF && v.cost == 0.0).collect();
    if !free.iter().any(|&f| f) {
        return Vec::new();
    }
    let mut rows_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &i in kept.iter() {
        for &(j, _) in &row_entries[i] {
            rows_of[j].push(i);
        }
    }
    let mut alive = vec![false; row_entries.len()];
    for &i in kept.iter() {
        alive[i] = true;
    }
    let mut count: Vec<usize> = rows_of.iter().map(Vec::len).collect();
    let mut stack: Vec<usize> = (0..n).rev().filter(|&j| free[j] && count[j] == 1).collect();
    let mut out = Vec::new();
    while let Some(j) = stack.pop() {
        if count[j] != 1 {
            continue;
        }
        let Some(&i) = rows_of[j].iter().find(|&&i| alive[i]) else { continue };
        let row = &row_entries[i];
        let scale = row.iter().fold(0.0, |m: f64, e| m.max(abs(e.1)));
        let pivot = row.iter().find(|e| e.0 == j).map_or(0.0, |e| e.1);
        if abs(pivot) < 1e-7 * scale {
            continue;
        }
        alive[i] = false;
        out.push((i, j));
        for &(k, _) in row {
            count[k] -= 1;
            if k != j && free[k] && count[k] == 1 {
                stack.push(k);
            }
        }
    }
    kept.retain(|&i| alive[i]);
    out
}

struct Simplex<'o> {
    m: usize,
    /// First artificial column.
    art_start: usize,
    cols: Vec<Vec<(usize, f64)>>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    x: Vec<f64>,
    state: Vec<State>,
    basis: Vec<usize>,
    /// Column-major `m x m` inverse: entry `(i, k)` at `binv[k * m + i]`.
    binv: Vec<f64>,
    b: Vec<f64>,
    opts: &'o LpOptions,
    bland: bool,
    degenerate_streak: usize,
    since_refactor: usize,
    iterations: usize,
    max_iterations: usize,
}

pub(super) fn solve(lp: &LinearProgram, opts: &LpOptions) -> LpSolution {
    let n = lp.num_vars();
    let nrows = lp.num_rows();

    // Merge duplicate entries and set aside rows without coefficients.
    let mut kept = Vec::with_capacity(nrows);
    let mut empty_violations = Vec::new();
    let mut row_entries: Vec<Vec<(usize, f64)>> = Vec::with_capacity(nrows);
    for (i, c) in lp.constraints().iter().enumerate() {
        let mut entries: Vec<(usize, f64)> = c.coeffs.iter().map(|&(v, a)| (v.0, a)).collect();
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for (j, a) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == j => last.1 += a,
                _ => merged.push((j, a)),
            }
        }
        merged.retain(|e| e.1 != 0.0);
        if merged.is_empty() {
            let tol = opts.feas_tol * (1.0 + abs(c.rhs));
            let viol = match c.sense {
                Sense::Le => -c.rhs,
                Sense::Ge => c.rhs,
                Sense::Eq => abs(c.rhs),
            };
            if viol > tol {
                empty_violations.push((Row(i), viol));
            }
        } else {
            kept.push(i);
        }
        row_entries.push(merged);
    }
    let eliminated = eliminate_free_singletons(lp, &row_entries, &mut kept);

    if !empty_violations.is_empty() {
        let phase_one_objective = empty_violations.iter().map(|e| e.1).sum();
        return LpSolution {
            status: LpStatus::Infeasible,
            primal: vec![0.0; n],
            duals: vec![0.0; nrows],
            reduced_costs: vec![0.0; n],
            objective: f64::NAN,
            iterations: 0,
            certificate: Some(InfeasibilityCertificate {
                phase_one_objective,
                rows: empty_violations.into_iter().map(|e| e.0).collect(),
                row_prices: vec![0.0; nrows],
            }),
            message: Some("row without coefficients violates its right-hand side"),
        };
    }

    let m = kept.len();
    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n + m];
    let mut b = Vec::with_capacity(m);
    let mut lower = Vec::with_capacity(n + 2 * m);
    let mut upper = Vec::with_capacity(n + 2 * m);
    for v in lp.variables() {
        lower.push(v.lower);
        upper.push(v.upper);
    }
    for (pos, &i) in kept.iter().enumerate() {
        let c = &lp.constraints()[i];
        for &(j, a) in &row_entries[i] {
            cols[j].push((pos, a));
        }
        cols[n + pos].push((pos, 1.0));
        b.push(c.rhs);
        let (lo, up) = match c.sense {
            Sense::Le => (0.0, INF),
            Sense::Ge => (-INF, 0.0),
            Sense::Eq => (0.0, 0.0),
        };
        lower.push(lo);
        upper.push(up);
    }

    // Initial nonbasic placement of structurals.
    let mut x = vec![0.0; n + m];
    let mut state = vec![State::AtLower; n + m];
    for j in 0..n {
        let (lo, up) = (lower[j], upper[j]);
        if lo > -INF {
            x[j] = lo;
            state[j] = State::AtLower;
        } else if up < INF {
            x[j] = up;
            state[j] = State::AtUpper;
        } else {
            x[j] = 0.0;
            state[j] = State::Free;
        }
    }
    let mut residual = b.clone();
    for j in 0..n {
        if x[j] != 0.0 {
            for &(r, a) in &cols[j] {
                residual[r] -= a * x[j];
            }
        }
    }

    let art_start = n + m;
    let mut basis = vec![0usize; m];
    let mut binv = vec![0.0; m * m];
    for r in 0..m {
        let s = n + r;
        let (lo, up) = (lower[s], upper[s]);
        let res = residual[r];
        if res >= lo && res <= up {
            x[s] = res;
            state[s] = State::Basic;
            basis[r] = s;
            binv[r * m + r] = 1.0;
        } else {
            let at = if res < lo { lo } else { up };
            x[s] = at;
            state[s] = if at == lo { State::AtLower } else { State::AtUpper };
            let gap = res - at;
            let sign = if gap >= 0.0 { 1.0 } else { -1.0 };
            cols.push(vec![(r, sign)]);
            lower.push(0.0);
            upper.push(INF);
            x.push(abs(gap));
            state.push(State::Basic);
            basis[r] = cols.len() - 1;
            binv[r * m + r] = sign;
        }
    }

    let total = cols.len();
    let max_iterations = opts.max_iterations.unwrap_or(20_000 + 50 * (total + m));
    let mut sx = Simplex {
        m,
        art_start,
        cols,
        lower,
        upper,
        x,
        state,
        basis,
        binv,
        b,
        opts,
        bland: false,
        degenerate_streak: 0,
        since_refactor: 0,
        iterations: 0,
        max_iterations,
    };

    let failure = |sx: &Simplex, msg: &'static str| LpSolution {
        status: LpStatus::NumericFailure,
        primal: sx.x[..n].to_vec(),
        duals: vec![0.0; nrows],
        reduced_costs: vec![0.0; n],
        objective: f64::NAN,
        iterations: sx.iterations,
        certificate: None,
        message: Some(msg),
    };

    // Phase one.
    if total > art_start {
        let mut cost1 = vec![0.0; total];
        for c in cost1.iter_mut().skip(art_start) {
            *c = 1.0;
        }
        match sx.optimize(&cost1) {
            PhaseEnd::Optimal => {}
            PhaseEnd::Unbounded => return failure(&sx, "phase one reported unbounded"),
            PhaseEnd::Failure(msg) => return failure(&sx, msg),
        }
        if let Err(msg) = sx.refactor() {
            return failure(&sx, msg);
        }
        let mut infeasible_rows = Vec::new();
        let mut sum = 0.0;
        for j in art_start..total {
            let r = sx.cols[j][0].0;
            sum += sx.x[j];
            if sx.x[j] > opts.feas_tol * (1.0 + abs(sx.b[r])) {
                infeasible_rows.push(Row(kept[r]));
            }
        }
        if !infeasible_rows.is_empty() {
            let y = sx.prices(&cost1);
            let mut row_prices = vec![0.0; nrows];
            for (pos, &i) in kept.iter().enumerate() {
                row_prices[i] = y[pos];
            }
            return LpSolution {
                status: LpStatus::Infeasible,
                primal: sx.x[..n].to_vec(),
                duals: vec![0.0; nrows],
                reduced_costs: vec![0.0; n],
                objective: f64::NAN,
                iterations: sx.iterations,
                certificate: Some(InfeasibilityCertificate {
                    phase_one_objective: sum,
                    rows: infeasible_rows,
                    row_prices,
                }),
                message: None,
            };
        }
        sx.drive_out_artificials();
        for j in art_start..total {
            sx.lower[j] = 0.0;
            sx.upper[j] = 0.0;
            sx.x[j] = 0.0;
            if sx.state[j] != State::Basic {
                sx.state[j] = State::AtLower;
            }
        }
        if let Err(msg) = sx.refactor() {
            return failure(&sx, msg);
        }
        sx.bland = false;
        sx.degenerate_streak = 0;
    }

    // Phase two.
    let mut cost2 = vec![0.0; total];
    for (j, v) in lp.variables().iter().enumerate() {
        cost2[j] = v.cost;
    }
    let end = sx.optimize(&cost2);
    match end {
        PhaseEnd::Optimal => {}
        PhaseEnd::Unbounded => {
            return LpSolution {
                status: LpStatus::Unbounded,
                primal: sx.x[..n].to_vec(),
                duals: vec![0.0; nrows],
                reduced_costs: vec![0.0; n],
                objective: f64::NEG_INFINITY,
                iterations: sx.iterations,
                certificate: None,
                message: None,
            }
        }
        PhaseEnd::Failure(msg) => return failure(&sx, msg),
    }
    if let Err(msg) = sx.refactor() {
        return failure(&sx, msg);
    }

    let y = sx.prices(&cost2);
    let mut duals = vec![0.0; nrows];
    for (pos, &i) in kept.iter().enumerate() {
        duals[i] = y[pos];
    }
    let reduced_costs: Vec<f64> = (0..n)
        .map(|j| cost2[j] - sx.cols[j].iter().map(|&(r, a)| y[r] * a).sum::<f64>())
        .collect();
    let mut primal = sx.x[..n].to_vec();
    for &(i, j) in eliminated.iter().rev() {
        let (mut rest, mut pivot) = (0.0, 0.0);
        for &(k, a) in &row_entries[i] {
            if k == j {
                pivot = a;
            } else {
                rest += a * primal[k];
            }
        }
        primal[j] = (lp.constraints()[i].rhs - rest) / pivot;
    }

    let sol = LpSolution {
        status: LpStatus::Optimal,
        objective: lp.evaluate(&primal),
        primal,
        duals,
        reduced_costs,
        iterations: sx.iterations,
        certificate: None,
        message: None,
    };
    if lp.max_scaled_violation(&sol.primal) > opts.feas_tol {
        return LpSolution {
            status: LpStatus::NumericFailure,
            message: Some("final primal point violates feasibility tolerance"),
            ..sol
        };
    }
    sol
}

impl Simplex<'_> {
    fn total(&self) -> usize {
        self.cols.len()
    }

    fn is_fixed(&self, j: usize) -> bool {
        self.lower[j] == self.upper[j]
    }

    /// `y^T = c_B^T B^{-1}`
    fn prices(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let cb: Vec<f64> = self.basis.iter().map(|&j| cost[j]).collect();
        let mut y = vec![0.0; m];
        for (k, yk) in y.iter_mut().enumerate() {
            let col = &self.binv[k * m..(k + 1) * m];
            *yk = cb.iter().zip(col).map(|(c, v)| c * v).sum();
        }
        y
    }

    /// `B^{-1} A_j`
    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut alpha = vec![0.0; m];
        for &(r, a) in &self.cols[j] {
            let col = &self.binv[r * m..(r + 1) * m];
            for (al, v) in alpha.iter_mut().zip(col) {
                *al += a * v;
            }
        }
        alpha
    }

    /// Rebuilds the inverse from the basis columns and recomputes basic values.
    fn refactor(&mut self) -> Result<(), &'static str> {
        let m = self.m;
        self.since_refactor = 0;
        if m == 0 {
            return Ok(());
        }
        // Row-major augmented Gauss-Jordan on [B | I].
        let w = 2 * m;
        let mut a = vec![0.0; m * w];
        for (k, &j) in self.basis.iter().enumerate() {
            for &(r, v) in &self.cols[j] {
                a[r * w + k] = v;
            }
        }
        for i in 0..m {
            a[i * w + m + i] = 1.0;
        }
        for c in 0..m {
            let mut piv = c;
            let mut best = abs(a[c * w + c]);
            for r in (c + 1)..m {
                let v = abs(a[r * w + c]);
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < SINGULAR_TOL {
                return Err("singular basis during refactorisation");
            }
            if piv != c {
                for k in 0..w {
                    a.swap(c * w + k, piv * w + k);
                }
            }
            let p = a[c * w + c];
            for k in 0..w {
                a[c * w + k] /= p;
            }
            let pivot_row: Vec<f64> = a[c * w..(c + 1) * w].to_vec();
            for r in 0..m {
                if r == c {
                    continue;
                }
                let f = a[r * w + c];
                if f != 0.0 {
                    let row = &mut a[r * w..(r + 1) * w];
                    for (x, pv) in row.iter_mut().zip(&pivot_row) {
                        *x -= f * pv;
                    }
                }
            }
        }
        // a[i][m + k] = (B^{-1})_{i,k}; store column-major.
        for k in 0..m {
            for i in 0..m {
                self.binv[k * m + i] = a[i * w + m + k];
            }
        }
        self.recompute_basic_values();
        Ok(())
    }

    fn recompute_basic_values(&mut self) {
        let m = self.m;
        let mut rhs = self.b.clone();
        for j in 0..self.total() {
            if self.state[j] != State::Basic && self.x[j] != 0.0 {
                for &(r, a) in &self.cols[j] {
                    rhs[r] -= a * self.x[j];
                }
            }
        }
        let mut xb = vec![0.0; m];
        for (k, &rk) in rhs.iter().enumerate() {
            if rk != 0.0 {
                let col = &self.binv[k * m..(k + 1) * m];
                for (v, c) in xb.iter_mut().zip(col) {
                    *v += rk * c;
                }
            }
        }
        for (pos, &j) in self.basis.iter().enumerate() {
            self.x[j] = xb[pos];
        }
    }

    /// Replaces the basic variable at `pos` by column `q` given `alpha = B^{-1} A_q`.
    fn update_inverse(&mut self, pos: usize, alpha: &[f64]) {
        let m = self.m;
        let ap = alpha[pos];
        for k in 0..m {
            let col = &mut self.binv[k * m..(k + 1) * m];
            let v = col[pos];
            if v == 0.0 {
                continue;
            }
            let p = v / ap;
            for (i, c) in col.iter_mut().enumerate() {
                *c -= alpha[i] * p;
            }
            col[pos] = p;
        }
    }

    fn choose_entering(&self, cost: &[f64], y: &[f64]) -> Option<(usize, f64)> {
        let tol = self.opts.opt_tol;
        let mut best: Option<(usize, f64)> = None;
        let mut best_score = 0.0;
        for j in 0..self.total() {
            let st = self.state[j];
            if st == State::Basic || self.is_fixed(j) {
                continue;
            }
            let d = cost[j] - self.cols[j].iter().map(|&(r, a)| y[r] * a).sum::<f64>();
            let dir = match st {
                State::AtLower if d < -tol => 1.0,
                State::AtUpper if d > tol => -1.0,
                State::Free if d < -tol => 1.0,
                State::Free if d > tol => -1.0,
                _ => continue,
            };
            if self.bland {
                return Some((j, dir));
            }
            if abs(d) > best_score {
                best_score = abs(d);
                best = Some((j, dir));
            }
        }
        best
    }

    /// Ratio test. Returns `(step, leaving position)`; `None` position means
    /// the entering variable flips to its other bound. `Err(false)` when unbounded, `Err(true)` on a numerical breakdown.
    fn ratio_test(&self, q: usize, dir: f64, alpha: &[f64]) -> Result<(f64, Option<usize>), bool> {
        let ptol = self.opts.pivot_tol;
        let range = self.upper[q] - self.lower[q];
        let exact = |i: usize| -> Option<f64> {
            let a = alpha[i];
            if abs(a) <= ptol {
                return None;
            }
            let rate = -dir * a;
            let j = self.basis[i];
            if rate < 0.0 && self.lower[j] > -INF {
                Some(((self.x[j] - self.lower[j]) / -rate).max(0.0))
            } else if rate > 0.0 && self.upper[j] < INF {
                Some(((self.upper[j] - self.x[j]) / rate).max(0.0))
            } else {
                None
            }
        };

        if self.bland {
            let mut best: Option<(f64, usize)> = None;
            for i in 0..self.m {
                if let Some(t) = exact(i) {
                    best = match best {
                        None => Some((t, i)),
                        Some((bt, bi)) => {
                            let tie = abs(t - bt) <= 1e-12 * (1.0 + bt);
                            if t < bt && !tie || tie && self.basis[i] < self.basis[bi] {
                                Some((t, i))
                            } else {
                                Some((bt, bi))
                            }
                        }
                    };
                }
            }
            return match best {
                Some((t, i)) if t < range => Ok((t, Some(i))),
                _ if range < INF => Ok((range, None)),
                _ => {
                    // Tiny pivots with the right sign under anti-cycling are a
                    // breakdown, not a proof of unboundedness.
                    let tiny = (0..self.m).any(|i| {
                        let a = alpha[i];
                        abs(a) > 1e-14 && abs(a) <= ptol && {
                            let rate = -dir * a;
                            let j = self.basis[i];
                            (rate < 0.0 && self.lower[j] > -INF) || (rate > 0.0 && self.upper[j] < INF)
                        }
                    });
                    Err(tiny)
                }
            };
        }

        // Harris two-pass.
        let mut theta = INF;
        for i in 0..self.m {
            let a = alpha[i];
            if abs(a) <= ptol {
                continue;
            }
            let rate = -dir * a;
            let j = self.basis[i];
            // a basic variable already past its bound counts as sitting on it
            let bound = if rate < 0.0 && self.lower[j] > -INF {
                ((self.x[j] - self.lower[j]).max(0.0) + HARRIS_DELTA) / -rate
            } else if rate > 0.0 && self.upper[j] < INF {
                ((self.upper[j] - self.x[j]).max(0.0) + HARRIS_DELTA) / rate
            } else {
                continue;
            };
            if bound < theta {
                theta = bound;
            }
        }
        if theta == INF {
            return if range < INF { Ok((range, None)) } else { Err(false) };
        }
        let mut chosen: Option<(f64, usize)> = None;
        let mut best_alpha = 0.0;
        for i in 0..self.m {
            if let Some(t) = exact(i) {
                if t <= theta && abs(alpha[i]) > best_alpha {
                    best_alpha = abs(alpha[i]);
                    chosen = Some((t, i));
                }
            }
        }
        let Some((t, i)) = chosen else { return Err(true) };
        if range <= t {
            Ok((range, None))
        } else {
            Ok((t, Some(i)))
        }
    }

    fn optimize(&mut self, cost: &[f64]) -> PhaseEnd {
        loop {
            if self.iterations >= self.max_iterations {
                return PhaseEnd::Failure("iteration limit reached");
            }
            if self.since_refactor >= self.opts.refactor_interval {
                if let Err(msg) = self.refactor() {
                    return PhaseEnd::Failure(msg);
                }
            }
            let y = self.prices(cost);
            let Some((q, dir)) = self.choose_entering(cost, &y) else {
                return PhaseEnd::Optimal;
            };
            let alpha = self.ftran(q);
            let (step, leave) = match self.ratio_test(q, dir, &alpha) {
                Ok(r) => r,
                Err(true) => return PhaseEnd::Failure("ratio test breakdown"),
                Err(false) => return PhaseEnd::Unbounded,
            };
            self.iterations += 1;

            for (i, &a) in alpha.iter().enumerate() {
                if a != 0.0 {
                    let j = self.basis[i];
                    self.x[j] -= dir * step * a;
                }
            }
            self.x[q] += dir * step;

            match leave {
                None => {
                    // Bound flip.
                    if dir > 0.0 {
                        self.x[q] = self.upper[q];
                        self.state[q] = State::AtUpper;
                    } else {
                        self.x[q] = self.lower[q];
                        self.state[q] = State::AtLower;
                    }
                }
                Some(pos) => {
                    let out = self.basis[pos];
                    let rate = -dir * alpha[pos];
                    if rate < 0.0 {
                        self.x[out] = self.lower[out];
                        self.state[out] = State::AtLower;
                    } else {
                        self.x[out] = self.upper[out];
                        self.state[out] = State::AtUpper;
                    }
                    self.update_inverse(pos, &alpha);
                    self.basis[pos] = q;
                    self.state[q] = State::Basic;
                    self.since_refactor += 1;
                }
            }

            if step <= DEGENERATE_STEP {
                self.degenerate_streak += 1;
                if self.degenerate_streak >= self.opts.degenerate_limit {
                    self.bland = true;
                }
            } else {
                self.degenerate_streak = 0;
                self.bland = false;
            }
        }
    }

    /// Pivots basic artificials (all at zero after a feasible phase one) out
    /// of the basis where some non-artificial column can replace them. Rows
    /// where none can are redundant and keep their artificial at zero.
    fn drive_out_artificials(&mut self) {
        let m = self.m;
        for pos in 0..m {
            if self.basis[pos] < self.art_start {
                continue;
            }
            let mut best: Option<usize> = None;
            let mut best_val = 1e-7;
            for j in 0..self.art_start {
                if self.state[j] == State::Basic {
                    continue;
                }
                let v: f64 = self.cols[j].iter().map(|&(r, a)| a * self.binv[r * m + pos]).sum();
                if abs(v) > best_val {
                    best_val = abs(v);
                    best = Some(j);
                }
            }
            if let Some(q) = best {
                let alpha = self.ftran(q);
                let out = self.basis[pos];
                self.x[out] = 0.0;
                self.state[out] = State::AtLower;
                self.update_inverse(pos, &alpha);
                self.basis[pos] = q;
                self.state[q] = State::Basic;
                self.since_refactor += 1;
            }
        }
    }
}
