//! Dense two-phase simplex.
//!
//! Pricing is Dantzig's largest reduced cost. Ties in the ratio test are
//! broken lexicographically on the rows of `B^-1`, which the artificial
//! columns carry throughout, so the method cannot cycle. The tableau is
//! rebuilt from the original rows every [`REINVERT_EVERY`] pivots and before
//! the final answer to keep roundoff from piling up.

use crate::error::{Error, Result};

/// Tableau cells (rows x columns) allowed before giving up.
pub const DEFAULT_LP_BUDGET: usize = 60_000_000;

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-10;
const TIE_EPS: f64 = 1e-12;
/// Pivots between rebuilds of the tableau from the original data.
pub const REINVERT_EVERY: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// `opt c^T x` subject to `A_eq x = b_eq`, `A_le x <= b_le`, `x >= lower`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub eq_rows: Vec<Vec<f64>>,
    pub eq_rhs: Vec<f64>,
    pub le_rows: Vec<Vec<f64>>,
    pub le_rhs: Vec<f64>,
    pub lower: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub optimum: f64,
    pub x: Vec<f64>,
    /// Dual objective rebuilt from the final multipliers.
    pub dual_objective: f64,
    /// `|dual_objective - optimum|`.
    pub duality_gap: f64,
    /// Largest violation of dual feasibility (negative reduced cost) seen
    /// when the multipliers are checked against the original data.
    pub dual_infeasibility: f64,
    pub pivots: usize,
}

impl LpProblem {
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            eq_rows: Vec::new(),
            eq_rhs: Vec::new(),
            le_rows: Vec::new(),
            le_rhs: Vec::new(),
            lower: vec![0.0; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_eq(&mut self, row: Vec<f64>, rhs: f64) {
        self.eq_rows.push(row);
        self.eq_rhs.push(rhs);
    }

    pub fn add_le(&mut self, row: Vec<f64>, rhs: f64) {
        self.le_rows.push(row);
        self.le_rhs.push(rhs);
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if self.lower.len() != n {
            return Err(Error::shape("lower bounds length differs from variable count"));
        }
        if self.eq_rows.len() != self.eq_rhs.len() || self.le_rows.len() != self.le_rhs.len() {
            return Err(Error::shape("constraint rows and right-hand sides differ in count"));
        }
        for row in self.eq_rows.iter().chain(&self.le_rows) {
            if row.len() != n {
                return Err(Error::shape("constraint row length differs from variable count"));
            }
            if !finite(row) {
                return Err(Error::Data("non-finite constraint coefficient".into()));
            }
        }
        if !finite(&self.objective) || !finite(&self.eq_rhs) || !finite(&self.le_rhs) || !finite(&self.lower) {
            return Err(Error::Data("non-finite LP data".into()));
        }
        Ok(())
    }
}

struct Tableau {
    m: usize,
    width: usize,
    /// First column of the artificial block, which holds `B^-1`.
    art: usize,
    /// (m + 1) x (width + 1); last column is the rhs, last row the reduced costs.
    t: Vec<f64>,
    /// Constraint rows as first loaded, for reinversion.
    original: Vec<f64>,
    cost: Vec<f64>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * (self.width + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width + 1;
        let pv = self.t[r * w + c];
        for j in 0..w {
            self.t[r * w + j] /= pv;
        }
        let prow: Vec<f64> = self.t[r * w..(r + 1) * w].to_vec();
        for i in 0..=self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * w + c];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.t[i * w..(i + 1) * w];
            for (x, p) in row.iter_mut().zip(&prow) {
                *x -= f * p;
            }
            row[c] = 0.0;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Load a cost vector into the objective row as reduced costs.
    fn set_costs(&mut self, cost: &[f64]) {
        self.cost = cost.to_vec();
        let w = self.width + 1;
        let m = self.m;
        for j in 0..w {
            self.t[m * w + j] = if j < self.width { cost[j] } else { 0.0 };
        }
        for i in 0..m {
            let cb = cost[self.basis[i]];
            if cb == 0.0 {
                continue;
            }
            for j in 0..w {
                self.t[m * w + j] -= cb * self.t[i * w + j];
            }
        }
    }

    /// Recomputes `B^-1 [A | b]` and the reduced costs for the current basis
    /// by Gauss-Jordan elimination with partial pivoting on the original rows.
    fn reinvert(&mut self) -> Result<()> {
        let w = self.width + 1;
        let m = self.m;
        let cols = self.basis.clone();
        let pivots = self.pivots;
        self.t[..m * w].copy_from_slice(&self.original);
        let mut free = vec![true; m];
        for &c in &cols {
            let r = (0..m)
                .filter(|&i| free[i])
                .max_by(|&a, &b| self.at(a, c).abs().total_cmp(&self.at(b, c).abs()))
                .ok_or_else(|| Error::Internal("basis larger than row count".into()))?;
            if self.at(r, c).abs() < PIVOT_EPS {
                return Err(Error::Internal("simplex basis became singular".into()));
            }
            self.pivot(r, c);
            free[r] = false;
        }
        self.pivots = pivots;
        let cost = std::mem::take(&mut self.cost);
        self.set_costs(&cost);
        Ok(())
    }

    /// Row `i` beats row `l` in the lexicographic ratio test for column `c`.
    fn lex_less(&self, i: usize, l: usize, c: usize) -> bool {
        let (ai, al) = (self.at(i, c), self.at(l, c));
        for k in self.art..self.art + self.m {
            let (u, v) = (self.at(i, k) / ai, self.at(l, k) / al);
            if (u - v).abs() > TIE_EPS * (1.0 + u.abs().max(v.abs())) {
                return u < v;
            }
        }
        self.basis[i] < self.basis[l]
    }

    /// Minimizes the loaded objective over columns `< allowed`.
    fn optimize(&mut self, allowed: usize, max_pivots: usize) -> Result<()> {
        let m = self.m;
        let mut since_reinvert = 0usize;
        loop {
            let mut enter = None;
            let mut best = -COST_EPS;
            for j in 0..allowed {
                let d = self.at(m, j);
                if d < best {
                    best = d;
                    enter = Some(j);
                }
            }
            let Some(c) = enter else { return Ok(()) };
            let mut leave: Option<usize> = None;
            let mut ratio = f64::INFINITY;
            for i in 0..m {
                let a = self.at(i, c);
                if a > PIVOT_EPS {
                    let r = self.rhs(i).max(0.0) / a;
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            r < ratio - TIE_EPS * (1.0 + ratio)
                                || (r <= ratio + TIE_EPS * (1.0 + ratio) && self.lex_less(i, l, c))
                        }
                    };
                    if better {
                        ratio = r;
                        leave = Some(i);
                    }
                }
            }
            let Some(r) = leave else { return Err(Error::Unbounded) };
            self.pivot(r, c);
            if self.pivots > max_pivots {
                return Err(Error::Convergence(format!(
                    "simplex exceeded {max_pivots} pivots"
                )));
            }
            since_reinvert += 1;
            if since_reinvert >= REINVERT_EVERY {
                self.reinvert()?;
                since_reinvert = 0;
            }
        }
    }

    /// Optimizes, then rebuilds the tableau and resumes until a fresh
    /// tableau confirms optimality.
    fn optimize_refined(&mut self, allowed: usize, max_pivots: usize) -> Result<()> {
        for _ in 0..8 {
            self.optimize(allowed, max_pivots)?;
            let before = self.pivots;
            self.reinvert()?;
            self.optimize(allowed, max_pivots)?;
            if self.pivots == before {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Solves the LP with default budget.
pub fn lp_solve(p: &LpProblem) -> Result<LpSolution> {
    lp_solve_with_budget(p, DEFAULT_LP_BUDGET)
}

pub fn lp_solve_with_budget(p: &LpProblem, budget: usize) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars();
    let n_eq = p.eq_rows.len();
    let n_le = p.le_rows.len();
    let m = n_eq + n_le;
    // Columns: structural (shifted by lower bound), slacks, artificials.
    let n_struct = n + n_le;
    let width = n_struct + m;
    if (m + 1).saturating_mul(width + 1) > budget {
        return Err(Error::resource(format!(
            "LP tableau of {} x {} exceeds budget {budget}",
            m + 1,
            width + 1
        )));
    }

    let sign = match p.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let cost: Vec<f64> = p.objective.iter().map(|c| sign * c).collect();

    // Rows with rhs adjusted for the lower-bound shift and flipped to b >= 0.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut flips = Vec::with_capacity(m);
    for (k, (row, &b)) in p.eq_rows.iter().chain(&p.le_rows).zip(p.eq_rhs.iter().chain(&p.le_rhs)).enumerate() {
        let mut full = vec![0.0; n_struct];
        full[..n].copy_from_slice(row);
        if k >= n_eq {
            full[n + k - n_eq] = 1.0;
        }
        let shifted = b - row.iter().zip(&p.lower).map(|(a, l)| a * l).sum::<f64>();
        let s = if shifted < 0.0 { -1.0 } else { 1.0 };
        full.iter_mut().for_each(|x| *x *= s);
        rows.push(full);
        rhs.push(shifted * s);
        flips.push(s);
    }

    let w = width + 1;
    let mut t = vec![0.0; (m + 1) * w];
    for i in 0..m {
        t[i * w..i * w + n_struct].copy_from_slice(&rows[i]);
        t[i * w + n_struct + i] = 1.0;
        t[i * w + width] = rhs[i];
    }
    let mut tab = Tableau {
        m,
        width,
        art: n_struct,
        original: t[..m * w].to_vec(),
        t,
        cost: Vec::new(),
        basis: (n_struct..width).collect(),
        pivots: 0,
    };
    let max_pivots = 50 * (m + width) + 10_000;

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![0.0; width];
    phase1[n_struct..].iter_mut().for_each(|c| *c = 1.0);
    tab.set_costs(&phase1);
    tab.optimize_refined(n_struct, max_pivots)?;
    let infeas: f64 = (0..m)
        .filter(|&i| tab.basis[i] >= n_struct)
        .map(|i| tab.rhs(i))
        .sum();
    let scale = 1.0 + rhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    if infeas > 1e-8 * scale {
        return Err(Error::Infeasible);
    }
    // Drive zero-level artificials out of the basis where possible.
    for i in 0..m {
        if tab.basis[i] >= n_struct {
            if let Some(j) = (0..n_struct).find(|&j| tab.at(i, j).abs() > PIVOT_EPS) {
                tab.pivot(i, j);
            }
        }
    }

    // Phase 2: artificials stay in the tableau but may not enter.
    let mut phase2 = vec![0.0; width];
    phase2[..n].copy_from_slice(&cost);
    tab.set_costs(&phase2);
    tab.optimize_refined(n_struct, max_pivots)?;

    let mut z = vec![0.0; n_struct];
    for i in 0..m {
        if tab.basis[i] < n_struct {
            z[tab.basis[i]] = tab.rhs(i).max(0.0);
        }
    }
    let x: Vec<f64> = (0..n).map(|j| z[j] + p.lower[j]).collect();
    let primal_min: f64 = cost.iter().zip(&x).map(|(c, v)| c * v).sum();

    // Multipliers of the flipped rows: reduced cost of artificial i is -y_i.
    let y_flipped: Vec<f64> = (0..m).map(|i| -tab.at(m, n_struct + i)).collect();
    let y: Vec<f64> = y_flipped.iter().zip(&flips).map(|(v, s)| v * s).collect();
    // Dual objective of min c^T x, A_eq x = b, A_le x <= b, x >= l:
    //   b^T y + sum_j l_j (c_j - a_j^T y)  with y_le <= 0 and c - A^T y >= 0.
    let all_rows: Vec<&Vec<f64>> = p.eq_rows.iter().chain(&p.le_rows).collect();
    let all_rhs: Vec<f64> = p.eq_rhs.iter().chain(&p.le_rhs).copied().collect();
    let mut reduced = cost.clone();
    for (row, yi) in all_rows.iter().zip(&y) {
        for (rj, a) in reduced.iter_mut().zip(row.iter()) {
            *rj -= a * yi;
        }
    }
    let mut dual_infeasibility = reduced.iter().fold(0.0f64, |a, r| a.max(-r));
    for yi in &y[n_eq..] {
        dual_infeasibility = dual_infeasibility.max(*yi);
    }
    let dual_min: f64 = all_rhs.iter().zip(&y).map(|(b, yi)| b * yi).sum::<f64>()
        + p.lower.iter().zip(&reduced).map(|(l, r)| l * r).sum::<f64>();

    Ok(LpSolution {
        optimum: sign * primal_min,
        x,
        dual_objective: sign * dual_min,
        duality_gap: (dual_min - primal_min).abs(),
        dual_infeasibility,
        pivots: tab.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_single_variable() {
        let mut p = LpProblem::new(Sense::Maximize, vec![1.0]);
        p.add_le(vec![1.0], 1.0);
        let s = lp_solve(&p).unwrap();
        assert!((s.optimum - 1.0).abs() < 1e-12);
        assert!(s.duality_gap <= 1e-8);
    }

    #[test]
    fn max_two_variables() {
        let mut p = LpProblem::new(Sense::Maximize, vec![1.0, 1.0]);
        p.add_le(vec![1.0, 1.0], 2.0);
        p.add_le(vec![1.0, 0.0], 1.0);
        let s = lp_solve(&p).unwrap();
        assert!((s.optimum - 2.0).abs() < 1e-12);
        assert!(s.duality_gap <= 1e-8);
        assert!(s.dual_infeasibility <= 1e-9);
    }

    #[test]
    fn equalities_lower_bounds_and_minimize() {
        // min 2x + 3y s.t. x + y = 4, x >= 1, y >= 2  -> x = 2, y = 2, value 10.
        let mut p = LpProblem::new(Sense::Minimize, vec![2.0, 3.0]);
        p.add_eq(vec![1.0, 1.0], 4.0);
        p.lower = vec![1.0, 2.0];
        let s = lp_solve(&p).unwrap();
        assert!((s.optimum - 10.0).abs() < 1e-12);
        assert!((s.x[0] - 2.0).abs() < 1e-12);
        assert!(s.duality_gap <= 1e-8);
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        // -x - y <= -1 and a duplicated equality.
        let mut p = LpProblem::new(Sense::Minimize, vec![1.0, 2.0]);
        p.add_le(vec![-1.0, -1.0], -1.0);
        p.add_eq(vec![1.0, -1.0], 0.0);
        p.add_eq(vec![2.0, -2.0], 0.0);
        let s = lp_solve(&p).unwrap();
        assert!((s.optimum - 1.5).abs() < 1e-12);
        assert!(s.duality_gap <= 1e-8);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = LpProblem::new(Sense::Maximize, vec![1.0]);
        p.add_le(vec![1.0], -1.0);
        assert_eq!(lp_solve(&p).unwrap_err(), Error::Infeasible);
        let q = LpProblem::new(Sense::Maximize, vec![1.0]);
        assert_eq!(lp_solve(&q).unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn shape_and_budget_errors() {
        let mut p = LpProblem::new(Sense::Maximize, vec![1.0, 1.0]);
        p.add_le(vec![1.0], 1.0);
        assert!(matches!(lp_solve(&p), Err(Error::Shape(_))));
        let mut q = LpProblem::new(Sense::Maximize, vec![1.0]);
        q.add_le(vec![1.0], 1.0);
        assert!(matches!(lp_solve_with_budget(&q, 2), Err(Error::Resource(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn strong_duality(
                c in prop::collection::vec(0.1f64..2.0, 4),
                a in prop::collection::vec(0.0f64..3.0, 12),
                b in prop::collection::vec(0.5f64..5.0, 3),
            ) {
                // max c^T x, A x <= b, x >= 0 with nonnegative A is bounded when
                // every column has a positive entry; add x_j <= 10 to make sure.
                let mut p = LpProblem::new(Sense::Maximize, c);
                for i in 0..3 {
                    p.add_le(a[4 * i..4 * i + 4].to_vec(), b[i]);
                }
                for j in 0..4 {
                    let mut row = vec![0.0; 4];
                    row[j] = 1.0;
                    p.add_le(row, 10.0);
                }
                let s = lp_solve(&p).unwrap();
                prop_assert!(s.duality_gap <= 1e-8);
                prop_assert!(s.dual_infeasibility <= 1e-9);
                for i in 0..3 {
                    let lhs: f64 = a[4 * i..4 * i + 4].iter().zip(&s.x).map(|(u, v)| u * v).sum();
                    prop_assert!(lhs <= b[i] + 1e-9);
                }
            }
        }
    }
}
