//! Exact linear feasibility over free variables.
//!
//! A [`LinearSystem`] is a list of rows `a·x >= b` or `a·x = b`. The solver
//! first eliminates the free variables by exact row reduction, which leaves a
//! system over the nonnegative surplus variables only; that residual system is
//! settled by a phase-one simplex with Bland's least-index rule. Infeasible
//! systems come back with a Farkas vector `y` (nonnegative on inequality rows,
//! `yᵀA = 0`, `yᵀb > 0`) that [`validate_farkas`] can check independently.
//!
//! Strict inequalities are not representable. Callers with homogeneous
//! systems rewrite `a·x > 0` as `a·x >= 1`.

use serde::{Deserialize, Serialize};

use crate::linalg::rref;
use crate::scalar::{dot, ExactField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row<F> {
    pub coeffs: Vec<F>,
    pub relation: Relation,
    pub rhs: F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem<F> {
    num_vars: usize,
    rows: Vec<Row<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityResult<F> {
    Feasible(Vec<F>),
    Infeasible(Vec<F>),
}

impl<F> FeasibilityResult<F> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }
}

impl<F: ExactField> LinearSystem<F> {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem { num_vars, rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Row<F>] {
        &self.rows
    }

    /// Adds `coeffs·x >= rhs`.
    ///
    /// # Panics
    /// If `coeffs` does not have one entry per variable.
    pub fn add_ge(&mut self, coeffs: Vec<F>, rhs: F) -> &mut Self {
        self.push(coeffs, Relation::Ge, rhs)
    }

    /// Adds `coeffs·x = rhs`.
    pub fn add_eq(&mut self, coeffs: Vec<F>, rhs: F) -> &mut Self {
        self.push(coeffs, Relation::Eq, rhs)
    }

    pub fn push(&mut self, coeffs: Vec<F>, relation: Relation, rhs: F) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "row length must equal the variable count");
        self.rows.push(Row { coeffs, relation, rhs });
        self
    }

    /// Whether `x` satisfies every row exactly.
    pub fn is_satisfied_by(&self, x: &[F]) -> bool {
        x.len() == self.num_vars
            && self.rows.iter().all(|row| {
                let lhs = dot(&row.coeffs, x);
                match row.relation {
                    Relation::Ge => lhs >= row.rhs,
                    Relation::Eq => lhs == row.rhs,
                }
            })
    }
}

/// Checks that `y` certifies infeasibility of `sys`.
pub fn validate_farkas<F: ExactField>(sys: &LinearSystem<F>, y: &[F]) -> bool {
    if y.len() != sys.rows.len() {
        return false;
    }
    let signs_ok = sys
        .rows
        .iter()
        .zip(y)
        .all(|(row, yi)| row.relation == Relation::Eq || !yi.is_negative());
    if !signs_ok {
        return false;
    }
    let annihilates = (0..sys.num_vars).all(|j| {
        sys.rows
            .iter()
            .zip(y)
            .fold(F::zero(), |acc, (row, yi)| acc + yi.clone() * row.coeffs[j].clone())
            .is_zero()
    });
    let rhs = sys
        .rows
        .iter()
        .zip(y)
        .fold(F::zero(), |acc, (row, yi)| acc + yi.clone() * row.rhs.clone());
    annihilates && rhs.is_positive()
}

/// Decides feasibility of `sys` exactly.
pub fn solve_feasibility<F: ExactField>(sys: &LinearSystem<F>) -> FeasibilityResult<F> {
    let m = sys.rows.len();
    let n = sys.num_vars;
    if m == 0 {
        return FeasibilityResult::Feasible(vec![F::zero(); n]);
    }

    // Surplus columns, one per inequality row: a·x - s = b with s >= 0.
    let surplus_of: Vec<Option<usize>> = {
        let mut next = 0;
        sys.rows
            .iter()
            .map(|r| match r.relation {
                Relation::Ge => {
                    next += 1;
                    Some(next - 1)
                }
                Relation::Eq => None,
            })
            .collect()
    };
    let ns = surplus_of.iter().flatten().count();

    // Layout: [x (n) | s (ns) | rhs | tracking (m)].
    let width = n + ns + 1 + m;
    let rhs_col = n + ns;
    let mut tab: Vec<Vec<F>> = sys
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut t = vec![F::zero(); width];
            t[..n].clone_from_slice(&row.coeffs);
            if let Some(s) = surplus_of[i] {
                t[n + s] = -F::one();
            }
            t[rhs_col] = row.rhs.clone();
            t[rhs_col + 1 + i] = F::one();
            t
        })
        .collect();

    let pivots = rref(&mut tab, n);
    let residual: Vec<&Vec<F>> = tab[pivots.len()..].iter().collect();

    let surplus = match phase_one(&residual, ns, rhs_col) {
        PhaseOne::Feasible(s) => s,
        PhaseOne::Infeasible(z) => {
            let mut y = vec![F::zero(); m];
            for (zk, row) in z.iter().zip(&residual) {
                if zk.is_zero() {
                    continue;
                }
                for (yi, t) in y.iter_mut().zip(&row[rhs_col + 1..]) {
                    *yi = yi.clone() + zk.clone() * t.clone();
                }
            }
            let y = normalize(y);
            debug_assert!(validate_farkas(sys, &y));
            return FeasibilityResult::Infeasible(y);
        }
    };

    // Non-pivot free variables are set to zero; pivot ones are read off.
    let mut x = vec![F::zero(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        let row = &tab[r];
        let mut v = row[rhs_col].clone();
        for (j, sj) in surplus.iter().enumerate() {
            v = v - row[n + j].clone() * sj.clone();
        }
        x[pc] = v;
    }
    debug_assert!(sys.is_satisfied_by(&x));
    FeasibilityResult::Feasible(x)
}

/// Scales a certificate by a positive factor so its first nonzero entry is ±1.
fn normalize<F: ExactField>(y: Vec<F>) -> Vec<F> {
    match y.iter().find(|v| !v.is_zero()) {
        Some(first) => {
            let scale = first.abs();
            y.into_iter().map(|v| v / scale.clone()).collect()
        }
        None => y,
    }
}

enum PhaseOne<F> {
    Feasible(Vec<F>),
    /// Multipliers on the residual rows (in their original orientation).
    Infeasible(Vec<F>),
}

/// Phase one on `C s = r, s >= 0`. Each residual row holds its `C` entries in
/// the `ns` columns just before `rhs_col` and `r` at `rhs_col`.
fn phase_one<F: ExactField>(residual: &[&Vec<F>], ns: usize, rhs_col: usize) -> PhaseOne<F> {
    let m = residual.len();
    if m == 0 {
        return PhaseOne::Feasible(vec![F::zero(); ns]);
    }
    let first = rhs_col - ns;

    // Orient rows so the right-hand side is nonnegative, then append an
    // identity block of artificials. Columns: [s (ns) | art (m) | rhs].
    let mut flip = Vec::with_capacity(m);
    let mut tab: Vec<Vec<F>> = residual
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let sign = if row[rhs_col].is_negative() { -F::one() } else { F::one() };
            let mut t = Vec::with_capacity(ns + m + 1);
            t.extend(row[first..rhs_col].iter().map(|v| v.clone() * sign.clone()));
            t.extend((0..m).map(|a| if a == k { F::one() } else { F::zero() }));
            t.push(row[rhs_col].clone() * sign.clone());
            flip.push(sign);
            t
        })
        .collect();
    let cols = ns + m;
    let mut basis: Vec<usize> = (ns..ns + m).collect();

    // Reduced costs for minimizing the artificial sum; last entry is -objective.
    let mut cost = vec![F::zero(); cols + 1];
    for row in &tab {
        for j in 0..ns {
            cost[j] = cost[j].clone() - row[j].clone();
        }
        cost[cols] = cost[cols].clone() - row[cols].clone();
    }

    // Bland: smallest column index with negative reduced cost enters.
    while let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) {
        // Ratio test; ties go to the smallest basic variable index.
        let mut leave: Option<(usize, F)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = row[cols].clone() / row[enter].clone();
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (pr, _) = leave.expect("phase one objective is bounded below");
        pivot(&mut tab, &mut cost, pr, enter);
        basis[pr] = enter;
    }

    if cost[cols].is_zero() {
        let mut s = vec![F::zero(); ns];
        for (i, &b) in basis.iter().enumerate() {
            if b < ns {
                s[b] = tab[i][cols].clone();
            }
        }
        PhaseOne::Feasible(s)
    } else {
        // Dual multipliers from the artificial columns: z_k = 1 - reduced cost.
        let z = (0..m)
            .map(|k| (F::one() - cost[ns + k].clone()) * flip[k].clone())
            .collect();
        PhaseOne::Infeasible(z)
    }
}

fn pivot<F: ExactField>(tab: &mut [Vec<F>], cost: &mut [F], pr: usize, pc: usize) {
    let inv = F::one() / tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v = v.clone() * inv.clone();
    }
    let prow = tab[pr].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v = v.clone() - f.clone() * p.clone();
            }
        }
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for (v, p) in cost.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v = v.clone() - f.clone() * p.clone();
            }
        }
    }
}
