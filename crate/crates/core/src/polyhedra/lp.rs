//! Dense two-phase simplex over exact rationals, Bland's pivoting rule.
//!
//! Variables are free; each is split as `x = u - w` with `u, w >= 0`.
//! Strict rows are relaxed to their closures here; [`strict_point`] handles
//! strictness on top of this.

use num_traits::{One, Signed, Zero};

use super::{Constraint, Polyhedron};
use crate::rational::{dot, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rat, point: Vec<Rat> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            let inv = p.recip();
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            self.rhs[r] *= &inv;
        }
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost` over the current basic feasible solution. Columns with
    /// `allowed[j] == false` never enter. Returns false when unbounded.
    fn minimize(&mut self, cost: &[Rat], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.ncols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        reduced -= &cost[b] * &self.rows[i][j];
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn value_of(&self, col: usize) -> Rat {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map(|i| self.rhs[i].clone())
            .unwrap_or_else(Rat::zero)
    }
}

/// Optimizes a linear objective over the closure of `p`.
pub fn lp_solve(objective: &[Rat], p: &Polyhedron, sense: Sense) -> LpResult {
    assert_eq!(objective.len(), p.dim);
    let n = p.dim;
    let rows: Vec<&Constraint> = p.constraints.iter().collect();
    let m = rows.len();
    // trivial rows are decided up front
    for c in &rows {
        if c.is_trivial() && c.bound.is_negative() {
            return LpResult::Infeasible;
        }
    }
    let artificial: Vec<usize> = (0..m).filter(|&i| rows[i].bound.is_negative()).collect();
    let k = artificial.len();
    let ncols = 2 * n + m + k;
    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        ncols,
    };
    let mut art_idx = 0;
    for (i, c) in rows.iter().enumerate() {
        let mut row = vec![Rat::zero(); ncols];
        let neg = c.bound.is_negative();
        let sign = if neg { -Rat::one() } else { Rat::one() };
        for j in 0..n {
            if !c.normal[j].is_zero() {
                row[j] = &sign * &c.normal[j];
                row[n + j] = -&row[j];
            }
        }
        row[2 * n + i] = sign.clone();
        let basic = if neg {
            let col = 2 * n + m + art_idx;
            art_idx += 1;
            row[col] = Rat::one();
            col
        } else {
            2 * n + i
        };
        t.rows.push(row);
        t.rhs.push(&sign * &c.bound);
        t.basis.push(basic);
    }

    let all = vec![true; ncols];
    if k > 0 {
        let mut cost = vec![Rat::zero(); ncols];
        for c in cost.iter_mut().skip(2 * n + m) {
            *c = Rat::one();
        }
        t.minimize(&cost, &all);
        let infeas: Rat = (2 * n + m..ncols).map(|j| t.value_of(j)).sum();
        if infeas.is_positive() {
            return LpResult::Infeasible;
        }
        // drive artificial columns out of the basis
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= 2 * n + m {
                match (0..2 * n + m).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![Rat::zero(); ncols];
    for j in 0..n {
        let c = match sense {
            Sense::Max => -&objective[j],
            Sense::Min => objective[j].clone(),
        };
        cost[n + j] = -&c;
        cost[j] = c;
    }
    let mut allowed = all;
    for a in allowed.iter_mut().skip(2 * n + m) {
        *a = false;
    }
    if !t.minimize(&cost, &allowed) {
        return LpResult::Unbounded;
    }
    let point: Vec<Rat> = (0..n).map(|j| t.value_of(j) - t.value_of(n + j)).collect();
    let value = dot(objective, &point);
    LpResult::Optimal { value, point }
}

/// A point of `p` respecting strict rows, or `None` when `p` is empty.
///
/// Maximizes a slack `s <= 1` added to every strict row; the set is nonempty
/// iff the closure is feasible and the optimal slack is positive.
pub fn strict_point(p: &Polyhedron) -> Option<Vec<Rat>> {
    for c in &p.constraints {
        if c.is_trivial() && !c.trivially_true() {
            return None;
        }
    }
    let n = p.dim;
    if p.is_closed() {
        return match lp_solve(&vec![Rat::zero(); n], p, Sense::Max) {
            LpResult::Optimal { point, .. } => Some(point),
            _ => None,
        };
    }
    let mut cs = Vec::with_capacity(p.constraints.len() + 1);
    for c in &p.constraints {
        if c.is_trivial() {
            continue;
        }
        let mut normal = c.normal.clone();
        normal.push(if c.strict { Rat::one() } else { Rat::zero() });
        cs.push(Constraint::le(normal, c.bound.clone()));
    }
    let mut cap = vec![Rat::zero(); n + 1];
    cap[n] = Rat::one();
    cs.push(Constraint::le(cap.clone(), Rat::one()));
    let lifted = Polyhedron::new(n + 1, cs);
    match lp_solve(&cap, &lifted, Sense::Max) {
        LpResult::Optimal { value, mut point } if value.is_positive() => {
            point.pop();
            debug_assert!(p.contains(&point));
            Some(point)
        }
        _ => None,
    }
}
