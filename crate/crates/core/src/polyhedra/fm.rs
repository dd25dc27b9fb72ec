//! Fourier–Motzkin projection with strict flags and LP-based pruning.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{check_cap, Constraint, Polyhedron};
use crate::error::Result;
use crate::rational::{scale_vec, Rat};

/// Projects `p` onto the coordinates in `keep`, in that order.
pub fn project(p: &Polyhedron, keep: &[usize]) -> Result<Polyhedron> {
    let k = keep.len();
    if p.is_empty() {
        return Ok(Polyhedron::empty(k));
    }
    let mut rows = prune(p.dim, p.constraints.clone())?;
    let mut alive: Vec<usize> = (0..p.dim).collect();
    let kept: BTreeSet<usize> = keep.iter().copied().collect();

    loop {
        let candidates: Vec<usize> = alive.iter().copied().filter(|v| !kept.contains(v)).collect();
        if candidates.is_empty() {
            break;
        }
        // prefer an equality pair, else the smallest pos*neg product
        let var = candidates
            .iter()
            .copied()
            .min_by_key(|&v| {
                let pos = rows.iter().filter(|c| c.normal[v].is_positive()).count();
                let neg = rows.iter().filter(|c| c.normal[v].is_negative()).count();
                let eq = find_equality(&rows, v).is_some();
                (!eq, pos * neg, v)
            })
            .unwrap();
        rows = eliminate(&rows, var)?;
        rows = prune(p.dim, rows)?;
        alive.retain(|&v| v != var);
    }

    let cs = rows
        .into_iter()
        .map(|c| Constraint {
            normal: keep.iter().map(|&i| c.normal[i].clone()).collect(),
            bound: c.bound,
            strict: c.strict,
        })
        .collect();
    Ok(Polyhedron::new(k, cs))
}

/// Indices (i, j) of a non-strict pair `a x <= b`, `-a x <= -b` involving `var`.
fn find_equality(rows: &[Constraint], var: usize) -> Option<(usize, usize)> {
    for (i, c) in rows.iter().enumerate() {
        if c.strict || c.normal[var].is_zero() {
            continue;
        }
        let neg = c.negated();
        for (j, d) in rows.iter().enumerate().skip(i + 1) {
            if !d.strict && d.normal == neg.normal && d.bound == neg.bound {
                return Some((i, j));
            }
        }
    }
    None
}

fn eliminate(rows: &[Constraint], var: usize) -> Result<Vec<Constraint>> {
    if let Some((i, _)) = find_equality(rows, var) {
        let e = &rows[i];
        let pivot = e.normal[var].clone();
        let mut out = Vec::with_capacity(rows.len());
        for c in rows {
            let f = &c.normal[var] / &pivot;
            if f.is_zero() {
                out.push(c.clone());
                continue;
            }
            let normal: Vec<Rat> = c.normal.iter().zip(&e.normal).map(|(a, b)| a - &f * b).collect();
            out.push(Constraint {
                normal,
                bound: &c.bound - &f * &e.bound,
                strict: c.strict,
            });
        }
        return Ok(out);
    }

    let mut zero = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for c in rows {
        let a = &c.normal[var];
        if a.is_zero() {
            zero.push(c.clone());
        } else {
            // scale so the coefficient of var is +1 or -1
            let f = a.abs().recip();
            let s = Constraint {
                normal: scale_vec(&f, &c.normal),
                bound: &c.bound * &f,
                strict: c.strict,
            };
            if a.is_positive() {
                pos.push(s);
            } else {
                neg.push(s);
            }
        }
    }
    check_cap("projection", zero.len() + pos.len() * neg.len())?;
    for p in &pos {
        for n in &neg {
            zero.push(Constraint {
                normal: p.normal.iter().zip(&n.normal).map(|(a, b)| a + b).collect(),
                bound: &p.bound + &n.bound,
                strict: p.strict || n.strict,
            });
        }
    }
    Ok(zero)
}

/// Normalizes, deduplicates and removes LP-redundant rows. A row is redundant
/// when the others together with its complement describe the empty set.
pub(crate) fn prune(dim: usize, rows: Vec<Constraint>) -> Result<Vec<Constraint>> {
    check_cap("redundancy removal", rows.len())?;
    let mut seen: Vec<Constraint> = Vec::new();
    for c in rows {
        if c.is_trivial() {
            if c.trivially_true() {
                continue;
            }
            return Ok(Polyhedron::empty(dim).constraints);
        }
        let c = c.normalized();
        // keep only the tightest row for each normal
        if let Some(old) = seen.iter_mut().find(|o| o.normal == c.normal) {
            if c.bound < old.bound || (c.bound == old.bound && c.strict) {
                *old = c;
            }
        } else {
            seen.push(c);
        }
    }
    if Polyhedron::new(dim, seen.clone()).is_empty() {
        return Ok(Polyhedron::empty(dim).constraints);
    }
    let mut i = 0;
    while i < seen.len() {
        let mut others: Vec<Constraint> = Vec::with_capacity(seen.len());
        for (j, c) in seen.iter().enumerate() {
            if j != i {
                others.push(c.clone());
            }
        }
        others.push(seen[i].negated());
        if Polyhedron::new(dim, others).is_empty() {
            seen.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(seen)
}
