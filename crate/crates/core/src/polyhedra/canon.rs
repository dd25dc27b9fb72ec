//! Canonical H-representation.
//!
//! For closed polyhedra the output is unique per point set: the affine hull
//! in reduced row echelon form with coprime integer rows, followed by the
//! facet rows reduced modulo the hull's pivot columns, scaled to coprime
//! integers and sorted. Strict rows go through the same pipeline.

use num_traits::Zero;

use super::{Constraint, Polyhedron};
use crate::rational::{primitive, Rat};

pub fn canonicalize(p: &Polyhedron) -> Polyhedron {
    let dim = p.dim;
    if p.is_empty() {
        return Polyhedron::empty(dim);
    }
    let rows: Vec<Constraint> = p
        .constraints
        .iter()
        .filter(|c| !c.is_trivial())
        .cloned()
        .collect();
    let base = Polyhedron::new(dim, rows);
    let eq_idx = base.implicit_equalities();

    // augmented rows [a | b] of the affine hull
    let mut aug: Vec<Vec<Rat>> = eq_idx
        .iter()
        .map(|&i| {
            let c = &base.constraints[i];
            let mut r = c.normal.clone();
            r.push(c.bound.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, dim);
    let eqs: Vec<Vec<Rat>> = aug.iter().map(|r| primitive(r)).collect();

    let reduce = |c: &Constraint| -> Constraint {
        let mut normal = c.normal.clone();
        let mut bound = c.bound.clone();
        for (row, &pc) in aug.iter().zip(&pivots) {
            let f = normal[pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..dim {
                normal[j] -= &f * &row[j];
            }
            bound -= &f * &row[dim];
        }
        Constraint {
            normal,
            bound,
            strict: c.strict,
        }
    };

    let mut ineqs: Vec<Constraint> = Vec::new();
    for (i, c) in base.constraints.iter().enumerate() {
        if eq_idx.contains(&i) {
            continue;
        }
        let r = reduce(c);
        if r.is_trivial() {
            continue;
        }
        let r = r.normalized();
        if let Some(old) = ineqs.iter_mut().find(|o| o.normal == r.normal) {
            if r.bound < old.bound || (r.bound == old.bound && r.strict) {
                *old = r;
            }
        } else {
            ineqs.push(r);
        }
    }

    let mut hull: Vec<Constraint> = Vec::with_capacity(2 * eqs.len());
    for e in &eqs {
        let normal = e[..dim].to_vec();
        let bound = e[dim].clone();
        hull.push(Constraint::le(normal.iter().map(|a| -a).collect(), -&bound));
        hull.push(Constraint::le(normal, bound));
    }

    let mut i = 0;
    while i < ineqs.len() {
        let mut test = hull.clone();
        for (j, c) in ineqs.iter().enumerate() {
            if j != i {
                test.push(c.clone());
            }
        }
        test.push(ineqs[i].negated());
        if Polyhedron::new(dim, test).is_empty() {
            ineqs.remove(i);
        } else {
            i += 1;
        }
    }
    ineqs.sort();
    hull.extend(ineqs);
    Polyhedron::new(dim, hull)
}

/// In-place reduced row echelon form over the first `cols` columns (extra
/// columns are carried along). Zero rows are dropped; returns pivot columns.
pub(crate) fn rref(m: &mut Vec<Vec<Rat>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}
