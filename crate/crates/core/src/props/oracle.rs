//! Reference evaluations through generators and a single LP per query.
//!
//! These never touch projection, conjugation or the union machinery, so
//! they give an independent second opinion on the main routes.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::ext_real::ExtReal;
use crate::polyhedra::{h_to_v, lp_solve, Constraint, Generators, LpResult, Polyhedron, Sense};
use crate::rational::Rat;
use crate::scalar::ScalarFn;
use crate::setvalued::SetFn;

/// `conv(points) + cone(rays) + span(lines)` over several generator sets.
pub struct Hull {
    dim: usize,
    points: Vec<Vec<Rat>>,
    rays: Vec<Vec<Rat>>,
}

impl Hull {
    pub fn of(dim: usize, pieces: &[Polyhedron]) -> Result<Hull> {
        let mut hull = Hull {
            dim,
            points: Vec::new(),
            rays: Vec::new(),
        };
        for p in pieces {
            let Generators { points, rays, lines, .. } = h_to_v(p)?;
            if points.is_empty() {
                continue;
            }
            hull.points.extend(points);
            hull.rays.extend(rays);
            for l in lines {
                hull.rays.push(l.iter().map(|v| -v).collect());
                hull.rays.push(l);
            }
        }
        Ok(hull)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Minimizes `w · y` over hull points `y` whose coordinates marked
    /// `Some` are pinned.
    pub fn minimize(&self, fixed: &[Option<Rat>], w: &[Rat]) -> LpResult {
        let (np, nr) = (self.points.len(), self.rays.len());
        let nv = np + nr;
        let mut rows = Vec::new();
        for i in 0..nv {
            let mut a = vec![Rat::zero(); nv];
            a[i] = -Rat::one();
            rows.push(Constraint::le(a, Rat::zero()));
        }
        let mut sum = vec![Rat::zero(); nv];
        for v in sum.iter_mut().take(np) {
            *v = Rat::one();
        }
        rows.push(Constraint::le(sum.clone(), Rat::one()));
        rows.push(Constraint::le(sum.iter().map(|v| -v).collect(), -Rat::one()));
        let column = |c: usize| -> Vec<Rat> {
            self.points
                .iter()
                .chain(&self.rays)
                .map(|g| g[c].clone())
                .collect()
        };
        for (c, f) in fixed.iter().enumerate() {
            if let Some(v) = f {
                let a = column(c);
                rows.push(Constraint::le(a.iter().map(|x| -x).collect(), -v));
                rows.push(Constraint::le(a, v.clone()));
            }
        }
        let mut objective = vec![Rat::zero(); nv];
        for (c, wc) in w.iter().enumerate() {
            if wc.is_zero() {
                continue;
            }
            for (o, g) in objective.iter_mut().zip(column(c)) {
                *o += wc * g;
            }
        }
        lp_solve(&objective, &Polyhedron::new(nv, rows), Sense::Min)
    }

    pub fn contains(&self, y: &[Rat]) -> bool {
        let fixed: Vec<Option<Rat>> = y.iter().cloned().map(Some).collect();
        !self.is_empty()
            && !matches!(
                self.minimize(&fixed, &vec![Rat::zero(); self.dim]),
                LpResult::Infeasible
            )
    }

    /// `sup_y w · y`.
    pub fn support(&self, w: &[Rat]) -> ExtReal {
        if self.is_empty() {
            return ExtReal::NegInf;
        }
        let neg: Vec<Rat> = w.iter().map(|v| -v).collect();
        match self.minimize(&vec![None; self.dim], &neg) {
            LpResult::Optimal { value, .. } => ExtReal::Finite(-value),
            LpResult::Unbounded => ExtReal::PosInf,
            LpResult::Infeasible => ExtReal::NegInf,
        }
    }
}

/// `(cl co g)(x)` from the generators of `epi g`.
pub fn scalar_hull_value(g: &ScalarFn, x: &[Rat]) -> Result<ExtReal> {
    let n = g.dim();
    let hull = Hull::of(n + 1, &g.epigraph())?;
    if hull.is_empty() {
        return Ok(ExtReal::PosInf);
    }
    let mut fixed: Vec<Option<Rat>> = x.iter().cloned().map(Some).collect();
    fixed.push(None);
    let mut w = vec![Rat::zero(); n];
    w.push(Rat::one());
    Ok(match hull.minimize(&fixed, &w) {
        LpResult::Optimal { value, .. } => ExtReal::Finite(value),
        LpResult::Unbounded => ExtReal::NegInf,
        LpResult::Infeasible => ExtReal::PosInf,
    })
}

/// `g*(x*) = sup {x*(x) - r : (x, r) in epi g}`.
pub fn scalar_conjugate(g: &ScalarFn, x_star: &[Rat]) -> Result<ExtReal> {
    let mut w = x_star.to_vec();
    w.push(-Rat::one());
    Ok(Hull::of(g.dim() + 1, &g.epigraph())?.support(&w))
}

/// `sup {x*(x) + z*(z) : (x, z) in gr g}`, the scalar conjugate of
/// `φ_{g,z*}` at `x*`.
pub fn graph_support(g: &SetFn, x_star: &[Rat], z_star: &[Rat]) -> Result<ExtReal> {
    let mut w = x_star.to_vec();
    w.extend(z_star.iter().cloned());
    Ok(Hull::of(g.x_dim() + g.z_dim(), &g.graph())?.support(&w))
}

/// `(x, z) in cl co gr g`.
pub fn in_hull(g: &SetFn, x: &[Rat], z: &[Rat]) -> Result<bool> {
    let mut y = x.to_vec();
    y.extend(z.iter().cloned());
    Ok(Hull::of(g.x_dim() + g.z_dim(), &g.graph())?.contains(&y))
}
