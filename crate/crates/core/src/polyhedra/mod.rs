//! Exact rational polyhedra with first-class strict inequalities.
//!
//! A [`Polyhedron`] is a finite conjunction of constraints
//! `<normal, v> <= bound` (or `<` when strict). Everything above this module
//! (extended-real functions, upper sets, set-valued functions) is expressed
//! through these H-representations and finite unions of them.

mod canon;
mod dd;
mod fm;
mod lp;
mod region;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot, format_rat, is_zero_vec, primitive_factor, scale_vec, Rat};

pub use canon::canonicalize;
pub use dd::{closed_hull, cone_generators, h_to_v, v_to_h, Generators};
pub use fm::project;
pub use lp::{lp_solve, strict_point, LpResult, Sense};
pub(crate) use region::absorb;
pub use region::{
    complement, difference, region_contains, region_equal, region_is_empty, region_subset,
};

static CONSTRAINT_CAP: AtomicUsize = AtomicUsize::new(10_000);

/// Cap on intermediate constraint and piece counts (default 10,000).
pub fn constraint_cap() -> usize {
    CONSTRAINT_CAP.load(Ordering::Relaxed)
}

pub fn set_constraint_cap(cap: usize) {
    CONSTRAINT_CAP.store(cap, Ordering::Relaxed);
}

pub(crate) fn check_cap(op: &'static str, count: usize) -> Result<()> {
    let cap = constraint_cap();
    if count > cap {
        Err(Error::Resource { op, count, cap })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub normal: Vec<Rat>,
    pub bound: Rat,
    pub strict: bool,
}

impl Constraint {
    pub fn le(normal: Vec<Rat>, bound: Rat) -> Self {
        Constraint {
            normal,
            bound,
            strict: false,
        }
    }

    pub fn lt(normal: Vec<Rat>, bound: Rat) -> Self {
        Constraint {
            normal,
            bound,
            strict: true,
        }
    }

    pub fn holds_at(&self, v: &[Rat]) -> bool {
        let lhs = dot(&self.normal, v);
        if self.strict {
            lhs < self.bound
        } else {
            lhs <= self.bound
        }
    }

    /// The complementary halfspace (`>` for `<=`, `>=` for `<`).
    pub fn negated(&self) -> Constraint {
        Constraint {
            normal: self.normal.iter().map(|x| -x).collect(),
            bound: -&self.bound,
            strict: !self.strict,
        }
    }

    pub fn closure(&self) -> Constraint {
        Constraint {
            strict: false,
            ..self.clone()
        }
    }

    pub fn is_trivial(&self) -> bool {
        is_zero_vec(&self.normal)
    }

    /// For a zero normal: whether `0 <= bound` (resp. `<`) is satisfied.
    pub fn trivially_true(&self) -> bool {
        if self.strict {
            self.bound.is_positive()
        } else {
            !self.bound.is_negative()
        }
    }

    /// Positive rescaling to a coprime integer normal.
    pub fn normalized(&self) -> Constraint {
        let f = primitive_factor(&self.normal);
        Constraint {
            normal: scale_vec(&f, &self.normal),
            bound: &self.bound * &f,
            strict: self.strict,
        }
    }
}

/// `{v : <normal_i, v> <= bound_i}` with `<` on strict rows. No rows means
/// the whole space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polyhedron {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Self {
        for c in &constraints {
            assert_eq!(c.normal.len(), dim, "constraint length must equal dim");
        }
        Polyhedron { dim, constraints }
    }

    pub fn whole(dim: usize) -> Self {
        Polyhedron {
            dim,
            constraints: Vec::new(),
        }
    }

    /// The designated empty form `0 <= -1`.
    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            dim,
            constraints: vec![Constraint::le(vec![Rat::zero(); dim], -Rat::from_integer(1.into()))],
        }
    }

    /// A single point as a system of equalities.
    pub fn point(v: &[Rat]) -> Self {
        let dim = v.len();
        let mut cs = Vec::with_capacity(2 * dim);
        for (i, x) in v.iter().enumerate() {
            let mut e = vec![Rat::zero(); dim];
            e[i] = Rat::from_integer(1.into());
            cs.push(Constraint::le(e.clone(), x.clone()));
            cs.push(Constraint::le(e.iter().map(|a| -a).collect(), -x));
        }
        Polyhedron::new(dim, cs)
    }

    pub fn with(mut self, c: Constraint) -> Self {
        assert_eq!(c.normal.len(), self.dim);
        self.constraints.push(c);
        self
    }

    pub fn push(&mut self, c: Constraint) {
        assert_eq!(c.normal.len(), self.dim);
        self.constraints.push(c);
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.constraints.iter().all(|c| c.holds_at(v))
    }

    pub fn is_closed(&self) -> bool {
        self.constraints.iter().all(|c| !c.strict)
    }

    /// Drops every strict flag. This is the topological closure whenever the
    /// polyhedron is nonempty.
    pub fn closure(&self) -> Polyhedron {
        Polyhedron {
            dim: self.dim,
            constraints: self.constraints.iter().map(Constraint::closure).collect(),
        }
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim, other.dim);
        let mut cs = self.constraints.clone();
        cs.extend(other.constraints.iter().cloned());
        Polyhedron::new(self.dim, cs)
    }

    pub fn is_empty(&self) -> bool {
        strict_point(self).is_none()
    }

    /// Whether `d` is a recession direction (`p + t d` stays inside for t >= 0).
    /// Exact for nonempty polyhedra.
    pub fn has_recession(&self, d: &[Rat]) -> bool {
        self.constraints
            .iter()
            .all(|c| !dot(&c.normal, d).is_positive())
    }

    /// `{x : (M x + offset) in self}` for a `dim x n` matrix `M`.
    pub fn preimage(&self, m: &[Vec<Rat>], offset: &[Rat], n: usize) -> Polyhedron {
        assert_eq!(m.len(), self.dim);
        assert_eq!(offset.len(), self.dim);
        let cs = self
            .constraints
            .iter()
            .map(|c| {
                let normal = (0..n)
                    .map(|j| {
                        c.normal
                            .iter()
                            .zip(m)
                            .fold(Rat::zero(), |acc, (a, row)| acc + a * &row[j])
                    })
                    .collect();
                Constraint {
                    normal,
                    bound: &c.bound - dot(&c.normal, offset),
                    strict: c.strict,
                }
            })
            .collect();
        Polyhedron::new(n, cs)
    }

    /// Re-embeds into `new_dim` coordinates, sending old coordinate `i` to
    /// `positions[i]`. Other coordinates are unconstrained.
    pub fn embed(&self, new_dim: usize, positions: &[usize]) -> Polyhedron {
        assert_eq!(positions.len(), self.dim);
        let cs = self
            .constraints
            .iter()
            .map(|c| {
                let mut normal = vec![Rat::zero(); new_dim];
                for (i, &p) in positions.iter().enumerate() {
                    normal[p] = c.normal[i].clone();
                }
                Constraint {
                    normal,
                    bound: c.bound.clone(),
                    strict: c.strict,
                }
            })
            .collect();
        Polyhedron::new(new_dim, cs)
    }

    /// `self × other`.
    pub fn product(&self, other: &Polyhedron) -> Polyhedron {
        let dim = self.dim + other.dim;
        let left = self.embed(dim, &(0..self.dim).collect::<Vec<_>>());
        left.intersect(&other.embed(dim, &(self.dim..dim).collect::<Vec<_>>()))
    }

    /// Translates the set by `v`.
    pub fn translate(&self, v: &[Rat]) -> Polyhedron {
        let cs = self
            .constraints
            .iter()
            .map(|c| Constraint {
                normal: c.normal.clone(),
                bound: &c.bound + dot(&c.normal, v),
                strict: c.strict,
            })
            .collect();
        Polyhedron::new(self.dim, cs)
    }

    /// `t * P` for `t > 0`.
    pub fn scale(&self, t: &Rat) -> Polyhedron {
        assert!(t.is_positive());
        let cs = self
            .constraints
            .iter()
            .map(|c| Constraint {
                normal: c.normal.clone(),
                bound: &c.bound * t,
                strict: c.strict,
            })
            .collect();
        Polyhedron::new(self.dim, cs)
    }

    /// `-P`.
    pub fn negate(&self) -> Polyhedron {
        let cs = self
            .constraints
            .iter()
            .map(|c| Constraint {
                normal: c.normal.iter().map(|a| -a).collect(),
                bound: c.bound.clone(),
                strict: c.strict,
            })
            .collect();
        Polyhedron::new(self.dim, cs)
    }

    /// Supremum of `<direction, v>` over the set.
    pub fn support(&self, direction: &[Rat]) -> Support {
        if self.is_empty() {
            return Support::Empty;
        }
        match lp_solve(direction, &self.closure(), Sense::Max) {
            LpResult::Infeasible => Support::Empty,
            LpResult::Unbounded => Support::Unbounded,
            LpResult::Optimal { value, .. } => {
                // attained on the original set iff the optimal face meets it
                let face = self
                    .clone()
                    .with(Constraint::le(
                        direction.iter().map(|a| -a).collect(),
                        -value.clone(),
                    ));
                let attained = !face.is_empty();
                Support::Finite { value, attained }
            }
        }
    }

    /// Non-strict rows that hold with equality on the whole (nonempty) set.
    pub fn implicit_equalities(&self) -> Vec<usize> {
        let closed = self.closure();
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.strict && !c.is_trivial())
            .filter(|(_, c)| match lp_solve(&c.normal, &closed, Sense::Min) {
                LpResult::Optimal { value, .. } => value == c.bound,
                _ => false,
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Relative interior of a nonempty closed polyhedron: implicit equalities
    /// stay, every other row becomes strict.
    pub fn relative_interior(&self) -> Polyhedron {
        let eq = self.implicit_equalities();
        let cs = self
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| Constraint {
                strict: !eq.contains(&i),
                ..c.clone()
            })
            .collect();
        Polyhedron::new(self.dim, cs)
    }

    /// `P ⊆ Q`, decided by emptiness of `P ∩ ¬q` for every row of `Q`.
    pub fn subset_of(&self, other: &Polyhedron) -> bool {
        other
            .constraints
            .iter()
            .all(|c| self.clone().with(c.negated()).is_empty())
    }

    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.subset_of(other) && other.subset_of(self)
    }
}

/// `P + Q`, by lifting `(s, u)` with `u in P`, `s - u in Q` and projecting.
pub fn minkowski_sum(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    assert_eq!(p.dim, q.dim);
    let d = p.dim;
    let up = p.embed(2 * d, &(d..2 * d).collect::<Vec<_>>());
    // s - u as a linear map of (s, u)
    let m: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            let mut row = vec![Rat::zero(); 2 * d];
            row[i] = Rat::from_integer(1.into());
            row[d + i] = -Rat::from_integer(1.into());
            row
        })
        .collect();
    let uq = q.preimage(&m, &vec![Rat::zero(); d], 2 * d);
    project(&up.intersect(&uq), &(0..d).collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    Empty,
    Unbounded,
    Finite { value: Rat, attained: bool },
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraints.is_empty() {
            return write!(f, "{{whole Q^{}}}", self.dim);
        }
        let rows: Vec<String> = self
            .constraints
            .iter()
            .map(|c| {
                let n: Vec<String> = c.normal.iter().map(format_rat).collect();
                format!(
                    "[{}] {} {}",
                    n.join(" "),
                    if c.strict { "<" } else { "<=" },
                    format_rat(&c.bound)
                )
            })
            .collect();
        write!(f, "{{{}}}", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rats};

    #[test]
    fn strict_emptiness() {
        // x < 0 and x > 0
        let p = Polyhedron::new(
            1,
            vec![Constraint::lt(rats(&[1]), rat(0)), Constraint::lt(rats(&[-1]), rat(0))],
        );
        assert!(p.is_empty());
        assert!(!p.closure().is_empty());
    }

    #[test]
    fn support_attainment() {
        // 0 <= x < 1
        let p = Polyhedron::new(
            1,
            vec![Constraint::le(rats(&[-1]), rat(0)), Constraint::lt(rats(&[1]), rat(1))],
        );
        assert_eq!(
            p.support(&rats(&[1])),
            Support::Finite {
                value: rat(1),
                attained: false
            }
        );
        assert_eq!(
            p.support(&rats(&[-1])),
            Support::Finite {
                value: rat(0),
                attained: true
            }
        );
    }

    #[test]
    fn relative_interior_of_segment() {
        // segment {(t, 0) : 0 <= t <= 1} in the plane
        let p = Polyhedron::new(
            2,
            vec![
                Constraint::le(rats(&[0, 1]), rat(0)),
                Constraint::le(rats(&[0, -1]), rat(0)),
                Constraint::le(rats(&[1, 0]), rat(1)),
                Constraint::le(rats(&[-1, 0]), rat(0)),
            ],
        );
        let ri = p.relative_interior();
        assert!(ri.contains(&[crate::rational::ratio(1, 2), rat(0)]));
        assert!(!ri.contains(&rats(&[0, 0])));
        assert!(!ri.is_empty());
    }
}
