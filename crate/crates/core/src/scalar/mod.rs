//! Piecewise-linear extended-real functions on `Q^n`.
//!
//! A [`ScalarFn`] is stored as a finite union of epigraph pieces in `X × Q`
//! (value axis last) together with a finite union of polyhedra where the
//! function is `-∞`. After normalization every piece row has a non-positive
//! value coefficient, rows with a negative value coefficient are non-strict,
//! and so the union of the pieces is exactly the epigraph away from the
//! `-∞` region.

mod chain;
mod improper;

use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::ext_real::ExtReal;
use crate::polyhedra::{
    absorb, canonicalize, closed_hull, h_to_v, minkowski_sum, project, region_equal,
    region_subset, Constraint, Polyhedron,
};
use crate::rational::{dot, Matrix, Rat};

pub use chain::{chain_rule_scalar, ChainCheck, Qualification, ScalarChainReport};
pub(crate) use chain::{attaining_ystar, qualify};
pub use improper::{ImproperAffine, ImproperMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarFn {
    dim: usize,
    pieces: Vec<Polyhedron>,
    minus_inf: Vec<Polyhedron>,
}

/// `(x, r) -> (x, r)` lifted by appending the value axis to a region in `X`.
fn cylinder(region: &Polyhedron) -> Polyhedron {
    let n = region.dim;
    region.embed(n + 1, &(0..n).collect::<Vec<_>>())
}

/// Closes a piece upward along the value axis: `P + {0} × Q_+`.
fn upward(p: &Polyhedron) -> Result<Polyhedron> {
    let n = p.dim - 1;
    if p.constraints.iter().all(|c| !c.normal[n].is_positive()) {
        return Ok(p.clone());
    }
    // coordinates (x, r, s) with (x, s) in P and s <= r
    let mut positions: Vec<usize> = (0..n).collect();
    positions.push(n + 1);
    let mut lifted = p.embed(n + 2, &positions);
    let mut row = vec![Rat::zero(); n + 2];
    row[n] = -Rat::one();
    row[n + 1] = Rat::one();
    lifted.push(Constraint::le(row, Rat::zero()));
    project(&lifted, &(0..=n).collect::<Vec<_>>())
}

impl ScalarFn {
    /// Builds a function from epigraph pieces and a `-∞` region.
    pub fn new(dim: usize, pieces: Vec<Polyhedron>, minus_inf: Vec<Polyhedron>) -> Result<Self> {
        let mut full = pieces;
        full.extend(minus_inf.iter().map(cylinder));
        Self::from_epigraph(dim, full)
    }

    /// Builds a function whose epigraph is the union of `full` (each set is
    /// first closed upward along the value axis).
    pub fn from_epigraph(dim: usize, full: Vec<Polyhedron>) -> Result<Self> {
        let mut pieces = Vec::new();
        let mut minus_inf = Vec::new();
        for p in full {
            assert_eq!(p.dim, dim + 1, "epigraph piece has the wrong dimension");
            if p.is_empty() {
                continue;
            }
            let p = upward(&p)?;
            let bounded_below = p.constraints.iter().any(|c| c.normal[dim].is_negative());
            if bounded_below {
                let closed_in_r = Polyhedron::new(
                    dim + 1,
                    p.constraints
                        .iter()
                        .map(|c| Constraint {
                            strict: c.strict && c.normal[dim].is_zero(),
                            ..c.clone()
                        })
                        .collect(),
                );
                pieces.push(canonicalize(&closed_in_r));
            } else {
                let region = Polyhedron::new(
                    dim,
                    p.constraints
                        .iter()
                        .map(|c| Constraint {
                            normal: c.normal[..dim].to_vec(),
                            bound: c.bound.clone(),
                            strict: c.strict,
                        })
                        .collect(),
                );
                minus_inf.push(canonicalize(&region));
            }
        }
        absorb(&mut minus_inf);
        let cyl: Vec<Polyhedron> = minus_inf.iter().map(cylinder).collect();
        pieces.retain(|p| !cyl.iter().any(|c| p.subset_of(c)));
        absorb(&mut pieces);
        Ok(ScalarFn {
            dim,
            pieces,
            minus_inf,
        })
    }

    pub fn plus_infinity(dim: usize) -> Self {
        ScalarFn {
            dim,
            pieces: Vec::new(),
            minus_inf: Vec::new(),
        }
    }

    pub fn minus_infinity(dim: usize) -> Self {
        ScalarFn {
            dim,
            pieces: Vec::new(),
            minus_inf: vec![Polyhedron::whole(dim)],
        }
    }

    /// `0` on `p`, `+∞` elsewhere.
    pub fn indicator(p: &Polyhedron) -> Result<Self> {
        Self::max_affine(p, &[(vec![Rat::zero(); p.dim], Rat::zero())])
    }

    /// `x -> <a, x> + c`.
    pub fn affine(a: Vec<Rat>, c: Rat) -> Result<Self> {
        let dim = a.len();
        Self::max_affine(&Polyhedron::whole(dim), &[(a, c)])
    }

    /// `max_i (<a_i, x> + c_i)` on `domain`, `+∞` off it.
    pub fn max_affine(domain: &Polyhedron, terms: &[(Vec<Rat>, Rat)]) -> Result<Self> {
        let dim = domain.dim;
        let mut p = cylinder(domain);
        for (a, c) in terms {
            let mut normal = a.clone();
            normal.push(-Rat::one());
            p.push(Constraint::le(normal, -c));
        }
        Self::from_epigraph(dim, vec![p])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[Polyhedron] {
        &self.pieces
    }

    pub fn minus_inf_region(&self) -> &[Polyhedron] {
        &self.minus_inf
    }

    /// The full epigraph as a union: pieces plus `region × Q`.
    pub fn epigraph(&self) -> Vec<Polyhedron> {
        let mut out = self.pieces.clone();
        out.extend(self.minus_inf.iter().map(cylinder));
        out
    }

    /// `dom g = {x : g(x) < +∞}` as a union.
    pub fn domain(&self) -> Vec<Polyhedron> {
        let n = self.dim;
        let mut out: Vec<Polyhedron> = self
            .pieces
            .iter()
            .map(|p| {
                Polyhedron::new(
                    n,
                    p.constraints
                        .iter()
                        .filter(|c| c.normal[n].is_zero())
                        .map(|c| Constraint {
                            normal: c.normal[..n].to_vec(),
                            bound: c.bound.clone(),
                            strict: c.strict,
                        })
                        .collect(),
                )
            })
            .collect();
        out.extend(self.minus_inf.iter().cloned());
        out
    }

    pub fn evaluate(&self, x: &[Rat]) -> ExtReal {
        assert_eq!(x.len(), self.dim);
        if self.minus_inf.iter().any(|r| r.contains(x)) {
            return ExtReal::NegInf;
        }
        let n = self.dim;
        let mut best = ExtReal::PosInf;
        'pieces: for p in &self.pieces {
            let mut lo: Option<Rat> = None;
            for c in &p.constraints {
                let rest = &c.bound - dot(&c.normal[..n], x);
                let a = &c.normal[n];
                if a.is_zero() {
                    let ok = if c.strict { rest.is_positive() } else { !rest.is_negative() };
                    if !ok {
                        continue 'pieces;
                    }
                } else {
                    let v = rest / a;
                    if lo.as_ref().is_none_or(|l| v > *l) {
                        lo = Some(v);
                    }
                }
            }
            let v = ExtReal::Finite(lo.expect("normalized piece is bounded below"));
            if v < best {
                best = v;
            }
        }
        best
    }

    pub fn is_plus_infinity(&self) -> bool {
        self.pieces.is_empty() && self.minus_inf.is_empty()
    }

    pub fn is_minus_infinity(&self) -> Result<bool> {
        region_subset(&[Polyhedron::whole(self.dim)], &self.minus_inf)
    }

    /// No `-∞` value and not identically `+∞`.
    pub fn is_proper(&self) -> bool {
        self.minus_inf.is_empty() && !self.pieces.is_empty()
    }

    /// Pointwise equality, decided on epigraphs.
    pub fn same_as(&self, other: &ScalarFn) -> Result<bool> {
        assert_eq!(self.dim, other.dim);
        region_equal(&self.epigraph(), &other.epigraph())
    }

    /// `self <= other` pointwise.
    pub fn le(&self, other: &ScalarFn) -> Result<bool> {
        assert_eq!(self.dim, other.dim);
        region_subset(&other.epigraph(), &self.epigraph())
    }

    /// Lower semicontinuous hull: closure of the epigraph.
    pub fn closure(&self) -> Result<ScalarFn> {
        Self::from_epigraph(self.dim, self.epigraph().iter().map(Polyhedron::closure).collect())
    }

    /// Closed convex hull, `epi(cl co g) = cl co(epi g)`.
    pub fn cl_co(&self) -> Result<ScalarFn> {
        let epi = self.epigraph();
        if epi.is_empty() {
            return Ok(Self::plus_infinity(self.dim));
        }
        let hull = closed_hull(self.dim + 1, &epi)?;
        Self::from_epigraph(self.dim, vec![hull])
    }

    /// `g*(x*) = sup_x (x*(x) ⨪ g(x))`.
    pub fn conjugate(&self) -> Result<ScalarFn> {
        let n = self.dim;
        if self.is_plus_infinity() {
            return Ok(Self::minus_infinity(n));
        }
        if !self.minus_inf.is_empty() {
            return Ok(Self::plus_infinity(n));
        }
        let mut rows = Vec::new();
        for p in &self.pieces {
            let g = h_to_v(p)?;
            for v in &g.points {
                // <v, x*> - s <= rho
                let mut normal = v[..n].to_vec();
                normal.push(-Rat::one());
                rows.push(Constraint::le(normal, v[n].clone()));
            }
            for d in &g.rays {
                let mut normal = d[..n].to_vec();
                normal.push(Rat::zero());
                rows.push(Constraint::le(normal, d[n].clone()));
            }
            for l in &g.lines {
                let mut normal = l[..n].to_vec();
                normal.push(Rat::zero());
                rows.push(Constraint::le(normal.clone(), l[n].clone()));
                rows.push(Constraint::le(normal.iter().map(|a| -a).collect(), -&l[n]));
            }
        }
        let rows = rows
            .into_iter()
            .filter(|c| !(c.is_trivial() && c.trivially_true()))
            .collect();
        Self::from_epigraph(n, vec![Polyhedron::new(n + 1, rows)])
    }

    pub fn biconjugate(&self) -> Result<ScalarFn> {
        self.conjugate()?.conjugate()
    }

    /// `(g □ h)(x) = inf_y (g(x - y) ⊕ h(y))`.
    pub fn inf_convolve(&self, h: &ScalarFn) -> Result<ScalarFn> {
        assert_eq!(self.dim, h.dim);
        let mut out = Vec::new();
        for p in self.epigraph() {
            for q in h.epigraph() {
                out.push(minkowski_sum(&p, &q)?);
            }
        }
        Self::from_epigraph(self.dim, out)
    }

    /// Infimal convolution with respect to `⊞`: identically `-∞` as soon as
    /// either argument takes the value `-∞`.
    pub fn sup_convolve(&self, h: &ScalarFn) -> Result<ScalarFn> {
        if !self.minus_inf.is_empty() || !h.minus_inf.is_empty() {
            return Ok(Self::minus_infinity(self.dim));
        }
        self.inf_convolve(h)
    }

    /// Pointwise `g ⊕ h`.
    pub fn inf_sum(&self, h: &ScalarFn) -> Result<ScalarFn> {
        assert_eq!(self.dim, h.dim);
        let mut out = Vec::new();
        for p in self.epigraph() {
            for q in h.epigraph() {
                out.push(vertical_sum(&p, &q)?);
            }
        }
        Self::from_epigraph(self.dim, out)
    }

    /// Pointwise `g ⊞ h`.
    pub fn sup_sum(&self, h: &ScalarFn) -> Result<ScalarFn> {
        assert_eq!(self.dim, h.dim);
        let mut out = Vec::new();
        for p in &self.pieces {
            for q in &h.pieces {
                out.push(vertical_sum(p, q)?);
            }
        }
        let mut region = self.minus_inf.clone();
        region.extend(h.minus_inf.iter().cloned());
        Self::new(self.dim, out, region)
    }

    /// Pointwise maximum.
    pub fn pointwise_max(&self, h: &ScalarFn) -> Result<ScalarFn> {
        let mut out = Vec::new();
        for p in self.epigraph() {
            for q in h.epigraph() {
                out.push(p.intersect(&q));
            }
        }
        Self::from_epigraph(self.dim, out)
    }

    /// Pointwise minimum of a finite family; `+∞` for the empty family.
    pub fn pointwise_min(dim: usize, family: &[ScalarFn]) -> Result<ScalarFn> {
        let out = family.iter().flat_map(|f| f.epigraph()).collect();
        Self::from_epigraph(dim, out)
    }

    /// `x -> g(x) + c`.
    pub fn shift(&self, c: &Rat) -> Result<ScalarFn> {
        let mut v = vec![Rat::zero(); self.dim];
        v.push(c.clone());
        Self::from_epigraph(self.dim, self.epigraph().iter().map(|p| p.translate(&v)).collect())
    }

    /// `(S f)(x) = inf {f(y) : S y = x}` for `S : Y -> X`.
    pub fn pushforward(s: &Matrix, f: &ScalarFn) -> Result<ScalarFn> {
        assert_eq!(s.cols, f.dim);
        let (n, m) = (s.rows, s.cols);
        // coordinates (x, r, y)
        let mut positions: Vec<usize> = (n + 1..n + 1 + m).collect();
        positions.push(n);
        let mut out = Vec::new();
        for p in f.epigraph() {
            let mut lifted = p.embed(n + 1 + m, &positions);
            for i in 0..n {
                let mut row = vec![Rat::zero(); n + 1 + m];
                row[i] = Rat::one();
                for j in 0..m {
                    row[n + 1 + j] = -&s.data[i][j];
                }
                lifted.push(Constraint::le(row.clone(), Rat::zero()));
                lifted.push(Constraint::le(row.iter().map(|a| -a).collect(), Rat::zero()));
            }
            out.push(project(&lifted, &(0..=n).collect::<Vec<_>>())?);
        }
        Self::from_epigraph(n, out)
    }

    /// `(f T)(x) = f(T x)` for `T : X -> Y`.
    pub fn precompose(&self, t: &Matrix) -> Result<ScalarFn> {
        assert_eq!(t.rows, self.dim);
        let (m, n) = (t.rows, t.cols);
        let mut map: Vec<Vec<Rat>> = t
            .data
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(Rat::zero());
                r
            })
            .collect();
        let mut last = vec![Rat::zero(); n + 1];
        last[n] = Rat::one();
        map.push(last);
        let zero = vec![Rat::zero(); m + 1];
        let out = self
            .epigraph()
            .iter()
            .map(|p| p.preimage(&map, &zero, n + 1))
            .collect();
        Self::from_epigraph(n, out)
    }
}

/// `{(x, r1 + r2) : (x, r1) in P, (x, r2) in Q}`.
fn vertical_sum(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    let n = p.dim - 1;
    // coordinates (x, r, r1); P on (x, r1), Q on (x, r - r1)
    let mut positions: Vec<usize> = (0..n).collect();
    positions.push(n + 1);
    let lp = p.embed(n + 2, &positions);
    let mut map: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = vec![Rat::zero(); n + 2];
            row[i] = Rat::one();
            row
        })
        .collect();
    let mut last = vec![Rat::zero(); n + 2];
    last[n] = Rat::one();
    last[n + 1] = -Rat::one();
    map.push(last);
    let lq = q.preimage(&map, &vec![Rat::zero(); n + 1], n + 2);
    project(&lp.intersect(&lq), &(0..=n).collect::<Vec<_>>())
}
