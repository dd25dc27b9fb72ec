//! Set-valued functions `g : Q^n -> P(Z, C)` of epigraphical type, their
//! scalarizations and the conjugate machinery built on top of them.
//!
//! A [`SetFn`] stores its graph as a finite union of polyhedra in `X × Z`
//! (x coordinates first), each closed under `+({0} × C)`, together with a
//! region of `X` on which the value is all of `Z`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::polyhedra::{
    absorb, canonicalize, check_cap, closed_hull, complement, minkowski_sum, project,
    region_contains, region_equal, region_is_empty, region_subset, Constraint, Polyhedron,
};
use crate::rational::{dot, is_zero_vec, neg_vec, Matrix, Rat};
use crate::scalar::ScalarFn;
use crate::upper_set::{Cone, UpperSet};

/// A dual direction `(x*, z*)`.
pub type Direction = (Vec<Rat>, Vec<Rat>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFn {
    x_dim: usize,
    cone: Cone,
    pieces: Vec<Polyhedron>,
    full_region: Vec<Polyhedron>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Properness {
    pub proper: bool,
    pub zstar_proper_witness: Option<Vec<Rat>>,
}

fn unit(dim: usize, i: usize) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); dim];
    e[i] = Rat::one();
    e
}

/// `{z : c <= -z*(z)}` for an extended real `c`.
pub fn level_set(cone: &Cone, z_star: &[Rat], c: &ExtReal) -> Result<UpperSet> {
    match c {
        ExtReal::PosInf => Ok(UpperSet::empty(cone)),
        ExtReal::NegInf => Ok(UpperSet::whole(cone)),
        ExtReal::Finite(v) => UpperSet::halfspace(cone, z_star, -v),
    }
}

impl SetFn {
    /// Validates the recession property of each nonempty piece. Pieces
    /// without a `z`-row describe `Z`-valued regions and move to the full
    /// region.
    pub fn new(
        cone: &Cone,
        x_dim: usize,
        pieces: Vec<Polyhedron>,
        full_region: Vec<Polyhedron>,
    ) -> Result<SetFn> {
        let (n, k) = (x_dim, cone.dim());
        let mut full = Vec::new();
        for r in full_region {
            if r.dim != n {
                return Err(Error::contract("full region lives in the wrong space"));
            }
            if !r.is_empty() {
                full.push(canonicalize(&r));
            }
        }
        let lifted: Vec<Vec<Rat>> = cone
            .generators()
            .iter()
            .map(|c| {
                let mut v = vec![Rat::zero(); n];
                v.extend(c.iter().cloned());
                v
            })
            .collect();
        let mut kept = Vec::new();
        for (i, p) in pieces.into_iter().enumerate() {
            if p.dim != n + k {
                return Err(Error::contract("graph piece lives in the wrong space"));
            }
            if p.is_empty() {
                continue;
            }
            if !lifted.iter().all(|d| p.has_recession(d)) {
                return Err(Error::NotUpperSet { piece: i });
            }
            let p = canonicalize(&p);
            if p.constraints.iter().all(|c| is_zero_vec(&c.normal[n..])) {
                full.push(restrict_x(&p, n));
            } else {
                kept.push(p);
            }
        }
        absorb(&mut full);
        let cyl: Vec<Polyhedron> = full.iter().map(|r| cylinder(r, k)).collect();
        kept.retain(|p| !cyl.iter().any(|c| p.subset_of(c)));
        kept.sort();
        kept.dedup();
        absorb(&mut kept);
        full.sort();
        Ok(SetFn {
            x_dim,
            cone: cone.clone(),
            pieces: kept,
            full_region: full,
        })
    }

    /// Graph given by arbitrary pieces, each closed under `+({0} × C)` first.
    pub fn upper_closure(cone: &Cone, x_dim: usize, pieces: &[Polyhedron]) -> Result<SetFn> {
        let lifted = Polyhedron::point(&vec![Rat::zero(); x_dim]).product(&cone.polyhedron());
        let mut out = Vec::new();
        for p in pieces {
            if !p.is_empty() {
                out.push(minkowski_sum(p, &lifted)?);
            }
        }
        SetFn::new(cone, x_dim, out, Vec::new())
    }

    /// `g ≡ ∅`.
    pub fn empty(cone: &Cone, x_dim: usize) -> SetFn {
        SetFn {
            x_dim,
            cone: cone.clone(),
            pieces: Vec::new(),
            full_region: Vec::new(),
        }
    }

    /// `g ≡ Z`.
    pub fn whole(cone: &Cone, x_dim: usize) -> SetFn {
        SetFn {
            x_dim,
            cone: cone.clone(),
            pieces: Vec::new(),
            full_region: vec![Polyhedron::whole(x_dim)],
        }
    }

    /// `g(x) = A` on `region`, `∅` elsewhere.
    pub fn on_region(region: &Polyhedron, a: &UpperSet) -> Result<SetFn> {
        let pieces = a.pieces().iter().map(|q| region.product(q)).collect();
        SetFn::new(a.cone(), region.dim, pieces, Vec::new())
    }

    /// The constant function `A`.
    pub fn constant(x_dim: usize, a: &UpperSet) -> Result<SetFn> {
        SetFn::on_region(&Polyhedron::whole(x_dim), a)
    }

    /// `g(x) = {T x} + C` for `T : X -> Z`.
    pub fn linear(cone: &Cone, t: &Matrix) -> Result<SetFn> {
        if t.rows != cone.dim() {
            return Err(Error::contract("linear map does not land in Z"));
        }
        let tt = t.transpose();
        let rows = cone
            .dual_generators()
            .iter()
            .map(|d| {
                let mut normal = neg_vec(&tt.apply(d));
                normal.extend(d.iter().cloned());
                Constraint::le(normal, Rat::zero())
            })
            .collect();
        SetFn::new(cone, t.cols, vec![Polyhedron::new(t.cols + t.rows, rows)], Vec::new())
    }

    pub fn x_dim(&self) -> usize {
        self.x_dim
    }

    pub fn z_dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn pieces(&self) -> &[Polyhedron] {
        &self.pieces
    }

    pub fn full_region(&self) -> &[Polyhedron] {
        &self.full_region
    }

    /// The whole graph: pieces plus `full_region × Z`.
    pub fn graph(&self) -> Vec<Polyhedron> {
        let mut out = self.pieces.clone();
        out.extend(self.full_region.iter().map(|r| cylinder(r, self.z_dim())));
        out
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty() && self.full_region.is_empty()
    }

    /// `dom g = {x : g(x) != ∅}` as a union.
    pub fn domain(&self) -> Result<Vec<Polyhedron>> {
        let keep: Vec<usize> = (0..self.x_dim).collect();
        let mut out = self
            .pieces
            .iter()
            .map(|p| project(p, &keep))
            .collect::<Result<Vec<_>>>()?;
        out.extend(self.full_region.iter().cloned());
        Ok(out)
    }

    pub fn eval(&self, x: &[Rat]) -> UpperSet {
        assert_eq!(x.len(), self.x_dim);
        if region_contains(&self.full_region, x) {
            return UpperSet::whole(&self.cone);
        }
        let fibers = self.pieces.iter().map(|p| fiber(p, x)).collect();
        UpperSet::new(&self.cone, fibers).expect("fibers of graph pieces are upper sets")
    }

    /// Pointwise equality, decided on graphs.
    pub fn same_as(&self, other: &SetFn) -> Result<bool> {
        region_equal(&self.graph(), &other.graph())
    }

    /// `self <= other` in the `⊇` order: `other(x) ⊆ self(x)` for all `x`.
    pub fn le(&self, other: &SetFn) -> Result<bool> {
        region_subset(&other.graph(), &self.graph())
    }

    pub fn closure(&self) -> Result<SetFn> {
        SetFn::new(
            &self.cone,
            self.x_dim,
            self.pieces.iter().map(Polyhedron::closure).collect(),
            self.full_region.iter().map(Polyhedron::closure).collect(),
        )
    }

    /// `φ_{g,z*}(x) = inf {-z*(z) : z in g(x)}`.
    pub fn scalarize(&self, z_star: &[Rat]) -> Result<ScalarFn> {
        self.cone.check_polar(z_star)?;
        let (n, k) = (self.x_dim, self.z_dim());
        // coordinates (x, r, z)
        let positions: Vec<usize> = (0..n).chain(n + 1..n + 1 + k).collect();
        let mut row = vec![Rat::zero(); n + 1 + k];
        row[n] = -Rat::one();
        for (j, a) in z_star.iter().enumerate() {
            row[n + 1 + j] = -a;
        }
        let keep: Vec<usize> = (0..=n).collect();
        let epi = self
            .graph()
            .iter()
            .map(|p| {
                let lifted = p.embed(n + 1 + k, &positions).with(Constraint::le(row.clone(), Rat::zero()));
                project(&lifted, &keep)
            })
            .collect::<Result<Vec<_>>>()?;
        ScalarFn::from_epigraph(n, epi)
    }

    /// `S_{(f,z*)}(x) = {z : f(x) <= -z*(z)}`.
    pub fn setify(cone: &Cone, f: &ScalarFn, z_star: &[Rat]) -> Result<SetFn> {
        cone.check_polar(z_star)?;
        let (n, k) = (f.dim(), cone.dim());
        let mut map: Vec<Vec<Rat>> = (0..n).map(|i| unit(n + k, i)).collect();
        let mut last = vec![Rat::zero(); n];
        last.extend(neg_vec(z_star));
        map.push(last);
        let zero = vec![Rat::zero(); n + 1];
        let pieces = f.pieces().iter().map(|p| p.preimage(&map, &zero, n + k)).collect();
        SetFn::new(cone, n, pieces, f.minus_inf_region().to_vec())
    }

    /// `cl co g`, with `epi(cl co g) = cl co(epi g)`.
    pub fn cl_co(&self) -> Result<SetFn> {
        let graph = self.graph();
        if region_is_empty(&graph) {
            return Ok(SetFn::empty(&self.cone, self.x_dim));
        }
        let hull = closed_hull(self.x_dim + self.z_dim(), &graph)?;
        SetFn::new(&self.cone, self.x_dim, vec![hull], Vec::new())
    }

    /// Facet normals `(x*, z*)` of `cl co gr g`, the dual generators of `C`
    /// paired with `x* = 0`, and `(0, 0)`.
    pub fn facet_directions(&self) -> Result<Vec<Direction>> {
        let (n, k) = (self.x_dim, self.z_dim());
        let mut out = BTreeSet::new();
        out.insert((vec![Rat::zero(); n], vec![Rat::zero(); k]));
        let graph = self.graph();
        if !region_is_empty(&graph) {
            let hull = canonicalize(&closed_hull(n + k, &graph)?);
            for c in hull.constraints.iter().filter(|c| !c.is_trivial()) {
                out.insert((c.normal[..n].to_vec(), c.normal[n..].to_vec()));
            }
            for d in self.cone.dual_generators() {
                out.insert((vec![Rat::zero(); n], d.clone()));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// `g*(x*, z*)` through the scalar conjugate of `φ_{g,z*}`.
    pub fn conjugate_at(&self, x_star: &[Rat], z_star: &[Rat]) -> Result<UpperSet> {
        let c = self.scalarize(z_star)?.conjugate()?.evaluate(x_star);
        level_set(&self.cone, z_star, &c)
    }

    /// `∩_{x in xs} S_{(x*,z*)}(x) ⨪ g(x)`, the defining intersection over a
    /// finite sample. Contains `g*(x*, z*)`.
    pub fn conjugate_on_sample(
        &self,
        x_star: &[Rat],
        z_star: &[Rat],
        xs: &[Vec<Rat>],
    ) -> Result<UpperSet> {
        self.cone.check_polar(z_star)?;
        let mut acc = UpperSet::whole(&self.cone);
        for x in xs {
            let s = UpperSet::halfspace(&self.cone, z_star, -dot(x_star, x))?;
            acc = acc.intersect(&s.residual(&self.eval(x))?)?;
        }
        Ok(acc)
    }

    /// `g**` over the `z*` components of `directions`, assembled as
    /// `∩_{z*} {z : (φ_{g,z*})**(x) <= -z*(z)}`.
    pub fn biconjugate(&self, directions: &[Direction]) -> Result<SetFn> {
        let zs: Vec<Vec<Rat>> = directions
            .iter()
            .map(|d| d.1.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let terms = zs
            .par_iter()
            .map(|z| SetFn::setify(&self.cone, &self.scalarize(z)?.biconjugate()?, z))
            .collect::<Result<Vec<_>>>()?;
        SetFn::sup(&self.cone, self.x_dim, &terms)
    }

    /// `g**(x)` as `∩ S_{(x*,z*)}(x) ⨪ g*(x*,z*)` over the given directions.
    pub fn biconjugate_at(&self, x: &[Rat], directions: &[Direction]) -> Result<UpperSet> {
        let mut conj = SetConjugate::new(self.clone());
        let mut acc = UpperSet::whole(&self.cone);
        for (xs, zs) in directions {
            let s = UpperSet::halfspace(&self.cone, zs, -dot(xs, x))?;
            acc = acc.intersect(&s.residual(&conj.at(xs, zs)?)?)?;
        }
        Ok(acc)
    }

    pub fn properness(&self) -> Result<Properness> {
        let proper = !self.is_empty() && !self.has_whole_fiber()?;
        let mut witness = None;
        if proper {
            let mut candidates: Vec<Vec<Rat>> =
                self.facet_directions()?.into_iter().map(|d| d.1).collect();
            candidates.extend(self.cone.dual_generators().iter().cloned());
            let mut seen = BTreeSet::new();
            for z in candidates {
                if is_zero_vec(&z) || !seen.insert(z.clone()) {
                    continue;
                }
                if self.scalarize(&z)?.is_proper() {
                    witness = Some(z);
                    break;
                }
            }
        }
        Ok(Properness {
            proper,
            zstar_proper_witness: witness,
        })
    }

    /// Whether `g(x) = Z` for some `x`.
    fn has_whole_fiber(&self) -> Result<bool> {
        if !self.full_region.is_empty() {
            return Ok(true);
        }
        if self.pieces.len() <= 1 {
            return Ok(false);
        }
        let keep: Vec<usize> = (0..self.x_dim).collect();
        let shadow = complement(self.x_dim + self.z_dim(), &self.pieces)?
            .iter()
            .map(|p| project(p, &keep))
            .collect::<Result<Vec<_>>>()?;
        Ok(!region_subset(&[Polyhedron::whole(self.x_dim)], &shadow)?)
    }

    fn same_shape(&self, other: &SetFn) -> Result<()> {
        if self.cone != other.cone || self.x_dim != other.x_dim {
            return Err(Error::contract("set-valued functions of different shapes"));
        }
        Ok(())
    }

    /// Pointwise infimum (union of graphs); `inf ∅ ≡ ∅`.
    pub fn inf(cone: &Cone, x_dim: usize, family: &[SetFn]) -> Result<SetFn> {
        let mut pieces = Vec::new();
        let mut full = Vec::new();
        for g in family {
            if g.cone != *cone || g.x_dim != x_dim {
                return Err(Error::contract("set-valued functions of different shapes"));
            }
            pieces.extend(g.pieces.iter().cloned());
            full.extend(g.full_region.iter().cloned());
        }
        SetFn::new(cone, x_dim, pieces, full)
    }

    /// Pointwise supremum (intersection of graphs); `sup ∅ ≡ Z`.
    pub fn sup(cone: &Cone, x_dim: usize, family: &[SetFn]) -> Result<SetFn> {
        let mut acc = vec![Polyhedron::whole(x_dim + cone.dim())];
        for g in family {
            if g.cone != *cone || g.x_dim != x_dim {
                return Err(Error::contract("set-valued functions of different shapes"));
            }
            let mut next = Vec::new();
            for p in &acc {
                for q in g.graph() {
                    let r = p.intersect(&q);
                    if !r.is_empty() {
                        next.push(canonicalize(&r));
                    }
                }
            }
            check_cap("pointwise supremum", next.len())?;
            absorb(&mut next);
            acc = next;
        }
        SetFn::new(cone, x_dim, acc, Vec::new())
    }

    /// `(f + g)(x) = f(x) + g(x)`.
    pub fn add(&self, other: &SetFn) -> Result<SetFn> {
        self.same_shape(other)?;
        let (n, k) = (self.x_dim, self.z_dim());
        // coordinates (x, z, u): self on (x, u), other on (x, z - u)
        let positions: Vec<usize> = (0..n).chain(n + k..n + 2 * k).collect();
        let mut map: Vec<Vec<Rat>> = (0..n).map(|i| unit(n + 2 * k, i)).collect();
        for j in 0..k {
            let mut row = unit(n + 2 * k, n + j);
            row[n + k + j] = -Rat::one();
            map.push(row);
        }
        let zero = vec![Rat::zero(); n + k];
        let keep: Vec<usize> = (0..n + k).collect();
        let mut out = Vec::new();
        for p in self.graph() {
            let lp = p.embed(n + 2 * k, &positions);
            for q in other.graph() {
                let both = lp.intersect(&q.preimage(&map, &zero, n + 2 * k));
                if !both.is_empty() {
                    out.push(project(&both, &keep)?);
                }
            }
        }
        SetFn::new(&self.cone, n, out, Vec::new())
    }

    /// `(g □ h)(x) = ∪_y g(x - y) + h(y)`, the Minkowski sum of graphs.
    pub fn inf_convolve(&self, other: &SetFn) -> Result<SetFn> {
        self.same_shape(other)?;
        let mut out = Vec::new();
        for p in self.graph() {
            for q in other.graph() {
                out.push(minkowski_sum(&p, &q)?);
            }
        }
        SetFn::new(&self.cone, self.x_dim, out, Vec::new())
    }

    /// `(f T)(x) = f(T x)` for `T : X -> Y` and `f` on `Y`.
    pub fn precompose(&self, t: &Matrix) -> Result<SetFn> {
        if t.rows != self.x_dim {
            return Err(Error::contract("precomposition with a map of the wrong shape"));
        }
        let (n, k) = (t.cols, self.z_dim());
        let mut map: Vec<Vec<Rat>> = t
            .data
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.extend(vec![Rat::zero(); k]);
                r
            })
            .collect();
        map.extend((0..k).map(|j| unit(n + k, n + j)));
        let zero = vec![Rat::zero(); t.rows + k];
        let out = self.graph().iter().map(|p| p.preimage(&map, &zero, n + k)).collect();
        SetFn::new(&self.cone, n, out, Vec::new())
    }

    /// `(T g)(y) = ∪ {g(x) : T x = y}`.
    pub fn pushforward(t: &Matrix, g: &SetFn) -> Result<SetFn> {
        if t.cols != g.x_dim {
            return Err(Error::contract("pushforward along a map of the wrong shape"));
        }
        let (m, n, k) = (t.rows, t.cols, g.z_dim());
        let dim = m + k + n;
        // coordinates (y, z, x)
        let positions: Vec<usize> = (m + k..dim).chain(m..m + k).collect();
        let keep: Vec<usize> = (0..m + k).collect();
        let mut out = Vec::new();
        for p in g.graph() {
            let mut lifted = p.embed(dim, &positions);
            for i in 0..m {
                let mut row = unit(dim, i);
                for j in 0..n {
                    row[m + k + j] = -&t.data[i][j];
                }
                lifted.push(Constraint::le(neg_vec(&row), Rat::zero()));
                lifted.push(Constraint::le(row, Rat::zero()));
            }
            out.push(project(&lifted, &keep)?);
        }
        SetFn::new(&g.cone, m, out, Vec::new())
    }
}

/// The `z`-fiber of a graph piece at `x`.
fn fiber(p: &Polyhedron, x: &[Rat]) -> Polyhedron {
    let n = x.len();
    let rows = p
        .constraints
        .iter()
        .map(|c| Constraint {
            normal: c.normal[n..].to_vec(),
            bound: &c.bound - dot(&c.normal[..n], x),
            strict: c.strict,
        })
        .collect();
    Polyhedron::new(p.dim - n, rows)
}

/// Drops the (all-zero) `z` part of every row.
fn restrict_x(p: &Polyhedron, n: usize) -> Polyhedron {
    let rows = p
        .constraints
        .iter()
        .map(|c| Constraint {
            normal: c.normal[..n].to_vec(),
            bound: c.bound.clone(),
            strict: c.strict,
        })
        .collect();
    Polyhedron::new(n, rows)
}

fn cylinder(region: &Polyhedron, k: usize) -> Polyhedron {
    let n = region.dim;
    region.embed(n + k, &(0..n).collect::<Vec<_>>())
}

/// Memoized values of `g*` together with the scalar conjugates behind them.
#[derive(Debug, Clone)]
pub struct SetConjugate {
    base: SetFn,
    table: BTreeMap<Direction, UpperSet>,
    scalar_conjugates: BTreeMap<Vec<Rat>, ScalarFn>,
}

impl SetConjugate {
    pub fn new(base: SetFn) -> Self {
        SetConjugate {
            base,
            table: BTreeMap::new(),
            scalar_conjugates: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> &SetFn {
        &self.base
    }

    /// `(φ_{g,z*})*`.
    pub fn scalar(&mut self, z_star: &[Rat]) -> Result<&ScalarFn> {
        if !self.scalar_conjugates.contains_key(z_star) {
            let c = self.base.scalarize(z_star)?.conjugate()?;
            self.scalar_conjugates.insert(z_star.to_vec(), c);
        }
        Ok(&self.scalar_conjugates[z_star])
    }

    pub fn at(&mut self, x_star: &[Rat], z_star: &[Rat]) -> Result<UpperSet> {
        let key = (x_star.to_vec(), z_star.to_vec());
        if let Some(v) = self.table.get(&key) {
            return Ok(v.clone());
        }
        let c = self.scalar(z_star)?.evaluate(x_star);
        let v = level_set(self.base.cone(), z_star, &c)?;
        self.table.insert(key, v.clone());
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rats};

    fn c2() -> Cone {
        Cone::orthant(2)
    }

    fn shifted() -> SetFn {
        SetFn::linear(&c2(), &Matrix::identity(2)).unwrap()
    }

    /// `g(0) = {(0,1)} + C ∪ {(1,0)} + C`, `∅` elsewhere, over `X = Q`.
    fn two_point() -> SetFn {
        let c = c2();
        let at0 = Polyhedron::point(&rats(&[0]));
        let a = SetFn::on_region(&at0, &UpperSet::point(&c, &rats(&[0, 1]))).unwrap();
        let b = SetFn::on_region(&at0, &UpperSet::point(&c, &rats(&[1, 0]))).unwrap();
        SetFn::inf(&c, 1, &[a, b]).unwrap()
    }

    #[test]
    fn evaluation() {
        let g = shifted();
        let v = g.eval(&rats(&[1, 0]));
        assert!(v.same_as(&UpperSet::point(&c2(), &rats(&[1, 0]))).unwrap());
        assert!(SetFn::empty(&c2(), 2).eval(&rats(&[3, 1])).is_empty());
        let region = Polyhedron::new(1, vec![Constraint::le(rats(&[1]), rat(0))]);
        let z = SetFn::new(&c2(), 1, vec![], vec![region]).unwrap();
        assert!(z.eval(&rats(&[-1])).is_whole().unwrap());
        assert!(z.eval(&rats(&[1])).is_empty());
    }

    #[test]
    fn scalarization_of_shifted_cone() {
        let g = shifted();
        let z = rats(&[-1, -2]);
        let phi = g.scalarize(&z).unwrap();
        // φ(x) = -z*(x) = x1 + 2 x2
        assert_eq!(phi.evaluate(&rats(&[1, 1])), ExtReal::finite(rat(3)));
        let dom = g.scalarize(&rats(&[0, 0])).unwrap();
        assert!(dom.same_as(&ScalarFn::indicator(&Polyhedron::whole(2)).unwrap()).unwrap());
        let back = SetFn::setify(&c2(), &phi, &z).unwrap();
        let x = rats(&[1, -1]);
        let h = UpperSet::halfspace(&c2(), &z, rat(0)).unwrap();
        assert!(back.eval(&x).same_as(&g.eval(&x).minkowski_add(&h).unwrap()).unwrap());
    }

    #[test]
    fn two_point_hull() {
        let g = two_point();
        let h = g.cl_co().unwrap();
        let fib = h.eval(&rats(&[0]));
        let mid = vec![crate::rational::ratio(1, 2), crate::rational::ratio(1, 2)];
        assert!(fib.contains(&mid));
        assert!(!g.eval(&rats(&[0])).contains(&mid));
        assert!(!fib.contains(&rats(&[0, 0])));
        assert!(h.eval(&rats(&[1])).is_empty());
        let dirs = g.facet_directions().unwrap();
        let bic = g.biconjugate(&dirs).unwrap();
        assert!(bic.same_as(&h).unwrap());
        assert!(!bic.same_as(&g).unwrap());
        let at = g.biconjugate_at(&rats(&[0]), &dirs).unwrap();
        assert!(at.same_as(&fib).unwrap());
    }

    #[test]
    fn conjugates() {
        let g = shifted();
        let z = rats(&[-1, -1]);
        let x_star = rats(&[1, 1]); // -T* z*
        let v = g.conjugate_at(&x_star, &z).unwrap();
        assert!(v.same_as(&UpperSet::halfspace(&c2(), &z, rat(0)).unwrap()).unwrap());
        let xs: Vec<Vec<Rat>> = vec![rats(&[0, 0]), rats(&[1, 0]), rats(&[0, 1])];
        let sample = g.conjugate_on_sample(&x_star, &z, &xs).unwrap();
        assert!(v.subset_of(&sample).unwrap());
        let e = SetFn::empty(&c2(), 2);
        assert!(e.conjugate_at(&rats(&[3, 0]), &z).unwrap().is_whole().unwrap());
        // z* = 0: Z iff x* <= I_{dom g}
        assert!(g.conjugate_at(&rats(&[0, 0]), &rats(&[0, 0])).unwrap().is_whole().unwrap());
        assert!(g.conjugate_at(&rats(&[1, 0]), &rats(&[0, 0])).unwrap().is_empty());
    }

    #[test]
    fn properness_and_empty() {
        let p = shifted().properness().unwrap();
        assert!(p.proper && p.zstar_proper_witness.is_some());
        let e = SetFn::empty(&c2(), 1);
        assert!(!e.properness().unwrap().proper);
        let dirs = e.facet_directions().unwrap();
        assert!(e.biconjugate(&dirs).unwrap().is_empty());
        assert!(!SetFn::whole(&c2(), 1).properness().unwrap().proper);
    }

    #[test]
    fn graph_operations() {
        let c = c2();
        let g = shifted();
        let neutral = SetFn::on_region(&Polyhedron::point(&rats(&[0, 0])), &UpperSet::cone_set(&c)).unwrap();
        assert!(g.inf_convolve(&neutral).unwrap().same_as(&g).unwrap());
        assert!(g.precompose(&Matrix::identity(2)).unwrap().same_as(&g).unwrap());
        let z = rats(&[-1, 0]);
        let sum = g.add(&g).unwrap();
        let lhs = sum.scalarize(&z).unwrap();
        let phi = g.scalarize(&z).unwrap();
        assert!(lhs.same_as(&phi.inf_sum(&phi).unwrap()).unwrap());
        let t = Matrix::from_ints(1, 2, &[1, 1]);
        let push = SetFn::pushforward(&t, &g).unwrap();
        assert!(push
            .scalarize(&z)
            .unwrap()
            .same_as(&ScalarFn::pushforward(&t, &phi).unwrap())
            .unwrap());
    }
}
