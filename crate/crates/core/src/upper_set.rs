//! Upper sets `A = A + C` for a polyhedral ordering cone `C`, ordered by `⊇`.
//!
//! An [`UpperSet`] is a finite union of polyhedra, each closed under `+C`.
//! The lattice infimum is the union and the supremum the intersection, so
//! `∅` is the greatest element and `Z` the least.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polyhedra::{
    absorb, canonicalize, closed_hull, complement, cone_generators, minkowski_sum, region_contains,
    region_equal, region_is_empty, region_subset, Constraint, Polyhedron, Support,
};
use crate::rational::{dot, is_zero_vec, neg_vec, primitive, Rat};

/// A polyhedral convex cone `{0} ⊊ C ⊊ Z` with its polar `C^-`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<Rat>>,
    dual_generators: Vec<Vec<Rat>>,
}

impl Cone {
    pub fn new(dim: usize, generators: Vec<Vec<Rat>>) -> Result<Cone> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::Cone("generator length differs from dimension".into()));
        }
        let generators: Vec<Vec<Rat>> = generators
            .into_iter()
            .filter(|g| !is_zero_vec(g))
            .map(|g| primitive(&g))
            .collect();
        if generators.is_empty() {
            return Err(Error::Cone("C = {0}".into()));
        }
        let (lines, rays) = cone_generators(dim, &generators)?;
        let mut dual = rays;
        for l in lines {
            dual.push(neg_vec(&l));
            dual.push(l);
        }
        if dual.is_empty() {
            return Err(Error::Cone("C = Z, so C^- = {0}".into()));
        }
        Ok(Cone {
            dim,
            generators,
            dual_generators: dual,
        })
    }

    /// The nonnegative orthant of `Q^dim`.
    pub fn orthant(dim: usize) -> Cone {
        let gens = (0..dim)
            .map(|i| {
                let mut e = vec![Rat::zero(); dim];
                e[i] = Rat::from_integer(1.into());
                e
            })
            .collect();
        Cone::new(dim, gens).expect("orthant is a valid cone")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    /// Generators of `C^- = {z* : z*(c) <= 0 for c in C}`.
    pub fn dual_generators(&self) -> &[Vec<Rat>] {
        &self.dual_generators
    }

    pub fn in_polar(&self, z_star: &[Rat]) -> bool {
        z_star.len() == self.dim
            && self.generators.iter().all(|c| !dot(z_star, c).is_positive())
    }

    /// `C` as an H-representation.
    pub fn polyhedron(&self) -> Polyhedron {
        Polyhedron::new(
            self.dim,
            self.dual_generators
                .iter()
                .map(|d| Constraint::le(d.clone(), Rat::zero()))
                .collect(),
        )
    }

    pub fn contains(&self, z: &[Rat]) -> bool {
        self.polyhedron().contains(z)
    }

    pub(crate) fn check_polar(&self, z_star: &[Rat]) -> Result<()> {
        if self.in_polar(z_star) {
            Ok(())
        } else {
            Err(Error::contract("dual direction is not in C^-"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperSet {
    pieces: Vec<Polyhedron>,
    cone: Cone,
}

impl UpperSet {
    /// Validates `P + C ⊆ P` for every nonempty piece.
    pub fn new(cone: &Cone, pieces: Vec<Polyhedron>) -> Result<UpperSet> {
        let mut kept = Vec::new();
        for (i, p) in pieces.into_iter().enumerate() {
            if p.dim != cone.dim {
                return Err(Error::contract("piece dimension differs from the cone"));
            }
            if p.is_empty() {
                continue;
            }
            if !cone.generators.iter().all(|c| p.has_recession(c)) {
                return Err(Error::NotUpperSet { piece: i });
            }
            kept.push(p);
        }
        Ok(UpperSet {
            pieces: kept,
            cone: cone.clone(),
        })
    }

    /// `∪ (P_i + C)`, for pieces that need not be upper sets themselves.
    pub fn upper_closure(cone: &Cone, pieces: &[Polyhedron]) -> Result<UpperSet> {
        let c = cone.polyhedron();
        let mut out = Vec::new();
        for p in pieces {
            if !p.is_empty() {
                out.push(minkowski_sum(p, &c)?);
            }
        }
        UpperSet::new(cone, out)
    }

    pub fn empty(cone: &Cone) -> UpperSet {
        UpperSet {
            pieces: Vec::new(),
            cone: cone.clone(),
        }
    }

    pub fn whole(cone: &Cone) -> UpperSet {
        UpperSet {
            pieces: vec![Polyhedron::whole(cone.dim)],
            cone: cone.clone(),
        }
    }

    /// `C` itself, the neutral element.
    pub fn cone_set(cone: &Cone) -> UpperSet {
        UpperSet {
            pieces: vec![cone.polyhedron()],
            cone: cone.clone(),
        }
    }

    /// `{v} + C`.
    pub fn point(cone: &Cone, v: &[Rat]) -> UpperSet {
        UpperSet {
            pieces: vec![cone.polyhedron().translate(v)],
            cone: cone.clone(),
        }
    }

    /// `{z : z*(z) <= bound}` for `z*` in `C^-`; `Z` or `∅` when `z* = 0`.
    pub fn halfspace(cone: &Cone, z_star: &[Rat], bound: Rat) -> Result<UpperSet> {
        cone.check_polar(z_star)?;
        UpperSet::new(
            cone,
            vec![Polyhedron::new(cone.dim, vec![Constraint::le(z_star.to_vec(), bound)])],
        )
    }

    pub fn dim(&self) -> usize {
        self.cone.dim
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn pieces(&self) -> &[Polyhedron] {
        &self.pieces
    }

    pub fn contains(&self, z: &[Rat]) -> bool {
        region_contains(&self.pieces, z)
    }

    pub fn is_empty(&self) -> bool {
        region_is_empty(&self.pieces)
    }

    pub fn is_whole(&self) -> Result<bool> {
        region_subset(&[Polyhedron::whole(self.dim())], &self.pieces)
    }

    pub fn same_as(&self, other: &UpperSet) -> Result<bool> {
        region_equal(&self.pieces, &other.pieces)
    }

    /// Point-set inclusion `self ⊆ other`.
    pub fn subset_of(&self, other: &UpperSet) -> Result<bool> {
        region_subset(&self.pieces, &other.pieces)
    }

    /// Canonical pieces with pairwise absorption.
    pub fn canonical(&self) -> UpperSet {
        let mut pieces: Vec<Polyhedron> = self.pieces.iter().map(canonicalize).collect();
        pieces.sort();
        pieces.dedup();
        absorb(&mut pieces);
        UpperSet {
            pieces,
            cone: self.cone.clone(),
        }
    }

    fn same_cone(&self, other: &UpperSet) -> Result<()> {
        if self.cone != other.cone {
            return Err(Error::contract("upper sets over different cones"));
        }
        Ok(())
    }

    /// `A + B`, with `A + ∅ = ∅`.
    pub fn minkowski_add(&self, other: &UpperSet) -> Result<UpperSet> {
        self.same_cone(other)?;
        let mut out = Vec::new();
        for p in &self.pieces {
            for q in &other.pieces {
                out.push(minkowski_sum(p, q)?);
            }
        }
        UpperSet::new(&self.cone, out)
    }

    /// `t·A` with `0·A = C`.
    pub fn scale(&self, t: &Rat) -> Result<UpperSet> {
        if t.is_negative() {
            return Err(Error::contract("negative scale factor"));
        }
        if t.is_zero() {
            return Ok(UpperSet::cone_set(&self.cone));
        }
        let pieces = self.pieces.iter().map(|p| p.scale(t)).collect();
        UpperSet::new(&self.cone, pieces)
    }

    pub fn translate(&self, v: &[Rat]) -> UpperSet {
        UpperSet {
            pieces: self.pieces.iter().map(|p| p.translate(v)).collect(),
            cone: self.cone.clone(),
        }
    }

    /// Union of the family; `inf ∅ = ∅`.
    pub fn lattice_inf(cone: &Cone, family: &[UpperSet]) -> Result<UpperSet> {
        let mut out = Vec::new();
        for a in family {
            if a.cone != *cone {
                return Err(Error::contract("upper sets over different cones"));
            }
            out.extend(a.pieces.iter().cloned());
        }
        UpperSet::new(cone, out)
    }

    /// Intersection of the family; `sup ∅ = Z`.
    pub fn lattice_sup(cone: &Cone, family: &[UpperSet]) -> Result<UpperSet> {
        let mut acc = UpperSet::whole(cone);
        for a in family {
            if a.cone != *cone {
                return Err(Error::contract("upper sets over different cones"));
            }
            acc = acc.intersect(a)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &UpperSet) -> Result<UpperSet> {
        self.same_cone(other)?;
        let mut out = Vec::new();
        for p in &self.pieces {
            for q in &other.pieces {
                out.push(p.intersect(q));
            }
        }
        crate::polyhedra::check_cap("upper set intersection", out.len())?;
        UpperSet::new(&self.cone, out)
    }

    /// `A ⨪ B = {z : B + z ⊆ A}`.
    pub fn residual(&self, b: &UpperSet) -> Result<UpperSet> {
        self.same_cone(b)?;
        if b.is_empty() {
            return Ok(UpperSet::whole(&self.cone));
        }
        if self.pieces.len() == 1 {
            return self.residual_convex(b);
        }
        self.residual_by_duality(b)
    }

    /// Support-function route, valid when `A` is a single piece.
    pub fn residual_convex(&self, b: &UpperSet) -> Result<UpperSet> {
        self.same_cone(b)?;
        if b.is_empty() {
            return Ok(UpperSet::whole(&self.cone));
        }
        let Some(a) = self.pieces.first().filter(|_| self.pieces.len() == 1) else {
            return Err(Error::contract("support-function residual needs a single piece"));
        };
        let mut rows = Vec::new();
        for c in &a.constraints {
            for q in &b.pieces {
                match q.support(&c.normal) {
                    Support::Empty => {}
                    Support::Unbounded => return Ok(UpperSet::empty(&self.cone)),
                    Support::Finite { value, attained } => rows.push(Constraint {
                        normal: c.normal.clone(),
                        bound: &c.bound - value,
                        strict: c.strict && attained,
                    }),
                }
            }
        }
        UpperSet::new(&self.cone, vec![Polyhedron::new(self.dim(), rows)])
    }

    /// `A ⨪ B = s(B + s(A))`, valid for unions.
    pub fn residual_by_duality(&self, b: &UpperSet) -> Result<UpperSet> {
        b.minkowski_add(&self.s_dual()?)?.s_dual()
    }

    /// `s(A) = Z \ (-A)`. Pieces of the complement are closed under `+C`
    /// before they are returned.
    pub fn s_dual(&self) -> Result<UpperSet> {
        let neg: Vec<Polyhedron> = self.pieces.iter().map(Polyhedron::negate).collect();
        let comp = complement(self.dim(), &neg)?;
        UpperSet::upper_closure(&self.cone, &comp)
    }

    /// `A +ˢ B = s(s(A) + B)`.
    pub fn s_sum(&self, b: &UpperSet) -> Result<UpperSet> {
        self.s_dual()?.minkowski_add(b)?.s_dual()
    }

    /// `Z` if either argument is `Z`, otherwise the Minkowski sum.
    pub fn sup_add(&self, b: &UpperSet) -> Result<UpperSet> {
        if self.is_whole()? || b.is_whole()? {
            return Ok(UpperSet::whole(&self.cone));
        }
        self.minkowski_add(b)
    }

    /// `cl co A`, a single closed convex piece (or `∅`).
    pub fn cl_co(&self) -> Result<UpperSet> {
        if self.is_empty() {
            return Ok(UpperSet::empty(&self.cone));
        }
        let hull = closed_hull(self.dim(), &self.pieces)?;
        UpperSet::new(&self.cone, vec![canonicalize(&hull)])
    }

    pub fn closure(&self) -> UpperSet {
        UpperSet {
            pieces: self.pieces.iter().map(Polyhedron::closure).collect(),
            cone: self.cone.clone(),
        }
    }

    /// `inf {-z*(z) : z in A}` as an extended real.
    pub fn scalarize(&self, z_star: &[Rat]) -> crate::ext_real::ExtReal {
        use crate::ext_real::ExtReal;
        let mut best = ExtReal::PosInf;
        for p in &self.pieces {
            let v = match p.support(z_star) {
                Support::Empty => ExtReal::PosInf,
                Support::Unbounded => ExtReal::NegInf,
                Support::Finite { value, .. } => ExtReal::Finite(-value),
            };
            best = best.min(v);
        }
        best
    }
}

impl std::fmt::Display for UpperSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rats};

    fn c2() -> Cone {
        Cone::orthant(2)
    }

    #[test]
    fn cone_validation() {
        assert!(Cone::new(2, vec![rats(&[0, 0])]).is_err());
        let full = vec![rats(&[1, 0]), rats(&[-1, 0]), rats(&[0, 1]), rats(&[0, -1])];
        assert!(Cone::new(2, full).is_err());
        let c = c2();
        assert!(c.in_polar(&rats(&[-1, 0])));
        assert!(!c.in_polar(&rats(&[1, -1])));
        let bad = Polyhedron::new(2, vec![Constraint::le(rats(&[1, 0]), rat(0))]);
        assert_eq!(UpperSet::new(&c, vec![bad]), Err(Error::NotUpperSet { piece: 0 }));
    }

    #[test]
    fn lattice_and_sums() {
        let c = c2();
        let cc = UpperSet::cone_set(&c);
        let p11 = UpperSet::point(&c, &rats(&[1, 1]));
        assert!(UpperSet::lattice_inf(&c, &[cc.clone(), p11.clone()]).unwrap().same_as(&cc).unwrap());
        assert!(UpperSet::lattice_sup(&c, &[cc.clone(), p11.clone()]).unwrap().same_as(&p11).unwrap());
        assert!(UpperSet::lattice_inf(&c, &[]).unwrap().is_empty());
        assert!(UpperSet::lattice_sup(&c, &[]).unwrap().is_whole().unwrap());
        let a = UpperSet::point(&c, &rats(&[1, 0]));
        let b = UpperSet::point(&c, &rats(&[0, 1]));
        assert!(a.minkowski_add(&b).unwrap().same_as(&p11).unwrap());
        assert!(cc.minkowski_add(&cc).unwrap().same_as(&cc).unwrap());
        assert!(a.minkowski_add(&UpperSet::empty(&c)).unwrap().is_empty());
        let z = UpperSet::whole(&c);
        assert!(z.sup_add(&UpperSet::empty(&c)).unwrap().is_whole().unwrap());
        assert!(UpperSet::empty(&c).sup_add(&a).unwrap().is_empty());
        let five = UpperSet::point(&c, &rats(&[5, 5]));
        assert!(five.scale(&rat(0)).unwrap().same_as(&cc).unwrap());
        assert!(a.scale(&rat(2)).unwrap().same_as(&UpperSet::point(&c, &rats(&[2, 0]))).unwrap());
        assert!(a.scale(&rat(-1)).is_err());
    }

    #[test]
    fn residuals() {
        let c = c2();
        let cc = UpperSet::cone_set(&c);
        assert!(cc.residual(&cc).unwrap().same_as(&cc).unwrap());
        let p11 = UpperSet::point(&c, &rats(&[1, 1]));
        let r = cc.residual(&p11).unwrap();
        assert!(r.contains(&rats(&[-1, -1])));
        assert!(!r.contains(&rats(&[-2, 0])));
        assert!(r.same_as(&UpperSet::point(&c, &rats(&[-1, -1]))).unwrap());
        assert!(cc.residual(&UpperSet::empty(&c)).unwrap().is_whole().unwrap());
        assert!(r.same_as(&cc.residual_by_duality(&p11).unwrap()).unwrap());
    }

    #[test]
    fn s_duality() {
        let c = c2();
        assert!(UpperSet::empty(&c).s_dual().unwrap().is_whole().unwrap());
        assert!(UpperSet::whole(&c).s_dual().unwrap().is_empty());
        let h = UpperSet::halfspace(&c, &rats(&[-1, 0]), rat(0)).unwrap();
        let s = h.s_dual().unwrap();
        assert!(s.contains(&rats(&[1, 0])));
        assert!(!s.contains(&rats(&[0, 0])));
        assert!(s.s_dual().unwrap().same_as(&h).unwrap());
        // s(w) = s(C) ⨪ w
        let w = UpperSet::halfspace(&c, &rats(&[-1, -2]), rat(3)).unwrap();
        let lhs = w.s_dual().unwrap();
        let rhs = UpperSet::cone_set(&c).s_dual().unwrap().residual(&w).unwrap();
        assert!(lhs.same_as(&rhs).unwrap());
    }
}
