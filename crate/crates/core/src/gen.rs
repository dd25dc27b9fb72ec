//! Seeded instance generators for property runs.
//!
//! Every sample is drawn from a SplitMix64 stream, so a seed reproduces the
//! same instances in any implementation of that mixer.

use num_traits::Zero;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::ext_real::ExtReal;
use crate::polyhedra::{Constraint, Polyhedron};
use crate::rational::{add_vec, dot, rat, ratio, scale_vec, Matrix, Rat};
use crate::scalar::{ImproperAffine, ScalarFn};
use crate::setvalued::SetFn;
use crate::upper_set::{Cone, UpperSet};

/// Shapes of generated set-valued functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    /// One closed convex piece with `dom g = X` and no `Z` value.
    ConvexFull,
    /// One closed convex piece over a bounded or half-bounded domain.
    ConvexRestricted,
    /// Union of two convex pieces.
    Union,
    /// A strict (non-closed) convex piece.
    Open,
    Empty,
    Whole,
    /// `Z` on a closed convex region, `∅` elsewhere.
    ImproperConvex,
}

pub struct Gen {
    rng: SplitMix64,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.rng.next_u64() % (hi - lo + 1) as u64) as i64
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.rng.next_u64() % den < num
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.int(0, items.len() as i64 - 1) as usize]
    }

    /// Small rational `p/q` with `|p| <= 4`, `q <= 3`.
    pub fn rat(&mut self) -> Rat {
        let p = self.int(-4, 4);
        let q = if self.chance(2, 3) { 1 } else { self.int(2, 3) };
        ratio(p, q)
    }

    pub fn vec(&mut self, dim: usize) -> Vec<Rat> {
        (0..dim).map(|_| self.rat()).collect()
    }

    pub fn int_vec(&mut self, dim: usize, lo: i64, hi: i64) -> Vec<Rat> {
        (0..dim).map(|_| rat(self.int(lo, hi))).collect()
    }

    pub fn ext_real(&mut self) -> ExtReal {
        match self.int(0, 9) {
            0 => ExtReal::NegInf,
            1 => ExtReal::PosInf,
            _ => ExtReal::Finite(self.rat()),
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows).map(|_| self.int_vec(cols, -2, 2)).collect();
        Matrix::new(rows, cols, data).expect("shape is consistent")
    }

    /// A nonempty polyhedron through a random point with 1 to 3 rows.
    pub fn polyhedron(&mut self, dim: usize) -> Polyhedron {
        let p = self.int_vec(dim, -2, 2);
        let rows = (0..self.int(1, 3))
            .map(|_| {
                let mut a = self.int_vec(dim, -2, 2);
                if a.iter().all(Zero::is_zero) {
                    a[0] = rat(1);
                }
                let b = dot(&a, &p) + rat(self.int(0, 2));
                Constraint::le(a, b)
            })
            .collect();
        Polyhedron::new(dim, rows)
    }

    /// The box `[lo, lo + w]^dim`.
    pub fn bounded(&mut self, dim: usize) -> Polyhedron {
        let mut rows = Vec::new();
        for i in 0..dim {
            let lo = self.int(-2, 1);
            let w = self.int(0, 3);
            let mut e = vec![Rat::zero(); dim];
            e[i] = rat(1);
            rows.push(Constraint::le(e.iter().map(|a| -a).collect(), rat(-lo)));
            rows.push(Constraint::le(e, rat(lo + w)));
        }
        Polyhedron::new(dim, rows)
    }

    /// Orthant, a pointed non-orthant cone, or a half-plane.
    pub fn cone(&mut self, dim: usize) -> Cone {
        if dim == 2 {
            match self.int(0, 5) {
                0 => return Cone::new(2, vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]]).unwrap(),
                1 => {
                    let gens = vec![vec![rat(1), rat(0)], vec![rat(-1), rat(0)], vec![rat(0), rat(1)]];
                    return Cone::new(2, gens).unwrap();
                }
                _ => {}
            }
        }
        Cone::orthant(dim)
    }

    /// A nonzero element of `C^-` as a small nonnegative combination of the
    /// dual generators.
    pub fn polar(&mut self, cone: &Cone) -> Vec<Rat> {
        loop {
            let mut v = vec![Rat::zero(); cone.dim()];
            for d in cone.dual_generators() {
                v = add_vec(&v, &scale_vec(&rat(self.int(0, 2)), d));
            }
            if v.iter().any(|a| !a.is_zero()) {
                return v;
            }
        }
    }

    /// Random proper convex max-affine function on a random domain.
    pub fn convex_scalar(&mut self, dim: usize, full_domain: bool) -> ScalarFn {
        let terms: Vec<(Vec<Rat>, Rat)> =
            (0..self.int(1, 3)).map(|_| (self.int_vec(dim, -2, 2), self.rat())).collect();
        let domain = if full_domain {
            Polyhedron::whole(dim)
        } else if self.chance(1, 2) {
            self.bounded(dim)
        } else {
            self.polyhedron(dim)
        };
        ScalarFn::max_affine(&domain, &terms).expect("generated function is valid")
    }

    /// Piecewise-linear functions of every kind, improper ones included.
    pub fn scalar(&mut self, dim: usize) -> ScalarFn {
        match self.int(0, 9) {
            0 => ScalarFn::plus_infinity(dim),
            1 => ScalarFn::minus_infinity(dim),
            2 => {
                let a = self.convex_scalar(dim, false);
                let b = self.convex_scalar(dim, false);
                ScalarFn::pointwise_min(dim, &[a, b]).expect("min of PL functions")
            }
            3 => ImproperAffine::hat(self.int_vec(dim, -2, 2), self.rat())
                .to_fn()
                .expect("improper affine"),
            4 => {
                let region = self.polyhedron(dim);
                let f = self.convex_scalar(dim, true);
                ScalarFn::new(dim, f.pieces().to_vec(), vec![region]).expect("valid pieces")
            }
            5 => ScalarFn::indicator(&self.polyhedron(dim)).expect("indicator"),
            6 => self.convex_scalar(dim, true),
            _ => self.convex_scalar(dim, false),
        }
    }

    /// A closed convex graph piece `{(x, z) : d_i(z) <= a_i(x) + b_i}` with
    /// `d_i` in `C^- \ {0}`, passing through a random point.
    fn convex_piece(&mut self, cone: &Cone, n: usize) -> Polyhedron {
        let k = cone.dim();
        let x0 = self.int_vec(n, -2, 2);
        let z0 = self.int_vec(k, -2, 2);
        let mut rows = Vec::new();
        let m = self.int(1, 3);
        for i in 0..m {
            let d = if (i as usize) < cone.dual_generators().len() && self.chance(2, 3) {
                cone.dual_generators()[i as usize].clone()
            } else {
                self.polar(cone)
            };
            let a = self.int_vec(n, -2, 2);
            let mut normal: Vec<Rat> = a.iter().map(|v| -v).collect();
            normal.extend(d.iter().cloned());
            let mut point = x0.clone();
            point.extend(z0.iter().cloned());
            let b = dot(&normal, &point) + rat(self.int(0, 1));
            rows.push(Constraint::le(normal, b));
        }
        Polyhedron::new(n + k, rows)
    }

    pub fn set_fn(&mut self, cone: &Cone, n: usize, kind: SetKind) -> SetFn {
        let k = cone.dim();
        match kind {
            SetKind::ConvexFull => {
                let p = self.convex_piece(cone, n);
                SetFn::new(cone, n, vec![p], Vec::new()).expect("upper piece")
            }
            SetKind::ConvexRestricted => {
                let p = self.convex_piece(cone, n);
                let dom = if self.chance(1, 2) { self.bounded(n) } else { self.polyhedron(n) };
                let p = p.intersect(&dom.embed(n + k, &(0..n).collect::<Vec<_>>()));
                SetFn::new(cone, n, vec![p], Vec::new()).expect("upper piece")
            }
            SetKind::Union => {
                let a = self.set_fn(cone, n, SetKind::ConvexRestricted);
                let b = if self.chance(1, 2) {
                    self.set_fn(cone, n, SetKind::ConvexFull)
                } else {
                    self.set_fn(cone, n, SetKind::ConvexRestricted)
                };
                SetFn::inf(cone, n, &[a, b]).expect("same shape")
            }
            SetKind::Open => {
                let p = self.convex_piece(cone, n);
                let mut rows = p.constraints.clone();
                rows[0].strict = true;
                SetFn::new(cone, n, vec![Polyhedron::new(n + k, rows)], Vec::new()).expect("upper piece")
            }
            SetKind::Empty => SetFn::empty(cone, n),
            SetKind::Whole => SetFn::whole(cone, n),
            SetKind::ImproperConvex => {
                let dom = if self.chance(1, 2) { self.bounded(n) } else { self.polyhedron(n) };
                SetFn::new(cone, n, Vec::new(), vec![dom]).expect("region")
            }
        }
    }

    /// A mix weighted toward convex and nonconvex proper functions.
    pub fn any_set_fn(&mut self, cone: &Cone, n: usize) -> SetFn {
        let kinds = [
            SetKind::ConvexFull,
            SetKind::ConvexFull,
            SetKind::ConvexRestricted,
            SetKind::ConvexRestricted,
            SetKind::Union,
            SetKind::Union,
            SetKind::Open,
            SetKind::Empty,
            SetKind::Whole,
            SetKind::ImproperConvex,
        ];
        let kind = *self.pick(&kinds);
        self.set_fn(cone, n, kind)
    }

    /// An upper set with one or two pieces, possibly empty or whole.
    pub fn upper_set(&mut self, cone: &Cone) -> UpperSet {
        let k = cone.dim();
        match self.int(0, 9) {
            0 => UpperSet::empty(cone),
            1 => UpperSet::whole(cone),
            2 => UpperSet::cone_set(cone),
            3 => {
                let z = self.polar(cone);
                UpperSet::halfspace(cone, &z, self.rat()).expect("polar direction")
            }
            4 | 5 => {
                let a = self.int_vec(k, -2, 2);
                let b = self.int_vec(k, -2, 2);
                UpperSet::upper_closure(cone, &[Polyhedron::point(&a), Polyhedron::point(&b)])
                    .expect("upper closure")
            }
            _ => {
                let g = self.convex_piece(cone, 0);
                UpperSet::new(cone, vec![g]).expect("upper piece")
            }
        }
    }

    /// A point near the data: integers and halves in `[-3, 3]`.
    pub fn point(&mut self, dim: usize) -> Vec<Rat> {
        (0..dim).map(|_| ratio(self.int(-6, 6), 2)).collect()
    }
}
