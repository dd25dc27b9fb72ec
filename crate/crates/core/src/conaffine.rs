//! Conaffine functions `S_{(x*,r,z*)}(x) = {z : x*(x) - r <= -z*(z)}`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyhedra::{Constraint, Polyhedron};
use crate::rational::{dot, is_zero_vec, scale_vec, Rat};
use crate::scalar::ScalarFn;
use crate::setvalued::SetFn;
use crate::upper_set::{Cone, UpperSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConAffine {
    cone: Cone,
    pub x_star: Vec<Rat>,
    pub r: Rat,
    pub z_star: Vec<Rat>,
}

impl ConAffine {
    pub fn new(cone: &Cone, x_star: Vec<Rat>, r: Rat, z_star: Vec<Rat>) -> Result<Self> {
        cone.check_polar(&z_star)?;
        Ok(ConAffine {
            cone: cone.clone(),
            x_star,
            r,
            z_star,
        })
    }

    /// The conlinear function `S_{(x*,z*)}`.
    pub fn conlinear(cone: &Cone, x_star: Vec<Rat>, z_star: Vec<Rat>) -> Result<Self> {
        Self::new(cone, x_star, Rat::zero(), z_star)
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// `{z : z*(z) <= r - x*(x)}`; for `z* = 0` this is `Z` or `∅`.
    pub fn eval(&self, x: &[Rat]) -> UpperSet {
        assert_eq!(x.len(), self.x_star.len());
        UpperSet::halfspace(&self.cone, &self.z_star, &self.r - dot(&self.x_star, x))
            .expect("z* was checked against C^-")
    }

    /// `S ⊇ g` pointwise, decided by `x*_r <= φ_{g,z*}`.
    pub fn is_minorant(&self, g: &SetFn) -> Result<bool> {
        if g.cone() != &self.cone || g.x_dim() != self.x_star.len() {
            return Err(Error::contract("conaffine function and g live on different spaces"));
        }
        let affine = ScalarFn::affine(self.x_star.clone(), -&self.r)?;
        affine.le(&g.scalarize(&self.z_star)?)
    }

    /// The lexicographically smallest `d / z*(d)` over dual generators `d`
    /// of `C` with `z*(d) != 0`, so that `z*(z0) = 1`.
    pub fn z0(&self) -> Option<Vec<Rat>> {
        if is_zero_vec(&self.z_star) {
            return None;
        }
        self.cone
            .dual_generators()
            .iter()
            .chain(self.cone.generators())
            .filter_map(|d| {
                let s = dot(&self.z_star, d);
                (!s.is_zero()).then(|| scale_vec(&(Rat::one() / s), d))
            })
            .min()
            .or_else(|| {
                let s = dot(&self.z_star, &self.z_star);
                Some(scale_vec(&(Rat::one() / s), &self.z_star))
            })
    }

    /// The graph `{(x, z) : x*(x) + z*(z) <= r}` as a set-valued function.
    pub fn to_set_fn(&self) -> Result<SetFn> {
        let n = self.x_star.len();
        if is_zero_vec(&self.z_star) {
            let region = Polyhedron::new(n, vec![Constraint::le(self.x_star.clone(), self.r.clone())]);
            return SetFn::new(&self.cone, n, Vec::new(), vec![region]);
        }
        let mut normal = self.x_star.clone();
        normal.extend(self.z_star.iter().cloned());
        let piece = Polyhedron::new(n + self.cone.dim(), vec![Constraint::le(normal, self.r.clone())]);
        SetFn::new(&self.cone, n, vec![piece], Vec::new())
    }

    /// `t · x*` and `t · r`, the left member of the scaling identity.
    pub fn scaled(&self, t: &Rat) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::contract("scaling needs t > 0"));
        }
        Ok(ConAffine {
            cone: self.cone.clone(),
            x_star: scale_vec(t, &self.x_star),
            r: t * &self.r,
            z_star: self.z_star.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rats, Matrix};

    fn c2() -> Cone {
        Cone::orthant(2)
    }

    #[test]
    fn values() {
        let c = c2();
        let h = ConAffine::conlinear(&c, rats(&[0]), rats(&[-1, -1])).unwrap();
        let hz = UpperSet::halfspace(&c, &rats(&[-1, -1]), rat(0)).unwrap();
        assert!(h.eval(&rats(&[5])).same_as(&hz).unwrap());
        let zero = ConAffine::conlinear(&c, rats(&[1]), rats(&[0, 0])).unwrap();
        assert!(zero.eval(&rats(&[-1])).is_whole().unwrap());
        assert!(zero.eval(&rats(&[1])).is_empty());
        let s = ConAffine::conlinear(&c, rats(&[1]), rats(&[-1, 0])).unwrap();
        let expect = Polyhedron::new(2, vec![Constraint::le(rats(&[-1, 0]), rat(-2))]);
        assert!(s.eval(&rats(&[2])).same_as(&UpperSet::new(&c, vec![expect]).unwrap()).unwrap());
        assert!(ConAffine::conlinear(&c, rats(&[1]), rats(&[1, 0])).is_err());
    }

    #[test]
    fn minorants() {
        let c = c2();
        let z = rats(&[-1, -2]);
        let s = ConAffine::conlinear(&c, rats(&[0, 0]), z.clone()).unwrap();
        assert!(s.is_minorant(&SetFn::empty(&c, 2)).unwrap());
        // g(x) = {x} + C has S_{(-T* z*, z*)} as a minorant
        let g = SetFn::linear(&c, &Matrix::identity(2)).unwrap();
        let m = ConAffine::conlinear(&c, rats(&[1, 2]), z.clone()).unwrap();
        assert!(m.is_minorant(&g).unwrap());
        let constant = SetFn::constant(2, &UpperSet::cone_set(&c)).unwrap();
        let bad = ConAffine::conlinear(&c, rats(&[1, 0]), z).unwrap();
        assert!(!bad.is_minorant(&constant).unwrap());
    }

    #[test]
    fn z0_solves() {
        let s = ConAffine::conlinear(&c2(), rats(&[1]), rats(&[-1, -3])).unwrap();
        let z0 = s.z0().unwrap();
        assert_eq!(dot(&s.z_star, &z0), rat(1));
    }

    #[test]
    fn graphs() {
        let c = c2();
        let s = ConAffine::new(&c, rats(&[1]), rat(1), rats(&[-1, 0])).unwrap();
        let g = s.to_set_fn().unwrap();
        for x in [-2, 0, 3] {
            assert!(g.eval(&rats(&[x])).same_as(&s.eval(&rats(&[x]))).unwrap());
        }
        let z = ConAffine::new(&c, rats(&[1]), rat(1), rats(&[0, 0])).unwrap().to_set_fn().unwrap();
        assert!(z.eval(&rats(&[1])).is_whole().unwrap());
        assert!(z.eval(&rats(&[2])).is_empty());
    }
}
