use crate::error::Result;
use crate::polyhedra::{Constraint, Polyhedron};
use crate::rational::{dot, Rat};

use super::ScalarFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImproperMode {
    /// `-∞` on `{x*(x) - r <= 0}`, `+∞` on the rest (closed epigraph).
    HatInf,
    /// `+∞` on `{x*(x) - r <= 0}`, `-∞` on the rest (closed hypograph).
    HatSup,
}

/// The improper extension of the affine map `x -> x*(x) - r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImproperAffine {
    pub x_star: Vec<Rat>,
    pub r: Rat,
    pub mode: ImproperMode,
}

impl ImproperAffine {
    pub fn hat(x_star: Vec<Rat>, r: Rat) -> Self {
        ImproperAffine {
            x_star,
            r,
            mode: ImproperMode::HatInf,
        }
    }

    /// Whether `x*(x) - r <= 0`.
    pub fn below(&self, x: &[Rat]) -> bool {
        dot(&self.x_star, x) <= self.r
    }

    pub fn to_fn(&self) -> Result<ScalarFn> {
        let dim = self.x_star.len();
        let le = Constraint::le(self.x_star.clone(), self.r.clone());
        let region = match self.mode {
            ImproperMode::HatInf => le,
            ImproperMode::HatSup => le.negated(),
        };
        ScalarFn::new(dim, Vec::new(), vec![Polyhedron::new(dim, vec![region])])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext_real::ExtReal;
    use crate::rational::{rat, rats};

    #[test]
    fn case_split() {
        let a = ImproperAffine::hat(rats(&[1]), rat(0)).to_fn().unwrap();
        assert_eq!(a.evaluate(&rats(&[-1])), ExtReal::NegInf);
        assert_eq!(a.evaluate(&rats(&[0])), ExtReal::NegInf);
        assert_eq!(a.evaluate(&rats(&[1])), ExtReal::PosInf);
        let mut s = ImproperAffine::hat(rats(&[1]), rat(0));
        s.mode = ImproperMode::HatSup;
        let s = s.to_fn().unwrap();
        assert_eq!(s.evaluate(&rats(&[0])), ExtReal::PosInf);
        assert_eq!(s.evaluate(&rats(&[1])), ExtReal::NegInf);
    }

    /// With `x* = 0` the displayed case split gives `-∞` exactly when
    /// `0 - r <= 0`, i.e. `r >= 0`. The accompanying prose says `r <= 0`;
    /// the two only agree at `r = 0`.
    #[test]
    fn zero_functional_follows_case_split() {
        let neg = ImproperAffine::hat(rats(&[0]), rat(1)).to_fn().unwrap();
        assert!(neg.is_minus_infinity().unwrap());
        let pos = ImproperAffine::hat(rats(&[0]), rat(-1)).to_fn().unwrap();
        assert!(pos.is_plus_infinity());
        let zero = ImproperAffine::hat(rats(&[0]), rat(0)).to_fn().unwrap();
        assert!(zero.is_minus_infinity().unwrap());
    }

    #[test]
    fn minorant_iff_domain_minorant() {
        // x̂*_r <= g  iff  x*_r <= I_dom g
        let dom = Polyhedron::new(
            1,
            vec![
                Constraint::le(rats(&[1]), rat(2)),
                Constraint::le(rats(&[-1]), rat(0)),
            ],
        );
        let g = ScalarFn::max_affine(&dom, &[(rats(&[5]), rat(-3))]).unwrap();
        let ind = ScalarFn::indicator(&dom).unwrap();
        for (xs, r) in [(1, 2), (1, 1), (-1, 0), (2, 4), (2, 3)] {
            let hat = ImproperAffine::hat(rats(&[xs]), rat(r)).to_fn().unwrap();
            let lin = ScalarFn::affine(rats(&[xs]), rat(-r)).unwrap();
            assert_eq!(hat.le(&g).unwrap(), lin.le(&ind).unwrap(), "x* = {xs}, r = {r}");
        }
    }
}
