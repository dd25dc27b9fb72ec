//! The order-complete extended reals with inf-addition `⊕`, sup-addition `⊞`
//! and their residuals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat, Rat};

/// `-∞ < finite < +∞`; the derived order is the lattice order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtReal {
    NegInf,
    Finite(Rat),
    PosInf,
}

use ExtReal::{Finite, NegInf, PosInf};

impl ExtReal {
    pub fn finite(r: Rat) -> Self {
        Finite(r)
    }

    pub fn zero() -> Self {
        Finite(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Finite(r) => Some(r),
            _ => None,
        }
    }

    /// `r ⊕ s`: `+∞` dominates.
    pub fn inf_add(&self, s: &ExtReal) -> ExtReal {
        match (self, s) {
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// `r ⊞ s`: `-∞` dominates.
    pub fn sup_add(&self, s: &ExtReal) -> ExtReal {
        match (self, s) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// `r ⨪ s = inf{t : r <= s ⊕ t}`.
    pub fn inf_residual(&self, s: &ExtReal) -> ExtReal {
        match (self, s) {
            (_, PosInf) => NegInf,
            (NegInf, NegInf) => NegInf,
            (_, NegInf) => PosInf,
            (PosInf, Finite(_)) => PosInf,
            (NegInf, Finite(_)) => NegInf,
            (Finite(a), Finite(b)) => Finite(a - b),
        }
    }

    /// `r ⊟ s = sup{t : s ⊞ t <= r}`.
    pub fn sup_residual(&self, s: &ExtReal) -> ExtReal {
        match (self, s) {
            (_, NegInf) => PosInf,
            (PosInf, PosInf) => PosInf,
            (_, PosInf) => NegInf,
            (PosInf, Finite(_)) => PosInf,
            (NegInf, Finite(_)) => NegInf,
            (Finite(a), Finite(b)) => Finite(a - b),
        }
    }

    /// `t·r` for `t >= 0`, with `0·(±∞) = 0`.
    pub fn scale(&self, t: &Rat) -> Result<ExtReal> {
        if t.is_negative() {
            return Err(Error::contract("negative scalar on the extended reals"));
        }
        Ok(match self {
            _ if t.is_zero() => ExtReal::zero(),
            Finite(a) => Finite(a * t),
            other => other.clone(),
        })
    }

    /// Infimum of a finite family; `inf ∅ = +∞`.
    pub fn inf_of<'a>(family: impl IntoIterator<Item = &'a ExtReal>) -> ExtReal {
        family.into_iter().min().cloned().unwrap_or(PosInf)
    }

    /// Supremum of a finite family; `sup ∅ = -∞`.
    pub fn sup_of<'a>(family: impl IntoIterator<Item = &'a ExtReal>) -> ExtReal {
        family.into_iter().max().cloned().unwrap_or(NegInf)
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        match self {
            NegInf => Ordering::Less,
            PosInf => Ordering::Greater,
            Finite(a) => a.cmp(r),
        }
    }
}

impl From<Rat> for ExtReal {
    fn from(r: Rat) -> Self {
        Finite(r)
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        -&self
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            Finite(a) => Finite(-a),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("+inf"),
            Finite(a) => f.write_str(&format_rat(a)),
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "-inf" => Ok(NegInf),
            "+inf" => Ok(PosInf),
            _ => parse_rat(s).map(Finite),
        }
    }
}
