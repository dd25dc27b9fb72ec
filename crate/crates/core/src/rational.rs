//! Exact rational scalars and small vector helpers.
//!
//! Scalars are `num_rational::BigRational`, which keeps numerator and
//! denominator coprime with a positive denominator. The textual form is
//! `p/q`, or plain `p` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rats(values: &[i64]) -> Vec<Rat> {
    values.iter().map(|&v| rat(v)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn neg_vec(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| -x).collect()
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(t: &Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| t * x).collect()
}

/// Matrix-vector product for a row-major matrix.
pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn transpose(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

/// Dense row-major rational matrix with explicit shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rat>>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Vec<Rat>>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::contract(format!("matrix data is not {rows}x{cols}")));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            data: identity(n),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Rat::zero(); cols]; rows],
        }
    }

    pub fn from_ints(rows: usize, cols: usize, v: &[i64]) -> Self {
        assert_eq!(v.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: v.chunks(cols.max(1)).take(rows).map(rats).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data: transpose(&self.data, self.cols),
        }
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        mat_vec(&self.data, v)
    }
}

/// Positive factor that turns `v` into a coprime integer vector.
/// Returns one for the zero vector.
pub fn primitive_factor(v: &[Rat]) -> Rat {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut gcd = BigInt::zero();
    for x in v {
        let n = (x * Rat::from_integer(lcm.clone())).to_integer();
        gcd = gcd.gcd(&n);
    }
    if gcd.is_zero() {
        return Rat::one();
    }
    Rat::new(lcm, gcd.abs())
}

/// Scales `v` by a positive factor into coprime integer form.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    let f = primitive_factor(v);
    scale_vec(&f, v)
}

pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`. Zero denominators are rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = |msg: &str| Error::parse(format!("rational {s:?}"), msg.to_string());
    let int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected an integer"));
        }
        t.parse::<BigInt>().map_err(|_| bad("expected an integer"))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(int(s)?)),
        Some((p, q)) => {
            if q.starts_with(['-', '+']) {
                return Err(bad("denominator must be unsigned"));
            }
            let q = int(q)?;
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rat::new(int(p)?, q))
        }
    }
}

pub fn parse_vec(items: &[String]) -> Result<Vec<Rat>> {
    items.iter().map(|s| parse_rat(s)).collect()
}

pub fn format_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), rat(-7));
        assert_eq!(format_rat(&ratio(-4, 6)), "-2/3");
        assert_eq!(format_rat(&rat(5)), "5");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("--1").is_err());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![ratio(1, 2), ratio(-3, 4), rat(0)];
        assert_eq!(primitive(&v), rats(&[2, -3, 0]));
        assert_eq!(primitive(&rats(&[4, 6])), rats(&[2, 3]));
        assert_eq!(primitive(&rats(&[0, 0])), rats(&[0, 0]));
    }
}
