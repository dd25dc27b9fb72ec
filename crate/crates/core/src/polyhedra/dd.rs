//! Double description: H-representation to generators and back.

use num_traits::{One, Signed, Zero};

use super::{check_cap, Constraint, Polyhedron};
use crate::error::Result;
use crate::rational::{dot, is_zero_vec, neg_vec, primitive, Rat};

/// `conv(points) + cone(rays) + span(lines)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    pub dim: usize,
    pub points: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Rat>>,
    pub lines: Vec<Vec<Rat>>,
}

impl Generators {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::new(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        let n = self.0.len().max(o.0.len());
        Bits(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) & o.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, w)| w & !o.0.get(i).copied().unwrap_or(0) == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vec<Rat>,
    tight: Bits,
}

/// Generators of the cone `{y : <row, y> <= 0 for every row}` as
/// `(lines, extreme rays)`, each in coprime integer form.
pub fn cone_generators(dim: usize, rows: &[Vec<Rat>]) -> Result<(Vec<Vec<Rat>>, Vec<Vec<Rat>>)> {
    let mut lines: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut e = vec![Rat::zero(); dim];
            e[i] = Rat::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut k = 0usize;

    for a in rows {
        if is_zero_vec(a) {
            continue;
        }
        if let Some(li) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let l = lines.remove(li);
            let al = dot(a, &l);
            for m in lines.iter_mut() {
                let f = dot(a, m) / &al;
                if !f.is_zero() {
                    for (x, y) in m.iter_mut().zip(&l) {
                        *x -= &f * y;
                    }
                    *m = primitive(m);
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, &r.v) / &al;
                if !f.is_zero() {
                    for (x, y) in r.v.iter_mut().zip(&l) {
                        *x -= &f * y;
                    }
                    r.v = primitive(&r.v);
                }
                r.tight.set(k);
            }
            let v = if al.is_positive() { neg_vec(&l) } else { l };
            rays.push(Ray {
                v: primitive(&v),
                tight: Bits::full(k),
            });
            k += 1;
            continue;
        }

        let vals: Vec<Rat> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.set(k);
                }
            }
            k += 1;
            continue;
        }
        let need = (dim - lines.len()).saturating_sub(2);
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].tight.and(&rays[n].tight);
                if common.count() < need {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|o| o == p || o == n || !common.subset_of(&rays[o].tight));
                if !adjacent {
                    continue;
                }
                let sp = &vals[p];
                let sn = &vals[n];
                let w: Vec<Rat> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| sp * x - sn * y)
                    .collect();
                let mut tight = common;
                tight.set(k);
                fresh.push(Ray {
                    v: primitive(&w),
                    tight,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(vals) {
            if v.is_positive() {
                continue;
            }
            if v.is_zero() {
                r.tight.set(k);
            }
            next.push(r);
        }
        next.extend(fresh);
        check_cap("double description", next.len())?;
        rays = next;
        k += 1;
    }
    Ok((lines, rays.into_iter().map(|r| r.v).collect()))
}

/// Generators of the closure of `p`.
pub fn h_to_v(p: &Polyhedron) -> Result<Generators> {
    let n = p.dim;
    let closed = p.closure();
    if closed.is_empty() {
        return Ok(Generators {
            dim: n,
            points: Vec::new(),
            rays: Vec::new(),
            lines: Vec::new(),
        });
    }
    let mut rows: Vec<Vec<Rat>> = closed
        .constraints
        .iter()
        .filter(|c| !c.is_trivial())
        .map(|c| {
            let mut r = c.normal.clone();
            r.push(-&c.bound);
            r
        })
        .collect();
    let mut t = vec![Rat::zero(); n + 1];
    t[n] = -Rat::one();
    rows.push(t);
    let (lines, rays) = cone_generators(n + 1, &rows)?;
    let mut g = Generators {
        dim: n,
        points: Vec::new(),
        rays: Vec::new(),
        lines: lines.into_iter().map(|l| primitive(&l[..n])).collect(),
    };
    for r in rays {
        let t = r[n].clone();
        if t.is_zero() {
            g.rays.push(r[..n].to_vec());
        } else {
            g.points.push(r[..n].iter().map(|x| x / &t).collect());
        }
    }
    Ok(g)
}

/// H-representation of the closed polyhedron generated by `g`.
pub fn v_to_h(g: &Generators) -> Result<Polyhedron> {
    let n = g.dim;
    if g.points.is_empty() {
        return Ok(Polyhedron::empty(n));
    }
    let lift = |v: &[Rat], last: Rat| {
        let mut r = v.to_vec();
        r.push(last);
        r
    };
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    rows.extend(g.points.iter().map(|v| lift(v, Rat::one())));
    rows.extend(g.rays.iter().map(|r| lift(r, Rat::zero())));
    for l in &g.lines {
        rows.push(lift(l, Rat::zero()));
        rows.push(lift(&neg_vec(l), Rat::zero()));
    }
    let (lines, rays) = cone_generators(n + 1, &rows)?;
    let mut cs = Vec::new();
    for r in rays {
        if is_zero_vec(&r[..n]) {
            continue;
        }
        cs.push(Constraint::le(r[..n].to_vec(), -&r[n]));
    }
    for l in lines {
        if is_zero_vec(&l[..n]) {
            continue;
        }
        cs.push(Constraint::le(l[..n].to_vec(), -&l[n]));
        cs.push(Constraint::le(neg_vec(&l[..n]), l[n].clone()));
    }
    Ok(Polyhedron::new(n, cs))
}

/// Closed convex hull of a finite union of polyhedra.
pub fn closed_hull(dim: usize, polys: &[Polyhedron]) -> Result<Polyhedron> {
    let mut all = Generators {
        dim,
        points: Vec::new(),
        rays: Vec::new(),
        lines: Vec::new(),
    };
    for p in polys {
        let g = h_to_v(p)?;
        all.points.extend(g.points);
        all.rays.extend(g.rays);
        all.lines.extend(g.lines);
    }
    check_cap("hull generators", all.points.len() + all.rays.len() + all.lines.len())?;
    v_to_h(&all)
}
