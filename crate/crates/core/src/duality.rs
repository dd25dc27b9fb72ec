//! Verifiers for the set-valued chain rule and Fenchel–Rockafellar duality.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::polyhedra::{canonicalize, closed_hull, difference, project, strict_point};
use crate::rational::{is_zero_vec, neg_vec, primitive, ratio, sub_vec, Matrix, Rat};
use crate::scalar::{attaining_ystar, qualify, Qualification, ScalarFn};
use crate::setvalued::{level_set, Direction, SetConjugate, SetFn};
use crate::upper_set::UpperSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    InclusionOnly,
    QualificationFailed,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEntry {
    pub part: char,
    pub x_star: Vec<Rat>,
    pub z_star: Vec<Rat>,
    pub left: UpperSet,
    pub right: UpperSet,
    pub verdict: Verdict,
    pub y_star: Option<Vec<Rat>>,
    pub qualification: Option<Qualification>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRuleReport {
    pub id: String,
    pub entries: Vec<ChainEntry>,
}

impl ChainRuleReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict != Verdict::Failed)
    }

    pub fn first_failure(&self) -> Option<&ChainEntry> {
        self.entries.iter().find(|e| e.verdict == Verdict::Failed)
    }
}

/// A point in the symmetric difference of two upper sets.
pub fn gap_witness(a: &UpperSet, b: &UpperSet) -> Result<Option<Vec<Rat>>> {
    for (x, y) in [(a, b), (b, a)] {
        for p in x.pieces() {
            for d in difference(p, y.pieces())? {
                if let Some(v) = strict_point(&d) {
                    return Ok(Some(v));
                }
            }
        }
    }
    Ok(None)
}

fn compare(left: &UpperSet, right: &UpperSet) -> Result<Verdict> {
    Ok(if left.same_as(right)? { Verdict::Equal } else { Verdict::Failed })
}

fn single_convex(g: &SetFn) -> bool {
    g.full_region().is_empty() && g.pieces().len() <= 1
}

/// The extra `-∞` branch: either scalarization is `-∞` somewhere in the
/// domain of the other.
fn minus_inf_meets(a: &ScalarFn, b: &ScalarFn) -> bool {
    a.minus_inf_region()
        .iter()
        .any(|r| b.domain().iter().any(|d| !r.intersect(d).is_empty()))
}

/// Checks parts (a)–(d) at each dual `(x*, z*)` for `g` on `X`, `f` on `Y`,
/// `T : X -> Y` and `S : Y -> X`.
pub fn chain_rule_verify(
    id: &str,
    g: &SetFn,
    f: &SetFn,
    t: &Matrix,
    s: &Matrix,
    duals: &[Direction],
) -> Result<ChainRuleReport> {
    let (n, m) = (g.x_dim(), f.x_dim());
    if (t.rows, t.cols) != (m, n) || (s.rows, s.cols) != (n, m) || g.cone() != f.cone() {
        return Err(Error::contract("chain rule operands have incompatible shapes"));
    }
    if duals.iter().any(|d| is_zero_vec(&d.1)) {
        return Err(Error::contract("the chain rule needs z* != 0"));
    }
    let cone = g.cone();
    let tt = t.transpose();
    let st = s.transpose();
    let mut gc = SetConjugate::new(g.clone());
    let mut fc = SetConjugate::new(f.clone());
    let conv = g.inf_convolve(&SetFn::pushforward(s, f)?)?;
    let ft = f.precompose(t)?;
    let sum = g.add(&ft)?;
    let mut ystars = vec![vec![Rat::zero(); m]];
    for i in 0..m {
        let mut e = vec![Rat::zero(); m];
        e[i] = Rat::from_integer(1.into());
        ystars.push(neg_vec(&e));
        ystars.push(e);
    }
    let mut entries = Vec::new();
    for (x_star, z_star) in duals {
        let entry = |part, left, right, verdict, y_star, qualification| ChainEntry {
            part,
            x_star: x_star.clone(),
            z_star: z_star.clone(),
            left,
            right,
            verdict,
            y_star,
            qualification,
        };

        // (a)
        let left = conv.conjugate_at(x_star, z_star)?;
        let right = gc.at(x_star, z_star)?.sup_add(&fc.at(&st.apply(x_star), z_star)?)?;
        let v = compare(&left, &right)?;
        entries.push(entry('a', left, right, v, None, None));

        // (b)
        let gs = gc.scalar(z_star)?.clone();
        let fs = fc.scalar(z_star)?.clone();
        let lhs = sum.conjugate_at(x_star, z_star)?;
        let value = gs
            .sup_convolve(&ScalarFn::pushforward(&tt, &fs)?)?
            .evaluate(x_star);
        let rhs = level_set(cone, z_star, &value)?;
        let v = if lhs.same_as(&rhs)? {
            Verdict::Equal
        } else if rhs.subset_of(&lhs)? {
            Verdict::InclusionOnly
        } else {
            Verdict::Failed
        };
        entries.push(entry('b', lhs.clone(), rhs.clone(), v, None, None));

        // (c)
        if g.is_empty() || f.is_empty() {
            let mut ok = lhs.is_whole()? && rhs.is_whole()?;
            for y in &ystars {
                let term = gc.at(&sub_vec(x_star, &tt.apply(y)), z_star)?.sup_add(&fc.at(y, z_star)?)?;
                ok &= term.is_whole()?;
            }
            let v = if ok { Verdict::Equal } else { Verdict::Failed };
            entries.push(entry('c', lhs.clone(), rhs.clone(), v, None, None));
        }

        // (d)
        let phi_g = g.scalarize(z_star)?;
        let phi_ft = ft.scalarize(z_star)?;
        let q = match qualify(&phi_g, &phi_ft)? {
            Some(Qualification::MinusInfinityInDomain) => Some(Qualification::MinusInfinityInDomain),
            Some(q) if single_convex(g) && single_convex(f) => Some(q),
            _ => None,
        };
        let Some(q) = q else {
            entries.push(entry('d', lhs, rhs, Verdict::QualificationFailed, None, None));
            continue;
        };
        let mut ok = !lhs.is_whole()? && lhs.same_as(&rhs)?;
        let y = match (&value, gs.pieces(), fs.pieces()) {
            (ExtReal::Finite(_), [a], [b]) => attaining_ystar(a, b, t, x_star),
            (ExtReal::Finite(_), _, _) => None,
            _ => Some(vec![Rat::zero(); m]),
        };
        match &y {
            Some(y) => {
                let attained = gc
                    .at(&sub_vec(x_star, &tt.apply(y)), z_star)?
                    .minkowski_add(&fc.at(y, z_star)?)?;
                ok &= attained.same_as(&lhs)?;
            }
            None => ok = false,
        }
        let v = if ok { Verdict::Equal } else { Verdict::Failed };
        entries.push(entry('d', lhs, rhs, v, y, Some(q)));
    }
    Ok(ChainRuleReport {
        id: id.to_string(),
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongDuality {
    pub achieved: bool,
    pub certified: bool,
    pub y_star: Option<Vec<Rat>>,
    pub gap_witness: Option<Vec<Rat>>,
    pub qualification: Option<Qualification>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrEntry {
    pub z_star: Vec<Rat>,
    pub d_sample: UpperSet,
    pub weak_duality: bool,
    pub strong: StrongDuality,
    /// `H(z*) ⨪ (g*(T*y*, z*) + f*(-y*, z*))` at the found `y*`.
    pub attained: Option<UpperSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FRReport {
    pub p: UpperSet,
    pub entries: Vec<FrEntry>,
    /// Whether `P` equals the intersection of the attained dual sets; `None`
    /// when some direction was not certified.
    pub representation: Option<bool>,
}

impl FRReport {
    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.weak_duality && (!e.strong.certified || e.strong.achieved))
            && self.representation != Some(false)
    }
}

/// `P = cl co ∪_x (g(x) + f(T x))`.
pub fn primal_set(g: &SetFn, f: &SetFn, t: &Matrix) -> Result<UpperSet> {
    let h = g.add(&f.precompose(t)?)?;
    let (n, k) = (h.x_dim(), h.z_dim());
    let keep: Vec<usize> = (n..n + k).collect();
    let shadows = h
        .graph()
        .iter()
        .map(|p| project(p, &keep))
        .collect::<Result<Vec<_>>>()?;
    let shadows: Vec<_> = shadows.into_iter().filter(|p| !p.is_empty()).collect();
    if shadows.is_empty() {
        return Ok(UpperSet::empty(h.cone()));
    }
    UpperSet::new(h.cone(), vec![canonicalize(&closed_hull(k, &shadows)?)])
}

fn random_ystar(rng: &mut SplitMix64, m: usize) -> Vec<Rat> {
    (0..m)
        .map(|_| {
            let num = (rng.next_u64() % 9) as i64 - 4;
            let den = (rng.next_u64() % 3) as i64 + 1;
            ratio(num, den)
        })
        .collect()
}

/// Weak and strong duality at each `z*` of `zstars`, extended by the facet
/// normals of `P`.
pub fn fenchel_rockafellar(
    g: &SetFn,
    f: &SetFn,
    t: &Matrix,
    zstars: &[Vec<Rat>],
    ystar_budget: usize,
    seed: u64,
) -> Result<FRReport> {
    let (n, m) = (g.x_dim(), f.x_dim());
    if (t.rows, t.cols) != (m, n) || g.cone() != f.cone() {
        return Err(Error::contract("Fenchel-Rockafellar operands have incompatible shapes"));
    }
    let cone = g.cone();
    for z in zstars {
        cone.check_polar(z)?;
        if is_zero_vec(z) {
            return Err(Error::contract("Fenchel-Rockafellar needs z* != 0"));
        }
    }
    let p = primal_set(g, f, t)?;
    let mut dirs: BTreeSet<Vec<Rat>> = zstars.iter().cloned().collect();
    for piece in p.pieces() {
        for c in piece.constraints.iter().filter(|c| !c.is_trivial()) {
            dirs.insert(primitive(&c.normal));
        }
    }
    let tt = t.transpose();
    let ft = f.precompose(t)?;
    let mut gc = SetConjugate::new(g.clone());
    let mut fc = SetConjugate::new(f.clone());
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut base_sample: Vec<Vec<Rat>> = vec![vec![Rat::zero(); m]];
    for (y, _) in f.facet_directions()? {
        base_sample.push(neg_vec(&y));
    }
    for _ in 0..ystar_budget {
        base_sample.push(random_ystar(&mut rng, m));
    }

    let mut entries = Vec::new();
    for z_star in &dirs {
        let h = UpperSet::halfspace(cone, z_star, Rat::zero())?;
        let gs = gc.scalar(z_star)?.clone();
        let fs = fc.scalar(z_star)?.clone();
        // dual LP: minimize φ_g*(T*y*) + φ_f*(-y*)
        let y_opt = match (gs.pieces(), fs.pieces()) {
            ([a], [b]) => attaining_ystar(a, b, t, &vec![Rat::zero(); n]).map(|y| neg_vec(&y)),
            _ => None,
        }
        .unwrap_or_else(|| vec![Rat::zero(); m]);
        let mut sample = vec![y_opt.clone()];
        sample.extend(base_sample.iter().cloned());
        let mut dual_at = |y: &[Rat]| -> Result<UpperSet> {
            let sum = gc.at(&tt.apply(y), z_star)?.minkowski_add(&fc.at(&neg_vec(y), z_star)?)?;
            h.residual(&sum)
        };
        let mut d = UpperSet::whole(cone);
        for y in &sample {
            d = d.intersect(&dual_at(y)?)?;
        }
        let weak = p.subset_of(&d)?;

        let phi_g = g.scalarize(z_star)?;
        let phi_ft = ft.scalarize(z_star)?;
        let qualification = if minus_inf_meets(&phi_g, &phi_ft) || minus_inf_meets(&phi_ft, &phi_g) {
            Some(Qualification::MinusInfinityInDomain)
        } else {
            match qualify(&phi_g, &phi_ft)? {
                Some(q) if single_convex(g) && single_convex(f) => Some(q),
                _ => None,
            }
        };
        let (strong, attained) = if let Some(q) = qualification {
            let attained = dual_at(&y_opt)?;
            let closed = p.minkowski_add(&h)?.closure();
            let witness = gap_witness(&closed, &attained)?;
            let achieved = witness.is_none() && !attained.is_empty();
            (
                StrongDuality {
                    achieved,
                    certified: true,
                    y_star: Some(y_opt),
                    gap_witness: witness,
                    qualification: Some(q),
                },
                Some(attained),
            )
        } else {
            (
                StrongDuality {
                    achieved: false,
                    certified: false,
                    y_star: None,
                    gap_witness: None,
                    qualification: None,
                },
                None,
            )
        };
        entries.push(FrEntry {
            z_star: z_star.clone(),
            d_sample: d,
            weak_duality: weak,
            strong,
            attained,
        });
    }

    let representation = if entries.iter().all(|e| e.strong.achieved) {
        let sets: Vec<UpperSet> = entries.iter().filter_map(|e| e.attained.clone()).collect();
        Some(UpperSet::lattice_sup(cone, &sets)?.same_as(&p)?)
    } else {
        None
    };
    Ok(FRReport {
        p,
        entries,
        representation,
    })
}
