//! Finite unions of polyhedra ("regions") and their set algebra.

use super::fm::prune;
use super::{check_cap, Polyhedron};
use crate::error::Result;

/// Splits `w \ q` into disjoint pieces `w ∩ q_0 ∩ .. ∩ q_{j-1} ∩ ¬q_j`,
/// dropping empty ones.
fn split(w: &Polyhedron, q: &Polyhedron) -> Vec<Polyhedron> {
    if w.intersect(q).is_empty() {
        return vec![w.clone()];
    }
    let mut out = Vec::new();
    let mut acc = w.clone();
    for c in &q.constraints {
        let piece = acc.clone().with(c.negated());
        if !piece.is_empty() {
            out.push(piece);
        }
        acc.push(c.clone());
    }
    out
}

/// `p` minus the union of `others`, as disjoint nonempty pieces.
pub fn difference(p: &Polyhedron, others: &[Polyhedron]) -> Result<Vec<Polyhedron>> {
    let mut work = if p.is_empty() { Vec::new() } else { vec![p.clone()] };
    for q in others {
        let mut next = Vec::new();
        for w in &work {
            next.extend(split(w, q));
            check_cap("region difference", next.len())?;
        }
        work = next;
        if work.is_empty() {
            break;
        }
    }
    work.into_iter()
        .map(|w| Ok(Polyhedron::new(w.dim, prune(w.dim, w.constraints)?)))
        .collect()
}

/// The complement of a union of polyhedra in `Q^dim`.
pub fn complement(dim: usize, pieces: &[Polyhedron]) -> Result<Vec<Polyhedron>> {
    difference(&Polyhedron::whole(dim), pieces)
}

pub fn region_is_empty(pieces: &[Polyhedron]) -> bool {
    pieces.iter().all(Polyhedron::is_empty)
}

pub fn region_contains(pieces: &[Polyhedron], v: &[crate::rational::Rat]) -> bool {
    pieces.iter().any(|p| p.contains(v))
}

fn escapes(w: &Polyhedron, others: &[Polyhedron], budget: &mut usize) -> Result<bool> {
    *budget += 1;
    check_cap("region inclusion", *budget)?;
    let Some((q, rest)) = others.split_first() else {
        return Ok(true);
    };
    for piece in split(w, q) {
        if escapes(&piece, rest, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `∪a ⊆ ∪b`.
pub fn region_subset(a: &[Polyhedron], b: &[Polyhedron]) -> Result<bool> {
    let mut budget = 0;
    for p in a {
        if p.is_empty() {
            continue;
        }
        let relevant: Vec<Polyhedron> = b
            .iter()
            .filter(|q| !p.intersect(q).is_empty())
            .cloned()
            .collect();
        if escapes(p, &relevant, &mut budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn region_equal(a: &[Polyhedron], b: &[Polyhedron]) -> Result<bool> {
    Ok(region_subset(a, b)? && region_subset(b, a)?)
}

/// Drops polyhedra contained in another member of the list.
pub(crate) fn absorb(list: &mut Vec<Polyhedron>) {
    let mut i = 0;
    while i < list.len() {
        let covered = (0..list.len()).any(|j| {
            j != i && list[i].subset_of(&list[j]) && (j < i || !list[j].subset_of(&list[i]))
        });
        if covered {
            list.remove(i);
        } else {
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::Constraint;
    use crate::rational::{rat, rats};

    fn interval(lo: i64, hi: i64) -> Polyhedron {
        Polyhedron::new(
            1,
            vec![
                Constraint::le(rats(&[-1]), rat(-lo)),
                Constraint::le(rats(&[1]), rat(hi)),
            ],
        )
    }

    #[test]
    fn union_algebra() {
        let a = vec![interval(0, 2), interval(1, 3)];
        let b = vec![interval(0, 3)];
        assert!(region_equal(&a, &b).unwrap());
        let c = vec![interval(0, 1), interval(2, 3)];
        assert!(region_subset(&c, &b).unwrap());
        assert!(!region_subset(&b, &c).unwrap());
        let comp = complement(1, &b).unwrap();
        assert!(region_contains(&comp, &rats(&[4])));
        assert!(!region_contains(&comp, &rats(&[3])));
        assert!(region_contains(&comp, &rats(&[-1])));
        let gap = difference(&interval(0, 3), &c).unwrap();
        assert!(region_contains(&gap, &[crate::rational::ratio(3, 2)]));
        assert!(!region_contains(&gap, &rats(&[1])));
    }
}
