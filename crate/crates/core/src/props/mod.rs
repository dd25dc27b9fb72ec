//! Seeded invariant families. Each family draws its instances from
//! [`Gen`](crate::gen::Gen), checks them against the library and, where one
//! exists, against an independent generator-based [`oracle`].

pub mod oracle;

use std::fmt::Write as _;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::conaffine::ConAffine;
use crate::duality::fenchel_rockafellar;
use crate::error::Result;
use crate::ext_real::ExtReal;
use crate::gen::{Gen, SetKind};
use crate::polyhedra::{Constraint, Polyhedron};
use crate::rational::{add_vec, dot, format_vec, is_zero_vec, neg_vec, ratio, scale_vec, sub_vec, Rat};
use crate::scalar::{chain_rule_scalar, ScalarFn};
use crate::setvalued::{level_set, SetFn};
use crate::upper_set::{Cone, UpperSet};

use oracle::Hull;

/// Result of one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub checked: usize,
    /// Instances outside the family's hypotheses.
    pub skipped: usize,
    /// Instances meeting a qualification, for families that count them.
    pub qualified: Option<usize>,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}: {} checked", self.name, self.checked);
        if self.skipped > 0 {
            let _ = write!(s, ", {} skipped", self.skipped);
        }
        if let Some(q) = self.qualified {
            let _ = write!(s, ", {q} qualified");
        }
        let _ = write!(s, ", {} failures", self.failures.len());
        s
    }
}

#[derive(Default)]
struct Case {
    failures: Vec<String>,
    skipped: bool,
    qualified: bool,
}

impl Case {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn instance_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs `body` on `iters` independently seeded instances in parallel and
/// collects failures in index order.
fn run<F>(name: &'static str, seed: u64, iters: usize, body: F) -> Outcome
where
    F: Fn(usize, &mut Gen, &mut Case) -> Result<()> + Sync,
{
    let cases: Vec<Case> = (0..iters)
        .into_par_iter()
        .map(|i| {
            let mut g = Gen::new(instance_seed(seed, i));
            let mut case = Case::default();
            if let Err(e) = body(i, &mut g, &mut case) {
                case.failures.push(format!("error: {e}"));
            }
            for f in &mut case.failures {
                *f = format!("#{i}: {f}");
            }
            case
        })
        .collect();
    let mut out = Outcome {
        name,
        checked: 0,
        skipped: 0,
        qualified: None,
        failures: Vec::new(),
    };
    for c in cases {
        if c.skipped {
            out.skipped += 1;
        } else {
            out.checked += 1;
        }
        if c.qualified {
            *out.qualified.get_or_insert(0) += 1;
        }
        out.failures.extend(c.failures);
    }
    out
}

fn show(v: &[Rat]) -> String {
    format!("[{}]", format_vec(v).join(" "))
}

// ---------------------------------------------------------------------------
// extended reals

/// `r ⨪ s` straight from its definition over a probe set that contains
/// every candidate optimum.
fn probe_inf_residual(r: &ExtReal, s: &ExtReal) -> ExtReal {
    let mut probe = vec![
        ExtReal::NegInf,
        ExtReal::Finite(-Rat::one()),
        ExtReal::zero(),
        ExtReal::Finite(Rat::one()),
        ExtReal::PosInf,
    ];
    if let (ExtReal::Finite(a), ExtReal::Finite(b)) = (r, s) {
        probe.push(ExtReal::Finite(a - b));
    }
    probe.into_iter().filter(|t| *r <= s.inf_add(t)).min().unwrap_or(ExtReal::PosInf)
}

fn probe_sup_residual(r: &ExtReal, s: &ExtReal) -> ExtReal {
    let mut probe = vec![
        ExtReal::NegInf,
        ExtReal::Finite(-Rat::one()),
        ExtReal::zero(),
        ExtReal::Finite(Rat::one()),
        ExtReal::PosInf,
    ];
    if let (ExtReal::Finite(a), ExtReal::Finite(b)) = (r, s) {
        probe.push(ExtReal::Finite(a - b));
    }
    probe.into_iter().filter(|t| s.sup_add(t) <= *r).max().unwrap_or(ExtReal::NegInf)
}

/// Adjunction, De Morgan pairs, residuals against their definition and
/// finite-family distributivity.
pub fn extended_reals(seed: u64, iters: usize) -> Outcome {
    run("extended-real laws", seed, iters, |_, g, case| {
        let (r, s, t) = (g.ext_real(), g.ext_real(), g.ext_real());
        let at = || format!("r = {r}, s = {s}, t = {t}");
        case.check((r <= s.inf_add(&t)) == (r.inf_residual(&s) <= t), || format!("inf adjunction at {}", at()));
        case.check((s.sup_add(&t) <= r) == (t <= r.sup_residual(&s)), || format!("sup adjunction at {}", at()));
        case.check(-(r.inf_add(&s)) == (-&s).sup_add(&-&r), || format!("-(r ⊕ s) at {}", at()));
        case.check(r.inf_add(&-&s) == r.sup_residual(&s), || format!("r ⊕ (-s) at {}", at()));
        case.check(r.sup_add(&-&s) == r.inf_residual(&s), || format!("r ⊞ (-s) at {}", at()));
        case.check(-(r.sup_add(&s)) == (-&s).inf_add(&-&r), || format!("-(r ⊞ s) at {}", at()));
        case.check(r.inf_residual(&s) == probe_inf_residual(&r, &s), || format!("r ⨪ s definition at {}", at()));
        case.check(r.sup_residual(&s) == probe_sup_residual(&r, &s), || format!("r ⊟ s definition at {}", at()));
        case.check(-(-r.clone()) == r, || format!("negation at {}", at()));

        let family: Vec<ExtReal> = (0..g.int(1, 5)).map(|_| g.ext_real()).collect();
        let plus: Vec<ExtReal> = family.iter().map(|m| r.inf_add(m)).collect();
        let box_plus: Vec<ExtReal> = family.iter().map(|m| r.sup_add(m)).collect();
        let (lo, hi) = (ExtReal::inf_of(&family), ExtReal::sup_of(&family));
        case.check(ExtReal::inf_of(&plus) == r.inf_add(&lo), || format!("inf(r ⊕ M) at {}", at()));
        case.check(ExtReal::sup_of(&box_plus) == r.sup_add(&hi), || format!("sup(r ⊞ M) at {}", at()));
        case.check(ExtReal::sup_of(&plus) <= r.inf_add(&hi), || format!("sup(r ⊕ M) at {}", at()));
        case.check(ExtReal::inf_of(&box_plus) <= r.sup_add(&lo), || format!("inf(r ⊞ M) at {}", at()));

        let (t1, t2) = if s <= t { (s.clone(), t.clone()) } else { (t.clone(), s.clone()) };
        case.check(r.inf_add(&t1) <= r.inf_add(&t2), || format!("⊕ monotone at {}", at()));
        case.check(r.sup_add(&t1) <= r.sup_add(&t2), || format!("⊞ monotone at {}", at()));
        let k = ratio(g.int(1, 5), g.int(1, 3));
        case.check(r.scale(&k)?.scale(&(Rat::one() / &k))? == r, || format!("scaling by {k} at {}", at()));
        case.check(r.scale(&Rat::zero())? == ExtReal::zero(), || format!("0 · r at {}", at()));
        Ok(())
    })
}

/// `(+∞) ⊕ r = +∞` and `(-∞) ⊞ r = -∞` on the five representatives.
pub fn domination() -> Outcome {
    let reps = [
        ExtReal::NegInf,
        ExtReal::Finite(-Rat::one()),
        ExtReal::zero(),
        ExtReal::Finite(Rat::one()),
        ExtReal::PosInf,
    ];
    let mut failures = Vec::new();
    for r in &reps {
        for (a, b) in [(ExtReal::PosInf.inf_add(r), r.inf_add(&ExtReal::PosInf))] {
            if a != ExtReal::PosInf || b != ExtReal::PosInf {
                failures.push(format!("(+inf) ⊕ {r} = {a}"));
            }
        }
        for (a, b) in [(ExtReal::NegInf.sup_add(r), r.sup_add(&ExtReal::NegInf))] {
            if a != ExtReal::NegInf || b != ExtReal::NegInf {
                failures.push(format!("(-inf) ⊞ {r} = {a}"));
            }
        }
    }
    Outcome {
        name: "domination constants",
        checked: reps.len(),
        skipped: 0,
        qualified: None,
        failures,
    }
}

// ---------------------------------------------------------------------------
// scalar calculus

/// `g** = cl co g` whenever `cl co g` is proper or constant.
pub fn scalar_biconjugation(seed: u64, iters: usize) -> Outcome {
    run("scalar biconjugation", seed, iters, |_, g, case| {
        let n = g.int(1, 2) as usize;
        let f = g.scalar(n);
        let hull = f.cl_co()?;
        if !(hull.is_proper() || hull.is_plus_infinity() || hull.is_minus_infinity()?) {
            case.skipped = true;
            return Ok(());
        }
        let bic = f.biconjugate()?;
        case.check(bic.same_as(&hull)?, || "g** differs from cl co g".into());
        for _ in 0..5 {
            let x = g.point(n);
            let (a, b) = (bic.evaluate(&x), oracle::scalar_hull_value(&f, &x)?);
            case.check(a == b, || format!("g**({}) = {a}, hull oracle {b}", show(&x)));
        }
        Ok(())
    })
}

/// Parts (a), (b) of the scalar chain rule on random pairs.
pub fn scalar_chain_ab(seed: u64, iters: usize) -> Outcome {
    run("scalar chain rule (a), (b)", seed, iters, |_, g, case| {
        let (n, m) = (g.int(1, 2) as usize, g.int(1, 2) as usize);
        let (gf, ff) = (g.scalar(n), g.scalar(m));
        let (t, s) = (g.matrix(m, n), g.matrix(n, m));
        let duals: Vec<Vec<Rat>> = (0..5).map(|_| g.vec(n)).collect();
        let ystars: Vec<Vec<Rat>> = (0..3).map(|_| g.vec(m)).collect();
        let rep = chain_rule_scalar(&gf, &ff, &t, &s, &duals, &ystars)?;
        for c in rep.checks.iter().filter(|c| c.part == "a" || c.part == "b") {
            case.check(c.passed, || format!("part ({}): {}", c.part, c.detail));
        }
        let conv = gf.inf_convolve(&ScalarFn::pushforward(&s, &ff)?)?;
        let sum = gf.inf_sum(&ff.precompose(&t)?)?;
        let st = s.transpose();
        let tt = t.transpose();
        for x in &duals {
            let left = oracle::scalar_conjugate(&conv, x)?;
            let right = oracle::scalar_conjugate(&gf, x)?.sup_add(&oracle::scalar_conjugate(&ff, &st.apply(x))?);
            case.check(left == right, || format!("(a) oracle at x* = {}: {left} vs {right}", show(x)));
            let left = oracle::scalar_conjugate(&sum, x)?;
            for y in &ystars {
                let bound = oracle::scalar_conjugate(&gf, &sub_vec(x, &tt.apply(y)))?
                    .sup_add(&oracle::scalar_conjugate(&ff, y)?);
                case.check(left <= bound, || {
                    format!("(b) oracle at x* = {}, y* = {}: {left} > {bound}", show(x), show(y))
                });
            }
        }
        Ok(())
    })
}

/// Part (c) with one operand identically `+∞`.
pub fn scalar_chain_c(seed: u64, iters: usize) -> Outcome {
    run("scalar chain rule (c)", seed, iters, |_, g, case| {
        let (n, m) = (g.int(1, 2) as usize, g.int(1, 2) as usize);
        let (mut gf, mut ff) = (g.scalar(n), g.scalar(m));
        match g.int(0, 2) {
            0 => gf = ScalarFn::plus_infinity(n),
            1 => ff = ScalarFn::plus_infinity(m),
            _ => {
                gf = ScalarFn::plus_infinity(n);
                ff = ScalarFn::plus_infinity(m);
            }
        }
        let (t, s) = (g.matrix(m, n), g.matrix(n, m));
        let duals: Vec<Vec<Rat>> = (0..5).map(|_| g.vec(n)).collect();
        let ystars: Vec<Vec<Rat>> = (0..3).map(|_| g.vec(m)).collect();
        let rep = chain_rule_scalar(&gf, &ff, &t, &s, &duals, &ystars)?;
        let c = rep.checks.iter().find(|c| c.part == "c");
        case.check(c.is_some_and(|c| c.passed), || {
            c.map_or("part (c) not evaluated".into(), |c| format!("part (c): {}", c.detail))
        });
        Ok(())
    })
}

/// Part (d) on instances qualified by construction: `g` proper convex and
/// `f` finite everywhere.
pub fn scalar_chain_d(seed: u64, iters: usize) -> Outcome {
    run("scalar chain rule (d)", seed, iters, |_, g, case| {
        let (n, m) = (g.int(1, 2) as usize, g.int(1, 2) as usize);
        let full = g.chance(1, 3);
        let gf = g.convex_scalar(n, full);
        let ff = g.convex_scalar(m, true);
        let (t, s) = (g.matrix(m, n), g.matrix(n, m));
        let duals: Vec<Vec<Rat>> = (0..5).map(|_| g.vec(n)).collect();
        let rep = chain_rule_scalar(&gf, &ff, &t, &s, &duals, &[])?;
        case.qualified = rep.qualification.is_some();
        case.check(case.qualified, || "instance did not qualify".into());
        let d = rep.checks.iter().find(|c| c.part == "d");
        case.check(d.is_some_and(|c| c.passed), || {
            d.map_or("part (d) not evaluated".into(), |c| format!("part (d): {}", c.detail))
        });
        case.check(rep.attaining.len() == duals.len(), || "missing attaining y*".into());
        let sum = gf.inf_sum(&ff.precompose(&t)?)?;
        let tt = t.transpose();
        for (x, y) in &rep.attaining {
            let left = oracle::scalar_conjugate(&sum, x)?;
            let a = oracle::scalar_conjugate(&gf, &sub_vec(x, &tt.apply(y)))?;
            let b = oracle::scalar_conjugate(&ff, y)?;
            case.check(left == a.sup_add(&b), || {
                format!("(d) oracle at x* = {}, y* = {}: {left} vs {a} ⊞ {b}", show(x), show(y))
            });
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// upper sets

fn scalars(g: &mut Gen) -> Rat {
    g.pick(&[ratio(0, 1), ratio(1, 2), ratio(1, 1), ratio(2, 1), ratio(3, 1), ratio(2, 3)]).clone()
}

/// Residual adjunction, distributivity, conlinear axioms, `+ˢ` against the
/// residual on halfspace pairs and the involution `s ∘ s`.
pub fn upper_sets(seed: u64, iters: usize) -> Outcome {
    run("upper-set lattice", seed, iters, |_, g, case| {
        let k = g.int(1, 2) as usize;
        let cone = g.cone(k);
        let (a, b, d) = (g.upper_set(&cone), g.upper_set(&cone), g.upper_set(&cone));
        let at = || format!("A = {a}, B = {b}, D = {d}");

        let res = a.residual(&b)?;
        for _ in 0..5 {
            let z = g.point(k);
            let direct = b.translate(&z).subset_of(&a)?;
            case.check(res.contains(&z) == direct, || format!("z = {} in A ⨪ B at {}", show(&z), at()));
        }
        case.check(
            b.minkowski_add(&d)?.subset_of(&a)? == d.subset_of(&res)?,
            || format!("A ⊇ B + D ⇔ A ⨪ B ⊇ D at {}", at()),
        );

        let inf = UpperSet::lattice_inf(&cone, &[b.clone(), d.clone()])?;
        let sup = UpperSet::lattice_sup(&cone, &[b.clone(), d.clone()])?;
        let (ab, ad) = (a.minkowski_add(&b)?, a.minkowski_add(&d)?);
        case.check(
            a.minkowski_add(&inf)?.same_as(&UpperSet::lattice_inf(&cone, &[ab.clone(), ad.clone()])?)?,
            || format!("A + inf M at {}", at()),
        );
        case.check(
            a.minkowski_add(&sup)?.subset_of(&UpperSet::lattice_sup(&cone, &[ab, ad])?)?,
            || format!("A + sup M at {}", at()),
        );

        let (r, s) = (scalars(g), scalars(g));
        case.check(
            a.minkowski_add(&b)?.scale(&r)?.same_as(&a.scale(&r)?.minkowski_add(&b.scale(&r)?)?)?,
            || format!("{r}(A + B) at {}", at()),
        );
        case.check(a.scale(&s)?.scale(&r)?.same_as(&a.scale(&(&r * &s))?)?, || {
            format!("{r}({s}A) at {}", at())
        });
        case.check(a.scale(&Rat::one())?.same_as(&a)?, || format!("1A at {}", at()));
        case.check(a.scale(&Rat::zero())?.same_as(&UpperSet::cone_set(&cone))?, || format!("0A at {}", at()));
        case.check(
            a.cl_co()?.same_as(&a.minkowski_add(&UpperSet::cone_set(&cone))?.cl_co()?)?,
            || format!("cl co(A + C) at {}", at()),
        );

        let (z1, z2) = (g.polar(&cone), g.polar(&cone));
        let h1 = UpperSet::halfspace(&cone, &z1, g.rat())?;
        let h2 = UpperSet::halfspace(&cone, &z2, g.rat())?;
        let pair = || format!("A = {h1}, B = {h2}");
        case.check(h1.s_sum(&h2)?.same_as(&h1.residual_convex(&h2)?)?, || format!("A +ˢ B at {}", pair()));
        case.check(
            h1.s_dual()?.same_as(&UpperSet::cone_set(&cone).s_dual()?.residual(&h1)?)?,
            || format!("s(w) = s(C) ⨪ w at {}", pair()),
        );
        for w in [&h1, &UpperSet::empty(&cone), &UpperSet::whole(&cone), &UpperSet::cone_set(&cone)] {
            case.check(w.s_dual()?.s_dual()?.same_as(w)?, || format!("s(s(A)) at A = {w}"));
        }
        if a.pieces().len() == 1 && a.pieces()[0].is_closed() {
            case.check(a.s_dual()?.s_dual()?.same_as(&a)?, || format!("s(s(A)) at A = {a}"));
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// scalarization

fn directions(g: &mut Gen, cone: &Cone) -> Vec<Vec<Rat>> {
    let third = if g.chance(1, 3) { vec![Rat::zero(); cone.dim()] } else { g.polar(cone) };
    vec![g.polar(cone), g.polar(cone), third]
}

/// Sum, precomposition, infimum, inf-convolution and image rules for
/// `φ_{·,z*}`, and `setify(φ_{g,z*}, z*)(x) = cl(g(x) + H(z*))`.
pub fn scalarization(seed: u64, iters: usize) -> Outcome {
    run("scalarization identities", seed, iters, |_, g, case| {
        let k = g.int(1, 2) as usize;
        let cone = g.cone(k);
        let (n, m) = (g.int(1, 2) as usize, g.int(1, 2) as usize);
        let (gf, ff) = (g.any_set_fn(&cone, n), g.any_set_fn(&cone, n));
        let h = g.any_set_fn(&cone, m);
        let t = g.matrix(m, n);
        let sum = ff.add(&gf)?;
        let ht = h.precompose(&t)?;
        let inf = SetFn::inf(&cone, n, &[ff.clone(), gf.clone()])?;
        let conv = ff.inf_convolve(&gf)?;
        let image = SetFn::pushforward(&t, &gf)?;
        for z in directions(g, &cone) {
            let phi_g = gf.scalarize(&z)?;
            let phi_f = ff.scalarize(&z)?;
            let phi_h = h.scalarize(&z)?;
            let phi_sum = sum.scalarize(&z)?;
            let phi_ht = ht.scalarize(&z)?;
            let phi_inf = inf.scalarize(&z)?;
            let phi_conv = conv.scalarize(&z)?;
            let conv_phi = phi_f.inf_convolve(&phi_g)?;
            let phi_image = image.scalarize(&z)?;
            let image_phi = ScalarFn::pushforward(&t, &phi_g)?;
            let round = SetFn::setify(&cone, &phi_g, &z)?;
            let hz = UpperSet::halfspace(&cone, &z, Rat::zero())?;
            for _ in 0..5 {
                let x = g.point(n);
                let at = || format!("z* = {}, x = {}", show(&z), show(&x));
                let (fx, gx) = (ff.eval(&x).scalarize(&z), gf.eval(&x).scalarize(&z));
                case.check(phi_g.evaluate(&x) == gx, || format!("φ_g against its fiber at {}", at()));
                case.check(phi_sum.evaluate(&x) == fx.inf_add(&gx), || format!("φ_(f+g) at {}", at()));
                let tx = t.apply(&x);
                case.check(phi_ht.evaluate(&x) == h.eval(&tx).scalarize(&z), || format!("φ_(hT) at {}", at()));
                case.check(phi_ht.evaluate(&x) == phi_h.evaluate(&tx), || format!("φ_h T at {}", at()));
                case.check(phi_inf.evaluate(&x) == fx.clone().min(gx.clone()), || format!("φ_inf at {}", at()));
                case.check(phi_conv.evaluate(&x) == conv_phi.evaluate(&x), || format!("φ_(f□g) at {}", at()));
                case.check(phi_conv.evaluate(&x) == conv.eval(&x).scalarize(&z), || {
                    format!("φ_(f□g) against its fiber at {}", at())
                });
                let y = g.point(m);
                case.check(phi_image.evaluate(&y) == image_phi.evaluate(&y), || {
                    format!("φ_(Tg) at z* = {}, y = {}", show(&z), show(&y))
                });
                let expect = gf.eval(&x).minkowski_add(&hz)?.closure();
                case.check(round.eval(&x).same_as(&expect)?, || format!("setify round trip at {}", at()));
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// set-valued conjugation

const ALL_KINDS: [SetKind; 7] = [
    SetKind::ConvexFull,
    SetKind::ConvexRestricted,
    SetKind::Union,
    SetKind::Open,
    SetKind::Empty,
    SetKind::Whole,
    SetKind::ImproperConvex,
];

/// `g** = cl co g` over `facet_directions`, by canonical comparison and by
/// the generator membership oracle.
pub fn set_biconjugation(seed: u64, iters: usize) -> Outcome {
    run("set-valued biconjugation", seed, iters, |i, g, case| {
        let kind = ALL_KINDS[i % ALL_KINDS.len()];
        let k = g.int(1, 2) as usize;
        let cone = g.cone(k);
        let n = g.int(1, 2) as usize;
        let f = g.set_fn(&cone, n, kind);
        let dirs = f.facet_directions()?;
        let bic = f.biconjugate(&dirs)?;
        let hull = f.cl_co()?;
        case.check(bic.same_as(&hull)?, || format!("{kind:?}: g** differs from cl co g"));
        let oracle = Hull::of(n + k, &f.graph())?;
        let mut corners = Vec::new();
        for p in f.graph() {
            corners.extend(crate::polyhedra::h_to_v(&p)?.points);
        }
        corners.extend((0..10).map(|_| g.point(n + k)));
        for p in &corners {
            let (x, z) = p.split_at(n);
            let lib = bic.eval(x).contains(z);
            case.check(lib == oracle.contains(p), || {
                format!("{kind:?}: membership of ({}, {}) in g** = {lib}", show(x), show(z))
            });
        }
        // the defining intersection over the same finite directions can only
        // be larger
        let x = g.point(n);
        case.check(bic.eval(&x).subset_of(&f.biconjugate_at(&x, &dirs)?)?, || {
            format!("{kind:?}: scalar route exceeds the set route at x = {}", show(&x))
        });
        Ok(())
    })
}

/// `(cl co g)* = g*` at facet and random duals, with `g*` checked against
/// the support of the graph generators.
pub fn hull_invariance(seed: u64, iters: usize) -> Outcome {
    run("conjugate hull invariance", seed, iters, |_, g, case| {
        let k = g.int(1, 2) as usize;
        let cone = g.cone(k);
        let n = g.int(1, 2) as usize;
        let f = g.any_set_fn(&cone, n);
        let hull = f.cl_co()?;
        let mut duals = f.facet_directions()?;
        for _ in 0..3 {
            let z = if g.chance(1, 4) { vec![Rat::zero(); k] } else { g.polar(&cone) };
            duals.push((g.vec(n), z));
        }
        for (xs, zs) in &duals {
            let at = || format!("x* = {}, z* = {}", show(xs), show(zs));
            let a = f.conjugate_at(xs, zs)?;
            case.check(hull.conjugate_at(xs, zs)?.same_as(&a)?, || format!("(cl co g)* at {}", at()));
            let c = oracle::graph_support(&f, xs, zs)?;
            case.check(level_set(&cone, zs, &c)?.same_as(&a)?, || format!("g* against graph support {c} at {}", at()));
        }
        Ok(())
    })
}

/// `g(x) = C` for `x > 0`, `∅` otherwise, in direction `z* = (0, -1)`:
/// `φ(0) = +∞` while `(cl φ)(0) = 0`.
pub fn nonclosed_fixture() -> Outcome {
    let mut failures = Vec::new();
    let mut body = || -> Result<()> {
        let cone = Cone::orthant(2);
        let piece = Polyhedron::new(
            3,
            vec![
                Constraint::lt(vec![-Rat::one(), Rat::zero(), Rat::zero()], Rat::zero()),
                Constraint::le(vec![Rat::zero(), -Rat::one(), Rat::zero()], Rat::zero()),
                Constraint::le(vec![Rat::zero(), Rat::zero(), -Rat::one()], Rat::zero()),
            ],
        );
        let g = SetFn::new(&cone, 1, vec![piece], Vec::new())?;
        let phi = g.scalarize(&[Rat::zero(), -Rat::one()])?;
        let zero = [Rat::zero()];
        if phi.evaluate(&zero) != ExtReal::PosInf {
            failures.push(format!("φ(0) = {}", phi.evaluate(&zero)));
        }
        let cl = phi.closure()?.evaluate(&zero);
        if cl != ExtReal::zero() {
            failures.push(format!("(cl φ)(0) = {cl}"));
        }
        if phi.evaluate(&[Rat::one()]) != ExtReal::zero() {
            failures.push(format!("φ(1) = {}", phi.evaluate(&[Rat::one()])));
        }
        Ok(())
    };
    if let Err(e) = body() {
        failures.push(format!("error: {e}"));
    }
    Outcome {
        name: "non-closed scalarization",
        checked: 1,
        skipped: 0,
        qualified: None,
        failures,
    }
}

// ---------------------------------------------------------------------------
// duality

/// Weak duality everywhere; strong duality with an attaining `y*` wherever
/// the polyhedral qualification holds. Every other instance is convex with a
/// finite-valued `f`.
pub fn fenchel_rockafellar_family(seed: u64, iters: usize) -> Outcome {
    let mut out = run("Fenchel-Rockafellar", seed, iters, |_, g, case| {
        let k = g.int(1, 2) as usize;
        let cone = g.cone(k);
        let (n, m) = (g.int(1, 2) as usize, g.int(1, 2) as usize);
        let (gf, ff) = if g.chance(1, 2) {
            let kind = if g.chance(1, 2) { SetKind::ConvexFull } else { SetKind::ConvexRestricted };
            (g.set_fn(&cone, n, kind), g.set_fn(&cone, m, SetKind::ConvexFull))
        } else {
            (g.any_set_fn(&cone, n), g.any_set_fn(&cone, m))
        };
        let t = g.matrix(m, n);
        let zstars = cone.dual_generators().to_vec();
        let rep = fenchel_rockafellar(&gf, &ff, &t, &zstars, 4, g.next_u64())?;
        for e in &rep.entries {
            let z = show(&e.z_star);
            case.check(e.weak_duality, || format!("weak duality fails at z* = {z}"));
            case.check(!e.strong.certified || e.strong.achieved, || {
                format!("strong duality not achieved at z* = {z}, gap witness {:?}", e.strong.gap_witness)
            });
            case.check(!e.strong.certified || e.strong.y_star.is_some(), || format!("no y* at z* = {z}"));
        }
        case.check(rep.representation != Some(false), || "P differs from the dual representation".into());
        case.qualified = !rep.entries.is_empty() && rep.entries.iter().all(|e| e.strong.certified);
        for _ in 0..3 {
            let x = g.point(n);
            let v = gf.eval(&x).minkowski_add(&ff.eval(&t.apply(&x)))?;
            case.check(v.subset_of(&rep.p)?, || format!("g(x) + f(Tx) ⊄ P at x = {}", show(&x)));
            for e in &rep.entries {
                case.check(v.subset_of(&e.d_sample)?, || {
                    format!("g(x) + f(Tx) ⊄ D at x = {}, z* = {}", show(&x), show(&e.z_star))
                });
            }
        }
        Ok(())
    });
    let q = out.qualified.unwrap_or(0);
    if q * 10 < iters * 3 {
        out.failures.push(format!("only {q} of {iters} instances qualified"));
    }
    out.qualified = Some(q);
    out
}

// ---------------------------------------------------------------------------
// conaffine functions

/// Sublinearity and the reflection identities, the `z0` additivity rules,
/// `dom = X` and the outer scaling identity.
pub fn conaffine(seed: u64, iters: usize) -> Outcome {
    run("conaffine algebra", seed, iters, |_, g, case| {
        let k = g.int(1, 2) as usize;
        let cone = g.cone(k);
        let n = g.int(1, 2) as usize;
        let (xs, ys) = (g.int_vec(n, -2, 2), g.int_vec(n, -2, 2));
        let r = g.rat();
        let zs = g.polar(&cone);
        let (x, y) = (g.point(n), g.point(n));
        let t = ratio(g.int(1, 4), g.int(1, 3));
        let at = || {
            format!(
                "x* = {}, y* = {}, r = {r}, z* = {}, x = {}, y = {}, t = {t}",
                show(&xs),
                show(&ys),
                show(&zs),
                show(&x),
                show(&y)
            )
        };
        let s = ConAffine::conlinear(&cone, xs.clone(), zs.clone())?;
        let s_neg = ConAffine::conlinear(&cone, neg_vec(&xs), zs.clone())?;
        let s_y = ConAffine::conlinear(&cone, ys.clone(), zs.clone())?;
        let hz = UpperSet::halfspace(&cone, &zs, Rat::zero())?;

        // (a)
        let sum = s.eval(&x).minkowski_add(&s.eval(&y))?;
        case.check(sum.subset_of(&s.eval(&add_vec(&x, &y)))?, || format!("subadditivity at {}", at()));
        let lam = ratio(g.int(1, 5), 2);
        case.check(s.eval(&scale_vec(&lam, &x)).same_as(&s.eval(&x).scale(&lam)?)?, || {
            format!("positive homogeneity by {lam} at {}", at())
        });
        let sx = s.eval(&x);
        case.check(sx.same_as(&s_neg.eval(&neg_vec(&x)))?, || format!("S(x) = S_(-x*)(-x) at {}", at()));
        case.check(sx.same_as(&hz.residual(&s.eval(&neg_vec(&x)))?)?, || {
            format!("S(x) = H(z*) ⨪ S(-x) at {}", at())
        });
        case.check(s.eval(&vec![Rat::zero(); n]).same_as(&hz)?, || format!("S(0) = H(z*) at {}", at()));

        // (b), outer members
        let lhs = ConAffine::new(&cone, scale_vec(&t, &xs), &t * &r, zs.clone())?;
        let rhs = ConAffine::new(&cone, xs.clone(), &t * &r, zs.clone())?;
        case.check(lhs.eval(&x).same_as(&rhs.eval(&scale_vec(&t, &x)))?, || format!("scaling at {}", at()));
        case.check(
            ConAffine::new(&cone, xs.clone(), r.clone(), zs.clone())?.scaled(&t)?.eval(&x).same_as(&lhs.eval(&x))?,
            || format!("scaled() at {}", at()),
        );

        // (c)
        let z0 = s.z0().expect("z* != 0");
        case.check(dot(&zs, &z0) == Rat::one(), || format!("z*(z0) != 1 at {}", at()));
        let rz0 = scale_vec(&r, &z0);
        let sr = ConAffine::new(&cone, xs.clone(), r.clone(), zs.clone())?;
        case.check(sr.eval(&x).same_as(&sx.translate(&rz0))?, || format!("S_r(x) = S(x) + r z0 at {}", at()));
        let sxy = ConAffine::new(&cone, add_vec(&xs, &ys), r.clone(), zs.clone())?;
        case.check(
            sxy.eval(&x).same_as(&sx.minkowski_add(&s_y.eval(&x))?.translate(&rz0))?,
            || format!("additivity in x* at {}", at()),
        );
        case.check(
            sr.eval(&add_vec(&x, &y)).same_as(&sx.minkowski_add(&s.eval(&y))?.translate(&rz0))?,
            || format!("additivity in x at {}", at()),
        );
        let graph = s.to_set_fn()?;
        let dom = graph.domain()?;
        case.check(
            crate::polyhedra::region_subset(&[Polyhedron::whole(n)], &dom)?,
            || format!("dom S != X at {}", at()),
        );
        case.check(graph.properness()?.proper, || format!("S not proper at {}", at()));
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// dual representation

/// The conaffine minorants `S_{(x*, r, z*)}` with `r = (φ_{g,z*})*(x*)`
/// over the given directions.
fn minorants(g: &SetFn, dirs: &[(Vec<Rat>, Vec<Rat>)]) -> Result<Vec<ConAffine>> {
    let mut out = Vec::new();
    for (xs, zs) in dirs {
        if let ExtReal::Finite(r) = g.scalarize(zs)?.conjugate()?.evaluate(xs) {
            out.push(ConAffine::new(g.cone(), xs.clone(), r, zs.clone())?);
        }
    }
    Ok(out)
}

fn intersection(g: &SetFn, family: &[ConAffine]) -> Result<SetFn> {
    let fns = family.iter().map(ConAffine::to_set_fn).collect::<Result<Vec<_>>>()?;
    SetFn::sup(g.cone(), g.x_dim(), &fns)
}

/// Proper closed convex `g` equals the supremum of its proper conaffine
/// minorants over `facet_directions`.
pub fn dual_representation_proper(seed: u64, iters: usize) -> Outcome {
    run("dual representation (proper)", seed, iters, |_, g, case| {
        let k = g.int(1, 2) as usize;
        let cone = g.cone(k);
        let n = g.int(1, 2) as usize;
        let f = g.set_fn(&cone, n, SetKind::ConvexFull);
        case.check(f.properness()?.proper, || "generated function is not proper".into());
        let dirs: Vec<_> = f.facet_directions()?.into_iter().filter(|d| !is_zero_vec(&d.1)).collect();
        let family = minorants(&f, &dirs)?;
        for s in &family {
            case.check(s.is_minorant(&f)?, || {
                format!("S({}, {}, {}) is not a minorant", show(&s.x_star), s.r, show(&s.z_star))
            });
        }
        let rep = intersection(&f, &family)?;
        case.check(rep.same_as(&f)?, || format!("intersection of {} minorants differs from g", family.len()));
        let oracle = Hull::of(n + k, &f.graph())?;
        for _ in 0..5 {
            let p = g.point(n + k);
            let (x, z) = p.split_at(n);
            case.check(rep.eval(x).contains(z) == oracle.contains(&p), || {
                format!("membership of ({}, {})", show(x), show(z))
            });
        }
        Ok(())
    })
}

/// Improper closed convex `g` (`Z` on a closed region, `∅` elsewhere)
/// equals the supremum of its `z* = 0` minorants.
pub fn dual_representation_improper(seed: u64, iters: usize) -> Outcome {
    run("dual representation (improper)", seed, iters, |_, g, case| {
        let k = g.int(1, 2) as usize;
        let cone = g.cone(k);
        let n = g.int(1, 2) as usize;
        let f = g.set_fn(&cone, n, SetKind::ImproperConvex);
        case.check(!f.properness()?.proper, || "generated function is proper".into());
        let dirs: Vec<_> = f.facet_directions()?.into_iter().filter(|d| is_zero_vec(&d.1)).collect();
        let family = minorants(&f, &dirs)?;
        for s in &family {
            case.check(s.is_minorant(&f)?, || format!("S({}, {}, 0) is not a minorant", show(&s.x_star), s.r));
        }
        let rep = intersection(&f, &family)?;
        case.check(rep.same_as(&f)?, || format!("intersection of {} minorants differs from g", family.len()));
        Ok(())
    })
}

/// Every family at the given size, in a fixed order.
pub fn all(seed: u64, iters: usize) -> Vec<Outcome> {
    let small = iters.div_ceil(2);
    vec![
        extended_reals(seed, iters * 100),
        domination(),
        scalar_biconjugation(seed, iters * 2),
        scalar_chain_ab(seed, iters),
        scalar_chain_c(seed, small),
        scalar_chain_d(seed, iters),
        upper_sets(seed, iters),
        scalarization(seed, iters),
        set_biconjugation(seed, iters),
        hull_invariance(seed, small),
        nonclosed_fixture(),
        fenchel_rockafellar_family(seed, iters),
        conaffine(seed, iters),
        dual_representation_proper(seed, small),
        dual_representation_improper(seed, iters.div_ceil(10)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for o in all(7, 4) {
            assert!(o.passed(), "{}: {:?}", o.summary(), o.failures);
        }
    }

    #[test]
    fn probes_match_tables() {
        let v = [ExtReal::NegInf, ExtReal::zero(), ExtReal::Finite(Rat::one()), ExtReal::PosInf];
        for r in &v {
            for s in &v {
                assert_eq!(probe_inf_residual(r, s), r.inf_residual(s));
                assert_eq!(probe_sup_residual(r, s), r.sup_residual(s));
            }
        }
    }
}
