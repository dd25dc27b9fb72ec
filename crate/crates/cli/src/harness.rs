//! Task dispatch.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use setconj::duality::{chain_rule_verify, fenchel_rockafellar, Verdict};
use setconj::gen::Gen;
use setconj::polyhedra::{difference, strict_point, Polyhedron};
use setconj::rational::{is_zero_vec, Matrix, Rat};
use setconj::scalar::{chain_rule_scalar, ScalarFn};
use setconj::setvalued::{Direction, SetFn};
use setconj::{Error, Result};

use crate::instance::{parse_duals, parse_vectors, DualsDoc, Function, Instance, TaskDoc, VectorsDoc};
use crate::report::{polys, show, vector, Report, TaskReport};

#[derive(Debug, Clone, Default)]
pub struct Options {
    /// Task kinds to run; empty runs everything.
    pub tasks: Vec<String>,
    /// Overrides the instance seed.
    pub seed: Option<u64>,
    pub timings: bool,
}

/// Outcome of one task before it is labelled.
struct Done {
    passed: bool,
    witness: Option<String>,
    details: Value,
}

impl Done {
    fn new(passed: bool, witness: Option<String>, details: Value) -> Done {
        Done {
            passed,
            witness: if passed { None } else { witness },
            details,
        }
    }
}

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource { .. } => 3,
        _ => 2,
    }
}

pub fn run(inst: &Instance, opts: &Options) -> Result<Report> {
    let seed = opts.seed.unwrap_or(inst.seed());
    let selected: Vec<(usize, &TaskDoc)> = inst
        .doc
        .tasks
        .iter()
        .enumerate()
        .filter(|(_, t)| opts.tasks.is_empty() || opts.tasks.iter().any(|k| k == t.kind()))
        .collect();
    let tasks = selected
        .par_iter()
        .map(|&(index, task)| {
            let start = Instant::now();
            let task_seed = seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let done = run_task(inst, task, task_seed)?;
            Ok(TaskReport {
                index,
                task: task.kind().to_string(),
                target: task.target(),
                passed: done.passed,
                witness: done.witness,
                details: done.details,
                elapsed_ms: opts.timings.then(|| start.elapsed().as_millis() as u64),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        instance: inst.name().to_string(),
        seed,
        passed: tasks.iter().all(|t| t.passed),
        tasks,
    })
}

fn run_task(inst: &Instance, task: &TaskDoc, seed: u64) -> Result<Done> {
    let mut gen = Gen::new(seed);
    match task {
        TaskDoc::Scalarize { function, z_star } => {
            let Function::Set(g) = inst.function(function) else {
                return Err(Error::contract("scalarize needs a set function"));
            };
            scalarize(g, &parse_vectors(std::slice::from_ref(z_star))?[0], &mut gen)
        }
        TaskDoc::Conjugate { function, duals } => match inst.function(function) {
            Function::Set(g) => conjugate(g, &directions(g, duals)?, &mut gen),
            Function::Scalar(g) => scalar_conjugate(g),
        },
        TaskDoc::Biconjugate { function, directions: dirs } => match inst.function(function) {
            Function::Set(g) => biconjugate(g, &directions(g, dirs)?),
            Function::Scalar(g) => scalar_biconjugate(g),
        },
        TaskDoc::Chain { g, f, t, s, duals } => {
            let (t, s) = (inst.matrix(t), inst.matrix(s));
            match (inst.function(g), inst.function(f)) {
                (Function::Set(g), Function::Set(f)) => {
                    let dirs: Vec<Direction> = directions(g, duals)?
                        .into_iter()
                        .filter(|d| !is_zero_vec(&d.1))
                        .collect();
                    set_chain(g, f, t, s, &dirs)
                }
                (Function::Scalar(g), Function::Scalar(f)) => {
                    let xs = match duals {
                        DualsDoc::List(l) => parse_duals(l)?.into_iter().map(|d| d.0).collect(),
                        DualsDoc::Auto(_) => sample(&mut gen, g.dim(), &[]),
                    };
                    let ys = sample(&mut gen, f.dim(), &[]);
                    scalar_chain(g, f, t, s, &xs, &ys)
                }
                _ => Err(Error::contract("chain operands must be of the same kind")),
            }
        }
        TaskDoc::FenchelRockafellar { g, f, t, zstars, ystar_budget } => {
            let (Function::Set(g), Function::Set(f)) = (inst.function(g), inst.function(f)) else {
                return Err(Error::contract("Fenchel-Rockafellar needs set functions"));
            };
            let zs = match zstars {
                VectorsDoc::List(l) => parse_vectors(l)?,
                VectorsDoc::Auto(_) => g.cone().dual_generators().to_vec(),
            };
            fenchel(g, f, inst.matrix(t), &zs, *ystar_budget, seed)
        }
        TaskDoc::Properties { function } => properties(inst.function(function)),
    }
}

fn directions(g: &SetFn, d: &DualsDoc) -> Result<Vec<Direction>> {
    match d {
        DualsDoc::Auto(_) => g.facet_directions(),
        DualsDoc::List(l) => parse_duals(l),
    }
}

/// One point of each piece, projected to the first `n` coordinates.
fn representatives(pieces: &[Polyhedron], n: usize) -> Vec<Vec<Rat>> {
    pieces
        .iter()
        .filter_map(strict_point)
        .map(|p| p[..n].to_vec())
        .collect()
}

/// The origin, the given points, and five seeded points.
fn sample(gen: &mut Gen, dim: usize, extra: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut out = vec![vec![Rat::default(); dim]];
    for p in extra {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    for _ in 0..5 {
        let p = gen.point(dim);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// A point where two unions differ.
fn region_gap(a: &[Polyhedron], b: &[Polyhedron]) -> Result<Option<Vec<Rat>>> {
    for (x, y) in [(a, b), (b, a)] {
        for p in x {
            for d in difference(p, y)? {
                if let Some(v) = strict_point(&d) {
                    return Ok(Some(v));
                }
            }
        }
    }
    Ok(None)
}

fn set_fn_json(g: &SetFn) -> Value {
    json!({ "pieces": polys(g.pieces()), "full_region": polys(g.full_region()) })
}

fn scalar_json(g: &ScalarFn) -> Value {
    json!({ "pieces": polys(g.pieces()), "minus_inf": polys(g.minus_inf_region()) })
}

fn scalarize(g: &SetFn, z_star: &[Rat], gen: &mut Gen) -> Result<Done> {
    let phi = g.scalarize(z_star)?;
    let xs = sample(gen, g.x_dim(), &representatives(&g.graph(), g.x_dim()));
    let mut witness = None;
    let mut values = Vec::new();
    for x in &xs {
        let (a, b) = (phi.evaluate(x), g.eval(x).scalarize(z_star));
        if a != b && witness.is_none() {
            witness = Some(format!("x = {}: phi(x) = {a}, fiber value {b}", show(x)));
        }
        values.push(json!({ "x": vector(x), "value": a.to_string() }));
    }
    Ok(Done::new(
        witness.is_none(),
        witness,
        json!({ "z_star": vector(z_star), "scalarization": scalar_json(&phi), "values": values }),
    ))
}

fn conjugate(g: &SetFn, dirs: &[Direction], gen: &mut Gen) -> Result<Done> {
    let hull = g.cl_co()?;
    let xs = sample(gen, g.x_dim(), &representatives(&g.graph(), g.x_dim()));
    let rows = dirs
        .par_iter()
        .map(|(xs_, zs)| {
            let value = g.conjugate_at(xs_, zs)?;
            let hull_value = hull.conjugate_at(xs_, zs)?;
            let set_route = g.conjugate_on_sample(xs_, zs, &xs)?;
            let hull_ok = value.same_as(&hull_value)?;
            let route_ok = value.subset_of(&set_route)?;
            Ok((hull_ok, route_ok, xs_, zs, value))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut witness = None;
    let mut out = Vec::new();
    for (hull_ok, route_ok, x_star, z_star, value) in rows {
        if witness.is_none() && !(hull_ok && route_ok) {
            let what = if hull_ok { "scalar route not inside set route" } else { "differs from (cl co g)*" };
            witness = Some(format!("(x*, z*) = ({}, {}): {what}", show(x_star), show(z_star)));
        }
        out.push(json!({
            "x_star": vector(x_star),
            "z_star": vector(z_star),
            "value": value.to_string(),
            "hull_invariant": hull_ok,
            "inside_set_route": route_ok,
        }));
    }
    Ok(Done::new(witness.is_none(), witness, json!({ "conjugates": out })))
}

fn scalar_conjugate(g: &ScalarFn) -> Result<Done> {
    let c = g.conjugate()?;
    let ok = c.same_as(&g.cl_co()?.conjugate()?)?;
    Ok(Done::new(
        ok,
        Some("g* differs from (cl co g)*".into()),
        json!({ "conjugate": scalar_json(&c), "hull_invariant": ok }),
    ))
}

fn biconjugate(g: &SetFn, dirs: &[Direction]) -> Result<Done> {
    let bic = g.biconjugate(dirs)?;
    let hull = g.cl_co()?;
    let equals_hull = bic.same_as(&hull)?;
    let equals_input = bic.same_as(g)?;
    let witness = if equals_hull {
        None
    } else {
        region_gap(&bic.graph(), &hull.graph())?
            .map(|p| format!("(x, z) = {}: g** and cl co g disagree", show(&p)))
    };
    Ok(Done::new(
        equals_hull,
        witness,
        json!({
            "directions": dirs.len(),
            "biconjugate": set_fn_json(&bic),
            "closed_convex_hull": set_fn_json(&hull),
            "equals_hull": equals_hull,
            "equals_input": equals_input,
        }),
    ))
}

fn scalar_biconjugate(g: &ScalarFn) -> Result<Done> {
    let bic = g.biconjugate()?;
    let hull = g.cl_co()?;
    let equals_hull = bic.same_as(&hull)?;
    // An improper hull that is not constant has g** = -∞ instead.
    let asserted = hull.is_proper() || hull.is_plus_infinity() || hull.is_minus_infinity()?;
    let passed = equals_hull || !asserted;
    Ok(Done::new(
        passed,
        Some("g** differs from cl co g".into()),
        json!({
            "biconjugate": scalar_json(&bic),
            "closed_convex_hull": scalar_json(&hull),
            "equals_hull": equals_hull,
            "equals_input": bic.same_as(g)?,
            "asserted": asserted,
        }),
    ))
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Equal => "equal",
        Verdict::InclusionOnly => "inclusion",
        Verdict::QualificationFailed => "not qualified",
        Verdict::Failed => "failed",
    }
}

fn set_chain(g: &SetFn, f: &SetFn, t: &Matrix, s: &Matrix, dirs: &[Direction]) -> Result<Done> {
    let rep = chain_rule_verify("chain", g, f, t, s, dirs)?;
    let witness = rep.first_failure().map(|e| {
        format!(
            "part ({}) at (x*, z*) = ({}, {}): {} vs {}",
            e.part,
            show(&e.x_star),
            show(&e.z_star),
            e.left,
            e.right
        )
    });
    let entries: Vec<Value> = rep
        .entries
        .iter()
        .map(|e| {
            json!({
                "part": e.part.to_string(),
                "x_star": vector(&e.x_star),
                "z_star": vector(&e.z_star),
                "left": e.left.to_string(),
                "right": e.right.to_string(),
                "verdict": verdict(e.verdict),
                "y_star": e.y_star.as_deref().map(vector),
                "qualification": e.qualification.map(|q| format!("{q:?}")),
            })
        })
        .collect();
    Ok(Done::new(rep.passed(), witness, json!({ "entries": entries })))
}

fn scalar_chain(
    g: &ScalarFn,
    f: &ScalarFn,
    t: &Matrix,
    s: &Matrix,
    xs: &[Vec<Rat>],
    ys: &[Vec<Rat>],
) -> Result<Done> {
    let rep = chain_rule_scalar(g, f, t, s, xs, ys)?;
    let witness = rep
        .checks
        .iter()
        .find(|c| !c.passed)
        .map(|c| format!("part ({}): {}", c.part, c.detail));
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| json!({ "part": c.part, "passed": c.passed, "detail": c.detail }))
        .collect();
    let attaining: Vec<Value> = rep
        .attaining
        .iter()
        .map(|(x, y)| json!({ "x_star": vector(x), "y_star": vector(y) }))
        .collect();
    Ok(Done::new(
        rep.passed(),
        witness,
        json!({
            "checks": checks,
            "qualification": rep.qualification.map(|q| format!("{q:?}")),
            "attaining": attaining,
        }),
    ))
}

fn fenchel(g: &SetFn, f: &SetFn, t: &Matrix, zs: &[Vec<Rat>], budget: usize, seed: u64) -> Result<Done> {
    let rep = fenchel_rockafellar(g, f, t, zs, budget, seed)?;
    let mut witness = None;
    let mut entries = Vec::new();
    for e in &rep.entries {
        if witness.is_none() {
            if !e.weak_duality {
                witness = Some(format!("z* = {}: weak duality fails, D = {}", show(&e.z_star), e.d_sample));
            } else if e.strong.certified && !e.strong.achieved {
                let at = e.strong.gap_witness.as_deref().map(show).unwrap_or_default();
                witness = Some(format!("z* = {}: strong duality gap at {at}", show(&e.z_star)));
            }
        }
        entries.push(json!({
            "z_star": vector(&e.z_star),
            "dual_sample": e.d_sample.to_string(),
            "weak_duality": e.weak_duality,
            "strong_certified": e.strong.certified,
            "strong_achieved": e.strong.achieved,
            "y_star": e.strong.y_star.as_deref().map(vector),
            "qualification": e.strong.qualification.map(|q| format!("{q:?}")),
            "attained": e.attained.as_ref().map(ToString::to_string),
        }));
    }
    if witness.is_none() && rep.representation == Some(false) {
        witness = Some("P differs from the intersection of the attained dual sets".into());
    }
    Ok(Done::new(
        rep.passed(),
        witness,
        json!({
            "primal": rep.p.to_string(),
            "entries": entries,
            "representation": rep.representation,
        }),
    ))
}

/// Informational: never fails.
fn properties(f: &Function) -> Result<Done> {
    let details = match f {
        Function::Set(g) => {
            let p = g.properness()?;
            json!({
                "proper": p.proper,
                "z_star_witness": p.zstar_proper_witness.as_deref().map(vector),
            })
        }
        Function::Scalar(g) => json!({ "proper": g.is_proper() }),
    };
    Ok(Done::new(true, None, details))
}
