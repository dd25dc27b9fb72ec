//! Instance files: JSON surface syntax, rationals as `"p/q"` strings.
//!
//! Parsing goes through a plain document model first, so the file can be
//! written back in a normalized form; [`Instance`] then resolves names,
//! checks dimensions and builds the library values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use setconj::polyhedra::{Constraint, Polyhedron};
use setconj::rational::{format_rat, parse_rat, Matrix, Rat};
use setconj::scalar::ScalarFn;
use setconj::setvalued::SetFn;
use setconj::upper_set::Cone;
use setconj::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub name: String,
    pub spaces: Spaces,
    pub cone: Vec<Vec<String>>,
    #[serde(default)]
    pub functions: BTreeMap<String, FunctionDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub tasks: Vec<TaskDoc>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Spaces {
    pub x_dim: usize,
    #[serde(default)]
    pub y_dim: usize,
    pub z_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Set,
    Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    #[default]
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub kind: Kind,
    #[serde(default)]
    pub space: Space,
    /// Graph pieces in `X × Z` for set functions, epigraph pieces in
    /// `X × Q` for scalar ones.
    #[serde(default)]
    pub pieces: Vec<Vec<RowDoc>>,
    /// Where a set function is all of `Z`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub full_region: Vec<Vec<RowDoc>>,
    /// Where a scalar function is `-∞`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub minus_inf: Vec<Vec<RowDoc>>,
}

/// `a · v <= b`, or `<` when strict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDoc {
    pub a: Vec<String>,
    pub b: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub strict: bool,
}

fn is_false(b: &bool) -> bool {
    !b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Auto {
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DualsDoc {
    Auto(Auto),
    List(Vec<DualDoc>),
}

impl Default for DualsDoc {
    fn default() -> Self {
        DualsDoc::Auto(Auto::Auto)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualDoc {
    pub x_star: Vec<String>,
    pub z_star: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorsDoc {
    Auto(Auto),
    List(Vec<Vec<String>>),
}

impl Default for VectorsDoc {
    fn default() -> Self {
        VectorsDoc::Auto(Auto::Auto)
    }
}

fn default_budget() -> usize {
    4
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskDoc {
    Scalarize {
        function: String,
        z_star: Vec<String>,
    },
    Conjugate {
        function: String,
        #[serde(default)]
        duals: DualsDoc,
    },
    Biconjugate {
        function: String,
        #[serde(default)]
        directions: DualsDoc,
    },
    Chain {
        g: String,
        f: String,
        #[serde(rename = "T")]
        t: String,
        #[serde(rename = "S")]
        s: String,
        #[serde(default)]
        duals: DualsDoc,
    },
    FenchelRockafellar {
        g: String,
        f: String,
        #[serde(rename = "T")]
        t: String,
        #[serde(default)]
        zstars: VectorsDoc,
        #[serde(default = "default_budget")]
        ystar_budget: usize,
    },
    Properties {
        function: String,
    },
}

impl TaskDoc {
    /// The task type as written in files and on the command line.
    pub fn kind(&self) -> &'static str {
        match self {
            TaskDoc::Scalarize { .. } => "scalarize",
            TaskDoc::Conjugate { .. } => "conjugate",
            TaskDoc::Biconjugate { .. } => "biconjugate",
            TaskDoc::Chain { .. } => "chain",
            TaskDoc::FenchelRockafellar { .. } => "fenchel-rockafellar",
            TaskDoc::Properties { .. } => "properties",
        }
    }

    /// The function names the task reads.
    pub fn target(&self) -> String {
        match self {
            TaskDoc::Scalarize { function, .. }
            | TaskDoc::Conjugate { function, .. }
            | TaskDoc::Biconjugate { function, .. }
            | TaskDoc::Properties { function } => function.clone(),
            TaskDoc::Chain { g, f, .. } | TaskDoc::FenchelRockafellar { g, f, .. } => format!("{g}, {f}"),
        }
    }
}

pub const TASK_KINDS: [&str; 6] = [
    "scalarize",
    "conjugate",
    "biconjugate",
    "chain",
    "fenchel-rockafellar",
    "properties",
];

#[derive(Debug, Clone)]
pub enum Function {
    Set(SetFn),
    Scalar(ScalarFn),
}

/// A parsed, validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub doc: Document,
    pub cone: Cone,
    pub functions: BTreeMap<String, (Space, Function)>,
    pub matrices: BTreeMap<String, Matrix>,
}

fn rat_at(s: &str, path: &str) -> Result<Rat> {
    parse_rat(s).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(path, format!("{message} in {s:?}")),
        other => other,
    })
}

fn vec_at(items: &[String], path: &str) -> Result<Vec<Rat>> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| rat_at(s, &format!("{path}[{i}]")))
        .collect()
}

fn normalize_all(items: &mut [String], path: &str) -> Result<()> {
    for (i, s) in items.iter_mut().enumerate() {
        *s = format_rat(&rat_at(s, &format!("{path}[{i}]"))?);
    }
    Ok(())
}

fn polyhedron(rows: &[RowDoc], dim: usize, path: &str) -> Result<Polyhedron> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let here = format!("{path}[{i}]");
        if row.a.len() != dim {
            return Err(Error::parse(
                format!("{here}.a"),
                format!("expected {dim} coefficients, found {}", row.a.len()),
            ));
        }
        out.push(Constraint {
            normal: vec_at(&row.a, &format!("{here}.a"))?,
            bound: rat_at(&row.b, &format!("{here}.b"))?,
            strict: row.strict,
        });
    }
    Ok(Polyhedron::new(dim, out))
}

fn blocks(list: &[Vec<RowDoc>], dim: usize, path: &str) -> Result<Vec<Polyhedron>> {
    list.iter()
        .enumerate()
        .map(|(i, rows)| polyhedron(rows, dim, &format!("{path}[{i}]")))
        .collect()
}

fn with_location(e: Error, path: &str) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(path, other.to_string()),
    }
}

impl Document {
    /// Rewrites every rational in canonical `p/q` form.
    fn normalize(&mut self) -> Result<()> {
        for (i, g) in self.cone.iter_mut().enumerate() {
            normalize_all(g, &format!("cone[{i}]"))?;
        }
        for (name, f) in self.functions.iter_mut() {
            for (field, list) in [("pieces", &mut f.pieces), ("full_region", &mut f.full_region), ("minus_inf", &mut f.minus_inf)] {
                for (i, rows) in list.iter_mut().enumerate() {
                    for (j, row) in rows.iter_mut().enumerate() {
                        let here = format!("functions.{name}.{field}[{i}][{j}]");
                        normalize_all(&mut row.a, &format!("{here}.a"))?;
                        row.b = format_rat(&rat_at(&row.b, &format!("{here}.b"))?);
                    }
                }
            }
        }
        for (name, m) in self.matrices.iter_mut() {
            for (i, row) in m.iter_mut().enumerate() {
                normalize_all(row, &format!("matrices.{name}[{i}]"))?;
            }
        }
        for (i, t) in self.tasks.iter_mut().enumerate() {
            let here = format!("tasks[{i}]");
            match t {
                TaskDoc::Scalarize { z_star, .. } => normalize_all(z_star, &format!("{here}.z_star"))?,
                TaskDoc::Conjugate { duals: DualsDoc::List(l), .. }
                | TaskDoc::Biconjugate { directions: DualsDoc::List(l), .. }
                | TaskDoc::Chain { duals: DualsDoc::List(l), .. } => {
                    for (j, d) in l.iter_mut().enumerate() {
                        normalize_all(&mut d.x_star, &format!("{here}.duals[{j}].x_star"))?;
                        normalize_all(&mut d.z_star, &format!("{here}.duals[{j}].z_star"))?;
                    }
                }
                TaskDoc::FenchelRockafellar { zstars: VectorsDoc::List(l), .. } => {
                    for (j, z) in l.iter_mut().enumerate() {
                        normalize_all(z, &format!("{here}.zstars[{j}]"))?;
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance> {
        let mut doc: Document = serde_json::from_str(text).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        doc.normalize()?;
        Instance::from_document(doc)
    }

    pub fn from_document(doc: Document) -> Result<Instance> {
        let Spaces { x_dim, y_dim, z_dim } = doc.spaces.clone();
        let mut gens = Vec::new();
        for (i, g) in doc.cone.iter().enumerate() {
            let path = format!("cone[{i}]");
            if g.len() != z_dim {
                return Err(Error::parse(path, format!("expected {z_dim} entries")));
            }
            gens.push(vec_at(g, &path)?);
        }
        let cone = Cone::new(z_dim, gens).map_err(|e| with_location(e, "cone"))?;

        let mut functions = BTreeMap::new();
        for (name, f) in &doc.functions {
            let path = format!("functions.{name}");
            let n = match f.space {
                Space::X => x_dim,
                Space::Y => y_dim,
            };
            let built = match f.kind {
                Kind::Set => {
                    if !f.minus_inf.is_empty() {
                        return Err(Error::parse(format!("{path}.minus_inf"), "set functions use full_region"));
                    }
                    let pieces = blocks(&f.pieces, n + z_dim, &format!("{path}.pieces"))?;
                    let full = blocks(&f.full_region, n, &format!("{path}.full_region"))?;
                    Function::Set(SetFn::new(&cone, n, pieces, full).map_err(|e| with_location(e, &path))?)
                }
                Kind::Scalar => {
                    if !f.full_region.is_empty() {
                        return Err(Error::parse(format!("{path}.full_region"), "scalar functions use minus_inf"));
                    }
                    let pieces = blocks(&f.pieces, n + 1, &format!("{path}.pieces"))?;
                    let minus = blocks(&f.minus_inf, n, &format!("{path}.minus_inf"))?;
                    Function::Scalar(ScalarFn::new(n, pieces, minus).map_err(|e| with_location(e, &path))?)
                }
            };
            functions.insert(name.clone(), (f.space, built));
        }

        let mut matrices = BTreeMap::new();
        for (name, rows) in &doc.matrices {
            let path = format!("matrices.{name}");
            let cols = rows.first().map_or(0, Vec::len);
            let data = rows
                .iter()
                .enumerate()
                .map(|(i, r)| vec_at(r, &format!("{path}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::new(rows.len(), cols, data).map_err(|e| with_location(e, &path))?;
            matrices.insert(name.clone(), m);
        }

        let inst = Instance {
            doc,
            cone,
            functions,
            matrices,
        };
        inst.check_tasks()?;
        Ok(inst)
    }

    fn check_tasks(&self) -> Result<()> {
        let Spaces { x_dim, y_dim, z_dim } = self.doc.spaces;
        for (i, t) in self.doc.tasks.iter().enumerate() {
            let path = format!("tasks[{i}]");
            let fun = |name: &str| {
                self.functions
                    .get(name)
                    .ok_or_else(|| Error::parse(&path, format!("unknown function {name:?}")))
            };
            let mat = |name: &str, rows: usize, cols: usize| -> Result<()> {
                let m = self
                    .matrices
                    .get(name)
                    .ok_or_else(|| Error::parse(&path, format!("unknown matrix {name:?}")))?;
                if (m.rows, m.cols) != (rows, cols) {
                    return Err(Error::parse(&path, format!("matrix {name:?} must be {rows}x{cols}")));
                }
                Ok(())
            };
            let dim_of = |s: Space| if s == Space::X { x_dim } else { y_dim };
            let duals = |d: &DualsDoc, n: usize| -> Result<()> {
                if let DualsDoc::List(l) = d {
                    if l.iter().any(|d| d.x_star.len() != n || d.z_star.len() != z_dim) {
                        return Err(Error::parse(&path, "dual direction of the wrong length"));
                    }
                }
                Ok(())
            };
            match t {
                TaskDoc::Scalarize { function, z_star } => {
                    if !matches!(fun(function)?.1, Function::Set(_)) {
                        return Err(Error::parse(&path, "scalarize needs a set function"));
                    }
                    if z_star.len() != z_dim {
                        return Err(Error::parse(format!("{path}.z_star"), format!("expected {z_dim} entries")));
                    }
                }
                TaskDoc::Conjugate { function, duals: d } | TaskDoc::Biconjugate { function, directions: d } => {
                    let (space, _) = fun(function)?;
                    duals(d, dim_of(*space))?;
                }
                TaskDoc::Properties { function } => {
                    fun(function)?;
                }
                TaskDoc::Chain { g, f, t, s, duals: d } => {
                    let (gs, gf) = fun(g)?;
                    let (fs, ff) = fun(f)?;
                    if std::mem::discriminant(gf) != std::mem::discriminant(ff) {
                        return Err(Error::parse(&path, "chain operands must be of the same kind"));
                    }
                    let (n, m) = (dim_of(*gs), dim_of(*fs));
                    mat(t, m, n)?;
                    mat(s, n, m)?;
                    duals(d, n)?;
                }
                TaskDoc::FenchelRockafellar { g, f, t, zstars, .. } => {
                    let (gs, gf) = fun(g)?;
                    let (fs, ff) = fun(f)?;
                    if !matches!((gf, ff), (Function::Set(_), Function::Set(_))) {
                        return Err(Error::parse(&path, "Fenchel-Rockafellar needs set functions"));
                    }
                    mat(t, dim_of(*fs), dim_of(*gs))?;
                    if let VectorsDoc::List(l) = zstars {
                        if l.iter().any(|z| z.len() != z_dim) {
                            return Err(Error::parse(&path, "z* of the wrong length"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.doc.name
    }

    pub fn seed(&self) -> u64 {
        self.doc.seed
    }

    pub fn function(&self, name: &str) -> &Function {
        &self.functions[name].1
    }

    pub fn matrix(&self, name: &str) -> &Matrix {
        &self.matrices[name]
    }

    /// The normalized document, pretty-printed with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.doc).expect("documents always serialize");
        s.push('\n');
        s
    }
}

/// `(x*, z*)` pairs from a dual list.
pub fn parse_duals(list: &[DualDoc]) -> Result<Vec<(Vec<Rat>, Vec<Rat>)>> {
    list.iter()
        .enumerate()
        .map(|(i, d)| {
            Ok((
                vec_at(&d.x_star, &format!("duals[{i}].x_star"))?,
                vec_at(&d.z_star, &format!("duals[{i}].z_star"))?,
            ))
        })
        .collect()
}

pub fn parse_vectors(list: &[Vec<String>]) -> Result<Vec<Vec<Rat>>> {
    list.iter()
        .enumerate()
        .map(|(i, v)| vec_at(v, &format!("[{i}]")))
        .collect()
}
