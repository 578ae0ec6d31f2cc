//! Canonical JSON for algebras, representations, cochains, factor systems,
//! crossed modules and pairs, plus a named workspace with provenance.
//!
//! Rationals are strings `"p/q"` (or `"p"`). Emission is two-space pretty
//! JSON with a trailing newline, so `emit(load(x)) == x` for canonical `x`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::catalog;
use crate::cochain::{check_degree, tuple_rank, tuples, Cochain, OuterActionMap};
use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::extension::{FactorSystem, GKernel};
use crate::lie::{BracketTable, LieAlgebra, Representation};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Accumulates every schema problem with its JSON path.
#[derive(Default)]
struct Problems(Vec<String>);

impl Problems {
    fn push(&mut self, path: &str, msg: impl AsRef<str>) {
        self.0.push(format!("{path}: {}", msg.as_ref()));
    }

    fn finish<T>(self, value: T) -> Result<T> {
        if self.0.is_empty() {
            Ok(value)
        } else {
            Err(Error::Parse(self.0.join("; ")))
        }
    }
}

fn field<'a>(v: &'a Value, key: &str, path: &str, p: &mut Problems) -> Option<&'a Value> {
    match v.as_object() {
        None => {
            p.push(path, "expected an object");
            None
        }
        Some(m) => {
            let f = m.get(key);
            if f.is_none() {
                p.push(path, format!("missing field {key:?}"));
            }
            f
        }
    }
}

fn usize_of(v: &Value, path: &str, p: &mut Problems) -> Option<usize> {
    let r = v.as_u64().and_then(|n| usize::try_from(n).ok());
    if r.is_none() {
        p.push(path, "expected a non-negative integer");
    }
    r
}

fn scalar_of(v: &Value, path: &str, p: &mut Problems) -> Option<Scalar> {
    match v {
        Value::String(s) => match s.parse::<Scalar>() {
            Ok(x) => Some(x),
            Err(e) => {
                p.push(path, e.to_string());
                None
            }
        },
        Value::Number(n) if n.is_i64() => Some(Scalar::from_int(n.as_i64().expect("checked"))),
        _ => {
            p.push(path, "expected a rational string");
            None
        }
    }
}

fn array_of<'a>(v: &'a Value, path: &str, p: &mut Problems) -> Option<&'a Vec<Value>> {
    let r = v.as_array();
    if r.is_none() {
        p.push(path, "expected an array");
    }
    r
}

fn vector_of(v: &Value, len: usize, path: &str, p: &mut Problems) -> Option<Vector> {
    let items = array_of(v, path, p)?;
    if items.len() != len {
        p.push(path, format!("expected {len} entries, found {}", items.len()));
        return None;
    }
    let out: Vec<Option<Scalar>> = items
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_of(x, &format!("{path}[{i}]"), p))
        .collect();
    out.into_iter().collect()
}

fn matrix_of(v: &Value, rows: usize, cols: usize, path: &str, p: &mut Problems) -> Option<Matrix> {
    let items = array_of(v, path, p)?;
    if items.len() != rows {
        p.push(path, format!("expected {rows} rows, found {}", items.len()));
        return None;
    }
    let parsed: Vec<Option<Vector>> = items
        .iter()
        .enumerate()
        .map(|(i, r)| vector_of(r, cols, &format!("{path}[{i}]"), p))
        .collect();
    let rows_v: Option<Vec<Vector>> = parsed.into_iter().collect();
    rows_v.map(|r| Matrix::from_rows(r, cols))
}

fn matrices_of(v: &Value, count: usize, rows: usize, cols: usize, path: &str, p: &mut Problems) -> Option<Vec<Matrix>> {
    let items = array_of(v, path, p)?;
    if items.len() != count {
        p.push(path, format!("expected {count} matrices, found {}", items.len()));
        return None;
    }
    let parsed: Vec<Option<Matrix>> = items
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_of(m, rows, cols, &format!("{path}[{i}]"), p))
        .collect();
    parsed.into_iter().collect()
}

pub fn scalar_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.row(i))).collect())
}

fn matrices_json(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix_json).collect())
}

/// Two-space pretty JSON with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

// ---- Lie algebras ----

pub fn algebra_json(l: &LieAlgebra) -> Value {
    let brackets: Vec<Value> = l
        .structure_constants()
        .into_iter()
        .map(|(i, j, v)| {
            let value: Map<String, Value> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k.to_string(), scalar_json(c)))
                .collect();
            json!({"i": i, "j": j, "value": value})
        })
        .collect();
    json!({"dim": l.dim(), "basis": l.labels(), "brackets": brackets})
}

/// Parses an inline algebra, or a string naming a catalog algebra.
///
/// # Errors
/// `Parse` listing every schema problem; `InvariantViolation` listing every
/// Jacobi-violating basis triple.
pub fn algebra_from_json(v: &Value) -> Result<LieAlgebra> {
    if let Value::String(name) = v {
        return catalog::algebra(name);
    }
    let mut p = Problems::default();
    let dim = field(v, "dim", "$", &mut p).and_then(|d| usize_of(d, "$.dim", &mut p));
    let labels: Option<Vec<String>> = field(v, "basis", "$", &mut p).and_then(|b| {
        let items = array_of(b, "$.basis", &mut p)?;
        let names: Vec<Option<String>> = items
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let s = x.as_str().map(str::to_string);
                if s.is_none() {
                    p.push(&format!("$.basis[{i}]"), "expected a string");
                }
                s
            })
            .collect();
        names.into_iter().collect()
    });
    let (Some(dim), Some(labels)) = (dim, labels) else {
        return p.finish(()).and_then(|_| unreachable!());
    };
    if labels.len() != dim {
        p.push("$.basis", format!("expected {dim} labels, found {}", labels.len()));
    }
    let mut table = BracketTable::zero(dim);
    let mut seen = std::collections::BTreeSet::new();
    if let Some(items) = field(v, "brackets", "$", &mut p).and_then(|b| array_of(b, "$.brackets", &mut p)) {
        for (n, entry) in items.iter().enumerate() {
            let path = format!("$.brackets[{n}]");
            let i = field(entry, "i", &path, &mut p).and_then(|x| usize_of(x, &format!("{path}.i"), &mut p));
            let j = field(entry, "j", &path, &mut p).and_then(|x| usize_of(x, &format!("{path}.j"), &mut p));
            let value = field(entry, "value", &path, &mut p);
            let (Some(i), Some(j), Some(value)) = (i, j, value) else {
                continue;
            };
            if i >= j || j >= dim {
                p.push(&path, format!("indices must satisfy i < j < {dim}"));
                continue;
            }
            if !seen.insert((i, j)) {
                p.push(&path, format!("pair ({i}, {j}) listed twice"));
                continue;
            }
            let Some(obj) = value.as_object() else {
                p.push(&format!("{path}.value"), "expected an object");
                continue;
            };
            let mut vec = vec![Scalar::zero(); dim];
            for (k, c) in obj {
                let kp = format!("{path}.value.{k}");
                match k.parse::<usize>() {
                    Ok(k) if k < dim => {
                        if let Some(c) = scalar_of(c, &kp, &mut p) {
                            vec[k] = c;
                        }
                    }
                    _ => p.push(&kp, format!("key must be a basis index below {dim}")),
                }
            }
            table.set(i, j, vec);
        }
    }
    p.finish(())?;
    let violations = table.jacobi_violations();
    if !violations.is_empty() {
        return Err(Error::InvariantViolation(
            violations
                .iter()
                .map(|(i, j, k)| format!("Jacobi identity fails on basis triple ({i}, {j}, {k})"))
                .collect(),
        ));
    }
    LieAlgebra::from_table(labels, table)
}

// ---- Representations ----

pub fn representation_json(r: &Representation) -> Value {
    json!({
        "algebra": algebra_json(r.algebra()),
        "space_dim": r.space_dim(),
        "matrices": matrices_json(r.action()),
    })
}

pub fn representation_from_json(v: &Value) -> Result<Representation> {
    let mut p = Problems::default();
    let algebra = field(v, "algebra", "$", &mut p).cloned();
    let m = field(v, "space_dim", "$", &mut p).and_then(|x| usize_of(x, "$.space_dim", &mut p));
    let matrices = field(v, "matrices", "$", &mut p).cloned();
    p.finish(())?;
    let algebra = Arc::new(algebra_from_json(&algebra.expect("checked"))?);
    let m = m.expect("checked");
    let mut p = Problems::default();
    let action = matrices_of(&matrices.expect("checked"), algebra.dim(), m, m, "$.matrices", &mut p);
    p.finish(())?;
    Representation::new(algebra, m, action.expect("checked"))
}

// ---- Cochains ----

/// `{"degree", "value_dim", "coeffs": {"i,j,…": [...]}}`, nonzero values only.
pub fn cochain_json(c: &Cochain) -> Value {
    let mut coeffs = Map::new();
    for t in tuples(c.domain_dim(), c.degree()) {
        let v = c.value(&t);
        if v.iter().any(|x| !x.is_zero()) {
            let key = t.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            coeffs.insert(key, vector_json(v));
        }
    }
    json!({"degree": c.degree(), "value_dim": c.value_dim(), "coeffs": coeffs})
}

/// Parses a cochain on a `domain_dim`-dimensional algebra.
pub fn cochain_from_json(v: &Value, domain_dim: usize) -> Result<Cochain> {
    let mut p = Problems::default();
    let degree = field(v, "degree", "$", &mut p).and_then(|x| usize_of(x, "$.degree", &mut p));
    let value_dim = field(v, "value_dim", "$", &mut p).and_then(|x| usize_of(x, "$.value_dim", &mut p));
    let coeffs = field(v, "coeffs", "$", &mut p).and_then(|c| {
        let o = c.as_object();
        if o.is_none() {
            p.push("$.coeffs", "expected an object");
        }
        o
    });
    let (Some(degree), Some(value_dim), Some(coeffs)) = (degree, value_dim, coeffs) else {
        return p.finish(()).and_then(|_| unreachable!());
    };
    check_degree(degree)?;
    let mut c = Cochain::zero(domain_dim, degree, value_dim);
    let mut seen = vec![false; c.num_tuples()];
    for (key, value) in coeffs {
        let path = format!("$.coeffs.{key}");
        let idx: std::result::Result<Vec<usize>, _> = if key.is_empty() {
            Ok(Vec::new())
        } else {
            key.split(',').map(|s| s.trim().parse::<usize>()).collect()
        };
        let Ok(t) = idx else {
            p.push(&path, "key must be comma-separated basis indices");
            continue;
        };
        if t.len() != degree || t.windows(2).any(|w| w[0] >= w[1]) || t.iter().any(|&i| i >= domain_dim) {
            p.push(
                &path,
                format!("key must be {degree} strictly increasing indices below {domain_dim}"),
            );
            continue;
        }
        let rank = tuple_rank(domain_dim, &t);
        if std::mem::replace(&mut seen[rank], true) {
            p.push(&path, "tuple listed twice");
            continue;
        }
        if let Some(vec) = vector_of(value, value_dim, &path, &mut p) {
            c.set(&t, vec);
        }
    }
    p.finish(c)
}

// ---- Outer actions ----

pub fn outer_action_json(s: &OuterActionMap) -> Value {
    json!({"dim": s.dim(), "matrices": matrices_json(s.matrices())})
}

pub fn outer_action_from_json(v: &Value, g_dim: usize) -> Result<OuterActionMap> {
    let mut p = Problems::default();
    let dim = field(v, "dim", "$", &mut p).and_then(|x| usize_of(x, "$.dim", &mut p));
    let ms = field(v, "matrices", "$", &mut p).cloned();
    p.finish(())?;
    let dim = dim.expect("checked");
    let mut p = Problems::default();
    let ms = matrices_of(&ms.expect("checked"), g_dim, dim, dim, "$.matrices", &mut p);
    p.finish(())?;
    OuterActionMap::new(dim, ms.expect("checked"))
}

// ---- Extension bundles ----

/// `{"n", "g", "S", "omega"?}`.
#[derive(Clone, Debug)]
pub struct ExtensionBundle {
    pub n: Arc<LieAlgebra>,
    pub g: Arc<LieAlgebra>,
    pub s: OuterActionMap,
    pub omega: Option<Cochain>,
}

impl ExtensionBundle {
    pub fn from_factor_system(fs: &FactorSystem) -> Self {
        ExtensionBundle {
            n: fs.n().clone(),
            g: fs.g().clone(),
            s: fs.s().clone(),
            omega: Some(fs.omega().clone()),
        }
    }

    /// The factor system, validated; `omega` must be present.
    pub fn factor_system(&self) -> Result<FactorSystem> {
        let omega = self
            .omega
            .clone()
            .ok_or_else(|| Error::Parse("extension bundle has no \"omega\"".into()))?;
        FactorSystem::new(self.n.clone(), self.g.clone(), self.s.clone(), omega)
    }

    /// Same shapes without validating the factor-system conditions.
    pub fn factor_system_unchecked(&self) -> Result<FactorSystem> {
        let omega = self
            .omega
            .clone()
            .ok_or_else(|| Error::Parse("extension bundle has no \"omega\"".into()))?;
        FactorSystem::new_unchecked(self.n.clone(), self.g.clone(), self.s.clone(), omega)
    }

    /// The g-kernel `[S]`, using `omega` as the curvature lift when present.
    pub fn kernel(&self) -> Result<GKernel> {
        match &self.omega {
            Some(w) => GKernel::with_lift(self.g.clone(), self.n.clone(), self.s.clone(), w.clone()),
            None => GKernel::new(self.g.clone(), self.n.clone(), self.s.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("n".into(), algebra_json(&self.n));
        m.insert("g".into(), algebra_json(&self.g));
        m.insert("S".into(), outer_action_json(&self.s));
        if let Some(w) = &self.omega {
            m.insert("omega".into(), cochain_json(w));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut p = Problems::default();
        let n = field(v, "n", "$", &mut p).cloned();
        let g = field(v, "g", "$", &mut p).cloned();
        let s = field(v, "S", "$", &mut p).cloned();
        p.finish(())?;
        let omega = v.get("omega").cloned();
        ExtensionBundle::from_parts(
            &n.expect("checked"),
            &g.expect("checked"),
            &s.expect("checked"),
            omega.as_ref(),
        )
    }

    pub fn from_parts(n: &Value, g: &Value, s: &Value, omega: Option<&Value>) -> Result<Self> {
        let n = Arc::new(algebra_from_json(n).map_err(|e| prefix_error("n", e))?);
        let g = Arc::new(algebra_from_json(g).map_err(|e| prefix_error("g", e))?);
        let s = outer_action_from_json(s, g.dim()).map_err(|e| prefix_error("S", e))?;
        if s.dim() != n.dim() {
            return Err(Error::DimensionMismatch(format!(
                "S acts on dimension {} but n has {}",
                s.dim(),
                n.dim()
            )));
        }
        let omega = omega
            .map(|w| cochain_from_json(w, g.dim()).map_err(|e| prefix_error("omega", e)))
            .transpose()?;
        Ok(ExtensionBundle { n, g, s, omega })
    }
}

fn prefix_error(part: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{part}: {m}")),
        Error::InvariantViolation(v) => {
            Error::InvariantViolation(v.into_iter().map(|m| format!("{part}: {m}")).collect())
        }
        other => other,
    }
}

// ---- Crossed modules ----

pub fn crossed_module_json(cm: &CrossedModule) -> Value {
    json!({
        "h": algebra_json(&cm.h),
        "ghat": algebra_json(&cm.ghat),
        "alpha": matrix_json(&cm.alpha),
        "action": matrices_json(cm.action.action()),
    })
}

pub fn crossed_module_from_json(v: &Value) -> Result<CrossedModule> {
    let mut p = Problems::default();
    let h = field(v, "h", "$", &mut p).cloned();
    let ghat = field(v, "ghat", "$", &mut p).cloned();
    let alpha = field(v, "alpha", "$", &mut p).cloned();
    let action = field(v, "action", "$", &mut p).cloned();
    p.finish(())?;
    let h = Arc::new(algebra_from_json(&h.expect("checked")).map_err(|e| prefix_error("h", e))?);
    let ghat = Arc::new(algebra_from_json(&ghat.expect("checked")).map_err(|e| prefix_error("ghat", e))?);
    let mut p = Problems::default();
    let alpha = matrix_of(&alpha.expect("checked"), ghat.dim(), h.dim(), "$.alpha", &mut p);
    let action = matrices_of(
        &action.expect("checked"),
        ghat.dim(),
        h.dim(),
        h.dim(),
        "$.action",
        &mut p,
    );
    p.finish(())?;
    let rep = Representation::new(ghat.clone(), h.dim(), action.expect("checked"))?;
    CrossedModule::new(h, ghat, alpha.expect("checked"), rep)
}

// ---- Pairs ----

/// `(α, β)` on `n × g` with an optional `γ: g → n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairBundle {
    pub alpha: Matrix,
    pub beta: Matrix,
    pub gamma: Option<Cochain>,
}

/// A homomorphism `ψ: h → der n × der g` with `θ: h → C¹(g, n)`.
#[derive(Clone, Debug)]
pub struct LiftingBundle {
    pub h: Arc<LieAlgebra>,
    pub psi: Vec<(Matrix, Matrix)>,
    pub theta: Vec<Cochain>,
}

/// Contents of a `--pair` file.
#[derive(Clone, Debug)]
pub enum PairFile {
    Pair(PairBundle),
    Lifting(LiftingBundle),
}

pub fn pair_json(p: &PairBundle) -> Value {
    let mut m = Map::new();
    m.insert("alpha".into(), matrix_json(&p.alpha));
    m.insert("beta".into(), matrix_json(&p.beta));
    if let Some(g) = &p.gamma {
        m.insert("gamma".into(), cochain_json(g));
    }
    Value::Object(m)
}

pub fn lifting_json(l: &LiftingBundle) -> Value {
    let entries: Vec<Value> = l
        .psi
        .iter()
        .zip(&l.theta)
        .map(|((a, b), t)| json!({"alpha": matrix_json(a), "beta": matrix_json(b), "theta": cochain_json(t)}))
        .collect();
    json!({"h": algebra_json(&l.h), "psi": entries})
}

fn pair_entry(v: &Value, dn: usize, dg: usize, path: &str, p: &mut Problems) -> Option<(Matrix, Matrix)> {
    let a = field(v, "alpha", path, p).and_then(|x| matrix_of(x, dn, dn, &format!("{path}.alpha"), p));
    let b = field(v, "beta", path, p).and_then(|x| matrix_of(x, dg, dg, &format!("{path}.beta"), p));
    Some((a?, b?))
}

/// Parses a pair file against `n` and `g` of the given dimensions.
pub fn pair_file_from_json(v: &Value, dn: usize, dg: usize) -> Result<PairFile> {
    let mut p = Problems::default();
    if let Some(h) = v.get("h") {
        let h = Arc::new(algebra_from_json(h).map_err(|e| prefix_error("h", e))?);
        let mut psi = Vec::new();
        let mut theta = Vec::new();
        if let Some(items) = field(v, "psi", "$", &mut p).and_then(|x| array_of(x, "$.psi", &mut p)) {
            if items.len() != h.dim() {
                p.push("$.psi", format!("expected {} entries, found {}", h.dim(), items.len()));
            }
            for (i, e) in items.iter().enumerate() {
                let path = format!("$.psi[{i}]");
                if let Some(pair) = pair_entry(e, dn, dg, &path, &mut p) {
                    psi.push(pair);
                }
                if let Some(t) = field(e, "theta", &path, &mut p) {
                    match cochain_from_json(t, dg) {
                        Ok(c) if c.degree() == 1 && c.value_dim() == dn => theta.push(c),
                        Ok(_) => p.push(
                            &format!("{path}.theta"),
                            format!("expected a 1-cochain with {dn} values"),
                        ),
                        Err(e) => p.push(&format!("{path}.theta"), e.to_string()),
                    }
                }
            }
        }
        return p.finish(PairFile::Lifting(LiftingBundle { h, psi, theta }));
    }
    let pair = pair_entry(v, dn, dg, "$", &mut p);
    let gamma = match v.get("gamma") {
        None => None,
        Some(g) => match cochain_from_json(g, dg) {
            Ok(c) if c.degree() == 1 && c.value_dim() == dn => Some(c),
            Ok(_) => {
                p.push("$.gamma", format!("expected a 1-cochain with {dn} values"));
                None
            }
            Err(e) => {
                p.push("$.gamma", e.to_string());
                None
            }
        },
    };
    p.finish(())?;
    let (alpha, beta) = pair.expect("checked");
    Ok(PairFile::Pair(PairBundle { alpha, beta, gamma }))
}

// ---- Workspace ----

/// The kinds of object a file can hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Representation,
    Extension,
    CrossedModule,
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(Kind::Algebra),
            "rep" | "representation" => Ok(Kind::Representation),
            "ext" | "extension" => Ok(Kind::Extension),
            "cm" | "crossed-module" => Ok(Kind::CrossedModule),
            other => Err(Error::Parse(format!("unknown object kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Object {
    Algebra(Arc<LieAlgebra>),
    Representation(Representation),
    Extension(ExtensionBundle),
    CrossedModule(CrossedModule),
}

impl Object {
    pub fn to_json(&self) -> Value {
        match self {
            Object::Algebra(l) => algebra_json(l),
            Object::Representation(r) => representation_json(r),
            Object::Extension(e) => e.to_json(),
            Object::CrossedModule(c) => crossed_module_json(c),
        }
    }
}

/// Parses `text` as an object of the given kind, re-validating every invariant.
pub fn load_str(text: &str, kind: Kind) -> Result<Object> {
    let v = parse_json(text)?;
    Ok(match kind {
        Kind::Algebra => Object::Algebra(Arc::new(algebra_from_json(&v)?)),
        Kind::Representation => Object::Representation(representation_from_json(&v)?),
        Kind::Extension => {
            let bundle = ExtensionBundle::from_json(&v)?;
            if bundle.omega.is_some() {
                bundle.factor_system()?;
            }
            Object::Extension(bundle)
        }
        Kind::CrossedModule => Object::CrossedModule(crossed_module_from_json(&v)?),
    })
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path, kind: Kind) -> Result<Object> {
    load_str(&read_file(path)?, kind)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub source: String,
    pub sha256: String,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub object: Object,
    pub provenance: Provenance,
}

/// Named objects loaded from files.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    entries: BTreeMap<String, Entry>,
}

impl Workspace {
    pub fn new() -> Self {
        Workspace::default()
    }

    /// # Errors
    /// `InvariantViolation` if `name` is taken, otherwise as [`load_str`].
    pub fn load(&mut self, name: &str, path: &Path, kind: Kind) -> Result<&Entry> {
        let text = read_file(path)?;
        self.insert_str(name, &path.display().to_string(), &text, kind)
    }

    pub fn insert_str(&mut self, name: &str, source: &str, text: &str, kind: Kind) -> Result<&Entry> {
        if self.entries.contains_key(name) {
            return Err(Error::InvariantViolation(vec![format!(
                "workspace name {name:?} already in use"
            )]));
        }
        let object = load_str(text, kind)?;
        let provenance = Provenance {
            source: source.to_string(),
            sha256: sha256_hex(text.as_bytes()),
        };
        Ok(self
            .entries
            .entry(name.to_string())
            .or_insert(Entry { object, provenance }))
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
