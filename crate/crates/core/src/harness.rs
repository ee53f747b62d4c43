//! Input documents, command dispatch, result documents and the on-disk cache
//! of truncations.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bosonization::{all_passed, bosonization_suite, Bosonization, Check};
use crate::coinvariants::coinvariants;
use crate::error::{Error, Result};
use crate::group::{diagonal_type, FiniteGroup, GroupElement};
use crate::matrix::CycMatrix;
use crate::nichols::{nichols_truncate, Mode, NicholsTruncation};
use crate::omega::{omega_grading_checks, round_trip, same_structure, transport_bialgebra, verify_braided_monoidal};
use crate::pairing::{canonical_pairing, inverse_pairing, pairing_axiom_suite};
use crate::reflection::{filtration_checks, orbit_module, reflect_in, verify_reflection_theorems, YDTuple};
use crate::relative::RelativeYDModule;
use crate::scalar::CycScalar;
use crate::weyl::weyl_groupoid;
use crate::yd::{diagonal_modules, yd_dual, yd_validate, YDModule};

/// Bumped whenever the serialized truncation format changes.
pub const CACHE_VERSION: &str = "nichols-cache-v1";
pub const CACHE_ENV: &str = "NICHOLS_CACHE_DIR";

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    /// Conductor of the field; every literal must be a root of unity of this order.
    pub conductor: Option<u32>,
    pub cutoff: Option<usize>,
    /// 1-based.
    pub pivot: Option<usize>,
    pub max_vertices: Option<usize>,
    pub diagonal: Option<DiagonalSpec>,
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub module: Vec<ModuleSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalSpec {
    pub q: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub abelian: Option<Vec<usize>>,
    pub symmetric: Option<usize>,
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Index(usize),
    Tuple(Vec<i64>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub degrees: Vec<ElementSpec>,
    pub action: Vec<ActionSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub generator: ElementSpec,
    pub matrix: Vec<Vec<String>>,
}

pub fn parse_input(text: &str) -> Result<InputSpec> {
    toml::from_str(text).map_err(|e| Error::Input(e.to_string()))
}

/// `"z(N,k)"`, `"1"` or `"-1"` as `(N, k)`, possibly with a leading minus.
fn root_literal(s: &str, field: &str) -> Result<(u32, i64)> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Input(format!("{field}: `{s}` is not a root-of-unity literal"));
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.as_str()),
    };
    let (n, k) = if body == "1" {
        (1u32, 0i64)
    } else {
        let inner = body.strip_prefix("z(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let n: u32 = a.parse().map_err(|_| bad())?;
        let k: i64 = b.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        (n, k)
    };
    if !neg {
        return Ok((n, k));
    }
    // -z(n,k) = z(2n, 2k + n)
    Ok((2 * n, 2 * k + n as i64))
}

fn reduced_order(n: u32, k: i64) -> u32 {
    let k = k.rem_euclid(n as i64) as u32;
    n / num_integer::gcd(n, k)
}

impl InputSpec {
    /// The tuple of irreducible modules described by the document.
    pub fn tuple(&self) -> Result<YDTuple> {
        let modules = match (&self.diagonal, self.module.is_empty()) {
            (Some(d), true) => self.diagonal_modules(d)?,
            (None, false) => self.explicit_modules()?,
            (Some(_), false) => return Err(Error::Input("give either [diagonal] or [[module]], not both".into())),
            (None, true) => return Err(Error::Input("no modules: need [diagonal] or [[module]]".into())),
        };
        for (j, m) in modules.iter().enumerate() {
            yd_validate(m).map_err(|e| Error::Input(format!("module[{j}]: {e}")))?;
        }
        YDTuple::new(modules)
    }

    fn check_conductor(&self, order: u32, field: &str) -> Result<()> {
        match self.conductor {
            Some(n) if n % order != 0 => Err(Error::Input(format!("{field}: root of order {order} not in conductor {n}"))),
            _ => Ok(()),
        }
    }

    fn diagonal_modules(&self, d: &DiagonalSpec) -> Result<Vec<YDModule>> {
        let mut q = Vec::new();
        for (i, row) in d.q.iter().enumerate() {
            let mut r = Vec::new();
            for (j, s) in row.iter().enumerate() {
                let field = format!("diagonal.q[{i}][{j}]");
                let (n, k) = root_literal(s, &field)?;
                self.check_conductor(reduced_order(n, k), &field)?;
                r.push((n, k));
            }
            q.push(r);
        }
        diagonal_modules(&diagonal_type(&q)?)
    }

    fn group(&self) -> Result<FiniteGroup> {
        let g = self.group.as_ref().ok_or_else(|| Error::Input("explicit modules need a [group]".into()))?;
        match (&g.abelian, g.symmetric, &g.table) {
            (Some(f), None, None) => FiniteGroup::abelian(f),
            (None, Some(n), None) => FiniteGroup::symmetric(n),
            (None, None, Some(t)) => FiniteGroup::from_table(t.clone()),
            _ => Err(Error::Input("group: give exactly one of abelian, symmetric, table".into())),
        }
    }

    fn explicit_modules(&self) -> Result<Vec<YDModule>> {
        let group = Arc::new(self.group()?);
        let element = |e: &ElementSpec, field: &str| -> Result<GroupElement> {
            match e {
                ElementSpec::Index(i) if *i < group.order() => Ok(*i),
                ElementSpec::Index(i) => Err(Error::Input(format!("{field}: element {i} outside the group"))),
                ElementSpec::Tuple(t) => group.element_from_tuple(t).map_err(|e| Error::Input(format!("{field}: {e}"))),
            }
        };
        let mut out = Vec::new();
        for (j, m) in self.module.iter().enumerate() {
            let degrees = m
                .degrees
                .iter()
                .enumerate()
                .map(|(k, e)| element(e, &format!("module[{j}].degrees[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            let mut gens = Vec::new();
            for (a, act) in m.action.iter().enumerate() {
                let field = format!("module[{j}].action[{a}]");
                let g = element(&act.generator, &format!("{field}.generator"))?;
                let rows = act
                    .matrix
                    .iter()
                    .map(|row| row.iter().map(|s| CycScalar::parse(s).map_err(|e| Error::Input(format!("{field}.matrix: {e}")))).collect())
                    .collect::<Result<Vec<Vec<CycScalar>>>>()?;
                if let Some(n) = self.conductor {
                    if rows.iter().flatten().any(|s| n % s.conductor() != 0) {
                        return Err(Error::Input(format!("{field}.matrix: entry outside conductor {n}")));
                    }
                }
                gens.push((g, CycMatrix::from_dense(rows)));
            }
            out.push(YDModule::from_generators(group.clone(), degrees, &gens).map_err(|e| Error::Input(format!("module[{j}]: {e}")))?);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Dims,
    PairingCheck,
    BosonizationCheck,
    OmegaCheck,
    Reflect,
    VerifyNtn,
    Weyl,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dims => "dims",
            Command::PairingCheck => "pairing-check",
            Command::BosonizationCheck => "bosonization-check",
            Command::OmegaCheck => "omega-check",
            Command::Reflect => "reflect",
            Command::VerifyNtn => "verify-ntn",
            Command::Weyl => "weyl",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        [Command::Dims, Command::PairingCheck, Command::BosonizationCheck, Command::OmegaCheck, Command::Reflect, Command::VerifyNtn, Command::Weyl]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub cutoff: Option<usize>,
    /// 1-based.
    pub pivot: Option<usize>,
    pub max_vertices: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub timing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub input_hash: String,
    pub cutoff: usize,
    pub pivot: Option<usize>,
    pub tables: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command {}\ninput {}\ncutoff {}\n", self.command, self.input_hash, self.cutoff);
        if let Some(p) = self.pivot {
            out += &format!("pivot {p}\n");
        }
        for (k, v) in &self.tables {
            match v {
                Value::Array(a) if a.iter().all(|x| x.is_string()) => {
                    out += &format!("{k}:\n");
                    for x in a {
                        out += &format!("  {}\n", x.as_str().unwrap());
                    }
                }
                _ => out += &format!("{k}: {v}\n"),
            }
        }
        for c in &self.checks {
            out += &format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            if !c.detail.is_empty() {
                out += &format!(" ({})", c.detail);
            }
            out += "\n";
        }
        out += &format!("result {}\n", if self.passed { "pass" } else { "fail" });
        if let Some(t) = self.timing_ms {
            out += &format!("time {t} ms\n");
        }
        out
    }
}

/// Hash of the normalized input: the parsed modules, not the text.
pub fn input_hash(t: &YDTuple) -> String {
    let body = serde_json::to_string(t.entries()).expect("modules serialize");
    hex::encode(Sha256::digest(format!("{CACHE_VERSION}\n{body}")))
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir: dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) }
    }

    pub fn key(module: &YDModule, tags: &[usize], cutoff: usize, mode: Mode) -> String {
        let body = serde_json::to_string(&(module, tags, cutoff, mode)).expect("key serializes");
        hex::encode(Sha256::digest(format!("{CACHE_VERSION}\n{body}")))
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn load(&self, key: &str) -> Option<NicholsTruncation> {
        let path = self.path(key)?;
        let text = std::fs::read_to_string(&path).ok()?;
        match serde_json::from_str(&text) {
            Ok(t) => Some(t),
            Err(e) => {
                log::warn!("evicting corrupt cache entry {}: {e}", path.display());
                let _ = std::fs::remove_file(&path);
                None
            }
        }
    }

    pub fn store(&self, key: &str, t: &NicholsTruncation) -> Result<()> {
        let Some(path) = self.path(key) else { return Ok(()) };
        let dir = path.parent().unwrap_or(Path::new("."));
        let io = |e: std::io::Error| Error::Cache(e.to_string());
        std::fs::create_dir_all(dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(serde_json::to_string(t).expect("truncation serializes").as_bytes()).map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn truncate(&self, module: &YDModule, tags: &[usize], cutoff: usize, mode: Mode) -> Result<NicholsTruncation> {
        let key = Self::key(module, tags, cutoff, mode);
        if let Some(t) = self.load(&key) {
            return Ok(t);
        }
        let t = nichols_truncate(module, Some(tags), cutoff, mode)?;
        if let Err(e) = self.store(&key, &t) {
            log::warn!("cache write failed: {e}");
        }
        Ok(t)
    }
}

fn weight_key(w: &[u32]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn multidegree_table(t: &NicholsTruncation) -> Value {
    let mut m: BTreeMap<String, usize> = BTreeMap::new();
    for n in 0..=t.cutoff() {
        for b in 0..t.dim(n) {
            *m.entry(weight_key(t.multidegree(n, b))).or_insert(0) += 1;
        }
    }
    json!(m)
}

fn module_summary(m: &YDModule) -> Value {
    let g = m.group();
    let gens: BTreeMap<String, Vec<Vec<String>>> = g
        .generators()
        .into_iter()
        .map(|h| (h.to_string(), m.action(h).to_dense().iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()))
        .collect();
    json!({ "dim": m.dim(), "degrees": m.degrees(), "generator_action": gens })
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks.into_iter().map(|mut c| {
        c.name = format!("{prefix}{}", c.name);
        c
    }).collect()
}

pub fn run(command: Command, input: &InputSpec, opts: &RunOptions) -> Result<ResultDocument> {
    let start = Instant::now();
    let tuple = input.tuple()?;
    let cutoff = opts.cutoff.or(input.cutoff).ok_or_else(|| Error::Input("no cutoff given".into()))?;
    if cutoff < 1 {
        return Err(Error::InvalidCutoff(cutoff));
    }
    let pivot1 = opts.pivot.or(input.pivot);
    let pivot = match pivot1 {
        Some(p) if p >= 1 && p <= tuple.rank() => Some(p - 1),
        Some(p) => return Err(Error::Input(format!("pivot {p} outside 1..={}", tuple.rank()))),
        None => None,
    };
    let needs_pivot = matches!(command, Command::OmegaCheck | Command::Reflect | Command::VerifyNtn);
    if needs_pivot && pivot.is_none() {
        return Err(Error::Input(format!("{} needs --pivot", command.name())));
    }
    let cache = Cache::new(opts.cache_dir.clone());
    let (sum, tags) = tuple.direct_sum();
    let mut tables = BTreeMap::new();
    let mut checks = Vec::new();

    match command {
        Command::Dims => {
            let t = cache.truncate(&sum, &tags, cutoff, Mode::Nichols)?;
            tables.insert("dims".into(), json!(t.dims()));
            tables.insert("multidegree_dims".into(), json!(multidegree_table(&t)));
            tables.insert("vanishes_from".into(), json!(t.vanishes_from()));
        }
        Command::PairingCheck => {
            let r = Arc::new(cache.truncate(&sum, &tags, cutoff, Mode::Nichols)?);
            let l = Arc::new(cache.truncate(&yd_dual(&sum), &tags, cutoff, Mode::Nichols)?);
            let p = canonical_pairing(l, r)?;
            tables.insert("dims".into(), json!(p.right().dims()));
            checks.extend(pairing_axiom_suite(&p));
            checks.extend(prefixed("inverse: ", pairing_axiom_suite(&inverse_pairing(&p))));
        }
        Command::BosonizationCheck => {
            let r = Arc::new(cache.truncate(&sum, &tags, cutoff, Mode::Nichols)?);
            let a = Bosonization::new(r);
            tables.insert("dim".into(), json!(a.dim()));
            checks.extend(bosonization_suite(&a)?);
        }
        Command::OmegaCheck => {
            let i = pivot.unwrap();
            let big = Arc::new(cache.truncate(&sum, &tags, cutoff, Mode::Nichols)?);
            let k = coinvariants(big.clone(), i)?;
            let h = k.hopf_object()?;
            let r = k.sub().clone();
            let l = Arc::new(cache.truncate(&yd_dual(r.module()), &vec![0; r.module().dim()], r.cutoff(), Mode::Nichols)?);
            let p = canonical_pairing(l, r.clone())?;
            tables.insert("coinvariant_dims".into(), json!(k.dims()));
            let transported = transport_bialgebra(&h.object, &h.mu, &h.delta, &h.unit, &h.counit, &p).is_ok();
            checks.push(Check::new("(a) Omega(K) is a braided bialgebra after transport", transported, ""));
            let trivial = RelativeYDModule::trivial(r.clone(), YDModule::unit(r.module().group().clone()));
            let bm = verify_braided_monoidal(&[h.object.clone(), trivial], &[], &p)?;
            checks.extend(prefixed("(b) ", bm));
            let q = inverse_pairing(&p);
            let (back, j) = round_trip(&h.object, &p, &q)?;
            checks.push(Check::new("(c) round trip through the inverse pairing recovers K", same_structure(&h.object, &back, &j), ""));
            match reflect_in(&tuple, &big, i) {
                Ok(d) => {
                    for o in &d.orbits {
                        let (w, grading, _) = orbit_module(&k, std::slice::from_ref(o), Some(o.j))?;
                        checks.extend(prefixed(&format!("(d,e) W_{}: ", o.j + 1), omega_grading_checks(&w, &grading, &p)?));
                    }
                }
                Err(Error::NotDefinedAtCutoff { .. }) => {
                    tables.insert("graded_checks".into(), json!("skipped: adjoint orbits do not vanish within the cutoff"));
                }
                Err(e) => return Err(e),
            }
        }
        Command::Reflect => {
            let i = pivot.unwrap();
            let big = cache.truncate(&sum, &tags, cutoff, Mode::Nichols)?;
            let d = reflect_in(&tuple, &big, i)?;
            tables.insert("exponents".into(), json!(d.exponents));
            tables.insert("cartan_row".into(), json!(d.cartan_row));
            tables.insert("orbit_dims".into(), json!(d.orbits.iter().map(|o| (o.j + 1, o.dims())).collect::<BTreeMap<_, _>>()));
            tables.insert("reflected".into(), Value::Array(d.result.entries().iter().map(module_summary).collect()));
        }
        Command::VerifyNtn => {
            let i = pivot.unwrap();
            let report = verify_reflection_theorems(&tuple, i, cutoff)?;
            tables.insert("exponents".into(), json!(report.exponents));
            tables.insert("cartan_row".into(), json!(report.cartan_row));
            tables.insert("reflected_cartan_row".into(), json!(report.reflected_cartan_row));
            tables.insert("source_dims".into(), json!(report.source_dims));
            tables.insert("reflected_dims".into(), json!(report.reflected_dims));
            tables.insert("coinvariant_dims".into(), json!(report.coinvariant_dims));
            checks.extend(report.checks);
            checks.extend(filtration_checks(&tuple, i, cutoff)?);
        }
        Command::Weyl => {
            let max = opts.max_vertices.or(input.max_vertices).unwrap_or(64);
            let g = weyl_groupoid(&tuple, cutoff, max)?;
            tables.insert("vertices".into(), json!(g.vertices.len()));
            tables.insert("complete".into(), json!(g.complete));
            tables.insert("adjacency".into(), json!(g.adjacency().lines().collect::<Vec<_>>()));
            let cartan: Vec<Vec<Option<Vec<i64>>>> = (0..g.vertices.len()).map(|v| g.cartan_matrix(v)).collect();
            tables.insert("cartan_matrices".into(), json!(cartan));
            let cox: Vec<String> = g
                .coxeter_orders(12)
                .into_iter()
                .map(|(v, i, j, o)| format!("{v} {} {} {}", i + 1, j + 1, o.map_or("-".into(), |o| o.to_string())))
                .collect();
            tables.insert("coxeter_exploratory".into(), json!(cox));
            checks.push(Check::new("R_i twice returns to the start vertex", g.involutive(), ""));
            checks.push(Check::new("Cartan rows agree along every edge", g.cartan_invariant(), ""));
        }
    }

    let passed = all_passed(&checks);
    Ok(ResultDocument {
        command: command.name().into(),
        input_hash: input_hash(&tuple),
        cutoff,
        pivot: pivot1,
        tables,
        checks,
        passed,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis()),
    })
}

/// Process exit code for a result: 0 pass, 1 failed verification.
pub fn exit_code(r: &Result<ResultDocument>) -> i32 {
    match r {
        Ok(d) if d.passed => 0,
        Ok(_) => 1,
        Err(Error::Input(_) | Error::InvalidCutoff(_) | Error::InvalidAction { .. } | Error::NotAGroup(_) | Error::EmptyModule | Error::DimensionMismatch(_)) => 2,
        Err(Error::NotDefinedAtCutoff { .. } | Error::CutoffExceeded { .. }) => 3,
        Err(_) => 1,
    }
}
