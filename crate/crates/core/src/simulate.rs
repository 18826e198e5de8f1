//! Scenario presets, Monte Carlo trials, threshold sweeps and result files.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{lattice_box, lattice_cube, Element, GroupCtx, GroupKind, Shape};
use crate::overlap::{IdCertificate, OverlapCertifier, OverlapFamily};
use crate::pattern::{Pattern, ProbVector};
use crate::reads::{oracle_identifiable, Instance, DEFAULT_ORACLE_BUDGET};
use crate::rng::trial_rng;
use crate::shells::{NonIdCertificate, ShellTable};

/// Read shapes for the general-shape lattice family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum NamedShape {
    /// `[0, side-1]^d`.
    Cube { side: i64 },
    /// `{x : |x|_1 <= radius}`.
    Diamond { radius: i64 },
    Explicit { cells: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// Cubes on a sparse grid in `Z^d`: `C = ell [0,m]^d`, `K = [0,r-1]^d`,
    /// `CK = [0, R-1]^d` with `R = m ell + r`. Give either `m` or `R`.
    Ex1 {
        d: usize,
        r: i64,
        ell: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<i64>,
        #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
        total: Option<i64>,
    },
    /// General read shapes with `C = [0, n-1]^d`.
    Ex2 { d: usize, n: i64, read_shape: NamedShape },
    /// Word-metric balls: `C = T_{R-r}`, `K = T_r`.
    Ex3 {
        group: GroupKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
        #[serde(rename = "R")]
        big_r: u32,
        r: u32,
    },
    Custom {
        group: GroupKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
        centers: Vec<String>,
        read_shape: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum FamilyChoice {
    /// The family used in the scenario's construction.
    #[default]
    Default,
    /// `{K}`.
    WholeRead,
    /// The default family with each shape cut to its first `size` elements.
    Trimmed { size: usize },
    Explicit { shapes: Vec<Vec<String>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Certificates,
    Oracle,
}

fn default_eps() -> f64 {
    0.1
}

fn default_budget() -> u64 {
    DEFAULT_ORACLE_BUDGET
}

fn is_default<T: Default + PartialEq>(x: &T) -> bool {
    *x == T::default()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub family: Family,
    pub alphabet: usize,
    /// Symbol weights as fractions or decimals.
    pub p: Vec<String>,
    pub trials: u64,
    pub seed: u64,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "is_default")]
    pub overlap_family: FamilyChoice,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default = "default_budget")]
    pub oracle_budget: u64,
}

impl ScenarioConfig {
    /// Uniform-alphabet config for `family`.
    pub fn uniform(family: Family, alphabet: usize, trials: u64, seed: u64) -> Self {
        Self {
            family,
            alphabet,
            p: vec![format!("1/{alphabet}"); alphabet],
            trials,
            seed,
            mode: Mode::Certificates,
            overlap_family: FamilyChoice::Default,
            eps: default_eps(),
            oracle_budget: default_budget(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn prob_vector(&self) -> Result<ProbVector> {
        if self.p.len() != self.alphabet {
            return Err(Error::Config(format!("{} weights for an alphabet of {}", self.p.len(), self.alphabet)));
        }
        ProbVector::parse(&self.p).map_err(|e| Error::Config(e.to_string()))
    }
}

/// An instance built from a config together with its default overlap
/// family and blocking set.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub instance: Instance,
    pub family: OverlapFamily,
    pub blocking_set: Shape,
    pub p: ProbVector,
}

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_set(ctx: &GroupCtx, items: &[String]) -> Result<Shape> {
    Ok(items.iter().map(|s| ctx.parse(s)).collect::<Result<Vec<Element>, _>>()?.into_iter().collect())
}

fn group_ctx(kind: GroupKind, generators: &Option<Vec<String>>) -> Result<GroupCtx> {
    match generators {
        None => Ok(GroupCtx::standard(kind)?),
        Some(gens) => {
            let bare = GroupCtx::without_generators(kind)?;
            let gens = gens.iter().map(|s| bare.parse(s)).collect::<Result<Vec<_>, _>>()?;
            Ok(GroupCtx::with_generators(kind, gens)?)
        }
    }
}

/// `m` for an `Ex1` family, derived from `R` when that is what was given.
pub fn ex1_grid_size(r: i64, ell: i64, m: Option<i64>, total: Option<i64>) -> Result<i64> {
    match (m, total) {
        (Some(m), None) => Ok(m),
        (None, Some(total)) => {
            let span = total - r;
            if span < 0 || span % ell != 0 {
                return Err(cfg_err(format!("R - r = {span} is not a nonnegative multiple of ell = {ell}")));
            }
            Ok(span / ell)
        }
        _ => Err(cfg_err("ex1 needs exactly one of m and R")),
    }
}

pub fn build_instance(cfg: &ScenarioConfig) -> Result<Scenario> {
    let p = cfg.prob_vector()?;
    let q = cfg.alphabet;
    let (instance, default_family, blocking_set) = match &cfg.family {
        Family::Ex1 { d, r, ell, m, total } => {
            let (d, r, ell) = (*d, *r, *ell);
            if d == 0 || ell < 1 {
                return Err(cfg_err("ex1 needs d >= 1 and ell >= 1"));
            }
            if r <= ell {
                return Err(cfg_err(format!("ex1 needs r > ell (r = {r}, ell = {ell}): overlap prisms would be empty")));
            }
            let m = ex1_grid_size(r, ell, *m, *total)?;
            if m < 0 {
                return Err(cfg_err("ex1 needs m >= 0"));
            }
            let ctx = GroupCtx::standard(GroupKind::Lattice { dim: d })?;
            let centers = lattice_box(&vec![0; d], &vec![m; d], ell);
            let k = lattice_cube(d, 0, r - 1);
            let prisms = (0..d)
                .map(|i| {
                    let mut lo = vec![0; d];
                    lo[i] = ell;
                    lattice_box(&lo, &vec![r - 1; d], 1)
                })
                .collect();
            let big_r = m * ell + r;
            let b = lattice_cube(d, r - 1, big_r - r);
            let inst = Instance::new(ctx, centers, k.clone(), q)?;
            (inst, OverlapFamily::new(&k, prisms)?, b)
        }
        Family::Ex2 { d, n, read_shape } => {
            let (d, n) = (*d, *n);
            if d == 0 || n < 1 {
                return Err(cfg_err("ex2 needs d >= 1 and n >= 1"));
            }
            let ctx = GroupCtx::standard(GroupKind::Lattice { dim: d })?;
            let k = match read_shape {
                NamedShape::Cube { side } if *side >= 1 => lattice_cube(d, 0, side - 1),
                NamedShape::Diamond { radius } if *radius >= 0 => ctx.ball(*radius as u32)?,
                NamedShape::Explicit { cells } => parse_set(&ctx, cells)?,
                _ => return Err(cfg_err("invalid read shape size")),
            };
            let int = ctx.interior_1(&k)?;
            if int.is_empty() {
                return Err(cfg_err("the read shape has an empty 1-interior"));
            }
            let diam = ctx.diameter_inf(&k)?;
            let k0 = k.first().expect("nonempty K").clone();
            let b = ctx.translate_set(&k0, &lattice_cube(d, diam, n - 1 - diam))?;
            let inst = Instance::new(ctx, lattice_cube(d, 0, n - 1), k.clone(), q)?;
            (inst, OverlapFamily::new(&k, vec![int])?, b)
        }
        Family::Ex3 { group, generators, big_r, r } => {
            let (big_r, r) = (*big_r, *r);
            if r < 1 || big_r <= r {
                return Err(cfg_err(format!("ex3 needs R > r >= 1 (R = {big_r}, r = {r})")));
            }
            let ctx = group_ctx(*group, generators)?;
            let centers = ctx.ball(big_r - r)?;
            let k = ctx.ball(r)?;
            let int = ctx.interior_t(&k)?;
            if int.is_empty() {
                return Err(cfg_err("the read ball has an empty T-interior"));
            }
            let b = if big_r >= 2 * r { ctx.ball(big_r - 2 * r)? } else { Shape::empty() };
            let inst = Instance::new(ctx, centers, k.clone(), q)?;
            (inst, OverlapFamily::new(&k, vec![int])?, b)
        }
        Family::Custom { group, generators, centers, read_shape } => {
            let ctx = match generators {
                Some(_) => group_ctx(*group, generators)?,
                None => GroupCtx::standard(*group).or_else(|_| GroupCtx::without_generators(*group))?,
            };
            let c = parse_set(&ctx, centers)?;
            let k = parse_set(&ctx, read_shape)?;
            let int = if ctx.generators().is_some() { ctx.interior_t(&k)? } else { Shape::empty() };
            let shape = if int.is_empty() { k.clone() } else { int };
            let inst = Instance::new(ctx, c, k.clone(), q)?;
            let b = inst.ck().clone();
            (inst, OverlapFamily::new(&k, vec![shape])?, b)
        }
    };
    let k = instance.read_shape().clone();
    let family = match &cfg.overlap_family {
        FamilyChoice::Default => default_family,
        FamilyChoice::WholeRead => OverlapFamily::new(&k, vec![k.clone()])?,
        FamilyChoice::Trimmed { size } => default_family.trimmed(*size)?,
        FamilyChoice::Explicit { shapes } => OverlapFamily::new(
            &k,
            shapes.iter().map(|s| parse_set(instance.ctx(), s)).collect::<Result<Vec<_>>>()?,
        )?,
    };
    Ok(Scenario { instance, family, blocking_set, p })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedIdentifiable,
    CertifiedNonIdentifiable,
    Unknown,
    OracleIdentifiable,
    OracleNonIdentifiable,
}

/// Both certificates prepared for one scenario.
pub struct Classifier {
    overlap: OverlapCertifier,
    shells: ShellTable,
}

impl Classifier {
    pub fn new(sc: &Scenario) -> Result<Self> {
        Ok(Self { overlap: OverlapCertifier::new(&sc.instance, &sc.family)?, shells: ShellTable::new(&sc.instance)? })
    }

    pub fn overlap(&self) -> &OverlapCertifier {
        &self.overlap
    }

    pub fn shells(&self) -> &ShellTable {
        &self.shells
    }

    /// Certificate verdict; both certificates firing is an error.
    pub fn classify(&self, w: &Pattern) -> Result<Verdict> {
        let id = self.overlap.certify(w.symbols());
        let nonid = self.shells.certify(w.symbols());
        match (id, nonid) {
            (IdCertificate::Certified, NonIdCertificate::Certified(pair)) => Err(Error::Conflict(format!(
                "pattern {w} is certified both ways (blocking pair at positions {} and {})",
                pair.a_index, pair.b_index
            ))),
            (IdCertificate::Certified, _) => Ok(Verdict::CertifiedIdentifiable),
            (_, NonIdCertificate::Certified(_)) => Ok(Verdict::CertifiedNonIdentifiable),
            _ => Ok(Verdict::Unknown),
        }
    }
}

/// Scenario parameters as they appear in result tables.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub family: String,
    pub group: String,
    pub d: Option<usize>,
    pub m: Option<i64>,
    pub r: Option<i64>,
    pub ell: Option<i64>,
    #[serde(rename = "R")]
    pub big_r: Option<i64>,
    pub n: Option<i64>,
    pub alphabet: usize,
}

impl Params {
    pub fn of(cfg: &ScenarioConfig) -> Result<Self> {
        let mut p = Params { alphabet: cfg.alphabet, ..Default::default() };
        match &cfg.family {
            Family::Ex1 { d, r, ell, m, total } => {
                let m = ex1_grid_size(*r, *ell, *m, *total)?;
                p.family = "ex1".into();
                p.group = GroupKind::Lattice { dim: *d }.to_string();
                p.d = Some(*d);
                p.m = Some(m);
                p.r = Some(*r);
                p.ell = Some(*ell);
                p.big_r = Some(m * ell + r);
            }
            Family::Ex2 { d, n, read_shape } => {
                p.family = "ex2".into();
                p.group = GroupKind::Lattice { dim: *d }.to_string();
                p.d = Some(*d);
                p.n = Some(*n);
                p.r = match read_shape {
                    NamedShape::Cube { side } => Some(*side),
                    NamedShape::Diamond { radius } => Some(*radius),
                    NamedShape::Explicit { .. } => None,
                };
            }
            Family::Ex3 { group, big_r, r, .. } => {
                p.family = "ex3".into();
                p.group = group.to_string();
                p.r = Some(*r as i64);
                p.big_r = Some(*big_r as i64);
            }
            Family::Custom { group, .. } => {
                p.family = "custom".into();
                p.group = group.to_string();
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    #[serde(flatten)]
    pub params: Params,
    pub trials: u64,
    pub seed: u64,
    pub n_cert_id: u64,
    pub n_cert_nonid: u64,
    pub n_unknown: u64,
    pub p_id_lo: f64,
    pub p_id_hi: f64,
    pub lambda_ratio: f64,
    pub lambda_c: f64,
    pub wall_ms: u64,
}

impl ResultRow {
    /// Fields in `CSV_COLUMNS` order; missing parameters are empty.
    pub fn csv_record(&self) -> Vec<String> {
        fn opt<T: ToString>(x: &Option<T>) -> String {
            x.as_ref().map(T::to_string).unwrap_or_default()
        }
        let p = &self.params;
        vec![
            p.family.clone(),
            p.group.clone(),
            opt(&p.d),
            opt(&p.m),
            opt(&p.r),
            opt(&p.ell),
            opt(&p.big_r),
            opt(&p.n),
            p.alphabet.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
            self.n_cert_id.to_string(),
            self.n_cert_nonid.to_string(),
            self.n_unknown.to_string(),
            self.p_id_lo.to_string(),
            self.p_id_hi.to_string(),
            self.lambda_ratio.to_string(),
            self.lambda_c.to_string(),
            self.wall_ms.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimateResult {
    pub config: ScenarioConfig,
    pub row: ResultRow,
    pub verdicts: Vec<Verdict>,
}

const Z95: f64 = 1.959_963_984_540_054;

/// 95% Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let (k, n) = (k as f64, n as f64);
    let ph = k / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (ph + z2 / (2.0 * n)) / denom;
    let half = Z95 * (ph * (1.0 - ph) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if k == 0.0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if k == n { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(pool.install(f))
}

/// Runs `cfg.trials` independent trials. `threads = 0` uses every core.
/// Trial `i` samples from `trial_rng(cfg.seed, i)`, so the result does not
/// depend on the thread count.
pub fn run_trials(cfg: &ScenarioConfig, threads: usize) -> Result<EstimateResult> {
    let start = Instant::now();
    let sc = build_instance(cfg)?;
    let params = Params::of(cfg)?;
    let inst = &sc.instance;
    let ck = inst.ck();
    if cfg.mode == Mode::Oracle && cfg.trials > 0 {
        let space = (cfg.alphabet as f64).powi(ck.len() as i32);
        if space > cfg.oracle_budget as f64 {
            return Err(Error::BudgetExceeded { limit: cfg.oracle_budget });
        }
    }
    let classifier = if cfg.trials > 0 { Some(Classifier::new(&sc)?) } else { None };
    let verdicts: Vec<Verdict> = with_pool(threads, || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let classifier = classifier.as_ref().expect("built when trials > 0");
                let w = Pattern::sample(&mut trial_rng(cfg.seed, t), ck, &sc.p);
                let cert = classifier.classify(&w).map_err(|e| match e {
                    Error::Conflict(msg) => Error::Conflict(format!("trial {t}: {msg}")),
                    e => e,
                })?;
                if cfg.mode == Mode::Certificates {
                    return Ok(cert);
                }
                let exact = oracle_identifiable(inst, &w, cfg.oracle_budget)?.is_identifiable();
                match (cert, exact) {
                    (Verdict::CertifiedIdentifiable, false) | (Verdict::CertifiedNonIdentifiable, true) => {
                        Err(Error::Conflict(format!("trial {t}: certificate disagrees with the oracle on {w}")))
                    }
                    (_, true) => Ok(Verdict::OracleIdentifiable),
                    (_, false) => Ok(Verdict::OracleNonIdentifiable),
                }
            })
            .collect::<Result<Vec<_>>>()
    })??;

    let count = |f: &dyn Fn(&Verdict) -> bool| verdicts.iter().filter(|v| f(v)).count() as u64;
    let n_cert_id = count(&|v| matches!(v, Verdict::CertifiedIdentifiable | Verdict::OracleIdentifiable));
    let n_cert_nonid = count(&|v| matches!(v, Verdict::CertifiedNonIdentifiable | Verdict::OracleNonIdentifiable));
    let n_unknown = count(&|v| *v == Verdict::Unknown);
    let (p_id_lo, _) = wilson_interval(n_cert_id, cfg.trials);
    let (_, p_id_hi) = wilson_interval(n_cert_id + n_unknown, cfg.trials);
    let row = ResultRow {
        params,
        trials: cfg.trials,
        seed: cfg.seed,
        n_cert_id,
        n_cert_nonid,
        n_unknown,
        p_id_lo,
        p_id_hi,
        lambda_ratio: inst.read_shape().len() as f64 / (ck.len() as f64).ln(),
        lambda_c: sc.p.lambda_c(),
        wall_ms: start.elapsed().as_millis() as u64,
    };
    Ok(EstimateResult { config: cfg.clone(), row, verdicts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    /// Read size `r`.
    ReadSize,
    /// Observable size `R`.
    Total,
    GridSize,
    Spacing,
    Alphabet,
}

impl std::str::FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(SweepParam::ReadSize),
            "R" => Ok(SweepParam::Total),
            "m" => Ok(SweepParam::GridSize),
            "ell" => Ok(SweepParam::Spacing),
            "alphabet" => Ok(SweepParam::Alphabet),
            _ => Err(Error::InvalidArgument(format!("unknown sweep parameter {s:?} (use r, R, m, ell, alphabet)"))),
        }
    }
}

/// `cfg` with one parameter replaced. For `ex1`, changing `r` keeps
/// whichever of `m` and `R` the config fixes. Changing the alphabet resets
/// `p` to uniform.
pub fn with_param(cfg: &ScenarioConfig, param: SweepParam, value: i64) -> Result<ScenarioConfig> {
    let mut out = cfg.clone();
    let bad = || Error::InvalidArgument(format!("parameter {param:?} does not apply to this family"));
    let nonneg = |v: i64| u32::try_from(v).map_err(|_| Error::InvalidArgument(format!("{v} is out of range")));
    match (param, &mut out.family) {
        (SweepParam::ReadSize, Family::Ex1 { r, .. }) => *r = value,
        (SweepParam::ReadSize, Family::Ex3 { r, .. }) => *r = nonneg(value)?,
        (SweepParam::ReadSize, Family::Ex2 { read_shape: NamedShape::Cube { side }, .. }) => *side = value,
        (SweepParam::ReadSize, Family::Ex2 { read_shape: NamedShape::Diamond { radius }, .. }) => *radius = value,
        (SweepParam::Total, Family::Ex1 { m, total, .. }) => {
            *m = None;
            *total = Some(value);
        }
        (SweepParam::Total, Family::Ex3 { big_r, .. }) => *big_r = nonneg(value)?,
        (SweepParam::GridSize, Family::Ex1 { m, total, .. }) => {
            *m = Some(value);
            *total = None;
        }
        (SweepParam::Spacing, Family::Ex1 { ell, .. }) => *ell = value,
        (SweepParam::Alphabet, _) => {
            let q = usize::try_from(value).map_err(|_| Error::InvalidArgument("bad alphabet size".into()))?;
            out.alphabet = q;
            out.p = vec![format!("1/{q}"); q];
        }
        _ => return Err(bad()),
    }
    Ok(out)
}

pub fn sweep(cfg: &ScenarioConfig, param: SweepParam, values: &[i64], threads: usize) -> Result<Vec<EstimateResult>> {
    values.iter().map(|&v| run_trials(&with_param(cfg, param, v)?, threads)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonRun {
    config: ScenarioConfig,
    #[serde(flatten)]
    row: ResultRow,
}

pub fn write_results<W: Write>(results: &[EstimateResult], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for r in results {
                w.write_record(r.row.csv_record())?;
            }
            w.flush()?;
        }
        Format::Json => {
            let runs: Vec<JsonRun> =
                results.iter().map(|r| JsonRun { config: r.config.clone(), row: r.row.clone() }).collect();
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &serde_json::json!({ "runs": runs }))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Header of the CSV output.
pub const CSV_COLUMNS: [&str; 19] = [
    "family",
    "group",
    "d",
    "m",
    "r",
    "ell",
    "R",
    "n",
    "alphabet",
    "trials",
    "seed",
    "n_cert_id",
    "n_cert_nonid",
    "n_unknown",
    "p_id_lo",
    "p_id_hi",
    "lambda_ratio",
    "lambda_c",
    "wall_ms",
];

/// Writes `results` to `path` (or stdout for `-`).
pub fn emit(results: &[EstimateResult], format: Format, path: &Path) -> Result<()> {
    if path == Path::new("-") {
        return write_results(results, format, std::io::stdout().lock());
    }
    let file = std::fs::File::create(path)?;
    write_results(results, format, std::io::BufWriter::new(file))
}

/// Reads back the configs embedded in a JSON result file.
pub fn configs_from_json(text: &str) -> Result<Vec<ScenarioConfig>> {
    #[derive(Deserialize)]
    struct Doc {
        runs: Vec<JsonRun>,
    }
    let doc: Doc = serde_json::from_str(text)?;
    Ok(doc.runs.into_iter().map(|r| r.config).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1(m: i64, r: i64, ell: i64) -> Family {
        Family::Ex1 { d: 1, r, ell, m: Some(m), total: None }
    }

    #[test]
    fn ex1_preset() {
        let cfg = ScenarioConfig::uniform(ex1(10, 3, 1), 2, 0, 0);
        let sc = build_instance(&cfg).unwrap();
        assert_eq!(sc.instance.centers(), &lattice_cube(1, 0, 10));
        assert_eq!(sc.instance.read_shape(), &lattice_cube(1, 0, 2));
        assert_eq!(sc.instance.ck(), &lattice_cube(1, 0, 12));
        assert_eq!(sc.family.shapes(), &[lattice_cube(1, 1, 2)]);
        assert!(build_instance(&ScenarioConfig::uniform(ex1(10, 1, 1), 2, 0, 0)).is_err());
    }

    #[test]
    fn ex1_two_dimensional_prisms() {
        let cfg = ScenarioConfig::uniform(Family::Ex1 { d: 2, r: 4, ell: 2, m: Some(3), total: None }, 2, 0, 0);
        let sc = build_instance(&cfg).unwrap();
        assert_eq!(sc.family.len(), 2);
        for f in sc.family.shapes() {
            assert_eq!(f.len(), 4 * (4 - 2));
        }
        assert_eq!(sc.instance.ck(), &lattice_cube(2, 0, 3 * 2 + 4 - 1));
    }

    #[test]
    fn ex3_free_group_sizes() {
        let cfg = ScenarioConfig::uniform(
            Family::Ex3 { group: GroupKind::Free { rank: 2 }, generators: None, big_r: 3, r: 1 },
            2,
            0,
            0,
        );
        let sc = build_instance(&cfg).unwrap();
        assert_eq!(sc.instance.centers().len(), 17);
        assert_eq!(sc.instance.read_shape().len(), 5);
        assert_eq!(sc.instance.ck().len(), 53);
        assert_eq!(sc.blocking_set.len(), 5);
    }

    #[test]
    fn ex2_blocking_set() {
        let cfg = ScenarioConfig::uniform(
            Family::Ex2 { d: 1, n: 20, read_shape: NamedShape::Cube { side: 4 } },
            2,
            0,
            0,
        );
        let sc = build_instance(&cfg).unwrap();
        assert_eq!(sc.blocking_set, lattice_cube(1, 3, 16));
        assert_eq!(sc.family.shapes(), &[lattice_cube(1, 1, 2)]);
    }

    #[test]
    fn zero_trials() {
        let r = run_trials(&ScenarioConfig::uniform(ex1(10, 3, 1), 2, 0, 5), 1).unwrap();
        assert!(r.verdicts.is_empty());
        assert_eq!((r.row.n_cert_id, r.row.n_cert_nonid, r.row.n_unknown), (0, 0, 0));
    }

    #[test]
    fn counts_add_up_and_are_reproducible() {
        let cfg = ScenarioConfig::uniform(ex1(60, 6, 1), 2, 200, 11);
        let a = run_trials(&cfg, 1).unwrap();
        let b = run_trials(&cfg, 3).unwrap();
        assert_eq!(a.verdicts, b.verdicts);
        assert_eq!(a.row.n_cert_id + a.row.n_cert_nonid + a.row.n_unknown, 200);
    }

    #[test]
    fn wilson() {
        let (lo, hi) = wilson_interval(0, 10);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.2 && hi < 0.35);
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
    }

    #[test]
    fn config_json_fixpoint() {
        let mut cfg = ScenarioConfig::uniform(Family::Ex1 { d: 1, r: 8, ell: 1, m: None, total: Some(5000) }, 2, 10, 3);
        cfg.overlap_family = FamilyChoice::Trimmed { size: 5 };
        let text = cfg.to_json();
        let back = ScenarioConfig::from_json(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.to_json(), text);
        assert!(ScenarioConfig::from_json("{\"family\": 3}").is_err());
    }

    #[test]
    fn sweep_parameters() {
        let cfg = ScenarioConfig::uniform(Family::Ex1 { d: 1, r: 8, ell: 1, m: None, total: Some(100) }, 2, 0, 3);
        let c = with_param(&cfg, SweepParam::ReadSize, 12).unwrap();
        assert_eq!(Params::of(&c).unwrap().big_r, Some(100));
        let c = with_param(&cfg, SweepParam::Alphabet, 4).unwrap();
        assert_eq!(c.p, vec!["1/4"; 4]);
        assert!("q".parse::<SweepParam>().is_err());
        let rows = sweep(&cfg, SweepParam::ReadSize, &[10], 1).unwrap();
        assert_eq!(rows.len(), 1);
    }

    #[test]
    fn csv_has_expected_header() {
        let r = run_trials(&ScenarioConfig::uniform(ex1(10, 3, 1), 2, 4, 5), 1).unwrap();
        let mut buf = Vec::new();
        write_results(&[r], Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(header, CSV_COLUMNS.join(","));
        assert_eq!(text.lines().count(), 2);
    }
}
