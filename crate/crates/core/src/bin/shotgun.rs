use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use shotgun_core::overlap::{check_I_conditions, identifiability_lower_bound, IdCertificate, NotCertifiedReason, OverlapCertifier};
use shotgun_core::pattern::parse_pattern_text;
use shotgun_core::probability::{
    exact_repeat_prob, exact_repeat_prob_rational, exceptional_upper_bound, orbit_decomposition, repeat_prob_bounds,
    rs_lower_bound,
};
use shotgun_core::reads::{oracle_identifiable, OracleVerdict};
use shotgun_core::shells::{check_N_conditions, dsc_greedy, NonIdCertificate, ShellTable};
use shotgun_core::simulate::{
    build_instance, emit, run_trials, sweep, Family, Format, Mode, NamedShape, ScenarioConfig, SweepParam,
};
use shotgun_core::{Error, GroupCtx, GroupKind, ProbVector, Shape};

/// Shotgun identification of random patterns on groups.
#[derive(Parser)]
#[command(name = "shotgun", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run both certificates on one pattern.
    Certify {
        /// Pattern file: alphabet size, then `element : symbol` lines.
        pattern: PathBuf,
        #[arg(long)]
        config: PathBuf,
    },
    /// Decide identifiability of one pattern exactly.
    Oracle {
        pattern: PathBuf,
        #[arg(long)]
        config: PathBuf,
    },
    /// Exact probability that a random pattern repeats on A under a shift.
    ExactRepeat {
        /// Group: Z^d, Z_m, F_k or H3.
        #[arg(long)]
        group: String,
        /// Elements of A separated by `;`.
        #[arg(long)]
        set: String,
        #[arg(long)]
        shift: String,
        /// Symbol weights separated by commas, e.g. `1/2,1/2`.
        #[arg(long)]
        p: String,
    },
    /// Condition checks and bound values for a scenario.
    Bounds {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Monte Carlo estimate for a scenario.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Repeat `simulate` over a list of parameter values.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// One of r, R, m, ell, alphabet.
        #[arg(long)]
        param: String,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<i64>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Print (or run) a preset scenario config.
    Scenario {
        #[arg(value_enum)]
        which: Preset,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 8)]
        r: i64,
        #[arg(long = "R", default_value_t = 5000)]
        big_r: i64,
        #[arg(long, default_value_t = 1)]
        ell: i64,
        #[arg(long, default_value_t = 100)]
        n: i64,
        #[arg(long, default_value = "F_2")]
        group: String,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        /// Run the scenario instead of printing its config.
        #[arg(long)]
        run: bool,
        #[command(flatten)]
        opts: RunOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Ex1,
    Ex2,
    Ex3,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Certificates,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct RunOpts {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Output path; `-` for stdout.
    #[arg(long, default_value = "-")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    eps: Option<f64>,
}

impl RunOpts {
    fn apply(&self, cfg: &mut ScenarioConfig) {
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(m) = self.mode {
            cfg.mode = match m {
                ModeArg::Certificates => Mode::Certificates,
                ModeArg::Oracle => Mode::Oracle,
            };
        }
        if let Some(e) = self.eps {
            cfg.eps = e;
        }
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn read_pattern(path: &PathBuf, ctx: &GroupCtx) -> Result<shotgun_core::Pattern, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    Ok(parse_pattern_text(ctx, &text)?.1)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Certify { pattern, config } => {
            let cfg = ScenarioConfig::load(&config)?;
            let sc = build_instance(&cfg)?;
            let inst = &sc.instance;
            let w = read_pattern(&pattern, inst.ctx())?;
            let sym = inst.check_pattern(&w)?;
            let id = OverlapCertifier::new(inst, &sc.family)?.certify(sym);
            let nonid = ShellTable::new(inst)?.certify(sym);
            let id_json = match &id {
                IdCertificate::Certified => json!("certified"),
                IdCertificate::NotCertified(NotCertifiedReason::Disconnected) => {
                    json!({ "not_certified": "disconnected overlap graph" })
                }
                IdCertificate::NotCertified(NotCertifiedReason::DuplicateTranslate { shape, first, second }) => {
                    json!({ "not_certified": {
                        "duplicate_translate": { "shape": shape, "first": inst.ctx().format(first), "second": inst.ctx().format(second) }
                    } })
                }
            };
            let nonid_json = match &nonid {
                NonIdCertificate::Certified(pair) => json!({
                    "certified": {
                        "a": inst.ctx().format(&pair.a),
                        "b": inst.ctx().format(&pair.b),
                        "swap_witness": pair.swap_witness(&w).to_string(),
                    }
                }),
                NonIdCertificate::NotCertified => json!("not_certified"),
            };
            if id.is_certified() && nonid.is_certified() {
                return Err(Error::Conflict(format!("pattern {w} is certified both ways")));
            }
            print_json(&json!({ "identifiable": id_json, "non_identifiable": nonid_json }));
        }
        Cmd::Oracle { pattern, config } => {
            let cfg = ScenarioConfig::load(&config)?;
            let sc = build_instance(&cfg)?;
            let w = read_pattern(&pattern, sc.instance.ctx())?;
            match oracle_identifiable(&sc.instance, &w, cfg.oracle_budget)? {
                OracleVerdict::Identifiable => print_json(&json!({ "verdict": "identifiable" })),
                OracleVerdict::NonIdentifiable { witness } => print_json(&json!({
                    "verdict": "non_identifiable",
                    "witness": witness.to_string(),
                })),
            }
        }
        Cmd::ExactRepeat { group, set, shift, p } => {
            let kind: GroupKind = group.parse().map_err(|e: shotgun_core::group::GroupError| Error::Config(e.to_string()))?;
            let ctx = GroupCtx::standard(kind).or_else(|_| GroupCtx::without_generators(kind))?;
            let a: Shape = set
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| ctx.parse(s))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .collect();
            let g = ctx.parse(&shift)?;
            let weights: Vec<&str> = p.split(',').collect();
            let pv = ProbVector::parse(&weights).map_err(|e| Error::Config(e.to_string()))?;
            let orbits = orbit_decomposition(&ctx, &a, &g)?;
            let bounds = repeat_prob_bounds(&ctx, &a, &g, &pv).ok();
            print_json(&json!({
                "orbit_sizes": orbits.sizes(),
                "exact": exact_repeat_prob_rational(&ctx, &a, &g, &pv)?.to_string(),
                "value": exact_repeat_prob(&ctx, &a, &g, &pv)?,
                "bounds": bounds,
            }));
        }
        Cmd::Bounds { config, eps } => {
            let cfg = ScenarioConfig::load(&config)?;
            let eps = eps.unwrap_or(cfg.eps);
            let sc = build_instance(&cfg)?;
            let inst = &sc.instance;
            let d = dsc_greedy(inst, &sc.blocking_set)?;
            let rs = rs_lower_bound(inst, &d, &sc.p).map_err(|e| e.to_string());
            print_json(&json!({
                "ck": inst.ck().len(),
                "k": inst.read_shape().len(),
                "lambda_ratio": inst.read_shape().len() as f64 / (inst.ck().len() as f64).ln(),
                "lambda_c": sc.p.lambda_c(),
                "i_conditions": check_I_conditions(inst, &sc.family, &sc.p, eps)?,
                "n_conditions": check_N_conditions(inst, &sc.blocking_set, &sc.p, eps)?,
                "identifiability_lower_bound": identifiability_lower_bound(inst, &sc.family, &sc.p)?,
                "exceptional_upper_bound": exceptional_upper_bound(inst, &sc.p),
                "dsc_size": d.len(),
                "rs_lower_bound": match rs { Ok(b) => json!(b), Err(e) => json!({ "unavailable": e }) },
            }));
        }
        Cmd::Simulate { config, run } => {
            let mut cfg = ScenarioConfig::load(&config)?;
            run.apply(&mut cfg);
            let res = run_trials(&cfg, run.threads)?;
            emit(&[res], run.format(), &run.out)?;
        }
        Cmd::Sweep { config, param, values, run } => {
            let mut cfg = ScenarioConfig::load(&config)?;
            run.apply(&mut cfg);
            let param: SweepParam = param.parse().map_err(|e: Error| Error::Config(e.to_string()))?;
            let rows = sweep(&cfg, param, &values, run.threads)?;
            emit(&rows, run.format(), &run.out)?;
        }
        Cmd::Scenario { which, d, r, big_r, ell, n, group, alphabet, run, opts } => {
            let family = match which {
                Preset::Ex1 => Family::Ex1 { d, r, ell, m: None, total: Some(big_r) },
                Preset::Ex2 => Family::Ex2 { d, n, read_shape: NamedShape::Cube { side: r } },
                Preset::Ex3 => Family::Ex3 {
                    group: group.parse().map_err(|e: shotgun_core::group::GroupError| Error::Config(e.to_string()))?,
                    generators: None,
                    big_r: u32::try_from(big_r).map_err(|_| Error::Config("R out of range".into()))?,
                    r: u32::try_from(r).map_err(|_| Error::Config("r out of range".into()))?,
                },
            };
            let mut cfg = ScenarioConfig::uniform(family, alphabet, 100, 1);
            opts.apply(&mut cfg);
            if run {
                let res = run_trials(&cfg, opts.threads)?;
                emit(&[res], opts.format(), &opts.out)?;
            } else {
                build_instance(&cfg)?;
                println!("{}", cfg.to_json());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_)
                | Error::InvalidArgument(_)
                | Error::InvalidProbability(_)
                | Error::InvalidPattern(_)
                | Error::ShapeMismatch(_)
                | Error::Group(_)
                | Error::Json(_) => 2,
                Error::BudgetExceeded { .. } => 3,
                Error::Conflict(_) => 4,
                Error::Io(_) | Error::Csv(_) => 1,
            })
        }
    }
}
