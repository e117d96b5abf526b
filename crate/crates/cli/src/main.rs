mod cache;
mod input;
mod scan;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use equigen_core::groebner::{check_t, witness_verify, GProblem, Verdict};
use equigen_core::lifting::{
    build_basis_i, build_star_system, deform_verdict, lift_run, star_satisfied, DeformVerdict, LiftReport,
    NoPerturbation, PerturbationProvider, SingularConfig, TermTable, VerdictInput,
};
use equigen_core::rational::{format_rational, parse_rational_list};
use equigen_core::series::{order_bound_audit, pm_identity_check, pm_required_smax, reparam_solve, PmVerdict};
use equigen_core::{Budget, Expansion, GVerdict, LocalModel, MPoly, SigmaModel, TSeries, ENGINE_VERSION};
use serde_json::{json, Value};

use crate::cache::Cache;

#[derive(Parser)]
#[command(name = "equigen", version, about = "Obstruction polynomials, (G)/(T) checks and t-adic lifting for singular branches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Md,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
}

impl ModelArgs {
    fn model(&self) -> Result<LocalModel> {
        Ok(LocalModel::new(self.a, self.b)?)
    }
}

#[derive(Args, Clone)]
struct CacheArgs {
    /// Directory for cached (G) verdicts.
    #[arg(long, env = "EQUIGEN_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

impl CacheArgs {
    fn open(&self) -> Result<Option<Cache>> {
        if self.no_cache {
            return Ok(None);
        }
        match self.cache_dir.clone().or_else(Cache::default_dir) {
            Some(dir) => Ok(Some(Cache::open(&dir)?)),
            None => Ok(None),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print generated polynomials.
    Gen {
        what: GenKind,
        #[command(flatten)]
        model: ModelArgs,
        /// `F_{-n}` or `f̄_{b+n}`; all of them when omitted.
        #[arg(long)]
        n: Option<u32>,
        /// Index bound for `f`, `theta`, `gamma`.
        #[arg(long)]
        m: Option<u32>,
        /// Numerator of the exponent `β/a` for `f` (defaults to `b`).
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<i64>,
        /// With `theta`: print `Θ^{(l)}_i` instead of `θ_i`.
        #[arg(long, allow_hyphen_values = true)]
        l: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check condition (T) at a point or condition (G).
    Check {
        condition: Condition,
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated `c_2, …, c_a`.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        index: Option<u32>,
        #[arg(long)]
        budget_secs: Option<f64>,
        #[command(flatten)]
        cache: CacheArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check (G) over a grid of (a, b).
    Scan {
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        #[arg(long, default_value_t = 3)]
        a_min: u32,
        #[arg(long, default_value_t = 4)]
        a_max: u32,
        #[arg(long, default_value_t = 3)]
        b_min: u32,
        #[arg(long, default_value_t = 9)]
        b_max: u32,
        /// Wall-clock budget per (a, b, i).
        #[arg(long)]
        budget_secs: Option<f64>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Include per-index timings (JSON only).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        cache: CacheArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Solve the change of parameter between consecutive levels.
    Reparam {
        #[command(flatten)]
        model: ModelArgs,
        /// Truncation `K` in `t`.
        #[arg(long)]
        k: usize,
        /// `c_2(N); …; c_a(N)`, each as comma-separated coefficients of `t^0, t^1, …`.
        #[arg(long, allow_hyphen_values = true)]
        cn: String,
        /// `c_2(N+1); …; c_a(N+1)`.
        #[arg(long, allow_hyphen_values = true)]
        cn1: String,
        #[arg(long)]
        smax: Option<usize>,
        /// Coefficients of `s^{b+1}, s^{b+2}, …` in the branch, for the ± identity.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        g0: String,
        /// Also check the ± identity.
        #[arg(long)]
        pm: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build or evaluate the star systems of a configuration.
    Star {
        action: StarAction,
        #[arg(long)]
        input: PathBuf,
        /// Per-point coordinates: blocks separated by `;`, coordinates by `,`.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the order-by-order construction at one singular point.
    Lift {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
        /// Truncation `K` in `t`.
        #[arg(long)]
        k: usize,
        /// JSON file with perturbation terms.
        #[arg(long)]
        terms: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide deformability of a configuration.
    Verdict {
        #[arg(long)]
        input: PathBuf,
        /// Budget for each (G) check.
        #[arg(long, default_value_t = 120.0)]
        budget_secs: f64,
        #[command(flatten)]
        cache: CacheArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Quick internal consistency checks.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Remove every cached verdict.
    PurgeCache {
        #[command(flatten)]
        cache: CacheArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    F,
    #[value(name = "F")]
    BigF,
    Fbar,
    Jacbar,
    Theta,
    Gamma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Condition {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "G", alias = "g")]
    G,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StarAction {
    Build,
    Check,
}

/// 0 success or positive verdict, 1 negative verdict, 2 error, timeout or no decision.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Ok = 0,
    Negative = 1,
    Undecided = 2,
}

fn main() -> ExitCode {
    // Exit quietly when the reader of a pipe goes away.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(s) => ExitCode::from(s as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Gen { what, model, n, m, beta, l, format } => cmd_gen(what, &model.model()?, n, m, beta, l, format),
        Command::Check { condition, model, point, index, budget_secs, cache, format } => {
            let model = model.model()?;
            match condition {
                Condition::T => {
                    let Some(p) = point else { bail!("check T needs --point") };
                    cmd_check_t(&model, &p, format)
                }
                Condition::G => cmd_check_g(&model, index, point.as_deref(), budget_secs, &cache, format),
            }
        }
        Command::Scan { a, b, a_min, a_max, b_min, b_max, budget_secs, jobs, timings, cache, format } => {
            let (a_min, a_max) = a.map_or((a_min, a_max), |x| (x, x));
            let (b_min, b_max) = b.map_or((b_min, b_max), |x| (x, x));
            if let (Some(a), Some(b)) = (a, b) {
                LocalModel::new(a, b)?;
            }
            let cells = scan::grid(a_min, a_max, b_min, b_max);
            if cells.is_empty() {
                bail!("the grid a in [{a_min}, {a_max}], b in [{b_min}, {b_max}] has no admissible cell");
            }
            let jobs = if jobs == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { jobs };
            let rows = scan::run(&cells, budget_secs, jobs, cache.open()?.as_ref(), timings)?;
            let out = match format {
                Format::Text => scan::to_text(&rows),
                Format::Csv => scan::to_csv(&rows),
                Format::Md => scan::to_markdown(&rows),
                Format::Json => {
                    serde_json::to_string_pretty(&json!({ "engine": ENGINE_VERSION, "rows": rows }))? + "\n"
                }
            };
            print!("{out}");
            Ok(if rows.iter().any(|r| r.verdict == Verdict::Timeout) { Status::Undecided } else { Status::Ok })
        }
        Command::Reparam { model, k, cn, cn1, smax, g0, pm, format } => {
            cmd_reparam(&model.model()?, k, &cn, &cn1, smax, &g0, pm, format)
        }
        Command::Star { action, input, point, format } => cmd_star(action, &input, point.as_deref(), format),
        Command::Lift { model, witness, k, terms, format } => cmd_lift(&model.model()?, &witness, k, terms, format),
        Command::Verdict { input, budget_secs, cache, format } => cmd_verdict(&input, budget_secs, &cache, format),
        Command::Selftest { seed, format } => cmd_selftest(seed, format),
        Command::PurgeCache { cache } => {
            match cache.open()? {
                Some(c) => println!("removed {} entries from {}", c.purge()?, c.dir().display()),
                None => println!("no cache directory configured"),
            }
            Ok(Status::Ok)
        }
    }
}

fn only_text_or_json(format: Format, what: &str) -> Result<()> {
    if matches!(format, Format::Csv | Format::Md) {
        bail!("{what} supports --format text or json");
    }
    Ok(())
}

fn model_json(m: &LocalModel) -> Value {
    json!({ "a": m.a, "b": m.b })
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn cmd_gen(
    what: GenKind,
    model: &LocalModel,
    n: Option<u32>,
    m: Option<u32>,
    beta: Option<i64>,
    l: Option<i64>,
    format: Format,
) -> Result<Status> {
    only_text_or_json(format, "gen")?;
    let a = model.a;
    let upto = m.unwrap_or(a) as usize;
    let e = Expansion::new(*model, upto.max(a as usize));
    let pick = |n: Option<u32>| -> Vec<u32> { n.map_or_else(|| (1..a).collect(), |x| vec![x]) };
    let mut polys: Vec<(String, MPoly)> = Vec::new();
    match what {
        GenKind::BigF => {
            for n in pick(n) {
                polys.push((format!("F_-{n}"), e.big_f(n)?));
            }
        }
        GenKind::Fbar => {
            for j in pick(n) {
                polys.push((format!("fbar_{}", model.b + j), e.f_bar(j)?));
            }
        }
        GenKind::Jacbar => polys.push(("Jacbar".into(), e.jac_bar()?)),
        GenKind::F => {
            let beta = beta.unwrap_or(model.b as i64);
            let Some(m) = m else { bail!("gen f needs --m (the index of f^(beta)_m)") };
            polys.push((format!("f^({beta}/{a})_{m}"), e.f(beta, m as i64)));
        }
        GenKind::Theta => match l {
            Some(l) if l < 0 => {
                for i in 0..=upto {
                    polys.push((format!("Theta^({l})_{i}"), e.theta_cap(l, i)?));
                }
            }
            Some(l) => bail!("--l must be negative, got {l}"),
            None => {
                for i in 2..=upto {
                    polys.push((format!("theta_{i}"), e.theta(i).clone()));
                }
            }
        },
        GenKind::Gamma => {
            for i in 2..=upto {
                polys.push((format!("gamma_{i}"), e.gamma(i).clone()));
            }
        }
    }
    match format {
        Format::Json => print_json(&json!({
            "command": "gen",
            "model": model_json(model),
            "polynomials": polys.iter().map(|(name, p)| json!({
                "name": name,
                "text": p.to_text(),
                "poly": p.to_json(),
            })).collect::<Vec<_>>(),
        }))?,
        _ => {
            for (name, p) in &polys {
                println!("{name} = {p}");
            }
        }
    }
    Ok(Status::Ok)
}

fn cmd_check_t(model: &LocalModel, point: &str, format: Format) -> Result<Status> {
    only_text_or_json(format, "check T")?;
    let p = input::point(point, model.dim())?;
    let holds = check_t(model, &p)?;
    match format {
        Format::Json => print_json(&json!({
            "command": "check",
            "condition": "T",
            "model": model_json(model),
            "point": p.iter().map(format_rational).collect::<Vec<_>>(),
            "verdict": if holds { "holds" } else { "fails" },
        }))?,
        _ => println!("(T) at {model}, c = ({}): {}", point, if holds { "holds" } else { "fails" }),
    }
    Ok(if holds { Status::Ok } else { Status::Negative })
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Holds => Status::Ok,
        Verdict::Fails => Status::Negative,
        Verdict::Timeout => Status::Undecided,
    }
}

/// All indices of (G), through the cache.
fn g_verdict(model: &LocalModel, budget: &Budget, cache: Option<&Cache>) -> Result<GVerdict> {
    let start = std::time::Instant::now();
    let problem = GProblem::new(model)?;
    let mut indices = BTreeMap::new();
    for i in 1..model.a {
        let left = Budget { wall: budget.wall.map(|w| w.saturating_sub(start.elapsed())), max_pairs: budget.max_pairs };
        indices.insert(i, scan::check_index(&problem, i, &left, cache)?.0);
    }
    Ok(GVerdict {
        model: *model,
        verdict: equigen_core::groebner::aggregate(indices.values().map(|d| d.verdict)),
        indices,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn cmd_check_g(
    model: &LocalModel,
    index: Option<u32>,
    witness: Option<&str>,
    budget_secs: Option<f64>,
    cache: &CacheArgs,
    format: Format,
) -> Result<Status> {
    only_text_or_json(format, "check G")?;
    if let Some(w) = witness {
        let Some(i) = index else { bail!("a witness check needs --index") };
        let p = input::point(w, model.dim())?;
        let ok = witness_verify(model, i, &p)?;
        match format {
            Format::Json => print_json(&json!({
                "command": "check",
                "condition": "G",
                "model": model_json(model),
                "index": i,
                "witness": p.iter().map(format_rational).collect::<Vec<_>>(),
                "verdict": if ok { "holds" } else { "fails" },
            }))?,
            _ => println!("(G) witness at {model}, i = {i}: {}", if ok { "holds" } else { "does not certify" }),
        }
        return Ok(if ok { Status::Ok } else { Status::Negative });
    }
    let budget = Budget { wall: budget_secs.map(Duration::from_secs_f64), max_pairs: None };
    let cache = cache.open()?;
    let g = match index {
        Some(i) => {
            if i == 0 || i >= model.a {
                bail!("index {i} outside [1, {}]", model.a - 1);
            }
            let problem = GProblem::new(model)?;
            let (d, _) = scan::check_index(&problem, i, &budget, cache.as_ref())?;
            GVerdict { model: *model, verdict: d.verdict, elapsed_ms: d.elapsed_ms, indices: BTreeMap::from([(i, d)]) }
        }
        None => g_verdict(model, &budget, cache.as_ref())?,
    };
    match format {
        Format::Json => print_json(&json!({ "command": "check", "condition": "G", "result": g }))?,
        _ => {
            println!("(G) at {model}: {}", g.verdict.as_str());
            for (i, d) in &g.indices {
                println!("  i = {i}: {} ({} ms)", d.verdict.as_str(), d.elapsed_ms);
            }
        }
    }
    Ok(verdict_status(g.verdict))
}

fn series_json(v: &[TSeries]) -> Value {
    json!(v.iter().map(TSeries::to_strings).collect::<Vec<_>>())
}

#[allow(clippy::too_many_arguments)]
fn cmd_reparam(
    model: &LocalModel,
    k: usize,
    cn: &str,
    cn1: &str,
    smax: Option<usize>,
    g0: &str,
    pm: bool,
    format: Format,
) -> Result<Status> {
    only_text_or_json(format, "reparam")?;
    if k == 0 {
        bail!("--k must be positive");
    }
    let c_n = input::series_list(cn, k, model.dim())?;
    let c_n1 = input::series_list(cn1, k, model.dim())?;
    let sigma = SigmaModel { model: *model, g0: parse_rational_list(g0)? };
    let smax = smax.unwrap_or_else(|| pm_required_smax(&sigma, k));
    let r = reparam_solve(model, &c_n, &c_n1, smax)?;
    let deltas: Vec<TSeries> = c_n.iter().zip(&c_n1).map(|(x, y)| y - x).collect();
    let audit = order_bound_audit(&r, &deltas)?;
    let pm_verdict = if pm { Some(pm_identity_check(&sigma, &c_n, &c_n1, smax)?) } else { None };
    match format {
        Format::Json => print_json(&json!({
            "command": "reparam",
            "model": model_json(model),
            "k": k,
            "smax": r.smax(),
            "delta_prime": series_json(&r.delta_prime),
            "epsilon": series_json(&r.epsilon),
            "audit": audit,
            "pm": pm_verdict,
        }))?,
        _ => {
            for (i, d) in r.delta_prime.iter().enumerate() {
                println!("delta'_{} = {d}", i + 2);
            }
            for (i, e) in r.epsilon.iter().enumerate() {
                println!("epsilon_{} = {e}", model.a as usize + 1 + i);
            }
            for c in &audit.checks {
                let tag = if c.margin < 0 { "VIOLATED" } else { "ok" };
                println!("ord {} = {} (bound {}) {tag}", c.name, c.ord, c.bound);
            }
            if let Some(v) = pm_verdict {
                println!("+- identity: {}", serde_json::to_value(v)?.as_str().unwrap_or_default());
            }
        }
    }
    Ok(match (audit.passed(), pm_verdict) {
        (false, _) | (_, Some(PmVerdict::Fails)) => Status::Negative,
        (_, Some(PmVerdict::Inconclusive)) => Status::Undecided,
        _ => Status::Ok,
    })
}

fn cmd_star(action: StarAction, path: &std::path::Path, point: Option<&str>, format: Format) -> Result<Status> {
    only_text_or_json(format, "star")?;
    let parsed = input::read_config(path)?;
    let config = &parsed.config;
    let basis = build_basis_i(config, &parsed.sections)?;
    let chosen: Vec<_> = basis.entries.iter().map(|e| e.section.clone()).collect();
    let system = build_star_system(config, &chosen)?;
    let equations: Vec<Value> = system
        .equations
        .iter()
        .zip(&basis.entries)
        .map(|(eq, entry)| {
            json!({
                "section": eq.section_id,
                "top": [entry.top.0, entry.top.1],
                "ord": eq.ord,
                "terms": eq.terms.iter().map(|t| json!({
                    "j": t.j, "m": t.m, "coefficient": format_rational(&t.coefficient),
                })).collect::<Vec<_>>(),
                "text": eq.poly.to_text(),
            })
        })
        .collect();
    let satisfied = match action {
        StarAction::Build => None,
        StarAction::Check => {
            let Some(p) = point else { bail!("star check needs --point") };
            Some(star_satisfied(config, &system, &input::blocks(p)?)?)
        }
    };
    match format {
        Format::Json => print_json(&json!({
            "command": "star",
            "variables": system.vars.names(),
            "equations": equations,
            "excluded": basis.excluded,
            "satisfied": satisfied,
        }))?,
        _ => {
            for (eq, entry) in system.equations.iter().zip(&basis.entries) {
                println!("[{}] P = ({}, {}), ord = {}: {} = 0", eq.section_id, entry.top.0, entry.top.1, eq.ord, eq.poly);
            }
            for id in &basis.excluded {
                println!("[{id}] no residues, no equation");
            }
            if let Some(s) = satisfied {
                println!("satisfied: {s}");
            }
        }
    }
    Ok(match satisfied {
        Some(false) => Status::Negative,
        _ => Status::Ok,
    })
}

fn lift_json(model: &LocalModel, k: usize, report: &LiftReport) -> Value {
    json!({
        "command": "lift",
        "model": model_json(model),
        "k": k,
        "steps": report.steps.iter().map(|s| json!({
            "order": s.order,
            "defects": s.defects.iter().map(format_rational).collect::<Vec<_>>(),
            "correction": s.correction.iter().map(format_rational).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "c": series_json(&report.state.blocks[0].c),
        "residual_orders": report.residual_orders[0],
        "passed": report.passed(),
    })
}

fn cmd_lift(model: &LocalModel, witness: &str, k: usize, terms: Option<PathBuf>, format: Format) -> Result<Status> {
    only_text_or_json(format, "lift")?;
    let d = (model.b as usize) + 1;
    if k < d {
        bail!("--k must be at least b + 1 = {d}");
    }
    let w = input::point(witness, model.dim())?;
    let config = SingularConfig::new(vec![*model])?;
    let table: Box<dyn PerturbationProvider> = match terms {
        Some(p) => Box::new(TermTable(input::read_terms(&p)?)),
        None => Box::new(NoPerturbation),
    };
    let report = lift_run(&config, &[w], k, table.as_ref())?;
    match format {
        Format::Json => print_json(&lift_json(model, k, &report))?,
        _ => {
            for s in &report.steps {
                let h: Vec<String> = s.defects.iter().map(format_rational).collect();
                let x: Vec<String> = s.correction.iter().map(format_rational).collect();
                println!("order {}: defects [{}], correction [{}]", s.order, h.join(", "), x.join(", "));
            }
            for (i, c) in report.state.blocks[0].c.iter().enumerate() {
                println!("c{} = {c}", i + 2);
            }
            println!("residual orders: {:?} (K = {k})", report.residual_orders[0]);
            println!("audit: {}", if report.passed() { "passed" } else { "FAILED" });
        }
    }
    Ok(if report.passed() { Status::Ok } else { Status::Negative })
}

fn cmd_verdict(path: &std::path::Path, budget_secs: f64, cache: &CacheArgs, format: Format) -> Result<Status> {
    only_text_or_json(format, "verdict")?;
    let parsed = input::read_config(path)?;
    let cache = cache.open()?;
    let budget = Budget::seconds(budget_secs);
    let mut g_table = BTreeMap::new();
    if !parsed.config.all_double_points() {
        for (j, p) in parsed.config.points.iter().enumerate() {
            if p.a > 2 {
                g_table.insert(j + 1, g_verdict(p, &budget, cache.as_ref()).context("computing (G)")?);
            }
        }
    }
    let out = deform_verdict(&VerdictInput {
        config: parsed.config,
        sections: parsed.sections,
        dims: parsed.dims,
        nbar_nonzero: parsed.nbar_nonzero,
        g_table: g_table.clone(),
    })?;
    match format {
        Format::Json => print_json(&json!({
            "command": "verdict",
            "verdict": out.verdict,
            "rule": out.rule,
            "certificate": out.certificate,
            "reasons": out.reasons,
            "g": g_table.values().collect::<Vec<_>>(),
        }))?,
        _ => {
            println!("{}", out.verdict.as_str());
            println!("rule: {}", out.rule);
            let cert: Vec<String> = out.certificate.iter().map(|l| l.map_or("-".into(), |x| x.to_string())).collect();
            println!("l = ({})", cert.join(", "));
            for r in &out.reasons {
                println!("  {r}");
            }
        }
    }
    Ok(match out.verdict {
        DeformVerdict::Deforms => Status::Ok,
        DeformVerdict::DoesNotDeform => Status::Negative,
        DeformVerdict::Unknown => Status::Undecided,
    })
}

fn cmd_selftest(seed: u64, format: Format) -> Result<Status> {
    only_text_or_json(format, "selftest")?;
    let results = selftest::run(seed);
    match format {
        Format::Json => print_json(&json!({
            "command": "selftest",
            "seed": seed,
            "checks": results.iter().map(|(n, r)| json!({ "name": n, "passed": r.is_ok(), "detail": match r {
                Ok(s) | Err(s) => s,
            }})).collect::<Vec<_>>(),
        }))?,
        _ => {
            for (name, r) in &results {
                match r {
                    Ok(s) => println!("PASS {name}: {s}"),
                    Err(s) => println!("FAIL {name}: {s}"),
                }
            }
        }
    }
    Ok(if results.iter().all(|(_, r)| r.is_ok()) { Status::Ok } else { Status::Negative })
}

mod selftest {
    use equigen_core::expansion::{gen_multinomial, partitions};
    use equigen_core::groebner::{check_g, check_t, Verdict};
    use equigen_core::rational::rat;
    use equigen_core::{Budget, Expansion, Homogeneity, LocalModel, MPoly, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const F2: &str = "3/128*c2^4 - 3/16*c2*c3^2 - 3/16*c2^2*c4 + 3/8*c4^2";

    type Check = Result<String, String>;

    fn golden() -> Check {
        let m = LocalModel::new(4, 6).unwrap();
        let f2 = Expansion::new(m, 4).big_f(2).map_err(|e| e.to_string())?;
        if f2 != MPoly::parse(&m.vars(), F2).map_err(|e| e.to_string())? {
            return Err(format!("F_-2 = {f2}"));
        }
        Ok("F_-2 at (4,6) matches".into())
    }

    fn double_points() -> Check {
        for b in (3..=15).step_by(2) {
            let m = LocalModel::new(2, b).unwrap();
            let f = Expansion::new(m, 2).big_f(1).map_err(|e| e.to_string())?;
            let half = Rational::new((b as i64).into(), 2.into());
            let want = gen_multinomial(&half, &partitions(b as i64 + 1, 2, Some(2))[0]);
            if f.num_terms() != 1 || f.coefficient(&[b.div_ceil(2)]) != want {
                return Err(format!("b = {b}: {f}"));
            }
        }
        Ok("F_-1 is a single monomial for a = 2, b = 3..15".into())
    }

    fn genericity() -> Check {
        let g = check_g(&LocalModel::new(4, 6).unwrap(), &Budget::seconds(60.0)).map_err(|e| e.to_string())?;
        let got: Vec<Verdict> = g.indices.values().map(|d| d.verdict).collect();
        if got != [Verdict::Holds, Verdict::Fails, Verdict::Holds] {
            return Err(format!("{got:?}"));
        }
        Ok("(G) at (4,6): holds, fails, holds".into())
    }

    fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
        rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
    }

    fn homogeneity(rng: &mut ChaCha8Rng) -> Check {
        let models = [(2u32, 3u32), (3, 4), (3, 5), (4, 6), (4, 7)];
        for _ in 0..100 {
            let (a, b) = models[rng.gen_range(0..models.len())];
            let m = LocalModel::new(a, b).unwrap();
            let n = rng.gen_range(1..a);
            let f = Expansion::new(m, a as usize).big_f(n).map_err(|e| e.to_string())?;
            if f.weighted_degree() != Homogeneity::Homogeneous((b + n) as u64) {
                return Err(format!("F_-{n} at {m} is not homogeneous of degree {}", b + n));
            }
            let mut alpha = random_rational(rng);
            if alpha == Rational::from_integer(0.into()) {
                alpha = rat(1, 2);
            }
            let lhs = f.weighted_rescale(&alpha);
            if lhs != f.scale(&alpha.pow((b + n) as i32)) {
                return Err(format!("rescaling F_-{n} at {m}"));
            }
        }
        Ok("100 random rescalings of F".into())
    }

    fn transversality(rng: &mut ChaCha8Rng) -> Check {
        let m = LocalModel::new(4, 6).unwrap();
        for _ in 0..20 {
            let p: Vec<Rational> = (0..3).map(|_| random_rational(rng)).collect();
            let alpha = rat(rng.gen_range(1..=5), rng.gen_range(1..=3));
            let q: Vec<Rational> = p.iter().enumerate().map(|(i, x)| x * alpha.pow(i as i32 + 2)).collect();
            if check_t(&m, &p).map_err(|e| e.to_string())? != check_t(&m, &q).map_err(|e| e.to_string())? {
                return Err("(T) changed under rescaling".into());
            }
        }
        Ok("(T) invariant under 20 random rescalings".into())
    }

    pub fn run(seed: u64) -> Vec<(&'static str, Check)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        vec![
            ("golden", golden()),
            ("double points", double_points()),
            ("genericity", genericity()),
            ("homogeneity", homogeneity(&mut rng)),
            ("transversality", transversality(&mut rng)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn gen_kind_names() {
        assert!(GenKind::from_str("F", false).unwrap() == GenKind::BigF);
        assert!(GenKind::from_str("f", false).unwrap() == GenKind::F);
    }
}
