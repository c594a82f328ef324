//! Verification suites, λ/μ tables and coefficient dumps behind the `iwasawa` binary.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use iwasawa_core::arith::{gcd, is_prime, primes_in};
use iwasawa_core::characters::enumerate_even_nontrivial;
use iwasawa_core::cyclotomic::{self, CycloCtx};
use iwasawa_core::lemma2::lemma2_report;
use iwasawa_core::lemma5::{alpha_class_search, lemma5_trace};
use iwasawa_core::lfunction::{self, f_series, f_series_batch, lambda_table};
use iwasawa_core::mirimanoff::{self, mirimanoff_series};
use iwasawa_core::{BernoulliOracle, Check, DeltaChar, DirichletChar, Lambda, PadicCtx};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] iwasawa_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "iwasawa", version, about = "p-adic L-function and Mirimanoff series checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite and print one record per check.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// λ/μ invariants for every even nontrivial character.
    LambdaTable {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Coefficients of f(T, omega^j) in T.
    Fseries {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Coefficients of M(T, omega^j, a) in T.
    Mirimanoff {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Exact trace values for primes l >= p^2.
    Trace {
        #[command(flatten)]
        common: CommonArgs,
        /// largest l to tabulate
        #[arg(long)]
        ell_max: Option<u64>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long)]
    pub p: Option<u64>,
    /// sweep all primes 5 <= p <= p-max
    #[arg(long)]
    pub p_max: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[arg(long = "N", default_value_t = 2)]
    pub prec: u32,
    /// exponent j of omega^j
    #[arg(long)]
    pub theta: Option<i64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub a: Option<u128>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Lemma5,
    Lemma6,
    Thm1,
    Thm2,
    Thm4,
    Thm5,
    Thm6,
    Cor1,
    Interpolation,
}

/// Validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub n: u32,
    pub prec: u32,
    pub theta: Option<i64>,
    pub d: Option<u64>,
    pub a: Option<u128>,
    pub jobs: Option<usize>,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_args(c: &CommonArgs) -> Result<Self, CliError> {
        let primes = match (c.p, c.p_max) {
            (Some(_), Some(_)) => return Err(config("give either --p or --p-max")),
            (Some(p), None) => {
                if !is_prime(p) {
                    return Err(config(format!("{p} is not prime")));
                }
                vec![p]
            }
            (None, Some(m)) => primes_in(5, m),
            (None, None) => vec![5],
        };
        if primes.is_empty() || primes[0] < 5 {
            return Err(config("need primes p >= 5"));
        }
        if c.n > 3 {
            return Err(config("need 0 <= n <= 3"));
        }
        if !(1..=8).contains(&c.prec) {
            return Err(config("need 1 <= N <= 8"));
        }
        if c.jobs == Some(0) {
            return Err(config("--jobs must be positive"));
        }
        Ok(RunConfig {
            primes,
            n: c.n,
            prec: c.prec,
            theta: c.theta,
            d: c.d,
            a: c.a,
            jobs: c.jobs,
            seed: c.seed,
        })
    }

    fn provenance(&self, command: &str) -> Value {
        json!({
            "tool": "iwasawa",
            "version": VERSION,
            "command": command,
            "p": self.primes,
            "n": self.n,
            "N": self.prec,
            "seed": self.seed,
        })
    }

    fn csv_header(&self, command: &str) -> String {
        let ps: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        format!(
            "# iwasawa {VERSION} {command}\n# p={} n={} N={} seed={}\n",
            ps.join(" "),
            self.n,
            self.prec,
            self.seed
        )
    }

    fn pool(&self) -> Result<rayon::ThreadPool, CliError> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = self.jobs {
            b = b.num_threads(j);
        }
        b.build().map_err(|e| config(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Unresolved,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub statement: Suite,
    pub parameters: Map<String, Value>,
    pub status: Status,
    pub witness: Option<usize>,
    pub error: Option<String>,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub provenance: Value,
    pub records: Vec<Record>,
}

impl Report {
    pub fn worst(&self) -> Status {
        self.records.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
    }
}

/// Exit code for the worst status: 0 pass, 1 fail, 3 unresolved.
pub fn status_code(s: Status) -> i32 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Unresolved => 3,
    }
}

enum Verdict {
    Pass,
    Fail(Option<usize>),
    Unresolved(String),
    Error(String),
}

impl From<iwasawa_core::Result<Check>> for Verdict {
    fn from(r: iwasawa_core::Result<Check>) -> Self {
        use iwasawa_core::Error as E;
        match r {
            Ok(c) if c.holds => Verdict::Pass,
            Ok(c) => Verdict::Fail(c.witness),
            Err(e @ (E::NeedsHigherPrecision { .. } | E::PrecisionTooLow)) => Verdict::Unresolved(e.to_string()),
            Err(e) => Verdict::Error(e.to_string()),
        }
    }
}

impl From<iwasawa_core::Result<bool>> for Verdict {
    fn from(r: iwasawa_core::Result<bool>) -> Self {
        Verdict::from(r.map(Check::from_bool))
    }
}

type Job = Box<dyn Fn() -> Verdict + Send + Sync>;

struct Task {
    params: Map<String, Value>,
    job: Job,
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn task(pairs: &[(&str, Value)], job: impl Fn() -> Verdict + Send + Sync + 'static) -> Task {
    Task { params: params(pairs), job: Box::new(job) }
}

fn thetas(cfg: &RunConfig, ctx: PadicCtx, even_nontrivial: bool) -> Vec<DeltaChar> {
    match cfg.theta {
        Some(j) => vec![DeltaChar::new(ctx, j)],
        None if even_nontrivial => enumerate_even_nontrivial(ctx),
        None => (0..ctx.p() as i64 - 1).map(|j| DeltaChar::new(ctx, j)).collect(),
    }
}

fn a_values(cfg: &RunConfig, p: u64) -> Vec<u128> {
    match cfg.a {
        Some(a) => vec![a],
        None => (2..p as u128).collect(),
    }
}

fn alphas(ctx: PadicCtx) -> Vec<u128> {
    (2..ctx.p() as u128).map(|a| ctx.teichmuller(a).expect("unit")).collect()
}

fn build_tasks(suite: Suite, cfg: &RunConfig) -> Result<Vec<Task>, CliError> {
    let (n, prec, seed) = (cfg.n, cfg.prec, cfg.seed);
    let mut tasks = Vec::new();
    for &p in &cfg.primes {
        let ctx = PadicCtx::new(p, prec)?;
        match suite {
            Suite::Lemma1 | Suite::Thm1 | Suite::Thm4 => {
                let cc = std::sync::Arc::new(CycloCtx::new(p, n, prec)?);
                for al in alphas(ctx) {
                    match suite {
                        Suite::Thm1 => {
                            let c = cc.clone();
                            tasks.push(task(&[("p", json!(p)), ("n", json!(n)), ("alpha", json!(al))], move || {
                                let a = cyclotomic::thm1_tn_identity(&c, al);
                                let b = cyclotomic::thm1_restriction_check(&c, al);
                                Verdict::from(a.and_then(|a| b.map(|b| a.and(b))))
                            }));
                        }
                        Suite::Lemma1 => {
                            let units = match cfg.a {
                                Some(a) => vec![a],
                                None => (2..p as u128).chain([1 + p as u128]).collect(),
                            };
                            for a in units {
                                let c = cc.clone();
                                tasks.push(task(
                                    &[("p", json!(p)), ("n", json!(n)), ("alpha", json!(al)), ("a", json!(a))],
                                    move || Verdict::from(cyclotomic::lemma1_check(&c, al, a)),
                                ));
                            }
                        }
                        _ => {
                            for theta in thetas(cfg, ctx, false).into_iter().filter(|t| t.j() >= 2) {
                                let c = cc.clone();
                                let pr = [("p", json!(p)), ("n", json!(n)), ("theta", json!(theta.j())), ("alpha", json!(al))];
                                tasks.push(task(&pr, move || {
                                    let a = cyclotomic::theorem4_dn_check(&c, &theta, al);
                                    let b = cyclotomic::d_rho_bridge_check(&c, &theta, al);
                                    Verdict::from(a.and_then(|a| b.map(|b| a.and(b))))
                                }));
                            }
                        }
                    }
                }
            }
            Suite::Lemma2 => {
                let ds: Vec<u32> = match cfg.d {
                    Some(d) => vec![d as u32],
                    None => (0..=n).collect(),
                };
                for d in ds {
                    tasks.push(task(&[("p", json!(p)), ("n", json!(n)), ("d", json!(d))], move || {
                        Verdict::from(lemma2_report(p, n, d).map(|r| r.holds()))
                    }));
                }
            }
            Suite::Lemma3 | Suite::Lemma4 | Suite::Thm2 => {
                for theta in thetas(cfg, ctx, false) {
                    for a in a_values(cfg, p) {
                        let pr = [("p", json!(p)), ("n", json!(n)), ("theta", json!(theta.j())), ("a", json!(a))];
                        tasks.push(task(&pr, move || match suite {
                            Suite::Lemma3 => mirimanoff::lemma3_check(&ctx, &theta, &a, n).into(),
                            Suite::Lemma4 => {
                                let l4 = mirimanoff::lemma4_check(&ctx, &theta, &a, n);
                                let v0 = mirimanoff::value_at_zero_check(&ctx, &theta, &a, n);
                                Verdict::from(l4.and_then(|x| v0.map(|y| x.and(y))))
                            }
                            _ => {
                                let expect = !theta.is_even() && (a + 1) % p as u128 == 0;
                                mirimanoff::derivative_vanishes_mod_p(&ctx, &theta, &a, n)
                                    .map(|v| v == expect)
                                    .into()
                            }
                        }));
                    }
                }
            }
            Suite::Lemma5 => {
                tasks.push(task(&[("p", json!(p))], move || match alpha_class_search(p) {
                    Ok(_) => Verdict::Pass,
                    Err(e) => Verdict::Error(e.to_string()),
                }));
                for ell in trace_primes(p, None) {
                    tasks.push(task(&[("p", json!(p)), ("ell", json!(ell))], move || {
                        Verdict::from(lemma5_trace(ell, p).map(|t| t.matches))
                    }));
                }
            }
            Suite::Lemma6 => {
                for theta in thetas(cfg, ctx, false).into_iter().filter(|t| t.j() >= 2) {
                    tasks.push(task(&[("p", json!(p)), ("n", json!(n)), ("theta", json!(theta.j()))], move || {
                        Verdict::from(lfunction::g_unit_series(&theta, n).map(|_| true))
                    }));
                }
            }
            Suite::Thm5 => {
                let ds = match cfg.d {
                    Some(d) => vec![d],
                    None => vec![2, 3, 4],
                };
                for d in ds {
                    if gcd(d, p) != 1 || d < 2 {
                        return Err(config(format!("d = {d} must be >= 2 and prime to p = {p}")));
                    }
                    for theta in thetas(cfg, ctx, true) {
                        let pr = [("p", json!(p)), ("n", json!(n)), ("theta", json!(theta.j())), ("d", json!(d))];
                        tasks.push(task(&pr, move || lfunction::theorem5_check(&theta, d, n, seed).into()));
                    }
                }
            }
            Suite::Thm6 => {
                let ds: Vec<u64> = match cfg.d {
                    Some(d) if gcd(d, p) != 1 => return Err(config(format!("d = {d} must be prime to p = {p}"))),
                    Some(d) => vec![d],
                    None => [1, 3, 4].into_iter().filter(|&d| gcd(d, p) == 1).collect(),
                };
                for d in ds {
                    for chi in DirichletChar::enumerate_even(p, prec, d, seed)? {
                        if cfg.theta.is_some_and(|j| j.rem_euclid(p as i64 - 1) as u64 != chi.j()) {
                            continue;
                        }
                        let pr = [
                            ("p", json!(p)),
                            ("n", json!(n)),
                            ("d", json!(d)),
                            ("psi", json!(chi.index())),
                            ("theta", json!(chi.j())),
                        ];
                        tasks.push(task(&pr, move || {
                            Verdict::from(lfunction::theorem6_check(&chi, n).map(|r| r.holds()))
                        }));
                    }
                }
            }
            Suite::Cor1 => {
                for theta in thetas(cfg, ctx, true) {
                    tasks.push(task(&[("p", json!(p)), ("n", json!(n)), ("theta", json!(theta.j()))], move || {
                        lfunction::corollary1_check(&theta, n).into()
                    }));
                }
            }
            Suite::Interpolation => {
                for theta in thetas(cfg, ctx, true) {
                    for m in [p - 1, 2 * (p - 1)] {
                        let pr = [("p", json!(p)), ("n", json!(n)), ("theta", json!(theta.j())), ("m", json!(m))];
                        tasks.push(task(&pr, move || {
                            let mut oracle = BernoulliOracle::new();
                            lfunction::interpolation_check(&theta, m, n, &mut oracle).into()
                        }));
                    }
                }
            }
        }
    }
    Ok(tasks)
}

/// Run one suite; records come back in task order.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Report, CliError> {
    let tasks = build_tasks(suite, cfg)?;
    let records = cfg.pool()?.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let start = Instant::now();
                let verdict = (t.job)();
                let runtime_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
                let (status, witness, error) = match verdict {
                    Verdict::Pass => (Status::Pass, None, None),
                    Verdict::Fail(w) => (Status::Fail, w, None),
                    Verdict::Unresolved(e) => (Status::Unresolved, None, Some(e)),
                    Verdict::Error(e) => (Status::Fail, None, Some(e)),
                };
                Record { statement: suite, parameters: t.params.clone(), status, witness, error, runtime_ms }
            })
            .collect()
    });
    Ok(Report { provenance: cfg.provenance(&format!("verify {}", suite_name(suite))), records })
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn trace_primes(p: u64, ell_max: Option<u64>) -> Vec<u64> {
    let lo = p * p;
    primes_in(lo, ell_max.unwrap_or(lo.max(200)))
}

fn csv_string(header: &str, rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for r in rows {
        w.write_record(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8");
    Ok(format!("{header}{body}"))
}

fn lambda_str(l: Lambda) -> String {
    match l {
        Lambda::Resolved(v) => v.to_string(),
        Lambda::Unresolved => "unresolved".into(),
    }
}

/// Text to print and the process exit code.
pub struct Output {
    pub text: String,
    pub code: i32,
}

fn single_prime(cfg: &RunConfig) -> Result<u64, CliError> {
    match cfg.primes.as_slice() {
        [p] => Ok(*p),
        _ => Err(config("this command takes a single --p")),
    }
}

fn dump(cfg: &RunConfig, command: &str, coeffs: Vec<u128>, extra: &[(&str, Value)], fmt: Format) -> Result<Output, CliError> {
    let text = match fmt {
        Format::Json => {
            let mut m = params(extra);
            m.insert("provenance".into(), cfg.provenance(command));
            m.insert("coefficients".into(), json!(coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()));
            serde_json::to_string_pretty(&Value::Object(m))? + "\n"
        }
        Format::Csv => {
            let mut rows = vec![vec!["k".to_string(), "coefficient".to_string()]];
            rows.extend(coeffs.iter().enumerate().map(|(k, c)| vec![k.to_string(), c.to_string()]));
            csv_string(&cfg.csv_header(command), rows)?
        }
    };
    Ok(Output { text, code: 0 })
}

pub fn execute(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Verify { suite, common } => {
            let cfg = RunConfig::from_args(&common)?;
            let report = run_suite(suite, &cfg)?;
            let code = status_code(report.worst());
            let text = match common.format.unwrap_or(Format::Json) {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Csv => {
                    let mut rows = vec![["statement", "parameters", "status", "witness", "runtime_ms"]
                        .map(String::from)
                        .to_vec()];
                    for r in &report.records {
                        rows.push(vec![
                            suite_name(r.statement),
                            serde_json::to_string(&r.parameters)?,
                            serde_json::to_value(r.status)?.as_str().unwrap_or_default().to_string(),
                            r.witness.map(|w| w.to_string()).unwrap_or_default(),
                            format!("{:.3}", r.runtime_ms),
                        ]);
                    }
                    csv_string(&cfg.csv_header(&format!("verify {}", suite_name(suite))), rows)?
                }
            };
            Ok(Output { text, code })
        }
        Command::LambdaTable { common } => {
            let cfg = RunConfig::from_args(&common)?;
            let rows = cfg.pool()?.install(|| lambda_table(&cfg.primes, cfg.n, cfg.prec))?;
            let code = if rows.iter().any(|r| r.lambda == Lambda::Unresolved) { 3 } else { 0 };
            let text = match common.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut out = vec!["p,j,mu,lambda,fprime_nonzero".split(',').map(String::from).collect()];
                    out.extend(rows.iter().map(|r| {
                        vec![
                            r.p.to_string(),
                            r.j.to_string(),
                            r.mu.to_string(),
                            lambda_str(r.lambda),
                            r.fprime_nonzero.to_string(),
                        ]
                    }));
                    csv_string(&cfg.csv_header("lambda-table"), out)?
                }
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            json!({"p": r.p, "j": r.j, "mu": r.mu, "lambda": lambda_str(r.lambda),
                                   "fprime_nonzero": r.fprime_nonzero})
                        })
                        .collect();
                    let v = json!({"provenance": cfg.provenance("lambda-table"), "rows": rows});
                    serde_json::to_string_pretty(&v)? + "\n"
                }
            };
            Ok(Output { text, code })
        }
        Command::Fseries { common } => {
            let cfg = RunConfig::from_args(&common)?;
            let p = single_prime(&cfg)?;
            let j = cfg.theta.ok_or_else(|| config("--theta is required"))?;
            let theta = DeltaChar::new(PadicCtx::new(p, cfg.prec)?, j);
            let f = if theta.is_even() {
                f_series_batch(theta.ctx(), cfg.n, &[theta.j()])?.pop().expect("one series")
            } else {
                f_series(&theta, cfg.n)?
            };
            let extra = [("p", json!(p)), ("j", json!(theta.j())), ("n", json!(cfg.n)), ("N", json!(cfg.prec))];
            dump(&cfg, "fseries", f.series.to_monomial(), &extra, common.format.unwrap_or(Format::Json))
        }
        Command::Mirimanoff { common } => {
            let cfg = RunConfig::from_args(&common)?;
            let p = single_prime(&cfg)?;
            let j = cfg.theta.ok_or_else(|| config("--theta is required"))?;
            let a = cfg.a.ok_or_else(|| config("--a is required"))?;
            let ctx = PadicCtx::new(p, cfg.prec)?;
            let m = mirimanoff_series(&ctx, &DeltaChar::new(ctx, j), &a, cfg.n)?;
            let extra = [("p", json!(p)), ("j", json!(m.j)), ("a", json!(a)), ("n", json!(cfg.n)), ("N", json!(cfg.prec))];
            dump(&cfg, "mirimanoff", m.series.to_monomial(), &extra, common.format.unwrap_or(Format::Json))
        }
        Command::Trace { common, ell_max } => {
            let cfg = RunConfig::from_args(&common)?;
            let mut rows = Vec::new();
            let mut all_match = true;
            for &p in &cfg.primes {
                for ell in trace_primes(p, ell_max) {
                    let t = lemma5_trace(ell, p)?;
                    all_match &= t.matches;
                    rows.push(t);
                }
            }
            let code = if all_match { 0 } else { 1 };
            let text = match common.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut out = vec!["p,ell,m,b,s_exact,s_closed,matches,square_flag"
                        .split(',')
                        .map(String::from)
                        .collect::<Vec<_>>()];
                    out.extend(rows.iter().map(|t| {
                        vec![
                            t.p.to_string(),
                            t.ell.to_string(),
                            t.m.to_string(),
                            t.b.to_string(),
                            t.s_exact.to_string(),
                            t.s_closed.to_string(),
                            t.matches.to_string(),
                            t.square_flag.to_string(),
                        ]
                    }));
                    csv_string(&cfg.csv_header("trace"), out)?
                }
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|t| {
                            json!({"p": t.p, "ell": t.ell, "m": t.m, "b": t.b, "s_exact": t.s_exact.to_string(),
                                   "s_closed": t.s_closed.to_string(), "matches": t.matches,
                                   "square_flag": t.square_flag})
                        })
                        .collect();
                    let v = json!({"provenance": cfg.provenance("trace"), "rows": rows});
                    serde_json::to_string_pretty(&v)? + "\n"
                }
            };
            Ok(Output { text, code })
        }
    }
}

/// Parse, run, and map errors to exit code 2.
pub fn run_from_args<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Output { text: e.to_string(), code };
        }
    };
    match execute(cli) {
        Ok(o) => o,
        Err(e) => Output { text: format!("error: {e}\n"), code: e.exit_code() },
    }
}

