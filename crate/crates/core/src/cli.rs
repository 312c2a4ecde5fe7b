//! The `saw-lab` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::counting::{
    self, closing_probabilities, count_walks, first_part_table, growth_report, Constraint, EnumConfig,
    WalkSearch, SQUARE_POLYGONS, SQUARE_WALKS,
};
use crate::error::Error;
use crate::lattice::{codec, ExactProb, Polygon, Walk};
use crate::patterns::{
    self, canonical_pattern_pair, fixtures::fixture_corpus, slot_partition, validate_pattern_pair, LocalShell,
    PatternPair,
};
use crate::resampler;
use crate::snake::{self, SnakeParams};
use crate::threshold::Exponent;
use crate::two_part::{self, compose, decompose, has_first_part_shape, Part};

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARDRAIL: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Count,
    Closing,
    Decompose,
    Patterns,
    Resample,
    Snake,
    Verify,
    Report,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Counting,
    TwoPart,
    Patterns,
    Resampler,
    Snake,
}

/// Exact combinatorics of self-avoiding walks and polygons.
///
/// Kinds per verb (`--kind`):
///   closing:  probability (default), histogram, first-parts, growth
///   patterns: slots (default), pair, corpus, shell, avoidance
///   resample: draw (default), equilibrium, window, pmf, gaussian, midpoint
///   snake:    constants (default), charm, profile, bad-index, law, reflect,
///             bootstrap, chain
#[derive(Debug, Parser)]
#[command(name = "saw-lab", version, verbatim_doc_comment)]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub alpha: Option<Exponent>,
    #[arg(long)]
    pub beta: Option<Exponent>,
    #[arg(long)]
    pub eta: Option<Exponent>,
    #[arg(long = "alpha-prime")]
    pub alpha_prime: Option<Exponent>,
    #[arg(long = "delta-prime")]
    pub delta_prime: Option<Exponent>,
    #[arg(long, default_value_t = 0.01)]
    pub phi: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// A walk `d=<d>;origin=<c,..>;steps=<steps>`, or a file holding one.
    #[arg(long)]
    pub input: Option<String>,
    /// Fixture name from the corpus (`t1-n1-v0` ...), `four-slot` or `plain`.
    #[arg(long)]
    pub fixture: Option<String>,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Comma-separated increasing indices for the bootstrap table.
    #[arg(long, value_delimiter = ',')]
    pub js: Vec<usize>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Guardrail { .. } | Error::SlotBudget { .. } => EXIT_GUARDRAIL,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A command's result: the JSON document, a CSV rendering when the report
/// is tabular, and whether a verification passed.
pub struct Output {
    pub json: Value,
    pub csv: Option<String>,
    pub ok: bool,
}

impl Output {
    fn json(json: Value) -> Self {
        Self { json, csv: None, ok: true }
    }

    fn with_csv(json: Value, csv: String) -> Self {
        Self {
            json,
            csv: Some(csv),
            ok: true,
        }
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n"),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::usage("this report has no CSV form; use --format json")),
        }
    }
}

/// Parses `args` and runs the command, writing to stdout/stderr. Returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("saw-lab: cannot write output: {e}");
                return EXIT_USAGE;
            }
            if ok {
                0
            } else {
                EXIT_VERIFY
            }
        }
        Err(e) => {
            eprintln!("saw-lab: {}", e.message);
            e.code
        }
    }
}

/// Runs a parsed command and renders its output.
pub fn run(cli: &Cli) -> CliResult<(String, bool)> {
    let out = match cli.threads {
        Some(0) => return Err(CliError::usage("--threads must be positive")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::usage(e.to_string()))?
            .install(|| dispatch(cli))?,
        None => dispatch(cli)?,
    };
    Ok((out.render(cli.format)?, out.ok))
}

pub fn dispatch(cli: &Cli) -> CliResult<Output> {
    if cli.d < 2 {
        return Err(Error::InvalidDimension(cli.d).into());
    }
    let cfg = EnumConfig::from_env()?;
    match cli.verb {
        Verb::Count => count(cli, &cfg),
        Verb::Closing => closing(cli, &cfg),
        Verb::Decompose => decompose_cmd(cli),
        Verb::Patterns => patterns_cmd(cli, &cfg),
        Verb::Resample => resample_cmd(cli, &cfg),
        Verb::Snake => snake_cmd(cli, &cfg),
        Verb::Verify => verify(cli, &cfg),
        Verb::Report => report(cli, &cfg),
    }
}

fn need<T: Clone>(value: &Option<T>, flag: &str) -> CliResult<T> {
    value.clone().ok_or_else(|| CliError::usage(format!("--{flag} is required")))
}

fn kind<'a>(cli: &'a Cli, default: &'a str, allowed: &[&str]) -> CliResult<&'a str> {
    let k = cli.kind.as_deref().unwrap_or(default);
    if allowed.contains(&k) {
        Ok(k)
    } else {
        Err(CliError::usage(format!("unknown --kind {k:?}; expected one of {}", allowed.join(", "))))
    }
}

fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn prob(q: &ExactProb) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn input_walk(cli: &Cli) -> CliResult<Walk> {
    let text = need(&cli.input, "input")?;
    let text = match std::fs::read_to_string(&text) {
        Ok(contents) => contents,
        Err(_) => text,
    };
    let w = codec::parse(text.trim())?;
    if w.dim() != cli.d {
        return Err(Error::DimensionMismatch {
            expected: cli.d,
            found: w.dim(),
        }
        .into());
    }
    Ok(w)
}

fn load_fixture(name: &str) -> CliResult<Polygon> {
    match name {
        "four-slot" => Ok(patterns::fixtures::four_slot_fixture()?),
        "plain" => Ok(patterns::fixtures::plain_fixture()?),
        _ => fixture_corpus()?
            .into_iter()
            .find(|f| f.name == name)
            .map(|f| f.polygon)
            .ok_or_else(|| CliError::usage(format!("no fixture named {name:?}"))),
    }
}

/// The polygon named by `--fixture`, or the closing walk given by `--input`.
fn input_polygon(cli: &Cli) -> CliResult<Polygon> {
    match (&cli.fixture, &cli.input) {
        (Some(name), _) => load_fixture(name),
        (None, Some(_)) => Ok(Polygon::from_closing_walk(&input_walk(cli)?)?),
        (None, None) => Err(CliError::usage("--fixture or --input is required")),
    }
}

fn pair_for(d: usize) -> CliResult<PatternPair> {
    Ok(canonical_pattern_pair(d)?)
}

/// `(c_n, p_{n+1}, W_n(closes))` for any `n >= 1`.
fn count_summary(n: usize, d: usize, cfg: &EnumConfig) -> CliResult<(BigUint, BigUint, ExactProb)> {
    cfg.check_guardrail(n + 1, d)?;
    if n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let c_n = count_walks(n, d, cfg)?;
    let closing = counting::count_closing_walks(n, d, cfg)?;
    let p_n1 = if (n + 1).is_multiple_of(2) && n + 1 >= 4 {
        counting::count_polygons(n + 1, d, cfg)?
    } else {
        BigUint::from(0u32)
    };
    Ok((c_n.clone(), p_n1, ExactProb::new(closing, c_n)?))
}

fn count(cli: &Cli, cfg: &EnumConfig) -> CliResult<Output> {
    let n = need(&cli.n, "n")?;
    let (c_n, p_n1, closing) = count_summary(n, cli.d, cfg)?;
    let json = json!({
        "n": n,
        "d": cli.d,
        "c_n": big(&c_n),
        "p_n1": big(&p_n1),
        "closing": prob(&closing),
    });
    let csv = format!(
        "n,d,c_n,p_n1,closing_num,closing_den\n{n},{},{c_n},{p_n1},{},{}\n",
        cli.d,
        closing.numer(),
        closing.denom()
    );
    Ok(Output::with_csv(json, csv))
}

fn closing(cli: &Cli, cfg: &EnumConfig) -> CliResult<Output> {
    match kind(cli, "probability", &["probability", "histogram", "first-parts", "growth"])? {
        "probability" => {
            let n = need(&cli.n, "n")?;
            let r = closing_probabilities(n, cli.d, cfg)?;
            let json = json!({
                "n": n,
                "d": cli.d,
                "c_n": big(&r.c_n),
                "p_n1": big(&r.p_n1),
                "closing_walks": big(&r.closing_walks),
                "closing": prob(&r.closing_direct),
                "closing_fraction": r.closing_direct.to_string(),
                "closing_identity": prob(&r.closing_identity),
                "identity_holds": r.closing_direct == r.closing_identity,
            });
            let csv = format!(
                "n,d,closing_num,closing_den,identity_num,identity_den\n{n},{},{},{},{},{}\n",
                cli.d,
                r.closing_direct.numer(),
                r.closing_direct.denom(),
                r.closing_identity.numer(),
                r.closing_identity.denom()
            );
            Ok(Output::with_csv(json, csv))
        }
        "histogram" => {
            let n = need(&cli.n, "n")?;
            let hist = two_part::closing_first_length_histogram(n, cli.d, cfg)?;
            let flat = hist.windows(2).all(|w| w[0] == w[1]);
            let json = json!({
                "n": n,
                "d": cli.d,
                "counts": hist.iter().map(big).collect::<Vec<_>>(),
                "flat": flat,
            });
            Ok(Output::with_csv(json, two_part::histogram_csv(&hist)))
        }
        "first-parts" => {
            let n = need(&cli.n, "n")?;
            let ell = need(&cli.ell, "ell")?;
            let alpha = need(&cli.alpha, "alpha")?;
            let t = first_part_table(ell, n, cli.d, alpha, cfg)?;
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "walk": codec::serialize(&r.walk),
                        "completions": big(&r.completions),
                        "closing": big(&r.closing),
                        "q": prob(&r.q),
                        "in_hphi": r.in_hphi,
                    })
                })
                .collect();
            let json = json!({
                "n": n,
                "ell": ell,
                "d": cli.d,
                "alpha": alpha.to_string(),
                "rows": rows,
                "total_completions": big(&t.total_completions()),
            });
            Ok(Output::with_csv(json, t.to_csv()))
        }
        _ => {
            let nmax = need(&cli.nmax.or(cli.n), "nmax")?;
            let g = growth_report(nmax, cli.d, cfg)?;
            let mut csv = String::from("n,c_n,root\n");
            for r in &g.rows {
                csv.push_str(&format!("{},{},{}\n", r.n, r.c_n, r.root));
            }
            let json = json!({
                "d": cli.d,
                "rows": g.rows.iter().map(|r| json!({"n": r.n, "c_n": big(&r.c_n), "root": r.root})).collect::<Vec<_>>(),
                "pairs_checked": g.pairs_checked,
                "violations": g.violations,
                "fit_mu": g.fit_mu,
                "fit_sqrt_coefficient": g.fit_sqrt_coefficient,
            });
            Ok(Output::with_csv(json, csv))
        }
    }
}

fn decompose_cmd(cli: &Cli) -> CliResult<Output> {
    let w = input_walk(cli)?;
    let dec = decompose(&w)?;
    Ok(Output::json(json!({
        "walk": codec::serialize(&w),
        "first": codec::serialize(dec.first()),
        "second": codec::serialize(dec.second()),
        "first_len": dec.first().len(),
        "meeting_vertex": dec.meeting_vertex().coords(),
        "origin_part": match dec.origin_part() { Part::First => "first", Part::Second => "second" },
    })))
}

fn patterns_cmd(cli: &Cli, cfg: &EnumConfig) -> CliResult<Output> {
    match kind(cli, "slots", &["slots", "pair", "corpus", "shell", "avoidance"])? {
        "slots" => {
            let p = input_polygon(cli)?;
            let pair = pair_for(p.dim())?;
            let map = slot_partition(&p, &pair, cli.phi)?;
            let mut json = map.to_json();
            json["length"] = json!(p.len());
            Ok(Output::json(json))
        }
        "pair" => {
            let pair = pair_for(cli.d)?;
            let v = validate_pattern_pair(&pair);
            Ok(Output::json(json!({
                "d": cli.d,
                "chi_i": codec::serialize(pair.chi_i()),
                "chi_ii": codec::serialize(pair.chi_ii()),
                "len_i": pair.chi_i().len(),
                "len_ii": pair.chi_ii().len(),
                "valid": v.is_valid(),
                "violations": v.violations,
            })))
        }
        "corpus" => {
            let pair = pair_for(2)?;
            let mut rows = Vec::new();
            let mut csv = String::from("name,length,slots,t_ii,s1,s2,good\n");
            for f in fixture_corpus()? {
                let map = slot_partition(&f.polygon, &pair, cli.phi)?;
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    f.name,
                    f.polygon.len(),
                    map.slots.len(),
                    map.counts.t_ii,
                    map.s1.len(),
                    map.s2.len(),
                    map.good.unwrap_or(false)
                ));
                rows.push(json!({
                    "name": f.name,
                    "length": f.polygon.len(),
                    "slots": map.slots.len(),
                    "t_ii": map.counts.t_ii,
                    "s1": map.s1.len(),
                    "s2": map.s2.len(),
                    "good": map.good,
                }));
            }
            Ok(Output::with_csv(json!({ "fixtures": rows }), csv))
        }
        "shell" => {
            let p = input_polygon(cli)?;
            let pair = pair_for(p.dim())?;
            let shell = LocalShell::new(&p, &pair)?;
            let members = shell.members()?;
            Ok(Output::json(json!({
                "length": p.len(),
                "local_slots": shell.slot_count(),
                "s1": shell.s1_count(),
                "type_ii": shell.type_ii_count(),
                "members": members.len(),
                "source_choice": shell.source_choice(),
                "empty_length": shell.key.empty.len(),
            })))
        }
        _ => {
            let name = need(&cli.fixture, "fixture")?;
            let fixture = fixture_corpus()?
                .into_iter()
                .find(|f| f.name == name)
                .ok_or_else(|| CliError::usage(format!("no corpus fixture named {name:?}")))?;
            let ext = cli.n.unwrap_or(6);
            let pair = pair_for(2)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for (label, swapped) in one_swap_variants(&fixture.spec)? {
                let r = patterns::avoidance_equivalence_check(
                    &fixture.polygon.closing_walk(),
                    &swapped.closing_walk(),
                    ext,
                    &pair,
                    cfg,
                )?;
                ok &= r.equivalent;
                rows.push(json!({
                    "swap": label,
                    "equivalent": r.equivalent,
                    "checked": r.checked,
                    "witness": r.witness.as_ref().map(codec::serialize),
                }));
            }
            let mut out = Output::json(json!({ "fixture": name, "ext_len": ext, "pairs": rows, "passed": ok }));
            out.ok = ok;
            Ok(out)
        }
    }
}

/// Every polygon differing from the fixture by swapping one pattern's type.
pub fn one_swap_variants(spec: &patterns::fixtures::FixtureSpec) -> crate::Result<Vec<(String, Polygon)>> {
    let mut out = Vec::new();
    for (group, len) in [("top", spec.top.len()), ("far", spec.far.len()), ("near", spec.near.len())] {
        for i in 0..len {
            let mut s = spec.clone();
            let v = match group {
                "top" => &mut s.top,
                "far" => &mut s.far,
                _ => &mut s.near,
            };
            v[i] = v[i].swapped();
            out.push((format!("{group}{i}"), patterns::fixtures::build_fixture(&s)?));
        }
    }
    Ok(out)
}

fn resample_cmd(cli: &Cli, cfg: &EnumConfig) -> CliResult<Output> {
    match kind(cli, "draw", &["draw", "equilibrium", "window", "pmf", "gaussian", "midpoint"])? {
        "draw" => {
            let p = input_polygon(cli)?;
            let pair = pair_for(p.dim())?;
            let shell = LocalShell::new(&p, &pair)?;
            let samples = cli.samples.unwrap_or(1);
            let mut rows = Vec::new();
            let mut csv = String::from("draw,n_i1_before,n_i1_after,l\n");
            for draw in 0..samples {
                let r = resampler::resample_draw(&shell, &p, cli.seed, draw, cli.ell)?;
                csv.push_str(&format!(
                    "{draw},{},{},{}\n",
                    r.n_i1_before,
                    r.n_i1_after,
                    r.l.map(|l| l.to_string()).unwrap_or_default()
                ));
                rows.push(json!({
                    "draw": draw,
                    "n_i1_before": r.n_i1_before,
                    "n_i1_after": r.n_i1_after,
                    "l": r.l,
                    "output": codec::serialize(&r.gamma_out.closing_walk()),
                }));
            }
            Ok(Output::with_csv(json!({ "seed": cli.seed, "length": p.len(), "draws": rows }), csv))
        }
        "equilibrium" => {
            let p = input_polygon(cli)?;
            let pair = pair_for(p.dim())?;
            let r = resampler::equilibrium_and_pmf_test(&p, &pair, cli.samples.unwrap_or(100_000), cli.seed)?;
            let mut out = Output::json(r.to_json());
            out.ok = r.passed();
            Ok(out)
        }
        "window" => {
            let p = input_polygon(cli)?;
            let pair = pair_for(p.dim())?;
            let ell = need(&cli.ell, "ell")?;
            let w = resampler::middle_index_and_window(&p, &pair, ell)?;
            Ok(Output::json(json!({
                "ell": w.ell,
                "l_mid": w.l_mid,
                "window": [w.window.0, w.window.1],
                "reference_n_i1": w.reference_n_i1,
            })))
        }
        "pmf" => {
            let m = need(&cli.n, "n")? as u64;
            let alpha = need(&cli.alpha, "alpha")?.to_f64();
            let beta = need(&cli.beta, "beta")?.to_f64();
            let s1 = (alpha * m as f64).round() as u64;
            let n_i = (beta * m as f64).round() as u64;
            if s1 > m || n_i > m {
                return Err(CliError::usage("alpha and beta must lie in [0, 1]"));
            }
            let table = resampler::hypergeometric_table(s1, m - s1, n_i)?;
            let mean = alpha * beta * m as f64;
            let mut csv = String::from("k,num,den,density\n");
            let mut rows = Vec::new();
            for (k, q) in &table {
                let density = resampler::gaussian_density(*k as f64 / mean - 1.0, alpha, beta, m as f64).ok();
                csv.push_str(&format!(
                    "{k},{},{},{}\n",
                    q.numer(),
                    q.denom(),
                    density.map(|x| x.to_string()).unwrap_or_default()
                ));
                rows.push(json!({ "k": k, "pmf": prob(q), "density": density }));
            }
            Ok(Output::with_csv(json!({ "s1": s1, "s2": m - s1, "n_i": n_i, "rows": rows }), csv))
        }
        "gaussian" => {
            let m = need(&cli.n, "n")? as u64;
            let alpha = cli.alpha.map(|a| a.to_f64()).unwrap_or(0.5);
            let beta = cli.beta.map(|b| b.to_f64()).unwrap_or(0.5);
            let radius = 2.0 * (m as f64).sqrt();
            let err = resampler::gaussian_ratio_error(m, alpha, beta, radius)?;
            Ok(Output::json(json!({
                "m": m,
                "alpha": alpha,
                "beta": beta,
                "radius": radius,
                "max_relative_error": err,
            })))
        }
        _ => {
            let m = need(&cli.n, "n")?;
            let r = resampler::midpoint_histogram(m, cli.d, cfg)?;
            let json = json!({
                "m": m,
                "d": cli.d,
                "total": big(&r.total),
                "sup": prob(&r.sup),
                "sup_times_sqrt_m": r.sup_times_sqrt_m,
                "points": r.counts.len(),
            });
            Ok(Output::with_csv(json, r.to_csv()))
        }
    }
}

fn snake_params(cli: &Cli) -> CliResult<SnakeParams> {
    Ok(SnakeParams::new(
        cli.d,
        need(&cli.alpha, "alpha")?,
        need(&cli.beta, "beta")?,
        cli.eta.unwrap_or(Exponent::integer(0)),
        need(&cli.n, "n")?,
        need(&cli.ell, "ell")?,
    )?)
}

fn snake_cmd(cli: &Cli, cfg: &EnumConfig) -> CliResult<Output> {
    let kinds = ["constants", "charm", "profile", "bad-index", "law", "reflect", "bootstrap", "chain"];
    match kind(cli, "constants", &kinds)? {
        "constants" => {
            let m = snake::method_constants(
                cli.d,
                need(&cli.alpha, "alpha")?,
                need(&cli.beta, "beta")?,
                cli.eta.unwrap_or(Exponent::integer(0)),
            )?;
            let mut json = m.to_json();
            if let Some(n) = cli.n {
                json["bound_at_n"] = json!(m.bound(n as f64));
                json["feasible_at_n"] = json!(m.feasible_at(n as f64));
            }
            Ok(Output::json(json))
        }
        "charm" => {
            let gamma = input_walk(cli)?;
            let r = snake::conditional_closing_prob(
                &gamma,
                need(&cli.k, "k")?,
                need(&cli.n, "n")?,
                need(&cli.ell, "ell")?,
                need(&cli.alpha, "alpha")?,
                cfg,
            )?;
            Ok(Output::json(json!({
                "k": r.k,
                "completions": big(&r.completions),
                "closing": big(&r.closing),
                "q": prob(&r.q),
                "charming": r.charming,
            })))
        }
        "profile" => {
            let gamma = input_walk(cli)?;
            let prof = snake::charming_profile(&gamma, &snake_params(cli)?, cli.k, cfg)?;
            Ok(Output::with_csv(prof.to_json(), prof.to_csv()))
        }
        "bad-index" => {
            let r = snake::bad_index_set_and_select_ell(
                need(&cli.n, "n")?,
                cli.d,
                need(&cli.alpha_prime, "alpha-prime")?,
                need(&cli.delta_prime, "delta-prime")?,
                cfg,
            )?;
            let mut out = Output::json(r.to_json());
            out.ok = r.bound_holds != Some(false);
            Ok(out)
        }
        "law" => {
            let n = need(&cli.n, "n")?;
            let ells: Vec<usize> = match cli.ell {
                Some(ell) => vec![ell],
                None => (0..=n).collect(),
            };
            let mut rows = Vec::new();
            let mut ok = true;
            for ell in ells {
                let c = snake::first_part_law_identity_check(n, ell, cli.d, cfg)?;
                ok &= c.holds();
                rows.push(json!({
                    "ell": ell,
                    "holds": c.holds(),
                    "polygons": big(&c.polygons),
                    "closing_walks": big(&c.closing_walks),
                    "support": c.polygon_law.len(),
                }));
            }
            let mut out = Output::json(json!({ "n": n, "d": cli.d, "rows": rows, "passed": ok }));
            out.ok = ok;
            Ok(out)
        }
        "reflect" => {
            let phi = input_walk(cli)?;
            let f = snake::reflected_walk_family(&phi, need(&cli.n, "n")?, cfg)?;
            let mut out = Output::json(json!({
                "phi": codec::serialize(&f.phi),
                "n": f.n,
                "w_size": f.w_size,
                "distinct": f.walks.len(),
                "concatenations_valid": f.concatenations_valid,
                "all_follow_reversed_phi": f.all_follow_reversed_phi,
                "bound_holds": f.bound_holds(),
            }));
            out.ok = f.concatenations_valid && f.bound_holds();
            Ok(out)
        }
        "bootstrap" => {
            let phi = input_walk(cli)?;
            let js = if cli.js.is_empty() { (0..=phi.len()).collect() } else { cli.js.clone() };
            let t = snake::bootstrap_table(&phi, need(&cli.n, "n")?, &js, cfg)?;
            let mut csv = String::from("j,avoid_num,avoid_den,close_num,close_den\n");
            for r in &t.rows {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.j,
                    r.p_avoid.numer(),
                    r.p_avoid.denom(),
                    r.p_close.numer(),
                    r.p_close.denom()
                ));
            }
            let mut out = Output::with_csv(t.to_json(), csv);
            out.ok = t.monotone && t.multiplicity_ok() && t.cap_ok();
            Ok(out)
        }
        _ => {
            let r = snake::inequality_chain(&snake_params(cli)?, cfg)?;
            let mut out = Output::json(r.to_json());
            out.ok = r.holds();
            Ok(out)
        }
    }
}

struct Checks(Vec<(String, bool)>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, ok: bool) {
        self.0.push((name.into(), ok));
    }
}

fn verify(cli: &Cli, cfg: &EnumConfig) -> CliResult<Output> {
    let nmax = cli.nmax.or(cli.n).unwrap_or(8);
    let mut checks = Checks(Vec::new());
    let run = |s: Suite| cli.suite == Suite::All || cli.suite == s;
    if run(Suite::Counting) {
        verify_counting(nmax, cfg, &mut checks)?;
    }
    if run(Suite::TwoPart) {
        verify_two_part(nmax, cfg, &mut checks)?;
    }
    if run(Suite::Patterns) {
        verify_patterns(&mut checks)?;
    }
    if run(Suite::Resampler) {
        verify_resampler(cli.seed, &mut checks)?;
    }
    if run(Suite::Snake) {
        verify_snake(nmax, cfg, &mut checks)?;
    }
    let passed = checks.0.iter().all(|(_, ok)| *ok);
    let mut csv = String::from("check,passed\n");
    for (name, ok) in &checks.0 {
        csv.push_str(&format!("{name},{ok}\n"));
    }
    let json = json!({
        "suite": format!("{:?}", cli.suite).to_lowercase(),
        "nmax": nmax,
        "checks": checks.0.iter().map(|(n, ok)| json!({"name": n, "passed": ok})).collect::<Vec<_>>(),
        "passed": passed,
    });
    let mut out = Output::with_csv(json, csv);
    out.ok = passed;
    Ok(out)
}

fn verify_counting(nmax: usize, cfg: &EnumConfig, checks: &mut Checks) -> CliResult<()> {
    for n in 1..=nmax.min(SQUARE_WALKS.len()) {
        checks.add(format!("c_{n} matches reference"), count_walks(n, 2, cfg)? == BigUint::from(SQUARE_WALKS[n - 1]));
    }
    for (n, p) in SQUARE_POLYGONS.iter().filter(|(n, _)| *n <= nmax + 1) {
        checks.add(format!("p_{n} matches reference"), counting::count_polygons(*n, 2, cfg)? == BigUint::from(*p));
    }
    for n in (3..=nmax).step_by(2) {
        let r = closing_probabilities(n, 2, cfg)?;
        checks.add(format!("closing identity n={n}"), r.closing_direct == r.closing_identity);
    }
    let n = nmax.min(10);
    let serial = EnumConfig {
        split_depth: 0,
        ..cfg.clone()
    };
    checks.add("split depth does not change counts", count_walks(n, 2, &serial)? == count_walks(n, 2, cfg)?);
    checks.add("submultiplicativity", growth_report(nmax.min(12), 2, cfg)?.violations.is_empty());
    Ok(())
}

fn verify_two_part(nmax: usize, cfg: &EnumConfig, checks: &mut Checks) -> CliResult<()> {
    let n = nmax.min(8);
    let mut roundtrip = true;
    WalkSearch::new(n, 2, Constraint::OriginStart, cfg)?.for_each(|w| {
        roundtrip &= decompose(w).map(|dec| compose(&dec) == *w).unwrap_or(false);
    })?;
    checks.add(format!("compose(decompose(w)) = w on SAW_{n}"), roundtrip);
    let mut shape = true;
    WalkSearch::new(n, 2, Constraint::NeAtOrigin, cfg)?.for_each(|w| {
        shape &= decompose(w).is_ok_and(|dec| {
            has_first_part_shape(dec.first())
                && has_first_part_shape(dec.second())
                && dec.first().avoids(dec.second())
                && two_part::first_precedes(dec.first(), dec.second())
        });
    })?;
    checks.add(format!("first-part structure on SAW^0_{n}"), shape);
    for n in (3..=nmax.min(11)).step_by(2) {
        let hist = two_part::closing_first_length_histogram(n, 2, cfg)?;
        checks.add(format!("flat first-length histogram n={n}"), hist.windows(2).all(|w| w[0] == w[1]));
    }
    Ok(())
}

fn verify_patterns(checks: &mut Checks) -> CliResult<()> {
    let pair = pair_for(2)?;
    checks.add("canonical pattern pair validates", validate_pattern_pair(&pair).is_valid());
    let mut lengths = true;
    let mut segments = true;
    for f in fixture_corpus()? {
        let map = slot_partition(&f.polygon, &pair, 0.0)?;
        let (empty, t_ii) = patterns::empty_polygon(&f.polygon, &pair)?;
        lengths &= f.polygon.len() == empty.len() + 2 * t_ii && t_ii == map.counts.t_ii;
        segments &= map.s1.len() == f.spec.top.len() && map.s2.len() == f.spec.near.len();
    }
    checks.add("|p| = |empty| + 2 T_II on the corpus", lengths);
    checks.add("S1/S2 sizes on the corpus", segments);
    Ok(())
}

fn verify_resampler(seed: u64, checks: &mut Checks) -> CliResult<()> {
    let mut sums = true;
    let mut unimodal = true;
    for total in 0..=12u64 {
        for s1 in 0..=total {
            for n_i in 0..=total {
                let table = resampler::hypergeometric_table(s1, total - s1, n_i)?;
                let sum = table
                    .iter()
                    .fold(num_rational::Ratio::from_integer(BigUint::from(0u32)), |a, (_, q)| a + q.ratio());
                sums &= sum == num_rational::Ratio::from_integer(BigUint::from(1u32));
                unimodal &= resampler::is_unimodal_about_mean(s1, total - s1, n_i)?;
            }
        }
    }
    checks.add("hypergeometric pmf sums to 1 (s1+s2 <= 12)", sums);
    checks.add("hypergeometric pmf unimodal about its mean", unimodal);
    let uniform = (0..=5).all(|k| (0..=k).all(|j| resampler::selection_is_exactly_uniform(k, j)));
    checks.add("selection exactly uniform for k <= 5", uniform);
    let p = patterns::fixtures::four_slot_fixture()?;
    let r = resampler::equilibrium_and_pmf_test(&p, &pair_for(2)?, 20_000, seed)?;
    checks.add("equilibrium chi-square on four-slot fixture", r.passed());
    Ok(())
}

fn verify_snake(nmax: usize, cfg: &EnumConfig, checks: &mut Checks) -> CliResult<()> {
    let top = nmax.min(9);
    for n in (1..=top).step_by(2) {
        let ok = (0..=n).try_fold(true, |acc, ell| {
            Ok::<_, Error>(acc && snake::first_part_law_identity_check(n, ell, 2, cfg)?.holds())
        })?;
        checks.add(format!("first-part law identity n={n}"), ok);
    }
    let n = if top % 2 == 1 { top } else { top - 1 };
    let ell = n / 2;
    let table = first_part_table(ell, n, 2, Exponent::integer(1), cfg)?;
    let mut boot = true;
    let mut reflect = true;
    for row in &table.rows {
        let js: Vec<usize> = (0..=ell).collect();
        let t = snake::bootstrap_table(&row.walk, n, &js, cfg)?;
        boot &= t.monotone && t.multiplicity_ok() && t.cap_ok();
        let f = snake::reflected_walk_family(&row.walk, n, cfg)?;
        reflect &= f.concatenations_valid && f.bound_holds() && f.all_follow_reversed_phi;
    }
    checks.add(format!("bootstrap monotone and capped n={n} ell={ell}"), boot);
    checks.add(format!("reflection construction n={n} ell={ell}"), reflect);
    Ok(())
}

fn report(cli: &Cli, cfg: &EnumConfig) -> CliResult<Output> {
    let nmax = cli.nmax.or(cli.n).unwrap_or(10);
    let mut rows = Vec::new();
    let mut csv = String::from("n,c_n,p_n,closing_num,closing_den\n");
    for n in 1..=nmax {
        let (c_n, _, closing) = count_summary(n, cli.d, cfg)?;
        let p_n = if n % 2 == 0 && n >= 4 { counting::count_polygons(n, cli.d, cfg)? } else { BigUint::from(0u32) };
        csv.push_str(&format!("{n},{c_n},{p_n},{},{}\n", closing.numer(), closing.denom()));
        rows.push(json!({
            "n": n,
            "c_n": big(&c_n),
            "p_n": big(&p_n),
            "closing": prob(&closing),
        }));
    }
    let constants = snake::method_constants(cli.d, "0.3".parse()?, "0.5".parse()?, Exponent::integer(0))?;
    Ok(Output::with_csv(
        json!({ "d": cli.d, "rows": rows, "constants": constants.to_json() }),
        csv,
    ))
}
