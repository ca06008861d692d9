//! Command-line front end: degrees, the `Z_6` solver, verification reports
//! and character-table checks, rendered as text or JSON.

pub mod config;
mod suite;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use covdeg::formulas::{
    bryan_closed_form, fermat_numerator, furuta_degree, odd_sum_form, z6_abc, z6_assemble, z6_constraints, z6_solve,
    zp_closed_form, zp_degree, L2Form,
};
use covdeg::groups::{parse_character_table, Group};
use covdeg::reprings::{big_to_json, Pin2Elem};
use covdeg::verify::{check_cover_identity, check_product_lemma, check_z6_consistency, ApproximationParams, VerificationReport};
use serde_json::{json, Value};

use config::{parse_params, CliConfig, FileConfig, Format, Grid};
pub use suite::Outcome;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] covdeg::Error),
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// `1` for failed internal consistency assertions, `2` for everything the
    /// caller can fix.
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(covdeg::Error::Internal(_)) => 1,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        use covdeg::Error as E;
        let kind = match self {
            CliError::Core(e) => match e {
                E::Parse { .. } => "parse",
                E::TableValidation(_) => "table_validation",
                E::Domain(_) => "domain",
                E::NotVirtualCharacter { .. } => "not_virtual_character",
                E::Unsupported(_) => "unsupported",
                E::Precondition(_) => "precondition",
                E::Internal(_) => "internal",
            },
            CliError::Usage(_) => "usage",
            CliError::Config(_) => "config",
            CliError::Io { .. } => "io",
        };
        let mut v = json!({ "kind": kind, "message": self.to_string() });
        if let CliError::Core(covdeg::Error::Parse { line, column, .. }) = self {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        json!({ "error": v })
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "covdeg", version, about = "Equivariant Seiberg-Witten degrees of finite covers")]
struct Cli {
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML file with the same keys as the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory searched for character-table files (repeatable).
    #[arg(long, global = true)]
    table_path: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(subcommand)]
    Degree(DegreeCmd),
    #[command(subcommand)]
    Solve(SolveCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
    #[command(subcommand)]
    Chartab(ChartabCmd),
}

#[derive(Args, Debug)]
struct MK {
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
}

#[derive(Subcommand, Debug)]
enum DegreeCmd {
    Furuta(MK),
    Zp {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        mk: MK,
    },
    Bryan {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        mk: MK,
        #[arg(long)]
        assert_bryan_hypothesis: bool,
    },
    OddSum {
        /// `Z<n>xZ<m>...` or a character-table file.
        #[arg(long)]
        group: String,
        #[command(flatten)]
        mk: MK,
    },
}

#[derive(Args, Debug)]
struct Z6Args {
    #[arg(long, allow_negative_numbers = true)]
    mx: i64,
    #[arg(long, allow_negative_numbers = true)]
    kx: i64,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    beta0: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    beta1: String,
}

#[derive(Subcommand, Debug)]
enum SolveCmd {
    Z6(Z6Args),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    All {
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// `m0..m1,k0..k1`
        #[arg(long)]
        grid: Option<String>,
        /// `N=<int>,M=<int>` items separated by `;`
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    Lemma {
        #[arg(long)]
        n: u32,
    },
    Cover {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        mk: MK,
        #[arg(long = "N", default_value_t = 1)]
        big_n: u64,
        #[arg(long = "M", default_value_t = 1)]
        big_m: u64,
    },
    Z6(Z6Args),
}

#[derive(Subcommand, Debug)]
enum ChartabCmd {
    Check { file: String },
}

/// What a command produced, before rendering.
struct Output {
    code: i32,
    text: String,
    json: Value,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { code: 0, text, json }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line (without the program name).
pub fn run<S: AsRef<str>>(args: &[S]) -> RunOutput {
    let argv: Vec<&str> = std::iter::once("covdeg").chain(args.iter().map(|s| s.as_ref())).collect();
    let json_requested = argv.windows(2).any(|w| w == ["--format", "json"]) || argv.contains(&"--format=json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return RunOutput { code: 0, stdout: e.render().to_string(), stderr: String::new() };
            }
            let stderr = if json_requested {
                json!({ "error": { "kind": "usage", "message": e.kind().to_string(), "detail": e.render().to_string() } })
                    .to_string()
            } else {
                e.render().to_string()
            };
            return RunOutput { code: 2, stdout: String::new(), stderr };
        }
    };
    let mut format = cli.format.unwrap_or(if json_requested { Format::Json } else { Format::Text });
    let result = build_config(&cli).and_then(|cfg| {
        format = cli.format.unwrap_or(cfg.format);
        dispatch(&cli.command, &cfg)
    });
    match (result, format) {
        (Ok(out), Format::Text) => RunOutput { code: out.code, stdout: out.text + "\n", stderr: String::new() },
        (Ok(out), Format::Json) => RunOutput {
            code: out.code,
            stdout: serde_json::to_string_pretty(&out.json).expect("json") + "\n",
            stderr: String::new(),
        },
        (Err(e), Format::Text) => RunOutput { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
        (Err(e), Format::Json) => RunOutput {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: e.to_json().to_string() + "\n",
        },
    }
}

fn build_config(cli: &Cli) -> CliResult<CliConfig> {
    let mut cfg = CliConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(FileConfig::load(path)?)?;
    }
    cfg.table_path.splice(0..0, cli.table_path.iter().cloned());
    cfg.apply_env();
    if let Command::Verify(VerifyCmd::All { max_n, primes, grid, params, seed }) = &cli.command {
        if let Some(n) = max_n {
            cfg.max_n = *n;
        }
        if let Some(p) = primes {
            cfg.primes = p.clone();
        }
        if let Some(g) = grid {
            cfg.grid = Grid::parse(g)?;
        }
        if let Some(p) = params {
            cfg.params = parse_params(p)?;
        }
        if let Some(s) = seed {
            cfg.seed = *s;
        }
    }
    if let Command::Degree(DegreeCmd::Bryan { assert_bryan_hypothesis: true, .. }) = &cli.command {
        cfg.assert_bryan_hypothesis = true;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn find_file(name: &str, cfg: &CliConfig) -> Option<PathBuf> {
    let direct = Path::new(name);
    if direct.is_file() {
        return Some(direct.to_path_buf());
    }
    cfg.table_path.iter().map(|d| d.join(name)).find(|p| p.is_file())
}

fn read_table(name: &str, cfg: &CliConfig) -> CliResult<covdeg::groups::CharacterTable> {
    let path = find_file(name, cfg).ok_or_else(|| CliError::Usage(format!("no character-table file '{name}'")))?;
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    Ok(parse_character_table(&text)?)
}

/// A group spec, or failing that a character-table file.
fn resolve_group(spec: &str, cfg: &CliConfig) -> CliResult<Group> {
    match Group::parse_spec(spec) {
        Ok(g) => Ok(g),
        Err(spec_err) => match find_file(spec, cfg) {
            Some(_) => Ok(Group::from_table(read_table(spec, cfg)?)),
            None => Err(CliError::Usage(format!(
                "'{spec}' is neither a group spec ({spec_err}) nor a character-table file"
            ))),
        },
    }
}

fn parse_pin2(s: &str) -> CliResult<Pin2Elem> {
    Ok(s.parse()?)
}

fn dispatch(cmd: &Command, cfg: &CliConfig) -> CliResult<Output> {
    match cmd {
        Command::Degree(d) => degree(d, cfg),
        Command::Solve(SolveCmd::Z6(a)) => solve_z6(a),
        Command::Verify(v) => verify(v, cfg),
        Command::Chartab(ChartabCmd::Check { file }) => chartab_check(file, cfg),
    }
}

fn form_json(form: &L2Form, text: &str) -> Value {
    json!({
        "text": text,
        "group": form.group.to_string(),
        "l2": big_to_json(&form.l2),
        "triv": big_to_json(&form.triv),
    })
}

fn degree_output(title: String, form: &L2Form, mut extra_text: Vec<String>, mut extra_json: Value) -> Output {
    let closed = format!("({form})(1 - c)");
    let expanded = format!("{} ⊗ (1-c)", form.to_virtual());
    let degree = form.times_one_minus_c();
    let mut lines = vec![title, format!("closed form: {closed}"), format!("expanded:    {expanded}")];
    lines.append(&mut extra_text);
    extra_json["closed_form"] = form_json(form, &closed);
    extra_json["expanded"] = json!(expanded);
    extra_json["degree"] = degree.to_json();
    Output::ok(lines.join("\n"), extra_json)
}

fn degree(cmd: &DegreeCmd, cfg: &CliConfig) -> CliResult<Output> {
    match cmd {
        DegreeCmd::Furuta(MK { m, k }) => {
            let d = furuta_degree(*m, *k)?;
            Ok(Output::ok(
                format!("Furuta degree (m={m}, k={k}): {d}"),
                json!({ "m": m, "k": k, "degree": d.to_json() }),
            ))
        }
        DegreeCmd::Zp { p, mk: MK { m, k } } => {
            let form = zp_closed_form(*p, *m, *k)?;
            let numer = fermat_numerator(*p, *m, *k)?;
            Ok(degree_output(
                format!("Z{p} degree (m={m}, k={k})"),
                &form,
                vec![format!("fermat:      {p} divides {numer}, quotient {}", form.l2)],
                json!({
                    "p": p, "m": m, "k": k,
                    "fermat": { "numerator": big_to_json(&numer), "quotient": big_to_json(&form.l2) },
                }),
            ))
        }
        DegreeCmd::Bryan { q, mk: MK { m, k }, .. } => {
            let form = bryan_closed_form(*q, *m, *k)?;
            let ack = cfg.assert_bryan_hypothesis;
            let mut notes = Vec::new();
            if !ack {
                notes.push(
                    "note:        assumes b+(X) ≠ b+(X/<g>) for every g ≠ e; pass --assert-bryan-hypothesis to acknowledge"
                        .to_string(),
                );
            }
            Ok(degree_output(
                format!("(Z2)^{q} degree (m={m}, k={k})"),
                &form,
                notes,
                json!({ "q": q, "m": m, "k": k, "hypothesis_acknowledged": ack }),
            ))
        }
        DegreeCmd::OddSum { group, mk: MK { m, k } } => {
            let g = resolve_group(group, cfg)?;
            let form = odd_sum_form(&g, *m, *k)?;
            let v = form.to_virtual();
            Ok(Output::ok(
                format!("α0 + α̃0 over {g} (m={m}, k={k})\nclosed form: {form}\nexpanded:    {v}"),
                json!({
                    "group": g.to_string(), "m": m, "k": k,
                    "closed_form": form_json(&form, &form.to_string()),
                    "expanded": v.to_string(),
                    "alpha0_sum": v.to_json(),
                }),
            ))
        }
    }
}

fn solve_z6(a: &Z6Args) -> CliResult<Output> {
    let (b0, b1) = (parse_pin2(&a.beta0)?, parse_pin2(&a.beta1)?);
    let abc = z6_abc(a.mx, a.kx)?;
    let betas = z6_solve(a.mx, a.kx, &b0, &b1)?;
    let constraints = z6_constraints(&abc, &betas);
    let mut lines = vec![
        format!("Z6 system (m_X={}, k_X={})", a.mx, a.kx),
        format!("A = {}", abc.a),
        format!("B = {}", abc.b),
        format!("C = {}", abc.c),
    ];
    lines.extend(betas.iter().enumerate().map(|(i, b)| format!("β{i} = {b}")));
    lines.extend(constraints.iter().map(|c| format!("{} {}", if c.holds() { "ok " } else { "BAD" }, c.name)));
    let degree = z6_assemble(&betas);
    lines.push(format!("α = {degree}"));
    let all_hold = constraints.iter().all(|c| c.holds());
    Ok(Output {
        code: if all_hold { 0 } else { 1 },
        text: lines.join("\n"),
        json: json!({
            "m_X": a.mx, "k_X": a.kx,
            "a": abc.a.to_json(), "b": abc.b.to_json(), "c": abc.c.to_json(),
            "betas": betas.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
            "constraints": constraints.iter().map(|c| json!({ "name": c.name, "holds": c.holds() })).collect::<Vec<_>>(),
            "degree": degree.to_json(),
        }),
    })
}

fn report_output(r: VerificationReport) -> Output {
    Output {
        code: if r.pass { 0 } else { 1 },
        text: r.to_string(),
        json: serde_json::to_value(&r).expect("report serializes"),
    }
}

fn verify(cmd: &VerifyCmd, cfg: &CliConfig) -> CliResult<Output> {
    match cmd {
        VerifyCmd::Lemma { n } => Ok(report_output(check_product_lemma(*n)?)),
        VerifyCmd::Cover { p, mk: MK { m, k }, big_n, big_m } => {
            let g = Group::cyclic(u32::try_from(*p).map_err(|_| CliError::Usage(format!("p = {p} is too large")))?)?;
            let alpha = zp_degree(*p, *m, *k)?;
            let params = ApproximationParams::uniform(*big_n, *big_m);
            Ok(report_output(check_cover_identity(&g, *m, *k, &alpha, &params)?))
        }
        VerifyCmd::Z6(a) => {
            let (b0, b1) = (parse_pin2(&a.beta0)?, parse_pin2(&a.beta1)?);
            Ok(report_output(check_z6_consistency(a.mx, a.kx, &b0, &b1)?))
        }
        VerifyCmd::All { .. } => verify_all(cfg),
    }
}

fn verify_all(cfg: &CliConfig) -> CliResult<Output> {
    let groups = cfg
        .odd_groups
        .iter()
        .map(|s| resolve_group(s, cfg))
        .collect::<CliResult<Vec<_>>>()?;
    let outcomes = suite::run_suite(cfg, &groups);
    let failed = outcomes.iter().filter(|o| o.failed()).count();
    let skipped = outcomes.iter().filter(|o| matches!(o, Outcome::Skipped { .. })).count();
    let passed = outcomes.len() - failed - skipped;
    let mut lines = Vec::new();
    for o in &outcomes {
        match o {
            Outcome::Checked(r) if r.pass => lines.push(r.to_string().lines().next().unwrap_or_default().to_string()),
            Outcome::Checked(r) => lines.push(r.to_string()),
            Outcome::Skipped { check, reason } => lines.push(format!("SKIP {check}: {reason}")),
            Outcome::Error { check, message } => lines.push(format!("ERROR {check}: {message}")),
        }
    }
    lines.push(format!(
        "{} checks: {passed} passed, {failed} failed, {skipped} skipped",
        outcomes.len()
    ));
    Ok(Output {
        code: if failed > 0 { 1 } else { 0 },
        text: lines.join("\n"),
        json: json!({
            "pass": failed == 0,
            "summary": { "total": outcomes.len(), "passed": passed, "failed": failed, "skipped": skipped },
            "results": outcomes,
        }),
    })
}

fn chartab_check(file: &str, cfg: &CliConfig) -> CliResult<Output> {
    let t = read_table(file, cfg)?;
    let classes: Vec<String> = t.classes().iter().map(|c| c.label.clone()).collect();
    let irreps: Vec<String> = t.irreps().iter().map(|i| format!("{}(dim {})", i.label, i.dim)).collect();
    let sum_dim2: u64 = t.irreps().iter().map(|i| i.dim * i.dim).sum();
    Ok(Output::ok(
        format!(
            "valid character table '{}': order {}, {} classes\nclasses: {}\nirreps:  {}",
            t.name(),
            t.order(),
            classes.len(),
            classes.join(" "),
            irreps.join(" ")
        ),
        json!({
            "valid": true,
            "name": t.name(),
            "order": t.order(),
            "classes": t.classes().iter().map(|c| json!({ "label": c.label, "size": c.size, "order": c.order })).collect::<Vec<_>>(),
            "irreps": t.irreps().iter().map(|i| json!({ "label": i.label, "dim": i.dim })).collect::<Vec<_>>(),
            "sum_dim_squared": sum_dim2,
        }),
    ))
}
