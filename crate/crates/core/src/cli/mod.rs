//! Batch command-line front end.
//!
//! Exit codes: 0 on success, 1 when a mathematical check or validation
//! fails, 2 on usage, IO or parse errors.

mod demo;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::crypto::{self, Ciphertext};
use crate::error::{Error, Result};
use crate::linalg::{rank_of, read_csv, write_csv, Matrix, Tolerance};
use crate::projector::is_idempotent;
use crate::solver::{solve_mixing_detailed, verify_triple, SolverInputs};
use crate::zoo::{self, ColumnRowSelection, ReducedForm};

pub use demo::{golden_suite, GoldenCheck};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_USER_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "oblique", version, about = "Hidden projectors, reduced-form factorizations and projector encryption")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Map a matrix onto F G H* with a classical or randomized method
    Factorize(FactorizeArgs),
    /// Solve F G H* = A for the mixing matrix G
    Solve(SolveArgs),
    /// Check the residual of a triple against A
    Verify(VerifyArgs),
    /// Generate a secret/public key pair from a dictionary
    Keygen(KeygenArgs),
    /// Encrypt a text file or a single dictionary symbol
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext back to bytes
    Decrypt(DecryptArgs),
    /// Replay the built-in worked examples
    Demo(DemoArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Svd,
    Qr,
    Lu,
    Cur,
    Random,
}

#[derive(Args, Debug)]
struct FactorizeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    /// Truncation rank for svd (defaults to the numerical rank)
    #[arg(long)]
    rank: Option<usize>,
    /// 1-based column indices for cur, comma separated
    #[arg(long, value_delimiter = ',')]
    cols: Option<Vec<usize>>,
    /// 1-based row indices for cur, comma separated
    #[arg(long, value_delimiter = ',')]
    rows: Option<Vec<usize>>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Writes PREFIX_f.csv, PREFIX_g.csv and PREFIX_h.csv
    #[arg(long)]
    out_prefix: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_USER_TOL)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    f: PathBuf,
    /// The row factor H* (q×n)
    #[arg(long)]
    h: PathBuf,
    #[arg(long, requires = "d")]
    b: Option<PathBuf>,
    #[arg(long, requires = "b")]
    d: Option<PathBuf>,
    #[arg(long)]
    w: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write G
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    f: PathBuf,
    #[arg(long)]
    g: PathBuf,
    #[arg(long)]
    h: PathBuf,
    #[arg(long, default_value_t = DEFAULT_USER_TOL)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct KeygenArgs {
    #[arg(long)]
    dict: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long, requires = "two_sided")]
    q: Option<usize>,
    #[arg(long)]
    two_sided: bool,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out_secret: PathBuf,
    #[arg(long)]
    out_public: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("message").required(true).args(["input", "column"]))]
struct EncryptArgs {
    #[arg(long)]
    public: PathBuf,
    /// Text file; each byte becomes one ciphertext column
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Symbol index (the byte value it stands for) to encrypt on its own
    #[arg(long)]
    column: Option<usize>,
    #[arg(long)]
    dict: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct DecryptArgs {
    #[arg(long)]
    secret: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    dict: PathBuf,
    /// Output file; the text is printed when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct DemoArgs {
    /// Per-entry absolute tolerance
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

/// Result of one command: what goes to stdout, what goes to stderr and the
/// process exit code.
#[derive(Clone, Debug, Default)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub report: String,
    pub diagnostics: String,
}

impl CommandOutcome {
    /// The JSON block of the report, if one was emitted.
    pub fn json(&self) -> Option<Value> {
        let start = self.report.find("\n{").map(|i| i + 1).or_else(|| {
            self.report.starts_with('{').then_some(0)
        })?;
        serde_json::from_str(&self.report[start..]).ok()
    }
}

struct Report {
    lines: Vec<String>,
    json: Option<Value>,
    exit_code: i32,
    diagnostics: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Self {
            lines: Vec::new(),
            json: None,
            exit_code: EXIT_OK,
            diagnostics: Vec::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.exit_code = EXIT_FAILURE;
        self.diagnostics.push(msg.into());
    }

    fn finish(self, want_json: bool) -> CommandOutcome {
        let mut report = self.lines.join("\n");
        if !report.is_empty() {
            report.push('\n');
        }
        if want_json {
            let mut value = self.json.unwrap_or_else(|| json!({}));
            if let Value::Object(map) = &mut value {
                map.insert("exit_code".into(), json!(self.exit_code));
            }
            report.push_str(&serde_json::to_string_pretty(&value).expect("report serializes"));
            report.push('\n');
        }
        let mut diagnostics = self.diagnostics.join("\n");
        if !diagnostics.is_empty() {
            diagnostics.push('\n');
        }
        CommandOutcome {
            exit_code: self.exit_code,
            report,
            diagnostics,
        }
    }
}

/// Exit code for a library error.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Io(_)
        | Error::Json(_)
        | Error::Parse { .. }
        | Error::Format(_)
        | Error::Usage(_)
        | Error::Empty { .. }
        | Error::DataLength { .. }
        | Error::NonFinite { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn error_outcome(err: &Error, want_json: bool) -> CommandOutcome {
    let code = exit_code_for(err);
    let mut report = String::new();
    if want_json {
        let value = json!({ "exit_code": code, "error": err.to_string() });
        report = serde_json::to_string_pretty(&value).expect("report serializes");
        report.push('\n');
    }
    CommandOutcome {
        exit_code: code,
        report,
        diagnostics: format!("error: {err}\n"),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CommandOutcome {
                    exit_code: code,
                    report: text,
                    diagnostics: String::new(),
                }
            } else {
                CommandOutcome {
                    exit_code: code,
                    report: String::new(),
                    diagnostics: text,
                }
            };
        }
    };
    let (want_json, result) = match &cli.command {
        Command::Factorize(a) => (a.json, factorize(a)),
        Command::Solve(a) => (a.json, solve(a)),
        Command::Verify(a) => (a.json, verify(a)),
        Command::Keygen(a) => (a.json, keygen(a)),
        Command::Encrypt(a) => (a.json, encrypt(a)),
        Command::Decrypt(a) => (a.json, decrypt(a)),
        Command::Demo(a) => (a.json, demo(a)),
    };
    match result {
        Ok(report) => report.finish(want_json),
        Err(e) => error_outcome(&e, want_json),
    }
}

/// Runs the command, writes its output to stdout/stderr and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = execute(args);
    print!("{}", out.report);
    eprint!("{}", out.diagnostics);
    out.exit_code
}

fn user_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Usage(format!("--tol must be positive, got {tol}")));
    }
    Ok(())
}

fn one_based(indices: &[usize], flag: &str) -> Result<Vec<usize>> {
    indices
        .iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Error::Usage(format!("{flag} indices are 1-based, got 0")))
        })
        .collect()
}

fn factor_json(form: &ReducedForm) -> Value {
    json!({ "f": form.f, "g": form.g, "h_star": form.h_star })
}

fn factorize(args: &FactorizeArgs) -> Result<Report> {
    user_tol(args.tol)?;
    let a = read_csv(&args.input)?;
    let tol = Tolerance::default();
    let form = match args.method {
        Method::Svd => {
            let k = match args.rank {
                Some(k) => k,
                None => rank_of(&a, &tol).rank,
            };
            zoo::reduced_svd(&a, k, &tol)?
        }
        Method::Qr => zoo::cpqr_reduced(&a, &tol)?,
        Method::Lu => zoo::lu_reduced(&a, &tol)?,
        Method::Cur => {
            let (Some(cols), Some(rows)) = (&args.cols, &args.rows) else {
                return Err(Error::Usage("--method cur needs --cols and --rows".into()));
            };
            let sel = ColumnRowSelection::new(one_based(cols, "--cols")?, one_based(rows, "--rows")?)?;
            zoo::cur(&a, &sel, &tol)?.form
        }
        Method::Random => {
            let (Some(r), Some(q)) = (args.r, args.q) else {
                return Err(Error::Usage("--method random needs --r and --q".into()));
            };
            zoo::randomized_reduced(&a, r, q, args.seed, &tol)?
        }
    };
    let residual = form.relative_residual(&a)?;

    let mut rep = Report::new();
    rep.line(format!("method: {:?}", args.method).to_lowercase());
    rep.line(format!(
        "shapes: F {}x{}, G {}x{}, H* {}x{}",
        form.f.rows(),
        form.f.cols(),
        form.g.rows(),
        form.g.cols(),
        form.h_star.rows(),
        form.h_star.cols()
    ));
    rep.line(format!("F =\n{}", form.f));
    rep.line(format!("G =\n{}", form.g));
    rep.line(format!("H* =\n{}", form.h_star));
    rep.line(format!("relative residual: {residual:e}"));
    if let Some(prefix) = &args.out_prefix {
        for (suffix, m) in [("f", &form.f), ("g", &form.g), ("h", &form.h_star)] {
            let path = prefixed(prefix, suffix);
            write_csv(&path, m)?;
            rep.line(format!("wrote {}", path.display()));
        }
    }
    if residual > args.tol {
        rep.fail(format!("residual {residual:e} exceeds tolerance {:e}", args.tol));
    }
    let mut value = factor_json(&form);
    value["method"] = json!(format!("{:?}", args.method).to_lowercase());
    value["relative_residual"] = json!(residual);
    rep.json = Some(value);
    Ok(rep)
}

fn prefixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(format!("_{suffix}.csv"));
    PathBuf::from(name)
}

fn solve(args: &SolveArgs) -> Result<Report> {
    let a = read_csv(&args.a)?;
    let f = read_csv(&args.f)?;
    let h_star = read_csv(&args.h)?;
    let mut inputs = SolverInputs::new(a.clone(), f, h_star).with_seed(args.seed);
    if let (Some(b), Some(d)) = (&args.b, &args.d) {
        inputs = inputs.with_sketches(read_csv(b)?, read_csv(d)?);
    }
    if let Some(w) = &args.w {
        inputs = inputs.with_w(read_csv(w)?);
    }
    let tol = Tolerance::default();
    let sol = solve_mixing_detailed(&inputs, &tol)?;
    let errs = verify_triple(&a, &sol.triple, Some((&sol.inverses.y_star, &sol.inverses.x)))?;
    let (err1, err2) = (errs.err1.unwrap_or(0.0), errs.err2.unwrap_or(0.0));

    let mut rep = Report::new();
    rep.line(format!("G =\n{}", sol.triple.g));
    rep.line(format!("err  = {:e}", errs.relative_residual));
    rep.line(format!("err1 = {err1:e}"));
    rep.line(format!("err2 = {err2:e}"));
    if let Some(out) = &args.out {
        write_csv(out, &sol.triple.g)?;
        rep.line(format!("wrote {}", out.display()));
    }
    rep.json = Some(json!({
        "g": sol.triple.g,
        "y_star": sol.inverses.y_star,
        "x": sol.inverses.x,
        "err": errs.relative_residual,
        "err1": err1,
        "err2": err2,
    }));
    Ok(rep)
}

fn verify(args: &VerifyArgs) -> Result<Report> {
    user_tol(args.tol)?;
    let a = read_csv(&args.a)?;
    let f = read_csv(&args.f)?;
    let g = read_csv(&args.g)?;
    let h = read_csv(&args.h)?;
    let rebuilt = Matrix::chain(&[&f, &g, &h])?;
    let err = rebuilt.distance(&a)?;
    let scale = a.frobenius_norm();
    let residual = if scale > 0.0 { err / scale } else { err };

    let mut rep = Report::new();
    rep.line(format!("relative residual: {residual:e}"));
    let ok = residual <= args.tol;
    rep.line(if ok { "PASS" } else { "FAIL" });
    if !ok {
        rep.fail(format!("residual {residual:e} exceeds tolerance {:e}", args.tol));
    }
    rep.json = Some(json!({ "relative_residual": residual, "tol": args.tol, "pass": ok }));
    Ok(rep)
}

fn keygen(args: &KeygenArgs) -> Result<Report> {
    let dict = crypto::read_dictionary(&args.dict)?;
    let q = if args.two_sided { Some(args.q.unwrap_or(args.r)) } else { None };
    let (sk, pk) = crypto::keygen(&dict, args.r, args.seed, args.two_sided, q)?;

    let tol = Tolerance::default();
    let mut checks: Vec<(&str, bool)> = vec![
        ("rank(Y2 F) = k", rank_of(&pk.y2f, &tol).rank == pk.k),
        ("Y2 F idempotent", is_idempotent(&pk.y2f, &tol)?),
        ("F Y1 F = F", tol.approx_eq(&Matrix::chain(&[&sk.f, &pk.y1, &sk.f])?, &sk.f)?),
    ];
    if let (Some(h), Some(x1), Some(hx2)) = (&sk.h_star, &pk.x1, &pk.hx2) {
        checks.push(("rank(H* X2) = k", rank_of(hx2, &tol).rank == pk.k));
        checks.push(("H* X2 idempotent", is_idempotent(hx2, &tol)?));
        checks.push(("H* X1 H* = H*", tol.approx_eq(&Matrix::chain(&[h, x1, h])?, h)?));
    }

    let mut rep = Report::new();
    rep.line(format!("k = {}", pk.k));
    rep.line(format!("r = {}", pk.r));
    if let Some(q) = q {
        rep.line(format!("q = {q}"));
    }
    for (name, ok) in &checks {
        rep.line(format!("{} {name}", if *ok { "PASS" } else { "FAIL" }));
    }
    if checks.iter().all(|(_, ok)| *ok) {
        crypto::write_secret_key(&args.out_secret, &sk)?;
        crypto::write_public_key(&args.out_public, &pk)?;
        rep.line(format!("wrote {}", args.out_secret.display()));
        rep.line(format!("wrote {}", args.out_public.display()));
    } else {
        rep.fail("key invariants failed; no files written");
    }
    rep.json = Some(json!({
        "k": pk.k,
        "r": pk.r,
        "q": q,
        "mode": pk.mode(),
        "checks": checks.iter().map(|(n, ok)| json!({ "name": n, "pass": ok })).collect::<Vec<_>>(),
    }));
    Ok(rep)
}

fn encrypt(args: &EncryptArgs) -> Result<Report> {
    let pk = crypto::read_public_key(&args.public)?;
    let dict = crypto::read_dictionary(&args.dict)?;
    let c = match (&args.input, args.column) {
        (Some(path), _) => {
            let bytes = fs::read(path)?;
            crypto::encrypt_bytes(&pk, &dict, &bytes, args.seed)?
        }
        (None, Some(j)) => {
            let column = dict.column(j)?;
            crypto::encrypt_columns(&pk, &Matrix::column_vector(&column)?, args.seed)?
        }
        (None, None) => unreachable!("clap requires one of --in/--column"),
    };
    crypto::write_ciphertext(&args.out, &c)?;

    let mut rep = Report::new();
    rep.line(format!("encrypted {} symbol(s) into a {}x{} payload", c.payload.cols(), c.payload.rows(), c.payload.cols()));
    rep.line(format!("wrote {}", args.out.display()));
    rep.json = Some(json!({
        "symbols": c.payload.cols(),
        "rows": c.payload.rows(),
        "out": args.out.display().to_string(),
    }));
    Ok(rep)
}

fn decrypt(args: &DecryptArgs) -> Result<Report> {
    let sk = crypto::read_secret_key(&args.secret)?;
    let c: Ciphertext = crypto::read_ciphertext(&args.input)?;
    let dict = crypto::read_dictionary(&args.dict)?;
    let bytes = crypto::decrypt_bytes(&sk, &dict, &c)?;

    let mut rep = Report::new();
    rep.line(format!("decrypted {} symbol(s)", bytes.len()));
    match &args.out {
        Some(out) => {
            fs::write(out, &bytes)?;
            rep.line(format!("wrote {}", out.display()));
        }
        None => rep.line(String::from_utf8_lossy(&bytes).into_owned()),
    }
    rep.json = Some(json!({ "symbols": bytes.len(), "bytes": bytes }));
    Ok(rep)
}

fn demo(args: &DemoArgs) -> Result<Report> {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(Error::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let checks = golden_suite()?;
    let mut rep = Report::new();
    let mut items = Vec::new();
    for c in &checks {
        let ok = c.passes(args.tol);
        rep.line(format!("{} {:<40} max deviation {:.3e}", if ok { "PASS" } else { "FAIL" }, c.name, c.deviation));
        items.push(json!({ "name": c.name, "pass": ok, "deviation": c.deviation }));
    }
    let failed = checks.iter().filter(|c| !c.passes(args.tol)).count();
    rep.line(format!("{} of {} passed", checks.len() - failed, checks.len()));
    if failed > 0 {
        rep.fail(format!("{failed} golden check(s) failed at tolerance {:e}", args.tol));
    }
    rep.json = Some(json!({ "tol": args.tol, "items": items, "all_pass": failed == 0 }));
    Ok(rep)
}
