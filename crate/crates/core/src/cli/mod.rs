//! Command-line front end. Every subcommand produces a JSON document, a
//! text rendering and a verification flag; golden files pin the JSON.

pub mod encode;
pub mod parse;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::adams::{eigen_split, idempotent_pi, kernel_psi_minus_gamma, AdamsError};
use crate::arith::{check_odd_prime, modulus_for, ArithError, Fq, FqElem, PadicInt};
use crate::cannibal::{solve_transfer, theta, theta_laws_check, CannibalError, TransferOutcome};
use crate::imj::{imj_table, ImjError};
use crate::profinite::{
    c_k, pairing, phi_dual_check, phi_inverse, phi_iso, Domain, GroupRingElem, LevelFn, ProfiniteError,
};
use crate::ring::Ring;
use crate::series::{fgl_validate, honda_normalize, mult_fgl, SeriesError, TruncSeries};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid value {value:?} for {flag}")]
    Value { flag: &'static str, value: String },
    #[error("{flag} {value:?} is not a p-adic unit")]
    NotUnit { flag: &'static str, value: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("golden file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Profinite(#[from] ProfiniteError),
    #[error(transparent)]
    Adams(#[from] AdamsError),
    #[error(transparent)]
    Cannibal(#[from] CannibalError),
    #[error(transparent)]
    Imj(#[from] ImjError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "morava-calc",
    version,
    about = "Exact checks of Morava K-theory coefficient identities"
)]
pub struct Cli {
    /// Odd prime p.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u64,
    /// Extension degree n of the coefficient field F_{p^n}.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    /// p-adic precision M (digits).
    #[arg(long, global = true, default_value_t = 16)]
    pub precision: u32,
    /// Series truncation degree D.
    #[arg(long, global = true, default_value_t = 64)]
    pub deg: usize,
    /// Profinite level N.
    #[arg(long, global = true, default_value_t = 3)]
    pub level: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Compare the output against this golden directory.
    #[arg(long, global = true)]
    pub golden_dir: Option<PathBuf>,
    /// Rewrite the golden file instead of comparing.
    #[arg(long, global = true, requires = "golden_dir")]
    pub bless: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// a-series [a](y) of the multiplicative law over F_{p^n}.
    Aseries(AseriesArgs),
    /// Normalized Honda p-series in the coordinate y.
    Pseries,
    /// Validate a bivariate law x + y + ... as a formal group law over Z/p^M.
    FglCheck(FglArgs),
    /// Duality between c_k and (1+y)^m at level N.
    Pairing(PairingArgs),
    /// Image of h^m under phi at level N.
    Phi(PhiArgs),
    /// Kernel of psi^g - gamma on functions on the units at level N.
    Kernel(GammaArgs),
    /// Splitting idempotent and eigenspaces of psi^zeta at level one.
    Split,
    /// Cannibalistic class theta_k with its laws.
    Theta(ThetaArgs),
    /// Solve psi^r(s) = theta s for theta = c f_0^m.
    Transfer(TransferArgs),
    /// Image-of-J orders for one k or a range a..b.
    Imj(ImjArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AseriesArgs {
    /// p-adic integer a, as an integer or a digit list [a0,a1,...].
    #[arg(long, default_value = "2")]
    pub k: String,
}

#[derive(Debug, Clone, Args)]
pub struct FglArgs {
    #[arg(long, default_value = "x+y+xy")]
    pub law: String,
}

#[derive(Debug, Clone, Args)]
pub struct PairingArgs {
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct PhiArgs {
    #[arg(long, default_value_t = 1)]
    pub m: u64,
}

#[derive(Debug, Clone, Args)]
pub struct GammaArgs {
    /// A unit: integer, digit list, or one of g, zeta, q.
    #[arg(long, default_value = "g")]
    pub gamma: String,
}

#[derive(Debug, Clone, Args)]
pub struct ThetaArgs {
    #[arg(long, default_value = "2")]
    pub k: String,
    /// Twist exponent.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub m: i64,
    /// Second unit l for the sum and cocycle laws.
    #[arg(long, default_value = "g")]
    pub gamma: String,
}

#[derive(Debug, Clone, Args)]
pub struct TransferArgs {
    /// The unit r; must generate the units at level N.
    #[arg(long, default_value = "g")]
    pub gamma: String,
    /// Constant factor c of theta.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub k: i64,
    /// Exponent m of f_0 in theta.
    #[arg(long, default_value_t = 0)]
    pub m: u32,
}

#[derive(Debug, Clone, Args)]
pub struct ImjArgs {
    #[arg(long, default_value = "1..30", allow_hyphen_values = true)]
    pub k: String,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub p: u64,
    pub n: usize,
    pub precision: u32,
    pub deg: usize,
    pub level: u32,
    pub format: Format,
    pub command: Command,
}

impl JobConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        check_odd_prime(cli.p).map_err(|_| CliError::Value {
            flag: "--p",
            value: cli.p.to_string(),
        })?;
        if !(1..=6).contains(&cli.n) {
            return Err(CliError::Config(format!("--n must be between 1 and 6, got {}", cli.n)));
        }
        if cli.precision == 0 || modulus_for(cli.p, cli.precision).is_err() {
            return Err(CliError::Config(format!(
                "--precision {} is out of range for p = {}",
                cli.precision, cli.p
            )));
        }
        if !(1..=512).contains(&cli.deg) {
            return Err(CliError::Config(format!(
                "--deg must be between 1 and 512, got {}",
                cli.deg
            )));
        }
        if cli.level == 0 || cli.p.checked_pow(cli.level).is_none_or(|s| s > 1 << 12) {
            return Err(CliError::Config(format!(
                "--level {} is out of range for p = {}",
                cli.level, cli.p
            )));
        }
        Ok(Self {
            p: cli.p,
            n: cli.n,
            precision: cli.precision,
            deg: cli.deg,
            level: cli.level,
            format: cli.format,
            command: cli.command.clone(),
        })
    }

    pub fn name(&self) -> &'static str {
        match self.command {
            Command::Aseries(_) => "aseries",
            Command::Pseries => "pseries",
            Command::FglCheck(_) => "fgl-check",
            Command::Pairing(_) => "pairing",
            Command::Phi(_) => "phi",
            Command::Kernel(_) => "kernel",
            Command::Split => "split",
            Command::Theta(_) => "theta",
            Command::Transfer(_) => "transfer",
            Command::Imj(_) => "imj",
        }
    }

    fn field(&self) -> Result<Fq, CliError> {
        Ok(Fq::new(self.p, self.n)?)
    }
}

/// The result of one subcommand.
#[derive(Debug, Clone)]
pub struct Output {
    pub doc: Value,
    pub text: String,
    /// Every verification performed by the subcommand succeeded.
    pub ok: bool,
}

impl Output {
    /// Deterministic bytes in the requested format, newline-terminated.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.doc).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

pub fn dispatch(cfg: &JobConfig) -> Result<Output, CliError> {
    match &cfg.command {
        Command::Aseries(a) => aseries(cfg, a),
        Command::Pseries => pseries(cfg),
        Command::FglCheck(a) => fgl_check(cfg, a),
        Command::Pairing(a) => pairing_cmd(cfg, a),
        Command::Phi(a) => phi(cfg, a),
        Command::Kernel(a) => kernel(cfg, a),
        Command::Split => split(cfg),
        Command::Theta(a) => theta_cmd(cfg, a),
        Command::Transfer(a) => transfer(cfg, a),
        Command::Imj(a) => imj(cfg, a),
    }
}

fn header(cfg: &JobConfig) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(cfg.name()));
    m.insert("p".into(), json!(cfg.p));
    m.insert("n".into(), json!(cfg.n));
    m
}

fn aseries(cfg: &JobConfig, args: &AseriesArgs) -> Result<Output, CliError> {
    let zero = cfg.field()?.zero();
    let a = parse::padic(&args.k, cfg.p, cfg.precision)?;
    let law = mult_fgl(zero.one_like(), cfg.deg)?;
    let series = law.a_series(&a)?;

    // (1+y)^a - 1 = prod_i (1 + y^{p^i})^{a_i} - 1 in characteristic p
    let mut expected = TruncSeries::one(&zero, cfg.deg);
    let mut pi = 1usize;
    for d in a.digits() {
        if pi > cfg.deg {
            break;
        }
        let factor = &TruncSeries::one(&zero, cfg.deg) + &TruncSeries::monomial(zero.one_like(), pi, cfg.deg);
        expected = &expected * &factor.pow(d);
        pi = pi.saturating_mul(cfg.p as usize);
    }
    let expected = &expected - &TruncSeries::one(&zero, cfg.deg);
    let matches = expected == series;

    let mut doc = header(cfg);
    doc.insert("precision".into(), json!(cfg.precision));
    doc.insert("deg".into(), json!(cfg.deg));
    doc.insert("a".into(), encode::padic(&a));
    doc.insert("series".into(), encode::series(&series));
    doc.insert("matches_binomial".into(), json!(matches));
    let text = format!(
        "[{}](y) over F_{}^{} to degree {}:\n{}\nagrees with (1+y)^a - 1: {}",
        a.value(),
        cfg.p,
        cfg.n,
        cfg.deg,
        series,
        matches
    );
    Ok(Output {
        doc: Value::Object(doc),
        text,
        ok: matches,
    })
}

fn pseries(cfg: &JobConfig) -> Result<Output, CliError> {
    let mut doc = header(cfg);
    doc.insert("deg".into(), json!(cfg.deg));
    match honda_normalize(cfg.p, cfg.n, cfg.deg) {
        Ok(r) => {
            let ok = r.weight_identity && r.xi_identity;
            doc.insert("xi".into(), encode::fq(&r.xi));
            doc.insert("g_n".into(), json!(r.g_n));
            doc.insert("vn_exponent".into(), json!(r.vn_exponent));
            doc.insert("weight_identity".into(), json!(r.weight_identity));
            doc.insert("xi_identity".into(), json!(r.xi_identity));
            doc.insert("normalized".into(), json!(r.normalized.to_string()));
            doc.insert("series".into(), encode::series(&r.normalized));
            Ok(Output {
                doc: Value::Object(doc),
                text: r.normalized.to_string(),
                ok,
            })
        }
        Err(SeriesError::NormalizationFailure { residual }) => {
            let text = format!("normalization failed; residual terms {residual:?}");
            doc.insert(
                "residual".into(),
                serde_json::to_value(&residual).expect("serializable"),
            );
            Ok(Output {
                doc: Value::Object(doc),
                text,
                ok: false,
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn fgl_check(cfg: &JobConfig, args: &FglArgs) -> Result<Output, CliError> {
    let proto = PadicInt::zero(cfg.p, cfg.precision)?;
    let law = parse::law(&args.law, &proto, cfg.deg as u32)?;
    let rendered = law.to_string();
    let mut doc = header(cfg);
    doc.insert("precision".into(), json!(cfg.precision));
    doc.insert("deg".into(), json!(cfg.deg));
    doc.insert("law".into(), json!(rendered));
    let (ok, text) = match fgl_validate(law) {
        Ok(_) => {
            doc.insert("valid".into(), json!(true));
            (
                true,
                format!("{rendered} is a formal group law to total degree {}", cfg.deg),
            )
        }
        Err(SeriesError::AxiomFailure { axiom, degree }) => {
            doc.insert("valid".into(), json!(false));
            doc.insert("axiom".into(), json!(axiom.to_string()));
            doc.insert("degree".into(), json!(degree));
            (
                false,
                format!("{rendered} fails {axiom} at x^{}y^{}", degree[0], degree[1]),
            )
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Output {
        doc: Value::Object(doc),
        text,
        ok,
    })
}

fn pairing_cmd(cfg: &JobConfig, args: &PairingArgs) -> Result<Output, CliError> {
    let report = phi_dual_check(cfg.p, cfg.level, cfg.n)?;
    let mut doc = header(cfg);
    doc.insert("level".into(), json!(cfg.level));
    doc.insert("checked".into(), json!(report.checked));
    doc.insert("mismatches".into(), json!(report.mismatches));
    doc.insert("holds".into(), json!(report.holds));
    let mut text = format!(
        "<c_k, (1+y)^m> = m_k for all m < {}^{}, k < {}: {} ({} pairs)",
        cfg.p, cfg.level, cfg.level, report.holds, report.checked
    );
    match (args.m, args.k) {
        (Some(m), Some(k)) => {
            let zero = cfg.field()?.zero();
            if k >= cfg.level || m >= cfg.p.pow(cfg.level) {
                return Err(CliError::Config(format!(
                    "need m < p^N and k < N, got m = {m}, k = {k}"
                )));
            }
            let value = pairing(
                &GroupRingElem::basis(&zero, cfg.p, cfg.level, m)?,
                &c_k(&zero, cfg.p, cfg.level, k)?,
            )?;
            doc.insert("m".into(), json!(m));
            doc.insert("k".into(), json!(k));
            doc.insert("value".into(), encode::fq(&value));
            text.push_str(&format!("\n<c_{k}, (1+y)^{m}> = {value}"));
        }
        (None, None) => {}
        _ => return Err(CliError::Config("--m and --k must be given together".into())),
    }
    Ok(Output {
        doc: Value::Object(doc),
        text,
        ok: report.holds,
    })
}

fn phi(cfg: &JobConfig, args: &PhiArgs) -> Result<Output, CliError> {
    let zero = cfg.field()?.zero();
    let x = GroupRingElem::basis(&zero, cfg.p, cfg.level, args.m)?;
    let series = phi_iso(&x)?;
    let round_trip = phi_inverse(&series, cfg.p, cfg.level)? == x;
    let mut doc = header(cfg);
    doc.insert("level".into(), json!(cfg.level));
    doc.insert("m".into(), json!(args.m));
    doc.insert("series".into(), encode::series(&series));
    doc.insert("round_trip".into(), json!(round_trip));
    let text = format!(
        "phi(h^{}) at level {} = {}\nphi^-1 recovers h^{}: {}",
        args.m, cfg.level, series, args.m, round_trip
    );
    Ok(Output {
        doc: Value::Object(doc),
        text,
        ok: round_trip,
    })
}

fn kernel(cfg: &JobConfig, args: &GammaArgs) -> Result<Output, CliError> {
    let gamma = parse::unit(&args.gamma, "--gamma", cfg.p, cfg.precision.max(cfg.level))?;
    let k = kernel_psi_minus_gamma(&gamma, cfg.p, cfg.n, cfg.level)?;
    let values = k.generator.values();
    let constant = values.iter().all(|v| *v == values[0]);
    let mut doc = header(cfg);
    doc.insert("level".into(), json!(cfg.level));
    doc.insert("gamma".into(), encode::padic(gamma.as_int()));
    doc.insert("gamma_residue".into(), json!(k.gamma_residue));
    doc.insert("points".into(), json!(k.generator.points()));
    doc.insert("generator".into(), encode::table(&k.generator));
    doc.insert("constant".into(), json!(constant));
    doc.insert("nullity".into(), json!(k.nullity));
    doc.insert("certified".into(), json!(k.certified));
    let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    let text = format!(
        "ker(psi^g - {}) at level {}: dimension {}, certified {}\ngenerator on units {:?}:\n[{}]{}",
        gamma.value(),
        cfg.level,
        k.nullity,
        k.certified,
        k.generator.points(),
        shown.join(", "),
        if constant { "\n(constant function)" } else { "" }
    );
    Ok(Output {
        doc: Value::Object(doc),
        text,
        ok: k.certified,
    })
}

fn split(cfg: &JobConfig) -> Result<Output, CliError> {
    let pi = idempotent_pi(cfg.p, cfg.n)?;
    let eig = eigen_split(cfg.p, cfg.n)?;
    let mut doc = header(cfg);
    doc.insert("pi".into(), encode::matrix(&pi.matrix));
    doc.insert("psi_zeta".into(), encode::matrix(&pi.psi_zeta));
    doc.insert("idempotent".into(), json!(pi.idempotent));
    doc.insert("rank".into(), json!(pi.rank));
    doc.insert("trace".into(), encode::fq(&pi.trace));
    doc.insert("intertwines".into(), json!(pi.intertwines));
    doc.insert("image_is_c0".into(), json!(pi.image_is_c0));
    doc.insert(
        "eigenvalues".into(),
        Value::Array(eig.eigenvalues.iter().map(encode::fq).collect()),
    );
    doc.insert("multiplicities".into(), json!(eig.multiplicities));
    doc.insert("eigenvectors".into(), json!(eig.eigenvectors));
    doc.insert("diagonal_on_monomials".into(), json!(eig.diagonal_on_monomials));
    let ok = pi.holds() && eig.holds();
    let text = format!(
        "pi^2 = pi: {}, rank {}, trace {}, pi psi^zeta = zeta pi: {}, image c_0: {}\n\
         eigenvalue multiplicities of psi^zeta: {:?}\neigenvectors c_0^j with j in {:?}",
        pi.idempotent, pi.rank, pi.trace, pi.intertwines, pi.image_is_c0, eig.multiplicities, eig.eigenvectors
    );
    Ok(Output {
        doc: Value::Object(doc),
        text,
        ok,
    })
}

fn theta_cmd(cfg: &JobConfig, args: &ThetaArgs) -> Result<Output, CliError> {
    let zero = cfg.field()?.zero();
    let k = parse::unit(&args.k, "--k", cfg.p, cfg.precision)?;
    let l = parse::unit(&args.gamma, "--gamma", cfg.p, cfg.precision)?;
    let law = mult_fgl(zero.one_like(), cfg.deg)?;
    let class = theta(&law, k.as_int(), args.m)?;
    let laws = theta_laws_check(&law, k.as_int(), l.as_int(), args.m)?;
    let mut doc = header(cfg);
    doc.insert("precision".into(), json!(cfg.precision));
    doc.insert("deg".into(), json!(cfg.deg));
    doc.insert("k".into(), encode::padic(k.as_int()));
    doc.insert("l".into(), encode::padic(l.as_int()));
    doc.insert("twist".into(), json!(args.m));
    doc.insert("series".into(), encode::series(&class.series));
    doc.insert("laws".into(), serde_json::to_value(&laws).expect("serializable"));
    let ok = laws.holds();
    let text = format!(
        "theta_{} (twist {}) = {}\nunit constant {}, sum law {}, inverse law {}, twist law {}, cocycle with l = {}: {}",
        k.value(),
        args.m,
        class.series,
        laws.unit_constant,
        laws.sum_law,
        laws.inverse_law,
        laws.twist_law,
        l.value(),
        laws.cocycle
    );
    Ok(Output {
        doc: Value::Object(doc),
        text,
        ok,
    })
}

fn transfer(cfg: &JobConfig, args: &TransferArgs) -> Result<Output, CliError> {
    let field = cfg.field()?;
    let r = parse::unit(&args.gamma, "--gamma", cfg.p, cfg.precision.max(cfg.level))?;
    let c = field.from_int(args.k);
    let theta_fn = LevelFn::from_fn(cfg.p, cfg.level, Domain::Units, |x| {
        c.clone() * field.from_int((x % cfg.p) as i64).pow(args.m as u64)
    })?;
    let outcome = solve_transfer(&theta_fn, &r)?;
    let mut doc = header(cfg);
    doc.insert("level".into(), json!(cfg.level));
    doc.insert("r".into(), encode::padic(r.as_int()));
    doc.insert("c".into(), encode::fq(&c));
    doc.insert("m".into(), json!(args.m));
    doc.insert("theta".into(), encode::table(&theta_fn));
    let (ok, text) = match &outcome {
        TransferOutcome::Solved(sol) => {
            doc.insert("solvable".into(), json!(true));
            doc.insert("s".into(), encode::table(&sol.s));
            doc.insert("verified".into(), json!(sol.verified));
            let shown: Vec<String> = sol.s.values().iter().map(FqElem::to_string).collect();
            (
                sol.verified,
                format!(
                    "psi^{}(s) = theta s solved with s(1) = 1, verified {}:\n[{}]",
                    r.value(),
                    sol.verified,
                    shown.join(", ")
                ),
            )
        }
        TransferOutcome::NoSolution { orbit_product } => {
            doc.insert("solvable".into(), json!(false));
            doc.insert("orbit_product".into(), encode::fq(orbit_product));
            (
                true,
                format!("no solution: the orbit product of theta is {orbit_product}, not 1"),
            )
        }
    };
    Ok(Output {
        doc: Value::Object(doc),
        text,
        ok,
    })
}

fn imj(cfg: &JobConfig, args: &ImjArgs) -> Result<Output, CliError> {
    let (ks, is_range) = parse::k_values(&args.k)?;
    let reports = imj_table(cfg.p, &ks, Some(cfg.precision))?;
    let ok = reports.iter().all(|r| r.pass);
    let lines: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "k = {}: s = {}, v_p(q^k - 1) = {}, order {}^{} = {}{}",
                r.k,
                r.s,
                r.valuation,
                r.p,
                r.order_exponent,
                r.order,
                if r.pass { "" } else { "  MISMATCH" }
            )
        })
        .collect();
    let doc = if is_range {
        serde_json::to_value(&reports)
    } else {
        serde_json::to_value(&reports[0])
    }
    .expect("serializable");
    Ok(Output {
        doc,
        text: lines.join("\n"),
        ok,
    })
}

/// Golden file name for a configuration.
pub fn golden_path(dir: &Path, cfg: &JobConfig) -> PathBuf {
    let ext = match cfg.format {
        Format::Json => "json",
        Format::Text => "txt",
    };
    dir.join(format!("{}_p{}_n{}.{ext}", cfg.name(), cfg.p, cfg.n))
}

/// Parses, dispatches, prints and compares with golden files. Returns the
/// process exit code: 0 success, 1 verification failure, 2 usage error.
pub fn run<I, T>(args: I, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let result = JobConfig::from_cli(&cli).and_then(|cfg| dispatch(&cfg).map(|o| (cfg, o)));
    let (cfg, output) = match result {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let bytes = output.render(cfg.format);
    let _ = write!(out, "{bytes}");
    let mut code = if output.ok { 0 } else { 1 };
    if !output.ok {
        let _ = writeln!(err, "verification failed");
    }
    if let Some(dir) = &cli.golden_dir {
        let path = golden_path(dir, &cfg);
        if cli.bless {
            let written = fs::create_dir_all(dir).and_then(|_| fs::write(&path, &bytes));
            if let Err(source) = written {
                let _ = writeln!(err, "error: {}", CliError::Io { path, source });
                return 2;
            }
        } else {
            match fs::read_to_string(&path) {
                Ok(expected) if expected == bytes => {}
                Ok(_) => {
                    let _ = writeln!(err, "output differs from golden file {}", path.display());
                    code = 1;
                }
                Err(source) => {
                    let _ = writeln!(err, "error: {}", CliError::Io { path, source });
                    return 2;
                }
            }
        }
    }
    code
}

#[cfg(test)]
mod tests;
