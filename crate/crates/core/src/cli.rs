//! Command-line front end. Exit status: 0 when every requested check
//! holds, 1 when one fails, 2 for usage and parameter errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::charpoly::{charpoly, eta, g_poly, nu, phi, phi_tilde, psi, Polynomial};
use crate::classify::{classify, Caps, ClassReport, MinRealEig, Property};
use crate::error::{Error, Result};
use crate::exact::{format_fraction, parse_rational, RatMatrix, Rational};
use crate::family::{build_a, build_b, FamilyParams};
use crate::hurwitz::{
    build_hurwitz, closed_form_minor, hurwitz_minor_2to5, routh_report, threshold_scan, tnn_spot_check,
};
use crate::reproduce::{eta_stability_table, run_all, ReproduceOptions};
use crate::rootfind::{complex_roots, dyadic_width, RealRootIsolator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "gkk",
    version,
    about = "Exact certification of GKK and tau-matrices and their stability"
)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Real-root enclosures are refined to width 2^-PRECISION.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Worker threads for the sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Override every brute-force sweep cap.
    #[arg(long = "cap-n", global = true)]
    pub cap_n: Option<usize>,
    /// TOML file with defaults for the global flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family member, the limit matrix, or the identity.
    Build(MatrixArgs),
    /// Run matrix class checks.
    Classify(ClassifyArgs),
    /// Exact characteristic polynomial, or one of the named polynomials.
    Charpoly(PolyArgs),
    /// Real root enclosures and complex roots.
    Roots(PolyArgs),
    /// Hurwitz matrix of eta_k with its minor, stability and sign checks.
    Hurwitz(HurwitzArgs),
    /// Sign table of the Hurwitz minor H_k[2:5].
    ScanK(ScanArgs),
    /// Run the full reproduction suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    /// Order of the family member.
    #[arg(long)]
    pub n: Option<usize>,
    /// Band parameter (number of leading zeros in the first row).
    #[arg(long)]
    pub k: Option<usize>,
    /// Rational in (0, 1), e.g. 1/2.
    #[arg(long)]
    pub t: Option<String>,
    /// The t -> 0 limit of order 2k+2.
    #[arg(long)]
    pub limit: bool,
    /// Matrix in the JSON exchange format.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Identity of this order.
    #[arg(long)]
    pub identity: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Comma-separated subset of P,WSS,GKK,OMEGA,TAU,POS_STABLE,VARGA_WEDGE, or "all".
    #[arg(long, default_value = "all")]
    pub properties: String,
    /// Angle slack for the wedge check, in radians.
    #[arg(long, default_value_t = 1e-12)]
    pub wedge_tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Named {
    Phi,
    PhiTilde,
    G,
    Nu,
    Psi,
    Eta,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Use a named polynomial instead of a characteristic polynomial.
    #[arg(long, value_enum)]
    pub named: Option<Named>,
    #[arg(long)]
    pub j: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HurwitzArgs {
    #[arg(long)]
    pub k: usize,
    /// Largest minor order for the sign search.
    #[arg(long, default_value_t = 4)]
    pub tnn_order: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 40)]
    pub k_max: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Settings read from `--config`; flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub precision: Option<u32>,
    pub jobs: Option<usize>,
    pub cap_n: Option<usize>,
}

/// Global settings after merging the config file and flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub output: Option<PathBuf>,
    pub format: Format,
    pub precision: u32,
    pub jobs: usize,
    pub caps: Caps,
    pub digits: usize,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            None => FileConfig::default(),
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
            }
        };
        let precision = cli.precision.or(file.precision).unwrap_or(80);
        if !(1..=4096).contains(&precision) {
            return Err(Error::InvalidParameter(format!(
                "precision {precision} outside 1..=4096"
            )));
        }
        let jobs = cli.jobs.or(file.jobs).unwrap_or(1);
        if jobs == 0 {
            return Err(Error::InvalidParameter("jobs must be >= 1".into()));
        }
        Ok(Self {
            output: cli.output.clone().or(file.output),
            format: cli.format.or(file.format).unwrap_or(Format::Json),
            precision,
            jobs,
            caps: cli.cap_n.or(file.cap_n).map_or_else(Caps::default, Caps::uniform),
            digits: 25,
        })
    }

    fn precision_json(&self) -> Value {
        json!({ "refine_bits": self.precision, "digits": self.digits })
    }
}

struct Loaded {
    matrix: RatMatrix,
    params: Map<String, Value>,
}

fn parse_t(text: &str) -> Result<Rational> {
    parse_rational(text)
}

fn load_matrix(args: &MatrixArgs) -> Result<Loaded> {
    let sources = [
        args.input.is_some(),
        args.identity.is_some(),
        args.limit,
        args.n.is_some(),
    ]
    .iter()
    .filter(|&&x| x)
    .count();
    if sources != 1 {
        return Err(Error::InvalidParameter(
            "give exactly one of --input, --identity, --limit (with --k), or --n with --k and --t".into(),
        ));
    }
    if let Some(path) = &args.input {
        let matrix = RatMatrix::from_json(&std::fs::read_to_string(path)?)?;
        let mut params = Map::new();
        params.insert("input".into(), Value::from(path.display().to_string()));
        return Ok(Loaded { matrix, params });
    }
    if let Some(n) = args.identity {
        if n == 0 {
            return Err(Error::InvalidParameter("identity order must be >= 1".into()));
        }
        let mut params = Map::new();
        params.insert("identity".into(), Value::from(n));
        return Ok(Loaded {
            matrix: RatMatrix::identity(n),
            params,
        });
    }
    let k = args
        .k
        .ok_or_else(|| Error::InvalidParameter("--k is required".into()))?;
    if args.limit {
        let matrix = build_b(k)?;
        let params = json!({ "k": k, "limit": true, "n": 2 * k + 2 });
        return Ok(Loaded {
            matrix,
            params: params.as_object().cloned().expect("object"),
        });
    }
    let n = args.n.expect("checked above");
    let t = parse_t(
        args.t
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("--t is required with --n".into()))?,
    )?;
    let fp = FamilyParams::new(n, k, t)?;
    let matrix = build_a(&fp)?;
    let params = serde_json::to_value(fp.to_json_value())?;
    Ok(Loaded {
        matrix,
        params: params.as_object().cloned().expect("object"),
    })
}

fn parse_properties(text: &str) -> Result<Vec<Property>> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(Property::ALL.to_vec());
    }
    text.split(',').map(Property::parse).collect()
}

fn named_polynomial(args: &PolyArgs, which: Named) -> Result<(Polynomial, Map<String, Value>)> {
    let m = &args.matrix;
    let k =
        m.k.ok_or_else(|| Error::InvalidParameter("--k is required for named polynomials".into()))?;
    let need_j = || args.j.ok_or_else(|| Error::InvalidParameter("--j is required".into()));
    let need_t = || {
        m.t.as_deref()
            .ok_or_else(|| Error::InvalidParameter("--t is required".into()))
            .and_then(parse_t)
    };
    let mut params = Map::new();
    params.insert("named".into(), Value::from(format!("{which:?}").to_lowercase()));
    params.insert("k".into(), Value::from(k));
    let p = match which {
        Named::Phi | Named::PhiTilde | Named::G => {
            let (t, j) = (need_t()?, need_j()?);
            params.insert("t".into(), Value::from(format_fraction(&t)));
            params.insert("j".into(), Value::from(j));
            match which {
                Named::Phi => phi(k, &t, j)?,
                Named::PhiTilde => phi_tilde(k, &t, j)?,
                _ => g_poly(k, &t, j)?,
            }
        }
        Named::Nu => {
            let j = need_j()?;
            params.insert("j".into(), Value::from(j));
            nu(k, j)?
        }
        Named::Psi => psi(k)?,
        Named::Eta => eta(k)?,
    };
    Ok((p, params))
}

fn polynomial_for(args: &PolyArgs) -> Result<(Polynomial, Map<String, Value>)> {
    match args.named {
        Some(which) => named_polynomial(args, which),
        None => {
            let loaded = load_matrix(&args.matrix)?;
            Ok((charpoly(&loaded.matrix)?, loaded.params))
        }
    }
}

fn csv_fraction_rows(m: &RatMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_fraction).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn cmd_build(args: &MatrixArgs, cfg: &RunConfig) -> Result<(String, i32)> {
    let loaded = load_matrix(args)?;
    let text = match cfg.format {
        Format::Json => {
            let mut v = serde_json::to_value(loaded.matrix.to_json_value())?;
            v.as_object_mut()
                .expect("object")
                .insert("params".into(), Value::Object(loaded.params));
            pretty(&v)
        }
        Format::Csv => csv_fraction_rows(&loaded.matrix),
    };
    Ok((text, EXIT_OK))
}

fn cmd_classify(args: &ClassifyArgs, cfg: &RunConfig) -> Result<(String, i32)> {
    let props = parse_properties(&args.properties)?;
    let loaded = load_matrix(&args.matrix)?;
    let reports: Vec<ClassReport> = classify(&loaded.matrix, &props, &cfg.caps, args.wedge_tol)?
        .into_iter()
        .map(|r| r.with_params(&loaded.params))
        .collect();
    let all_hold = reports.iter().all(|r| r.holds);
    let text = match cfg.format {
        Format::Json => pretty(&json!({
            "reports": reports.iter().map(|r| r.to_json_value(cfg.digits)).collect::<Vec<_>>(),
            "all_hold": all_hold,
            "precision": cfg.precision_json(),
        })),
        Format::Csv => {
            let mut out = String::from("property,holds,witness\n");
            for r in &reports {
                let kind = r.witness.as_ref().map_or("", |w| w.kind());
                out.push_str(&format!("{},{},{}\n", r.property, r.holds, kind));
            }
            out
        }
    };
    Ok((text, if all_hold { EXIT_OK } else { EXIT_FAILED }))
}

fn cmd_charpoly(args: &PolyArgs, cfg: &RunConfig) -> Result<(String, i32)> {
    let (p, params) = polynomial_for(args)?;
    let text = match cfg.format {
        Format::Json => pretty(&json!({
            "polynomial": p.to_json_value(),
            "degree": p.degree(),
            "display": p.to_string(),
            "params": params,
        })),
        Format::Csv => {
            let mut out = String::from("degree,coefficient\n");
            for (i, c) in p.coeffs().iter().enumerate() {
                out.push_str(&format!("{i},{}\n", format_fraction(c)));
            }
            out
        }
    };
    Ok((text, EXIT_OK))
}

fn cmd_roots(args: &PolyArgs, cfg: &RunConfig) -> Result<(String, i32)> {
    let (p, params) = polynomial_for(args)?;
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidParameter("roots of a constant polynomial".into()));
    }
    let width = dyadic_width(cfg.precision as usize);
    let iso = RealRootIsolator::new(&p)?;
    let b = iso.bound().clone();
    let real: Vec<_> = iso
        .isolate(&-b.clone(), &b)
        .iter()
        .map(|e| iso.refine(e, &width))
        .collect();
    let complex = complex_roots(&p, 1e-20)?;
    let text = match cfg.format {
        Format::Json => {
            let l = MinRealEig::of_polynomial(&p).map(|mut l| {
                l.refine(&width);
                l.to_json_value(cfg.digits)
            })?;
            pretty(&json!({
                "degree": p.degree(),
                "real_roots": real.iter().map(|e| e.to_json_value(cfg.digits)).collect::<Vec<_>>(),
                "least_real_root": l,
                "complex_roots": complex.iter().map(|r| r.to_json_value(cfg.digits)).collect::<Vec<_>>(),
                "params": params,
                "precision": cfg.precision_json(),
            }))
        }
        Format::Csv => {
            let mut out = String::from("re,im,residual\n");
            for r in &complex {
                let j = r.to_json_value(cfg.digits);
                out.push_str(&format!("{},{},{}\n", j.re, j.im, j.residual));
            }
            out
        }
    };
    Ok((text, EXIT_OK))
}

fn cmd_hurwitz(args: &HurwitzArgs, cfg: &RunConfig) -> Result<(String, i32)> {
    let p = eta(args.k)?;
    let h = build_hurwitz(&p)?;
    let routh = routh_report(&p)?;
    let tnn = tnn_spot_check(&h, args.tnn_order.min(h.order()))?;
    let (minor, closed) = if args.k >= 3 {
        (Some(hurwitz_minor_2to5(args.k)?), Some(closed_form_minor(args.k)?))
    } else {
        (None, None)
    };
    let text = match cfg.format {
        Format::Json => pretty(&json!({
            "k": args.k,
            "polynomial": p.to_json_value(),
            "matrix": h.matrix().to_json_value(),
            "minor_2_5": minor.as_ref().map(format_fraction),
            "closed_form": closed.as_ref().map(format_fraction),
            "minor_agrees": minor.is_some().then(|| minor == closed),
            "routh": {
                "decision": routh.decision,
                "leading_minors": routh.leading_minors.iter().map(format_fraction).collect::<Vec<_>>(),
                "imaginary_axis_root": routh.imaginary_axis_root,
            },
            "minor_sign_search": {
                "max_order": tnn.max_order,
                "minors_checked": tnn.minors_checked,
                "negative": tnn.negative.as_ref().map(|m| json!({
                    "rows": m.rows.members(),
                    "cols": m.cols.members(),
                    "value": format_fraction(&m.value),
                })),
            },
        })),
        Format::Csv => csv_fraction_rows(h.matrix()),
    };
    Ok((text, EXIT_OK))
}

fn cmd_scan_k(args: &ScanArgs, cfg: &RunConfig) -> Result<(String, i32)> {
    let scan = threshold_scan(args.k_max)?;
    let text = match cfg.format {
        Format::Csv => scan.to_csv(),
        Format::Json => pretty(&serde_json::to_value(scan.to_json_value())?),
    };
    match scan.first_negative {
        Some(k) => eprintln!("first unstable k = {k}"),
        None => eprintln!("no unstable k up to {}", args.k_max),
    }
    Ok((text, EXIT_OK))
}

fn cmd_verify(args: &VerifyArgs, cfg: &RunConfig) -> Result<(String, i32)> {
    let mut opts = ReproduceOptions {
        digits: cfg.digits,
        ..ReproduceOptions::default()
    };
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    let results = run_all(&opts)?;
    for r in &results {
        eprintln!("{}", r.line());
    }
    let pass = results.iter().all(|r| r.pass);
    let eta_table = eta_stability_table(20)?;
    let text = match cfg.format {
        Format::Json => pretty(&json!({
            "checks": results,
            "all_pass": pass,
            "eta_stability_k_1_to_20": eta_table
                .iter()
                .map(|(k, s)| json!({ "k": k, "decision": s }))
                .collect::<Vec<_>>(),
            "precision": cfg.precision_json(),
        })),
        Format::Csv => {
            let mut out = String::from("id,name,pass\n");
            for r in &results {
                out.push_str(&format!("{},\"{}\",{}\n", r.id, r.name, r.pass));
            }
            out
        }
    };
    Ok((text, if pass { EXIT_OK } else { EXIT_FAILED }))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Run a parsed command and return its exit status.
pub fn execute(cli: &Cli) -> Result<i32> {
    let cfg = RunConfig::resolve(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let (text, code) = pool.install(|| match &cli.command {
        Command::Build(a) => cmd_build(a, &cfg),
        Command::Classify(a) => cmd_classify(a, &cfg),
        Command::Charpoly(a) => cmd_charpoly(a, &cfg),
        Command::Roots(a) => cmd_roots(a, &cfg),
        Command::Hurwitz(a) => cmd_hurwitz(a, &cfg),
        Command::ScanK(a) => cmd_scan_k(a, &cfg),
        Command::VerifyPaper(a) => cmd_verify(a, &cfg),
    })?;
    emit(&text, cfg.output.as_deref())?;
    Ok(code)
}

/// Entry point for the binary: parse `args`, run, and map errors to exit
/// status 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
