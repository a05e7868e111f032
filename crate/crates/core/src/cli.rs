//! Batch command-line front end. Every command prints one JSON report.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bracket::{bracket, hcm_norm, NormReport};
use crate::demos::Demo;
use crate::error::Error;
use crate::gabor::{
    aframe_bounds_empirical, bessel_xz_norm, ccj_increments, ccj_partial_sums, frame_bounds_direct_eigen,
    frame_bounds_multiplier, frame_bounds_zak, is_nonnegative_real, modular_frame_check, multiplier_windows,
    FrameBoundsReport, GaborLattice,
};
use crate::grid::{format_rational, parse_rational, Complex, Rational, SampledFunction};
use crate::perturb::{additive_certify, additive_certify_empirical, multiplicative_certify, product_window};
use crate::windows::{make_window, WindowKind};
use crate::zak::{default_nv, zak, zak_energy_grid};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INCOMPATIBLE: u8 = 3;

const DEFAULT_N: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "hcm-gabor", version, about = "Bracket-product analysis of Gabor systems on rational lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct WindowArgs {
    /// Built-in window: box, dyadic:K, spikes:K, harmonic:K, cusp, gauss:SIGMA,HALFWIDTH
    #[arg(long, conflicts_with = "file")]
    window: Option<String>,
    /// Window stored as JSON {n, lo, hi, re, im}
    #[arg(long)]
    file: Option<PathBuf>,
    /// Cells per unit (refines a file window if given)
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    /// Time step P/Q
    #[arg(long, default_value = "1")]
    a: String,
    /// Frequency step P/Q
    #[arg(long, default_value = "1")]
    b: String,
    /// Denominator of a = 1/q, checked against --a
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Args, Debug)]
struct TrialArgs {
    #[arg(long, default_value_t = 64)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct JsonOut {
    /// Also write the report here
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Zak bounds where the lattice allows them, otherwise empirical
    Auto,
    Aframe,
    Modular,
    DirectEigen,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zak transform of a window
    Zak {
        #[command(flatten)]
        window: WindowArgs,
        /// Frequency samples (default: support length)
        #[arg(long)]
        nv: Option<usize>,
        /// Write |Z| as CSV, one row per t sample
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Frame bounds of (g, a, b)
    Bounds {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        trials: TrialArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Write the Zak multiplier grid as CSV (Zak methods only)
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Bracket product <f, T_shift h>_a over one period
    Bracket {
        #[command(flatten)]
        window: WindowArgs,
        /// Second window (default: the first)
        #[arg(long)]
        with: Option<String>,
        /// Translation P/Q applied to the second window
        #[arg(long, default_value = "0")]
        shift: String,
        /// Period P/Q
        #[arg(long, default_value = "1")]
        a: String,
        /// Write x,re,im as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Bracket, L2, sup and amalgam norms
    Norms {
        #[command(flatten)]
        window: WindowArgs,
        /// Frequency step; the bracket period is 1/b
        #[arg(long, default_value = "1")]
        b: String,
        #[command(flatten)]
        out: JsonOut,
    },
    /// X_Z norm and summability partial sums
    Bessel {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 10)]
        terms: u32,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Perturbation certificate for g + (h - g) or (1 + eps*d)*g
    Perturb {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Additive: the perturbed window h
        #[arg(long, conflicts_with = "perturb")]
        with: Option<String>,
        /// Multiplicative: the deviation d of f = 1 + eps*d
        #[arg(long)]
        perturb: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[command(flatten)]
        trials: TrialArgs,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Reproduce a named example end to end
    Demo {
        /// dyadic-frame, harmonic-not-bessel, spikes-unbounded, cusp-fourier, box-halfstep, mult-perturb
        name: String,
        #[command(flatten)]
        out: JsonOut,
    },
}

/// Report printed by every command. `timing_ms` is the only field that
/// varies between identical runs.
#[derive(Serialize, Debug)]
pub struct Report {
    pub tool_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub timing_ms: f64,
}

/// Exit code and text for the two output streams.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Lib(Error),
    Io(String),
    Read(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse(_) | Error::Malformed(_)) | Failure::Read(_) => EXIT_PARSE,
            Failure::Lib(_) => EXIT_INCOMPATIBLE,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(m) | Failure::Read(m) => m.clone(),
        }
    }
}

type CmdResult = Result<(Value, Value), Failure>;

/// Parses `argv` (program name first), runs the command and renders the report.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: text },
            };
        }
    };
    let start = Instant::now();
    let (name, json_path) = describe(&cli.command);
    let outcome = dispatch(&cli.command);
    let (inputs, results) = match outcome {
        Ok(pair) => pair,
        Err(f) => return Outcome { code: f.code(), stdout: String::new(), stderr: format!("error: {}\n", f.message()) },
    };
    let report = Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: name.to_string(),
        inputs,
        results,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let text = serde_json::to_string_pretty(&report).expect("report is plain JSON");
    if let Some(path) = json_path {
        if let Err(f) = write_file(path, &text) {
            return Outcome { code: f.code(), stdout: String::new(), stderr: format!("error: {}\n", f.message()) };
        }
    }
    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
}

fn describe(cmd: &Command) -> (&'static str, Option<&Path>) {
    match cmd {
        Command::Zak { out, .. } => ("zak", out.json.as_deref()),
        Command::Bounds { out, .. } => ("bounds", out.json.as_deref()),
        Command::Bracket { out, .. } => ("bracket", out.json.as_deref()),
        Command::Norms { out, .. } => ("norms", out.json.as_deref()),
        Command::Bessel { out, .. } => ("bessel", out.json.as_deref()),
        Command::Perturb { out, .. } => ("perturb", out.json.as_deref()),
        Command::Demo { out, .. } => ("demo", out.json.as_deref()),
    }
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Zak { window, nv, csv, .. } => cmd_zak(window, *nv, csv.as_deref()),
        Command::Bounds { window, lattice, trials, method, csv, .. } => {
            cmd_bounds(window, lattice, trials, *method, csv.as_deref())
        }
        Command::Bracket { window, with, shift, a, csv, .. } => {
            cmd_bracket(window, with.as_deref(), shift, a, csv.as_deref())
        }
        Command::Norms { window, b, .. } => cmd_norms(window, b),
        Command::Bessel { window, terms, .. } => cmd_bessel(window, *terms),
        Command::Perturb { window, lattice, with, perturb, eps, trials, .. } => {
            cmd_perturb(window, lattice, with.as_deref(), perturb.as_deref(), *eps, trials)
        }
        Command::Demo { name, .. } => cmd_demo(name),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn load_window(args: &WindowArgs) -> Result<(SampledFunction, Value), Failure> {
    match (&args.window, &args.file) {
        (Some(spec), None) => {
            let kind: WindowKind = spec.parse()?;
            let n = args.n.unwrap_or(DEFAULT_N);
            Ok((make_window(&kind, n)?, json!({ "window": kind.to_string(), "n": n })))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Read(format!("cannot read {}: {e}", path.display())))?;
            let f: SampledFunction = serde_json::from_str(&text)
                .map_err(|e| Failure::Read(format!("bad window file {}: {e}", path.display())))?;
            let f = match args.n {
                Some(n) => f.refine_to(n)?,
                None => f,
            };
            Ok((f.clone(), json!({ "file": path.display().to_string(), "n": f.n() })))
        }
        _ => Err(Error::Parse("give exactly one of --window or --file".into()).into()),
    }
}

fn second_window(spec: &str, n: usize) -> Result<SampledFunction, Failure> {
    let kind: WindowKind = spec.parse()?;
    Ok(make_window(&kind, n)?)
}

fn parse_lattice(args: &LatticeArgs, n: usize) -> Result<GaborLattice, Failure> {
    let a = parse_rational(&args.a)?;
    let b = parse_rational(&args.b)?;
    if let Some(q) = args.q {
        if q == 0 || a != Rational::new(1, q as i64) || b != Rational::from_integer(1) {
            return Err(Error::IncompatibleLattice(format!(
                "--q {q} requires a = 1/{q} and b = 1, got a = {a}, b = {b}"
            ))
            .into());
        }
    }
    Ok(GaborLattice::new(a, b, n)?)
}

fn lattice_json(lat: &GaborLattice) -> Value {
    json!({ "a": format_rational(&lat.a()), "b": format_rational(&lat.b()) })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn cmd_zak(window: &WindowArgs, nv: Option<usize>, csv: Option<&Path>) -> CmdResult {
    let (f, inputs) = load_window(window)?;
    let n_v = nv.unwrap_or_else(|| default_nv(&f));
    let image = zak(&f, n_v)?;
    if let Some(path) = csv {
        write_file(path, &image.magnitude_csv())?;
    }
    let results = json!({
        "max_abs": image.max_abs(),
        "min_abs": image.min_abs(),
        "zak": to_value(&image),
    });
    Ok((merge(inputs, json!({ "nv": n_v })), results))
}

fn cmd_bounds(
    window: &WindowArgs,
    lattice: &LatticeArgs,
    trials: &TrialArgs,
    method: MethodArg,
    csv: Option<&Path>,
) -> CmdResult {
    let (g, inputs) = load_window(window)?;
    let lat = parse_lattice(lattice, g.n())?;
    let report: FrameBoundsReport = match (method, lat.unit_fraction()) {
        (MethodArg::Auto, Some(1)) => frame_bounds_zak(&g),
        (MethodArg::Auto, Some(q)) => frame_bounds_multiplier(&g, q)?,
        (MethodArg::Auto | MethodArg::Aframe, _) => {
            aframe_bounds_empirical(&g, &lat, trials.trials, trials.seed)?
        }
        (MethodArg::Modular, _) => modular_frame_check(&g, &lat, trials.trials, trials.seed)?,
        (MethodArg::DirectEigen, _) => frame_bounds_direct_eigen(&g, &lat, g.lo() - 1, g.hi() + 1)?,
    };
    if let Some(path) = csv {
        let q = lat
            .unit_fraction()
            .filter(|_| !report.method.is_empirical())
            .ok_or_else(|| Error::UnsupportedLattice { a: lat.a(), b: lat.b() })?;
        let windows = multiplier_windows(&g, q)?;
        let n_v = windows.iter().map(default_nv).max().unwrap_or(1);
        let energy = zak_energy_grid(&windows, n_v)?;
        let text: String = energy
            .chunks(n_v)
            .map(|row| row.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(",") + "\n")
            .collect();
        write_file(path, &text)?;
    }
    let mut inputs = merge(inputs, lattice_json(&lat));
    if report.method.is_empirical() {
        inputs = merge(inputs, json!({ "trials": trials.trials, "seed": trials.seed }));
    }
    let mut results = to_value(&report);
    results["empirical"] = json!(report.method.is_empirical());
    Ok((inputs, results))
}

fn cmd_bracket(
    window: &WindowArgs,
    with: Option<&str>,
    shift: &str,
    period: &str,
    csv: Option<&Path>,
) -> CmdResult {
    let (f, inputs) = load_window(window)?;
    let h = match with {
        Some(spec) => second_window(spec, f.n())?,
        None => f.clone(),
    };
    let shift = parse_rational(shift)?;
    let period = parse_rational(period)?;
    let sample = bracket(&f, &h.translate(shift)?, period)?;
    if let Some(path) = csv {
        let width = 1.0 / sample.n() as f64;
        let text: String = sample
            .values()
            .iter()
            .enumerate()
            .map(|(j, z)| format!("{:.16e},{:.16e},{:.16e}\n", j as f64 * width, z.re, z.im))
            .collect();
        write_file(path, &text)?;
    }
    let inputs = merge(
        inputs,
        json!({
            "with": with.unwrap_or("self"),
            "shift": format_rational(&shift),
            "a": format_rational(&period),
        }),
    );
    let results = json!({
        "max_abs": sample.max_abs(),
        "integral": [sample.integral().re, sample.integral().im],
        "bracket": to_value(&sample),
    });
    Ok((inputs, results))
}

fn cmd_norms(window: &WindowArgs, b: &str) -> CmdResult {
    let (f, inputs) = load_window(window)?;
    let b = parse_rational(b)?;
    if b <= Rational::from_integer(0) {
        return Err(Error::InvalidBounds(format!("b = {b} must be positive")).into());
    }
    let report = NormReport::of(&f, b.recip())?;
    Ok((merge(inputs, json!({ "b": format_rational(&b) })), to_value(&report)))
}

fn cmd_bessel(window: &WindowArgs, terms: u32) -> CmdResult {
    let (g, inputs) = load_window(window)?;
    if terms == 0 {
        return Err(Error::Parse("--terms must be at least 1".into()).into());
    }
    let xz = bessel_xz_norm(&g);
    let hcm = hcm_norm(&g, Rational::from_integer(1))?;
    let sums = ccj_partial_sums(&g, terms)?;
    let increments = ccj_increments(&g, terms)?;
    let one_sided: Vec<f64> = increments
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let results = json!({
        "xz_norm": xz,
        "hcm_norm": hcm,
        "embedding_holds": hcm <= xz * (1.0 + 1e-12),
        "nonnegative_real": is_nonnegative_real(&g),
        "ccj_partial_sums": sums,
        "ccj_increments": increments,
        "ccj_one_sided_sums": one_sided,
    });
    Ok((merge(inputs, json!({ "terms": terms })), results))
}

fn cmd_perturb(
    window: &WindowArgs,
    lattice: &LatticeArgs,
    with: Option<&str>,
    deviation: Option<&str>,
    eps: f64,
    trials: &TrialArgs,
) -> CmdResult {
    let (g, inputs) = load_window(window)?;
    let lat = parse_lattice(lattice, g.n())?;
    let inputs = merge(inputs, lattice_json(&lat));
    let eps_c = Complex::new(eps, 0.0);
    let (cert, perturbed, extra) = match (with, deviation) {
        (Some(spec), None) => {
            let h = second_window(spec, g.n())?;
            let h = g.add(&h.sub(&g).scale(eps_c));
            let cert = match additive_certify(&g, &h, &lat) {
                Err(Error::UnsupportedLattice { .. }) => {
                    additive_certify_empirical(&g, &h, &lat, trials.trials, trials.seed)?
                }
                other => other?,
            };
            (cert, h, json!({ "mode": "additive", "with": spec, "eps": eps }))
        }
        (None, Some(spec)) => {
            let d = second_window(spec, g.n())?.scale(eps_c);
            let cert = multiplicative_certify(&g, &d, &lat)?;
            (cert, product_window(&g, &d), json!({ "mode": "multiplicative", "perturb": spec, "eps": eps }))
        }
        _ => return Err(Error::Parse("give exactly one of --with or --perturb".into()).into()),
    };
    let truth = match lat.unit_fraction() {
        Some(1) => Some(frame_bounds_zak(&perturbed)),
        Some(q) => Some(frame_bounds_multiplier(&perturbed, q)?),
        None => None,
    };
    let sound = truth.as_ref().map(|t| !cert.valid || t.lower >= cert.certified_lower);
    let results = json!({
        "certificate": to_value(&cert),
        "perturbed_bounds": truth.as_ref().map(to_value),
        "sound": sound,
    });
    let inputs = merge(inputs, extra);
    let inputs = if cert.empirical {
        merge(inputs, json!({ "trials": trials.trials, "seed": trials.seed }))
    } else {
        inputs
    };
    Ok((inputs, results))
}

fn cmd_demo(name: &str) -> CmdResult {
    let demo: Demo = name.parse()?;
    Ok((json!({ "name": demo.name() }), demo.run()?))
}
