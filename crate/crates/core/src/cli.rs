//! The `riesz` command line: argument parsing, dispatch and CSV output.
//!
//! Output is CSV with a `#` header block (tool version, the resolved
//! configuration and its SHA-256). Numbers carry 17 significant digits, so
//! identical configurations produce byte-identical files.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use sha2::{Digest, Sha256};

use crate::closed_energy::{ClosedEnergy, EnergyOptions, Method};
use crate::domain_energy::DomainEnergy;
use crate::error::{Result, RieszError};
use crate::extrinsic::{default_resolution, psi_profile, psi_profile_with};
use crate::moebius::{invariance_check_with, parse_map};
use crate::shapes::{parse_shape, Shape};
use crate::validation::{run_criterion, Outcome, CRITERIA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "riesz", version, about = "Regularized Riesz energies, beta functions and residues")]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "RIESZ_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regularized energy E(z); pole-removed at poles.
    Energy(EnergyArgs),
    /// Residues of the beta function from curvature integrals.
    Residues(ShapeArgs),
    /// The extrinsic-ball profile ψ(t) at one point.
    Psi(PsiArgs),
    /// B(z) along a real grid, with pole annotations.
    BetaSweep(SweepArgs),
    /// Compare E(z) before and after a Möbius map.
    MoebiusCheck(MoebiusArgs),
    /// Run the acceptance suite.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    /// Shape spec, e.g. "ellipse(a=2,b=1)".
    #[arg(long)]
    pub shape: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// Relative tolerance for agreement between methods.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Comma-separated cutoff radii for the counterterm fit.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps_schedule: Option<Vec<f64>>,
    /// Skip the secondary methods.
    #[arg(long)]
    pub no_cross_check: bool,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[arg(long)]
    pub shape: String,
    /// Exponent: "x" or "x+yi".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "z_grid", required_unless_present = "z_grid")]
    pub z: Option<String>,
    /// Real grid lo:hi:n.
    #[arg(long, allow_hyphen_values = true)]
    pub z_grid: Option<String>,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PsiArgs {
    #[arg(long)]
    pub shape: String,
    /// First parameter of the base point (θ on curves).
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub x: f64,
    /// Second parameter of the base point (surfaces).
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub v: f64,
    /// Radii lo:hi:n; defaults to 0 up to the diameter bound in 41 steps.
    #[arg(long, allow_hyphen_values = true)]
    pub t_grid: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub shape: String,
    /// Real grid lo:hi:n; must not hit a pole.
    #[arg(long, allow_hyphen_values = true)]
    pub z_grid: String,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MoebiusArgs {
    #[arg(long)]
    pub shape: String,
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// Steps separated by ';', e.g. "inversion(cx=3,r=2); homothety(c=0.5)".
    #[arg(long, allow_hyphen_values = true)]
    pub map: String,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Only these criteria (comma-separated numbers).
    #[arg(long, value_delimiter = ',')]
    pub criterion: Vec<u8>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parse "x", "x+yi", "x-yi" or "yi".
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('−', "-");
    let bad = || RieszError::InvalidArgument(format!("cannot parse exponent '{s}'"));
    if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) {
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, ch)| (ch == '+' || ch == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            v => v,
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.parse().map_err(|_| bad())?;
        if !re.is_finite() || !im.is_finite() {
            return Err(bad());
        }
        Ok(C64::new(re, im))
    } else {
        let re: f64 = t.parse().map_err(|_| bad())?;
        if !re.is_finite() {
            return Err(bad());
        }
        Ok(C64::new(re, 0.0))
    }
}

/// Parse "lo:hi:n" into n evenly spaced points (n ≥ 1).
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = |m: &str| RieszError::InvalidArgument(format!("grid '{s}': {m}"));
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad("expected lo:hi:n"));
    };
    let lo: f64 = lo.replace('−', "-").parse().map_err(|_| bad("bad lower bound"))?;
    let hi: f64 = hi.replace('−', "-").parse().map_err(|_| bad("bad upper bound"))?;
    let n: usize = n.parse().map_err(|_| bad("bad point count"))?;
    if n == 0 || !lo.is_finite() || !hi.is_finite() || (n > 1 && !(hi > lo)) {
        return Err(bad("need n ≥ 1 and lo < hi"));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A CSV document with a `#` header block.
struct Table {
    config: Vec<(String, String)>,
    notes: Vec<String>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(command: &str, columns: &[&'static str]) -> Self {
        Self {
            config: vec![("command".into(), command.into())],
            notes: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn config(&mut self, k: &str, v: impl ToString) {
        self.config.push((k.into(), v.to_string()));
    }

    fn render(&self) -> String {
        let mut canon = String::new();
        for (k, v) in &self.config {
            let _ = writeln!(canon, "{k}={v}");
        }
        let hash = Sha256::digest(canon.as_bytes());
        let mut out = String::new();
        let _ = writeln!(out, "# riesz {}", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.config {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let _ = writeln!(out, "# config-sha256: {}", hash.iter().map(|b| format!("{b:02x}")).collect::<String>());
        for n in &self.notes {
            let _ = writeln!(out, "# {n}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.iter().map(|f| field(f)).collect::<Vec<_>>().join(","));
        }
        out
    }
}

fn emit(table: &Table, output: &OutputArgs) -> std::result::Result<(), String> {
    let text = table.render();
    match &output.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn options(n: &NumericArgs) -> Result<EnergyOptions> {
    if !(n.tol > 0.0) {
        return Err(RieszError::InvalidArgument(format!("--tol must be positive, got {}", n.tol)));
    }
    if let Some(e) = &n.eps_schedule {
        if e.len() < 6 || e.iter().any(|v| !(*v > 0.0)) {
            return Err(RieszError::InvalidArgument("--eps-schedule needs at least 6 positive radii".into()));
        }
    }
    Ok(EnergyOptions {
        tol: n.tol,
        eps_schedule: n.eps_schedule.clone(),
        cross_check: !n.no_cross_check,
        ..EnergyOptions::default()
    })
}

fn numeric_config(t: &mut Table, n: &NumericArgs) {
    t.config("tol", n.tol);
    t.config(
        "eps-schedule",
        n.eps_schedule.as_ref().map_or("default".to_string(), |e| e.iter().map(|v| num(*v)).collect::<Vec<_>>().join(" ")),
    );
    t.config("cross-check", !n.no_cross_check);
}

const ENERGY_COLUMNS: [&str; 9] =
    ["z_re", "z_im", "value_re", "value_im", "method", "residue_re", "residue_im", "error_estimate", "cross_checks"];

fn cmd_energy(a: &EnergyArgs) -> Result<Table> {
    let shape = parse_shape(&a.shape)?;
    let opts = options(&a.numeric)?;
    let zs: Vec<C64> = match (&a.z, &a.z_grid) {
        (Some(z), _) => vec![parse_complex(z)?],
        (None, Some(g)) => parse_grid(g)?.into_iter().map(|x| C64::new(x, 0.0)).collect(),
        (None, None) => return Err(RieszError::InvalidArgument("give --z or --z-grid".into())),
    };
    let mut t = Table::new("energy", &ENERGY_COLUMNS);
    t.config("shape", &shape);
    t.config("z", zs.iter().map(|z| format!("{}{:+}i", num(z.re), z.im)).collect::<Vec<_>>().join(" "));
    numeric_config(&mut t, &a.numeric);
    for z in zs {
        let r = crate::energy(&shape, z, &opts)?;
        let checks: Vec<String> = r.cross_checks.iter().map(|c| format!("{}={}", c.method, num(c.value.re))).collect();
        t.rows.push(vec![
            num(z.re),
            num(z.im),
            num(r.value.re),
            num(r.value.im),
            r.method.to_string(),
            num(r.residue_at_z.re),
            num(r.residue_at_z.im),
            num(r.error_estimate),
            checks.join(";"),
        ]);
    }
    Ok(t)
}

fn cmd_residues(a: &ShapeArgs) -> Result<Table> {
    let shape = parse_shape(&a.shape)?;
    let res = match &shape {
        Shape::Domain(d) => crate::domain_energy::domain_residues(d)?,
        _ => crate::closed_energy::residues(&shape)?,
    };
    let mut t = Table::new("residues", &["k", "pole", "residue", "method", "error_estimate"]);
    t.config("shape", &shape);
    for r in res {
        t.rows.push(vec![
            r.k.to_string(),
            format!("-{}", r.k),
            num(r.value),
            "curvature-integral".into(),
            num(r.error_estimate),
        ]);
    }
    Ok(t)
}

fn cmd_psi(a: &PsiArgs) -> Result<Table> {
    let shape = parse_shape(&a.shape)?;
    let grid = match &a.t_grid {
        Some(g) => parse_grid(g)?,
        None => parse_grid(&format!("0:{}:41", shape.diameter_bound()?))?,
    };
    if grid.iter().any(|t| *t < 0.0) {
        return Err(RieszError::InvalidArgument("radii must be nonnegative".into()));
    }
    let fine = psi_profile(&shape, a.x, a.v, &grid)?;
    let coarse = psi_profile_with(&shape, a.x, a.v, &grid, Some(default_resolution(&shape)?.coarser()))?;
    let mut t = Table::new("psi", &["t", "psi", "jet", "method", "error_estimate"]);
    t.config("shape", &shape);
    t.config("x", num(a.x));
    t.config("v", num(a.v));
    t.config("t-grid", a.t_grid.as_deref().unwrap_or("default"));
    let method = if matches!(shape, Shape::Domain(_)) { "normal-weighted-ball-measure" } else { "ball-measure" };
    for (&(tv, v), &(_, vc)) in fine.samples.iter().zip(&coarse.samples) {
        t.rows.push(vec![num(tv), num(v), num(fine.jet.eval(tv)), method.into(), num((v - vc).abs())]);
    }
    Ok(t)
}

/// Evaluates E(z) on one shape while reusing cached samples across z.
enum Sweeper<'a> {
    Closed(ClosedEnergy<'a>, ClosedEnergy<'a>),
    Domain(DomainEnergy<'a>, DomainEnergy<'a>),
    Other(&'a Shape, EnergyOptions),
}

impl<'a> Sweeper<'a> {
    fn new(shape: &'a Shape, opts: &EnergyOptions) -> Result<Self> {
        let coarse_opts = |res| EnergyOptions { resolution: Some(res), ..opts.clone() };
        Ok(match shape {
            Shape::Domain(d) if d.dim() == 4 => Sweeper::Other(shape, opts.clone()),
            Shape::Domain(d) => {
                let fine = DomainEnergy::new(d, opts)?;
                let coarse = DomainEnergy::new(d, &coarse_opts(fine.resolution().coarser()))?;
                Sweeper::Domain(fine, coarse)
            }
            _ => {
                let fine = ClosedEnergy::new(shape, opts)?;
                let coarse = ClosedEnergy::new(shape, &coarse_opts(fine.resolution().coarser()))?;
                Sweeper::Closed(fine, coarse)
            }
        })
    }

    fn residue_at(&self, z: C64) -> Result<C64> {
        Ok(match self {
            Sweeper::Closed(f, _) => f.residue_at(z),
            Sweeper::Domain(f, _) => f.residue_at(z),
            Sweeper::Other(s, o) => crate::energy(s, z, o)?.residue_at_z,
        })
    }

    /// (value, method, error estimate)
    fn eval(&self, z: C64) -> Result<(C64, Method, f64)> {
        Ok(match self {
            Sweeper::Closed(f, c) => {
                let (v, m) = f.primary(z)?;
                (v, m, (c.primary(z)?.0 - v).norm())
            }
            Sweeper::Domain(f, c) => {
                let (v, m, _) = f.primary(z)?;
                (v, m, (c.primary(z)?.0 - v).norm())
            }
            Sweeper::Other(s, o) => {
                let r = crate::energy(s, z, o)?;
                (r.value, r.method, r.error_estimate)
            }
        })
    }
}

fn cmd_beta_sweep(a: &SweepArgs) -> Result<Table> {
    let shape = parse_shape(&a.shape)?;
    let opts = options(&a.numeric)?;
    let grid = parse_grid(&a.z_grid)?;
    let sw = Sweeper::new(&shape, &opts)?;
    let lo = grid[0].floor().min(-1.0);
    let hi = grid[grid.len() - 1];
    let mut poles = Vec::new();
    let mut k = 1u32;
    while -(k as f64) >= lo {
        if -(k as f64) <= hi.ceil() {
            let r = sw.residue_at(C64::new(-(k as f64), 0.0))?;
            if r.norm() > 0.0 {
                poles.push((k, r));
            }
        }
        k += 1;
    }
    for &x in &grid {
        if let Some((k, _)) = poles.iter().find(|(k, _)| x == -(*k as f64)) {
            return Err(RieszError::InvalidArgument(format!(
                "grid point z = -{k} is a pole; use the energy command for pole-removed values"
            )));
        }
    }
    let mut t = Table::new("beta-sweep", &["z", "value", "method", "nearest_pole", "pole_residue", "error_estimate"]);
    t.config("shape", &shape);
    t.config("z-grid", &a.z_grid);
    numeric_config(&mut t, &a.numeric);
    for (k, r) in &poles {
        t.notes.push(format!("pole: z = -{k}, residue = {}", num(r.re)));
    }
    for &x in &grid {
        let z = C64::new(x, 0.0);
        let (v, m, e) = sw.eval(z)?;
        let near = poles
            .iter()
            .min_by(|p, q| (x + p.0 as f64).abs().total_cmp(&(x + q.0 as f64).abs()))
            .map(|&(k, r)| (format!("-{k}"), num(r.re)))
            .unwrap_or_default();
        t.rows.push(vec![num(x), num(v.re), m.to_string(), near.0, near.1, num(e)]);
    }
    Ok(t)
}

fn cmd_moebius_check(a: &MoebiusArgs) -> Result<Table> {
    let shape = parse_shape(&a.shape)?;
    let opts = options(&a.numeric)?;
    let z = parse_complex(&a.z)?;
    let map = parse_map(&a.map)?;
    let r = invariance_check_with(&shape, z, &map, &opts)?;
    let mut t = Table::new(
        "moebius-check",
        &["z_re", "z_im", "before", "after", "defect", "tolerance", "pass", "predicted_defect", "method", "error_estimate"],
    );
    t.config("shape", &shape);
    t.config("z", format!("{}{:+}i", num(z.re), z.im));
    t.config("map", &a.map);
    numeric_config(&mut t, &a.numeric);
    let err = (r.before.error_estimate.powi(2) + r.after.error_estimate.powi(2)).sqrt();
    t.rows.push(vec![
        num(z.re),
        num(z.im),
        num(r.before.value.re),
        num(r.after.value.re),
        num(r.defect),
        num(r.tolerance),
        r.pass.to_string(),
        r.predicted_defect.map_or(String::new(), |p| num(p.re)),
        format!("{}/{}", r.before.method, r.after.method),
        num(err),
    ]);
    Ok(t)
}

fn cmd_validate(a: &ValidateArgs) -> Result<(Table, bool)> {
    let ids: Vec<u8> = if a.criterion.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { a.criterion.clone() };
    let mut t = Table::new("validate", &["criterion", "title", "result", "seconds", "detail"]);
    t.config("criteria", ids.iter().map(u8::to_string).collect::<Vec<_>>().join(" "));
    let mut all = true;
    for id in ids {
        let r = run_criterion(id)?;
        eprintln!("{r}");
        all &= r.passed();
        let result = match r.outcome {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Deviation => "fail-documented",
        };
        t.rows.push(vec![id.to_string(), r.title.into(), result.into(), format!("{:.1}", r.elapsed.as_secs_f64()), r.detail]);
    }
    Ok((t, all))
}

fn exit_for(e: &RieszError) -> i32 {
    if e.is_config_error() {
        EXIT_CONFIG
    } else {
        EXIT_NUMERICAL
    }
}

/// Run the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.threads {
        crate::par::set_threads(n);
    }
    let (result, output) = match &cli.command {
        Command::Energy(a) => (cmd_energy(a).map(|t| (t, true)), &a.output),
        Command::Residues(a) => (cmd_residues(a).map(|t| (t, true)), &a.output),
        Command::Psi(a) => (cmd_psi(a).map(|t| (t, true)), &a.output),
        Command::BetaSweep(a) => (cmd_beta_sweep(a).map(|t| (t, true)), &a.output),
        Command::MoebiusCheck(a) => (cmd_moebius_check(a).map(|t| (t, true)), &a.output),
        Command::Validate(a) => (cmd_validate(a), &a.output),
    };
    match result {
        Ok((table, ok)) => {
            if let Err(msg) = emit(&table, output) {
                eprintln!("error: {msg}");
                return EXIT_CONFIG;
            }
            if ok {
                EXIT_OK
            } else {
                EXIT_NUMERICAL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_and_grid_parsing() {
        assert_eq!(parse_complex("-2").unwrap(), C64::new(-2.0, 0.0));
        assert_eq!(parse_complex("-2.5+0.5i").unwrap(), C64::new(-2.5, 0.5));
        assert_eq!(parse_complex("1e-3-2i").unwrap(), C64::new(1e-3, -2.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert!(parse_complex("abc").is_err());
        assert_eq!(parse_grid("-3:-1:3").unwrap(), vec![-3.0, -2.0, -1.0]);
        assert!(parse_grid("1:0:3").is_err());
        assert!(parse_grid("0:1").is_err());
    }

    #[test]
    fn csv_fields_are_quoted() {
        assert_eq!(field("a,b"), "\"a,b\"");
        assert_eq!(num(0.1), "1.0000000000000001e-1");
    }
}
