//! Command-line front end: argument parsing, file output and exit codes.

mod figures;
pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::ensembles::{nu_from_alpha, parse_word, EnsembleKind, EnsembleSpec, Letter};
use crate::error::{check_tau, Error, Result};
use crate::geometry::{halfplane_intersection, sample_droplet_components};
use crate::linalg::eigenvalues;
use crate::numrange::{hull_discard_fraction, numerical_radius, support_sweep, uniform_thetas, SupportCurve};
use crate::theory::{limit_droplet, limit_droplet_at, limit_support, limit_support_at};
use crate::validation::{median, run_check, Comparison, ValidationOptions, ValidationReport, CHECK_IDS};

pub use figures::{figure_ids, FigurePanel};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "NUMRANGE_LAB_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Points per droplet boundary in CSV and SVG output.
const DROPLET_POINTS: usize = 720;

#[derive(Debug, Parser)]
#[command(name = "numrange-lab", version, about = "Numerical ranges of non-normal random matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of sampled matrices, one CSV per seed.
    Sample(Common),
    /// Empirical support curve and numerical-range polygon per seed.
    Range(Common),
    /// Limiting support curve, polygon and droplet boundary.
    Theory(Common),
    /// Median gap to the limit shape across a list of sizes.
    Converge {
        #[command(flatten)]
        common: Common,
        /// Matrix sizes, at least two.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
    },
    /// Runs the acceptance checks and writes validation.json.
    Validate {
        /// Subset of check ids, e.g. `1,5,10a`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 720)]
        thetas: usize,
        #[arg(long, default_value_t = 1000)]
        draws: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, hide = true)]
        tamper_quartic: bool,
    },
    /// Renders one figure panel as SVG.
    Figure {
        /// Panel id: 1a..1h, 2a..2h, 3, 4a..4d or 5.
        id: String,
        /// Overrides the panel's matrix size.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 720)]
        thetas: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Options shared by the sampling commands.
#[derive(Clone, Debug, Args)]
pub struct Common {
    #[arg(long, default_value = "ginibre", value_parser = parse_kind)]
    pub ensemble: EnsembleKind,
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value_t = 0.0)]
    pub tau: f64,
    /// Rectangularity ratio; converted to `ν = round(α·N)`.
    #[arg(long, conflicts_with = "nu")]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub nu: Option<usize>,
    /// Ginibre word such as `Y1,Y2*` (ensemble ginibre-word).
    #[arg(long, value_parser = parse_word_arg)]
    pub word: Option<Word>,
    #[arg(long, default_value_t = 720)]
    pub thetas: usize,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub seeds: Vec<u64>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "csv")]
    pub format: Vec<Format>,
}

fn parse_kind(s: &str) -> std::result::Result<EnsembleKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A parsed `--word` value.
#[derive(Clone, Debug, PartialEq)]
pub struct Word(pub Vec<Letter>);

fn parse_word_arg(s: &str) -> std::result::Result<Word, String> {
    parse_word(s).map(Word).map_err(|e| e.to_string())
}

impl Common {
    fn wants(&self, f: Format) -> bool {
        self.format.contains(&f)
    }

    /// `α` as given, or `ν/N` when only `ν` is supplied.
    fn alpha(&self) -> f64 {
        match (self.alpha, self.nu) {
            (Some(a), _) => a,
            (None, Some(nu)) => nu as f64 / self.n.max(1) as f64,
            (None, None) => 0.0,
        }
    }

    fn spec(&self, n: usize, seed: u64) -> Result<EnsembleSpec> {
        if let Some(a) = self.alpha {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(Error::Parameter(format!("alpha must be finite and non-negative, got {a}")));
            }
        }
        check_tau(self.tau)?;
        if self.thetas < 3 {
            return Err(Error::Parameter(format!("--thetas must be at least 3, got {}", self.thetas)));
        }
        let nu = match (self.alpha, self.nu) {
            (Some(a), _) => nu_from_alpha(a, n),
            (None, Some(nu)) => nu,
            (None, None) => 0,
        };
        let spec = EnsembleSpec::new(self.ensemble, n)
            .with_tau(self.tau)
            .with_nu(nu)
            .with_word(self.word.clone().map(|w| w.0).unwrap_or_default())
            .with_seed(seed);
        spec.validate()?;
        Ok(spec)
    }

    fn seeds(&self) -> Result<&[u64]> {
        if self.seeds.is_empty() {
            return Err(Error::Parameter("at least one seed is required".into()));
        }
        Ok(&self.seeds)
    }
}

/// Maps a library error to a process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parameter(_) | Error::Contract(_) | Error::Io { .. } => EXIT_USAGE,
        Error::Consistency(_) | Error::Geometry(_) | Error::Convergence(_) => EXIT_INTERNAL,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    configure_threads();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var(THREADS_ENV) else { return };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring {THREADS_ENV}={v}"),
    }
}

/// Runs a parsed command; `Ok` carries the exit code.
pub fn run(command: Command) -> Result<i32> {
    match command {
        Command::Sample(c) => cmd_sample(&c).map(|_| EXIT_OK),
        Command::Range(c) => cmd_range(&c).map(|_| EXIT_OK),
        Command::Theory(c) => cmd_theory(&c).map(|_| EXIT_OK),
        Command::Converge { common, ns } => cmd_converge(&common, &ns).map(|_| EXIT_OK),
        Command::Validate { only, seeds, thetas, draws, out, tamper_quartic } => {
            let opts = ValidationOptions { seeds, thetas, draws, tamper_quartic };
            let report = cmd_validate(&opts, &only, &out)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_VALIDATION })
        }
        Command::Figure { id, n, thetas, seed, out } => {
            let panel = FigurePanel::lookup(&id)?;
            let path = out.join(format!("figure_{id}.svg"));
            write_file(&path, &figures::render(&panel, n, thetas, seed)?)?;
            println!("wrote {}", path.display());
            Ok(EXIT_OK)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Contract(format!("json encoding: {e}")))?;
    s.push('\n');
    write_file(path, &s)
}

/// `re,im` rows.
pub fn eigenvalues_csv(values: &[Complex64]) -> String {
    let mut s = String::from("re,im\n");
    for z in values {
        let _ = writeln!(s, "{:.17e},{:.17e}", z.re, z.im);
    }
    s
}

/// `x,y` rows, one per vertex or boundary point.
pub fn polygon_csv(points: &[Complex64]) -> String {
    let mut s = String::from("x,y\n");
    for z in points {
        let _ = writeln!(s, "{:.17e},{:.17e}", z.re, z.im);
    }
    s
}

fn droplet_curves(spec: &EnsembleSpec) -> Result<Vec<Vec<Complex64>>> {
    match limit_droplet(spec)? {
        Some(d) => sample_droplet_components(&d, DROPLET_POINTS),
        None => Ok(Vec::new()),
    }
}

fn spec_title(spec: &EnsembleSpec) -> String {
    let mut t = format!("{} N={} tau={}", spec.kind, spec.n, spec.tau);
    if matches!(spec.kind, EnsembleKind::ChiralElliptic | EnsembleKind::Wishart) {
        let _ = write!(t, " nu={}", spec.nu);
    }
    if !spec.word.is_empty() {
        let w: Vec<String> = spec.word.iter().map(ToString::to_string).collect();
        let _ = write!(t, " word={}", w.join(""));
    }
    t
}

fn cmd_sample(c: &Common) -> Result<()> {
    let mut summary = Vec::new();
    for &seed in c.seeds()? {
        let spec = c.spec(c.n, seed)?;
        let eigs = eigenvalues(&spec.sample()?)?;
        if c.wants(Format::Csv) {
            write_file(&c.out.join(format!("eigenvalues_seed{seed}.csv")), &eigenvalues_csv(&eigs))?;
        }
        if c.wants(Format::Svg) {
            let mut plot = svg::Plot::new(format!("{} seed={seed}", spec_title(&spec)));
            plot.scatter(&eigs, "red", "eigenvalues");
            for curve in droplet_curves(&spec)? {
                plot.closed_curve(&curve, "darkred", 1.0, None, "droplet");
            }
            write_file(&c.out.join(format!("eigenvalues_seed{seed}.svg")), &plot.render())?;
        }
        let max_abs = eigs.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        println!("seed {seed}: {} eigenvalues, spectral radius {max_abs:.6}", eigs.len());
        summary.push(json!({ "seed": seed, "count": eigs.len(), "spectral_radius": max_abs }));
    }
    if c.wants(Format::Json) {
        write_json(&c.out.join("sample.json"), &json!({ "spec": c.spec(c.n, c.seeds[0])?, "seeds": summary }))?;
    }
    Ok(())
}

fn cmd_range(c: &Common) -> Result<()> {
    let grid = uniform_thetas(c.thetas);
    let mut summary = Vec::new();
    for &seed in c.seeds()? {
        let spec = c.spec(c.n, seed)?;
        let curve = support_sweep(&spec.sample()?, &grid)?;
        let region = halfplane_intersection(&curve)?;
        let radius = numerical_radius(&curve)?;
        let discard = hull_discard_fraction(&curve)?;
        if c.wants(Format::Csv) {
            write_file(&c.out.join(format!("support_seed{seed}.csv")), &curve.to_csv())?;
            write_file(&c.out.join(format!("polygon_seed{seed}.csv")), &polygon_csv(region.vertices()))?;
        }
        if c.wants(Format::Svg) {
            let mut plot = svg::Plot::new(format!("{} seed={seed}", spec_title(&spec)));
            if let Ok(theory) = SupportCurve::from_fn(grid.clone(), |t| limit_support(&spec, t)) {
                plot.closed_curve(halfplane_intersection(&theory)?.vertices(), "black", 1.5, None, "limit");
            }
            plot.closed_curve(region.vertices(), "blue", 1.2, Some("3,3"), "empirical");
            write_file(&c.out.join(format!("range_seed{seed}.svg")), &plot.render())?;
        }
        println!(
            "seed {seed}: numerical radius {radius:.6}, {} vertices, degeneracy {:?}, hull discard {:.4}",
            region.vertices().len(),
            region.degeneracy(),
            discard
        );
        summary.push(json!({
            "seed": seed,
            "numerical_radius": radius,
            "vertices": region.vertices().len(),
            "degeneracy": region.degeneracy(),
            "area": region.area(),
            "hull_discard_fraction": discard,
        }));
    }
    if c.wants(Format::Json) {
        write_json(&c.out.join("range.json"), &json!({ "spec": c.spec(c.n, c.seeds[0])?, "thetas": c.thetas, "seeds": summary }))?;
    }
    Ok(())
}

fn cmd_theory(c: &Common) -> Result<()> {
    let alpha = c.alpha();
    let word = c.word.clone().map(|w| w.0).unwrap_or_default();
    c.spec(c.n, 1)?;
    let curve = SupportCurve::from_fn(uniform_thetas(c.thetas), |t| limit_support_at(c.ensemble, c.tau, alpha, &word, t))?;
    let region = halfplane_intersection(&curve)?;
    let droplet = match limit_droplet_at(c.ensemble, c.tau, alpha, &word)? {
        Some(d) => sample_droplet_components(&d, DROPLET_POINTS)?,
        None => Vec::new(),
    };
    if c.wants(Format::Csv) {
        write_file(&c.out.join("theory_support.csv"), &curve.to_csv())?;
        write_file(&c.out.join("theory_polygon.csv"), &polygon_csv(region.vertices()))?;
        for (k, comp) in droplet.iter().enumerate() {
            write_file(&c.out.join(format!("droplet_{k}.csv")), &polygon_csv(comp))?;
        }
    }
    if c.wants(Format::Svg) {
        let mut plot = svg::Plot::new(format!("{} limit tau={} alpha={alpha}", c.ensemble, c.tau));
        for comp in &droplet {
            plot.closed_curve(comp, "red", 1.0, None, "droplet");
        }
        plot.closed_curve(region.vertices(), "black", 1.5, None, "limit numerical range");
        write_file(&c.out.join("theory.svg"), &plot.render())?;
    }
    let radius = curve.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    println!(
        "{} tau={} alpha={alpha}: numerical radius {radius:.6}, {} droplet component(s)",
        c.ensemble,
        c.tau,
        droplet.len()
    );
    if c.wants(Format::Json) {
        write_json(
            &c.out.join("theory.json"),
            &json!({
                "ensemble": c.ensemble,
                "tau": c.tau,
                "alpha": alpha,
                "thetas": c.thetas,
                "numerical_radius": radius,
                "degeneracy": region.degeneracy(),
                "droplet_components": droplet.len(),
            }),
        )?;
    }
    Ok(())
}

/// One row of the convergence table.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergeRow {
    pub n: usize,
    pub median_gap: f64,
    pub median_hausdorff: f64,
    pub seeds: usize,
}

/// Median-over-seeds gap and Hausdorff distance to the limit for each size.
pub fn converge_table(c: &Common, ns: &[usize]) -> Result<Vec<ConvergeRow>> {
    if ns.len() < 2 {
        return Err(Error::Parameter(format!("converge needs at least two sizes, got {}", ns.len())));
    }
    let seeds = c.seeds()?;
    ns.iter()
        .map(|&n| {
            let (mut gaps, mut dists) = (Vec::new(), Vec::new());
            for &seed in seeds {
                let cmp = Comparison::run(&c.spec(n, seed)?, c.thetas)?;
                gaps.push(cmp.uniform_gap()?);
                dists.push(cmp.hausdorff()?);
            }
            Ok(ConvergeRow { n, median_gap: median(&gaps), median_hausdorff: median(&dists), seeds: seeds.len() })
        })
        .collect()
}

fn cmd_converge(c: &Common, ns: &[usize]) -> Result<()> {
    let rows = converge_table(c, ns)?;
    let mut csv = String::from("n,median_gap,median_hausdorff,seeds\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{:.17e},{:.17e},{}", r.n, r.median_gap, r.median_hausdorff, r.seeds);
        println!("N={:<6} median gap {:.6}  median hausdorff {:.6}", r.n, r.median_gap, r.median_hausdorff);
    }
    if c.wants(Format::Csv) {
        write_file(&c.out.join("converge.csv"), &csv)?;
    }
    if c.wants(Format::Json) {
        write_json(
            &c.out.join("converge.json"),
            &json!({ "ensemble": c.ensemble, "tau": c.tau, "alpha": c.alpha(), "thetas": c.thetas, "rows": rows }),
        )?;
    }
    Ok(())
}

/// Runs the selected checks (all when `only` is empty), prints one line per
/// check and writes `validation.json` into `out`.
pub fn cmd_validate(opts: &ValidationOptions, only: &[String], out: &Path) -> Result<ValidationReport> {
    let ids: Vec<&str> = if only.is_empty() { CHECK_IDS.to_vec() } else { only.iter().map(String::as_str).collect() };
    for id in &ids {
        if !CHECK_IDS.contains(id) {
            return Err(Error::Parameter(format!("unknown check '{id}', expected one of {}", CHECK_IDS.join(","))));
        }
    }
    let mut checks = Vec::with_capacity(ids.len());
    for id in ids {
        let check = run_check(id, opts)?;
        println!("{check}");
        checks.push(check);
    }
    let report = ValidationReport::new(checks);
    write_json(&out.join("validation.json"), &report)?;
    println!("overall {}", if report.passed { "PASS" } else { "FAIL" });
    Ok(report)
}
