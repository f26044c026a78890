//! The `calib-geo` command line.
//!
//! ```text
//! calib-geo list
//! calib-geo verify <ENTRY> [--competitors N] [--seed S] [--tol-len X] [--out PATH]
//! calib-geo trace <ENTRY> [--start x,y] [--dir ±1] [--step H] [--out PATH]
//! calib-geo length --entry <ENTRY> --curve PATH
//! calib-geo plot <ENTRY> --out PATH [--competitors N] [--width W] [--height H]
//! ```
//!
//! Exit codes: 0 success, 1 verification failed, 2 bad arguments or unknown
//! entry, 3 numerical failure. `CALIB_GEO_THREADS` caps the worker pool
//! (0 or unset means one per core).

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::calibration::Tolerances;
use crate::catalog::{entry_by_name, CatalogEntry, ENTRY_NAMES};
use crate::curve::{read_polyline_csv, write_polyline_csv, Curve};
use crate::error::Error;
use crate::geodesic::{trace_level, TraceConfig};
use crate::geometry::{BBox, Point2};
use crate::numfmt::format_sig;
use crate::quadrature::{weighted_length, DEFAULT_REL_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub const THREADS_ENV: &str = "CALIB_GEO_THREADS";

#[derive(Debug, Parser)]
#[command(name = "calib-geo", version, about = "Certify weighted length-minimizers of conformal plane metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the catalog entry names.
    List,
    /// Check the calibration hypotheses and compare the minimizer against random competitors.
    Verify(VerifyArgs),
    /// Follow the level curve of g through a point and write it as CSV.
    Trace(TraceArgs),
    /// Weighted length of a CSV polyline under an entry's density.
    Length(LengthArgs),
    /// Draw an entry's domain box, minimizer and competitors as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
struct EntryArg {
    /// Catalog entry name.
    #[arg(value_name = "ENTRY")]
    name: Option<String>,
    /// Catalog entry name (alternative to the positional form).
    #[arg(long = "entry", value_name = "NAME", conflicts_with = "name")]
    flag: Option<String>,
}

impl EntryArg {
    fn resolve(&self) -> Result<CatalogEntry, Failure> {
        let name = self
            .name
            .as_deref()
            .or(self.flag.as_deref())
            .ok_or_else(|| Failure::Usage("an entry name is required (see `calib-geo list`)".into()))?;
        entry_by_name(name).map_err(Failure::from)
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    entry: EntryArg,
    #[arg(long, default_value_t = 100)]
    competitors: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Relative tolerance on minimizer length and competitor margins.
    #[arg(long)]
    tol_len: Option<f64>,
    /// Orthogonality residual tolerance.
    #[arg(long)]
    tol_orth: Option<f64>,
    /// Density relative-error tolerance.
    #[arg(long)]
    tol_rho: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[command(flatten)]
    entry: EntryArg,
    /// Start point `x,y`; defaults to the minimizer's first endpoint.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    start: Option<Point2>,
    /// Direction along the level curve, +1 or -1.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    dir: f64,
    #[arg(long, default_value_t = 1e-2)]
    step: f64,
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LengthArgs {
    #[command(flatten)]
    entry: EntryArg,
    /// CSV polyline with an `x,y` header.
    #[arg(long)]
    curve: PathBuf,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[command(flatten)]
    entry: EntryArg,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    competitors: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 600)]
    height: u32,
}

fn parse_point(s: &str) -> Result<Point2, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let p = Point2::new(parse(x)?, parse(y)?);
    if !p.is_finite() {
        return Err(format!("non-finite point {s:?}"));
    }
    Ok(p)
}

enum Failure {
    Usage(String),
    Numeric(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownEntry { .. } | Error::InvalidInput(_) | Error::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Numeric(other),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

/// Runs the CLI with the process's standard streams.
pub fn run(args: &[String]) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with_io(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI; `args[0]` is the program name.
pub fn run_with_io(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| dispatch(cli.command, &mut buf));
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            EXIT_NUMERIC
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())
}

fn dispatch(cmd: Command, out: &mut Vec<u8>) -> Result<(), Failure> {
    match cmd {
        Command::List => {
            for name in ENTRY_NAMES {
                writeln!(out, "{name}").map_err(|e| Failure::Usage(e.to_string()))?;
            }
            Ok(())
        }
        Command::Verify(a) => verify(a, out),
        Command::Trace(a) => trace(a, out),
        Command::Length(a) => length(a, out),
        Command::Plot(a) => plot(a),
    }
}

fn positive(name: &str, v: Option<f64>, default: f64) -> Result<f64, Failure> {
    match v {
        None => Ok(default),
        Some(x) if x > 0.0 && x.is_finite() => Ok(x),
        Some(x) => Err(Failure::Usage(format!("--{name} must be positive, got {x}"))),
    }
}

fn emit(path: Option<&Path>, out: &mut dyn Write, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| io_failure(p, e)),
        None => out.write_all(bytes).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let entry = a.entry.resolve()?;
    let base = Tolerances::default();
    let tolerances = Tolerances {
        orth: positive("tol-orth", a.tol_orth, base.orth)?,
        rho: positive("tol-rho", a.tol_rho, base.rho)?,
        len: positive("tol-len", a.tol_len, base.len)?,
        level: None,
    };
    let report = entry.verify(a.competitors, a.seed, tolerances)?;
    let mut json = report.to_json();
    json.push('\n');
    emit(a.out.as_deref(), out, json.as_bytes())?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn trace(a: TraceArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let entry = a.entry.resolve()?;
    if a.dir != 1.0 && a.dir != -1.0 {
        return Err(Failure::Usage(format!("--dir must be 1 or -1, got {}", a.dir)));
    }
    let start = a.start.unwrap_or(entry.default_endpoints.0);
    let cfg = TraceConfig::new(a.step)?
        .with_max_steps(a.max_steps)
        .with_domain(entry.pair.domain.clone());
    let curve = trace_level(&entry.pair.g, start, a.dir, &cfg)?;
    let mut buf = Vec::new();
    write_polyline_csv(&curve.sample(0), &mut buf)?;
    emit(a.out.as_deref(), out, &buf)
}

fn length(a: LengthArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let entry = a.entry.resolve()?;
    let file = File::open(&a.curve).map_err(|e| io_failure(&a.curve, e))?;
    let poly = read_polyline_csv(BufReader::new(file))?;
    let len = weighted_length(&Curve::Polyline(poly), &entry.pair.rho, DEFAULT_REL_TOL)?;
    writeln!(out, "{}", format_sig(len, 15)).map_err(|e| Failure::Usage(e.to_string()))
}

fn plot(a: PlotArgs) -> Result<(), Failure> {
    if a.width == 0 || a.height == 0 {
        return Err(Failure::Usage("--width and --height must be positive".into()));
    }
    let entry = a.entry.resolve()?;
    let competitors = entry.competitors(a.competitors, a.seed)?;
    let svg = render_svg(&entry, &competitors, a.width, a.height);
    let file = File::create(&a.out).map_err(|e| io_failure(&a.out, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(svg.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| io_failure(&a.out, e))
}

/// Maps the domain box onto the viewport with 5% padding, y pointing up.
struct Viewport {
    bbox: BBox,
    scale: f64,
    ox: f64,
    oy: f64,
}

impl Viewport {
    fn new(bbox: BBox, width: u32, height: u32) -> Self {
        let (w, h) = (width as f64, height as f64);
        let (pw, ph) = (0.9 * w, 0.9 * h);
        let scale = (pw / bbox.width()).min(ph / bbox.height());
        let ox = 0.5 * (w - scale * bbox.width());
        let oy = 0.5 * (h - scale * bbox.height());
        Viewport { bbox, scale, ox, oy }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (
            self.ox + self.scale * (p.x - self.bbox.xmin),
            self.oy + self.scale * (self.bbox.ymax - p.y),
        )
    }

    fn path(&self, pts: &[Point2]) -> String {
        let mut d = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{x:.3},{y:.3}", if i == 0 { "M" } else { " L" });
        }
        d
    }
}

fn render_svg(entry: &CatalogEntry, competitors: &[Curve], width: u32, height: u32) -> String {
    let vp = Viewport::new(entry.pair.domain.bbox(), width, height);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", entry.name);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let b = entry.pair.domain.bbox();
    let (x0, y0) = vp.map(Point2::new(b.xmin, b.ymax));
    let (x1, y1) = vp.map(Point2::new(b.xmax, b.ymin));
    let _ = writeln!(
        s,
        r##"<rect x="{x0:.3}" y="{y0:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#444444" stroke-width="1"/>"##,
        x1 - x0,
        y1 - y0
    );
    for c in competitors {
        let _ = writeln!(
            s,
            r##"<path d="{}" fill="none" stroke="#9aa5b1" stroke-width="0.8" stroke-opacity="0.7"/>"##,
            vp.path(&c.sample(0))
        );
    }
    let _ = writeln!(
        s,
        r##"<path d="{}" fill="none" stroke="#c0392b" stroke-width="2.5"/>"##,
        vp.path(&entry.minimizer.sample(257))
    );
    for p in [entry.default_endpoints.0, entry.default_endpoints.1] {
        let (x, y) = vp.map(p);
        let _ = writeln!(s, r##"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="#c0392b"/>"##);
    }
    s.push_str("</svg>\n");
    s
}
