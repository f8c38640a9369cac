//! The `farey` command line front end.
//!
//! Settings resolve as flags, then environment (`FAREY_MAX_Q`,
//! `FAREY_FORMAT`, `FAREY_JOBS`), then an optional TOML file given with
//! `--config`, then built-in defaults.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::json;

use crate::density::{haynes_partial_sum, rho_odd, rho_table, RhoConfig, RhoResult};
use crate::farey::{count_fractions, farey_odd_seq, farey_seq, DeltaTuple, Endpoints, TupleCounter, UnitInterval};
use crate::geometry::{build_region, stabilization_threshold, stabilized_quadrangle, unimodular_image, ConvexRegion, IndexTuple};
use crate::lattice::{
    count_lattice, count_lattice_interval, verify_lemma_3_6, verify_prop_2_1, verify_prop_4_1, IdentityReport,
    ParityClass,
};
use crate::paths::enumerate_paths;
use crate::rational::{fmt_ratio, parse_rational, to_decimal, to_f64};
use crate::{haynes_density, Error, Result};

const DEFAULT_MAX_Q: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EndpointRule {
    Closed,
    LeftOpen,
}

impl From<EndpointRule> for Endpoints {
    fn from(e: EndpointRule) -> Self {
        match e {
            EndpointRule::Closed => Endpoints::Closed,
            EndpointRule::LeftOpen => Endpoints::LeftOpen,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "farey", version, about = "Consecutive Farey fractions with odd denominators")]
pub struct Cli {
    /// Output format [default: text]
    #[arg(long, global = true, value_enum, env = "FAREY_FORMAT")]
    pub format: Option<Format>,
    /// Largest Q any command may enumerate [default: 100000]
    #[arg(long, global = true, env = "FAREY_MAX_Q")]
    pub max_q: Option<u64>,
    /// Worker threads for parallel commands
    #[arg(long, global = true, env = "FAREY_JOBS")]
    pub jobs: Option<usize>,
    /// TOML file with `max_q`, `format`, `jobs`, `tol`, `k_max`
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print F_Q or F_{Q,odd}
    List {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        odd: bool,
    },
    /// Counts of Δ-patterns among consecutive odd-denominator fractions
    Stats(StatsArgs),
    /// Certified enclosure of the limiting frequency of a Δ-pattern
    Rho(RhoArgs),
    /// Enclosures for every Δ in {1..delta-max}^h
    RhoTable {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        delta_max: u64,
        #[command(flatten)]
        rho: RhoOpts,
    },
    /// Empirical frequency at Q against the enclosure
    Compare {
        #[arg(long)]
        delta: DeltaTuple,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        rho: RhoOpts,
    },
    /// Vertices, area and constraints of a tile
    Region {
        /// Labels k1,...,kr (empty for the Farey triangle)
        #[arg(long, default_value = "")]
        ks: IndexTuple,
        /// Map the tile by T_k (requires the tile to lie in T_k)
        #[arg(long)]
        image: Option<u64>,
        /// Explicit quadrangle `m,i,r` instead of a tile
        #[arg(long, conflicts_with_all = ["ks", "image"])]
        quadrangle: Option<String>,
    },
    /// Path families of a Δ-pattern
    Paths {
        #[arg(long)]
        delta: DeltaTuple,
    },
    /// Lattice points of Q·T_{k1..kr}
    Lattice {
        #[arg(long, default_value = "")]
        ks: IndexTuple,
        #[arg(long)]
        q: u64,
        /// `x,y` parities, each odd|even|any
        #[arg(long, default_value = "any,any")]
        parity: ParityClass,
        /// Count all points, not only primitive ones
        #[arg(long)]
        all: bool,
        #[arg(long)]
        interval: Option<UnitInterval>,
        #[arg(long, value_enum, default_value = "closed")]
        endpoints: EndpointRule,
    },
    /// Run a named check; exits 1 when it fails
    Verify(VerifyArgs),
    /// Frequency among windows starting in an interval, against the limit
    ShortInterval {
        #[arg(long)]
        delta: DeltaTuple,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        interval: UnitInterval,
        #[arg(long, value_enum, default_value = "closed")]
        endpoints: EndpointRule,
        #[command(flatten)]
        rho: RhoOpts,
    },
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    q: u64,
    /// Pattern length (ignored when --delta is given)
    #[arg(long, default_value_t = 1)]
    h: usize,
    /// Report only this pattern
    #[arg(long)]
    delta: Option<DeltaTuple>,
    /// Only report patterns with every entry at most this
    #[arg(long)]
    max_delta: Option<u64>,
    #[arg(long)]
    interval: Option<UnitInterval>,
    #[arg(long, value_enum, default_value = "closed")]
    endpoints: EndpointRule,
    /// Continue windows past 1/1 into F_Q + 1
    #[arg(long)]
    cyclic: bool,
}

#[derive(Debug, Args, Clone)]
pub struct RhoOpts {
    /// Target enclosure width, e.g. 1e-9 or 1/1000 [default: 1e-6]
    #[arg(long)]
    tol: Option<String>,
    /// Largest label cutoff [default: 16384]
    #[arg(long)]
    k_max: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RhoArgs {
    #[arg(long)]
    delta: DeltaTuple,
    #[command(flatten)]
    rho: RhoOpts,
    /// Also list per-family contributions
    #[arg(long)]
    families: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(name = "prop2.1", alias = "identity")]
    Identity,
    #[value(name = "prop4.1", alias = "interval-identity")]
    IntervalIdentity,
    #[value(name = "lemma3.6", alias = "parity-swap")]
    ParitySwap,
    Areas,
    Stabilization,
    Completeness,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 100)]
    q: u64,
    /// Pattern for the identity suites; all patterns with entries ≤ 3 and h ≤ 2 when omitted
    #[arg(long)]
    delta: Option<DeltaTuple>,
    #[arg(long, default_value = "0,1/2")]
    interval: UnitInterval,
    #[arg(long, value_enum, default_value = "closed")]
    endpoints: EndpointRule,
    /// Label k for parity-swap; 1..=7 when omitted
    #[arg(long)]
    k: Option<u64>,
    /// Domain tile for parity-swap
    #[arg(long, default_value = "")]
    domain: IndexTuple,
    /// Upper index for areas / completeness / stabilization
    #[arg(long, default_value_t = 200)]
    up_to: u64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    max_q: Option<u64>,
    format: Option<Format>,
    jobs: Option<usize>,
    tol: Option<String>,
    k_max: Option<u64>,
}

/// Resolved settings.
struct Settings {
    format: Format,
    max_q: u64,
    tol: Option<String>,
    k_max: Option<u64>,
}

impl Settings {
    fn check_q(&self, q: u64) -> Result<u64> {
        if q == 0 {
            return Err(Error::InvalidArgument("Q must be positive".into()));
        }
        if q > self.max_q {
            return Err(Error::CapExceeded { q, cap: self.max_q });
        }
        Ok(q)
    }

    fn rho_config(&self, opts: &RhoOpts) -> Result<RhoConfig> {
        let mut cfg = RhoConfig::default();
        if let Some(t) = opts.tol.as_ref().or(self.tol.as_ref()) {
            cfg.tol = parse_rational(t)?;
            if cfg.tol <= BigRational::zero() {
                return Err(Error::InvalidArgument("tolerance must be positive".into()));
            }
        }
        if let Some(k) = opts.k_max.or(self.k_max) {
            if k == 0 {
                return Err(Error::InvalidArgument("k-max must be positive".into()));
            }
            cfg.k_max = k;
        }
        Ok(cfg)
    }
}

/// `p/q` and its 12-digit decimal.
fn show(r: &BigRational) -> (String, String) {
    (fmt_ratio(r), to_decimal(r, 12))
}

fn ratio_u(n: u64, d: u64) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(n.into(), d.into()))
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out).map_err(io_err)
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn csv_rows(out: &mut dyn Write, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    w.flush().map_err(io_err)
}

/// Entry point for the binary: parses `std::env::args`, writes to stdout,
/// returns the exit code.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match Cli::try_parse() {
        Ok(cli) => finish(execute(cli, &mut lock)),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

/// Parses `args` (program name first) and runs the command into `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => finish(execute(cli, out)),
        Err(e) => {
            let _ = writeln!(out, "{e}");
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}

fn finish(r: Result<bool>) -> i32 {
    match r {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn load_file(path: &Option<PathBuf>) -> Result<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?;
            toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        }
    }
}

/// Runs a parsed command. `Ok(false)` means a check ran and failed.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    let file = load_file(&cli.config)?;
    let settings = Settings {
        format: cli.format.or(file.format).unwrap_or(Format::Text),
        max_q: cli.max_q.or(file.max_q).unwrap_or(DEFAULT_MAX_Q),
        tol: file.tol,
        k_max: file.k_max,
    };
    if let Some(j) = cli.jobs.or(file.jobs) {
        // A global pool can only be installed once per process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let s = &settings;
    match cli.command {
        Command::List { q, odd } => cmd_list(s, q, odd, out).map(|_| true),
        Command::Stats(a) => cmd_stats(s, &a, out).map(|_| true),
        Command::Rho(a) => cmd_rho(s, &a, out).map(|_| true),
        Command::RhoTable { h, delta_max, rho } => cmd_rho_table(s, h, delta_max, &rho, out).map(|_| true),
        Command::Compare { delta, q, rho } => cmd_compare(s, &delta, q, None, &rho, out).map(|_| true),
        Command::ShortInterval { delta, q, interval, endpoints, rho } => {
            cmd_compare(s, &delta, q, Some((interval, endpoints.into())), &rho, out).map(|_| true)
        }
        Command::Region { ks, image, quadrangle } => cmd_region(s, &ks, image, quadrangle.as_deref(), out).map(|_| true),
        Command::Paths { delta } => cmd_paths(s, &delta, out).map(|_| true),
        Command::Lattice { ks, q, parity, all, interval, endpoints } => {
            cmd_lattice(s, &ks, q, parity, !all, interval, endpoints.into(), out).map(|_| true)
        }
        Command::Verify(a) => cmd_verify(s, &a, out),
    }
}

fn cmd_list(s: &Settings, q: u64, odd: bool, out: &mut dyn Write) -> Result<()> {
    s.check_q(q)?;
    let items: Vec<(u64, u64)> = if odd {
        farey_odd_seq(q)?.map(|f| (f.num(), f.den())).collect()
    } else {
        farey_seq(q)?.map(|f| (f.num(), f.den())).collect()
    };
    match s.format {
        Format::Text => {
            for (a, b) in &items {
                writeln!(out, "{a}/{b}").map_err(io_err)?;
            }
            Ok(())
        }
        Format::Csv => csv_rows(
            out,
            &["index", "num", "den"],
            items.iter().enumerate().map(|(i, (a, b))| vec![i.to_string(), a.to_string(), b.to_string()]).collect(),
        ),
        Format::Json => emit_json(out, &json!(items.iter().map(|(a, b)| format!("{a}/{b}")).collect::<Vec<_>>())),
    }
}

fn cmd_stats(s: &Settings, a: &StatsArgs, out: &mut dyn Write) -> Result<()> {
    s.check_q(a.q)?;
    let counter = TupleCounter::new(a.q)
        .interval(a.interval.clone())
        .endpoints(a.endpoints.into())
        .cyclic(a.cyclic);
    let (rows, total): (Vec<(Vec<u64>, u64)>, u64) = match &a.delta {
        Some(d) => {
            let c = counter.count(d)?;
            (vec![(d.values().to_vec(), c.matches)], c.windows)
        }
        None => {
            let (hist, total) = counter.histogram(a.h)?;
            let rows = hist
                .into_iter()
                .filter(|(k, _)| a.max_delta.is_none_or(|m| k.iter().all(|&v| v <= m)))
                .collect();
            (rows, total)
        }
    };
    let h = a.delta.as_ref().map_or(a.h, |d| d.len());
    let mut table = Vec::new();
    for (k, n) in &rows {
        let d = DeltaTuple::new(k.clone())?;
        let (p, dec) = show(&ratio_u(*n, total)?);
        table.push(vec![a.q.to_string(), h.to_string(), d.to_string(), n.to_string(), total.to_string(), p, dec]);
    }
    let header = ["Q", "h", "delta", "count", "total", "ratio", "decimal"];
    match s.format {
        Format::Csv => csv_rows(out, &header, table),
        Format::Json => emit_json(
            out,
            &json!(table
                .iter()
                .map(|r| json!({"Q": a.q, "h": h, "delta": r[2], "count": rows_num(&r[3]), "total": total, "ratio": r[5], "decimal": r[6]}))
                .collect::<Vec<_>>()),
        ),
        Format::Text => {
            writeln!(out, "Q = {}, h = {h}, windows = {total}", a.q).map_err(io_err)?;
            for r in &table {
                writeln!(out, "{:<14} {:>12}  {} ({})", r[2], r[3], r[5], r[6]).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn rows_num(s: &str) -> u64 {
    s.parse().unwrap_or(0)
}

fn rho_json(r: &RhoResult, families: bool) -> serde_json::Value {
    let e = &r.enclosure;
    let mut v = json!({
        "delta": r.delta,
        "lo": fmt_ratio(&e.lo),
        "hi": fmt_ratio(&e.hi),
        "lo_decimal": to_decimal(&e.lo, 12),
        "hi_decimal": to_decimal(&e.hi, 12),
        "midpoint": to_decimal(&e.midpoint(), 12),
        "width": to_f64(&e.width()),
        "k_used": r.k_used,
        "exact": r.exact,
        "converged": r.converged,
    });
    if families {
        v["families"] = serde_json::to_value(&r.families).unwrap_or_default();
    }
    v
}

fn rho_row(r: &RhoResult) -> Vec<String> {
    let e = &r.enclosure;
    vec![
        r.delta.clone(),
        fmt_ratio(&e.lo),
        fmt_ratio(&e.hi),
        to_decimal(&e.midpoint(), 12),
        r.k_used.to_string(),
        r.exact.to_string(),
    ]
}

const RHO_HEADER: [&str; 6] = ["delta", "lo", "hi", "midpoint", "k_used", "exact"];

fn cmd_rho(s: &Settings, a: &RhoArgs, out: &mut dyn Write) -> Result<()> {
    let r = rho_odd(&a.delta, &s.rho_config(&a.rho)?)?;
    match s.format {
        Format::Json => emit_json(out, &rho_json(&r, a.families)),
        Format::Csv => csv_rows(out, &RHO_HEADER, vec![rho_row(&r)]),
        Format::Text => {
            let e = &r.enclosure;
            if r.exact {
                let (p, d) = show(&e.lo);
                writeln!(out, "rho_odd{} = {p} ({d}) exact, K = {}", r.delta, r.k_used).map_err(io_err)?;
            } else {
                writeln!(
                    out,
                    "rho_odd{} in [{}, {}] width {:.3e}, K = {}{}",
                    r.delta,
                    to_decimal(&e.lo, 12),
                    to_decimal(&e.hi, 12),
                    to_f64(&e.width()),
                    r.k_used,
                    if r.converged { "" } else { " (not converged)" }
                )
                .map_err(io_err)?;
            }
            if a.families {
                for f in &r.families {
                    writeln!(out, "  {}  lo {}  tail {}", f.family, to_decimal(&f.lo, 12), to_decimal(&f.tail, 12))
                        .map_err(io_err)?;
                }
            }
            Ok(())
        }
    }
}

fn cmd_rho_table(s: &Settings, h: usize, delta_max: u64, opts: &RhoOpts, out: &mut dyn Write) -> Result<()> {
    if h > 4 || delta_max > 20 {
        return Err(Error::InvalidArgument("rho-table supports h ≤ 4 and delta-max ≤ 20".into()));
    }
    let rows = rho_table(h, delta_max, &s.rho_config(opts)?)?;
    match s.format {
        Format::Json => emit_json(out, &json!(rows.iter().map(|r| rho_json(r, true)).collect::<Vec<_>>())),
        Format::Csv => csv_rows(out, &RHO_HEADER, rows.iter().map(rho_row).collect()),
        Format::Text => {
            for r in &rows {
                let row = rho_row(r);
                writeln!(out, "{:<12} {}  K={}{}", row[0], r.enclosure, r.k_used, if r.exact { " exact" } else { "" })
                    .map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn cmd_compare(
    s: &Settings,
    delta: &DeltaTuple,
    q: u64,
    interval: Option<(UnitInterval, Endpoints)>,
    opts: &RhoOpts,
    out: &mut dyn Write,
) -> Result<()> {
    s.check_q(q)?;
    let r = rho_odd(delta, &s.rho_config(opts)?)?;
    let (iv, ep) = match &interval {
        Some((iv, ep)) => (Some(iv.clone()), *ep),
        None => (None, Endpoints::Closed),
    };
    let c = TupleCounter::new(q).interval(iv.clone()).endpoints(ep).count(delta)?;
    let emp = ratio_u(c.matches, c.windows)?;
    let dev = to_f64(&r.enclosure.distance(&emp));
    let qf = q as f64;
    let (scale_name, scale) = match interval {
        None => ("deviation*Q/log^2(Q)", qf / qf.ln().powi(2)),
        Some(_) => ("deviation*sqrt(Q)/log(Q)", qf.sqrt() / qf.ln()),
    };
    let (ep_s, ed) = show(&emp);
    match s.format {
        Format::Json => {
            let mut v = json!({
                "delta": delta.to_string(),
                "Q": q,
                "count": c.matches,
                "windows": c.windows,
                "empirical": ep_s,
                "empirical_decimal": ed,
                "enclosure": rho_json(&r, false),
                "deviation": dev,
                scale_name: dev * scale,
            });
            if let Some(iv) = &iv {
                v["interval"] = json!(iv.to_string());
            }
            emit_json(out, &v)
        }
        Format::Csv => csv_rows(
            out,
            &["delta", "Q", "interval", "count", "windows", "empirical", "lo", "hi", "deviation", scale_name],
            vec![vec![
                delta.to_string(),
                q.to_string(),
                iv.as_ref().map_or(String::new(), |i| i.to_string()),
                c.matches.to_string(),
                c.windows.to_string(),
                ed,
                to_decimal(&r.enclosure.lo, 12),
                to_decimal(&r.enclosure.hi, 12),
                format!("{dev:.3e}"),
                format!("{:.6}", dev * scale),
            ]],
        ),
        Format::Text => {
            if let Some(iv) = &iv {
                writeln!(out, "interval {iv}").map_err(io_err)?;
            }
            writeln!(out, "empirical  {}/{} = {ed}", c.matches, c.windows).map_err(io_err)?;
            writeln!(out, "limit      {}", r.enclosure).map_err(io_err)?;
            writeln!(out, "deviation  {dev:.3e}  ({scale_name} = {:.6})", dev * scale).map_err(io_err)
        }
    }
}

fn cmd_region(s: &Settings, ks: &IndexTuple, image: Option<u64>, quad: Option<&str>, out: &mut dyn Write) -> Result<()> {
    let region: ConvexRegion = match quad {
        Some(spec) => {
            let v: Vec<u64> = spec
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad quadrangle `{spec}`"))))
                .collect::<Result<_>>()?;
            let [m, i, r] = v[..] else {
                return Err(Error::Parse("quadrangle needs `m,i,r`".into()));
            };
            stabilized_quadrangle(m, i, r)?
        }
        None => {
            let base = build_region(ks);
            match image {
                Some(k) => unimodular_image(&base, k)?,
                None => base,
            }
        }
    };
    let dump = region.dump();
    match s.format {
        Format::Json => emit_json(out, &serde_json::to_value(&dump).unwrap_or_default()),
        Format::Csv => csv_rows(
            out,
            &["x", "y"],
            dump.vertices.iter().map(|[x, y]| vec![x.clone(), y.clone()]).collect(),
        ),
        Format::Text => {
            let (a, d) = show(&region.area());
            writeln!(out, "area {a} ({d})").map_err(io_err)?;
            writeln!(out, "vertices").map_err(io_err)?;
            for v in region.vertices() {
                writeln!(out, "  {v}").map_err(io_err)?;
            }
            writeln!(out, "constraints").map_err(io_err)?;
            for c in region.constraints() {
                writeln!(out, "  {c}").map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn cmd_paths(s: &Settings, delta: &DeltaTuple, out: &mut dyn Write) -> Result<()> {
    let fams = enumerate_paths(delta);
    let rows: Vec<Vec<String>> = fams
        .iter()
        .map(|f| {
            vec![
                f.to_string(),
                f.region_arity().to_string(),
                f.first_vertex().to_string(),
                f.free_slots().len().to_string(),
            ]
        })
        .collect();
    match s.format {
        Format::Csv => csv_rows(out, &["path", "region_arity", "first_vertex", "free_slots"], rows),
        Format::Json => emit_json(
            out,
            &json!(rows
                .iter()
                .map(|r| json!({"path": r[0], "region_arity": rows_num(&r[1]), "first_vertex": r[2], "free_slots": rows_num(&r[3])}))
                .collect::<Vec<_>>()),
        ),
        Format::Text => {
            for r in &rows {
                writeln!(out, "{}    (arity {}, v1 = {})", r[0], r[1], r[2]).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_lattice(
    s: &Settings,
    ks: &IndexTuple,
    q: u64,
    parity: ParityClass,
    primitive: bool,
    interval: Option<UnitInterval>,
    endpoints: Endpoints,
    out: &mut dyn Write,
) -> Result<()> {
    s.check_q(q)?;
    let region = build_region(ks);
    let rep = match &interval {
        None => count_lattice(&region, q, parity, primitive)?,
        Some(iv) => {
            if !primitive {
                return Err(Error::InvalidArgument("interval counts are over primitive points only".into()));
            }
            count_lattice_interval(&region, q, parity, iv, endpoints)?
        }
    };
    match s.format {
        Format::Json => emit_json(out, &serde_json::to_value(&rep).unwrap_or_default()),
        Format::Csv => csv_rows(
            out,
            &["tile", "Q", "parity", "primitive", "interval", "count", "boundary_hits"],
            vec![vec![
                ks.to_string(),
                q.to_string(),
                parity.to_string(),
                primitive.to_string(),
                interval.as_ref().map_or(String::new(), |i| i.to_string()),
                rep.count.to_string(),
                rep.boundary_hits.to_string(),
            ]],
        ),
        Format::Text => {
            writeln!(out, "{} points in {}·{ks} with parity ({parity}){}", rep.count, q, if primitive { ", primitive" } else { "" })
                .map_err(io_err)?;
            if let Some(iv) = &interval {
                writeln!(out, "interval {iv}, {} boundary hits", rep.boundary_hits).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn identity_check(r: &IdentityReport) -> Check {
    let iv = r.interval.as_ref().map_or(String::new(), |i| format!(" I={i}"));
    Check {
        name: format!("Q={} Δ={}{iv}", r.q, r.delta),
        pass: r.pass,
        detail: match &r.first_mismatch {
            Some(m) => format!("streaming {} lattice {}; {m}", r.streaming, r.lattice),
            None => format!("streaming {} lattice {}", r.streaming, r.lattice),
        },
    }
}

fn cmd_verify(s: &Settings, a: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let deltas = || match &a.delta {
        Some(d) => vec![d.clone()],
        None => (1..=2).flat_map(|h| DeltaTuple::all(h, 3)).collect(),
    };
    let mut checks = Vec::new();
    match a.suite {
        Suite::Identity => {
            s.check_q(a.q)?;
            for d in deltas() {
                checks.push(identity_check(&verify_prop_2_1(a.q, &d)?));
            }
        }
        Suite::IntervalIdentity => {
            s.check_q(a.q)?;
            for d in deltas() {
                checks.push(identity_check(&verify_prop_4_1(a.q, &d, &a.interval, a.endpoints.into())?));
            }
        }
        Suite::ParitySwap => {
            s.check_q(a.q)?;
            let domain = build_region(&a.domain);
            let ks: Vec<u64> = match a.k {
                Some(k) => vec![k],
                None => (1..=7).collect(),
            };
            for k in ks {
                let r = verify_lemma_3_6(a.q, k, &domain)?;
                let detail = r
                    .checks
                    .iter()
                    .map(|c| format!("({})→({}): {}={}", c.before, c.after, c.lhs, c.rhs))
                    .collect::<Vec<_>>()
                    .join(", ");
                checks.push(Check { name: format!("Q={} k={k} D={}", a.q, a.domain), pass: r.pass, detail });
            }
        }
        Suite::Areas => {
            for k in 1..=a.up_to.max(1) {
                let area = build_region(&IndexTuple::new(vec![k])?).area();
                let want = if k == 1 { BigRational::new(1.into(), 6.into()) } else { haynes_density(k) };
                checks.push(Check { name: format!("Area(T_{k})"), pass: area == want, detail: fmt_ratio(&area) });
            }
        }
        Suite::Completeness => {
            let mut sum = BigRational::zero();
            let cfg = RhoConfig::default();
            for k in 1..=a.up_to.max(1) {
                sum += rho_odd(&DeltaTuple::new(vec![k])?, &cfg)?.enclosure.lo;
                let want = haynes_partial_sum(k);
                checks.push(Check { name: format!("K={k}"), pass: sum == want, detail: fmt_ratio(&sum) });
            }
        }
        Suite::Stabilization => {
            for r in 1..=3u64 {
                let c = stabilization_threshold(r);
                for m in [c, c + 1, c + 5] {
                    for i in 1..=r {
                        let mut ks = vec![2; i as usize - 1];
                        ks.extend([1, m]);
                        let clipped = build_region(&IndexTuple::new(ks.clone())?);
                        let quad = stabilized_quadrangle(m, i, r)?;
                        checks.push(Check {
                            name: format!("r={r} m={m} i={i}"),
                            pass: clipped.vertices() == quad.vertices(),
                            detail: format!("T_{:?} vs quadrangle", ks),
                        });
                    }
                }
            }
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    match s.format {
        Format::Json => emit_json(
            out,
            &json!({
                "suite": format!("{:?}", a.suite),
                "pass": all_pass,
                "checks": checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
            }),
        )?,
        Format::Csv => csv_rows(
            out,
            &["check", "status", "detail"],
            checks
                .iter()
                .map(|c| vec![c.name.clone(), if c.pass { "PASS" } else { "FAIL" }.to_string(), c.detail.clone()])
                .collect(),
        )?,
        Format::Text => {
            for c in &checks {
                writeln!(out, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail).map_err(io_err)?;
            }
            writeln!(out, "{}", if all_pass { "PASS" } else { "FAIL" }).map_err(io_err)?;
        }
    }
    Ok(all_pass)
}

/// `#ℱ_{Q,odd}`, exposed for scripts that only need the count.
pub fn odd_count(q: u64) -> u64 {
    count_fractions(q, true)
}
