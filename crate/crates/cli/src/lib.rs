//! Command-line front end. [`run`] is the whole program minus process I/O.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use latcurve::enumeration::{genus_hull_classes, low_dimensional_records, records_with_interior};
use latcurve::{
    are_equivalent, cab_profile, clifford, curve_profile, divisor_polygon, enumerate_by_genus,
    enumerate_interior_hulls, enumerate_maximal, enumerate_with_point_count, gonality_pencils, hirzebruch_profile,
    lattice_size, lattice_width, lattice_width_directions, max_polygon, near_gonal, outward_polygon, parse_direction,
    parse_points, parse_polygon, pencil_data, recognize, verify_bounds, width_invariants, BoundTable,
    EnumerationRecord, Error, LatticeDirection, LatticePolygon, TorusDivisor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Tier {
    Fast,
    Full,
    Extreme,
}

impl Tier {
    fn max_genus(self) -> i64 {
        match self {
            Tier::Fast => 10,
            Tier::Full => 20,
            Tier::Extreme => i64::MAX,
        }
    }

    fn max_points(self) -> i64 {
        match self {
            Tier::Fast => 16,
            Tier::Full => 26,
            Tier::Extreme => i64::MAX,
        }
    }

    fn max_lw(self) -> i64 {
        match self {
            Tier::Fast => 6,
            _ => 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    Gonal,
    Neargonal,
}

#[derive(Parser, Debug)]
#[command(name = "latcurve", version, about = "Curve invariants of lattice polygons")]
struct Cli {
    /// Worker threads for enumeration (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Human-readable output instead of compact JSON
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full curve profile of a Newton polygon
    Profile { polygon: String },
    /// Convex hull, counts and interior hull
    Hull { polygon: String },
    /// Maximal polygon with the same interior hull, or the outward polygon itself
    Max {
        polygon: String,
        /// Shift the edges of the given polygon outward instead
        #[arg(long)]
        outward: bool,
    },
    /// Unimodular equivalence test
    Equiv { p: String, q: String },
    /// Named family recognition
    Recognize { polygon: String },
    /// Width and width invariants in one direction
    Width {
        polygon: String,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
    },
    /// Lattice width and its directions
    Lw { polygon: String },
    /// Lattice size
    Size { polygon: String },
    /// Scrollar invariants of the pencil in one direction
    Scrollar {
        polygon: String,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
    },
    /// Number of gonality pencils
    Pencils { polygon: String },
    /// Clifford index and dimension
    Clifford { polygon: String },
    /// Near-gonal classification
    Neargonal { polygon: String },
    /// Polygon of a torus-invariant divisor
    Divisor {
        /// Primitive inward rays, e.g. "(0,1),(1,0),(-1,-1)"
        #[arg(long, allow_hyphen_values = true)]
        rays: String,
        /// Coefficients, e.g. "0,0,1"
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// C_{a,b} triangle profile
    Cab { a: i64, b: i64 },
    /// Hirzebruch trapezoid profile
    Hirzebruch { n: i64, a: i64, d: i64 },
    /// Enumerate polygons up to equivalence (NDJSON)
    Enumerate {
        #[arg(long)]
        genus: Option<i64>,
        #[arg(long)]
        points: Option<i64>,
        #[arg(long = "interior-hulls")]
        interior_hulls: Option<i64>,
        #[arg(long)]
        maximal: Option<i64>,
        /// Print only the number of classes
        #[arg(long)]
        count: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "fast")]
        tier: Tier,
    },
    /// Reproduce a volume bound table
    VerifyBounds {
        #[arg(long, value_enum)]
        table: TableArg,
        #[arg(long = "max-lw")]
        max_lw: i64,
        #[arg(long, value_enum, default_value = "fast")]
        tier: Tier,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn fail(e: &Error) -> Outcome {
    let code = match e {
        Error::Domain(_) => 1,
        Error::Unsupported(_) => 2,
        Error::Internal(_) => 3,
    };
    Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                let line = text.lines().next().unwrap_or("bad arguments").to_string();
                Outcome { code, stdout: String::new(), stderr: format!("{line}\n") }
            };
        }
    };
    let pool = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return fail(&Error::Domain(format!("thread pool: {e}"))),
    };
    let pretty = cli.pretty;
    match pool.install(|| dispatch(cli.command, pretty)) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => fail(&e),
    }
}

fn emit(v: &Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("serializable");
    s.push('\n');
    s
}

fn two_d(p: &LatticePolygon) -> latcurve::Result<()> {
    if p.is_two_d() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("the polygon is not two-dimensional ({:?})", p.dim())))
    }
}

fn dispatch(cmd: Command, pretty: bool) -> latcurve::Result<String> {
    let v = match cmd {
        Command::Profile { polygon } => json!(curve_profile(&parse_polygon(&polygon)?)?),
        Command::Hull { polygon } => {
            let p = parse_polygon(&polygon)?;
            let c = p.counts();
            json!({
                "dim": p.dim(),
                "vertices": p,
                "lattice": c.lattice,
                "boundary": c.boundary,
                "interior": c.interior,
                "volume2": p.volume2(),
                "interior_hull": p.interior_hull(),
            })
        }
        Command::Max { polygon, outward } => {
            let p = parse_polygon(&polygon)?;
            if outward {
                let o = outward_polygon(&p)?;
                json!({"outward": o, "is_lattice": o.is_lattice()})
            } else {
                let m = max_polygon(&p)?;
                json!({"max": m, "interior_hull": m.interior_hull(), "volume2": m.volume2()})
            }
        }
        Command::Equiv { p, q } => json!({"equivalent": are_equivalent(&parse_polygon(&p)?, &parse_polygon(&q)?)}),
        Command::Recognize { polygon } => match recognize(&parse_polygon(&polygon)?) {
            Some(f) => json!({"family": f.family, "d": f.d}),
            None => json!({"family": null, "d": null}),
        },
        Command::Width { polygon, direction } => {
            let p = parse_polygon(&polygon)?;
            json!(width_invariants(&p, parse_direction(&direction)?)?)
        }
        Command::Lw { polygon } => {
            let p = parse_polygon(&polygon)?;
            let dirs: Option<Vec<LatticeDirection>> = lattice_width_directions(&p).ok();
            json!({"lw": lattice_width(&p), "directions": dirs})
        }
        Command::Size { polygon } => json!({"ls": lattice_size(&parse_polygon(&polygon)?)}),
        Command::Scrollar { polygon, direction } => {
            let p = parse_polygon(&polygon)?;
            two_d(&p)?;
            let d = pencil_data(&p, parse_direction(&direction)?)?;
            json!({"scrollar": d.scrollar, "complete": d.complete, "rank": d.rank})
        }
        Command::Pencils { polygon } => json!(gonality_pencils(&parse_polygon(&polygon)?)?),
        Command::Clifford { polygon } => json!(clifford(&parse_polygon(&polygon)?)?),
        Command::Neargonal { polygon } => {
            let p = parse_polygon(&polygon)?;
            two_d(&p)?;
            json!({"near_gonal": near_gonal(&p)?})
        }
        Command::Divisor { rays, coeffs } => {
            let rays = parse_points(&rays)?;
            let coeffs = coeffs
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Domain(format!("bad coefficient {t:?}"))))
                .collect::<latcurve::Result<Vec<_>>>()?;
            let d = divisor_polygon(&TorusDivisor::new(rays, coeffs)?);
            json!({
                "polygon": d.polygon,
                "is_lattice": d.polygon.is_lattice(),
                "is_cartier": d.is_cartier,
                "is_convex": d.is_convex,
                "is_strictly_convex": d.is_strictly_convex,
            })
        }
        Command::Cab { a, b } => json!(cab_profile(a, b)?),
        Command::Hirzebruch { n, a, d } => json!(hirzebruch_profile(n, a, d)?),
        Command::Enumerate { genus, points, interior_hulls, maximal, count, out, resume, tier } => {
            return enumerate(EnumArgs { genus, points, interior_hulls, maximal, count, out, resume, tier }, pretty);
        }
        Command::VerifyBounds { table, max_lw, tier } => {
            let table = match table {
                TableArg::Gonal => BoundTable::Gonal,
                TableArg::Neargonal => BoundTable::Neargonal,
            };
            if max_lw > tier.max_lw() && max_lw <= table.max_lw() {
                return Err(Error::Unsupported(format!("--max-lw {max_lw} needs --tier full")));
            }
            let report = verify_bounds(table, max_lw)?;
            if pretty {
                return Ok(report.render());
            }
            json!(report)
        }
    };
    Ok(emit(&v, pretty))
}

struct EnumArgs {
    genus: Option<i64>,
    points: Option<i64>,
    interior_hulls: Option<i64>,
    maximal: Option<i64>,
    count: bool,
    out: Option<PathBuf>,
    resume: Option<PathBuf>,
    tier: Tier,
}

fn gate(value: i64, limit: i64, what: &str) -> latcurve::Result<()> {
    if value > limit {
        return Err(Error::Unsupported(format!(
            "{what} {value} is above the selected tier; use --tier full or extreme"
        )));
    }
    Ok(())
}

fn ndjson(records: &[EnumerationRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("serializable"));
        s.push('\n');
    }
    s
}

fn enumerate(a: EnumArgs, pretty: bool) -> latcurve::Result<String> {
    let given = [a.genus, a.points, a.interior_hulls, a.maximal].iter().filter(|x| x.is_some()).count();
    if given != 1 {
        return Err(Error::Domain("give exactly one of --genus, --points, --interior-hulls, --maximal".into()));
    }
    if a.out.is_some() && a.resume.is_some() {
        return Err(Error::Domain("--out starts a fresh run and --resume continues one; give only one".into()));
    }
    let persist = a.out.clone().or(a.resume.clone());
    if persist.is_some() && a.genus.is_none() {
        return Err(Error::Domain("--out/--resume are supported for --genus runs".into()));
    }
    let records = if let Some(g) = a.genus {
        gate(g, a.tier.max_genus(), "genus")?;
        match &persist {
            Some(path) => persistent_genus_run(g, path, a.resume.is_some())?,
            None => enumerate_by_genus(g)?,
        }
    } else if let Some(k) = a.points {
        gate(k, a.tier.max_points(), "point count")?;
        enumerate_with_point_count(k)?
    } else if let Some(g) = a.interior_hulls {
        gate(g, a.tier.max_genus(), "genus")?;
        enumerate_interior_hulls(g)?
    } else {
        let g = a.maximal.unwrap();
        gate(g, a.tier.max_genus(), "genus")?;
        enumerate_maximal(g)?
    };
    if a.count || persist.is_some() {
        let mut v = json!({"count": records.len()});
        if let Some(p) = &persist {
            v["out"] = json!(p.display().to_string());
        }
        return Ok(emit(&v, pretty));
    }
    Ok(ndjson(&records))
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Domain(format!("{}: {e}", path.display()))
}

fn sidecar(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

/// Streams finished interior-hull classes to `FILE.partial`, logging each
/// class in `FILE.done`, then writes the sorted result to `FILE`.
fn persistent_genus_run(g: i64, path: &Path, resume: bool) -> latcurve::Result<Vec<EnumerationRecord>> {
    let partial = sidecar(path, ".partial");
    let done_path = sidecar(path, ".done");
    let mut done: HashSet<String> = HashSet::new();
    if resume {
        if let Ok(f) = File::open(&done_path) {
            for line in BufReader::new(f).lines() {
                done.insert(line.map_err(|e| io_err(&done_path, e))?);
            }
        }
        // drop records of classes that never reached the done log
        if let Ok(f) = File::open(&partial) {
            let mut keep = String::new();
            for line in BufReader::new(f).lines() {
                let line = line.map_err(|e| io_err(&partial, e))?;
                if let Some((key, _)) = line.split_once('\t') {
                    if done.contains(key) {
                        keep.push_str(&line);
                        keep.push('\n');
                    }
                }
            }
            fs::write(&partial, keep).map_err(|e| io_err(&partial, e))?;
        }
    } else {
        fs::write(&partial, "").map_err(|e| io_err(&partial, e))?;
        fs::write(&done_path, "").map_err(|e| io_err(&done_path, e))?;
    }
    let open = |p: &Path| OpenOptions::new().append(true).create(true).open(p).map_err(|e| io_err(p, e));
    let sinks = Mutex::new((open(&partial)?, open(&done_path)?));
    let write_class = |key: &str, recs: &[EnumerationRecord]| -> latcurve::Result<()> {
        let mut guard = sinks.lock().expect("writer lock");
        let (part, dlog) = &mut *guard;
        let mut buf = String::new();
        for r in recs {
            buf.push_str(key);
            buf.push('\t');
            buf.push_str(&serde_json::to_string(r).expect("serializable"));
            buf.push('\n');
        }
        part.write_all(buf.as_bytes()).and_then(|_| part.flush()).map_err(|e| io_err(&partial, e))?;
        writeln!(dlog, "{key}").and_then(|_| dlog.flush()).map_err(|e| io_err(&done_path, e))
    };
    if !done.contains("low") {
        write_class("low", &low_dimensional_records(g))?;
    }
    let hulls = genus_hull_classes(g)?;
    hulls
        .par_iter()
        .map(|h| {
            let key = serde_json::to_string(h).expect("serializable");
            if done.contains(&key) {
                return Ok(());
            }
            write_class(&key, &records_with_interior(h))
        })
        .collect::<latcurve::Result<Vec<()>>>()?;
    drop(sinks);
    let mut records = Vec::new();
    let f = File::open(&partial).map_err(|e| io_err(&partial, e))?;
    for line in BufReader::new(f).lines() {
        let line = line.map_err(|e| io_err(&partial, e))?;
        let Some((_, rec)) = line.split_once('\t') else { continue };
        let r: EnumerationRecord = serde_json::from_str(rec)
            .map_err(|e| Error::Domain(format!("corrupt record in {}: {e}", partial.display())))?;
        records.push(r);
    }
    records.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    records.dedup_by(|a, b| a.canonical == b.canonical);
    fs::write(path, ndjson(&records)).map_err(|e| io_err(path, e))?;
    Ok(records)
}
