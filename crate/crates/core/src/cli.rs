//! Command-line front end. Data goes to stdout or `--out`, a short summary
//! to stderr. Usage errors exit with 2, mathematical rejections print a JSON
//! error object and exit with 1.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::endo::{OrbitTail, QuadMap};
use crate::error::Error;
use crate::exactmath::{parse_rational, ProjPoint, Rational};
use crate::families::{elliptic_family_map, fermat_curve_points, genus0_family, Slice};
use crate::moduli::{membership, membership3, sigma_action, AffineModelPoint};
use crate::search::{classify_point, search_surface, write_csv, write_json_lines, SearchConfig, DEFAULT_SIEVE_MODS};
use crate::surface::{
    boundary_catalog, on_surface, phi, phi_inverse, point_to_endomorphism, s6_membership, sigma6_permutation,
    sigma6_surface, singular_points_check, verify_identities, S6Membership, S6Point,
};

#[derive(Parser, Debug)]
#[command(name = "sixcycle", version, about = "Quadratic maps of P^1 with a marked 6-cycle, exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for every sampled check.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write data here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Identity catalog, singular points and boundary containment.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// The marked map attached to a point `[W:X:Y:Z]` of the surface.
    MapFromSurface {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        common: Common,
    },
    /// The map from `n (0,1) + t (-1,1)` on the elliptic curve.
    MapFromElliptic {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 0)]
        torsion: u8,
        #[arg(long, default_value = "Z0")]
        slice: Slice,
        #[command(flatten)]
        common: Common,
    },
    /// A member of the genus-0 family with a rational fixed point.
    MapFromFamily {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[command(flatten)]
        common: Common,
    },
    /// Forward orbit of a point under a map `[a0:...:a5]`.
    Orbit {
        #[arg(long = "map", allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Apply the cycle-shifting automorphism to a model or surface point.
    Sigma {
        #[command(flatten)]
        target: Target,
        /// Number of applications.
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether a point is in the moduli space.
    Membership {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Height-bounded search for points of the surface.
    Search {
        #[arg(long)]
        height: u64,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long, value_delimiter = ',')]
        sieve_mods: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Which known curve a surface point lies on.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        common: Common,
    },
    /// Points of `X^3 + Y^3 = Z^3` up to a height.
    FermatPoints {
        #[arg(long)]
        height: u32,
        #[command(flatten)]
        common: Common,
    },
}

/// A model point (`--n` with `--coords`) or a surface point (`--point`).
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = true)]
pub struct Target {
    #[arg(long, requires = "coords")]
    pub n: Option<usize>,
    /// Model coordinates, comma separated. For n = 3 a single `[a1:a3:a4]`,
    /// for n = 4 `[a1:a2],x`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "n")]
    pub coords: Option<Vec<String>>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n", "coords"])]
    pub point: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

enum Failure {
    Math(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(Value, String, bool), Failure>;

fn parse_point(s: &str, dim: usize) -> crate::Result<ProjPoint> {
    let p: ProjPoint = s.parse()?;
    p.expect_dim(dim)?;
    Ok(p)
}

fn parse_rationals(cs: &[String]) -> crate::Result<Vec<Rational>> {
    cs.iter().map(|c| parse_rational(c)).collect()
}

fn model_point(n: usize, coords: &[String]) -> crate::Result<AffineModelPoint> {
    let repr = json!({ "n": n, "coords": coords });
    serde_json::from_value(repr).map_err(|e| Error::InvalidModel(e.to_string()))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn verify(seed: u64) -> Outcome {
    let identities = verify_identities(seed);
    let singular = singular_points_check();
    let boundary: Vec<Value> = boundary_catalog()
        .iter()
        .map(|c| {
            let pts = c.sample_points(8);
            let ok = pts.iter().all(|p| on_surface(p) && c.contains(p));
            json!({ "component": c.name, "samples": pts.len(), "on_surface": ok })
        })
        .collect();
    let perm = sigma6_permutation();
    let ids_ok = identities.iter().filter(|r| r.verified()).count();
    let bnd_ok = boundary.iter().all(|b| b["on_surface"] == true);
    let ok = ids_ok == identities.len() && singular.ok() && bnd_ok && perm.bijective;
    let summary = format!(
        "identities {ids_ok}/{} verified; singular points {}; boundary containment {}; sigma6 permutes components {}",
        identities.len(),
        if singular.ok() { "ok" } else { "FAILED" },
        if bnd_ok { "ok" } else { "FAILED" },
        if perm.bijective { "ok" } else { "FAILED" },
    );
    let data = json!({
        "ok": ok,
        "identities": to_value(&identities),
        "singular_points": to_value(&singular),
        "boundary": boundary,
        "sigma6_permutation": to_value(&perm),
    });
    Ok((data, summary, ok))
}

fn map_from_surface(point: &str) -> Outcome {
    let s = S6Point::new(parse_point(point, 3)?)?;
    if let S6Membership::Boundary { components } = s6_membership(&s) {
        return Err(Error::BoundaryPoint(format!("{s} lies on {}", components.join(", "))).into());
    }
    let model = AffineModelPoint::affine(phi_inverse(s.point())?.to_vec())?;
    let cycle = point_to_endomorphism(&s)?;
    let summary = format!("{s} -> {}", cycle.map());
    let mut data = json!({ "surface_point": s.to_string(), "model_point": to_value(&model) });
    if let (Value::Object(d), Value::Object(c)) = (&mut data, to_value(&cycle)) {
        d.extend(c);
    }
    Ok((data, summary, true))
}

fn orbit(map: &str, start: &str, steps: usize) -> Outcome {
    let f: QuadMap = map.parse()?;
    let x = parse_point(start, 1)?;
    let o = f.orbit(&x, steps);
    let summary = match o.tail {
        OrbitTail::Cycle { preperiod, period } => format!("preperiod {preperiod}, period {period}"),
        OrbitTail::Open => format!("no repetition within {steps} steps"),
    };
    let data = json!({ "map": f.to_string(), "start": x.to_string(), "points": strings(&o.points), "tail": to_value(&o.tail) });
    Ok((data, summary, true))
}

fn sigma(t: &Target, times: usize) -> Outcome {
    let mut images = Vec::new();
    if let Some(point) = &t.point {
        let mut p = S6Point::new(parse_point(point, 3)?)?.into_point();
        for _ in 0..times {
            p = sigma6_surface(&p);
            images.push(p.to_string());
        }
    } else {
        let (n, coords) = (t.n.unwrap_or(0), t.coords.clone().unwrap_or_default());
        let mut p = model_point(n, &coords)?;
        for _ in 0..times {
            p = sigma_action(&p)?;
            images.push(p.to_string());
        }
    }
    let summary = format!("{} image(s)", images.len());
    Ok((json!({ "images": images }), summary, true))
}

fn membership_cmd(t: &Target) -> Outcome {
    let data = if let Some(point) = &t.point {
        let p = parse_point(point, 3)?;
        if !on_surface(&p) {
            json!({ "point": p.to_string(), "on_surface": false, "status": "outside" })
        } else {
            let m = s6_membership(&S6Point::new(p.clone())?);
            let mut v = json!({ "point": p.to_string(), "on_surface": true });
            if let (Value::Object(d), Value::Object(m)) = (&mut v, to_value(&m)) {
                d.extend(m);
            }
            v
        }
    } else {
        let (n, coords) = (t.n.unwrap_or(0), t.coords.clone().unwrap_or_default());
        match n {
            3 => {
                let p = parse_point(coords.first().map_or("", |s| s.as_str()), 2)?;
                let inside = membership3(&p);
                json!({ "n": 3, "coords": coords, "status": if inside { "inside" } else { "outside" } })
            }
            4 => {
                let p = model_point(4, &coords)?;
                let inside = p.to_marked_cycle().is_ok();
                json!({ "n": 4, "coords": coords, "status": if inside { "inside" } else { "outside" } })
            }
            _ => {
                let xs = parse_rationals(&coords)?;
                let m = membership(n, &xs);
                let mut v = json!({ "n": n, "coords": coords });
                if let (Value::Object(d), Value::Object(m)) = (&mut v, to_value(&m)) {
                    d.extend(m);
                }
                if n == 6 && m.is_inside() {
                    v["surface_point"] = Value::String(phi(&xs)?.to_string());
                }
                v
            }
        }
    };
    let summary = format!("status: {}", data["status"].as_str().unwrap_or("?"));
    Ok((data, summary, true))
}

fn classify(point: &str) -> Outcome {
    let s = S6Point::new(parse_point(point, 3)?)?;
    let c = classify_point(&s);
    let summary = format!("{s}: {c}");
    Ok((json!({ "point": s.to_string(), "classification": c.to_string() }), summary, true))
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, data: &Value) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(data).expect("json values serialize");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn search_cmd(
    height: u64,
    shards: usize,
    sieve_mods: Option<Vec<u64>>,
    format: Format,
    common: &Common,
    stdout: &mut dyn Write,
) -> std::result::Result<String, Failure> {
    let mut cfg = SearchConfig::new(height);
    cfg.shards = shards.max(1);
    cfg.sieve_mods = sieve_mods.unwrap_or_else(|| DEFAULT_SIEVE_MODS.to_vec());
    if let Some(&m) = cfg.sieve_mods.iter().find(|&&m| !(2..=64).contains(&m)) {
        return Err(Error::Parse(format!("sieve modulus {m} outside 2..=64")).into());
    }
    let res = search_surface(&cfg)?;
    let mut sink: Box<dyn Write + '_> = match &common.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    };
    match format {
        Format::Json => write_json_lines(&res.records, &mut sink)?,
        Format::Csv => write_csv(&res.records, &mut sink).map_err(|e| Failure::Io(io::Error::other(e)))?,
    }
    sink.flush()?;
    let sporadic = res.records.iter().filter(|r| r.classification == crate::search::Classification::Sporadic).count();
    Ok(format!(
        "height {height}: {} triples, {} sieved out, {} points, {} orbits ({sporadic} sporadic)",
        res.stats.triples, res.stats.sieve_rejected, res.stats.points, res.stats.orbits
    ))
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> std::result::Result<(String, bool), Failure> {
    let (common, outcome) = match cmd {
        Command::Search { height, shards, sieve_mods, format, common } => {
            let summary = search_cmd(height, shards, sieve_mods, format, &common, stdout)?;
            return Ok((summary, true));
        }
        Command::Verify { common } => {
            let o = verify(common.seed);
            (common, o)
        }
        Command::MapFromSurface { point, common } => (common, map_from_surface(&point)),
        Command::MapFromElliptic { n, torsion, slice, common } => {
            let o = elliptic_family_map(n, torsion, slice).map_err(Failure::from).map(|m| {
                let summary = format!("{} -> {}", m.surface_point, m.cycle.map());
                (to_value(&m), summary, true)
            });
            (common, o)
        }
        Command::MapFromFamily { p, common } => {
            let o = parse_rational(&p).and_then(|p| genus0_family(&p)).map_err(Failure::from).map(|m| {
                let summary = format!("p = {p}: {}", m.cycle.map());
                (to_value(&m), summary, true)
            });
            (common, o)
        }
        Command::Orbit { map, start, steps, common } => (common, orbit(&map, &start, steps)),
        Command::Sigma { target, times, common } => (common, sigma(&target, times)),
        Command::Membership { target, common } => (common, membership_cmd(&target)),
        Command::Classify { point, common } => (common, classify(&point)),
        Command::FermatPoints { height, common } => {
            let pts = fermat_curve_points(height);
            let summary = format!("{} point(s) up to height {height}", pts.len());
            (common, Ok((json!({ "height": height, "points": strings(&pts) }), summary, true)))
        }
    };
    let (data, summary, ok) = outcome?;
    emit(&common.out, stdout, &data)?;
    Ok((summary, ok))
}

/// Runs the program on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok((summary, ok)) => {
            let _ = writeln!(stderr, "{summary}");
            if ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Math(e)) => {
            let obj = json!({ "error": e.kind(), "message": e.to_string() });
            let _ = writeln!(stdout, "{obj}");
            let _ = writeln!(stderr, "error: {e}");
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "i/o error: {e}");
            1
        }
    }
}
