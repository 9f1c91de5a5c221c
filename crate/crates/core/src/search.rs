//! Height-bounded search for rational points on S6.
//!
//! Every point with coprime integer coordinates of absolute value at most
//! `H` is found by running over `(X, Y, Z)` in the box and solving
//! `W^2 = F5/F3` in integers. Triples are first screened by tables of the
//! congruence `W^2 F3 = F5 (mod m)`. Points are grouped into orbits of the
//! order-6 automorphism, which preserves height.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::ProjPoint;
use crate::surface::{f3_value, f5_value, s6_membership, sigma6_surface, S6Membership, S6Point};

pub const MAX_HEIGHT: u64 = 10_000_000;
pub const DEFAULT_SIEVE_MODS: [u64; 4] = [5, 7, 9, 11];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classification {
    /// The boundary components containing the point, in catalog order.
    Boundary(Vec<String>),
    CubicCurveC,
    SliceX0,
    SliceY0,
    SliceZ0,
    /// `W = X+Y+Z` (`true`) or `W = -(X+Y+Z)`.
    Hyperplane(bool),
    Sporadic,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Boundary(c) => write!(f, "boundary({})", c.join("+")),
            Classification::CubicCurveC => f.write_str("cubic-curve-C"),
            Classification::SliceX0 => f.write_str("slice-X0"),
            Classification::SliceY0 => f.write_str("slice-Y0"),
            Classification::SliceZ0 => f.write_str("slice-Z0"),
            Classification::Hyperplane(true) => f.write_str("hyperplane-W=+(X+Y+Z)"),
            Classification::Hyperplane(false) => f.write_str("hyperplane-W=-(X+Y+Z)"),
            Classification::Sporadic => f.write_str("sporadic"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// First match in the order boundary, cubic curve, slices, hyperplanes.
pub fn classify_point(p: &S6Point) -> Classification {
    if let S6Membership::Boundary { components } = s6_membership(p) {
        return Classification::Boundary(components);
    }
    let (w, x, y, z) = (p.w(), p.x(), p.y(), p.z());
    let cube = |a: &BigInt| a * a * a;
    if cube(x) + cube(y) + cube(z) == x * x * y + y * y * z + z * z * x {
        return Classification::CubicCurveC;
    }
    use num_traits::Zero;
    if x.is_zero() {
        return Classification::SliceX0;
    }
    if y.is_zero() {
        return Classification::SliceY0;
    }
    if z.is_zero() {
        return Classification::SliceZ0;
    }
    let s = x + y + z;
    if *w == s {
        return Classification::Hyperplane(true);
    }
    if *w == -s {
        return Classification::Hyperplane(false);
    }
    Classification::Sporadic
}

/// Lexicographically smallest canonical point of the orbit.
pub fn orbit_rep(p: &ProjPoint) -> ProjPoint {
    let mut best = p.clone();
    let mut q = p.clone();
    for _ in 0..5 {
        q = sigma6_surface(&q);
        if q < best {
            best = q.clone();
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub point: S6Point,
    pub classification: Classification,
    pub orbit_rep: ProjPoint,
    pub height: u64,
    /// Points of the orbit found within the bound.
    pub orbit_points_found: usize,
}

fn residue(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Whether `W^2 F3 = F5 (mod m)` holds for the residues `[W, X, Y, Z]`.
/// Never false at a point of S6.
pub fn sieve_filter(residues: &[u64; 4], m: u64) -> bool {
    let [w, x, y, z] = residues.map(|r| (r % m) as i128);
    let m = m as i128;
    (w * w * f3_value(x, y, z) - f5_value(x, y, z)).rem_euclid(m) == 0
}

/// The projection of [`sieve_filter`] to `(X, Y, Z)`: some `W` works.
#[derive(Clone, Debug)]
pub struct SieveTable {
    pub modulus: u64,
    table: Vec<bool>,
}

impl SieveTable {
    pub fn new(m: u64) -> Self {
        assert!((2..=64).contains(&m), "sieve modulus {m} out of range");
        let mut table = vec![false; (m * m * m) as usize];
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    table[((x * m + y) * m + z) as usize] = (0..m).any(|w| sieve_filter(&[w, x, y, z], m));
                }
            }
        }
        SieveTable { modulus: m, table }
    }

    pub fn admits(&self, x: i64, y: i64, z: i64) -> bool {
        let m = self.modulus;
        self.table[((residue(x, m) * m + residue(y, m)) * m + residue(z, m)) as usize]
    }

    /// Fraction of residue triples that survive.
    pub fn density(&self) -> f64 {
        self.table.iter().filter(|&&b| b).count() as f64 / self.table.len() as f64
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub height: u64,
    pub shards: usize,
    pub sieve_mods: Vec<u64>,
    /// Optional narrower ranges for `X`, `Y`, `Z` inside the box.
    pub ranges: Option<[RangeInclusive<i64>; 3]>,
}

impl SearchConfig {
    pub fn new(height: u64) -> Self {
        SearchConfig { height, shards: 1, sieve_mods: DEFAULT_SIEVE_MODS.to_vec(), ranges: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub triples: u64,
    pub sieve_rejected: u64,
    pub points: u64,
    pub orbits: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutput {
    pub records: Vec<SearchRecord>,
    pub stats: SearchStats,
}

fn canonical(c: [i64; 4]) -> bool {
    let first_positive = c.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0);
    first_positive && c.iter().fold(0i64, |g, &v| g.gcd(&v)) == 1
}

struct Shard {
    points: Vec<[i64; 4]>,
    triples: u64,
    rejected: u64,
}

fn scan_shard(index: usize, cfg: &SearchConfig, sieves: &[SieveTable]) -> Shard {
    let h = cfg.height as i64;
    let full = -h..=h;
    let [rx, ry, rz] = match &cfg.ranges {
        Some([a, b, c]) => [a, b, c].map(|r| (*r.start()).max(-h)..=(*r.end()).min(h)),
        None => [full.clone(), full.clone(), full],
    };
    let n = cfg.shards.max(1) as i64;
    let mut out = Shard { points: Vec::new(), triples: 0, rejected: 0 };
    for x in rx.filter(|x| x.rem_euclid(n) == index as i64) {
        for y in ry.clone() {
            for z in rz.clone() {
                out.triples += 1;
                if !sieves.iter().all(|s| s.admits(x, y, z)) {
                    out.rejected += 1;
                    continue;
                }
                let (xi, yi, zi) = (x as i128, y as i128, z as i128);
                let f3 = f3_value(xi, yi, zi);
                let f5 = f5_value(xi, yi, zi);
                if f3 == 0 {
                    if f5 == 0 {
                        for w in -h..=h {
                            if canonical([w, x, y, z]) {
                                out.points.push([w, x, y, z]);
                            }
                        }
                    }
                    continue;
                }
                if f5 % f3 != 0 {
                    continue;
                }
                let q = f5 / f3;
                if q < 0 {
                    continue;
                }
                let r = q.sqrt();
                if r * r != q || r > h as i128 {
                    continue;
                }
                let r = r as i64;
                for w in if r == 0 { vec![0] } else { vec![r, -r] } {
                    if canonical([w, x, y, z]) {
                        out.points.push([w, x, y, z]);
                    }
                }
            }
        }
    }
    out
}

/// All points of S6 of height at most `cfg.height`, one record per orbit,
/// sorted by height and orbit representative. The result does not depend
/// on the shard count.
pub fn search_surface(cfg: &SearchConfig) -> Result<SearchOutput> {
    if cfg.height == 0 || cfg.height > MAX_HEIGHT {
        return Err(Error::HeightOutOfRange(cfg.height));
    }
    let sieves: Vec<SieveTable> = cfg.sieve_mods.iter().map(|&m| SieveTable::new(m)).collect();
    let shards = cfg.shards.max(1);
    let parts: Vec<Shard> = (0..shards).into_par_iter().map(|i| scan_shard(i, cfg, &sieves)).collect();
    let mut stats = SearchStats::default();
    let mut orbits: BTreeMap<(u64, ProjPoint), usize> = BTreeMap::new();
    for part in parts {
        stats.triples += part.triples;
        stats.sieve_rejected += part.rejected;
        stats.points += part.points.len() as u64;
        for c in part.points {
            let p = ProjPoint::from_i64s(&c).expect("canonical point");
            let height = c.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
            *orbits.entry((height, orbit_rep(&p))).or_default() += 1;
        }
    }
    let records: Vec<SearchRecord> = orbits
        .into_par_iter()
        .map(|((height, rep), found)| {
            let point = S6Point::new(rep.clone()).expect("search output lies on S6");
            SearchRecord { classification: classify_point(&point), point, orbit_rep: rep, height, orbit_points_found: found }
        })
        .collect();
    stats.orbits = records.len() as u64;
    Ok(SearchOutput { records, stats })
}

pub fn write_json_lines<W: Write>(records: &[SearchRecord], mut out: W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Columns `height, orbit_rep, classification, W, X, Y, Z`.
pub fn write_csv<W: Write>(records: &[SearchRecord], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["height", "orbit_rep", "classification", "W", "X", "Y", "Z"])?;
    for r in records {
        let p = r.point.point();
        let mut row = vec![r.height.to_string(), r.orbit_rep.to_string(), r.classification.to_string()];
        row.extend(p.coords().iter().map(|c| c.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
