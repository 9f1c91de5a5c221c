//! Infinite families of quadratic maps over the rationals with a rational
//! 6-cycle.
//!
//! * the zero locus of `XYZ` on S6: three copies of the elliptic curve
//!   `E : y^2 = x^3 + 4x^2 + 3x + 1`, whose group is generated by the
//!   point `(0,1)` of infinite order and the 3-torsion point `(-1,1)`;
//! * the rational curve over the nodal cubic
//!   `X^3 + Y^3 + Z^3 = X^2 Y + Y^2 Z + Z^2 X`, whose maps also carry a
//!   rational fixed point;
//! * the curve `y^2 z = 4x^3 + z^3`, whose only rational points are the
//!   three listed by [`fermat_curve_points`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::endo::{cycle_to_endomorphism, MarkedCycle, QuadMap};
use crate::error::{Error, Result};
use crate::exactmath::{int, ProjPoint, Rational};
use crate::moduli::{normalize_marked, AffineModelPoint};
use crate::surface::{phi_inverse, point_to_endomorphism, s6_membership, S6Membership, S6Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Curve {
    /// `y^2 = x^3 + 4x^2 + 3x + 1`.
    E,
    /// `y^2 = 4x^3 + 1`, the chart `z = 1` of `y^2 z = 4x^3 + z^3`.
    EPrime,
}

impl Curve {
    /// `(a, b, c, d)` of `y^2 = a x^3 + b x^2 + c x + d`.
    fn coeffs(self) -> [i64; 4] {
        match self {
            Curve::E => [1, 4, 3, 1],
            Curve::EPrime => [4, 0, 0, 1],
        }
    }

    pub fn contains(self, x: &Rational, y: &Rational) -> bool {
        let [a, b, c, d] = self.coeffs().map(int);
        y * y == ((a * x + b) * x + c) * x + d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ECPoint {
    curve: Curve,
    /// `None` is the point at infinity.
    affine: Option<(Rational, Rational)>,
}

impl ECPoint {
    pub fn new(curve: Curve, x: Rational, y: Rational) -> Result<Self> {
        if !curve.contains(&x, &y) {
            return Err(Error::InvalidModel(format!("({x}, {y}) is not on {curve:?}")));
        }
        Ok(ECPoint { curve, affine: Some((x, y)) })
    }

    pub fn infinity(curve: Curve) -> Self {
        ECPoint { curve, affine: None }
    }

    pub fn curve(&self) -> Curve {
        self.curve
    }

    pub fn coords(&self) -> Option<(&Rational, &Rational)> {
        self.affine.as_ref().map(|(x, y)| (x, y))
    }

    pub fn is_infinity(&self) -> bool {
        self.affine.is_none()
    }

    pub fn neg(&self) -> Self {
        ECPoint { curve: self.curve, affine: self.affine.as_ref().map(|(x, y)| (x.clone(), -y)) }
    }

    /// `n P` by repeated addition.
    pub fn multiple(&self, n: i64) -> Self {
        let base = if n < 0 { self.neg() } else { self.clone() };
        let mut acc = ECPoint::infinity(self.curve);
        for _ in 0..n.unsigned_abs() {
            acc = ec_add(&acc, &base).expect("same curve");
        }
        acc
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.affine {
            Some((x, y)) => write!(f, "({x}, {y})"),
            None => f.write_str("O"),
        }
    }
}

/// Chord-tangent addition on `y^2 = a x^3 + b x^2 + c x + d`.
pub fn ec_add(p: &ECPoint, q: &ECPoint) -> Result<ECPoint> {
    if p.curve != q.curve {
        return Err(Error::InvalidModel("points on different curves".into()));
    }
    let curve = p.curve;
    let (Some((x1, y1)), Some((x2, y2))) = (&p.affine, &q.affine) else {
        return Ok(if p.is_infinity() { q.clone() } else { p.clone() });
    };
    let [a, b, c, _] = curve.coeffs().map(int);
    let slope = if x1 != x2 {
        (y2 - y1) / (x2 - x1)
    } else if y1 == y2 && !y1.is_zero() {
        (int(3) * &a * x1 * x1 + int(2) * &b * x1 + &c) / (int(2) * y1)
    } else {
        return Ok(ECPoint::infinity(curve));
    };
    let x3 = (&slope * &slope - &b) / &a - x1 - x2;
    let y3 = -(&slope * (&x3 - x1) + y1);
    Ok(ECPoint { curve, affine: Some((x3, y3)) })
}

/// `(0, 1)` on E, of infinite order.
pub fn generator() -> ECPoint {
    ECPoint::new(Curve::E, int(0), int(1)).expect("on E")
}

/// `(-1, 1)` on E, of order 3.
pub fn torsion_point() -> ECPoint {
    ECPoint::new(Curve::E, int(-1), int(1)).expect("on E")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Slice {
    #[serde(rename = "Z0")]
    Z0,
    #[serde(rename = "X0")]
    X0,
    #[serde(rename = "Y0")]
    Y0,
}

impl Slice {
    pub const ALL: [Slice; 3] = [Slice::Z0, Slice::X0, Slice::Y0];
}

impl std::str::FromStr for Slice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z0" | "z0" | "Z=0" => Ok(Slice::Z0),
            "X0" | "x0" | "X=0" => Ok(Slice::X0),
            "Y0" | "y0" | "Y=0" => Ok(Slice::Y0),
            _ => Err(Error::Parse(format!("unknown slice {s:?}; expected Z0, X0 or Y0"))),
        }
    }
}

/// `[W:X:Y:Z] -> [W:Y:Z:X]`, the fourth power of sigma6.
fn rotate(p: &ProjPoint) -> ProjPoint {
    let c = p.coords();
    ProjPoint::from_integers(vec![c[0].clone(), c[2].clone(), c[3].clone(), c[1].clone()]).expect("nonzero")
}

/// The point of S6 attached to an affine point of E: `(x, y) ->
/// [1/y : 1/x : 1 : 0]` on the slice `Z = 0`, moved to the other slices
/// by the coordinate rotation.
pub fn elliptic_to_surface(p: &ECPoint, slice: Slice) -> Result<ProjPoint> {
    let (x, y) = p
        .coords()
        .ok_or_else(|| Error::ExcludedParameter("the point at infinity".into()))?;
    if x.is_zero() || y.is_zero() {
        return Err(Error::ExcludedParameter(format!("{p} has a zero coordinate")));
    }
    let one = Rational::one();
    let z0 = ProjPoint::normalize(&[&one / y, &one / x, one.clone(), Rational::zero()])?;
    Ok(match slice {
        Slice::Z0 => z0,
        Slice::Y0 => rotate(&z0),
        Slice::X0 => rotate(&rotate(&z0)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum Provenance {
    #[serde(rename = "elliptic")]
    Elliptic { slice: Slice, n: i64, torsion: u8 },
    #[serde(rename = "genus0")]
    Genus0 { p: String },
}

/// A map produced by one of the families, with the data it came from.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyMember {
    pub provenance: Provenance,
    pub surface_point: S6Point,
    pub model_point: AffineModelPoint,
    #[serde(flatten)]
    pub cycle: MarkedCycle,
}

fn member_from_surface(provenance: Provenance, p: ProjPoint) -> Result<FamilyMember> {
    let s = S6Point::new(p)?;
    if let S6Membership::Boundary { components } = s6_membership(&s) {
        return Err(Error::ExcludedParameter(format!("{s} lies on {}", components.join(", "))));
    }
    let cycle = point_to_endomorphism(&s)?;
    let model_point = AffineModelPoint::affine(phi_inverse(s.point())?.to_vec())?;
    Ok(FamilyMember { provenance, surface_point: s, model_point, cycle })
}

/// The map attached to `n (0,1) + torsion (-1,1)` on E, read on the
/// given slice.
pub fn elliptic_family_map(n: i64, torsion: u8, slice: Slice) -> Result<FamilyMember> {
    let pt = ec_add(&generator().multiple(n), &torsion_point().multiple(i64::from(torsion % 3)))?;
    let p = elliptic_to_surface(&pt, slice)
        .map_err(|e| Error::ExcludedParameter(format!("n = {n}, torsion = {torsion}: {e}")))?;
    member_from_surface(Provenance::Elliptic { slice, n, torsion: torsion % 3 }, p)
}

/// `c(m) = [-m^3+2m^2-3m+1 : m^3-m+1 : m^3-2m^2+m-1]`, unnormalized.
fn cubic_param_raw(m: &Rational) -> [Rational; 3] {
    let m2 = m * m;
    let m3 = &m2 * m;
    let one = Rational::one();
    let two = int(2);
    [
        -&m3 + &two * &m2 - int(3) * m + &one,
        &m3 - m + &one,
        &m3 - &two * &m2 + m - &one,
    ]
}

/// A point of the nodal cubic `X^3+Y^3+Z^3 = X^2Y+Y^2Z+Z^2X`.
pub fn cubic_curve_param(m: &Rational) -> ProjPoint {
    ProjPoint::normalize(&cubic_param_raw(m)).expect("the three cubics have no common root")
}

/// The point of S6 over `c(m)` with `m = (2p+1)/(1-p^2)`: there
/// `F5/F3 = (m^2-m+1)^3 = j^6` with `j = (p^2+p+1)/(1-p^2)`, so `W = j^3`.
pub fn curve_c_point(p: &Rational) -> Result<ProjPoint> {
    let one = Rational::one();
    let den = &one - p * p;
    if den.is_zero() {
        return Err(Error::ExcludedParameter(format!("p = {p} is a pole of the conic parametrization")));
    }
    let m = (int(2) * p + &one) / &den;
    let j = (p * p + p + &one) / &den;
    let [x, y, z] = cubic_param_raw(&m);
    ProjPoint::normalize(&[&j * &j * &j, x, y, z])
}

/// The six displayed cycle points of the genus-0 family, `[u:v]` pairs.
fn genus0_raw(p: &Rational) -> [[Rational; 2]; 6] {
    let one = Rational::one();
    let (p2, p3) = (p * p, p * p * p);
    let two = int(2);
    let q1 = &p3 + int(5) * &p2 + &two * p + &one; // p^3+5p^2+2p+1
    let q2 = &p3 + &p2 + &one; // p^3+p^2+1
    let q3 = &p3 - &p2 - &two * p - &one; // p^3-p^2-2p-1
    let q4 = &p3 + &p2 + int(4) * p + int(3); // p^3+p^2+4p+3
    let tp1 = &two * p + &one;
    let (pp1, pm1, pp2) = (p + &one, p - &one, p + &two);
    [
        [one.clone(), Rational::zero()],
        [q1, &tp1 * &q2],
        [Rational::zero(), one.clone()],
        [&pp2 * q3, &two * &pm1 * &pp1 * &pp1 * &tp1],
        [one.clone(), one.clone()],
        [&two * &pp2 * &tp1, &pp1 * q4],
    ]
}

/// `lambda_1 .. lambda_4` as displayed; `None` where a denominator vanishes.
pub fn genus0_lambdas(p: &Rational) -> Option<[Rational; 4]> {
    let one = Rational::one();
    let two = int(2);
    let (p2, p3) = (p * p, p * p * p);
    let q1 = &p3 + int(5) * &p2 + &two * p + &one;
    let q2 = &p3 + &p2 + &one;
    let q3 = &p3 - &p2 - &two * p - &one;
    let q4 = &p3 + &p2 + int(4) * p + int(3);
    let tp1 = &two * p + &one;
    let pp1 = p + &one;
    let pp2 = p + &two;
    let dens = [
        &tp1 * &q2,
        &q1 * &q4 * &pp1 * &pp1,
        &pp1 * &q4,
        &tp1 * &tp1 * &q2 * &q2,
    ];
    if dens.iter().any(Zero::is_zero) {
        return None;
    }
    let nums = [
        q1.clone(),
        &pp2 * &pp2 * &q3 * &q3,
        &two * &pp2 * &tp1,
        (&p2 - &one) * &q1 * &q3,
    ];
    let mut out = nums.into_iter().zip(dens).map(|(n, d)| n / d);
    Some([0; 4].map(|_| out.next().unwrap()))
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaChecks {
    /// `lambda_1` is the affine value of `x_2`.
    pub lambda1_is_x2: bool,
    /// `lambda_3` is the affine value of `x_6`.
    pub lambda3_is_x6: bool,
    /// `lambda_1, lambda_2` are the roots of the first form and
    /// `lambda_3, lambda_4` those of the second.
    pub roots_match: bool,
}

impl LambdaChecks {
    pub fn all(&self) -> bool {
        self.lambda1_is_x2 && self.lambda3_is_x6 && self.roots_match
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Genus0Member {
    pub provenance: Provenance,
    #[serde(flatten)]
    pub cycle: MarkedCycle,
    pub fixed_point: ProjPoint,
    pub lambdas: [String; 4],
    pub lambda_checks: LambdaChecks,
}

fn form_vanishes(f: &QuadMap, which: usize, root: &Rational) -> bool {
    let c = f.coeffs();
    let [a, b, d] = [&c[3 * which], &c[3 * which + 1], &c[3 * which + 2]].map(|k| Rational::from_integer(k.clone()));
    (a * root * root + b * root + d).is_zero()
}

/// The family over the rational curve on the nodal cubic. Parameters
/// where a point degenerates, two of `x_0..x_6` coincide, or no map
/// realizes the cycle are rejected.
pub fn genus0_family(p: &Rational) -> Result<Genus0Member> {
    let excluded = |why: String| Error::ExcludedParameter(format!("p = {p}: {why}"));
    let mut points = Vec::with_capacity(7);
    for (i, c) in genus0_raw(p).iter().enumerate() {
        points.push(ProjPoint::normalize(c).map_err(|_| excluded(format!("x{} has both coordinates zero", i + 1)))?);
    }
    let fixed = ProjPoint::normalize(&[Rational::one(), p + Rational::one()]).expect("first coordinate is 1");
    // x_0 is compared last so that collisions inside the cycle are named
    for (i, j) in (1..7).flat_map(|i| (i + 1..7).map(move |j| (i, j))).chain((1..7).map(|j| (0, j))) {
        let a = if i == 0 { &fixed } else { &points[i - 1] };
        if *a == points[j - 1] {
            return Err(excluded(format!("x{i} = x{j} = {a}")));
        }
    }
    let cycle = cycle_to_endomorphism(&points).map_err(|e| excluded(e.to_string()))?;
    if cycle.map().eval(&fixed) != fixed {
        return Err(excluded(format!("{fixed} is not fixed")));
    }
    let lambdas = genus0_lambdas(p).ok_or_else(|| excluded("a lambda has a zero denominator".into()))?;
    let f = cycle.map();
    let lambda_checks = LambdaChecks {
        lambda1_is_x2: points[1].affine().as_ref() == Some(&lambdas[0]),
        lambda3_is_x6: points[5].affine().as_ref() == Some(&lambdas[2]),
        roots_match: form_vanishes(f, 0, &lambdas[0])
            && form_vanishes(f, 0, &lambdas[1])
            && form_vanishes(f, 1, &lambdas[2])
            && form_vanishes(f, 1, &lambdas[3]),
    };
    Ok(Genus0Member {
        provenance: Provenance::Genus0 { p: p.to_string() },
        cycle,
        fixed_point: fixed,
        lambdas: lambdas.map(|l| l.to_string()),
        lambda_checks,
    })
}

/// The model point of a genus-0 member, with the cycle started at `x_1`.
pub fn genus0_model_point(m: &Genus0Member) -> Result<AffineModelPoint> {
    Ok(normalize_marked(&m.cycle)?.0)
}

/// Which leading constants make
/// `[A (u - l1 v)(u - l2 v) : B (u - l3 v)(u - l4 v)]` realize the cycle.
#[derive(Clone, Debug, Serialize)]
pub struct PrefactorReport {
    pub samples: Vec<String>,
    /// `(A, B, consistent at every sample)`.
    pub candidates: Vec<(String, String, bool)>,
}

const PREFACTORS: [(&str, &str); 4] = [
    ("(2p+1)(p^3+p^2+1)", "p^5+5p^2+2p+1"),
    ("(2p+1)(p^3+p^2+1)", "p^3+5p^2+2p+1"),
    ("p^5+5p^2+2p+1", "(2p+1)(p^3+p^2+1)"),
    ("p^3+5p^2+2p+1", "(2p+1)(p^3+p^2+1)"),
];

fn prefactor_value(name: &str, p: &Rational) -> Rational {
    let one = Rational::one();
    let (p2, p3) = (p * p, p * p * p);
    match name {
        "(2p+1)(p^3+p^2+1)" => (int(2) * p + &one) * (&p3 + &p2 + &one),
        "p^5+5p^2+2p+1" => &p3 * &p2 + int(5) * &p2 + int(2) * p + &one,
        "p^3+5p^2+2p+1" => &p3 + int(5) * &p2 + int(2) * p + &one,
        _ => unreachable!("unknown prefactor"),
    }
}

/// Tests the displayed product form of the family map against the cycle
/// for each pairing of the printed leading constants.
pub fn genus0_prefactor_report(samples: &[Rational]) -> PrefactorReport {
    let candidates = PREFACTORS
        .iter()
        .map(|(a, b)| {
            let ok = samples.iter().all(|p| {
                let (Some(l), Ok(m)) = (genus0_lambdas(p), genus0_family(p)) else { return false };
                let (ka, kb) = (prefactor_value(a, p), prefactor_value(b, p));
                let coeffs = [
                    ka.clone(),
                    -(&ka * (&l[0] + &l[1])),
                    &ka * &l[0] * &l[1],
                    kb.clone(),
                    -(&kb * (&l[2] + &l[3])),
                    &kb * &l[2] * &l[3],
                ];
                let Ok(f) = QuadMap::from_rationals(&coeffs) else { return false };
                let pts = m.cycle.points();
                (0..6).all(|i| f.eval(&pts[i]) == pts[(i + 1) % 6])
            });
            (a.to_string(), b.to_string(), ok)
        })
        .collect();
    PrefactorReport { samples: samples.iter().map(|p| p.to_string()).collect(), candidates }
}

/// Every canonical integer point of `y^2 z = 4x^3 + z^3` with coordinates
/// bounded by `height` in absolute value.
pub fn fermat_curve_points(height: u32) -> Vec<ProjPoint> {
    let h = i64::from(height);
    let mut out = Vec::new();
    for x in -h..=h {
        for y in -h..=h {
            for z in -h..=h {
                let first = [x, y, z].into_iter().find(|&c| c != 0);
                if first.is_none_or(|c| c < 0) || x.gcd(&y).gcd(&z) != 1 {
                    continue;
                }
                let (x, y, z) = (BigInt::from(x), BigInt::from(y), BigInt::from(z));
                if &y * &y * &z == BigInt::from(4) * &x * &x * &x + &z * &z * &z {
                    out.push(ProjPoint::from_integers(vec![x, y, z]).expect("nonzero"));
                }
            }
        }
    }
    out
}

/// Admitted genus-0 parameters `a/b` with `|a|, b <= bound`, in order of
/// increasing height.
pub fn small_rationals(bound: i64) -> Vec<Rational> {
    let mut out: Vec<(i64, Rational)> = Vec::new();
    for b in 1..=bound.max(1) {
        for a in -bound..=bound {
            if a.gcd(&b) == 1 {
                out.push((a.abs().max(b), Rational::new(a.into(), b.into())));
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::surface::on_surface;

    #[test]
    fn doubling_and_tripling() {
        let g = generator();
        let two = ec_add(&g, &g).unwrap();
        assert_eq!(two, ECPoint::new(Curve::E, rat(-7, 4), rat(13, 8)).unwrap());
        let three = ec_add(&two, &g).unwrap();
        assert_eq!(three.to_string(), "(-104/49, -603/343)");
        assert_eq!(g.multiple(3), three);
        let t = torsion_point();
        assert!(ec_add(&ec_add(&t, &t).unwrap(), &t).unwrap().is_infinity());
        assert!(!t.multiple(2).is_infinity());
    }

    #[test]
    fn duplication_x_coordinate() {
        let g = generator();
        for k in 1..5 {
            let p = g.multiple(k);
            let (x, _) = p.coords().unwrap();
            let x2 = x * x;
            let expected = (&x2 * &x2 - int(6) * &x2 - int(8) * x - int(7))
                / (int(4) * &x2 * x + int(16) * &x2 + int(12) * x + int(4));
            assert_eq!(p.multiple(2).coords().unwrap().0, &expected);
        }
    }

    #[test]
    fn group_law_on_the_other_curve() {
        let p = ECPoint::new(Curve::EPrime, int(0), int(1)).unwrap();
        assert!(p.multiple(3).is_infinity());
        assert!(ECPoint::new(Curve::EPrime, int(1), int(1)).is_err());
        assert!(ec_add(&p, &generator()).is_err());
    }

    #[test]
    fn example_from_second_multiple() {
        let m = elliptic_family_map(2, 0, Slice::Z0).unwrap();
        assert_eq!(m.surface_point.to_string(), "[56:-52:91:0]");
        assert_eq!(m.model_point.to_string(), "(91/19, 49/13, -98/19)");
        assert_eq!(
            m.cycle.map(),
            &QuadMap::from_factored([(19, 98), (133, -441)], [(19, 0), (133, -529)]).unwrap()
        );
    }

    #[test]
    fn small_multiples_are_excluded() {
        for n in [0, 1, -1] {
            assert!(matches!(elliptic_family_map(n, 0, Slice::Z0), Err(Error::ExcludedParameter(_))));
        }
    }

    #[test]
    fn slices_are_rotations() {
        for s in Slice::ALL {
            let m = elliptic_family_map(3, 0, s).unwrap();
            assert!(on_surface(m.surface_point.point()));
            let zero = match s {
                Slice::Z0 => 3,
                Slice::X0 => 1,
                Slice::Y0 => 2,
            };
            assert!(m.surface_point.point().coord(zero).is_zero());
        }
    }

    #[test]
    fn genus0_at_two() {
        let m = genus0_family(&int(2)).unwrap();
        let shown: Vec<String> = m.cycle.points().iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["[1:0]", "[33:65]", "[0:1]", "[2:-45]", "[1:1]", "[40:69]"]);
        assert_eq!(m.fixed_point.to_string(), "[1:3]");
        assert!(m.lambda_checks.all());
        assert_eq!(m.cycle.map().orbit(&m.fixed_point, 4).points.len(), 1);
    }

    #[test]
    fn genus0_excludes_zero() {
        let e = genus0_family(&int(0)).unwrap_err();
        // x2 = [1:1] collides with x4 and x5
        assert!(e.to_string().contains("x2 = x4 = [1:1]"), "{e}");
        assert!(genus0_family(&int(1)).is_err());
        assert!(genus0_family(&int(-1)).is_err());
    }

    #[test]
    fn prefactors_only_work_swapped() {
        let r = genus0_prefactor_report(&[int(2), int(3), rat(1, 2)]);
        let ok: Vec<_> = r.candidates.iter().filter(|c| c.2).collect();
        assert_eq!(ok.len(), 1);
        assert_eq!((ok[0].0.as_str(), ok[0].1.as_str()), ("p^3+5p^2+2p+1", "(2p+1)(p^3+p^2+1)"));
    }

    #[test]
    fn fermat_points() {
        let expected: Vec<ProjPoint> =
            ["[0:1:0]", "[0:1:1]", "[0:-1:1]"].iter().map(|s| s.parse().unwrap()).collect();
        for h in [1, 10] {
            let mut got = fermat_curve_points(h);
            got.sort();
            let mut e = expected.clone();
            e.sort();
            assert_eq!(got, e);
        }
    }

    #[test]
    fn cubic_parametrization() {
        assert_eq!(cubic_curve_param(&int(0)).to_string(), "[1:1:-1]");
        assert_eq!(cubic_curve_param(&int(1)).to_string(), "[1:-1:1]");
        for p in small_rationals(4) {
            if let Ok(q) = curve_c_point(&p) {
                assert!(on_surface(&q), "p = {p}");
            }
        }
    }

    #[test]
    fn rationals_enumeration() {
        let r = small_rationals(2);
        assert_eq!(r[..3], [int(-1), int(0), int(1)]);
        assert!(r.contains(&rat(-1, 2)));
        assert!(r.contains(&int(2)));
        assert_eq!(r.len(), 7);
    }
}
