//! Quadratic endomorphisms of the projective line.
//!
//! A map is stored as the canonical integer 6-tuple `(a0:...:a5)` of
//! `[u:v] -> [a0 u^2 + a1 uv + a2 v^2 : a3 u^2 + a4 uv + a5 v^2]`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{ProjPoint, Rational};

/// Homogeneous resultant of `a0 u^2 + a1 uv + a2 v^2` and
/// `a3 u^2 + a4 uv + a5 v^2`.
pub fn resultant<T>(a: &[T; 6]) -> T
where
    T: Clone
        + std::ops::Add<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Mul<Output = T>,
{
    let [a0, a1, a2, a3, a4, a5] = a.clone();
    let two = |t: T| t.clone() + t;
    a2.clone() * a2.clone() * a3.clone() * a3.clone()
        + a0.clone() * a0.clone() * a5.clone() * a5.clone()
        - two(a3.clone() * a2.clone() * a0.clone() * a5.clone())
        - a1.clone() * a2.clone() * a3.clone() * a4.clone()
        - a4.clone() * a1.clone() * a0.clone() * a5.clone()
        + a0.clone() * a4.clone() * a4.clone() * a2.clone()
        + a1.clone() * a1 * a3 * a5
}

/// Binary quadratic form `c0 u^2 + c1 uv + c2 v^2` after the substitution
/// `u -> p u + q v`, `v -> r u + s v`.
fn substitute(c: [&BigInt; 3], p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) -> [BigInt; 3] {
    let [c0, c1, c2] = c;
    [
        c0 * p * p + c1 * p * r + c2 * r * r,
        c0 * 2 * p * q + c1 * (p * s + q * r) + c2 * 2 * r * s,
        c0 * q * q + c1 * q * s + c2 * s * s,
    ]
}

/// An element of PGL2 acting by `[u:v] -> [a u + b v : c u + d v]`,
/// stored canonically (coprime entries, first nonzero positive).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mobius {
    m: [BigInt; 4],
}

impl Mobius {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::SingularMobius);
        }
        let p = ProjPoint::from_integers(vec![a, b, c, d])?;
        let m = [0, 1, 2, 3].map(|i| p.coord(i).clone());
        Ok(Mobius { m })
    }

    pub fn from_rationals(entries: &[Rational; 4]) -> Result<Self> {
        let p = ProjPoint::normalize(entries)?;
        let [a, b, c, d] = [0, 1, 2, 3].map(|i| p.coord(i).clone());
        Self::new(a, b, c, d)
    }

    pub fn from_i64s(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Mobius { m: [1, 0, 0, 1].map(BigInt::from) }
    }

    /// The unique transformation sending `p1, p2, p3` to `[0:1], [1:0], [1:1]`.
    pub fn standardizer(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> Result<Self> {
        if p1 == p2 || p1 == p3 || p2 == p3 {
            return Err(Error::RepeatedPoint);
        }
        let (u1, v1) = (p1.coord(0), p1.coord(1));
        let (u2, v2) = (p2.coord(0), p2.coord(1));
        let (u3, v3) = (p3.coord(0), p3.coord(1));
        // l1 vanishes at p1, l2 at p2
        let l1_at_3 = v1 * u3 - u1 * v3;
        let l2_at_3 = v2 * u3 - u2 * v3;
        Self::new(
            &l2_at_3 * v1,
            -(&l2_at_3 * u1),
            &l1_at_3 * v2,
            -(&l1_at_3 * u2),
        )
    }

    pub fn entries(&self) -> &[BigInt; 4] {
        &self.m
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = &self.m;
        let (u, v) = (p.coord(0), p.coord(1));
        ProjPoint::from_integers(vec![a * u + b * v, c * u + d * v])
            .expect("invertible map sends nonzero vectors to nonzero vectors")
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m.clone();
        Self::new(d, -b, -c, a).expect("adjugate of an invertible matrix")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Self::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of invertible matrices")
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// A degree-2 endomorphism of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadMapRepr", into = "QuadMapRepr")]
pub struct QuadMap {
    coeffs: [BigInt; 6],
}

#[derive(Serialize, Deserialize)]
struct QuadMapRepr {
    coeffs: Vec<String>,
}

impl TryFrom<QuadMapRepr> for QuadMap {
    type Error = Error;
    fn try_from(r: QuadMapRepr) -> Result<Self> {
        let ints = r
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        QuadMap::from_integers(ints)
    }
}

impl From<QuadMap> for QuadMapRepr {
    fn from(f: QuadMap) -> Self {
        QuadMapRepr { coeffs: f.coeffs.iter().map(|c| c.to_string()).collect() }
    }
}

impl QuadMap {
    pub fn from_integers(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != 6 {
            return Err(Error::Dimension { expected: 6, got: coeffs.len() });
        }
        let p = ProjPoint::from_integers(coeffs)?;
        Self::from_canonical(p)
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Result<Self> {
        if coeffs.len() != 6 {
            return Err(Error::Dimension { expected: 6, got: coeffs.len() });
        }
        Self::from_canonical(ProjPoint::normalize(coeffs)?)
    }

    pub fn from_i64s(coeffs: &[i64; 6]) -> Result<Self> {
        Self::from_integers(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn from_canonical(p: ProjPoint) -> Result<Self> {
        let coeffs = [0, 1, 2, 3, 4, 5].map(|i| p.coord(i).clone());
        if resultant(&coeffs).is_zero() {
            return Err(Error::DegenerateMap);
        }
        Ok(QuadMap { coeffs })
    }

    /// Map with numerator and denominator given as products of linear
    /// forms `(p0 u + q0 v)(p1 u + q1 v) : (r0 u + s0 v)(r1 u + s1 v)`.
    pub fn from_factored(num: [(i64, i64); 2], den: [(i64, i64); 2]) -> Result<Self> {
        let expand = |[(p0, q0), (p1, q1)]: [(i64, i64); 2]| [p0 * p1, p0 * q1 + q0 * p1, q0 * q1];
        let n = expand(num);
        let d = expand(den);
        Self::from_i64s(&[n[0], n[1], n[2], d[0], d[1], d[2]])
    }

    pub fn coeffs(&self) -> &[BigInt; 6] {
        &self.coeffs
    }

    pub fn resultant(&self) -> BigInt {
        resultant(&self.coeffs)
    }

    pub fn eval(&self, p: &ProjPoint) -> ProjPoint {
        let (u, v) = (p.coord(0), p.coord(1));
        let a = &self.coeffs;
        let (uu, uv, vv) = (u * u, u * v, v * v);
        let x = &a[0] * &uu + &a[1] * &uv + &a[2] * &vv;
        let y = &a[3] * &uu + &a[4] * &uv + &a[5] * &vv;
        ProjPoint::from_integers(vec![x, y]).expect("nonzero resultant: forms have no common zero")
    }

    pub fn iterate(&self, p: &ProjPoint, times: usize) -> ProjPoint {
        (0..times).fold(p.clone(), |q, _| self.eval(&q))
    }

    /// `g ∘ f ∘ g^-1`.
    pub fn conjugate(&self, g: &Mobius) -> QuadMap {
        let [ga, gb, gc, gd] = g.entries();
        let [ia, ib, ic, id] = g.inverse().m;
        let a = &self.coeffs;
        let num = substitute([&a[0], &a[1], &a[2]], &ia, &ib, &ic, &id);
        let den = substitute([&a[3], &a[4], &a[5]], &ia, &ib, &ic, &id);
        let out: Vec<BigInt> = (0..3)
            .map(|i| ga * &num[i] + gb * &den[i])
            .chain((0..3).map(|i| gc * &num[i] + gd * &den[i]))
            .collect();
        QuadMap::from_integers(out).expect("conjugation preserves nondegeneracy")
    }

    pub fn orbit(&self, start: &ProjPoint, max_steps: usize) -> Orbit {
        let mut seen: HashMap<ProjPoint, usize> = HashMap::new();
        let mut points = Vec::new();
        let mut cur = start.clone();
        for step in 0..=max_steps {
            if let Some(&first) = seen.get(&cur) {
                return Orbit {
                    points,
                    tail: OrbitTail::Cycle { preperiod: first, period: step - first },
                };
            }
            seen.insert(cur.clone(), step);
            points.push(cur.clone());
            if step < max_steps {
                cur = self.eval(&cur);
            }
        }
        Orbit { points, tail: OrbitTail::Open }
    }
}

impl fmt::Display for QuadMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", c.join(":"))
    }
}

impl FromStr for QuadMap {
    type Err = Error;
    /// `[a0:a1:a2:a3:a4:a5]`, rational entries allowed.
    fn from_str(s: &str) -> Result<Self> {
        let p: ProjPoint = s.parse()?;
        if p.dim() != 5 {
            return Err(Error::Dimension { expected: 6, got: p.dim() + 1 });
        }
        Self::from_canonical(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrbitTail {
    Cycle { preperiod: usize, period: usize },
    Open,
}

/// Exact forward orbit. `points` are pairwise distinct; when `tail` is a
/// cycle, the next iterate equals `points[preperiod]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<ProjPoint>,
    pub tail: OrbitTail,
}

/// A quadratic map with an ordered cycle of pairwise distinct points of
/// exact period `points.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MarkedCycleRepr", into = "MarkedCycleRepr")]
pub struct MarkedCycle {
    map: QuadMap,
    points: Vec<ProjPoint>,
}

#[derive(Serialize, Deserialize)]
struct MarkedCycleRepr {
    map: QuadMap,
    cycle: Vec<String>,
}

impl TryFrom<MarkedCycleRepr> for MarkedCycle {
    type Error = Error;
    fn try_from(r: MarkedCycleRepr) -> Result<Self> {
        let pts = r.cycle.iter().map(|s| s.parse()).collect::<Result<Vec<ProjPoint>>>()?;
        MarkedCycle::new(r.map, pts)
    }
}

impl From<MarkedCycle> for MarkedCycleRepr {
    fn from(m: MarkedCycle) -> Self {
        MarkedCycleRepr { map: m.map, cycle: m.points.iter().map(|p| p.to_string()).collect() }
    }
}

fn proper_divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..n).filter(move |d| n.is_multiple_of(*d))
}

impl MarkedCycle {
    pub fn new(map: QuadMap, points: Vec<ProjPoint>) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::Dimension { expected: 1, got: 0 });
        }
        for p in &points {
            p.expect_dim(1)?;
        }
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(Error::RepeatedPoint);
                }
            }
        }
        for i in 0..n {
            if map.eval(&points[i]) != points[(i + 1) % n] {
                return Err(Error::NoRealizingMap(format!(
                    "map does not send point {} to point {}",
                    i + 1,
                    (i + 1) % n + 1
                )));
            }
        }
        if proper_divisors(n).any(|d| map.iterate(&points[0], d) == points[0]) {
            return Err(Error::ProperPeriod(n));
        }
        Ok(MarkedCycle { map, points })
    }

    pub fn map(&self) -> &QuadMap {
        &self.map
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same map with the cycle started `k` places later.
    pub fn shifted(&self, k: usize) -> Self {
        let mut points = self.points.clone();
        let len = points.len();
        points.rotate_left(k % len);
        MarkedCycle { map: self.map.clone(), points }
    }

    pub fn conjugate(&self, g: &Mobius) -> Self {
        MarkedCycle {
            map: self.map.conjugate(g),
            points: self.points.iter().map(|p| g.apply(p)).collect(),
        }
    }
}

/// The quadratic map realizing the given 6-cycle, if there is one.
///
/// The first three points are moved to `[0:1], [1:0], [1:1]`, the
/// remaining coordinates are fed to the closed-form inverse of the
/// affine model, and the result is conjugated back.
pub fn cycle_to_endomorphism(points: &[ProjPoint]) -> Result<MarkedCycle> {
    if points.len() != 6 {
        return Err(Error::Dimension { expected: 6, got: points.len() });
    }
    for p in points {
        p.expect_dim(1)?;
    }
    for i in 0..6 {
        for j in i + 1..6 {
            if points[i] == points[j] {
                return Err(Error::RepeatedPoint);
            }
        }
    }
    let g = Mobius::standardizer(&points[0], &points[1], &points[2])?;
    let xs: Vec<Rational> = points[3..]
        .iter()
        .map(|p| g.apply(p).affine().expect("only the second point goes to infinity"))
        .collect();
    let f0 = crate::moduli::lemma22_inverse(&xs).map_err(|e| match e {
        Error::DegenerateMap => Error::NoRealizingMap("the coefficient solution is degenerate".into()),
        other => other,
    })?;
    let f = f0.conjugate(&g.inverse());
    MarkedCycle::new(f, points.to_vec())
}
