//! Affine models of the moduli of quadratic maps with a marked n-cycle,
//! 3 <= n <= 6.
//!
//! Every marked cycle is conjugate to exactly one whose first three points
//! are `[0:1], [1:0], [1:1]`. For n >= 5 the remaining points `[x_i:1]`
//! determine the map; for n = 3 and n = 4 part of the map itself is kept.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::endo::{MarkedCycle, Mobius, QuadMap};
use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, ProjPoint, Rational};

/// A point of one of the affine models.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ModelRepr", into = "ModelRepr")]
pub enum AffineModelPoint {
    /// `[a1:a3:a4]`, the map `[a3 u^2 + a1 uv - (a1 + a3) v^2 : a3 u^2 + a4 uv]`.
    Three(ProjPoint),
    /// `([a1:a2], x)` with fourth point `[1:x]`.
    Four { ratio: ProjPoint, x: Rational },
    /// `(x_1, ..., x_{n-3})` with points `[x_i:1]`, n = 5 or 6.
    Affine { n: usize, coords: Vec<Rational> },
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    n: usize,
    coords: Vec<String>,
}

impl TryFrom<ModelRepr> for AffineModelPoint {
    type Error = Error;
    fn try_from(r: ModelRepr) -> Result<Self> {
        match (r.n, r.coords.as_slice()) {
            (3, [p]) => {
                let p: ProjPoint = p.parse()?;
                p.expect_dim(2)?;
                Ok(AffineModelPoint::Three(p))
            }
            (4, [ratio, x]) => {
                let ratio: ProjPoint = ratio.parse()?;
                ratio.expect_dim(1)?;
                Ok(AffineModelPoint::Four { ratio, x: parse_rational(x)? })
            }
            (5 | 6, cs) if cs.len() == r.n - 3 => Ok(AffineModelPoint::Affine {
                n: r.n,
                coords: cs.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?,
            }),
            _ => Err(Error::InvalidModel(format!("n = {} with {} coordinates", r.n, r.coords.len()))),
        }
    }
}

impl From<AffineModelPoint> for ModelRepr {
    fn from(p: AffineModelPoint) -> Self {
        let n = p.n();
        let coords = match p {
            AffineModelPoint::Three(q) => vec![q.to_string()],
            AffineModelPoint::Four { ratio, x } => vec![ratio.to_string(), x.to_string()],
            AffineModelPoint::Affine { coords, .. } => coords.iter().map(|c| c.to_string()).collect(),
        };
        ModelRepr { n, coords }
    }
}

impl AffineModelPoint {
    pub fn affine(coords: Vec<Rational>) -> Result<Self> {
        match coords.len() {
            2 | 3 => Ok(AffineModelPoint::Affine { n: coords.len() + 3, coords }),
            k => Err(Error::InvalidModel(format!("{k} affine coordinates; expected 2 or 3"))),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AffineModelPoint::Three(_) => 3,
            AffineModelPoint::Four { .. } => 4,
            AffineModelPoint::Affine { n, .. } => *n,
        }
    }

    /// The standard-form marked cycle this point stands for.
    pub fn to_marked_cycle(&self) -> Result<MarkedCycle> {
        let base = standard_points();
        match self {
            AffineModelPoint::Three(p) => {
                let [a1, a3, a4] = [0, 1, 2].map(|i| Rational::from_integer(p.coord(i).clone()));
                let f = QuadMap::from_rationals(&[
                    a3.clone(),
                    a1.clone(),
                    -(&a1 + &a3),
                    a3,
                    a4,
                    Rational::zero(),
                ])?;
                MarkedCycle::new(f, base.to_vec())
            }
            AffineModelPoint::Four { ratio, x } => {
                let f = four_cycle_map(ratio, x)?;
                let mut pts = base.to_vec();
                pts.push(ProjPoint::normalize(&[Rational::one(), x.clone()])?);
                MarkedCycle::new(f, pts)
            }
            AffineModelPoint::Affine { coords, .. } => {
                let f = lemma22_inverse(coords)?;
                let mut pts = base.to_vec();
                pts.extend(coords.iter().map(ProjPoint::from_affine));
                MarkedCycle::new(f, pts)
            }
        }
    }
}

impl fmt::Display for AffineModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineModelPoint::Three(p) => write!(f, "{p}"),
            AffineModelPoint::Four { ratio, x } => write!(f, "({ratio}, {x})"),
            AffineModelPoint::Affine { coords, .. } => {
                let c: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", c.join(", "))
            }
        }
    }
}

fn standard_points() -> [ProjPoint; 3] {
    [[0, 1], [1, 0], [1, 1]].map(|c| ProjPoint::from_i64s(&c).expect("nonzero"))
}

/// Map of the n = 4 model: `f([1:1]) = [1:x]`, `f([1:x]) = [0:1]`.
fn four_cycle_map(ratio: &ProjPoint, x: &Rational) -> Result<QuadMap> {
    let a1 = Rational::from_integer(ratio.coord(0).clone());
    let a2 = Rational::from_integer(ratio.coord(1).clone());
    let x2 = x * x;
    let x3 = &x2 * x;
    let a0 = -(&a1 * x) - &a2 * &x2;
    let a4 = -(&a1 * &x2) - &a2 * &x3 + &a1 * x * Rational::from_integer(2.into()) + &a2 * x + &a2 * &x2;
    QuadMap::from_rationals(&[a0.clone(), a1, a2, a0, a4, Rational::zero()])
}

/// Coefficients `(a0:...:a5)` of the map sending `[0:1] -> [1:0] -> [1:1]
/// -> [x_1:1] -> [x_2:1]` and `[x_k:1] -> [0:1]`, as polynomials in
/// `x_1, x_2, x_k`. No validity checks.
pub fn lemma22_coefficients(x: &[Rational]) -> Result<[Rational; 6]> {
    if x.len() < 2 {
        return Err(Error::Dimension { expected: 2, got: x.len() });
    }
    let (x1, x2, xk) = (&x[0], &x[1], &x[x.len() - 1]);
    let x1s = x1 * x1;
    let xks = xk * xk;
    let a0 = x1 * (x2 * xk + x1 - x2 - xk);
    let a1 = x1 * (&xks - &xks * x2 - x2 * x1 + x2 + x2 * &x1s - &x1s);
    let a2 = x1 * xk * (xk * x2 - x1 * xk + x2 * x1 - x2 - x2 * &x1s + &x1s);
    let a4 = -(x1 * &xks) + &xks + xk * &x1s - xk + x1 * xk + x2 * &x1s - &x1s * xk * x2 + x1
        - &x1s * Rational::from_integer(2.into());
    Ok([a0.clone(), a1, a2, a0, a4, Rational::zero()])
}

/// The map attached to the model coordinates; degenerate solutions are
/// rejected. The intermediate conditions `f([x_i:1]) = [x_{i+1}:1]` for
/// `2 <= i <= k-1` are the caller's concern (see [`membership`]).
pub fn lemma22_inverse(x: &[Rational]) -> Result<QuadMap> {
    let a = lemma22_coefficients(x)?;
    if a.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateMap);
    }
    QuadMap::from_rationals(&a)
}

/// Conjugates the marked map to standard form. Returns the model point
/// and the transformation `g` with `g·p1 = [0:1], g·p2 = [1:0], g·p3 = [1:1]`.
pub fn normalize_marked(mc: &MarkedCycle) -> Result<(AffineModelPoint, Mobius)> {
    let pts = mc.points();
    let n = pts.len();
    if !(3..=6).contains(&n) {
        return Err(Error::InvalidModel(format!("cycle length {n} outside 3..=6")));
    }
    let g = Mobius::standardizer(&pts[0], &pts[1], &pts[2])?;
    let h = mc.map().conjugate(&g);
    let b = h.coeffs();
    let point = match n {
        3 => AffineModelPoint::Three(ProjPoint::from_integers(vec![
            b[1].clone(),
            b[0].clone(),
            b[4].clone(),
        ])?),
        4 => {
            let q = g.apply(&pts[3]);
            let x = Rational::new(q.coord(1).clone(), q.coord(0).clone());
            let ratio = ProjPoint::from_integers(vec![b[1].clone(), b[2].clone()])?;
            AffineModelPoint::Four { ratio, x }
        }
        _ => AffineModelPoint::Affine {
            n,
            coords: pts[3..]
                .iter()
                .map(|p| g.apply(p).affine().expect("distinct from the point sent to infinity"))
                .collect(),
        },
    };
    Ok((point, g))
}

fn checked_div(a: Rational, b: Rational, what: &str) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::BirationalBoundary(what.to_string()));
    }
    Ok(a / b)
}

/// The automorphism shifting the marked cycle by one place, written in
/// model coordinates.
pub fn sigma_action(p: &AffineModelPoint) -> Result<AffineModelPoint> {
    let one = Rational::one();
    match p {
        AffineModelPoint::Three(q) => {
            let [a1, a3, a4] = [0, 1, 2].map(|i| q.coord(i).clone());
            let image = vec![&a3 * 2 + &a4, -(&a3 + &a4), &a4 - &a1];
            Ok(AffineModelPoint::Three(ProjPoint::from_integers(image)?))
        }
        AffineModelPoint::Four { ratio, x } => {
            let a1 = Rational::from_integer(ratio.coord(0).clone());
            let a2 = Rational::from_integer(ratio.coord(1).clone());
            let first = (&a2 - &a2 * x * x - &a1 * x - x * &a2) * x;
            let second = (x - &one) * (&a1 + x * &a2);
            let ratio = ProjPoint::normalize(&[first, second])
                .map_err(|_| Error::BirationalBoundary("ratio [a1:a2] vanishes".into()))?;
            let x = checked_div(x.clone(), x - &one, "x = 1")?;
            Ok(AffineModelPoint::Four { ratio, x })
        }
        AffineModelPoint::Affine { n: 5, coords } => {
            let (x, y) = (&coords[0], &coords[1]);
            Ok(AffineModelPoint::Affine {
                n: 5,
                coords: vec![checked_div(x - &one, y - &one, "y = 1")?, &one - x],
            })
        }
        AffineModelPoint::Affine { n: 6, coords } => {
            let (x, y, z) = (&coords[0], &coords[1], &coords[2]);
            Ok(AffineModelPoint::Affine {
                n: 6,
                coords: vec![
                    checked_div(x - &one, y - &one, "y = 1")?,
                    checked_div(x - &one, z - &one, "z = 1")?,
                    &one - x,
                ],
            })
        }
        AffineModelPoint::Affine { n, .. } => Err(Error::InvalidModel(format!("no model for n = {n}"))),
    }
}

/// Why a coordinate tuple is not a point of the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum OutsideReason {
    WrongLength { expected: usize, got: usize },
    ZeroOrOne { index: usize },
    NotDistinct { first: usize, second: usize },
    ResultantZero,
    /// The map does not send marked point `from` (1-based) to the next one.
    CycleCondition { from: usize },
    PeriodNotMinimal,
}

impl fmt::Display for OutsideReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutsideReason::WrongLength { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            OutsideReason::ZeroOrOne { index } => write!(f, "coordinate {} is 0 or 1", index + 1),
            OutsideReason::NotDistinct { .. } => f.write_str("coords not distinct"),
            OutsideReason::ResultantZero => f.write_str("resultant zero"),
            OutsideReason::CycleCondition { from } => {
                write!(f, "cycle condition fails at marked point {from}")
            }
            OutsideReason::PeriodNotMinimal => f.write_str("period not minimal"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Membership {
    Inside,
    Outside(OutsideReason),
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside)
    }
}

/// Decides whether `coords` is a point of the n = 5 or n = 6 model.
pub fn membership(n: usize, coords: &[Rational]) -> Membership {
    use OutsideReason::*;
    if !(5..=6).contains(&n) || coords.len() != n - 3 {
        return Membership::Outside(WrongLength { expected: n.saturating_sub(3), got: coords.len() });
    }
    let one = Rational::one();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() || *c == one {
            return Membership::Outside(ZeroOrOne { index: i });
        }
    }
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            if coords[i] == coords[j] {
                return Membership::Outside(NotDistinct { first: i, second: j });
            }
        }
    }
    let f = match lemma22_inverse(coords) {
        Ok(f) => f,
        Err(_) => return Membership::Outside(ResultantZero),
    };
    let mut pts = standard_points().to_vec();
    pts.extend(coords.iter().map(ProjPoint::from_affine));
    // conditions 4..n-1 are the closed ones; the rest hold by construction
    // but are checked all the same
    let order = (3..n - 1).chain(0..3).chain([n - 1]);
    for i in order {
        if f.eval(&pts[i]) != pts[(i + 1) % n] {
            return Membership::Outside(CycleCondition { from: i + 1 });
        }
    }
    match MarkedCycle::new(f, pts) {
        Ok(_) => Membership::Inside,
        Err(_) => Membership::Outside(PeriodNotMinimal),
    }
}

/// The n = 3 model is the complement of `a3 (a3 + a4)(a3 + a1)(a1 + a3 - a4) = 0`.
pub fn membership3(p: &ProjPoint) -> bool {
    let [a1, a3, a4] = [0, 1, 2].map(|i| p.coord(i).clone());
    let r = &a3 * (&a3 + &a4) * (&a3 + &a1) * (&a1 + &a3 - &a4);
    !r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn example() -> Vec<Rational> {
        vec![rat(91, 19), rat(49, 13), rat(-98, 19)]
    }

    fn example_map() -> QuadMap {
        QuadMap::from_factored([(19, 98), (133, -441)], [(19, 0), (133, -529)]).unwrap()
    }

    #[test]
    fn inverse_formula_reproduces_example() {
        assert_eq!(lemma22_inverse(&example()).unwrap(), example_map());
    }

    #[test]
    fn degenerate_line_of_the_proof() {
        let t = int(3);
        let one = int(1);
        let x = vec![&one - &t, (&one - &t * int(2)) / (&one - &t), t];
        assert_eq!(lemma22_inverse(&x), Err(Error::DegenerateMap));
        assert_eq!(membership(6, &x), Membership::Outside(OutsideReason::ResultantZero));
    }

    #[test]
    fn membership_examples() {
        assert!(membership(6, &example()).is_inside());
        let m = membership(6, &[rat(1, 2), rat(1, 2), int(3)]);
        assert_eq!(m, Membership::Outside(OutsideReason::NotDistinct { first: 0, second: 1 }));
        assert_eq!(m_reason(&m), "coords not distinct");
        assert!(matches!(
            membership(6, &[int(2), int(0), int(3)]),
            Membership::Outside(OutsideReason::ZeroOrOne { index: 1 })
        ));
        assert!(matches!(
            membership(6, &[int(2), int(3), int(7)]),
            Membership::Outside(OutsideReason::CycleCondition { from: 5 })
        ));
        assert_eq!(membership(6, &[int(2), int(3), int(5)]), Membership::Outside(OutsideReason::ResultantZero));
        assert!(matches!(membership(6, &[int(2)]), Membership::Outside(OutsideReason::WrongLength { .. })));
    }

    fn m_reason(m: &Membership) -> String {
        match m {
            Membership::Outside(r) => r.to_string(),
            Membership::Inside => "inside".into(),
        }
    }

    #[test]
    fn example_normalizes_to_itself() {
        let mc = AffineModelPoint::affine(example()).unwrap().to_marked_cycle().unwrap();
        let (p, g) = normalize_marked(&mc).unwrap();
        assert_eq!(g, Mobius::identity());
        assert_eq!(p, AffineModelPoint::Affine { n: 6, coords: example() });
    }

    #[test]
    fn sigma6_order_and_shift() {
        let p = AffineModelPoint::affine(example()).unwrap();
        let mut q = p.clone();
        for _ in 0..6 {
            q = sigma_action(&q).unwrap();
        }
        assert_eq!(q, p);
        let shifted = p.to_marked_cycle().unwrap().shifted(1);
        assert_eq!(normalize_marked(&shifted).unwrap().0, sigma_action(&p).unwrap());
    }

    #[test]
    fn boundary_of_birational_action() {
        let p = AffineModelPoint::Affine { n: 6, coords: vec![int(2), int(1), int(3)] };
        assert!(matches!(sigma_action(&p), Err(Error::BirationalBoundary(_))));
    }

    #[test]
    fn three_cycle_model() {
        let p = AffineModelPoint::Three(ProjPoint::from_i64s(&[2, 3, -1]).unwrap());
        assert!(membership3(match &p {
            AffineModelPoint::Three(q) => q,
            _ => unreachable!(),
        }));
        let mc = p.to_marked_cycle().unwrap();
        assert_eq!(normalize_marked(&mc).unwrap().0, p);
        let mut q = p.clone();
        for _ in 0..3 {
            q = sigma_action(&q).unwrap();
        }
        assert_eq!(q, p);
    }

    #[test]
    fn json_forms() {
        let p = AffineModelPoint::affine(example()).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":6,"coords":["91/19","49/13","-98/19"]}"#);
        assert_eq!(serde_json::from_str::<AffineModelPoint>(&s).unwrap(), p);
        let four = AffineModelPoint::Four { ratio: ProjPoint::from_i64s(&[2, 3]).unwrap(), x: int(5) };
        let s = serde_json::to_string(&four).unwrap();
        assert_eq!(s, r#"{"n":4,"coords":["[2:3]","5"]}"#);
        assert_eq!(serde_json::from_str::<AffineModelPoint>(&s).unwrap(), four);
        assert!(serde_json::from_str::<AffineModelPoint>(r#"{"n":6,"coords":["1"]}"#).is_err());
    }
}
