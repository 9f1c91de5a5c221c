//! The quintic surface `S6 : W^2 F3(X,Y,Z) = F5(X,Y,Z)` in P^3.
//!
//! The open subset of S6 off 9 lines and 14 conics is isomorphic to the
//! affine model of marked 6-cycles via `phi`. This module holds the
//! equation, the two birational maps, the order-6 automorphism, the
//! boundary test and the conversion from surface points to maps.

mod boundary;
mod identities;

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::endo::{MarkedCycle, Mobius, QuadMap};
use crate::error::{Error, Result};
use crate::exactmath::{MultiPoly, ProjPoint, Rational};

pub use boundary::{
    boundary_catalog, boundary_product, sigma6_permutation, BoundaryComponent, ComponentKind,
    PermutationReport,
};
pub use identities::{
    quotient_image, quotient_quintic, sample_surface_points, sigma6_selection, verify_boundary_product,
    verify_identities, verify_identity, IdentityRecord, IdentityStatus, Method, Sigma6Selection,
};

/// Variable order of every polynomial on P^3 in this module.
pub const VARS: [&str; 4] = ["W", "X", "Y", "Z"];

pub fn f3_value<T>(x: T, y: T, z: T) -> T
where
    T: Clone + From<i32> + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let s = x.clone() + y.clone() + z.clone();
    let xy = x.clone() * y.clone();
    s.clone() * s.clone() * s
        + x.clone() * x.clone() * z.clone()
        + xy.clone() * y.clone()
        + y * z.clone() * z.clone()
        + T::from(2) * xy * z
}

pub fn f5_value<T>(x: T, y: T, z: T) -> T
where
    T: Clone + From<i32> + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let (x2, y2, z2) = (x.clone() * x.clone(), y.clone() * y.clone(), z.clone() * z.clone());
    let (xy, yz, xz) = (x.clone() * y.clone(), y.clone() * z.clone(), x.clone() * z.clone());
    z2.clone() * z.clone() * x2.clone() + x2 * x.clone() * y2.clone() + y2 * y.clone() * z2
        - xy.clone() * z * (yz + xy + xz)
}

struct Polys {
    f3: MultiPoly,
    f5: MultiPoly,
    gamma: MultiPoly,
}

fn polys() -> &'static Polys {
    static P: OnceLock<Polys> = OnceLock::new();
    P.get_or_init(|| {
        let f3 = MultiPoly::parse("(X+Y+Z)^3 + (X^2*Z + X*Y^2 + Y*Z^2) + 2*X*Y*Z", &VARS).expect("F3");
        let f5 = MultiPoly::parse("(Z^3*X^2 + X^3*Y^2 + Y^3*Z^2) - X*Y*Z*(Y*Z + X*Y + X*Z)", &VARS)
            .expect("F5");
        let w2 = MultiPoly::parse("W^2", &VARS).expect("W^2");
        let gamma = &(&w2 * &f3) - &f5;
        Polys { f3, f5, gamma }
    })
}

/// `F3` as a polynomial in `W, X, Y, Z` (free of `W`).
pub fn f3() -> &'static MultiPoly {
    &polys().f3
}

pub fn f5() -> &'static MultiPoly {
    &polys().f5
}

/// `Gamma = W^2 F3 - F5`, the defining polynomial of S6.
pub fn gamma() -> &'static MultiPoly {
    &polys().gamma
}

fn wxyz(p: &ProjPoint) -> Result<[BigInt; 4]> {
    p.expect_dim(3)?;
    Ok([0, 1, 2, 3].map(|i| p.coord(i).clone()))
}

/// `W^2 F3 - F5` at the canonical integer coordinates of `p`.
pub fn defect(p: &ProjPoint) -> Result<BigInt> {
    let [w, x, y, z] = wxyz(p)?;
    Ok(&w * &w * f3_value(x.clone(), y.clone(), z.clone()) - f5_value(x, y, z))
}

pub fn on_surface(p: &ProjPoint) -> bool {
    defect(p).is_ok_and(|d| d.is_zero())
}

/// A point of P^3 known to lie on S6.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ProjPoint", into = "ProjPoint")]
pub struct S6Point(ProjPoint);

impl S6Point {
    pub fn new(p: ProjPoint) -> Result<Self> {
        if defect(&p)?.is_zero() {
            Ok(S6Point(p))
        } else {
            Err(Error::NotOnSurface)
        }
    }

    pub fn from_i64s(c: [i64; 4]) -> Result<Self> {
        Self::new(ProjPoint::from_i64s(&c)?)
    }

    pub fn point(&self) -> &ProjPoint {
        &self.0
    }

    pub fn into_point(self) -> ProjPoint {
        self.0
    }

    pub fn w(&self) -> &BigInt {
        self.0.coord(0)
    }

    pub fn x(&self) -> &BigInt {
        self.0.coord(1)
    }

    pub fn y(&self) -> &BigInt {
        self.0.coord(2)
    }

    pub fn z(&self) -> &BigInt {
        self.0.coord(3)
    }

    /// The image under the order-6 automorphism; stays on S6.
    pub fn sigma6(&self) -> S6Point {
        S6Point(sigma6_surface(&self.0))
    }
}

impl TryFrom<ProjPoint> for S6Point {
    type Error = Error;
    fn try_from(p: ProjPoint) -> Result<Self> {
        Self::new(p)
    }
}

impl From<S6Point> for ProjPoint {
    fn from(p: S6Point) -> ProjPoint {
        p.0
    }
}

impl fmt::Display for S6Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for S6Point {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

/// `phi(x, y, z)`, the birational map from the affine model to P^3.
pub fn phi(a: &[Rational]) -> Result<ProjPoint> {
    let [x, y, z] = match a {
        [x, y, z] => [x, y, z],
        _ => return Err(Error::Dimension { expected: 3, got: a.len() }),
    };
    let two = Rational::from_integer(2.into());
    let yz = y * z;
    let xy = x * y;
    let c = [
        -y + z - &yz + &xy,
        -y - z + &yz + &two * x - &xy,
        y - z - &yz + &xy,
        y + z - &xy - &yz,
    ];
    ProjPoint::normalize(&c).map_err(|_| Error::OutsideChart(format!("phi vanishes at ({x}, {y}, {z})")))
}

fn rationals(p: &ProjPoint) -> Result<[Rational; 4]> {
    let c = wxyz(p)?;
    Ok(c.map(Rational::from_integer))
}

/// `W^2 + XY + YZ + XZ`.
fn d_value(w: &BigInt, x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
    w * w + x * y + y * z + x * z
}

/// The inverse of [`phi`]. Fails where `W^2+XY+YZ+XZ` or `X+Y` vanishes.
pub fn phi_inverse(p: &ProjPoint) -> Result<[Rational; 3]> {
    let [w, x, y, z] = wxyz(p)?;
    let d = d_value(&w, &x, &y, &z);
    if d.is_zero() {
        return Err(Error::BoundaryPoint("W^2+XY+YZ+XZ = 0".into()));
    }
    if (&x + &y).is_zero() {
        return Err(Error::BoundaryPoint("X+Y = 0".into()));
    }
    let wy = &w + &y;
    Ok([
        Rational::new((&x + &z) * &wy, d.clone()),
        Rational::new(wy.clone(), &x + &y),
        Rational::new((&w + &z) * &wy, d),
    ])
}

/// `[W:X:Y:Z] -> [-W:Y:Z:X]`, the surface form of the cycle shift.
pub fn sigma6_surface(p: &ProjPoint) -> ProjPoint {
    let c = p.coords();
    assert_eq!(c.len(), 4, "sigma6 acts on P^3");
    ProjPoint::from_integers(vec![-&c[0], c[2].clone(), c[3].clone(), c[1].clone()]).expect("nonzero")
}

/// `[W:X:Y:Z] -> [-W:Z:X:Y]`, the other printed candidate. It is the
/// inverse of [`sigma6_surface`].
pub fn sigma6_alternative(p: &ProjPoint) -> ProjPoint {
    let c = p.coords();
    assert_eq!(c.len(), 4, "sigma6 acts on P^3");
    ProjPoint::from_integers(vec![-&c[0], c[3].clone(), c[1].clone(), c[2].clone()]).expect("nonzero")
}

/// Where a surface point sits relative to the open subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum S6Membership {
    Inside,
    /// Components are listed in catalog order; intersections list several.
    Boundary { components: Vec<String> },
}

impl S6Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, S6Membership::Inside)
    }
}

/// Inside iff `W^2+XY+YZ+XZ != 0` and `W^2, X^2, Y^2, Z^2` are pairwise
/// distinct.
pub fn s6_membership(p: &S6Point) -> S6Membership {
    let [w, x, y, z] = wxyz(p.point()).expect("S6Point has four coordinates");
    let squares = [&w * &w, &x * &x, &y * &y, &z * &z];
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| squares[i] != squares[j]));
    if distinct && !d_value(&w, &x, &y, &z).is_zero() {
        return S6Membership::Inside;
    }
    let components = boundary_catalog()
        .iter()
        .filter(|c| c.contains(p.point()))
        .map(|c| c.name.to_string())
        .collect();
    S6Membership::Boundary { components }
}

fn boundary_error(m: &S6Membership) -> Error {
    match m {
        S6Membership::Boundary { components } => Error::BoundaryPoint(if components.is_empty() {
            "outside the open subset".into()
        } else {
            format!("on {}", components.join(", "))
        }),
        S6Membership::Inside => unreachable!(),
    }
}

/// The coefficients `a0..a5` attached to an inside point, `a0 = a3 = 1`.
pub fn point_coefficients(p: &S6Point) -> Result<[Rational; 6]> {
    let m = s6_membership(p);
    if !m.is_inside() {
        return Err(boundary_error(&m));
    }
    let [w, x, y, z] = rationals(p.point())?;
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let d = &w * &w + &x * &y + &x * &z + &y * &z;
    let xmz = &x - &z;
    let a1 = (&w - &x) * (&w * (&x + &y + &two * &z) + &z * (&y - &x)) / (&d * &xmz) - &one;
    let a2 = (&w + &y) * (&w + &z) * (&x - &w) * (&w * (&x + &y + &two * &z) + &x * &y - &z * &z)
        / (&d * &d * &xmz);
    let a4 = (&y + &z) * (&w - &z) * (&x - &w) * (&w * (&two * &x + &y + &z) + &y * &z - &x * &x)
        / (&d * (&x + &z) * (&y + &w) * &xmz)
        - &one;
    Ok([one.clone(), a1, a2, one, a4, Rational::zero()])
}

/// The marked 6-cycle of an inside point.
pub fn point_to_endomorphism(p: &S6Point) -> Result<MarkedCycle> {
    let a = point_coefficients(p)?;
    let map = QuadMap::from_rationals(&a)?;
    let [w, x, y, z] = wxyz(p.point())?;
    let d = d_value(&w, &x, &y, &z);
    let wy = &w + &y;
    let mut points = vec![
        ProjPoint::from_i64s(&[0, 1])?,
        ProjPoint::infinity(),
        ProjPoint::from_i64s(&[1, 1])?,
    ];
    points.push(ProjPoint::from_integers(vec![(&x + &z) * &wy, d.clone()])?);
    points.push(ProjPoint::from_integers(vec![wy.clone(), &x + &y])?);
    points.push(ProjPoint::from_integers(vec![(&w + &z) * &wy, d])?);
    MarkedCycle::new(map, points)
}

/// Moves the cycle of [`point_to_endomorphism`] to `[1:0], [W+Y:W-X],
/// [0:1], [Z-W:X+Z], [1:1], [Y+Z:W+Z]`: `[u:v] -> [(W+Y)(u-v) : (W-X)u]`.
pub fn change_order(p: &S6Point) -> Result<Mobius> {
    let [w, x, y, _] = wxyz(p.point())?;
    let wy = &w + &y;
    Mobius::new(wy.clone(), -wy, &w - &x, BigInt::zero())
}

/// The transformation `[u:v] -> [(W+X)u - (W+Y)v : (W-X)u]` in the form it
/// is usually quoted. It does not send the cycle to [`change_order_targets`].
pub fn change_order_as_printed(p: &S6Point) -> Result<Mobius> {
    let [w, x, y, _] = wxyz(p.point())?;
    Mobius::new(&w + &x, -(&w + &y), &w - &x, BigInt::zero())
}

pub fn change_order_targets(p: &S6Point) -> Result<Vec<ProjPoint>> {
    let [w, x, y, z] = wxyz(p.point())?;
    [
        vec![BigInt::one(), BigInt::zero()],
        vec![&w + &y, &w - &x],
        vec![BigInt::zero(), BigInt::one()],
        vec![&z - &w, &x + &z],
        vec![BigInt::one(), BigInt::one()],
        vec![&y + &z, &w + &z],
    ]
    .into_iter()
    .map(ProjPoint::from_integers)
    .collect()
}

/// The two large points of S6 quoted with their coordinates listed as
/// `[X:Y:Z:W]`.
pub const SPORADIC_AS_PRINTED: [[i64; 4]; 2] =
    [[-46572, 20403, 35913, 16685], [-75523, 54607, 72443, 62257]];

/// `[X:Y:Z:W] -> [W:X:Y:Z]`.
pub fn xyzw_to_wxyz(c: [i64; 4]) -> [i64; 4] {
    [c[3], c[0], c[1], c[2]]
}

pub fn sporadic_points() -> [S6Point; 2] {
    SPORADIC_AS_PRINTED.map(|c| S6Point::from_i64s(xyzw_to_wxyz(c)).expect("sporadic point on S6"))
}

/// One entry of [`singular_points_check`].
#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub on_surface: bool,
    pub gradient_zero: bool,
    pub hessian_zero: bool,
    pub inside: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularReport {
    pub points: Vec<SingularPoint>,
    /// A smooth control point and whether its gradient is nonzero.
    pub control: ProjPoint,
    pub control_gradient_nonzero: bool,
    pub failures: Vec<String>,
}

impl SingularReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const SINGULAR_POINTS: [[i64; 4]; 11] = [
    [1, 0, 0, 0],
    [0, 1, 1, 1],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, -1, 1, 1],
    [-1, 1, -1, 1],
    [-1, 1, 1, -1],
    [1, -1, 1, 1],
    [1, 1, -1, 1],
    [1, 1, 1, -1],
];

fn vanish_all(ps: &[MultiPoly], at: &[Rational]) -> bool {
    ps.iter().all(|q| q.eval(at).expect("four values").is_zero())
}

/// Gradient and Hessian of `Gamma` at the 11 singular points; only
/// `[1:0:0:0]` is a triple point and none of them is inside.
pub fn singular_points_check() -> SingularReport {
    let g = gamma();
    let grad: Vec<MultiPoly> = (0..4).map(|i| g.derivative(i)).collect();
    let hess: Vec<MultiPoly> = (0..4)
        .flat_map(|i| (i..4).map(move |j| (i, j)))
        .map(|(i, j)| grad[i].derivative(j))
        .collect();
    let mut failures = Vec::new();
    let points: Vec<SingularPoint> = SINGULAR_POINTS
        .iter()
        .map(|c| {
            let p = ProjPoint::from_i64s(c).expect("nonzero");
            let v = p.to_rationals();
            let on = on_surface(&p);
            let inside = S6Point::new(p.clone()).is_ok_and(|s| s6_membership(&s).is_inside());
            let sp = SingularPoint {
                gradient_zero: vanish_all(&grad, &v),
                hessian_zero: vanish_all(&hess, &v),
                on_surface: on,
                inside,
                point: p,
            };
            let triple = *c == [1, 0, 0, 0];
            if !sp.on_surface {
                failures.push(format!("{} is not on S6", sp.point));
            }
            if !sp.gradient_zero {
                failures.push(format!("gradient nonzero at {}", sp.point));
            }
            if sp.hessian_zero != triple {
                failures.push(format!("Hessian at {} is {}", sp.point, if sp.hessian_zero { "zero" } else { "nonzero" }));
            }
            if sp.inside {
                failures.push(format!("{} is inside the open subset", sp.point));
            }
            sp
        })
        .collect();
    let control = sporadic_points()[0].point().clone();
    let control_gradient_nonzero = !vanish_all(&grad, &control.to_rationals());
    if !control_gradient_nonzero {
        failures.push(format!("gradient vanishes at the control point {control}"));
    }
    SingularReport { points, control, control_gradient_nonzero, failures }
}
