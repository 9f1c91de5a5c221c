//! Catalog of the polynomial identities behind the surface model, each
//! checked by full expansion or, for the quotient pipeline, by exact
//! evaluation at seeded sample points.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{boundary_catalog, boundary_product, gamma, on_surface, sigma6_surface, sporadic_points, VARS};
use crate::exactmath::{int, MultiPoly, ProjPoint, Rational};
use crate::families::curve_c_point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityStatus {
    Verified,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Method {
    Expansion,
    /// Composition with the rational parametrization of every boundary
    /// component.
    Parametrization { components: usize },
    Sampling { points: usize },
}

/// One checked identity `lhs = rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityRecord {
    pub name: String,
    pub label: String,
    #[serde(serialize_with = "as_string")]
    pub lhs: MultiPoly,
    #[serde(serialize_with = "as_string")]
    pub rhs: MultiPoly,
    pub method: Method,
    pub status: IdentityStatus,
    /// For a failure, a point where the two sides differ.
    pub witness: Option<String>,
}

fn as_string<S: serde::Serializer>(p: &MultiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl IdentityRecord {
    pub fn verified(&self) -> bool {
        self.status == IdentityStatus::Verified
    }
}

fn parse(expr: &str, vars: &[&str]) -> MultiPoly {
    MultiPoly::parse(expr, vars).expect("catalog expression")
}

/// Small integer point where `p` is nonzero.
fn find_witness(p: &MultiPoly) -> String {
    let n = p.variables().len();
    let mut v = vec![-3i64; n];
    loop {
        let vals: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
        if !p.eval(&vals).expect("full assignment").is_zero() {
            let parts: Vec<String> =
                p.variables().iter().zip(&v).map(|(name, x)| format!("{name}={x}")).collect();
            return parts.join(", ");
        }
        let Some(i) = v.iter().position(|&x| x < 3) else {
            return "no small witness".into();
        };
        v[i] += 1;
        for x in &mut v[..i] {
            *x = -3;
        }
    }
}

/// Checks `lhs = rhs` by expansion.
pub fn verify_identity(name: &str, label: &str, lhs: MultiPoly, rhs: MultiPoly) -> IdentityRecord {
    let diff = &lhs - &rhs;
    let (status, witness) = if diff.is_zero() {
        (IdentityStatus::Verified, None)
    } else {
        (IdentityStatus::Failed, Some(find_witness(&diff)))
    };
    IdentityRecord {
        name: name.into(),
        label: label.into(),
        lhs,
        rhs,
        method: Method::Expansion,
        status,
        witness,
    }
}

/// `product` vanishes identically on each of the 23 boundary components.
pub fn verify_boundary_product(product: &MultiPoly) -> IdentityRecord {
    let cat = boundary_catalog();
    let mut witness = None;
    for c in cat {
        let restricted = product.compose(c.parametrization()).expect("four substitutes");
        if !restricted.is_zero() {
            let p = c
                .sample_points(10)
                .into_iter()
                .find(|p| !product.eval(&p.to_rationals()).expect("four values").is_zero());
            witness = Some(match p {
                Some(p) => format!("{} at {p}", c.name),
                None => c.name.to_string(),
            });
            break;
        }
    }
    IdentityRecord {
        name: "a".into(),
        label: "boundary product vanishes on the 9 lines and 14 conics".into(),
        lhs: product.clone(),
        rhs: MultiPoly::zero(&VARS),
        method: Method::Parametrization { components: cat.len() },
        status: if witness.is_none() { IdentityStatus::Verified } else { IdentityStatus::Failed },
        witness,
    }
}

fn sub(p: &MultiPoly, var: &str, expr: &str) -> MultiPoly {
    p.compose_named(&[(var, parse(expr, &VARS))]).expect("substitution")
}

fn slice(name: &str, var: &str, expr: &str, rhs: &str) -> IdentityRecord {
    verify_identity(name, &format!("Gamma restricted to {var} = {expr}"), sub(gamma(), var, expr), parse(rhs, &VARS))
}

fn cubic_param_records() -> Vec<IdentityRecord> {
    let m = ["m"];
    let c = [
        parse("-m^3 + 2*m^2 - 3*m + 1", &m),
        parse("m^3 - m + 1", &m),
        parse("m^3 - 2*m^2 + m - 1", &m),
    ];
    let with_w: Vec<MultiPoly> = std::iter::once(MultiPoly::zero(&m)).chain(c.iter().cloned()).collect();
    let cubic = parse("X^3 + Y^3 + Z^3 - X^2*Y - Y^2*Z - Z^2*X", &VARS);
    vec![
        verify_identity("f1", "c(m) lies on the cubic curve", cubic.compose(&with_w).unwrap(), MultiPoly::zero(&m)),
        verify_identity(
            "f2",
            "F3 o c = -32 (m^2-m)^3",
            super::f3().compose(&with_w).unwrap(),
            parse("-32*(m^2-m)^3", &m),
        ),
        verify_identity(
            "f3",
            "F5 o c = -32 (m^2-m)^3 (m^2-m+1)^3",
            super::f5().compose(&with_w).unwrap(),
            parse("-32*(m^2-m)^3*(m^2-m+1)^3", &m),
        ),
    ]
}

fn invariant_records() -> Vec<IdentityRecord> {
    let v = ["x1", "x2"];
    let inv = [
        parse("x2^2 + x1*x2 + x1^2", &v),
        parse("x1*x2^2 + x1^2*x2", &v),
        parse("x1^3 - x2^3 - 3*x1*x2^2", &v),
    ];
    let rel = parse("v1^3 - 9*v2^2 - 3*v2*v3 - v3^2", &["v1", "v2", "v3"]);
    let mut out = vec![verify_identity(
        "h1",
        "v1^3 = 9 v2^2 + 3 v2 v3 + v3^2",
        rel.compose(&inv).unwrap(),
        MultiPoly::zero(&v),
    )];
    let mu = [parse("x2", &v), parse("-x1 - x2", &v)];
    for (i, p) in inv.iter().enumerate() {
        out.push(verify_identity(
            &format!("h{}", i + 2),
            &format!("v{} invariant under (x1,x2) -> (x2,-x1-x2)", i + 1),
            p.compose(&mu).unwrap(),
            p.clone(),
        ));
    }
    out
}

const QUOTIENT_Q: &str = "x0^3*(32 - 2*v1) + 3*v3*x0^2 - 6*v1*x0 - 12*v2 + v3 - v1*(v3 - 3*v2)";
const F3_TILDE: &str = "(Z + 2*X)*(16*X^2 - 8*X*Z + Z^2 - 27*Y^2 - 9*Y*Z) - 108*Y^3";
const F5_TILDE: &str = "X^2*(9*Y^2 + 3*Y*Z + Z^2)*(2*X - 3*Z) - (3*Y - Z)*(9*Y^2 + 3*Y*Z + Z^2)^2";

/// The quotient quintic `W^2 F3~ - F5~`.
pub fn quotient_quintic() -> MultiPoly {
    &(&parse("W^2", &VARS) * &parse(F3_TILDE, &VARS)) - &parse(F5_TILDE, &VARS)
}

/// `Q(x0, v1(x1,x2), v2, v3)` with `x0 = X+Y+Z, x1 = X-Y, x2 = Y-Z` is
/// `27 Gamma(1, X, Y, Z)`.
fn quotient_equation_record() -> IdentityRecord {
    let q = parse(QUOTIENT_Q, &["x0", "v1", "v2", "v3"]);
    let lin = [parse("X + Y + Z", &VARS), parse("X - Y", &VARS), parse("Y - Z", &VARS)];
    let inv = [
        parse("x2^2 + x1*x2 + x1^2", &["x1", "x2"]),
        parse("x1*x2^2 + x1^2*x2", &["x1", "x2"]),
        parse("x1^3 - x2^3 - 3*x1*x2^2", &["x1", "x2"]),
    ];
    let v: Vec<MultiPoly> = inv.iter().map(|p| p.compose(&lin[1..]).unwrap()).collect();
    let lhs = q.compose(&[lin[0].clone(), v[0].clone(), v[1].clone(), v[2].clone()]).unwrap();
    let rhs = sub(gamma(), "W", "1").scale(&int(27));
    verify_identity("i1", "the S6 equation in the invariants x0, v1, v2, v3", lhs, rhs)
}

/// The map `(x0, v) -> [v1 : v1 x0 : v2 : v3]` carries `Q = 0` into the
/// quotient quintic: its pullback is `v1^5 Q`.
fn quotient_pullback_record() -> IdentityRecord {
    let vars = ["x0", "x1", "x2"];
    let v1 = parse("x2^2 + x1*x2 + x1^2", &vars);
    let v2 = parse("x1*x2^2 + x1^2*x2", &vars);
    let v3 = parse("x1^3 - x2^3 - 3*x1*x2^2", &vars);
    let x0 = parse("x0", &vars);
    let lhs = quotient_quintic().compose(&[v1.clone(), &v1 * &x0, v2.clone(), v3.clone()]).unwrap();
    let q = parse(QUOTIENT_Q, &["x0", "v1", "v2", "v3"]).compose(&[x0, v1.clone(), v2, v3]).unwrap();
    verify_identity("i3", "pullback of the quotient quintic is v1^5 Q", lhs, &v1.pow(5) * &q)
}

/// Exact surface points used by the sampled check: random points on every
/// boundary component, random points of the rational curve over the cubic,
/// the two large points and their orbits.
pub fn sample_surface_points(seed: u64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for c in boundary_catalog() {
        let (s, t) = (rng.gen_range(-40i64..=40), rng.gen_range(1i64..=40));
        if let Some(p) = c.point_at(s, t) {
            out.push(p);
        }
    }
    for _ in 0..8 {
        let p = Rational::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=30).into());
        if let Ok(q) = curve_c_point(&p) {
            out.push(q);
        }
    }
    for s in sporadic_points() {
        let mut q = s.point().clone();
        for _ in 0..6 {
            out.push(q.clone());
            q = sigma6_surface(&q);
        }
    }
    out
}

/// The substitution pipeline at a point with `W != 0`; `None` where it is
/// undefined (`W = 0` or the image in P^3 vanishes).
pub fn quotient_image(p: &ProjPoint) -> Option<ProjPoint> {
    let [w, x, y, z] = [0, 1, 2, 3].map(|i| Rational::from_integer(p.coord(i).clone()));
    if w.is_zero() {
        return None;
    }
    let x0 = (&x + &y + &z) / &w;
    let x1 = (&x - &y) / &w;
    let x2 = (&y - &z) / &w;
    let v1 = &x2 * &x2 + &x1 * &x2 + &x1 * &x1;
    let v2 = &x1 * &x2 * &x2 + &x1 * &x1 * &x2;
    let v3 = &x1 * &x1 * &x1 - &x2 * &x2 * &x2 - int(3) * &x1 * &x2 * &x2;
    ProjPoint::normalize(&[v1.clone(), &v1 * &x0, v2, v3]).ok()
}

fn quotient_sampling_record(seed: u64) -> IdentityRecord {
    let quintic = quotient_quintic();
    let mut used = 0;
    let mut witness = None;
    for p in sample_surface_points(seed) {
        if !on_surface(&p) {
            witness = Some(format!("sample {p} is not on S6"));
            break;
        }
        let Some(img) = quotient_image(&p) else { continue };
        used += 1;
        if !quintic.eval(&img.to_rationals()).expect("four values").is_zero() {
            witness = Some(format!("{p} maps to {img}"));
            break;
        }
    }
    if witness.is_none() && used < 20 {
        witness = Some(format!("only {used} usable sample points"));
    }
    IdentityRecord {
        name: "i2".into(),
        label: "S6 maps into the quotient quintic W^2 F3~ = F5~".into(),
        lhs: quotient_quintic(),
        rhs: MultiPoly::zero(&VARS),
        method: Method::Sampling { points: used },
        status: if witness.is_none() { IdentityStatus::Verified } else { IdentityStatus::Failed },
        witness,
    }
}

type Builder = fn(u64) -> Vec<IdentityRecord>;

const CATALOG: [Builder; 10] = [
    |_| vec![verify_boundary_product(&boundary_product())],
    |_| vec![slice("b", "W", "X", "(X+Z)*(Y+X)^2*(X^2+X*Y+3*X*Z-Y*Z)")],
    |_| {
        vec![
            slice("c1", "W", "-Y", "(X+Y)*(Y+Z)^2*(3*X*Y+Y^2-X*Z+Y*Z)"),
            slice("c2", "X", "-Y", "(-W+Y)*(W+Y)*(Y-Z)*(Y+Z)^2"),
            slice("c3", "Z", "X", "(X+Y)*(W*(Y+3*X)+X*(X-Y))*(W*(Y+3*X)-X*(X-Y))"),
        ]
    },
    |_| {
        let g = gamma();
        let l1 = parse("(W*(X+Y+2*Z)+X*Y-Z^2)*(-W*(X+Y+2*Z)+X*Y-Z^2)*(X+Y)", &VARS);
        let l2 = parse("(W*(X+Y+2*Z)+Z*(Y-X))*(-W*(X+Y+2*Z)+Z*(Y-X))*(X+Y)", &VARS);
        vec![
            verify_identity("d1", "first resultant factor", &l1 + g, parse("(Y-Z)*(Y+Z)*(X-Z)*(W^2+X*Y+Y*Z+X*Z)", &VARS)),
            verify_identity("d2", "second resultant factor", &l2 + g, parse("(Y-Z)*(Y+Z)*(X-Z)*(W-X)*(W+X)", &VARS)),
        ]
    },
    |_| vec![slice("e", "W", "X+Y+Z", "(X^2+Y^2+Z^2+3*(X*Y+X*Z+Y*Z))*((X+Y+Z)^3-X^2*Y-Y^2*Z-X*Z^2)")],
    |_| cubic_param_records(),
    |_| {
        let p = ["p"];
        vec![verify_identity(
            "g",
            "(j, m) = ((p^2+p+1)/(1-p^2), (2p+1)/(1-p^2)) satisfies j^2 = m^2 - m + 1",
            parse("(p^2+p+1)^2", &p),
            parse("(2*p+1)^2 - (2*p+1)*(1-p^2) + (1-p^2)^2", &p),
        )]
    },
    |_| invariant_records(),
    |seed| vec![quotient_equation_record(), quotient_sampling_record(seed), quotient_pullback_record()],
    |_| vec![slice("j", "Z", "0", "W^2*(X^3+3*X^2*Y+4*X*Y^2+Y^3)-Y^2*X^3")],
];

/// All records in catalog order. Groups run in parallel; the sampled
/// record draws its points from `seed`.
pub fn verify_identities(seed: u64) -> Vec<IdentityRecord> {
    CATALOG.par_iter().map(|b| b(seed)).collect::<Vec<_>>().into_iter().flatten().collect()
}

/// Which printed form of the shift on P^3 satisfies `phi o tau = A o phi`.
#[derive(Clone, Debug, Serialize)]
pub struct Sigma6Selection {
    pub candidates: Vec<(String, bool)>,
    pub selected: Option<String>,
}

/// Symbolic check of `phi(tau(x,y,z))` against `A(phi(x,y,z))` through
/// the 2x2 minors, for both printed forms of `A`.
pub fn sigma6_selection() -> Sigma6Selection {
    let v = ["x", "y", "z"];
    let h = ["x", "y", "z", "t"];
    let phi_h = [
        parse("-y*t + z*t - y*z + x*y", &h),
        parse("-y*t - z*t + y*z + 2*x*t - x*y", &h),
        parse("y*t - z*t - y*z + x*y", &h),
        parse("y*t + z*t - x*y - y*z", &h),
    ];
    // tau = ((x-1)/(y-1), (x-1)/(z-1), 1-x) over the denominator (y-1)(z-1)
    let tau_h = [
        parse("(x-1)*(z-1)", &v),
        parse("(x-1)*(y-1)", &v),
        parse("(1-x)*(y-1)*(z-1)", &v),
        parse("(y-1)*(z-1)", &v),
    ];
    let ident = [parse("x", &v), parse("y", &v), parse("z", &v), parse("1", &v)];
    let lhs: Vec<MultiPoly> = phi_h.iter().map(|p| p.compose(&tau_h).unwrap()).collect();
    let base: Vec<MultiPoly> = phi_h.iter().map(|p| p.compose(&ident).unwrap()).collect();
    let forms: [(&str, [usize; 4]); 2] = [("[-W:Y:Z:X]", [0, 2, 3, 1]), ("[-W:Z:X:Y]", [0, 3, 1, 2])];
    let candidates: Vec<(String, bool)> = forms
        .iter()
        .map(|(name, idx)| {
            let rhs: Vec<MultiPoly> =
                idx.iter().enumerate().map(|(k, &i)| if k == 0 { -&base[i] } else { base[i].clone() }).collect();
            let ok = (0..4).all(|i| (i + 1..4).all(|j| (&(&lhs[i] * &rhs[j]) - &(&lhs[j] * &rhs[i])).is_zero()));
            (name.to_string(), ok)
        })
        .collect();
    let selected = candidates.iter().find(|c| c.1).map(|c| c.0.clone());
    Sigma6Selection { candidates, selected }
}
