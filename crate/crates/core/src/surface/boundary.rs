//! The 9 lines and 14 conics making up the complement of the open subset.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{sigma6_surface, VARS};
use crate::error::{Error, Result};
use crate::exactmath::{MultiPoly, ProjPoint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Line,
    Conic,
}

/// A boundary curve cut out by two equations: two linear forms for a
/// line, a linear form and a quadric for a conic.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryComponent {
    pub name: &'static str,
    pub kind: ComponentKind,
    #[serde(serialize_with = "poly_strings")]
    pub equations: [MultiPoly; 2],
    /// Homogeneous parametrization by `[s:t]`, degree 1 or 2.
    #[serde(skip)]
    param: [MultiPoly; 4],
}

fn poly_strings<S: serde::Serializer>(eqs: &[MultiPoly; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    for e in eqs {
        seq.serialize_element(&e.to_string())?;
    }
    seq.end()
}

const TABLE: [(&str, &str, &str); 23] = [
    ("L1", "W - Z", "Z + Y"),
    ("L2", "W - Y", "Y + Z"),
    ("L3", "W - Y", "Y + X"),
    ("L4", "W - X", "X + Y"),
    ("L5", "W - X", "X + Z"),
    ("L6", "W - Z", "Z + X"),
    ("L7", "X + Y", "Y - Z"),
    ("L8", "X + Y", "X - Z"),
    ("L9", "X - Y", "Y + Z"),
    ("C1", "W - (X + Y + Z)", "X^2 + Y^2 + Z^2 + 3*(X*Y + X*Z + Y*Z)"),
    ("C2", "W + (X + Y + Z)", "X^2 + Y^2 + Z^2 + 3*(X*Y + X*Z + Y*Z)"),
    ("C3", "W - X", "X^2 + X*Y + 3*X*Z - Y*Z"),
    ("C4", "W + X", "X^2 + X*Y + 3*X*Z - Y*Z"),
    ("C5", "W - Y", "Y^2 + Y*Z + 3*Y*X - Z*X"),
    ("C6", "W + Y", "Y^2 + Y*Z + 3*Y*X - Z*X"),
    ("C7", "W - Z", "Z^2 + Z*X + 3*Z*Y - X*Y"),
    ("C8", "W + Z", "Z^2 + Z*X + 3*Z*Y - X*Y"),
    ("C9", "Z - X", "W*(Y + 3*X) + X*(X - Y)"),
    ("C10", "Z - X", "W*(Y + 3*X) - X*(X - Y)"),
    ("C11", "Y - Z", "W*(X + 3*Z) + Z*(Z - X)"),
    ("C12", "Y - Z", "W*(X + 3*Z) - Z*(Z - X)"),
    ("C13", "X - Y", "W*(Z + 3*Y) + Y*(Y - Z)"),
    ("C14", "X - Y", "W*(Z + 3*Y) - Y*(Y - Z)"),
];

/// The product whose zero locus on S6 is the boundary:
/// `(W^2+XY+YZ+XZ)(W^2-X^2)(W^2-Y^2)(W^2-Z^2)(X^2-Y^2)(Y^2-Z^2)(Z^2-X^2)`.
pub fn boundary_product() -> MultiPoly {
    MultiPoly::parse(
        "(W^2+X*Y+Y*Z+X*Z)*(W^2-X^2)*(W^2-Y^2)*(W^2-Z^2)*(X^2-Y^2)*(Y^2-Z^2)*(Z^2-X^2)",
        &VARS,
    )
    .expect("boundary product")
}

pub fn boundary_catalog() -> &'static [BoundaryComponent] {
    static C: OnceLock<Vec<BoundaryComponent>> = OnceLock::new();
    C.get_or_init(|| {
        TABLE
            .iter()
            .map(|(name, a, b)| {
                let eqs = [a, b].map(|e| MultiPoly::parse(e, &VARS).expect("catalog equation"));
                BoundaryComponent::build(name, eqs).expect("catalog component")
            })
            .collect()
    })
}

const PARAM_VARS: [&str; 2] = ["s", "t"];

/// Coefficients of a linear form in `W, X, Y, Z`.
fn linear_coeffs(p: &MultiPoly) -> Vec<Rational> {
    (0..4)
        .map(|i| {
            let mut e = vec![0; 4];
            e[i] = 1;
            p.coeff(&e)
        })
        .collect()
}

/// Rational basis of the kernel of the matrix with the given rows.
fn kernel(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = Rational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

fn constant(c: &Rational) -> MultiPoly {
    MultiPoly::constant(&PARAM_VARS, c.clone())
}

/// `sum_i coeffs[i] * basis[i]` coordinatewise.
fn combine(coeffs: &[MultiPoly], basis: &[Vec<Rational>], dim: usize) -> Vec<MultiPoly> {
    (0..dim)
        .map(|k| {
            coeffs
                .iter()
                .zip(basis)
                .fold(MultiPoly::zero(&PARAM_VARS), |acc, (c, b)| &acc + &c.scale(&b[k]))
        })
        .collect()
}

/// A rational point of the plane conic `q(s1, s2, s3) = 0`, smallest
/// height first.
fn conic_point(q: &MultiPoly) -> Option<Vec<Rational>> {
    for h in 1i64..=12 {
        for a in -h..=h {
            for b in -h..=h {
                for c in -h..=h {
                    if a.abs().max(b.abs()).max(c.abs()) != h {
                        continue;
                    }
                    let v: Vec<Rational> = [a, b, c].iter().map(|&x| Rational::from_integer(x.into())).collect();
                    if q.eval(&v).expect("three values").is_zero() {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}

impl BoundaryComponent {
    fn build(name: &'static str, equations: [MultiPoly; 2]) -> Result<Self> {
        let kind = match equations[1].total_degree() {
            Some(1) => ComponentKind::Line,
            Some(2) => ComponentKind::Conic,
            _ => return Err(Error::InvalidModel(format!("{name}: unexpected degree"))),
        };
        let param = match kind {
            ComponentKind::Line => {
                let basis = kernel(&[linear_coeffs(&equations[0]), linear_coeffs(&equations[1])], 4);
                if basis.len() != 2 {
                    return Err(Error::InvalidModel(format!("{name}: equations not independent")));
                }
                combine(&MultiPoly::vars_of(&PARAM_VARS), &basis, 4)
            }
            ComponentKind::Conic => Self::conic_param(name, &equations)?,
        };
        let param: [MultiPoly; 4] = param.try_into().expect("four coordinates");
        Ok(BoundaryComponent { name, kind, equations, param })
    }

    /// Pencil of lines through a rational point `P0` of the conic: the
    /// second intersection with the line through `P0` in direction `D` is
    /// `Q(D) P0 - 2 B(P0, D) D`.
    fn conic_param(name: &str, equations: &[MultiPoly; 2]) -> Result<Vec<MultiPoly>> {
        let plane = kernel(&[linear_coeffs(&equations[0])], 4);
        let svars = ["s1", "s2", "s3"];
        let in_plane: Vec<MultiPoly> = (0..4)
            .map(|k| {
                MultiPoly::vars_of(&svars)
                    .iter()
                    .zip(&plane)
                    .fold(MultiPoly::zero(&svars), |acc, (v, b)| &acc + &v.scale(&b[k]))
            })
            .collect();
        let q = equations[1].compose(&in_plane)?;
        let p0 = conic_point(&q).ok_or_else(|| Error::InvalidModel(format!("{name}: no small rational point")))?;
        let j = p0.iter().position(|c| !c.is_zero()).expect("nonzero point");
        let [s, t] = [0, 1].map(|i| MultiPoly::vars_of(&PARAM_VARS)[i].clone());
        let mut others = (0..3).filter(|&i| i != j);
        let (ia, ib) = (others.next().unwrap(), others.next().unwrap());
        let zero = MultiPoly::zero(&PARAM_VARS);
        let mut d = vec![zero.clone(), zero.clone(), zero];
        d[ia] = s;
        d[ib] = t;
        let qd = q.compose(&d)?;
        let shifted: Vec<MultiPoly> = d.iter().zip(&p0).map(|(di, c)| di + &constant(c)).collect();
        let two_b = &q.compose(&shifted)? - &qd;
        let point: Vec<MultiPoly> =
            (0..3).map(|i| &qd.scale(&p0[i]) - &(&two_b * &d[i])).collect();
        Ok(combine(&point, &plane, 4))
    }

    /// Both defining equations vanish at `p`.
    pub fn contains(&self, p: &ProjPoint) -> bool {
        let v = p.to_rationals();
        v.len() == 4 && self.equations.iter().all(|e| e.eval(&v).expect("four values").is_zero())
    }

    /// The parametrization `[s:t] -> P^3` as polynomials in `s, t`.
    pub fn parametrization(&self) -> &[MultiPoly; 4] {
        &self.param
    }

    /// The point with parameter `[s:t]`, if the parametrization is
    /// defined there.
    pub fn point_at(&self, s: i64, t: i64) -> Option<ProjPoint> {
        let v = [s, t].map(|x| Rational::from_integer(x.into()));
        let c: Vec<Rational> = self.param.iter().map(|p| p.eval(&v).expect("two values")).collect();
        ProjPoint::normalize(&c).ok()
    }

    /// At least `count` distinct points, from small parameters upwards.
    pub fn sample_points(&self, count: usize) -> Vec<ProjPoint> {
        let mut out: Vec<ProjPoint> = Vec::new();
        for h in 1i64.. {
            for s in -h..=h {
                for t in [-h, h] {
                    for (a, b) in [(s, t), (t, s)] {
                        if let Some(p) = self.point_at(a, b) {
                            if !out.contains(&p) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
            if out.len() >= count {
                return out;
            }
        }
        unreachable!()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PermutationReport {
    /// `(component, image)` in catalog order; `None` when no single
    /// component contains all sampled images.
    pub images: Vec<(String, Option<String>)>,
    pub bijective: bool,
}

/// The permutation of the 23 components induced by `sigma6`, read off
/// from 10 sample points per component.
pub fn sigma6_permutation() -> PermutationReport {
    let cat = boundary_catalog();
    let images: Vec<Option<usize>> = cat
        .iter()
        .map(|c| {
            let imgs: Vec<ProjPoint> = c.sample_points(10).iter().map(sigma6_surface).collect();
            let hits: Vec<usize> =
                (0..cat.len()).filter(|&j| imgs.iter().all(|p| cat[j].contains(p))).collect();
            match hits.as_slice() {
                [j] => Some(*j),
                _ => None,
            }
        })
        .collect();
    let mut seen = vec![false; cat.len()];
    let bijective = images.iter().all(|i| match i {
        Some(j) if !seen[*j] => {
            seen[*j] = true;
            true
        }
        _ => false,
    });
    PermutationReport {
        images: cat
            .iter()
            .zip(&images)
            .map(|(c, i)| (c.name.to_string(), i.map(|j| cat[j].name.to_string())))
            .collect(),
        bijective,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::on_surface;

    #[test]
    fn catalog_shape() {
        let cat = boundary_catalog();
        assert_eq!(cat.len(), 23);
        assert_eq!(cat.iter().filter(|c| c.kind == ComponentKind::Line).count(), 9);
    }

    #[test]
    fn components_lie_on_surface() {
        for c in boundary_catalog() {
            let pts = c.sample_points(10);
            assert!(pts.len() >= 10);
            for p in pts {
                assert!(c.contains(&p), "{} does not contain {p}", c.name);
                assert!(on_surface(&p), "{} sample {p} is off the surface", c.name);
            }
        }
    }

    #[test]
    fn sigma6_permutes_components() {
        let r = sigma6_permutation();
        assert!(r.bijective, "{:?}", r.images);
        let l1 = r.images.iter().find(|(n, _)| n == "L1").unwrap();
        assert_eq!(l1.1.as_deref(), Some("L4"));
    }

    #[test]
    fn kernel_of_two_forms() {
        let k = kernel(&[linear_coeffs(&MultiPoly::parse("W - Z", &VARS).unwrap())], 4);
        assert_eq!(k.len(), 3);
    }
}
