//! One line per acceptance criterion. Runs without the libtest harness so
//! that every line is printed whether it passes or not.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sixcycle::endo::QuadMap;
use sixcycle::exactmath::{int, rat, MultiPoly, ProjPoint, Rational};
use sixcycle::families::{
    ec_add, elliptic_family_map, fermat_curve_points, generator, genus0_family, small_rationals, Slice,
};
use sixcycle::moduli::{lemma22_inverse, membership, sigma_action, AffineModelPoint};
use sixcycle::search::{classify_point, orbit_rep, search_surface, Classification, SearchConfig};
use sixcycle::surface::{
    defect, f3, f3_value, f5, f5_value, on_surface, phi, phi_inverse, point_to_endomorphism, s6_membership,
    sigma6_alternative, sigma6_selection, sigma6_surface, singular_points_check, sporadic_points, verify_identities,
    S6Point, SPORADIC_AS_PRINTED,
};

struct Check {
    what: String,
    ok: bool,
}

#[derive(Default)]
struct Report {
    checks: Vec<Check>,
}

impl Report {
    fn check(&mut self, what: impl Into<String>, ok: bool) -> bool {
        self.checks.push(Check { what: what.into(), ok });
        ok
    }

    fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn coords(v: &[Rational]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn six(p: &AffineModelPoint) -> Vec<Rational> {
    match p {
        AffineModelPoint::Affine { coords, .. } => coords.clone(),
        other => panic!("not an n = 6 point: {other}"),
    }
}

fn criterion1(r: &mut Report) {
    let two_g = ec_add(&generator(), &generator()).unwrap();
    let (x, y) = two_g.coords().unwrap();
    r.check(format!("2(0,1) = ({x}, {y})"), (x, y) == (&rat(-7, 4), &rat(13, 8)));
    let m = match elliptic_family_map(2, 0, Slice::Z0) {
        Ok(m) => m,
        Err(e) => {
            r.check(format!("elliptic_family_map(2): {e}"), false);
            return;
        }
    };
    let expected: ProjPoint = "[8/13:-4/7:1:0]".parse().unwrap();
    r.check(format!("surface point {}", m.surface_point), *m.surface_point.point() == expected);
    r.check(
        format!("model point {}", m.model_point),
        m.model_point == AffineModelPoint::affine(vec![rat(91, 19), rat(49, 13), rat(-98, 19)]).unwrap(),
    );
    // (19u+98v)(133u-441v) : 19u(133u-529v)
    let target = QuadMap::from_factored([(19, 98), (133, -441)], [(19, 0), (133, -529)]).unwrap();
    r.check(format!("map {}", m.cycle.map()), *m.cycle.map() == target);
    let cycle: Vec<ProjPoint> =
        ["[0:1]", "[1:0]", "[1:1]", "[91:19]", "[49:13]", "[-98:19]"].iter().map(|s| s.parse().unwrap()).collect();
    r.check("6-cycle [0:1] -> [1:0] -> [1:1] -> [91:19] -> [49:13] -> [-98:19]", m.cycle.points() == cycle);
    let closes = m.cycle.map().eval(&cycle[5]) == cycle[0];
    r.check("[-98:19] -> [0:1]", closes);
}

fn cubic_c() -> [MultiPoly; 4] {
    let m = ["m"];
    let p = |s: &str| MultiPoly::parse(s, &m).unwrap();
    [p("0"), p("-m^3+2*m^2-3*m+1"), p("m^3-m+1"), p("m^3-2*m^2+m-1")]
}

fn criterion2(r: &mut Report) {
    let records = verify_identities(0);
    let failed: Vec<&str> = records.iter().filter(|x| !x.verified()).map(|x| x.name.as_str()).collect();
    r.check(format!("{} catalog records verified, failures {failed:?}", records.len()), failed.is_empty());
    for name in ["a", "b", "c1", "c2", "c3", "d1", "d2", "e", "f1", "f2", "f3", "g", "h1", "i1", "i2", "i3", "j"] {
        r.check(format!("record {name} present"), records.iter().any(|x| x.name == name));
    }
    let h1 = records.iter().find(|x| x.name == "h1");
    r.check("v1^3 = 9 v2^2 + 3 v2 v3 + v3^2", h1.is_some_and(|x| x.verified()));
    let j = records.iter().find(|x| x.name == "j");
    r.check("Z = 0 slice polynomial", j.is_some_and(|x| x.verified()));
    // The stated constants, checked literally.
    let c = cubic_c();
    let m = ["m"];
    let f3c = f3().compose(&c).unwrap();
    let f5c = f5().compose(&c).unwrap();
    let f3_stated = MultiPoly::parse("-4*(m^2-m)^3", &m).unwrap();
    let f5_stated = MultiPoly::parse("-4*(m^2-m)^3*(m^2-m+1)^3", &m).unwrap();
    let f3_32 = MultiPoly::parse("-32*(m^2-m)^3", &m).unwrap();
    let f5_32 = MultiPoly::parse("-32*(m^2-m)^3*(m^2-m+1)^3", &m).unwrap();
    r.check(format!("F3 o c = -4 (m^2-m)^3 (expansion gives -32: {})", f3c == f3_32), f3c == f3_stated);
    r.check(format!("F5 o c = -4 (m^2-m)^3 (m^2-m+1)^3 (expansion gives -32: {})", f5c == f5_32), f5c == f5_stated);
}

fn criterion3(r: &mut Report) {
    let rep = singular_points_check();
    r.check(format!("{} points listed", rep.points.len()), rep.points.len() == 11);
    for s in &rep.points {
        let triple = s.point.to_string() == "[1:0:0:0]";
        r.check(
            format!("{}: on surface, gradient zero, hessian zero = {}, not inside", s.point, s.hessian_zero),
            s.on_surface && s.gradient_zero && s.hessian_zero == triple && !s.inside,
        );
    }
    r.check("control point has nonzero gradient", rep.control_gradient_nonzero);
}

fn sporadic_checks(r: &mut Report, tag: &str, c: [i64; 4]) -> bool {
    let p = ProjPoint::from_i64s(&c).unwrap();
    let d = defect(&p).unwrap();
    if !r.check(format!("{tag} {p}: on the quintic (defect {d})"), d.is_zero()) {
        return false;
    }
    let s = S6Point::new(p).unwrap();
    let inside = s6_membership(&s).is_inside();
    let class = classify_point(&s);
    let cycle = point_to_endomorphism(&s);
    let period6 = cycle.as_ref().is_ok_and(|m| m.len() == 6 && m.map().orbit(&m.points()[0], 6).points.len() == 6);
    r.check(format!("{tag} {s}: inside"), inside)
        & r.check(format!("{tag} {s}: classified {class}"), class == Classification::Sporadic)
        & r.check(format!("{tag} {s}: marked cycle of exact period 6"), period6)
}

fn criterion4(r: &mut Report) {
    for c in SPORADIC_AS_PRINTED {
        sporadic_checks(r, "printed [W:X:Y:Z]", c);
    }
    // Read as [X:Y:Z:W] the same integers are points of M2(6).
    for s in sporadic_points() {
        let c: [i64; 4] = std::array::from_fn(|i| i64::try_from(&s.point().coords()[i]).unwrap());
        let mut sub = Report::default();
        let ok = sporadic_checks(&mut sub, "reordered", c);
        println!("    (note) reordered {s}: {}", if ok { "all checks pass" } else { "fails" });
    }
}

fn criterion5(r: &mut Report) {
    let mut admitted = 0;
    let mut rejected = Vec::new();
    for p in small_rationals(10) {
        if admitted == 25 {
            break;
        }
        let m = match genus0_family(&p) {
            Ok(m) => m,
            Err(_) => {
                rejected.push(p.to_string());
                continue;
            }
        };
        admitted += 1;
        let f = m.cycle.map();
        let fixed = ProjPoint::normalize(&[int(1), &p + int(1)]).unwrap();
        let mut periodic: BTreeSet<ProjPoint> = m.cycle.points().iter().cloned().collect();
        periodic.insert(m.fixed_point.clone());
        let ok = m.cycle.len() == 6
            && m.fixed_point == fixed
            && f.eval(&fixed) == fixed
            && periodic.len() >= 7
            && m.lambda_checks.all();
        r.check(format!("p = {p}: 6-cycle, fixed point {fixed}, {} periodic points, lambda checks", periodic.len()), ok);
    }
    r.check(format!("25 admitted parameters (skipped {rejected:?})"), admitted == 25);
}

fn criterion6(r: &mut Report) {
    let mut seen: Vec<(String, AffineModelPoint)> = Vec::new();
    for n in 2..=12 {
        for t in 0..3u8 {
            let tag = format!("n = {n}, torsion {t}");
            match elliptic_family_map(n, t, Slice::Z0) {
                Ok(m) => {
                    let x = six(&m.model_point);
                    let inside = membership(6, &x).is_inside();
                    r.check(format!("{tag}: {} inside", m.model_point), inside);
                    seen.push((tag, m.model_point));
                }
                Err(e) => {
                    r.check(format!("{tag}: {e}"), false);
                }
            }
        }
    }
    let distinct: BTreeSet<String> = seen.iter().map(|(_, p)| p.to_string()).collect();
    r.check(format!("{} model points pairwise distinct", seen.len()), distinct.len() == seen.len());
}

fn criterion7(r: &mut Report) {
    let got: BTreeSet<ProjPoint> = fermat_curve_points(50).into_iter().collect();
    let want: BTreeSet<ProjPoint> = ["[0:1:0]", "[0:1:1]", "[0:-1:1]"].iter().map(|s| s.parse().unwrap()).collect();
    let shown: Vec<String> = got.iter().map(|p| p.to_string()).collect();
    r.check(format!("height 50 gives {shown:?}"), got == want);
}

/// Admissible n = 6 points drawn from the families and their shifts.
fn admissible_points(seed: u64, count: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let model = if rng.gen_bool(0.5) {
            let p = Rational::new(BigInt::from(rng.gen_range(-30i64..=30)), BigInt::from(rng.gen_range(1i64..=30)));
            genus0_family(&p).map(|m| m.cycle)
        } else {
            let n = rng.gen_range(-6i64..=6);
            let slice = Slice::ALL[rng.gen_range(0..3)];
            elliptic_family_map(n, rng.gen_range(0..3), slice).map(|m| m.cycle)
        };
        let Ok(cycle) = model else { continue };
        let Ok((mut p, _)) = sixcycle::moduli::normalize_marked(&cycle) else { continue };
        for _ in 0..rng.gen_range(0..6) {
            p = sigma_action(&p).expect("shift of an admissible point");
        }
        out.push(six(&p));
    }
    out
}

fn criterion8(r: &mut Report) {
    let sel = sigma6_selection();
    let Some(selected) = sel.selected.clone() else {
        r.check(format!("a generator is selected among {:?}", sel.candidates), false);
        return;
    };
    r.check(format!("selected generator {selected}"), true);
    let a = |p: &ProjPoint| if selected == "[-W:Y:Z:X]" { sigma6_surface(p) } else { sigma6_alternative(p) };
    let pts = admissible_points(0, 100);
    let mut fails: Vec<String> = Vec::new();
    for x in &pts {
        let tag = format!("{:?}", coords(x));
        let Ok(p) = phi(x) else {
            fails.push(format!("{tag}: phi undefined"));
            continue;
        };
        if phi_inverse(&p).map(|v| v.to_vec()) != Ok(x.clone()) {
            fails.push(format!("{tag}: round trip"));
        }
        let model_in = membership(6, x).is_inside();
        let surf_in = on_surface(&p) && s6_membership(&S6Point::new(p.clone()).unwrap()).is_inside();
        if !(model_in && surf_in) {
            fails.push(format!("{tag}: membership model {model_in}, surface {surf_in}"));
            continue;
        }
        let s = S6Point::new(p.clone()).unwrap();
        let direct = point_to_endomorphism(&s).map(|m| m.map().clone());
        let via = lemma22_inverse(x);
        if direct.is_err() || direct != via {
            fails.push(format!("{tag}: point_to_endomorphism"));
        }
        let tx = sigma_action(&AffineModelPoint::affine(x.clone()).unwrap()).map(|q| six(&q));
        if tx.and_then(|t| phi(&t)) != Ok(a(&p)) {
            fails.push(format!("{tag}: phi o tau != A o phi"));
        }
        let mut q = p.clone();
        for _ in 0..6 {
            q = a(&q);
        }
        if q != p {
            fails.push(format!("{tag}: A^6 != id"));
        }
    }
    r.check(format!("{} admissible points: round trip, membership, maps, equivariance, A^6 = id", pts.len()), fails.is_empty());
    for f in fails.iter().take(5) {
        r.check(f.clone(), false);
    }
    // Membership must also agree off the moduli space.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut disagree = Vec::new();
    for _ in 0..100 {
        let x: Vec<Rational> = (0..3)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=4))))
            .collect();
        let model_in = membership(6, &x).is_inside();
        let surf_in = phi(&x).is_ok_and(|p| {
            on_surface(&p)
                && s6_membership(&S6Point::new(p.clone()).unwrap()).is_inside()
                && phi_inverse(&p).map(|v| v.to_vec()) == Ok(x.clone())
        });
        if model_in != surf_in {
            disagree.push(format!("{:?}: model {model_in}, surface {surf_in}", coords(&x)));
        }
    }
    r.check(format!("membership agrees on 100 random triples {disagree:?}"), disagree.is_empty());
}

fn naive(height: i64) -> Vec<(u64, ProjPoint)> {
    let mut orbits = BTreeSet::new();
    for w in -height..=height {
        for x in -height..=height {
            for y in -height..=height {
                for z in -height..=height {
                    let Ok(p) = ProjPoint::from_i64s(&[w, x, y, z]) else { continue };
                    let (wi, xi, yi, zi) = (w as i128, x as i128, y as i128, z as i128);
                    if p.coords() != [w, x, y, z].map(BigInt::from) || wi * wi * f3_value(xi, yi, zi) != f5_value(xi, yi, zi) {
                        continue;
                    }
                    let h = [w, x, y, z].iter().map(|c| c.unsigned_abs()).max().unwrap();
                    orbits.insert((h, orbit_rep(&p)));
                }
            }
        }
    }
    orbits.into_iter().collect()
}

fn criterion9(r: &mut Report) {
    let oracle = naive(8);
    let mut outputs = Vec::new();
    for shards in [1, 4, 8] {
        let mut cfg = SearchConfig::new(8);
        cfg.shards = shards;
        let out = search_surface(&cfg).unwrap();
        let got: Vec<(u64, ProjPoint)> = out.records.iter().map(|x| (x.height, x.orbit_rep.clone())).collect();
        r.check(format!("{shards} shard(s): {} orbits, oracle {}", got.len(), oracle.len()), got == oracle);
        outputs.push(out.records);
    }
    r.check("identical records for 1, 4, 8 shards", outputs.windows(2).all(|w| w[0] == w[1]));
}

fn main() {
    type Criterion = fn(&mut Report);
    let criteria: [(Criterion, Duration); 9] = [
        (criterion1, Duration::from_secs(1)),
        (criterion2, Duration::from_secs(10)),
        (criterion3, Duration::from_secs(1)),
        (criterion4, Duration::from_secs(1)),
        (criterion5, Duration::from_secs(5)),
        (criterion6, Duration::from_secs(5)),
        (criterion7, Duration::from_secs(10)),
        (criterion8, Duration::from_secs(10)),
        (criterion9, Duration::from_secs(60)),
    ];
    let mut failed = Vec::new();
    for (i, (run, budget)) in criteria.iter().enumerate() {
        let n = i + 1;
        let mut r = Report::default();
        let start = Instant::now();
        run(&mut r);
        let elapsed = start.elapsed();
        for c in r.checks.iter().filter(|c| !c.ok) {
            println!("    FAILED: {}", c.what);
        }
        let ok = r.ok();
        let timing = if elapsed > *budget { " (over time budget)" } else { "" };
        println!(
            "criterion {n}: {} ({} checks, {:.2?}, budget {budget:?}){timing}",
            if ok { "PASS" } else { "FAIL" },
            r.checks.len(),
            elapsed
        );
        if !ok {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all criteria pass");
}
