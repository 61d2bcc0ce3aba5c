//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unicover_core::cover::Cover;
use unicover_core::cover_cayley::{
    cayley_embed, cayley_levels, classify_type, cover_cayley, cover_width1_dilation, split_22, strip_witness,
    CayleySpec, CayleyType, PrismatoidSpec, StripFrame,
};
use unicover_core::cover_para::{circumscribe, corner, cover_parallelepiped};
use unicover_core::exact_geom::{IntPoint2, IntPoint3, Membership};
use unicover_core::gen::{example26_octahedron, example26_prism, random_parallelepiped, random_weak_summand_pair};
use unicover_core::idp::{idp_check, Verdict};
use unicover_core::polytope::{normal_fan_refines, Body3};
use unicover_core::triangulate::{empty_triangulation, refine_to_empty, Simplex3};
use unicover_core::verify::{verify_cover, Coverage, VerifyMode, VerifyOptions};
use unicover_core::white::{enumerate_white_forms, random_unimodular_map, white_normal_form, WhiteForm};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Corpus) -> Outcome);

/// Verified covers collected by earlier criteria, reused by later ones.
#[derive(Default)]
struct Corpus {
    verified: Vec<(String, Body3, Cover)>,
}

// ---------------------------------------------------------------------------
// Independent oracles: plain integer arithmetic, no library predicates.

fn det(a: [i128; 3], b: [i128; 3], c: [i128; 3]) -> i128 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn sub(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn arr(p: IntPoint3) -> [i128; 3] {
    [p.x as i128, p.y as i128, p.z as i128]
}

/// Closed membership of `x` in the tetrahedron `t`, all in the same integer scale.
fn in_tetra(x: [i128; 3], t: [[i128; 3]; 4]) -> bool {
    let faces = [[1, 2, 3, 0], [0, 2, 3, 1], [0, 1, 3, 2], [0, 1, 2, 3]];
    faces.iter().all(|f| {
        let (a, b, c, opp) = (t[f[0]], t[f[1]], t[f[2]], t[f[3]]);
        let s_opp = det(sub(b, a), sub(c, a), sub(opp, a)).signum();
        let s_x = det(sub(b, a), sub(c, a), sub(x, a)).signum();
        s_x == 0 || s_x == s_opp
    })
}

fn simplex_volume(s: &Simplex3) -> i128 {
    let v = s.vertices().map(arr);
    det(sub(v[1], v[0]), sub(v[2], v[0]), sub(v[3], v[0])).abs()
}

/// Monotone-chain hull of 2D points, counterclockwise, collinear points dropped.
fn hull2(points: &[IntPoint2]) -> Vec<IntPoint2> {
    let mut p: Vec<IntPoint2> = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let cross = |o: IntPoint2, a: IntPoint2, b: IntPoint2| {
        (a.x - o.x) as i128 * (b.y - o.y) as i128 - (a.y - o.y) as i128 * (b.x - o.x) as i128
    };
    let mut lower: Vec<IntPoint2> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<IntPoint2> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn vertex_set(v: &[IntPoint2]) -> BTreeSet<IntPoint2> {
    v.iter().copied().collect()
}

fn exact(target: &Body3, simplices: &[Simplex3]) -> Result<unicover_core::verify::VerifyReport, String> {
    verify_cover(target, simplices, VerifyMode::Exact, &VerifyOptions::default()).map_err(|e| e.to_string())
}

/// Unimodular by independent determinant, contained by the body's own facets, and covering.
fn check_cover(name: &str, target: &Body3, cover: &Cover) -> Result<(), String> {
    let simplices = cover.simplices();
    if let Some(s) = simplices.iter().find(|s| simplex_volume(s) != 1) {
        return Err(format!("{name}: non-unimodular simplex {s}"));
    }
    let r = exact(target, &simplices)?;
    if !r.all_contained {
        return Err(format!("{name}: simplex outside the target"));
    }
    if r.coverage != Coverage::Covered {
        return Err(format!("{name}: coverage {:?}", r.coverage));
    }
    Ok(())
}

// ---------------------------------------------------------------------------

fn corner_witnesses(_: &mut Corpus) -> Outcome {
    let mut forms = 0;
    for f in enumerate_white_forms(25).into_iter().filter(|f| f.b() >= 2) {
        let (a, b) = (f.a(), f.b());
        let p = f.vertices();
        let c = circumscribe(p).map_err(|e| e.to_string())?;
        // Doubled coordinates make the half-integral corners integral.
        let p2: Vec<[i128; 3]> = p.iter().map(|&v| arr(v).map(|x| 2 * x)).collect();
        for i in 0..4 {
            let cor = corner(&c, i).map_err(|e| e.to_string())?;
            let t: [[i128; 3]; 4] = cor.clone().map(|v| {
                [v.x, v.y, v.z].map(|r| {
                    let d = r * num_rational::Ratio::from_integer(2);
                    assert!(d.is_integer());
                    d.to_integer()
                })
            });
            let lo = (0..3).map(|k| t.iter().map(|v| v[k]).min().unwrap()).collect::<Vec<_>>();
            let hi = (0..3).map(|k| t.iter().map(|v| v[k]).max().unwrap()).collect::<Vec<_>>();
            let mut found = false;
            'scan: for x in lo[0].div_euclid(2)..=hi[0].div_euclid(2) + 1 {
                for y in lo[1].div_euclid(2)..=hi[1].div_euclid(2) + 1 {
                    for z in lo[2].div_euclid(2)..=hi[2].div_euclid(2) + 1 {
                        let q = [2 * x, 2 * y, 2 * z];
                        if in_tetra(q, t) && !p2.contains(&q) {
                            found = true;
                            break 'scan;
                        }
                    }
                }
            }
            if !found {
                return Err(format!("T({a},{b}) corner {} has no extra lattice point", i + 1));
            }
        }
        // (1,1,0) in conv(p1, p2, q3) and (0,-1,0) in conv(p1, p2, q4): both
        // triangles lie in z = 0, so test them in the plane.
        let in_tri = |x: [i128; 2], tri: [[i128; 2]; 3]| {
            let s = |a: [i128; 2], b: [i128; 2], c: [i128; 2]| ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).signum();
            let o = s(tri[0], tri[1], tri[2]);
            [(0, 1), (1, 2), (2, 0)].iter().all(|&(i, j)| {
                let v = s(tri[i], tri[j], x);
                v == 0 || v == o
            })
        };
        let (a2, b2) = (a as i128, b as i128);
        let q3 = [1 + a2, b2];
        let q4 = [1 - a2, -b2];
        if c.q[2].z != 0.into() || c.q[3].z != 0.into() {
            return Err(format!("T({a},{b}): q3 or q4 not at height 0"));
        }
        if !in_tri([2, 2], [[0, 0], [2, 0], q3]) || !in_tri([0, -2], [[0, 0], [2, 0], q4]) {
            return Err(format!("T({a},{b}): (1,1,0) or (0,-1,0) outside its triangle"));
        }
        forms += 1;
    }
    Ok(format!("{forms} forms with 2 <= b <= 25, all 4 corners nonempty, (1,1,0) and (0,-1,0) certified"))
}

fn parallelepiped_suite(corpus: &mut Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut simplices, mut max_cells) = (0, 0);
    for i in 0..200 {
        let p = random_parallelepiped(&mut rng, 5).map_err(|e| e.to_string())?;
        let body = p.to_body();
        let cover = cover_parallelepiped(&p).map_err(|e| format!("instance {i}: {e}"))?;
        let r = exact(&body, &cover.simplices())?;
        if r.coverage != Coverage::Covered || !r.all_unimodular || !r.all_contained {
            return Err(format!("instance {i}: {}", r.label()));
        }
        check_cover(&format!("parallelepiped {i}"), &body, &cover)?;
        simplices += cover.len();
        max_cells = max_cells.max(r.cells_processed);
        corpus.verified.push((format!("parallelepiped {i}"), body, cover));
    }
    Ok(format!("200 parallelepipeds, {simplices} unimodular simplices, max {max_cells} cells per instance"))
}

fn cayley_suite(corpus: &mut Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut simplices = 0;
    for i in 0..100 {
        let (p, q) = random_weak_summand_pair(&mut rng, 6).map_err(|e| e.to_string())?;
        if !normal_fan_refines(&q, &p) {
            return Err(format!("pair {i}: generator postcondition fails"));
        }
        let spec = CayleySpec::new(p, q).map_err(|e| e.to_string())?;
        let cover = match cover_cayley(&spec, false) {
            Ok(c) => c,
            Err(e) if e.is_guarantee_violation() => return Err(format!("pair {i}: guarantee violation {e}")),
            Err(e) => return Err(format!("pair {i}: {e}")),
        };
        let body = cayley_embed(&spec).map_err(|e| e.to_string())?;
        check_cover(&format!("cayley {i}"), &body, &cover)?;
        simplices += cover.len();
        corpus.verified.push((format!("cayley {i}"), body, cover));
    }
    Ok(format!("100 weak-summand pairs verified, {simplices} simplices, no guarantee violations"))
}

fn prismatoid_suite(corpus: &mut Corpus) -> Outcome {
    let mut n = 0;
    for f in enumerate_white_forms(10) {
        let t = Body3::hull(&f.vertices()).map_err(|e| e.to_string())?;
        let (q1, q2) = cayley_levels(&t).map_err(|e| e.to_string())?;
        let spec = PrismatoidSpec::new(q1.dilate(2).unwrap(), q2.dilate(2).unwrap(), 2).map_err(|e| e.to_string())?;
        let slices = spec.slices().map_err(|e| e.to_string())?;
        let mut sums = Vec::new();
        for &u in q1.vertices() {
            for &v in q2.vertices() {
                sums.push(u + v);
            }
        }
        if vertex_set(slices[1].vertices()) != vertex_set(&hull2(&sums)) {
            return Err(format!("2T({},{}): slice at height 1 differs from Q1 + Q2", f.a(), f.b()));
        }
        let cover = cover_width1_dilation(&t, 2).map_err(|e| format!("2T({},{}): {e}", f.a(), f.b()))?;
        let target = t.dilate(2).unwrap();
        check_cover(&format!("2T({},{})", f.a(), f.b()), &target, &cover)?;
        corpus.verified.push((format!("2T({},{})", f.a(), f.b()), target, cover));
        n += 1;
    }
    let pyr = Body3::hull(&[
        IntPoint3::new(0, 0, 0),
        IntPoint3::new(0, 0, 1),
        IntPoint3::new(1, 0, 1),
        IntPoint3::new(0, 1, 1),
    ])
    .unwrap();
    let (q1, q2) = cayley_levels(&pyr).unwrap();
    let spec = PrismatoidSpec::new(q1.dilate(3).unwrap(), q2.dilate(3).unwrap(), 3).unwrap();
    let slices = spec.slices().map_err(|e| e.to_string())?;
    let sums: Vec<IntPoint2> = q2.vertices().iter().map(|&v| v + q1.vertices()[0].scale(2)).collect();
    if vertex_set(slices[1].vertices()) != vertex_set(&hull2(&sums)) {
        return Err("3 Cay(point, triangle): slice at height 1 differs from 2 Q1 + Q2".into());
    }
    let cover = cover_width1_dilation(&pyr, 3).map_err(|e| e.to_string())?;
    let target = pyr.dilate(3).unwrap();
    check_cover("3 Cay(point, triangle)", &target, &cover)?;
    corpus.verified.push(("3 Cay(point, triangle)".into(), target, cover));
    Ok(format!("{n} dilations 2T(a,b) with b <= 10 and 3 Cay(point, triangle) verified, slice identities exact"))
}

fn example26(_: &mut Corpus) -> Outcome {
    for (name, verts) in [("octahedron", example26_octahedron()), ("prism", example26_prism())] {
        let body = Body3::hull(&verts).map_err(|e| e.to_string())?;
        let pts = body.lattice_points();
        let mut expected: Vec<IntPoint3> = verts.clone();
        expected.push(IntPoint3::ORIGIN);
        expected.sort();
        if pts != expected {
            return Err(format!("{name}: lattice points {pts:?}"));
        }
        let r = idp_check(&body, 2).map_err(|e| e.to_string())?;
        let w = IntPoint3::new(1, 1, 1);
        if r.verdict != Verdict::Fail || r.failure.map(|f| f.0) != Some(2) || !r.witnesses.contains(&w) {
            return Err(format!("{name}: {r:?}"));
        }
        // (1,1,1) must not be a sum of two lattice points of the body.
        if pts.iter().any(|&a| pts.contains(&(w - a))) {
            return Err(format!("{name}: (1,1,1) decomposes"));
        }
    }
    Ok("octahedron and prism: 7 lattice points each, non-IDP at n = 2 with witness (1,1,1)".into())
}

fn cover_implies_idp(corpus: &mut Corpus) -> Outcome {
    if corpus.verified.is_empty() {
        return Err("no verified covers available".into());
    }
    for (name, body, _) in &corpus.verified {
        let r = idp_check(body, 3).map_err(|e| format!("{name}: {e}"))?;
        if r.verdict != Verdict::Pass {
            return Err(format!("{name}: {r:?}"));
        }
    }
    Ok(format!("{} covered targets pass idp_check with n_max = 3", corpus.verified.len()))
}

fn white_round_trip(_: &mut Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checks = 0;
    for f in enumerate_white_forms(15) {
        let t = f.tetrahedron();
        let canon = white_normal_form(&t).map_err(|e| e.to_string())?;
        let expect_a = *f.orbit().iter().next().unwrap();
        if canon.form != WhiteForm::new(expect_a, f.b()).unwrap() {
            return Err(format!("T({},{}) normalizes to {:?}", f.a(), f.b(), canon.form));
        }
        for _ in 0..50 {
            let m = random_unimodular_map(&mut rng, 6, 5);
            let img = m.apply_simplex(&t);
            let nf = white_normal_form(&img).map_err(|e| e.to_string())?;
            if nf.form != canon.form {
                return Err(format!("T({},{}) under {m:?} gives {:?}", f.a(), f.b(), nf.form));
            }
            // Certificate: vertex set onto vertex set, checked point by point.
            let mut mapped: Vec<IntPoint3> = img.vertices().iter().map(|&v| nf.map.apply(v)).collect();
            mapped.sort();
            let mut target = nf.form.vertices().to_vec();
            target.sort();
            if mapped != target {
                return Err(format!("T({},{}): certificate does not map vertices onto vertices", f.a(), f.b()));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} transformed tetrahedra normalized with exact certificates"))
}

fn tampering(corpus: &mut Corpus) -> Outcome {
    let mut tampered = 0;
    let mut untampered = 0;
    for (name, body, cover) in &corpus.verified {
        if tampered == 50 {
            break;
        }
        let simplices = cover.simplices();
        if simplices.len() < 2 {
            continue;
        }
        // Delete a simplex whose centroid no other simplex contains; then the
        // tampered cover certainly misses that point.
        let scaled = |s: &Simplex3| s.vertices().map(|v| arr(v).map(|c| 4 * c));
        let victim = (0..simplices.len()).find(|&i| {
            let c = simplices[i].vertices().iter().fold([0i128; 3], |acc, &v| {
                let a = arr(v);
                [acc[0] + a[0], acc[1] + a[1], acc[2] + a[2]]
            });
            !simplices.iter().enumerate().any(|(j, s)| j != i && in_tetra(c, scaled(s)))
        });
        let Some(victim) = victim else { continue };
        let r = exact(body, &simplices)?;
        if r.coverage != Coverage::Covered {
            return Err(format!("{name}: untampered cover reported {:?}", r.coverage));
        }
        untampered += 1;
        let mut cut = simplices.clone();
        cut.remove(victim);
        let r = exact(body, &cut)?;
        let Coverage::Uncovered(w) = r.coverage else {
            return Err(format!("{name}: tampered cover reported {:?}", r.coverage));
        };
        if !body.contains_rat(&w) || cut.iter().any(|s| s.contains_rat(&w, Membership::Closed)) {
            return Err(format!("{name}: invalid witness {w}"));
        }
        tampered += 1;
    }
    if tampered < 50 {
        return Err(format!("only {tampered} covers had a removable simplex with a private centroid"));
    }
    Ok(format!("{tampered} tampered covers uncovered with valid witnesses, {untampered} originals covered"))
}

fn split_identities(_: &mut Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut splits = 0;
    let mut pairs = 0;
    while splits < 500 {
        pairs += 1;
        if pairs > 10_000 {
            return Err(format!("only {splits} splits found"));
        }
        let (p, q) = random_weak_summand_pair(&mut rng, 6).map_err(|e| e.to_string())?;
        let spec = CayleySpec::new(p.clone(), q.clone()).map_err(|e| e.to_string())?;
        let body = cayley_embed(&spec).map_err(|e| e.to_string())?;
        let mut work = empty_triangulation(&body).map_err(|e| e.to_string())?;
        while let Some(t) = work.pop() {
            if t.is_unimodular() {
                continue;
            }
            if classify_type(&t).map_err(|e| e.to_string())? != CayleyType::TwoTwo {
                return Err(format!("empty non-unimodular {t} is not of type (2,2)"));
            }
            let frame = StripFrame::of_simplex(&t).map_err(|e| e.to_string())?;
            let (side, u) = strip_witness(&frame, &p, &q).map_err(|e| e.to_string())?;
            let s = split_22(&t, side, u).map_err(|e| e.to_string())?;
            let (vl, vr, vt) = (simplex_volume(&s.left), simplex_volume(&s.right), simplex_volume(&t));
            if vl + vr != vt || vl < 1 || vr < 1 {
                return Err(format!("split of {t}: {vl} + {vr} vs {vt}"));
            }
            if splits % 10 == 0 {
                let target = Body3::hull(t.vertices()).unwrap();
                if exact(&target, &s.pieces())?.coverage != Coverage::Covered {
                    return Err(format!("split pieces of {t} do not cover it"));
                }
            }
            splits += 1;
            for piece in s.pieces() {
                work.extend(refine_to_empty(&piece));
            }
        }
    }
    Ok(format!("{splits} splits from {pairs} pairs: volume identity exact, parts >= 1"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("corner tetrahedra of C(T(a,b)) contain lattice points", corner_witnesses),
        ("random parallelepipeds have verified unimodular covers", parallelepiped_suite),
        ("Cayley sums with weak summands have verified covers", cayley_suite),
        ("prismatoid and dilation covers, slice identity", prismatoid_suite),
        ("non-IDP octahedron and prism", example26),
        ("covered targets are IDP up to n = 3", cover_implies_idp),
        ("White normal form round trip", white_round_trip),
        ("verifier detects tampered covers", tampering),
        ("split volume identities", split_identities),
    ];
    let mut corpus = Corpus::default();
    let mut failed = 0;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut corpus)))
            .unwrap_or_else(|e| Err(format!("panic: {:?}", e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())))));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {title}: {detail} ({secs:.1}s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {title}: {detail} ({secs:.1}s)", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
