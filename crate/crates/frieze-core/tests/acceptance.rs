//! Acceptance suite: one line per criterion, nonzero exit status if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;

use frieze_core::cutglue::{cut_surface, extract_glued_region, frieze_d, frieze_d_with_cut, glued_pattern};
use frieze_core::frieze::{equivalent, frieze_a, validate_frieze, FriezeGrid};
use frieze_core::mutation::{
    delta_z, i_cell_value, mutate_frieze_a, mutate_frieze_d, mutate_pattern_g, recover_last_rows, split_product, Region,
};
use frieze_core::oracle::{
    check_polygon_flip, check_punctured_flip, enumerate, enumerate_polygon, enumerate_punctured, flippable,
    EnumerationSpec, Instance, SurfaceKind,
};
use frieze_core::patterng::{build_pattern_g, candidates, classify_regions, project, r_path, ray_diagram, NodeKey, PatternG, Zone};
use frieze_core::surfaces::{PuncturedArc, PuncturedTriangulation, Triangulated};

type Outcome = Result<String, String>;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

struct Corpus {
    polygons: Vec<frieze_core::surfaces::PolygonTriangulation>,
    punctured: Vec<PuncturedTriangulation>,
}

fn corpus() -> Corpus {
    let polygons = (5..=9).flat_map(enumerate_polygon).collect();
    let mut punctured: Vec<PuncturedTriangulation> = (4..=6).flat_map(enumerate_punctured).collect();
    let sample = enumerate(&EnumerationSpec::sampled(SurfaceKind::PuncturedDisk, 7, 20_240_917, 200)).expect("n = 7 is in bounds");
    punctured.extend(sample.into_iter().map(|i| match i {
        Instance::Punctured(t) => t,
        Instance::Polygon(_) => unreachable!(),
    }));
    Corpus { polygons, punctured }
}

fn patterns(t: &PuncturedTriangulation) -> impl Iterator<Item = (usize, PatternG)> + '_ {
    t.radii()
        .into_iter()
        .map(move |v| (v, build_pattern_g(t, &PuncturedArc::Radius(v)).expect("pattern of a valid triangulation")))
}

fn type_a_equivalence(c: &Corpus) -> Outcome {
    let mut flips = 0;
    for (k, t) in c.polygons.iter().enumerate() {
        for &a in t.diagonals() {
            let r = check_polygon_flip(k, t, a);
            if !r.pass {
                return Err(format!("{} at {}: {:?} {:?}", r.triangulation, r.arc, r.error, r.mismatches.first()));
            }
            flips += 1;
        }
    }
    Ok(format!("{} triangulations, {flips} flips", c.polygons.len()))
}

fn type_d_equivalence(c: &Corpus) -> Outcome {
    let mut flips = 0;
    for (k, t) in c.punctured.iter().enumerate() {
        for a in flippable(t) {
            let r = check_punctured_flip(k, t, &a, Default::default());
            if !r.pass {
                return Err(format!("{} at {}: {:?} {:?}", r.triangulation, r.arc, r.error, r.mismatches.first()));
            }
            flips += 1;
        }
    }
    Ok(format!("{} triangulations, {flips} flips", c.punctured.len()))
}

fn embedding(c: &Corpus) -> Outcome {
    let mut cuts = 0;
    for t in &c.punctured {
        let expected = glued_pattern(&frieze_d(t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        for v in t.radii() {
            let tilde = cut_surface(t, &PuncturedArc::Radius(v)).and_then(|s| s.frieze()).map_err(|e| e.to_string())?;
            let got = extract_glued_region(&tilde, t.size()).map_err(|e| e.to_string())?.aligned_to(v + 1);
            if got.rows != expected.rows {
                return Err(format!("{:?} cut at radius:{v}", t.arcs()));
            }
            cuts += 1;
        }
    }
    Ok(format!("{cuts} cuts"))
}

fn seam_path(c: &Corpus) -> Outcome {
    let mut checked = 0;
    for t in &c.punctured {
        let n = t.size();
        for (v, g) in patterns(t) {
            r_path(&g).map_err(|e| format!("{:?} radius:{v}: {e}", t.arcs()))?;
            let values: Vec<BigInt> = g.nodes.iter().map(|n| n.value.clone()).collect();
            let (top, bottom) = recover_last_rows(&g, &values).map_err(|e| e.to_string())?;
            let f = frieze_d_with_cut(t, v).map_err(|e| e.to_string())?;
            if f.row(n - 1) != top.as_slice() || f.row(n) != bottom.as_slice() {
                return Err(format!("{:?} radius:{v}: last rows misplaced", t.arcs()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} seam paths"))
}

fn b_cell_split(c: &Corpus) -> Outcome {
    let mut cells = 0;
    for t in &c.punctured {
        for (v, g) in patterns(t) {
            for (k, node) in g.nodes.iter().enumerate().filter(|(_, n)| n.zone == Zone::B) {
                let ra = g.seam_projections(k).ok_or_else(|| format!("{:?} radius:{v}: no projections", t.arcs()))?;
                if node.value != i_cell_value(&ra[0].value, &ra[1].value, &ra[2].value, &ra[3].value) {
                    return Err(format!("{:?} radius:{v} node {:?}", t.arcs(), node.lifts));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells of B"))
}

fn projections_match(c: &Corpus) -> Outcome {
    let mut cells = 0;
    for t in c.punctured.iter().filter(|t| t.size() <= 5) {
        for (v, g) in patterns(t) {
            for a in flippable(t).into_iter().filter(|a| *a != PuncturedArc::Radius(v)) {
                let d = ray_diagram(&g, &a).map_err(|e| e.to_string())?;
                let regions = classify_regions(&g, &d);
                for (k, label) in regions.labels.iter().enumerate() {
                    if matches!(label.region, Region::I | Region::F) {
                        continue;
                    }
                    if !candidates(&g, &d, k).iter().any(|s| s.agrees_with_strip()) {
                        return Err(format!("{:?} radius:{v} at {a}: node {:?}", t.arcs(), g.nodes[k].lifts));
                    }
                    project(&g, &d, &regions, k).map_err(|e| e.to_string())?;
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} projected cells"))
}

fn rotations_of(q: &[u32]) -> BTreeSet<Vec<u32>> {
    (0..q.len()).map(|k| q[k..].iter().chain(&q[..k]).copied().collect()).collect()
}

fn hexagon_search(_: &Corpus) -> Outcome {
    let quiddity = [3u32, 1, 5, 1, 2, 3];
    let tilde = rotations_of(&[6, 2, 1, 5, 1, 2, 3, 3, 1, 5, 1, 2, 3, 1]);
    let mut found = Vec::new();
    for t in enumerate_punctured(6) {
        if t.quiddity().map_err(|e| e.to_string())? != quiddity {
            continue;
        }
        for v in t.radii() {
            let cut = cut_surface(&t, &PuncturedArc::Radius(v)).map_err(|e| e.to_string())?;
            if tilde.contains(&cut.tilde.quiddity().map_err(|e| e.to_string())?) {
                found.push(format!("{:?} cut at radius:{v}", t.arcs()));
            }
        }
    }
    match found.first() {
        Some(f) => Ok(format!("{} matches, first {f}", found.len())),
        None => Err("no punctured hexagon with that quiddity and doubled quiddity".into()),
    }
}

fn worked_example(_: &Corpus) -> Outcome {
    let evaluations = [
        (delta_z(&b(2), &b(3), &b(4), &b(3)), b(-1)),
        (delta_z(&b(2), &b(2), &b(3), &b(3)), b(0)),
        (delta_z(&b(1), &b(2), &b(3), &b(1)), b(-1)),
        (delta_z(&b(3), &b(5), &b(8), &b(4)), b(-1)),
        (i_cell_value(&b(8), &b(3), &b(5), &b(19)), b(119)),
        (split_product(&b(12), &b(2)).map_err(|e| e.to_string())?, b(6)),
    ];
    if let Some((got, want)) = evaluations.iter().find(|(g, w)| g != w) {
        return Err(format!("evaluator gave {got}, expected {want}"));
    }
    let target = b(104);
    let before = [b(7), b(2), b(5), b(18)];
    let after = [b(8), b(3), b(5), b(19)];
    let mut candidates_seen = 0;
    for t in enumerate_punctured(9) {
        for (v, g) in patterns(&t) {
            let hits: Vec<usize> = (0..g.nodes.len())
                .filter(|&k| g.nodes[k].value == target && !matches!(g.nodes[k].key, NodeKey::Zero(_)))
                .collect();
            let &[k] = hits.as_slice() else { continue };
            let Some(ra) = g.seam_projections(k) else { continue };
            if g.nodes[k].zone != Zone::B || !ra.iter().map(|r| &r.value).eq(before.iter()) {
                continue;
            }
            candidates_seen += 1;
            for a in flippable(&t).into_iter().filter(|a| *a != PuncturedArc::Radius(v)) {
                let Ok(report) = mutate_pattern_g(&g, &a) else { continue };
                let new = &report.result.values;
                if new[k] == b(119) && ra.iter().map(|r| &new[r.node]).eq(after.iter()) {
                    return Ok(format!(
                        "evaluators agree; {:?} cut at radius:{v}, flip at {a}: 104 -> 119 after {candidates_seen} candidate patterns",
                        t.arcs()
                    ));
                }
            }
        }
    }
    Err(format!("evaluators agree, but none of {candidates_seen} candidate patterns mutates 104 to 119"))
}

fn axioms(c: &Corpus) -> Outcome {
    let mut friezes: Vec<FriezeGrid> = Vec::new();
    for t in &c.polygons {
        friezes.push(frieze_a(t).map_err(|e| e.to_string())?);
    }
    let mut odd = 0;
    for t in &c.punctured {
        for v in t.radii() {
            friezes.push(frieze_d_with_cut(t, v).map_err(|e| e.to_string())?);
            odd += t.size() % 2;
        }
    }
    for f in &friezes {
        validate_frieze(f).map_err(|v| format!("{} frieze fails: {v:?}", f.kind()))?;
    }
    Ok(format!("{} friezes, {odd} of odd type D", friezes.len()))
}

fn positive(f: &FriezeGrid) -> bool {
    f.rows().iter().flatten().all(|x| x.is_positive())
}

fn positivity_and_involution(c: &Corpus) -> Outcome {
    let mut count = 0;
    for t in &c.polygons {
        let f = frieze_a(t).map_err(|e| e.to_string())?;
        for &a in t.diagonals() {
            let once = mutate_frieze_a(&f, t, a).map_err(|e| e.to_string())?.result;
            let (flipped, partner) = t.flip_with_partner(a).map_err(|e| e.to_string())?;
            let twice = mutate_frieze_a(&once, &flipped, partner).map_err(|e| e.to_string())?.result;
            if !positive(&once) || twice != f {
                return Err(format!("polygon {:?} at {a:?}", t.diagonals()));
            }
            count += 1;
        }
    }
    for t in &c.punctured {
        let f = frieze_d(t).map_err(|e| e.to_string())?;
        for a in flippable(t) {
            let once = mutate_frieze_d(t, &a).map_err(|e| e.to_string())?.result;
            let flipped = t.flip(a).map_err(|e| e.to_string())?;
            let back = *flipped.arcs().difference(t.arcs()).next().expect("a flip changes one arc");
            let twice = mutate_frieze_d(&flipped, &back).map_err(|e| e.to_string())?.result;
            if !positive(&once) || !equivalent(&twice, &f) {
                return Err(format!("{:?} at {a}", t.arcs()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} double flips"))
}

fn main() {
    let start = Instant::now();
    let c = corpus();
    let criteria: [(&str, fn(&Corpus) -> Outcome); 10] = [
        ("type A mutation equals rebuild", type_a_equivalence),
        ("type D mutation equals rebuild", type_d_equivalence),
        ("glued region embeds in the doubled frieze", embedding),
        ("seam path and last-row placement", seam_path),
        ("B cells split along seam and copies", b_cell_split),
        ("pattern projections equal strip projections", projections_match),
        ("punctured hexagon doubled quiddity", hexagon_search),
        ("worked example arithmetic", worked_example),
        ("frieze axioms and odd twist", axioms),
        ("positivity and involution", positivity_and_involution),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (status, detail) = match check(&c) {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {status} {name}: {detail} ({:.1?})", k + 1, t.elapsed());
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
