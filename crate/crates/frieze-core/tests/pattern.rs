use frieze_core::mutation::{i_cell_value, Region};
use frieze_core::oracle::{enumerate_punctured, flippable};
use frieze_core::patterng::{build_pattern_g, candidates, classify_regions, project, r_path, ray_diagram, Zone};
use frieze_core::surfaces::PuncturedArc;

#[test]
fn projections_match_strip_projections() {
    for n in 4..=5 {
        for t in enumerate_punctured(n) {
            for v in t.radii() {
                let g = build_pattern_g(&t, &PuncturedArc::Radius(v)).unwrap();
                for a in flippable(&t) {
                    if a == PuncturedArc::Radius(v) {
                        continue;
                    }
                    let d = ray_diagram(&g, &a).unwrap();
                    let regions = classify_regions(&g, &d);
                    for (k, label) in regions.labels.iter().enumerate() {
                        if matches!(label.region, Region::I | Region::F) {
                            continue;
                        }
                        let sets = candidates(&g, &d, k);
                        assert!(
                            sets.iter().any(|s| s.agrees_with_strip()),
                            "n={n} v={v} a={a} node {:?}: {sets:?}",
                            g.nodes[k].lifts
                        );
                        project(&g, &d, &regions, k).unwrap();
                    }
                }
            }
        }
    }
}

#[test]
fn b_cells_split_along_seam_and_copies() {
    for t in enumerate_punctured(5) {
        let v = t.radii()[0];
        let g = build_pattern_g(&t, &PuncturedArc::Radius(v)).unwrap();
        let Some(a) = flippable(&t).into_iter().find(|a| *a != PuncturedArc::Radius(v)) else { continue };
        let d = ray_diagram(&g, &a).unwrap();
        let regions = classify_regions(&g, &d);
        for (k, node) in g.nodes.iter().enumerate() {
            if node.zone != Zone::B {
                continue;
            }
            let ra = project(&g, &d, &regions, k).unwrap().ra.unwrap();
            assert_eq!(node.value, i_cell_value(&ra[0].value, &ra[1].value, &ra[2].value, &ra[3].value));
        }
    }
}

#[test]
fn seam_and_copies() {
    for n in 4..=6 {
        for t in enumerate_punctured(n) {
            for v in t.radii() {
                let g = build_pattern_g(&t, &PuncturedArc::Radius(v)).unwrap();
                r_path(&g).unwrap();
                g.check_copies().unwrap();
                assert!(g.check_diamonds().unwrap() > 0);
            }
        }
    }
}
