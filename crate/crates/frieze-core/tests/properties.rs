use proptest::prelude::*;

use frieze_core::cutglue::{frieze_d, frieze_d_with_cut, glued_pattern, unglue};
use frieze_core::documents::{frieze_to_json, parse_frieze};
use frieze_core::frieze::{arc_at_a, arc_position_a, equivalent, frieze_a, validate_frieze};
use frieze_core::mutation::{mutate_frieze_a, mutate_frieze_d, rebuilt_frieze_a};
use frieze_core::oracle::flippable;
use frieze_core::surfaces::{PolygonTriangulation, PuncturedTriangulation, Triangulated};

/// A triangulation reached from a fan by a sequence of flips.
fn polygon() -> impl Strategy<Value = PolygonTriangulation> {
    (5usize..=11, prop::collection::vec(any::<prop::sample::Index>(), 0..30)).prop_map(|(m, steps)| {
        let mut t = PolygonTriangulation::fan(m, 0);
        for s in steps {
            let ds: Vec<_> = t.diagonals().iter().copied().collect();
            t = t.flip(ds[s.index(ds.len())]).unwrap();
        }
        t
    })
}

fn punctured() -> impl Strategy<Value = PuncturedTriangulation> {
    (4usize..=8, prop::collection::vec(any::<prop::sample::Index>(), 0..25)).prop_map(|(n, steps)| {
        let mut t = PuncturedTriangulation::star(n);
        for s in steps {
            let arcs = flippable(&t);
            t = t.flip(arcs[s.index(arcs.len())]).unwrap();
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polygon_friezes_satisfy_the_axioms(t in polygon()) {
        let f = frieze_a(&t).unwrap();
        prop_assert!(validate_frieze(&f).is_ok());
        let quiddity: Vec<_> = t.quiddity().unwrap().iter().map(|&q| q.into()).collect();
        prop_assert_eq!(f.row(1), quiddity.as_slice());
        for &d in t.diagonals() {
            prop_assert_eq!(f.get(arc_position_a(t.size(), d).unwrap()), &1.into());
        }
    }

    #[test]
    fn arc_positions_round_trip(m in 5usize..20, i in 0usize..20, len in 2usize..18) {
        prop_assume!(i < m && len <= m - 2);
        let arc = (i, (i + len) % m);
        let back = arc_at_a(m, arc_position_a(m, arc).unwrap()).unwrap();
        prop_assert_eq!((back.0.min(back.1), back.0.max(back.1)), (arc.0.min(arc.1), arc.0.max(arc.1)));
    }

    #[test]
    fn type_a_mutation_is_a_rebuild_and_an_involution(t in polygon(), pick in any::<prop::sample::Index>()) {
        let ds: Vec<_> = t.diagonals().iter().copied().collect();
        let a = ds[pick.index(ds.len())];
        let f = frieze_a(&t).unwrap();
        let once = mutate_frieze_a(&f, &t, a).unwrap().result;
        prop_assert_eq!(&once, &rebuilt_frieze_a(&t, a).unwrap());
        let (flipped, partner) = t.flip_with_partner(a).unwrap();
        prop_assert_eq!(mutate_frieze_a(&once, &flipped, partner).unwrap().result, f);
    }

    #[test]
    fn punctured_friezes_do_not_depend_on_the_cut(t in punctured()) {
        let f = frieze_d(&t).unwrap();
        prop_assert!(validate_frieze(&f).is_ok());
        for v in t.radii() {
            prop_assert!(equivalent(&frieze_d_with_cut(&t, v).unwrap(), &f));
        }
        let g = glued_pattern(&f).unwrap();
        let v = t.radii()[0];
        prop_assert!(equivalent(&unglue(&g, (v + 1) % t.size()).unwrap(), &f));
    }

    #[test]
    fn type_d_mutation_is_a_rebuild(t in punctured(), pick in any::<prop::sample::Index>()) {
        let arcs = flippable(&t);
        let a = arcs[pick.index(arcs.len())];
        let got = mutate_frieze_d(&t, &a).unwrap().result;
        prop_assert!(equivalent(&got, &frieze_d(&t.flip(a).unwrap()).unwrap()));
    }

    #[test]
    fn frieze_documents_round_trip(t in punctured()) {
        let f = frieze_d(&t).unwrap();
        prop_assert_eq!(parse_frieze(&frieze_to_json(&f).to_string()).unwrap(), f);
    }
}
