mod common;

use std::collections::BTreeSet;

use clover::canon::canonicalize_diagram;
use clover::color::{colors, Color};
use clover::enumerate::{enumerate, enumerate_star};
use clover::graph::{shapes, Diagram};
use clover::model::{closed_rational_model, ManifoldModel};
use clover::relations::{
    br_relations, bracket_closed, ihx_relations, loop_relations, obr_relations, StarGraph,
};
use clover::vector::DiagramVector;
use common::{all_raw, weight};
use num_bigint::BigInt;
use num_traits::Zero;

fn weigh(v: &DiagramVector) -> BigInt {
    v.iter()
        .filter(|(g, _)| !g.is_degenerate())
        .map(|(g, k)| k * weight(g.diagram()))
        .sum()
}

#[test]
fn weight_system_reverses_under_flip_and_vanishes_on_degenerates() {
    for n in 1..=3 {
        for g in enumerate(n, &colors(&["x", "y"])).unwrap().all() {
            let d = g.diagram();
            assert_eq!(weight(&d.flip_vertex(0)), -weight(d));
            if g.is_degenerate() {
                assert!(weight(d).is_zero(), "{g}");
            }
        }
    }
    assert_eq!(weight(&shapes::theta()), BigInt::from(6));
}

#[test]
fn weight_system_kills_ihx_and_loop() {
    let cases: Vec<(usize, Vec<Color>)> = vec![
        (2, vec![]),
        (4, vec![]),
        (2, colors(&["x"])),
        (2, colors(&["x", "y"])),
        (3, colors(&["x", "y"])),
    ];
    for (n, alpha) in cases {
        let b = enumerate(n, &alpha).unwrap();
        let rels = ihx_relations(&b);
        assert!(!rels.is_empty());
        for r in rels.iter().chain(loop_relations(&b).iter()) {
            assert!(weigh(r).is_zero(), "degree {n}: {r}");
        }
    }
}

#[test]
fn oracle_jacobi_is_consistent_with_weight_system() {
    let alpha = colors(&["x", "y"]);
    for g in all_raw(2, 2) {
        for (h, h2) in g.internal_edges() {
            let s: BigInt = g
                .jacobi(h, h2)
                .iter()
                .map(|t| weight(&t.to_diagram(&alpha)))
                .sum();
            assert!(s.is_zero());
        }
    }
}

/// IHX generated at every edge of every labeled graph, before any
/// canonicalization, yields the same relation family.
#[test]
fn ihx_family_matches_labeled_oracle() {
    for (n, k) in [(2, 0), (2, 1), (3, 1)] {
        let alpha = colors(&["x", "y"][..k]);
        let mut oracle = BTreeSet::new();
        let mut oracle_codes = BTreeSet::new();
        for g in all_raw(n, k) {
            for (h, h2) in g.internal_edges() {
                let terms = g.jacobi(h, h2);
                let mut v = DiagramVector::zero(n);
                for t in &terms {
                    v.add_diagram(&t.to_diagram(&alpha), &BigInt::from(1));
                }
                if v.is_zero() {
                    continue;
                }
                let neg = v.iter().next().is_some_and(|(_, c)| c < &BigInt::zero());
                let v = if neg { v.scaled(&BigInt::from(-1)) } else { v };
                oracle.insert(v.to_string());

                // the same family in oracle coordinates
                let mut coords: std::collections::BTreeMap<Vec<usize>, (i64, bool)> =
                    Default::default();
                for t in &terms {
                    let c = t.canonical();
                    let e = coords.entry(c.code).or_insert((0, c.degenerate));
                    e.0 += c.sign as i64;
                }
                let mut entries: Vec<(Vec<usize>, i64)> = coords
                    .into_iter()
                    .map(|(code, (x, deg))| (code, if deg { x.rem_euclid(2) } else { x }))
                    .filter(|(_, x)| *x != 0)
                    .collect();
                if entries.is_empty() {
                    continue;
                }
                if entries[0].1 < 0 {
                    entries.iter_mut().for_each(|e| e.1 = -e.1);
                }
                oracle_codes.insert(entries);
            }
        }
        let lib = common::as_set(&ihx_relations(&enumerate(n, &alpha).unwrap()));
        assert_eq!(lib, oracle, "degree {n}, {k} colors");
        assert_eq!(lib.len(), oracle_codes.len(), "degree {n}, {k} colors");
    }
}

#[test]
fn theta_ihx_is_supported_on_the_dumbbell() {
    let theta = shapes::theta::<Color>();
    let d = clover::relations::ihx_relation(&theta, 0, 3);
    assert_eq!(d, DiagramVector::from_diagram(&shapes::dumbbell()));
}

fn equal_class_model(p: (i64, i64)) -> ManifoldModel {
    ManifoldModel::from_json(&format!(
        r#"{{"b1":1,"link":[{{"name":"x","class_free":[1]}},{{"name":"y","class_free":[1]}}],
           "h2_generators":[{{"name":"S","pairing":{{"x":{},"y":{}}}}}],"h2_complete":true}}"#,
        p.0, p.1
    ))
    .unwrap()
}

#[test]
fn bracket_sums_over_all_legs() {
    let m = equal_class_model((2, 5));
    let g: Diagram = "deg=2; legs=[*,x,x,y]; edges=[v0.0-v1.0, v0.1-l0, v0.2-l1, v1.1-l2, v1.2-l3]"
        .parse()
        .unwrap();
    let s = StarGraph::new(g.clone()).unwrap();
    let colors_seen: Vec<String> = s.gluings().iter().map(|(_, c, _)| c.to_string()).collect();
    assert_eq!(colors_seen, ["x", "x", "y"]);
    let mut expected = DiagramVector::zero(2);
    for (l, w) in [(1, 2), (2, 2), (3, 5)] {
        expected.add_diagram(&g.glue_legs(0, l).unwrap(), &BigInt::from(w));
    }
    assert_eq!(bracket_closed(&s, 0, &m).unwrap(), expected);

    // star-only: the only leg is the star
    let lonely: Diagram =
        "deg=3; legs=[*]; edges=[v0.0-v1.0, v0.1-v2.0, v0.2-l0, v1.1-v2.1, v1.2-v2.2]"
            .parse()
            .unwrap();
    let s = StarGraph::new(lonely).unwrap();
    assert!(bracket_closed(&s, 0, &m).unwrap().is_zero());
}

#[test]
fn zero_pairing_gives_no_br_relations() {
    let m = ManifoldModel::from_json(
        r#"{"b1":1,"link":[{"name":"x","class_free":[1]}],"h2_generators":[{"name":"S","pairing":{"x":0}}],"h2_complete":true}"#,
    )
    .unwrap();
    let stars = enumerate_star(2, &m.alphabet(), &Default::default()).unwrap();
    assert!(br_relations(&stars, &m).unwrap().is_empty());
}

#[test]
fn basis_models_have_no_obr_relations() {
    for b1 in 1..=2 {
        let m = closed_rational_model(b1, &[]);
        let stars = enumerate_star(3, &m.alphabet(), &Default::default()).unwrap();
        assert!(obr_relations(&stars, &m).unwrap().is_empty());
    }
}

#[test]
fn canonical_sign_of_theta_is_positive() {
    let (c, s) = canonicalize_diagram(&shapes::theta::<Color>());
    assert_eq!(s.to_i32(), 1);
    assert!(!c.is_degenerate());
}
