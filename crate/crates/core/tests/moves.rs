use clover::color::{colors, LegLabel};
use clover::enumerate::EnumerationOptions;
use clover::graph::shapes;
use clover::groups::{group_data, Group};
use clover::linalg::smith_normal_form;
use clover::model::{closed_rational_model, ManifoldModel};
use clover::moves::{
    apply_m1, apply_m2, apply_m2_with, apply_move_to_model, band_sum_name, binomial_cancellation,
    induced_matrix, verify_isomorphism, verify_with_maps, Move,
};
use clover::quotient::Ring;
use clover::vector::{expand, DiagramVector};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn opts() -> EnumerationOptions {
    EnumerationOptions::default()
}

fn open_model() -> ManifoldModel {
    // no H2 pairing at all, so the quotient stays large
    ManifoldModel::from_json(
        r#"{"b1":1,"link":[{"name":"x","class_free":[1]}],"h2_complete":true}"#,
    )
    .unwrap()
}

#[test]
fn m1_on_y_graph_is_a_four_term_expansion() {
    for sign in [1i8, -1] {
        let c = colors(&["i", "j", &band_sum_name("i", "j", sign)]);
        let y = shapes::y_graph([c[0].clone(), c[0].clone(), c[1].clone()]);
        let got = apply_m1(&DiagramVector::from_diagram(&y), &c[0], &c[1], sign).unwrap();
        let label = LegLabel::from_terms([
            (c[2].clone(), BigInt::one()),
            (c[1].clone(), BigInt::from(-sign)),
        ])
        .unwrap();
        let by_hand = y.to_colored().with_leg(0, label.clone()).with_leg(1, label);
        assert_eq!(got, expand(&by_hand));
        let s = BigInt::from(sign);
        let mut four = DiagramVector::zero(1);
        for (a, b, k) in [
            (2, 2, BigInt::one()),
            (2, 1, -&s),
            (1, 2, -&s),
            (1, 1, &s * &s),
        ] {
            four.add_diagram(
                &shapes::y_graph([c[a].clone(), c[b].clone(), c[1].clone()]),
                &k,
            );
        }
        assert_eq!(got, four);
    }
}

/// Y(i,i,j) is AS-degenerate; the H-graph (i,j,i,k) keeps the signs visible.
#[test]
fn m1_signs_on_a_non_degenerate_graph() {
    let c = colors(&["i", "j", "k", "i#~j"]);
    let h = shapes::h_graph([c[0].clone(), c[1].clone(), c[0].clone(), c[2].clone()]);
    let got = apply_m1(&DiagramVector::from_diagram(&h), &c[0], &c[1], -1).unwrap();
    let mut four = DiagramVector::zero(2);
    for (a, b, k) in [(3, 3, 1), (3, 1, 1), (1, 3, 1), (1, 1, 1)] {
        four.add_diagram(
            &shapes::h_graph([c[a].clone(), c[1].clone(), c[b].clone(), c[2].clone()]),
            &BigInt::from(k),
        );
    }
    assert_eq!(got, four);
    assert!(got
        .iter()
        .any(|(g, k)| !g.is_degenerate() && k != &BigInt::zero()));
}

#[test]
fn m2_composition_is_raw_identity() {
    let x = colors(&["x"]).remove(0);
    for d in 0..=3 {
        for g in group_data(Group::B, d, &open_model(), &opts())
            .unwrap()
            .basis
            .all()
        {
            let v = DiagramVector::from_canonical(g);
            for eps in [1i8, -1] {
                let back = apply_m2(&apply_m2(&v, &x, eps).unwrap(), &x, -eps).unwrap();
                assert_eq!(back, v, "{g}");
            }
        }
    }
    for p in 1..8 {
        assert!(binomial_cancellation(p).is_zero());
    }
    assert!(binomial_cancellation(0).is_one());
}

#[test]
fn m2_on_closed_model_passes_all_checks() {
    let m = closed_rational_model(1, &[]);
    for ring in [Ring::Q, Ring::Z] {
        let r = verify_isomorphism(&"m2:x:+1".parse().unwrap(), 2, &m, ring, &opts()).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn m3_round_trip_on_torsion_model() {
    let m = closed_rational_model(1, &[BigInt::from(3)]);
    for mv in ["m3:insert:u", "m3:insert:u:x=1,t=1"] {
        let mv: Move = mv.parse().unwrap();
        for ring in [Ring::Q, Ring::Z] {
            let r = verify_isomorphism(&mv, 2, &m, ring, &opts()).unwrap();
            assert!(r.passed(), "{r}");
        }
        let bigger = apply_move_to_model(&m, &mv).unwrap();
        let r = verify_isomorphism(
            &"m3:delete:u".parse().unwrap(),
            2,
            &bigger,
            Ring::Z,
            &opts(),
        )
        .unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn m3_delete_requires_a_trivial_component() {
    let m = closed_rational_model(2, &[]);
    assert!(apply_move_to_model(&m, &"m3:delete:x".parse().unwrap()).is_err());
}

#[test]
fn m2_matrices_are_mutually_inverse() {
    let m = closed_rational_model(2, &[]);
    let fwd: Move = "m2:x:+1".parse().unwrap();
    let target = apply_move_to_model(&m, &fwd).unwrap();
    for d in 0..=3 {
        let a = induced_matrix(&fwd, d, &m, &opts()).unwrap();
        let b = induced_matrix(&"m2:x:-1".parse().unwrap(), d, &target, &opts()).unwrap();
        let id = b.mul(&a);
        assert_eq!(
            id,
            clover::linalg::IntegerMatrix::identity(id.rows()),
            "degree {d}"
        );
    }
}

#[test]
fn m1_matrix_is_unimodular_at_degree_two() {
    let m = closed_rational_model(2, &[]);
    let a = induced_matrix(&"m1:x:y:+1".parse().unwrap(), 2, &m, &opts()).unwrap();
    assert_eq!(a.rows(), a.cols());
    let s = smith_normal_form(&a);
    assert!((0..a.rows()).all(|i| s.d.get(i, i).is_one()));
}

/// Weighting every glued configuration by `eps` instead of `eps^p` must be
/// caught. Both the quotient round trip and the raw composition see it from
/// degree 4 on: below that the error is twice the two-pair terms, and those
/// land on degenerate classes only.
#[test]
fn corrupted_m2_is_detected() {
    let m = open_model();
    let x = colors(&["x"]).remove(0);
    let target = apply_move_to_model(&m, &"m2:x:-1".parse().unwrap()).unwrap();
    let eps = BigInt::from(-1);
    let fwd = |v: &DiagramVector| {
        apply_m2_with(v, &x, |p| if p == 0 { BigInt::one() } else { eps.clone() })
    };
    let inv = |v: &DiagramVector| apply_m2(v, &x, 1);
    let r = verify_with_maps(
        "m2:x:-1 (corrupted)",
        4,
        &m,
        &target,
        &fwd,
        &inv,
        Ring::Q,
        &opts(),
    )
    .unwrap();
    assert!(!r.passed());
    assert!(!r.check("roundtrip_source").unwrap().passed, "{r}");
    assert!(r.check("relations_forward").unwrap().passed);

    let raw_fails = group_data(Group::B, 4, &m, &opts())
        .unwrap()
        .basis
        .all()
        .any(|g| {
            let v = DiagramVector::from_canonical(g);
            inv(&fwd(&v).unwrap()).unwrap() != v
        });
    assert!(raw_fails);

    let ok = verify_isomorphism(&"m2:x:-1".parse().unwrap(), 4, &m, Ring::Q, &opts()).unwrap();
    assert!(ok.passed(), "{ok}");
}

#[test]
fn report_text_is_structured() {
    let m = closed_rational_model(2, &[]);
    let r = verify_isomorphism(&"m1:x:y:-1".parse().unwrap(), 1, &m, Ring::Q, &opts()).unwrap();
    let text = r.to_string();
    assert!(text.starts_with("move m1:x:y:-1 degree=1 ring=Q\n"));
    assert!(text.ends_with("result pass"));
}
