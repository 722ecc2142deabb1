mod common;

use common::{all_types, matrix, simple_bigraph, walked};
use proptest::prelude::*;
use qcartan::bigraph::LineStyle::{Dotted, Solid};
use qcartan::flation::{flate_graph, FlationStep};
use qcartan::format::{parse_input, parse_witness, serialize, serialize_witness, InputDocument};
use qcartan::inflations::{canonical_cartan, verify_witness};
use qcartan::oracle::{differential_test, enumerate_bigraphs, random_walk, EnumerationSpec, WalkSpec};
use qcartan::{classify, classify_matrix, Bigraph, DynkinType, Route};

fn golden_before() -> Bigraph {
    // s r x y x' y' = 0 1 2 3 4 5
    Bigraph::from_triples(
        6,
        &[
            (4, 5, Solid),
            (5, 0, Solid),
            (0, 1, Solid),
            (1, 2, Solid),
            (2, 3, Solid),
            (3, 0, Solid),
            (4, 0, Dotted),
            (0, 2, Dotted),
            (3, 1, Dotted),
        ],
    )
}

#[test]
fn six_vertex_golden_step() {
    let right = Bigraph::from_triples(
        6,
        &[
            (1, 5, Solid),
            (5, 0, Solid),
            (0, 3, Solid),
            (3, 2, Solid),
            (5, 4, Solid),
            (0, 1, Dotted),
            (1, 4, Dotted),
            (4, 0, Dotted),
            (0, 2, Dotted),
        ],
    );
    let left = golden_before();
    assert_eq!(flate_graph(&left, FlationStep::new(0, 1)).unwrap(), right);
    let r = classify(&left).unwrap();
    assert_eq!(r.types, [DynkinType::a(6)]);
    assert_eq!(r.routes, [Route::BlockTree]);
    assert_eq!(classify(&right).unwrap().types, [DynkinType::a(6)]);
}

#[test]
fn full_sweeps_up_to_four_vertices() {
    for n in 1..=4 {
        let r = differential_test(EnumerationSpec::all(n)).unwrap();
        assert!(r.is_clean(), "{:?}", r.lines());
        assert_eq!(r.examined, EnumerationSpec::all(n).total());
    }
    let r = differential_test(EnumerationSpec::connected(4)).unwrap();
    let total: u64 = r.type_counts.values().sum();
    assert_eq!(total, r.positive_definite);
    assert_eq!(r.type_counts.len(), 2);
}

#[test]
fn sweeps_are_deterministic() {
    let spec = EnumerationSpec::connected(4).positive_definite();
    let a: Vec<Bigraph> = enumerate_bigraphs(spec).unwrap().collect();
    let b: Vec<Bigraph> = enumerate_bigraphs(spec).unwrap().collect();
    assert_eq!(a, b);
    assert_eq!(differential_test(spec).unwrap(), differential_test(spec).unwrap());
}

#[test]
fn walk_examples() {
    for seed in [1, 2, 3] {
        let (g, _) = random_walk(WalkSpec { base: DynkinType::a(4), steps: 50, seed });
        assert_eq!(classify(&g).unwrap().types, [DynkinType::a(4)]);
        let (g, _) = random_walk(WalkSpec { base: DynkinType::d(4), steps: 50, seed });
        assert_eq!(classify(&g).unwrap().types, [DynkinType::d(4)]);
    }
}

proptest! {
    #[test]
    fn walks_carry_valid_witnesses(base in proptest::sample::select(all_types()), steps in 0usize..80, seed in any::<u64>()) {
        let spec = WalkSpec { base, steps, seed };
        let (g, w) = random_walk(spec);
        prop_assert_eq!(verify_witness(&canonical_cartan(base), &matrix(&g), &w), Ok(()));
        prop_assert_eq!(random_walk(spec), (g, w));
    }

    #[test]
    fn documents_round_trip(g in simple_bigraph(7)) {
        let doc = InputDocument::Bigraph(g.clone());
        let text = serialize(&doc);
        prop_assert_eq!(parse_input(&text).unwrap(), doc);
        prop_assert_eq!(serialize(&parse_input(&text).unwrap()), text);
        let mdoc = InputDocument::Matrix(matrix(&g));
        prop_assert_eq!(parse_input(&serialize(&mdoc)).unwrap(), mdoc);
    }

    #[test]
    fn classification_ignores_the_input_form((_, g) in walked(all_types())) {
        let via_graph = classify(&g).unwrap();
        let via_matrix = classify_matrix(&matrix(&g)).unwrap();
        prop_assert_eq!(via_graph.types, via_matrix.types);
    }

    #[test]
    fn witness_files_round_trip((_, g) in walked(all_types())) {
        let r = classify(&g).unwrap();
        let text = serialize_witness(&r.witness, Some(&r.canonical));
        let doc = parse_witness(&text, g.vertex_count()).unwrap();
        prop_assert_eq!(doc.steps.as_slice(), r.witness.steps());
        prop_assert_eq!(doc.accumulated.as_ref(), Some(r.witness.accumulated()));
        prop_assert_eq!(doc.target, Some(r.canonical));
    }
}
