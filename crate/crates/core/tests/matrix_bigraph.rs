mod common;

use common::{from_digits, matrix, simple_bigraph};
use num_bigint::BigInt;
use proptest::prelude::*;
use qcartan::bigraph::{Bigraph, Edge, LineStyle};
use qcartan::matrix::{bigraph_to_matrix, matrix_to_bigraph};
use qcartan::oracle::{enumerate_bigraphs, EnumerationSpec};
use qcartan::{IntMatrix, QuasiCartanMatrix};

fn with_multiplicity() -> impl Strategy<Value = Bigraph> {
    (1usize..6).prop_flat_map(|n| {
        let pair = (0..n, 0..n, any::<bool>());
        proptest::collection::vec(pair, 0..12).prop_map(move |raw| {
            let edges = raw
                .into_iter()
                .filter(|(a, b, _)| a != b)
                .map(|(a, b, dotted)| Edge::new(a, b, if dotted { LineStyle::Dotted } else { LineStyle::Solid }));
            Bigraph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph_round_trip(g in simple_bigraph(7)) {
        prop_assert_eq!(matrix_to_bigraph(&bigraph_to_matrix(&g)), g);
    }

    #[test]
    fn matrix_round_trip(n in 1usize..7, digits in proptest::collection::vec(0u8..3, 21)) {
        let a = matrix(&from_digits(n, &digits[..n * (n - 1) / 2]));
        prop_assert_eq!(bigraph_to_matrix(&matrix_to_bigraph(&a)), a);
    }

    #[test]
    fn simplify_is_idempotent(g in with_multiplicity()) {
        let once = g.simplify();
        prop_assert_eq!(once.simplify(), once.clone());
        prop_assert_eq!(bigraph_to_matrix(&once), bigraph_to_matrix(&g));
    }

    #[test]
    fn determinant_matches_last_minor(g in simple_bigraph(6)) {
        let a = matrix(&g);
        let minors = a.as_int().leading_minors();
        if minors.len() == a.size() {
            prop_assert_eq!(minors.last().unwrap().clone(), a.as_int().determinant());
        }
    }
}

#[test]
fn large_entries_are_never_positive_definite() {
    for c in [-3i64, -2, 2, 3] {
        let a = QuasiCartanMatrix::from_rows(&[vec![2, c], vec![c, 2]]).unwrap();
        assert!(!a.is_positive_definite());
        assert!(a.as_int().determinant() <= BigInt::from(0));
    }
    // every 3x3 and 4x4 quasi-Cartan matrix with off-diagonal entries in -2..=2
    for n in [3usize, 4] {
        let m = n * (n - 1) / 2;
        for code in 0..5u32.pow(m as u32) {
            let mut a = IntMatrix::identity(n);
            let mut c = code;
            let mut big = false;
            for i in 0..n {
                a.set(i, i, 2);
                for j in i + 1..n {
                    let v = (c % 5) as i64 - 2;
                    c /= 5;
                    big |= v.abs() >= 2;
                    a.set(i, j, v);
                    a.set(j, i, v);
                }
            }
            let q = QuasiCartanMatrix::new(a).unwrap();
            if big {
                assert!(!q.is_positive_definite(), "{q}");
            }
        }
    }
}

#[test]
fn positive_definite_counts_on_three_vertices() {
    let pd = enumerate_bigraphs(EnumerationSpec::all(3).positive_definite()).unwrap().count();
    // 27 graphs; the all-solid triangle and the triangles with two dotted
    // edges are singular (determinant 0), the rest have positive minors.
    assert_eq!(pd, 27 - 4);
}
