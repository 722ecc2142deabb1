#![allow(dead_code)]

use proptest::prelude::*;
use qcartan::bigraph::{Bigraph, Edge};
use qcartan::oracle::{random_walk, WalkSpec};
use qcartan::{DynkinType, QuasiCartanMatrix};

/// Simple bigraph from one style digit per pair: 0 absent, 1 solid, 2 dotted.
pub fn from_digits(n: usize, digits: &[u8]) -> Bigraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            match digits[k] {
                1 => edges.push(Edge::solid(u, v)),
                2 => edges.push(Edge::dotted(u, v)),
                _ => {}
            }
            k += 1;
        }
    }
    Bigraph::new(n, edges).unwrap()
}

pub fn simple_bigraph(max_n: usize) -> impl Strategy<Value = Bigraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..3, n * (n - 1) / 2).prop_map(move |d| from_digits(n, &d))
    })
}

/// Positive definite bigraphs of known type, reached by seeded walks.
pub fn walked(bases: Vec<DynkinType>) -> impl Strategy<Value = (DynkinType, Bigraph)> {
    (proptest::sample::select(bases), 0usize..60, any::<u64>()).prop_map(|(base, steps, seed)| {
        (base, random_walk(WalkSpec { base, steps, seed }).0)
    })
}

pub fn matrix(g: &Bigraph) -> QuasiCartanMatrix {
    QuasiCartanMatrix::from_bigraph(g)
}

pub fn a_types() -> Vec<DynkinType> {
    (1..=7).map(DynkinType::a).collect()
}

pub fn d_types() -> Vec<DynkinType> {
    (4..=7).map(DynkinType::d).collect()
}

pub fn all_types() -> Vec<DynkinType> {
    let mut t = a_types();
    t.extend(d_types());
    t.extend((6..=8).map(DynkinType::e));
    t
}

/// `g` followed by a shifted copy of `h`.
pub fn disjoint_union(g: &Bigraph, h: &Bigraph) -> Bigraph {
    let k = g.vertex_count();
    let n = k + h.vertex_count();
    let shift: Vec<usize> = (k..n).collect();
    g.union(&h.relabel(&shift, n))
}
