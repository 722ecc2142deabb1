//! Test oracles: exhaustive enumeration of small signed graphs plus seeded
//! flation walks, feeding a differential test of the structural recognizers
//! against the inflations method.
//!
//! Graph number `i` on `n` vertices reads the base-3 digits of `i` over the
//! pairs `(0,1), (0,2), …, (n-2,n-1)`: 0 absent, 1 solid, 2 dotted.
//! Randomness comes from ChaCha8 seeded with a `u64`, so seeds are portable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bigraph::{Bigraph, Edge, LineStyle};
use crate::blocks::{block_tree, classify_a};
use crate::classify::classify;
use crate::dcycle::{recognize_d, DCycleGluing};
use crate::dynkin::DynkinType;
use crate::flation::{flate_graph, FlationStep, FlationWitness};
use crate::format::serialize_bigraph_line;
use crate::inflations::{canonical_diagram, inflations_method};
use crate::matrix::QuasiCartanMatrix;

pub const MAX_ENUMERATION_VERTICES: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    All,
    ConnectedOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Filter {
    #[default]
    None,
    PositiveDefiniteOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub n: usize,
    pub connectivity: Connectivity,
    pub filter: Filter,
}

impl EnumerationSpec {
    pub fn all(n: usize) -> EnumerationSpec {
        EnumerationSpec { n, connectivity: Connectivity::All, filter: Filter::None }
    }

    pub fn connected(n: usize) -> EnumerationSpec {
        EnumerationSpec { n, connectivity: Connectivity::ConnectedOnly, filter: Filter::None }
    }

    pub fn positive_definite(self) -> EnumerationSpec {
        EnumerationSpec { filter: Filter::PositiveDefiniteOnly, ..self }
    }

    /// `3^(n(n-1)/2)`, the count before filtering.
    pub fn total(&self) -> u64 {
        3u64.pow((self.n * self.n.saturating_sub(1) / 2) as u32)
    }

    fn check(&self) -> Result<(), OracleError> {
        match self.n {
            0 => Err(OracleError::NoVertices),
            n if n > MAX_ENUMERATION_VERTICES => Err(OracleError::TooLarge(n)),
            _ => Ok(()),
        }
    }

    fn accepts(&self, g: &Bigraph) -> bool {
        (self.connectivity == Connectivity::All || g.is_connected())
            && (self.filter == Filter::None || QuasiCartanMatrix::from_bigraph(g).is_positive_definite())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration on {0} vertices exceeds the limit of {MAX_ENUMERATION_VERTICES}")]
    TooLarge(usize),
    #[error("enumeration needs at least one vertex")]
    NoVertices,
}

/// Graph number `index` in the enumeration order on `n` vertices.
pub fn graph_at(n: usize, mut index: u64) -> Bigraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match index % 3 {
                1 => edges.push(Edge::solid(u, v)),
                2 => edges.push(Edge::dotted(u, v)),
                _ => {}
            }
            index /= 3;
        }
    }
    Bigraph::new(n, edges).expect("pairs are distinct and in range")
}

pub fn enumerate_bigraphs(spec: EnumerationSpec) -> Result<impl Iterator<Item = Bigraph>, OracleError> {
    enumerate_range(spec, 0..spec.total())
}

/// The part of the enumeration with indices in `range`.
pub fn enumerate_range(
    spec: EnumerationSpec,
    range: Range<u64>,
) -> Result<impl Iterator<Item = Bigraph>, OracleError> {
    spec.check()?;
    let end = range.end.min(spec.total());
    Ok((range.start..end).map(move |i| graph_at(spec.n, i)).filter(move |g| spec.accepts(g)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkSpec {
    pub base: DynkinType,
    pub steps: usize,
    pub seed: u64,
}

/// Applies `steps` uniformly random `T(s,r)` to the canonical diagram of the
/// base type. The witness carries the canonical Cartan matrix to the result.
pub fn random_walk(spec: WalkSpec) -> (Bigraph, FlationWitness) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut g = canonical_diagram(spec.base);
    let n = g.vertex_count();
    let mut witness = FlationWitness::identity(n);
    if n < 2 {
        return (g, witness);
    }
    for _ in 0..spec.steps {
        let step = random_step(&mut rng, n);
        let sigma = g.style(step.s, step.r).map_or(0, |st| -st.sign());
        g = flate_graph(&g, step).expect("positive definite bigraphs stay simple");
        witness.push(step, sigma);
    }
    (g, witness)
}

pub fn random_step(rng: &mut impl Rng, n: usize) -> FlationStep {
    let s = rng.gen_range(0..n);
    let mut r = rng.gen_range(0..n - 1);
    if r >= s {
        r += 1;
    }
    FlationStep::new(s, r)
}

/// A random valid D-cycle gluing with `h` in `2..=4` and pieces of type
/// `A_2 … A_4`, on at least four vertices, labels shuffled.
pub fn random_gluing(seed: u64) -> DCycleGluing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (h, locals) = loop {
        let h = rng.gen_range(2..=4);
        let mut locals: Vec<(Bigraph, usize, usize)> = Vec::with_capacity(h);
        let mut dotted = 0;
        for i in 0..h {
            let want = (i == h - 1).then_some(if dotted % 2 == 0 { LineStyle::Dotted } else { LineStyle::Solid });
            let (piece, a, b) = random_piece(&mut rng, want);
            if piece.style(a, b) == Some(LineStyle::Dotted) {
                dotted += 1;
            }
            locals.push((piece, a, b));
        }
        if h + locals.iter().map(|(p, _, _)| p.vertex_count() - 2).sum::<usize>() >= 4 {
            break (h, locals);
        }
    };
    let n = h + locals.iter().map(|(p, _, _)| p.vertex_count() - 2).sum::<usize>();
    let mut labels: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    let cycle: Vec<usize> = labels[..h].to_vec();
    let mut next = h;
    let mut styles = Vec::with_capacity(h);
    let mut pieces = Vec::with_capacity(h);
    for (i, (piece, a, b)) in locals.iter().enumerate() {
        let k = piece.vertex_count();
        let map: Vec<usize> = (0..k)
            .map(|x| {
                if x == *a {
                    cycle[i]
                } else if x == *b {
                    cycle[(i + 1) % h]
                } else {
                    next += 1;
                    labels[next - 1]
                }
            })
            .collect();
        styles.push(piece.style(*a, *b).unwrap());
        pieces.push(piece.relabel(&map, n));
    }
    DCycleGluing { cycle, styles, pieces }
}

/// An A-type piece with an edge `{a,b}` whose endpoints are both non-separating.
fn random_piece(rng: &mut impl Rng, want: Option<LineStyle>) -> (Bigraph, usize, usize) {
    loop {
        let k = rng.gen_range(2..=4);
        let (g, _) = random_walk(WalkSpec { base: DynkinType::a(k), steps: rng.gen_range(0..12), seed: rng.gen() });
        let bt = block_tree(&g);
        let candidates: Vec<&Edge> = g
            .edges()
            .iter()
            .filter(|e| !bt.is_separator(e.u) && !bt.is_separator(e.v))
            .filter(|e| want.map_or(true, |st| e.style == st))
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let (u, v) = {
            let e = candidates[rng.gen_range(0..candidates.len())];
            (e.u, e.v)
        };
        return if rng.gen() { (g, u, v) } else { (g, v, u) };
    }
}

/// One graph on which the recognizers and the inflations method disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub index: u64,
    pub graph: Bigraph,
    pub inflations: Option<Vec<DynkinType>>,
    pub block_tree: bool,
    pub d_cycle: bool,
    pub classified: Option<Vec<DynkinType>>,
}

fn type_list(t: &Option<Vec<DynkinType>>) -> String {
    match t {
        None => "none".to_string(),
        Some(ts) => ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(","),
    }
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} # index={} inflations={} block_tree={} d_cycle={} classify={}",
            serialize_bigraph_line(&self.graph),
            self.index,
            type_list(&self.inflations),
            self.block_tree,
            self.d_cycle,
            type_list(&self.classified),
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffReport {
    pub examined: u64,
    pub connected: u64,
    pub positive_definite: u64,
    /// Inflations types of the positive definite connected graphs.
    pub type_counts: BTreeMap<DynkinType, u64>,
    pub disagreements: Vec<Disagreement>,
}

impl DiffReport {
    fn merge(mut self, other: DiffReport) -> DiffReport {
        self.examined += other.examined;
        self.connected += other.connected;
        self.positive_definite += other.positive_definite;
        for (t, c) in other.type_counts {
            *self.type_counts.entry(t).or_default() += c;
        }
        self.disagreements.extend(other.disagreements);
        self
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// Counterexamples, one per line.
    pub fn lines(&self) -> Vec<String> {
        self.disagreements.iter().map(|d| d.to_string()).collect()
    }
}

/// Compares block-tree and D-cycle recognition (and, on disconnected graphs,
/// full classification) against the inflations method over an enumeration.
pub fn differential_test(spec: EnumerationSpec) -> Result<DiffReport, OracleError> {
    spec.check()?;
    let total = spec.total();
    let chunk = 2048u64;
    let chunks: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    let mut report = chunks
        .into_par_iter()
        .map(|c| {
            let mut part = DiffReport::default();
            for index in c * chunk..((c + 1) * chunk).min(total) {
                let g = graph_at(spec.n, index);
                if spec.accepts(&g) {
                    check_one(index, &g, &mut part);
                }
            }
            part
        })
        .reduce(DiffReport::default, DiffReport::merge);
    report.disagreements.sort_by_key(|d| d.index);
    Ok(report)
}

fn check_one(index: u64, g: &Bigraph, report: &mut DiffReport) {
    report.examined += 1;
    let n = g.vertex_count();
    let a = QuasiCartanMatrix::from_bigraph(g);
    let inflations = inflations_method(&a).ok().map(|r| r.types);
    if inflations.is_some() {
        report.positive_definite += 1;
    }
    if !g.is_connected() {
        let classified = classify(g).ok().map(|r| r.types);
        if classified != inflations {
            report.disagreements.push(Disagreement {
                index,
                graph: g.clone(),
                inflations,
                block_tree: false,
                d_cycle: false,
                classified,
            });
        }
        return;
    }
    report.connected += 1;
    if let Some(ts) = &inflations {
        for &t in ts {
            *report.type_counts.entry(t).or_default() += 1;
        }
    }
    let expect_a = inflations == Some(vec![DynkinType::a(n)]);
    let expect_d = n >= 4 && inflations == Some(vec![DynkinType::d(n)]);
    let block_tree = classify_a(g);
    let d_cycle = recognize_d(g).is_some();
    if block_tree != expect_a || d_cycle != expect_d {
        report.disagreements.push(Disagreement {
            index,
            graph: g.clone(),
            inflations,
            block_tree,
            d_cycle,
            classified: None,
        });
    }
}
