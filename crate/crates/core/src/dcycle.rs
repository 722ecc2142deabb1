//! Type-D characterization.
//!
//! A D-cycle gluing is a cycle `x_1 … x_h` with an odd number of dotted edges,
//! together with A-type pieces `F_1 … F_h` where `F_i` carries the cycle edge
//! `{x_i, x_{i+1}}` and neither endpoint separates `F_i`. The union of the
//! pieces, with opposite parallel edges cancelled, is exactly a bigraph of
//! Dynkin type `D_n`.
//!
//! Equivalently `G = J/{u,v}` for an A-type `J` on `n + 1` vertices whose
//! non-separating vertices `u`, `v` are joined by a shortest path of length at
//! least two with an odd number of dotted edges. [`recognize_d`] searches for
//! such a `J` by splitting vertices of `G`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bigraph::{Bigraph, BigraphError, Edge, LineStyle};
use crate::blocks::{block_tree, classify_a};
use crate::flation::{apply_sequence_graph, FlationStep, FlationWitness};
use crate::inflations::label_diagram;
use crate::dynkin::DynkinType;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DCycleGluing {
    /// `x_1 … x_h`.
    pub cycle: Vec<usize>,
    /// Style of `e_i = {x_i, x_{i+1}}` (indices mod `h`).
    pub styles: Vec<LineStyle>,
    /// `F_1 … F_h`, each on the ambient vertex labels.
    pub pieces: Vec<Bigraph>,
}

/// The invariant a gluing breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingClause {
    CycleTooShort,
    LengthMismatch,
    RepeatedCycleVertex,
    EvenDotted,
    VertexCountMismatch(usize),
    PieceNotAType(usize),
    MissingCycleEdge(usize),
    EndpointSeparates(usize),
    Overlap(usize, usize),
    Uncovered(usize),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DCycleError {
    #[error("gluing invariant violated: {0:?}")]
    InvariantViolation(GluingClause),
    #[error("vertices {0} and {1} are adjacent or equal")]
    VerticesAdjacent(usize, usize),
    #[error("split leaves one side without edges")]
    EmptySide,
    #[error("split sides do not partition the neighbors of {0}")]
    InvalidPartition(usize),
    #[error("split witness is invalid")]
    InvalidWitness,
    #[error("decomposition does not describe the bigraph")]
    InvalidDecomposition,
    #[error("bigraph is not of Dynkin type A")]
    NotAType,
    #[error("vertices {0} and {1} are not connected")]
    NotConnected(usize, usize),
    #[error("shortest path between {0} and {1} is not unique")]
    NotUnique(usize, usize),
    #[error(transparent)]
    Graph(#[from] BigraphError),
}

fn piece_vertices(piece: &Bigraph, extra: &[usize]) -> Vec<usize> {
    let mut vs: Vec<usize> = piece.edges().iter().flat_map(|e| [e.u, e.v]).chain(extra.iter().copied()).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn is_separator_of(g: &Bigraph, vertices: &[usize], x: usize) -> bool {
    let local = g.induced(vertices);
    let bt = block_tree(&local);
    let idx = vertices.binary_search(&x).expect("vertex belongs to the piece");
    bt.is_separator(idx)
}

impl DCycleGluing {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.pieces.first().map_or(0, |p| p.vertex_count())
    }

    /// Vertex set `V_i` of piece `i` (0-based).
    pub fn piece_vertex_set(&self, i: usize) -> Vec<usize> {
        let h = self.cycle.len();
        piece_vertices(&self.pieces[i], &[self.cycle[i], self.cycle[(i + 1) % h]])
    }

    pub fn validate(&self) -> Result<(), DCycleError> {
        let bad = |c| Err(DCycleError::InvariantViolation(c));
        let h = self.cycle.len();
        if h < 2 {
            return bad(GluingClause::CycleTooShort);
        }
        if self.styles.len() != h || self.pieces.len() != h {
            return bad(GluingClause::LengthMismatch);
        }
        let n = self.vertex_count();
        if let Some(i) = self.pieces.iter().position(|p| p.vertex_count() != n) {
            return bad(GluingClause::VertexCountMismatch(i));
        }
        let mut sorted = self.cycle.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != h || sorted.last().is_some_and(|&m| m >= n) {
            return bad(GluingClause::RepeatedCycleVertex);
        }
        if self.styles.iter().filter(|s| s.is_dotted()).count() % 2 == 0 {
            return bad(GluingClause::EvenDotted);
        }
        let sets: Vec<Vec<usize>> = (0..h).map(|i| self.piece_vertex_set(i)).collect();
        for i in 0..h {
            let (a, b) = (self.cycle[i], self.cycle[(i + 1) % h]);
            let piece = &self.pieces[i];
            if !piece.is_simple() {
                return bad(GluingClause::PieceNotAType(i));
            }
            if piece.style(a, b) != Some(self.styles[i]) {
                return bad(GluingClause::MissingCycleEdge(i));
            }
            if !classify_a(&piece.induced(&sets[i])) {
                return bad(GluingClause::PieceNotAType(i));
            }
            if is_separator_of(piece, &sets[i], a) || is_separator_of(piece, &sets[i], b) {
                return bad(GluingClause::EndpointSeparates(i));
            }
        }
        for i in 0..h {
            for j in i + 1..h {
                let common: Vec<usize> = sets[i].iter().copied().filter(|v| sets[j].binary_search(v).is_ok()).collect();
                let mut expected = Vec::new();
                if j == i + 1 {
                    expected.push(self.cycle[j]);
                }
                if i == 0 && j == h - 1 {
                    expected.push(self.cycle[0]);
                }
                expected.sort_unstable();
                expected.dedup();
                if common != expected {
                    return bad(GluingClause::Overlap(i, j));
                }
            }
        }
        let mut covered = vec![false; n];
        for set in &sets {
            for &v in set {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return bad(GluingClause::Uncovered(v));
        }
        Ok(())
    }

    /// Rotates and reflects so that `x_1` is the smallest cycle vertex and
    /// `x_2` the smaller of its cycle neighbors.
    pub fn normalized(&self) -> DCycleGluing {
        let h = self.cycle.len();
        let mut d = self.clone();
        if h == 2 {
            if d.cycle[0] > d.cycle[1] {
                d.cycle.swap(0, 1);
            }
            return d;
        }
        let k = (0..h).min_by_key(|&i| self.cycle[i]).unwrap();
        d.cycle.rotate_left(k);
        d.styles.rotate_left(k);
        d.pieces.rotate_left(k);
        if d.cycle[h - 1] < d.cycle[1] {
            let cycle: Vec<usize> = (0..h).map(|i| d.cycle[(h - i) % h]).collect();
            let styles: Vec<LineStyle> = (0..h).map(|i| d.styles[h - 1 - i]).collect();
            let pieces: Vec<Bigraph> = (0..h).map(|i| d.pieces[h - 1 - i].clone()).collect();
            d = DCycleGluing { cycle, styles, pieces };
        }
        d
    }
}

/// Union of the pieces with opposite parallel edges cancelled.
pub fn glue(d: &DCycleGluing) -> Result<Bigraph, DCycleError> {
    d.validate()?;
    let mut union = Bigraph::empty(d.vertex_count());
    for p in &d.pieces {
        union = union.union(p);
    }
    Ok(union.simplify())
}

/// `J/{u,v}`: merges two nonadjacent vertices into `min(u,v)`, shifting the
/// labels above `max(u,v)` down by one, then cancels opposite parallel edges.
pub fn identify_vertices(j: &Bigraph, u: usize, v: usize) -> Result<Bigraph, DCycleError> {
    if u == v || j.adjacent(u, v) {
        return Err(DCycleError::VerticesAdjacent(u, v));
    }
    let (keep, drop) = (u.min(v), u.max(v));
    let n = j.vertex_count();
    if drop >= n {
        return Err(BigraphError::VertexOutOfRange { vertex: drop, n }.into());
    }
    let map: Vec<usize> = (0..n)
        .map(|w| match w.cmp(&drop) {
            std::cmp::Ordering::Less => w,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => w - 1,
        })
        .collect();
    Ok(j.relabel(&map, n - 1).simplify())
}

/// How to split vertex `w` of a simple bigraph into `w` and a new last vertex.
///
/// `keep` neighbors stay with `w`, `moved` neighbors go to the new vertex.
/// An optional `bridge` vertex `c`, not adjacent to `w`, receives an edge of
/// the given style from `w` and one of the opposite style from the new vertex;
/// the two cancel again on identification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    pub w: usize,
    pub keep: Vec<usize>,
    pub moved: Vec<usize>,
    pub bridge: Option<(usize, LineStyle)>,
}

pub fn split_vertex(g: &Bigraph, spec: &SplitSpec) -> Result<Bigraph, DCycleError> {
    g.ensure_simple()?;
    let n = g.vertex_count();
    let w = spec.w;
    if w >= n {
        return Err(BigraphError::VertexOutOfRange { vertex: w, n }.into());
    }
    let mut sides: Vec<usize> = spec.keep.iter().chain(&spec.moved).copied().collect();
    sides.sort_unstable();
    if sides != g.neighbors(w) {
        return Err(DCycleError::InvalidPartition(w));
    }
    if let Some((c, _)) = spec.bridge {
        if c == w || c >= n || g.adjacent(w, c) {
            return Err(DCycleError::InvalidPartition(w));
        }
    }
    if (spec.keep.is_empty() || spec.moved.is_empty()) && spec.bridge.is_none() {
        return Err(DCycleError::EmptySide);
    }
    let new = n;
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| {
            if e.touches(w) && spec.moved.contains(&e.other(w)) {
                Edge::new(new, e.other(w), e.style)
            } else {
                *e
            }
        })
        .collect();
    if let Some((c, style)) = spec.bridge {
        edges.push(Edge::new(w, c, style));
        edges.push(Edge::new(new, c, style.opposite()));
    }
    Ok(Bigraph::new(n + 1, edges)?)
}

/// Distance and number of shortest paths (saturating) from `x` to `y`.
pub fn count_shortest_paths(g: &Bigraph, x: usize, y: usize) -> Option<(usize, u64)> {
    let adj = g.adjacency_lists();
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut count = vec![0u64; n];
    dist[x] = 0;
    count[x] = 1;
    let mut queue = VecDeque::from([x]);
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            if dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
            if dist[b] == dist[a] + 1 {
                count[b] = count[b].saturating_add(count[a]);
            }
        }
    }
    (dist[y] != usize::MAX).then(|| (dist[y], count[y]))
}

/// The unique shortest path from `x` to `y` in an A-type bigraph.
pub fn shortest_path_a(g: &Bigraph, x: usize, y: usize) -> Result<Vec<usize>, DCycleError> {
    if !classify_a(g) {
        return Err(DCycleError::NotAType);
    }
    unique_shortest_path(g, x, y)
}

fn unique_shortest_path(g: &Bigraph, x: usize, y: usize) -> Result<Vec<usize>, DCycleError> {
    let adj = g.adjacency_lists();
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut count = vec![0u64; n];
    let mut pred = vec![usize::MAX; n];
    dist[x] = 0;
    count[x] = 1;
    let mut queue = VecDeque::from([x]);
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            if dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                pred[b] = a;
                queue.push_back(b);
            }
            if dist[b] == dist[a] + 1 {
                count[b] = count[b].saturating_add(count[a]);
            }
        }
    }
    if dist[y] == usize::MAX {
        return Err(DCycleError::NotConnected(x, y));
    }
    if count[y] != 1 {
        return Err(DCycleError::NotUnique(x, y));
    }
    let mut path = vec![y];
    while *path.last().unwrap() != x {
        path.push(pred[*path.last().unwrap()]);
    }
    path.reverse();
    Ok(path)
}

/// A certified split: `g = J/{u,v}` with `J` of type `A_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub spec: SplitSpec,
    pub j: Bigraph,
    pub u: usize,
    pub v: usize,
    /// Unique shortest path `u … v` in `J`.
    pub path: Vec<usize>,
}

/// Checks the identification conditions on `J`, returning the shortest `u … v` path.
pub fn check_identification(j: &Bigraph, u: usize, v: usize) -> Option<Vec<usize>> {
    if !classify_a(j) {
        return None;
    }
    let bt = block_tree(j);
    if bt.is_separator(u) || bt.is_separator(v) {
        return None;
    }
    let path = unique_shortest_path(j, u, v).ok()?;
    if path.len() < 3 {
        return None;
    }
    let dotted = path
        .windows(2)
        .filter(|p| j.style(p[0], p[1]) == Some(LineStyle::Dotted))
        .count();
    (dotted % 2 == 1).then_some(path)
}

/// Every way to split a vertex of `g`, in search order: vertices ascending,
/// then neighbor partitions by bitmask (the smallest neighbor always stays),
/// then no bridge before bridges by vertex and style.
pub fn split_candidates(g: &Bigraph) -> impl Iterator<Item = SplitSpec> + '_ {
    let n = g.vertex_count();
    (0..n).flat_map(move |w| {
        let nbrs = g.neighbors(w);
        let non_nbrs: Vec<usize> = (0..n).filter(|&c| c != w && !nbrs.contains(&c)).collect();
        let half = if nbrs.is_empty() { 0 } else { 1u64 << (nbrs.len() - 1) };
        (0..half).flat_map(move |mask| {
            let mut keep = vec![nbrs[0]];
            let mut moved = Vec::new();
            for (k, &x) in nbrs.iter().enumerate().skip(1) {
                if mask >> (k - 1) & 1 == 1 {
                    keep.push(x);
                } else {
                    moved.push(x);
                }
            }
            let bridges: Vec<Option<(usize, LineStyle)>> = std::iter::once(None)
                .chain(
                    non_nbrs
                        .iter()
                        .flat_map(|&c| [Some((c, LineStyle::Solid)), Some((c, LineStyle::Dotted))]),
                )
                .collect();
            bridges.into_iter().filter_map(move |bridge| {
                if moved.is_empty() && bridge.is_none() {
                    return None;
                }
                Some(SplitSpec {
                    w,
                    keep: keep.clone(),
                    moved: moved.clone(),
                    bridge,
                })
            })
        })
    })
}

/// Searches for a split certifying that `g` has type `D_n`.
pub fn recognize_d(g: &Bigraph) -> Option<SplitWitness> {
    let n = g.vertex_count();
    if n < 4 || !g.is_simple() || !g.is_connected() {
        return None;
    }
    split_candidates(g).find_map(|spec| {
        let j = split_vertex(g, &spec).ok()?;
        let (u, v) = (spec.w, n);
        let path = check_identification(&j, u, v)?;
        Some(SplitWitness { spec, j, u, v, path })
    })
}

/// Peels `J` along the separators of its `u … v` path into a D-cycle gluing of `g`.
pub fn decomposition_from_split(g: &Bigraph, witness: &SplitWitness) -> Result<DCycleGluing, DCycleError> {
    let n = g.vertex_count();
    let j = &witness.j;
    let (u, v) = (witness.u, witness.v);
    if j.vertex_count() != n + 1 || v != n || u >= n {
        return Err(DCycleError::InvalidWitness);
    }
    let path = check_identification(j, u, v).ok_or(DCycleError::InvalidWitness)?;
    if identify_vertices(j, u, v)? != *g {
        return Err(DCycleError::InvalidWitness);
    }
    let h = path.len() - 1;
    let adj = j.adjacency_lists();
    let mut rest: Vec<bool> = vec![true; n + 1];
    let mut piece_sets: Vec<Vec<usize>> = Vec::with_capacity(h);
    for i in 0..h - 1 {
        let sep = path[i + 1];
        // component of path[i] in rest minus sep
        let mut seen = vec![false; n + 1];
        seen[sep] = true;
        seen[path[i]] = true;
        let mut queue = VecDeque::from([path[i]]);
        let mut set = vec![path[i], sep];
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if rest[b] && !seen[b] {
                    seen[b] = true;
                    set.push(b);
                    queue.push_back(b);
                }
            }
        }
        for &x in &set {
            if x != sep {
                rest[x] = false;
            }
        }
        set.sort_unstable();
        piece_sets.push(set);
    }
    piece_sets.push((0..=n).filter(|&x| rest[x]).collect());

    let mut map: Vec<usize> = (0..=n).collect();
    map[v] = u;
    let cycle: Vec<usize> = path[..h].to_vec();
    let styles: Vec<LineStyle> = path
        .windows(2)
        .map(|p| j.style(p[0], p[1]).ok_or(DCycleError::InvalidWitness))
        .collect::<Result<_, _>>()?;
    let pieces: Vec<Bigraph> = piece_sets
        .iter()
        .map(|set| j.restrict(set).relabel(&map, n))
        .collect();
    let d = DCycleGluing { cycle, styles, pieces }.normalized();
    if glue(&d)? != *g {
        return Err(DCycleError::InvalidWitness);
    }
    Ok(d)
}

/// The split behind the identification characterization: `x_1` is
/// duplicated into a new last vertex that takes over `x_1`'s role in `F_h`.
pub fn split_from_gluing(d: &DCycleGluing) -> Result<SplitWitness, DCycleError> {
    d.validate()?;
    let n = d.vertex_count();
    let h = d.len();
    let x1 = d.cycle[0];
    let mut map: Vec<usize> = (0..n).collect();
    map[x1] = n;
    let mut j = Bigraph::empty(n + 1);
    for (i, p) in d.pieces.iter().enumerate() {
        let p = if i == h - 1 { p.relabel(&map, n + 1) } else { p.relabel(&(0..n).collect::<Vec<_>>(), n + 1) };
        j = j.union(&p);
    }
    let path = check_identification(&j, x1, n).ok_or(DCycleError::InvalidWitness)?;
    let g = glue(d)?;
    let keep: Vec<usize> = j.neighbors(x1).into_iter().filter(|&c| g.adjacent(x1, c)).collect();
    let moved: Vec<usize> = j.neighbors(n).into_iter().filter(|&c| g.adjacent(x1, c)).collect();
    let bridge = j
        .neighbors(x1)
        .into_iter()
        .find(|&c| j.adjacent(n, c))
        .map(|c| (c, j.style(x1, c).unwrap()));
    Ok(SplitWitness {
        spec: SplitSpec { w: x1, keep, moved, bridge },
        j,
        u: x1,
        v: n,
        path,
    })
}

/// Flation sequence taking a D-cycle gluing of `g` to the canonical `D_n`.
///
/// The cycle first absorbs every off-cycle vertex; then dotted cycle edges are
/// pushed forward until only `{x_n, x_1}` is dotted; finally a fan of steps
/// into `x_1` collapses the cycle onto `D_n`. Returns the witness and `order`,
/// where `order[k]` lands at position `k` of the canonical layout.
pub fn reduce_to_dn(g: &Bigraph, d: &DCycleGluing) -> Result<(FlationWitness, Vec<usize>), DCycleError> {
    let n = g.vertex_count();
    if n < 4 || glue(d)? != *g {
        return Err(DCycleError::InvalidDecomposition);
    }
    let mut cur = g.clone();
    let mut witness = FlationWitness::identity(n);
    let mut cycle = d.cycle.clone();
    let mut apply = |cur: &mut Bigraph, steps: &[FlationStep]| {
        let (next, w) = apply_sequence_graph(cur, steps).expect("valid steps");
        witness = witness.then(&w);
        *cur = next;
    };

    // Cycle growth.
    loop {
        let mut on_cycle = vec![false; n];
        for &x in &cycle {
            on_cycle[x] = true;
        }
        let found = cycle.iter().enumerate().find_map(|(pos, &r)| {
            cur.neighbors(r).into_iter().find(|&s| !on_cycle[s]).map(|s| (pos, r, s))
        });
        let Some((pos, r, s)) = found else { break };
        let h = cycle.len();
        let insert_after = if h == 2 {
            pos
        } else {
            let attach = off_cycle_attachments(&cur, &on_cycle, s);
            let next = cycle[(pos + 1) % h];
            let prev = cycle[(pos + h - 1) % h];
            if attach.contains(&next) {
                pos
            } else if attach.contains(&prev) {
                (pos + h - 1) % h
            } else {
                return Err(DCycleError::InvalidDecomposition);
            }
        };
        apply(&mut cur, &[FlationStep::new(s, r)]);
        cycle.insert(insert_after + 1, s);
    }
    if cycle.len() != n {
        return Err(DCycleError::InvalidDecomposition);
    }
    let styles: Option<Vec<LineStyle>> = (0..n).map(|i| cur.style(cycle[i], cycle[(i + 1) % n])).collect();
    let styles = styles.ok_or(DCycleError::InvalidDecomposition)?;
    if cur.edge_count() != n || styles.iter().filter(|s| s.is_dotted()).count() % 2 == 0 {
        return Err(DCycleError::InvalidDecomposition);
    }

    // Push dotted edges around the cycle.
    for i in 1..n {
        if cur.style(cycle[i - 1], cycle[i]) == Some(LineStyle::Dotted) {
            let steps = [
                FlationStep::new(cycle[i], cycle[i - 1]),
                FlationStep::new(cycle[i], cycle[(i + 1) % n]),
            ];
            apply(&mut cur, &steps);
        }
    }

    // Fan into x_1.
    let fan: Vec<FlationStep> = (2..n).rev().map(|k| FlationStep::new(cycle[k], cycle[0])).collect();
    apply(&mut cur, &fan);

    match label_diagram(&cur).as_deref() {
        Ok([(t, order)]) if *t == DynkinType::d(n) => Ok((witness, order.clone())),
        _ => Err(DCycleError::InvalidDecomposition),
    }
}

/// Cycle vertices adjacent to the off-cycle component containing `s`.
fn off_cycle_attachments(g: &Bigraph, on_cycle: &[bool], s: usize) -> Vec<usize> {
    let adj = g.adjacency_lists();
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    let mut attach = Vec::new();
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            if on_cycle[b] {
                attach.push(b);
            } else if !seen[b] {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    attach.sort_unstable();
    attach.dedup();
    attach
}
