//! Signed multigraphs ("bigraphs") whose edges are either solid or dotted.
//!
//! Vertices are `0..n`. An edge between `u` and `v` is stored with `u < v`,
//! and the edge list is kept sorted so that two bigraphs compare equal exactly
//! when their edge multisets agree.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Line style of an edge. Solid edges encode negative matrix entries, dotted
/// edges positive ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineStyle {
    Solid,
    Dotted,
}

impl LineStyle {
    pub fn opposite(self) -> LineStyle {
        match self {
            LineStyle::Solid => LineStyle::Dotted,
            LineStyle::Dotted => LineStyle::Solid,
        }
    }

    pub fn is_dotted(self) -> bool {
        self == LineStyle::Dotted
    }

    /// Sign of the matrix entry carried by one edge of this style.
    pub fn sign(self) -> i64 {
        match self {
            LineStyle::Solid => -1,
            LineStyle::Dotted => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LineStyle::Solid => "solid",
            LineStyle::Dotted => "dotted",
        }
    }
}

impl fmt::Display for LineStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub style: LineStyle,
}

impl Edge {
    /// Builds an edge with normalized endpoint order.
    pub fn new(a: usize, b: usize, style: LineStyle) -> Edge {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Edge { u, v, style }
    }

    pub fn solid(a: usize, b: usize) -> Edge {
        Edge::new(a, b, LineStyle::Solid)
    }

    pub fn dotted(a: usize, b: usize) -> Edge {
        Edge::new(a, b, LineStyle::Dotted)
    }

    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BigraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("bigraph is not simple")]
    NotSimple,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Bigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Bigraph, BigraphError> {
        let mut list = Vec::new();
        for e in edges {
            let e = Edge::new(e.u, e.v, e.style);
            if e.u == e.v {
                return Err(BigraphError::Loop(e.u));
            }
            if e.v >= n {
                return Err(BigraphError::VertexOutOfRange { vertex: e.v, n });
            }
            list.push(e);
        }
        list.sort_unstable();
        Ok(Bigraph { n, edges: list })
    }

    /// Convenience constructor from `(u, v, style)` triples; panics on invalid input.
    pub fn from_triples(n: usize, triples: &[(usize, usize, LineStyle)]) -> Bigraph {
        Bigraph::new(n, triples.iter().map(|&(u, v, s)| Edge::new(u, v, s)))
            .expect("invalid edge triple")
    }

    pub fn empty(n: usize) -> Bigraph {
        Bigraph { n, edges: Vec::new() }
    }

    /// Solid path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Bigraph {
        Bigraph {
            n,
            edges: (1..n).map(|i| Edge::solid(i - 1, i)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.windows(2).all(|w| (w[0].u, w[0].v) != (w[1].u, w[1].v))
    }

    pub fn ensure_simple(&self) -> Result<(), BigraphError> {
        if self.is_simple() {
            Ok(())
        } else {
            Err(BigraphError::NotSimple)
        }
    }

    /// Style of the (first) edge between `a` and `b`, if any.
    pub fn style(&self, a: usize, b: usize) -> Option<LineStyle> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        let idx = self.edges.partition_point(|e| (e.u, e.v) < (u, v));
        self.edges
            .get(idx)
            .filter(|e| (e.u, e.v) == (u, v))
            .map(|e| e.style)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.style(a, b).is_some()
    }

    /// Edges incident to `w`, in edge-list order.
    pub fn incident(&self, w: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.touches(w))
    }

    /// Sorted, deduplicated neighbor list of `w`.
    pub fn neighbors(&self, w: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.incident(w).map(|e| e.other(w)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn degree(&self, w: usize) -> usize {
        self.incident(w).count()
    }

    /// Neighbor lists for every vertex, ignoring line styles and multiplicities.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced on `vertices`, relabelled so that `vertices[k]` becomes `k`.
    pub fn induced(&self, vertices: &[usize]) -> Bigraph {
        let mut index = vec![usize::MAX; self.n];
        for (k, &v) in vertices.iter().enumerate() {
            index[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| Edge::new(index[e.u], index[e.v], e.style))
            .collect::<Vec<_>>();
        Bigraph::new(vertices.len(), edges).expect("induced subgraph is well formed")
    }

    /// Keeps only the edges with both endpoints in `vertices`; labels are unchanged.
    pub fn restrict(&self, vertices: &[usize]) -> Bigraph {
        let mut keep = vec![false; self.n];
        for &v in vertices {
            keep[v] = true;
        }
        Bigraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .filter(|e| keep[e.u] && keep[e.v])
                .copied()
                .collect(),
        }
    }

    /// Applies a vertex relabelling `old -> map[old]` onto `n` vertices.
    pub fn relabel(&self, map: &[usize], n: usize) -> Bigraph {
        Bigraph::new(n, self.edges.iter().map(|e| Edge::new(map[e.u], map[e.v], e.style)))
            .expect("relabelling produced an invalid bigraph")
    }

    /// Union of edge multisets over the same vertex count (no simplification).
    pub fn union(&self, other: &Bigraph) -> Bigraph {
        let n = self.n.max(other.n);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        edges.sort_unstable();
        Bigraph { n, edges }
    }

    /// Cancels opposite-style parallel edges pairwise until, on every vertex
    /// pair, only edges of one style remain.
    pub fn simplify(&self) -> Bigraph {
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut i = 0;
        while i < self.edges.len() {
            let (u, v) = (self.edges[i].u, self.edges[i].v);
            let mut net = 0i64;
            while i < self.edges.len() && (self.edges[i].u, self.edges[i].v) == (u, v) {
                net += self.edges[i].style.sign();
                i += 1;
            }
            let style = if net > 0 { LineStyle::Dotted } else { LineStyle::Solid };
            for _ in 0..net.unsigned_abs() {
                edges.push(Edge { u, v, style });
            }
        }
        Bigraph { n: self.n, edges }
    }

    pub fn dotted_count(&self) -> usize {
        self.edges.iter().filter(|e| e.style.is_dotted()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use LineStyle::*;

    #[test]
    fn opposite_is_an_involution() {
        assert_eq!(Solid.opposite(), Dotted);
        assert_eq!(Dotted.opposite(), Solid);
        assert_eq!(Solid.opposite().opposite(), Solid);
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert_eq!(Bigraph::new(3, [Edge::solid(1, 1)]), Err(BigraphError::Loop(1)));
        assert_eq!(
            Bigraph::new(2, [Edge::solid(0, 2)]),
            Err(BigraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn simplify_cancels_opposite_pairs() {
        let g = Bigraph::from_triples(2, &[(0, 1, Solid), (0, 1, Dotted)]);
        assert_eq!(g.simplify(), Bigraph::empty(2));

        let g = Bigraph::from_triples(2, &[(0, 1, Solid), (0, 1, Solid)]);
        assert_eq!(g.simplify(), g);
        assert!(!g.is_simple());

        let g = Bigraph::from_triples(2, &[(0, 1, Dotted)]);
        assert_eq!(g.simplify(), g);

        let g = Bigraph::from_triples(
            3,
            &[(0, 1, Solid), (0, 1, Dotted), (0, 1, Dotted), (1, 2, Solid)],
        );
        assert_eq!(g.simplify(), Bigraph::from_triples(3, &[(0, 1, Dotted), (1, 2, Solid)]));
    }

    #[test]
    fn style_lookup_and_neighbors() {
        let g = Bigraph::from_triples(4, &[(2, 0, Dotted), (1, 2, Solid), (2, 3, Solid)]);
        assert_eq!(g.style(0, 2), Some(Dotted));
        assert_eq!(g.style(2, 1), Some(Solid));
        assert_eq!(g.style(0, 1), None);
        assert_eq!(g.neighbors(2), vec![0, 1, 3]);
        assert_eq!(g.degree(2), 3);
    }

    #[test]
    fn components_and_induced() {
        let g = Bigraph::from_triples(5, &[(0, 3, Solid), (1, 4, Dotted)]);
        assert_eq!(g.components(), vec![vec![0, 3], vec![1, 4], vec![2]]);
        assert!(!g.is_connected());
        let h = g.induced(&[1, 4]);
        assert_eq!(h, Bigraph::from_triples(2, &[(0, 1, Dotted)]));
    }
}
